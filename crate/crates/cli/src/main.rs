use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pizono::dual::check_diameter_bound;
use pizono::faces::{belt_of, enumerate_codim2, enumerate_facets};
use pizono::oracle::oracle_dual_edges;
use pizono::sweep::{compare_with_oracle, run_sweep, Check, SweepOptions, EXHAUSTIVE_MAX_N};
use pizono::symmetric::{
    gen_k2dm1, gen_paper_even, gen_paper_odd, search_d8_nonsymmetric, search_extremal, symmetry_report, Budget,
    ColoredZGraph, SearchOutcome, SymmetryReport,
};
use pizono::venkov::{belt_diameter, belt_distance, build_venkov};
use pizono::ZGraph;
use pizono_cli::{format_facet, format_pair, format_parts, parse_facet_pair, to_dot, GraphFile, Loaded};

#[derive(Parser)]
#[command(
    name = "pizono",
    version,
    about = "Faces, belts and diameters of graphical zonotopes"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex and edge counts, dimension, components.
    Info {
        file: PathBuf,
    },
    /// Facets as ordered 2-partitions.
    Facets {
        file: PathBuf,
    },
    /// Codimension-2 cores with belt sizes.
    Belts {
        file: PathBuf,
    },
    /// The Venkov graph on pairs of opposite facets.
    Venkov {
        file: PathBuf,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    BeltDiameter {
        file: PathBuf,
    },
    /// Belt distance between two facets written like "1|2,3,4".
    BeltDistance {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    DualDiameter {
        file: PathBuf,
        /// Also check dual diameter <= belt diameter + 1.
        #[arg(long)]
        check_bound: bool,
    },
    /// Red/blue colored graphs.
    Symmetric {
        #[arg(value_enum)]
        action: SymAction,
        file: PathBuf,
    },
    /// Write a generated graph file; the report goes to stderr, or to
    /// stdout when --out is given.
    Generate {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        d: Option<usize>,
        /// Family parameter for paper-odd (d = 2n + 3) and paper-even (d = 2n + 4).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Search {
        #[arg(value_enum)]
        kind: SearchKind,
        /// Wall-clock budget in seconds.
        #[arg(long, default_value_t = 3600)]
        budget: u64,
        /// Node budget.
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Dimension for the extremal search.
        #[arg(long, default_value_t = 7)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Checks over all connected graphs with 3..=max-n vertices.
    Sweep {
        #[arg(long)]
        max_n: usize,
        /// Comma-separated: belt_bound, dual_bound, oracle_equiv, leaves_iff, belt_size, or all.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        oracle_sample: usize,
    },
    Oracle {
        #[arg(value_enum)]
        action: OracleAction,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SymAction {
    Check,
    Distance,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    K2dm1,
    PaperOdd,
    PaperEven,
    Permutahedron,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchKind {
    Extremal,
    D8,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleAction {
    Verify,
}

/// Exit status classes.
enum Failure {
    Violation(String),
    Usage(String),
    Inconclusive(String),
}

impl From<pizono::Error> for Failure {
    fn from(e: pizono::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<pizono_cli::ParseError> for Failure {
    fn from(e: pizono_cli::ParseError) -> Self {
        Failure::Usage(e.0)
    }
}

type Outcome = Result<(), Failure>;

fn load(path: &PathBuf) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e)))?;
    Ok(GraphFile::parse(&text)?)
}

fn load_graph(path: &PathBuf) -> Result<ZGraph, Failure> {
    Ok(load(path)?.graph().clone())
}

fn load_colored(path: &PathBuf) -> Result<ColoredZGraph, Failure> {
    match load(path)? {
        Loaded::Colored(cg) => Ok(cg),
        Loaded::Plain(_) => Err(Failure::Usage("graph file has no red/blue edge tags".into())),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn report_json(r: &SymmetryReport) -> Value {
    json!({
        "conjugate": r.conjugate,
        "failures": r.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "red_facet": r.red_facet.map(format_pair),
        "blue_facet": r.blue_facet.map(format_pair),
        "common_leaf": r.common_leaf.map(|v| v + 1),
        "red_blue_distance": r.red_blue_distance,
        "path": r.path.as_ref().map(|p| p.steps.iter().map(|&s| format_pair(s)).collect::<Vec<_>>()),
        "bipartite": r.bipartite,
    })
}

fn outcome_json<T>(o: &SearchOutcome<T>, witness: impl FnOnce(&T) -> Value) -> Value {
    match o {
        SearchOutcome::Found { witness: w, nodes } => {
            json!({"outcome": "found", "nodes": nodes, "witness": witness(w)})
        }
        SearchOutcome::Exhausted { nodes } => json!({"outcome": "none", "nodes": nodes}),
        SearchOutcome::Inconclusive { nodes } => json!({"outcome": "inconclusive", "nodes": nodes}),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Info { file } => {
            let g = load_graph(&file)?;
            println!("vertices: {}", g.n());
            println!("edges: {}", g.edge_count());
            println!("dimension: {}", g.dimension());
            println!("components: {}", g.components().len());
        }
        Command::Facets { file } => {
            let g = load_graph(&file)?;
            for f in enumerate_facets(&g)? {
                println!("{}", format_facet(f));
            }
        }
        Command::Belts { file } => {
            let g = load_graph(&file)?;
            for core in enumerate_codim2(&g)? {
                let b = belt_of(&g, &core)?;
                println!(
                    "{}\tsize {}\tdirections {}",
                    format_parts(&core.parts()),
                    b.members.len(),
                    b.directions
                );
            }
        }
        Command::Venkov { file, dot, json } => {
            let g = load_graph(&file)?;
            let v = build_venkov(&g)?;
            let labels: Vec<String> = v.nodes.iter().map(|&p| format_pair(p)).collect();
            if dot {
                print!("{}", to_dot("venkov", &labels, &v.adjacency));
            } else if json {
                print_json(&json!({"nodes": labels, "adjacency": v.adjacency}));
            } else {
                for (i, l) in labels.iter().enumerate() {
                    let nbrs: Vec<&str> = v.adjacency[i].iter().map(|&j| labels[j].as_str()).collect();
                    println!("{}: {}", l, nbrs.join(" "));
                }
            }
        }
        Command::BeltDiameter { file } => {
            println!("{}", belt_diameter(&load_graph(&file)?)?);
        }
        Command::BeltDistance { file, from, to } => {
            let g = load_graph(&file)?;
            let (a, b) = (parse_facet_pair(&from, &g)?, parse_facet_pair(&to, &g)?);
            let (d, path) = belt_distance(&g, a, b)?;
            println!("{}", d);
            let steps: Vec<String> = path.steps.iter().map(|&s| format_pair(s)).collect();
            println!("{}", steps.join(" -> "));
        }
        Command::DualDiameter { file, check_bound } => {
            let g = load_graph(&file)?;
            if !check_bound {
                println!("{}", pizono::dual::dual_diameter(&g)?);
                return Ok(());
            }
            let r = check_diameter_bound(&g)?;
            println!("dual diameter: {}", r.dual_diameter);
            println!("belt diameter: {}", r.belt_diameter);
            println!(
                "dual witness: {} / {}",
                format_facet(r.dual_witness.0),
                format_facet(r.dual_witness.1)
            );
            println!(
                "belt witness: {} / {}",
                format_pair(r.belt_witness.0),
                format_pair(r.belt_witness.1)
            );
            if g.dimension() < 3 {
                println!("bound: outside scope (d < 3)");
            } else if r.bound_holds {
                println!("bound: holds");
            } else {
                return Err(Failure::Violation("dual diameter exceeds belt diameter + 1".into()));
            }
        }
        Command::Symmetric { action, file } => {
            let cg = load_colored(&file)?;
            let r = symmetry_report(&cg)?;
            match action {
                SymAction::Check => {
                    print_json(&report_json(&r));
                    if !r.conjugate {
                        return Err(Failure::Violation("colors are not conjugate".into()));
                    }
                }
                SymAction::Distance => match r.red_blue_distance {
                    Some(d) => println!("{}", d),
                    None => {
                        let why: Vec<String> = r.failures.iter().map(|f| f.to_string()).collect();
                        return Err(Failure::Usage(format!("not conjugate: {}", why.join("; "))));
                    }
                },
            }
        }
        Command::Generate { family, d, n, out } => generate(family, d, n, out)?,
        Command::Search {
            kind,
            budget,
            max_nodes,
            d,
            seed,
        } => {
            let budget = Budget {
                max_nodes: max_nodes.unwrap_or(u64::MAX),
                max_time: Some(Duration::from_secs(budget)),
            };
            let (value, inconclusive) = match kind {
                SearchKind::Extremal => {
                    let o = search_extremal(d, budget)?;
                    let mut v = outcome_json(
                        &o,
                        |w| json!({"graph": GraphFile::from_colored(&w.graph), "red_blue_distance": w.red_blue_distance}),
                    );
                    v["d"] = d.into();
                    (v, matches!(o, SearchOutcome::Inconclusive { .. }))
                }
                SearchKind::D8 => {
                    let o = search_d8_nonsymmetric(budget, seed)?;
                    let v = outcome_json(&o, |w| {
                        let mut graph = GraphFile::from_graph(&w.graph);
                        graph.labels = Some(pizono::symmetric::D8_LABELS.iter().map(|s| s.to_string()).collect());
                        json!({
                            "graph": graph,
                            "from": format_pair(w.first),
                            "to": format_pair(w.second),
                            "distance": w.distance,
                            "belt_diameter": w.belt_diameter,
                        })
                    });
                    (v, matches!(o, SearchOutcome::Inconclusive { .. }))
                }
            };
            print_json(&value);
            if inconclusive {
                return Err(Failure::Inconclusive("budget exhausted".into()));
            }
        }
        Command::Sweep {
            max_n,
            checks,
            csv,
            oracle_sample,
        } => {
            if max_n > EXHAUSTIVE_MAX_N {
                return Err(Failure::Usage(format!("--max-n must be at most {}", EXHAUSTIVE_MAX_N)));
            }
            let list: Vec<Check> = if checks.trim() == "all" {
                Check::ALL.to_vec()
            } else {
                checks
                    .split(',')
                    .map(|s| Check::parse(s).ok_or_else(|| Failure::Usage(format!("unknown check {:?}", s))))
                    .collect::<Result<_, _>>()?
            };
            let opts = SweepOptions {
                oracle_sample,
                ..SweepOptions::default()
            };
            let report = run_sweep(max_n, &list, &opts)?;
            if let Some(path) = csv {
                std::fs::write(&path, report.to_csv())
                    .map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e)))?;
            }
            print_json(&serde_json::to_value(&report).expect("report serializes"));
            if report.violation_count() > 0 {
                return Err(Failure::Violation(format!("{} violations", report.violation_count())));
            }
        }
        Command::Oracle { file, .. } => {
            let g = load_graph(&file)?;
            if let Err(m) = compare_with_oracle(&g) {
                return Err(Failure::Violation(format!("oracle mismatch: {}", m)));
            }
            println!("facets and belts: agree");
            if g.n() <= 7 && g.dimension() >= 2 {
                let dual = pizono::dual::build_dual(&g)?;
                let mut ours = std::collections::BTreeSet::new();
                for (i, nbrs) in dual.adjacency.iter().enumerate() {
                    for &j in nbrs {
                        let (a, b) = (dual.nodes[i], dual.nodes[j]);
                        ours.insert((a.min(b), a.max(b)));
                    }
                }
                if ours != oracle_dual_edges(&g)? {
                    return Err(Failure::Violation("dual graph differs from the covector oracle".into()));
                }
                println!("dual graph: agree");
            }
        }
    }
    Ok(())
}

fn generate(family: Family, d: Option<usize>, n: Option<usize>, out: Option<PathBuf>) -> Outcome {
    let need_d = || d.ok_or_else(|| Failure::Usage("--d is required".into()));
    // Family parameter from --n, or from --d when it has the right parity.
    let param = |offset: usize| -> Result<usize, Failure> {
        match (n, d) {
            (Some(m), _) => Ok(m),
            (None, Some(d)) if d >= offset && (d - offset).is_multiple_of(2) => Ok((d - offset) / 2),
            (None, Some(d)) => Err(Failure::Usage(format!("d = {} is not of the form 2n + {}", d, offset))),
            (None, None) => Err(Failure::Usage("--d or --n is required".into())),
        }
    };
    let (file, report) = match family {
        Family::K2dm1 => {
            let cg = gen_k2dm1(need_d()?)?;
            (GraphFile::from_colored(&cg), Some(symmetry_report(&cg)?))
        }
        Family::PaperOdd | Family::PaperEven => {
            let ex = if matches!(family, Family::PaperOdd) {
                gen_paper_odd(param(3)?)?
            } else {
                gen_paper_even(param(4)?)?
            };
            let mut f = GraphFile::from_colored(&ex.graph);
            f.labels = Some(ex.labels);
            (f, Some(symmetry_report(&ex.graph)?))
        }
        Family::Permutahedron => {
            let d = need_d()?;
            (GraphFile::from_graph(&ZGraph::complete(d + 1)?), None)
        }
    };
    let report = report.map(|r| report_json(&r)).unwrap_or(Value::Null);
    let report = serde_json::to_string_pretty(&report).expect("json");
    match out {
        Some(path) => {
            std::fs::write(&path, file.to_json() + "\n")
                .map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e)))?;
            println!("{}", report);
        }
        None => {
            println!("{}", file.to_json());
            eprintln!("{}", report);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(m)) => {
            eprintln!("violation: {}", m);
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(2)
        }
        Err(Failure::Inconclusive(m)) => {
            eprintln!("inconclusive: {}", m);
            ExitCode::from(3)
        }
    }
}
