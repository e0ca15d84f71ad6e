//! Canonical labelings of small graphs by degree refinement followed by a
//! pruned search over the permutations that respect the refined cells.

/// Canonical code and the relabeling `perm` (`vertex -> position`) that
/// produces it. Codes of isomorphic inputs are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub code: u128,
    pub perm: Vec<usize>,
}

/// Symmetric matrix of small pair values (0 = no edge); diagonal ignored.
pub trait PairMatrix {
    fn order(&self) -> usize;
    fn value(&self, i: usize, j: usize) -> u8;
    /// Number of distinct nonzero values plus one.
    fn radix(&self) -> u128;
}

/// Iterated refinement of vertex colors by the multiset of
/// (pair value, neighbor color). Colors are renumbered by sorting the
/// signatures, so the final ordered partition is isomorphism invariant.
fn refine<M: PairMatrix>(m: &M) -> Vec<usize> {
    let n = m.order();
    let mut color = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(usize, Vec<(u8, usize)>)> = (0..n)
            .map(|v| {
                let mut s: Vec<(u8, usize)> = (0..n)
                    .filter(|&w| w != v && m.value(v, w) != 0)
                    .map(|w| (m.value(v, w), color[w]))
                    .collect();
                s.sort_unstable();
                (color[v], s)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        color = next;
        if distinct.len() == classes {
            return color;
        }
        classes = distinct.len();
    }
}

/// Smallest code over all cell-respecting relabelings. Bits are laid out
/// column by column of the upper triangle, so a partial assignment of
/// positions `0..k` fixes a prefix of the code.
pub fn canonical<M: PairMatrix + Sync>(m: &M) -> Canonical {
    let n = m.order();
    let color = refine(m);
    // Positions grouped by color, in color order.
    let mut cell_of_pos = Vec::with_capacity(n);
    let mut by_color: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        by_color[color[v]].push(v);
    }
    for (c, vs) in by_color.iter().enumerate() {
        cell_of_pos.extend(std::iter::repeat_n(c, vs.len()));
    }
    let radix = m.radix();
    let pairs = (n * n.saturating_sub(1) / 2) as u32;
    assert!(
        radix.checked_pow(pairs).is_some(),
        "canonical code does not fit in 128 bits"
    );
    let mut state = Search {
        m,
        radix,
        cell_of_pos,
        by_color,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    state.descend(0);
    let (code, order) = state.best.expect("at least one labeling");
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Canonical { code, perm }
}

struct Search<'a, M> {
    m: &'a M,
    radix: u128,
    cell_of_pos: Vec<usize>,
    by_color: Vec<Vec<usize>>,
    order: Vec<usize>,
    used: Vec<bool>,
    best: Option<(u128, Vec<usize>)>,
}

impl<M: PairMatrix> Search<'_, M> {
    fn descend(&mut self, partial: u128) {
        let k = self.order.len();
        let n = self.m.order();
        if k == n {
            if self.best.as_ref().is_none_or(|(b, _)| partial < *b) {
                self.best = Some((partial, self.order.clone()));
            }
            return;
        }
        let cell = self.cell_of_pos[k];
        for idx in 0..self.by_color[cell].len() {
            let v = self.by_color[cell][idx];
            if self.used[v] {
                continue;
            }
            let mut code = partial;
            for i in 0..k {
                code = code * self.radix + self.m.value(self.order[i], v) as u128;
            }
            if let Some((b, _)) = &self.best {
                // Compare against the same-length prefix of the best code.
                let remaining = (k + 1..n).map(|j| j as u32).sum::<u32>();
                let best_prefix = b / self.radix.pow(remaining);
                if code > best_prefix {
                    continue;
                }
            }
            self.used[v] = true;
            self.order.push(v);
            self.descend(code);
            self.order.pop();
            self.used[v] = false;
        }
    }
}

impl PairMatrix for crate::zgraph::ZGraph {
    fn order(&self) -> usize {
        self.n()
    }
    fn value(&self, i: usize, j: usize) -> u8 {
        self.has_edge(i, j) as u8
    }
    fn radix(&self) -> u128 {
        2
    }
}
