//! Combinatorics of graphical zonotopes: faces as connected vertex
//! partitions, belts, the Venkov graph, belt and combinatorial diameters,
//! and the classification of symmetric zonotopes by red/blue colored graphs.

pub mod canon;
pub mod dual;
pub mod error;
pub mod faces;
pub mod forest;
pub mod oracle;
pub mod sweep;
pub mod symmetric;
pub mod venkov;
pub mod vset;
pub mod zgraph;

pub use error::{Error, Result};
pub use faces::{Belt, BeltCore, Facet, FacetPair, OrderedPartition};
pub use venkov::{BeltPath, VenkovGraph};
pub use vset::VertexSet;
pub use zgraph::ZGraph;
