//! Exact polynomial arithmetic, elimination and numeric root finding.

mod elim;
pub mod parse;
mod poly;
mod roots;
mod upoly;

pub use elim::{resultant, resultant_upoly, squarefree_decompose, squarefree_upoly, to_upoly3};
pub use poly::Poly;
pub use roots::{complex_roots, root_clusters, RootCluster};
pub use upoly::UPoly;
