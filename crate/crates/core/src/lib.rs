//! Automorphism groups, two-fold automorphisms and stability of graph pairs
//! under the direct product.

mod bits;
pub mod config;
pub mod error;
pub mod graph;
pub mod harness;
pub mod group;
pub mod io;
pub mod perm;
pub mod product;
pub mod refine;
pub mod search;
pub mod stability;

pub use config::Limits;
pub use error::{Error, Result};
pub use graph::{Bipartition, Graph, Side};
pub use group::PermGroup;
pub use perm::VertexPermutation;
pub use product::{direct_product, canonical_double_cover, ProductGraph};
pub use refine::Coloring;
