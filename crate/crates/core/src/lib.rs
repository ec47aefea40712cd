//! Tree-depth and tree-width of graphs, with exact solvers for small
//! instances, constructive upper bounds, expansion and separator lower
//! bounds, and seeded experiments on random graph models.

pub mod census;
pub mod elimination;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod expansion;
pub mod graph;
pub mod random;
pub mod separators;

pub use error::{Error, Result};
pub use graph::Graph;
