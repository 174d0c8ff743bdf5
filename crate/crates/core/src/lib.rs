//! Twin-width toolkit: trigraph contraction calculus, graph products,
//! constructive contraction sequences with certified bounds, closed-form
//! bound evaluators, and an exact branch-and-bound solver for desk-scale
//! graphs.

pub mod bits;
pub mod bounds;
pub mod canon;
pub mod catalog;
pub mod error;
pub mod families;
pub mod gf;
pub mod graph;
pub mod io;
pub mod products;
pub mod reproduce;
pub mod rotation;
pub mod sequence;
pub mod sequences;
pub mod solver;
pub mod trigraph;

pub use error::{Error, Result};
pub use graph::Graph;
pub use sequence::{sequence_width, ContractionSequence};
pub use trigraph::Trigraph;
