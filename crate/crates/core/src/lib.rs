pub mod catalog;
pub mod complexes;
pub mod coxeter;
pub mod cyclotomic;
pub mod error;
pub mod fc;
pub mod garside;
pub mod genset;
pub mod graph;
pub mod par;
pub mod parabolic;
pub mod retraction;
pub mod word;

pub use error::{Error, Result};
pub use genset::GenSet;
pub use graph::DefiningGraph;
pub use word::{Letter, Word};
