pub mod algebra;
pub mod bitset;
pub mod cli;
pub mod error;
pub mod esplit;
pub mod gf;
pub mod groups;
pub mod pairs;
pub mod reductive;
pub mod topo;
pub mod verify;

pub use error::{Error, Result};
