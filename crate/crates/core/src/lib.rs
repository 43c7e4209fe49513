//! Tools for the subshift of configurations covered by a rectangular block.

pub mod analysis;
pub mod cli;
pub mod counting;
pub mod cover;
pub mod engine;
pub mod error;
pub mod grid;
pub mod pairs;
pub mod rational;
pub mod sft;

pub use error::{Error, Result};
pub use grid::{Block, Cell, Domain, Fragment, Placement, Rect};
