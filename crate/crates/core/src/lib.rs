pub mod acgw;
pub mod chains;
pub mod cli;
pub mod document;
pub mod error;
pub mod finset;
pub mod gen;
pub mod homology;
pub mod linear;
pub mod matrix;
pub mod model;
pub mod oracle;
pub mod render;
pub mod setforms;
pub mod snake;

pub use error::{Error, Result, Violation};
