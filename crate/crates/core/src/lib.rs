pub mod bis;
pub mod error;
pub mod online;
pub mod sa;
pub mod text;
pub mod tray;
pub mod tree;
pub mod trist;

pub use error::{Error, Result};
