pub mod construct;
pub mod data;
pub mod enumeration;
pub mod error;
pub mod hypergraph;
pub mod ideal;
pub mod resolution;
pub mod verify;

pub use error::{Error, Result};
pub use ideal::{MonomialIdeal, SquarefreeMonomial};
