pub mod classify;
pub mod cohomology;
pub mod error;
pub mod linalg;
pub mod pair;
pub mod roots;
pub mod weyl;

pub use error::{Error, Result};
