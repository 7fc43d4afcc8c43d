pub mod entanglement;
pub mod error;
pub mod matrix_elements;
pub mod model;
pub mod quadrature;
pub mod specfun;
pub mod wightman;

pub use error::{Error, Result};
pub use num_complex::Complex64;
