pub mod commutator;
pub mod config;
pub mod peaks;
pub mod sweep;
pub mod validate;
