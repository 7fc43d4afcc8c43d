//! Special functions on the numerical hot path.

mod bessel;
pub(crate) mod dd;
mod faddeeva;
mod gamma;
mod hyp;

pub use bessel::bessel_k_complex;
pub use faddeeva::{dawson, erf, erfi, exp_times_w, faddeeva_w};
pub use gamma::gamma;
pub use hyp::{kummer1f1, reg_hyp0f1};

pub(crate) use hyp::kummer1f1_dd;
