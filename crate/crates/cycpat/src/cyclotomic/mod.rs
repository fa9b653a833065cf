//! Exact arithmetic in `Z[ω]` and `Q(ω)` for `ω = exp(2πi/q)`, and discrete
//! Fourier transforms with the unnormalised kernel `ω^{ij}`.

mod field;
mod fourier;
mod poly;
mod ring;
mod table;

pub use field::{root_power, CycEl};
pub use fourier::{
    convolution, convolution_i64, fourier, fourier_el, gauss_sum, verify_gauss_sum, GaussCase, GaussCheck,
};
pub use poly::{cyclotomic_poly, IntPoly};
pub use ring::{CycInt, CycloRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycError {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },
}
