//! Exact operator algebra for q-Laguerre–Hahn linear functionals.
//!
//! Forms are handled through their truncated moment sequences, polynomials
//! densely over big rationals, and Stieltjes functions as truncated Laurent
//! series. Nothing is ever rounded.

pub mod equation;
pub mod error;
pub mod fixtures;
pub mod form;
pub mod laurent;
pub mod poly;
pub mod riccati;
pub mod scalar;
pub mod structure;
pub mod transforms;

pub use equation::{
    check_residual, compute_class, full_residual, multiply_chi, parity_check, pearson_solve,
    reduce_once, residual, shift_triplet, ClassReport, Reduction, Triplet,
};
pub use error::{QlhError, Result};
pub use form::{moments_from_recurrence, recurrence_from_moments, MomentForm, RecurrencePair};
pub use laurent::LaurentSeries;
pub use poly::Poly;
pub use riccati::{cd_from_triplet, riccati_class, riccati_residual, RiccatiData};
pub use scalar::{frac, int, parse_scalar, qbracket, qpochhammer, validate_q, QParam, Scalar};
pub use structure::{associated_polys, mops_from_recurrence, structure_coeffs, Mops};
