//! Normalized complex Zernike basis on the unit disk.
//!
//! The basis is indexed by two natural numbers `(k, l)` with radial degree
//! `n = k + l` and azimuthal order `m = k − l`. Functions are orthonormal under
//! the measure `(1/2π) ∫dθ ∫d(r²)`, which [`PolarQuadrature`] realizes with a
//! Gauss–Legendre rule in `u = r²` and a uniform rule in `θ`.

mod basis;
mod index;
pub mod oracle;
mod quadrature;
mod radial;

pub use basis::{eval_v, BasisSet};
pub use index::ZernikeIndex;
pub use quadrature::{gauss_legendre_unit, inner_product, PolarQuadrature};
pub use radial::{radial_poly, RadialPolynomial};

/// Largest radial degree `n = k + l` evaluated through the closed-form
/// coefficients. Beyond this the alternating sums lose too many digits.
pub const MAX_RADIAL_ORDER: usize = 30;
