//! Algebraic image processing on the unit disk.
//!
//! Images are expanded in the normalized complex Zernike basis
//! `V_{k,l}(r, θ) = √(k+l+1) · R_{k+l}^{|k−l|}(r) · e^{i(k−l)θ}` and every
//! transformation (band filters, operator polynomials in the six generators of
//! `su(1,1) ⊕ su(1,1)`, instrument-defect correction) is carried out as an
//! exact operation on the truncated coefficient grid `f_{k,l}`.
//!
//! Module map:
//!
//! - [`zernike`]: basis functions, radial polynomials, disk quadrature and the
//!   differential realization of the ladder operators (used as an oracle).
//! - [`coeffs`]: coefficient grids, disk rasters, projection and
//!   reconstruction, Parseval bookkeeping and truncation.
//! - [`algebra`]: generator action on grids, ordered monomials, operator
//!   polynomials, commutators, Casimirs and raising-series inversion.
//! - [`pipeline`]: band filters, defect estimation and image correction.
//! - [`io`]: PGM images and the coefficient, operator and model text formats.
//! - [`cli`]: the `aip` command-line front end.
//!
//! Heavy loops run through [`Exec`], which dispatches to rayon when the
//! `parallel` feature is enabled and to plain iterators otherwise.

pub mod algebra;
pub mod cli;
pub mod coeffs;
mod error;
mod exec;
pub mod io;
pub mod pipeline;
pub mod verify;
pub mod zernike;

pub use error::{Error, Result};
pub use exec::Exec;

pub use num_complex::Complex64;
