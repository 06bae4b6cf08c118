//! Coefficient space: truncated Zernike grids and the rasters they describe.
//!
//! A [`DiskImage`] stores recorded intensities `|f|²`. Projection works on
//! the modulus `|f|`, so [`decompose`] takes the square root of every in-disk
//! pixel before expanding. [`reconstruct`] evaluates a grid back onto a
//! raster and reports both the complex field and its modulus squared.

mod grid;
mod image;
mod projection;

pub use grid::{parseval_energy, truncate_to_accuracy, CoefficientGrid};
pub use image::{normalize, DiskImage, Geometry};
pub use projection::{decompose, reconstruct, reconstruct_with, Projection, Projector, Reconstruction};
