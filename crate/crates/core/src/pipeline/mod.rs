//! End-to-end workflows: band filters, defect estimation from a null-signal
//! image, and correction of observations taken with the same instrument.

mod defect;
mod filter;

pub use defect::{correct_image, estimate_defect, Correction, DefectModel, PipelineConfig};
pub use filter::{apply_filter, FilterAxis, FilterMode, FilterSpec};

/// Default relative energy allowed to be discarded when truncating.
pub const DEFAULT_EPSILON: f64 = 1e-4;

/// Hermitian defect above which a decomposed grid is reported as not
/// representing a real modulus image.
pub const RESIDUAL_WARNING: f64 = 1e-6;
