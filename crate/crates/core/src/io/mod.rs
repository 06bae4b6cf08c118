//! File formats.
//!
//! - PGM images (`P2`/`P5` in, 16-bit `P5` out), see [`read_pgm`].
//! - Coefficient grids: header `k_max l_max`, then one `k l re im` row per
//!   entry in lexicographic order, values with 17 significant digits.
//! - Operator specs: one monomial per line, `re im a1 a2 a3 b1 b2 b3`, `#`
//!   starts a comment.
//! - Defect models: a directory holding `defect.hdr`, `defect.coef` and
//!   `inverse.coef`.

mod coef;
mod model;
mod opspec;
mod pgm;

pub use coef::{format_grid, parse_grid, read_grid, write_grid};
pub use model::{load_model, save_model};
pub use opspec::{format_operator, parse_operator, read_operator, write_operator};
pub use pgm::{encode_pgm, encode_mask, parse_pgm, quantize, read_pgm, write_mask, write_pgm};
