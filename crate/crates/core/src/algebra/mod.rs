//! The six generators of `su(1,1) ⊕ su(1,1)` acting on coefficient grids,
//! ordered monomials of the enveloping algebra, and raising-series inversion.
//!
//! On basis functions the generators act as
//!
//! ```text
//! A₊ V_{k,l} = (k+1) V_{k+1,l}    A₋ V_{k,l} = k V_{k−1,l}    A₃ = K + ½
//! B₊ V_{k,l} = (l+1) V_{k,l+1}    B₋ V_{k,l} = l V_{k,l−1}    B₃ = L + ½
//! ```
//!
//! so on coefficients `A₊` sends `f_{k−1,l}` to `k·f_{k−1,l}` at `(k, l)`, and
//! so on. Every action is a reindexing with an integer or half-integer
//! weight.

mod generator;
mod operator;
mod series;

pub use generator::{apply_generator, casimir_apply, commutator_apply, expected_commutator, Family, Generator};
pub use operator::{apply_monomial, apply_operator, Monomial, OperatorSpec};
pub use series::{invert_raising_series, series_product, RaisingSeries};
