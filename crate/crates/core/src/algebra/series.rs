use num_complex::Complex64;

use super::{apply_operator, Monomial, OperatorSpec};
use crate::coeffs::CoefficientGrid;
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Smallest `|f_{0,0}|` accepted by the series reciprocal.
pub const INVERTIBILITY_TOLERANCE: f64 = 1e-12;

/// `1/0!, 1/1!, .., 1/n!`, each obtained from the previous by one division.
fn inverse_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 1.0;
    out.push(acc);
    for i in 1..=n {
        acc /= i as f64;
        out.push(acc);
    }
    out
}

fn factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 1.0;
    out.push(acc);
    for i in 1..=n {
        acc *= i as f64;
        out.push(acc);
    }
    out
}

/// A raising-only operator `Σ d_{k,l} A₊^k B₊^l`.
///
/// Since `A₊^k B₊^l V_{0,0} = k! l! V_{k,l}`, the state it produces from the
/// vacuum has coefficients `f_{k,l} = k! l! d_{k,l}`. Raising operators
/// commute, so these series multiply like bivariate power series.
#[derive(Debug, Clone, PartialEq)]
pub struct RaisingSeries {
    coeffs: CoefficientGrid,
}

impl RaisingSeries {
    /// Operator coefficients `d_{k,l}` given directly.
    pub fn from_operator_coeffs(coeffs: CoefficientGrid) -> Self {
        let mut coeffs = coeffs;
        coeffs.set_norm_tag(None);
        Self { coeffs }
    }

    /// The series `Σ f_{k,l} A₊^k B₊^l / (k! l!)` whose vacuum image is `state`.
    pub fn from_state(state: &CoefficientGrid) -> Self {
        let ik = inverse_factorials(state.k_max());
        let il = inverse_factorials(state.l_max());
        Self {
            coeffs: CoefficientGrid::from_fn(state.k_max(), state.l_max(), |k, l| {
                state.get(k, l) * ik[k] * il[l]
            }),
        }
    }

    /// `f_{k,l} = k! l! d_{k,l}`.
    pub fn to_state(&self) -> CoefficientGrid {
        let fk = factorials(self.coeffs.k_max());
        let fl = factorials(self.coeffs.l_max());
        CoefficientGrid::from_fn(self.coeffs.k_max(), self.coeffs.l_max(), |k, l| {
            self.coeffs.get(k, l) * fk[k] * fl[l]
        })
    }

    pub fn operator_coeffs(&self) -> &CoefficientGrid {
        &self.coeffs
    }

    pub fn k_max(&self) -> usize {
        self.coeffs.k_max()
    }

    pub fn l_max(&self) -> usize {
        self.coeffs.l_max()
    }

    /// Product truncated to `k ≤ k_max`, `l ≤ l_max`.
    pub fn product(&self, other: &Self, k_max: usize, l_max: usize) -> Self {
        let a = &self.coeffs;
        let b = &other.coeffs;
        let prod = CoefficientGrid::from_fn(k_max, l_max, |k, l| {
            let mut acc = ZERO;
            for i in 0..=k.min(a.k_max()) {
                for j in 0..=l.min(a.l_max()) {
                    let x = a.get(i, j);
                    if x != ZERO {
                        acc += x * b.get(k - i, l - j);
                    }
                }
            }
            acc
        });
        Self { coeffs: prod }
    }

    /// Reciprocal series to order `k_max × l_max`:
    /// `h_{0,0} = 1/d_{0,0}`,
    /// `h_{k,l} = −(1/d_{0,0}) Σ_{(i,j) ≠ (0,0)} d_{i,j} h_{k−i,l−j}`.
    pub fn inverse(&self, k_max: usize, l_max: usize) -> Result<Self> {
        let d = &self.coeffs;
        let d00 = d.get(0, 0);
        if d00.norm() <= INVERTIBILITY_TOLERANCE {
            return Err(Error::NonInvertibleDefect(d00.norm()));
        }
        let inv00 = d00.inv();
        let mut h = CoefficientGrid::zeros(k_max, l_max);
        // lexicographic order visits every (k−i, l−j) before (k, l)
        for k in 0..=k_max {
            for l in 0..=l_max {
                if k == 0 && l == 0 {
                    h.set(0, 0, inv00);
                    continue;
                }
                let mut acc = ZERO;
                for i in 0..=k.min(d.k_max()) {
                    for j in 0..=l.min(d.l_max()) {
                        if i == 0 && j == 0 {
                            continue;
                        }
                        let x = d.get(i, j);
                        if x != ZERO {
                            acc += x * h.get(k - i, l - j);
                        }
                    }
                }
                h.set(k, l, -inv00 * acc);
            }
        }
        Ok(Self { coeffs: h })
    }

    /// The same series as an operator polynomial of raising monomials.
    pub fn to_operator(&self) -> OperatorSpec {
        OperatorSpec::new(
            self.coeffs
                .iter()
                .filter(|(_, v)| *v != ZERO)
                .map(|(idx, v)| Monomial::raising(v, idx.k as u32, idx.l as u32))
                .collect(),
        )
    }

    /// Applies the operator form to `V_{0,0}` and returns the resulting grid.
    pub fn apply_to_vacuum(&self) -> CoefficientGrid {
        apply_operator(&self.to_operator(), &CoefficientGrid::delta(0, 0))
            .resized(self.k_max(), self.l_max())
    }
}

/// Inverse of the defect operator `Σ f_{k,l} A₊^k B₊^l / (k! l!)`, returned in
/// the same state convention (`f_{k,l}`) and shape as `defect`.
pub fn invert_raising_series(defect: &CoefficientGrid) -> Result<CoefficientGrid> {
    let series = RaisingSeries::from_state(defect);
    Ok(series.inverse(defect.k_max(), defect.l_max())?.to_state())
}

/// Product of two raising series given in state convention, truncated to
/// `k_max × l_max` and returned in state convention.
pub fn series_product(
    a: &CoefficientGrid,
    b: &CoefficientGrid,
    k_max: usize,
    l_max: usize,
) -> CoefficientGrid {
    RaisingSeries::from_state(a)
        .product(&RaisingSeries::from_state(b), k_max, l_max)
        .to_state()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_inverse() {
        let inv = invert_raising_series(&CoefficientGrid::delta(0, 0)).unwrap();
        assert_eq!(inv, CoefficientGrid::delta(0, 0));
    }

    #[test]
    fn geometric_series() {
        let eps = 0.2;
        let mut f = CoefficientGrid::zeros(6, 0);
        f.set(0, 0, c(1.0));
        f.set(1, 0, c(eps));
        let h = RaisingSeries::from_state(&f).inverse(6, 0).unwrap();
        let mut fact = 1.0;
        let state = h.to_state();
        for n in 0..=6 {
            if n > 0 {
                fact *= n as f64;
            }
            // operator coefficients are (−ε)^n; the state grid carries n!
            let want = (-eps).powi(n as i32);
            assert!((h.operator_coeffs().get(n, 0) - c(want)).norm() < 1e-15);
            assert!((state.get(n, 0) - c(want * fact)).norm() < 1e-13);
        }
        let id = series_product(&f, &state, 6, 0);
        assert!(id.max_abs_diff(&CoefficientGrid::delta(0, 0)) < 1e-13);
    }

    #[test]
    fn rejects_vanishing_constant_term() {
        let mut f = CoefficientGrid::zeros(2, 2);
        f.set(1, 0, c(1.0));
        assert!(matches!(
            invert_raising_series(&f),
            Err(Error::NonInvertibleDefect(_))
        ));
        f.set(0, 0, c(1e-13));
        assert!(invert_raising_series(&f).is_err());
    }

    #[test]
    fn complex_constant_term() {
        let f = &CoefficientGrid::delta(0, 0) * Complex64::new(0.0, 2.0);
        let inv = invert_raising_series(&f).unwrap();
        assert!((inv.get(0, 0) - Complex64::new(0.0, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn state_round_trip_and_vacuum_action() {
        let f = CoefficientGrid::from_fn(4, 3, |k, l| Complex64::new(k as f64 + 1.0, l as f64 - 1.0));
        let s = RaisingSeries::from_state(&f);
        assert!(s.to_state().max_abs_diff(&f) < 1e-13);
        assert!(s.apply_to_vacuum().max_abs_diff(&f) < 1e-13);
    }
}
