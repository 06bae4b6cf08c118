use num_complex::Complex64;

use super::{apply_generator, Generator};
use crate::coeffs::CoefficientGrid;
use crate::Exec;

/// `c · A₊^{α₁} A₃^{α₂} A₋^{α₃} B₊^{β₁} B₃^{β₂} B₋^{β₃}`.
///
/// The factor order is fixed; acting on a grid, the rightmost factor
/// (`B₋^{β₃}`) is applied first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub coeff: Complex64,
    pub alpha: [u32; 3],
    pub beta: [u32; 3],
}

impl Monomial {
    pub fn new(coeff: Complex64, alpha: [u32; 3], beta: [u32; 3]) -> Self {
        Self { coeff, alpha, beta }
    }

    pub fn identity() -> Self {
        Self::new(Complex64::new(1.0, 0.0), [0; 3], [0; 3])
    }

    /// `c · A₊^k B₊^l`.
    pub fn raising(coeff: Complex64, k: u32, l: u32) -> Self {
        Self::new(coeff, [k, 0, 0], [l, 0, 0])
    }

    /// Factors in application order (rightmost first).
    fn factors(&self) -> [(Generator, u32); 6] {
        [
            (Generator::BMinus, self.beta[2]),
            (Generator::B3, self.beta[1]),
            (Generator::BPlus, self.beta[0]),
            (Generator::AMinus, self.alpha[2]),
            (Generator::A3, self.alpha[1]),
            (Generator::APlus, self.alpha[0]),
        ]
    }

    /// Net shift `(Δk, Δl)` of every basis index.
    pub fn shift(&self) -> (i64, i64) {
        (
            self.alpha[0] as i64 - self.alpha[2] as i64,
            self.beta[0] as i64 - self.beta[2] as i64,
        )
    }
}

pub fn apply_monomial(m: &Monomial, grid: &CoefficientGrid) -> CoefficientGrid {
    let mut out = grid.clone();
    out.set_norm_tag(None);
    for (gen, power) in m.factors() {
        for _ in 0..power {
            out = apply_generator(gen, &out);
        }
    }
    out.scaled(m.coeff)
}

/// Finite sum of ordered monomials.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OperatorSpec {
    pub monomials: Vec<Monomial>,
}

impl OperatorSpec {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        Self { monomials }
    }

    pub fn identity() -> Self {
        Self::new(vec![Monomial::identity()])
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn apply(&self, grid: &CoefficientGrid) -> CoefficientGrid {
        self.apply_with(grid, Exec::default())
    }

    /// Monomials are applied independently and summed in list order.
    pub fn apply_with(&self, grid: &CoefficientGrid, exec: Exec) -> CoefficientGrid {
        let terms = exec.map_range(self.monomials.len(), |i| apply_monomial(&self.monomials[i], grid));
        let zero = CoefficientGrid::zeros(grid.k_max(), grid.l_max());
        terms.iter().fold(zero, |acc, t| &acc + t)
    }
}

pub fn apply_operator(op: &OperatorSpec, grid: &CoefficientGrid) -> CoefficientGrid {
    op.apply(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_monomial() {
        let g = CoefficientGrid::from_fn(2, 3, |k, l| Complex64::new(k as f64, -(l as f64)));
        assert_eq!(apply_monomial(&Monomial::identity(), &g), g);
        assert_eq!(apply_operator(&OperatorSpec::identity(), &g), g);
    }

    #[test]
    fn a_plus_squared_on_vacuum() {
        let m = Monomial::new(c(1.0), [2, 0, 0], [0; 3]);
        let g = apply_monomial(&m, &CoefficientGrid::delta(0, 0));
        assert_eq!(g.max_abs_diff(&(&CoefficientGrid::delta(2, 0) * 2.0)), 0.0);
    }

    #[test]
    fn scaled_raising_reaches_delta() {
        let mut fact = 1.0;
        let facts: Vec<f64> = (0..6)
            .map(|i| {
                if i > 0 {
                    fact *= i as f64;
                }
                fact
            })
            .collect();
        for k in 0..6 {
            for l in 0..6 {
                let m = Monomial::raising(c(1.0 / (facts[k] * facts[l])), k as u32, l as u32);
                let g = apply_monomial(&m, &CoefficientGrid::delta(0, 0));
                assert!(g.max_abs_diff(&CoefficientGrid::delta(k, l)) < 1e-15);
            }
        }
    }

    #[test]
    fn a_plus_plus_a_minus_on_10() {
        let op = OperatorSpec::new(vec![
            Monomial::new(c(1.0), [1, 0, 0], [0; 3]),
            Monomial::new(c(1.0), [0, 0, 1], [0; 3]),
        ]);
        let g = op.apply(&CoefficientGrid::delta(1, 0));
        let mut want = CoefficientGrid::zeros(2, 0);
        want.set(0, 0, c(1.0));
        want.set(2, 0, c(2.0));
        assert_eq!(g.max_abs_diff(&want), 0.0);
        assert_eq!((g.k_max(), g.l_max()), (2, 0));
    }

    #[test]
    fn lowering_before_raising_order() {
        // A₊A₋ on delta(0,0) is zero, A₋ then A₊ of an ordered monomial is A₊·A₋
        let m = Monomial::new(c(1.0), [1, 0, 1], [0; 3]);
        assert_eq!(apply_monomial(&m, &CoefficientGrid::delta(0, 0)).max_abs(), 0.0);
        let g = apply_monomial(&m, &CoefficientGrid::delta(2, 0));
        assert_eq!(g.get(2, 0), c(4.0));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let op = OperatorSpec::new(
            (0..8)
                .map(|i| Monomial::new(c(0.1 * i as f64), [i % 3, i % 2, 1], [1, i % 4, 0]))
                .collect(),
        );
        let g = CoefficientGrid::from_fn(3, 3, |k, l| Complex64::new(k as f64 - 0.5, l as f64 * 0.25));
        let a = op.apply_with(&g, Exec::Sequential);
        let b = op.apply_with(&g, Exec::Parallel);
        assert_eq!(a, b);
    }
}
