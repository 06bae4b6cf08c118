use std::f64::consts::PI;

use num_complex::Complex64;

use super::BasisSet;
use crate::{Error, Exec, Result};

/// Gauss–Legendre nodes and weights on `[0, 1]`, by Newton iteration on the
/// Legendre three-term recurrence. Weights sum to 1.
pub fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x descends from near 1; store ascending in u = (x + 1) / 2
        nodes[n - 1 - i] = (1.0 + x) / 2.0;
        nodes[i] = (1.0 - x) / 2.0;
        weights[n - 1 - i] = w / 2.0;
        weights[i] = w / 2.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// Product rule for `(1/2π) ∫_0^{2π} dθ ∫_0^1 d(r²)`: Gauss–Legendre in
/// `u = r²` times the uniform trapezoid rule in `θ`.
///
/// With `n_radial` nodes the radial rule is exact for polynomials in `u` of
/// degree `2·n_radial − 1`; the angular rule is exact for `e^{iqθ}` with
/// `|q| < n_theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarQuadrature {
    radial_nodes: Vec<f64>,
    radial_weights: Vec<f64>,
    n_theta: usize,
}

impl Default for PolarQuadrature {
    fn default() -> Self {
        Self::new(64, 256).expect("default rule sizes are valid")
    }
}

/// One node of a [`PolarQuadrature`]; `weight` already contains the `1/2π`.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureNode {
    pub r: f64,
    pub theta: f64,
    pub weight: f64,
}

impl PolarQuadrature {
    pub fn new(n_radial: usize, n_theta: usize) -> Result<Self> {
        if n_radial == 0 || n_theta == 0 {
            return Err(Error::Parameter(
                "quadrature needs at least one radial and one angular node".into(),
            ));
        }
        let (radial_nodes, radial_weights) = gauss_legendre_unit(n_radial);
        Ok(Self {
            radial_nodes,
            radial_weights,
            n_theta,
        })
    }

    /// Smallest rule that integrates products `V*_{k,l} V_{k',l'}` exactly for
    /// all indices with `k + l ≤ max_order`.
    pub fn exact_for_order(max_order: usize) -> Self {
        Self::new(max_order / 2 + 1, 2 * max_order + 1).expect("sizes are positive")
    }

    /// Radial nodes in `u = r²`.
    pub fn radial_nodes(&self) -> &[f64] {
        &self.radial_nodes
    }

    /// Radial weights, summing to 1.
    pub fn radial_weights(&self) -> &[f64] {
        &self.radial_weights
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn len(&self) -> usize {
        self.radial_nodes.len() * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn node(&self, i: usize) -> QuadratureNode {
        let ir = i / self.n_theta;
        let it = i % self.n_theta;
        QuadratureNode {
            r: self.radial_nodes[ir].sqrt(),
            theta: 2.0 * PI * it as f64 / self.n_theta as f64,
            weight: self.radial_weights[ir] / self.n_theta as f64,
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = QuadratureNode> + '_ {
        (0..self.len()).map(|i| self.node(i))
    }

    pub fn integrate<F>(&self, f: F) -> Complex64
    where
        F: Fn(f64, f64) -> Complex64,
    {
        self.nodes().map(|q| f(q.r, q.theta) * q.weight).sum()
    }

    /// Matrix of inner products `⟨V_a, V_b⟩` over a basis set, row-major.
    pub fn gram(&self, basis: &BasisSet, exec: Exec) -> Vec<Complex64> {
        let d = basis.len();
        let values: Vec<Vec<Complex64>> = exec.map_range(self.len(), |i| {
            let q = self.node(i);
            basis.eval(q.r, q.theta)
        });
        let weights: Vec<f64> = self.nodes().map(|q| q.weight).collect();
        let rows = exec.map_range(d, |a| {
            let mut row = vec![Complex64::new(0.0, 0.0); d];
            for (v, &w) in values.iter().zip(&weights) {
                let ca = v[a].conj() * w;
                for (b, slot) in row.iter_mut().enumerate() {
                    *slot += ca * v[b];
                }
            }
            row
        });
        rows.into_iter().flatten().collect()
    }
}

/// `(1/2π) ∫dθ ∫d(r²) f* g` under the rule `q`; conjugate-linear in `f`.
pub fn inner_product<F, G>(f: F, g: G, q: &PolarQuadrature) -> Complex64
where
    F: Fn(f64, f64) -> Complex64,
    G: Fn(f64, f64) -> Complex64,
{
    q.integrate(|r, t| f(r, t).conj() * g(r, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zernike::{eval_v, ZernikeIndex};

    #[test]
    fn weights_sum_to_one() {
        for n in [1, 2, 5, 16, 64, 101] {
            let (x, w) = gauss_legendre_unit(n);
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            assert!(x.iter().all(|&u| u > 0.0 && u < 1.0));
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn exact_on_monomials() {
        let n = 6;
        let (x, w) = gauss_legendre_unit(n);
        for deg in 0..2 * n {
            let s: f64 = x.iter().zip(&w).map(|(u, w)| w * u.powi(deg as i32)).sum();
            assert!((s - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "deg {deg}");
        }
    }

    #[test]
    fn angular_weights() {
        let q = PolarQuadrature::new(3, 17).unwrap();
        let total: f64 = q.nodes().map(|n| n.weight).sum();
        assert!((total - 1.0).abs() < 1e-14);
        let per_ring: f64 = (0..q.n_theta()).map(|_| 2.0 * PI / q.n_theta() as f64).sum();
        assert!((per_ring - 2.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn one_node_rule_v00() {
        let q = PolarQuadrature::new(1, 1).unwrap();
        let v = |r, t| eval_v(ZernikeIndex::new(0, 0), r, t).unwrap();
        assert_eq!(inner_product(v, v, &q), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn normalization_and_orthogonality() {
        let q = PolarQuadrature::default();
        let v = |k, l| move |r, t| eval_v(ZernikeIndex::new(k, l), r, t).unwrap();
        for k in 0..=8 {
            for l in 0..=8 {
                let ip = inner_product(v(k, l), v(k, l), &q);
                assert!((ip - 1.0).norm() < 1e-10);
            }
        }
        assert!(inner_product(v(2, 1), v(1, 2), &q).norm() < 1e-10);
    }

    #[test]
    fn conjugate_linear_first_argument() {
        let q = PolarQuadrature::new(8, 16).unwrap();
        let a = Complex64::new(0.3, -1.2);
        let f = |r, t| eval_v(ZernikeIndex::new(1, 0), r, t).unwrap();
        let g = |r, t| eval_v(ZernikeIndex::new(1, 0), r, t).unwrap();
        let lhs = inner_product(|r, t| a * f(r, t), g, &q);
        let rhs = a.conj() * inner_product(f, g, &q);
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn rejects_empty_rule() {
        assert!(PolarQuadrature::new(0, 4).is_err());
        assert!(PolarQuadrature::new(4, 0).is_err());
    }
}
