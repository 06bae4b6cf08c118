use std::collections::HashMap;

use num_complex::Complex64;

use super::{radial_poly, RadialPolynomial, ZernikeIndex};
use crate::{Error, Result};

/// `V_{k,l}(r, θ) = √(k+l+1) · R_{k+l}^{|k−l|}(r) · e^{i(k−l)θ}`.
pub fn eval_v(idx: ZernikeIndex, r: f64, theta: f64) -> Result<Complex64> {
    check_radius(r)?;
    let radial = radial_poly(idx.n(), idx.m_abs())?;
    Ok(((idx.n() + 1) as f64).sqrt()
        * radial.eval(r)
        * Complex64::from_polar(1.0, idx.m() as f64 * theta))
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("radius {r} is outside [0, 1]")));
    }
    Ok(())
}

/// An ordered set of basis functions with their radial polynomials built
/// once, for repeated evaluation at many points.
#[derive(Debug, Clone)]
pub struct BasisSet {
    indices: Vec<ZernikeIndex>,
    radials: Vec<RadialPolynomial>,
    // per index: (radial slot, normalization)
    slots: Vec<(usize, f64)>,
    orders: Vec<i64>,
}

impl BasisSet {
    pub fn new(indices: Vec<ZernikeIndex>) -> Result<Self> {
        let mut radials = Vec::new();
        let mut lookup: HashMap<(usize, usize), usize> = HashMap::new();
        let mut slots = Vec::with_capacity(indices.len());
        for idx in &indices {
            let key = (idx.n(), idx.m_abs());
            let slot = match lookup.get(&key) {
                Some(&s) => s,
                None => {
                    radials.push(radial_poly(key.0, key.1)?);
                    lookup.insert(key, radials.len() - 1);
                    radials.len() - 1
                }
            };
            slots.push((slot, ((idx.n() + 1) as f64).sqrt()));
        }
        let mut orders: Vec<i64> = indices.iter().map(|i| i.m()).collect();
        orders.sort_unstable();
        orders.dedup();
        Ok(Self {
            indices,
            radials,
            slots,
            orders,
        })
    }

    /// All `(k, l)` with `k ≤ k_max`, `l ≤ l_max`, `k`-major.
    pub fn rectangle(k_max: usize, l_max: usize) -> Result<Self> {
        Self::new(
            (0..=k_max)
                .flat_map(|k| (0..=l_max).map(move |l| ZernikeIndex::new(k, l)))
                .collect(),
        )
    }

    pub fn indices(&self) -> &[ZernikeIndex] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Writes `V_i(r, θ)` for every member into `out` (same order as
    /// [`indices`](Self::indices)). The radius is not range-checked.
    pub fn eval_into(&self, r: f64, theta: f64, out: &mut [Complex64]) {
        let radial: Vec<f64> = self.radials.iter().map(|p| p.eval(r)).collect();
        let phases: Vec<Complex64> = self
            .orders
            .iter()
            .map(|&m| Complex64::from_polar(1.0, m as f64 * theta))
            .collect();
        for (i, (idx, &(slot, norm))) in self.indices.iter().zip(&self.slots).enumerate() {
            let p = self.orders.binary_search(&idx.m()).unwrap_or(0);
            out[i] = phases[p] * (norm * radial[slot]);
        }
    }

    pub fn eval(&self, r: f64, theta: f64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.len()];
        self.eval_into(r, theta, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn v00_is_one() {
        for &(r, t) in &[(0.0, 0.0), (0.3, 1.0), (1.0, -2.5)] {
            let v = eval_v(ZernikeIndex::new(0, 0), r, t).unwrap();
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn v10_at_rim() {
        let v = eval_v(ZernikeIndex::new(1, 0), 1.0, 0.0).unwrap();
        assert!((v.re - 2f64.sqrt()).abs() < 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn conjugation_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let k = rng.random_range(0..10);
            let l = rng.random_range(0..10);
            let r: f64 = rng.random_range(0.0..=1.0);
            let t: f64 = rng.random_range(-4.0..4.0);
            let a = eval_v(ZernikeIndex::new(k, l), r, t).unwrap();
            let b = eval_v(ZernikeIndex::new(l, k), r, t).unwrap();
            let c = eval_v(ZernikeIndex::new(k, l), r, -t).unwrap();
            assert!((b - a.conj()).norm() < 1e-13);
            assert!((c - a.conj()).norm() < 1e-13);
        }
    }

    #[test]
    fn radius_domain() {
        assert!(matches!(
            eval_v(ZernikeIndex::new(1, 1), 1.01, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(eval_v(ZernikeIndex::new(1, 1), -0.1, 0.0).is_err());
    }

    #[test]
    fn basis_set_matches_pointwise() {
        let set = BasisSet::rectangle(5, 4).unwrap();
        let vals = set.eval(0.7, 0.4);
        for (idx, v) in set.indices().iter().zip(vals) {
            let direct = eval_v(*idx, 0.7, 0.4).unwrap();
            assert!((v - direct).norm() < 1e-14);
        }
    }
}
