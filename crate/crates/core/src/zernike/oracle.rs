//! Differential realization of the ladder generators.
//!
//! Each generator acts on a single basis function through a first-order
//! differential expression in `r` and `θ` whose coefficients read the labels
//! `(k, l)` of that function. The coefficient-grid algebra never uses this
//! path; it exists to check the recurrence action pointwise.

use num_complex::Complex64;

use super::{basis::check_radius, radial_poly, ZernikeIndex};
use crate::algebra::Generator;
use crate::{Error, Result};

/// Evaluates `gen` applied to `V_{k,l}` at `(r, θ)`.
///
/// `d/dr` is taken from the radial coefficient list, not by differencing.
/// The raising/lowering expressions carry `1/r` terms, so `r = 0` is
/// rejected. `A₃` and `B₃` act as multiplication by `k + ½` and `l + ½`.
pub fn diff_apply(gen: Generator, idx: ZernikeIndex, r: f64, theta: f64) -> Result<Complex64> {
    check_radius(r)?;
    if r == 0.0 {
        return Err(Error::Singularity);
    }
    let n = idx.n() as f64;
    let m = idx.m() as f64;
    let radial = radial_poly(idx.n(), idx.m_abs())?;
    let norm = (n + 1.0).sqrt();
    let phase = Complex64::from_polar(1.0, m * theta);
    let v = phase * (norm * radial.eval(r));
    let dv = phase * (norm * radial.eval_derivative(r));
    let one_minus_r2 = 1.0 - r * r;

    let out = match gen {
        Generator::A3 => v * (idx.k as f64 + 0.5),
        Generator::B3 => v * (idx.l as f64 + 0.5),
        Generator::APlus => {
            let bracket = -dv * one_minus_r2 + v * (r * (n + 2.0)) + v * (m / r);
            Complex64::from_polar(0.5, theta) * bracket * ((n + 2.0) / (n + 1.0)).sqrt()
        }
        Generator::AMinus => {
            let bracket = dv * one_minus_r2 + v * (r * n) + v * (m / r);
            Complex64::from_polar(0.5, -theta) * bracket * (n / (n + 1.0)).sqrt()
        }
        Generator::BPlus => {
            let bracket = -dv * one_minus_r2 + v * (r * (n + 2.0)) - v * (m / r);
            Complex64::from_polar(0.5, -theta) * bracket * ((n + 2.0) / (n + 1.0)).sqrt()
        }
        Generator::BMinus => {
            let bracket = dv * one_minus_r2 + v * (r * n) - v * (m / r);
            Complex64::from_polar(0.5, theta) * bracket * (n / (n + 1.0)).sqrt()
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zernike::eval_v;

    fn recurrence_rhs(gen: Generator, idx: ZernikeIndex, r: f64, t: f64) -> Complex64 {
        let (k, l) = (idx.k, idx.l);
        let v = |k, l| eval_v(ZernikeIndex::new(k, l), r, t).unwrap();
        match gen {
            Generator::APlus => v(k + 1, l) * (k + 1) as f64,
            Generator::AMinus if k == 0 => Complex64::new(0.0, 0.0),
            Generator::AMinus => v(k - 1, l) * k as f64,
            Generator::BPlus => v(k, l + 1) * (l + 1) as f64,
            Generator::BMinus if l == 0 => Complex64::new(0.0, 0.0),
            Generator::BMinus => v(k, l - 1) * l as f64,
            Generator::A3 => v(k, l) * (k as f64 + 0.5),
            Generator::B3 => v(k, l) * (l as f64 + 0.5),
        }
    }

    #[test]
    fn a_plus_on_vacuum() {
        for &(r, t) in &[(0.2, 0.1), (0.9, 2.0), (1.0, -1.0)] {
            let got = diff_apply(Generator::APlus, ZernikeIndex::new(0, 0), r, t).unwrap();
            let want = Complex64::from_polar(2f64.sqrt() * r, t);
            assert!((got - want).norm() < 1e-14);
        }
    }

    #[test]
    fn a_minus_on_vacuum_vanishes() {
        let got = diff_apply(Generator::AMinus, ZernikeIndex::new(0, 0), 0.5, 0.3).unwrap();
        assert!(got.norm() < 1e-15);
    }

    #[test]
    fn b_plus_on_11() {
        let idx = ZernikeIndex::new(1, 1);
        let mut worst: f64 = 0.0;
        for i in 0..20 {
            let r = 0.05 + 0.95 * i as f64 / 19.0;
            for j in 0..20 {
                let t = 2.0 * std::f64::consts::PI * j as f64 / 20.0;
                let got = diff_apply(Generator::BPlus, idx, r, t).unwrap();
                let want = eval_v(ZernikeIndex::new(1, 2), r, t).unwrap() * 2.0;
                worst = worst.max((got - want).norm());
            }
        }
        assert!(worst < 1e-9, "{worst}");
    }

    #[test]
    fn all_generators_match_recurrence() {
        for gen in Generator::ALL {
            for k in 0..=6 {
                for l in 0..=6 {
                    let idx = ZernikeIndex::new(k, l);
                    for &(r, t) in &[(0.05, 0.0), (0.37, 1.3), (0.81, -2.2), (1.0, 3.0)] {
                        let got = diff_apply(gen, idx, r, t).unwrap();
                        let want = recurrence_rhs(gen, idx, r, t);
                        assert!((got - want).norm() < 1e-9, "{gen:?} {idx} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn origin_is_rejected() {
        assert!(matches!(
            diff_apply(Generator::APlus, ZernikeIndex::new(1, 0), 0.0, 0.0),
            Err(Error::Singularity)
        ));
        assert!(matches!(
            diff_apply(Generator::APlus, ZernikeIndex::new(1, 0), 1.5, 0.0),
            Err(Error::Domain(_))
        ));
    }
}
