use super::MAX_RADIAL_ORDER;
use crate::{Error, Result};

/// Radial Zernike polynomial `R_n^{|m|}(r)` in explicit coefficient form.
///
/// `coeffs[s]` multiplies `r^{n−2s}` for `s = 0..=(n−|m|)/2`, so only powers
/// with the parity of `n` appear.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialPolynomial {
    n: usize,
    m_abs: usize,
    coeffs: Vec<f64>,
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Builds `R_n^{m_abs}` from the closed form
/// `(−1)^s (n−s)! / (s! ((n+m)/2−s)! ((n−m)/2−s)!)`, written as a product of
/// two binomials so every coefficient is an exact integer.
pub fn radial_poly(n: usize, m_abs: usize) -> Result<RadialPolynomial> {
    if m_abs > n || !(n - m_abs).is_multiple_of(2) {
        return Err(Error::InvalidIndex(format!(
            "radial polynomial needs n >= |m| and n - |m| even, got n = {n}, |m| = {m_abs}"
        )));
    }
    if n > MAX_RADIAL_ORDER {
        return Err(Error::Capability {
            order: n,
            limit: MAX_RADIAL_ORDER,
        });
    }
    let half = (n - m_abs) / 2;
    let coeffs = (0..=half)
        .map(|s| {
            let magnitude = binomial(n - s, s) * binomial(n - 2 * s, half - s);
            let c = magnitude as f64;
            if s % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    Ok(RadialPolynomial { n, m_abs, coeffs })
}

impl RadialPolynomial {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m_abs(&self) -> usize {
        self.m_abs
    }

    /// Coefficients of `r^{n−2s}`, `s = 0, 1, ..`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Exponent attached to `coeffs()[s]`.
    pub fn power(&self, s: usize) -> usize {
        self.n - 2 * s
    }

    /// Horner evaluation in `u = r²`, followed by the `r^{|m|}` factor.
    pub fn eval(&self, r: f64) -> f64 {
        let u = r * r;
        // highest power of u belongs to s = 0
        let poly = self.coeffs.iter().fold(0.0, |acc, &c| acc * u + c);
        poly * r.powi(self.m_abs as i32)
    }

    /// Exact derivative `dR/dr`, from the shifted coefficient list.
    pub fn eval_derivative(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(s, &c)| {
                let p = self.power(s);
                if p == 0 {
                    0.0
                } else {
                    c * p as f64 * r.powi(p as i32 - 1)
                }
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        assert_eq!(radial_poly(0, 0).unwrap().coeffs(), &[1.0]);
        assert_eq!(radial_poly(1, 1).unwrap().coeffs(), &[1.0]);
        assert_eq!(radial_poly(1, 1).unwrap().power(0), 1);
        let r20 = radial_poly(2, 0).unwrap();
        assert_eq!(r20.coeffs(), &[2.0, -1.0]);
        assert_eq!(r20.power(0), 2);
        assert_eq!(r20.power(1), 0);
    }

    /// Gram–Schmidt of {1, u} under du on [0, 1], scaled so p(1) = 1, gives
    /// 2u − 1; u = r² makes it R_2^0.
    #[test]
    fn r20_matches_gram_schmidt() {
        // <1, u> = 1/2, <1, 1> = 1, so u - 1/2 is orthogonal to 1
        let p = |u: f64| (u - 0.5) / (1.0 - 0.5);
        let r20 = radial_poly(2, 0).unwrap();
        for i in 0..=10 {
            let r = i as f64 / 10.0;
            assert!((r20.eval(r) - p(r * r)).abs() < 1e-15);
        }
    }

    #[test]
    fn unit_at_rim_up_to_order_30() {
        for n in 0..=MAX_RADIAL_ORDER {
            for m in (n % 2..=n).step_by(2) {
                let r = radial_poly(n, m).unwrap();
                assert_eq!(r.coeffs().len(), (n - m) / 2 + 1);
                assert!((r.eval(1.0) - 1.0).abs() < 1e-12, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn parity_of_powers() {
        let r = radial_poly(9, 3).unwrap();
        for s in 0..r.coeffs().len() {
            assert_eq!(r.power(s) % 2, 1);
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let rp = radial_poly(8, 2).unwrap();
        let h = 1e-6;
        for i in 1..10 {
            let r = i as f64 / 10.0;
            let fd = (rp.eval(r + h) - rp.eval(r - h)) / (2.0 * h);
            assert!((rp.eval_derivative(r) - fd).abs() < 1e-6);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(radial_poly(3, 0), Err(Error::InvalidIndex(_))));
        assert!(matches!(radial_poly(2, 4), Err(Error::InvalidIndex(_))));
        assert!(matches!(radial_poly(32, 0), Err(Error::Capability { .. })));
    }
}
