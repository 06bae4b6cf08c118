//! Self-checks run by `aip verify`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    apply_generator, casimir_apply, commutator_apply, expected_commutator, Family, Generator,
    invert_raising_series, series_product,
};
use crate::coeffs::CoefficientGrid;
use crate::pipeline::{apply_filter, FilterAxis, FilterMode, FilterSpec};
use crate::zernike::{oracle::diff_apply, BasisSet, PolarQuadrature, ZernikeIndex};
use crate::Exec;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn below(name: &str, value: f64, tol: f64) -> Self {
        Self {
            name: name.to_string(),
            passed: value.is_finite() && value <= tol,
            detail: format!("max error {value:.3e} (tolerance {tol:.0e})"),
        }
    }
}

/// Uniform entries in the unit square of the complex plane.
pub fn random_grid(rng: &mut impl Rng, k_max: usize, l_max: usize) -> CoefficientGrid {
    CoefficientGrid::from_fn(k_max, l_max, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

pub fn orthonormality_error(max_index: usize) -> f64 {
    let basis = BasisSet::rectangle(max_index, max_index).expect("order within limit");
    let q = PolarQuadrature::exact_for_order(2 * max_index);
    let gram = q.gram(&basis, Exec::default());
    let d = basis.len();
    (0..d * d)
        .map(|i| {
            let want = if i / d == i % d { 1.0 } else { 0.0 };
            (gram[i] - want).norm()
        })
        .fold(0.0, f64::max)
}

/// Largest gap between the differential and coefficient actions of every
/// generator on `V_{k,l}`, `k, l ≤ max_index`, over an `n × n` polar grid with
/// `r ≥ r_min`.
pub fn oracle_error(max_index: usize, n: usize, r_min: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for k in 0..=max_index {
        for l in 0..=max_index {
            let idx = ZernikeIndex::new(k, l);
            let delta = CoefficientGrid::delta(k, l);
            for gen in Generator::ALL {
                let image = apply_generator(gen, &delta);
                for i in 0..n {
                    let r = r_min + (1.0 - r_min) * i as f64 / (n - 1) as f64;
                    for j in 0..n {
                        let t = std::f64::consts::TAU * j as f64 / n as f64;
                        let a = diff_apply(gen, idx, r, t).expect("r > 0 inside the disk");
                        let b = image.evaluate(r, t).expect("inside the disk");
                        worst = worst.max((a - b).norm());
                    }
                }
            }
        }
    }
    worst
}

/// Worst absolute commutator and Casimir error over `trials` random grids.
pub fn algebra_error(rng: &mut impl Rng, trials: usize, order: usize) -> (f64, f64) {
    let mut comm: f64 = 0.0;
    let mut cas: f64 = 0.0;
    for _ in 0..trials {
        let f = random_grid(rng, order, order);
        for (i, &g1) in Generator::ALL.iter().enumerate() {
            for &g2 in &Generator::ALL[i + 1..] {
                let got = commutator_apply(g1, g2, &f);
                let want = match expected_commutator(g1, g2) {
                    Some((c, g)) => &apply_generator(g, &f) * c,
                    None => CoefficientGrid::zeros(0, 0),
                };
                comm = comm.max(got.max_abs_diff(&want));
            }
        }
        for family in [Family::A, Family::B] {
            let want = &f * 0.25;
            cas = cas.max(casimir_apply(family, &f).max_abs_diff(&want));
        }
    }
    (comm, cas)
}

/// A defect series in state convention with `f_{0,0} = 1` and every other
/// entry of modulus at most `bound`, with uniformly random phase.
pub fn random_defect(rng: &mut impl Rng, order: usize, bound: f64) -> CoefficientGrid {
    let mut f = CoefficientGrid::from_fn(order, order, |_, _| {
        Complex64::from_polar(
            bound * rng.random_range(0.0..=1.0),
            rng.random_range(0.0..std::f64::consts::TAU),
        )
    });
    f.set(0, 0, Complex64::new(1.0, 0.0));
    f
}

/// Worst entrywise `|F · F⁻¹ − 1|` over random defect series, in state
/// convention.
pub fn inversion_error(rng: &mut impl Rng, trials: usize, order: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let f = random_defect(rng, order, 0.3);
        let inv = invert_raising_series(&f).expect("unit constant term");
        let prod = series_product(&inv, &f, order, order);
        worst = worst.max(prod.max_abs_diff(&CoefficientGrid::delta(0, 0)));
    }
    worst
}

/// Low and high passes split every grid exactly.
pub fn filter_split_error(rng: &mut impl Rng, trials: usize, order: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let f = random_grid(rng, order, order);
        for axis in [FilterAxis::Radial, FilterAxis::Angular] {
            for h in 0..order {
                let spec = |mode| FilterSpec {
                    axis,
                    mode,
                    threshold: h,
                    renormalize: false,
                };
                let low = apply_filter(&spec(FilterMode::LowPass), &f).expect("nonempty");
                let high = apply_filter(&spec(FilterMode::HighPass), &f).expect("nonempty");
                let overlap = low
                    .entries()
                    .iter()
                    .zip(high.entries())
                    .map(|(a, b)| a.norm() * b.norm())
                    .fold(0.0, f64::max);
                worst = worst.max((&(&low + &high) - &f).max_abs()).max(overlap);
            }
        }
    }
    worst
}

pub fn run_all(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (comm, cas) = algebra_error(&mut rng, 20, 10);
    vec![
        Check::below("orthonormality k,l <= 8", orthonormality_error(8), 1e-10),
        Check::below("differential oracle k,l <= 6", oracle_error(6, 12, 0.05), 1e-9),
        Check::below("commutators", comm, 1e-12),
        Check::below("casimir = 1/4", cas, 1e-12),
        Check::below("series inversion", inversion_error(&mut rng, 100, 6), 1e-10),
        Check::below("filter split", filter_split_error(&mut rng, 5, 8), 0.0),
    ]
}
