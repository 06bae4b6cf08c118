use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::zernike::{eval_v, ZernikeIndex, MAX_RADIAL_ORDER};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Truncated coefficient matrix `f_{k,l}`, `0 ≤ k ≤ k_max`, `0 ≤ l ≤ l_max`.
///
/// Reads outside the stored rectangle return zero, so lowering operators and
/// sums of differently-shaped grids need no special casing.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientGrid {
    k_max: usize,
    l_max: usize,
    entries: Vec<Complex64>,
    norm_tag: Option<f64>,
}

impl CoefficientGrid {
    pub fn zeros(k_max: usize, l_max: usize) -> Self {
        Self {
            k_max,
            l_max,
            entries: vec![ZERO; (k_max + 1) * (l_max + 1)],
            norm_tag: None,
        }
    }

    /// Grid holding a single unit entry at `(k, l)`.
    pub fn delta(k: usize, l: usize) -> Self {
        let mut g = Self::zeros(k, l);
        g.set(k, l, Complex64::new(1.0, 0.0));
        g
    }

    pub fn from_fn<F>(k_max: usize, l_max: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> Complex64,
    {
        let mut g = Self::zeros(k_max, l_max);
        for k in 0..=k_max {
            for l in 0..=l_max {
                g.entries[k * (l_max + 1) + l] = f(k, l);
            }
        }
        g
    }

    /// Builds a grid from `k`-major entries.
    pub fn from_entries(k_max: usize, l_max: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != (k_max + 1) * (l_max + 1) {
            return Err(Error::Parameter(format!(
                "{} entries do not fill a {}x{} grid",
                entries.len(),
                k_max + 1,
                l_max + 1
            )));
        }
        Ok(Self {
            k_max,
            l_max,
            entries,
            norm_tag: None,
        })
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    /// Highest radial degree `k_max + l_max` present.
    pub fn max_order(&self) -> usize {
        self.k_max + self.l_max
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn norm_tag(&self) -> Option<f64> {
        self.norm_tag
    }

    pub fn set_norm_tag(&mut self, tag: Option<f64>) {
        self.norm_tag = tag;
    }

    pub fn with_norm_tag(mut self, tag: f64) -> Self {
        self.norm_tag = Some(tag);
        self
    }

    pub fn get(&self, k: usize, l: usize) -> Complex64 {
        if k <= self.k_max && l <= self.l_max {
            self.entries[k * (self.l_max + 1) + l]
        } else {
            ZERO
        }
    }

    /// # Panics
    /// When `(k, l)` lies outside the grid.
    pub fn set(&mut self, k: usize, l: usize, value: Complex64) {
        assert!(
            k <= self.k_max && l <= self.l_max,
            "({k}, {l}) outside {}x{} grid",
            self.k_max,
            self.l_max
        );
        self.entries[k * (self.l_max + 1) + l] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = (ZernikeIndex, Complex64)> + '_ {
        let cols = self.l_max + 1;
        self.entries
            .iter()
            .enumerate()
            .map(move |(i, &v)| (ZernikeIndex::new(i / cols, i % cols), v))
    }

    /// Copy resized to `k_max × l_max`, zero-padding or dropping entries.
    pub fn resized(&self, k_max: usize, l_max: usize) -> Self {
        let mut g = Self::from_fn(k_max, l_max, |k, l| self.get(k, l));
        g.norm_tag = self.norm_tag;
        g
    }

    /// `Σ |f_{k,l}|²`.
    pub fn energy(&self) -> f64 {
        self.entries.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Largest entrywise deviation, reading zeros outside either shape.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let k_max = self.k_max.max(other.k_max);
        let l_max = self.l_max.max(other.l_max);
        let mut worst: f64 = 0.0;
        for k in 0..=k_max {
            for l in 0..=l_max {
                worst = worst.max((self.get(k, l) - other.get(k, l)).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest violation of `f_{l,k} = conj(f_{k,l})` over index pairs stored
    /// in both orientations. Zero for grids of real functions.
    pub fn hermitian_defect(&self) -> f64 {
        let s = self.k_max.min(self.l_max);
        let mut worst: f64 = 0.0;
        for k in 0..=s {
            for l in k..=s {
                worst = worst.max((self.get(l, k) - self.get(k, l).conj()).norm());
            }
        }
        worst
    }

    /// `Σ f_{k,l} V_{k,l}(r, θ)`.
    pub fn evaluate(&self, r: f64, theta: f64) -> Result<Complex64> {
        self.check_order()?;
        let mut acc = ZERO;
        for (idx, v) in self.iter() {
            if v != ZERO {
                acc += v * eval_v(idx, r, theta)?;
            }
        }
        Ok(acc)
    }

    pub(crate) fn check_order(&self) -> Result<()> {
        if self.max_order() > MAX_RADIAL_ORDER {
            return Err(Error::Capability {
                order: self.max_order(),
                limit: MAX_RADIAL_ORDER,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let k_max = self.k_max.max(other.k_max);
        let l_max = self.l_max.max(other.l_max);
        Self::from_fn(k_max, l_max, |k, l| f(self.get(k, l), other.get(k, l)))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            k_max: self.k_max,
            l_max: self.l_max,
            entries: self.entries.iter().map(|&v| v * factor).collect(),
            norm_tag: None,
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            k_max: self.k_max,
            l_max: self.l_max,
            entries: self.entries.iter().map(|v| v.conj()).collect(),
            norm_tag: self.norm_tag,
        }
    }
}

impl Add for &CoefficientGrid {
    type Output = CoefficientGrid;
    fn add(self, rhs: Self) -> CoefficientGrid {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &CoefficientGrid {
    type Output = CoefficientGrid;
    fn sub(self, rhs: Self) -> CoefficientGrid {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<Complex64> for &CoefficientGrid {
    type Output = CoefficientGrid;
    fn mul(self, rhs: Complex64) -> CoefficientGrid {
        self.scaled(rhs)
    }
}

impl Mul<f64> for &CoefficientGrid {
    type Output = CoefficientGrid;
    fn mul(self, rhs: f64) -> CoefficientGrid {
        self.scaled(Complex64::new(rhs, 0.0))
    }
}

/// Parseval energy `Σ_{k,l} |f_{k,l}|²`.
pub fn parseval_energy(grid: &CoefficientGrid) -> f64 {
    grid.energy()
}

/// Smallest square truncation `k_M = l_M = s` (clamped to the grid) that keeps
/// at least `(1 − epsilon)` of the grid's energy.
pub fn truncate_to_accuracy(grid: &CoefficientGrid, epsilon: f64) -> Result<(usize, usize)> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Parameter(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    let total = grid.energy();
    let target = (1.0 - epsilon) * total;
    let side = grid.k_max.max(grid.l_max);
    // ring s adds entries with max(k, l) = s
    let mut retained = 0.0;
    for s in 0..=side {
        for k in 0..=s {
            retained += grid.get(k, s).norm_sqr();
            if k < s {
                retained += grid.get(s, k).norm_sqr();
            }
        }
        if retained >= target {
            return Ok((s.min(grid.k_max), s.min(grid.l_max)));
        }
    }
    Ok((grid.k_max, grid.l_max))
}
