use std::str::FromStr;

use num_complex::Complex64;

use crate::coeffs::CoefficientGrid;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterAxis {
    /// `k + l`, the radial degree.
    Radial,
    /// `|k − l|`, the azimuthal order.
    Angular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterMode {
    /// Keeps entries whose axis value is `≤ h`.
    LowPass,
    /// Keeps entries whose axis value is `> h`.
    HighPass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterSpec {
    pub axis: FilterAxis,
    pub mode: FilterMode,
    pub threshold: usize,
    /// Rescale the surviving entries back to the input energy.
    pub renormalize: bool,
}

impl FilterSpec {
    pub fn keeps(&self, k: usize, l: usize) -> bool {
        let value = match self.axis {
            FilterAxis::Radial => k + l,
            FilterAxis::Angular => k.abs_diff(l),
        };
        match self.mode {
            FilterMode::LowPass => value <= self.threshold,
            FilterMode::HighPass => value > self.threshold,
        }
    }
}

impl FromStr for FilterAxis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "radial" => Ok(Self::Radial),
            "angular" => Ok(Self::Angular),
            other => Err(Error::Parameter(format!("unknown filter axis `{other}`"))),
        }
    }
}

impl FromStr for FilterMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "low" | "low-pass" => Ok(Self::LowPass),
            "high" | "high-pass" => Ok(Self::HighPass),
            other => Err(Error::Parameter(format!("unknown filter mode `{other}`"))),
        }
    }
}

/// Zeroes every entry rejected by `spec`. With `renormalize`, the survivors
/// are scaled by `√(E_in / E_out)`.
pub fn apply_filter(spec: &FilterSpec, grid: &CoefficientGrid) -> Result<CoefficientGrid> {
    let kept = CoefficientGrid::from_fn(grid.k_max(), grid.l_max(), |k, l| {
        if spec.keeps(k, l) {
            grid.get(k, l)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let out_energy = kept.energy();
    if out_energy == 0.0 {
        return Err(Error::DegenerateOutput(
            "filter removed all energy from the grid".into(),
        ));
    }
    let mut out = if spec.renormalize {
        &kept * (grid.energy() / out_energy).sqrt()
    } else {
        kept
    };
    out.set_norm_tag(grid.norm_tag());
    Ok(out)
}
