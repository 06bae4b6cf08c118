use log::warn;

use super::RESIDUAL_WARNING;
use crate::algebra::RaisingSeries;
use crate::coeffs::{
    normalize, reconstruct_with, truncate_to_accuracy, CoefficientGrid, DiskImage, Projection,
    Projector,
};
use crate::{Error, Exec, Result};

/// Decomposition settings shared by the workflows.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub k_max: usize,
    pub l_max: usize,
    pub projection: Projection,
    pub exec: Exec,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            k_max: 12,
            l_max: 12,
            projection: Projection::LeastSquares,
            exec: Exec::default(),
        }
    }
}

impl PipelineConfig {
    fn decompose(&self, img: &DiskImage) -> Result<CoefficientGrid> {
        if img.disk_energy() <= 0.0 {
            return Err(Error::DegenerateInput(
                "image has no nonzero in-disk pixel".into(),
            ));
        }
        let projector = Projector::new(
            img.geometry(),
            self.k_max,
            self.l_max,
            &self.projection,
            self.exec,
        )?;
        Ok(projector
            .project(&img.amplitude())?
            .with_norm_tag(img.disk_energy()))
    }
}

/// Instrument response to a null signal, truncated, with its series inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectModel {
    grid: CoefficientGrid,
    inverse: CoefficientGrid,
    epsilon: f64,
    residual: f64,
}

impl DefectModel {
    /// Builds a model from a defect grid `f_{k,l}` (state convention).
    pub fn from_grid(grid: CoefficientGrid, epsilon: f64) -> Result<Self> {
        let inverse = RaisingSeries::from_state(&grid)
            .inverse(grid.k_max(), grid.l_max())?
            .to_state();
        let residual = grid.hermitian_defect();
        Ok(Self {
            grid,
            inverse,
            epsilon,
            residual,
        })
    }

    /// Reassembles a model from stored parts, checking that `inverse` really is
    /// the reciprocal of `grid`.
    pub fn from_parts(grid: CoefficientGrid, inverse: CoefficientGrid, epsilon: f64) -> Result<Self> {
        let model = Self::from_grid(grid, epsilon)?;
        let scale = 1.0 + model.inverse.max_abs();
        if model.inverse.max_abs_diff(&inverse) > 1e-9 * scale {
            return Err(Error::Format(
                "stored inverse does not match the defect grid".into(),
            ));
        }
        Ok(Self { inverse, ..model })
    }

    /// Defect coefficients `f_{k,l}`.
    pub fn grid(&self) -> &CoefficientGrid {
        &self.grid
    }

    /// Reciprocal defect series in state convention.
    pub fn inverse(&self) -> &CoefficientGrid {
        &self.inverse
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Truncation order `(k_M, l_M)`.
    pub fn truncation(&self) -> (usize, usize) {
        (self.grid.k_max(), self.grid.l_max())
    }

    /// Largest `|f_{l,k} − conj(f_{k,l})|` in the defect grid.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// The inverse series as operator coefficients, to order `k_max × l_max`.
    /// Orders beyond the cached inverse are recomputed from the defect grid.
    /// Inverse in state convention at the requested order.
    pub fn inverse_state(&self, k_max: usize, l_max: usize) -> CoefficientGrid {
        if (k_max, l_max) == (self.inverse.k_max(), self.inverse.l_max()) {
            return self.inverse.clone();
        }
        RaisingSeries::from_state(&self.grid)
            .inverse(k_max, l_max)
            .expect("constant term was checked at construction")
            .to_state()
    }
}

pub fn estimate_defect(
    null_img: &DiskImage,
    epsilon: f64,
    config: &PipelineConfig,
) -> Result<DefectModel> {
    let full = config.decompose(null_img)?;
    let (k_m, l_m) = truncate_to_accuracy(&full, epsilon)?;
    let mut grid = full.resized(k_m, l_m);
    grid.set_norm_tag(full.norm_tag());
    let model = DefectModel::from_grid(grid, epsilon)?;
    if model.residual > RESIDUAL_WARNING {
        warn!(
            "defect grid is not Hermitian (residual {:.3e}); the raising-series form may not describe a real image",
            model.residual
        );
    }
    Ok(model)
}

/// Output of [`correct_image`].
#[derive(Debug, Clone)]
pub struct Correction {
    /// Truncated decomposition `g_{k,l}` of the observation.
    pub observed: CoefficientGrid,
    /// Coefficients of the cleaned state.
    pub grid: CoefficientGrid,
    /// Cleaned modulus-squared image.
    pub image: DiskImage,
    /// `image` scaled to unit disk energy.
    pub normalized: DiskImage,
    /// Hermitian residual of `observed`.
    pub residual: f64,
}

/// Cleans an observation: `| (Σ g A₊^kB₊^l/k!l!) (Σ f A₊^kB₊^l/k!l!)^{-1} V_{0,0} |²`.
///
/// Both series are raising-only and commute, so the product is an ordinary
/// truncated bivariate series product, taken at the larger of the two
/// truncation orders.
pub fn correct_image(
    observed: &DiskImage,
    model: &DefectModel,
    epsilon: f64,
    config: &PipelineConfig,
) -> Result<Correction> {
    let full = config.decompose(observed)?;
    let (g_k, g_l) = truncate_to_accuracy(&full, epsilon)?;
    let g = full.resized(g_k, g_l);
    let residual = g.hermitian_defect();
    if residual > RESIDUAL_WARNING {
        warn!("observation grid is not Hermitian (residual {residual:.3e})");
    }
    let (m_k, m_l) = model.truncation();
    let (k_max, l_max) = (g_k.max(m_k), g_l.max(m_l));

    // G(A₊, B₊) applied to F⁻¹(A₊, B₊) V₀₀, both truncated to the common order
    let inverse = model.inverse_state(k_max, l_max);
    let grid = RaisingSeries::from_state(&g)
        .to_operator()
        .apply_with(&inverse, config.exec)
        .resized(k_max, l_max);

    let rec = reconstruct_with(&grid, observed.geometry(), config.exec)?;
    let normalized = normalize(&rec.intensity).map_err(|_| {
        Error::DegenerateOutput("cleaned image has no energy".into())
    })?;
    Ok(Correction {
        observed: g,
        grid,
        image: rec.intensity,
        normalized,
        residual,
    })
}
