use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use num_complex::Complex64;

use super::image::DiskPixel;
use super::{CoefficientGrid, DiskImage, Geometry};
use crate::zernike::{BasisSet, PolarQuadrature, ZernikeIndex, MAX_RADIAL_ORDER};
use crate::{Error, Exec, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// How raster values are turned into coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Projection {
    /// Least-squares fit of the basis to the in-disk pixel centers. Exact for
    /// band-limited rasters at any resolution.
    #[default]
    LeastSquares,
    /// Bilinear interpolation of pixels onto the nodes of a polar rule,
    /// followed by quadrature of `V* · f`. Carries an `O(h²)` interpolation
    /// error in the pixel pitch `h`.
    Quadrature(PolarQuadrature),
}

enum Method {
    LeastSquares {
        pixels: Vec<DiskPixel>,
        gram: Cholesky<Complex64, Dyn>,
    },
    Quadrature {
        quadrature: PolarQuadrature,
        // per node: up to four (raster offset, weight) taps
        taps: Vec<Vec<(usize, f64)>>,
    },
}

/// A reusable decomposition operator for one raster geometry and truncation.
///
/// The fit runs over the conjugation-closed index set (the requested
/// rectangle together with its transpose), which keeps the output Hermitian
/// for real inputs; the requested rectangle is cut out afterwards.
pub struct Projector {
    geometry: Geometry,
    k_max: usize,
    l_max: usize,
    basis: BasisSet,
    method: Method,
    exec: Exec,
}

fn closed_indices(k_max: usize, l_max: usize) -> Vec<ZernikeIndex> {
    let side = k_max.max(l_max);
    (0..=side)
        .flat_map(|k| (0..=side).map(move |l| ZernikeIndex::new(k, l)))
        .filter(|i| (i.k <= k_max && i.l <= l_max) || (i.k <= l_max && i.l <= k_max))
        .collect()
}

fn chunk_bounds(n: usize) -> Vec<(usize, usize)> {
    let size = (n / 64).max(512);
    (0..n.div_ceil(size))
        .map(|c| (c * size, ((c + 1) * size).min(n)))
        .collect()
}

impl Projector {
    pub fn new(
        geometry: Geometry,
        k_max: usize,
        l_max: usize,
        projection: &Projection,
        exec: Exec,
    ) -> Result<Self> {
        if k_max + l_max > MAX_RADIAL_ORDER {
            return Err(Error::Capability {
                order: k_max + l_max,
                limit: MAX_RADIAL_ORDER,
            });
        }
        let basis = BasisSet::new(closed_indices(k_max, l_max))?;
        let method = match projection {
            Projection::LeastSquares => Self::least_squares(geometry, &basis, exec)?,
            Projection::Quadrature(q) => Self::quadrature(geometry, q)?,
        };
        Ok(Self {
            geometry,
            k_max,
            l_max,
            basis,
            method,
            exec,
        })
    }

    fn least_squares(geometry: Geometry, basis: &BasisSet, exec: Exec) -> Result<Method> {
        let pixels = geometry.disk_pixels();
        let d = basis.len();
        if pixels.len() < d {
            return Err(Error::DegenerateInput(format!(
                "{} in-disk pixels cannot determine {d} coefficients",
                pixels.len()
            )));
        }
        let chunks = chunk_bounds(pixels.len());
        let partials = exec.map_range(chunks.len(), |c| {
            let (lo, hi) = chunks[c];
            let mut acc = vec![ZERO; d * d];
            let mut v = vec![ZERO; d];
            for px in &pixels[lo..hi] {
                basis.eval_into(px.r, px.theta, &mut v);
                for a in 0..d {
                    let ca = v[a].conj();
                    let row = &mut acc[a * d..(a + 1) * d];
                    for b in a..d {
                        row[b] += ca * v[b];
                    }
                }
            }
            acc
        });
        let mut upper = vec![ZERO; d * d];
        for p in partials {
            for (u, x) in upper.iter_mut().zip(p) {
                *u += x;
            }
        }
        let scale = 1.0 / pixels.len() as f64;
        let gram = DMatrix::from_fn(d, d, |a, b| {
            if a <= b {
                upper[a * d + b] * scale
            } else {
                upper[b * d + a].conj() * scale
            }
        });
        let gram = gram.cholesky().ok_or_else(|| {
            Error::DegenerateInput("pixel Gram matrix is not positive definite".into())
        })?;
        Ok(Method::LeastSquares { pixels, gram })
    }

    fn quadrature(geometry: Geometry, q: &PolarQuadrature) -> Result<Method> {
        let disk = geometry.disk_pixels();
        if disk.is_empty() {
            return Err(Error::DegenerateInput("raster has no in-disk pixel".into()));
        }
        let mask = geometry.mask();
        let taps = q
            .nodes()
            .map(|node| bilinear_taps(geometry, &mask, &disk, node.r, node.theta))
            .collect();
        Ok(Method::Quadrature {
            quadrature: q.clone(),
            taps,
        })
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    /// Projects a real raster (row-major, out-of-disk values ignored).
    pub fn project(&self, values: &[f64]) -> Result<CoefficientGrid> {
        let complex: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.project_complex(&complex)
    }

    pub fn project_complex(&self, values: &[Complex64]) -> Result<CoefficientGrid> {
        if values.len() != self.geometry.len() {
            return Err(Error::Parameter(format!(
                "{} values for a raster of {} pixels",
                values.len(),
                self.geometry.len()
            )));
        }
        let d = self.basis.len();
        let coeffs: Vec<Complex64> = match &self.method {
            Method::LeastSquares { pixels, gram } => {
                let rhs = self.accumulate(pixels.len(), |i| {
                    let px = pixels[i];
                    (px.r, px.theta, values[px.offset])
                });
                let scale = 1.0 / pixels.len() as f64;
                let b = DVector::from_iterator(d, rhs.into_iter().map(|x| x * scale));
                gram.solve(&b).iter().copied().collect()
            }
            Method::Quadrature { quadrature, taps } => self.accumulate(quadrature.len(), |i| {
                let node = quadrature.node(i);
                let f: Complex64 = taps[i].iter().map(|&(o, w)| values[o] * w).sum();
                (node.r, node.theta, f * node.weight)
            }),
        };
        let mut grid = CoefficientGrid::zeros(self.k_max, self.l_max);
        for (idx, c) in self.basis.indices().iter().zip(coeffs) {
            if idx.k <= self.k_max && idx.l <= self.l_max {
                grid.set(idx.k, idx.l, c);
            }
        }
        Ok(grid)
    }

    // Σ_i conj(V(r_i, θ_i)) · y_i over `n` samples.
    fn accumulate<F>(&self, n: usize, sample: F) -> Vec<Complex64>
    where
        F: Fn(usize) -> (f64, f64, Complex64) + Sync + Send,
    {
        let d = self.basis.len();
        let chunks = chunk_bounds(n);
        let partials = self.exec.map_range(chunks.len(), |c| {
            let (lo, hi) = chunks[c];
            let mut acc = vec![ZERO; d];
            let mut v = vec![ZERO; d];
            for i in lo..hi {
                let (r, t, y) = sample(i);
                if y == ZERO {
                    continue;
                }
                self.basis.eval_into(r, t, &mut v);
                for (a, vb) in acc.iter_mut().zip(&v) {
                    *a += vb.conj() * y;
                }
            }
            acc
        });
        let mut total = vec![ZERO; d];
        for p in partials {
            for (t, x) in total.iter_mut().zip(p) {
                *t += x;
            }
        }
        total
    }
}

fn bilinear_taps(
    geometry: Geometry,
    mask: &[bool],
    disk: &[DiskPixel],
    r: f64,
    theta: f64,
) -> Vec<(usize, f64)> {
    let (x, y) = (r * theta.cos(), r * theta.sin());
    let (row, col) = geometry.to_raster(x, y);
    let (r0, c0) = (row.floor(), col.floor());
    let (fr, fc) = (row - r0, col - c0);
    let mut taps = Vec::with_capacity(4);
    for (dr, wr) in [(0.0, 1.0 - fr), (1.0, fr)] {
        for (dc, wc) in [(0.0, 1.0 - fc), (1.0, fc)] {
            let (rr, cc) = (r0 + dr, c0 + dc);
            if rr < 0.0 || cc < 0.0 {
                continue;
            }
            let (rr, cc) = (rr as usize, cc as usize);
            if rr >= geometry.height || cc >= geometry.width {
                continue;
            }
            let offset = rr * geometry.width + cc;
            let w = wr * wc;
            if mask[offset] && w > 0.0 {
                taps.push((offset, w));
            }
        }
    }
    let total: f64 = taps.iter().map(|t| t.1).sum();
    if total > 0.0 {
        for t in &mut taps {
            t.1 /= total;
        }
        return taps;
    }
    // rim node with no in-disk neighbor: fall back to the nearest disk pixel
    let nearest = disk
        .iter()
        .min_by(|a, b| {
            let da = (a.r * a.theta.cos() - x).hypot(a.r * a.theta.sin() - y);
            let db = (b.r * b.theta.cos() - x).hypot(b.r * b.theta.sin() - y);
            da.total_cmp(&db)
        })
        .expect("disk has pixels");
    vec![(nearest.offset, 1.0)]
}

/// `f_{k,l} = ⟨V_{k,l}, |f|⟩` for `k ≤ k_max`, `l ≤ l_max`, where `|f|` is
/// the square root of the recorded intensity.
///
/// The image is not normalized here; its discrete energy is stored in the
/// grid's `norm_tag`.
pub fn decompose(
    img: &DiskImage,
    k_max: usize,
    l_max: usize,
    projection: &Projection,
) -> Result<CoefficientGrid> {
    let projector = Projector::new(img.geometry(), k_max, l_max, projection, Exec::default())?;
    Ok(projector
        .project(&img.amplitude())?
        .with_norm_tag(img.disk_energy()))
}

/// A grid evaluated on a raster.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    /// `g(r, θ) = Σ f_{k,l} V_{k,l}` at each pixel center; zero off the disk.
    pub field: Vec<Complex64>,
    /// `|g|²` per pixel.
    pub intensity: DiskImage,
}

pub fn reconstruct(grid: &CoefficientGrid, geometry: Geometry) -> Result<Reconstruction> {
    reconstruct_with(grid, geometry, Exec::default())
}

pub fn reconstruct_with(
    grid: &CoefficientGrid,
    geometry: Geometry,
    exec: Exec,
) -> Result<Reconstruction> {
    grid.check_order()?;
    let (indices, coeffs): (Vec<ZernikeIndex>, Vec<Complex64>) =
        grid.iter().filter(|(_, v)| *v != ZERO).unzip();
    let basis = BasisSet::new(indices)?;
    let pixels = geometry.disk_pixels();
    let values = exec.map_range(pixels.len(), |i| {
        let px = pixels[i];
        let v = basis.eval(px.r, px.theta);
        v.iter().zip(&coeffs).map(|(v, c)| v * c).sum::<Complex64>()
    });
    let mut field = vec![ZERO; geometry.len()];
    for (px, v) in pixels.iter().zip(values) {
        field[px.offset] = v;
    }
    let intensity = DiskImage::new(geometry, field.iter().map(|v| v.norm_sqr()).collect())?;
    Ok(Reconstruction { field, intensity })
}
