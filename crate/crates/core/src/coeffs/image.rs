use num_complex::Complex64;

use crate::{Error, Result};

/// Raster size plus the pixel-center-to-disk mapping
/// `x = (2j+1)/W − 1`, `y = 1 − (2i+1)/H` (row `i`, column `j`).
///
/// A pixel belongs to the disk when its center satisfies `x² + y² ≤ 1`. For
/// square rasters this is the inscribed circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Geometry {
    pub width: usize,
    pub height: usize,
}

/// A pixel center inside the disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPixel {
    /// Row-major offset into the raster.
    pub offset: usize,
    pub r: f64,
    pub theta: f64,
}

impl Geometry {
    pub fn new(width: usize, height: usize) -> Self {
        Self { width, height }
    }

    pub fn square(size: usize) -> Self {
        Self::new(size, size)
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn center(&self, row: usize, col: usize) -> (f64, f64) {
        let x = (2 * col + 1) as f64 / self.width as f64 - 1.0;
        let y = 1.0 - (2 * row + 1) as f64 / self.height as f64;
        (x, y)
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        let (x, y) = self.center(row, col);
        x * x + y * y <= 1.0
    }

    /// Continuous raster coordinates `(row, col)` of a disk point, in the same
    /// units as pixel indices (pixel centers sit on integers).
    pub fn to_raster(&self, x: f64, y: f64) -> (f64, f64) {
        let col = ((x + 1.0) * self.width as f64 - 1.0) / 2.0;
        let row = ((1.0 - y) * self.height as f64 - 1.0) / 2.0;
        (row, col)
    }

    /// In-disk pixels in row-major order.
    pub fn disk_pixels(&self) -> Vec<DiskPixel> {
        let mut out = Vec::new();
        for row in 0..self.height {
            for col in 0..self.width {
                let (x, y) = self.center(row, col);
                let r2 = x * x + y * y;
                if r2 <= 1.0 {
                    out.push(DiskPixel {
                        offset: row * self.width + col,
                        r: r2.sqrt(),
                        theta: y.atan2(x),
                    });
                }
            }
        }
        out
    }

    pub fn mask(&self) -> Vec<bool> {
        (0..self.height)
            .flat_map(|row| (0..self.width).map(move |col| (row, col)))
            .map(|(row, col)| self.contains(row, col))
            .collect()
    }
}

/// Grayscale raster of recorded intensities `|f|²` on the inscribed disk.
///
/// Pixels outside the disk are held at zero and ignored by every operation.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskImage {
    geometry: Geometry,
    pixels: Vec<f64>,
}

impl DiskImage {
    /// Wraps row-major intensities. Out-of-disk values are discarded; in-disk
    /// values must be finite and nonnegative.
    pub fn new(geometry: Geometry, mut pixels: Vec<f64>) -> Result<Self> {
        if pixels.len() != geometry.len() {
            return Err(Error::Parameter(format!(
                "{} pixels for a {}x{} raster",
                pixels.len(),
                geometry.width,
                geometry.height
            )));
        }
        for (p, inside) in pixels.iter_mut().zip(geometry.mask()) {
            if !inside {
                *p = 0.0;
            } else if !p.is_finite() || *p < 0.0 {
                return Err(Error::Domain(format!(
                    "in-disk intensity {p} is not a finite nonnegative value"
                )));
            }
        }
        Ok(Self { geometry, pixels })
    }

    /// Samples an intensity function of `(r, θ)` at the in-disk pixel centers.
    pub fn from_intensity_fn<F>(geometry: Geometry, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> f64,
    {
        let mut pixels = vec![0.0; geometry.len()];
        for px in geometry.disk_pixels() {
            pixels[px.offset] = f(px.r, px.theta);
        }
        Self::new(geometry, pixels)
    }

    /// Samples `|a(r, θ)|²` for a complex amplitude `a`.
    pub fn from_amplitude_fn<F>(geometry: Geometry, a: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> Complex64,
    {
        Self::from_intensity_fn(geometry, |r, t| a(r, t).norm_sqr())
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn width(&self) -> usize {
        self.geometry.width
    }

    pub fn height(&self) -> usize {
        self.geometry.height
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.geometry.width + col]
    }

    /// Modulus `|f| = √(intensity)` per pixel, zero outside the disk.
    pub fn amplitude(&self) -> Vec<f64> {
        self.pixels.iter().map(|p| p.sqrt()).collect()
    }

    /// Discrete `(1/2π)∫dθ∫d(r²) |f|²`: the mean intensity over in-disk
    /// pixels, since the normalized measure gives the disk total mass 1.
    pub fn disk_energy(&self) -> f64 {
        let pixels = self.geometry.disk_pixels();
        if pixels.is_empty() {
            return 0.0;
        }
        pixels.iter().map(|p| self.pixels[p.offset]).sum::<f64>() / pixels.len() as f64
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            geometry: self.geometry,
            pixels: self.pixels.iter().map(|p| p * factor).collect(),
        }
    }

    pub fn max_in_disk(&self) -> f64 {
        self.geometry
            .disk_pixels()
            .iter()
            .map(|p| self.pixels[p.offset])
            .fold(0.0, f64::max)
    }
}

/// Scales intensities so the discrete disk integral of `|f|²` equals 1.
pub fn normalize(img: &DiskImage) -> Result<DiskImage> {
    let energy = img.disk_energy();
    if energy <= 0.0 {
        return Err(Error::DegenerateInput(
            "image has no nonzero in-disk pixel".into(),
        ));
    }
    Ok(img.scaled(1.0 / energy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn mapping_corners_and_center() {
        let g = Geometry::square(4);
        assert_eq!(g.center(0, 0), (-0.75, 0.75));
        assert_eq!(g.center(3, 3), (0.75, -0.75));
        assert!(g.contains(1, 1));
        assert!(!g.contains(0, 0));
        let (row, col) = g.to_raster(-0.75, 0.75);
        assert!(row.abs() < 1e-15 && col.abs() < 1e-15);
    }

    #[test]
    fn out_of_disk_pixels_are_zeroed() {
        let g = Geometry::square(8);
        let img = DiskImage::new(g, vec![0.5; 64]).unwrap();
        assert_eq!(img.get(0, 0), 0.0);
        assert_eq!(img.get(4, 4), 0.5);
    }

    #[test]
    fn rejects_negative_in_disk() {
        let g = Geometry::square(4);
        let mut px = vec![0.0; 16];
        px[5] = -1.0;
        assert!(matches!(DiskImage::new(g, px), Err(Error::Domain(_))));
    }

    #[test]
    fn normalize_constant_images() {
        let g = Geometry::square(32);
        let one = DiskImage::from_intensity_fn(g, |_, _| 1.0).unwrap();
        assert_eq!(normalize(&one).unwrap(), one);
        let c = DiskImage::from_intensity_fn(g, |_, _| 3.5).unwrap();
        let n = normalize(&c).unwrap();
        assert!(n.geometry().disk_pixels().iter().all(|p| (n.pixels()[p.offset] - 1.0).abs() < 1e-15));
    }

    #[test]
    fn normalize_random_to_unit_energy() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = Geometry::new(40, 30);
        let px: Vec<f64> = (0..g.len()).map(|_| rng.random_range(0.0..2.0)).collect();
        let img = DiskImage::new(g, px).unwrap();
        let n = normalize(&img).unwrap();
        assert!((n.disk_energy() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normalize_zero_image_fails() {
        let img = DiskImage::new(Geometry::square(8), vec![0.0; 64]).unwrap();
        assert!(matches!(normalize(&img), Err(Error::DegenerateInput(_))));
    }
}
