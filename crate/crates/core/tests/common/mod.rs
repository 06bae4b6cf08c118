#![allow(dead_code)]

use aip::coeffs::{reconstruct, CoefficientGrid, DiskImage, Geometry};
use aip::Complex64;
use rand::Rng;

/// Hermitian grid with `f_{0,0} = 1` and `|f_{k,l}| ≤ bound · decay^(k+l)`.
pub fn hermitian_grid(rng: &mut impl Rng, order: usize, bound: f64, decay: f64) -> CoefficientGrid {
    let mut g = CoefficientGrid::zeros(order, order);
    for k in 0..=order {
        for l in k..=order {
            let mag = bound * decay.powi((k + l) as i32) * rng.random_range(0.0..=1.0);
            let v = if k == l {
                Complex64::new(mag * if rng.random_bool(0.5) { 1.0 } else { -1.0 }, 0.0)
            } else {
                Complex64::from_polar(mag, rng.random_range(0.0..std::f64::consts::TAU))
            };
            g.set(k, l, v);
            g.set(l, k, v.conj());
        }
    }
    g.set(0, 0, Complex64::new(1.0, 0.0));
    g
}

/// Smallest real part of the field of `grid` over the in-disk pixel centers.
pub fn min_field(grid: &CoefficientGrid, geometry: Geometry) -> f64 {
    let rec = reconstruct(grid, geometry).unwrap();
    geometry
        .disk_pixels()
        .iter()
        .map(|p| rec.field[p.offset].re)
        .fold(f64::INFINITY, f64::min)
}

/// Draws Hermitian grids until one has a strictly positive field on `geometry`.
pub fn positive_grid(
    rng: &mut impl Rng,
    order: usize,
    bound: f64,
    decay: f64,
    geometry: Geometry,
) -> CoefficientGrid {
    loop {
        let g = hermitian_grid(rng, order, bound, decay);
        if min_field(&g, geometry) > 0.05 {
            return g;
        }
    }
}

/// Largest in-disk difference between two rasters of equal geometry.
pub fn max_in_disk_diff(a: &DiskImage, b: &DiskImage) -> f64 {
    a.geometry()
        .disk_pixels()
        .iter()
        .map(|p| (a.pixels()[p.offset] - b.pixels()[p.offset]).abs())
        .fold(0.0, f64::max)
}

/// PSNR in dB over in-disk pixels for unit peak intensity.
pub fn psnr(a: &DiskImage, b: &DiskImage) -> f64 {
    let px = a.geometry().disk_pixels();
    let mse = px
        .iter()
        .map(|p| (a.pixels()[p.offset] - b.pixels()[p.offset]).powi(2))
        .sum::<f64>()
        / px.len() as f64;
    10.0 * (1.0 / mse).log10()
}
