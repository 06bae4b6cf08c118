//! The `aip` command-line front end.
//!
//! Numeric defaults live in [`defaults`]:
//!
//! | setting                        | value  |
//! |--------------------------------|--------|
//! | radial quadrature nodes        | 64     |
//! | angular quadrature nodes       | 256    |
//! | truncation accuracy `epsilon`  | 1e-4   |
//! | `k_max`, `l_max` for `correct` | 12, 12 |
//! | output raster side             | 256    |
//! | `verify` seed                  | 1      |
//!
//! Exit codes: 0 success, 1 usage error, 2 domain, format or I/O error,
//! 3 capability error (order limit), 4 a `verify` check failed.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use crate::algebra::RaisingSeries;
use crate::coeffs::{reconstruct_with, truncate_to_accuracy, DiskImage, Geometry, Projection, Projector};
use crate::io::{
    read_grid, read_operator, read_pgm, save_model, write_grid, write_mask, write_operator,
    write_pgm,
};
use crate::pipeline::{
    apply_filter, correct_image, estimate_defect, FilterAxis, FilterMode, FilterSpec,
    PipelineConfig,
};
use crate::zernike::{eval_v, PolarQuadrature, ZernikeIndex};
use crate::{verify, Error, Exec};

pub mod defaults {
    pub const RADIAL_NODES: usize = 64;
    pub const ANGULAR_NODES: usize = 256;
    pub const EPSILON: f64 = crate::pipeline::DEFAULT_EPSILON;
    pub const K_MAX: usize = 12;
    pub const L_MAX: usize = 12;
    pub const SIZE: usize = 256;
    pub const SEED: u64 = 1;
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const DOMAIN: i32 = 2;
    pub const CAPABILITY: i32 = 3;
    pub const VERIFY_FAILED: i32 = 4;
}

#[derive(Parser, Debug)]
#[command(name = "aip", version, about = "Zernike-basis image processing on the unit disk")]
struct Cli {
    /// Run every kernel on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Render |V_{k,l}|² / (k+l+1), which peaks at 1 on the rim.
    Basis {
        k: usize,
        l: usize,
        out: PathBuf,
        #[command(flatten)]
        raster: RasterArgs,
    },
    /// Project the modulus of a PGM image onto the basis.
    Decompose {
        input: PathBuf,
        k_max: usize,
        l_max: usize,
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Lsq)]
        method: Method,
        #[command(flatten)]
        quadrature: QuadratureArgs,
        /// Truncate to the smallest square keeping 1 - epsilon of the energy.
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Evaluate a coefficient grid and write |g|².
    Reconstruct {
        input: PathBuf,
        out: PathBuf,
        #[command(flatten)]
        raster: RasterArgs,
    },
    /// Apply an operator polynomial to a coefficient grid.
    Apply {
        op: PathBuf,
        input: PathBuf,
        out: PathBuf,
        /// Crop the result to k <= K (requires --l-max too).
        #[arg(long, requires = "l_max")]
        k_max: Option<usize>,
        #[arg(long, requires = "k_max")]
        l_max: Option<usize>,
    },
    /// Keep or discard coefficients by radial order or angular frequency.
    Filter {
        #[arg(long)]
        axis: FilterAxis,
        #[arg(long)]
        mode: FilterMode,
        #[arg(long)]
        h: usize,
        /// Rescale the survivors to the input energy.
        #[arg(long)]
        renormalize: bool,
        input: PathBuf,
        out: PathBuf,
    },
    /// Reciprocal of a raising series given in state convention.
    Invert {
        input: PathBuf,
        out: PathBuf,
        #[arg(long, requires = "l_max")]
        k_max: Option<usize>,
        #[arg(long, requires = "k_max")]
        l_max: Option<usize>,
    },
    /// Write the raising operator whose vacuum image is the given grid.
    Raise { input: PathBuf, out: PathBuf },
    /// Remove an instrument defect estimated from a null-signal image.
    Correct {
        #[arg(long)]
        null: PathBuf,
        observed: PathBuf,
        out: PathBuf,
        #[arg(long, default_value_t = defaults::EPSILON)]
        epsilon: f64,
        #[arg(long, default_value_t = defaults::K_MAX)]
        k_max: usize,
        #[arg(long, default_value_t = defaults::L_MAX)]
        l_max: usize,
        /// Scale the output to unit disk energy.
        #[arg(long)]
        renormalize: bool,
        /// Also store the defect model in this directory.
        #[arg(long)]
        save_model: Option<PathBuf>,
        /// Also store the cleaned coefficient grid.
        #[arg(long)]
        coef_out: Option<PathBuf>,
    },
    /// Run the built-in identity and orthonormality checks.
    Verify {
        #[arg(long, default_value_t = defaults::SEED)]
        seed: u64,
    },
    /// Print the nodes of a polar quadrature rule.
    Quadrature {
        #[command(flatten)]
        quadrature: QuadratureArgs,
    },
}

#[derive(Args, Debug)]
struct RasterArgs {
    #[arg(long, default_value_t = defaults::SIZE)]
    size: usize,
    /// Overrides --size horizontally.
    #[arg(long)]
    width: Option<usize>,
    /// Overrides --size vertically.
    #[arg(long)]
    height: Option<usize>,
    /// Write the 8-bit in-disk mask next to the image.
    #[arg(long)]
    mask: Option<PathBuf>,
}

impl RasterArgs {
    fn geometry(&self) -> Result<Geometry, Error> {
        let g = Geometry::new(self.width.unwrap_or(self.size), self.height.unwrap_or(self.size));
        if g.is_empty() {
            return Err(Error::Parameter("raster must be at least 1x1".into()));
        }
        Ok(g)
    }

    fn write_mask(&self, geometry: Geometry) -> Result<(), Error> {
        match &self.mask {
            Some(path) => write_mask(geometry, path),
            None => Ok(()),
        }
    }
}

#[derive(Args, Debug)]
struct QuadratureArgs {
    #[arg(long, default_value_t = defaults::RADIAL_NODES)]
    radial_nodes: usize,
    #[arg(long, default_value_t = defaults::ANGULAR_NODES)]
    angular_nodes: usize,
}

impl QuadratureArgs {
    fn rule(&self) -> Result<PolarQuadrature, Error> {
        PolarQuadrature::new(self.radial_nodes, self.angular_nodes)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Method {
    Lsq,
    Quadrature,
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Capability { .. } => exit::CAPABILITY,
        Error::Parameter(_) | Error::InvalidIndex(_) => exit::USAGE,
        _ => exit::DOMAIN,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    match dispatch(cli.command, exec) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("aip: {e}");
            exit_code(&e)
        }
    }
}

fn crop_arg(k: Option<usize>, l: Option<usize>) -> Option<(usize, usize)> {
    k.zip(l)
}

fn dispatch(command: Command, exec: Exec) -> Result<i32, Error> {
    match command {
        Command::Basis { k, l, out, raster } => {
            let idx = ZernikeIndex::new(k, l);
            // checks the order limit before rendering
            crate::zernike::radial_poly(idx.n(), idx.m_abs())?;
            let geometry = raster.geometry()?;
            let scale = 1.0 / (idx.n() + 1) as f64;
            let img = DiskImage::from_intensity_fn(geometry, |r, t| {
                eval_v(idx, r.min(1.0), t).map_or(0.0, |v| v.norm_sqr() * scale)
            })?;
            write_pgm(&img, &out)?;
            raster.write_mask(geometry)?;
        }
        Command::Decompose {
            input,
            k_max,
            l_max,
            out,
            method,
            quadrature,
            epsilon,
        } => {
            let img = read_pgm(&input)?;
            let projection = match method {
                Method::Lsq => Projection::LeastSquares,
                Method::Quadrature => Projection::Quadrature(quadrature.rule()?),
            };
            let projector = Projector::new(img.geometry(), k_max, l_max, &projection, exec)?;
            let mut grid = projector.project(&img.amplitude())?;
            if let Some(eps) = epsilon {
                let (k, l) = truncate_to_accuracy(&grid, eps)?;
                info!("truncated to {k} x {l}");
                grid = grid.resized(k, l);
            }
            write_grid(&grid, &out)?;
        }
        Command::Reconstruct { input, out, raster } => {
            let grid = read_grid(&input)?;
            let geometry = raster.geometry()?;
            let rec = reconstruct_with(&grid, geometry, exec)?;
            write_pgm(&rec.intensity, &out)?;
            raster.write_mask(geometry)?;
        }
        Command::Apply {
            op,
            input,
            out,
            k_max,
            l_max,
        } => {
            let op = read_operator(&op)?;
            let grid = read_grid(&input)?;
            let mut result = op.apply_with(&grid, exec);
            if let Some((k, l)) = crop_arg(k_max, l_max) {
                result = result.resized(k, l);
            }
            write_grid(&result, &out)?;
        }
        Command::Filter {
            axis,
            mode,
            h,
            renormalize,
            input,
            out,
        } => {
            let spec = FilterSpec {
                axis,
                mode,
                threshold: h,
                renormalize,
            };
            write_grid(&apply_filter(&spec, &read_grid(&input)?)?, &out)?;
        }
        Command::Invert {
            input,
            out,
            k_max,
            l_max,
        } => {
            let grid = read_grid(&input)?;
            let (k, l) = crop_arg(k_max, l_max).unwrap_or((grid.k_max(), grid.l_max()));
            let inverse = RaisingSeries::from_state(&grid).inverse(k, l)?.to_state();
            write_grid(&inverse, &out)?;
        }
        Command::Raise { input, out } => {
            let grid = read_grid(&input)?;
            write_operator(&RaisingSeries::from_state(&grid).to_operator(), &out)?;
        }
        Command::Correct {
            null,
            observed,
            out,
            epsilon,
            k_max,
            l_max,
            renormalize,
            save_model: model_dir,
            coef_out,
        } => {
            let config = PipelineConfig {
                k_max,
                l_max,
                exec,
                ..PipelineConfig::default()
            };
            let model = estimate_defect(&read_pgm(&null)?, epsilon, &config)?;
            info!("defect truncated to {:?}", model.truncation());
            if let Some(dir) = &model_dir {
                save_model(&model, dir)?;
            }
            let correction = correct_image(&read_pgm(&observed)?, &model, epsilon, &config)?;
            if let Some(path) = &coef_out {
                write_grid(&correction.grid, path)?;
            }
            let img = if renormalize {
                &correction.normalized
            } else {
                &correction.image
            };
            write_pgm(img, &out)?;
        }
        Command::Verify { seed } => {
            let checks = verify::run_all(seed);
            let mut failed = 0;
            for c in &checks {
                println!("{} {:<32} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                failed += usize::from(!c.passed);
            }
            println!("{} of {} checks passed", checks.len() - failed, checks.len());
            return Ok(if failed == 0 {
                exit::OK
            } else {
                exit::VERIFY_FAILED
            });
        }
        Command::Quadrature { quadrature } => {
            let rule = quadrature.rule()?;
            println!("# r theta weight");
            for node in rule.nodes() {
                println!("{:.17e} {:.17e} {:.17e}", node.r, node.theta, node.weight);
            }
        }
    }
    Ok(exit::OK)
}
