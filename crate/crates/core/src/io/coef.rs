use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::coeffs::CoefficientGrid;
use crate::{Error, Result};

pub fn format_grid(grid: &CoefficientGrid) -> String {
    let mut out = format!("{} {}\n", grid.k_max(), grid.l_max());
    for (idx, v) in grid.iter() {
        writeln!(out, "{} {} {:.16e} {:.16e}", idx.k, idx.l, v.re, v.im).expect("string write");
    }
    out
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::Format(format!("line {line}: missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::Format(format!("line {line}: bad {what} `{tok}`")))
}

/// Parses the coefficient text format. Blank lines and `#` lines are skipped;
/// entries that are not listed are zero.
pub fn parse_grid(text: &str) -> Result<CoefficientGrid> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::Format("empty coefficient file".into()))?;
    let mut head = header.split_whitespace();
    let k_max: usize = field(head.next(), hl, "k_max")?;
    let l_max: usize = field(head.next(), hl, "l_max")?;
    if head.next().is_some() {
        return Err(Error::Format(format!("line {hl}: header is `k_max l_max`")));
    }
    let mut grid = CoefficientGrid::zeros(k_max, l_max);
    let mut seen = vec![false; (k_max + 1) * (l_max + 1)];
    for (ln, line) in lines {
        let mut t = line.split_whitespace();
        let k: usize = field(t.next(), ln, "k")?;
        let l: usize = field(t.next(), ln, "l")?;
        let re: f64 = field(t.next(), ln, "real part")?;
        let im: f64 = field(t.next(), ln, "imaginary part")?;
        if t.next().is_some() {
            return Err(Error::Format(format!("line {ln}: expected `k l re im`")));
        }
        if k > k_max || l > l_max {
            return Err(Error::Format(format!(
                "line {ln}: index ({k}, {l}) outside {k_max} x {l_max}"
            )));
        }
        let slot = k * (l_max + 1) + l;
        if std::mem::replace(&mut seen[slot], true) {
            return Err(Error::Format(format!("line {ln}: duplicate entry ({k}, {l})")));
        }
        grid.set(k, l, Complex64::new(re, im));
    }
    Ok(grid)
}

pub fn read_grid(path: impl AsRef<Path>) -> Result<CoefficientGrid> {
    parse_grid(&fs::read_to_string(path)?)
}

pub fn write_grid(grid: &CoefficientGrid, path: impl AsRef<Path>) -> Result<()> {
    Ok(fs::write(path, format_grid(grid))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn layout() {
        let mut g = CoefficientGrid::zeros(1, 0);
        g.set(1, 0, Complex64::new(0.5, -2.0));
        assert_eq!(
            format_grid(&g),
            "1 0\n0 0 0.0000000000000000e0 0.0000000000000000e0\n1 0 5.0000000000000000e-1 -2.0000000000000000e0\n"
        );
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_grid("").is_err());
        assert!(parse_grid("1").is_err());
        assert!(parse_grid("1 1\n2 0 1 0").is_err());
        assert!(parse_grid("1 1\n0 0 1 0\n0 0 1 0").is_err());
        assert!(parse_grid("1 1\n0 0 x 0").is_err());
        assert!(parse_grid("1 1\n0 0 1 0 9").is_err());
    }

    #[test]
    fn missing_rows_are_zero() {
        let g = parse_grid("# note\n2 2\n\n1 2 3 4\n").unwrap();
        assert_eq!(g.get(1, 2), Complex64::new(3.0, 4.0));
        assert_eq!(g.energy(), 25.0);
    }

    proptest! {
        #[test]
        fn exact_round_trip(
            k_max in 0usize..5,
            l_max in 0usize..5,
            seed in proptest::collection::vec((any::<f64>(), any::<f64>()), 36)
        ) {
            let vals: Vec<(f64, f64)> = seed.into_iter().map(|(a, b)| {
                (if a.is_finite() { a } else { 1.0 }, if b.is_finite() { b } else { -1.0 })
            }).collect();
            let g = CoefficientGrid::from_fn(k_max, l_max, |k, l| {
                let (a, b) = vals[k * 6 + l];
                Complex64::new(a, b)
            });
            let back = parse_grid(&format_grid(&g)).unwrap();
            for (x, y) in g.entries().iter().zip(back.entries()) {
                prop_assert_eq!(x.re.to_bits(), y.re.to_bits());
                prop_assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }
    }
}
