use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::algebra::{Monomial, OperatorSpec};
use crate::{Error, Result};

pub fn format_operator(op: &OperatorSpec) -> String {
    let mut out = String::from("# re im a1 a2 a3 b1 b2 b3\n");
    for m in &op.monomials {
        writeln!(
            out,
            "{:.16e} {:.16e} {} {} {} {} {} {}",
            m.coeff.re, m.coeff.im, m.alpha[0], m.alpha[1], m.alpha[2], m.beta[0], m.beta[1], m.beta[2]
        )
        .expect("string write");
    }
    out
}

pub fn parse_operator(text: &str) -> Result<OperatorSpec> {
    let mut monomials = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 8 {
            return Err(Error::Format(format!(
                "line {}: expected `re im a1 a2 a3 b1 b2 b3`, found {} fields",
                i + 1,
                toks.len()
            )));
        }
        let real = |t: &str| {
            t.parse::<f64>()
                .map_err(|_| Error::Format(format!("line {}: bad coefficient `{t}`", i + 1)))
        };
        let exp = |t: &str| {
            t.parse::<u32>()
                .map_err(|_| Error::Format(format!("line {}: bad exponent `{t}`", i + 1)))
        };
        monomials.push(Monomial::new(
            Complex64::new(real(toks[0])?, real(toks[1])?),
            [exp(toks[2])?, exp(toks[3])?, exp(toks[4])?],
            [exp(toks[5])?, exp(toks[6])?, exp(toks[7])?],
        ));
    }
    Ok(OperatorSpec::new(monomials))
}

pub fn read_operator(path: impl AsRef<Path>) -> Result<OperatorSpec> {
    parse_operator(&fs::read_to_string(path)?)
}

pub fn write_operator(op: &OperatorSpec, path: impl AsRef<Path>) -> Result<()> {
    Ok(fs::write(path, format_operator(op))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let op = parse_operator("# header\n\n1 0 1 0 0 0 0 0  # A+\n0.5 -1 0 2 1 3 0 1\n").unwrap();
        assert_eq!(op.len(), 2);
        assert_eq!(op.monomials[0], Monomial::new(Complex64::new(1.0, 0.0), [1, 0, 0], [0; 3]));
        assert_eq!(op.monomials[1].alpha, [0, 2, 1]);
        assert_eq!(op.monomials[1].beta, [3, 0, 1]);
    }

    #[test]
    fn round_trip() {
        let op = OperatorSpec::new(vec![
            Monomial::new(Complex64::new(0.1, 1.0 / 3.0), [1, 2, 3], [4, 5, 6]),
            Monomial::identity(),
        ]);
        assert_eq!(parse_operator(&format_operator(&op)).unwrap(), op);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse_operator("1 0 1 0 0 0 0").is_err());
        assert!(parse_operator("1 0 -1 0 0 0 0 0").is_err());
        assert!(parse_operator("a 0 1 0 0 0 0 0").is_err());
    }
}
