use std::fmt;

use num_complex::Complex64;

use crate::coeffs::CoefficientGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    APlus,
    A3,
    AMinus,
    BPlus,
    B3,
    BMinus,
}

/// Which of the two commuting `su(1,1)` copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    A,
    B,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::APlus,
        Generator::A3,
        Generator::AMinus,
        Generator::BPlus,
        Generator::B3,
        Generator::BMinus,
    ];

    pub fn family(self) -> Family {
        match self {
            Generator::APlus | Generator::A3 | Generator::AMinus => Family::A,
            _ => Family::B,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Generator::APlus => "A+",
            Generator::A3 => "A3",
            Generator::AMinus => "A-",
            Generator::BPlus => "B+",
            Generator::B3 => "B3",
            Generator::BMinus => "B-",
        };
        f.write_str(s)
    }
}

/// Coefficient action of one generator. Raising generators grow the grid by
/// one along their axis; lowering generators keep the shape and read zeros
/// past the boundary.
pub fn apply_generator(gen: Generator, grid: &CoefficientGrid) -> CoefficientGrid {
    let (km, lm) = (grid.k_max(), grid.l_max());
    let w = |x: usize| Complex64::new(x as f64, 0.0);
    match gen {
        Generator::APlus => CoefficientGrid::from_fn(km + 1, lm, |k, l| {
            if k == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                grid.get(k - 1, l) * w(k)
            }
        }),
        Generator::AMinus => CoefficientGrid::from_fn(km, lm, |k, l| grid.get(k + 1, l) * w(k + 1)),
        Generator::A3 => CoefficientGrid::from_fn(km, lm, |k, l| grid.get(k, l) * (k as f64 + 0.5)),
        Generator::BPlus => CoefficientGrid::from_fn(km, lm + 1, |k, l| {
            if l == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                grid.get(k, l - 1) * w(l)
            }
        }),
        Generator::BMinus => CoefficientGrid::from_fn(km, lm, |k, l| grid.get(k, l + 1) * w(l + 1)),
        Generator::B3 => CoefficientGrid::from_fn(km, lm, |k, l| grid.get(k, l) * (l as f64 + 0.5)),
    }
}

/// `[g1, g2] G = g1(g2(G)) − g2(g1(G))`.
pub fn commutator_apply(g1: Generator, g2: Generator, grid: &CoefficientGrid) -> CoefficientGrid {
    let a = apply_generator(g1, &apply_generator(g2, grid));
    let b = apply_generator(g2, &apply_generator(g1, grid));
    &a - &b
}

/// The structure constants: `[X₊, X₋] = −2X₃`, `[X₃, X±] = ±X±` within a
/// family, and zero across families. Returns `(coefficient, generator)` so
/// that `[g1, g2] = coefficient · generator`, or `None` when it vanishes.
pub fn expected_commutator(g1: Generator, g2: Generator) -> Option<(f64, Generator)> {
    use Generator::*;
    if g1.family() != g2.family() || g1 == g2 {
        return None;
    }
    let (plus, three, minus) = match g1.family() {
        Family::A => (APlus, A3, AMinus),
        Family::B => (BPlus, B3, BMinus),
    };
    let table = [
        (plus, minus, -2.0, three),
        (three, plus, 1.0, plus),
        (three, minus, -1.0, minus),
    ];
    for (x, y, c, z) in table {
        if (g1, g2) == (x, y) {
            return Some((c, z));
        }
        if (g1, g2) == (y, x) {
            return Some((-c, z));
        }
    }
    None
}

/// Casimir `½{X₊, X₋} − X₃²` of one family.
pub fn casimir_apply(family: Family, grid: &CoefficientGrid) -> CoefficientGrid {
    let (plus, three, minus) = match family {
        Family::A => (Generator::APlus, Generator::A3, Generator::AMinus),
        Family::B => (Generator::BPlus, Generator::B3, Generator::BMinus),
    };
    let pm = apply_generator(plus, &apply_generator(minus, grid));
    let mp = apply_generator(minus, &apply_generator(plus, grid));
    let t2 = apply_generator(three, &apply_generator(three, grid));
    let anti = &(&pm + &mp) * 0.5;
    // raising grew the grid by one; drop the (identically zero) extra row
    (&anti - &t2).resized(grid.k_max(), grid.l_max())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn a_plus_on_vacuum() {
        let g = apply_generator(Generator::APlus, &CoefficientGrid::delta(0, 0));
        assert_eq!(g.max_abs_diff(&CoefficientGrid::delta(1, 0)), 0.0);
    }

    #[test]
    fn a_minus_annihilates_vacuum() {
        let g = apply_generator(Generator::AMinus, &CoefficientGrid::delta(0, 0));
        assert_eq!(g.max_abs(), 0.0);
    }

    #[test]
    fn a3_weight() {
        let g = apply_generator(Generator::A3, &CoefficientGrid::delta(2, 1));
        assert_eq!(g.get(2, 1), c(2.5));
        assert_eq!(g.energy(), 6.25);
    }

    #[test]
    fn b_family_mirrors_a() {
        let f = CoefficientGrid::delta(1, 3);
        assert_eq!(apply_generator(Generator::BPlus, &f).get(1, 4), c(4.0));
        assert_eq!(apply_generator(Generator::BMinus, &f).get(1, 2), c(3.0));
        assert_eq!(apply_generator(Generator::B3, &f).get(1, 3), c(3.5));
    }

    #[test]
    fn commutator_on_delta() {
        let g = commutator_apply(Generator::APlus, Generator::AMinus, &CoefficientGrid::delta(3, 2));
        let want = &CoefficientGrid::delta(3, 2) * (-2.0 * 3.5);
        assert!(g.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn casimir_vacuum_and_interior() {
        let v = casimir_apply(Family::A, &CoefficientGrid::delta(0, 0));
        assert_eq!(v.get(0, 0), c(0.25));
        let w = casimir_apply(Family::B, &CoefficientGrid::delta(4, 7));
        assert_eq!(w.get(4, 7), c(0.25));
        assert_eq!(w.energy(), 0.0625);
    }

    #[test]
    fn structure_constant_table() {
        use Generator::*;
        assert_eq!(expected_commutator(APlus, AMinus), Some((-2.0, A3)));
        assert_eq!(expected_commutator(AMinus, APlus), Some((2.0, A3)));
        assert_eq!(expected_commutator(B3, BMinus), Some((-1.0, BMinus)));
        assert_eq!(expected_commutator(APlus, BMinus), None);
        assert_eq!(expected_commutator(A3, A3), None);
    }
}
