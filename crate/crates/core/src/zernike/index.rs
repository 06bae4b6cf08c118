use std::fmt;

use crate::{Error, Result};

/// The `(k, l)` double index of a basis function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZernikeIndex {
    pub k: usize,
    pub l: usize,
}

impl ZernikeIndex {
    pub const fn new(k: usize, l: usize) -> Self {
        Self { k, l }
    }

    /// Converts the Born–Wolf labels `(n, m)` with `n − |m|` even and
    /// `|m| ≤ n`.
    pub fn from_nm(n: usize, m: i64) -> Result<Self> {
        let m_abs = m.unsigned_abs() as usize;
        if m_abs > n || !(n - m_abs).is_multiple_of(2) {
            return Err(Error::InvalidIndex(format!(
                "(n, m) = ({n}, {m}) needs |m| <= n and n - |m| even"
            )));
        }
        let k = (n as i64 + m) / 2;
        let l = (n as i64 - m) / 2;
        Ok(Self::new(k as usize, l as usize))
    }

    /// Radial degree `n = k + l`.
    pub fn n(self) -> usize {
        self.k + self.l
    }

    /// Azimuthal order `m = k − l`.
    pub fn m(self) -> i64 {
        self.k as i64 - self.l as i64
    }

    pub fn m_abs(self) -> usize {
        self.k.abs_diff(self.l)
    }

    /// The index of the complex-conjugate function, `(l, k)`.
    pub fn conjugate(self) -> Self {
        Self::new(self.l, self.k)
    }
}

impl fmt::Display for ZernikeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.l)
    }
}
