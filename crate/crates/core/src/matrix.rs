//! Small dense square matrices over machine integers and exact rationals.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Dense square integer matrix, row-major. All arithmetic is checked.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<i32>,
}

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Self { dim, entries }
    }

    pub fn from_rows<R: AsRef<[i32]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { dim, entries })
    }

    pub(crate) fn from_entries(dim: usize, entries: Vec<i32>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i32 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[i32] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i32]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<i32>> {
        self.rows().map(<[i32]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut entries = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                entries[c * n + r] = self.get(r, c);
            }
        }
        Self { dim: n, entries }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        let n = self.dim;
        let mut entries = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                let mut acc: i64 = 0;
                for k in 0..n {
                    acc += i64::from(self.get(r, k)) * i64::from(rhs.get(k, c));
                }
                entries[r * n + c] = narrow(acc)?;
            }
        }
        Ok(Self { dim: n, entries })
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim;
        self.entries
            .iter()
            .enumerate()
            .all(|(idx, &v)| v == i32::from(idx / n == idx % n))
    }

    /// Injective byte encoding: the dimension followed by every entry as a
    /// fixed-width big-endian `i32`, row-major.
    pub fn key(&self) -> MatrixKey {
        let mut bytes = Vec::with_capacity(4 + 4 * self.entries.len());
        bytes.extend_from_slice(&(self.dim as u32).to_be_bytes());
        for v in &self.entries {
            bytes.extend_from_slice(&v.to_be_bytes());
        }
        MatrixKey(bytes.into_boxed_slice())
    }
}

#[inline]
pub(crate) fn narrow(v: i64) -> Result<i32> {
    i32::try_from(v).map_err(|_| Error::Overflow("matrix product"))
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Canonical serialization of an [`IntMatrix`], used as a dictionary key.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixKey(Box<[u8]>);

impl MatrixKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for MatrixKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixKey(")?;
        for b in self.0.iter() {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// Dense square matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        Self {
            dim: m.dim,
            entries: m
                .entries
                .iter()
                .map(|&v| Rational::from_integer(i64::from(v)))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> RationalMatrix {
        let n = self.dim;
        let mut entries = vec![Rational::zero(); n * n];
        for r in 0..n {
            for c in 0..n {
                entries[r * n + c] = (0..n).map(|k| self.get(r, k) * rhs.get(k, c)).sum();
            }
        }
        Self { dim: n, entries }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim;
        self.entries.iter().enumerate().all(|(idx, v)| {
            if idx / n == idx % n {
                v.is_one()
            } else {
                v.is_zero()
            }
        })
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut inv = vec![Rational::zero(); n * n];
        for i in 0..n {
            inv[i * n + i] = Rational::one();
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                    inv.swap(pivot * n + c, col * n + c);
                }
            }
            let p = a[col * n + col];
            for c in 0..n {
                a[col * n + c] /= p;
                inv[col * n + c] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let (ac, ic) = (a[col * n + c], inv[col * n + c]);
                    a[r * n + c] -= f * ac;
                    inv[r * n + c] -= f * ic;
                }
            }
        }
        Some(Self {
            dim: n,
            entries: inv,
        })
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.dim)
            .map(|r| self.row(r).iter().map(|v| v.to_string()).collect())
            .collect();
        f.debug_list().entries(rows).finish()
    }
}
