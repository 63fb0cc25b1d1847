//! Per-root-system constants: Cartan matrix, simple reflections acting on
//! weight coordinates, positive-root count, inverse Cartan matrix and
//! fundamental weights.
//!
//! Conventions: simple roots are numbered as in Bourbaki, and the Cartan
//! entry `c[i][j]` is `<a_i, a_j> = 2(a_i, a_j) / (a_j, a_j)`. With this
//! convention row `i` of the Cartan matrix is the simple root `a_i` written in
//! the basis of fundamental weights.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, Rational, RationalMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A finite irreducible crystallographic root system, e.g. `D4` or `E7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemId {
    family: Family,
    rank: usize,
}

impl RootSystemId {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidRootSystem(format!(
                "{}{rank}: rank not allowed for family {}",
                family.letter(),
                family.letter()
            )))
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }
}

impl fmt::Display for RootSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for RootSystemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => {
                return Err(Error::InvalidRootSystem(format!(
                    "{s:?}: expected a family letter A-G followed by a rank"
                )))
            }
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidRootSystem(format!("{s:?}: bad rank")))?;
        RootSystemId::new(family, rank)
    }
}

/// Integer Cartan matrix with diagonal 2 and a symmetric zero pattern.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanMatrix(IntMatrix);

impl CartanMatrix {
    /// Checks the structural invariants and invertibility.
    pub fn new(m: IntMatrix) -> Result<Self> {
        let n = m.dim();
        if n == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for i in 0..n {
            if m.get(i, i) != 2 {
                return Err(Error::InvalidCartan(format!(
                    "diagonal entry ({}, {}) is {}, expected 2",
                    i + 1,
                    i + 1,
                    m.get(i, i)
                )));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let v = m.get(i, j);
                if !(-3..=0).contains(&v) {
                    return Err(Error::InvalidCartan(format!(
                        "entry ({}, {}) is {v}, expected one of 0, -1, -2, -3",
                        i + 1,
                        j + 1
                    )));
                }
                if (v == 0) != (m.get(j, i) == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({}, {}) and ({}, {}) must be zero together",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        if RationalMatrix::from_int(&m).inverse().is_none() {
            return Err(Error::InvalidCartan("matrix is singular".into()));
        }
        Ok(Self(m))
    }

    pub fn rank(&self) -> usize {
        self.0.dim()
    }

    /// `c[i][j]`, zero-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.0.get(i, j)
    }

    pub fn row(&self, i: usize) -> &[i32] {
        self.0.row(i)
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.0
    }

    /// Parses the plain-text custom format: the rank on the first line, then
    /// one line of space-separated integers per row. `#` starts a comment.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(no, l)| (no + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (no, first) = lines
            .next()
            .ok_or_else(|| Error::parse(origin, 1, "missing rank line"))?;
        let rank: usize = first
            .parse()
            .map_err(|_| Error::parse(origin, no, format!("bad rank {first:?}")))?;
        let mut rows = Vec::with_capacity(rank);
        for (no, line) in lines {
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<i32>()
                        .map_err(|_| Error::parse(origin, no, format!("bad integer {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != rank {
                return Err(Error::parse(
                    origin,
                    no,
                    format!("expected {rank} entries, found {}", row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() != rank {
            return Err(Error::parse(
                origin,
                text.lines().count(),
                format!("expected {rank} rows, found {}", rows.len()),
            ));
        }
        Self::new(IntMatrix::from_rows(&rows)?)
    }
}

fn link(m: &mut [Vec<i32>], i: usize, j: usize, cij: i32, cji: i32) {
    m[i - 1][j - 1] = cij;
    m[j - 1][i - 1] = cji;
}

/// Cartan matrix in Bourbaki numbering.
pub fn cartan_matrix(id: RootSystemId) -> CartanMatrix {
    let n = id.rank;
    let mut m = vec![vec![0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    match id.family {
        Family::A => (1..n).for_each(|i| link(&mut m, i, i + 1, -1, -1)),
        Family::B => {
            (1..n - 1).for_each(|i| link(&mut m, i, i + 1, -1, -1));
            // a_n = e_n is short
            link(&mut m, n - 1, n, -2, -1);
        }
        Family::C => {
            (1..n - 1).for_each(|i| link(&mut m, i, i + 1, -1, -1));
            // a_n = 2e_n is long
            link(&mut m, n - 1, n, -1, -2);
        }
        Family::D => {
            (1..n - 1).for_each(|i| link(&mut m, i, i + 1, -1, -1));
            link(&mut m, n - 2, n, -1, -1);
        }
        Family::E => {
            link(&mut m, 1, 3, -1, -1);
            link(&mut m, 2, 4, -1, -1);
            (3..n).for_each(|i| link(&mut m, i, i + 1, -1, -1));
        }
        Family::F => {
            link(&mut m, 1, 2, -1, -1);
            link(&mut m, 2, 3, -2, -1);
            link(&mut m, 3, 4, -1, -1);
        }
        Family::G => link(&mut m, 1, 2, -1, -3),
    }
    CartanMatrix::new(IntMatrix::from_rows(&m).expect("square by construction"))
        .expect("built-in Cartan matrices are valid")
}

/// Matrix of the simple reflection `s_i` (1-based) acting on weight
/// coordinates as a row vector: the identity with row `i` replaced by
/// `delta_ik - c_ik`.
pub fn reflection_matrix(cartan: &CartanMatrix, i: usize) -> Result<IntMatrix> {
    let n = cartan.rank();
    if i == 0 || i > n {
        return Err(Error::GeneratorOutOfRange { index: i, rank: n });
    }
    let mut rows = IntMatrix::identity(n).to_rows();
    for (k, v) in rows[i - 1].iter_mut().enumerate() {
        *v = i32::from(k == i - 1) - cartan.get(i - 1, k);
    }
    IntMatrix::from_rows(&rows)
}

pub fn positive_root_count(id: RootSystemId) -> usize {
    let n = id.rank;
    match id.family {
        Family::A => n * (n + 1) / 2,
        Family::B | Family::C => n * n,
        Family::D => n * (n - 1),
        Family::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Family::F => 24,
        Family::G => 6,
    }
}

/// `|W|` by the closed-form order formulas.
pub fn weyl_group_order(id: RootSystemId) -> u64 {
    let n = id.rank as u64;
    let fact = |k: u64| (1..=k).product::<u64>();
    match id.family {
        Family::A => fact(n + 1),
        Family::B | Family::C => (1u64 << n) * fact(n),
        Family::D => (1u64 << (n - 1)) * fact(n),
        Family::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Family::F => 1_152,
        Family::G => 12,
    }
}

pub fn inverse_cartan(cartan: &CartanMatrix) -> RationalMatrix {
    RationalMatrix::from_int(cartan.as_matrix())
        .inverse()
        .expect("Cartan matrices are invertible")
}

/// The fundamental weight `w_i` (1-based) as rational coefficients over the
/// simple roots. With `c[i][j] = <a_i, a_j>` this is row `i` of the inverse
/// Cartan matrix, so that `<w_i, a_j> = delta_ij`.
pub fn fundamental_weight_in_root_basis(cartan: &CartanMatrix, i: usize) -> Result<Vec<Rational>> {
    let n = cartan.rank();
    if i == 0 || i > n {
        return Err(Error::GeneratorOutOfRange { index: i, rank: n });
    }
    Ok(inverse_cartan(cartan).row(i - 1).to_vec())
}

/// All positive roots in simple-root coordinates, found by closing the simple
/// roots under the simple reflections. Fails if the closure does not stay
/// finite, i.e. the matrix is not of finite type.
pub fn positive_roots(cartan: &CartanMatrix) -> Result<Vec<Vec<i64>>> {
    let n = cartan.rank();
    // No finite root system of rank n has more roots than this.
    let limit = 2 * n * n + 240;
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut frontier = simple;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..n {
                // <beta, a_i> = sum_j beta_j c[j][i]
                let pairing: i64 = (0..n).map(|j| beta[j] * i64::from(cartan.get(j, i))).sum();
                if pairing == 0 {
                    continue;
                }
                let mut image = beta.clone();
                image[i] -= pairing;
                if seen.insert(image.clone()) {
                    if seen.len() > limit {
                        return Err(Error::InvalidCartan(
                            "root system is infinite (not of finite type)".into(),
                        ));
                    }
                    next.push(image);
                }
            }
        }
        frontier = next;
    }
    let mut pos: Vec<Vec<i64>> = seen
        .into_iter()
        .filter(|r| r.iter().all(|&c| c >= 0))
        .collect();
    pos.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum()).then(a.cmp(b)));
    Ok(pos)
}

/// Everything the enumeration needs about one root system.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    label: String,
    id: Option<RootSystemId>,
    cartan: CartanMatrix,
    reflections: Vec<IntMatrix>,
    positive_roots: usize,
}

impl RootSystemData {
    pub fn new(id: RootSystemId) -> Self {
        let cartan = cartan_matrix(id);
        let reflections = (1..=id.rank)
            .map(|i| reflection_matrix(&cartan, i).expect("index in range"))
            .collect();
        Self {
            label: id.to_string(),
            id: Some(id),
            cartan,
            reflections,
            positive_roots: positive_root_count(id),
        }
    }

    /// A root system given only by its Cartan matrix.
    pub fn from_cartan(label: impl Into<String>, cartan: CartanMatrix) -> Result<Self> {
        let positive = positive_roots(&cartan)?.len();
        let reflections = (1..=cartan.rank())
            .map(|i| reflection_matrix(&cartan, i))
            .collect::<Result<_>>()?;
        Ok(Self {
            label: label.into(),
            id: None,
            cartan,
            reflections,
            positive_roots: positive,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn id(&self) -> Option<RootSystemId> {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    /// Reflection matrix of generator `i` (1-based).
    pub fn reflection(&self, i: usize) -> Result<&IntMatrix> {
        self.reflections
            .get(i.wrapping_sub(1))
            .ok_or(Error::GeneratorOutOfRange {
                index: i,
                rank: self.rank(),
            })
    }

    pub fn reflections(&self) -> &[IntMatrix] {
        &self.reflections
    }

    pub fn positive_root_count(&self) -> usize {
        self.positive_roots
    }

    /// `|W|` when known in closed form (built-in types only).
    pub fn group_order(&self) -> Option<u64> {
        self.id.map(weyl_group_order)
    }
}

impl FromStr for RootSystemData {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(RootSystemData::new(s.parse()?))
    }
}
