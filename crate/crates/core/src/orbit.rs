//! Level-by-level generation of W-orbits of dominant weights.
//!
//! Level `k+1` is built from level `k` by applying every simple reflection
//! `s_i` whose coordinate `y_i` is positive, keeping the image only when all
//! of its coordinates after position `i` are non-negative. That criterion
//! yields each orbit point exactly once. When the start weight is regular the
//! orbit is in bijection with the group, and every new element is also paired
//! with its inverse inside the same level through a dictionary keyed by
//! matrices.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{narrow, IntMatrix, MatrixKey};
use crate::rootdata::{CartanMatrix, RootSystemData};

/// Coordinates in the basis of fundamental weights.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn ones(rank: usize) -> Self {
        Self(vec![1; rank])
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&m| m >= 0)
    }

    /// Strictly dominant: inside the open fundamental chamber.
    pub fn is_regular(&self) -> bool {
        self.0.iter().all(|&m| m > 0)
    }

    /// Row vector times matrix.
    pub fn times(&self, m: &IntMatrix) -> Result<Weight> {
        let n = m.dim();
        if self.rank() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.rank(),
            });
        }
        (0..n)
            .map(|c| {
                (0..n).try_fold(0i64, |acc, r| {
                    self.0[r]
                        .checked_mul(i64::from(m.get(r, c)))
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow("weight times matrix"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Unsupported(format!("bad weight coordinate {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

/// A word in the simple reflections, stored as 1-based generator indices.
/// The leftmost letter is applied last: `s2.s1` means `s1` first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn prepend(&self, i: u8) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(i);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn append(&self, i: u8) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(i);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `s2.s1`, `s2s1`, and the empty word as `""` or `" "`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Word::empty());
        }
        let bad = || Error::Unsupported(format!("bad word {s:?}"));
        s.split('s')
            .skip(1)
            .map(|t| {
                t.trim_end_matches('.')
                    .parse::<u8>()
                    .ok()
                    .filter(|&i| i > 0)
                    .ok_or_else(bad)
            })
            .collect::<Result<Vec<_>>>()
            .and_then(|v| {
                if s.starts_with('s') {
                    Ok(Word(v))
                } else {
                    Err(bad())
                }
            })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupElement {
    pub weight: Weight,
    pub word: Word,
    pub word_inv: Word,
    pub matr: IntMatrix,
    pub matr_inv: IntMatrix,
    pub ordinal: usize,
    /// Position of the inverse in the same level, once resolved.
    pub inverse_ordinal: Option<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Level {
    pub index: usize,
    pub elements: Vec<GroupElement>,
}

impl Level {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn self_inverse_count(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| e.inverse_ordinal == Some(e.ordinal))
            .count()
    }

    /// Every inverse pointer is resolved, reciprocal, and names an element
    /// whose matrix is the inverse matrix.
    pub fn check_pairing(&self) -> Result<()> {
        for (pos, e) in self.elements.iter().enumerate() {
            if e.ordinal != pos {
                return Err(Error::Integrity(format!(
                    "level {}: element at {pos} has ordinal {}",
                    self.index, e.ordinal
                )));
            }
            let j = e.inverse_ordinal.ok_or_else(|| {
                Error::Integrity(format!("level {}: element {pos} unpaired", self.index))
            })?;
            let partner = self.elements.get(j).ok_or_else(|| {
                Error::Integrity(format!(
                    "level {}: element {pos} points to missing {j}",
                    self.index
                ))
            })?;
            if partner.inverse_ordinal != Some(pos) || partner.matr != e.matr_inv {
                return Err(Error::Integrity(format!(
                    "level {}: elements {pos} and {j} are not mutual inverses",
                    self.index
                )));
            }
        }
        Ok(())
    }
}

/// Bookkeeping of the inverse-pairing dictionary for one level.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct PairingStats {
    /// Entries left in the dictionary once the level is complete.
    pub dictionary_entries: usize,
    pub self_inverse: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Pairing {
    Resolve,
    Skip,
}

fn check_generator(i: usize, rank: usize) -> Result<()> {
    if i == 0 || i > rank {
        Err(Error::GeneratorOutOfRange { index: i, rank })
    } else {
        Ok(())
    }
}

/// `s_i` on weight coordinates: `m_k - m_i * c[i][k]`.
pub fn apply_reflection(w: &Weight, i: usize, rs: &RootSystemData) -> Result<Weight> {
    reflect_weight(w, i, rs.cartan())
}

fn reflect_weight(w: &Weight, i: usize, cartan: &CartanMatrix) -> Result<Weight> {
    let n = cartan.rank();
    if w.rank() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: w.rank(),
        });
    }
    check_generator(i, n)?;
    let mi = w.0[i - 1];
    let row = cartan.row(i - 1);
    w.0.iter()
        .zip(row)
        .map(|(&mk, &c)| {
            mi.checked_mul(i64::from(c))
                .and_then(|p| mk.checked_sub(p))
                .ok_or(Error::Overflow("weight reflection"))
        })
        .collect::<Result<Vec<_>>>()
        .map(Weight)
}

/// Change of level under `s_i`: the sign of coordinate `i`.
pub fn level_delta(w: &Weight, i: usize) -> i8 {
    w.0[i - 1].signum() as i8
}

/// The unique-predecessor test: `image = s_i(source)` is kept iff the source
/// coordinate `i` is positive and every image coordinate after `i` is
/// non-negative.
pub fn snow_accepts(source: &Weight, i: usize, image: &Weight) -> bool {
    source.0[i - 1] > 0 && image.0[i..].iter().all(|&x| x >= 0)
}

/// `R_i * m`: only row `i` changes, becoming `m[i] - sum_k c[i][k] m[k]`.
pub(crate) fn reflect_left(cartan: &CartanMatrix, i: usize, m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.dim();
    let mut entries = m.entries().to_vec();
    let ci = cartan.row(i - 1);
    for col in 0..n {
        let mut acc = i64::from(m.get(i - 1, col));
        for (k, &c) in ci.iter().enumerate() {
            acc -= i64::from(c) * i64::from(m.get(k, col));
        }
        entries[(i - 1) * n + col] = narrow(acc)?;
    }
    Ok(IntMatrix::from_entries(n, entries))
}

/// `m * R_i`: entry `(r, c)` becomes `m[r][c] - m[r][i] * c[i][c]`.
pub(crate) fn reflect_right(m: &IntMatrix, cartan: &CartanMatrix, i: usize) -> Result<IntMatrix> {
    let n = m.dim();
    let mut entries = m.entries().to_vec();
    let ci = cartan.row(i - 1);
    for r in 0..n {
        let mri = i64::from(m.get(r, i - 1));
        if mri == 0 {
            continue;
        }
        for (c, &cic) in ci.iter().enumerate() {
            entries[r * n + c] = narrow(i64::from(m.get(r, c)) - mri * i64::from(cic))?;
        }
    }
    Ok(IntMatrix::from_entries(n, entries))
}

/// Matrix of a word: the product of its reflection matrices, left to right.
pub fn word_matrix(word: &Word, rs: &RootSystemData) -> Result<IntMatrix> {
    let mut m = IntMatrix::identity(rs.rank());
    for &i in word.letters().iter().rev() {
        check_generator(i as usize, rs.rank())?;
        m = reflect_left(rs.cartan(), i as usize, &m)?;
    }
    Ok(m)
}

/// Applies the letters of `word` to `start`, rightmost first.
pub fn replay_word(word: &Word, start: &Weight, rs: &RootSystemData) -> Result<Weight> {
    word.letters()
        .iter()
        .rev()
        .try_fold(start.clone(), |w, &i| apply_reflection(&w, i as usize, rs))
}

pub fn matrix_key(m: &IntMatrix) -> MatrixKey {
    m.key()
}

pub fn build_level_zero(rs: &RootSystemData, start: &Weight) -> Result<Level> {
    if start.rank() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: start.rank(),
        });
    }
    if !start.is_dominant() {
        return Err(Error::NotDominant(start.to_string()));
    }
    let id = IntMatrix::identity(rs.rank());
    Ok(Level {
        index: 0,
        elements: vec![GroupElement {
            weight: start.clone(),
            word: Word::empty(),
            word_inv: Word::empty(),
            matr: id.clone(),
            matr_inv: id,
            ordinal: 0,
            inverse_ordinal: Some(0),
        }],
    })
}

/// Builds level `k+1` from level `k`. Sources are visited in stored order and
/// generators in ascending order, so element ordinals are deterministic.
pub fn build_next_level(
    current: &Level,
    rs: &RootSystemData,
    pairing: Pairing,
) -> Result<(Level, PairingStats)> {
    let rank = rs.rank();
    let cartan = rs.cartan();
    let mut elements: Vec<GroupElement> = Vec::new();
    let mut dictionary: HashMap<MatrixKey, usize> = HashMap::new();
    let mut self_inverse = 0;

    for src in &current.elements {
        for i in 1..=rank {
            if src.weight.0[i - 1] <= 0 {
                continue;
            }
            let image = reflect_weight(&src.weight, i, cartan)?;
            if !snow_accepts(&src.weight, i, &image) {
                continue;
            }
            if pairing == Pairing::Resolve && image.0.contains(&0) {
                return Err(Error::Integrity(format!(
                    "regular orbit reached wall weight {image} at level {}",
                    current.index + 1
                )));
            }
            let ordinal = elements.len();
            let mut elem = GroupElement {
                weight: image,
                word: src.word.prepend(i as u8),
                word_inv: src.word_inv.append(i as u8),
                matr: reflect_left(cartan, i, &src.matr)?,
                matr_inv: reflect_right(&src.matr_inv, cartan, i)?,
                ordinal,
                inverse_ordinal: None,
            };
            if pairing == Pairing::Resolve {
                if elem.matr.mul(&elem.matr)?.is_identity() {
                    elem.inverse_ordinal = Some(ordinal);
                    self_inverse += 1;
                } else {
                    let key = elem.matr.key();
                    if let Some(&partner) = dictionary.get(&key) {
                        let other = &mut elements[partner];
                        if other.matr_inv != elem.matr || other.inverse_ordinal.is_some() {
                            return Err(Error::Integrity(format!(
                                "level {}: dictionary key of element {partner} matched \
                                 element {ordinal} with a different matrix",
                                current.index + 1
                            )));
                        }
                        other.inverse_ordinal = Some(ordinal);
                        elem.inverse_ordinal = Some(partner);
                    } else if dictionary.insert(elem.matr_inv.key(), ordinal).is_some() {
                        return Err(Error::Integrity(format!(
                            "level {}: two elements share an inverse matrix",
                            current.index + 1
                        )));
                    }
                }
            }
            elements.push(elem);
        }
    }

    let level = Level {
        index: current.index + 1,
        elements,
    };
    if pairing == Pairing::Resolve {
        if let Some(e) = level.elements.iter().find(|e| e.inverse_ordinal.is_none()) {
            return Err(Error::Integrity(format!(
                "level {}: element {} ({}) has no inverse in its level",
                level.index, e.ordinal, e.word
            )));
        }
    }
    Ok((
        level,
        PairingStats {
            dictionary_entries: dictionary.len(),
            self_inverse,
        },
    ))
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    pub pairing: Pairing,
    /// Stop after this level index.
    pub max_level: Option<usize>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self {
            pairing: Pairing::Resolve,
            max_level: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunSummary {
    pub level_sizes: Vec<usize>,
    pub total: u64,
}

/// Streams the levels of the orbit of `start` to `sink`, holding at most two
/// levels in memory. With [`Pairing::Resolve`] the start weight must be
/// regular and the run covers the whole group.
pub fn enumerate<F>(
    rs: &RootSystemData,
    start: &Weight,
    opts: EnumerateOptions,
    mut sink: F,
) -> Result<RunSummary>
where
    F: FnMut(&Level, &PairingStats) -> Result<()>,
{
    if opts.pairing == Pairing::Resolve && !start.is_regular() {
        return Err(Error::NotDominant(format!(
            "{start} (inverse pairing needs a strictly dominant start weight)"
        )));
    }
    let mut current = build_level_zero(rs, start)?;
    let stats = PairingStats {
        dictionary_entries: 0,
        self_inverse: usize::from(opts.pairing == Pairing::Resolve),
    };
    if opts.pairing == Pairing::Skip {
        current.elements[0].inverse_ordinal = None;
    }
    sink(&current, &stats)?;
    let mut sizes = vec![1];
    while opts.max_level.is_none_or(|k| current.index < k) {
        let (next, stats) = build_next_level(&current, rs, opts.pairing)?;
        if next.is_empty() {
            break;
        }
        sink(&next, &stats)?;
        sizes.push(next.len());
        current = next;
    }
    let total = sizes.iter().map(|&s| s as u64).sum();

    if opts.pairing == Pairing::Resolve && opts.max_level.is_none() {
        let expected_levels = rs.positive_root_count() + 1;
        if sizes.len() != expected_levels || sizes.last() != Some(&1) {
            return Err(Error::Integrity(format!(
                "expected {expected_levels} levels ending in a single longest element, got {:?}",
                sizes
            )));
        }
        if let Some(order) = rs.group_order() {
            if total != order {
                return Err(Error::Integrity(format!(
                    "enumerated {total} elements, group order is {order}"
                )));
            }
        }
    }
    Ok(RunSummary {
        level_sizes: sizes,
        total,
    })
}

/// The whole group, from the all-ones start weight, kept in memory.
pub fn generate_group(rs: &RootSystemData) -> Result<Vec<Level>> {
    generate_group_from(rs, &Weight::ones(rs.rank()))
}

pub fn generate_group_from(rs: &RootSystemData, start: &Weight) -> Result<Vec<Level>> {
    let mut levels = Vec::new();
    enumerate(rs, start, EnumerateOptions::default(), |l, _| {
        levels.push(l.clone());
        Ok(())
    })?;
    Ok(levels)
}

/// The orbit `W.mu` by levels, without inverse pairing.
pub fn generate_orbit(rs: &RootSystemData, mu: &Weight) -> Result<Vec<Level>> {
    let mut levels = Vec::new();
    let opts = EnumerateOptions {
        pairing: Pairing::Skip,
        max_level: None,
    };
    enumerate(rs, mu, opts, |l, _| {
        levels.push(l.clone());
        Ok(())
    })?;
    Ok(levels)
}
