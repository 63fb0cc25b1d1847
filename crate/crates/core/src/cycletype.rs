//! Signed permutations of the canonical basis `e_1..e_n` for W(D_n) and their
//! signed cycle-types.
//!
//! In the Bourbaki realization of D_n, `s_i` for `i < n` swaps `e_i` and
//! `e_{i+1}`, while `s_n` sends `e_{n-1} -> -e_n` and `e_n -> -e_{n-1}`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::classify::{ConjugacyClass, GroupTable};
use crate::error::{Error, Result};
use crate::orbit::Word;
use crate::rootdata::{Family, RootSystemId};

/// `images[i - 1] = +-j` means `e_i -> +-e_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedPermutation {
    images: Vec<i32>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n as i32).collect(),
        }
    }

    /// Checks that the absolute values form a permutation of `1..=n`.
    pub fn new(images: Vec<i32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            let j = v.unsigned_abs() as usize;
            if j == 0 || j > n || std::mem::replace(&mut seen[j - 1], true) {
                return Err(Error::Unsupported(format!(
                    "{images:?} is not a signed permutation"
                )));
            }
        }
        Ok(Self { images })
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `e_i` (1-based) as a signed index.
    pub fn image(&self, i: usize) -> i32 {
        self.images[i - 1]
    }

    /// `self` after `first`: `e_i -> self(first(e_i))`.
    pub fn after(&self, first: &SignedPermutation) -> SignedPermutation {
        let images = first
            .images
            .iter()
            .map(|&v| v.signum() * self.image(v.unsigned_abs() as usize))
            .collect();
        Self { images }
    }

    pub fn negative_count(&self) -> usize {
        self.images.iter().filter(|&&v| v < 0).count()
    }
}

fn check_family(id: RootSystemId) -> Result<()> {
    match id.family() {
        Family::D => Ok(()),
        #[cfg(feature = "type-b")]
        Family::B => Ok(()),
        _ => Err(Error::Unsupported(format!(
            "signed cycle-types are only available for type D, not {id}"
        ))),
    }
}

pub fn generator_action(id: RootSystemId, i: usize) -> Result<SignedPermutation> {
    check_family(id)?;
    let n = id.rank();
    if i == 0 || i > n {
        return Err(Error::GeneratorOutOfRange { index: i, rank: n });
    }
    let mut images: Vec<i32> = (1..=n as i32).collect();
    if i < n {
        images.swap(i - 1, i);
    } else if id.family() == Family::D {
        images[n - 2] = -(n as i32);
        images[n - 1] = -(n as i32 - 1);
    } else {
        // type B: s_n = s_{e_n} flips the sign of e_n
        images[n - 1] = -(n as i32);
    }
    Ok(SignedPermutation { images })
}

/// The signed permutation of a word, rightmost letter applied first.
pub fn word_to_signed_perm(word: &Word, id: RootSystemId) -> Result<SignedPermutation> {
    let gens = (1..=id.rank())
        .map(|i| generator_action(id, i))
        .collect::<Result<Vec<_>>>()?;
    let mut p = SignedPermutation::identity(id.rank());
    for &i in word.letters() {
        let g = gens
            .get((i as usize).wrapping_sub(1))
            .ok_or(Error::GeneratorOutOfRange {
                index: i as usize,
                rank: id.rank(),
            })?;
        p = p.after(g);
    }
    Ok(p)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SignedCycle {
    pub length: usize,
    pub negative: bool,
}

/// Multiset of signed cycles, sorted by length descending and, within one
/// length, negative cycles first. Length-1 positive cycles are kept.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycleType(Vec<SignedCycle>);

impl CycleType {
    fn canonical(mut cycles: Vec<SignedCycle>) -> Self {
        cycles.sort_by(|a, b| b.length.cmp(&a.length).then(b.negative.cmp(&a.negative)));
        Self(cycles)
    }

    /// From signed lengths: `-2` is a negative 2-cycle.
    pub fn from_signed(lengths: &[i64]) -> Self {
        Self::canonical(
            lengths
                .iter()
                .map(|&l| SignedCycle {
                    length: l.unsigned_abs() as usize,
                    negative: l < 0,
                })
                .collect(),
        )
    }

    pub fn cycles(&self) -> &[SignedCycle] {
        &self.0
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.0
            .iter()
            .map(|c| {
                if c.negative {
                    -(c.length as i64)
                } else {
                    c.length as i64
                }
            })
            .collect()
    }

    pub fn negative_cycles(&self) -> usize {
        self.0.iter().filter(|c| c.negative).count()
    }
}

/// Plain-text rendering with `~` standing in for the overbar, e.g. `[~2~11]`.
impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spaced = self.0.iter().any(|c| c.length >= 10);
        f.write_str("[")?;
        for (k, c) in self.0.iter().enumerate() {
            if spaced && k > 0 {
                f.write_str(" ")?;
            }
            if c.negative {
                f.write_str("~")?;
            }
            write!(f, "{}", c.length)?;
        }
        f.write_str("]")
    }
}

impl Serialize for CycleType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_signed().serialize(s)
    }
}

pub fn signed_cycle_type(p: &SignedPermutation) -> CycleType {
    let n = p.degree();
    let mut visited = vec![false; n];
    let mut cycles = Vec::new();
    for start in 1..=n {
        if visited[start - 1] {
            continue;
        }
        let mut length = 0;
        let mut sign = 1;
        let mut j = start;
        loop {
            visited[j - 1] = true;
            length += 1;
            let v = p.image(j);
            sign *= v.signum();
            j = v.unsigned_abs() as usize;
            if j == start {
                break;
            }
        }
        cycles.push(SignedCycle {
            length,
            negative: sign < 0,
        });
    }
    CycleType::canonical(cycles)
}

/// Cycle-type of a class, checked to be the same for every member.
pub fn class_cycle_type(
    cls: &ConjugacyClass,
    table: &GroupTable,
    id: RootSystemId,
) -> Result<CycleType> {
    let rep = table.get(cls.representative);
    let expected = signed_cycle_type(&word_to_signed_perm(&rep.word, id)?);
    for &m in &cls.members {
        let e = table.get(m);
        let got = signed_cycle_type(&word_to_signed_perm(&e.word, id)?);
        if got != expected {
            return Err(Error::Integrity(format!(
                "class of {} mixes cycle-types {expected} and {got} ({} at level {} #{})",
                rep.word, e.word, m.level, m.ordinal
            )));
        }
    }
    Ok(expected)
}
