//! Element orders, the partition of a group by element order, and conjugacy
//! classes.
//!
//! Classes are closed under conjugation by the simple reflections only:
//! `w -> R_i w R_i`. The generators generate W, so the closure is the full
//! class.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::cycletype::CycleType;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::orbit::{reflect_left, reflect_right, GroupElement, Level};
use crate::reference::{D4ClassRow, D4_CLASS_ROWS};
use crate::rootdata::RootSystemData;
use crate::store::{build_index, ElementRef, GlobalIndex};

/// Default upper bound on the group size for which classes are computed.
pub const DEFAULT_CEILING: u64 = 10_000_000;

pub fn check_ceiling(total: u64, ceiling: u64) -> Result<()> {
    if total > ceiling {
        Err(Error::CeilingExceeded { total, ceiling })
    } else {
        Ok(())
    }
}

/// All levels of one group plus the matrix index over them.
#[derive(Clone, Debug)]
pub struct GroupTable {
    levels: Vec<Level>,
    index: GlobalIndex,
}

impl GroupTable {
    pub fn new(levels: Vec<Level>) -> Result<Self> {
        for (k, l) in levels.iter().enumerate() {
            if l.index != k {
                return Err(Error::Integrity(format!(
                    "level at position {k} has index {}",
                    l.index
                )));
            }
        }
        let index = build_index(&levels)?;
        Ok(Self { levels, index })
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn index(&self) -> &GlobalIndex {
        &self.index
    }

    pub fn total(&self) -> u64 {
        self.index.len() as u64
    }

    pub fn get(&self, r: ElementRef) -> &GroupElement {
        &self.levels[r.level as usize].elements[r.ordinal as usize]
    }

    /// Every element position in (level, ordinal) order.
    pub fn refs(&self) -> impl Iterator<Item = ElementRef> + '_ {
        self.levels
            .iter()
            .flat_map(|l| (0..l.len()).map(move |o| ElementRef::new(l.index, o)))
    }
}

/// Smallest `p >= 1` with `m^p = 1`, searching up to `bound`.
pub fn element_order(m: &IntMatrix, bound: u64) -> Result<u64> {
    let mut power = m.clone();
    for p in 1..=bound.max(1) {
        if power.is_identity() {
            return Ok(p);
        }
        power = power.mul(m)?;
    }
    Err(Error::Integrity(format!(
        "matrix {m:?} has no order up to {bound}"
    )))
}

/// Number of elements of each order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrderPartition(BTreeMap<u64, u64>);

impl OrderPartition {
    pub fn from_counts(counts: impl IntoIterator<Item = (u64, u64)>) -> Self {
        Self(counts.into_iter().collect())
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }
}

impl fmt::Display for OrderPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (order, count)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{order}:{count}")?;
        }
        f.write_str("}")
    }
}

pub fn order_partition(table: &GroupTable) -> Result<OrderPartition> {
    let bound = table.total();
    let mut counts = BTreeMap::new();
    for level in table.levels() {
        for e in &level.elements {
            *counts.entry(element_order(&e.matr, bound)?).or_insert(0) += 1;
        }
    }
    Ok(OrderPartition(counts))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    /// Least member in (level, ordinal) order.
    pub representative: ElementRef,
    /// Sorted by (level, ordinal).
    pub members: Vec<ElementRef>,
    pub element_order: u64,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

pub fn conjugacy_classes(table: &GroupTable, rs: &RootSystemData) -> Result<Vec<ConjugacyClass>> {
    let gens: Vec<usize> = (1..=rs.rank()).collect();
    conjugacy_classes_with_generator_order(table, rs, &gens)
}

/// Like [`conjugacy_classes`], closing classes with the generators visited in
/// the given order.
pub fn conjugacy_classes_with_generator_order(
    table: &GroupTable,
    rs: &RootSystemData,
    generators: &[usize],
) -> Result<Vec<ConjugacyClass>> {
    let cartan = rs.cartan();
    for &i in generators {
        rs.reflection(i)?;
    }
    let mut assigned: Vec<Vec<bool>> = table
        .levels()
        .iter()
        .map(|l| vec![false; l.len()])
        .collect();
    let mut classes = Vec::new();
    for start in table.refs() {
        if assigned[start.level as usize][start.ordinal as usize] {
            continue;
        }
        assigned[start.level as usize][start.ordinal as usize] = true;
        let mut members = vec![start];
        let mut cursor = 0;
        while cursor < members.len() {
            let m = &table.get(members[cursor]).matr;
            cursor += 1;
            for &i in generators {
                let conj = reflect_right(&reflect_left(cartan, i, m)?, cartan, i)?;
                let r = table.index().lookup(&conj).ok_or_else(|| {
                    Error::Integrity(format!("conjugate {conj:?} is not in the index"))
                })?;
                let slot = &mut assigned[r.level as usize][r.ordinal as usize];
                if !*slot {
                    *slot = true;
                    members.push(r);
                }
            }
        }
        members.sort_unstable();
        let element_order = element_order(&table.get(start).matr, table.total())?;
        classes.push(ConjugacyClass {
            representative: start,
            members,
            element_order,
        });
    }
    Ok(classes)
}

/// Match of a W(D4) class against the reference class table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum D4ClassLabel {
    Unique {
        row: usize,
        label: &'static str,
    },
    /// Several rows share size, order and cycle-type.
    Ambiguous {
        rows: Vec<usize>,
        labels: Vec<&'static str>,
    },
}

impl fmt::Display for D4ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            D4ClassLabel::Unique { label, .. } => f.write_str(label),
            D4ClassLabel::Ambiguous { rows, labels } => {
                f.write_str("ambiguous {")?;
                for (k, (r, l)) in rows.iter().zip(labels).enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{l} (row {r})")?;
                }
                f.write_str("}")
            }
        }
    }
}

pub fn class_label_d4(size: usize, order: u64, cycle_type: &CycleType) -> Option<D4ClassLabel> {
    let hits: Vec<&D4ClassRow> = D4_CLASS_ROWS
        .iter()
        .filter(|r| {
            r.size == size
                && r.order == order
                && CycleType::from_signed(r.cycle_type) == *cycle_type
        })
        .collect();
    match hits.as_slice() {
        [] => None,
        [r] => Some(D4ClassLabel::Unique {
            row: r.row,
            label: r.root_subset,
        }),
        rows => Some(D4ClassLabel::Ambiguous {
            rows: rows.iter().map(|r| r.row).collect(),
            labels: rows.iter().map(|r| r.root_subset).collect(),
        }),
    }
}
