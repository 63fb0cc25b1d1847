//! Level files on disk, the run summary, and the global element index.
//!
//! A level file holds one record per element: a header line
//! `n={ordinal}, name={word}, w={coords}, n_inv={inverse ordinal}` followed by
//! one line per matrix row rendered as `[a, b, c]`. The identity's name is
//! written as a single space. Files are named
//! `{prefix}_WeightMatrByLevel_{k}_elems={n}.txt`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, MatrixKey};
use crate::orbit::{word_matrix, GroupElement, Level, Weight, Word};
use crate::rootdata::RootSystemData;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelFile {
    pub path: PathBuf,
    pub index: usize,
    pub count: usize,
}

pub fn level_file_name(prefix: &str, index: usize, count: usize) -> String {
    format!("{prefix}_WeightMatrByLevel_{index}_elems={count}.txt")
}

/// Splits a level file name into `(prefix, index, count)`.
pub fn parse_level_file_name(name: &str) -> Option<(&str, usize, usize)> {
    let stem = name.strip_suffix(".txt")?;
    let (prefix, rest) = stem.rsplit_once("_WeightMatrByLevel_")?;
    let (k, n) = rest.split_once("_elems=")?;
    Some((prefix, k.parse().ok()?, n.parse().ok()?))
}

fn render_row(out: &mut String, row: &[i32]) {
    out.push('[');
    for (k, v) in row.iter().enumerate() {
        if k > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{v}");
    }
    out.push(']');
}

pub fn render_level(level: &Level) -> String {
    let mut out = String::new();
    for e in &level.elements {
        let name = if e.word.is_empty() {
            " ".to_string()
        } else {
            e.word.to_string()
        };
        let inv = e.inverse_ordinal.map_or(-1, |j| j as i64);
        let _ = write!(
            out,
            "n={}, name={}, w={}, n_inv={}",
            e.ordinal, name, e.weight, inv
        );
        for row in e.matr.rows() {
            out.push('\n');
            render_row(&mut out, row);
        }
        out.push('\n');
    }
    out
}

pub fn write_level(level: &Level, prefix: &str, dir: &Path) -> Result<LevelFile> {
    if level.is_empty() {
        return Err(Error::EmptyLevel(level.index));
    }
    let path = dir.join(level_file_name(prefix, level.index, level.len()));
    fs::write(&path, render_level(level)).map_err(|e| Error::io(&path, e))?;
    Ok(LevelFile {
        path,
        index: level.index,
        count: level.len(),
    })
}

struct Header {
    ordinal: usize,
    word: Word,
    weight: Weight,
    inverse: Option<usize>,
}

fn parse_header(line: &str, origin: &str, no: usize) -> Result<Header> {
    let err = |msg: &str| Error::parse(origin, no, format!("{msg} in header {line:?}"));
    let rest = line.strip_prefix("n=").ok_or_else(|| err("missing n="))?;
    let (n, rest) = rest
        .split_once(", name=")
        .ok_or_else(|| err("missing name="))?;
    let (name, rest) = rest.split_once(", w=").ok_or_else(|| err("missing w="))?;
    let (w, inv) = rest
        .split_once(", n_inv=")
        .ok_or_else(|| err("missing n_inv="))?;
    let ordinal = n.parse().map_err(|_| err("bad n"))?;
    let word = name.parse().map_err(|_| err("bad name"))?;
    let weight = w.parse().map_err(|_| err("bad weight"))?;
    let inv: i64 = inv.trim().parse().map_err(|_| err("bad n_inv"))?;
    let inverse = match inv {
        -1 => None,
        j if j >= 0 => Some(j as usize),
        _ => return Err(err("bad n_inv")),
    };
    Ok(Header {
        ordinal,
        word,
        weight,
        inverse,
    })
}

fn parse_row(line: &str, rank: usize, origin: &str, no: usize) -> Result<Vec<i32>> {
    let inner = line
        .strip_prefix('[')
        .and_then(|l| l.strip_suffix(']'))
        .ok_or_else(|| Error::parse(origin, no, format!("expected matrix row, got {line:?}")))?;
    let row = inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i32>()
                .map_err(|_| Error::parse(origin, no, format!("bad matrix entry {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if row.len() != rank {
        return Err(Error::parse(
            origin,
            no,
            format!("matrix row has {} entries, expected {rank}", row.len()),
        ));
    }
    Ok(row)
}

/// Parses level `index` from file text. The inverse word and matrix are
/// rebuilt from the reduced word, and the stored matrix must agree with it.
pub fn parse_level(text: &str, index: usize, origin: &str, rs: &RootSystemData) -> Result<Level> {
    let rank = rs.rank();
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
    let mut elements = Vec::new();
    while let Some((no, line)) = lines.next() {
        if line.is_empty() {
            return Err(Error::parse(origin, no, "unexpected blank line"));
        }
        let h = parse_header(line, origin, no)?;
        if h.ordinal != elements.len() {
            return Err(Error::Integrity(format!(
                "{origin}:{no}: record n={} out of sequence, expected n={}",
                h.ordinal,
                elements.len()
            )));
        }
        if h.weight.rank() != rank {
            return Err(Error::parse(
                origin,
                no,
                format!(
                    "weight has {} coordinates, expected {rank}",
                    h.weight.rank()
                ),
            ));
        }
        if h.word.len() != index {
            return Err(Error::Integrity(format!(
                "{origin}:{no}: word {} has length {}, level is {index}",
                h.word,
                h.word.len()
            )));
        }
        let mut rows = Vec::with_capacity(rank);
        for _ in 0..rank {
            let (rno, rline) = lines
                .next()
                .ok_or_else(|| Error::parse(origin, no, "truncated record: missing matrix rows"))?;
            rows.push(parse_row(rline, rank, origin, rno)?);
        }
        let matr = IntMatrix::from_rows(&rows)?;
        if matr != word_matrix(&h.word, rs)? {
            return Err(Error::Integrity(format!(
                "{origin}:{no}: stored matrix does not match word {}",
                h.word
            )));
        }
        let word_inv = h.word.reversed();
        let matr_inv = word_matrix(&word_inv, rs)?;
        elements.push(GroupElement {
            weight: h.weight,
            word: h.word,
            word_inv,
            matr,
            matr_inv,
            ordinal: h.ordinal,
            inverse_ordinal: h.inverse,
        });
    }
    if let Some(e) = elements
        .iter()
        .find(|e| e.inverse_ordinal.is_some_and(|j| j >= elements.len()))
    {
        return Err(Error::Integrity(format!(
            "{origin}: n_inv of record {} is out of range",
            e.ordinal
        )));
    }
    Ok(Level { index, elements })
}

pub fn read_level(path: &Path, rs: &RootSystemData) -> Result<Level> {
    let origin = path.display().to_string();
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
    let (_, index, count) = parse_level_file_name(name)
        .ok_or_else(|| Error::parse(&origin, 0, "file name does not match the level pattern"))?;
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let level = parse_level(&text, index, &origin, rs)?;
    if level.len() != count {
        return Err(Error::parse(
            &origin,
            text.lines().count(),
            format!("found {} records, file name says {count}", level.len()),
        ));
    }
    Ok(level)
}

/// Level files in `dir` for `prefix`, sorted by level index.
pub fn list_level_files(dir: &Path, prefix: &str) -> Result<Vec<LevelFile>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let name = entry.file_name();
        let Some(name) = name.to_str() else { continue };
        if let Some((p, index, count)) = parse_level_file_name(name) {
            if p == prefix {
                files.push(LevelFile {
                    path: entry.path(),
                    index,
                    count,
                });
            }
        }
    }
    files.sort_by_key(|f| f.index);
    Ok(files)
}

/// Loads every level of a run. Indices must be contiguous from 0.
pub fn load_levels(dir: &Path, prefix: &str, rs: &RootSystemData) -> Result<Vec<Level>> {
    let files = list_level_files(dir, prefix)?;
    if files.is_empty() {
        return Err(Error::Unsupported(format!(
            "no level files for {prefix} in {}",
            dir.display()
        )));
    }
    files
        .iter()
        .enumerate()
        .map(|(k, f)| {
            if f.index != k {
                return Err(Error::Integrity(format!(
                    "level {k} missing from {}",
                    dir.display()
                )));
            }
            read_level(&f.path, rs)
        })
        .collect()
}

/// Machine-readable summary written next to the level files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub root_system: String,
    pub levels: Vec<usize>,
    pub total: u64,
    pub elapsed_ms: f64,
}

pub fn summary_path(dir: &Path, prefix: &str) -> PathBuf {
    dir.join(format!("{prefix}_summary.json"))
}

pub fn write_summary(summary: &Summary, dir: &Path) -> Result<PathBuf> {
    let path = summary_path(dir, &summary.root_system);
    let mut text = serde_json::to_string_pretty(summary)?;
    text.push('\n');
    fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

pub fn read_summary(dir: &Path, prefix: &str) -> Result<Summary> {
    let path = summary_path(dir, prefix);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    Ok(serde_json::from_str(&text)?)
}

/// Position of an element: level index and ordinal within the level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ElementRef {
    pub level: u32,
    pub ordinal: u32,
}

impl ElementRef {
    pub fn new(level: usize, ordinal: usize) -> Self {
        Self {
            level: level as u32,
            ordinal: ordinal as u32,
        }
    }
}

/// Matrix key to element position, over a complete group.
#[derive(Clone, Debug, Default)]
pub struct GlobalIndex {
    map: HashMap<MatrixKey, ElementRef>,
}

impl GlobalIndex {
    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn lookup(&self, m: &IntMatrix) -> Option<ElementRef> {
        self.map.get(&m.key()).copied()
    }

    pub fn lookup_key(&self, key: &MatrixKey) -> Option<ElementRef> {
        self.map.get(key).copied()
    }
}

pub fn build_index(levels: &[Level]) -> Result<GlobalIndex> {
    let total: usize = levels.iter().map(Level::len).sum();
    let mut map = HashMap::with_capacity(total);
    for level in levels {
        for e in &level.elements {
            let here = ElementRef::new(level.index, e.ordinal);
            if let Some(prev) = map.insert(e.matr.key(), here) {
                return Err(Error::Integrity(format!(
                    "duplicate matrix at level {} #{} and level {} #{}",
                    prev.level, prev.ordinal, here.level, here.ordinal
                )));
            }
        }
    }
    Ok(GlobalIndex { map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::generate_group;

    fn d4() -> RootSystemData {
        "D4".parse().unwrap()
    }

    #[test]
    fn file_name_pattern() {
        assert_eq!(
            level_file_name("D4", 2, 9),
            "D4_WeightMatrByLevel_2_elems=9.txt"
        );
        assert_eq!(
            parse_level_file_name("D4_WeightMatrByLevel_2_elems=9.txt"),
            Some(("D4", 2, 9))
        );
        assert_eq!(parse_level_file_name("D4_summary.json"), None);
    }

    #[test]
    fn level_zero_record() {
        let levels = generate_group(&d4()).unwrap();
        assert_eq!(
            render_level(&levels[0]),
            "n=0, name= , w=1,1,1,1, n_inv=0\n[1, 0, 0, 0]\n[0, 1, 0, 0]\n[0, 0, 1, 0]\n[0, 0, 0, 1]\n"
        );
    }

    #[test]
    fn level_one_s3_record() {
        let levels = generate_group(&d4()).unwrap();
        let text = render_level(&levels[1]);
        assert!(text.contains("n=2, name=s3, w=1,2,-1,1, n_inv=2\n"));
    }

    #[test]
    fn empty_level_refused() {
        let dir = tempfile::tempdir().unwrap();
        let empty = Level {
            index: 3,
            elements: vec![],
        };
        assert!(matches!(
            write_level(&empty, "D4", dir.path()),
            Err(Error::EmptyLevel(3))
        ));
    }

    #[test]
    fn identity_name_forms_accepted() {
        let rs = d4();
        let a = "n=0, name= , w=1,1,1,1, n_inv=0\n[1, 0, 0, 0]\n[0, 1, 0, 0]\n[0, 0, 1, 0]\n[0, 0, 0, 1]\n";
        let b = a.replace("name= ,", "name=,");
        assert_eq!(
            parse_level(a, 0, "a", &rs).unwrap(),
            parse_level(&b, 0, "b", &rs).unwrap()
        );
    }

    #[test]
    fn truncated_file_is_a_parse_error() {
        let rs = d4();
        let levels = generate_group(&rs).unwrap();
        let text = render_level(&levels[2]);
        let cut: String = text.lines().take(12).map(|l| format!("{l}\n")).collect();
        assert!(matches!(
            parse_level(&cut, 2, "cut", &rs),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn out_of_sequence_header_is_an_integrity_error() {
        let rs = d4();
        let levels = generate_group(&rs).unwrap();
        let text = render_level(&levels[2]).replacen("n=1, name", "n=7, name", 1);
        assert!(matches!(
            parse_level(&text, 2, "seq", &rs),
            Err(Error::Integrity(_))
        ));
    }

    #[test]
    fn malformed_row_names_its_line() {
        let rs = d4();
        let levels = generate_group(&rs).unwrap();
        let text = render_level(&levels[1]).replacen("[0, 1, 0, 0]", "[0, 1, x, 0]", 1);
        match parse_level(&text, 1, "bad", &rs) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tampered_matrix_detected() {
        let rs = d4();
        let levels = generate_group(&rs).unwrap();
        let text = render_level(&levels[1]).replacen("[-1, 1, 0, 0]", "[-1, 2, 0, 0]", 1);
        assert!(matches!(
            parse_level(&text, 1, "t", &rs),
            Err(Error::Integrity(_))
        ));
    }

    #[test]
    fn index_small_groups() {
        let a1: RootSystemData = "A1".parse().unwrap();
        assert_eq!(build_index(&generate_group(&a1).unwrap()).unwrap().len(), 2);
        let b3: RootSystemData = "B3".parse().unwrap();
        assert_eq!(
            build_index(&generate_group(&b3).unwrap()).unwrap().len(),
            48
        );
    }

    #[test]
    fn duplicate_in_index_rejected() {
        let levels = generate_group(&d4()).unwrap();
        let mut doubled = levels.clone();
        doubled.push(levels[1].clone());
        assert!(matches!(build_index(&doubled), Err(Error::Integrity(_))));
    }
}
