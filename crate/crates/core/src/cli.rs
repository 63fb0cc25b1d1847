//! Command-line front end.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::classify::{
    check_ceiling, class_label_d4, conjugacy_classes, order_partition, ConjugacyClass, GroupTable,
    OrderPartition, DEFAULT_CEILING,
};
use crate::cycletype::{class_cycle_type, CycleType};
use crate::error::{Error, Result};
use crate::orbit::{enumerate, EnumerateOptions, Pairing, Weight, Word};
use crate::reference::{reference_table, D4_CLASS_ROWS, D4_LEVEL2_GOLDEN, D4_ORDER_PARTITION};
use crate::rootdata::{CartanMatrix, Family, RootSystemData};
use crate::store::{
    level_file_name, list_level_files, load_levels, read_summary, write_level, write_summary,
    Summary,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "weyl-snow",
    version,
    about = "Enumerate finite Weyl groups by levels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate a group (or an orbit) and write one file per level.
    Generate(GenerateArgs),
    /// Check generated output against the built-in reference tables.
    Verify(OutputArgs),
    /// Conjugacy classes, with signed cycle-types for type D.
    Classes(ClassArgs),
    /// Number of elements of each order.
    Orders(ClassArgs),
    /// Time in-memory enumeration and report JSON.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Root system such as D4, B7 or E7; with --cartan-file, just a label.
    pub root_system: String,
    /// Plain-text Cartan matrix: rank, then one row per line.
    #[arg(long)]
    pub cartan_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Output directory (defaults to `{ROOT_SYSTEM}_DataFiles`).
    pub dir: Option<PathBuf>,
    #[arg(long, conflicts_with = "dir")]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    /// Dominant start weight, comma separated; default all ones.
    #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
    pub start_weight: Option<Weight>,
    /// Stop after level K.
    #[arg(long, value_name = "K")]
    pub levels_up_to: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    /// Refuse groups larger than this many elements.
    #[arg(long, default_value_t = DEFAULT_CEILING)]
    pub ceiling: u64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(required = true)]
    pub root_systems: Vec<String>,
}

fn parse_weight(s: &str) -> std::result::Result<Weight, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Outcome {
    Ok,
    Mismatch(Vec<String>),
}

fn load_system(sys: &SystemArgs) -> Result<RootSystemData> {
    match &sys.cartan_file {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            let cartan = CartanMatrix::parse(&text, &path.display().to_string())?;
            RootSystemData::from_cartan(&sys.root_system, cartan)
        }
        None => sys.root_system.parse(),
    }
}

impl OutputArgs {
    fn dir(&self, label: &str) -> PathBuf {
        self.out
            .clone()
            .or_else(|| self.dir.clone())
            .unwrap_or_else(|| PathBuf::from(format!("{label}_DataFiles")))
    }
}

fn word_label(w: &Word) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        w.to_string()
    }
}

/// Runs a parsed command, writing normal output to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Classes(a) => cmd_classes(&a, out),
        Command::Orders(a) => cmd_orders(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
    };
    match result {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::Mismatch(list)) => {
            for m in list {
                let _ = writeln!(err, "mismatch: {m}");
            }
            EXIT_MISMATCH
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<Outcome> {
    let rs = load_system(&args.output.system)?;
    let label = rs.label().to_string();
    let dir = args.output.dir(&label);
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    let start = args
        .start_weight
        .clone()
        .unwrap_or_else(|| Weight::ones(rs.rank()));
    let opts = EnumerateOptions {
        pairing: if start.is_regular() {
            Pairing::Resolve
        } else {
            Pairing::Skip
        },
        max_level: args.levels_up_to,
    };
    let json = args.output.json;
    let t0 = Instant::now();
    let mut last = Instant::now();
    let run = enumerate(&rs, &start, opts, |level, _| {
        write_level(level, &label, &dir)?;
        if !json {
            let now = Instant::now();
            writeln!(
                out,
                "level {}: {} elements ({:.1} ms)",
                level.index,
                level.len(),
                (now - last).as_secs_f64() * 1e3
            )
            .map_err(io_err)?;
            last = now;
        }
        Ok(())
    })?;
    let summary = Summary {
        root_system: label,
        levels: run.level_sizes,
        total: run.total,
        elapsed_ms: t0.elapsed().as_secs_f64() * 1e3,
    };
    let path = write_summary(&summary, &dir)?;
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&summary)?).map_err(io_err)?;
    } else {
        writeln!(
            out,
            "total: {} elements in {} levels ({:.1} ms), summary {}",
            summary.total,
            summary.levels.len(),
            summary.elapsed_ms,
            path.display()
        )
        .map_err(io_err)?;
    }
    Ok(Outcome::Ok)
}

fn verify_mismatches(rs: &RootSystemData, dir: &Path) -> Result<Vec<String>> {
    let label = rs.label();
    let summary = read_summary(dir, label)?;
    let mut bad = Vec::new();
    if summary.root_system != label {
        bad.push(format!(
            "summary is for {}, not {label}",
            summary.root_system
        ));
    }
    let sum: u64 = summary.levels.iter().map(|&s| s as u64).sum();
    if sum != summary.total {
        bad.push(format!(
            "summary total {} but level sizes add up to {sum}",
            summary.total
        ));
    }
    if let Some(table) = reference_table(label) {
        if summary.levels.len() != table.level_sizes.len() {
            bad.push(format!(
                "{} levels, expected {}",
                summary.levels.len(),
                table.level_sizes.len()
            ));
        }
        for (k, (&got, &want)) in summary.levels.iter().zip(&table.level_sizes).enumerate() {
            if got != want {
                bad.push(format!("level {k}: {got} elements, expected {want}"));
            }
        }
        if summary.total != table.total {
            bad.push(format!("total {}, expected {}", summary.total, table.total));
        }
    } else {
        if let Some(order) = rs.group_order() {
            if summary.total != order {
                bad.push(format!("total {}, expected |W| = {order}", summary.total));
            }
        }
        let expected_levels = rs.positive_root_count() + 1;
        if summary.levels.len() != expected_levels {
            bad.push(format!(
                "{} levels, expected {expected_levels}",
                summary.levels.len()
            ));
        }
        if summary.levels.iter().ne(summary.levels.iter().rev()) {
            bad.push("level sizes are not palindromic".into());
        }
    }

    let files: HashMap<usize, usize> = list_level_files(dir, label)?
        .into_iter()
        .map(|f| (f.index, f.count))
        .collect();
    for (k, &size) in summary.levels.iter().enumerate() {
        match files.get(&k) {
            None => bad.push(format!("missing file {}", level_file_name(label, k, size))),
            Some(&n) if n != size => bad.push(format!(
                "level {k}: file holds {n} elements, summary says {size}"
            )),
            Some(_) => {}
        }
    }
    if files.len() > summary.levels.len() {
        bad.push(format!(
            "{} level files but {} levels in the summary",
            files.len(),
            summary.levels.len()
        ));
    }

    if label == "D4" && rs.id().is_some() {
        let path = dir.join(level_file_name(label, 2, 9));
        match fs::read_to_string(&path) {
            Ok(text) if text == D4_LEVEL2_GOLDEN => {}
            Ok(text) => {
                let first = text
                    .lines()
                    .zip(D4_LEVEL2_GOLDEN.lines())
                    .position(|(a, b)| a != b)
                    .map_or_else(
                        || "length differs".to_string(),
                        |k| format!("line {}", k + 1),
                    );
                bad.push(format!(
                    "level 2 differs from the reference sample at {first}"
                ));
            }
            Err(e) => bad.push(format!("{}: {e}", path.display())),
        }
    }
    Ok(bad)
}

fn cmd_verify(args: &OutputArgs, out: &mut dyn Write) -> Result<Outcome> {
    let rs = load_system(&args.system)?;
    let dir = args.dir(rs.label());
    let bad = verify_mismatches(&rs, &dir)?;
    if args.json {
        let v = json!({ "root_system": rs.label(), "ok": bad.is_empty(), "mismatches": bad });
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?).map_err(io_err)?;
    } else if bad.is_empty() {
        writeln!(out, "{}: output in {} matches", rs.label(), dir.display()).map_err(io_err)?;
    }
    Ok(if bad.is_empty() {
        Outcome::Ok
    } else {
        Outcome::Mismatch(bad)
    })
}

fn load_table(args: &ClassArgs) -> Result<(RootSystemData, PathBuf, GroupTable)> {
    let rs = load_system(&args.output.system)?;
    let dir = args.output.dir(rs.label());
    let summary = read_summary(&dir, rs.label())?;
    check_ceiling(summary.total, args.ceiling)?;
    let levels = load_levels(&dir, rs.label(), &rs)?;
    let table = GroupTable::new(levels)?;
    if table.total() != summary.total {
        return Err(Error::Integrity(format!(
            "loaded {} elements, summary says {}",
            table.total(),
            summary.total
        )));
    }
    Ok((rs, dir, table))
}

fn is_builtin_d4(rs: &RootSystemData) -> bool {
    rs.id()
        .is_some_and(|id| id.family() == Family::D && id.rank() == 4)
}

fn d4_partition_mismatch(p: &OrderPartition) -> Option<String> {
    let want = OrderPartition::from_counts(D4_ORDER_PARTITION);
    (*p != want).then(|| format!("order partition {p}, expected {want}"))
}

#[derive(Serialize)]
struct ClassReport {
    index: usize,
    representative: String,
    level: u32,
    ordinal: u32,
    size: usize,
    order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycle_type: Option<CycleType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    members: Vec<(u32, u32)>,
}

fn class_reports(
    rs: &RootSystemData,
    table: &GroupTable,
    classes: &[ConjugacyClass],
) -> Result<Vec<ClassReport>> {
    let d_family = rs.id().filter(|id| id.family() == Family::D);
    classes
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let cycle_type = d_family
                .map(|id| class_cycle_type(c, table, id))
                .transpose()?;
            let label = match (&cycle_type, is_builtin_d4(rs)) {
                (Some(t), true) => Some(
                    class_label_d4(c.size(), c.element_order, t)
                        .map_or_else(|| "unknown".to_string(), |l| l.to_string()),
                ),
                _ => None,
            };
            Ok(ClassReport {
                index: k,
                representative: word_label(&table.get(c.representative).word),
                level: c.representative.level,
                ordinal: c.representative.ordinal,
                size: c.size(),
                order: c.element_order,
                cycle_type,
                label,
                members: c.members.iter().map(|m| (m.level, m.ordinal)).collect(),
            })
        })
        .collect()
}

fn render_class_report(
    label: &str,
    total: u64,
    table: &GroupTable,
    reports: &[ClassReport],
) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# {label}: {} conjugacy classes, {total} elements; n is the position within the level",
        reports.len()
    );
    for r in reports {
        let _ = write!(
            s,
            "\nclass {}, order = {}, size = {}",
            r.index, r.order, r.size
        );
        if let Some(t) = &r.cycle_type {
            let _ = write!(s, ", cycle type = {t}");
        }
        if let Some(l) = &r.label {
            let _ = write!(s, ", label = {l}");
        }
        let _ = writeln!(s);
        for (k, &(level, ordinal)) in r.members.iter().enumerate() {
            let e = &table.levels()[level as usize].elements[ordinal as usize];
            let _ = writeln!(
                s,
                "{:>6}  {}  level {level}  n={ordinal}",
                k + 1,
                word_label(&e.word)
            );
        }
    }
    s
}

fn d4_class_mismatches(reports: &[ClassReport]) -> Vec<String> {
    let mut bad = Vec::new();
    if reports.len() != D4_CLASS_ROWS.len() {
        bad.push(format!("{} classes, expected 13", reports.len()));
    }
    let mut got: Vec<(usize, u64, Vec<i64>)> = reports
        .iter()
        .map(|r| {
            (
                r.size,
                r.order,
                r.cycle_type
                    .as_ref()
                    .map(CycleType::to_signed)
                    .unwrap_or_default(),
            )
        })
        .collect();
    let mut want: Vec<(usize, u64, Vec<i64>)> = D4_CLASS_ROWS
        .iter()
        .map(|r| {
            (
                r.size,
                r.order,
                CycleType::from_signed(r.cycle_type).to_signed(),
            )
        })
        .collect();
    got.sort();
    want.sort();
    if got != want {
        bad.push(format!(
            "class (size, order, cycle type) multiset {got:?}, expected {want:?}"
        ));
    }
    bad
}

fn cmd_classes(args: &ClassArgs, out: &mut dyn Write) -> Result<Outcome> {
    let (rs, dir, table) = load_table(args)?;
    let classes = conjugacy_classes(&table, &rs)?;
    let reports = class_reports(&rs, &table, &classes)?;
    let partition = order_partition(&table)?;

    let text = render_class_report(rs.label(), table.total(), &table, &reports);
    let path = dir.join(format!("{}_classes.txt", rs.label()));
    fs::write(&path, &text).map_err(|e| Error::io(&path, e))?;

    let mut bad = Vec::new();
    if is_builtin_d4(&rs) {
        bad.extend(d4_class_mismatches(&reports));
        bad.extend(d4_partition_mismatch(&partition));
    }

    if args.output.json {
        let v = json!({
            "root_system": rs.label(),
            "total": table.total(),
            "order_partition": partition,
            "classes": reports,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?).map_err(io_err)?;
    } else {
        writeln!(
            out,
            "{}: {} conjugacy classes of {} elements",
            rs.label(),
            reports.len(),
            table.total()
        )
        .map_err(io_err)?;
        for r in &reports {
            let mut line = format!(
                "class {:>3}: size {:>6}, order {:>3}, rep {} (level {}, n={})",
                r.index, r.size, r.order, r.representative, r.level, r.ordinal
            );
            if let Some(t) = &r.cycle_type {
                let _ = write!(line, ", cycle type {t}");
            }
            if let Some(l) = &r.label {
                let _ = write!(line, ", {l}");
            }
            writeln!(out, "{line}").map_err(io_err)?;
        }
        writeln!(out, "order partition: {partition}").map_err(io_err)?;
        writeln!(out, "report written to {}", path.display()).map_err(io_err)?;
    }
    Ok(if bad.is_empty() {
        Outcome::Ok
    } else {
        Outcome::Mismatch(bad)
    })
}

fn cmd_orders(args: &ClassArgs, out: &mut dyn Write) -> Result<Outcome> {
    let (rs, _, table) = load_table(args)?;
    let partition = order_partition(&table)?;
    if args.output.json {
        let v = json!({ "root_system": rs.label(), "order_partition": partition });
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?).map_err(io_err)?;
    } else {
        writeln!(out, "{}: {partition}", rs.label()).map_err(io_err)?;
    }
    let bad: Vec<String> = if is_builtin_d4(&rs) {
        d4_partition_mismatch(&partition).into_iter().collect()
    } else {
        Vec::new()
    };
    Ok(if bad.is_empty() {
        Outcome::Ok
    } else {
        Outcome::Mismatch(bad)
    })
}

#[derive(Serialize)]
struct BenchRecord {
    root_system: String,
    total: u64,
    levels: usize,
    elapsed_ms: f64,
    elements_per_sec: f64,
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<Outcome> {
    let mut records = Vec::new();
    for name in &args.root_systems {
        let rs: RootSystemData = name.parse()?;
        let start = Weight::ones(rs.rank());
        let t0 = Instant::now();
        let run = enumerate(&rs, &start, EnumerateOptions::default(), |_, _| Ok(()))?;
        let secs = t0.elapsed().as_secs_f64();
        records.push(BenchRecord {
            root_system: rs.label().to_string(),
            total: run.total,
            levels: run.level_sizes.len(),
            elapsed_ms: secs * 1e3,
            elements_per_sec: if secs > 0.0 {
                run.total as f64 / secs
            } else {
                0.0
            },
        });
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&records)?).map_err(io_err)?;
    Ok(Outcome::Ok)
}
