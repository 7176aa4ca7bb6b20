//! Report envelope, per-command result records, and their renderings.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::cli::Format;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: &str, witness: Option<String>) -> Self {
        Check { name: name.to_string(), pass: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report<T> {
    pub command: String,
    pub system: String,
    pub q: Vec<u64>,
    pub result: T,
    pub checks: Vec<Check>,
}

impl<T> Report<T> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Key/value summary lines plus one table, shared by the table and CSV renderings.
pub trait Tabular {
    fn summary(&self) -> Vec<(String, String)>;
    fn header(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoResult {
    pub name: String,
    pub kind: String,
    pub generators: Vec<String>,
    /// `0` stands for an infinite entry.
    pub coxeter_matrix: Vec<Vec<u32>>,
    pub cartan: Vec<Vec<i64>>,
    pub null_vector: Option<Vec<i64>>,
    pub special_vertices: Vec<String>,
    pub gem_type: Option<String>,
    pub gem_size: Option<u64>,
    pub coxeter_number: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRow {
    pub root: Vec<i64>,
    pub wall_type: String,
    pub height: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsResult {
    pub scope: String,
    pub count: usize,
    pub roots: Vec<RootRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullResult {
    pub mode: String,
    pub points: Vec<String>,
    pub size: usize,
    pub chambers: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorResult {
    pub gem: String,
    pub apex: String,
    pub walls: Vec<Vec<i64>>,
    pub radius: usize,
    pub size: usize,
    pub chambers: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TidyResult {
    pub element: String,
    pub chamber: String,
    pub translation: bool,
    pub indices: Vec<String>,
    pub geometric: Vec<bool>,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatRootRow {
    pub gamma: Vec<i64>,
    pub pushed: Vec<i64>,
    pub m: i64,
    pub scale_base: String,
    pub values: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatRootsResult {
    pub gem: String,
    pub chamber: String,
    /// Lattice basis translations as reduced words.
    pub lattice_basis: Vec<String>,
    pub roots: Vec<FlatRootRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRow {
    pub gamma: Vec<i64>,
    pub scale_base: String,
    pub exponent: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaleResult {
    pub element: String,
    pub lattice: Vec<i64>,
    pub chamber: String,
    pub scale: String,
    pub factors: Vec<FactorRow>,
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn vec_str(v: &[i64]) -> String {
    format!("({})", join(v, ","))
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), ToString::to_string)
}

impl Tabular for InfoResult {
    fn summary(&self) -> Vec<(String, String)> {
        vec![
            ("name".into(), self.name.clone()),
            ("kind".into(), self.kind.clone()),
            ("generators".into(), self.generators.join(" ")),
            ("null vector".into(), self.null_vector.as_deref().map_or("-".into(), vec_str)),
            ("special vertices".into(), self.special_vertices.join(" ")),
            ("gem type".into(), opt(&self.gem_type)),
            ("gem size".into(), opt(&self.gem_size)),
            ("coxeter number".into(), opt(&self.coxeter_number)),
        ]
    }

    fn header(&self) -> Vec<&'static str> {
        vec!["generator", "coxeter row", "cartan row"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let m = |x: &u32| if *x == 0 { "inf".to_string() } else { x.to_string() };
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                vec![g.clone(), self.coxeter_matrix[i].iter().map(m).collect::<Vec<_>>().join(" "), join(&self.cartan[i], " ")]
            })
            .collect()
    }
}

impl Tabular for RootsResult {
    fn summary(&self) -> Vec<(String, String)> {
        vec![("scope".into(), self.scope.clone()), ("count".into(), self.count.to_string())]
    }

    fn header(&self) -> Vec<&'static str> {
        vec!["root", "wall type", "height"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.roots.iter().map(|r| vec![vec_str(&r.root), r.wall_type.clone(), r.height.to_string()]).collect()
    }
}

impl Tabular for HullResult {
    fn summary(&self) -> Vec<(String, String)> {
        vec![
            ("mode".into(), self.mode.clone()),
            ("points".into(), self.points.join("; ")),
            ("size".into(), self.size.to_string()),
        ]
    }

    fn header(&self) -> Vec<&'static str> {
        vec!["chamber"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.chambers.iter().map(|c| vec![c.clone()]).collect()
    }
}

impl Tabular for SectorResult {
    fn summary(&self) -> Vec<(String, String)> {
        vec![
            ("gem".into(), self.gem.clone()),
            ("apex".into(), self.apex.clone()),
            ("walls".into(), self.walls.iter().map(|w| vec_str(w)).collect::<Vec<_>>().join(" ")),
            ("radius".into(), self.radius.to_string()),
            ("size".into(), self.size.to_string()),
        ]
    }

    fn header(&self) -> Vec<&'static str> {
        vec!["chamber"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.chambers.iter().map(|c| vec![c.clone()]).collect()
    }
}

impl Tabular for TidyResult {
    fn summary(&self) -> Vec<(String, String)> {
        vec![
            ("element".into(), self.element.clone()),
            ("chamber".into(), self.chamber.clone()),
            ("translation".into(), self.translation.to_string()),
            ("verdict".into(), self.verdict.clone()),
        ]
    }

    fn header(&self) -> Vec<&'static str> {
        vec!["n", "index", "equals index(1)^n"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.indices
            .iter()
            .zip(&self.geometric)
            .enumerate()
            .map(|(i, (x, g))| vec![(i + 1).to_string(), x.clone(), g.to_string()])
            .collect()
    }
}

impl Tabular for FlatRootsResult {
    fn summary(&self) -> Vec<(String, String)> {
        vec![
            ("gem".into(), self.gem.clone()),
            ("chamber".into(), self.chamber.clone()),
            ("lattice basis".into(), self.lattice_basis.join("; ")),
            ("roots".into(), self.roots.len().to_string()),
        ]
    }

    fn header(&self) -> Vec<&'static str> {
        vec!["root", "pushed root", "m", "scale base", "values"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.roots
            .iter()
            .map(|r| vec![vec_str(&r.gamma), vec_str(&r.pushed), r.m.to_string(), r.scale_base.clone(), vec_str(&r.values)])
            .collect()
    }
}

impl Tabular for ScaleResult {
    fn summary(&self) -> Vec<(String, String)> {
        vec![
            ("element".into(), self.element.clone()),
            ("lattice".into(), vec_str(&self.lattice)),
            ("chamber".into(), self.chamber.clone()),
            ("scale".into(), self.scale.clone()),
        ]
    }

    fn header(&self) -> Vec<&'static str> {
        vec!["root pair", "scale base", "exponent"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.factors
            .iter()
            .map(|f| vec![format!("±{}", vec_str(&f.gamma)), f.scale_base.clone(), f.exponent.to_string()])
            .collect()
    }
}

pub fn render<T: Serialize + Tabular>(report: &Report<T>, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(report.result.header())?;
            for row in report.result.rows() {
                w.write_record(row)?;
            }
            w.flush()
        }
        Format::Table => {
            writeln!(out, "command: {}", report.command)?;
            writeln!(out, "system: {}", report.system)?;
            writeln!(out, "q: {}", join(&report.q, ","))?;
            for (k, v) in report.result.summary() {
                writeln!(out, "{k}: {v}")?;
            }
            let header = report.result.header();
            let rows = report.result.rows();
            if !rows.is_empty() {
                writeln!(out)?;
                write_table(out, &header, &rows)?;
            }
            if !report.checks.is_empty() {
                writeln!(out)?;
            }
            for c in &report.checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                match &c.witness {
                    Some(w) => writeln!(out, "check {}: {status} ({w})", c.name)?,
                    None => writeln!(out, "check {}: {status}", c.name)?,
                }
            }
            Ok(())
        }
    }
}

fn write_table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    writeln!(out, "{}", rule.join("  "))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}
