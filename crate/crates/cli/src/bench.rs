use std::collections::BTreeSet;

use chroma_core::constructions::{build_hrtm, lower_bound_instance, star_instance, HrtmSpec};
use chroma_core::rational::int;
use chroma_core::{
    evaluate_bounds, exact_transversal, random_coloured_graph, tree_cover_number, DeltaValue, Error,
    IntraColourRule, Outcome,
};
use serde::Serialize;

use crate::args::{BenchArgs, Family, Format};
use crate::io;
use crate::{CliError, EXIT_UNKNOWN, EXIT_USAGE, EXIT_VERIFIED, EXIT_VIOLATION};

const HEADER: &str = "family,r,t,m,delta,n,vertices,value,expected,status,check,tc_lower,tc_upper,note";

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub family: Family,
    pub r: usize,
    pub t: Option<usize>,
    pub m: Option<usize>,
    pub delta: Option<String>,
    pub n: Option<usize>,
    pub vertices: Option<usize>,
    /// `tc` for graph families, `τ` for `H_{r,t,m}`.
    pub value: Option<usize>,
    pub expected: Option<usize>,
    pub status: &'static str,
    pub check: &'static str,
    pub tc_lower: Option<f64>,
    pub tc_upper: Option<f64>,
    pub note: Option<String>,
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Star => "star",
        Family::Hrtm => "hrtm",
        Family::LowerBound => "lower-bound",
        Family::Random => "random",
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn key(family: Family, r: usize, t: Option<usize>, m: Option<usize>, delta: &Option<String>, n: Option<usize>) -> String {
    format!("{},{r},{},{},{},{}", family_name(family), opt(&t), opt(&m), opt(delta), opt(&n))
}

impl Row {
    fn key(&self) -> String {
        key(self.family, self.r, self.t, self.m, &self.delta, self.n)
    }

    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}\n",
            self.key(),
            opt(&self.vertices),
            opt(&self.value),
            opt(&self.expected),
            self.status,
            self.check,
            opt(&self.tc_lower),
            opt(&self.tc_upper),
            self.note.as_deref().unwrap_or("").replace(',', ";"),
        )
    }
}

struct Cell {
    r: usize,
    delta: Option<String>,
    size: usize,
    index: u64,
}

fn cells(a: &BenchArgs) -> Vec<Cell> {
    let deltas: Vec<Option<String>> =
        if a.delta.is_empty() { vec![None] } else { a.delta.iter().cloned().map(Some).collect() };
    let sizes = if a.family == Family::Hrtm { &a.m } else { &a.n };
    let mut out = Vec::new();
    for &r in &a.r {
        for d in &deltas {
            for &size in sizes {
                let index = out.len() as u64;
                out.push(Cell { r, delta: d.clone(), size, index });
            }
        }
    }
    out
}

fn tc_bounds(r: usize, delta: Option<&DeltaValue>) -> (Option<f64>, Option<f64>) {
    match delta.map(|d| evaluate_bounds(r, d, &int(1), &int(1))) {
        Some(Ok(rep)) => (rep.tc_lower.value(), rep.tc_upper.value()),
        _ => (None, None),
    }
}

fn cell_key(a: &BenchArgs, cell: &Cell) -> String {
    let hrtm = a.family == Family::Hrtm;
    key(a.family, cell.r, hrtm.then_some(a.t), hrtm.then_some(cell.size), &cell.delta, (!hrtm).then_some(cell.size))
}

fn run_cell(a: &BenchArgs, cell: &Cell) -> Row {
    let hrtm = a.family == Family::Hrtm;
    let mut row = Row {
        family: a.family,
        r: cell.r,
        t: hrtm.then_some(a.t),
        m: hrtm.then_some(cell.size),
        delta: cell.delta.clone(),
        n: (!hrtm).then_some(cell.size),
        vertices: None,
        value: None,
        expected: None,
        status: "error",
        check: "n/a",
        tc_lower: None,
        tc_upper: None,
        note: None,
    };
    let budget = io::budget(&a.budget);
    let result = (|| -> Result<(usize, Option<usize>, Outcome<usize>), Error> {
        let delta = cell.delta.as_deref().map(DeltaValue::parse).transpose()?;
        (row.tc_lower, row.tc_upper) = tc_bounds(cell.r, delta.as_ref());
        match a.family {
            Family::Star => {
                let g = star_instance(cell.r, cell.size, IntraColourRule::Fixed(1))?;
                Ok((g.n(), Some(cell.r), tree_cover_number(&g, &budget)))
            }
            Family::Hrtm => {
                let spec = HrtmSpec::new(cell.r, a.t, cell.size)?;
                let h = build_hrtm(&spec)?;
                Ok((h.vertex_count(), Some(spec.transversal_number()), exact_transversal(&h, &budget).map(|t| t.size())))
            }
            Family::LowerBound => {
                let delta = delta.ok_or_else(|| Error::Input("the lower-bound family needs --delta".into()))?;
                let inst = lower_bound_instance(cell.r, &delta, cell.size, None, IntraColourRule::Fixed(1))?;
                Ok((inst.graph.n(), Some(inst.expected_tc), tree_cover_number(&inst.graph, &budget)))
            }
            Family::Random => {
                let seed = a.seed.wrapping_add(cell.index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
                let g = random_coloured_graph(cell.size, cell.r, a.p, seed);
                Ok((g.n(), None, tree_cover_number(&g, &budget)))
            }
        }
    })();
    match result {
        Err(e) => row.note = Some(e.to_string()),
        Ok((vertices, expected, outcome)) => {
            row.vertices = Some(vertices);
            row.expected = expected;
            match outcome {
                Outcome::Solved(v) => {
                    row.status = "solved";
                    row.value = Some(v);
                    row.check = match expected {
                        Some(e) if e == v => "pass",
                        Some(_) => "fail",
                        None => "n/a",
                    };
                }
                Outcome::Unknown { nodes } => {
                    row.status = "unknown";
                    row.check = "unknown";
                    row.note = Some(format!("budget exhausted after {nodes} nodes"));
                }
            }
        }
    }
    row
}

fn exit_code(rows: &[Row]) -> u8 {
    if rows.iter().any(|r| r.status == "error") {
        EXIT_USAGE
    } else if rows.iter().any(|r| r.check == "fail") {
        EXIT_VIOLATION
    } else if rows.iter().any(|r| r.status == "unknown") {
        EXIT_UNKNOWN
    } else {
        EXIT_VERIFIED
    }
}

/// Existing cell keys of a CSV table, or `None` when the file is absent.
fn existing_keys(path: &std::path::Path) -> Result<Option<BTreeSet<String>>, CliError> {
    if !path.exists() {
        return Ok(None);
    }
    let text = io::read_text(path)?;
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(CliError::usage(format!("{}: not a bench table", path.display())));
    }
    Ok(Some(lines.map(|l| l.splitn(7, ',').take(6).collect::<Vec<_>>().join(",")).collect()))
}

pub fn bench(a: BenchArgs) -> Result<u8, CliError> {
    let grid = cells(&a);
    match a.format {
        Format::Json => {
            if a.resume {
                return Err(CliError::usage("--resume works with CSV tables only"));
            }
            let rows: Vec<Row> = grid.iter().map(|c| run_cell(&a, c)).collect();
            let table = serde_json::json!({"config": &a, "rows": &rows});
            io::emit(a.output.as_deref(), &io::pretty(&table))?;
            Ok(exit_code(&rows))
        }
        Format::Csv => {
            let known = match (&a.output, a.resume) {
                (Some(path), true) => existing_keys(path)?,
                (None, true) => return Err(CliError::usage("--resume needs --output")),
                _ => None,
            };
            let mut rows = Vec::new();
            let mut text = String::new();
            for cell in &grid {
                if known.as_ref().is_some_and(|k| k.contains(&cell_key(&a, cell))) {
                    continue;
                }
                let row = run_cell(&a, cell);
                text.push_str(&row.csv());
                rows.push(row);
            }
            match known {
                Some(_) => io::append(a.output.as_deref().expect("checked"), &text)?,
                None => io::emit(a.output.as_deref(), &format!("{HEADER}\n{text}"))?,
            }
            Ok(exit_code(&rows))
        }
    }
}
