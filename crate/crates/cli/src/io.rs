use std::fs::{File, OpenOptions};
use std::io::{Read, Write};
use std::path::Path;
use std::time::Duration;

use chroma_core::{Budget, ColouredGraph, MultiHypergraph, Vertex};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::args::BudgetArgs;
use crate::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::usage(format!("stdin: {e}")))?;
    } else {
        File::open(path)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

pub fn read_graph(path: &Path) -> Result<ColouredGraph, CliError> {
    ColouredGraph::from_json_str(&read_text(path)?).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn read_hypergraph(path: &Path) -> Result<MultiHypergraph, CliError> {
    MultiHypergraph::from_json_str(&read_text(path)?).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::usage(format!("{}: json error at line {} column {}: {e}", path.display(), e.line(), e.column()))
    })
}

/// Hex SHA-256 of `bytes`.
pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes to a new file (refusing to overwrite) or to stdout.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::usage(format!("stdout: {e}")))
        }
        Some(p) => {
            let mut f = OpenOptions::new()
                .write(true)
                .create_new(true)
                .open(p)
                .map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?;
            f.write_all(text.as_bytes()).map_err(|e| CliError::usage(format!("{}: {e}", p.display())))
        }
    }
}

/// Appends to an existing file.
pub fn append(path: &Path, text: &str) -> Result<(), CliError> {
    let mut f = OpenOptions::new()
        .append(true)
        .open(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    f.write_all(text.as_bytes()).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}

pub fn budget(args: &BudgetArgs) -> Budget {
    let b = Budget::nodes(args.nodes);
    match args.budget_ms {
        Some(ms) => b.with_time_limit(Duration::from_millis(ms)),
        None => b,
    }
}

/// Parses `0..10`, `3`, `0,2,5..8` into a sorted vertex list.
pub fn vertex_list(text: &str) -> Result<Vec<Vertex>, CliError> {
    let mut out = Vec::new();
    for piece in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || CliError::usage(format!("bad vertex list entry {piece:?}"));
        if let Some((lo, hi)) = piece.split_once("..") {
            let lo: Vertex = lo.trim().parse().map_err(|_| bad())?;
            let hi: Vertex = hi.trim().parse().map_err(|_| bad())?;
            out.extend(lo..hi);
        } else {
            out.push(piece.parse().map_err(|_| bad())?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
