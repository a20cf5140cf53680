//! Input file parsers.

use std::path::Path;

use matroid_shift::intersection::BipartiteGraph;
use matroid_shift::{Matrix01, MatroidDesc, ProfitMatrix};
use serde::{Deserialize, Serialize};

use crate::fail::{CliError, EXIT_PARSE};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, what: &str) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: invalid {what}: {e}", path.display())))
}

/// A graph in the `p <vertices> <edges>` / `e u v` format, 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn parse_graph(text: &str) -> Result<Graph, String> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || format!("line {}: cannot parse {line:?}", no + 1);
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        match fields.as_slice() {
            [] => continue,
            ["c", ..] => continue,
            ["p", v, e] if header.is_none() => header = Some((num(v)?, num(e)?)),
            ["e", u, v] => {
                let (vertices, _) = header.ok_or_else(|| format!("line {}: edge before the p line", no + 1))?;
                let (u, v) = (num(u)?, num(v)?);
                if u == 0 || v == 0 || u > vertices || v > vertices {
                    return Err(format!("line {}: vertex out of range 1..={vertices}", no + 1));
                }
                edges.push((u - 1, v - 1));
            }
            _ => return Err(bad()),
        }
    }
    let (vertices, count) = header.ok_or("missing p line")?;
    if edges.len() != count {
        return Err(format!("p line declares {count} edges, found {}", edges.len()));
    }
    Ok(Graph { vertices, edges })
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read(path)?).map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

pub fn read_matroid(path: &Path) -> Result<MatroidDesc, CliError> {
    parse_json(path, "matroid description")
}

pub fn read_bipartite(path: &Path) -> Result<BipartiteGraph, CliError> {
    parse_json(path, "bipartite graph")
}

/// `{"d": .., "n": .., "rows": [[..]; d]}`, used for profits and 0/1 matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub d: usize,
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

impl MatrixFile {
    fn check(&self, path: &Path) -> Result<(), CliError> {
        let dims_ok = self.rows.len() == self.d && self.rows.iter().all(|r| r.len() == self.n);
        if dims_ok {
            Ok(())
        } else {
            Err(CliError::new(
                EXIT_PARSE,
                format!("{}: rows do not form a {}x{} matrix", path.display(), self.d, self.n),
            ))
        }
    }
}

pub fn read_profits(path: &Path, d: usize, n: usize) -> Result<(MatrixFile, ProfitMatrix), CliError> {
    let file: MatrixFile = parse_json(path, "profits")?;
    file.check(path)?;
    expect_dims(path, &file, d, n)?;
    let c = ProfitMatrix::from_rows(&file.rows)?;
    Ok((file, c))
}

pub fn read_matrix01(path: &Path, d: usize, n: usize) -> Result<(MatrixFile, Matrix01), CliError> {
    let file: MatrixFile = parse_json(path, "matrix")?;
    file.check(path)?;
    expect_dims(path, &file, d, n)?;
    let x = Matrix01::from_int_rows(&file.rows)?;
    Ok((file, x))
}

fn expect_dims(path: &Path, file: &MatrixFile, d: usize, n: usize) -> Result<(), CliError> {
    if file.d != d || file.n != n {
        return Err(CliError::new(
            EXIT_PARSE,
            format!("{}: expected a {d}x{n} matrix, got {}x{}", path.display(), file.d, file.n),
        ));
    }
    Ok(())
}
