use std::path::{Path, PathBuf};
use std::time::Instant;

use matroid_shift::brute::{
    brute_lexmin, brute_shifted, enumerate_common_members, enumerate_members, BruteLimits,
};
use matroid_shift::intersection::{shifted_value_intersection, solve_shifted_bipartite_matching, IntersectionInstance};
use matroid_shift::matroid::full_rank;
use matroid_shift::shifted::{solve_fiber, solve_lexmin, solve_shifted};
use matroid_shift::{Error, MatroidDesc};
use serde_json::json;

use crate::fail::{CliError, EXIT_DISCONNECTED, EXIT_PARSE};
use crate::input::{read_bipartite, read_graph, read_matrix01, read_matroid, read_profits};
use crate::recheck::Problem;
use crate::report::{columns_of, digest, RowSums, RunReport, Verification, SCHEMA};

pub struct Outcome {
    pub report: RunReport,
    pub problem: Problem,
}

/// Runs a brute-force check; a tripped size guard means "skipped".
fn verify<T: PartialEq + std::fmt::Debug>(
    brute: impl FnOnce() -> Result<T, Error>,
    got: &T,
) -> Result<Verification, CliError> {
    match brute() {
        Ok(want) if &want == got => Ok(Verification::Ok),
        Ok(want) => {
            eprintln!("verification mismatch: solver {got:?}, brute force {want:?}");
            Ok(Verification::Mismatch)
        }
        Err(Error::GuardExceeded { what, size, cap }) => {
            eprintln!("verification skipped: {what} = {size} exceeds {cap}");
            Ok(Verification::Skipped)
        }
        Err(e) => Err(e.into()),
    }
}

fn check_n(n: usize) -> Result<(), CliError> {
    if n == 0 {
        Err(CliError::new(EXIT_PARSE, "--n must be at least 1"))
    } else {
        Ok(())
    }
}

fn report(command: &str, canonical: serde_json::Value, d: usize, n: usize, start: Instant) -> RunReport {
    RunReport {
        schema: SCHEMA,
        command: command.into(),
        input_digest: digest(&canonical),
        d,
        n,
        columns: None,
        value: None,
        vulnerability: None,
        row_sums: None,
        verification: Verification::Skipped,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

pub fn lexmin_trees(graph_file: &Path, n: usize, do_verify: bool) -> Result<Outcome, CliError> {
    let start = Instant::now();
    check_n(n)?;
    let g = read_graph(graph_file)?;
    let m = MatroidDesc::graphic(g.vertices, g.edges.clone())?;
    if full_rank(&m) + 1 != g.vertices {
        return Err(CliError::new(EXIT_DISCONNECTED, "graph not connected"));
    }
    let sol = solve_lexmin(&m, n)?;
    let verification = if do_verify {
        let lim = BruteLimits::from_env();
        verify(|| Ok(brute_lexmin(&enumerate_members(&m, true, &lim)?, n, &lim)?.0), sol.vuln())?
    } else {
        Verification::Skipped
    };
    let canonical = json!({"command": "lexmin-trees", "n": n, "matroid": &m});
    let mut r = report("lexmin-trees", canonical, m.ground_size(), n, start);
    r.columns = Some(columns_of(sol.y()));
    r.vulnerability = Some(sol.vuln().values().to_vec());
    r.verification = verification;
    r.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome { report: r, problem: Problem::Lexmin { m } })
}

pub fn shifted(matroid_file: &Path, profits_file: &Path, n: usize, bases: bool, do_verify: bool) -> Result<Outcome, CliError> {
    let start = Instant::now();
    check_n(n)?;
    let m = read_matroid(matroid_file)?;
    let (raw, c) = read_profits(profits_file, m.ground_size(), n)?;
    let sol = solve_shifted(&m, n, &c, bases)?;
    let verification = if do_verify {
        let lim = BruteLimits::from_env();
        verify(|| Ok(brute_shifted(&enumerate_members(&m, bases, &lim)?, n, &c, &lim)?.0), &sol.value())?
    } else {
        Verification::Skipped
    };
    let canonical = json!({"command": "shifted", "n": n, "bases": bases, "matroid": &m, "profits": &raw});
    let mut r = report("shifted", canonical, m.ground_size(), n, start);
    r.columns = Some(columns_of(sol.y()));
    r.value = Some(sol.value());
    r.verification = verification;
    r.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome { report: r, problem: Problem::Shifted { m, c, bases } })
}

pub fn intersect_value(
    files: &[PathBuf],
    bipartite: Option<&Path>,
    n: usize,
    do_verify: bool,
) -> Result<Outcome, CliError> {
    let start = Instant::now();
    check_n(n)?;
    let (m1, m2, graph, profits_file) = match (bipartite, files) {
        (Some(gf), [p]) => {
            let g = read_bipartite(gf)?;
            let (m1, m2) = g.matching_matroids()?;
            (m1, m2, Some(g), p)
        }
        (None, [a, b, p]) => (read_matroid(a)?, read_matroid(b)?, None, p),
        (Some(_), _) => return Err(CliError::new(EXIT_PARSE, "with --bipartite, pass only the profits file")),
        (None, _) => return Err(CliError::new(EXIT_PARSE, "expected M1 M2 PROFITS files")),
    };
    if m1.ground_size() != m2.ground_size() {
        return Err(CliError::new(
            EXIT_PARSE,
            format!("matroids have ground sets of size {} and {}", m1.ground_size(), m2.ground_size()),
        ));
    }
    let d = m1.ground_size();
    let (raw, c) = read_profits(profits_file, d, n)?;
    let mut columns = None;
    let value = match &graph {
        Some(g) => {
            let sol = solve_shifted_bipartite_matching(g, n, &c)?;
            columns = Some(columns_of(sol.y()));
            sol.value()
        }
        None => shifted_value_intersection(&IntersectionInstance::new(m1.clone(), m2.clone(), n, c.clone())?)?,
    };
    let verification = if do_verify {
        let lim = BruteLimits::from_env();
        verify(|| Ok(brute_shifted(&enumerate_common_members(&m1, &m2, false, &lim)?, n, &c, &lim)?.0), &value)?
    } else {
        Verification::Skipped
    };
    let canonical = match &graph {
        Some(g) => json!({"command": "intersect-value", "n": n, "bipartite": g, "profits": &raw}),
        None => json!({"command": "intersect-value", "n": n, "m1": &m1, "m2": &m2, "profits": &raw}),
    };
    let mut r = report("intersect-value", canonical, d, n, start);
    r.columns = columns;
    r.value = Some(value);
    r.verification = verification;
    r.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome { report: r, problem: Problem::Intersect { m1, m2, c, graph } })
}

pub fn fiber(matroid_file: &Path, matrix_file: &Path, n: usize) -> Result<Outcome, CliError> {
    let start = Instant::now();
    check_n(n)?;
    let m = read_matroid(matroid_file)?;
    let (raw, x) = read_matrix01(matrix_file, m.ground_size(), n)?;
    let y = solve_fiber(&m, n, &x)?;
    let sums = RowSums { x: x.row_sums(), y: y.row_sums() };
    eprintln!("row sums x: {:?}", sums.x);
    eprintln!("row sums y: {:?}", sums.y);
    let canonical = json!({"command": "fiber", "n": n, "matroid": &m, "matrix": &raw});
    let mut r = report("fiber", canonical, m.ground_size(), n, start);
    r.columns = Some(columns_of(&y));
    r.row_sums = Some(sums);
    Ok(Outcome { report: r, problem: Problem::Fiber { m, x } })
}
