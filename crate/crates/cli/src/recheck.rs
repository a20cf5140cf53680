//! Self-test of an emitted report: re-parse it, rebuild the solution,
//! re-validate it, and compare it against 1000 seeded members of the
//! shuffle set.

use matroid_shift::intersection::BipartiteGraph;
use matroid_shift::matroid::full_rank;
use matroid_shift::{
    equivalent, is_independent, lex_less, vulnerability_vector, IndependenceOracle, Matrix01, MatroidDesc,
    ProfitMatrix, Subset01,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{matrix_of, RunReport};

pub const SAMPLES: usize = 1000;

/// What a command solved, kept for the self-test.
pub enum Problem {
    Lexmin { m: MatroidDesc },
    Shifted { m: MatroidDesc, c: ProfitMatrix, bases: bool },
    Intersect { m1: MatroidDesc, m2: MatroidDesc, c: ProfitMatrix, graph: Option<BipartiteGraph> },
    Fiber { m: MatroidDesc, x: Matrix01 },
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn in_all(oracles: &[&MatroidDesc], s: &[bool]) -> bool {
    oracles.iter().all(|m| m.independent(s))
}

/// A random common independent set, grown along a random order.
fn random_common(rng: &mut ChaCha8Rng, oracles: &[&MatroidDesc], d: usize, basis: bool) -> Subset01 {
    let mut order: Vec<usize> = (0..d).collect();
    order.shuffle(rng);
    let stop = if basis { d } else { rng.gen_range(0..=d) };
    let mut set = vec![false; d];
    let mut size = 0;
    for e in order {
        if size == stop {
            break;
        }
        set[e] = true;
        if in_all(oracles, &set) {
            size += 1;
        } else {
            set[e] = false;
        }
    }
    Subset01::from_bits(set)
}

/// A random member of the shuffle set: a random product, rows permuted.
fn random_shuffled(rng: &mut ChaCha8Rng, oracles: &[&MatroidDesc], d: usize, n: usize, basis: bool) -> Matrix01 {
    let cols: Vec<Subset01> = (0..n).map(|_| random_common(rng, oracles, d, basis)).collect();
    let y = Matrix01::from_columns(d, &cols).unwrap();
    let mut z = Matrix01::zeros(d, n);
    for i in 0..d {
        let mut row = y.row(i).to_vec();
        row.shuffle(rng);
        for (j, b) in row.into_iter().enumerate() {
            z.set(i, j, b);
        }
    }
    z
}

fn columns_valid(oracles: &[&MatroidDesc], y: &Matrix01, bases: bool) -> Result<(), String> {
    for (j, col) in y.columns().iter().enumerate() {
        for m in oracles {
            check(is_independent(*m, col).unwrap_or(false), || format!("column {} is not independent", j + 1))?;
            check(!bases || col.len() == full_rank(*m), || format!("column {} is not a basis", j + 1))?;
        }
    }
    Ok(())
}

pub fn recheck(emitted: &str, problem: &Problem, seed: u64) -> Result<(), String> {
    let report: RunReport = serde_json::from_str(emitted).map_err(|e| format!("report does not re-parse: {e}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (d, n) = (report.d, report.n);
    let y = match &report.columns {
        Some(cols) => {
            check(cols.len() == n, || format!("{} columns for n = {n}", cols.len()))?;
            Some(matrix_of(d, cols)?)
        }
        None => None,
    };
    let need_y = || y.clone().ok_or_else(|| "report has no solution columns".to_string());
    match problem {
        Problem::Lexmin { m } => {
            let y = need_y()?;
            columns_valid(&[m], &y, true)?;
            let vuln = vulnerability_vector(&y);
            check(report.vulnerability.as_deref() == Some(vuln.values()), || "vulnerability vector differs".into())?;
            for _ in 0..SAMPLES {
                let z = random_shuffled(&mut rng, &[m], d, n, true);
                let zv = vulnerability_vector(&z.shift());
                check(!lex_less(&zv, &vuln).unwrap(), || format!("sampled {:?} beats {:?}", zv.values(), vuln.values()))?;
            }
        }
        Problem::Shifted { m, c, bases } => {
            let y = need_y()?;
            columns_valid(&[m], &y, *bases)?;
            let value = c.shifted_value(&y);
            check(report.value == Some(value), || format!("value recomputes to {value}"))?;
            sandwich(&mut rng, &[m], c, value, *bases)?;
        }
        Problem::Intersect { m1, m2, c, graph } => {
            let value = report.value.ok_or("report has no value")?;
            if let Some(g) = graph {
                let y = need_y()?;
                check(y.columns().iter().all(|col| g.is_matching(col)), || "a column is not a matching".into())?;
                check(c.shifted_value(&y) == value, || "value recomputation differs".into())?;
            }
            sandwich(&mut rng, &[m1, m2], c, value, false)?;
        }
        Problem::Fiber { m, x } => {
            let y = need_y()?;
            columns_valid(&[m], &y, false)?;
            check(equivalent(&y, x).unwrap_or(false), || "y is not equivalent to x".into())?;
            let sums = report.row_sums.as_ref().ok_or("report has no row sums")?;
            check(sums.x == x.row_sums() && sums.y == y.row_sums(), || "row sums differ".into())?;
        }
    }
    Ok(())
}

/// `c̄·z ≤ c̄·z̄ ≤ value` for sampled members `z` of the shuffle set.
fn sandwich(
    rng: &mut ChaCha8Rng,
    oracles: &[&MatroidDesc],
    c: &ProfitMatrix,
    value: i64,
    bases: bool,
) -> Result<(), String> {
    let cbar = c.shift();
    for _ in 0..SAMPLES {
        let z = random_shuffled(rng, oracles, c.d(), c.n(), bases);
        let (low, mid) = (cbar.dot(&z), c.shifted_value(&z));
        check(low <= mid && mid <= value, || format!("sample breaks {low} <= {mid} <= {value}"))?;
    }
    Ok(())
}
