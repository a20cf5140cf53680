//! Solvers for the shifted problem `max{c̄x̄ : x ∈ Sⁿ}` and the lexicographic
//! vulnerability problem over a matroid `S`.
//!
//! Both go through the shuffle matroid `[Sⁿ]`: a greedy pass over `[Sⁿ]`
//! solves the shuffling problem `max{c̄x : x ∈ [Sⁿ]}`, and the decomposition the
//! union oracle already maintains turns the optimum `x` into `y ∈ Sⁿ` with
//! `y ∼ x` (the fiber problem). Since `c̄` has nonincreasing rows,
//! `c̄ȳ = c̄x̄ ≥ c̄x ≥ c̄z̄` for every feasible `z`.

use crate::constructions::{shuffle_partition, Decomposition, LiftOracle, MatroidPartition};
use crate::error::{check_dim, Error, Result};
use crate::matrix::{equivalent, vulnerability_vector, IntMatrix, Matrix01, ProfitMatrix, VulnVector};
use crate::matroid::{greedy_in_order, greedy_order, Augmenter, IndependenceOracle, Weights};

/// `y ∈ Sⁿ` together with its shifted objective and vulnerability vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedSolution {
    y: Matrix01,
    value: i64,
    vuln: VulnVector,
}

impl ShiftedSolution {
    /// Computes `c̄ȳ` and the vulnerability vector from `y` alone.
    pub fn evaluate(y: Matrix01, c: &ProfitMatrix) -> Self {
        let value = c.shifted_value(&y);
        let vuln = vulnerability_vector(&y);
        Self { y, value, vuln }
    }

    pub fn y(&self) -> &Matrix01 {
        &self.y
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn vuln(&self) -> &VulnVector {
        &self.vuln
    }

    pub fn into_matrix(self) -> Matrix01 {
        self.y
    }
}

/// `n` bases with a lexicographically minimal vulnerability vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexminSolution {
    y: Matrix01,
    vuln: VulnVector,
}

impl LexminSolution {
    pub fn y(&self) -> &Matrix01 {
        &self.y
    }

    pub fn vuln(&self) -> &VulnVector {
        &self.vuln
    }
}

pub fn shift(x: &Matrix01) -> Matrix01 {
    x.shift()
}

fn check_profits<O: IndependenceOracle + ?Sized>(s: &O, n: usize, c: &ProfitMatrix) -> Result<()> {
    check_dim("profit rows", s.ground_size(), c.d())?;
    check_dim("profit columns", n, c.n())
}

fn flat_weights(c: &ProfitMatrix) -> Weights {
    Weights::new(c.matrix().entries().to_vec()).expect("profit guard bounds the absolute sum")
}

/// Greedy over `[Sⁿ]` with profit `cbar`. With `bases`, nonpositive entries
/// are also scanned, which selects in the same order as the positive
/// transform `c + 2|c| + 1` and therefore yields a max-profit basis.
fn shuffle_greedy<'a, O: IndependenceOracle + ?Sized>(
    s: &'a O,
    n: usize,
    cbar: &ProfitMatrix,
    bases: bool,
) -> Result<MatroidPartition<LiftOracle<&'a O>>> {
    check_profits(s, n, cbar)?;
    if let Some(row) = (0..cbar.d()).find(|&i| !cbar.matrix().row(i).windows(2).all(|w| w[0] >= w[1])) {
        return Err(Error::NotShifted { row });
    }
    let mut partition = shuffle_partition(s, n)?;
    greedy_in_order(&mut partition, greedy_order(&flat_weights(cbar), bases));
    Ok(partition)
}

fn fiber_from_partition<O: IndependenceOracle>(
    partition: &MatroidPartition<O>,
    d: usize,
    n: usize,
) -> Matrix01 {
    Decomposition::from_classes(d, n, &partition.decomposition())
        .expect("classes live on the flattened ground set")
        .column_sums()
}

/// `max{cbar·x : x ∈ [Sⁿ]}` for a row-nonincreasing `cbar`; with `bases`,
/// the maximum over bases of `[Sⁿ]`.
pub fn solve_shuffling<O: IndependenceOracle + ?Sized>(
    s: &O,
    n: usize,
    cbar: &ProfitMatrix,
    bases: bool,
) -> Result<Matrix01> {
    let partition = shuffle_greedy(s, n, cbar, bases)?;
    Matrix01::from_flat(s.ground_size(), n, &partition.current())
}

/// Given `x ∈ [Sⁿ]`, finds `y ∈ Sⁿ` with `y ∼ x`.
pub fn solve_fiber<O: IndependenceOracle + ?Sized>(s: &O, n: usize, x: &Matrix01) -> Result<Matrix01> {
    check_dim("matrix rows", s.ground_size(), x.d())?;
    check_dim("matrix columns", n, x.n())?;
    let mut partition = shuffle_partition(s, n)?;
    for e in x.to_flat().iter() {
        if !partition.try_add(e) {
            return Err(Error::NotInShuffleSet(format!(
                "entry ({}, {}) cannot be added; x is not in [S^{n}]",
                e / n + 1,
                e % n + 1
            )));
        }
    }
    let y = fiber_from_partition(&partition, x.d(), n);
    debug_assert!(equivalent(&y, x).unwrap());
    Ok(y)
}

/// `max{c̄x̄ : x ∈ Sⁿ}`, over independent sets or (with `bases`) over bases.
pub fn solve_shifted<O: IndependenceOracle + ?Sized>(
    s: &O,
    n: usize,
    c: &ProfitMatrix,
    bases: bool,
) -> Result<ShiftedSolution> {
    check_profits(s, n, c)?;
    let cbar = c.shift();
    let partition = shuffle_greedy(s, n, &cbar, bases)?;
    let x = Matrix01::from_flat(s.ground_size(), n, &partition.current())?;
    let y = fiber_from_partition(&partition, s.ground_size(), n);
    let solution = ShiftedSolution::evaluate(y, c);
    assert_eq!(
        solution.value,
        cbar.dot(&x),
        "fiber must preserve the shuffling objective"
    );
    Ok(solution)
}

/// Column-major scan of `[d] × [n]`: every row of column 1, then column 2, …
///
/// This is the greedy order induced by the profits `c_{i,j} = −(d+1)^{j−1}`
/// after the basis transform, without materializing those numbers.
pub fn lexmin_order(d: usize, n: usize) -> Vec<usize> {
    (0..n).flat_map(|j| (0..d).map(move |i| i * n + j)).collect()
}

/// The basis of `[Sⁿ]` the lexicographic greedy selects, as a `d × n` matrix.
pub fn lexmin_shuffle_basis<O: IndependenceOracle + ?Sized>(s: &O, n: usize) -> Result<Matrix01> {
    let mut partition = shuffle_partition(s, n)?;
    let chosen = greedy_in_order(&mut partition, lexmin_order(s.ground_size(), n));
    Matrix01::from_flat(s.ground_size(), n, &chosen)
}

/// `n` bases of `S` minimizing the vulnerability vector in reverse
/// lexicographic order (`fₙ` first).
pub fn solve_lexmin<O: IndependenceOracle + ?Sized>(s: &O, n: usize) -> Result<LexminSolution> {
    let d = s.ground_size();
    let mut partition = shuffle_partition(s, n)?;
    greedy_in_order(&mut partition, lexmin_order(d, n));
    let y = fiber_from_partition(&partition, d, n);
    let vuln = vulnerability_vector(&y);
    Ok(LexminSolution { y, vuln })
}

/// Optimum of the shifted problem over an explicit list of integer vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallShiftedSolution {
    /// `counts[i]` copies of `members[i]`, in block order.
    pub counts: Vec<usize>,
    pub y: IntMatrix,
    pub value: i64,
}

/// Enumerates the `(n+1)^{m−1}`-bounded count tuples `(n₁,…,nₘ)` with
/// `Σnᵢ = n` and evaluates `c̄ȳ` for each block matrix `y`.
pub fn solve_shifted_small(
    members: &[Vec<i64>],
    n: usize,
    c: &ProfitMatrix,
) -> Result<SmallShiftedSolution> {
    if members.is_empty() {
        return Err(Error::EmptySystem);
    }
    if n == 0 {
        return Err(Error::InvalidInput("number of copies n must be positive".into()));
    }
    let d = c.d();
    check_dim("profit columns", n, c.n())?;
    for z in members {
        check_dim("member length", d, z.len())?;
    }
    let max_entry = members
        .iter()
        .flatten()
        .map(|v| v.checked_abs())
        .try_fold(0i64, |acc, v| v.map(|v| acc.max(v)))
        .ok_or_else(|| Error::Overflow("member entry magnitude exceeds i64".into()))?;
    if c.abs_sum().checked_mul(max_entry).is_none() {
        return Err(Error::Overflow(
            "|c| times the largest member entry exceeds i64".into(),
        ));
    }

    let cbar = c.shift();
    let evaluate = |counts: &[usize]| -> (IntMatrix, i64) {
        let columns: Vec<&[i64]> = counts
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(members[i].as_slice(), k))
            .collect();
        let y = IntMatrix::from_columns(d, &columns).expect("member lengths checked");
        let value = cbar
            .matrix()
            .checked_dot(&y.shift())
            .expect("guarded against overflow");
        (y, value)
    };

    let mut best: Option<SmallShiftedSolution> = None;
    let mut counts = vec![0usize; members.len()];
    for_each_composition(&mut counts, 0, n, &mut |counts| {
        let (y, value) = evaluate(counts);
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(SmallShiftedSolution {
                counts: counts.to_vec(),
                y,
                value,
            });
        }
    });
    Ok(best.expect("at least one composition"))
}

/// Calls `visit` for every `counts` with `counts[pos..]` summing to `remaining`.
fn for_each_composition(
    counts: &mut [usize],
    pos: usize,
    remaining: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    if pos + 1 == counts.len() {
        counts[pos] = remaining;
        visit(counts);
        counts[pos] = 0;
        return;
    }
    for k in 0..=remaining {
        counts[pos] = k;
        for_each_composition(counts, pos + 1, remaining - k, visit);
    }
    counts[pos] = 0;
}
