//! Derived matroids: the n-lift `↑ₙS`, the n-union `∨ₙT` via matroid
//! partition, and the shuffle set `[Sⁿ] = ∨ₙ↑ₙS`.
//!
//! The lifted ground set `[d] × [n]` is flattened row-major: entry `(i, j)`
//! is element `i * n + j`, the same convention [`Matrix01`] uses for storage.

use std::collections::VecDeque;

use crate::error::{check_dim, Error, Result};
use crate::matrix::Matrix01;
use crate::matroid::{Augmenter, IndependenceOracle, Subset01};

/// An entry `(row, col)` of a `d × n` matrix viewed as an element of `[d] × [n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiftedElement {
    pub row: usize,
    pub col: usize,
}

impl LiftedElement {
    pub fn flat_index(self, n: usize) -> usize {
        self.row * n + self.col
    }

    pub fn from_flat(flat: usize, n: usize) -> Self {
        Self {
            row: flat / n,
            col: flat % n,
        }
    }
}

/// `↑ₙS`: a `d × n` 0/1 matrix is independent iff its column sum is a 0/1
/// vector independent in the base matroid.
#[derive(Debug, Clone)]
pub struct LiftOracle<O> {
    base: O,
    n: usize,
}

impl<O: IndependenceOracle> LiftOracle<O> {
    pub fn new(base: O, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("number of copies n must be positive".into()));
        }
        Ok(Self { base, n })
    }

    pub fn base(&self) -> &O {
        &self.base
    }

    pub fn copies(&self) -> usize {
        self.n
    }
}

impl<O: IndependenceOracle> IndependenceOracle for LiftOracle<O> {
    fn ground_size(&self) -> usize {
        self.base.ground_size() * self.n
    }

    fn independent(&self, set: &[bool]) -> bool {
        let mut column_sum = Vec::with_capacity(self.base.ground_size());
        for row in set.chunks(self.n) {
            match row.iter().filter(|&&b| b).count() {
                0 => column_sum.push(false),
                1 => column_sum.push(true),
                _ => return false,
            }
        }
        self.base.independent(&column_sum)
    }
}

pub fn lift_is_independent<O: IndependenceOracle>(base: &O, n: usize, x: &Matrix01) -> Result<bool> {
    check_dim("matrix rows", base.ground_size(), x.d())?;
    check_dim("matrix columns", n, x.n())?;
    let lift = LiftOracle::new(base, n)?;
    Ok(lift.independent(x.to_flat().as_slice()))
}

/// Incremental matroid partition: keeps the current set split into `n`
/// classes, each independent in the part matroid.
///
/// Adding an element searches the exchange digraph breadth-first. Arc
/// `u → v` means `u` may replace `v` in `v`'s class; the search ends at an
/// element that some other class can absorb outright. Shortest paths keep
/// every simultaneous swap valid.
#[derive(Debug, Clone)]
pub struct MatroidPartition<O> {
    oracle: O,
    color: Vec<Option<usize>>,
    classes: Vec<Vec<bool>>,
    oracle_calls: u64,
}

impl<O: IndependenceOracle> MatroidPartition<O> {
    pub fn new(oracle: O, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("number of parts n must be positive".into()));
        }
        let m = oracle.ground_size();
        Ok(Self {
            color: vec![None; m],
            classes: vec![vec![false; m]; n],
            oracle,
            oracle_calls: 0,
        })
    }

    pub fn parts(&self) -> usize {
        self.classes.len()
    }

    pub fn oracle(&self) -> &O {
        &self.oracle
    }

    pub fn oracle_calls(&self) -> u64 {
        self.oracle_calls
    }

    pub fn class_of(&self, e: usize) -> Option<usize> {
        self.color[e]
    }

    /// The current classes as subsets of the ground set.
    pub fn decomposition(&self) -> Vec<Subset01> {
        self.classes
            .iter()
            .map(|c| Subset01::from_bits(c.clone()))
            .collect()
    }

    /// Drops `e` from its class. Subsets of independent sets stay independent,
    /// so the partition remains valid.
    pub fn remove(&mut self, e: usize) {
        if let Some(k) = self.color[e].take() {
            self.classes[k][e] = false;
        }
    }

    fn test(&mut self, set: &[bool]) -> bool {
        self.oracle_calls += 1;
        self.oracle.independent(set)
    }

    fn augment(&mut self, parent: &[Option<usize>], end: usize, end_class: usize) {
        let mut path = vec![end];
        while let Some(p) = parent[*path.last().unwrap()] {
            path.push(p);
        }
        path.reverse();
        for w in path.windows(2) {
            let (u, v) = (w[0], w[1]);
            let c = self.color[v].expect("path interior is colored");
            self.classes[c][v] = false;
            self.classes[c][u] = true;
            self.color[u] = Some(c);
        }
        self.classes[end_class][end] = true;
        self.color[end] = Some(end_class);
        debug_assert!(self.classes.iter().all(|c| self.oracle.independent(c)));
    }
}

impl<O: IndependenceOracle> Augmenter for MatroidPartition<O> {
    fn ground_size(&self) -> usize {
        self.color.len()
    }

    fn try_add(&mut self, e: usize) -> bool {
        assert!(self.color[e].is_none(), "element {e} is already placed");
        let m = self.color.len();
        let mut parent: Vec<Option<usize>> = vec![None; m];
        let mut visited = vec![false; m];
        let mut queue = VecDeque::from([e]);
        visited[e] = true;
        while let Some(u) = queue.pop_front() {
            for k in 0..self.classes.len() {
                if self.color[u] == Some(k) {
                    continue;
                }
                let mut scratch = self.classes[k].clone();
                scratch[u] = true;
                if self.test(&scratch) {
                    self.augment(&parent, u, k);
                    return true;
                }
                for v in 0..m {
                    if !self.classes[k][v] || visited[v] {
                        continue;
                    }
                    scratch[v] = false;
                    if self.test(&scratch) {
                        visited[v] = true;
                        parent[v] = Some(u);
                        queue.push_back(v);
                    }
                    scratch[v] = true;
                }
            }
        }
        false
    }

    fn current(&self) -> Subset01 {
        Subset01::from_bits(self.color.iter().map(Option::is_some).collect())
    }
}

/// `∨ₙT` as a stateless oracle: each query partitions the set from scratch.
#[derive(Debug, Clone)]
pub struct UnionOracle<O> {
    part: O,
    n: usize,
}

impl<O: IndependenceOracle> UnionOracle<O> {
    pub fn new(part: O, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("number of parts n must be positive".into()));
        }
        Ok(Self { part, n })
    }

    /// Splits `set` into `n` independent parts, or returns `None`.
    pub fn decompose(&self, set: &[bool]) -> Option<Vec<Subset01>> {
        let mut partition = MatroidPartition::new(&self.part, self.n).ok()?;
        for (e, _) in set.iter().enumerate().filter(|(_, &b)| b) {
            if !partition.try_add(e) {
                return None;
            }
        }
        Some(partition.decomposition())
    }
}

impl<O: IndependenceOracle> IndependenceOracle for UnionOracle<O> {
    fn ground_size(&self) -> usize {
        self.part.ground_size()
    }

    fn independent(&self, set: &[bool]) -> bool {
        self.decompose(set).is_some()
    }
}

/// Decides `s ∈ ∨ₙT`; on success also returns the `n` parts.
pub fn union_is_independent<O: IndependenceOracle>(
    part: &O,
    n: usize,
    s: &Subset01,
) -> Result<Option<Vec<Subset01>>> {
    check_dim("subset length", part.ground_size(), s.ground_size())?;
    Ok(UnionOracle::new(part, n)?.decompose(s.as_slice()))
}

/// `x = Σₖ xₖ` with pairwise disjoint supports and every `xₖ ∈ ↑ₙS`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<Matrix01>,
}

impl Decomposition {
    pub fn from_classes(d: usize, n: usize, classes: &[Subset01]) -> Result<Self> {
        let parts = classes
            .iter()
            .map(|c| Matrix01::from_flat(d, n, c))
            .collect::<Result<_>>()?;
        Ok(Self { parts })
    }

    /// The matrix whose `k`-th column is the column sum of part `k`.
    pub fn column_sums(&self) -> Matrix01 {
        let (d, n) = match self.parts.first() {
            Some(p) => (p.d(), p.n()),
            None => return Matrix01::zeros(0, 0),
        };
        let mut y = Matrix01::zeros(d, self.parts.len());
        for (k, part) in self.parts.iter().enumerate() {
            for i in 0..d {
                if (0..n).any(|j| part.get(i, j)) {
                    y.set(i, k, true);
                }
            }
        }
        y
    }

    /// Checks the type invariants against the decomposed matrix `x`.
    pub fn is_valid_for<O: IndependenceOracle>(&self, base: &O, x: &Matrix01) -> bool {
        let n = x.n();
        if self.parts.len() != n {
            return false;
        }
        let mut sum = Matrix01::zeros(x.d(), n);
        for part in &self.parts {
            if part.d() != x.d() || part.n() != n {
                return false;
            }
            for i in 0..x.d() {
                for j in 0..n {
                    if part.get(i, j) {
                        if sum.get(i, j) {
                            return false;
                        }
                        sum.set(i, j, true);
                    }
                }
            }
            if !matches!(lift_is_independent(base, n, part), Ok(true)) {
                return false;
            }
        }
        sum == *x
    }
}

/// The shuffle-set matroid `[Sⁿ]` over the flattened ground set `[d] × [n]`.
pub type ShuffleOracle<O> = UnionOracle<LiftOracle<O>>;

pub fn shuffle_oracle<O: IndependenceOracle>(base: O, n: usize) -> Result<ShuffleOracle<O>> {
    UnionOracle::new(LiftOracle::new(base, n)?, n)
}

/// A fresh incremental partition for `[Sⁿ]`, empty.
pub fn shuffle_partition<O: IndependenceOracle>(
    base: O,
    n: usize,
) -> Result<MatroidPartition<LiftOracle<O>>> {
    MatroidPartition::new(LiftOracle::new(base, n)?, n)
}

/// Membership in `[Sⁿ]`; on success returns the decomposition into lift-independent parts.
pub fn shuffle_is_independent<O: IndependenceOracle>(
    base: &O,
    n: usize,
    x: &Matrix01,
) -> Result<Option<Decomposition>> {
    check_dim("matrix rows", base.ground_size(), x.d())?;
    check_dim("matrix columns", n, x.n())?;
    let oracle = shuffle_oracle(base, n)?;
    oracle
        .decompose(x.to_flat().as_slice())
        .map(|classes| Decomposition::from_classes(x.d(), n, &classes))
        .transpose()
}

/// `(rank ↑ₙS, rank [Sⁿ])`, both computed through the oracles.
pub fn union_rank_check<O: IndependenceOracle>(base: &O, n: usize) -> Result<(usize, usize)> {
    let lift = LiftOracle::new(base, n)?;
    let lift_rank = crate::matroid::full_rank(&lift);
    let mut partition = MatroidPartition::new(&lift, n)?;
    let shuffle_rank = (0..lift.ground_size())
        .filter(|&e| partition.try_add(e))
        .count();
    Ok((lift_rank, shuffle_rank))
}
