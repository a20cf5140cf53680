//! Exhaustive reference solvers.
//!
//! Everything here works from an explicit list of members and enumerates
//! multisets of `n` columns, which suffices because reordering the columns of
//! `x` applies one permutation to every row and leaves `c̄x̄` unchanged.
//! Size guards are hard errors.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matrix::{Matrix01, ProfitMatrix, VulnVector};
use crate::matroid::{IndependenceOracle, Subset01, Weights};

/// Environment variable overriding the multiset-count guard.
pub const GUARD_ENV: &str = "MATROID_SHIFT_GUARD";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteLimits {
    /// Largest ground set whose power set may be enumerated.
    pub max_ground: usize,
    /// Largest number of multisets (or tuples) an enumeration may visit.
    pub max_multisets: u128,
}

impl Default for BruteLimits {
    fn default() -> Self {
        Self {
            max_ground: 20,
            max_multisets: 10_000_000,
        }
    }
}

impl BruteLimits {
    /// Defaults, with `max_multisets` taken from `MATROID_SHIFT_GUARD` when set.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(cap) = std::env::var(GUARD_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u128>().ok())
        {
            limits.max_multisets = cap;
        }
        limits
    }
}

/// An explicitly listed set system over `0..d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitSetSystem {
    d: usize,
    members: Vec<Subset01>,
}

impl ExplicitSetSystem {
    pub fn new(d: usize, members: Vec<Subset01>) -> Result<Self> {
        let mut seen = HashSet::new();
        for m in &members {
            crate::error::check_dim("member length", d, m.ground_size())?;
            if !seen.insert(m) {
                return Err(Error::InvalidInput(format!("duplicate member {m:?}")));
            }
        }
        Ok(Self { d, members })
    }

    pub fn ground_size(&self) -> usize {
        self.d
    }

    pub fn members(&self) -> &[Subset01] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Subset01) -> bool {
        self.members.contains(s)
    }
}

fn power_set_filtered(
    d: usize,
    limits: &BruteLimits,
    keep: impl Fn(&Subset01) -> bool,
) -> Result<Vec<Subset01>> {
    if d > limits.max_ground || d >= 64 {
        return Err(Error::GuardExceeded {
            what: "ground size",
            size: d as u128,
            cap: limits.max_ground as u128,
        });
    }
    Ok((0..1u64 << d)
        .map(|mask| Subset01::from_mask(d, mask))
        .filter(|s| keep(s))
        .collect())
}

fn only_maximum(members: Vec<Subset01>) -> Vec<Subset01> {
    let top = members.iter().map(Subset01::len).max().unwrap_or(0);
    members.into_iter().filter(|s| s.len() == top).collect()
}

/// All independent sets (or all bases) of `m`, in binary-mask order.
pub fn enumerate_members<O: IndependenceOracle + ?Sized>(
    m: &O,
    bases_only: bool,
    limits: &BruteLimits,
) -> Result<ExplicitSetSystem> {
    let d = m.ground_size();
    let mut members = power_set_filtered(d, limits, |s| m.independent(s.as_slice()))?;
    if bases_only {
        members = only_maximum(members);
    }
    ExplicitSetSystem::new(d, members)
}

/// All common independent sets of `m1` and `m2` (or all maximum ones).
pub fn enumerate_common_members<A, B>(
    m1: &A,
    m2: &B,
    maximum_only: bool,
    limits: &BruteLimits,
) -> Result<ExplicitSetSystem>
where
    A: IndependenceOracle + ?Sized,
    B: IndependenceOracle + ?Sized,
{
    let d = m1.ground_size();
    crate::error::check_dim("second matroid ground size", d, m2.ground_size())?;
    let mut members = power_set_filtered(d, limits, |s| {
        m1.independent(s.as_slice()) && m2.independent(s.as_slice())
    })?;
    if maximum_only {
        members = only_maximum(members);
    }
    ExplicitSetSystem::new(d, members)
}

/// `C(m + n − 1, n)`, saturating.
pub fn multiset_count(m: usize, n: usize) -> u128 {
    if m == 0 {
        return u128::from(n == 0);
    }
    let mut acc: u128 = 1;
    for k in 1..=n as u128 {
        acc = match acc.checked_mul(m as u128 - 1 + k) {
            Some(v) => v / k,
            None => return u128::MAX,
        };
    }
    acc
}

fn check_multisets(m: usize, n: usize, limits: &BruteLimits) -> Result<()> {
    let size = multiset_count(m, n);
    if size > limits.max_multisets {
        return Err(Error::GuardExceeded {
            what: "multiset count",
            size,
            cap: limits.max_multisets,
        });
    }
    Ok(())
}

/// Depth-first walk over nondecreasing index sequences of length `n`,
/// maintaining the per-element multiplicity vector.
struct MultisetWalk<'a> {
    members: &'a [Subset01],
    n: usize,
    chosen: Vec<usize>,
    counts: Vec<usize>,
}

impl<'a> MultisetWalk<'a> {
    fn new(sys: &'a ExplicitSetSystem, n: usize) -> Self {
        Self {
            members: sys.members(),
            n,
            chosen: Vec::with_capacity(n),
            counts: vec![0; sys.ground_size()],
        }
    }

    /// `visit` sees the chosen member indices and the multiplicities; it
    /// returns `false` to stop the walk. `prune` rejects partial counts.
    fn run(
        &mut self,
        start: usize,
        visit: &mut dyn FnMut(&[usize], &[usize]) -> bool,
        prune: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if self.chosen.len() == self.n {
            return visit(&self.chosen, &self.counts);
        }
        for idx in start..self.members.len() {
            for e in self.members[idx].iter() {
                self.counts[e] += 1;
            }
            self.chosen.push(idx);
            let keep_going = prune(&self.counts) || self.run(idx, visit, prune);
            self.chosen.pop();
            for e in self.members[idx].iter() {
                self.counts[e] -= 1;
            }
            if !keep_going {
                return false;
            }
        }
        true
    }
}

fn block_matrix(sys: &ExplicitSetSystem, chosen: &[usize]) -> Matrix01 {
    let cols: Vec<Subset01> = chosen.iter().map(|&i| sys.members()[i].clone()).collect();
    Matrix01::from_columns(sys.ground_size(), &cols).expect("member lengths were validated")
}

fn ensure_nonempty(sys: &ExplicitSetSystem) -> Result<()> {
    if sys.is_empty() {
        Err(Error::EmptySystem)
    } else {
        Ok(())
    }
}

/// Exact `max{c̄x̄ : x ∈ Sⁿ}` over the listed members, with a witness whose
/// columns appear in member order.
pub fn brute_shifted(
    sys: &ExplicitSetSystem,
    n: usize,
    c: &ProfitMatrix,
    limits: &BruteLimits,
) -> Result<(i64, Matrix01)> {
    ensure_nonempty(sys)?;
    crate::error::check_dim("profit rows", sys.ground_size(), c.d())?;
    crate::error::check_dim("profit columns", n, c.n())?;
    check_multisets(sys.len(), n, limits)?;
    let cbar = c.shift();
    // prefix[i][t] = value of row i used by t columns after shifting
    let prefix: Vec<Vec<i64>> = (0..c.d())
        .map(|i| {
            std::iter::once(0)
                .chain((0..n).scan(0i64, |acc, j| {
                    *acc += cbar.get(i, j);
                    Some(*acc)
                }))
                .collect()
        })
        .collect();
    let mut best: Option<(i64, Vec<usize>)> = None;
    MultisetWalk::new(sys, n).run(
        0,
        &mut |chosen, counts| {
            let value: i64 = counts.iter().enumerate().map(|(i, &t)| prefix[i][t]).sum();
            if best.as_ref().is_none_or(|(b, _)| value > *b) {
                best = Some((value, chosen.to_vec()));
            }
            true
        },
        &|_| false,
    );
    let (value, chosen) = best.expect("nonempty system has a multiset");
    Ok((value, block_matrix(sys, &chosen)))
}

/// Exact lexicographic minimum of the vulnerability vector over multisets of
/// `n` members.
pub fn brute_lexmin(
    sys: &ExplicitSetSystem,
    n: usize,
    limits: &BruteLimits,
) -> Result<(VulnVector, Matrix01)> {
    ensure_nonempty(sys)?;
    check_multisets(sys.len(), n, limits)?;
    let mut best: Option<(VulnVector, Vec<usize>)> = None;
    MultisetWalk::new(sys, n).run(
        0,
        &mut |chosen, counts| {
            let v = VulnVector::new(
                (0..n)
                    .map(|k| counts.iter().filter(|&&t| t > k).count())
                    .collect(),
            );
            let better = match &best {
                None => true,
                Some((b, _)) => v.lex_cmp(b).expect("equal lengths").is_lt(),
            };
            if better {
                best = Some((v, chosen.to_vec()));
            }
            true
        },
        &|_| false,
    );
    let (v, chosen) = best.expect("nonempty system has a multiset");
    Ok((v, block_matrix(sys, &chosen)))
}

/// `x ∈ [Sⁿ]` by definition: some multiset of `n` members has exactly the
/// row sums of `x` as its element multiplicities.
pub fn brute_shuffle_membership(
    sys: &ExplicitSetSystem,
    n: usize,
    x: &Matrix01,
    limits: &BruteLimits,
) -> Result<bool> {
    crate::error::check_dim("matrix rows", sys.ground_size(), x.d())?;
    crate::error::check_dim("matrix columns", n, x.n())?;
    check_multisets(sys.len(), n, limits)?;
    let target = x.row_sums();
    let mut found = false;
    MultisetWalk::new(sys, n).run(
        0,
        &mut |_, counts| {
            found = counts == target.as_slice();
            !found
        },
        &|counts| counts.iter().zip(&target).any(|(c, t)| c > t),
    );
    Ok(found)
}

/// Max-weight member, first in member order among ties.
pub fn brute_weighted_max(sys: &ExplicitSetSystem, w: &Weights) -> Result<(i64, Subset01)> {
    ensure_nonempty(sys)?;
    crate::error::check_dim("weight vector length", sys.ground_size(), w.len())?;
    let mut best = (w.total(&sys.members()[0]), sys.members()[0].clone());
    for m in &sys.members()[1..] {
        let v = w.total(m);
        if v > best.0 {
            best = (v, m.clone());
        }
    }
    Ok(best)
}
