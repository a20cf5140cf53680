//! Independence oracles, subsets of a ground set, rank, and the max-weight
//! greedy algorithm.
//!
//! Every matroid in this crate is accessed only through
//! [`IndependenceOracle`]. Concrete families live in [`crate::families`];
//! derived matroids (lifts, unions, shuffle sets) in [`crate::constructions`].

use std::fmt;
use std::sync::Arc;

use crate::error::{check_dim, Error, Result};

/// A 0/1 indicator vector over the ground set `0..d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset01 {
    bits: Vec<bool>,
}

impl Subset01 {
    pub fn empty(d: usize) -> Self {
        Self {
            bits: vec![false; d],
        }
    }

    pub fn full(d: usize) -> Self {
        Self {
            bits: vec![true; d],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Builds a subset from 0-based element indices.
    pub fn from_indices(d: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(d);
        for i in indices {
            if i >= d {
                return Err(Error::InvalidInput(format!(
                    "element {i} outside ground set of size {d}"
                )));
            }
            s.bits[i] = true;
        }
        Ok(s)
    }

    /// The `mask`-th subset of `0..d` in binary order (bit `i` of `mask` is element `i`).
    pub fn from_mask(d: usize, mask: u64) -> Self {
        Self {
            bits: (0..d).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn insert(&mut self, i: usize) {
        self.bits[i] = true;
    }

    pub fn remove(&mut self, i: usize) {
        self.bits[i] = false;
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_subset_of(&self, other: &Subset01) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(&a, &b)| !a || b)
    }
}

impl fmt::Debug for Subset01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// One signed weight per ground element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weights {
    values: Vec<i64>,
}

impl Weights {
    /// Rejects weight vectors whose absolute sum does not fit in an `i64`.
    pub fn new(values: Vec<i64>) -> Result<Self> {
        abs_sum(&values)?;
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, i: usize) -> i64 {
        self.values[i]
    }

    /// Total weight of `s`. Cannot overflow since the absolute sum was checked.
    pub fn total(&self, s: &Subset01) -> i64 {
        s.iter().map(|i| self.values[i]).sum()
    }
}

pub(crate) fn abs_sum(values: &[i64]) -> Result<i64> {
    values.iter().try_fold(0i64, |acc, &v| {
        v.checked_abs()
            .and_then(|a| acc.checked_add(a))
            .ok_or_else(|| Error::Overflow("sum of absolute weights exceeds i64".into()))
    })
}

/// Membership test for the independent sets of a matroid over `0..ground_size()`.
///
/// Implementations may assume `set.len() == self.ground_size()`; the checked
/// entry point is [`is_independent`].
pub trait IndependenceOracle {
    fn ground_size(&self) -> usize;

    fn independent(&self, set: &[bool]) -> bool;
}

impl<O: IndependenceOracle + ?Sized> IndependenceOracle for &O {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn independent(&self, set: &[bool]) -> bool {
        (**self).independent(set)
    }
}

impl<O: IndependenceOracle + ?Sized> IndependenceOracle for Box<O> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn independent(&self, set: &[bool]) -> bool {
        (**self).independent(set)
    }
}

impl<O: IndependenceOracle + ?Sized> IndependenceOracle for Arc<O> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn independent(&self, set: &[bool]) -> bool {
        (**self).independent(set)
    }
}

pub fn is_independent<O: IndependenceOracle + ?Sized>(m: &O, s: &Subset01) -> Result<bool> {
    check_dim("subset length", m.ground_size(), s.ground_size())?;
    Ok(m.independent(s.as_slice()))
}

/// Size of a maximum independent subset of `s`, by greedy insertion.
pub fn rank<O: IndependenceOracle + ?Sized>(m: &O, s: &Subset01) -> Result<usize> {
    check_dim("subset length", m.ground_size(), s.ground_size())?;
    let mut aug = OracleAugmenter::new(m);
    Ok(s.iter().filter(|&e| aug.try_add(e)).count())
}

pub fn full_rank<O: IndependenceOracle + ?Sized>(m: &O) -> usize {
    let d = m.ground_size();
    let mut aug = OracleAugmenter::new(m);
    (0..d).filter(|&e| aug.try_add(e)).count()
}

/// Grows an independent set one element at a time.
///
/// Stateless oracles are wrapped in [`OracleAugmenter`]; matroid unions keep
/// their decomposition incrementally (see
/// [`MatroidPartition`](crate::constructions::MatroidPartition)).
pub trait Augmenter {
    fn ground_size(&self) -> usize;

    /// Adds `e` if the current set plus `e` stays independent. `e` must not
    /// already be in the set.
    fn try_add(&mut self, e: usize) -> bool;

    fn current(&self) -> Subset01;
}

pub struct OracleAugmenter<'a, O: ?Sized> {
    oracle: &'a O,
    set: Vec<bool>,
}

impl<'a, O: IndependenceOracle + ?Sized> OracleAugmenter<'a, O> {
    pub fn new(oracle: &'a O) -> Self {
        Self {
            set: vec![false; oracle.ground_size()],
            oracle,
        }
    }
}

impl<O: IndependenceOracle + ?Sized> Augmenter for OracleAugmenter<'_, O> {
    fn ground_size(&self) -> usize {
        self.set.len()
    }

    fn try_add(&mut self, e: usize) -> bool {
        debug_assert!(!self.set[e]);
        self.set[e] = true;
        if self.oracle.independent(&self.set) {
            true
        } else {
            self.set[e] = false;
            false
        }
    }

    fn current(&self) -> Subset01 {
        Subset01::from_bits(self.set.clone())
    }
}

/// Runs the greedy scan over `order`, adding every element that keeps the set
/// independent.
pub fn greedy_in_order<A: Augmenter + ?Sized>(
    aug: &mut A,
    order: impl IntoIterator<Item = usize>,
) -> Subset01 {
    for e in order {
        aug.try_add(e);
    }
    aug.current()
}

/// Scan order used by [`greedy_max`]: nonincreasing weight, ties by ascending
/// index. With `force_basis` unset, nonpositive elements are dropped.
pub fn greedy_order(w: &Weights, force_basis: bool) -> Vec<usize> {
    let mut order: Vec<usize> = (0..w.len())
        .filter(|&i| force_basis || w.get(i) > 0)
        .collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(w.get(i)), i));
    order
}

/// Max-weight independent set (or, with `force_basis`, max-weight basis).
pub fn greedy_max<O: IndependenceOracle + ?Sized>(
    m: &O,
    w: &Weights,
    force_basis: bool,
) -> Result<Subset01> {
    check_dim("weight vector length", m.ground_size(), w.len())?;
    let mut aug = OracleAugmenter::new(m);
    Ok(greedy_in_order(&mut aug, greedy_order(w, force_basis)))
}

/// [`greedy_max`] over an arbitrary augmenter.
pub fn greedy_max_with<A: Augmenter + ?Sized>(
    aug: &mut A,
    w: &Weights,
    force_basis: bool,
) -> Result<Subset01> {
    check_dim("weight vector length", aug.ground_size(), w.len())?;
    Ok(greedy_in_order(aug, greedy_order(w, force_basis)))
}
