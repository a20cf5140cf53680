//! `d × n` matrices: 0/1 solution matrices, integer profit matrices, the
//! row-sorting shift, row-sum equivalence, and vulnerability vectors.
//!
//! Rows index ground elements, columns index the `n` copies. Storage is
//! row-major, and the flattened index of entry `(i, j)` is `i * n + j`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::matroid::{abs_sum, Subset01};

/// Largest admissible absolute sum of a profit matrix.
pub const PROFIT_ABS_SUM_LIMIT: i64 = 1 << 61;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix01 {
    d: usize,
    n: usize,
    entries: Vec<bool>,
}

impl Matrix01 {
    pub fn zeros(d: usize, n: usize) -> Self {
        Self {
            d,
            n,
            entries: vec![false; d * n],
        }
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), n);
        for (i, row) in rows.iter().enumerate() {
            check_dim("matrix row length", n, row.len())?;
            for (j, &b) in row.iter().enumerate() {
                m.set(i, j, b);
            }
        }
        Ok(m)
    }

    /// Parses integer rows, rejecting entries other than 0 and 1.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| match v {
                        0 => Ok(false),
                        1 => Ok(true),
                        _ => Err(Error::InvalidInput(format!("matrix entry {v} is not 0/1"))),
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<bool>>>>()?;
        Self::from_rows(&rows)
    }

    /// Builds the `d × n` matrix whose `k`-th column is `columns[k]`.
    pub fn from_columns(d: usize, columns: &[Subset01]) -> Result<Self> {
        let mut m = Self::zeros(d, columns.len());
        for (j, col) in columns.iter().enumerate() {
            check_dim("column length", d, col.ground_size())?;
            for i in col.iter() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    /// Interprets a subset of the flattened ground set `[d] × [n]`.
    pub fn from_flat(d: usize, n: usize, flat: &Subset01) -> Result<Self> {
        check_dim("flattened subset length", d * n, flat.ground_size())?;
        Ok(Self {
            d,
            n,
            entries: flat.as_slice().to_vec(),
        })
    }

    pub fn to_flat(&self) -> Subset01 {
        Subset01::from_bits(self.entries.clone())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Subset01 {
        Subset01::from_bits((0..self.d).map(|i| self.get(i, j)).collect())
    }

    pub fn columns(&self) -> Vec<Subset01> {
        (0..self.n).map(|j| self.column(j)).collect()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.d)
            .map(|i| self.row(i).iter().filter(|&&b| b).count())
            .collect()
    }

    /// `|x|`, the number of ones.
    pub fn count_ones(&self) -> usize {
        self.entries.iter().filter(|&&b| b).count()
    }

    pub fn to_int_rows(&self) -> Vec<Vec<i64>> {
        (0..self.d)
            .map(|i| self.row(i).iter().map(|&b| i64::from(b)).collect())
            .collect()
    }

    /// Each row sorted nonincreasing: all ones first.
    pub fn shift(&self) -> Matrix01 {
        let mut out = Matrix01::zeros(self.d, self.n);
        for (i, s) in self.row_sums().into_iter().enumerate() {
            for j in 0..s {
                out.set(i, j, true);
            }
        }
        out
    }

    pub fn is_shifted(&self) -> bool {
        (0..self.d).all(|i| self.row(i).windows(2).all(|w| w[0] >= w[1]))
    }
}

impl fmt::Debug for Matrix01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.d)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect()
            })
            .collect();
        write!(f, "Matrix01[{}]", rows.join(" "))
    }
}

/// True iff every row of `x` is a permutation of the matching row of `y`,
/// i.e. the row sums agree.
pub fn equivalent(x: &Matrix01, y: &Matrix01) -> Result<bool> {
    check_dim("row count", x.d(), y.d())?;
    check_dim("column count", x.n(), y.n())?;
    Ok(x.row_sums() == y.row_sums())
}

/// Plain `d × n` integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    d: usize,
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(d: usize, n: usize) -> Self {
        Self {
            d,
            n,
            entries: vec![0; d * n],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * n);
        for row in rows {
            check_dim("matrix row length", n, row.len())?;
            entries.extend_from_slice(row);
        }
        Ok(Self {
            d: rows.len(),
            n,
            entries,
        })
    }

    pub fn from_columns(d: usize, columns: &[&[i64]]) -> Result<Self> {
        let mut m = Self::zeros(d, columns.len());
        for (j, col) in columns.iter().enumerate() {
            check_dim("column length", d, col.len())?;
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.d).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn shift(&self) -> IntMatrix {
        let mut out = self.clone();
        for row in out.entries.chunks_mut(self.n.max(1)) {
            row.sort_unstable_by(|a, b| b.cmp(a));
        }
        out
    }

    pub fn is_shifted(&self) -> bool {
        (0..self.d).all(|i| self.row(i).windows(2).all(|w| w[0] >= w[1]))
    }

    /// Entrywise product sum; `None` on overflow.
    pub fn checked_dot(&self, other: &IntMatrix) -> Option<i64> {
        if self.d != other.d || self.n != other.n {
            return None;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .try_fold(0i64, |acc, (&a, &b)| acc.checked_add(a.checked_mul(b)?))
    }
}

impl From<&Matrix01> for IntMatrix {
    fn from(x: &Matrix01) -> Self {
        IntMatrix {
            d: x.d,
            n: x.n,
            entries: x.entries.iter().map(|&b| i64::from(b)).collect(),
        }
    }
}

/// Profit matrix `c` with `Σ|c_ij| ≤ 2^61`, leaving headroom for the
/// basis transform `c + 2|c| + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProfitMatrix {
    inner: IntMatrix,
    abs_sum: i64,
}

impl ProfitMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        let abs_sum = abs_sum(m.entries())?;
        if abs_sum > PROFIT_ABS_SUM_LIMIT {
            return Err(Error::Overflow(format!(
                "sum of absolute profits {abs_sum} exceeds 2^61"
            )));
        }
        Ok(Self { inner: m, abs_sum })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    pub fn zeros(d: usize, n: usize) -> Self {
        Self {
            inner: IntMatrix::zeros(d, n),
            abs_sum: 0,
        }
    }

    pub fn d(&self) -> usize {
        self.inner.d
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.inner.get(i, j)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.inner
    }

    /// `|c|`, the sum of absolute values.
    pub fn abs_sum(&self) -> i64 {
        self.abs_sum
    }

    /// The row-sorted profit matrix `c̄`; same absolute sum.
    pub fn shift(&self) -> ProfitMatrix {
        ProfitMatrix {
            inner: self.inner.shift(),
            abs_sum: self.abs_sum,
        }
    }

    pub fn is_shifted(&self) -> bool {
        self.inner.is_shifted()
    }

    /// `c · x`. Bounded by `|c|`, so it never overflows.
    pub fn dot(&self, x: &Matrix01) -> i64 {
        assert_eq!((self.d(), self.n()), (x.d(), x.n()), "dimension mismatch");
        self.inner
            .entries
            .iter()
            .zip(&x.entries)
            .filter(|(_, &b)| b)
            .map(|(&c, _)| c)
            .sum()
    }

    /// `c̄ · x̄`, the shifted objective.
    pub fn shifted_value(&self, x: &Matrix01) -> i64 {
        self.shift().dot(&x.shift())
    }
}

/// `(|x̄¹|, …, |x̄ⁿ|)`: entry `k` (0-based) counts the rows of `x` whose sum
/// exceeds `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VulnVector(Vec<usize>);

impl VulnVector {
    pub fn new(values: Vec<usize>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reverse-lexicographic comparison: the last differing entry decides,
    /// so `f_n` is minimized first, then `f_{n-1}`, and so on.
    pub fn lex_cmp(&self, other: &VulnVector) -> Result<Ordering> {
        check_dim("vulnerability vector length", self.len(), other.len())?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .rev()
            .map(|(a, b)| a.cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal))
    }
}

pub fn vulnerability_vector(x: &Matrix01) -> VulnVector {
    let sums = x.row_sums();
    VulnVector((0..x.n()).map(|k| sums.iter().filter(|&&s| s > k).count()).collect())
}

/// `f` is strictly better than `g`: the last nonzero entry of `g − f` is positive.
pub fn lex_less(f: &VulnVector, g: &VulnVector) -> Result<bool> {
    Ok(f.lex_cmp(g)? == Ordering::Less)
}
