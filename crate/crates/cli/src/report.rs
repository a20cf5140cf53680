use matroid_shift::{Matrix01, Subset01};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verification {
    Ok,
    Skipped,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSums {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub input_digest: String,
    pub d: usize,
    pub n: usize,
    /// Solution columns as 1-based element lists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vulnerability: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_sums: Option<RowSums>,
    pub verification: Verification,
    pub wall_time_ms: u64,
}

/// sha256 of the compact JSON form of `canonical`. Object keys come out
/// sorted, so the digest does not depend on input formatting or key order.
pub fn digest(canonical: &serde_json::Value) -> String {
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

pub fn columns_of(y: &Matrix01) -> Vec<Vec<usize>> {
    y.columns().iter().map(|c| c.iter().map(|e| e + 1).collect()).collect()
}

pub fn matrix_of(d: usize, columns: &[Vec<usize>]) -> Result<Matrix01, String> {
    let cols = columns
        .iter()
        .map(|c| {
            if c.iter().any(|&e| e == 0 || e > d) {
                return Err(format!("column {c:?} has an element outside 1..={d}"));
            }
            Subset01::from_indices(d, c.iter().map(|e| e - 1)).map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix01::from_columns(d, &cols).map_err(|e| e.to_string())
}
