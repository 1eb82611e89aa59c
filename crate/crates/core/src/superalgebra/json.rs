use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::Rational;

/// One structure constant: the coefficient `v` of basis vector `k` in the
/// bracket of `i` and `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub v: Rational,
}

/// Wire form of a superalgebra. `C` holds `[Xi,Xj]` for `i < j`, `D`
/// holds `[Xi,Yj]`, `E` holds `[Yi,Yj]` for `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureConstants {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "C")]
    pub c: Vec<StructureConstant>,
    #[serde(rename = "D")]
    pub d: Vec<StructureConstant>,
    #[serde(rename = "E")]
    pub e: Vec<StructureConstant>,
}

impl StructureConstants {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure constants always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
