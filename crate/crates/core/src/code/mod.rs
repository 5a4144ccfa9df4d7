//! The recursive code: specifications, cardinalities, storage tables and the encoder.

mod adhoc;
mod export;
mod plan;
mod tables;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foliation::check_distance;

pub use adhoc::{AdhocCode, CATALOG_R4};
pub use export::{fmt17, read_codebook_csv, write_codebook_csv};
pub(crate) use export::F17;
pub use plan::OFFSET_STEPS;
pub use tables::{
    build_tables, encode, enumerate, CodeTables, LeafRow, LeafTable, RowContent, SubRef, TableBody,
    TreeNode, DEFAULT_ENUMERATION_CAP,
};

use plan::Planner;

/// Which construction to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Symmetric leaves at every level.
    #[default]
    Standard,
    /// Best of several leaf schemes per node, Hopf fibres on dimension-4 leaves
    /// and explicit codes where they are larger.
    Modified,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Variant::Standard),
            "modified" => Ok(Variant::Modified),
            _ => Err(Error::Domain(format!("unknown variant {s:?}"))),
        }
    }
}

/// A code `C(M, dim, dmin)` identified by its dimension and minimum distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub dim: usize,
    pub dmin: f64,
    pub variant: Variant,
}

impl CodeSpec {
    pub fn new(dim: usize, dmin: f64, variant: Variant) -> Result<Self> {
        if dim < 4 || !dim.is_power_of_two() {
            return Err(Error::Domain(format!("dimension {dim} is not a power of two at least 4")));
        }
        check_distance(dmin)?;
        Ok(CodeSpec { dim, dmin, variant })
    }

    pub fn standard(dim: usize, dmin: f64) -> Result<Self> {
        Self::new(dim, dmin, Variant::Standard)
    }

    pub fn modified(dim: usize, dmin: f64) -> Result<Self> {
        Self::new(dim, dmin, Variant::Modified)
    }

    /// `k` with `dim = 2^k`.
    pub fn log_dim(&self) -> u32 {
        self.dim.trailing_zeros()
    }

    fn validate(&self) -> Result<()> {
        Self::new(self.dim, self.dmin, self.variant).map(|_| ())
    }
}

/// A point of the code together with its index.
#[derive(Debug, Clone, PartialEq)]
pub struct Codeword {
    pub index: u128,
    pub coords: Vec<f64>,
}

/// Number of points of the code.
pub fn cardinality(spec: &CodeSpec) -> Result<BigUint> {
    spec.validate()?;
    Planner::new(spec.variant).count(spec.dim, spec.dmin)
}

/// Cardinality of the modified construction in the dimension and distance of `spec`.
pub fn cardinality_modified(spec: &CodeSpec) -> Result<BigUint> {
    cardinality(&CodeSpec { variant: Variant::Modified, ..*spec })
}

/// The explicit code used by the modified construction at a `(dim, d)` node, if
/// one exists with minimum distance at least `d` and more points than the
/// standard construction.
pub fn adhoc_lookup(dim: usize, d: f64) -> Result<Option<AdhocCode>> {
    let spec = CodeSpec::standard(dim, d)?;
    let standard = cardinality(&spec)?;
    Ok(adhoc::best_adhoc(dim, d).filter(|code| BigUint::from(code.len(dim)) > standard))
}
