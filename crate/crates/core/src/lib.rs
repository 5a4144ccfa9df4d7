//! Spherical codes built from Hopf foliations.
//!
//! A code `C(M, n, d)` is a set of `M` unit vectors in `R^n` with pairwise
//! distance at least `d`. For `n = 2^k` the sphere `S^{n-1}` is foliated by
//! products `S^{n/2-1}_{cos η} × S^{n/2-1}_{sin η}`; picking well-separated leaves
//! and recursing on both factors gives a code whose points can be indexed,
//! encoded and decoded without storing the codebook.
//!
//! ```
//! use schf::code::{build_tables, CodeSpec};
//!
//! let tables = build_tables(&CodeSpec::standard(8, 0.5).unwrap()).unwrap();
//! assert_eq!(tables.len(), 2608);
//! let word = tables.encode(1234).unwrap();
//! let decoded = schf::decoder::decode(&word.coords, &tables, &Default::default()).unwrap();
//! assert_eq!(decoded.index, 1234);
//! ```

pub mod channel;
pub mod cli;
pub mod code;
pub mod decoder;
pub mod density;
pub mod error;
pub mod foliation;
pub mod reference;
pub mod torus4;

pub use code::{build_tables, cardinality, CodeSpec, CodeTables, Codeword, Variant};
pub use error::{Error, Result};
