//! Storage tables and the index-to-codeword map.
//!
//! The code of `R^{2^k}` is stored as a binary tree of depth `k - 1`. Node `p`
//! holds the leaf tables of one half-space; its children sit at `2p + 1` (the
//! cosine half) and `2p + 2` (the sine half). A node may hold several tables,
//! one per scaled distance reaching it. Index arithmetic uses `u128`.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::adhoc::AdhocCode;
use super::plan::{NodePlan, Planner, RowKind};
use super::{CodeSpec, Codeword};
use crate::error::{Error, Result};
use crate::foliation::{LeafAngle, LeafScheme, TOL};
use crate::torus4::{diagonal_point_with, leaf_radii, TorusLayout};

/// Default bound on the number of codewords materialized at once.
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

/// Reference from a row to the subcode of one half-space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubRef {
    /// The scaled distance exceeds 2; the subcode is the first basis vector.
    Single,
    /// Table index within the child node.
    Table(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub enum RowContent {
    /// Torus layout, block-swapped when `swapped` (the layout then lives on the
    /// mirror leaf).
    Torus { layout: TorusLayout, swapped: bool },
    /// One Hopf fibre carrying `count` points.
    Diagonal { count: u64 },
    /// Product of two half-dimensional subcodes.
    Product { cos_dist: f64, sin_dist: f64, cos: SubRef, sin: SubRef },
}

/// One leaf of a table. The leaf owns `m1 · m2` consecutive indices; for
/// four-dimensional leaves `(m1, m2)` are the points per circle and the circle count.
#[derive(Debug, Clone, PartialEq)]
pub struct LeafRow {
    pub index: i64,
    pub eta: LeafAngle,
    pub m1: u128,
    pub m2: u128,
    pub content: RowContent,
    /// `(sin, cos)` of the angle the row's points are written with.
    radii: (f64, f64),
}

impl LeafRow {
    pub fn new(index: i64, eta: LeafAngle, m1: u128, m2: u128, content: RowContent) -> Self {
        let radii = match content {
            RowContent::Torus { layout, .. } => leaf_radii(layout.eta),
            _ => leaf_radii(eta),
        };
        LeafRow { index, eta, m1, m2, content, radii }
    }

    pub(crate) fn radii(&self) -> (f64, f64) {
        self.radii
    }

    /// `(sin η, cos η)` of the row's own angle, to within an ulp.
    pub(crate) fn leaf_radii(&self) -> (f64, f64) {
        match self.content {
            RowContent::Torus { swapped: true, .. } => (self.radii.1, self.radii.0),
            _ => self.radii,
        }
    }

    pub fn len(&self) -> u128 {
        self.m1 * self.m2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TableBody {
    Leaves { scheme: LeafScheme, rows: Vec<LeafRow> },
    Adhoc(AdhocCode),
}

/// The code of one node at one scaled distance.
#[derive(Debug, Clone, PartialEq)]
pub struct LeafTable {
    pub dmin: f64,
    pub body: TableBody,
    prefix: Vec<u128>,
    total: u128,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeNode {
    pub position: usize,
    pub dim: usize,
    pub tables: Vec<LeafTable>,
}

/// All tables of a code. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeTables {
    pub spec: CodeSpec,
    pub nodes: Vec<TreeNode>,
    total: u128,
}

impl LeafTable {
    pub(crate) fn new(dmin: f64, body: TableBody, dim: usize) -> Result<Self> {
        let (prefix, total) = match &body {
            TableBody::Adhoc(code) => (Vec::new(), code.len(dim) as u128),
            TableBody::Leaves { rows, .. } => {
                let mut prefix = Vec::with_capacity(rows.len());
                let mut total: u128 = 0;
                for row in rows {
                    prefix.push(total);
                    let size = row.m1.checked_mul(row.m2).ok_or_else(overflow)?;
                    total = total.checked_add(size).ok_or_else(overflow)?;
                }
                (prefix, total)
            }
        };
        Ok(LeafTable { dmin, body, prefix, total })
    }

    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn rows(&self) -> &[LeafRow] {
        match &self.body {
            TableBody::Leaves { rows, .. } => rows,
            TableBody::Adhoc(_) => &[],
        }
    }

    /// First index owned by row `r`.
    pub fn prefix(&self, r: usize) -> u128 {
        self.prefix[r]
    }

    /// Row owning index `a` and the split `(a₁, a₂)` of its offset, `a₁` fastest.
    pub fn locate(&self, a: u128) -> Result<(usize, u128, u128)> {
        if a >= self.total {
            return Err(Error::IndexOutOfRange { index: a.into(), total: self.total.into() });
        }
        let rows = self.rows();
        if rows.is_empty() {
            return Err(Error::Domain("explicit codes have no leaf rows".into()));
        }
        let r = self.prefix.partition_point(|&p| p <= a) - 1;
        let local = a - self.prefix[r];
        Ok((r, local % rows[r].m1, local / rows[r].m1))
    }

    /// Leaf angle and split `(a₁, a₂)` for index `a`.
    pub fn sigma_split(&self, a: u128) -> Result<(LeafAngle, u128, u128)> {
        let (r, a1, a2) = self.locate(a)?;
        Ok((self.rows()[r].eta, a1, a2))
    }
}

fn overflow() -> Error {
    Error::Resource("code size exceeds 2^128 indices".into())
}

struct Builder {
    planner: Planner,
    nodes: Vec<TreeNode>,
    seen: Vec<HashMap<u64, usize>>,
}

impl Builder {
    fn build(&mut self, pos: usize, dim: usize, d: f64) -> Result<SubRef> {
        if d > 2.0 + TOL {
            return Ok(SubRef::Single);
        }
        if let Some(&t) = self.seen[pos].get(&d.to_bits()) {
            return Ok(SubRef::Table(t));
        }
        let body = match self.planner.plan(dim, d)? {
            NodePlan::Single => return Ok(SubRef::Single),
            NodePlan::Adhoc(code) => TableBody::Adhoc(code),
            NodePlan::Leaves { scheme, rows: plan_rows } => {
                let mut rows = Vec::with_capacity(plan_rows.len());
                for row in plan_rows {
                    let (m1, m2, content) = match row.kind {
                        RowKind::Torus { layout, swapped } => (
                            layout.m as u128,
                            layout.n_circles as u128,
                            RowContent::Torus { layout, swapped },
                        ),
                        RowKind::Diagonal { count } => (count as u128, 1, RowContent::Diagonal { count }),
                        RowKind::Product { cos_dist, sin_dist } => {
                            let cos = self.build(2 * pos + 1, dim / 2, cos_dist)?;
                            let sin = self.build(2 * pos + 2, dim / 2, sin_dist)?;
                            (
                                self.size(2 * pos + 1, cos),
                                self.size(2 * pos + 2, sin),
                                RowContent::Product { cos_dist, sin_dist, cos, sin },
                            )
                        }
                    };
                    rows.push(LeafRow::new(row.index, row.eta, m1, m2, content));
                }
                TableBody::Leaves { scheme, rows }
            }
        };
        let table = LeafTable::new(d, body, dim)?;
        let node = &mut self.nodes[pos];
        node.tables.push(table);
        let t = node.tables.len() - 1;
        self.seen[pos].insert(d.to_bits(), t);
        Ok(SubRef::Table(t))
    }

    fn size(&self, pos: usize, sub: SubRef) -> u128 {
        match sub {
            SubRef::Single => 1,
            SubRef::Table(t) => self.nodes[pos].tables[t].total,
        }
    }
}

/// Builds the tables of every tree node. The root table is `nodes[0].tables[0]`.
pub fn build_tables(spec: &CodeSpec) -> Result<CodeTables> {
    spec.validate()?;
    let count = spec.dim / 2 - 1;
    let mut nodes = Vec::with_capacity(count);
    for pos in 0..count {
        // Position p lies on level ⌊log₂(p + 1)⌋.
        let dim = spec.dim >> (pos + 1).ilog2();
        nodes.push(TreeNode { position: pos, dim, tables: Vec::new() });
    }
    let mut builder = Builder { planner: Planner::new(spec.variant), nodes, seen: vec![HashMap::new(); count] };
    let root = builder.build(0, spec.dim, spec.dmin)?;
    debug_assert_eq!(root, SubRef::Table(0));
    let total = builder.nodes[0].tables[0].total;
    Ok(CodeTables { spec: *spec, nodes: builder.nodes, total })
}

impl CodeTables {
    pub(crate) fn from_parts(spec: CodeSpec, nodes: Vec<TreeNode>) -> Result<Self> {
        let total = nodes
            .first()
            .and_then(|n| n.tables.first())
            .map(|t| t.total)
            .ok_or_else(|| Error::Format("tables have no root".into()))?;
        Ok(CodeTables { spec, nodes, total })
    }

    /// Number of codewords.
    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn cardinality(&self) -> BigUint {
        self.total.into()
    }

    pub fn root(&self) -> &LeafTable {
        &self.nodes[0].tables[0]
    }

    pub fn table(&self, pos: usize, t: usize) -> &LeafTable {
        &self.nodes[pos].tables[t]
    }

    /// Number of codewords of a subcode.
    pub fn sub_len(&self, pos: usize, sub: SubRef) -> u128 {
        match sub {
            SubRef::Single => 1,
            SubRef::Table(t) => self.nodes[pos].tables[t].total,
        }
    }

    /// Total row count over all tables.
    pub fn row_count(&self) -> usize {
        self.nodes.iter().flat_map(|n| &n.tables).map(|t| t.rows().len()).sum()
    }

    /// Cardinality recomputed from the row counts alone.
    pub fn recount(&self) -> BigUint {
        fn table_count(tables: &CodeTables, pos: usize, t: &LeafTable) -> BigUint {
            match &t.body {
                TableBody::Adhoc(code) => BigUint::from(code.len(tables.nodes[pos].dim)),
                TableBody::Leaves { rows, .. } => rows
                    .iter()
                    .map(|row| match row.content {
                        RowContent::Product { cos, sin, .. } => {
                            sub_count(tables, 2 * pos + 1, cos) * sub_count(tables, 2 * pos + 2, sin)
                        }
                        _ => BigUint::from(row.m1) * BigUint::from(row.m2),
                    })
                    .sum(),
            }
        }
        fn sub_count(tables: &CodeTables, pos: usize, sub: SubRef) -> BigUint {
            match sub {
                SubRef::Single => BigUint::from(1u8),
                SubRef::Table(t) => table_count(tables, pos, &tables.nodes[pos].tables[t]),
            }
        }
        table_count(self, 0, self.root())
    }

    /// Writes codeword `a` into `out`, which must have length `dim`.
    pub fn write_point(&self, a: u128, out: &mut [f64]) -> Result<()> {
        if a >= self.total {
            return Err(Error::IndexOutOfRange { index: a.into(), total: self.total.into() });
        }
        assert_eq!(out.len(), self.spec.dim, "output length must equal the code dimension");
        self.write_sub(0, SubRef::Table(0), a, out);
        Ok(())
    }

    pub(crate) fn write_sub(&self, pos: usize, sub: SubRef, a: u128, out: &mut [f64]) {
        let SubRef::Table(t) = sub else {
            out.fill(0.0);
            out[0] = 1.0;
            return;
        };
        let table = &self.nodes[pos].tables[t];
        let rows = match &table.body {
            TableBody::Adhoc(code) => return code.write_point(a as usize, out),
            TableBody::Leaves { rows, .. } => rows,
        };
        let (r, a1, a2) = table.locate(a).expect("index checked by caller");
        let row = &rows[r];
        self.write_row(pos, row, a - table.prefix[r], a1, a2, out);
    }

    /// Writes the point with offset `local = a₂·m1 + a₁` of `row`.
    pub(crate) fn write_row(&self, pos: usize, row: &LeafRow, local: u128, a1: u128, a2: u128, out: &mut [f64]) {
        match row.content {
            RowContent::Torus { layout, swapped } => {
                let p = layout.embed_with(local as u64, row.radii);
                if swapped {
                    out.copy_from_slice(&[p[2], p[3], p[0], p[1]]);
                } else {
                    out.copy_from_slice(&p);
                }
            }
            RowContent::Diagonal { count } => out.copy_from_slice(&diagonal_point_with(row.radii, count, local as u64)),
            RowContent::Product { cos, sin, .. } => {
                let (s, c) = row.radii;
                let (lo, hi) = out.split_at_mut(out.len() / 2);
                self.write_sub(2 * pos + 1, cos, a1, lo);
                self.write_sub(2 * pos + 2, sin, a2, hi);
                lo.iter_mut().for_each(|x| *x *= c);
                hi.iter_mut().for_each(|x| *x *= s);
            }
        }
    }

    pub fn encode(&self, a: u128) -> Result<Codeword> {
        let mut coords = vec![0.0; self.spec.dim];
        self.write_point(a, &mut coords)?;
        Ok(Codeword { index: a, coords })
    }

    /// All codeword coordinates in index order, row-major.
    pub fn points_flat(&self, cap: u128) -> Result<Vec<f64>> {
        self.check_cap(cap)?;
        let dim = self.spec.dim;
        let mut flat = vec![0.0; self.total as usize * dim];
        for (a, chunk) in flat.chunks_exact_mut(dim).enumerate() {
            self.write_sub(0, SubRef::Table(0), a as u128, chunk);
        }
        Ok(flat)
    }

    pub(crate) fn check_cap(&self, cap: u128) -> Result<()> {
        if self.total > cap {
            return Err(Error::Resource(format!(
                "code has {} points, above the enumeration cap of {cap}",
                self.total
            )));
        }
        Ok(())
    }
}

/// Codeword with index `a`.
pub fn encode(tables: &CodeTables, a: u128) -> Result<Codeword> {
    tables.encode(a)
}

/// Every codeword in index order, refusing codes larger than `cap`.
pub fn enumerate(tables: &CodeTables, cap: u128) -> Result<Vec<Codeword>> {
    let dim = tables.spec.dim;
    let flat = tables.points_flat(cap)?;
    Ok(flat
        .chunks_exact(dim)
        .enumerate()
        .map(|(a, c)| Codeword { index: a as u128, coords: c.to_vec() })
        .collect())
}
