//! Construction decisions for each `(dimension, distance)` node of the recursion.
//!
//! The standard construction uses the symmetric leaf scheme everywhere, with the
//! leaves below `π/4` obtained from their mirror images above `π/4`. The modified
//! construction searches a fixed set of leaf schemes per node, lets each
//! four-dimensional leaf pick its best orientation or a single Hopf fibre, and
//! substitutes explicit codes where they are larger.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use super::adhoc::{best_adhoc, AdhocCode};
use super::Variant;
use crate::error::Result;
use crate::foliation::{place_leaves, LeafAngle, LeafScheme, PlacedLeaf, TOL};
use crate::torus4::{diagonal_circle_count, leaf_radii, TorusLayout};

/// Number of interior offsets tried by the modified construction.
pub const OFFSET_STEPS: u32 = 8;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum NodePlan {
    /// Scaled distance beyond 2: a single point.
    Single,
    Adhoc(AdhocCode),
    Leaves { scheme: LeafScheme, rows: Vec<RowPlan> },
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RowPlan {
    pub index: i64,
    pub eta: LeafAngle,
    pub kind: RowKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum RowKind {
    /// Four-dimensional leaf laid out on the torus `layout.eta`, optionally with
    /// the two coordinate pairs swapped.
    Torus { layout: TorusLayout, swapped: bool },
    /// Four-dimensional leaf carrying one Hopf fibre.
    Diagonal { count: u64 },
    /// Product of codes on the two half-spheres at these scaled distances.
    Product { cos_dist: f64, sin_dist: f64 },
}

pub(crate) struct Planner {
    variant: Variant,
    counts: HashMap<(usize, u64), BigUint>,
}

fn is_single(d: f64) -> bool {
    d > 2.0 + TOL
}

/// Scaled distances `(d / cos η, d / sin η)` for the two half-spheres of a leaf.
fn scaled(d: f64, eta: LeafAngle) -> (f64, f64) {
    if eta.is_degenerate() {
        let (s, c) = leaf_radii(eta);
        (d / c, d / s)
    } else {
        (d / eta.value().cos(), d / eta.value().sin())
    }
}

fn torus_row(d: f64, leaf: &PlacedLeaf, swapped: bool) -> Result<RowKind> {
    let at = if swapped { leaf.mirror } else { leaf.eta };
    Ok(RowKind::Torus { layout: TorusLayout::for_distance(d, at)?, swapped })
}

fn modified_schemes(d: f64) -> Result<Vec<LeafScheme>> {
    let mut schemes = vec![LeafScheme::Symmetric, LeafScheme::FromZero, LeafScheme::FromHalfPi];
    let t = crate::foliation::leaf_count(d)? as f64;
    let step = crate::foliation::minimal_leaf_separation(d)?;
    let max = ((std::f64::consts::FRAC_PI_2 - t * step) / 2.0).max(0.0);
    schemes.extend((1..=OFFSET_STEPS).map(|j| LeafScheme::Offset(max * j as f64 / OFFSET_STEPS as f64)));
    Ok(schemes)
}

impl Planner {
    pub fn new(variant: Variant) -> Self {
        Planner { variant, counts: HashMap::new() }
    }

    /// Cardinality of the node code in `dim` dimensions at distance `d`.
    pub fn count(&mut self, dim: usize, d: f64) -> Result<BigUint> {
        if is_single(d) {
            return Ok(BigUint::one());
        }
        let key = (dim, d.to_bits());
        if let Some(c) = self.counts.get(&key) {
            return Ok(c.clone());
        }
        let plan = self.plan(dim, d)?;
        let c = self.plan_count(dim, &plan)?;
        self.counts.insert(key, c.clone());
        Ok(c)
    }

    pub fn plan_count(&mut self, dim: usize, plan: &NodePlan) -> Result<BigUint> {
        Ok(match plan {
            NodePlan::Single => BigUint::one(),
            NodePlan::Adhoc(code) => BigUint::from(code.len(dim)),
            NodePlan::Leaves { rows, .. } => {
                let mut total = BigUint::default();
                for row in rows {
                    total += self.row_count(dim, &row.kind)?;
                }
                total
            }
        })
    }

    fn row_count(&mut self, dim: usize, kind: &RowKind) -> Result<BigUint> {
        Ok(match *kind {
            RowKind::Torus { layout, .. } => BigUint::from(layout.len()),
            RowKind::Diagonal { count } => BigUint::from(count),
            RowKind::Product { cos_dist, sin_dist } => {
                self.count(dim / 2, cos_dist)? * self.count(dim / 2, sin_dist)?
            }
        })
    }

    pub fn plan(&mut self, dim: usize, d: f64) -> Result<NodePlan> {
        if is_single(d) {
            return Ok(NodePlan::Single);
        }
        match self.variant {
            Variant::Standard => self.standard_plan(dim, d),
            Variant::Modified => self.modified_plan(dim, d),
        }
    }

    fn standard_plan(&mut self, dim: usize, d: f64) -> Result<NodePlan> {
        let rows = place_leaves(d, LeafScheme::Symmetric)?
            .iter()
            .map(|leaf| {
                let kind = if dim == 4 {
                    torus_row(d, leaf, leaf.index < 0)?
                } else {
                    let (cos_dist, sin_dist) = scaled(d, leaf.eta);
                    RowKind::Product { cos_dist, sin_dist }
                };
                Ok(RowPlan { index: leaf.index, eta: leaf.eta, kind })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NodePlan::Leaves { scheme: LeafScheme::Symmetric, rows })
    }

    fn modified_plan(&mut self, dim: usize, d: f64) -> Result<NodePlan> {
        let mut best: Option<(BigUint, NodePlan)> = None;
        for scheme in modified_schemes(d)? {
            let mut rows = Vec::new();
            for leaf in place_leaves(d, scheme)? {
                let kind = if dim == 4 {
                    self.best_r4_leaf(d, &leaf)?
                } else {
                    let (cos_dist, sin_dist) = scaled(d, leaf.eta);
                    RowKind::Product { cos_dist, sin_dist }
                };
                rows.push(RowPlan { index: leaf.index, eta: leaf.eta, kind });
            }
            let plan = NodePlan::Leaves { scheme, rows };
            let total = self.plan_count(dim, &plan)?;
            if best.as_ref().is_none_or(|(b, _)| total > *b) {
                best = Some((total, plan));
            }
        }
        let (total, plan) = best.expect("at least one scheme");
        if let Some(code) = best_adhoc(dim, d) {
            if BigUint::from(code.len(dim)) > total {
                return Ok(NodePlan::Adhoc(code));
            }
        }
        Ok(plan)
    }

    /// Direct layout, mirrored layout or a single fibre, whichever holds most points.
    fn best_r4_leaf(&self, d: f64, leaf: &PlacedLeaf) -> Result<RowKind> {
        let mut best = torus_row(d, leaf, false)?;
        let mut best_len = row_len(&best);
        let swapped = torus_row(d, leaf, true)?;
        if row_len(&swapped) > best_len {
            best_len = row_len(&swapped);
            best = swapped;
        }
        let count = diagonal_circle_count(d)?;
        if count > best_len {
            best = RowKind::Diagonal { count };
        }
        Ok(best)
    }
}

fn row_len(kind: &RowKind) -> u64 {
    match kind {
        RowKind::Torus { layout, .. } => layout.len(),
        RowKind::Diagonal { count } => *count,
        RowKind::Product { .. } => unreachable!("only used for four-dimensional leaves"),
    }
}
