//! Point layouts on the flat tori `T²_η = S¹_{cos η} × S¹_{sin η}` foliating `S³`.
//!
//! A torus carries `n` internal circles at `ξ₂ = k·2π/n`, each holding `m`
//! equidistant points. Consecutive circles are shifted by half a step (`π/m`) in
//! `ξ₁`, which lets them sit closer together; the circle count is kept even so the
//! first and last circles also alternate.
//!
//! Points are ordered k-major: index `a = k·m + j`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foliation::{check_distance, floor_count, LeafAngle, TOL};

/// Point count of a unit-radius circle at minimum distance `d`: `⌊π/arcsin(d/2)⌋`.
///
/// This is also the capacity of a Hopf fibre ("diagonal" circle) lying in any torus
/// and of the live circle of a degenerate leaf. A count lost to rounding when the
/// chord `2 sin(π/n)` equals `d` is restored.
pub fn diagonal_circle_count(d: f64) -> Result<u64> {
    check_distance(d)?;
    let n = floor_count(PI / (d / 2.0).min(1.0).asin()).max(1);
    if 2.0 * (PI / (n + 1) as f64).sin() >= d - TOL {
        Ok(n + 1)
    } else {
        Ok(n)
    }
}

/// Points per internal circle of radius `cos η`.
pub fn points_per_circle(d: f64, eta: LeafAngle) -> Result<u64> {
    check_distance(d)?;
    if eta.is_half_pi() {
        return Ok(1);
    }
    if eta.is_zero() {
        return diagonal_circle_count(d);
    }
    let c = eta.value().cos();
    if d <= 2.0 * c + TOL {
        Ok(floor_count(PI / (d / (2.0 * c)).min(1.0).asin()).max(1))
    } else {
        Ok(1)
    }
}

/// Number of internal circles when each carries `m` points.
pub fn circles_per_torus(d: f64, eta: LeafAngle, m: u64) -> Result<u64> {
    check_distance(d)?;
    if m == 0 {
        return Err(Error::Domain("a circle must carry at least one point".into()));
    }
    if eta.is_zero() {
        return Ok(1);
    }
    if eta.is_half_pi() {
        return diagonal_circle_count(d);
    }
    let (s, c) = eta.value().sin_cos();
    let half_step = (PI / (2.0 * m as f64)).sin();
    let radicand = d * d / 4.0 / s / s - (c / s).powi(2) * half_step.powi(2);
    let n1 = if radicand <= 0.0 || radicand.sqrt() > 1.0 {
        1
    } else {
        floor_count(PI / radicand.sqrt().asin())
    };
    let n2 = if d <= 2.0 * s + TOL {
        floor_count(2.0 * PI / (d / (2.0 * s)).min(1.0).asin())
    } else {
        1
    };
    Ok((2 * (n1.min(n2) / 2)).max(1))
}

/// Layout of one torus: `m` points on each of `n_circles` internal circles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusLayout {
    pub eta: LeafAngle,
    pub m: u64,
    pub n_circles: u64,
}

/// A point of `S³` in torus coordinates `(η; ξ₁, ξ₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPoint {
    pub eta: LeafAngle,
    pub xi1: f64,
    pub xi2: f64,
}

impl TorusPoint {
    /// `ι(η; ξ₁, ξ₂) = (cos η cos ξ₁, cos η sin ξ₁, sin η cos ξ₂, sin η sin ξ₂)`.
    pub fn embed(&self) -> [f64; 4] {
        self.embed_with(leaf_radii(self.eta))
    }

    /// [`Self::embed`] with `(sin η, cos η)` supplied.
    #[inline]
    pub(crate) fn embed_with(&self, (s, c): (f64, f64)) -> [f64; 4] {
        let (s1, c1) = self.xi1.sin_cos();
        let (s2, c2) = self.xi2.sin_cos();
        [c * c1, c * s1, s * c2, s * s2]
    }
}

/// `(sin η, cos η)` with the collapsed factor set to exactly zero on degenerate leaves.
#[inline]
pub(crate) fn leaf_radii(eta: LeafAngle) -> (f64, f64) {
    if eta.is_zero() {
        (0.0, 1.0)
    } else if eta.is_half_pi() {
        (1.0, 0.0)
    } else {
        eta.value().sin_cos()
    }
}

impl TorusLayout {
    /// The standard layout for minimum distance `d` on the torus at `eta`.
    pub fn for_distance(d: f64, eta: LeafAngle) -> Result<Self> {
        let m = points_per_circle(d, eta)?;
        let n_circles = circles_per_torus(d, eta, m)?;
        Ok(TorusLayout { eta, m, n_circles })
    }

    pub fn len(&self) -> u64 {
        self.m * self.n_circles
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `Δξ₁ = 2π/m`.
    pub fn dxi1(&self) -> f64 {
        2.0 * PI / self.m as f64
    }

    /// `Δξ₂ = 2π/n`.
    pub fn dxi2(&self) -> f64 {
        2.0 * PI / self.n_circles as f64
    }

    /// Torus coordinates of point `a`, with `j = a mod m` and `k = ⌊a/m⌋`.
    pub fn point(&self, a: u64) -> TorusPoint {
        let m = self.m as f64;
        let (j, k) = ((a % self.m) as f64, (a / self.m) as f64);
        TorusPoint {
            eta: self.eta,
            xi1: j * (2.0 * PI / m) + k * (PI / m),
            xi2: k * (2.0 * PI / self.n_circles as f64),
        }
    }

    pub fn embed(&self, a: u64) -> [f64; 4] {
        self.point(a).embed()
    }

    pub(crate) fn embed_with(&self, a: u64, radii: (f64, f64)) -> [f64; 4] {
        self.point(a).embed_with(radii)
    }

    /// Index of the layout point nearest to angles `(ξ₁, ξ₂)` by rounding
    /// `ξ₂` to a circle, then `ξ₁` to a point on that circle.
    pub fn round(&self, xi1: f64, xi2: f64) -> u64 {
        self.round_on_circle(xi1, self.nearest_circle(xi2))
    }

    /// `⌊ξ₂/Δξ₂⌉ mod n`.
    pub fn nearest_circle(&self, xi2: f64) -> u64 {
        round_mod(xi2 / self.dxi2(), self.n_circles)
    }

    /// Index of the point of circle `k` nearest to angle `ξ₁`.
    pub fn round_on_circle(&self, xi1: f64, k: u64) -> u64 {
        let shift = k as f64 * PI / self.m as f64;
        let j = round_mod((xi1 - shift) / self.dxi1(), self.m);
        k * self.m + j
    }
}

/// `⌊x⌉ mod n` for possibly negative `x`.
fn round_mod(x: f64, n: u64) -> u64 {
    (x.round() as i64).rem_euclid(n as i64) as u64
}

/// Every point of a layout in index order.
pub fn torus_points(layout: &TorusLayout) -> Vec<[f64; 4]> {
    (0..layout.len()).map(|a| layout.embed(a)).collect()
}

/// Points on the Hopf fibre through `(cos η, 0, sin η, 0)`:
/// `(cos η e^{iθ}, sin η e^{iθ})` with `θ = 2πj/count`.
pub fn diagonal_point(eta: LeafAngle, count: u64, j: u64) -> [f64; 4] {
    diagonal_point_with(leaf_radii(eta), count, j)
}

pub(crate) fn diagonal_point_with((s, c): (f64, f64), count: u64, j: u64) -> [f64; 4] {
    let theta = 2.0 * PI * j as f64 / count as f64;
    let (st, ct) = theta.sin_cos();
    [c * ct, c * st, s * ct, s * st]
}

/// Nearest point of a diagonal circle to `y`.
pub fn diagonal_round(eta: LeafAngle, count: u64, y: &[f64; 4]) -> u64 {
    let (s, c) = leaf_radii(eta);
    let re = c * y[0] + s * y[2];
    let im = c * y[1] + s * y[3];
    let theta = im.atan2(re);
    round_mod(theta / (2.0 * PI / count as f64), count)
}

/// Angles `(η; ξ₁, ξ₂)` of a point of `S³`, with `ξ₁, ξ₂ ∈ [0, 2π)`.
///
/// A vanishing coordinate pair gets angle 0.
pub fn angles_from_point(y: &[f64; 4]) -> (LeafAngle, f64, f64) {
    let a = y[0].hypot(y[1]);
    let b = y[2].hypot(y[3]);
    let eta = b.atan2(a).clamp(0.0, FRAC_PI_2);
    let wrap = |t: f64| {
        let t = t.rem_euclid(2.0 * PI);
        if t >= 2.0 * PI {
            0.0
        } else {
            t
        }
    };
    (LeafAngle::new(eta).expect("atan2 of norms lies in [0, π/2]"), wrap(y[1].atan2(y[0])), wrap(y[3].atan2(y[2])))
}
