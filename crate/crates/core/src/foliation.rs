//! Leaves of the Hopf foliation of `S^{2n-1}`.
//!
//! The sphere `S^{2n-1}` decomposes into products `S^{n-1}_{cos η} × S^{n-1}_{sin η}`
//! for `η ∈ [0, π/2]`. Two leaves are `2 sin(|η - η'|/2)` apart, so picking leaves
//! on an angular grid of step `Δη = 2 arcsin(d/2)` keeps points on distinct leaves
//! at least `d` apart. This module holds that grid arithmetic and the leaf schemes
//! used by the construction.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used for every separation comparison.
pub const TOL: f64 = 1e-12;

/// `⌊x⌋` as a count. Negative and non-finite inputs map to zero.
#[inline]
pub(crate) fn floor_count(x: f64) -> u64 {
    if x.is_finite() && x > 0.0 {
        x.floor() as u64
    } else {
        0
    }
}

pub(crate) fn check_distance(d: f64) -> Result<()> {
    if d.is_finite() && d > 0.0 && d <= 2.0 + TOL {
        Ok(())
    } else {
        Err(Error::Domain(format!("minimum distance {d} is outside (0, 2]")))
    }
}

/// A leaf parameter `η ∈ [0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LeafAngle(f64);

impl LeafAngle {
    pub const QUARTER: LeafAngle = LeafAngle(FRAC_PI_4);

    /// Values within [`TOL`] outside `[0, π/2]` are clamped onto the interval.
    pub fn new(eta: f64) -> Result<Self> {
        if !eta.is_finite() || !(-TOL..=FRAC_PI_2 + TOL).contains(&eta) {
            return Err(Error::Domain(format!("leaf angle {eta} is outside [0, π/2]")));
        }
        Ok(LeafAngle(eta.clamp(0.0, FRAC_PI_2)))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// The leaf `π/2 - η`, obtained by swapping the two half-blocks.
    pub fn mirror(self) -> Self {
        LeafAngle((FRAC_PI_2 - self.0).clamp(0.0, FRAC_PI_2))
    }

    /// `η = 0`: the sine factor collapses to a point.
    pub fn is_zero(self) -> bool {
        self.0 <= TOL
    }

    /// `η = π/2`: the cosine factor collapses to a point.
    pub fn is_half_pi(self) -> bool {
        FRAC_PI_2 - self.0 <= TOL
    }

    pub fn is_degenerate(self) -> bool {
        self.is_zero() || self.is_half_pi()
    }
}

/// How leaf angles are laid out on `[0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "eta0")]
pub enum LeafScheme {
    /// `π/4 + kΔη` for `k ∈ [-⌊t/2⌋, ⌊t/2⌋]`.
    Symmetric,
    /// `kΔη` for `k ∈ [0, t]`.
    FromZero,
    /// `π/2 - kΔη` for `k ∈ [0, t]`.
    FromHalfPi,
    /// `η₀ + kΔη` for `k ∈ [0, t]`, with `0 ≤ η₀ ≤ (π/2 - tΔη)/2`.
    Offset(f64),
}

impl std::fmt::Display for LeafScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LeafScheme::Symmetric => write!(f, "symmetric"),
            LeafScheme::FromZero => write!(f, "from-zero"),
            LeafScheme::FromHalfPi => write!(f, "from-half-pi"),
            LeafScheme::Offset(eta0) => write!(f, "offset({eta0})"),
        }
    }
}

/// One leaf chosen by a scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacedLeaf {
    /// Position `k` of the leaf in its scheme (signed for the symmetric scheme).
    pub index: i64,
    pub eta: LeafAngle,
    /// The leaf whose layout, block-swapped, reproduces this one. For the
    /// symmetric scheme this is the exact `π/4 + |k|Δη` of the opposite side.
    pub mirror: LeafAngle,
}

/// `Δη = 2 arcsin(d/2)`, the smallest angular gap between leaves at distance `d`.
pub fn minimal_leaf_separation(d: f64) -> Result<f64> {
    check_distance(d)?;
    Ok(2.0 * (d / 2.0).min(1.0).asin())
}

/// `t(d) = ⌊π / (4 arcsin(d/2))⌋`.
pub fn leaf_count(d: f64) -> Result<u64> {
    check_distance(d)?;
    Ok(floor_count(PI / (4.0 * (d / 2.0).min(1.0).asin())))
}

/// Minimum distance between the leaves at `eta` and `eta2`.
pub fn leaf_distance(eta: LeafAngle, eta2: LeafAngle) -> f64 {
    2.0 * ((eta.value() - eta2.value()).abs() / 2.0).sin()
}

/// Ascending leaf angles for distance `d` under `scheme`.
pub fn leaf_angles(d: f64, scheme: LeafScheme) -> Result<Vec<LeafAngle>> {
    Ok(place_leaves(d, scheme)?.into_iter().map(|l| l.eta).collect())
}

/// Leaves for distance `d` under `scheme`, sorted by ascending angle.
pub fn place_leaves(d: f64, scheme: LeafScheme) -> Result<Vec<PlacedLeaf>> {
    let t = leaf_count(d)? as i64;
    let step = minimal_leaf_separation(d)?;
    let plain = |index: i64, eta: f64| -> Result<PlacedLeaf> {
        let eta = LeafAngle::new(eta)?;
        Ok(PlacedLeaf { index, eta, mirror: eta.mirror() })
    };
    let mut leaves = match scheme {
        LeafScheme::Symmetric => {
            let half = t / 2;
            (-half..=half)
                .map(|i| {
                    let eta = LeafAngle::new(FRAC_PI_4 + i as f64 * step)?;
                    let mirror = if i < 0 {
                        LeafAngle::new(FRAC_PI_4 + (-i) as f64 * step)?
                    } else {
                        eta.mirror()
                    };
                    Ok(PlacedLeaf { index: i, eta, mirror })
                })
                .collect::<Result<Vec<_>>>()?
        }
        LeafScheme::FromZero => (0..=t)
            .map(|k| plain(k, k as f64 * step))
            .collect::<Result<Vec<_>>>()?,
        LeafScheme::FromHalfPi => (0..=t)
            .rev()
            .map(|k| plain(k, FRAC_PI_2 - k as f64 * step))
            .collect::<Result<Vec<_>>>()?,
        LeafScheme::Offset(eta0) => {
            let max = (FRAC_PI_2 - t as f64 * step) / 2.0;
            if !eta0.is_finite() || eta0 < -TOL || eta0 > max + TOL {
                return Err(Error::Domain(format!(
                    "offset {eta0} is outside [0, {max}] for distance {d}"
                )));
            }
            let eta0 = eta0.clamp(0.0, max.max(0.0));
            (0..=t)
                .map(|k| plain(k, eta0 + k as f64 * step))
                .collect::<Result<Vec<_>>>()?
        }
    };
    leaves.sort_by(|a, b| a.eta.value().total_cmp(&b.eta.value()));
    Ok(leaves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn separation_values() {
        assert_abs_diff_eq!(minimal_leaf_separation(1.0).unwrap(), PI / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(minimal_leaf_separation(2.0).unwrap(), PI, epsilon = 1e-15);
        // 2·asin(0.25) from a 30-digit evaluation.
        assert_abs_diff_eq!(
            minimal_leaf_separation(0.5).unwrap(),
            0.505_360_510_284_157_3,
            epsilon = 1e-15
        );
    }

    #[test]
    fn counts() {
        assert_eq!(leaf_count(1.0).unwrap(), 1);
        assert_eq!(leaf_count(2.0).unwrap(), 0);
        assert_eq!(leaf_count(0.5).unwrap(), 3);
    }

    #[test]
    fn domain_errors() {
        for d in [0.0, -1.0, 2.1, f64::NAN, f64::INFINITY] {
            assert!(minimal_leaf_separation(d).is_err());
            assert!(leaf_count(d).is_err());
            assert!(leaf_angles(d, LeafScheme::Symmetric).is_err());
        }
        assert!(LeafAngle::new(2.0).is_err());
        assert!(LeafAngle::new(-0.1).is_err());
    }

    #[test]
    fn leaf_distance_values() {
        let a = LeafAngle::new(0.3).unwrap();
        assert_eq!(leaf_distance(a, a), 0.0);
        let zero = LeafAngle::new(0.0).unwrap();
        let top = LeafAngle::new(FRAC_PI_2).unwrap();
        assert_abs_diff_eq!(leaf_distance(zero, top), 2f64.sqrt(), epsilon = 1e-15);
        let (a, b) = (LeafAngle::new(PI / 12.0).unwrap(), LeafAngle::new(5.0 * PI / 12.0).unwrap());
        assert_abs_diff_eq!(leaf_distance(a, b), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn leaf_distance_matches_sampled_point_pairs() {
        // Minimise |x - x'| over points (cos η u, sin η v) and (cos η' u', sin η' v')
        // on S^3, sampling the circle angles on a grid.
        let (e1, e2) = (PI / 12.0, 5.0 * PI / 12.0);
        let steps = 48;
        let mut best = f64::MAX;
        for a in 0..steps {
            for b in 0..steps {
                let (p, q) = (
                    2.0 * PI * a as f64 / steps as f64,
                    2.0 * PI * b as f64 / steps as f64,
                );
                let x = [e1.cos(), 0.0, e1.sin(), 0.0];
                let y = [e2.cos() * p.cos(), e2.cos() * p.sin(), e2.sin() * q.cos(), e2.sin() * q.sin()];
                let dist = x.iter().zip(&y).map(|(u, v)| (u - v).powi(2)).sum::<f64>().sqrt();
                best = best.min(dist);
            }
        }
        let formula = leaf_distance(LeafAngle::new(e1).unwrap(), LeafAngle::new(e2).unwrap());
        assert_abs_diff_eq!(best, formula, epsilon = 1e-12);
    }

    #[test]
    fn schemes_at_unit_distance() {
        let sym = leaf_angles(1.0, LeafScheme::Symmetric).unwrap();
        assert_eq!(sym.len(), 1);
        assert_abs_diff_eq!(sym[0].value(), FRAC_PI_4);
        let zero = leaf_angles(1.0, LeafScheme::FromZero).unwrap();
        assert_eq!(zero.len(), 2);
        assert_abs_diff_eq!(zero[0].value(), 0.0);
        assert_abs_diff_eq!(zero[1].value(), PI / 3.0, epsilon = 1e-15);
        let top = leaf_angles(1.0, LeafScheme::FromHalfPi).unwrap();
        assert_abs_diff_eq!(top[0].value(), PI / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(top[1].value(), FRAC_PI_2);
    }

    #[test]
    fn symmetric_half_distance() {
        let sym = leaf_angles(0.5, LeafScheme::Symmetric).unwrap();
        let step = 0.505_360_510_284_157_3;
        let expected = [FRAC_PI_4 - step, FRAC_PI_4, FRAC_PI_4 + step];
        for (got, want) in sym.iter().zip(expected) {
            assert_abs_diff_eq!(got.value(), want, epsilon = 1e-14);
        }
        assert_abs_diff_eq!(sym[0].value(), 0.2800, epsilon = 1e-4);
        assert_abs_diff_eq!(sym[2].value(), 1.2907, epsilon = 1e-4);
    }

    #[test]
    fn full_distance_keeps_center_leaf() {
        let sym = leaf_angles(2.0, LeafScheme::Symmetric).unwrap();
        assert_eq!(sym, vec![LeafAngle::QUARTER]);
    }

    #[test]
    fn offset_bounds() {
        // t(1) = 1, Δη = π/3, so η₀ ≤ (π/2 - π/3)/2 = π/12.
        let leaves = leaf_angles(1.0, LeafScheme::Offset(PI / 12.0)).unwrap();
        assert_abs_diff_eq!(leaves[0].value(), PI / 12.0, epsilon = 1e-15);
        assert_abs_diff_eq!(leaves[1].value(), 5.0 * PI / 12.0, epsilon = 1e-15);
        assert!(leaf_angles(1.0, LeafScheme::Offset(0.3)).is_err());
        assert!(leaf_angles(1.0, LeafScheme::Offset(-0.1)).is_err());
    }

    #[test]
    fn symmetric_mirror_uses_positive_side() {
        let leaves = place_leaves(0.5, LeafScheme::Symmetric).unwrap();
        assert_eq!(leaves[0].index, -1);
        assert_eq!(leaves[0].mirror, leaves[2].eta);
    }

    fn scheme_strategy() -> impl Strategy<Value = LeafScheme> {
        prop_oneof![
            Just(LeafScheme::Symmetric),
            Just(LeafScheme::FromZero),
            Just(LeafScheme::FromHalfPi),
        ]
    }

    proptest! {
        #[test]
        fn leaves_are_separated(d in 0.01f64..=2.0, scheme in scheme_strategy()) {
            let leaves = leaf_angles(d, scheme).unwrap();
            for w in leaves.windows(2) {
                prop_assert!(w[1].value() >= w[0].value());
            }
            for (i, a) in leaves.iter().enumerate() {
                for b in &leaves[i + 1..] {
                    prop_assert!(leaf_distance(*a, *b) >= d - 1e-12);
                }
            }
        }

        #[test]
        fn symmetric_set_is_mirror_invariant(d in 0.01f64..=2.0) {
            let leaves = leaf_angles(d, LeafScheme::Symmetric).unwrap();
            for (a, b) in leaves.iter().zip(leaves.iter().rev()) {
                prop_assert!((a.value() - b.mirror().value()).abs() <= 1e-12);
            }
        }

        #[test]
        fn separation_increasing_and_count_nonincreasing(a in 0.01f64..2.0, b in 0.01f64..2.0) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assume!(hi > lo);
            prop_assert!(minimal_leaf_separation(lo).unwrap() < minimal_leaf_separation(hi).unwrap());
            prop_assert!(leaf_count(lo).unwrap() >= leaf_count(hi).unwrap());
        }
    }
}
