//! Measures on spheres, packing densities and the asymptotic behaviour of the
//! construction as `d → 0`.
//!
//! `𝕊_n` is the surface measure of the unit sphere `S^{n-1} ⊂ R^n` and `𝕍_n` the
//! volume of the unit ball of `R^n`.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::foliation::check_distance;

fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `ln 𝕊_n = ln n + (n/2) ln π - ln Γ(1 + n/2)`.
pub fn ln_sphere_surface(n: u32) -> f64 {
    let n = n as f64;
    n.ln() + n / 2.0 * PI.ln() - ln_gamma(1.0 + n / 2.0)
}

/// `𝕊_n = n π^{n/2} / Γ(1 + n/2)`.
pub fn sphere_surface(n: u32) -> f64 {
    ln_sphere_surface(n).exp()
}

/// `𝕍_n = π^{n/2} / Γ(1 + n/2)`.
pub fn ball_volume(n: u32) -> f64 {
    (n as f64 / 2.0 * PI.ln() - ln_gamma(1.0 + n as f64 / 2.0)).exp()
}

/// `∫_a^b sin^p x dx` to relative accuracy about `1e-12`.
pub fn sine_power_integral(p: u32, a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let f = |x: f64| x.sin().powi(p as i32);
    let rough = quadrature::double_exponential::integrate(f, a, b, 1e-6).integral;
    let target = (rough.abs() * 1e-13).max(f64::MIN_POSITIVE);
    quadrature::double_exponential::integrate(f, a, b, target).integral
}

/// Area of the cap of `S^{n-1}` with angular radius `θ/2`, `θ = 2 arcsin(d/2)`:
/// `𝕊_{n-1} ∫₀^{θ/2} sin^{n-2} x dx`.
pub fn cap_area(n: u32, d: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("cap areas need n ≥ 2, got {n}")));
    }
    check_distance(d)?;
    let half_angle = (d / 2.0).min(1.0).asin();
    Ok(sphere_surface(n - 1) * sine_power_integral(n - 2, 0.0, half_angle))
}

/// Fraction of `S^{n-1}` covered by `m` caps of angular radius `arcsin(d/2)`.
///
/// A value above one means the points cannot be `d` apart; it is reported as
/// [`Error::Infeasible`].
pub fn code_density(m: &BigUint, n: u32, d: f64) -> Result<f64> {
    let density = biguint_to_f64(m) * cap_area(n, d)? / sphere_surface(n);
    if density > 1.0 + 1e-9 {
        log::warn!("density {density} of {m} points at distance {d} in R^{n} exceeds one");
        return Err(Error::Infeasible(format!("density {density} exceeds one")));
    }
    Ok(density)
}

/// `M (d/2)^{n-1} / 𝕊_n`, the quantity whose limit as `d → 0` is the asymptotic
/// center density.
pub fn center_density(m: &BigUint, n: u32, d: f64) -> f64 {
    (ln_biguint(m) + (n as f64 - 1.0) * (d / 2.0).ln() - ln_sphere_surface(n)).exp()
}

/// `(log₂ M)/n`.
pub fn binary_rate(m: &BigUint, n: u32) -> f64 {
    ln_biguint(m) / std::f64::consts::LN_2 / n as f64
}

pub(crate) fn biguint_to_f64(m: &BigUint) -> f64 {
    m.to_f64().unwrap_or(f64::INFINITY)
}

/// `ln M`, exact enough for any size.
pub fn ln_biguint(m: &BigUint) -> f64 {
    let bits = m.bits();
    if bits <= 1000 {
        return biguint_to_f64(m).ln();
    }
    let shift = bits - 64;
    let top = (m >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    /// Cardinality as a decimal string.
    pub cardinality: String,
    pub dim: u32,
    pub dmin: f64,
    pub density: f64,
    pub center_density: f64,
    pub rate_per_dim: f64,
}

impl DensityReport {
    pub fn new(m: &BigUint, dim: u32, dmin: f64) -> Result<Self> {
        Ok(DensityReport {
            cardinality: m.to_string(),
            dim,
            dmin,
            density: code_density(m, dim, dmin)?,
            center_density: center_density(m, dim, dmin),
            rate_per_dim: binary_rate(m, dim),
        })
    }
}

impl fmt::Display for DensityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "M = {}", self.cardinality)?;
        writeln!(f, "dim = {}", self.dim)?;
        writeln!(f, "dmin = {:.16e}", self.dmin)?;
        writeln!(f, "density = {:.16e}", self.density)?;
        writeln!(f, "center_density = {:.16e}", self.center_density)?;
        write!(f, "rate_per_dim = {:.16e}", self.rate_per_dim)
    }
}

/// An exact density `2^a · 3^{b/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CenterDensity {
    pub pow2: i64,
    /// Exponent of 3 in halves.
    pub pow3_halves: i64,
}

impl CenterDensity {
    /// `1/(4√3)`, the asymptotic center density in `R⁴`.
    pub const R4: CenterDensity = CenterDensity { pow2: -2, pow3_halves: -1 };

    /// The density `Δ²/2` of the code built from half-dimensional codes of density `Δ`.
    pub fn doubled(self) -> Self {
        CenterDensity { pow2: 2 * self.pow2 - 1, pow3_halves: 2 * self.pow3_halves }
    }

    pub fn value(self) -> f64 {
        let whole = self.pow3_halves.div_euclid(2);
        let v = 2f64.powi(self.pow2 as i32) * 3f64.powi(whole as i32);
        if self.pow3_halves.rem_euclid(2) == 1 {
            v * 3f64.sqrt()
        } else {
            v
        }
    }

    pub fn ln(self) -> f64 {
        self.pow2 as f64 * std::f64::consts::LN_2 + self.pow3_halves as f64 / 2.0 * 3f64.ln()
    }
}

impl fmt::Display for CenterDensity {
    /// `1/N` or `1/(N√3)` for densities below one, otherwise `2^a·3^(b/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pow2 > 0 || self.pow3_halves > 0 {
            return write!(f, "2^{}·3^({}/2)", self.pow2, self.pow3_halves);
        }
        let b = -self.pow3_halves;
        let denom = (BigUint::one() << (-self.pow2) as u64) * BigUint::from(3u8).pow((b / 2) as u32);
        if b % 2 == 1 {
            write!(f, "1/({denom}√3)")
        } else {
            write!(f, "1/{denom}")
        }
    }
}

/// Asymptotic center density of the recursive code in dimension `2^k`:
/// `2^{1 - 3·2^{k-2}} · 3^{-2^{k-3}}`.
pub fn asymptotic_center_density(k: u32) -> Result<CenterDensity> {
    if !(2..=40).contains(&k) {
        return Err(Error::Domain(format!("k must lie in [2, 40], got {k}")));
    }
    let mut c = CenterDensity::R4;
    for _ in 2..k {
        c = c.doubled();
    }
    Ok(c)
}

/// `Δ²/2`.
pub fn doubled_density(half: f64) -> f64 {
    half * half / 2.0
}

/// Natural logarithm of [`asymptotic_cardinality`].
pub fn ln_asymptotic_cardinality(k: u32, d: f64) -> Result<f64> {
    check_distance(d)?;
    let c = asymptotic_center_density(k)?;
    let n = 1u32 << k;
    Ok(c.ln() + ln_sphere_surface(n) + (n as f64 - 1.0) * (2.0 / d).ln())
}

/// Asymptotic cardinality `Δ̄_c(k) · 𝕊_{2^k} · (2/d)^{2^k - 1}` of the recursive
/// code in dimension `2^k`. Infinite when it overflows `f64`.
pub fn asymptotic_cardinality(k: u32, d: f64) -> Result<f64> {
    Ok(ln_asymptotic_cardinality(k, d)?.exp())
}

/// Upper bound `Δ_c(Λ_{n/2}) · (4π / (d √(n/2)))^{n/2}` on the cardinality of
/// commutative group codes in `R^n` built from a lattice of center density `Δ_c`.
pub fn cgc_bound(n: u32, d: f64, lattice_center_density: f64) -> Result<f64> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Domain(format!("commutative group codes need an even dimension, got {n}")));
    }
    check_distance(d)?;
    let h = n as f64 / 2.0;
    Ok(lattice_center_density * (4.0 * PI / (d * h.sqrt())).powf(h))
}

/// Center density of the densest known lattice packing in `R^m`.
pub fn best_lattice_center_density(m: u32) -> Option<f64> {
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    Some(match m {
        1 => 0.5,
        2 => 1.0 / (2.0 * s3),
        3 => 1.0 / (4.0 * s2),
        4 => 1.0 / 8.0,
        5 => 1.0 / (8.0 * s2),
        6 => 1.0 / (8.0 * s3),
        7 => 1.0 / 16.0,
        8 => 1.0 / 16.0,
        16 => 1.0 / 16.0,
        24 => 1.0,
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn measures() {
        assert_relative_eq!(sphere_surface(2), 2.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(sphere_surface(3), 4.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(sphere_surface(4), 2.0 * PI * PI, max_relative = 1e-14);
        assert_relative_eq!(ball_volume(1), 2.0, max_relative = 1e-14);
        assert_relative_eq!(ball_volume(2), PI, max_relative = 1e-14);
        assert_relative_eq!(ball_volume(3), 4.0 * PI / 3.0, max_relative = 1e-14);
        for n in 1..40 {
            assert_relative_eq!(sphere_surface(n), n as f64 * ball_volume(n), max_relative = 1e-12);
        }
    }

    #[test]
    fn caps() {
        for i in 1..=20 {
            let d = 0.1 * i as f64;
            let closed = 2.0 * PI * (1.0 - (d / 2.0).asin().cos());
            assert_abs_diff_eq!(cap_area(3, d).unwrap(), closed, epsilon = 1e-9);
        }
        for n in 2..=16 {
            assert_abs_diff_eq!(cap_area(n, 2.0).unwrap(), sphere_surface(n) / 2.0, epsilon = 1e-9);
        }
        assert!(cap_area(1, 1.0).is_err());
        assert!(cap_area(4, 0.0).is_err());
    }

    #[test]
    fn small_caps_are_flat_balls() {
        for n in [3, 4, 8] {
            let d = 1e-4;
            let ratio = cap_area(n, d).unwrap() / (ball_volume(n - 1) * (d / 2.0).powi(n as i32 - 1));
            assert_abs_diff_eq!(ratio, 1.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn foliation_measure_identity() {
        for n in [2u32, 4, 8] {
            let lhs = sphere_surface(2 * n);
            let rhs = sphere_surface(n).powi(2) / 2f64.powi(n as i32) * sine_power_integral(n - 1, 0.0, PI);
            assert_relative_eq!(lhs, rhs, max_relative = 1e-9);
        }
    }

    #[test]
    fn densities() {
        let two = BigUint::from(2u8);
        for n in [2, 3, 4, 8] {
            assert_abs_diff_eq!(code_density(&two, n, 2.0).unwrap(), 1.0, epsilon = 1e-9);
        }
        let d = code_density(&BigUint::from(152u32), 4, 0.5).unwrap();
        assert!(d > 0.0 && d < 1.0);
        let one = code_density(&BigUint::one(), 4, 0.5).unwrap();
        assert_relative_eq!(one, cap_area(4, 0.5).unwrap() / sphere_surface(4), max_relative = 1e-15);
        assert!(matches!(code_density(&BigUint::from(3u8), 4, 2.0), Err(Error::Infeasible(_))));
    }

    #[test]
    fn exact_center_densities() {
        let expect = [(2, 1.0 / (4.0 * 3f64.sqrt())), (3, 1.0 / 96.0), (4, 1.0 / 18432.0), (5, 1.0 / 679477248.0)];
        for (k, v) in expect {
            let c = asymptotic_center_density(k).unwrap();
            assert_relative_eq!(c.value(), v, max_relative = 1e-15);
            // Closed form 2^{1-3·2^{k-2}} 3^{-2^{k-3}}.
            let closed = 2f64.powf(1.0 - 3.0 * 2f64.powi(k as i32 - 2)) * 3f64.powf(-(2f64.powi(k as i32 - 3)));
            assert_relative_eq!(c.value(), closed, max_relative = 1e-14);
        }
        assert_eq!(asymptotic_center_density(2).unwrap().to_string(), "1/(4√3)");
        assert_eq!(asymptotic_center_density(3).unwrap().to_string(), "1/96");
        assert_eq!(asymptotic_center_density(4).unwrap().to_string(), "1/18432");
        assert_eq!(asymptotic_center_density(5).unwrap().to_string(), "1/679477248");
        for k in 2..10 {
            let c = asymptotic_center_density(k).unwrap();
            assert_eq!(asymptotic_center_density(k + 1).unwrap(), c.doubled());
            assert_relative_eq!(doubled_density(c.value()), c.doubled().value(), max_relative = 1e-14);
        }
        assert!(asymptotic_center_density(1).is_err());
    }

    #[test]
    fn doubled_half_dimension_values() {
        assert_eq!(doubled_density(0.0), 0.0);
        // Half-dimension column: Δ₃ = 1/(4√2) gives 1/64 in R⁸, Δ₇ = 1/16 gives 1/512 in R¹⁶.
        assert_relative_eq!(doubled_density(best_lattice_center_density(3).unwrap()), 1.0 / 64.0, max_relative = 1e-15);
        assert_relative_eq!(doubled_density(best_lattice_center_density(7).unwrap()), 1.0 / 512.0, max_relative = 1e-15);
    }

    #[test]
    fn asymptotic_cardinalities() {
        let m = asymptotic_cardinality(2, 1e-3).unwrap();
        assert_relative_eq!(m, 2.279e10, max_relative = 1e-3);
        let m8 = asymptotic_cardinality(3, 0.01).unwrap();
        assert!(m8 > 4.28e15 && m8 < 4.4e15);
        for k in [2, 3, 4] {
            let ratio = asymptotic_cardinality(k, 0.05).unwrap() / asymptotic_cardinality(k, 0.1).unwrap();
            assert_relative_eq!(ratio, 2f64.powi((1 << k) - 1), max_relative = 1e-10);
        }
        assert!(ln_asymptotic_cardinality(12, 1e-3).unwrap().is_finite());
    }

    #[test]
    fn cgc() {
        let a2 = best_lattice_center_density(2).unwrap();
        let direct = a2 * (4.0 * PI / (0.1 * 2f64.sqrt())).powi(2);
        assert_relative_eq!(cgc_bound(4, 0.1, a2).unwrap(), direct, max_relative = 1e-14);
        for n in [4u32, 8, 16] {
            let ratio = cgc_bound(n, 0.05, 1.0).unwrap() / cgc_bound(n, 0.1, 1.0).unwrap();
            assert_relative_eq!(ratio, 2f64.powi(n as i32 / 2), max_relative = 1e-12);
        }
        assert!(cgc_bound(5, 0.1, 1.0).is_err());
    }

    #[test]
    fn rates() {
        assert_eq!(binary_rate(&BigUint::from(16u8), 4), 1.0);
        assert_eq!(binary_rate(&BigUint::one(), 4), 0.0);
        assert_relative_eq!(binary_rate(&BigUint::from(2608u32), 8), 2608f64.log2() / 8.0, max_relative = 1e-15);
        let huge = BigUint::one() << 2000u32;
        assert_relative_eq!(binary_rate(&huge, 8), 250.0, max_relative = 1e-12);
    }
}
