//! Refinement constants and right-hand sides of the polar-derivative bounds.
//!
//! Every bound here has the shape `factor * max_{|z|=1} |P(z)|`. The factor
//! is a pure scalar function (exposed separately so dominance relations can be
//! checked without any polynomial), and [`BoundValue`] pairs it with the
//! certified enclosure of `max |P|` it was applied to.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::{max_modulus, CertifiedMax};
use crate::error::{Error, Result};
use crate::poly::{Orientation, Polynomial, RadiusProfile};

/// Radii within this distance of 1 are treated as exactly 1.
pub const UNIT_RADIUS_SNAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundId {
    Bernstein,
    ErdosLax,
    Malik,
    AzizPolar,
    Theorem1,
    Theorem2,
    Corollary,
    Govil,
}

impl BoundId {
    pub const ALL: [BoundId; 8] = [
        BoundId::Bernstein,
        BoundId::ErdosLax,
        BoundId::Malik,
        BoundId::AzizPolar,
        BoundId::Theorem1,
        BoundId::Theorem2,
        BoundId::Corollary,
        BoundId::Govil,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundId::Bernstein => "bernstein",
            BoundId::ErdosLax => "erdos_lax",
            BoundId::Malik => "malik",
            BoundId::AzizPolar => "aziz_polar",
            BoundId::Theorem1 => "theorem1",
            BoundId::Theorem2 => "theorem2",
            BoundId::Corollary => "corollary",
            BoundId::Govil => "govil",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|b| b.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantBranch {
    AllStrict,
    SomeBoundary,
}

/// `t0` or `s0`: an extended real `>= 1` that may be `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefinementConstant {
    pub value: f64,
    pub branch: ConstantBranch,
}

impl RefinementConstant {
    // `value` is 1 up to the snap tolerance, kept on the side of 1 that
    // preserves `t0 >= min k` and `s0 >= 1/max k`.
    fn boundary(value: f64) -> Self {
        Self { value, branch: ConstantBranch::SomeBoundary }
    }

    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }
}

/// Neumaier-compensated sum.
fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn snaps_to_one(k: f64) -> bool {
    (k - 1.0).abs() <= UNIT_RADIUS_SNAP
}

/// `t0 = 1 + n / Σ 1/(k_ν - 1)`, or `1` when some `k_ν = 1`.
///
/// `t0 - 1` is the harmonic mean of the `k_ν - 1`, so the result is clamped
/// to `[min k, max k]` to keep rounding from breaking that bracket.
pub fn t0(profile: &RadiusProfile) -> Result<RefinementConstant> {
    profile.expect_orientation(Orientation::ZerosOutside)?;
    let radii = profile.radii();
    if radii.is_empty() {
        return Err(Error::Profile("empty radius profile".into()));
    }
    if radii.iter().any(|&k| snaps_to_one(k)) {
        return Ok(RefinementConstant::boundary(profile.min_radius()));
    }
    let n = radii.len() as f64;
    let sum = compensated_sum(radii.iter().map(|&k| 1.0 / (k - 1.0)));
    let value =
        if sum == 0.0 { f64::INFINITY } else { (1.0 + n / sum).clamp(profile.min_radius(), profile.max_radius()) };
    Ok(RefinementConstant { value, branch: ConstantBranch::AllStrict })
}

// `1/k` rounded so that `r * k >= 1` holds exactly.
fn reciprocal_up(k: f64) -> f64 {
    let r = 1.0 / k;
    if r.mul_add(k, -1.0) < 0.0 {
        r.next_up()
    } else {
        r
    }
}

/// `s0 = 1 + n / Σ k_ν/(1 - k_ν)`, or `1` when some `k_ν = 1`.
///
/// `s0 - 1` is the harmonic mean of the `1/k_ν - 1`, hence the clamp to
/// `[1/max k, 1/min k]`, both ends rounded up.
pub fn s0(profile: &RadiusProfile) -> Result<RefinementConstant> {
    profile.expect_orientation(Orientation::ZerosInside)?;
    let radii = profile.radii();
    if radii.is_empty() {
        return Err(Error::Profile("empty radius profile".into()));
    }
    if let Some(k) = radii.iter().find(|&&k| k <= 0.0) {
        return Err(Error::Profile(format!("radius {k} is not positive")));
    }
    if radii.iter().any(|&k| snaps_to_one(k)) {
        return Ok(RefinementConstant::boundary(reciprocal_up(profile.max_radius())));
    }
    let n = radii.len() as f64;
    let sum = compensated_sum(radii.iter().map(|&k| k / (1.0 - k)));
    let value = if sum == 0.0 {
        f64::INFINITY
    } else {
        (1.0 + n / sum).clamp(reciprocal_up(profile.max_radius()), reciprocal_up(profile.min_radius()))
    };
    Ok(RefinementConstant { value, branch: ConstantBranch::AllStrict })
}

/// `(a + t)/(1 + t)`, with the `t -> inf` limit `1`.
pub fn mixing_ratio(a: f64, t: f64) -> f64 {
    if t.is_infinite() {
        1.0
    } else {
        (a + t) / (1.0 + t)
    }
}

pub fn bernstein_factor(n: usize) -> f64 {
    n as f64
}

pub fn erdos_lax_factor(n: usize) -> f64 {
    n as f64 / 2.0
}

pub fn malik_factor(n: usize, k: f64) -> f64 {
    if k.is_infinite() {
        0.0
    } else {
        n as f64 / (1.0 + k)
    }
}

/// `n (|α| + k)/(1 + k)`
pub fn aziz_factor(n: usize, alpha_abs: f64, k: f64) -> f64 {
    n as f64 * mixing_ratio(alpha_abs, k)
}

/// `n (|α| + t0)/(1 + t0)`
pub fn theorem1_factor(n: usize, alpha_abs: f64, t0: f64) -> f64 {
    n as f64 * mixing_ratio(alpha_abs, t0)
}

/// `n (1 + |δ| s0)/(1 + s0)`, with the `s0 -> inf` limit `n |δ|`.
pub fn theorem2_factor(n: usize, delta_abs: f64, s0: f64) -> f64 {
    if s0.is_infinite() {
        n as f64 * delta_abs
    } else {
        n as f64 * (1.0 + delta_abs * s0) / (1.0 + s0)
    }
}

/// `n (|δ| + k)/(1 + k)`
pub fn corollary_factor(n: usize, delta_abs: f64, k: f64) -> f64 {
    n as f64 * (delta_abs + k) / (1.0 + k)
}

/// `n/(1 + t0)`, with the `t0 -> inf` limit `0`.
pub fn govil_factor(n: usize, t0: f64) -> f64 {
    malik_factor(n, t0)
}

/// One right-hand side `factor * max|P|`.
///
/// `rhs` uses the upper endpoint of the enclosure, so it is itself an upper
/// bound on the exact right-hand side; [`BoundValue::rhs_lower`] uses the
/// lower endpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub bound_id: BoundId,
    pub rhs: f64,
    pub factor: f64,
    pub max_p: CertifiedMax,
    pub constant: Option<RefinementConstant>,
    /// Set when the value is a limit outside the stated hypotheses
    /// (an infinite `t0` or `s0`).
    pub degenerate: bool,
}

impl BoundValue {
    fn new(bound_id: BoundId, factor: f64, max_p: CertifiedMax, constant: Option<RefinementConstant>) -> Self {
        Self {
            bound_id,
            rhs: factor * max_p.hi,
            factor,
            max_p,
            constant,
            degenerate: constant.is_some_and(|c| c.is_infinite()),
        }
    }

    pub fn rhs_lower(&self) -> f64 {
        self.factor * self.max_p.lo
    }

    pub fn rhs_upper(&self) -> f64 {
        self.rhs
    }
}

fn require_degree(p: &Polynomial) -> Result<usize> {
    match p.degree() {
        0 => Err(Error::Degree("bound needs degree at least 1".into())),
        n => Ok(n),
    }
}

fn require_outside_k(k: f64) -> Result<()> {
    if k >= 1.0 {
        Ok(())
    } else {
        Err(Error::Profile(format!("k = {k} must be at least 1")))
    }
}

fn require_inside_k(k: f64) -> Result<()> {
    if k > 0.0 && k <= 1.0 {
        Ok(())
    } else {
        Err(Error::Profile(format!("k = {k} must lie in (0, 1]")))
    }
}

fn require_alpha_outside(alpha: Complex64) -> Result<f64> {
    let a = alpha.norm();
    if a.is_finite() && a >= 1.0 {
        Ok(a)
    } else {
        Err(Error::Alpha(format!("|alpha| = {a} must be at least 1")))
    }
}

fn require_delta_inside(delta: Complex64) -> Result<f64> {
    let d = delta.norm();
    if d <= 1.0 {
        Ok(d)
    } else {
        Err(Error::Alpha(format!("|delta| = {d} must be at most 1")))
    }
}

fn require_profile_len(p: &Polynomial, profile: &RadiusProfile) -> Result<()> {
    if profile.len() != p.degree() {
        return Err(Error::Profile(format!(
            "profile has {} radii but the polynomial has degree {}",
            profile.len(),
            p.degree()
        )));
    }
    Ok(())
}

pub fn bernstein_rhs(p: &Polynomial, rel_tol: f64) -> Result<BoundValue> {
    let n = require_degree(p)?;
    Ok(BoundValue::new(BoundId::Bernstein, bernstein_factor(n), max_modulus(p, rel_tol)?, None))
}

/// Caller asserts that `P` has no zeros in `|z| < 1`.
pub fn erdos_lax_rhs(p: &Polynomial, rel_tol: f64) -> Result<BoundValue> {
    let n = require_degree(p)?;
    Ok(BoundValue::new(BoundId::ErdosLax, erdos_lax_factor(n), max_modulus(p, rel_tol)?, None))
}

/// Caller asserts that `P` has no zeros in `|z| < k`.
pub fn malik_rhs(p: &Polynomial, k: f64, rel_tol: f64) -> Result<BoundValue> {
    require_outside_k(k)?;
    let n = require_degree(p)?;
    Ok(BoundValue::new(BoundId::Malik, malik_factor(n, k), max_modulus(p, rel_tol)?, None))
}

pub fn aziz_polar_rhs(p: &Polynomial, k: f64, alpha: Complex64, rel_tol: f64) -> Result<BoundValue> {
    let a = require_alpha_outside(alpha)?;
    require_outside_k(k)?;
    let n = require_degree(p)?;
    Ok(BoundValue::new(BoundId::AzizPolar, aziz_factor(n, a, k), max_modulus(p, rel_tol)?, None))
}

pub fn theorem1_rhs(p: &Polynomial, profile: &RadiusProfile, alpha: Complex64, rel_tol: f64) -> Result<BoundValue> {
    let a = require_alpha_outside(alpha)?;
    let t = t0(profile)?;
    require_profile_len(p, profile)?;
    let n = require_degree(p)?;
    Ok(BoundValue::new(BoundId::Theorem1, theorem1_factor(n, a, t.value), max_modulus(p, rel_tol)?, Some(t)))
}

pub fn theorem2_rhs(p: &Polynomial, profile: &RadiusProfile, delta: Complex64, rel_tol: f64) -> Result<BoundValue> {
    let d = require_delta_inside(delta)?;
    let s = s0(profile)?;
    require_profile_len(p, profile)?;
    let n = require_degree(p)?;
    if p.constant_term() == Complex64::new(0.0, 0.0) {
        return Err(Error::OriginZero);
    }
    Ok(BoundValue::new(BoundId::Theorem2, theorem2_factor(n, d, s.value), max_modulus(p, rel_tol)?, Some(s)))
}

/// Caller asserts that every zero lies in `|z| <= k`.
pub fn corollary_rhs(p: &Polynomial, k: f64, delta: Complex64, rel_tol: f64) -> Result<BoundValue> {
    let d = require_delta_inside(delta)?;
    require_inside_k(k)?;
    let n = require_degree(p)?;
    if p.constant_term() == Complex64::new(0.0, 0.0) {
        return Err(Error::OriginZero);
    }
    Ok(BoundValue::new(BoundId::Corollary, corollary_factor(n, d, k), max_modulus(p, rel_tol)?, None))
}

/// The `|α| -> inf` limit of the `t0` bound: `max|P'| <= n/(1 + t0) max|P|`.
pub fn govil_rhs(p: &Polynomial, profile: &RadiusProfile, rel_tol: f64) -> Result<BoundValue> {
    let t = t0(profile)?;
    require_profile_len(p, profile)?;
    let n = require_degree(p)?;
    Ok(BoundValue::new(BoundId::Govil, govil_factor(n, t.value), max_modulus(p, rel_tol)?, Some(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::FactoredPolynomial;
    use proptest::prelude::*;

    const TOL: f64 = 1e-9;

    fn outside(radii: &[f64]) -> RadiusProfile {
        RadiusProfile::new(radii.to_vec(), Orientation::ZerosOutside).unwrap()
    }

    fn inside(radii: &[f64]) -> RadiusProfile {
        RadiusProfile::new(radii.to_vec(), Orientation::ZerosInside).unwrap()
    }

    fn real(xs: &[f64]) -> Polynomial {
        Polynomial::from_real(xs).unwrap()
    }

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1.0)
    }

    fn power_of_linear(shift: f64, n: usize) -> Polynomial {
        FactoredPolynomial::new(c(1.0), vec![c(-shift); n]).unwrap().expand()
    }

    #[test]
    fn t0_examples() {
        for k in [1.5, 2.0, 3.7, 10.0] {
            for n in 1..8 {
                assert_eq!(t0(&outside(&vec![k; n])).unwrap().value, k);
            }
        }
        let t = t0(&outside(&[2.0, 3.0])).unwrap();
        assert!(close(t.value, 7.0 / 3.0, 1e-15));
        assert_eq!(t.branch, ConstantBranch::AllStrict);
        let t = t0(&outside(&[1.0, 5.0])).unwrap();
        assert_eq!(t, RefinementConstant { value: 1.0, branch: ConstantBranch::SomeBoundary });
        assert!(t0(&inside(&[0.5])).is_err());
    }

    #[test]
    fn t0_is_infinite_only_for_infinite_radii() {
        let t = t0(&outside(&[f64::INFINITY, f64::INFINITY])).unwrap();
        assert!(t.is_infinite());
        let g = govil_rhs(&real(&[1.0, 0.0, 1.0]), &outside(&[f64::INFINITY; 2]), TOL).unwrap();
        assert_eq!(g.rhs, 0.0);
        assert!(g.degenerate);
        let t1 = theorem1_rhs(&real(&[1.0, 0.0, 1.0]), &outside(&[f64::INFINITY; 2]), c(3.0), TOL).unwrap();
        assert!(close(t1.rhs, 2.0 * 2.0, 1e-8));
    }

    #[test]
    fn t0_branch_seam_is_continuous() {
        for m in 1..=12 {
            let k = 1.0 + 10f64.powi(-m);
            let t = t0(&outside(&[k, k, k])).unwrap();
            if (k - 1.0).abs() <= UNIT_RADIUS_SNAP {
                assert_eq!(t.branch, ConstantBranch::SomeBoundary);
                assert_eq!(t.value, k);
            } else {
                assert_eq!(t.value, k);
                assert!(close(t.value - 1.0, k - 1.0, 1e-12));
            }
        }
    }

    #[test]
    fn s0_examples() {
        for k in [0.25, 0.5, 0.9] {
            for n in 1..6 {
                assert!(close(s0(&inside(&vec![k; n])).unwrap().value, 1.0 / k, 1e-14));
            }
        }
        assert!(close(s0(&inside(&[0.5, 1.0 / 3.0])).unwrap().value, 7.0 / 3.0, 1e-15));
        let s = s0(&inside(&[1.0, 0.5])).unwrap();
        assert_eq!(s.branch, ConstantBranch::SomeBoundary);
        assert_eq!(s.value, 1.0);
        assert!(s0(&outside(&[2.0])).is_err());
    }

    #[test]
    fn bernstein_examples() {
        let a = Complex64::new(0.0, 2.0);
        let b = bernstein_rhs(&Polynomial::monomial(a, 3).unwrap(), TOL).unwrap();
        assert!(close(b.rhs, 6.0, 1e-8));
        assert!(close(bernstein_rhs(&real(&[1.0, 2.0, 1.0]), TOL).unwrap().rhs, 8.0, 1e-8));
        assert!(close(bernstein_rhs(&real(&[1.0, 1.0]), TOL).unwrap().rhs, 2.0, 1e-8));
        assert!(matches!(bernstein_rhs(&real(&[2.0]), TOL), Err(Error::Degree(_))));
    }

    #[test]
    fn erdos_lax_examples() {
        let alpha = Complex64::from_polar(1.0, 0.4);
        let beta = Complex64::from_polar(1.0, -2.0);
        let p = Polynomial::new(vec![beta, c(0.0), alpha]).unwrap();
        assert!(close(erdos_lax_rhs(&p, TOL).unwrap().rhs, 2.0, 1e-8));
        assert!(close(erdos_lax_rhs(&real(&[1.0, 2.0, 1.0]), TOL).unwrap().rhs, 4.0, 1e-8));
        assert!(close(erdos_lax_rhs(&real(&[1.0, 0.0, 0.0, 1.0]), TOL).unwrap().rhs, 3.0, 1e-8));
    }

    #[test]
    fn malik_examples() {
        let p = power_of_linear(2.0, 2);
        assert!(close(malik_rhs(&p, 2.0, TOL).unwrap().rhs, 6.0, 1e-8));
        let q = real(&[1.0, 2.0, 1.0]);
        assert_eq!(malik_rhs(&q, 1.0, TOL).unwrap().rhs, erdos_lax_rhs(&q, TOL).unwrap().rhs);
        let r = real(&[6.0, 5.0, 1.0]);
        assert!(close(malik_rhs(&r, 2.0, TOL).unwrap().rhs, 8.0, 1e-8));
        assert!(matches!(malik_rhs(&r, 0.5, TOL), Err(Error::Profile(_))));
    }

    #[test]
    fn aziz_examples() {
        let p = real(&[1.0, 2.0, 1.0]);
        assert!(close(aziz_polar_rhs(&p, 1.0, c(2.0), TOL).unwrap().rhs, 12.0, 1e-8));
        let unit = Complex64::from_polar(1.0, 1.1);
        let b = aziz_polar_rhs(&p, 1.0, unit, TOL).unwrap();
        assert!(close(b.factor, 2.0, 1e-15));
        let q = power_of_linear(2.0, 2);
        assert!(close(aziz_polar_rhs(&q, 2.0, c(3.0), TOL).unwrap().rhs, 30.0, 1e-8));
        assert!(matches!(aziz_polar_rhs(&p, 1.0, c(0.5), TOL), Err(Error::Alpha(_))));
        assert!(matches!(aziz_polar_rhs(&p, 0.5, c(2.0), TOL), Err(Error::Profile(_))));
    }

    #[test]
    fn theorem1_examples() {
        let p = real(&[1.0, 2.0, 1.0]);
        let t1 = theorem1_rhs(&p, &outside(&[1.0, 1.0]), c(2.0), TOL).unwrap();
        assert!(close(t1.rhs, 12.0, 1e-8));
        assert_eq!(t1.rhs, aziz_polar_rhs(&p, 1.0, c(2.0), TOL).unwrap().rhs);

        let q = power_of_linear(2.5, 3);
        let alpha = Complex64::new(1.0, 2.0);
        assert_eq!(
            theorem1_rhs(&q, &outside(&[2.5; 3]), alpha, TOL).unwrap().rhs,
            aziz_polar_rhs(&q, 2.5, alpha, TOL).unwrap().rhs
        );

        // 2 * ((2 + 7/3)/(1 + 7/3)) * 12 = 2 * 1.3 * 12
        let r = real(&[6.0, 5.0, 1.0]);
        let t1 = theorem1_rhs(&r, &outside(&[2.0, 3.0]), c(2.0), TOL).unwrap();
        assert!(close(t1.rhs, 31.2, 1e-8), "{}", t1.rhs);
        assert!(matches!(theorem1_rhs(&r, &outside(&[2.0, 3.0]), c(0.9), TOL), Err(Error::Alpha(_))));
        assert!(matches!(theorem1_rhs(&r, &inside(&[0.5, 0.5]), c(2.0), TOL), Err(Error::Profile(_))));
        assert!(theorem1_rhs(&r, &outside(&[2.0]), c(2.0), TOL).is_err());
    }

    #[test]
    fn theorem2_examples() {
        let p = real(&[1.0, 2.0, 1.0]);
        assert!(close(theorem2_rhs(&p, &inside(&[1.0, 1.0]), c(1.0), TOL).unwrap().rhs, 8.0, 1e-8));

        let q = power_of_linear(0.5, 2);
        let s = 2.0;
        let b = theorem2_rhs(&q, &inside(&[0.5, 0.5]), c(0.0), TOL).unwrap();
        assert!(close(b.factor, 2.0 / (1.0 + s), 1e-15));
        let b = theorem2_rhs(&q, &inside(&[0.5, 0.5]), c(0.5), TOL).unwrap();
        assert!(close(b.rhs, 3.0, 1e-8), "{}", b.rhs);

        assert!(matches!(theorem2_rhs(&q, &inside(&[0.5, 0.5]), c(1.5), TOL), Err(Error::Alpha(_))));
        let through_origin = real(&[0.0, 1.0]);
        assert_eq!(theorem2_rhs(&through_origin, &inside(&[0.5]), c(0.5), TOL), Err(Error::OriginZero));
        assert!(matches!(theorem2_rhs(&q, &outside(&[2.0, 2.0]), c(0.5), TOL), Err(Error::Profile(_))));
    }

    #[test]
    fn corollary_examples() {
        let p = real(&[1.0, 2.0, 1.0]);
        let alpha = c(1.0);
        assert_eq!(corollary_rhs(&p, 1.0, alpha, TOL).unwrap().factor, aziz_factor(2, 1.0, 1.0));
        let q = power_of_linear(0.5, 2);
        let b = corollary_rhs(&q, 0.5, c(0.5), TOL).unwrap();
        assert!(close(b.rhs, 3.0, 1e-8));
        assert!(close(b.rhs, theorem2_rhs(&q, &inside(&[0.5, 0.5]), c(0.5), TOL).unwrap().rhs, 1e-14));
        assert!(close(corollary_rhs(&p, 1.0, c(1.0), TOL).unwrap().rhs, 8.0, 1e-8));
    }

    #[test]
    fn govil_examples() {
        let p = power_of_linear(1.7, 3);
        assert_eq!(govil_rhs(&p, &outside(&[1.7; 3]), TOL).unwrap().rhs, malik_rhs(&p, 1.7, TOL).unwrap().rhs);
        let q = power_of_linear(2.0, 2);
        assert!(close(govil_rhs(&q, &outside(&[2.0, 2.0]), TOL).unwrap().rhs, 6.0, 1e-8));
        let r = real(&[6.0, 5.0, 1.0]);
        assert!(close(govil_rhs(&r, &outside(&[2.0, 3.0]), TOL).unwrap().rhs, 7.2, 1e-8));
    }

    #[test]
    fn scaling_multiplies_every_rhs() {
        let p = real(&[6.0, 5.0, 1.0]);
        let scaled = p.scale(c(4.0));
        let prof = outside(&[2.0, 3.0]);
        let a = theorem1_rhs(&p, &prof, c(2.0), TOL).unwrap().rhs;
        let b = theorem1_rhs(&scaled, &prof, c(2.0), TOL).unwrap().rhs;
        assert_eq!(b, 4.0 * a);
    }

    fn arb_outside(n: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(prop_oneof![Just(1.0), 1.0..20.0f64], 1..=n)
    }

    proptest! {
        #[test]
        fn theorem1_factor_dominates_aziz(radii in arb_outside(10), alpha in 1.0..1e3f64) {
            let prof = outside(&radii);
            let t = t0(&prof).unwrap().value;
            let k = prof.min_radius();
            prop_assert!(t >= k);
            let n = radii.len();
            prop_assert!(theorem1_factor(n, alpha, t) <= aziz_factor(n, alpha, k) * (1.0 + 1e-15));
        }

        #[test]
        fn theorem2_factor_dominates_corollary(radii in prop::collection::vec(0.01..1.0f64, 1..10), delta in 0.0..1.0f64) {
            let prof = inside(&radii);
            let s = s0(&prof).unwrap().value;
            let k = prof.max_radius();
            prop_assert!(s * k >= 1.0 - 1e-15);
            let n = radii.len();
            prop_assert!(theorem2_factor(n, delta, s) <= corollary_factor(n, delta, k) * (1.0 + 1e-14));
        }

        #[test]
        fn theorem1_over_alpha_tends_to_govil(radii in arb_outside(8)) {
            let prof = outside(&radii);
            let t = t0(&prof).unwrap().value;
            let n = radii.len();
            let alpha = 1e6;
            let rel = (theorem1_factor(n, alpha, t) / alpha - govil_factor(n, t)).abs() / govil_factor(n, t);
            // exact value of the gap is t0/|α|
            prop_assert!((rel - t / alpha).abs() <= 1e-9 * t / alpha + 1e-15);
        }
    }
}
