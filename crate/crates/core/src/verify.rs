//! Certified verdicts for the inequalities and pointwise checks of the
//! lemmas and proof identities behind them.
//!
//! Bound verdicts compare enclosure endpoints only: the upper end of the
//! left-hand side against the right-hand side built from the lower end of
//! `max|P|`. Hypotheses are validated before any numerics run, and a failed
//! hypothesis is an error, never a verdict.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundId, BoundValue, RefinementConstant};
use crate::circle::{self, max_modulus, max_modulus_of_sum, unit_point, CertifiedMax};
use crate::error::{Error, Result};
use crate::poly::{FactoredPolynomial, Orientation, Polynomial, RadiusProfile};

/// Relative slack allowed between `lhs.hi` and the lower right-hand side.
///
/// In an equality case the exact sides coincide, so `lhs.hi` sits above
/// `rhs_lower` by the two enclosure widths. With the default tolerance those
/// widths are below `2e-9`; anything within this slack is reported as
/// holding, and [`BoundReport::strict`] records whether it also held without it.
pub const VERDICT_SLACK: f64 = 1e-8;

/// Scaled pointwise margins at or above `-POINTWISE_TOL` count as holding.
pub const POINTWISE_TOL: f64 = 1e-9;

pub const MAX_TIGHTENINGS: usize = 3;
const TIGHTENING_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedHolds,
    CertifiedViolated,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::CertifiedHolds => "certified_holds",
            Verdict::CertifiedViolated => "certified_violated",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

pub fn decide(lhs: &CertifiedMax, rhs_lower: f64, rhs_upper: f64) -> Verdict {
    if lhs.hi <= rhs_lower * (1.0 + VERDICT_SLACK) {
        Verdict::CertifiedHolds
    } else if lhs.lo > rhs_upper * (1.0 + VERDICT_SLACK) {
        Verdict::CertifiedViolated
    } else {
        Verdict::Inconclusive
    }
}

/// One checked instance of `max |LHS| <= factor * max |P|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_id: BoundId,
    pub lhs: CertifiedMax,
    pub rhs_lower: f64,
    pub rhs_upper: f64,
    /// `lhs.hi / rhs_lower`
    pub ratio_hi: f64,
    pub verdict: Verdict,
    /// `lhs.hi <= rhs_lower` without any slack.
    pub strict: bool,
    pub constant: Option<RefinementConstant>,
    /// `|α|` or `|δ|` where the bound has one.
    pub param_abs: Option<f64>,
    pub rel_tol: f64,
    pub degenerate: bool,
    pub instance_digest: String,
}

impl BoundReport {
    pub fn from_parts(
        lhs: CertifiedMax,
        rhs: &BoundValue,
        param_abs: Option<f64>,
        rel_tol: f64,
        instance_digest: String,
    ) -> Self {
        let rhs_lower = rhs.rhs_lower();
        let rhs_upper = rhs.rhs_upper();
        let ratio_hi = if rhs_lower > 0.0 {
            lhs.hi / rhs_lower
        } else if lhs.hi == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        Self {
            bound_id: rhs.bound_id,
            lhs,
            rhs_lower,
            rhs_upper,
            ratio_hi,
            verdict: decide(&lhs, rhs_lower, rhs_upper),
            strict: lhs.hi <= rhs_lower,
            constant: rhs.constant,
            param_abs,
            rel_tol,
            degenerate: rhs.degenerate,
            instance_digest,
        }
    }
}

/// The inequality to check and its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundRequest {
    /// `max|P'| <= n max|P|`
    Bernstein,
    /// `max|P'| <= n/2 max|P|`
    ErdosLax,
    Malik {
        k: f64,
    },
    AzizPolar {
        k: f64,
        alpha: Complex64,
    },
    Theorem1 {
        profile: RadiusProfile,
        alpha: Complex64,
    },
    Theorem2 {
        profile: RadiusProfile,
        delta: Complex64,
    },
    Corollary {
        k: f64,
        delta: Complex64,
    },
    Govil {
        profile: RadiusProfile,
    },
}

impl BoundRequest {
    pub fn id(&self) -> BoundId {
        match self {
            BoundRequest::Bernstein => BoundId::Bernstein,
            BoundRequest::ErdosLax => BoundId::ErdosLax,
            BoundRequest::Malik { .. } => BoundId::Malik,
            BoundRequest::AzizPolar { .. } => BoundId::AzizPolar,
            BoundRequest::Theorem1 { .. } => BoundId::Theorem1,
            BoundRequest::Theorem2 { .. } => BoundId::Theorem2,
            BoundRequest::Corollary { .. } => BoundId::Corollary,
            BoundRequest::Govil { .. } => BoundId::Govil,
        }
    }

    fn param(&self) -> Option<Complex64> {
        match self {
            BoundRequest::AzizPolar { alpha, .. } | BoundRequest::Theorem1 { alpha, .. } => Some(*alpha),
            BoundRequest::Theorem2 { delta, .. } | BoundRequest::Corollary { delta, .. } => Some(*delta),
            _ => None,
        }
    }

    pub fn rhs(&self, p: &Polynomial, rel_tol: f64) -> Result<BoundValue> {
        match self {
            BoundRequest::Bernstein => bounds::bernstein_rhs(p, rel_tol),
            BoundRequest::ErdosLax => bounds::erdos_lax_rhs(p, rel_tol),
            BoundRequest::Malik { k } => bounds::malik_rhs(p, *k, rel_tol),
            BoundRequest::AzizPolar { k, alpha } => bounds::aziz_polar_rhs(p, *k, *alpha, rel_tol),
            BoundRequest::Theorem1 { profile, alpha } => bounds::theorem1_rhs(p, profile, *alpha, rel_tol),
            BoundRequest::Theorem2 { profile, delta } => bounds::theorem2_rhs(p, profile, *delta, rel_tol),
            BoundRequest::Corollary { k, delta } => bounds::corollary_rhs(p, *k, *delta, rel_tol),
            BoundRequest::Govil { profile } => bounds::govil_rhs(p, profile, rel_tol),
        }
    }

    /// The polynomial whose maximum modulus is the left-hand side.
    pub fn lhs_polynomial(&self, p: &Polynomial) -> Result<Polynomial> {
        match self.param() {
            Some(param) => p.polar_derivative(param),
            None => Ok(p.derivative()),
        }
    }
}

/// Checks one bound for `p`. Zero-location hypotheses are the caller's;
/// [`verify_theorem1`] and [`verify_theorem2`] validate them from the factored form.
pub fn verify_bound(p: &Polynomial, request: &BoundRequest, rel_tol: f64) -> Result<BoundReport> {
    let rhs = request.rhs(p, rel_tol)?;
    let lhs = max_modulus(&request.lhs_polynomial(p)?, rel_tol)?;
    let digest = match request {
        BoundRequest::Theorem1 { profile, .. }
        | BoundRequest::Theorem2 { profile, .. }
        | BoundRequest::Govil { profile } => describe(p, Some(profile), request.param()),
        _ => describe(p, None, request.param()),
    };
    Ok(BoundReport::from_parts(lhs, &rhs, request.param().map(|c| c.norm()), rel_tol, digest))
}

/// Re-runs `check` with a tolerance ten times smaller, up to
/// [`MAX_TIGHTENINGS`] times, while the verdict is inconclusive.
pub fn with_tightening<F>(rel_tol: f64, mut check: F) -> Result<BoundReport>
where
    F: FnMut(f64) -> Result<BoundReport>,
{
    let mut tol = rel_tol;
    let mut report = check(tol)?;
    for _ in 0..MAX_TIGHTENINGS {
        if report.verdict != Verdict::Inconclusive {
            break;
        }
        tol /= TIGHTENING_FACTOR;
        report = check(tol)?;
    }
    Ok(report)
}

fn validate_outside(f: &FactoredPolynomial, profile: &RadiusProfile) -> Result<()> {
    profile.expect_orientation(Orientation::ZerosOutside)?;
    profile.validate_against(f)
}

fn validate_inside(f: &FactoredPolynomial, profile: &RadiusProfile) -> Result<()> {
    profile.expect_orientation(Orientation::ZerosInside)?;
    profile.validate_against(f)?;
    if f.zeros().iter().any(|z| *z == Complex64::new(0.0, 0.0)) {
        return Err(Error::OriginZero);
    }
    Ok(())
}

fn check_alpha_outside(alpha: Complex64) -> Result<()> {
    if alpha.norm() >= 1.0 && alpha.norm().is_finite() {
        Ok(())
    } else {
        Err(Error::Alpha(format!("|alpha| = {} must be at least 1", alpha.norm())))
    }
}

pub fn verify_theorem1(
    f: &FactoredPolynomial,
    profile: &RadiusProfile,
    alpha: Complex64,
    rel_tol: f64,
) -> Result<BoundReport> {
    validate_outside(f, profile)?;
    check_alpha_outside(alpha)?;
    circle::check_rel_tol(rel_tol)?;
    let request = BoundRequest::Theorem1 { profile: profile.clone(), alpha };
    verify_bound(&f.expand(), &request, rel_tol)
}

pub fn verify_theorem2(
    f: &FactoredPolynomial,
    profile: &RadiusProfile,
    delta: Complex64,
    rel_tol: f64,
) -> Result<BoundReport> {
    validate_inside(f, profile)?;
    if delta.norm() > 1.0 {
        return Err(Error::Alpha(format!("|delta| = {} must be at most 1", delta.norm())));
    }
    circle::check_rel_tol(rel_tol)?;
    let request = BoundRequest::Theorem2 { profile: profile.clone(), delta };
    verify_bound(&f.expand(), &request, rel_tol)
}

pub fn verify_govil(f: &FactoredPolynomial, profile: &RadiusProfile, rel_tol: f64) -> Result<BoundReport> {
    validate_outside(f, profile)?;
    circle::check_rel_tol(rel_tol)?;
    verify_bound(&f.expand(), &BoundRequest::Govil { profile: profile.clone() }, rel_tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    /// `|Q'| >= t0 |P'|`
    Lemma1,
    /// `|P'| + |Q'| <= n max|P|`
    Lemma2,
    /// `|P'| = |nQ - zQ'|` and `|Q'| = |nP - zP'|`
    RotationIdentities,
    /// The triangle-inequality chain bounding `|D_α P|` by `|P'|` and `|Q'|`.
    ProofChain,
    /// `|D_α Q| = |α| |D_{1/conj α} P|`
    PolarConjugation,
}

impl CheckId {
    pub fn name(self) -> &'static str {
        match self {
            CheckId::Lemma1 => "lemma1",
            CheckId::Lemma2 => "lemma2",
            CheckId::RotationIdentities => "rotation_identities",
            CheckId::ProofChain => "proof_chain",
            CheckId::PolarConjugation => "polar_conjugation",
        }
    }
}

/// A pointwise inequality or identity sampled on a uniform grid.
///
/// Margins are `(RHS - LHS)` divided by `n max|P|.hi` (identities report
/// `-|residual|`), so `worst_margin >= -POINTWISE_TOL` means the check held
/// at every sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointwiseReport {
    pub check_id: CheckId,
    pub worst_margin: f64,
    pub worst_angle: f64,
    pub samples: usize,
    pub verdict: Verdict,
    pub constant: Option<RefinementConstant>,
    /// Certified `max(|P'| + |Q'|)` for the Lemma 2 check.
    pub certified: Option<CertifiedMax>,
    pub instance_digest: String,
}

/// `max(1024, 64 n)`
pub fn default_samples(degree: usize) -> usize {
    (64 * degree).max(1024)
}

struct Worst {
    margin: f64,
    angle: f64,
}

// Minimum of `margin(z)` over the grid; ties keep the smallest angle.
fn sweep(m: usize, mut margin: impl FnMut(Complex64) -> f64) -> Worst {
    let mut worst = Worst { margin: f64::INFINITY, angle: 0.0 };
    for j in 0..m as u64 {
        let value = margin(unit_point(j, m as u64));
        if value < worst.margin || value.is_nan() {
            worst = Worst { margin: value, angle: circle::grid_angle(j, m as u64) };
            if value.is_nan() {
                break;
            }
        }
    }
    worst
}

fn pointwise_verdict(worst_margin: f64) -> Verdict {
    if worst_margin >= -POINTWISE_TOL {
        Verdict::CertifiedHolds
    } else {
        Verdict::CertifiedViolated
    }
}

fn require_degree(p: &Polynomial) -> Result<usize> {
    match p.degree() {
        0 => Err(Error::Degree("check needs degree at least 1".into())),
        n => Ok(n),
    }
}

fn require_samples(m: usize, min: usize) -> Result<()> {
    if m < min.max(1) {
        Err(Error::Samples { got: m, min: min.max(1) })
    } else {
        Ok(())
    }
}

// n max|P|.hi, the common denominator of all pointwise margins.
fn margin_scale(p: &Polynomial) -> Result<(f64, CertifiedMax)> {
    let max_p = max_modulus(p, circle::DEFAULT_REL_TOL)?;
    let scale = p.degree() as f64 * max_p.hi;
    Ok((if scale > 0.0 { scale } else { 1.0 }, max_p))
}

fn report(
    check_id: CheckId,
    worst: Worst,
    samples: usize,
    constant: Option<RefinementConstant>,
    certified: Option<CertifiedMax>,
    instance_digest: String,
) -> PointwiseReport {
    PointwiseReport {
        check_id,
        worst_margin: worst.margin,
        worst_angle: worst.angle,
        samples,
        verdict: pointwise_verdict(worst.margin),
        constant,
        certified,
        instance_digest,
    }
}

fn finite_t0(profile: &RadiusProfile) -> Result<RefinementConstant> {
    let t = bounds::t0(profile)?;
    if t.is_infinite() {
        return Err(Error::Profile("t0 is infinite; no finite zeros satisfy this profile".into()));
    }
    Ok(t)
}

pub fn verify_lemma1(f: &FactoredPolynomial, profile: &RadiusProfile, m: usize) -> Result<PointwiseReport> {
    validate_outside(f, profile)?;
    let p = f.expand();
    let n = require_degree(&p)?;
    require_samples(m, 32 * n)?;
    let t = finite_t0(profile)?;
    let dp = p.derivative();
    let dq = p.conjugate_reciprocal().derivative();
    let (scale, _) = margin_scale(&p)?;
    let worst = sweep(m, |z| (dq.evaluate(z).norm() - t.value * dp.evaluate(z).norm()) / scale);
    Ok(report(CheckId::Lemma1, worst, m, Some(t), None, describe(&p, Some(profile), None)))
}

pub fn verify_lemma2(p: &Polynomial, m: usize, rel_tol: f64) -> Result<PointwiseReport> {
    let n = require_degree(p)?;
    require_samples(m, 1)?;
    let dp = p.derivative();
    let dq = p.conjugate_reciprocal().derivative();
    let (scale, max_p) = margin_scale(p)?;
    let rhs = n as f64 * max_p.lo * (1.0 + rel_tol);
    let worst = sweep(m, |z| (rhs - dp.evaluate(z).norm() - dq.evaluate(z).norm()) / scale);
    let certified = max_modulus_of_sum(&dp, &dq, rel_tol)?;
    Ok(report(CheckId::Lemma2, worst, m, None, Some(certified), describe(p, None, None)))
}

pub fn verify_rotation_identities(p: &Polynomial, m: usize) -> Result<PointwiseReport> {
    require_degree(p)?;
    require_samples(m, 1)?;
    let q = p.conjugate_reciprocal();
    let dp = p.derivative();
    let dq = q.derivative();
    // n Q - z Q' and n P - z P' are the polar derivatives at α = 0.
    let rot_q = q.polar_derivative(Complex64::new(0.0, 0.0))?;
    let rot_p = p.polar_derivative(Complex64::new(0.0, 0.0))?;
    let (scale, _) = margin_scale(p)?;
    let worst = sweep(m, |z| {
        let r1 = (dp.evaluate(z).norm() - rot_q.evaluate(z).norm()).abs();
        let r2 = (dq.evaluate(z).norm() - rot_p.evaluate(z).norm()).abs();
        -r1.max(r2) / scale
    });
    Ok(report(CheckId::RotationIdentities, worst, m, None, None, describe(p, None, None)))
}

/// Pointwise checks of
/// `|D_α P| <= (|α| - 1)|P'| + |P'| + |Q'|`,
/// `t0 |D_α P| <= (|α| - 1)|Q'| + t0 (|P'| + |Q'|)` and
/// `(1 + t0)|D_α P| <= (|α| + t0)(|P'| + |Q'|)`.
/// The second and third margins are divided by `t0` and `1 + t0`.
pub fn verify_proof_chain(
    f: &FactoredPolynomial,
    profile: &RadiusProfile,
    alpha: Complex64,
    m: usize,
) -> Result<PointwiseReport> {
    validate_outside(f, profile)?;
    check_alpha_outside(alpha)?;
    let p = f.expand();
    require_degree(&p)?;
    require_samples(m, 1)?;
    let t = finite_t0(profile)?;
    let t0 = t.value;
    let a = alpha.norm();
    let dp = p.derivative();
    let dq = p.conjugate_reciprocal().derivative();
    let polar = p.polar_derivative(alpha)?;
    let (scale, _) = margin_scale(&p)?;
    let worst = sweep(m, |z| {
        let d = polar.evaluate(z).norm();
        let pp = dp.evaluate(z).norm();
        let qq = dq.evaluate(z).norm();
        let first = (a - 1.0) * pp + pp + qq - d;
        let second = ((a - 1.0) * qq + t0 * (pp + qq) - t0 * d) / t0;
        let third = ((a + t0) * (pp + qq) - (1.0 + t0) * d) / (1.0 + t0);
        first.min(second).min(third) / scale
    });
    Ok(report(CheckId::ProofChain, worst, m, Some(t), None, describe(&p, Some(profile), Some(alpha))))
}

/// Residual of `|D_α Q(z)| = |α| |D_{1/conj α} P(z)|` on `|z| = 1`, scaled by
/// `n max|P| max(1, |α|)`.
pub fn verify_polar_conjugation(p: &Polynomial, alpha: Complex64, m: usize) -> Result<PointwiseReport> {
    if alpha == Complex64::new(0.0, 0.0) || !alpha.norm().is_finite() {
        return Err(Error::Alpha("alpha must be nonzero and finite".into()));
    }
    require_degree(p)?;
    require_samples(m, 1)?;
    if p.constant_term() == Complex64::new(0.0, 0.0) {
        return Err(Error::OriginZero);
    }
    let q = p.conjugate_reciprocal();
    let dq = q.polar_derivative(alpha)?;
    let dp = p.polar_derivative(alpha.conj().inv())?;
    let a = alpha.norm();
    let (scale, _) = margin_scale(p)?;
    let scale = scale * a.max(1.0);
    let worst = sweep(m, |z| -(dq.evaluate(z).norm() - a * dp.evaluate(z).norm()).abs() / scale);
    Ok(report(CheckId::PolarConjugation, worst, m, None, None, describe(p, None, Some(alpha))))
}

/// For each real `α` in `magnitudes`, the largest coefficient deviation of
/// `D_α P / α` from `P'`, relative to the largest coefficient of `P'`.
pub fn verify_polar_limit(p: &Polynomial, magnitudes: &[f64]) -> Result<Vec<f64>> {
    require_degree(p)?;
    let dp = p.derivative();
    let scale = dp.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::Degree("derivative vanishes identically".into()));
    }
    let mut prev = 0.0;
    magnitudes
        .iter()
        .map(|&mag| {
            if !(mag >= 1.0 && mag.is_finite() && mag > prev) {
                return Err(Error::Alpha(format!("magnitudes must be finite, increasing and at least 1 (got {mag})")));
            }
            prev = mag;
            let alpha = Complex64::new(mag, 0.0);
            let polar = p.polar_derivative(alpha)?;
            let dev = polar.coeffs().iter().zip(dp.coeffs()).map(|(d, e)| (d / alpha - e).norm()).fold(0.0, f64::max);
            Ok(dev / scale)
        })
        .collect()
}

fn push_complex(out: &mut String, c: Complex64) {
    let _ = write!(out, "({},{})", c.re, c.im);
}

/// Compact textual description of an instance for reports and CSV rows.
pub fn describe(p: &Polynomial, profile: Option<&RadiusProfile>, param: Option<Complex64>) -> String {
    let mut out = String::from("coeffs=[");
    for (i, c) in p.coeffs().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        push_complex(&mut out, *c);
    }
    out.push(']');
    if let Some(profile) = profile {
        let _ = write!(out, " k=[");
        for (i, k) in profile.radii().iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{k}");
        }
        out.push(']');
    }
    if let Some(a) = param {
        out.push_str(" param=");
        push_complex(&mut out, a);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn factored(zeros: &[Complex64]) -> FactoredPolynomial {
        FactoredPolynomial::new(c(1.0, 0.0), zeros.to_vec()).unwrap()
    }

    fn outside(radii: &[f64]) -> RadiusProfile {
        RadiusProfile::new(radii.to_vec(), Orientation::ZerosOutside).unwrap()
    }

    fn inside(radii: &[f64]) -> RadiusProfile {
        RadiusProfile::new(radii.to_vec(), Orientation::ZerosInside).unwrap()
    }

    const TOL: f64 = 1e-9;

    #[test]
    fn decide_is_a_trichotomy() {
        let lhs =
            CertifiedMax { lo: 1.0, hi: 1.1, samples_used: 0, best_sample: 1.0, best_angle: 0.0, converged: true };
        assert_eq!(decide(&lhs, 1.2, 1.3), Verdict::CertifiedHolds);
        assert_eq!(decide(&lhs, 0.8, 0.9), Verdict::CertifiedViolated);
        assert_eq!(decide(&lhs, 1.05, 1.15), Verdict::Inconclusive);
    }

    #[test]
    fn theorem1_equality_case() {
        let f = factored(&[c(-1.0, 0.0); 2]);
        let r = verify_theorem1(&f, &outside(&[1.0, 1.0]), c(2.0, 0.0), TOL).unwrap();
        assert!((r.ratio_hi - 1.0).abs() <= 1e-6, "{r:?}");
        assert_eq!(r.verdict, Verdict::CertifiedHolds);
    }

    #[test]
    fn theorem1_strict_profile() {
        let f = factored(&[c(-2.0, 0.0), c(-3.0, 0.0)]);
        let r = verify_theorem1(&f, &outside(&[2.0, 3.0]), c(2.0, 0.0), TOL).unwrap();
        assert!(r.lhs.hi <= 31.2);
        assert!((r.rhs_upper - 31.2).abs() <= 31.2 * 1e-8);
        assert_eq!(r.verdict, Verdict::CertifiedHolds);
        assert!(r.strict);

        let scaled = f.scale(c(10.0, 0.0)).unwrap();
        let s = verify_theorem1(&scaled, &outside(&[2.0, 3.0]), c(2.0, 0.0), TOL).unwrap();
        assert!((s.ratio_hi - r.ratio_hi).abs() <= 1e-12);
    }

    #[test]
    fn theorem1_hypotheses_are_errors() {
        let f = factored(&[c(-1.5, 0.0)]);
        assert!(matches!(verify_theorem1(&f, &outside(&[2.0]), c(2.0, 0.0), TOL), Err(Error::Profile(_))));
        assert!(matches!(verify_theorem1(&f, &outside(&[1.5]), c(0.5, 0.0), TOL), Err(Error::Alpha(_))));
        assert!(matches!(verify_theorem1(&f, &inside(&[1.0]), c(2.0, 0.0), TOL), Err(Error::Profile(_))));
    }

    #[test]
    fn theorem2_examples() {
        let f = factored(&[c(-0.5, 0.0); 2]);
        let prof = inside(&[0.5, 0.5]);
        let r = verify_theorem2(&f, &prof, c(0.5, 0.0), TOL).unwrap();
        // D_δ P = 2(z + 1/2) attains the bound 3 at z = 1
        assert!(r.lhs.contains(3.0), "{r:?}");
        assert!((r.ratio_hi - 1.0).abs() <= 1e-8);
        assert_eq!(r.verdict, Verdict::CertifiedHolds);

        // δ = 0: the left side is max|nP - zP'| = max|Q'|
        let r0 = verify_theorem2(&f, &prof, c(0.0, 0.0), TOL).unwrap();
        let q = f.expand().conjugate_reciprocal().derivative();
        let direct = max_modulus(&q, TOL).unwrap();
        assert!(r0.lhs.overlaps(&direct));
        assert_eq!(r0.verdict, Verdict::CertifiedHolds);

        let g = factored(&[c(-1.0, 0.0), c(0.3, 0.2)]);
        let prof = RadiusProfile::tightest(&g, Orientation::ZerosInside);
        let r = verify_theorem2(&g, &prof, c(0.1, 0.7), TOL).unwrap();
        assert_eq!(r.constant.unwrap().value, 1.0);
        assert_eq!(r.verdict, Verdict::CertifiedHolds);

        let through_origin = factored(&[c(0.0, 0.0), c(0.5, 0.0)]);
        assert_eq!(verify_theorem2(&through_origin, &inside(&[0.5, 0.5]), c(0.5, 0.0), TOL), Err(Error::OriginZero));
    }

    #[test]
    fn lemma1_examples() {
        for (k, n) in [(2.0, 2), (1.5, 4), (3.0, 3)] {
            let f = factored(&vec![c(-k, 0.0); n]);
            let r = verify_lemma1(&f, &outside(&vec![k; n]), 64 * n).unwrap();
            assert_eq!(r.verdict, Verdict::CertifiedHolds);
            // |Q'| = k |P'| identically for (z + k)^n
            assert!(r.worst_margin.abs() <= 1e-12, "{r:?}");
        }
        let f = factored(&[c(-1.0, 0.0); 2]);
        let r = verify_lemma1(&f, &outside(&[1.0, 1.0]), 128).unwrap();
        assert!(r.worst_margin.abs() <= 1e-12);
        let f = factored(&[Complex64::from_polar(1.0, 0.3), Complex64::from_polar(1.0, 2.0)]);
        let r = verify_lemma1(&f, &RadiusProfile::tightest(&f, Orientation::ZerosOutside), 128).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedHolds);
        assert!(matches!(verify_lemma1(&f, &outside(&[1.0, 1.0]), 32), Err(Error::Samples { .. })));
    }

    #[test]
    fn lemma2_examples() {
        let p = Polynomial::from_real(&[1.0, 2.0, 1.0]).unwrap();
        let r = verify_lemma2(&p, 1024, TOL).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedHolds);
        assert!(r.worst_margin <= 1e-8, "equality at z = 1: {r:?}");
        assert!(r.certified.unwrap().contains(8.0));

        let m = Polynomial::monomial(c(0.3, -1.2), 5).unwrap();
        let r = verify_lemma2(&m, 1024, TOL).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedHolds);
        assert!(r.worst_margin <= 1e-8);
        assert!(matches!(verify_lemma2(&Polynomial::from_real(&[1.0]).unwrap(), 64, TOL), Err(Error::Degree(_))));
    }

    #[test]
    fn rotation_identity_examples() {
        let p = Polynomial::from_real(&[1.0, 2.0, 1.0]).unwrap();
        let r = verify_rotation_identities(&p, 1024).unwrap();
        assert!(r.worst_margin >= -1e-15);
        let z = Polynomial::from_real(&[0.0, 1.0]).unwrap();
        let r = verify_rotation_identities(&z, 64).unwrap();
        assert_eq!(r.worst_margin, 0.0);
    }

    #[test]
    fn proof_chain_examples() {
        let f = factored(&[c(-1.0, 0.0); 3]);
        let r = verify_proof_chain(&f, &outside(&[1.0; 3]), c(2.0, 0.0), 1024).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedHolds);
        // every step is an equality on the whole circle for (z + 1)^n
        assert!(r.worst_margin.abs() <= 1e-12, "{r:?}");

        let g = factored(&[c(-2.0, 1.0), c(0.5, 3.0)]);
        let prof = RadiusProfile::tightest(&g, Orientation::ZerosOutside);
        let r = verify_proof_chain(&g, &prof, Complex64::from_polar(1.0, 0.7), 1024).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedHolds);
    }

    #[test]
    fn polar_conjugation_examples() {
        let p = Polynomial::from_real(&[1.0, 2.0, 1.0]).unwrap();
        let r = verify_polar_conjugation(&p, c(2.0, 0.0), 1024).unwrap();
        assert!(r.worst_margin >= -1e-14);
        let r = verify_polar_conjugation(&p, Complex64::from_polar(1.0, 2.5), 1024).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedHolds);
        assert!(matches!(verify_polar_conjugation(&p, c(0.0, 0.0), 64), Err(Error::Alpha(_))));
    }

    #[test]
    fn polar_limit_examples() {
        let p = Polynomial::from_real(&[1.0, 2.0, 1.0]).unwrap();
        let dev = verify_polar_limit(&p, &[1e6]).unwrap();
        assert!(dev[0] <= 3e-6);

        // D_α(a z^n + b)/α - P' = n b / α
        let m = Polynomial::new(vec![c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]).unwrap();
        let dev = verify_polar_limit(&m, &[1e3]).unwrap();
        assert!(dev[0] <= 1e-2 * 3.0);
        assert!((dev[0] - 3.0 * 0.5 / 1e3 / 6.0).abs() <= 1e-15);

        let mags = [1e1, 1e2, 1e3, 1e4];
        let dev = verify_polar_limit(&p, &mags).unwrap();
        for w in dev.windows(2) {
            assert!((w[0] / w[1] - 10.0).abs() < 1e-6);
        }
        assert!(verify_polar_limit(&p, &[10.0, 5.0]).is_err());
    }

    #[test]
    fn classical_bounds_on_extremal_polynomials() {
        let mono = Polynomial::monomial(c(0.0, 2.0), 4).unwrap();
        let r = verify_bound(&mono, &BoundRequest::Bernstein, TOL).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedHolds);
        assert!((r.ratio_hi - 1.0).abs() <= 1e-9);

        let p = Polynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = verify_bound(&p, &BoundRequest::ErdosLax, TOL).unwrap();
        assert!((r.ratio_hi - 1.0).abs() <= 1e-6);

        let k = factored(&[c(-2.0, 0.0); 2]).expand();
        let r = verify_bound(&k, &BoundRequest::Malik { k: 2.0 }, TOL).unwrap();
        assert!((r.ratio_hi - 1.0).abs() <= 1e-6);
        assert_eq!(r.verdict, Verdict::CertifiedHolds);
    }
}
