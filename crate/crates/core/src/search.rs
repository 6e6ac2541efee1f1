//! Seeded hill-climbing over instances that satisfy a theorem's hypotheses,
//! maximising the certified ratio `max|LHS| / RHS`.
//!
//! Every random draw comes from a ChaCha8 stream keyed by
//! `(seed, draw_index, move_index)`, so a run is reproducible bit for bit.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundId};
use crate::circle::{self, max_modulus, DEFAULT_REL_TOL};
use crate::error::{Error, Result};
use crate::poly::{FactoredPolynomial, Orientation, RadiusProfile};
use crate::verify::{BoundReport, BoundRequest, Verdict, MAX_TIGHTENINGS};

/// Ratios above `1 + SOUNDNESS_SLACK` abort the search.
pub const SOUNDNESS_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchTarget {
    Theorem1,
    Theorem2,
    AzizPolar,
    Corollary,
}

impl SearchTarget {
    pub fn bound_id(self) -> BoundId {
        match self {
            SearchTarget::Theorem1 => BoundId::Theorem1,
            SearchTarget::Theorem2 => BoundId::Theorem2,
            SearchTarget::AzizPolar => BoundId::AzizPolar,
            SearchTarget::Corollary => BoundId::Corollary,
        }
    }

    pub fn from_bound_id(id: BoundId) -> Option<Self> {
        match id {
            BoundId::Theorem1 => Some(SearchTarget::Theorem1),
            BoundId::Theorem2 => Some(SearchTarget::Theorem2),
            BoundId::AzizPolar => Some(SearchTarget::AzizPolar),
            BoundId::Corollary => Some(SearchTarget::Corollary),
            _ => None,
        }
    }

    pub fn orientation(self) -> Orientation {
        match self {
            SearchTarget::Theorem1 | SearchTarget::AzizPolar => Orientation::ZerosOutside,
            SearchTarget::Theorem2 | SearchTarget::Corollary => Orientation::ZerosInside,
        }
    }

    /// Column names of the refined and classical ratios in the trace.
    pub fn ratio_columns(self) -> (&'static str, &'static str) {
        match self.orientation() {
            Orientation::ZerosOutside => ("theorem1_ratio", "aziz_ratio"),
            Orientation::ZerosInside => ("theorem2_ratio", "corollary_ratio"),
        }
    }
}

/// Explicit starting point for a search. The profile is always `k_ν = |z_ν|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchStart {
    pub zeros: Vec<Complex64>,
    pub alpha: Complex64,
}

fn default_initial_step() -> f64 {
    0.5
}

fn default_rel_tol() -> f64 {
    DEFAULT_REL_TOL
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub degree: usize,
    pub orientation: Orientation,
    /// Zero moduli, `[lo, hi]`.
    pub radius_range: [f64; 2],
    /// `|α|` (outside) or `|δ|` (inside), `[lo, hi]`.
    pub alpha_range: [f64; 2],
    pub seed: u64,
    pub iterations: usize,
    pub step_decay: f64,
    #[serde(default = "default_initial_step")]
    pub initial_step: f64,
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    /// Starts from draw 0 of [`random_instance`] when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<SearchStart>,
}

impl SearchConfig {
    pub fn new(degree: usize, orientation: Orientation, seed: u64) -> Self {
        let (radius_range, alpha_range) = match orientation {
            Orientation::ZerosOutside => ([1.0, 4.0], [1.0, 10.0]),
            Orientation::ZerosInside => ([0.2, 1.0], [0.0, 1.0]),
        };
        Self {
            degree,
            orientation,
            radius_range,
            alpha_range,
            seed,
            iterations: 500,
            step_decay: 0.99,
            initial_step: default_initial_step(),
            rel_tol: DEFAULT_REL_TOL,
            start: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.degree == 0 {
            return bad("degree must be at least 1".into());
        }
        if self.iterations == 0 {
            return bad("iterations must be at least 1".into());
        }
        if !(self.step_decay > 0.0 && self.step_decay <= 1.0) {
            return bad(format!("step_decay {} outside (0, 1]", self.step_decay));
        }
        if !(self.initial_step > 0.0 && self.initial_step.is_finite()) {
            return bad(format!("initial_step {} must be positive", self.initial_step));
        }
        circle::check_rel_tol(self.rel_tol)?;
        let [rlo, rhi] = self.radius_range;
        let [alo, ahi] = self.alpha_range;
        if !(rlo <= rhi && rlo.is_finite() && rhi.is_finite()) {
            return bad(format!("radius_range [{rlo}, {rhi}] is not a finite interval"));
        }
        if !(alo <= ahi && alo.is_finite() && ahi.is_finite()) {
            return bad(format!("alpha_range [{alo}, {ahi}] is not a finite interval"));
        }
        match self.orientation {
            Orientation::ZerosOutside => {
                if rlo < 1.0 {
                    return bad("outside radius_range must lie in [1, inf)".into());
                }
                if alo < 1.0 {
                    return bad("outside alpha_range must lie in [1, inf)".into());
                }
            }
            Orientation::ZerosInside => {
                if !(rlo > 0.0 && rhi <= 1.0) {
                    return bad("inside radius_range must lie in (0, 1]".into());
                }
                if !(alo >= 0.0 && ahi <= 1.0) {
                    return bad("inside alpha_range must lie in [0, 1]".into());
                }
            }
        }
        if let Some(start) = &self.start {
            if start.zeros.len() != self.degree {
                return bad(format!("start has {} zeros but degree is {}", start.zeros.len(), self.degree));
            }
            let inside_range = |x: f64, [lo, hi]: [f64; 2]| x >= lo && x <= hi;
            if let Some(z) = start.zeros.iter().find(|z| !inside_range(z.norm(), self.radius_range)) {
                return bad(format!("start zero {z} has modulus outside radius_range"));
            }
            if !inside_range(start.alpha.norm(), self.alpha_range) {
                return bad(format!("start alpha {} has modulus outside alpha_range", start.alpha));
            }
        }
        Ok(())
    }
}

/// ChaCha8 keyed by `seed ‖ draw ‖ move ‖ 0` (little-endian words).
fn stream(seed: u64, draw: u64, step: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&draw.to_le_bytes());
    key[16..24].copy_from_slice(&step.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

fn uniform_in(rng: &mut ChaCha8Rng, [lo, hi]: [f64; 2]) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..=hi)
    }
}

// A zero of modulus `r` at angle `theta`, nudged so rounding keeps it on
// the required side of the unit circle.
fn place_zero(r: f64, theta: f64, orientation: Orientation) -> Complex64 {
    let mut z = Complex64::from_polar(r, theta);
    match orientation {
        Orientation::ZerosOutside => {
            while z.norm() < 1.0 {
                z *= 1.0 + f64::EPSILON;
            }
        }
        Orientation::ZerosInside => {
            while z.norm() > 1.0 {
                z *= 1.0 - f64::EPSILON;
            }
        }
    }
    z
}

fn instance(zeros: Vec<Complex64>, orientation: Orientation) -> Result<(FactoredPolynomial, RadiusProfile)> {
    let f = FactoredPolynomial::new(Complex64::new(1.0, 0.0), zeros)?;
    let profile = RadiusProfile::tightest(&f, orientation);
    Ok((f, profile))
}

/// Monic instance with zeros of modulus uniform in `radius_range`, uniform
/// angles, `k_ν = |z_ν|`, and `α` of modulus uniform in `alpha_range`.
pub fn random_instance(cfg: &SearchConfig, draw_index: u64) -> Result<(FactoredPolynomial, RadiusProfile, Complex64)> {
    cfg.validate()?;
    let mut rng = stream(cfg.seed, draw_index, 0);
    let zeros = (0..cfg.degree)
        .map(|_| {
            let r = uniform_in(&mut rng, cfg.radius_range);
            let theta = rng.random_range(0.0..TAU);
            place_zero(r, theta, cfg.orientation)
        })
        .collect();
    let a = uniform_in(&mut rng, cfg.alpha_range);
    let alpha = Complex64::from_polar(a, rng.random_range(0.0..TAU));
    let (f, profile) = instance(zeros, cfg.orientation)?;
    Ok((f, profile, alpha))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchInstance {
    pub polynomial: FactoredPolynomial,
    pub profile: RadiusProfile,
    pub alpha: Complex64,
}

/// The instance that tripped the soundness guard.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoundnessViolation {
    pub target: SearchTarget,
    pub ratio: f64,
    pub iteration: usize,
    pub instance: SearchInstance,
    pub report: BoundReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub iteration: usize,
    /// `None` when the candidate stayed inconclusive and was skipped.
    pub ratio: Option<f64>,
    pub best_ratio: f64,
    pub sigma: f64,
    pub accepted: bool,
    pub refined_ratio: Option<f64>,
    pub classical_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub target: SearchTarget,
    pub best_ratio: f64,
    pub best_instance: SearchInstance,
    pub best_report: BoundReport,
    pub skipped: usize,
    pub trace: Vec<TraceEntry>,
}

fn push_opt(out: &mut String, x: Option<f64>) {
    if let Some(x) = x {
        let _ = write!(out, "{x}");
    }
}

impl SearchResult {
    /// `iteration,ratio,best_ratio,sigma,accepted,<refined>,<classical>`,
    /// one row per iteration with iteration 0 the starting point.
    pub fn trace_csv(&self) -> String {
        let (refined, classical) = self.target.ratio_columns();
        let mut out = format!("iteration,ratio,best_ratio,sigma,accepted,{refined},{classical}\n");
        for e in &self.trace {
            let _ = write!(out, "{},", e.iteration);
            push_opt(&mut out, e.ratio);
            let _ = write!(out, ",{},{},{},", e.best_ratio, e.sigma, e.accepted);
            push_opt(&mut out, e.refined_ratio);
            out.push(',');
            push_opt(&mut out, e.classical_ratio);
            out.push('\n');
        }
        out
    }
}

struct Assessment {
    report: BoundReport,
    refined: f64,
    classical: f64,
}

fn request(target: SearchTarget, profile: &RadiusProfile, alpha: Complex64) -> BoundRequest {
    match target {
        SearchTarget::Theorem1 => BoundRequest::Theorem1 { profile: profile.clone(), alpha },
        SearchTarget::Theorem2 => BoundRequest::Theorem2 { profile: profile.clone(), delta: alpha },
        SearchTarget::AzizPolar => BoundRequest::AzizPolar { k: profile.min_radius(), alpha },
        SearchTarget::Corollary => BoundRequest::Corollary { k: profile.max_radius(), delta: alpha },
    }
}

// Certified ratio of `target` plus the refined/classical pair sharing the
// same enclosures. `None` when still inconclusive after all tightenings.
fn assess(target: SearchTarget, inst: &SearchInstance, rel_tol: f64) -> Result<Option<Assessment>> {
    let p = inst.polynomial.expand();
    let n = p.degree();
    let req = request(target, &inst.profile, inst.alpha);
    let lhs_poly = req.lhs_polynomial(&p)?;
    let a = inst.alpha.norm();
    let mut tol = rel_tol;
    for attempt in 0..=MAX_TIGHTENINGS {
        if attempt > 0 {
            tol /= 10.0;
        }
        let rhs = req.rhs(&p, tol)?;
        let lhs = max_modulus(&lhs_poly, tol)?;
        let digest = crate::verify::describe(&p, Some(&inst.profile), Some(inst.alpha));
        let report = BoundReport::from_parts(lhs, &rhs, Some(a), tol, digest);
        if report.verdict == Verdict::Inconclusive {
            continue;
        }
        let (refined_factor, classical_factor) = match target.orientation() {
            Orientation::ZerosOutside => (
                bounds::theorem1_factor(n, a, bounds::t0(&inst.profile)?.value),
                bounds::aziz_factor(n, a, inst.profile.min_radius()),
            ),
            Orientation::ZerosInside => (
                bounds::theorem2_factor(n, a, bounds::s0(&inst.profile)?.value),
                bounds::corollary_factor(n, a, inst.profile.max_radius()),
            ),
        };
        let ratio = |factor: f64| lhs.hi / (factor * rhs.max_p.lo);
        return Ok(Some(Assessment { refined: ratio(refined_factor), classical: ratio(classical_factor), report }));
    }
    Ok(None)
}

fn guard(target: SearchTarget, iteration: usize, inst: &SearchInstance, a: &Assessment) -> Result<()> {
    let ratio = a.report.ratio_hi;
    if a.report.verdict == Verdict::CertifiedViolated || ratio > 1.0 + SOUNDNESS_SLACK {
        return Err(Error::Soundness(Box::new(SoundnessViolation {
            target,
            ratio,
            iteration,
            instance: inst.clone(),
            report: a.report.clone(),
        })));
    }
    Ok(())
}

fn clamp_to(x: f64, [lo, hi]: [f64; 2]) -> f64 {
    x.clamp(lo, hi)
}

fn perturb(cfg: &SearchConfig, current: &SearchInstance, sigma: f64, iteration: u64) -> Result<SearchInstance> {
    let mut rng = stream(cfg.seed, 0, iteration);
    let n = cfg.degree;
    let choice = rng.random_range(0..2 * n + 2);
    let step: f64 = rng.sample::<f64, _>(StandardNormal) * sigma;
    let mut zeros = current.polynomial.zeros().to_vec();
    let mut alpha = current.alpha;
    match choice {
        c if c < n => {
            let (r, theta) = zeros[c].to_polar();
            zeros[c] = place_zero(clamp_to(r * step.exp(), cfg.radius_range), theta, cfg.orientation);
        }
        c if c < 2 * n => {
            let (r, theta) = zeros[c - n].to_polar();
            let r = clamp_to(r, cfg.radius_range);
            zeros[c - n] = place_zero(r, theta + step, cfg.orientation);
        }
        c if c == 2 * n => {
            let (m, theta) = alpha.to_polar();
            let m = match cfg.orientation {
                Orientation::ZerosOutside => m * step.exp(),
                Orientation::ZerosInside => m + step,
            };
            alpha = Complex64::from_polar(clamp_to(m, cfg.alpha_range), theta);
        }
        _ => {
            let (m, theta) = alpha.to_polar();
            alpha = Complex64::from_polar(m, theta + step);
        }
    }
    let (polynomial, profile) = instance(zeros, cfg.orientation)?;
    Ok(SearchInstance { polynomial, profile, alpha })
}

/// Hill-climbs from the configured start, accepting strict improvements of
/// the certified ratio and shrinking the step by `step_decay` otherwise.
pub fn tightness_search(cfg: &SearchConfig, target: SearchTarget) -> Result<SearchResult> {
    cfg.validate()?;
    if target.orientation() != cfg.orientation {
        return Err(Error::Config(format!(
            "{} needs a {:?} configuration",
            target.bound_id().name(),
            target.orientation()
        )));
    }
    let mut current = match &cfg.start {
        Some(start) => {
            let zeros = start.zeros.iter().map(|z| {
                let (r, theta) = z.to_polar();
                place_zero(r, theta, cfg.orientation)
            });
            let (polynomial, profile) = instance(zeros.collect(), cfg.orientation)?;
            SearchInstance { polynomial, profile, alpha: start.alpha }
        }
        None => {
            let (polynomial, profile, alpha) = random_instance(cfg, 0)?;
            SearchInstance { polynomial, profile, alpha }
        }
    };
    let Some(mut best) = assess(target, &current, cfg.rel_tol)? else {
        return Err(Error::Config("starting instance stays inconclusive after tightening".into()));
    };
    guard(target, 0, &current, &best)?;

    let mut sigma = cfg.initial_step;
    let mut skipped = 0;
    let mut trace = vec![TraceEntry {
        iteration: 0,
        ratio: Some(best.report.ratio_hi),
        best_ratio: best.report.ratio_hi,
        sigma,
        accepted: true,
        refined_ratio: Some(best.refined),
        classical_ratio: Some(best.classical),
    }];

    for iteration in 1..=cfg.iterations {
        let candidate = perturb(cfg, &current, sigma, iteration as u64)?;
        let entry = match assess(target, &candidate, cfg.rel_tol)? {
            Some(a) => {
                guard(target, iteration, &candidate, &a)?;
                let ratio = a.report.ratio_hi;
                let accepted = ratio > best.report.ratio_hi;
                let (refined, classical) = (a.refined, a.classical);
                if accepted {
                    best = a;
                    current = candidate;
                } else {
                    sigma *= cfg.step_decay;
                }
                TraceEntry {
                    iteration,
                    ratio: Some(ratio),
                    best_ratio: best.report.ratio_hi,
                    sigma,
                    accepted,
                    refined_ratio: Some(refined),
                    classical_ratio: Some(classical),
                }
            }
            None => {
                skipped += 1;
                sigma *= cfg.step_decay;
                TraceEntry {
                    iteration,
                    ratio: None,
                    best_ratio: best.report.ratio_hi,
                    sigma,
                    accepted: false,
                    refined_ratio: None,
                    classical_ratio: None,
                }
            }
        };
        trace.push(entry);
    }

    Ok(SearchResult {
        target,
        best_ratio: best.report.ratio_hi,
        best_instance: current,
        best_report: best.report,
        skipped,
        trace,
    })
}
