//! Certified maxima of `|P|` (and of `|P| + |Q|`) over the unit circle.
//!
//! For `g(θ) = P(e^{iθ})` with `P` of degree `n`, the Bernstein bound gives
//! `|g'(θ)| = |P'(e^{iθ})| <= n M` and, applied once more to the degree-`n`
//! polynomial `z P'(z)`, `|g''(θ)| = |(z P')'| <= n² M`, where `M` is the
//! maximum being certified. On a sample interval `[a, b]` of width `h` this
//! yields two upper bounds for `|g|`:
//!
//! * first order: `(|g(a)| + |g(b)|)/2 + n M h/2`
//! * second order (linear interpolation error): `max(|g(a)|, |g(b)|) + n² M h²/8`
//!
//! Both have the form `s + c M`. If the maximum sits in that interval then
//! `M <= s/(1 - c)`, which resolves the self-reference. The refinement loop
//! subdivides every interval whose bound is still above the target and
//! discards intervals that provably cannot contain the maximum.
//!
//! Angles are always `2π j / N` for the current grid size `N = m0 2^level`.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub const DEFAULT_REL_TOL: f64 = 1e-9;
pub const MAX_REL_TOL: f64 = 0.1;
pub const MAX_ROUNDS: u32 = 30;

/// The upper endpoint is refined to this fraction of the requested width.
const HI_TIGHTENING: f64 = 1.0 / 64.0;
/// The lower endpoint is reported this fraction of the requested width below
/// `hi`, so it stays below the maximum seen by any fine uniform sampling.
const LO_WIDTH_FRACTION: f64 = 0.75;

const SEGMENT_LEN: u64 = 1 << 13;

/// A two-sided enclosure `lo <= max_{|z|=1} |·| <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedMax {
    pub lo: f64,
    pub hi: f64,
    pub samples_used: u64,
    /// Largest sampled value (rounded evaluation) and its angle.
    pub best_sample: f64,
    pub best_angle: f64,
    /// `false` when the round cap was hit before reaching the tolerance.
    pub converged: bool,
}

impl CertifiedMax {
    fn exact(value: f64) -> Self {
        Self { lo: value, hi: value, samples_used: 0, best_sample: value, best_angle: 0.0, converged: true }
    }

    pub fn relative_width(&self) -> f64 {
        if self.hi == 0.0 {
            0.0
        } else if self.lo <= 0.0 {
            f64::INFINITY
        } else {
            self.hi / self.lo - 1.0
        }
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lo <= value && value <= self.hi
    }

    pub fn overlaps(&self, other: &CertifiedMax) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

/// `|P(e^{2πij/m})|` for `j = 0..m`.
pub fn sample_circle(p: &Polynomial, m: usize) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::Samples { got: 0, min: 1 });
    }
    Ok((0..m as u64).map(|j| p.evaluate(unit_point(j, m as u64)).norm()).collect())
}

pub fn max_modulus(p: &Polynomial, rel_tol: f64) -> Result<CertifiedMax> {
    certify(&[p], rel_tol)
}

/// Certified maximum of `|P(z)| + |Q(z)|` over `|z| = 1`.
pub fn max_modulus_of_sum(p: &Polynomial, q: &Polynomial, rel_tol: f64) -> Result<CertifiedMax> {
    if p == q {
        let single = certify(&[p], rel_tol)?;
        return Ok(CertifiedMax {
            lo: 2.0 * single.lo,
            hi: 2.0 * single.hi,
            best_sample: 2.0 * single.best_sample,
            ..single
        });
    }
    certify(&[p, q], rel_tol)
}

pub(crate) fn check_rel_tol(rel_tol: f64) -> Result<()> {
    if rel_tol > 0.0 && rel_tol <= MAX_REL_TOL {
        Ok(())
    } else {
        Err(Error::Tolerance(rel_tol))
    }
}

/// `e^{2πi j/n}` with `j` reduced mod `n`, so the same grid point always
/// gets bit-identical coordinates.
pub(crate) fn unit_point(j: u64, n: u64) -> num_complex::Complex64 {
    let angle = TAU * ((j % n) as f64) / (n as f64);
    let (s, c) = angle.sin_cos();
    num_complex::Complex64::new(c, s)
}

pub(crate) fn grid_angle(j: u64, n: u64) -> f64 {
    TAU * ((j % n) as f64) / (n as f64)
}

struct Components<'a> {
    polys: &'a [&'a Polynomial],
    // Σ n_k and Σ n_k², the first- and second-order Bernstein constants.
    deg_sum: f64,
    deg_sq_sum: f64,
    // Absolute bound on the rounding error of one evaluated sum of moduli.
    eps: f64,
}

impl<'a> Components<'a> {
    fn new(polys: &'a [&'a Polynomial]) -> Self {
        let mut deg_sum = 0.0;
        let mut deg_sq_sum = 0.0;
        let mut eps = 0.0;
        for p in polys {
            let n = p.degree() as f64;
            deg_sum += n;
            deg_sq_sum += n * n;
            eps += 8.0 * (n + 2.0) * f64::EPSILON * p.coefficient_l1();
        }
        Self { polys, deg_sum, deg_sq_sum, eps }
    }

    fn eval(&self, j: u64, n: u64, out: &mut [f64]) -> f64 {
        let z = unit_point(j, n);
        let mut sum = 0.0;
        for (slot, p) in out.iter_mut().zip(self.polys) {
            *slot = p.evaluate(z).norm();
            sum += *slot;
        }
        sum
    }
}

#[derive(Clone, Copy, Debug)]
struct Run {
    start: u64,
    len: u64,
}

#[derive(Clone, Copy, Debug)]
struct Best {
    value: f64,
    // Position scaled to the finest level so ties can be broken by angle.
    position: u128,
    angle: f64,
}

impl Best {
    fn none() -> Self {
        Self { value: f64::NEG_INFINITY, position: u128::MAX, angle: 0.0 }
    }

    fn merge(self, other: Best) -> Best {
        if other.value > self.value || (other.value == self.value && other.position < self.position) {
            other
        } else {
            self
        }
    }
}

struct Level {
    n: u64,
    shift: u32,
    c1: f64,
    c2: f64,
}

impl Level {
    fn new(m0: u64, level: u32, comps: &Components<'_>) -> Self {
        let n = m0 << level;
        let h = TAU / n as f64;
        Self { n, shift: MAX_ROUNDS + 1 - level, c1: comps.deg_sum * h / 2.0, c2: comps.deg_sq_sum * h * h / 8.0 }
    }

    /// `(s1, s2)` for the interval with the given endpoint moduli.
    fn offsets(&self, ga: f64, gb: f64, a: &[f64], b: &[f64], eps: f64) -> (f64, f64) {
        let s1 = 0.5 * (ga + gb) + eps;
        let s2 = a.iter().zip(b).map(|(x, y)| x.max(*y)).sum::<f64>() + eps;
        (s1, s2)
    }

    /// Bound valid if the global maximum lies in the interval.
    fn self_bound(&self, s1: f64, s2: f64) -> f64 {
        let b1 = if self.c1 < 1.0 { s1 / (1.0 - self.c1) } else { f64::INFINITY };
        let b2 = if self.c2 < 1.0 { s2 / (1.0 - self.c2) } else { f64::INFINITY };
        b1.min(b2)
    }

    /// Upper bound on the interval's maximum given any `m >= M`.
    fn interval_bound(&self, s1: f64, s2: f64, m: f64) -> f64 {
        (s1 + self.c1 * m).min(s2 + self.c2 * m)
    }
}

struct ScanA {
    best: Best,
    max_bound: f64,
    samples: u64,
}

struct ScanB {
    settled: f64,
    children: Vec<Run>,
}

fn push_run(runs: &mut Vec<Run>, start: u64, len: u64) {
    if let Some(last) = runs.last_mut() {
        if last.start + last.len == start {
            last.len += len;
            return;
        }
    }
    runs.push(Run { start, len });
}

fn segments(runs: &[Run]) -> Vec<Run> {
    let mut out = Vec::new();
    for r in runs {
        let mut start = r.start;
        let end = r.start + r.len;
        while start < end {
            let len = SEGMENT_LEN.min(end - start);
            out.push(Run { start, len });
            start += len;
        }
    }
    out
}

fn scan_a(seg: Run, lv: &Level, comps: &Components<'_>) -> ScanA {
    let k = comps.polys.len();
    let mut prev = vec![0.0; k];
    let mut cur = vec![0.0; k];
    let mut gprev = comps.eval(seg.start, lv.n, &mut prev);
    let mut best =
        Best { value: gprev, position: ((seg.start % lv.n) as u128) << lv.shift, angle: grid_angle(seg.start, lv.n) };
    let mut max_bound = f64::NEG_INFINITY;
    for i in seg.start..seg.start + seg.len {
        let gcur = comps.eval(i + 1, lv.n, &mut cur);
        let cand =
            Best { value: gcur, position: (((i + 1) % lv.n) as u128) << lv.shift, angle: grid_angle(i + 1, lv.n) };
        best = best.merge(cand);
        let (s1, s2) = lv.offsets(gprev, gcur, &prev, &cur, comps.eps);
        max_bound = max_bound.max(lv.self_bound(s1, s2));
        std::mem::swap(&mut prev, &mut cur);
        gprev = gcur;
    }
    ScanA { best, max_bound, samples: seg.len + 1 }
}

fn scan_b(seg: Run, lv: &Level, comps: &Components<'_>, hi: f64, lower: f64, target: f64) -> ScanB {
    let k = comps.polys.len();
    let mut prev = vec![0.0; k];
    let mut cur = vec![0.0; k];
    let mut gprev = comps.eval(seg.start, lv.n, &mut prev);
    let mut settled = f64::NEG_INFINITY;
    let mut children = Vec::new();
    for i in seg.start..seg.start + seg.len {
        let gcur = comps.eval(i + 1, lv.n, &mut cur);
        let (s1, s2) = lv.offsets(gprev, gcur, &prev, &cur, comps.eps);
        let sb = lv.self_bound(s1, s2);
        if sb <= target {
            settled = settled.max(sb);
        } else if lv.interval_bound(s1, s2, hi) >= lower {
            push_run(&mut children, 2 * i, 2);
        }
        std::mem::swap(&mut prev, &mut cur);
        gprev = gcur;
    }
    ScanB { settled, children }
}

fn certify(polys: &[&Polynomial], rel_tol: f64) -> Result<CertifiedMax> {
    check_rel_tol(rel_tol)?;
    if polys.iter().all(|p| p.is_zero()) {
        return Ok(CertifiedMax::exact(0.0));
    }
    let comps = Components::new(polys);
    let max_degree = polys.iter().map(|p| p.degree()).max().unwrap_or(0) as u64;
    let m0 = (32 * max_degree).max(256);

    let mut runs = vec![Run { start: 0, len: m0 }];
    let mut best = Best::none();
    let mut settled = f64::NEG_INFINITY;
    let mut samples = 0u64;
    let mut hi = f64::INFINITY;
    let mut converged = false;

    for level in 0..=MAX_ROUNDS {
        if runs.is_empty() {
            hi = settled;
            converged = true;
            break;
        }
        let lv = Level::new(m0, level, &comps);
        let segs = segments(&runs);
        let scans: Vec<ScanA> = segs.par_iter().map(|s| scan_a(*s, &lv, &comps)).collect();
        let mut active_bound = f64::NEG_INFINITY;
        for s in &scans {
            best = best.merge(s.best);
            active_bound = active_bound.max(s.max_bound);
            samples += s.samples;
        }
        hi = hi.min(settled.max(active_bound));
        let lower = best.value - comps.eps;
        let target = lower * (1.0 + rel_tol * HI_TIGHTENING);
        if hi <= target {
            converged = true;
            break;
        }
        if level == MAX_ROUNDS {
            break;
        }
        let results: Vec<ScanB> = segs.par_iter().map(|s| scan_b(*s, &lv, &comps, hi, lower, target)).collect();
        let mut next = Vec::new();
        for r in results {
            settled = settled.max(r.settled);
            for c in r.children {
                push_run(&mut next, c.start, c.len);
            }
        }
        runs = next;
    }

    let lower = (best.value - comps.eps).max(0.0);
    let lo = if converged { lower.min(hi / (1.0 + LO_WIDTH_FRACTION * rel_tol)) } else { lower };
    Ok(CertifiedMax { lo, hi, samples_used: samples, best_sample: best.value, best_angle: best.angle, converged })
}
