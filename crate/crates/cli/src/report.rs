use std::fmt::Write as _;
use std::io;

use polarcert::search::SoundnessViolation;
use polarcert::{BoundReport, CertifiedMax, Complex64, PointwiseReport, SearchResult, Verdict};
use serde::{Deserialize, Serialize};

use crate::spec::PolySpec;

pub const CSV_COLUMNS: [&str; 10] = [
    "instance_digest",
    "bound_id",
    "t0_or_s0",
    "alpha_abs",
    "lhs_lo",
    "lhs_hi",
    "rhs_lo",
    "rhs_hi",
    "ratio_hi",
    "verdict",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub rel_tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples_per_degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub index: usize,
    pub spec: PolySpec,
    pub digest: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoundReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<PointwiseReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_modulus: Option<CertifiedMax>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl InstanceReport {
    pub fn new(index: usize, spec: PolySpec, digest: String) -> Self {
        Self { index, spec, digest, bounds: Vec::new(), checks: Vec::new(), max_modulus: None, notes: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub parameters: Parameters,
    #[serde(default)]
    pub instances: Vec<InstanceReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub soundness_violation: Option<SoundnessViolation>,
    pub wall_time_s: f64,
}

impl RunReport {
    fn verdicts(&self) -> impl Iterator<Item = Verdict> + '_ {
        self.instances
            .iter()
            .flat_map(|inst| inst.bounds.iter().map(|b| b.verdict).chain(inst.checks.iter().map(|c| c.verdict)))
    }

    /// 0 when everything holds, 2 on any violation, 3 on any inconclusive verdict.
    pub fn exit_code(&self) -> u8 {
        if self.soundness_violation.is_some() || self.verdicts().any(|v| v == Verdict::CertifiedViolated) {
            2
        } else if self.verdicts().any(|v| v == Verdict::Inconclusive) {
            3
        } else {
            0
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for inst in &self.instances {
            let _ = writeln!(out, "[{}]", inst.index);
            if let Some(m) = &inst.max_modulus {
                let _ = writeln!(
                    out,
                    "  max|P| in [{}, {}]  relative width {:.3e}  samples {}",
                    m.lo,
                    m.hi,
                    m.relative_width(),
                    m.samples_used
                );
            }
            for b in &inst.bounds {
                render_bound(&mut out, b);
            }
            for c in &inst.checks {
                let _ = write!(out, "  {:<20}", c.check_id.name());
                if let Some(t) = &c.constant {
                    let _ = write!(out, " constant {}", t.value);
                }
                let _ = writeln!(
                    out,
                    " worst margin {:.3e} at angle {:.6} ({} samples)  {}",
                    c.worst_margin,
                    c.worst_angle,
                    c.samples,
                    c.verdict.name()
                );
            }
            for note in &inst.notes {
                let _ = writeln!(out, "  note: {note}");
            }
        }
        if let Some(s) = &self.search {
            let (refined, classical) = s.target.ratio_columns();
            let _ = writeln!(out, "search {}", s.target.bound_id().name());
            let _ = writeln!(out, "  best ratio {}", s.best_ratio);
            let _ = writeln!(out, "  iterations {}  skipped {}", s.trace.len() - 1, s.skipped);
            let zeros: Vec<String> =
                s.best_instance.polynomial.zeros().iter().map(|z| format!("[{}, {}]", z.re, z.im)).collect();
            let _ = writeln!(out, "  zeros {}", zeros.join(" "));
            let _ = writeln!(out, "  alpha [{}, {}]", s.best_instance.alpha.re, s.best_instance.alpha.im);
            if let Some(last) = s.trace.iter().rev().find(|e| e.accepted) {
                if let (Some(r), Some(c)) = (last.refined_ratio, last.classical_ratio) {
                    let _ = writeln!(out, "  {refined} {r}  {classical} {c}");
                }
            }
        }
        if let Some(v) = &self.soundness_violation {
            let _ = writeln!(
                out,
                "SOUNDNESS VIOLATION at iteration {}: ratio {} for {}",
                v.iteration, v.ratio, v.report.instance_digest
            );
        }
        let _ = writeln!(out, "wall time {:.3} s", self.wall_time_s);
        out
    }

    pub fn write_csv<W: io::Write>(&self, writer: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(CSV_COLUMNS)?;
        let num = |x: f64| x.to_string();
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        for inst in &self.instances {
            if let Some(m) = &inst.max_modulus {
                let blank = String::new;
                w.write_record([
                    inst.digest.clone(),
                    "max_modulus".into(),
                    blank(),
                    blank(),
                    num(m.lo),
                    num(m.hi),
                    blank(),
                    blank(),
                    blank(),
                    blank(),
                ])?;
            }
            for b in &inst.bounds {
                w.write_record([
                    b.instance_digest.clone(),
                    b.bound_id.name().to_string(),
                    opt(b.constant.map(|c| c.value)),
                    opt(b.param_abs),
                    num(b.lhs.lo),
                    num(b.lhs.hi),
                    num(b.rhs_lower),
                    num(b.rhs_upper),
                    num(b.ratio_hi),
                    b.verdict.name().to_string(),
                ])?;
            }
            for c in &inst.checks {
                w.write_record([
                    c.instance_digest.clone(),
                    c.check_id.name().to_string(),
                    opt(c.constant.map(|t| t.value)),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    c.verdict.name().to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn render_bound(out: &mut String, b: &BoundReport) {
    let _ = write!(out, "  {}", b.bound_id.name());
    if let Some(t) = &b.constant {
        let label = match b.bound_id {
            polarcert::BoundId::Theorem2 => "s0",
            _ => "t0",
        };
        let _ = write!(out, "  {label} = {}", t.value);
    }
    if let Some(a) = b.param_abs {
        let _ = write!(out, "  |param| = {a}");
    }
    out.push('\n');
    let _ = writeln!(out, "    rhs = {}  (lower {})", b.rhs_upper, b.rhs_lower);
    let _ = writeln!(out, "    lhs in [{}, {}]", b.lhs.lo, b.lhs.hi);
    let _ = writeln!(out, "    ratio_hi = {}", b.ratio_hi);
    let _ = writeln!(out, "    verdict {}{}", b.verdict.name(), if b.degenerate { "  (degenerate limit)" } else { "" });
}
