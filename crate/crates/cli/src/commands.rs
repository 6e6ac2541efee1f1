use std::fs;
use std::path::Path;
use std::time::Instant;

use polarcert::search::{random_instance, tightness_search, SearchConfig, SearchTarget};
use polarcert::verify::{self, with_tightening, BoundRequest};
use polarcert::{max_modulus, BoundId, Complex64, Error, Orientation};
use serde::Deserialize;

use crate::report::{InstanceReport, Parameters, RunReport};
use crate::spec::{self, Instance};
use crate::{read_input, Common, Format, InputError, Suite};

pub const DEFAULT_ALPHA: Complex64 = Complex64::new(2.0, 0.0);
pub const DEFAULT_DELTA: Complex64 = Complex64::new(0.5, 0.0);
const MIN_POINTWISE_SAMPLES: usize = 1024;

fn emit(report: &RunReport, format: Format, csv: Option<&Path>) -> Result<u8, InputError> {
    if let Some(path) = csv {
        let file = fs::File::create(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        report.write_csv(file).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(report).map_err(|e| InputError(e.to_string()))?),
    }
    Ok(report.exit_code())
}

fn load(common: &Common) -> Result<Vec<Instance>, InputError> {
    let (source, text) = read_input(common.input.as_deref())?;
    spec::load(&source, &text)
}

fn new_entry(index: usize, inst: &Instance) -> InstanceReport {
    InstanceReport::new(index, inst.spec.clone(), verify::describe(&inst.poly, inst.profile.as_ref(), None))
}

fn check_zero_moduli(inst: &Instance, what: &str, ok: impl Fn(f64) -> bool, rule: &str) -> Result<(), InputError> {
    if let Some(f) = &inst.factored {
        if let Some(z) = f.zeros().iter().find(|z| !ok(z.norm())) {
            return Err(InputError(format!("{what}: zero {z} violates {rule}")));
        }
    }
    Ok(())
}

fn profile_radius(
    inst: &Instance,
    orientation: Orientation,
    pick: fn(&polarcert::RadiusProfile) -> f64,
) -> Option<f64> {
    inst.profile.as_ref().filter(|p| p.orientation() == orientation).map(pick)
}

fn bound_request(
    inst: &Instance,
    id: BoundId,
    alpha: Complex64,
    delta: Complex64,
    k: Option<f64>,
) -> Result<BoundRequest, InputError> {
    let name = id.name();
    let outside_k = || {
        k.or_else(|| profile_radius(inst, Orientation::ZerosOutside, |p| p.min_radius()))
            .ok_or_else(|| InputError(format!("{name} requires --k or an outside profile")))
    };
    Ok(match id {
        BoundId::Bernstein => BoundRequest::Bernstein,
        BoundId::ErdosLax => {
            check_zero_moduli(inst, name, |r| r >= 1.0, "|z| >= 1")?;
            BoundRequest::ErdosLax
        }
        BoundId::Malik => {
            let k = outside_k()?;
            check_zero_moduli(inst, name, |r| r >= k, &format!("|z| >= {k}"))?;
            BoundRequest::Malik { k }
        }
        BoundId::AzizPolar => {
            let k = outside_k()?;
            check_zero_moduli(inst, name, |r| r >= k, &format!("|z| >= {k}"))?;
            BoundRequest::AzizPolar { k, alpha }
        }
        BoundId::Theorem1 => {
            let (_, profile) = inst.require_profile(name, Orientation::ZerosOutside)?;
            BoundRequest::Theorem1 { profile: profile.clone(), alpha }
        }
        BoundId::Govil => {
            let (_, profile) = inst.require_profile(name, Orientation::ZerosOutside)?;
            BoundRequest::Govil { profile: profile.clone() }
        }
        BoundId::Theorem2 => {
            let (f, profile) = inst.require_profile(name, Orientation::ZerosInside)?;
            if f.zeros().iter().any(|z| *z == Complex64::new(0.0, 0.0)) {
                return Err(Error::OriginZero.into());
            }
            BoundRequest::Theorem2 { profile: profile.clone(), delta }
        }
        BoundId::Corollary => {
            let k = k
                .or_else(|| profile_radius(inst, Orientation::ZerosInside, |p| p.max_radius()))
                .ok_or_else(|| InputError(format!("{name} requires --k or an inside profile")))?;
            check_zero_moduli(inst, name, |r| r <= k, &format!("|z| <= {k}"))?;
            BoundRequest::Corollary { k, delta }
        }
    })
}

pub fn bound(
    argv: Vec<String>,
    common: &Common,
    id: BoundId,
    alpha: Option<Complex64>,
    delta: Option<Complex64>,
    k: Option<f64>,
) -> Result<u8, InputError> {
    let start = Instant::now();
    let instances = load(common)?;
    let a = alpha.unwrap_or(DEFAULT_ALPHA);
    let d = delta.unwrap_or(DEFAULT_DELTA);
    // Every request is built, and so every hypothesis checked, before any numerics.
    let requests = instances
        .iter()
        .enumerate()
        .map(|(i, inst)| bound_request(inst, id, a, d, k).map_err(|e| prefix(i, instances.len(), e)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut entries = Vec::with_capacity(instances.len());
    for (i, (inst, req)) in instances.iter().zip(&requests).enumerate() {
        let mut entry = new_entry(i, inst);
        let report = with_tightening(common.rel_tol, |tol| verify::verify_bound(&inst.poly, req, tol))
            .map_err(|e| prefix(i, instances.len(), e.into()))?;
        entry.bounds.push(report);
        entries.push(entry);
    }
    let uses_alpha = matches!(id, BoundId::AzizPolar | BoundId::Theorem1);
    let uses_delta = matches!(id, BoundId::Theorem2 | BoundId::Corollary);
    let report = RunReport {
        command: argv,
        parameters: Parameters {
            rel_tol: common.rel_tol,
            alpha: uses_alpha.then_some(a),
            delta: uses_delta.then_some(d),
            k,
            seed: None,
            samples_per_degree: None,
        },
        instances: entries,
        search: None,
        soundness_violation: None,
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    emit(&report, common.format, common.csv.as_deref())
}

fn prefix(i: usize, n: usize, e: InputError) -> InputError {
    if n > 1 {
        InputError(format!("batch[{i}]: {}", e.0))
    } else {
        e
    }
}

pub struct VerifyOptions {
    pub suite: Suite,
    pub alpha: Option<Complex64>,
    pub delta: Option<Complex64>,
    pub samples_per_degree: usize,
    pub random: Option<u64>,
    pub degree: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Check {
    Lemma1,
    Lemma2,
    Rotation,
    Conjugation,
    Chain,
    Theorem1,
    Theorem2,
    Govil,
}

fn plan(suite: Suite, inst: &Instance) -> Result<(Vec<Check>, Vec<String>), InputError> {
    let outside =
        inst.factored.is_some() && inst.profile.as_ref().is_some_and(|p| p.orientation() == Orientation::ZerosOutside);
    let inside =
        inst.factored.is_some() && inst.profile.as_ref().is_some_and(|p| p.orientation() == Orientation::ZerosInside);
    let origin_free = inst.poly.constant_term() != Complex64::new(0.0, 0.0);
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let lemmas = |checks: &mut Vec<Check>, notes: &mut Vec<String>| {
        if outside {
            checks.push(Check::Lemma1);
        } else {
            notes.push("lemma1 skipped: needs factored form with an outside profile".into());
        }
        checks.push(Check::Lemma2);
    };
    let identities = |checks: &mut Vec<Check>, notes: &mut Vec<String>| {
        checks.push(Check::Rotation);
        if origin_free {
            checks.push(Check::Conjugation);
        } else {
            notes.push("polar_conjugation skipped: P(0) = 0".into());
        }
    };
    match suite {
        Suite::Lemmas => lemmas(&mut checks, &mut notes),
        Suite::Identities => identities(&mut checks, &mut notes),
        Suite::Theorem1 => {
            inst.require_profile("theorem1", Orientation::ZerosOutside)?;
            checks.push(Check::Theorem1);
        }
        Suite::Theorem2 => {
            inst.require_profile("theorem2", Orientation::ZerosInside)?;
            checks.push(Check::Theorem2);
        }
        Suite::Chain => {
            inst.require_profile("chain", Orientation::ZerosOutside)?;
            checks.push(Check::Chain);
        }
        Suite::All => {
            lemmas(&mut checks, &mut notes);
            identities(&mut checks, &mut notes);
            if outside {
                checks.extend([Check::Chain, Check::Theorem1, Check::Govil]);
            }
            if inside {
                checks.push(Check::Theorem2);
            }
        }
    }
    Ok((checks, notes))
}

fn run_check(
    entry: &mut InstanceReport,
    inst: &Instance,
    check: Check,
    opts: &VerifyOptions,
    rel_tol: f64,
) -> Result<(), Error> {
    let n = inst.poly.degree();
    let m = (opts.samples_per_degree * n).max(MIN_POINTWISE_SAMPLES);
    let alpha = opts.alpha.unwrap_or(DEFAULT_ALPHA);
    let delta = opts.delta.unwrap_or(DEFAULT_DELTA);
    let factored = || inst.factored.as_ref().expect("planned checks have a factored form");
    let profile = || inst.profile.as_ref().expect("planned checks have a profile");
    match check {
        Check::Lemma1 => entry.checks.push(verify::verify_lemma1(factored(), profile(), m)?),
        Check::Lemma2 => entry.checks.push(verify::verify_lemma2(&inst.poly, m, rel_tol)?),
        Check::Rotation => entry.checks.push(verify::verify_rotation_identities(&inst.poly, m)?),
        Check::Conjugation => entry.checks.push(verify::verify_polar_conjugation(&inst.poly, alpha, m)?),
        Check::Chain => entry.checks.push(verify::verify_proof_chain(factored(), profile(), alpha, m)?),
        Check::Theorem1 => entry
            .bounds
            .push(with_tightening(rel_tol, |tol| verify::verify_theorem1(factored(), profile(), alpha, tol))?),
        Check::Theorem2 => entry
            .bounds
            .push(with_tightening(rel_tol, |tol| verify::verify_theorem2(factored(), profile(), delta, tol))?),
        Check::Govil => {
            entry.bounds.push(with_tightening(rel_tol, |tol| verify::verify_govil(factored(), profile(), tol))?)
        }
    }
    Ok(())
}

pub fn verify(argv: Vec<String>, common: &Common, opts: &VerifyOptions) -> Result<u8, InputError> {
    let start = Instant::now();
    let instances = match opts.random {
        Some(count) => {
            if common.input.is_some() {
                return Err(InputError("--random cannot be combined with an input file".into()));
            }
            let orientation = match opts.suite {
                Suite::Theorem2 => Orientation::ZerosInside,
                _ => Orientation::ZerosOutside,
            };
            let cfg = SearchConfig::new(opts.degree, orientation, opts.seed);
            (0..count)
                .map(|draw| {
                    let (f, profile, _) = random_instance(&cfg, draw)?;
                    Ok(Instance::from_parts(f, profile))
                })
                .collect::<Result<Vec<_>, Error>>()?
        }
        None => load(common)?,
    };
    let plans = instances
        .iter()
        .enumerate()
        .map(|(i, inst)| plan(opts.suite, inst).map_err(|e| prefix(i, instances.len(), e)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut entries = Vec::with_capacity(instances.len());
    for (i, (inst, (checks, notes))) in instances.iter().zip(plans).enumerate() {
        let mut entry = new_entry(i, inst);
        entry.notes = notes;
        for check in checks {
            run_check(&mut entry, inst, check, opts, common.rel_tol)
                .map_err(|e| prefix(i, instances.len(), e.into()))?;
        }
        entries.push(entry);
    }
    let report = RunReport {
        command: argv,
        parameters: Parameters {
            rel_tol: common.rel_tol,
            alpha: Some(opts.alpha.unwrap_or(DEFAULT_ALPHA)),
            delta: Some(opts.delta.unwrap_or(DEFAULT_DELTA)),
            k: None,
            seed: opts.random.map(|_| opts.seed),
            samples_per_degree: Some(opts.samples_per_degree),
        },
        instances: entries,
        search: None,
        soundness_violation: None,
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    emit(&report, common.format, common.csv.as_deref())
}

/// Search configuration file: the target bound plus a [`SearchConfig`].
#[derive(Deserialize)]
struct SearchFile {
    target: SearchTarget,
    #[serde(flatten)]
    config: SearchConfig,
}

pub fn search(argv: Vec<String>, config: Option<&Path>, csv: Option<&Path>, format: Format) -> Result<u8, InputError> {
    let start = Instant::now();
    let (source, text) = read_input(config)?;
    let file: SearchFile =
        serde_json::from_str(&text).map_err(|e| InputError(format!("{source}:{}:{}: {e}", e.line(), e.column())))?;
    file.config.validate()?;
    let (search, soundness_violation) = match tightness_search(&file.config, file.target) {
        Ok(result) => (Some(result), None),
        Err(Error::Soundness(v)) => (None, Some(*v)),
        Err(e) => return Err(e.into()),
    };
    if let (Some(path), Some(result)) = (csv, &search) {
        fs::write(path, result.trace_csv()).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }
    let report = RunReport {
        command: argv,
        parameters: Parameters {
            rel_tol: file.config.rel_tol,
            alpha: None,
            delta: None,
            k: None,
            seed: Some(file.config.seed),
            samples_per_degree: None,
        },
        instances: Vec::new(),
        search,
        soundness_violation,
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    emit(&report, format, None)
}

pub fn maxmod(argv: Vec<String>, common: &Common) -> Result<u8, InputError> {
    let start = Instant::now();
    let instances = load(common)?;
    let mut entries = Vec::with_capacity(instances.len());
    for (i, inst) in instances.iter().enumerate() {
        let mut entry = new_entry(i, inst);
        entry.max_modulus = Some(max_modulus(&inst.poly, common.rel_tol)?);
        entries.push(entry);
    }
    let report = RunReport {
        command: argv,
        parameters: Parameters {
            rel_tol: common.rel_tol,
            alpha: None,
            delta: None,
            k: None,
            seed: None,
            samples_per_degree: None,
        },
        instances: entries,
        search: None,
        soundness_violation: None,
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    emit(&report, common.format, common.csv.as_deref())
}
