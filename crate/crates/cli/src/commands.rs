use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use zukgap_core::almostrep::{certify_gap_with_epsilon, measure_defect, trivial_rep};
use zukgap_core::cochain::{lemma_delta, LemmaCheck, Witness};
use zukgap_core::genset::GeneratingSet;
use zukgap_core::io::{fmt17, genset_to_json, parse_genset, parse_rep, rep_to_json, sig17, sig17_opt};
use zukgap_core::synth::{self, derive_seed};
use zukgap_core::{
    assemble_cochain_system, build_link_graph, certify_gap, decompose_trivial_part, spectral_subspaces,
    vector_dichotomy, verify_b1_bound, verify_defect_inequalities, verify_exact_identities, zuk_certificate,
    AlmostRep64, DecompositionBounds, Error, GapCertificate, LemmaReport, Verdict,
};

use crate::{groups, AnalyzeArgs, DecomposeArgs, Exit, Format, GensetArgs, LemmasArgs, RepArgs, RepKind, SweepArgs, SynthArgs};

/// Environment variable capping the sweep's worker threads.
pub const THREADS_ENV: &str = "ZUKGAP_THREADS";

/// Exit code for an error: Żuk failures and refused decompositions keep their
/// own codes, everything else is an input error.
pub fn classify(err: &anyhow::Error) -> Exit {
    match err.downcast_ref::<Error>() {
        Some(Error::ZukFails(_)) => Exit::ZukFails,
        Some(Error::CertificationNotPassed(_)) | Some(Error::BlockBound(_)) => Exit::Failed,
        _ => Exit::InputError,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_genset(path: &Path) -> Result<GeneratingSet> {
    let text = read(path)?;
    parse_genset(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_rep(args: &RepArgs, gs: &GeneratingSet) -> Result<AlmostRep64> {
    let text = read(&args.rep)?;
    parse_rep(&text, gs, args.tol_unitary).with_context(|| format!("parsing {}", args.rep.display()))
}

/// Writes `text` plus a trailing newline to `out`, or to stdout.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut so = std::io::stdout().lock();
            writeln!(so, "{text}")?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("in-memory serialization")
}

pub fn genset(args: &GensetArgs) -> Result<Exit> {
    let ps = groups::build(&args.group.spec())?;
    emit(args.out.as_deref(), &genset_to_json(&ps.genset))?;
    Ok(Exit::Pass)
}

pub fn synth(args: &SynthArgs) -> Result<Exit> {
    let (gs, ps) = match &args.genset {
        Some(p) => (load_genset(p)?, None),
        None => {
            let ps = groups::build(&args.group.spec())?;
            (ps.genset.clone(), Some(ps))
        }
    };
    let need_perms = || ps.as_ref().context("this kind needs --group or --perm");
    let rep: AlmostRep64 = match args.kind {
        RepKind::Trivial => trivial_rep(&gs),
        RepKind::Regular => synth::regular_representation(&gs)?,
        RepKind::Random => synth::random_almost_rep(&gs, args.dim, args.seed)?,
        RepKind::Permutation => synth::permutation_representation(need_perms()?)?,
        RepKind::Standard => synth::standard_representation(need_perms()?)?,
        RepKind::Sign => synth::sign_representation(need_perms()?)?,
        RepKind::Character => synth::cyclic_character(need_perms()?, args.k)?,
    };
    let rep = synth::perturb(&gs, &rep, args.t, args.seed)?;
    if let Some(p) = &args.genset_out {
        emit(Some(p), &genset_to_json(&gs))?;
    }
    emit(args.out.as_deref(), &rep_to_json(&rep, &gs))?;
    Ok(Exit::Pass)
}

pub fn analyze(args: &AnalyzeArgs) -> Result<Exit> {
    let gs = load_genset(&args.genset)?;
    let graph = build_link_graph(&gs)?;
    let cert = zuk_certificate(&graph)?;
    emit(args.out.as_deref(), &to_json(&cert))?;
    Ok(if cert.zuk_holds { Exit::Pass } else { Exit::ZukFails })
}

fn verdict_exit(v: Verdict) -> Exit {
    match v {
        Verdict::Pass => Exit::Pass,
        Verdict::Fail => Exit::Failed,
        Verdict::Vacuous => Exit::Vacuous,
    }
}

pub fn certify(args: &RepArgs) -> Result<Exit> {
    let gs = load_genset(&args.genset)?;
    let cert = zuk_certificate(&build_link_graph(&gs)?)?;
    cert.require_zuk()?;
    let rep = load_rep(args, &gs)?;
    let gap = certify_gap(&gs, &rep, &cert)?;
    emit(args.out.as_deref(), &to_json(&gap))?;
    Ok(verdict_exit(gap.verdict))
}

#[derive(Serialize)]
struct DecompositionReport<'a> {
    tau_dim: usize,
    sigma_dim: usize,
    #[serde(serialize_with = "sig17")]
    alpha_used: f64,
    gap: &'a GapCertificate,
    bounds: &'a DecompositionBounds,
}

pub fn decompose(args: &DecomposeArgs) -> Result<Exit> {
    let input = &args.input;
    let gs = load_genset(&input.genset)?;
    let cert = zuk_certificate(&build_link_graph(&gs)?)?;
    cert.require_zuk()?;
    let rep = load_rep(input, &gs)?;
    let dec = decompose_trivial_part(&gs, &rep, &cert)?;
    let report = DecompositionReport {
        tau_dim: dec.tau_dim,
        sigma_dim: rep.dim() - dec.tau_dim,
        alpha_used: dec.alpha_used,
        gap: &dec.gap,
        bounds: &dec.bounds,
    };
    if let Some(p) = &args.pi_prime {
        let back = dec.pi_prime.conjugated(&dec.basis.adjoint());
        emit(Some(p), &rep_to_json(&back, &gs))?;
    }
    emit(input.out.as_deref(), &to_json(&report))?;
    Ok(if dec.bounds.all_hold { Exit::Pass } else { Exit::Failed })
}

pub fn lemmas(args: &LemmasArgs) -> Result<Exit> {
    let input = &args.input;
    let gs = load_genset(&input.genset)?;
    let graph = build_link_graph(&gs)?;
    let cert = zuk_certificate(&graph)?;
    let rep = load_rep(input, &gs)?;
    let sys = assemble_cochain_system(&graph, &rep)?;
    let eps = sys.epsilon();
    let delta = lemma_delta(eps);
    let beta = delta * delta / graph.total() as f64;
    let subspaces = spectral_subspaces(&sys, beta)?;
    let mut reports = vec![
        verify_exact_identities(&sys, args.trials, args.seed),
        verify_defect_inequalities(&sys, eps, args.trials, args.seed),
        verify_b1_bound(&sys, &subspaces, eps, delta)?,
    ];
    if let Some(c) = cert.kazhdan_c {
        let check = match vector_dichotomy(&sys, delta, c) {
            Ok(out) => out.to_check(),
            Err(e) => {
                let mut check = LemmaCheck::at_most("vector_dichotomy", c / 2.0, delta);
                check.pass = false;
                check.witness = Some(Witness { space: "C0".into(), coords: Vec::new(), detail: Some(e.to_string()) });
                check
            }
        };
        reports.push(LemmaReport::new(vec![check]));
    }
    let report = LemmaReport::merge(reports);
    emit(input.out.as_deref(), &report.to_json())?;
    Ok(if report.all_pass() { Exit::Pass } else { Exit::Failed })
}

/// `points` scales from `t_min` to `t_max`, log-spaced unless `linear`.
pub fn grid(t_min: f64, t_max: f64, points: usize, linear: bool) -> Result<Vec<f64>> {
    if points == 0 {
        bail!("--points must be positive");
    }
    if !(t_min >= 0.0 && t_min <= t_max && t_max.is_finite()) {
        bail!("need 0 <= t_min <= t_max, got [{t_min}, {t_max}]");
    }
    if !linear && t_min <= 0.0 {
        bail!("log-spaced grid needs t_min > 0 (use --linear for t_min = 0)");
    }
    if points == 1 {
        return Ok(vec![t_min]);
    }
    let last = (points - 1) as f64;
    let mut ts: Vec<f64> = (0..points)
        .map(|i| {
            let f = i as f64 / last;
            if linear {
                t_min + f * (t_max - t_min)
            } else {
                (t_min.ln() + f * (t_max.ln() - t_min.ln())).exp()
            }
        })
        .collect();
    ts[0] = t_min;
    ts[points - 1] = t_max;
    Ok(ts)
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    #[serde(serialize_with = "sig17")]
    pub t: f64,
    #[serde(serialize_with = "sig17")]
    pub epsilon: f64,
    #[serde(serialize_with = "sig17")]
    pub delta: f64,
    #[serde(serialize_with = "sig17")]
    pub alpha: f64,
    #[serde(serialize_with = "sig17")]
    pub lambda1: f64,
    #[serde(serialize_with = "sig17")]
    pub gap_lo: f64,
    #[serde(serialize_with = "sig17")]
    pub gap_hi: f64,
    #[serde(serialize_with = "sig17_opt")]
    pub max_eig_outside_top: Option<f64>,
    #[serde(serialize_with = "sig17_opt")]
    pub min_eig_top: Option<f64>,
    pub verdict: Verdict,
}

pub const SWEEP_COLUMNS: [&str; 10] = [
    "t",
    "epsilon",
    "delta",
    "alpha",
    "lambda1",
    "gap_lo",
    "gap_hi",
    "max_eig_outside_top",
    "min_eig_top",
    "verdict",
];

fn thread_count() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => {
            let n: usize = v.trim().parse().with_context(|| format!("{THREADS_ENV}={v} is not a count"))?;
            if n == 0 {
                bail!("{THREADS_ENV} must be positive");
            }
            Ok(n)
        }
        Err(_) => Ok(0),
    }
}

pub fn sweep_rows(gs: &GeneratingSet, rep: &AlmostRep64, ts: &[f64], seed: u64) -> Result<Vec<SweepRow>> {
    let cert = zuk_certificate(&build_link_graph(gs)?)?;
    cert.require_zuk()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(thread_count()?).build()?;
    let rows: Vec<zukgap_core::Result<SweepRow>> = pool.install(|| {
        ts.par_iter()
            .enumerate()
            .map(|(i, &t)| {
                let p = synth::perturb(gs, rep, t, derive_seed(seed, i as u64))?;
                let eps = measure_defect(gs, &p)?.epsilon;
                let g = certify_gap_with_epsilon(gs, &p, &cert, eps)?;
                Ok(SweepRow {
                    t,
                    epsilon: eps,
                    delta: g.delta,
                    alpha: g.alpha,
                    lambda1: g.lambda1,
                    gap_lo: g.gap_lo,
                    gap_hi: g.gap_hi,
                    max_eig_outside_top: g.max_eig_outside_top(),
                    min_eig_top: g.min_eig_top(),
                    verdict: g.verdict,
                })
            })
            .collect()
    });
    Ok(rows.into_iter().collect::<zukgap_core::Result<Vec<_>>>()?)
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SWEEP_COLUMNS)?;
    let opt = |x: Option<f64>| x.map(fmt17).unwrap_or_default();
    for r in rows {
        w.write_record([
            fmt17(r.t),
            fmt17(r.epsilon),
            fmt17(r.delta),
            fmt17(r.alpha),
            fmt17(r.lambda1),
            fmt17(r.gap_lo),
            fmt17(r.gap_hi),
            opt(r.max_eig_outside_top),
            opt(r.min_eig_top),
            r.verdict.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?;
    Ok(String::from_utf8(bytes)?.trim_end().to_string())
}

pub fn sweep(args: &SweepArgs) -> Result<Exit> {
    let input = &args.input;
    let ts = grid(args.t_min, args.t_max, args.points, args.linear)?;
    let gs = load_genset(&input.genset)?;
    let rep = load_rep(input, &gs)?;
    let rows = sweep_rows(&gs, &rep, &ts, args.seed)?;
    let text = match args.format {
        Format::Csv => sweep_csv(&rows)?,
        Format::Json => to_json(&rows),
    };
    emit(input.out.as_deref(), &text)?;
    Ok(Exit::Pass)
}
