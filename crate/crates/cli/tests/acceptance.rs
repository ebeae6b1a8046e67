//! Acceptance suite: ten criteria, one PASS/FAIL line each. Every tolerance
//! is a named constant below.

use std::fs;
use std::process::Command;

use tempfile::TempDir;
use zukgap_core::almostrep::certify_gap_with_epsilon;
use zukgap_core::cochain::lemma_delta;
use zukgap_core::genset::{cyclic_group, symmetric_group_s3, PermutationSet};
use zukgap_core::io::{genset_to_json, rep_to_json};
use zukgap_core::synth::{
    cyclic_character, derive_seed, perturb, permutation_representation, random_almost_rep, regular_representation,
    sign_representation, standard_representation,
};
use zukgap_core::{
    assemble_cochain_system, averaged_operator, build_link_graph, certify_gap, decompose_trivial_part,
    spectral_subspaces, verify_b1_bound, verify_defect_inequalities, verify_exact_identities, zuk_certificate,
    AlmostRep64, LemmaReport, Verdict,
};

const LAMBDA_TOL: f64 = 1e-9;
const KAZHDAN_TOL: f64 = 1e-12;
const SPECTRUM_TOL: f64 = 1e-9;
const DECOMP_TOL: f64 = 1e-9;
const SIGMA_CEILING: f64 = 0.307181;
const SLACK: f64 = 1e-9;
const CORPUS_MIN: usize = 100;
const T_LOW: f64 = 1e-8;
const T_HIGH: f64 = 1e-2;
const T_STEPS: usize = 9;
const RANDOM_SYSTEMS: usize = 100;
const TRIALS: usize = 8;
const SLOPE: f64 = 0.4;
const SLOPE_TOL: f64 = 0.05;
const VACUOUS_EPS: f64 = 1e-5;
const VACUOUS_ALPHA: f64 = 8.53336;
const VACUOUS_ALPHA_TOL: f64 = 1e-4;
const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn kazhdan_oracle(lambda1: f64) -> f64 {
    2.0 / 3f64.sqrt() * (2.0 - 1.0 / lambda1)
}

fn link_graph_oracle() -> Outcome {
    let groups: Vec<(&str, PermutationSet)> = vec![
        ("S3", symmetric_group_s3()),
        ("Z/3", cyclic_group(3).unwrap()),
        ("Z/5", cyclic_group(5).unwrap()),
        ("Z/7", cyclic_group(7).unwrap()),
    ];
    let mut worst_l = 0.0f64;
    let mut worst_c = 0.0f64;
    let mut ok = true;
    for (_, ps) in &groups {
        let n = ps.genset.len() as f64;
        let expected = n / (n - 1.0);
        let cert = zuk_certificate(&build_link_graph(&ps.genset).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let dl = (cert.lambda1 - expected).abs();
        let dc = (cert.kazhdan_c.unwrap_or(f64::NAN) - kazhdan_oracle(expected)).abs();
        ok &= dl <= LAMBDA_TOL && dc <= KAZHDAN_TOL && cert.zuk_holds;
        worst_l = worst_l.max(dl);
        worst_c = worst_c.max(dc);
    }
    check(ok, format!("max |lambda1 - |S|/(|S|-1)| = {worst_l:.2e}, max |c - c(lambda1)| = {worst_c:.2e}"))
}

fn genuine_gap() -> Outcome {
    let ps = symmetric_group_s3();
    let gs = &ps.genset;
    let cert = zuk_certificate(&build_link_graph(gs).unwrap()).unwrap();
    let ceiling = 1.0 - kazhdan_oracle(1.25) / 2.0;
    let std = standard_representation::<f64>(&ps).unwrap();
    let reg = regular_representation::<f64>(gs).unwrap();
    let s = averaged_operator(gs, &std).unwrap().eigenvalues();
    let r = averaged_operator(gs, &reg).unwrap().eigenvalues();
    let std_ok = s.len() == 2 && s.iter().all(|&l| (l + 0.2).abs() <= SPECTRUM_TOL && l < ceiling);
    let reg_ok = r.len() == 6
        && r[..5].iter().all(|&l| (l + 0.2).abs() <= SPECTRUM_TOL)
        && (r[5] - 1.0).abs() <= SPECTRUM_TOL;
    let a = certify_gap(gs, &std, &cert).unwrap();
    let b = certify_gap(gs, &reg, &cert).unwrap();
    let cert_ok = a.verdict == Verdict::Pass && b.verdict == Verdict::Pass && a.alpha == 0.0 && b.alpha == 0.0;
    check(
        std_ok && reg_ok && cert_ok,
        format!("standard {s:?}, regular {r:?}, alphas ({}, {}), 1 - c/2 = {ceiling:.6}", a.alpha, b.alpha),
    )
}

fn regular_decomposition() -> Outcome {
    let ps = symmetric_group_s3();
    let gs = &ps.genset;
    let cert = zuk_certificate(&build_link_graph(gs).unwrap()).unwrap();
    let reg = regular_representation::<f64>(gs).unwrap();
    let dec = decompose_trivial_part(gs, &reg, &cert).map_err(|e| e.to_string())?;
    let sigma = dec.sigma.as_ref().ok_or("sigma is empty")?;
    let spec = averaged_operator(gs, sigma).unwrap().eigenvalues();
    let lo = spec.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = spec.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let b = &dec.bounds;
    check(
        dec.tau_dim == 1
            && b.max_distance <= DECOMP_TOL
            && b.defect_pi_prime <= DECOMP_TOL
            && lo >= -1.0 - DECOMP_TOL
            && hi <= SIGMA_CEILING,
        format!(
            "tau_dim {}, max ||pi' - pi|| = {:.2e}, defect(pi') = {:.2e}, sigma spectrum in [{lo:.6}, {hi:.6}]",
            dec.tau_dim, b.max_distance, b.defect_pi_prime
        ),
    )
}

/// Genuine representations of dimension 1 through 6.
fn bases(ps: &PermutationSet, is_s3: bool) -> Vec<AlmostRep64> {
    let gs = &ps.genset;
    let sum = |parts: &[&AlmostRep64]| AlmostRep64::direct_sum(parts).unwrap();
    if is_s3 {
        let sign = sign_representation::<f64>(ps).unwrap();
        let std = standard_representation::<f64>(ps).unwrap();
        let perm = permutation_representation::<f64>(ps).unwrap();
        vec![
            sign,
            std.clone(),
            perm.clone(),
            sum(&[&std, &std]),
            sum(&[&std, &perm]),
            regular_representation(gs).unwrap(),
        ]
    } else {
        let c: Vec<AlmostRep64> = (0..3).map(|k| cyclic_character::<f64>(ps, k).unwrap()).collect();
        vec![
            c[1].clone(),
            sum(&[&c[1], &c[2]]),
            regular_representation(gs).unwrap(),
            sum(&[&c[0], &c[1], &c[1], &c[2]]),
            sum(&[&c[1], &c[1], &c[2], &c[2], &c[0]]),
            sum(&[&c[0], &c[1], &c[2], &c[0], &c[1], &c[2]]),
        ]
    }
}

struct CorpusEntry {
    label: String,
    epsilon: f64,
    report: LemmaReport,
}

fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for (gname, ps, is_s3) in [("S3", symmetric_group_s3(), true), ("Z/3", cyclic_group(3).unwrap(), false)] {
        let graph = build_link_graph(&ps.genset).unwrap();
        for base in bases(&ps, is_s3) {
            for k in 0..T_STEPS {
                let f = k as f64 / (T_STEPS - 1) as f64;
                let t = (T_LOW.ln() + f * (T_HIGH.ln() - T_LOW.ln())).exp();
                let seed = derive_seed(SEED, out.len() as u64);
                let rep = perturb(&ps.genset, &base, t, seed).unwrap();
                let sys = assemble_cochain_system(&graph, &rep).unwrap();
                let eps = sys.epsilon();
                out.push(CorpusEntry {
                    label: format!("{gname} d={} t={t:.1e}", rep.dim()),
                    epsilon: eps,
                    report: verify_defect_inequalities(&sys, eps, TRIALS, seed),
                });
            }
        }
    }
    out
}

fn corpus_check(corpus: &[CorpusEntry], names: &[&str]) -> Outcome {
    let mut failures = Vec::new();
    let mut worst = f64::NEG_INFINITY;
    for entry in corpus {
        for name in names {
            match entry.report.get(name) {
                Some(c) => {
                    worst = worst.max(c.excess());
                    if !c.pass {
                        failures.push(format!("{} {name} (eps {:.2e})", entry.label, entry.epsilon));
                    }
                }
                None => failures.push(format!("{} {name} missing", entry.label)),
            }
        }
    }
    let detail = format!(
        "{} systems, checks {names:?}, worst (observed - bound) = {worst:.3e}{}",
        corpus.len(),
        if failures.is_empty() { String::new() } else { format!(", failures: {failures:?}") }
    );
    check(failures.is_empty() && corpus.len() >= CORPUS_MIN, detail)
}

fn exact_identities() -> Outcome {
    let groups = [symmetric_group_s3(), cyclic_group(3).unwrap(), cyclic_group(5).unwrap()];
    let names = [
        "reindexed_norm",
        "twisted_symmetry",
        "reindex_bijection",
        "d1_star_adjoint",
        "d1_star_closed_form",
        "d1_star_norm",
        "laplacian_identity",
        "d1_image_in_c1",
        "c1_dimension",
    ];
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for i in 0..RANDOM_SYSTEMS {
        let ps = &groups[i % groups.len()];
        let d = 1 + i % 5;
        let seed = derive_seed(SEED ^ 0x5a5a, i as u64);
        let rep = random_almost_rep::<f64>(&ps.genset, d, seed).unwrap();
        let graph = build_link_graph(&ps.genset).unwrap();
        let sys = assemble_cochain_system(&graph, &rep).unwrap();
        let report = verify_exact_identities(&sys, TRIALS, seed);
        for name in names {
            let c = report.get(name).ok_or(format!("{name} missing"))?;
            if name != "d1_star_norm" && name != "c1_dimension" && name != "reindex_bijection" {
                worst = worst.max(c.observed);
            }
            if !c.pass {
                failures.push(format!("system {i} {name} = {:.3e}", c.observed));
            }
        }
    }
    check(
        failures.is_empty(),
        format!("{RANDOM_SYSTEMS} random systems, worst identity residual {worst:.2e}{}", if failures.is_empty() { String::new() } else { format!(", failures {failures:?}") }),
    )
}

fn coboundary_gap_at_zero() -> Outcome {
    let s3 = symmetric_group_s3();
    let z3 = cyclic_group(3).unwrap();
    let cases = [
        ("S3 standard", &s3, standard_representation::<f64>(&s3).unwrap(), 1.25),
        ("Z/3 omega", &z3, cyclic_character::<f64>(&z3, 1).unwrap(), 2.0),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, ps, rep, lambda1) in cases {
        let graph = build_link_graph(&ps.genset).unwrap();
        let sys = assemble_cochain_system(&graph, &rep).unwrap();
        let delta = lemma_delta(0.0);
        let sub = spectral_subspaces(&sys, delta * delta / graph.total() as f64).unwrap();
        let report = verify_b1_bound(&sys, &sub, 0.0, delta).unwrap();
        let c = report.get("b1_coboundary_gap").ok_or("missing")?;
        let bound = 4.0 - 2.0 / lambda1;
        ok &= c.observed >= bound - SLACK && sub.b1_basis.ncols() > 0;
        parts.push(format!("{name}: lambda_min = {:.12} vs {bound}", c.observed));
    }
    check(ok, parts.join("; "))
}

fn zukgap(args: &[&str], threads: &str) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_zukgap"))
        .args(args)
        .env("ZUKGAP_THREADS", threads)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Self { dir: TempDir::new().unwrap() }
    }

    fn put(&self, name: &str, text: &str) -> String {
        let p = self.dir.path().join(name);
        fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }
}

fn alpha_scaling(files: &Files) -> Outcome {
    let ps = symmetric_group_s3();
    let gs = files.put("s3.json", &genset_to_json(&ps.genset));
    let rep = files.put("reg.json", &rep_to_json(&regular_representation::<f64>(&ps.genset).unwrap(), &ps.genset));
    let (code, csv) = zukgap(
        &["sweep", "--genset", &gs, "--rep", &rep, "--t-min", "1e-12", "--t-max", "1e-6", "--points", "13"],
        "4",
    );
    if code != 0 {
        return Err(format!("sweep exited {code}"));
    }
    let text = String::from_utf8(csv).unwrap();
    let rows: Vec<Vec<String>> =
        text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect();
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r[1].parse::<f64>().unwrap(), r[3].parse::<f64>().unwrap()))
        .filter(|&(e, a)| e > 0.0 && a > 0.0)
        .map(|(e, a)| (e.ln(), a.ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    check(
        rows.len() == 13 && pts.len() >= 10 && (slope - SLOPE).abs() <= SLOPE_TOL,
        format!("{} rows, {} fitted, slope {slope:.6}", rows.len(), pts.len()),
    )
}

fn honest_vacuity(files: &Files) -> Outcome {
    let ps = symmetric_group_s3();
    let gs = &ps.genset;
    let cert = zuk_certificate(&build_link_graph(gs).unwrap()).unwrap();
    let std = standard_representation::<f64>(&ps).unwrap();
    let g = certify_gap_with_epsilon(gs, &std, &cert, VACUOUS_EPS).unwrap();
    let c = kazhdan_oracle(1.25);
    let direct = g.verdict == Verdict::Vacuous && (g.alpha - VACUOUS_ALPHA).abs() <= VACUOUS_ALPHA_TOL && g.alpha > c / 4.0;

    // a rep whose measured defect is near 1e-5, through the CLI
    let rep = perturb(gs, &std, VACUOUS_EPS / 3.0, SEED).unwrap();
    let measured = zukgap_core::measure_defect(gs, &rep).unwrap().epsilon;
    let gpath = files.put("s3v.json", &genset_to_json(gs));
    let rpath = files.put("v.json", &rep_to_json(&rep, gs));
    let (code, _) = zukgap(&["certify", "--genset", &gpath, "--rep", &rpath], "1");
    check(
        direct && code == 4,
        format!(
            "eps 1e-5: alpha = {:.5}, c/4 = {:.5}, verdict {}; measured eps {measured:.2e} via CLI exits {code}",
            g.alpha,
            c / 4.0,
            g.verdict
        ),
    )
}

fn determinism(files: &Files) -> Outcome {
    let ps = symmetric_group_s3();
    let gs = files.put("s3d.json", &genset_to_json(&ps.genset));
    let reg = files.put("regd.json", &rep_to_json(&regular_representation::<f64>(&ps.genset).unwrap(), &ps.genset));
    let noisy = perturb(&ps.genset, &standard_representation::<f64>(&ps).unwrap(), 1e-4, 3).unwrap();
    let pert = files.put("pert.json", &rep_to_json(&noisy, &ps.genset));
    let runs: Vec<Vec<&str>> = vec![
        vec!["sweep", "--genset", &gs, "--rep", &reg, "--seed", "17"],
        vec!["sweep", "--genset", &gs, "--rep", &reg, "--seed", "17", "--format", "json"],
        vec!["lemmas", "--genset", &gs, "--rep", &pert, "--seed", "5", "--trials", "4"],
        vec!["certify", "--genset", &gs, "--rep", &pert],
    ];
    let mut same = true;
    let mut sizes = Vec::new();
    for args in &runs {
        let (c1, a) = zukgap(args, "1");
        let (c2, b) = zukgap(args, "1");
        let (c3, c) = zukgap(args, "8");
        same &= a == b && b == c && c1 == c2 && c2 == c3 && !a.is_empty();
        sizes.push(a.len());
    }
    check(same, format!("{} commands x (2 runs at 1 thread + 1 run at 8 threads), output bytes {sizes:?}", runs.len()))
}

fn main() {
    let files = Files::new();
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("link-graph oracle", Box::new(link_graph_oracle)),
        ("genuine-representation gap", Box::new(genuine_gap)),
        ("decomposition of the regular representation", Box::new(regular_decomposition)),
        ("defect transport d2 d1 <= eps", Box::new(|| corpus_check(&corpus, &["d2_d1_norm", "d2_d1_pointwise"]))),
        ("exact identities on random systems", Box::new(exact_identities)),
        (
            "inequality suite over all vectors",
            Box::new(|| {
                corpus_check(
                    &corpus,
                    &["cross_term", "d_d2_comparison", "laplacian_lower_bound", "coboundary_lower_bound"],
                )
            }),
        ),
        ("coboundary gap on B1 at eps = 0", Box::new(coboundary_gap_at_zero)),
        ("alpha ~ eps^(2/5) scaling", Box::new(|| alpha_scaling(&files))),
        ("eps = 1e-5 is reported vacuous", Box::new(|| honest_vacuity(&files))),
        ("byte-identical outputs", Box::new(|| determinism(&files))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
