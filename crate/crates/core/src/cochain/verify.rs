use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::report::{LemmaCheck, LemmaReport, Relation, Witness};
use super::{BSubspaces, CochainSystem};
use crate::error::{Error, Result};
use crate::io::complex_pairs;
use crate::linalg::{self, form_range, hermitian_eigen, numerical_radius_bound, re, CMat, CVec};
use crate::scalar::Real;
use crate::synth::{derive_seed, stream_rng};

/// Slack added to every inequality bound.
pub const SLACK: f64 = 1e-9;
/// Tolerance for identities that hold for any unitary-valued `π`.
pub const EXACT_TOL: f64 = 1e-9;
/// Defect below which `d₂d₁ = 0` is expected.
pub const EXACT_EPSILON: f64 = 1e-10;
const CHART_TOL: f64 = 1e-12;
const RADIUS_ANGLES: usize = 256;
const DELTA_FLOOR: f64 = 1e-3;

/// `δ = max(ε^{2/5}, 10⁻³)`: the calibrated `δ`, floored so that `B⁰` stays
/// well separated from the kernel of `d₁` when `ε` vanishes.
pub fn lemma_delta(epsilon: f64) -> f64 {
    epsilon.max(0.0).powf(0.4).max(DELTA_FLOOR)
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn check_rng(seed: u64, name: &str) -> ChaCha8Rng {
    stream_rng(derive_seed(seed, fnv1a(name)), 0)
}

fn random_vectors<R: Real>(seed: u64, name: &str, n: usize, trials: usize) -> Vec<CVec<R>> {
    if n == 0 {
        return Vec::new();
    }
    let mut rng = check_rng(seed, name);
    (0..trials)
        .map(|_| {
            CVec::<R>::from_fn(n, |_, _| {
                let a: f64 = StandardNormal.sample(&mut rng);
                let b: f64 = StandardNormal.sample(&mut rng);
                linalg::cplx(a, b)
            })
        })
        .collect()
}

fn witness<R: Real>(space: &str, v: &CVec<R>) -> Witness {
    Witness { space: space.into(), coords: complex_pairs(v.iter().copied()), detail: None }
}

fn edge_witness(sys: &CochainSystem<impl Real>, e: usize) -> Witness {
    let gs = sys.graph().genset();
    let (s, t) = sys.graph().edges()[e];
    Witness {
        space: "T".into(),
        coords: Vec::new(),
        detail: Some(format!("({}, {})", gs.label(s), gs.label(t))),
    }
}

/// `v*qv / v*Gv`.
fn ratio<R: Real>(q: &CMat<R>, gram: &CMat<R>, v: &CVec<R>) -> f64 {
    let num = linalg::inner(v, &(q * v), &linalg::identity(v.len())).re.as_f64();
    let den = linalg::inner(v, v, gram).re.as_f64();
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// Largest value of the form `q` relative to `gram`, over all vectors and
/// over the samples, with its maximizer.
fn form_sup<R: Real>(q: &CMat<R>, gram: &CMat<R>, samples: &[CVec<R>]) -> (f64, CVec<R>) {
    let fr = form_range(q, gram);
    let mut best = (fr.max.as_f64(), fr.argmax);
    for v in samples {
        let r = ratio(q, gram, v);
        if r > best.0 {
            best = (r, v.clone());
        }
    }
    best
}

/// Smallest value of the form `q` relative to `gram`.
fn form_inf<R: Real>(q: &CMat<R>, gram: &CMat<R>, samples: &[CVec<R>]) -> (f64, CVec<R>) {
    let neg = linalg::scale(q, -R::one());
    let (v, w) = form_sup(&neg, gram, samples);
    (-v, w)
}

/// Largest `|v*qv| / v*Gv` of a Hermitian form.
fn form_abs_sup<R: Real>(q: &CMat<R>, gram: &CMat<R>, samples: &[CVec<R>]) -> (f64, CVec<R>) {
    let (hi, vh) = form_sup(q, gram, samples);
    let (lo, vl) = form_inf(q, gram, samples);
    if hi >= -lo {
        (hi.max(0.0), vh)
    } else {
        (-lo, vl)
    }
}

fn unit_scale(sys: &CochainSystem<impl Real>) -> f64 {
    sys.rep().unitarity_defect().as_f64()
}

/// Identities that hold for every unitary-valued `π`, independent of `ε`.
pub fn verify_exact_identities<R: Real>(sys: &CochainSystem<R>, trials: usize, seed: u64) -> LemmaReport {
    let graph = sys.graph();
    let gs = graph.genset();
    let d = sys.dim_c0();
    let m = sys.dim_c1();
    let g1 = sys.c1_gram().clone();
    let g0 = sys.c0_gram();
    let g2 = sys.c2_gram();
    let udef = unit_scale(sys);
    let mut checks = Vec::new();

    // chart lies in C¹ and reproduces the ambient d₁
    let cop = sys.constraint_ambient();
    let chart_res = linalg::op_norm(&(&cop * sys.c1_embed())).as_f64();
    checks.push(LemmaCheck::at_most("c1_chart_constraint", CHART_TOL + udef, chart_res));

    let sv = linalg::singular_values(&cop);
    let top = sv.first().map(|x| x.as_f64()).unwrap_or(0.0);
    let rank = sv.iter().filter(|x| x.as_f64() > 1e-8 * top.max(1.0)).count();
    let nullity = cop.ncols() - rank;
    let formula = sys.c1_dimension_formula();
    let mismatch = nullity.abs_diff(formula) + m.abs_diff(formula);
    checks.push(
        LemmaCheck::new("c1_dimension", Relation::Equal, 0.0, mismatch as f64).with_witness(Witness {
            space: "C1".into(),
            coords: Vec::new(),
            detail: Some(format!("formula {formula}, numerical {nullity}, chart {m}")),
        }),
    );

    let d1a = sys.d1_ambient();
    let d1a_norm = linalg::op_norm(d1a).as_f64().max(1.0);
    let image_res = linalg::op_norm(&(&cop * d1a)).as_f64() / d1a_norm;
    let chart_loss = linalg::op_norm(&(sys.c1_embed() * sys.d1() - d1a)).as_f64() / d1a_norm;
    checks.push(LemmaCheck::at_most("d1_image_in_c1", EXACT_TOL + udef, image_res.max(chart_loss)));

    // ⟨f,f⟩_{C¹} = Σ_T ‖f(s⁻¹s')‖²
    let name = "reindexed_norm";
    let mut reindex = CMat::<R>::zeros(graph.total() * d, m);
    for e in 0..graph.total() {
        reindex.view_mut((e * d, 0), (d, m)).copy_from(&sys.eval_at(graph.edge_label(e)));
    }
    let q = linalg::hermitian_part(&(reindex.adjoint() * &reindex)) - &g1;
    let samples = random_vectors::<R>(seed, name, m, trials);
    let (obs, v) = form_abs_sup(&q, &g1, &samples);
    checks.push(LemmaCheck::at_most(name, EXACT_TOL, obs).with_witness(witness("C1", &v)));

    // d₂f((s,s')) = −π(s) d₂f((s⁻¹, s⁻¹s')) and M is a bijection of T
    let mut image_hits = vec![0usize; graph.total()];
    let mut missing = Vec::new();
    let mut twisted = CMat::<R>::zeros(graph.total() * d, m);
    for (e, &(s, _)) in graph.edges().iter().enumerate() {
        let t = graph.edge_label(e);
        match graph.edge_id(gs.inverse(s), t) {
            Some(me) => {
                image_hits[me] += 1;
                let row = sys.d2_edge(e) + sys.rep().matrix(s) * sys.d2_edge(me);
                twisted.view_mut((e * d, 0), (d, m)).copy_from(&row);
            }
            None => missing.push(e),
        }
    }
    let bad = missing.len() + image_hits.iter().filter(|&&h| h != 1).count();
    let mut check = LemmaCheck::new("reindex_bijection", Relation::Equal, 0.0, bad as f64);
    if let Some(&e) = missing.first() {
        check = check.with_witness(edge_witness(sys, e));
    } else if let Some(e) = image_hits.iter().position(|&h| h != 1) {
        check = check.with_witness(edge_witness(sys, e));
    }
    checks.push(check);

    let name = "twisted_symmetry";
    let q = twisted.adjoint() * &twisted;
    let samples = random_vectors::<R>(seed, name, m, trials);
    let (obs, v) = form_sup(&q, &g1, &samples);
    let scale = linalg::weighted_op_norm(sys.d2(), &g1, &g2).as_f64().max(1.0);
    checks.push(
        LemmaCheck::at_most(name, EXACT_TOL + udef, obs.max(0.0).sqrt() / scale).with_witness(witness("C1", &v)),
    );

    // d₁* is the Gram adjoint of d₁ and equals −(2/|T|) Σ n(s) f(s)
    let name = "d1_star_adjoint";
    let us = random_vectors::<R>(seed, &format!("{name}/c0"), d, trials);
    let fs = random_vectors::<R>(seed, &format!("{name}/c1"), m, trials);
    let mut worst = 0.0f64;
    for (u, f) in us.iter().zip(&fs) {
        let lhs = linalg::inner(&(sys.d1() * u), f, &g1);
        let rhs = linalg::inner(u, &(sys.d1_star() * f), &g0);
        let den = (linalg::gram_norm(u, &g0) * linalg::gram_norm(f, &g1)).as_f64();
        if den > 0.0 {
            worst = worst.max((lhs - rhs).norm_sqr().as_f64().sqrt() / den);
        }
    }
    checks.push(LemmaCheck::at_most(name, EXACT_TOL, worst));

    let mut closed = CMat::<R>::zeros(d, gs.len() * d);
    let tt = graph.total() as f64;
    for s in 0..gs.len() {
        let w = -2.0 * graph.n(s) as f64 / tt;
        for i in 0..d {
            closed[(i, s * d + i)] = re(R::of(w));
        }
    }
    let closed = closed * sys.c1_embed();
    let diff = linalg::weighted_op_norm(&(sys.d1_star() - &closed), &g1, &g0).as_f64();
    let scale = linalg::weighted_op_norm(&closed, &g1, &g0).as_f64().max(1.0);
    checks.push(LemmaCheck::at_most("d1_star_closed_form", EXACT_TOL + udef, diff / scale));

    let norm = linalg::weighted_op_norm(sys.d1_star(), &g1, &g0).as_f64();
    checks.push(LemmaCheck::at_most("d1_star_norm", 2.0 + SLACK, norm));

    // ⟨Df,Df⟩ = 2⟨Δf,f⟩
    let name = "laplacian_identity";
    let q = linalg::hermitian_part(&(sys.d_op().adjoint() * sys.d_op()))
        - linalg::scale(&sys.laplacian_form(), R::of(2.0));
    let samples = random_vectors::<R>(seed, name, m, trials);
    let (obs, v) = form_abs_sup(&q, &g1, &samples);
    checks.push(LemmaCheck::at_most(name, EXACT_TOL, obs).with_witness(witness("C1", &v)));

    if sys.epsilon() <= EXACT_EPSILON {
        let comp = sys.d2() * sys.d1();
        let n = linalg::weighted_op_norm(&comp, &g0, &g2).as_f64();
        checks.push(LemmaCheck::at_most("d2_d1_vanishes", EXACT_TOL, n));
    }

    LemmaReport::new(checks)
}

/// Inequalities whose right-hand sides scale with the defect `epsilon`.
pub fn verify_defect_inequalities<R: Real>(
    sys: &CochainSystem<R>,
    epsilon: f64,
    trials: usize,
    seed: u64,
) -> LemmaReport {
    let graph = sys.graph();
    let gs = graph.genset();
    let m = sys.dim_c1();
    let d = sys.dim_c0();
    let g1 = sys.c1_gram().clone();
    let g0 = sys.c0_gram();
    let lambda1 = sys.lambda1();
    let eps2 = R::of(epsilon * epsilon);
    let mut checks = Vec::new();

    // ‖d₂d₁u‖_{C²} ≤ ε‖u‖_{C⁰}, globally and per edge
    let comp = sys.d2() * sys.d1();
    let name = "d2_d1_norm";
    let samples = random_vectors::<R>(seed, name, d, trials);
    let (obs, v) = form_sup(&(comp.adjoint() * &comp), &g0, &samples);
    checks.push(LemmaCheck::at_most(name, epsilon + SLACK, obs.max(0.0).sqrt()).with_witness(witness("C0", &v)));

    let name = "d2_d1_pointwise";
    let samples = random_vectors::<R>(seed, name, d, trials);
    let mut worst = (0.0f64, 0usize);
    for e in 0..graph.total() {
        let rows = comp.rows(e * d, d).into_owned();
        let mut val = linalg::op_norm(&rows).as_f64();
        for u in &samples {
            let un = u.norm().as_f64();
            if un > 0.0 {
                val = val.max((&rows * u).norm().as_f64() / un);
            }
        }
        if val > worst.0 {
            worst = (val, e);
        }
    }
    checks.push(LemmaCheck::at_most(name, epsilon + SLACK, worst.0).with_witness(edge_witness(sys, worst.1)));

    // per-edge forms ε²‖f(s'⁻¹s)‖² − ‖L_e f‖² ≥ 0
    let reverse_sum = |e: usize| -> Option<(CMat<R>, CMat<R>)> {
        let (s, sp) = graph.edges()[e];
        let er = graph.edge_id(sp, s)?;
        Some((sys.d2_edge(e) + sys.d2_edge(er), sys.eval_at(graph.edge_label(er))))
    };
    let twisted_diff = |e: usize| -> Option<(CMat<R>, CMat<R>)> {
        let (s, sp) = graph.edges()[e];
        let er = graph.edge_id(sp, s)?;
        let t = graph.edge_label(er);
        let me = graph.edge_id(gs.inverse(sp), t)?;
        Some((sys.d2_edge(e) - sys.rep().matrix(sp) * sys.d2_edge(me), sys.eval_at(t)))
    };
    for (name, build) in [
        ("edge_pair_defect", &reverse_sum as &dyn Fn(usize) -> Option<(CMat<R>, CMat<R>)>),
        ("edge_twist_defect", &twisted_diff),
    ] {
        let samples = random_vectors::<R>(seed, name, m, trials);
        let mut worst: Option<(f64, usize, CVec<R>)> = None;
        let mut broken = None;
        for e in 0..graph.total() {
            let Some((l, r)) = build(e) else {
                broken = Some(e);
                continue;
            };
            let q = l.adjoint() * &l - (r.adjoint() * &r).map(|z| z * re(eps2));
            let (val, v) = form_sup(&q, &g1, &samples);
            if worst.as_ref().is_none_or(|w| val > w.0) {
                worst = Some((val, e, v));
            }
        }
        let check = match (broken, worst) {
            (Some(e), _) => LemmaCheck::at_most(name, SLACK, f64::INFINITY).with_witness(edge_witness(sys, e)),
            (None, Some((val, e, v))) => {
                let mut w = witness("C1", &v);
                w.detail = edge_witness(sys, e).detail;
                LemmaCheck::at_most(name, SLACK, val).with_witness(w)
            }
            (None, None) => LemmaCheck::at_most(name, SLACK, 0.0),
        };
        checks.push(check);
    }

    // |Σ_T ⟨d₂f, π(s)f(s⁻¹s')⟩ − ⅓‖d₂f‖²| ≤ (5/3)ε‖f‖²
    let name = "cross_term";
    let twist = sys.twist_ambient() * sys.c1_embed();
    let third = R::one() / R::of(3.0);
    let d2h_d2 = sys.d2().adjoint() * sys.d2();
    let a = twist.adjoint() * sys.d2() - d2h_d2.map(|z| z * re(third));
    let (upper, _, v) = numerical_radius_bound(&a, &g1, RADIUS_ANGLES);
    let mut obs = upper.as_f64();
    for f in random_vectors::<R>(seed, name, m, trials) {
        let num = (f.adjoint() * &a * &f)[(0, 0)];
        let den = linalg::inner(&f, &f, &g1).re.as_f64();
        if den > 0.0 {
            obs = obs.max(num.norm_sqr().as_f64().sqrt() / den);
        }
    }
    checks.push(LemmaCheck::at_most(name, 5.0 / 3.0 * epsilon + SLACK, obs).with_witness(witness("C1", &v)));

    // |‖Df‖² − ⅓‖d₂f‖² − ‖f‖²| ≤ (10/3)ε‖f‖²
    let name = "d_d2_comparison";
    let q = linalg::hermitian_part(&(sys.d_op().adjoint() * sys.d_op()))
        - d2h_d2.map(|z| z * re(third))
        - &g1;
    let q = linalg::hermitian_part(&q);
    let samples = random_vectors::<R>(seed, name, m, trials);
    let (obs, v) = form_abs_sup(&q, &g1, &samples);
    checks.push(LemmaCheck::at_most(name, 10.0 / 3.0 * epsilon + SLACK, obs).with_witness(witness("C1", &v)));

    // ⟨Δf,f⟩ ≥ λ₁‖f‖² − (λ₁/4)‖d₁*f‖²
    let l1 = R::of(lambda1);
    let star = sys.d1_star_form();
    let name = "laplacian_lower_bound";
    let q = sys.laplacian_form() - g1.map(|z| z * re(l1)) + star.map(|z| z * re(l1 / R::of(4.0)));
    let samples = random_vectors::<R>(seed, name, m, trials);
    let (obs, v) = form_inf(&linalg::hermitian_part(&q), &g1, &samples);
    checks.push(LemmaCheck::at_least(name, -SLACK, obs).with_witness(witness("C1", &v)));

    // ⅓‖d₂f‖² + (λ₁/2)‖d₁*f‖² ≥ (2λ₁ − 1 − (10/3)ε)‖f‖²
    let name = "coboundary_lower_bound";
    let k = R::of(2.0 * lambda1 - 1.0 - 10.0 / 3.0 * epsilon);
    let q = d2h_d2.map(|z| z * re(third)) + star.map(|z| z * re(l1 / R::of(2.0))) - g1.map(|z| z * re(k));
    let samples = random_vectors::<R>(seed, name, m, trials);
    let (obs, v) = form_inf(&linalg::hermitian_part(&q), &g1, &samples);
    checks.push(LemmaCheck::at_least(name, -SLACK, obs).with_witness(witness("C1", &v)));

    LemmaReport::new(checks)
}

/// Bounds on `B¹(δ²/|T|)`: the homogeneous `‖d₂f‖ ≤ (2|T|ε/δ²)‖f‖`, the
/// first-power variant `‖d₂f‖² ≤ (4|T|²ε²/δ⁴)‖f‖` on unit vectors, and the
/// lower bound on `d₁d₁*` restricted to `B¹`.
pub fn verify_b1_bound<R: Real>(
    sys: &CochainSystem<R>,
    subspaces: &BSubspaces<R>,
    epsilon: f64,
    delta: f64,
) -> Result<LemmaReport> {
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter(format!("delta must be positive, got {delta}")));
    }
    let t = sys.graph().total() as f64;
    let lambda1 = sys.lambda1();
    let d4 = delta.powi(4);
    let b1 = &subspaces.b1_basis;
    let g0 = sys.c0_gram();
    let g1 = sys.c1_gram().clone();
    let k = b1.ncols();
    let mut checks = Vec::new();

    // B⁰ and B¹ are invariant under d₁*d₁ and d₁d₁*
    let b0 = &subspaces.b0_basis;
    let a0 = sys.d1_star() * sys.d1();
    let p0 = b0 * b0.adjoint() * &g0;
    let r0 = linalg::op_norm(&((CMat::<R>::identity(g0.nrows(), g0.nrows()) - &p0) * &a0 * b0)).as_f64();
    checks.push(LemmaCheck::at_most("b0_invariance", EXACT_TOL * t, r0));
    let a1 = sys.d1() * sys.d1_star();
    let p1 = b1 * b1.adjoint() * &g1;
    let r1 = linalg::op_norm(&((CMat::<R>::identity(g1.nrows(), g1.nrows()) - &p1) * &a1 * b1)).as_f64();
    checks.push(LemmaCheck::at_most("b1_invariance", EXACT_TOL * t, r1));

    let d2b = sys.d2() * b1;
    let homogeneous = 2.0 * t * epsilon / (delta * delta);
    let top = linalg::singular_values(&d2b).first().map(|x| x.as_f64()).unwrap_or(0.0);
    checks.push(LemmaCheck::at_most("b1_homogeneous", homogeneous + SLACK, top));

    // unit vectors: the basis columns and the top singular direction
    let mut first_power = 0.0f64;
    for j in 0..k {
        first_power = first_power.max(d2b.column(j).norm_squared().as_f64());
    }
    first_power = first_power.max(top * top);
    let literal = 4.0 * t * t * epsilon * epsilon / d4;
    checks.push(LemmaCheck::at_most("b1_first_power", literal + SLACK, first_power));

    let c1_bound = 4.0 - 2.0 / lambda1 - 20.0 * epsilon / (3.0 * lambda1) - 8.0 * t * t * epsilon * epsilon / (3.0 * lambda1 * d4);
    let name = "b1_coboundary_gap";
    if k == 0 {
        checks.push(LemmaCheck::at_least(name, c1_bound - SLACK, f64::INFINITY));
    } else {
        let q = linalg::hermitian_part(&(b1.adjoint() * sys.d1_star_form() * b1));
        let eig = hermitian_eigen(&q);
        let lmin = eig.values[0].as_f64();
        let v: CVec<R> = b1 * eig.vectors.column(0);
        checks.push(LemmaCheck::at_least(name, c1_bound - SLACK, lmin).with_witness(witness("C1", &v)));
    }
    Ok(LemmaReport::new(checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::almostrep::trivial_rep;
    use crate::cochain::{assemble_cochain_system, spectral_subspaces};
    use crate::genset::{cyclic_group, symmetric_group_s3};
    use crate::linkgraph::build_link_graph;
    use crate::synth::{cyclic_character, perturb, random_almost_rep, regular_representation, standard_representation};

    fn s3_standard() -> CochainSystem<f64> {
        let ps = symmetric_group_s3();
        let g = build_link_graph(&ps.genset).unwrap();
        assemble_cochain_system(&g, &standard_representation::<f64>(&ps).unwrap()).unwrap()
    }

    fn assert_all_pass(r: &LemmaReport) {
        let bad: Vec<_> = r.failures().collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn exact_rep_identities() {
        let sys = s3_standard();
        let r = verify_exact_identities(&sys, 8, 1);
        assert_all_pass(&r);
        for c in &r.checks {
            if c.relation == Relation::AtMost && c.check != "d1_star_norm" {
                assert!(c.observed <= 1e-12, "{} = {}", c.check, c.observed);
            }
        }
        assert!(r.get("d2_d1_vanishes").is_some());
    }

    #[test]
    fn z3_character_d1_star_norm() {
        let ps = cyclic_group(3).unwrap();
        let g = build_link_graph(&ps.genset).unwrap();
        let sys = assemble_cochain_system(&g, &cyclic_character::<f64>(&ps, 1).unwrap()).unwrap();
        let r = verify_exact_identities(&sys, 4, 2);
        assert_all_pass(&r);
        assert!(r.get("d1_star_norm").unwrap().observed <= 2.0);
    }

    #[test]
    fn perturbed_rep_keeps_identities_and_inequalities() {
        let ps = symmetric_group_s3();
        let g = build_link_graph(&ps.genset).unwrap();
        let rep = perturb(&ps.genset, &standard_representation::<f64>(&ps).unwrap(), 1e-4, 7).unwrap();
        let sys = assemble_cochain_system(&g, &rep).unwrap();
        let eps = sys.epsilon();
        assert!(eps > 0.0);
        assert_all_pass(&verify_exact_identities(&sys, 8, 3));
        let r = verify_defect_inequalities(&sys, eps, 8, 3);
        assert_all_pass(&r);
        assert!(r.get("d2_d1_norm").unwrap().observed <= eps + 1e-9);
    }

    #[test]
    fn random_rep_identities_hold() {
        let ps = symmetric_group_s3();
        let g = build_link_graph(&ps.genset).unwrap();
        let rep = random_almost_rep::<f64>(&ps.genset, 3, 11).unwrap();
        let sys = assemble_cochain_system(&g, &rep).unwrap();
        assert_all_pass(&verify_exact_identities(&sys, 8, 4));
        assert_all_pass(&verify_defect_inequalities(&sys, sys.epsilon(), 8, 4));
    }

    #[test]
    fn exact_forms_vanish() {
        let sys = s3_standard();
        let r = verify_defect_inequalities(&sys, 0.0, 4, 5);
        assert_all_pass(&r);
        assert!(r.get("cross_term").unwrap().observed <= 1e-9);
        assert!(r.get("d_d2_comparison").unwrap().observed <= 1e-9);
    }

    #[test]
    fn coboundary_gap_at_zero_defect() {
        let sys = s3_standard();
        let delta = lemma_delta(0.0);
        let b = spectral_subspaces(&sys, delta * delta / 20.0).unwrap();
        let r = verify_b1_bound(&sys, &b, 0.0, delta).unwrap();
        assert_all_pass(&r);
        assert!((r.get("b1_coboundary_gap").unwrap().bound - 2.4).abs() < 1e-8);

        let ps = cyclic_group(3).unwrap();
        let g = build_link_graph(&ps.genset).unwrap();
        let sys = assemble_cochain_system(&g, &cyclic_character::<f64>(&ps, 1).unwrap()).unwrap();
        let b = spectral_subspaces(&sys, delta * delta / 2.0).unwrap();
        let r = verify_b1_bound(&sys, &b, 0.0, delta).unwrap();
        assert_all_pass(&r);
        assert!((r.get("b1_coboundary_gap").unwrap().bound - 3.0).abs() < 1e-8);
    }

    #[test]
    fn zero_delta_rejected() {
        let sys = s3_standard();
        let b = spectral_subspaces(&sys, 0.0).unwrap();
        assert!(verify_b1_bound(&sys, &b, 0.0, 0.0).is_err());
    }

    #[test]
    fn trivial_and_regular_reps() {
        let ps = symmetric_group_s3();
        let g = build_link_graph(&ps.genset).unwrap();
        for rep in [trivial_rep::<f64>(&ps.genset), regular_representation::<f64>(&ps.genset).unwrap()] {
            let sys = assemble_cochain_system(&g, &rep).unwrap();
            assert_all_pass(&verify_exact_identities(&sys, 4, 6));
            assert_all_pass(&verify_defect_inequalities(&sys, 0.0, 4, 6));
        }
    }

    #[test]
    fn seeds_are_deterministic() {
        let sys = s3_standard();
        let a = verify_defect_inequalities(&sys, 0.0, 4, 9).to_json();
        let b = verify_defect_inequalities(&sys, 0.0, 4, 9).to_json();
        assert_eq!(a, b);
    }
}
