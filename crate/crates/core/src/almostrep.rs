//! ε-almost representations: defect measurement, the averaged operator
//! `x = (1/|S|) Σ π(s)`, the gap certificate, and the splitting
//! `π′ = τ ⊕ σ` off the almost-invariant part.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genset::GeneratingSet;
use crate::io::{sig17, sig17_opt, sig17_vec};
use crate::linalg::{self, hermitian_eigen, op_norm, re, CMat, HermitianEigen};
use crate::linkgraph::SpectralCertificate;
use crate::scalar::Real;

/// Default unitarity / adjoint-symmetry tolerance.
pub const TOL_UNITARY: f64 = 1e-8;

/// Eigenvalue slack `1e−9·d`.
pub fn tol_eig(dim: usize) -> f64 {
    1e-9 * dim as f64
}

/// A map from symbols to `d×d` unitaries with `π(s⁻¹) = π(s)*` holding
/// exactly as stored data.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostRep<R: Real> {
    dim: usize,
    matrices: Vec<CMat<R>>,
}

impl<R: Real> AlmostRep<R> {
    /// Builds from one matrix per symbol. The partner of each orbit
    /// representative is replaced by the exact adjoint after checking it
    /// agrees within `tol_unitary`.
    pub fn new(gs: &GeneratingSet, matrices: Vec<CMat<R>>, tol_unitary: R) -> Result<Self> {
        if matrices.len() != gs.len() {
            return Err(Error::InvalidRep(format!(
                "{} matrices for {} symbols",
                matrices.len(),
                gs.len()
            )));
        }
        let dim = matrices.first().map(|m| m.nrows()).unwrap_or(0);
        Self::from_partial(gs, dim, matrices.into_iter().map(Some).collect(), tol_unitary)
    }

    /// Builds from matrices given for at least one symbol per inverse orbit.
    pub fn from_partial(
        gs: &GeneratingSet,
        dim: usize,
        given: Vec<Option<CMat<R>>>,
        tol_unitary: R,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidRep("dimension must be positive".into()));
        }
        if given.len() != gs.len() {
            return Err(Error::InvalidRep("one slot per symbol required".into()));
        }
        for (s, m) in given.iter().enumerate() {
            if let Some(m) = m {
                if m.nrows() != dim || m.ncols() != dim {
                    return Err(Error::InvalidRep(format!("matrix for `{}` is not {dim}x{dim}", gs.label(s))));
                }
            }
        }
        let mut matrices = vec![CMat::<R>::zeros(dim, dim); gs.len()];
        for s in gs.orbit_representatives() {
            let inv = gs.inverse(s);
            if s == inv {
                let m = given[s]
                    .as_ref()
                    .ok_or_else(|| Error::InvalidRep(format!("missing matrix for `{}`", gs.label(s))))?;
                let skew = op_norm(&(m - m.adjoint()));
                if skew > tol_unitary {
                    return Err(Error::InvalidRep(format!(
                        "involutive `{}` is not Hermitian (defect {skew})",
                        gs.label(s)
                    )));
                }
                matrices[s] = linalg::hermitian_part(m);
                continue;
            }
            let m = match (&given[s], &given[inv]) {
                (Some(a), Some(b)) => {
                    let gap = op_norm(&(b - a.adjoint()));
                    if gap > tol_unitary {
                        return Err(Error::InvalidRep(format!(
                            "pi(`{}`) differs from pi(`{}`)* by {gap}",
                            gs.label(inv),
                            gs.label(s)
                        )));
                    }
                    a.clone()
                }
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.adjoint(),
                (None, None) => {
                    return Err(Error::InvalidRep(format!("missing matrix for orbit of `{}`", gs.label(s))))
                }
            };
            matrices[inv] = m.adjoint();
            matrices[s] = m;
        }
        for (s, m) in matrices.iter().enumerate() {
            let defect = linalg::unitary_defect(m);
            if !(defect <= tol_unitary) {
                return Err(Error::InvalidRep(format!(
                    "pi(`{}`) is not unitary (defect {defect})",
                    gs.label(s)
                )));
            }
        }
        Ok(Self { dim, matrices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrix(&self, s: usize) -> &CMat<R> {
        &self.matrices[s]
    }

    pub fn matrices(&self) -> &[CMat<R>] {
        &self.matrices
    }

    /// `π(s) ↦ V π(s) V*` for a unitary `V`.
    pub fn conjugated(&self, v: &CMat<R>) -> Self {
        let vh = v.adjoint();
        Self { dim: self.dim, matrices: self.matrices.iter().map(|m| v * m * &vh).collect() }
    }

    /// Largest `‖π(s)*π(s) − I‖_op`.
    pub fn unitarity_defect(&self) -> R {
        self.matrices.iter().map(linalg::unitary_defect).fold(R::zero(), |a, b| a.max(b))
    }

    /// Block-diagonal direct sum of representations on the same set.
    pub fn direct_sum(parts: &[&Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidRep("empty direct sum".into()))?;
        if parts.iter().any(|p| p.len() != first.len()) {
            return Err(Error::InvalidRep("direct sum of reps on different sets".into()));
        }
        let matrices = (0..first.len())
            .map(|s| linalg::direct_sum(&parts.iter().map(|p| p.matrix(s)).collect::<Vec<_>>()))
            .collect();
        Ok(Self { dim: parts.iter().map(|p| p.dim).sum(), matrices })
    }
}

/// Measured multiplicativity defect.
#[derive(Clone, Debug, Serialize)]
pub struct DefectReport {
    #[serde(serialize_with = "sig17")]
    pub epsilon: f64,
    /// `(s₁, s₂, s₁s₂)` attaining the maximum, absent when no product is
    /// defined.
    pub worst_triple: Option<[String; 3]>,
    #[serde(serialize_with = "sig17")]
    pub unitarity_defect: f64,
}

fn check_matches<R: Real>(gs: &GeneratingSet, rep: &AlmostRep<R>) -> Result<()> {
    if rep.len() != gs.len() {
        return Err(Error::InvalidRep(format!(
            "representation has {} matrices, generating set has {} symbols",
            rep.len(),
            gs.len()
        )));
    }
    Ok(())
}

/// `ε = max ‖π(s₁s₂) − π(s₁)π(s₂)‖_op` over defined products.
pub fn measure_defect<R: Real>(gs: &GeneratingSet, rep: &AlmostRep<R>) -> Result<DefectReport> {
    check_matches(gs, rep)?;
    let mut epsilon = R::zero();
    let mut worst = None;
    for (a, b, c) in gs.products() {
        let d = op_norm(&(rep.matrix(c) - rep.matrix(a) * rep.matrix(b)));
        if worst.is_none() || d > epsilon {
            epsilon = d;
            worst = Some((a, b, c));
        }
    }
    Ok(DefectReport {
        epsilon: epsilon.as_f64(),
        worst_triple: worst.map(|(a, b, c)| {
            [gs.label(a).to_string(), gs.label(b).to_string(), gs.label(c).to_string()]
        }),
        unitarity_defect: rep.unitarity_defect().as_f64(),
    })
}

/// The Hermitian averaged operator and its spectrum.
pub struct AveragedOperator<R: Real> {
    pub matrix: CMat<R>,
    pub eigen: HermitianEigen<R>,
}

impl<R: Real> AveragedOperator<R> {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigen.values.iter().map(|v| v.as_f64()).collect()
    }

    pub fn max_eigenvalue(&self) -> R {
        *self.eigen.values.last().expect("nonempty spectrum")
    }
}

/// `x = (1/|S|) Σ_s π(s)`, symmetrized as `(x + x*)/2`.
pub fn averaged_operator<R: Real>(gs: &GeneratingSet, rep: &AlmostRep<R>) -> Result<AveragedOperator<R>> {
    check_matches(gs, rep)?;
    let mut sum = CMat::<R>::zeros(rep.dim(), rep.dim());
    for m in rep.matrices() {
        sum += m;
    }
    let x = linalg::hermitian_part(&linalg::scale(&sum, R::one() / R::of(gs.len() as f64)));
    let eigen = hermitian_eigen(&x);
    Ok(AveragedOperator { matrix: x, eigen })
}

/// `δ = ε^{2/5}` and `α = max{10ε/(3λ₁) + 8|T|²ε²/(3λ₁δ⁴), δ}`, with
/// `α(0) = 0`.
pub fn compute_alpha(epsilon: f64, lambda1: f64, t_count: usize) -> (f64, f64) {
    if epsilon <= 0.0 {
        return (0.0, 0.0);
    }
    let delta = epsilon.powf(0.4);
    let t = t_count as f64;
    // ε²/δ⁴ = ε^{2/5}; the closed form avoids underflow of ε² for tiny ε
    let ratio = epsilon.powf(0.4);
    let first = 10.0 * epsilon / (3.0 * lambda1) + 8.0 * t * t * ratio / (3.0 * lambda1);
    (delta, first.max(delta))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Vacuous => "vacuous",
        })
    }
}

/// Spectral gap certificate for the averaged operator.
#[derive(Clone, Debug, Serialize)]
pub struct GapCertificate {
    #[serde(serialize_with = "sig17")]
    pub epsilon: f64,
    #[serde(serialize_with = "sig17")]
    pub delta: f64,
    #[serde(serialize_with = "sig17")]
    pub alpha: f64,
    #[serde(serialize_with = "sig17")]
    pub lambda1: f64,
    #[serde(serialize_with = "sig17")]
    pub kazhdan_c: f64,
    /// Open interval `(1 − c/2 + α, 1 − α)` that must be eigenvalue free.
    #[serde(serialize_with = "sig17")]
    pub gap_lo: f64,
    #[serde(serialize_with = "sig17")]
    pub gap_hi: f64,
    #[serde(serialize_with = "sig17_vec")]
    pub eigenvalues: Vec<f64>,
    pub verdict: Verdict,
    /// Eigenvalues found inside the gap interval.
    #[serde(serialize_with = "sig17_vec")]
    pub violations: Vec<f64>,
}

impl GapCertificate {
    /// Largest eigenvalue below the top cluster `[1 − α − tol, 1]`.
    pub fn max_eig_outside_top(&self) -> Option<f64> {
        let cut = self.top_threshold();
        self.eigenvalues.iter().copied().filter(|&l| l < cut).fold(None, |a, l| Some(a.map_or(l, |m: f64| m.max(l))))
    }

    /// Smallest eigenvalue in the top cluster.
    pub fn min_eig_top(&self) -> Option<f64> {
        let cut = self.top_threshold();
        self.eigenvalues.iter().copied().find(|&l| l >= cut)
    }

    fn top_threshold(&self) -> f64 {
        1.0 - self.alpha - tol_eig(self.eigenvalues.len())
    }
}

/// Measures ε and certifies the gap.
pub fn certify_gap<R: Real>(
    gs: &GeneratingSet,
    rep: &AlmostRep<R>,
    cert: &SpectralCertificate,
) -> Result<GapCertificate> {
    cert.require_zuk()?;
    let defect = measure_defect(gs, rep)?;
    certify_gap_with_epsilon(gs, rep, cert, defect.epsilon)
}

/// Defects at or below `1000·machine_epsilon` are rounding noise and are
/// certified as exact (`α = 0`).
pub fn epsilon_noise_floor<R: Real>() -> f64 {
    1e3 * R::default_epsilon().as_f64()
}

/// Certifies the gap using a caller-supplied ε (any upper bound on the
/// defect is admissible).
pub fn certify_gap_with_epsilon<R: Real>(
    gs: &GeneratingSet,
    rep: &AlmostRep<R>,
    cert: &SpectralCertificate,
    epsilon: f64,
) -> Result<GapCertificate> {
    let c = cert.require_zuk()?;
    if !(epsilon >= 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon must be >= 0, got {epsilon}")));
    }
    let effective = if epsilon <= epsilon_noise_floor::<R>() { 0.0 } else { epsilon };
    let (delta, alpha) = compute_alpha(effective, cert.lambda1, cert.edge_count);
    let avg = averaged_operator(gs, rep)?;
    let eigenvalues = avg.eigenvalues();
    let gap_lo = 1.0 - c / 2.0 + alpha;
    let gap_hi = 1.0 - alpha;
    let slack = tol_eig(rep.dim());
    let (verdict, violations) = if gap_lo >= gap_hi {
        (Verdict::Vacuous, Vec::new())
    } else {
        let inside: Vec<f64> =
            eigenvalues.iter().copied().filter(|&l| l > gap_lo + slack && l < gap_hi - slack).collect();
        if inside.is_empty() {
            (Verdict::Pass, inside)
        } else {
            (Verdict::Fail, inside)
        }
    };
    Ok(GapCertificate {
        epsilon,
        delta,
        alpha,
        lambda1: cert.lambda1,
        kazhdan_c: c,
        gap_lo,
        gap_hi,
        eigenvalues,
        verdict,
        violations,
    })
}

/// Unitary polar factor `U` of `M = U P`; the nearest unitary to `M`.
pub fn nearest_unitary<R: Real>(m: &CMat<R>) -> Result<CMat<R>> {
    let svd = m.clone().svd(true, true);
    let smax = svd.singular_values.iter().fold(R::zero(), |a, &b| a.max(b));
    let smin = svd.singular_values.iter().fold(R::of(f64::INFINITY), |a, &b| a.min(b));
    if !(smin > R::of(1e-10) * smax.max(R::one())) {
        return Err(Error::RankDeficient(smin.as_f64()));
    }
    let u = svd.u.expect("requested U");
    let vt = svd.v_t.expect("requested V*");
    Ok(u * vt)
}

/// Measured quantities of the splitting, each next to its closed-form bound.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionBounds {
    #[serde(serialize_with = "sig17")]
    pub block_b_norm: f64,
    #[serde(serialize_with = "sig17")]
    pub block_c_norm: f64,
    /// `|S|α`
    #[serde(serialize_with = "sig17")]
    pub block_bound: f64,
    #[serde(serialize_with = "sig17")]
    pub max_distance: f64,
    /// `3|S|α`
    #[serde(serialize_with = "sig17")]
    pub distance_bound: f64,
    #[serde(serialize_with = "sig17")]
    pub defect_pi_prime: f64,
    /// `ε + 6|S|α`
    #[serde(serialize_with = "sig17")]
    pub defect_bound: f64,
    /// Largest eigenvalue of the averaged `σ` (absent when `σ` is empty).
    #[serde(serialize_with = "sig17_opt")]
    pub sigma_max_eig: Option<f64>,
    /// `1 − c/2 + (1 + 3|S|)α`
    #[serde(serialize_with = "sig17")]
    pub sigma_bound: f64,
    pub all_hold: bool,
}

/// `π′ = I_τ ⊕ σ` in the adapted basis `H ⊕ H^⊥`.
#[derive(Clone, Debug)]
pub struct Decomposition<R: Real> {
    /// Unitary whose first `tau_dim` columns span `H`.
    pub basis: CMat<R>,
    pub pi_prime: AlmostRep<R>,
    pub tau_dim: usize,
    pub sigma: Option<AlmostRep<R>>,
    pub alpha_used: f64,
    pub gap: GapCertificate,
    pub bounds: DecompositionBounds,
}

/// Splits off the almost-invariant subspace `H` (eigenvalues of `x` at
/// least `1 − α`) and replaces the complementary block of each `π(s)` by its
/// nearest unitary.
pub fn decompose_trivial_part<R: Real>(
    gs: &GeneratingSet,
    rep: &AlmostRep<R>,
    cert: &SpectralCertificate,
) -> Result<Decomposition<R>> {
    let gap = certify_gap(gs, rep, cert)?;
    if gap.verdict != Verdict::Pass {
        return Err(Error::CertificationNotPassed(gap.verdict.to_string()));
    }
    let d = rep.dim();
    let n_s = gs.len() as f64;
    let alpha = gap.alpha;
    let tol = tol_eig(d);
    let avg = averaged_operator(gs, rep)?;

    // eigenvectors in descending eigenvalue order: H first
    let mut basis = CMat::<R>::zeros(d, d);
    for j in 0..d {
        basis.set_column(j, &avg.eigen.vectors.column(d - 1 - j));
    }
    let cut = 1.0 - alpha - tol;
    let tau_dim = avg.eigen.values.iter().filter(|&&l| l.as_f64() >= cut).count();
    let k = d - tau_dim;

    let block_bound = n_s * alpha;
    let mut block_b = R::zero();
    let mut block_c = R::zero();
    let mut adapted = Vec::with_capacity(gs.len());
    for m in rep.matrices() {
        let a = basis.adjoint() * m * &basis;
        block_b = block_b.max(op_norm(&a.view((0, tau_dim), (tau_dim, k)).into_owned()));
        block_c = block_c.max(op_norm(&a.view((tau_dim, 0), (k, tau_dim)).into_owned()));
        adapted.push(a);
    }
    let limit = R::of(block_bound + tol);
    if block_b > limit || block_c > limit {
        return Err(Error::BlockBound(format!(
            "||B|| = {}, ||C|| = {}, bound |S|alpha = {block_bound}",
            block_b.as_f64(),
            block_c.as_f64()
        )));
    }

    let tol_u = R::of(TOL_UNITARY);
    let mut sigma_given = vec![None; gs.len()];
    let mut prime_given = vec![None; gs.len()];
    if k > 0 {
        for s in gs.orbit_representatives() {
            let block = adapted[s].view((tau_dim, tau_dim), (k, k)).into_owned();
            let mut dp = nearest_unitary(&block)?;
            if gs.is_involutive(s) {
                dp = linalg::hermitian_part(&dp);
            }
            let mut full = CMat::<R>::identity(d, d);
            full.view_mut((tau_dim, tau_dim), (k, k)).copy_from(&dp);
            prime_given[s] = Some(full);
            sigma_given[s] = Some(dp);
        }
    } else {
        for s in gs.orbit_representatives() {
            prime_given[s] = Some(CMat::<R>::identity(d, d));
        }
    }
    let pi_prime = AlmostRep::from_partial(gs, d, prime_given, tol_u)?;
    let sigma = if k > 0 { Some(AlmostRep::from_partial(gs, k, sigma_given, tol_u)?) } else { None };

    let max_distance = adapted
        .iter()
        .zip(pi_prime.matrices())
        .map(|(a, p)| op_norm(&(p - a)))
        .fold(R::zero(), |x, y| x.max(y))
        .as_f64();
    let defect_pi_prime = measure_defect(gs, &pi_prime)?.epsilon;
    let sigma_max_eig = match &sigma {
        Some(sig) => Some(averaged_operator(gs, sig)?.max_eigenvalue().as_f64()),
        None => None,
    };
    let distance_bound = 3.0 * n_s * alpha;
    let defect_bound = gap.epsilon + 6.0 * n_s * alpha;
    let sigma_bound = 1.0 - gap.kazhdan_c / 2.0 + (1.0 + 3.0 * n_s) * alpha;
    let all_hold = max_distance <= distance_bound + tol
        && defect_pi_prime <= defect_bound + tol
        && sigma_max_eig.is_none_or(|m| m <= sigma_bound + tol);

    Ok(Decomposition {
        basis,
        pi_prime,
        tau_dim,
        sigma,
        alpha_used: alpha,
        gap,
        bounds: DecompositionBounds {
            block_b_norm: block_b.as_f64(),
            block_c_norm: block_c.as_f64(),
            block_bound,
            max_distance,
            distance_bound,
            defect_pi_prime,
            defect_bound,
            sigma_max_eig,
            sigma_bound,
            all_hold,
        },
    })
}

/// `(1/|S|) Σ_s ‖π(s)u − u‖²`, summed directly.
pub fn mean_square_displacement<R: Real>(rep: &AlmostRep<R>, u: &linalg::CVec<R>) -> R {
    let total = rep
        .matrices()
        .iter()
        .map(|m| {
            let v = m * u - u;
            v.norm_squared()
        })
        .fold(R::zero(), |a, b| a + b);
    total / R::of(rep.len() as f64)
}

/// `‖π(s)u − u‖` for every symbol.
pub fn displacements<R: Real>(rep: &AlmostRep<R>, u: &linalg::CVec<R>) -> Vec<R> {
    rep.matrices().iter().map(|m| (m * u - u).norm()).collect()
}

/// Scalar identity rep `π(s) = [1]`.
pub fn trivial_rep<R: Real>(gs: &GeneratingSet) -> AlmostRep<R> {
    AlmostRep { dim: 1, matrices: vec![CMat::<R>::from_element(1, 1, re(R::one())); gs.len()] }
}
