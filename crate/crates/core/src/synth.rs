//! Test inputs: genuine representations, controlled perturbations of them,
//! and random unitary assignments far from any representation.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`). Each inverse-orbit
//! representative `s` draws from its own stream `(seed, stream = s)`, so the
//! matrices do not depend on the order in which symbols are visited.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::almostrep::{measure_defect, AlmostRep, TOL_UNITARY};
use crate::error::{Error, Result};
use crate::genset::{GeneratingSet, Permutation, PermutationSet};
use crate::linalg::{self, cplx, op_norm, re, CMat};
use crate::scalar::Real;

/// Multiplicativity tolerance for genuine representations.
pub const HOMOMORPHISM_TOL: f64 = 1e-10;

/// SplitMix64 finalizer; derives independent seeds from `(seed, index)`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x632B_E59B_D9B3_E36D);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn gaussian_matrix<R: Real>(rng: &mut ChaCha8Rng, d: usize) -> CMat<R> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    CMat::<R>::from_fn(d, d, |_, _| {
        let a: f64 = StandardNormal.sample(rng);
        let b: f64 = StandardNormal.sample(rng);
        cplx(a * h, b * h)
    })
}

/// Hermitian matrix with Gaussian entries, scaled to unit operator norm.
fn unit_hermitian<R: Real>(rng: &mut ChaCha8Rng, d: usize) -> CMat<R> {
    let h = linalg::hermitian_part(&gaussian_matrix::<R>(rng, d));
    let n = op_norm(&h);
    if n > R::zero() {
        linalg::scale(&h, R::one() / n)
    } else {
        h
    }
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal moved into `Q`.
fn haar_unitary<R: Real>(rng: &mut ChaCha8Rng, d: usize) -> CMat<R> {
    let qr = gaussian_matrix::<R>(rng, d).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        let z = r[(j, j)];
        let m = (z.re * z.re + z.im * z.im).sqrt();
        let phase = if m > R::zero() { Complex::new(z.re / m, z.im / m) } else { re(R::one()) };
        q.column_mut(j).iter_mut().for_each(|x| *x *= phase);
    }
    q
}

/// Wraps matrices that must form a genuine representation.
pub fn exact_from_homomorphism<R: Real>(gs: &GeneratingSet, images: Vec<CMat<R>>) -> Result<AlmostRep<R>> {
    let rep = AlmostRep::new(gs, images, R::of(HOMOMORPHISM_TOL))?;
    let defect = measure_defect(gs, &rep)?;
    if defect.epsilon > HOMOMORPHISM_TOL {
        return Err(Error::NotHomomorphism { defect: defect.epsilon, tol: HOMOMORPHISM_TOL });
    }
    Ok(rep)
}

/// Matrix with `e_i ↦ e_{p(i)}`.
pub fn permutation_matrix<R: Real>(p: &Permutation) -> CMat<R> {
    let n = p.degree();
    let mut m = CMat::<R>::zeros(n, n);
    for (i, &j) in p.images().iter().enumerate() {
        m[(j, i)] = re(R::one());
    }
    m
}

/// Defining permutation representation.
pub fn permutation_representation<R: Real>(ps: &PermutationSet) -> Result<AlmostRep<R>> {
    exact_from_homomorphism(&ps.genset, ps.elements.iter().map(permutation_matrix).collect())
}

/// The permutation representation restricted to the sum-zero subspace.
pub fn standard_representation<R: Real>(ps: &PermutationSet) -> Result<AlmostRep<R>> {
    let n = ps.elements.first().map(Permutation::degree).unwrap_or(0);
    if n < 2 {
        return Err(Error::InvalidParameter("standard representation needs degree >= 2".into()));
    }
    let mut diffs = CMat::<R>::zeros(n, n - 1);
    for j in 0..n - 1 {
        diffs[(j, j)] = re(R::one());
        diffs[(j + 1, j)] = re(-R::one());
    }
    let q = linalg::orthonormalize(&diffs, &linalg::identity(n), R::of(1e-12));
    let qh = q.adjoint();
    exact_from_homomorphism(
        &ps.genset,
        ps.elements.iter().map(|p| &qh * permutation_matrix::<R>(p) * &q).collect(),
    )
}

/// One-dimensional sign representation.
pub fn sign_representation<R: Real>(ps: &PermutationSet) -> Result<AlmostRep<R>> {
    exact_from_homomorphism(
        &ps.genset,
        ps.elements
            .iter()
            .map(|p| CMat::<R>::from_element(1, 1, re(R::of(p.sign() as f64))))
            .collect(),
    )
}

/// Character `r^m ↦ e^{2πi k m / n}` of a cyclic rotation group.
pub fn cyclic_character<R: Real>(ps: &PermutationSet, k: usize) -> Result<AlmostRep<R>> {
    let mut images = Vec::with_capacity(ps.elements.len());
    for p in &ps.elements {
        let n = p.degree();
        let m = p.images()[0];
        if p.images().iter().enumerate().any(|(i, &j)| j != (i + m) % n) {
            return Err(Error::InvalidParameter("cyclic character needs rotation elements".into()));
        }
        let theta = 2.0 * std::f64::consts::PI * ((k * m) % n) as f64 / n as f64;
        images.push(CMat::<R>::from_element(1, 1, cplx(theta.cos(), theta.sin())));
    }
    // cos/sin rounding leaves products off by ~1e-16
    exact_from_homomorphism(&ps.genset, images)
}

/// Left-regular representation of `G = S ∪ {e}`; basis index 0 is `e`,
/// index `i + 1` is symbol `i`.
pub fn regular_representation<R: Real>(gs: &GeneratingSet) -> Result<AlmostRep<R>> {
    if !gs.covers_all_nonidentity() {
        return Err(Error::NotAllNonIdentity(
            "some product s*s' with s' != s^-1 is undefined".into(),
        ));
    }
    let n = gs.len();
    let d = n + 1;
    let mut images = Vec::with_capacity(n);
    for s in 0..n {
        let mut m = CMat::<R>::zeros(d, d);
        m[(s + 1, 0)] = re(R::one());
        for g in 0..n {
            let row = if g == gs.inverse(s) { 0 } else { gs.product(s, g).expect("covered") + 1 };
            m[(row, g + 1)] = re(R::one());
        }
        images.push(m);
    }
    exact_from_homomorphism(gs, images)
}

/// Perturbs each orbit representative: `π(s)·exp(itH_s)` for `s ≠ s⁻¹`,
/// `V_s π(s) V_s*` with `V_s = exp(itH_s)` for involutive `s`; partners are
/// set to the adjoint. `‖H_s‖_op = 1`.
pub fn perturb<R: Real>(gs: &GeneratingSet, rep: &AlmostRep<R>, t: f64, seed: u64) -> Result<AlmostRep<R>> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("perturbation scale must be >= 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(rep.clone());
    }
    let d = rep.dim();
    let mut given = vec![None; gs.len()];
    for s in gs.orbit_representatives() {
        let mut rng = stream_rng(seed, s as u64);
        let h = unit_hermitian::<R>(&mut rng, d);
        let e = linalg::expi_hermitian(&h, R::of(t));
        given[s] = Some(if gs.is_involutive(s) {
            &e * rep.matrix(s) * e.adjoint()
        } else {
            rep.matrix(s) * &e
        });
    }
    AlmostRep::from_partial(gs, d, given, R::of(TOL_UNITARY))
}

/// Independent Haar unitaries per orbit; random Hermitian unitaries
/// `V diag(±1) V*` for involutive symbols.
pub fn random_almost_rep<R: Real>(gs: &GeneratingSet, d: usize, seed: u64) -> Result<AlmostRep<R>> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let mut given = vec![None; gs.len()];
    for s in gs.orbit_representatives() {
        let mut rng = stream_rng(seed, s as u64);
        let v = haar_unitary::<R>(&mut rng, d);
        given[s] = Some(if gs.is_involutive(s) {
            let signs: Vec<Complex<R>> = (0..d)
                .map(|_| {
                    let x: f64 = StandardNormal.sample(&mut rng);
                    re(if x < 0.0 { -R::one() } else { R::one() })
                })
                .collect();
            linalg::spectral_apply(&v, &signs)
        } else {
            v
        });
    }
    AlmostRep::from_partial(gs, d, given, R::of(TOL_UNITARY))
}
