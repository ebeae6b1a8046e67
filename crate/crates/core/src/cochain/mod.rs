//! Concrete cochain spaces `C⁰, C¹, C²` for an almost representation, the
//! operators `d₁, d₂, d₁*, D` between them, and the spectral subspaces
//! `B⁰(β), B¹(β)`.
//!
//! Coordinates:
//! - `C⁰ = ℋ` (dimension `d`), Gram matrix `|T|·I`.
//! - `C¹ ⊂ ⊕_{s∈S} ℋ` is cut out by `f(s⁻¹) = −π(s⁻¹)f(s)`. The ambient
//!   space stacks `f(s)` in symbol order with Gram `diag(n(s)·I)`; the chart
//!   takes one free `ℋ` block per non-involutive orbit and an orthonormal
//!   basis of `ker(I + π(s))` per involutive `s`, scaled so the chart is
//!   orthonormal.
//! - `C² = ⊕_{(s,s')∈T} ℋ`, edge order of the link graph, Gram `I`.
//!
//! Adjoints respect the Gram matrices: `A* = G_in⁻¹ Aᴴ G_out`.

mod dichotomy;
mod report;
mod verify;

pub use dichotomy::{vector_dichotomy, DichotomyKind, DichotomyOutcome};
pub use report::{LemmaCheck, LemmaReport, Relation, Witness};
pub use verify::{lemma_delta, verify_b1_bound, verify_defect_inequalities, verify_exact_identities};

use crate::almostrep::{measure_defect, tol_eig, AlmostRep};
use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eigen, re, CMat};
use crate::linkgraph::{zuk_certificate, LinkGraph};
use crate::scalar::Real;

/// Eigenvalue window around `−1` that defines `ker(I + π(s))`.
pub const KERNEL_THRESHOLD: f64 = 1e-8;

/// Everything needed to evaluate the cochain identities for one almost
/// representation.
#[derive(Clone, Debug)]
pub struct CochainSystem<R: Real> {
    graph: LinkGraph,
    rep: AlmostRep<R>,
    lambda1: f64,
    epsilon: f64,
    kernel_dims: Vec<Option<usize>>,
    c1_embed: CMat<R>,
    c1_project: CMat<R>,
    c1_gram: CMat<R>,
    ambient_gram: CMat<R>,
    d1_ambient: CMat<R>,
    d2_ambient: CMat<R>,
    d_ambient: CMat<R>,
    twist_ambient: CMat<R>,
    laplacian_vec: CMat<R>,
    d1: CMat<R>,
    d2: CMat<R>,
    d1_star: CMat<R>,
    d_op: CMat<R>,
}

/// Assembles all spaces and operators. The link graph must be connected.
pub fn assemble_cochain_system<R: Real>(graph: &LinkGraph, rep: &AlmostRep<R>) -> Result<CochainSystem<R>> {
    let gs = graph.genset();
    let cert = zuk_certificate(graph)?;
    let epsilon = measure_defect(gs, rep)?.epsilon;
    let d = rep.dim();
    let ns = gs.len();
    let amb = ns * d;
    let t_count = graph.total();
    let eye = linalg::identity::<R>(d);

    // chart for C¹
    let mut columns: Vec<CMat<R>> = Vec::new();
    let mut kernel_dims = vec![None; ns];
    for s in gs.orbit_representatives() {
        let inv = gs.inverse(s);
        let n = R::of(graph.n(s) as f64);
        if s != inv {
            let w = R::one() / (R::of(2.0) * n).sqrt();
            let mut block = CMat::<R>::zeros(amb, d);
            block.view_mut((s * d, 0), (d, d)).copy_from(&linalg::scale(&eye, w));
            block
                .view_mut((inv * d, 0), (d, d))
                .copy_from(&linalg::scale(rep.matrix(inv), -w));
            columns.push(block);
        } else {
            let eig = hermitian_eigen(rep.matrix(s));
            let mut picked = Vec::new();
            for (j, &l) in eig.values.iter().enumerate() {
                let gap = (l + R::one()).abs().as_f64();
                if gap <= KERNEL_THRESHOLD {
                    picked.push(j);
                } else if gap < 0.5 {
                    return Err(Error::InvalidRep(format!(
                        "eigenvalue {} of pi(`{}`) is neither near -1 nor near 1",
                        l.as_f64(),
                        gs.label(s)
                    )));
                }
            }
            kernel_dims[s] = Some(picked.len());
            let w = R::one() / n.sqrt();
            let mut block = CMat::<R>::zeros(amb, picked.len());
            for (k, &j) in picked.iter().enumerate() {
                let v = eig.vectors.column(j).map(|z| z * re(w));
                block.view_mut((s * d, k), (d, 1)).copy_from(&v);
            }
            columns.push(block);
        }
    }
    let m: usize = columns.iter().map(|c| c.ncols()).sum();
    let mut c1_embed = CMat::<R>::zeros(amb, m);
    let mut off = 0;
    for c in &columns {
        c1_embed.view_mut((0, off), (amb, c.ncols())).copy_from(c);
        off += c.ncols();
    }

    let mut ambient_gram = CMat::<R>::zeros(amb, amb);
    for s in 0..ns {
        for i in 0..d {
            ambient_gram[(s * d + i, s * d + i)] = re(R::of(graph.n(s) as f64));
        }
    }
    let c1_gram = linalg::hermitian_part(&(c1_embed.adjoint() * &ambient_gram * &c1_embed));
    let c1_project = if m > 0 {
        let inv = c1_gram
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidRep("singular C1 Gram matrix".into()))?;
        inv * c1_embed.adjoint() * &ambient_gram
    } else {
        CMat::<R>::zeros(0, amb)
    };

    let mut d1_ambient = CMat::<R>::zeros(amb, d);
    for s in 0..ns {
        d1_ambient.view_mut((s * d, 0), (d, d)).copy_from(&(rep.matrix(s) - &eye));
    }

    let te = t_count * d;
    let mut d2_ambient = CMat::<R>::zeros(te, amb);
    let mut d_ambient = CMat::<R>::zeros(te, amb);
    let mut twist_ambient = CMat::<R>::zeros(te, amb);
    for (e, &(s, sp)) in graph.edges().iter().enumerate() {
        let t = graph.edge_label(e);
        let r = e * d;
        for i in 0..d {
            d_ambient[(r + i, s * d + i)] += re(R::one());
            d_ambient[(r + i, sp * d + i)] -= re(R::one());
        }
        let mut tw = twist_ambient.view_mut((r, t * d), (d, d));
        tw += rep.matrix(s);
    }
    d2_ambient += &d_ambient;
    d2_ambient += &twist_ambient;

    let mut laplacian_vec = CMat::<R>::identity(amb, amb);
    for &(s, sp) in graph.edges() {
        let w = re(R::one() / R::of(graph.n(s) as f64));
        for i in 0..d {
            laplacian_vec[(s * d + i, sp * d + i)] -= w;
        }
    }

    let d1 = &c1_project * &d1_ambient;
    let d2 = &d2_ambient * &c1_embed;
    let d_op = &d_ambient * &c1_embed;
    let d1_star = linalg::scale(&(d1.adjoint() * &c1_gram), R::one() / R::of(t_count as f64));

    Ok(CochainSystem {
        graph: graph.clone(),
        rep: rep.clone(),
        lambda1: cert.lambda1,
        epsilon,
        kernel_dims,
        c1_embed,
        c1_project,
        c1_gram,
        ambient_gram,
        d1_ambient,
        d2_ambient,
        d_ambient,
        twist_ambient,
        laplacian_vec,
        d1,
        d2,
        d1_star,
        d_op,
    })
}

impl<R: Real> CochainSystem<R> {
    pub fn graph(&self) -> &LinkGraph {
        &self.graph
    }

    pub fn rep(&self) -> &AlmostRep<R> {
        &self.rep
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    /// Defect of the representation measured at assembly.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn dim_c0(&self) -> usize {
        self.rep.dim()
    }

    pub fn dim_c1(&self) -> usize {
        self.c1_embed.ncols()
    }

    pub fn dim_c2(&self) -> usize {
        self.graph.total() * self.rep.dim()
    }

    /// Chosen `dim ker(I + π(s))` for each involutive symbol.
    pub fn kernel_dims(&self) -> &[Option<usize>] {
        &self.kernel_dims
    }

    /// `d·(#non-involutive orbits) + Σ_{involutive s} dim ker(I + π(s))`.
    pub fn c1_dimension_formula(&self) -> usize {
        let gs = self.graph.genset();
        let d = self.rep.dim();
        gs.orbit_representatives()
            .into_iter()
            .map(|s| if gs.is_involutive(s) { self.kernel_dims[s].unwrap_or(0) } else { d })
            .sum()
    }

    pub fn c0_gram(&self) -> CMat<R> {
        linalg::scale(&linalg::identity(self.dim_c0()), R::of(self.graph.total() as f64))
    }

    pub fn c1_gram(&self) -> &CMat<R> {
        &self.c1_gram
    }

    pub fn c2_gram(&self) -> CMat<R> {
        linalg::identity(self.dim_c2())
    }

    /// Chart: `C¹` coordinates → stacked `(f(s))_s`.
    pub fn c1_embed(&self) -> &CMat<R> {
        &self.c1_embed
    }

    /// Stacked `(f(s))_s` → `C¹` coordinates (Gram-orthogonal projection).
    pub fn c1_project(&self) -> &CMat<R> {
        &self.c1_project
    }

    pub fn ambient_gram(&self) -> &CMat<R> {
        &self.ambient_gram
    }

    pub fn d1(&self) -> &CMat<R> {
        &self.d1
    }

    pub fn d2(&self) -> &CMat<R> {
        &self.d2
    }

    pub fn d1_star(&self) -> &CMat<R> {
        &self.d1_star
    }

    pub fn d_op(&self) -> &CMat<R> {
        &self.d_op
    }

    /// `d₁u(s) = π(s)u − u` on stacked functions.
    pub fn d1_ambient(&self) -> &CMat<R> {
        &self.d1_ambient
    }

    /// `d₂f((s,s')) = f(s) − f(s') + π(s)f(s⁻¹s')` on stacked functions.
    pub fn d2_ambient(&self) -> &CMat<R> {
        &self.d2_ambient
    }

    /// `Df((s,s')) = f(s) − f(s')` on stacked functions.
    pub fn d_ambient(&self) -> &CMat<R> {
        &self.d_ambient
    }

    /// `f ↦ (π(s)f(s⁻¹s'))_{(s,s')}` on stacked functions.
    pub fn twist_ambient(&self) -> &CMat<R> {
        &self.twist_ambient
    }

    /// The Laplacian applied blockwise to `ℋ`-valued vertex functions.
    pub fn laplacian_vec(&self) -> &CMat<R> {
        &self.laplacian_vec
    }

    /// Constraint operator `(Cf)(s) = f(s⁻¹) + π(s⁻¹)f(s)` on stacked
    /// functions; `C¹ = ker C`.
    pub fn constraint_ambient(&self) -> CMat<R> {
        let gs = self.graph.genset();
        let d = self.rep.dim();
        let amb = gs.len() * d;
        let mut c = CMat::<R>::zeros(amb, amb);
        for s in 0..gs.len() {
            let inv = gs.inverse(s);
            for i in 0..d {
                c[(s * d + i, inv * d + i)] += re(R::one());
            }
            let mut blk = c.view_mut((s * d, s * d), (d, d));
            blk += self.rep.matrix(inv);
        }
        c
    }

    /// Rows of `d₂` (in `C¹` coordinates) for one edge.
    pub(crate) fn d2_edge(&self, e: usize) -> CMat<R> {
        let d = self.rep.dim();
        self.d2.rows(e * d, d).into_owned()
    }

    /// `f ↦ f(s)` in `C¹` coordinates.
    pub(crate) fn eval_at(&self, s: usize) -> CMat<R> {
        let d = self.rep.dim();
        self.c1_embed.rows(s * d, d).into_owned()
    }

    /// `(d₁*)ᴴ G₀ d₁*`: the form `f ↦ ⟨d₁*f, d₁*f⟩_{C⁰}`.
    pub(crate) fn d1_star_form(&self) -> CMat<R> {
        linalg::scale(&(self.d1_star.adjoint() * &self.d1_star), R::of(self.graph.total() as f64))
    }

    /// The form `f ↦ ⟨Δf, f⟩_{L(S)}` on `C¹`.
    pub(crate) fn laplacian_form(&self) -> CMat<R> {
        linalg::hermitian_part(&(self.c1_embed.adjoint() * &self.ambient_gram * &self.laplacian_vec * &self.c1_embed))
    }
}

/// Orthonormal bases of `B⁰(β)` and `B¹(β)`.
#[derive(Clone, Debug)]
pub struct BSubspaces<R: Real> {
    pub beta: f64,
    /// Columns orthonormal in the `C⁰` inner product.
    pub b0_basis: CMat<R>,
    /// Eigenvalues of `d₁*d₁` on the `B⁰` basis columns.
    pub b0_eigenvalues: Vec<f64>,
    /// Columns orthonormal in the `C¹` inner product.
    pub b1_basis: CMat<R>,
}

/// `B⁰(β)` = span of eigenvectors of `d₁*d₁` with eigenvalue `≥ β − tol`;
/// `B¹(β) = d₁(B⁰(β))`.
pub fn spectral_subspaces<R: Real>(sys: &CochainSystem<R>, beta: f64) -> Result<BSubspaces<R>> {
    if !(beta >= 0.0) {
        return Err(Error::InvalidParameter(format!("beta must be >= 0, got {beta}")));
    }
    let d = sys.dim_c0();
    let tol = tol_eig(d);
    let a = linalg::hermitian_part(&(sys.d1_star() * sys.d1()));
    let eig = hermitian_eigen(&a);
    let scale = R::one() / R::of(sys.graph.total() as f64).sqrt();
    let keep: Vec<usize> = (0..d).filter(|&j| eig.values[j].as_f64() >= beta - tol).collect();
    let mut b0 = CMat::<R>::zeros(d, keep.len());
    for (k, &j) in keep.iter().enumerate() {
        b0.set_column(k, &eig.vectors.column(j).map(|z| z * re(scale)));
    }
    let b0_eigenvalues = keep.iter().map(|&j| eig.values[j].as_f64()).collect();
    // d₁ kills the kernel of d₁*d₁; only strictly positive eigenvalues feed B¹
    let live: Vec<usize> = keep.iter().copied().filter(|&j| eig.values[j].as_f64() > tol).collect();
    let mut images = CMat::<R>::zeros(sys.dim_c1(), live.len());
    for (k, &j) in live.iter().enumerate() {
        let u = eig.vectors.column(j).map(|z| z * re(scale));
        images.set_column(k, &(sys.d1() * u));
    }
    let b1 = linalg::orthonormalize(&images, sys.c1_gram(), R::of(1e-9));
    Ok(BSubspaces { beta, b0_basis: b0, b0_eigenvalues, b1_basis: b1 })
}
