//! Dense complex linear algebra helpers on top of `nalgebra`.
//!
//! Matrices are small (a few hundred rows at most), so everything here uses
//! full decompositions: operator norms come from a complete SVD and Hermitian
//! spectra from a complete eigendecomposition.

use nalgebra::{ComplexField, DMatrix, DVector};
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Real;

pub type CMat<R> = DMatrix<Complex<R>>;
pub type CVec<R> = DVector<Complex<R>>;

#[inline]
pub fn re<R: Real>(x: R) -> Complex<R> {
    Complex::new(x, R::zero())
}

#[inline]
pub fn cplx<R: Real>(re: f64, im: f64) -> Complex<R> {
    Complex::new(R::of(re), R::of(im))
}

pub fn identity<R: Real>(n: usize) -> CMat<R> {
    CMat::<R>::identity(n, n)
}

pub fn scale<R: Real>(m: &CMat<R>, s: R) -> CMat<R> {
    m.map(|z| z * re(s))
}

/// Largest singular value (spectral norm). Zero for empty matrices.
pub fn op_norm<R: Real>(m: &CMat<R>) -> R {
    if m.nrows() == 0 || m.ncols() == 0 {
        return R::zero();
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(R::zero(), |a, &b| a.max(b))
}

/// Singular values in descending order.
pub fn singular_values<R: Real>(m: &CMat<R>) -> Vec<R> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<R> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    sv
}

pub fn hermitian_part<R: Real>(m: &CMat<R>) -> CMat<R> {
    (m + m.adjoint()).map(|z| z * re(R::of(0.5)))
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending with the
/// eigenvector columns permuted to match.
pub struct HermitianEigen<R: Real> {
    pub values: Vec<R>,
    pub vectors: CMat<R>,
}

pub fn hermitian_eigen<R: Real>(m: &CMat<R>) -> HermitianEigen<R> {
    let n = m.nrows();
    if n == 0 {
        return HermitianEigen { values: Vec::new(), vectors: CMat::<R>::zeros(0, 0) };
    }
    let eig = hermitian_part(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).expect("finite eigenvalues")
    });
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMat::<R>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    HermitianEigen { values, vectors }
}

pub fn hermitian_eigenvalues<R: Real>(m: &CMat<R>) -> Vec<R> {
    hermitian_eigen(m).values
}

/// `‖M*M − I‖_op`.
pub fn unitary_defect<R: Real>(m: &CMat<R>) -> R {
    let n = m.ncols();
    op_norm(&(m.adjoint() * m - identity::<R>(n)))
}

/// `exp(i·t·H)` for Hermitian `H`, via its eigendecomposition. The result is
/// unitary to working precision.
pub fn expi_hermitian<R: Real>(h: &CMat<R>, t: R) -> CMat<R> {
    let eig = hermitian_eigen(h);
    let phases: Vec<Complex<R>> = eig
        .values
        .iter()
        .map(|&l| {
            let a = t * l;
            Complex::new(ComplexField::cos(a), ComplexField::sin(a))
        })
        .collect();
    spectral_apply(&eig.vectors, &phases)
}

/// `V diag(w) V*`.
pub fn spectral_apply<R: Real>(vectors: &CMat<R>, weights: &[Complex<R>]) -> CMat<R> {
    let mut scaled = vectors.clone();
    for (j, &w) in weights.iter().enumerate() {
        scaled.column_mut(j).iter_mut().for_each(|z| *z *= w);
    }
    scaled * vectors.adjoint()
}

/// Power `G^p` of a Hermitian positive definite matrix.
pub fn psd_power<R: Real>(g: &CMat<R>, p: R) -> CMat<R> {
    let eig = hermitian_eigen(g);
    let w: Vec<Complex<R>> = eig
        .values
        .iter()
        .map(|&l| re(ComplexField::powf(l.max(R::zero()), p)))
        .collect();
    spectral_apply(&eig.vectors, &w)
}

/// Operator norm of `A: (X, G_in) → (Y, G_out)` between spaces with Gram
/// matrices `G_in`, `G_out`.
pub fn weighted_op_norm<R: Real>(a: &CMat<R>, gram_in: &CMat<R>, gram_out: &CMat<R>) -> R {
    let half = R::of(0.5);
    op_norm(&(psd_power(gram_out, half) * a * psd_power(gram_in, -half)))
}

/// Extremal values of the Hermitian form `q` relative to the Gram matrix
/// `gram`, i.e. the min and max of `v*qv / v*Gv`, with the extremal vectors.
pub struct FormRange<R: Real> {
    pub min: R,
    pub max: R,
    pub argmin: CVec<R>,
    pub argmax: CVec<R>,
}

pub fn form_range<R: Real>(q: &CMat<R>, gram: &CMat<R>) -> FormRange<R> {
    let n = q.nrows();
    if n == 0 {
        return FormRange {
            min: R::zero(),
            max: R::zero(),
            argmin: CVec::<R>::zeros(0),
            argmax: CVec::<R>::zeros(0),
        };
    }
    let w = psd_power(gram, R::of(-0.5));
    let eig = hermitian_eigen(&(w.adjoint() * hermitian_part(q) * &w));
    FormRange {
        min: eig.values[0],
        max: eig.values[n - 1],
        argmin: &w * eig.vectors.column(0),
        argmax: &w * eig.vectors.column(n - 1),
    }
}

/// Upper bound on the numerical radius `sup |v*Av| / v*Gv` of a (generally
/// non-Hermitian) form, from `angles` rotations of its Hermitian part.
///
/// For `angles = N`, `w(A) ≤ max_k λ_max(Re(e^{iθ_k} A)) / cos(π/N)`. Also
/// returns the grid maximum (a lower bound) and its maximizing vector.
pub fn numerical_radius_bound<R: Real>(
    a: &CMat<R>,
    gram: &CMat<R>,
    angles: usize,
) -> (R, R, CVec<R>) {
    let n = a.nrows();
    if n == 0 {
        return (R::zero(), R::zero(), CVec::<R>::zeros(0));
    }
    let w = psd_power(gram, R::of(-0.5));
    let b = w.adjoint() * a * &w;
    let mut best = R::of(f64::NEG_INFINITY);
    let mut best_vec = CVec::<R>::zeros(n);
    for k in 0..angles {
        let theta = R::two_pi() * R::of(k as f64) / R::of(angles as f64);
        let rot = Complex::new(ComplexField::cos(theta), ComplexField::sin(theta));
        let eig = hermitian_eigen(&b.map(|z| z * rot));
        let top = eig.values[n - 1];
        if top > best {
            best = top;
            best_vec = &w * eig.vectors.column(n - 1);
        }
    }
    let c = ComplexField::cos(R::pi() / R::of(angles as f64));
    (best.max(R::zero()) / c, best.max(R::zero()), best_vec)
}

/// Gram-orthonormal basis of the column span of `cols`, dropping columns
/// whose residual norm falls below `tol` times their original norm scale.
pub fn orthonormalize<R: Real>(cols: &CMat<R>, gram: &CMat<R>, tol: R) -> CMat<R> {
    let mut basis: Vec<CVec<R>> = Vec::new();
    for j in 0..cols.ncols() {
        let mut v: CVec<R> = cols.column(j).into_owned();
        let scale0 = gram_norm(&v, gram);
        if scale0 <= R::zero() {
            continue;
        }
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for b in &basis {
                let c = inner(b, &v, gram);
                v -= b * c;
            }
        }
        let nv = gram_norm(&v, gram);
        if nv > tol * scale0.max(R::one()) {
            basis.push(v.map(|z| z / re(nv)));
        }
    }
    let mut out = CMat::<R>::zeros(cols.nrows(), basis.len());
    for (j, b) in basis.iter().enumerate() {
        out.set_column(j, b);
    }
    out
}

/// `⟨a, b⟩_G = a* G b` (conjugate-linear in the first slot).
pub fn inner<R: Real>(a: &CVec<R>, b: &CVec<R>, gram: &CMat<R>) -> Complex<R> {
    (a.adjoint() * gram * b)[(0, 0)]
}

pub fn gram_norm<R: Real>(v: &CVec<R>, gram: &CMat<R>) -> R {
    inner(v, v, gram).re.max(R::zero()).sqrt()
}

pub fn vec_norm<R: Real>(v: &CVec<R>) -> R {
    v.norm()
}

/// Block-diagonal direct sum.
pub fn direct_sum<R: Real>(blocks: &[&CMat<R>]) -> CMat<R> {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMat::<R>::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        out.view_mut((off, off), (b.nrows(), b.ncols())).copy_from(*b);
        off += b.nrows();
    }
    out
}

pub fn complex_one<R: Real>() -> Complex<R> {
    Complex::<R>::one()
}

pub fn complex_zero<R: Real>() -> Complex<R> {
    Complex::<R>::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize, seed: u64) -> CMat<f64> {
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        CMat::<f64>::from_fn(n, n, |_, _| Complex::new(next(), next()))
    }

    #[test]
    fn eigen_sorted_and_reconstructs() {
        let g = sample(5, 3);
        let h = hermitian_part(&g);
        let eig = hermitian_eigen(&h);
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        let w: Vec<_> = eig.values.iter().map(|&l| re(l)).collect();
        assert!((spectral_apply(&eig.vectors, &w) - h).norm() < 1e-12);
    }

    #[test]
    fn expi_is_unitary() {
        let h = hermitian_part(&sample(4, 9));
        let u = expi_hermitian(&h, 0.7);
        assert!(unitary_defect(&u) < 1e-13);
    }

    #[test]
    fn op_norm_of_diagonal() {
        let m = CMat::<f64>::from_diagonal(&CVec::<f64>::from_vec(vec![
            cplx(0.5, 0.0),
            cplx(0.0, -3.0),
            cplx(1.0, 1.0),
        ]));
        assert!((op_norm(&m) - 3.0).abs() < 1e-14);
        assert_eq!(op_norm(&CMat::<f64>::zeros(0, 3)), 0.0);
    }

    #[test]
    fn numerical_radius_of_rotation_block() {
        // [[0,1],[0,0]] has numerical radius 1/2
        let mut a = CMat::<f64>::zeros(2, 2);
        a[(0, 1)] = cplx(1.0, 0.0);
        let (upper, lower, _) = numerical_radius_bound(&a, &identity(2), 128);
        assert!(lower <= 0.5 + 1e-12 && upper >= 0.5 - 1e-12);
        assert!(upper < 0.5 * 1.001);
    }

    #[test]
    fn orthonormalize_drops_dependent_columns() {
        let mut cols = CMat::<f64>::zeros(3, 3);
        cols[(0, 0)] = cplx(1.0, 0.0);
        cols[(0, 1)] = cplx(2.0, 0.0);
        cols[(1, 2)] = cplx(0.0, 1.0);
        let gram = CMat::<f64>::from_diagonal_element(3, 3, cplx(4.0, 0.0));
        let b = orthonormalize(&cols, &gram, 1e-10);
        assert_eq!(b.ncols(), 2);
        let g = b.adjoint() * gram * &b;
        assert!((g - identity::<f64>(2)).norm() < 1e-13);
    }

    #[test]
    fn f32_path_works() {
        let h = CMat::<f32>::from_fn(2, 2, |i, j| if i == j { cplx(1.0, 0.0) } else { cplx(0.5, 0.0) });
        let v = hermitian_eigenvalues(&h);
        assert!((v[0] - 0.5).abs() < 1e-6 && (v[1] - 1.5).abs() < 1e-6);
    }
}
