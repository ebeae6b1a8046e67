//! The link graph `L(S)`, its normalized Laplacian spectrum, and the Żuk
//! spectral certificate.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genset::{validate_generating_set, GeneratingSet};
use crate::io::{sig17, sig17_opt, sig17_vec};
use crate::scalar::Real;

/// Vertex set `S`; ordered edges `(s, s')` whenever `s⁻¹s' ∈ S`.
///
/// Each undirected edge appears twice, so `total = Σ_s n(s) = |T|`.
#[derive(Clone, Debug)]
pub struct LinkGraph {
    genset: GeneratingSet,
    edges: Vec<(usize, usize)>,
    edge_index: Vec<Option<usize>>,
    degree: Vec<usize>,
}

impl LinkGraph {
    pub fn genset(&self) -> &GeneratingSet {
        &self.genset
    }

    pub fn vertex_count(&self) -> usize {
        self.genset.len()
    }

    /// Ordered edge list, lexicographic in `(s, s')`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `|T|`.
    pub fn total(&self) -> usize {
        self.edges.len()
    }

    /// `n(s) = #{s' : (s, s') ∈ T}`.
    pub fn n(&self, s: usize) -> usize {
        self.degree[s]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn edge_id(&self, s: usize, t: usize) -> Option<usize> {
        self.edge_index[s * self.vertex_count() + t]
    }

    /// `s⁻¹s'` for the edge `(s, s')`.
    pub fn edge_label(&self, e: usize) -> usize {
        let (s, t) = self.edges[e];
        self.genset
            .product(self.genset.inverse(s), t)
            .expect("edges are defined by s^-1 s' in S")
    }

    pub fn adjacency<R: Real>(&self) -> DMatrix<R> {
        let n = self.vertex_count();
        let mut a = DMatrix::<R>::zeros(n, n);
        for &(s, t) in &self.edges {
            a[(s, t)] = R::one();
        }
        a
    }

    /// The non-symmetric matrix of `Δf(s) = f(s) − (1/deg s) Σ_{s'∼s} f(s')`.
    pub fn laplacian_matrix<R: Real>(&self) -> Result<DMatrix<R>> {
        self.check_no_isolated()?;
        let n = self.vertex_count();
        let mut l = DMatrix::<R>::identity(n, n);
        for &(s, t) in &self.edges {
            l[(s, t)] -= R::one() / R::of(self.degree[s] as f64);
        }
        Ok(l)
    }

    /// `I − Deg^{-1/2} A Deg^{-1/2}`, similar to the Laplacian.
    pub fn symmetric_laplacian<R: Real>(&self) -> Result<DMatrix<R>> {
        self.check_no_isolated()?;
        let n = self.vertex_count();
        let mut l = DMatrix::<R>::identity(n, n);
        for &(s, t) in &self.edges {
            let w = R::of(((self.degree[s] * self.degree[t]) as f64).sqrt());
            l[(s, t)] -= R::one() / w;
        }
        Ok(l)
    }

    fn check_no_isolated(&self) -> Result<()> {
        match self.degree.iter().position(|&d| d == 0) {
            Some(s) => Err(Error::IsolatedVertex(self.genset.label(s).to_string())),
            None => Ok(()),
        }
    }

    /// Number of connected components by graph search.
    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(v) = stack.pop() {
                for (w, cw) in comp.iter_mut().enumerate() {
                    if *cw == usize::MAX && self.edge_id(v, w).is_some() {
                        *cw = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        count
    }
}

/// Builds `L(S)`. The generating set must pass validation.
pub fn build_link_graph(gs: &GeneratingSet) -> Result<LinkGraph> {
    validate_generating_set(gs).into_result()?;
    let n = gs.len();
    let mut edges = Vec::new();
    let mut edge_index = vec![None; n * n];
    let mut degree = vec![0; n];
    for s in 0..n {
        for t in 0..n {
            if gs.product(gs.inverse(s), t).is_some() {
                edge_index[s * n + t] = Some(edges.len());
                edges.push((s, t));
                degree[s] += 1;
            }
        }
    }
    if edges.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    Ok(LinkGraph { genset: gs.clone(), edges, edge_index, degree })
}

/// Eigenvalues of the Laplacian, ascending, via the symmetrized matrix.
pub fn laplacian_spectrum<R: Real>(graph: &LinkGraph) -> Result<Vec<R>> {
    let l = graph.symmetric_laplacian::<R>()?;
    let mut v: Vec<R> = l.symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(v)
}

/// Kernel threshold `1e−9·|S|` used to count zero eigenvalues.
pub fn zero_tolerance(vertex_count: usize) -> f64 {
    1e-9 * vertex_count as f64
}

/// `c = (2/√3)(2 − 1/λ₁)`.
pub fn kazhdan_constant(lambda1: f64) -> f64 {
    2.0 / 3f64.sqrt() * (2.0 - 1.0 / lambda1)
}

/// λ₁ of `L(S)` with the Żuk verdict and Kazhdan constant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralCertificate {
    #[serde(serialize_with = "sig17")]
    pub lambda1: f64,
    #[serde(serialize_with = "sig17_vec")]
    pub spectrum: Vec<f64>,
    pub connected: bool,
    pub zuk_holds: bool,
    #[serde(serialize_with = "sig17_opt")]
    pub kazhdan_c: Option<f64>,
    pub edge_count: usize,
}

impl SpectralCertificate {
    /// Certificate from a sorted Laplacian spectrum. Errors when zero is not
    /// a simple eigenvalue.
    pub fn from_spectrum(spectrum: Vec<f64>, edge_count: usize) -> Result<Self> {
        let tol = zero_tolerance(spectrum.len());
        let kernel = spectrum.iter().filter(|&&l| l.abs() <= tol).count();
        if kernel != 1 {
            return Err(Error::Disconnected(kernel));
        }
        let lambda1 = spectrum
            .iter()
            .copied()
            .find(|&l| l > tol)
            .ok_or_else(|| Error::InvalidParameter("spectrum has no nonzero eigenvalue".into()))?;
        let zuk_holds = lambda1 > 0.5;
        Ok(Self {
            lambda1,
            spectrum,
            connected: true,
            zuk_holds,
            kazhdan_c: zuk_holds.then(|| kazhdan_constant(lambda1)),
            edge_count,
        })
    }

    /// The Kazhdan constant, or an error when the Żuk condition fails.
    pub fn require_zuk(&self) -> Result<f64> {
        match (self.zuk_holds, self.kazhdan_c) {
            (true, Some(c)) => Ok(c),
            _ => Err(Error::ZukFails(self.lambda1)),
        }
    }
}

/// Spectrum, connectivity and Żuk verdict of `L(S)`. Errors on disconnected
/// graphs.
pub fn zuk_certificate(graph: &LinkGraph) -> Result<SpectralCertificate> {
    let spectrum: Vec<f64> = laplacian_spectrum::<f64>(graph)?;
    SpectralCertificate::from_spectrum(spectrum, graph.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genset::{cyclic_group, symmetric_group_s3};

    #[test]
    fn s3_is_complete_graph() {
        let g = build_link_graph(&symmetric_group_s3().genset).unwrap();
        assert_eq!(g.total(), 20);
        assert!(g.degrees().iter().all(|&d| d == 4));
        let spec = laplacian_spectrum::<f64>(&g).unwrap();
        let expected = [0.0, 1.25, 1.25, 1.25, 1.25];
        for (a, b) in spec.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn z3_single_edge() {
        let g = build_link_graph(&cyclic_group(3).unwrap().genset).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 0)]);
        let spec = laplacian_spectrum::<f64>(&g).unwrap();
        assert!(spec[0].abs() < 1e-12 && (spec[1] - 2.0).abs() < 1e-12);
        let cert = zuk_certificate(&g).unwrap();
        assert!((cert.kazhdan_c.unwrap() - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn z2_has_no_edges() {
        let err = build_link_graph(&cyclic_group(2).unwrap().genset);
        assert!(matches!(err, Err(Error::EmptyEdgeSet)));
    }

    #[test]
    fn two_disjoint_edges_are_disconnected() {
        // two copies of the Z/3 link graph: a,A and b,B with a·a = A, b·b = B
        let labels = vec!["a".into(), "A".into(), "b".into(), "B".into()];
        let gs = GeneratingSet::new(labels, vec![1, 0, 3, 2], [(0, 0, 1), (1, 1, 0), (2, 2, 3), (3, 3, 2)])
            .unwrap();
        let g = build_link_graph(&gs).unwrap();
        let spec = laplacian_spectrum::<f64>(&g).unwrap();
        let expected = [0.0, 0.0, 2.0, 2.0];
        for (a, b) in spec.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(g.component_count(), 2);
        assert!(matches!(zuk_certificate(&g), Err(Error::Disconnected(2))));
    }

    #[test]
    fn threshold_spectrum() {
        let cert = SpectralCertificate::from_spectrum(vec![0.0, 0.4, 1.3], 6).unwrap();
        assert!(!cert.zuk_holds);
        assert!(cert.kazhdan_c.is_none());
        assert!(cert.require_zuk().is_err());
    }

    #[test]
    fn s3_kazhdan_constant() {
        let c = kazhdan_constant(1.25);
        assert!((c - 1.385_640_646_055_102).abs() < 1e-12);
    }

    #[test]
    fn f32_spectrum() {
        let g = build_link_graph(&symmetric_group_s3().genset).unwrap();
        let spec = laplacian_spectrum::<f32>(&g).unwrap();
        assert!((spec[4] - 1.25).abs() < 1e-5);
    }
}
