use serde::Serialize;

use super::report::{LemmaCheck, Witness};
use super::CochainSystem;
use crate::almostrep::{averaged_operator, displacements};
use crate::error::{Error, Result};
use crate::io::{complex_pairs, sig17, sig17_vec};
use crate::linalg::CVec;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DichotomyKind {
    /// The top eigenvector of `x` moves by less than `δ` under every `π(s)`.
    NearInvariant,
    /// Every unit vector moves by at least `c/2` under some `π(s)`.
    UniformlyMoved,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyOutcome {
    pub kind: DichotomyKind,
    #[serde(serialize_with = "sig17")]
    pub delta: f64,
    #[serde(serialize_with = "sig17")]
    pub kazhdan_c: f64,
    /// Largest eigenvalue of the averaged operator.
    #[serde(serialize_with = "sig17")]
    pub lambda_max: f64,
    /// `2(1 − λ_max)`: the smallest mean-square displacement of a unit vector.
    #[serde(serialize_with = "sig17")]
    pub min_mean_square: f64,
    /// `sqrt(2(1 − λ_max))`, a lower bound on `max_s ‖π(s)u − u‖` for unit `u`.
    #[serde(serialize_with = "sig17")]
    pub lower_bound: f64,
    /// `‖π(s)u* − u*‖` for the top eigenvector `u*`, in symbol order.
    #[serde(serialize_with = "sig17_vec")]
    pub displacements: Vec<f64>,
    #[serde(serialize_with = "crate::io::sig17_pairs")]
    pub vector: Vec<[f64; 2]>,
}

impl DichotomyOutcome {
    pub fn max_displacement(&self) -> f64 {
        self.displacements.iter().copied().fold(0.0, f64::max)
    }

    /// A report entry that passes when the outcome is conclusive.
    pub fn to_check(&self) -> LemmaCheck {
        let kind = match self.kind {
            DichotomyKind::NearInvariant => "near_invariant",
            DichotomyKind::UniformlyMoved => "uniformly_moved",
            DichotomyKind::Inconclusive => "inconclusive",
        };
        let (bound, observed, pass) = match self.kind {
            DichotomyKind::NearInvariant => (self.delta, self.max_displacement(), true),
            DichotomyKind::UniformlyMoved => (self.kazhdan_c / 2.0, self.lower_bound, true),
            DichotomyKind::Inconclusive => (self.kazhdan_c / 2.0, self.lower_bound, false),
        };
        let mut check = LemmaCheck::at_least("vector_dichotomy", bound, observed);
        if self.kind == DichotomyKind::NearInvariant {
            check = LemmaCheck::at_most("vector_dichotomy", bound, observed);
        }
        check.pass = pass;
        check.witness = Some(Witness { space: "C0".into(), coords: self.vector.clone(), detail: Some(kind.into()) });
        check
    }
}

/// Either the top eigenvector of the averaged operator is nearly invariant,
/// or the mean-square bound certifies that every unit vector is moved by at
/// least `c/2`.
pub fn vector_dichotomy<R: Real>(sys: &CochainSystem<R>, delta: f64, c: f64) -> Result<DichotomyOutcome> {
    if !(delta < c / 2.0) {
        return Err(Error::InvalidParameter(format!("delta {delta} must be below c/2 = {}", c / 2.0)));
    }
    let gs = sys.graph().genset();
    let avg = averaged_operator(gs, sys.rep())?;
    let n = sys.dim_c0();
    let lambda_max = avg.max_eigenvalue().as_f64();
    let u: CVec<R> = avg.eigen.vectors.column(n - 1).into_owned();
    let disp: Vec<f64> = displacements(sys.rep(), &u).into_iter().map(|x| x.as_f64()).collect();
    let min_mean_square = (2.0 * (1.0 - lambda_max)).max(0.0);
    let lower_bound = min_mean_square.sqrt();
    let max_disp = disp.iter().copied().fold(0.0, f64::max);
    let kind = if max_disp < delta {
        DichotomyKind::NearInvariant
    } else if lower_bound >= c / 2.0 {
        DichotomyKind::UniformlyMoved
    } else {
        DichotomyKind::Inconclusive
    };
    Ok(DichotomyOutcome {
        kind,
        delta,
        kazhdan_c: c,
        lambda_max,
        min_mean_square,
        lower_bound,
        displacements: disp,
        vector: complex_pairs(u.iter().copied()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::almostrep::trivial_rep;
    use crate::cochain::assemble_cochain_system;
    use crate::genset::symmetric_group_s3;
    use crate::linkgraph::{build_link_graph, kazhdan_constant};
    use crate::synth::{regular_representation, standard_representation};

    #[test]
    fn outcomes_on_s3() {
        let ps = symmetric_group_s3();
        let g = build_link_graph(&ps.genset).unwrap();
        let c = kazhdan_constant(1.25);

        let sys = assemble_cochain_system(&g, &trivial_rep::<f64>(&ps.genset)).unwrap();
        let out = vector_dichotomy(&sys, 0.1, c).unwrap();
        assert_eq!(out.kind, DichotomyKind::NearInvariant);
        assert!(out.max_displacement() == 0.0);

        let sys = assemble_cochain_system(&g, &standard_representation::<f64>(&ps).unwrap()).unwrap();
        let out = vector_dichotomy(&sys, 0.1, c).unwrap();
        assert_eq!(out.kind, DichotomyKind::UniformlyMoved);
        assert!((out.lower_bound - 2.4f64.sqrt()).abs() < 1e-12);

        let sys = assemble_cochain_system(&g, &regular_representation::<f64>(&ps.genset).unwrap()).unwrap();
        let out = vector_dichotomy(&sys, 0.1, c).unwrap();
        assert_eq!(out.kind, DichotomyKind::NearInvariant);
        assert!(out.max_displacement() <= 1e-12);
    }

    #[test]
    fn delta_must_be_below_half_c() {
        let ps = symmetric_group_s3();
        let g = build_link_graph(&ps.genset).unwrap();
        let sys = assemble_cochain_system(&g, &trivial_rep::<f64>(&ps.genset)).unwrap();
        assert!(vector_dichotomy(&sys, 1.0, 1.0).is_err());
    }
}
