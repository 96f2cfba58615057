//! Lefschetz maps `Ω^k: H^{m−k} → H^{m+k}` as exact matrices and the
//! resulting Lefschetz / strong Lefschetz classification.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Element, PDAlgebra};
use crate::linalg::{KernelBasis, Matrix, RankDrop};
use crate::scalars::{EpsFraction, EpsPoly, Field, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LefschetzError {
    #[error("omega must be homogeneous of degree 2")]
    OmegaNotDegreeTwo,
    #[error("k = {k} is outside 0..={m}")]
    KOutOfRange { k: usize, m: usize },
}

/// Fields that can report where a matrix loses its generic rank.
pub trait SymbolicRank: Field {
    fn rank_drop(m: &Matrix<Self>) -> Option<RankDrop>;
}

impl SymbolicRank for Rational {
    fn rank_drop(_: &Matrix<Self>) -> Option<RankDrop> {
        None
    }
}

impl SymbolicRank for EpsFraction {
    fn rank_drop(m: &Matrix<Self>) -> Option<RankDrop> {
        Some(m.rank_drop_polynomial())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Classification {
    StrongLefschetz,
    LefschetzOnly,
    Neither,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::StrongLefschetz => "strongLefschetz",
            Classification::LefschetzOnly => "lefschetzOnly",
            Classification::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzMap<F> {
    pub k: usize,
    pub source_degree: usize,
    pub target_degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel: KernelBasis<F>,
    /// Symbolic mode only: excluded ε values for this map.
    pub rank_drop: Option<RankDrop>,
}

impl<F> LefschetzMap<F> {
    pub fn is_isomorphism(&self) -> bool {
        self.source_dim == self.target_dim && self.rank == self.source_dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzReport<F> {
    pub ring_name: String,
    pub omega: Element<F>,
    pub per_k: Vec<LefschetzMap<F>>,
    pub classification: Classification,
    /// Squarefree lcm of the per-k rank-drop polynomials (symbolic mode).
    pub bad_eps: Option<EpsPoly>,
}

impl<F> LefschetzReport<F> {
    pub fn map(&self, k: usize) -> Option<&LefschetzMap<F>> {
        self.per_k.iter().find(|e| e.k == k)
    }
}

fn check_omega<F: Field>(a: &PDAlgebra<F>, omega: &Element<F>) -> Result<(), LefschetzError> {
    if a.is_homogeneous_of(omega, 2) {
        Ok(())
    } else {
        Err(LefschetzError::OmegaNotDegreeTwo)
    }
}

fn map_matrix<F: Field>(a: &PDAlgebra<F>, omega_k: &Element<F>, k: usize) -> Matrix<F> {
    let m = a.basis().half_dim();
    let source = a.basis().range(m - k);
    let target = a.basis().range(m + k);
    let columns: Vec<Vec<F>> = source
        .map(|s| a.multiply(omega_k, &Element::basis(s)).coords(target.clone()))
        .collect();
    let rows = target.len();
    Matrix::from_rows(columns, rows).expect("rectangular").transpose()
}

/// Matrix of multiplication by `omega^k` from degree `m − k` to `m + k`,
/// columns indexed by the source basis.
pub fn lefschetz_matrix<F: Field>(
    a: &PDAlgebra<F>,
    omega: &Element<F>,
    k: usize,
) -> Result<Matrix<F>, LefschetzError> {
    check_omega(a, omega)?;
    let m = a.basis().half_dim();
    if k > m {
        return Err(LefschetzError::KOutOfRange { k, m });
    }
    Ok(map_matrix(a, &a.power(omega, k), k))
}

fn classify_maps<F>(per_k: &[LefschetzMap<F>], m: usize) -> Classification {
    if per_k.iter().all(LefschetzMap::is_isomorphism) {
        return Classification::StrongLefschetz;
    }
    let lefschetz = m >= 1 && per_k.iter().find(|e| e.k == m - 1).is_some_and(LefschetzMap::is_isomorphism);
    if lefschetz {
        Classification::LefschetzOnly
    } else {
        Classification::Neither
    }
}

/// Computes every Lefschetz map `0 ≤ k ≤ m` and classifies the ring.
pub fn classify<F: SymbolicRank>(
    a: &PDAlgebra<F>,
    omega: &Element<F>,
) -> Result<LefschetzReport<F>, LefschetzError> {
    check_omega(a, omega)?;
    let m = a.basis().half_dim();
    let per_k: Vec<LefschetzMap<F>> = (0..=m)
        .into_par_iter()
        .map(|k| {
            let matrix = map_matrix(a, &a.power(omega, k), k);
            let rk = matrix.rank_kernel();
            LefschetzMap {
                k,
                source_degree: m - k,
                target_degree: m + k,
                source_dim: matrix.cols(),
                target_dim: matrix.rows(),
                rank: rk.rank,
                kernel: rk.kernel,
                rank_drop: F::rank_drop(&matrix),
            }
        })
        .collect();
    let bad_eps = per_k
        .iter()
        .map(|e| e.rank_drop.as_ref().map(|d| d.polynomial.clone()))
        .collect::<Option<Vec<EpsPoly>>>()
        .map(|polys| polys.iter().fold(EpsPoly::one(), |acc, p| acc.lcm(p)).squarefree_part());
    let classification = classify_maps(&per_k, m);
    Ok(LefschetzReport { ring_name: a.name().to_string(), omega: omega.clone(), per_k, classification, bad_eps })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConsistencyEntry {
    pub k: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    /// Source and target have equal dimension, as duality demands.
    pub dims_match: bool,
    /// Surjective exactly when injective, and rank + nullity = source dimension.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub entries: Vec<ConsistencyEntry>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.dims_match && e.consistent)
    }
}

/// Cross-checks, per `k`, that the Lefschetz map is surjective iff it is
/// injective, using the computed rank and kernel independently.
pub fn surj_inj_consistency<F: Field>(
    a: &PDAlgebra<F>,
    omega: &Element<F>,
) -> Result<ConsistencyReport, LefschetzError> {
    check_omega(a, omega)?;
    let m = a.basis().half_dim();
    let entries = (0..=m)
        .into_par_iter()
        .map(|k| {
            let matrix = map_matrix(a, &a.power(omega, k), k);
            let rk = matrix.rank_kernel();
            let kernel_dim = rk.kernel.dim();
            let annihilates = rk
                .kernel
                .vectors
                .iter()
                .all(|v| matrix.mul_vec(v).iter().all(F::is_zero));
            let surjective = rk.rank == matrix.rows();
            let injective = kernel_dim == 0;
            let dims_match = matrix.rows() == matrix.cols();
            ConsistencyEntry {
                k,
                source_dim: matrix.cols(),
                target_dim: matrix.rows(),
                rank: rk.rank,
                kernel_dim,
                dims_match,
                consistent: annihilates
                    && rk.rank + kernel_dim == matrix.cols()
                    && (!dims_match || surjective == injective),
            }
        })
        .collect();
    Ok(ConsistencyReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn projective_space_is_strong_lefschetz() {
        for n in 1..=5 {
            let cp = fixtures::projective_space(n);
            let h = cp.class("omega").unwrap().clone();
            let report = classify(&cp, &h).unwrap();
            assert_eq!(report.classification, Classification::StrongLefschetz);
            for e in &report.per_k {
                let expected = usize::from(e.source_degree % 2 == 0);
                assert_eq!((e.source_dim, e.rank), (expected, expected));
            }
            assert!(report.bad_eps.is_none());
        }
    }

    #[test]
    fn cp2_odd_maps_are_empty() {
        let cp2 = fixtures::projective_space(2);
        let h = cp2.basis_element("h").unwrap();
        let m1 = lefschetz_matrix(&cp2, &h, 1).unwrap();
        assert_eq!((m1.rows(), m1.cols()), (0, 0));
        assert_eq!(lefschetz_matrix(&cp2, &h, 0).unwrap(), Matrix::identity(1));
        assert_eq!(lefschetz_matrix(&cp2, &h, 2).unwrap(), Matrix::identity(1));
        let report = classify(&cp2, &h).unwrap();
        let k1 = report.map(1).unwrap();
        assert_eq!((k1.source_degree, k1.source_dim, k1.rank), (1, 0, 0));
        assert!(k1.kernel.is_trivial());
    }

    #[test]
    fn gompf_symplectic_class_kills_h1() {
        let g = fixtures::gompf_formal();
        let w = g.basis_element("w").unwrap();
        let m = lefschetz_matrix(&g, &w, 1).unwrap();
        assert_eq!(m, Matrix::zeros(2, 2));
        let report = classify(&g, &w).unwrap();
        assert_eq!(report.classification, Classification::Neither);
        let k1 = report.map(1).unwrap();
        assert_eq!((k1.source_dim, k1.rank, k1.kernel.dim()), (2, 0, 2));
    }

    #[test]
    fn gompf_chern_class_is_bijective_on_h1() {
        let g = fixtures::gompf_formal();
        let c = g.basis_element("c").unwrap();
        assert_eq!(lefschetz_matrix(&g, &c, 1).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn lefschetz_only_classification() {
        // c is bijective on H^1 but c² = 0 kills the k = 2 map
        let g = fixtures::gompf_formal();
        let c = g.basis_element("c").unwrap();
        let report = classify(&g, &c).unwrap();
        assert!(report.map(1).unwrap().is_isomorphism());
        assert!(!report.map(2).unwrap().is_isomorphism());
        assert_eq!(report.classification, Classification::LefschetzOnly);
    }

    #[test]
    fn product_with_sphere_is_neither() {
        let p = fixtures::product_with_sphere(&fixtures::gompf_formal()).unwrap();
        let omega = p.class("omega").unwrap().clone();
        assert_eq!(p.render(&omega), "h + w");
        let report = classify(&p, &omega).unwrap();
        assert_eq!(report.classification, Classification::Neither);
        let middle = report.map(2).unwrap();
        assert_eq!(middle.source_degree, 1);
        assert!(!middle.kernel.is_trivial());
    }

    #[test]
    fn omega_must_have_degree_two() {
        let g = fixtures::gompf_formal();
        let a1 = g.basis_element("a1").unwrap();
        assert_eq!(classify(&g, &a1).unwrap_err(), LefschetzError::OmegaNotDegreeTwo);
        let w = g.basis_element("w").unwrap();
        assert_eq!(lefschetz_matrix(&g, &w, 3).unwrap_err(), LefschetzError::KOutOfRange { k: 3, m: 2 });
    }

    #[test]
    fn rescaling_omega_keeps_classification() {
        let g = fixtures::gompf_formal();
        for name in ["w", "c"] {
            let e = g.basis_element(name).unwrap();
            let base = classify(&g, &e).unwrap();
            for s in [q(2), q(-3), Rational::frac(1, 7)] {
                let scaled = classify(&g, &e.scale(&s)).unwrap();
                assert_eq!(scaled.classification, base.classification);
                for (a, b) in base.per_k.iter().zip(&scaled.per_k) {
                    assert_eq!(a.rank, b.rank);
                    assert_eq!(a.kernel, b.kernel);
                }
            }
        }
    }

    #[test]
    fn consistency_holds_on_fixtures() {
        let g = fixtures::gompf_formal();
        for name in ["w", "c", "q"] {
            let e = g.basis_element(name).unwrap();
            assert!(surj_inj_consistency(&g, &e).unwrap().passed());
        }
        let cp = fixtures::projective_space(3);
        let h = cp.class("omega").unwrap().clone();
        assert!(surj_inj_consistency(&cp, &h).unwrap().passed());
    }

    #[test]
    fn k_zero_is_identity_and_top_map_detects_volume() {
        let g = fixtures::gompf_formal();
        let w = g.basis_element("w").unwrap();
        let report = classify(&g, &w).unwrap();
        let k0 = report.map(0).unwrap();
        assert_eq!(k0.rank, g.basis().dim(2));
        // ω^m ≠ 0 iff the k = m map is an isomorphism
        let top = report.map(2).unwrap();
        assert_eq!(top.is_isomorphism(), !g.power(&w, 2).is_zero());
    }
}
