//! Finite evaluation domains, the dimension of the polynomial space they
//! carry, evaluation matrices, and the size bound with its tightness check.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::RationalMatrix;
use crate::error::{Error, Result};
use crate::pte::{multi_indices, PteInstance, PtePoint};
use crate::rational::Rational;

/// Enumerating a domain is refused beyond this many points.
pub const ENUMERATION_LIMIT: u128 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum DomainSpec {
    /// {0,1}^r
    Hypercube { r: usize },
    /// 0/1 vectors of length r with exactly k ones.
    Sphere { r: usize, k: usize },
    /// Distinct points of one dimension, kept sorted.
    Explicit { points: Vec<PtePoint> },
}

impl DomainSpec {
    pub fn hypercube(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("hypercube dimension must be positive".into()));
        }
        Ok(DomainSpec::Hypercube { r })
    }

    pub fn sphere(r: usize, k: usize) -> Result<Self> {
        if r == 0 || k > r {
            return Err(Error::InvalidParameter(format!(
                "binary sphere needs 0 <= k <= r and r >= 1, got r = {r}, k = {k}"
            )));
        }
        Ok(DomainSpec::Sphere { r, k })
    }

    pub fn explicit(points: Vec<PtePoint>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Empty("explicit domain with no points"));
        };
        let r = first.len();
        if r == 0 {
            return Err(Error::InvalidParameter("zero-dimensional domain".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != r) {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: p.len(),
            });
        }
        let set: BTreeSet<PtePoint> = points.iter().cloned().collect();
        if set.len() != points.len() {
            return Err(Error::InvalidParameter("explicit domain repeats a point".into()));
        }
        Ok(DomainSpec::Explicit {
            points: set.into_iter().collect(),
        })
    }

    pub fn dimension(&self) -> usize {
        match self {
            DomainSpec::Hypercube { r } | DomainSpec::Sphere { r, .. } => *r,
            DomainSpec::Explicit { points } => points[0].len(),
        }
    }

    pub fn size(&self) -> u128 {
        match self {
            DomainSpec::Hypercube { r } => 1u128.checked_shl(*r as u32).unwrap_or(u128::MAX),
            DomainSpec::Sphere { r, k } => binomial(*r, *k),
            DomainSpec::Explicit { points } => points.len() as u128,
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        if x.len() != self.dimension() {
            return false;
        }
        let binary = || x.iter().all(|c| c.is_zero() || *c == Rational::one());
        match self {
            DomainSpec::Hypercube { .. } => binary(),
            DomainSpec::Sphere { k, .. } => {
                binary() && x.iter().filter(|c| !c.is_zero()).count() == *k
            }
            DomainSpec::Explicit { points } => points.binary_search_by(|p| p[..].cmp(x)).is_ok(),
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Points of the domain in lexicographic order.
pub fn enumerate_domain(spec: &DomainSpec) -> Result<Vec<PtePoint>> {
    if spec.size() > ENUMERATION_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "domain has {} points, more than the enumeration limit {ENUMERATION_LIMIT}",
            spec.size()
        )));
    }
    let cube = |r: usize| -> Vec<PtePoint> {
        (0..1u64 << r)
            .map(|v| {
                (0..r)
                    .map(|j| Rational::from(((v >> (r - 1 - j)) & 1) as i64))
                    .collect()
            })
            .collect()
    };
    Ok(match spec {
        DomainSpec::Hypercube { r } => cube(*r),
        DomainSpec::Sphere { r, k } => cube(*r)
            .into_iter()
            .filter(|p| p.iter().filter(|c| !c.is_zero()).count() == *k)
            .collect(),
        DomainSpec::Explicit { points } => points.clone(),
    })
}

/// The constant followed by every monomial of degree 1..=t in graded order.
fn all_monomials(r: usize, t: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; r]];
    out.extend(multi_indices(r, t));
    out
}

fn eval_monomial(k: &[u32], x: &[Rational]) -> Rational {
    k.iter()
        .zip(x)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, c)| c.pow(e))
        .product()
}

/// Σ_{x∈Ω} Π_{i∈U} x_i on a binary domain, where U is a coordinate set.
fn binary_moment(spec: &DomainSpec, support: usize) -> Rational {
    match spec {
        DomainSpec::Hypercube { r } => Rational::from(BigInt::from(2).pow((r - support) as u32)),
        DomainSpec::Sphere { r, k } => {
            if support > *k {
                Rational::zero()
            } else {
                Rational::from(BigInt::from(binomial(r - support, k - support)))
            }
        }
        DomainSpec::Explicit { .. } => unreachable!("binary domains only"),
    }
}

/// Greedy basis of 𝒫_t(Ω): the first monomials, in graded order starting
/// with the constant, whose restrictions to Ω are linearly independent.
pub fn polynomial_basis(spec: &DomainSpec, t: u32) -> Result<Vec<Vec<u32>>> {
    if t == 0 {
        return Err(Error::InvalidParameter("degree t must be at least 1".into()));
    }
    if spec.size() == 0 {
        return Err(Error::Empty("domain with no points"));
    }
    let r = spec.dimension();
    let monomials = all_monomials(r, t);
    let pivots = match spec {
        DomainSpec::Explicit { points } => {
            // points × monomials; independent columns are independent monomials
            let rows: Vec<Vec<Rational>> = points
                .iter()
                .map(|x| monomials.iter().map(|k| eval_monomial(k, x)).collect())
                .collect();
            RationalMatrix::from_rows(&rows)?.rank_profile().pivot_columns
        }
        _ => {
            // On 0/1 points a monomial only depends on its support, and the
            // Gram matrix E Eᵀ has the same column dependencies as the
            // evaluation matrix E has row dependencies.
            let supports: Vec<u64> = monomials
                .iter()
                .map(|k| {
                    k.iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .fold(0u64, |acc, (j, _)| acc | 1 << j)
                })
                .collect();
            let n = monomials.len();
            let mut entries = Vec::with_capacity(n * n);
            for &a in &supports {
                for &b in &supports {
                    entries.push(binary_moment(spec, (a | b).count_ones() as usize));
                }
            }
            RationalMatrix::new(n, n, entries)?.rank_profile().pivot_columns
        }
    };
    Ok(pivots.into_iter().map(|j| monomials[j].clone()).collect())
}

/// dim_ℚ 𝒫_t(Ω). Closed forms are asserted where they are known:
/// Σ_{i≤t} C(r,i) on the hypercube, and C(r,t) on the sphere S_k^{r-1}
/// when t ≤ k ≤ r - t.
pub fn dim_poly_space(spec: &DomainSpec, t: u32) -> Result<usize> {
    let dim = polynomial_basis(spec, t)?.len();
    if let Some(expected) = closed_form_dim(spec, t) {
        if expected != dim as u128 {
            return Err(Error::VerificationFailed(format!(
                "rank {dim} disagrees with the closed form {expected}"
            )));
        }
    }
    Ok(dim)
}

pub fn closed_form_dim(spec: &DomainSpec, t: u32) -> Option<u128> {
    let t = t as usize;
    match spec {
        DomainSpec::Hypercube { r } => Some((0..=t.min(*r)).map(|i| binomial(*r, i)).sum()),
        DomainSpec::Sphere { r, k } if t <= *k && k + t <= *r => Some(binomial(*r, t)),
        _ => None,
    }
}

fn evaluation_matrix(basis: &[Vec<u32>], points: &[PtePoint]) -> Result<RationalMatrix> {
    let rows: Vec<Vec<Rational>> = basis
        .iter()
        .map(|k| points.iter().map(|x| eval_monomial(k, x)).collect())
        .collect();
    RationalMatrix::from_rows(&rows)
}

/// N_A and N_B: the basis monomials of 𝒫_t(Ω) (rows) evaluated at the points
/// of each class (columns).
pub fn build_evaluation_matrices(
    instance: &PteInstance,
    spec: &DomainSpec,
    t: u32,
) -> Result<(RationalMatrix, RationalMatrix)> {
    if instance.classes().len() != 2 {
        return Err(Error::InvalidInstance(format!(
            "the bound applies to two classes, got {}",
            instance.classes().len()
        )));
    }
    if instance.dimension() != spec.dimension() {
        return Err(Error::DimensionMismatch {
            expected: spec.dimension(),
            found: instance.dimension(),
        });
    }
    for c in instance.classes() {
        if let Some(p) = c.points().iter().find(|p| !spec.contains(p)) {
            return Err(Error::InvalidInstance(format!(
                "point {p:?} lies outside the domain"
            )));
        }
    }
    let basis = polynomial_basis(spec, t)?;
    let a = evaluation_matrix(&basis, instance.classes()[0].points())?;
    let b = evaluation_matrix(&basis, instance.classes()[1].points())?;
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum BoundStatus {
    Holds,
    Violated,
    /// rank [N_A N_B] < dim, so the bound's hypothesis is not met.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundCertificate {
    pub n: usize,
    pub dim: usize,
    pub rank_joint: usize,
    pub bound_holds: BoundStatus,
    pub tight: bool,
    pub proper: bool,
}

/// Fills the certificate for a two-class solution of degree 2t inside Ω.
pub fn check_bound(instance: &PteInstance, spec: &DomainSpec, t: u32) -> Result<BoundCertificate> {
    let report = instance.verify_at(2 * t);
    if !report.holds {
        return Err(Error::VerificationFailed(format!(
            "instance does not verify at degree {}: {:?}",
            2 * t,
            report.first_failure
        )));
    }
    let (na, nb) = build_evaluation_matrices(instance, spec, t)?;
    let dim = na.rows();
    if let Some(expected) = closed_form_dim(spec, t) {
        if expected != dim as u128 {
            return Err(Error::VerificationFailed(format!(
                "rank {dim} disagrees with the closed form {expected}"
            )));
        }
    }
    let rank_joint = na.hstack(&nb)?.rank();
    let n = instance.size();
    let bound_holds = if rank_joint != dim {
        BoundStatus::NotApplicable
    } else if n >= dim {
        BoundStatus::Holds
    } else {
        BoundStatus::Violated
    };
    Ok(BoundCertificate {
        n,
        dim,
        rank_joint,
        bound_holds,
        tight: rank_joint == dim && n == dim,
        proper: instance.is_proper(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn explicit_square(side: i64) -> DomainSpec {
        let mut pts = Vec::new();
        for x in 0..side {
            for y in 0..side {
                pts.push(vec![q(x), q(y)]);
            }
        }
        DomainSpec::explicit(pts).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let c2 = enumerate_domain(&DomainSpec::hypercube(2).unwrap()).unwrap();
        assert_eq!(
            c2,
            vec![vec![q(0), q(0)], vec![q(0), q(1)], vec![q(1), q(0)], vec![q(1), q(1)]]
        );
        let s = enumerate_domain(&DomainSpec::sphere(2, 1).unwrap()).unwrap();
        assert_eq!(s, vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
        assert_eq!(enumerate_domain(&DomainSpec::sphere(7, 3).unwrap()).unwrap().len(), 35);
        assert!(DomainSpec::sphere(2, 3).is_err());
    }

    #[test]
    fn dim_examples() {
        assert_eq!(dim_poly_space(&DomainSpec::hypercube(5).unwrap(), 2).unwrap(), 16);
        assert_eq!(dim_poly_space(&DomainSpec::sphere(7, 3).unwrap(), 1).unwrap(), 7);
        assert_eq!(dim_poly_space(&DomainSpec::sphere(23, 7).unwrap(), 2).unwrap(), 253);
        assert_eq!(dim_poly_space(&explicit_square(6), 2).unwrap(), 6);
        assert!(dim_poly_space(&DomainSpec::hypercube(3).unwrap(), 0).is_err());
    }

    #[test]
    fn greedy_basis_on_the_sphere_keeps_the_constant() {
        let basis = polynomial_basis(&DomainSpec::sphere(7, 3).unwrap(), 1).unwrap();
        let mut expected = vec![vec![0; 7]];
        for j in 0..6 {
            let mut e = vec![0; 7];
            e[j] = 1;
            expected.push(e);
        }
        assert_eq!(basis, expected);
    }

    /// The Gram route against direct evaluation on enumerated domains.
    #[test]
    fn gram_rank_matches_direct_rank() {
        for r in 1..=7 {
            for t in 1..=3 {
                let mut specs = vec![DomainSpec::hypercube(r).unwrap()];
                for k in 0..=r {
                    specs.push(DomainSpec::sphere(r, k).unwrap());
                }
                for spec in specs {
                    let pts = enumerate_domain(&spec).unwrap();
                    let direct = polynomial_basis(&DomainSpec::explicit(pts).unwrap(), t).unwrap();
                    assert_eq!(polynomial_basis(&spec, t).unwrap(), direct, "{spec:?} t={t}");
                }
            }
        }
    }

    #[test]
    fn closed_forms_match_generic_rank() {
        for r in 1..=12 {
            for t in 1..=3 {
                let spec = DomainSpec::hypercube(r).unwrap();
                assert_eq!(
                    polynomial_basis(&spec, t).unwrap().len() as u128,
                    closed_form_dim(&spec, t).unwrap()
                );
                for k in 0..=r {
                    let spec = DomainSpec::sphere(r, k).unwrap();
                    let dim = polynomial_basis(&spec, t).unwrap().len() as u128;
                    if let Some(c) = closed_form_dim(&spec, t) {
                        assert_eq!(dim, c, "r={r} k={k} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn halving_matrices() {
        let inst = PteInstance::new(
            3,
            2,
            vec![
                crate::pte::PteClass::from_integer_points(&[&[0, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap(),
                crate::pte::PteClass::from_integer_points(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0], &[1, 1, 1]]).unwrap(),
            ],
        )
        .unwrap();
        let spec = DomainSpec::hypercube(3).unwrap();
        let (na, nb) = build_evaluation_matrices(&inst, &spec, 1).unwrap();
        assert_eq!((na.rows(), na.cols()), (4, 4));
        assert_eq!((nb.rows(), nb.cols()), (4, 4));
        let cert = check_bound(&inst, &spec, 1).unwrap();
        assert_eq!((cert.n, cert.dim, cert.rank_joint), (4, 4, 4));
        assert!(cert.tight);

        let outside = PteInstance::pair(
            1,
            vec![vec![q(2), q(0), q(0)]],
            vec![vec![q(0), q(0), q(0)]],
        )
        .unwrap();
        assert!(build_evaluation_matrices(&outside, &spec, 1).is_err());
        assert!(check_bound(&inst, &spec, 2).is_err());
    }
}
