//! Dimension lifting: signed symbol substitution into (Type-I) orthogonal
//! arrays, the Borwein family, and Cartesian products over a Latin square.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::designs::{verify_oa, LatinSquare, OrthogonalArray, TypeIOrthogonalArray};
use crate::error::{Error, Result};
use crate::pte::{PteClass, PteInstance, PtePoint};
use crate::rational::Rational;

/// Values A_1..A_s and B_1..B_s for signed substitution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SignedBase {
    pub a_values: Vec<Rational>,
    pub b_values: Vec<Rational>,
}

fn power_sum(values: &[Rational], k: u32) -> Rational {
    values.iter().map(|x| x.pow(k)).sum()
}

impl SignedBase {
    /// Checks the parts that do not depend on a degree: equal lengths, the
    /// 4s values ±A_i, ±B_i pairwise distinct, and ΣA = ΣB = 0.
    pub fn new(a_values: Vec<Rational>, b_values: Vec<Rational>) -> Result<Self> {
        if a_values.is_empty() || a_values.len() != b_values.len() {
            return Err(Error::InvalidParameter(format!(
                "need two nonempty lists of equal length, got {} and {}",
                a_values.len(),
                b_values.len()
            )));
        }
        let mut seen: BTreeMap<Rational, String> = BTreeMap::new();
        let labelled = a_values
            .iter()
            .enumerate()
            .map(|(i, x)| (x, format!("A_{}", i + 1)))
            .chain(b_values.iter().enumerate().map(|(i, x)| (x, format!("B_{}", i + 1))));
        for (x, name) in labelled {
            for (value, label) in [(x.clone(), format!("+{name}")), (-x, format!("-{name}"))] {
                if let Some(prev) = seen.insert(value.clone(), label.clone()) {
                    return Err(Error::Degenerate(format!(
                        "{prev} and {label} both equal {value}"
                    )));
                }
            }
        }
        for (name, values) in [("A", &a_values), ("B", &b_values)] {
            let total = power_sum(values, 1);
            if !total.is_zero() {
                return Err(Error::Precondition(format!(
                    "the {name} values must sum to zero, got {total}"
                )));
            }
        }
        Ok(SignedBase { a_values, b_values })
    }

    pub fn from_integers(a: &[i64], b: &[i64]) -> Result<Self> {
        let conv = |v: &[i64]| v.iter().map(|&x| Rational::from(x)).collect();
        Self::new(conv(a), conv(b))
    }

    pub fn len(&self) -> usize {
        self.a_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a_values.is_empty()
    }

    /// Power sums agree in every degree 1..=m and in degree m+2.
    pub fn check(&self, m: u32) -> Result<()> {
        for k in (1..=m).chain([m + 2]) {
            let (pa, pb) = (power_sum(&self.a_values, k), power_sum(&self.b_values, k));
            if pa != pb {
                return Err(Error::Precondition(format!(
                    "power sums of degree {k} differ: {pa} vs {pb}"
                )));
            }
        }
        Ok(())
    }
}

fn check_degree(m: u32) -> Result<()> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "m must be an even integer >= 2, got {m}"
        )));
    }
    Ok(())
}

/// Rows with the i-th smallest symbol replaced by values[i], followed by
/// the negated rows.
fn substitute(rows: &[Vec<Rational>], symbols: &[Rational], values: &[Rational]) -> Vec<PtePoint> {
    let index: BTreeMap<&Rational, &Rational> = symbols.iter().zip(values).collect();
    let plus: Vec<PtePoint> = rows
        .iter()
        .map(|row| row.iter().map(|x| index[x].clone()).collect())
        .collect();
    let minus: Vec<PtePoint> = plus
        .iter()
        .map(|p| p.iter().map(|x| -x).collect())
        .collect();
    plus.into_iter().chain(minus).collect()
}

fn signed_lift(
    rows: &[Vec<Rational>],
    symbols: &[Rational],
    base: &SignedBase,
    m: u32,
) -> Result<PteInstance> {
    check_degree(m)?;
    let s = symbols.len();
    if s != base.len() {
        return Err(Error::InvalidParameter(format!(
            "array has {s} symbols but the base has {} values",
            base.len()
        )));
    }
    if s < m as usize + 1 {
        return Err(Error::Precondition(format!("need s >= m + 1, got s = {s}, m = {m}")));
    }
    base.check(m)?;
    let x = substitute(rows, symbols, &base.a_values);
    let y = substitute(rows, symbols, &base.b_values);
    let instance = PteInstance::new(rows[0].len(), m + 3, vec![PteClass::new(x)?, PteClass::new(y)?])?;
    if let Some(shared) = instance.shared_point() {
        return Err(Error::NotDisjoint(format!("lifted classes collide: {shared:?}")));
    }
    let report = instance.verify();
    if !report.holds {
        return Err(Error::VerificationFailed(format!(
            "lifted instance fails: {:?}",
            report.first_failure
        )));
    }
    Ok(instance)
}

/// Signed substitution into an OA(ℓ, r, s, r)_λ with s ≥ m+1: a proper
/// solution of degree m+3 and size 2ℓ. The i-th smallest symbol is
/// replaced by ±A_{i+1} (resp. ±B_{i+1}).
pub fn oa_lift(oa: &OrthogonalArray, base: &SignedBase, m: u32) -> Result<PteInstance> {
    let r = oa.columns();
    if !verify_oa(oa.rows(), r)?.is_balanced() {
        return Err(Error::Precondition(format!(
            "the array must have full strength {r}, declared strength is {}",
            oa.strength()
        )));
    }
    let instance = signed_lift(oa.rows(), &oa.symbols(), base, m)?;
    if !instance.is_proper() {
        return Err(Error::VerificationFailed(format!(
            "lifted instance is not proper: class ranks {:?}",
            instance.class_ranks()
        )));
    }
    Ok(instance)
}

/// Signed substitution into an OA_I(ℓ, r, s, s)_λ with s ≥ m+1 and s ≤ r:
/// a solution of degree m+3 and size 2ℓ. Properness is not checked.
pub fn type1_oa_lift(oa: &TypeIOrthogonalArray, base: &SignedBase, m: u32) -> Result<PteInstance> {
    let (s, t, r) = (oa.levels(), oa.strength(), oa.columns());
    if t != s || s > r {
        return Err(Error::Precondition(format!(
            "need strength equal to the number of symbols and at most the number of columns, got t = {t}, s = {s}, r = {r}"
        )));
    }
    signed_lift(oa.rows(), &oa.symbols(), base, m)
}

/// The two triples of the Borwein formula at (a, b).
pub fn borwein_values(a: &Rational, b: &Rational) -> ([Rational; 3], [Rational; 3]) {
    let three = Rational::from(3);
    let ab = a * b;
    let two = Rational::from(2);
    (
        [
            &two * &(a + b),
            &(&(&three - &ab) - b) - a,
            &(&(&ab - b) - a) - &three,
        ],
        [
            &two * &(b - a),
            &(&(&ab - b) + a) + &three,
            &(&(a - &ab) - b) - &three,
        ],
    )
}

fn borwein_base(a: &Rational, b: &Rational) -> Result<SignedBase> {
    let (x, y) = borwein_values(a, b);
    SignedBase::new(x.to_vec(), y.to_vec())
        .map_err(|e| Error::Degenerate(format!("Borwein values at a = {a}, b = {b}: {e}")))
}

fn pm(points: Vec<PtePoint>) -> Vec<PtePoint> {
    let neg: Vec<PtePoint> = points
        .iter()
        .map(|p| p.iter().map(|x| -x).collect())
        .collect();
    points.into_iter().chain(neg).collect()
}

fn ideal_pair(dimension: usize, x: Vec<PtePoint>, y: Vec<PtePoint>) -> Result<PteInstance> {
    let instance = PteInstance::new(dimension, 5, vec![PteClass::new(pm(x))?, PteClass::new(pm(y))?])?;
    if let Some(shared) = instance.shared_point() {
        return Err(Error::NotDisjoint(format!("classes collide: {shared:?}")));
    }
    let report = instance.verify();
    if !report.holds {
        return Err(Error::VerificationFailed(format!(
            "instance fails: {:?}",
            report.first_failure
        )));
    }
    Ok(instance)
}

/// The ideal degree-5, size-6 solution [±A_1, ±A_2, ±A_3] vs [±B_1, ±B_2, ±B_3].
pub fn borwein1d(a: &Rational, b: &Rational) -> Result<PteInstance> {
    let base = borwein_base(a, b)?;
    let one = |v: &[Rational]| v.iter().map(|x| vec![x.clone()]).collect();
    ideal_pair(1, one(&base.a_values), one(&base.b_values))
}

/// The planar version with a_i = (A_i, A_{i+1}), b_i = (B_i, B_{i+1}).
pub fn borwein2d(a: &Rational, b: &Rational) -> Result<PteInstance> {
    let base = borwein_base(a, b)?;
    let pairs = |v: &[Rational]| (0..3).map(|i| vec![v[i].clone(), v[(i + 1) % 3].clone()]).collect();
    ideal_pair(2, pairs(&base.a_values), pairs(&base.b_values))
}

/// The cyclic shifts ±(A_i, A_{i+1}, A_{i+2}) vs ±(B_i, B_{i+1}, B_{i+2}).
/// Requires [A] =_2 [B], equal fourth power sums, and zero sums.
pub fn borwein3d(a: &[Rational; 3], b: &[Rational; 3]) -> Result<PteInstance> {
    for (name, v) in [("A", a), ("B", b)] {
        let total = power_sum(v, 1);
        if !total.is_zero() {
            return Err(Error::Precondition(format!(
                "linearity fails: the {name} triple sums to {total}"
            )));
        }
    }
    for k in [2, 4] {
        let (pa, pb) = (power_sum(a, k), power_sum(b, k));
        if pa != pb {
            return Err(Error::Precondition(format!(
                "power sums of degree {k} differ: {pa} vs {pb}"
            )));
        }
    }
    let shifts = |v: &[Rational; 3]| -> Vec<PtePoint> {
        (0..3)
            .map(|i| (0..3).map(|j| v[(i + j) % 3].clone()).collect())
            .collect()
    };
    ideal_pair(3, shifts(a), shifts(b))
}

/// U^(a) = ⋃_i S^(i) × T^(δ_{ai}) for a Latin square δ with symbols 1..ℓ.
/// The result has degree m_S + m_T + 1.
pub fn cartesian_lift(s: &PteInstance, t: &PteInstance, square: &LatinSquare) -> Result<PteInstance> {
    let l = square.order();
    if s.classes().len() != l || t.classes().len() != l {
        return Err(Error::InvalidParameter(format!(
            "Latin square of order {l} needs {l} classes on each side, got {} and {}",
            s.classes().len(),
            t.classes().len()
        )));
    }
    for (name, inst) in [("S", s), ("T", t)] {
        let report = inst.verify();
        if !report.holds {
            return Err(Error::Precondition(format!(
                "the {name} classes are not a solution of degree {}: {:?}",
                inst.degree(),
                report.first_failure
            )));
        }
    }
    let classes = (0..l)
        .map(|a| {
            let points = (0..l)
                .flat_map(|i| {
                    let tc = &t.classes()[square.entry(a, i) - 1];
                    s.classes()[i].points().iter().flat_map(move |x| {
                        tc.points()
                            .iter()
                            .map(move |y| x.iter().chain(y).cloned().collect::<PtePoint>())
                    })
                })
                .collect();
            PteClass::new(points)
        })
        .collect::<Result<Vec<_>>>()?;
    let instance = PteInstance::new(
        s.dimension() + t.dimension(),
        s.degree() + t.degree() + 1,
        classes,
    )?;
    let report = instance.verify();
    if !report.holds {
        return Err(Error::VerificationFailed(format!(
            "lifted classes fail: {:?}",
            report.first_failure
        )));
    }
    Ok(instance)
}

/// (u_1, u_2) ↦ u_1 + (u_2 - 1)·α·n_S for planar classes with u_1 in
/// [1, α·n_S] and u_2 a positive integer.
pub fn jacroux_reduce(u: &PteInstance, alpha: usize, n_s: usize) -> Result<PteInstance> {
    if u.dimension() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: u.dimension(),
        });
    }
    if alpha == 0 || n_s == 0 {
        return Err(Error::InvalidParameter("alpha and n_S must be positive".into()));
    }
    let width = Rational::from((alpha * n_s) as u64);
    let one = Rational::one();
    let classes = u
        .classes()
        .iter()
        .map(|c| {
            let points = c
                .points()
                .iter()
                .map(|p| {
                    let (u1, u2) = (&p[0], &p[1]);
                    if !u1.is_integer() || u1 < &one || u1 > &width {
                        return Err(Error::Precondition(format!(
                            "first coordinate {u1} is outside 1..={width}"
                        )));
                    }
                    if !u2.is_integer() || u2 < &one {
                        return Err(Error::Precondition(format!(
                            "second coordinate {u2} is not a positive integer"
                        )));
                    }
                    Ok(vec![u1 + &(&(u2 - &one) * &width)])
                })
                .collect::<Result<Vec<_>>>()?;
            PteClass::new(points)
        })
        .collect::<Result<Vec<_>>>()?;
    PteInstance::new(1, u.degree(), classes)
}
