//! Solution data model and verification predicates.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{gl_transform, RationalMatrix};
use crate::error::{Error, Result};
use crate::rational::Rational;

pub type PtePoint = Vec<Rational>;

/// Exhaustive linearity search is skipped above this class size by default.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 16;

/// A multiset of points of one dimension, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PteClass {
    points: Vec<PtePoint>,
}

impl PteClass {
    pub fn new(mut points: Vec<PtePoint>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Empty("class with no points"));
        };
        let r = first.len();
        if r == 0 {
            return Err(Error::InvalidInstance("zero-dimensional point".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != r) {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: p.len(),
            });
        }
        points.sort();
        Ok(PteClass { points })
    }

    /// One-dimensional class from integers.
    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| vec![Rational::from(v)]).collect())
    }

    pub fn from_integer_points(points: &[&[i64]]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|p| p.iter().map(|&v| Rational::from(v)).collect())
                .collect(),
        )
    }

    pub fn points(&self) -> &[PtePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.points[0].len()
    }

    /// The class as an n×r matrix.
    pub fn matrix(&self) -> RationalMatrix {
        RationalMatrix::from_rows(&self.points).expect("uniform dimension")
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }

    /// Σ_x Π_j x_j^{k_j}, with 0^0 = 1.
    pub fn power_sum(&self, k: &[u32]) -> Result<Rational> {
        class_power_sum(self, k)
    }

    pub fn negated(&self) -> PteClass {
        let mut points: Vec<PtePoint> = self
            .points
            .iter()
            .map(|p| p.iter().map(|x| -x).collect())
            .collect();
        points.sort();
        PteClass { points }
    }

    /// True iff the multiset equals its pointwise negation.
    pub fn is_symmetric(&self) -> bool {
        self.negated() == *self
    }

    pub fn total(&self) -> PtePoint {
        let mut acc = vec![Rational::zero(); self.dimension()];
        for p in &self.points {
            for (a, x) in acc.iter_mut().zip(p) {
                *a += x;
            }
        }
        acc
    }

    /// Keeps only the listed coordinates, in the listed order.
    pub fn project(&self, coords: &[usize]) -> Result<PteClass> {
        let r = self.dimension();
        if let Some(&c) = coords.iter().find(|&&c| c >= r) {
            return Err(Error::InvalidParameter(format!(
                "coordinate {c} out of range for dimension {r}"
            )));
        }
        PteClass::new(
            self.points
                .iter()
                .map(|p| coords.iter().map(|&c| p[c].clone()).collect())
                .collect(),
        )
    }
}

impl<'de> Deserialize<'de> for PteClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let points = Vec::<PtePoint>::deserialize(d)?;
        PteClass::new(points).map_err(serde::de::Error::custom)
    }
}

/// A claimed solution: α ≥ 2 classes of equal size in dimension r, with a
/// claimed degree m. Class order is kept as given; points inside each class
/// are sorted. Disjointness is not enforced here; `verify` reports it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct PteInstance {
    dimension: usize,
    degree: u32,
    classes: Vec<PteClass>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    dimension: usize,
    degree: u32,
    classes: Vec<PteClass>,
}

impl TryFrom<RawInstance> for PteInstance {
    type Error = Error;
    fn try_from(raw: RawInstance) -> Result<Self> {
        PteInstance::new(raw.dimension, raw.degree, raw.classes)
    }
}

impl PteInstance {
    pub fn new(dimension: usize, degree: u32, classes: Vec<PteClass>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidInstance("dimension must be at least 1".into()));
        }
        if degree == 0 {
            return Err(Error::InvalidInstance("degree must be at least 1".into()));
        }
        if classes.len() < 2 {
            return Err(Error::InvalidInstance(format!(
                "need at least two classes, got {}",
                classes.len()
            )));
        }
        let n = classes[0].len();
        for c in &classes {
            if c.dimension() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: c.dimension(),
                });
            }
            if c.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "classes have different sizes ({n} and {})",
                    c.len()
                )));
            }
        }
        Ok(PteInstance {
            dimension,
            degree,
            classes,
        })
    }

    /// Two-class instance from point lists.
    pub fn pair(degree: u32, a: Vec<PtePoint>, b: Vec<PtePoint>) -> Result<Self> {
        let a = PteClass::new(a)?;
        let b = PteClass::new(b)?;
        Self::new(a.dimension(), degree, vec![a, b])
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn classes(&self) -> &[PteClass] {
        &self.classes
    }

    /// Class size n.
    pub fn size(&self) -> usize {
        self.classes[0].len()
    }

    pub fn with_degree(&self, degree: u32) -> Result<Self> {
        Self::new(self.dimension, degree, self.classes.clone())
    }

    pub fn verify(&self) -> VerificationReport {
        self.verify_at(self.degree)
    }

    /// Checks disjointness and equality of all mixed power sums of total
    /// degree 1..=m between every pair of classes.
    pub fn verify_at(&self, m: u32) -> VerificationReport {
        if let Some(f) = self.shared_point() {
            return VerificationReport {
                holds: false,
                degree: m,
                first_failure: Some(f),
            };
        }
        let first_failure = self.first_power_sum_failure(m);
        VerificationReport {
            holds: first_failure.is_none(),
            degree: m,
            first_failure,
        }
    }

    /// Largest m ≤ cap at which `verify_at(m)` holds; 0 if none.
    pub fn max_verified_degree(&self, cap: u32) -> u32 {
        if self.shared_point().is_some() {
            return 0;
        }
        match self.first_power_sum_failure(cap) {
            None => cap,
            Some(Failure::PowerSum { exponent, .. }) => exponent.iter().sum::<u32>() - 1,
            Some(Failure::SharedPoint { .. }) => unreachable!(),
        }
    }

    /// First point shared by two classes, scanning class pairs in order.
    pub fn shared_point(&self) -> Option<Failure> {
        let sets: Vec<BTreeSet<&PtePoint>> = self
            .classes
            .iter()
            .map(|c| c.points.iter().collect())
            .collect();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if let Some(p) = sets[i].intersection(&sets[j]).next() {
                    return Some(Failure::SharedPoint {
                        classes: (i, j),
                        point: (*p).clone(),
                    });
                }
            }
        }
        None
    }

    pub fn is_disjoint(&self) -> bool {
        self.shared_point().is_none()
    }

    fn first_power_sum_failure(&self, m: u32) -> Option<Failure> {
        let indices = multi_indices(self.dimension, m);
        let fast = ScaledClasses::new(&self.classes);
        // Equal power sums between every pair is equality with class 0.
        let differs = |k: &Vec<u32>| -> Option<usize> {
            let sparse: Vec<(usize, u32)> = k
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| (j, e))
                .collect();
            if let Some(fast) = &fast {
                if let Some(sums) = fast.sums(&sparse) {
                    return (1..sums.len()).find(|&j| sums[j] != sums[0]);
                }
            }
            let s0 = sparse_power_sum(&self.classes[0], &sparse);
            (1..self.classes.len()).find(|&j| sparse_power_sum(&self.classes[j], &sparse) != s0)
        };
        let pos = indices.par_iter().position_first(|k| differs(k).is_some())?;
        let k = &indices[pos];
        let j = differs(k).expect("failure reproduces");
        Some(Failure::PowerSum {
            classes: (0, j),
            exponent: k.clone(),
            left: class_power_sum(&self.classes[0], k).expect("dimension checked"),
            right: class_power_sum(&self.classes[j], k).expect("dimension checked"),
        })
    }

    /// True iff every class has full column rank r.
    pub fn is_proper(&self) -> bool {
        self.classes.iter().all(|c| c.rank() == self.dimension)
    }

    pub fn class_ranks(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.rank()).collect()
    }

    /// rank [A_1ᵀ A_2ᵀ ... ], the r × αn matrix of all class points as columns.
    pub fn joint_rank(&self) -> usize {
        let mut rows: Vec<PtePoint> = Vec::new();
        for c in &self.classes {
            rows.extend(c.points.iter().cloned());
        }
        RationalMatrix::from_rows(&rows)
            .expect("uniform dimension")
            .rank()
    }

    pub fn is_symmetric(&self) -> bool {
        self.classes.iter().all(|c| c.is_symmetric())
    }

    /// Searches for an index set S with Σ_{i∈S} x_i = 0 in every class,
    /// pairing the sorted classes by position. The full set is always
    /// tried; smaller subsets only when `exhaustive_limit` is given and
    /// n does not exceed it.
    pub fn is_linear(&self, exhaustive_limit: Option<usize>) -> Linearity {
        let n = self.size();
        if self.classes.iter().all(|c| c.total().iter().all(|x| x.is_zero())) {
            return Linearity::Subset((0..n).collect());
        }
        match exhaustive_limit {
            Some(limit) if n <= limit => match self.first_zero_sum_subset() {
                Some(s) => Linearity::Subset(s),
                None => Linearity::NotFound,
            },
            _ => Linearity::NotCheckedExhaustively,
        }
    }

    /// Depth-first over nonempty subsets in lexicographic order of their
    /// sorted index lists.
    fn first_zero_sum_subset(&self) -> Option<Vec<usize>> {
        let n = self.size();
        let r = self.dimension;
        let mut sums = vec![vec![Rational::zero(); r]; self.classes.len()];
        let mut chosen = Vec::new();

        fn rec(
            inst: &PteInstance,
            start: usize,
            n: usize,
            sums: &mut Vec<Vec<Rational>>,
            chosen: &mut Vec<usize>,
        ) -> bool {
            for i in start..n {
                chosen.push(i);
                for (c, s) in inst.classes.iter().zip(sums.iter_mut()) {
                    for (a, x) in s.iter_mut().zip(&c.points[i]) {
                        *a += x;
                    }
                }
                if sums.iter().all(|s| s.iter().all(|x| x.is_zero())) {
                    return true;
                }
                if rec(inst, i + 1, n, sums, chosen) {
                    return true;
                }
                for (c, s) in inst.classes.iter().zip(sums.iter_mut()) {
                    for (a, x) in s.iter_mut().zip(&c.points[i]) {
                        *a -= x;
                    }
                }
                chosen.pop();
            }
            false
        }

        if rec(self, 0, n, &mut sums, &mut chosen) {
            Some(chosen)
        } else {
            None
        }
    }

    /// Ideal: the claimed degree verifies and n = m + 1.
    pub fn is_ideal(&self) -> bool {
        self.size() == self.degree as usize + 1 && self.verify().holds
    }

    /// Applies x ↦ xM to every point of every class.
    pub fn transform(&self, m: &RationalMatrix) -> Result<PteInstance> {
        let classes = self
            .classes
            .iter()
            .map(|c| PteClass::new(gl_transform(&c.points, m)?))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.dimension, self.degree, classes)
    }

    /// Keeps only the listed coordinates of every point.
    pub fn project(&self, coords: &[usize]) -> Result<PteInstance> {
        let classes = self
            .classes
            .iter()
            .map(|c| c.project(coords))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords.len(), self.degree, classes)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Failure {
    SharedPoint {
        classes: (usize, usize),
        point: PtePoint,
    },
    PowerSum {
        classes: (usize, usize),
        exponent: Vec<u32>,
        left: Rational,
        right: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub holds: bool,
    pub degree: u32,
    pub first_failure: Option<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Linearity {
    Subset(Vec<usize>),
    NotFound,
    NotCheckedExhaustively,
}

/// All exponent vectors k ∈ ℤ_{≥0}^r with 1 ≤ |k| ≤ m, by total degree and
/// then with the first exponent decreasing.
pub fn multi_indices(r: usize, m: u32) -> Vec<Vec<u32>> {
    fn fill(prefix: &mut Vec<u32>, left: u32, r: usize, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == r {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            fill(prefix, left - e, r, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        return out;
    }
    for d in 1..=m {
        fill(&mut Vec::with_capacity(r), d, r, &mut out);
    }
    out
}

pub fn class_power_sum(c: &PteClass, k: &[u32]) -> Result<Rational> {
    if k.len() != c.dimension() {
        return Err(Error::DimensionMismatch {
            expected: c.dimension(),
            found: k.len(),
        });
    }
    let sparse: Vec<(usize, u32)> = k
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(j, &e)| (j, e))
        .collect();
    Ok(sparse_power_sum(c, &sparse))
}

fn sparse_power_sum(c: &PteClass, k: &[(usize, u32)]) -> Rational {
    c.points
        .iter()
        .map(|p| k.iter().map(|&(j, e)| p[j].pow(e)).product::<Rational>())
        .sum()
}

/// All classes multiplied by the common denominator D of every coordinate.
/// A monomial of degree d scales by D^d in every class alike, so equalities
/// are unchanged, and the sums can be taken in machine integers.
struct ScaledClasses {
    classes: Vec<Vec<Vec<i64>>>,
}

impl ScaledClasses {
    fn new(classes: &[PteClass]) -> Option<Self> {
        let d = Rational::common_denominator(
            classes.iter().flat_map(|c| c.points.iter().flatten()),
        );
        let scaled = classes
            .iter()
            .map(|c| {
                c.points
                    .iter()
                    .map(|p| {
                        p.iter()
                            .map(|x| {
                                let v: BigInt = x.numer() * (&d / x.denom());
                                v.to_i64()
                            })
                            .collect::<Option<Vec<i64>>>()
                    })
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(ScaledClasses { classes: scaled })
    }

    /// Per-class sums of the monomial, or `None` on i128 overflow.
    fn sums(&self, k: &[(usize, u32)]) -> Option<Vec<i128>> {
        self.classes
            .iter()
            .map(|c| {
                let mut acc: i128 = 0;
                for p in c {
                    let mut term: i128 = 1;
                    for &(j, e) in k {
                        let x = p[j] as i128;
                        if x == 0 {
                            term = 0;
                            break;
                        }
                        term = term.checked_mul(x.checked_pow(e)?)?;
                    }
                    acc = acc.checked_add(term)?;
                }
                Some(acc)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q2};
    use proptest::prelude::*;

    fn halving() -> PteInstance {
        PteInstance::new(
            3,
            2,
            vec![
                PteClass::from_integer_points(&[&[0, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
                    .unwrap(),
                PteClass::from_integer_points(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0], &[1, 1, 1]])
                    .unwrap(),
            ],
        )
        .unwrap()
    }

    fn one_d(m: u32, a: &[i64], b: &[i64]) -> PteInstance {
        PteInstance::new(
            1,
            m,
            vec![
                PteClass::from_integers(a).unwrap(),
                PteClass::from_integers(b).unwrap(),
            ],
        )
        .unwrap()
    }

    fn borwein(m: u32) -> PteInstance {
        one_d(
            m,
            &[18, -18, 20, -20, 2, -2],
            &[10, -10, 12, -12, 22, -22],
        )
    }

    #[test]
    fn multi_index_examples() {
        assert_eq!(multi_indices(1, 3), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(
            multi_indices(2, 2),
            vec![vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(
            multi_indices(3, 1),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
    }

    #[test]
    fn multi_index_count_is_binomial() {
        fn binom(n: u64, k: u64) -> u64 {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for r in 1..=8usize {
            for m in 1..=8u32 {
                assert_eq!(
                    multi_indices(r, m).len() as u64,
                    binom(r as u64 + m as u64, m as u64) - 1
                );
            }
        }
    }

    #[test]
    fn class_power_sum_examples() {
        let a = PteClass::from_integers(&[1, 2, 4, 7]).unwrap();
        assert_eq!(class_power_sum(&a, &[2]).unwrap(), q(70));
        let inst = halving();
        let h = &inst.classes()[0];
        assert_eq!(class_power_sum(h, &[1, 0, 0]).unwrap(), q(2));
        assert_eq!(class_power_sum(h, &[1, 1, 0]).unwrap(), q(1));
        assert!(class_power_sum(h, &[1, 1]).is_err());
    }

    #[test]
    fn verify_examples() {
        assert!(one_d(2, &[1, 2, 4, 7], &[0, 3, 5, 6]).verify().holds);
        assert!(halving().verify().holds);
        let shared = one_d(1, &[1, 2], &[1, 3]).verify();
        assert!(!shared.holds);
        assert_eq!(
            shared.first_failure,
            Some(Failure::SharedPoint {
                classes: (0, 1),
                point: vec![q(1)]
            })
        );
    }

    #[test]
    fn failure_reports_unscaled_values() {
        let inst = PteInstance::pair(
            1,
            vec![vec![q2(1, 2)], vec![q2(1, 3)]],
            vec![vec![q(0)], vec![q(1)]],
        )
        .unwrap();
        let report = inst.verify();
        assert_eq!(
            report.first_failure,
            Some(Failure::PowerSum {
                classes: (0, 1),
                exponent: vec![1],
                left: q2(5, 6),
                right: q(1)
            })
        );
    }

    #[test]
    fn max_verified_degree_examples() {
        assert_eq!(borwein(5).max_verified_degree(7), 5);
        assert_eq!(one_d(1, &[1], &[2]).max_verified_degree(3), 0);
        assert_eq!(halving().max_verified_degree(4), 2);
        let r = halving().verify_at(3);
        match r.first_failure {
            Some(Failure::PowerSum { exponent, left, right, .. }) => {
                assert_eq!(exponent, vec![1, 1, 1]);
                assert_eq!((left, right), (q(0), q(1)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn big_values_fall_back_to_exact_sums() {
        // cubes overflow i128
        let big = 1i64 << 50;
        let inst = one_d(3, &[big, -big], &[big - 1, -big + 1]);
        assert!(!inst.verify().holds);
        assert_eq!(inst.max_verified_degree(5), 1);
        let sym = one_d(3, &[big, -big, 1, -1], &[big, -big, 2, -2]);
        assert_eq!(sym.max_verified_degree(5), 0);
        let odd = one_d(3, &[big, -big, 2, -1, -1], &[big, -big, -2, 1, 1]);
        assert!(odd.shared_point().is_some());
    }

    #[test]
    fn proper_examples() {
        assert!(halving().is_proper());
        let line = PteInstance::pair(
            2,
            vec![vec![q(1), q(1)], vec![q(-1), q(-1)]],
            vec![vec![q(2), q(2)], vec![q(-2), q(-2)]],
        )
        .unwrap();
        assert!(!line.is_proper());
    }

    #[test]
    fn symmetric_examples() {
        let pts = [[18, -20], [-20, 2], [2, 18]];
        let mut class: Vec<PtePoint> = Vec::new();
        for p in pts {
            class.push(vec![q(p[0]), q(p[1])]);
            class.push(vec![q(-p[0]), q(-p[1])]);
        }
        assert!(PteClass::new(class).unwrap().is_symmetric());
        assert!(!PteClass::from_integer_points(&[&[1, 0]]).unwrap().is_symmetric());
        assert!(PteClass::from_integer_points(&[&[0, 0]]).unwrap().is_symmetric());
    }

    #[test]
    fn linear_examples() {
        let inst = one_d(1, &[1, 2, -3], &[-4, 0, 4]);
        assert_eq!(inst.is_linear(None), Linearity::Subset(vec![0, 1, 2]));
        let none = one_d(1, &[1, 2], &[0, 3]);
        assert_eq!(none.is_linear(None), Linearity::NotCheckedExhaustively);
        assert_eq!(
            none.is_linear(Some(DEFAULT_EXHAUSTIVE_LIMIT)),
            Linearity::NotFound
        );
        // sorted: (-2, 1, 2, 5) and (-3, 0, 3, 6); {0, 2} sums to 0 and 0
        let partial = one_d(1, &[5, 2, -2, 1], &[-3, 3, 0, 6]);
        assert_eq!(
            partial.is_linear(Some(DEFAULT_EXHAUSTIVE_LIMIT)),
            Linearity::Subset(vec![0, 2])
        );
    }

    #[test]
    fn ideal_examples() {
        assert!(borwein(5).is_ideal());
        assert!(!one_d(2, &[1, 2, 4, 7], &[0, 3, 5, 6]).is_ideal());
        assert!(!halving().is_ideal());
        assert!(!borwein(5).verify_at(6).holds);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let h = halving();
        let text = h.to_json();
        assert_eq!(PteInstance::from_json(&text).unwrap(), h);
        assert!(text.starts_with(r#"{"dimension":3,"degree":2,"classes":[[["0","0","0"]"#));
        let ragged = r#"{"dimension":2,"degree":1,"classes":[[["1","2"],["3"]],[["0","0"],["1","1"]]]}"#;
        assert!(PteInstance::from_json(ragged).is_err());
        let sizes = r#"{"dimension":1,"degree":1,"classes":[[["1"]],[["0"],["1"]]]}"#;
        assert!(PteInstance::from_json(sizes).is_err());
    }

    fn invertible_matrix() -> impl Strategy<Value = RationalMatrix> {
        proptest::collection::vec((-3i64..4, 1i64..3), 9)
            .prop_map(|v| {
                let e = v.into_iter().map(|(n, d)| q2(n, d)).collect();
                RationalMatrix::new(3, 3, e).unwrap()
            })
            .prop_filter("invertible", |m| m.rank() == 3)
    }

    proptest! {
        #[test]
        fn verification_is_gl_invariant(m in invertible_matrix()) {
            let t = halving().transform(&m).unwrap();
            prop_assume!(t.is_disjoint());
            prop_assert!(t.verify().holds);
        }

        #[test]
        fn verification_ignores_orderings(seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let h = halving();
            let mut a: Vec<PtePoint> = h.classes()[0].points().to_vec();
            let mut b: Vec<PtePoint> = h.classes()[1].points().to_vec();
            a.shuffle(&mut rng);
            b.shuffle(&mut rng);
            let swapped = PteInstance::pair(2, b, a).unwrap();
            prop_assert!(swapped.verify().holds);
            prop_assert_eq!(swapped.max_verified_degree(4), 2);
        }
    }
}
