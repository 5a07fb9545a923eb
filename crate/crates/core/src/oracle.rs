//! Exhaustive search for small integer solutions, used as an independent
//! check on the constructions, and the linearity test for ideal solutions.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pte::{multi_indices, PteClass, PteInstance, PtePoint};
use crate::rational::Rational;

/// Default ceiling on candidate evaluations.
pub const SEARCH_CEILING: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SearchSpec {
    pub dimension: usize,
    pub degree: u32,
    pub size: usize,
    #[serde(default = "two")]
    pub class_count: usize,
    pub lo: i64,
    pub hi: i64,
    /// Translate each solution so that every coordinate has minimum 0 and
    /// merge translates.
    #[serde(default)]
    pub translate: bool,
    /// Only classes without repeated points.
    #[serde(default)]
    pub distinct: bool,
}

fn two() -> usize {
    2
}

impl SearchSpec {
    pub fn new(dimension: usize, degree: u32, size: usize, lo: i64, hi: i64) -> Self {
        SearchSpec {
            dimension,
            degree,
            size,
            class_count: 2,
            lo,
            hi,
            translate: false,
            distinct: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dimension == 0 || self.degree == 0 || self.size == 0 || self.class_count < 2 {
            return Err(Error::InvalidParameter(format!(
                "need dimension, degree, size >= 1 and at least 2 classes, got {self:?}"
            )));
        }
        if self.lo > self.hi {
            return Err(Error::InvalidParameter(format!(
                "empty range [{}, {}]",
                self.lo, self.hi
            )));
        }
        Ok(())
    }

    pub fn point_count(&self) -> u128 {
        ((self.hi - self.lo + 1) as u128).saturating_pow(self.dimension as u32)
    }

    /// Number of candidate classes: n-multisets (or n-subsets) of the grid.
    pub fn candidate_count(&self) -> u128 {
        let p = self.point_count();
        let top = if self.distinct { p } else { p.saturating_add(self.size as u128).saturating_sub(1) };
        binomial(top, self.size as u128)
    }
}

/// C(n, k), saturating at u128::MAX.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchOutcome {
    /// Candidate classes whose power sums were evaluated.
    pub candidates: u128,
    /// Solutions found before applying the limit.
    pub total: usize,
    pub instances: Vec<PteInstance>,
}

fn grid(spec: &SearchSpec) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..spec.dimension {
        out = out
            .into_iter()
            .flat_map(|p| {
                (spec.lo..=spec.hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn monomials(points: &[Vec<i64>], exps: &[Vec<u32>]) -> Result<Vec<Vec<i128>>> {
    points
        .iter()
        .map(|p| {
            exps.iter()
                .map(|k| {
                    p.iter().zip(k).try_fold(1i128, |acc, (&x, &e)| {
                        (x as i128).checked_pow(e).and_then(|v| acc.checked_mul(v))
                    })
                })
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidParameter("power sums overflow; use a smaller range".into()))
}

/// Nondecreasing (or increasing, for `distinct`) index sequences of length
/// n below p that start with `first`, in lexicographic order.
fn sequences_from(first: usize, n: usize, p: usize, distinct: bool, out: &mut Vec<Vec<usize>>) {
    fn go(seq: &mut Vec<usize>, n: usize, p: usize, distinct: bool, out: &mut Vec<Vec<usize>>) {
        if seq.len() == n {
            out.push(seq.clone());
            return;
        }
        let start = seq.last().map_or(0, |&x| x + distinct as usize);
        for i in start..p {
            seq.push(i);
            go(seq, n, p, distinct, out);
            seq.pop();
        }
    }
    go(&mut vec![first], n, p, distinct, out);
}

type Signature = Vec<i128>;

fn signature(seq: &[usize], mono: &[Vec<i128>]) -> Option<Signature> {
    let width = mono.first().map_or(0, Vec::len);
    let mut sig = vec![0i128; width];
    for &i in seq {
        for (s, v) in sig.iter_mut().zip(&mono[i]) {
            *s = s.checked_add(*v)?;
        }
    }
    Some(sig)
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// Increasing tuples of pairwise disjoint members of `group`.
fn disjoint_tuples(group: &[&Vec<usize>], alpha: usize, budget: &mut u128, out: &mut Vec<Vec<usize>>) -> Result<()> {
    fn go(
        group: &[&Vec<usize>],
        alpha: usize,
        chosen: &mut Vec<usize>,
        budget: &mut u128,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if chosen.len() == alpha {
            out.push(chosen.clone());
            return Ok(());
        }
        let start = chosen.last().map_or(0, |&x| x + 1);
        for i in start..group.len() {
            if *budget == 0 {
                return Err(Error::InvalidParameter(
                    "too many candidate class tuples share power sums; use a smaller range".into(),
                ));
            }
            *budget -= 1;
            if chosen.iter().all(|&c| disjoint(group[c], group[i])) {
                chosen.push(i);
                go(group, alpha, chosen, budget, out)?;
                chosen.pop();
            }
        }
        Ok(())
    }
    go(group, alpha, &mut Vec::new(), budget, out)
}

/// Sorts classes and, if asked, translates so each coordinate has minimum 0.
pub fn canonical_form(instance: &PteInstance, translate: bool) -> Result<PteInstance> {
    let mut classes = instance.classes().to_vec();
    if translate {
        let r = instance.dimension();
        let shift: PtePoint = (0..r)
            .map(|j| {
                classes
                    .iter()
                    .flat_map(|c| c.points().iter().map(move |p| p[j].clone()))
                    .min()
                    .expect("nonempty classes")
            })
            .collect();
        classes = classes
            .iter()
            .map(|c| {
                PteClass::new(
                    c.points()
                        .iter()
                        .map(|p| p.iter().zip(&shift).map(|(x, s)| x - s).collect())
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
    }
    classes.sort_by(|a, b| a.points().cmp(b.points()));
    PteInstance::new(instance.dimension(), instance.degree(), classes)
}

fn instance_key(instance: &PteInstance) -> Vec<Vec<PtePoint>> {
    instance.classes().iter().map(|c| c.points().to_vec()).collect()
}

/// Every canonical solution with integer coordinates in [lo, hi], in
/// lexicographic order, truncated to `limit`. Fails if the number of
/// candidate classes exceeds [`SEARCH_CEILING`].
pub fn brute_search(spec: &SearchSpec, limit: Option<usize>) -> Result<SearchOutcome> {
    brute_search_with_ceiling(spec, limit, SEARCH_CEILING)
}

pub fn brute_search_with_ceiling(spec: &SearchSpec, limit: Option<usize>, ceiling: u128) -> Result<SearchOutcome> {
    spec.validate()?;
    let space = spec.candidate_count();
    if space > ceiling {
        return Err(Error::SearchTooLarge { space, ceiling });
    }
    let points = grid(spec);
    let exps = multi_indices(spec.dimension, spec.degree);
    let mono = monomials(&points, &exps)?;
    let p = points.len();
    let n = spec.size;

    let mut candidates: Vec<(Signature, Vec<usize>)> = (0..p)
        .into_par_iter()
        .map(|first| {
            let mut seqs = Vec::new();
            sequences_from(first, n, p, spec.distinct, &mut seqs);
            seqs.into_iter()
                .map(|s| signature(&s, &mono).map(|sig| (sig, s)))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<Vec<_>>>>()
        .ok_or_else(|| Error::InvalidParameter("power sums overflow; use a smaller range".into()))?
        .into_iter()
        .flatten()
        .collect();
    let evaluated = candidates.len() as u128;
    candidates.par_sort_unstable();

    let mut budget = ceiling;
    let mut found: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut start = 0;
    while start < candidates.len() {
        let mut end = start + 1;
        while end < candidates.len() && candidates[end].0 == candidates[start].0 {
            end += 1;
        }
        if end - start >= spec.class_count {
            let group: Vec<&Vec<usize>> = candidates[start..end].iter().map(|(_, s)| s).collect();
            let mut tuples = Vec::new();
            disjoint_tuples(&group, spec.class_count, &mut budget, &mut tuples)?;
            found.extend(
                tuples
                    .into_iter()
                    .map(|t| t.into_iter().map(|i| group[i].clone()).collect()),
            );
        }
        start = end;
    }

    let to_point = |i: usize| -> PtePoint { points[i].iter().map(|&x| Rational::from(x)).collect() };
    let mut unique = BTreeSet::new();
    let mut instances = Vec::new();
    for tuple in found {
        let classes = tuple
            .iter()
            .map(|seq| PteClass::new(seq.iter().map(|&i| to_point(i)).collect()))
            .collect::<Result<Vec<_>>>()?;
        let inst = canonical_form(
            &PteInstance::new(spec.dimension, spec.degree, classes)?,
            spec.translate,
        )?;
        if unique.insert(instance_key(&inst)) {
            instances.push(inst);
        }
    }
    instances.sort_by_cached_key(instance_key);
    let total = instances.len();
    if let Some(limit) = limit {
        instances.truncate(limit);
    }
    Ok(SearchOutcome {
        candidates: evaluated,
        total,
        instances,
    })
}

/// The two predicates of the linearity characterization for an ideal
/// one-dimensional solution of size n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LinearityReport {
    pub size: usize,
    /// Σ x_i
    pub sum: Rational,
    /// (i): Σ x_i = 0
    pub sum_is_zero: bool,
    /// Σ x_i^{n+1} and Σ y_i^{n+1}
    pub left: Rational,
    pub right: Rational,
    /// (ii): the (n+1)-th power sums agree
    pub next_power_equal: bool,
    pub agree: bool,
}

/// Requires a disjoint one-dimensional pair verifying at degree n-1.
pub fn ideal_linearity_check(instance: &PteInstance) -> Result<LinearityReport> {
    if instance.dimension() != 1 || instance.classes().len() != 2 {
        return Err(Error::InvalidInstance(
            "need two one-dimensional classes".into(),
        ));
    }
    let n = instance.size();
    if n < 2 || instance.degree() as usize != n - 1 {
        return Err(Error::Precondition(format!(
            "not ideal: size {n} with degree {} (need degree = size - 1)",
            instance.degree()
        )));
    }
    let report = instance.verify();
    if !report.holds {
        return Err(Error::Precondition(format!(
            "not an ideal solution: {:?}",
            report.first_failure
        )));
    }
    let [x, y] = [&instance.classes()[0], &instance.classes()[1]];
    let sum = x.power_sum(&[1])?;
    let k = n as u32 + 1;
    let (left, right) = (x.power_sum(&[k])?, y.power_sum(&[k])?);
    let sum_is_zero = sum.is_zero();
    let next_power_equal = left == right;
    Ok(LinearityReport {
        size: n,
        sum,
        sum_is_zero,
        left,
        right,
        next_power_equal,
        agree: sum_is_zero == next_power_equal,
    })
}

pub fn ideal_linearity_check_classes(x: &[i64], y: &[i64]) -> Result<LinearityReport> {
    let n = x.len();
    let instance = PteInstance::new(
        1,
        n.saturating_sub(1).max(1) as u32,
        vec![PteClass::from_integers(x)?, PteClass::from_integers(y)?],
    )?;
    ideal_linearity_check(&instance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::SignedBase;
    use crate::rational::q;

    fn ints(c: &PteClass) -> Vec<i64> {
        c.points().iter().map(|p| p[0].to_i64().unwrap()).collect()
    }

    #[test]
    fn finds_the_small_ideal_solution() {
        let out = brute_search(&SearchSpec::new(1, 2, 3, -3, 3), None).unwrap();
        assert_eq!(out.candidates, binomial(9, 3));
        assert!(out.instances.iter().any(|inst| {
            ints(&inst.classes()[0]) == [-3, 1, 2] && ints(&inst.classes()[1]) == [-2, -1, 3]
        }));
        for inst in &out.instances {
            assert!(inst.verify().holds);
            assert_eq!(&canonical_form(inst, false).unwrap(), inst);
        }
    }

    #[test]
    fn empty_and_rejected_searches() {
        assert!(brute_search(&SearchSpec::new(1, 1, 1, 0, 1), None).unwrap().instances.is_empty());
        assert!(matches!(
            brute_search(&SearchSpec::new(2, 3, 6, -20, 20), None),
            Err(Error::SearchTooLarge { .. })
        ));
        assert!(brute_search(&SearchSpec::new(1, 2, 3, 3, -3), None).is_err());
    }

    #[test]
    fn planar_smoke_counts() {
        let spec = SearchSpec::new(2, 2, 4, 0, 1);
        let out = brute_search(&spec, None).unwrap();
        // 4-multisets of the 4 points of {0,1}^2
        assert_eq!(out.candidates, binomial(7, 4));
        assert_eq!(out.candidates, 35);
        for inst in &out.instances {
            assert!(inst.verify().holds);
        }
        let mut distinct = spec.clone();
        distinct.distinct = true;
        let out = brute_search(&distinct, None).unwrap();
        assert_eq!(out.candidates, 1);
        assert!(out.instances.is_empty());
    }

    #[test]
    fn translation_merges_translates() {
        let mut spec = SearchSpec::new(1, 1, 2, 0, 4);
        spec.distinct = true;
        let plain = brute_search(&spec, None).unwrap();
        spec.translate = true;
        let merged = brute_search(&spec, None).unwrap();
        assert!(merged.total < plain.total);
        for inst in &merged.instances {
            assert_eq!(&canonical_form(inst, true).unwrap(), inst);
            let min = inst.classes().iter().flat_map(ints).min().unwrap();
            assert_eq!(min, 0);
        }
    }

    #[test]
    fn results_do_not_depend_on_threads() {
        let spec = SearchSpec::new(1, 2, 3, -4, 4);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let a = one.install(|| brute_search(&spec, None).unwrap());
        let b = brute_search(&spec, None).unwrap();
        assert_eq!(a, b);
        let limited = brute_search(&spec, Some(3)).unwrap();
        assert_eq!(limited.instances, b.instances[..3]);
        assert_eq!(limited.total, b.total);
    }

    #[test]
    fn three_classes() {
        let mut spec = SearchSpec::new(1, 1, 2, 1, 6);
        spec.class_count = 3;
        spec.distinct = true;
        let out = brute_search(&spec, None).unwrap();
        assert!(out.instances.iter().any(|inst| {
            inst.classes().iter().map(ints).collect::<Vec<_>>() == vec![vec![1, 6], vec![2, 5], vec![3, 4]]
        }));
        assert!(out.instances.iter().all(|i| i.classes().len() == 3 && i.verify().holds));
    }

    #[test]
    fn linearity_examples() {
        let r = ideal_linearity_check_classes(&[-3, 1, 2], &[-2, -1, 3]).unwrap();
        assert!(r.sum_is_zero && r.next_power_equal && r.agree);
        assert_eq!((r.left.clone(), r.right.clone()), (q(98), q(98)));
        let r = ideal_linearity_check_classes(&[1, 5, 6], &[2, 3, 7]).unwrap();
        assert!(!r.sum_is_zero && !r.next_power_equal && r.agree);
        assert_eq!((r.sum.clone(), r.left.clone(), r.right.clone()), (q(12), q(1922), q(2498)));
        let claimed = PteInstance::pair(
            1,
            vec![vec![q(1)], vec![q(2)], vec![q(-3)]],
            vec![vec![q(-4)], vec![q(0)], vec![q(4)]],
        )
        .unwrap();
        assert!(matches!(ideal_linearity_check(&claimed), Err(Error::Precondition(_))));
    }

    #[test]
    fn linearity_characterization_on_found_solutions() {
        for n in [3usize, 4] {
            let spec = SearchSpec::new(1, n as u32 - 1, n, -8, 8);
            let out = brute_search(&spec, None).unwrap();
            assert!(out.total > 0);
            let mut zero_sum = 0;
            for inst in &out.instances {
                let r = ideal_linearity_check(inst).unwrap();
                assert!(r.agree, "{inst:?}");
                zero_sum += r.sum_is_zero as usize;
            }
            assert!(zero_sum > 0);
        }
    }

    #[test]
    fn degree_four_condition_is_automatic_for_three_values() {
        let out = brute_search(&SearchSpec::new(1, 2, 3, -11, 11), None).unwrap();
        let (mut zero_sum, mut bases) = (0, 0);
        for inst in &out.instances {
            let [x, y] = [&inst.classes()[0], &inst.classes()[1]];
            if !x.power_sum(&[1]).unwrap().is_zero() {
                continue;
            }
            zero_sum += 1;
            assert_eq!(x.power_sum(&[4]).unwrap(), y.power_sum(&[4]).unwrap());
            let vals = |c: &PteClass| c.points().iter().map(|p| p[0].clone()).collect::<Vec<_>>();
            if let Ok(base) = SignedBase::new(vals(x), vals(y)) {
                base.check(2).unwrap();
                bases += 1;
            }
        }
        assert!(zero_sum > 0 && bases > 0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 3), 84);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(1000, 500), u128::MAX);
    }
}
