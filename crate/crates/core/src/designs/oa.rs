//! Orthogonal arrays, Type-I orthogonal arrays, and the binary arrays built
//! from subspaces of the two-element field.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Row = Vec<Rational>;

/// Result of a strength check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Balance {
    Balanced {
        lambda: usize,
    },
    /// `tuple` occurs `count` times in `columns`, where a balanced array would
    /// have it `expected` times.
    Unbalanced {
        columns: Vec<usize>,
        tuple: Vec<Rational>,
        count: usize,
        expected: usize,
    },
}

impl Balance {
    pub fn lambda(&self) -> Option<usize> {
        match self {
            Balance::Balanced { lambda } => Some(*lambda),
            Balance::Unbalanced { .. } => None,
        }
    }

    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced { .. })
    }
}

/// An ℓ×r array over s symbols with strength t and index λ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalArray {
    rows: Vec<Row>,
    levels: usize,
    strength: usize,
    index: usize,
}

/// Same shape as [`OrthogonalArray`], balanced over tuples of distinct symbols.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeIOrthogonalArray {
    rows: Vec<Row>,
    levels: usize,
    strength: usize,
    index: usize,
}

fn check_shape(rows: &[Row]) -> Result<usize> {
    let Some(first) = rows.first() else {
        return Err(Error::Empty("array with no rows"));
    };
    let r = first.len();
    if r == 0 {
        return Err(Error::MalformedDesign("rows have no columns".into()));
    }
    if let Some(row) = rows.iter().find(|row| row.len() != r) {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: row.len(),
        });
    }
    Ok(r)
}

/// Distinct symbols of the array in increasing order.
pub fn symbols(rows: &[Row]) -> Vec<Rational> {
    rows.iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// t-subsets of 0..n in lexicographic order.
pub(crate) fn combinations(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t);
    fn rec(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (t - cur.len()) {
            cur.push(i);
            rec(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    if t <= n {
        rec(0, n, t, &mut cur, &mut out);
    }
    out
}

/// All s^t tuples over the symbol indices, lexicographically.
fn all_tuples(s: usize, t: usize, distinct: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t);
    fn rec(s: usize, t: usize, distinct: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for x in 0..s {
            if distinct && cur.contains(&x) {
                continue;
            }
            cur.push(x);
            rec(s, t, distinct, cur, out);
            cur.pop();
        }
    }
    rec(s, t, distinct, &mut cur, &mut out);
    out
}

/// Shared strength check. With `distinct`, only tuples of distinct symbols
/// count, and any row repeating a symbol inside a column selection is a
/// violation.
fn balance(rows: &[Row], t: usize, distinct: bool) -> Balance {
    let syms = symbols(rows);
    let position: HashMap<&Rational, usize> = syms.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let indexed: Vec<Vec<usize>> = rows
        .iter()
        .map(|row| row.iter().map(|x| position[x]).collect())
        .collect();
    let r = indexed[0].len();
    let tuples = all_tuples(syms.len(), t, distinct);
    let mut lambda = None;
    for cols in combinations(r, t) {
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        for row in &indexed {
            let key: Vec<usize> = cols.iter().map(|&c| row[c]).collect();
            *counts.entry(key).or_default() += 1;
        }
        let witness = |tuple: &[usize], count: usize, expected: usize| Balance::Unbalanced {
            columns: cols.clone(),
            tuple: tuple.iter().map(|&i| syms[i].clone()).collect(),
            count,
            expected,
        };
        let expected = rows.len() / tuples.len().max(1);
        if let Some(tuple) = tuples.iter().find(|tp| !counts.contains_key(*tp)) {
            return witness(tuple, 0, expected);
        }
        let first = counts[&tuples[0]];
        if let Some(tuple) = tuples.iter().find(|tp| counts[*tp] != first) {
            return witness(tuple, counts[tuple], first);
        }
        if distinct {
            let mut repeated: Vec<&Vec<usize>> = counts
                .keys()
                .filter(|k| k.iter().collect::<BTreeSet<_>>().len() < k.len())
                .collect();
            repeated.sort();
            if let Some(tuple) = repeated.first() {
                return witness(tuple, counts[*tuple], 0);
            }
        }
        lambda = Some(first);
    }
    Balance::Balanced {
        lambda: lambda.unwrap_or(rows.len()),
    }
}

/// Strength-t check: every ordered t-tuple of symbols must occur equally
/// often in every choice of t columns.
pub fn verify_oa(rows: &[Row], t: usize) -> Result<Balance> {
    let r = check_shape(rows)?;
    if t == 0 || t > r {
        return Err(Error::InvalidParameter(format!(
            "strength {t} must lie in 1..={r}"
        )));
    }
    Ok(balance(rows, t, false))
}

/// Type-I strength check over ordered tuples of distinct symbols.
pub fn verify_type1_oa(rows: &[Row], t: usize) -> Result<Balance> {
    let r = check_shape(rows)?;
    let s = symbols(rows).len();
    if t == 0 || t > r {
        return Err(Error::InvalidParameter(format!(
            "strength {t} must lie in 1..={r}"
        )));
    }
    if t > s {
        return Err(Error::InvalidParameter(format!(
            "strength {t} exceeds the {s} available symbols"
        )));
    }
    Ok(balance(rows, t, true))
}

/// λ_{t'} = λ s^{t - t'}: an array of strength t is also of strength t'.
pub fn oa_regular_index(lambda: usize, s: usize, t: usize, t_prime: usize) -> Result<usize> {
    if t_prime == 0 || t_prime > t {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= t' <= t, got t' = {t_prime}, t = {t}"
        )));
    }
    Ok(lambda * s.pow((t - t_prime) as u32))
}

impl OrthogonalArray {
    /// Checks the rows at strength `t` and records the index.
    pub fn new(rows: Vec<Row>, t: usize) -> Result<Self> {
        match verify_oa(&rows, t)? {
            Balance::Balanced { lambda } => Ok(OrthogonalArray {
                levels: symbols(&rows).len(),
                rows,
                strength: t,
                index: lambda,
            }),
            unbalanced => Err(Error::VerificationFailed(format!(
                "not an orthogonal array of strength {t}: {unbalanced:?}"
            ))),
        }
    }

    pub fn from_integer_rows(rows: &[&[i64]], t: usize) -> Result<Self> {
        Self::new(integer_rows(rows), t)
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn columns(&self) -> usize {
        self.rows[0].len()
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn strength(&self) -> usize {
        self.strength
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn symbols(&self) -> Vec<Rational> {
        symbols(&self.rows)
    }
}

impl TypeIOrthogonalArray {
    pub fn new(rows: Vec<Row>, t: usize) -> Result<Self> {
        match verify_type1_oa(&rows, t)? {
            Balance::Balanced { lambda } => Ok(TypeIOrthogonalArray {
                levels: symbols(&rows).len(),
                rows,
                strength: t,
                index: lambda,
            }),
            unbalanced => Err(Error::VerificationFailed(format!(
                "not a Type-I orthogonal array of strength {t}: {unbalanced:?}"
            ))),
        }
    }

    pub fn from_integer_rows(rows: &[&[i64]], t: usize) -> Result<Self> {
        Self::new(integer_rows(rows), t)
    }

    /// All s! permutations of 0..s, lexicographically: OA_I(s!, s, s, s)_1.
    pub fn permutations(s: usize) -> Self {
        let rows = all_tuples(s, s, true)
            .into_iter()
            .map(|p| p.into_iter().map(Rational::from).collect())
            .collect();
        Self::new(rows, s).expect("permutation array is balanced")
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn columns(&self) -> usize {
        self.rows[0].len()
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn strength(&self) -> usize {
        self.strength
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn symbols(&self) -> Vec<Rational> {
        symbols(&self.rows)
    }
}

pub(crate) fn integer_rows(rows: &[&[i64]]) -> Vec<Row> {
    rows.iter()
        .map(|row| row.iter().map(|&x| Rational::from(x)).collect())
        .collect()
}

/// All s^r tuples over 0..s in lexicographic order: OA(s^r, r, s, r)_1.
pub fn trivial_oa(s: usize, r: usize) -> Result<OrthogonalArray> {
    if s < 2 || r == 0 {
        return Err(Error::InvalidParameter(format!(
            "trivial array needs s >= 2 and r >= 1, got s = {s}, r = {r}"
        )));
    }
    let rows = all_tuples(s, r, false)
        .into_iter()
        .map(|p| p.into_iter().map(Rational::from).collect())
        .collect();
    OrthogonalArray::new(rows, r)
}

/// Even- and odd-weight halves of {0,1}^r, each OA(2^{r-1}, r, 2, r-1)_1.
pub fn parity_split(r: usize) -> Result<(OrthogonalArray, OrthogonalArray)> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!(
            "parity split needs r >= 2, got {r}"
        )));
    }
    let (even, odd): (Vec<Row>, Vec<Row>) = trivial_oa(2, r)?
        .rows
        .into_iter()
        .partition(|row| row.iter().filter(|x| !x.is_zero()).count() % 2 == 0);
    Ok((
        OrthogonalArray::new(even, r - 1)?,
        OrthogonalArray::new(odd, r - 1)?,
    ))
}

/// Largest strength at which the rows are balanced (0 if none).
pub fn max_strength(rows: &[Row]) -> Result<usize> {
    let r = check_shape(rows)?;
    for t in (1..=r).rev() {
        if verify_oa(rows, t)?.is_balanced() {
            return Ok(t);
        }
    }
    Ok(0)
}

/// The row space of binary generators together with all of its cosets,
/// each as an orthogonal array. The members partition {0,1}^r, and every
/// coset has the strength of the row space.
pub fn linear_oa_cosets(generators: &[Vec<u8>]) -> Result<Vec<OrthogonalArray>> {
    let Some(first) = generators.first() else {
        return Err(Error::Empty("no generators"));
    };
    let r = first.len();
    if r == 0 || r > 24 {
        return Err(Error::InvalidParameter(format!(
            "generator length {r} must lie in 1..=24"
        )));
    }
    let mut gens = Vec::with_capacity(generators.len());
    for g in generators {
        if g.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: g.len(),
            });
        }
        if g.iter().any(|&x| x > 1) {
            return Err(Error::InvalidParameter("generator entries must be 0 or 1".into()));
        }
        // bit r-1-j holds coordinate j, so integer order is lexicographic order
        gens.push(g.iter().fold(0u32, |acc, &x| (acc << 1) | x as u32));
    }
    // Independence over GF(2) by elimination on bit masks.
    let mut basis: Vec<u32> = Vec::new();
    for &g in &gens {
        let mut v = g;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v == 0 {
            return Err(Error::InvalidParameter(
                "generators are linearly dependent over the two-element field".into(),
            ));
        }
        basis.push(v);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
    let mut space = vec![0u32];
    for &g in &gens {
        let shifted: Vec<u32> = space.iter().map(|&v| v ^ g).collect();
        space.extend(shifted);
    }
    let to_row = |v: u32| -> Row {
        (0..r)
            .map(|j| Rational::from(((v >> (r - 1 - j)) & 1) as i64))
            .collect()
    };
    let mut covered = vec![false; 1 << r];
    let mut cosets = Vec::new();
    for v in 0..(1u32 << r) {
        if covered[v as usize] {
            continue;
        }
        let mut members: Vec<u32> = space.iter().map(|&c| c ^ v).collect();
        members.sort_unstable();
        for &m in &members {
            covered[m as usize] = true;
        }
        cosets.push(members.into_iter().map(to_row).collect::<Vec<Row>>());
    }
    let t = max_strength(&cosets[0])?;
    if t == 0 {
        return Err(Error::Degenerate(
            "row space has a constant column, so it has no positive strength".into(),
        ));
    }
    cosets
        .into_iter()
        .map(|rows| OrthogonalArray::new(rows, t))
        .collect()
}

/// True iff no row occurs in both arrays.
pub fn rows_disjoint(a: &[Row], b: &[Row]) -> bool {
    let set: BTreeSet<&Row> = a.iter().collect();
    !b.iter().any(|row| set.contains(row))
}

pub fn oas_disjoint(a: &OrthogonalArray, b: &OrthogonalArray) -> bool {
    rows_disjoint(&a.rows, &b.rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn halving_rows() -> Vec<Row> {
        integer_rows(&[&[0, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
    }

    #[test]
    fn verify_oa_examples() {
        let rows = halving_rows();
        assert_eq!(verify_oa(&rows, 2).unwrap(), Balance::Balanced { lambda: 1 });
        assert_eq!(verify_oa(&rows, 1).unwrap(), Balance::Balanced { lambda: 2 });
        match verify_oa(&rows, 3).unwrap() {
            Balance::Unbalanced { columns, tuple, count, .. } => {
                assert_eq!(columns, vec![0, 1, 2]);
                assert_eq!(tuple, vec![q(0), q(0), q(1)]);
                assert_eq!(count, 0);
            }
            b => panic!("unexpected {b:?}"),
        }
        assert!(verify_oa(&rows, 4).is_err());
    }

    #[test]
    fn type1_examples() {
        let perms = TypeIOrthogonalArray::permutations(3);
        assert_eq!(perms.row_count(), 6);
        assert_eq!(perms.index(), 1);
        let cyc = integer_rows(&[&[0, 1], &[1, 2], &[2, 0]]);
        assert_eq!(verify_type1_oa(&cyc, 1).unwrap(), Balance::Balanced { lambda: 1 });
        match verify_type1_oa(&cyc, 2).unwrap() {
            Balance::Unbalanced { tuple, count, .. } => {
                // (0,2) is the lexicographically first absent pair; (1,0) is
                // absent as well.
                assert_eq!(tuple, vec![q(0), q(2)]);
                assert_eq!(count, 0);
            }
            b => panic!("unexpected {b:?}"),
        }
        let two = integer_rows(&[&[0, 1], &[1, 0]]);
        assert!(verify_type1_oa(&two, 3).is_err());
        // A repeated symbol inside a selection is never allowed.
        let rep = integer_rows(&[&[0, 1], &[1, 0], &[0, 0], &[1, 1]]);
        assert!(!verify_type1_oa(&rep, 2).unwrap().is_balanced());
    }

    #[test]
    fn regular_index_examples() {
        assert_eq!(oa_regular_index(1, 2, 2, 1).unwrap(), 2);
        assert_eq!(oa_regular_index(5, 3, 2, 2).unwrap(), 5);
        assert_eq!(oa_regular_index(1, 2, 4, 2).unwrap(), 4);
        assert!(oa_regular_index(1, 2, 2, 0).is_err());
    }

    #[test]
    fn trivial_examples() {
        let t = trivial_oa(2, 2).unwrap();
        assert_eq!(t.rows(), &integer_rows(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]])[..]);
        let t = trivial_oa(3, 2).unwrap();
        assert_eq!(t.row_count(), 9);
        assert_eq!(verify_oa(t.rows(), 2).unwrap().lambda(), Some(1));
        assert_eq!(trivial_oa(2, 3).unwrap().row_count(), 8);
    }

    #[test]
    fn parity_examples() {
        let (even, odd) = parity_split(3).unwrap();
        assert_eq!(even.rows(), &halving_rows()[..]);
        assert_eq!(
            odd.rows(),
            &integer_rows(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0], &[1, 1, 1]])[..]
        );
        let (even, odd) = parity_split(5).unwrap();
        assert_eq!((even.row_count(), even.strength(), even.index()), (16, 4, 1));
        assert_eq!((odd.row_count(), odd.strength(), odd.index()), (16, 4, 1));
        assert!(oas_disjoint(&even, &odd));
        let (even, odd) = parity_split(2).unwrap();
        assert_eq!(even.rows(), &integer_rows(&[&[0, 0], &[1, 1]])[..]);
        assert_eq!(odd.strength(), 1);
    }

    #[test]
    fn parity_halves_partition_the_cube() {
        for r in 2..=7 {
            let (even, odd) = parity_split(r).unwrap();
            assert_eq!(even.row_count(), 1 << (r - 1));
            let mut all: Vec<Row> = even.rows().to_vec();
            all.extend(odd.rows().iter().cloned());
            all.sort();
            assert_eq!(all, trivial_oa(2, r).unwrap().rows());
            // every lower strength has the predicted index
            for tp in 1..r {
                assert_eq!(
                    verify_oa(even.rows(), tp).unwrap().lambda(),
                    Some(oa_regular_index(1, 2, r - 1, tp).unwrap())
                );
            }
        }
    }

    #[test]
    fn coset_examples() {
        let fam = linear_oa_cosets(&[vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(fam.len(), 2);
        let (even, odd) = parity_split(3).unwrap();
        assert_eq!(fam[0].rows(), even.rows());
        assert_eq!(fam[1].rows(), odd.rows());
        assert_eq!(fam[0].strength(), 2);

        let whole = linear_oa_cosets(&[vec![1]]).unwrap();
        assert_eq!(whole.len(), 1);
        assert_eq!(whole[0].row_count(), 2);

        let whole = linear_oa_cosets(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(whole.len(), 1);
        assert_eq!(whole[0].strength(), 3);

        assert!(linear_oa_cosets(&[vec![1, 1], vec![1, 1]]).is_err());
        assert!(linear_oa_cosets(&[vec![1, 0]]).is_err());
    }

    #[test]
    fn cosets_partition_the_cube() {
        let fam = linear_oa_cosets(&[vec![1, 1, 1, 1, 0], vec![0, 0, 1, 1, 1]]).unwrap();
        assert_eq!(fam.len(), 8);
        let mut all: Vec<Row> = fam.iter().flat_map(|a| a.rows().to_vec()).collect();
        all.sort();
        assert_eq!(all, trivial_oa(2, 5).unwrap().rows());
        for (i, a) in fam.iter().enumerate() {
            assert_eq!(a.strength(), fam[0].strength());
            for b in &fam[i + 1..] {
                assert!(oas_disjoint(a, b));
            }
        }
        let fam = &linear_oa_cosets(&[vec![0, 1, 1], vec![1, 0, 1]]).unwrap()[0];
        assert!(!oas_disjoint(fam, fam));
    }
}
