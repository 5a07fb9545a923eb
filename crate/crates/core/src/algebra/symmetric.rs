//! Power sums, elementary symmetric polynomials and the Girard-Newton
//! recurrences linking them.

use crate::error::{Error, Result};
use crate::rational::Rational;

/// `p_1..p_k` of `values`.
pub fn power_sums(values: &[Rational], k: usize) -> Result<Vec<Rational>> {
    if values.is_empty() {
        return Err(Error::Empty("power sums of an empty sequence"));
    }
    let mut powers: Vec<Rational> = values.to_vec();
    let mut out = Vec::with_capacity(k);
    for step in 0..k {
        if step > 0 {
            for (p, v) in powers.iter_mut().zip(values) {
                *p *= v;
            }
        }
        out.push(powers.iter().sum());
    }
    Ok(out)
}

/// `e_1..e_n` from `p_1..p_n` by the recurrence
/// `k e_k = Σ_{i=1}^k (-1)^{i-1} e_{k-i} p_i`.
pub fn elementary_from_power_sums(p: &[Rational]) -> Vec<Rational> {
    let n = p.len();
    let mut e = Vec::with_capacity(n + 1);
    e.push(Rational::one());
    for k in 1..=n {
        let mut acc = Rational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i - 1];
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        e.push(acc / Rational::from(k));
    }
    e.remove(0);
    e
}

/// `p_1..p_k` from `e_1..e_n`, for any `k` (with `e_j = 0` past `n`).
pub fn power_sums_from_elementary(e: &[Rational], k: usize) -> Vec<Rational> {
    let n = e.len();
    let mut p: Vec<Rational> = Vec::with_capacity(k);
    for j in 1..=k {
        // p_j = Σ_{i=1}^{min(j-1,n)} (-1)^{i-1} e_i p_{j-i} + [j ≤ n] (-1)^{j-1} j e_j
        let mut acc = Rational::zero();
        for i in 1..=(j - 1).min(n) {
            let term = &e[i - 1] * &p[j - i - 1];
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        if j <= n {
            let term = Rational::from(j) * &e[j - 1];
            if j % 2 == 1 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        p.push(acc);
    }
    p
}

/// `e_1..e_n` of `values`, read off the expansion of Π (z + x_i).
pub fn elementary_symmetric(values: &[Rational]) -> Vec<Rational> {
    // coeffs[j] = e_j of the values processed so far
    let mut coeffs = vec![Rational::one()];
    for x in values {
        coeffs.push(Rational::zero());
        for j in (1..coeffs.len()).rev() {
            let add = x * &coeffs[j - 1];
            coeffs[j] += &add;
        }
    }
    coeffs.remove(0);
    coeffs
}

/// Left-hand side of the k-th Girard-Newton identity; zero iff it holds.
///
/// For `k ≤ n`: `p_k - e_1 p_{k-1} + ... + (-1)^{k-1} e_{k-1} p_1 + (-1)^k k e_k`.
/// For `k > n`: `p_k - e_1 p_{k-1} + ... + (-1)^n e_n p_{k-n}`.
/// `p` must hold at least `k` entries.
pub fn girard_newton_residual(p: &[Rational], e: &[Rational], k: usize) -> Rational {
    assert!(k >= 1 && p.len() >= k, "need p_1..p_k");
    let n = e.len();
    let mut acc = p[k - 1].clone();
    for i in 1..=(k - 1).min(n) {
        let term = &e[i - 1] * &p[k - i - 1];
        if i % 2 == 1 {
            acc -= &term;
        } else {
            acc += &term;
        }
    }
    if k <= n {
        let term = Rational::from(k) * &e[k - 1];
        if k % 2 == 1 {
            acc -= &term;
        } else {
            acc += &term;
        }
    }
    acc
}

/// Values with their first `K` power sums and all elementary symmetric
/// polynomials, each computed directly (not through the recurrences).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricProfile {
    pub values: Vec<Rational>,
    pub power_sums: Vec<Rational>,
    pub elementary_symmetric: Vec<Rational>,
}

impl SymmetricProfile {
    pub fn new(values: Vec<Rational>, k: usize) -> Result<Self> {
        let power_sums = power_sums(&values, k)?;
        let elementary_symmetric = elementary_symmetric(&values);
        Ok(SymmetricProfile {
            values,
            power_sums,
            elementary_symmetric,
        })
    }

    /// Checks every Girard-Newton identity for which the stored power sums
    /// suffice.
    pub fn satisfies_girard_newton(&self) -> bool {
        (1..=self.power_sums.len()).all(|k| {
            girard_newton_residual(&self.power_sums, &self.elementary_symmetric, k).is_zero()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q2};
    use proptest::prelude::*;

    fn qs(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn rationals(max_len: usize) -> impl Strategy<Value = Vec<Rational>> {
        proptest::collection::vec((-20i64..21, 1i64..8), 1..max_len)
            .prop_map(|v| v.into_iter().map(|(n, d)| q2(n, d)).collect())
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sums(&qs(&[1, 2, 3]), 2).unwrap(), qs(&[6, 14]));
        let c = q2(-2, 3);
        assert_eq!(
            power_sums(std::slice::from_ref(&c), 3).unwrap(),
            vec![c.clone(), c.pow(2), c.pow(3)]
        );
        let x = q2(5, 4);
        assert_eq!(
            power_sums(&[x.clone(), -&x], 2).unwrap(),
            vec![q(0), q(2) * x.pow(2)]
        );
        assert!(power_sums(&[], 2).is_err());
    }

    #[test]
    fn newton_examples() {
        assert_eq!(elementary_from_power_sums(&qs(&[6, 14, 36])), qs(&[6, 11, 6]));
        assert_eq!(elementary_from_power_sums(&qs(&[0])), qs(&[0]));
        let x = q(3);
        assert_eq!(
            elementary_from_power_sums(&[q(0), q(2) * x.pow(2)]),
            vec![q(0), -x.pow(2)]
        );
        assert_eq!(elementary_symmetric(&qs(&[1, 2, 3])), qs(&[6, 11, 6]));
    }

    #[test]
    fn inverse_direction_beyond_n() {
        // values 1, 2, 3: p_4 = 98, p_5 = 276
        let p = power_sums_from_elementary(&qs(&[6, 11, 6]), 5);
        assert_eq!(p, qs(&[6, 14, 36, 98, 276]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn girard_newton_holds_in_both_regimes(values in rationals(7), extra in 0usize..4) {
            let n = values.len();
            let profile = SymmetricProfile::new(values, n + extra).unwrap();
            prop_assert!(profile.satisfies_girard_newton());
        }

        #[test]
        fn newton_round_trip(p in rationals(7)) {
            let e = elementary_from_power_sums(&p);
            prop_assert_eq!(power_sums_from_elementary(&e, p.len()), p);
        }

        #[test]
        fn newton_matches_expansion(values in rationals(7)) {
            let p = power_sums(&values, values.len()).unwrap();
            prop_assert_eq!(elementary_from_power_sums(&p), elementary_symmetric(&values));
        }
    }
}
