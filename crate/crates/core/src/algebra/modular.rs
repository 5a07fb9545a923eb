//! Certified exact rank through arithmetic modulo large primes.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::matrix::RankProfile;

const PRIME_COUNT: usize = 4;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The largest few primes below 2^62.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n = (1u64 << 62) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// Reduced row echelon form mod p; returns the pivot columns and the nonzero
/// rows of the RREF.
fn rref_mod(mut a: Vec<Vec<u64>>, cols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let rows = a.len();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, i);
        let inv = pow_mod(a[r][c], p - 2, p);
        for v in a[r][c..].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + p - mul_mod(f, pivot_row[j], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (pivots, a)
}

/// Recovers n/d with |n|, d ≤ sqrt(p/2) from its residue, if one exists.
fn rational_reconstruct(u: u64, p: u64) -> Option<(i128, i128)> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, u as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound || r1.gcd(&t1) != 1 {
        return None;
    }
    Some(if t1 < 0 { (-r1, -t1) } else { (r1, t1) })
}

fn try_prime(a: &[Vec<BigInt>], cols: usize, p: u64) -> Option<RankProfile> {
    let reduced: Vec<Vec<u64>> = a
        .iter()
        .map(|row| row.iter().map(|x| reduce(x, p)).collect())
        .collect();
    let (pivots, rref) = rref_mod(reduced, cols, p);
    // Reduction mod p can only lose rank, so a lower bound is already in hand.
    // Each free column must be shown to be a rational combination of earlier
    // pivot columns; the RREF proposes the coefficients.
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for f in (0..cols).filter(|&f| !is_pivot[f]) {
        // Kernel vector: e_f - Σ_i R[i][f] e_{pivot_i}.
        let mut coeffs: Vec<(usize, BigInt, BigInt)> = Vec::new();
        for (i, &c) in pivots.iter().enumerate() {
            let v = rref[i][f];
            if v == 0 {
                continue;
            }
            let (n, d) = rational_reconstruct((p - v) % p, p)?;
            coeffs.push((c, BigInt::from(n), BigInt::from(d)));
        }
        let lcm = coeffs
            .iter()
            .fold(BigInt::from(1), |acc, (_, _, d)| acc.lcm(d));
        let mut w: Vec<(usize, BigInt)> = coeffs
            .into_iter()
            .map(|(c, n, d)| (c, n * (&lcm / d)))
            .collect();
        w.push((f, lcm));
        for row in a {
            let mut s = BigInt::zero();
            for (j, wj) in &w {
                if !row[*j].is_zero() {
                    s += &row[*j] * wj;
                }
            }
            if !s.is_zero() {
                return None;
            }
        }
    }
    Some(RankProfile {
        rank: pivots.len(),
        pivot_columns: pivots,
    })
}

pub(crate) fn certified_rank_profile(a: &[Vec<BigInt>], cols: usize) -> Option<RankProfile> {
    // A pivot lost mod p shows up as a free column whose proposed dependence
    // on earlier columns fails the exact check, so a certified pivot set is
    // the lexicographically first basis over the rationals.
    primes().iter().find_map(|&p| try_prime(a, cols, p))
}
