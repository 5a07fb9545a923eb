//! Hadamard matrices and the Paley construction for primes p ≡ 3 (mod 4).

use std::collections::BTreeSet;

use serde::Serialize;

use super::gdd::{designs_disjoint, verify_gdd, GroupDivisibleDesign};
use crate::error::{Error, Result};

/// ±1 matrix with H Hᵀ = h I.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HadamardMatrix {
    order: usize,
    rows: Vec<Vec<i8>>,
}

/// Checks entries are ±1 and H Hᵀ = h I exactly.
pub fn is_hadamard(rows: &[Vec<i8>]) -> bool {
    let h = rows.len();
    if h == 0 || rows.iter().any(|r| r.len() != h || r.iter().any(|&x| x != 1 && x != -1)) {
        return false;
    }
    (0..h).all(|i| {
        (i..h).all(|j| {
            let dot: i64 = rows[i].iter().zip(&rows[j]).map(|(&a, &b)| (a * b) as i64).sum();
            dot == if i == j { h as i64 } else { 0 }
        })
    })
}

impl HadamardMatrix {
    pub fn new(rows: Vec<Vec<i8>>) -> Result<Self> {
        if !is_hadamard(&rows) {
            return Err(Error::MalformedDesign("not a Hadamard matrix".into()));
        }
        Ok(HadamardMatrix {
            order: rows.len(),
            rows,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Nonzero squares modulo p, sorted.
pub fn quadratic_residues(p: usize) -> Vec<usize> {
    (1..p)
        .map(|x| x * x % p)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn legendre(x: usize, p: usize, residues: &BTreeSet<usize>) -> i8 {
    let x = x % p;
    if x == 0 {
        0
    } else if residues.contains(&x) {
        1
    } else {
        -1
    }
}

/// Output of [`paley`]: the normalized Hadamard matrix of order p+1 and the
/// two block families {QR + a} and {-QR + a}, a ∈ 𝔽_p, as 2-designs on the
/// points 1..=p (residue x is point x+1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Paley {
    pub hadamard: HadamardMatrix,
    pub residues: GroupDivisibleDesign,
    pub non_residues: GroupDivisibleDesign,
}

pub fn paley(p: usize) -> Result<Paley> {
    if !is_prime(p as u64) || p % 4 != 3 || p < 7 {
        return Err(Error::Precondition(format!(
            "the Paley construction needs a prime p ≡ 3 (mod 4) with p >= 7, got {p}"
        )));
    }
    let qr = quadratic_residues(p);
    let qr_set: BTreeSet<usize> = qr.iter().copied().collect();
    // Q_{ij} = χ(j - i); bordered as [[1, 1ᵀ], [1, Q - I]].
    let mut rows = vec![vec![1i8; p + 1]];
    for i in 0..p {
        let mut row = vec![1i8];
        for j in 0..p {
            row.push(if i == j {
                -1
            } else {
                legendre(j + p - i, p, &qr_set)
            });
        }
        rows.push(row);
    }
    let hadamard = HadamardMatrix::new(rows)?;
    let develop = |base: &[usize]| -> Vec<Vec<usize>> {
        (0..p)
            .map(|a| base.iter().map(|&x| (x + a) % p + 1).collect())
            .collect()
    };
    let negated: Vec<usize> = qr.iter().map(|&x| (p - x) % p).collect();
    let lambda = (p - 3) / 4;
    let residues = GroupDivisibleDesign::t_design(p, develop(&qr), 2, lambda)?;
    let non_residues = GroupDivisibleDesign::t_design(p, develop(&negated), 2, lambda)?;
    for d in [&residues, &non_residues] {
        let check = verify_gdd(d);
        if !check.is_valid() {
            return Err(Error::VerificationFailed(format!(
                "Paley design for p = {p} is not a 2-design: {check:?}"
            )));
        }
    }
    if !designs_disjoint(&residues, &non_residues) {
        return Err(Error::VerificationFailed(format!(
            "Paley designs for p = {p} share a block"
        )));
    }
    Ok(Paley {
        hadamard,
        residues,
        non_residues,
    })
}
