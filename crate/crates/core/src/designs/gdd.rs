//! Group divisible designs and block t-designs on the points 1..=r.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use serde::Serialize;

use super::oa::combinations;
use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Block = Vec<usize>;

/// GDD_λ(t, k, r) of type v^g. With v = 1 this is a t-(r, k, λ) design.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupDivisibleDesign {
    point_count: usize,
    groups: Vec<Block>,
    blocks: Vec<Block>,
    strength: usize,
    index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum GddCheck {
    Valid,
    BlockMeetsGroupTwice { block: Block, group: Block },
    Unbalanced {
        subset: Block,
        count: usize,
        expected: usize,
    },
}

impl GddCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, GddCheck::Valid)
    }
}

fn canonical_block(block: &[usize], r: usize, what: &str) -> Result<Block> {
    let set: BTreeSet<usize> = block.iter().copied().collect();
    if set.len() != block.len() {
        return Err(Error::MalformedDesign(format!("{what} {block:?} repeats a point")));
    }
    if let Some(&x) = set.iter().find(|&&x| x == 0 || x > r) {
        return Err(Error::MalformedDesign(format!(
            "{what} {block:?} contains {x}, outside 1..={r}"
        )));
    }
    Ok(set.into_iter().collect())
}

impl GroupDivisibleDesign {
    /// Checks the structure (groups partition 1..=r into equal parts, blocks
    /// are k-subsets, t ≤ k ≤ g) but not balance; see [`verify_gdd`].
    pub fn new(
        point_count: usize,
        groups: Vec<Block>,
        blocks: Vec<Block>,
        strength: usize,
        index: usize,
    ) -> Result<Self> {
        if point_count == 0 {
            return Err(Error::MalformedDesign("no points".into()));
        }
        let mut groups = groups
            .iter()
            .map(|g| canonical_block(g, point_count, "group"))
            .collect::<Result<Vec<_>>>()?;
        groups.sort();
        let covered: usize = groups.iter().map(Vec::len).sum();
        let union: BTreeSet<usize> = groups.iter().flatten().copied().collect();
        if covered != point_count || union.len() != point_count {
            return Err(Error::MalformedDesign(
                "groups do not partition the point set".into(),
            ));
        }
        let v = groups[0].len();
        if groups.iter().any(|g| g.len() != v) {
            return Err(Error::MalformedDesign("groups have unequal sizes".into()));
        }
        let mut blocks = blocks
            .iter()
            .map(|b| canonical_block(b, point_count, "block"))
            .collect::<Result<Vec<_>>>()?;
        blocks.sort();
        let Some(k) = blocks.first().map(Vec::len) else {
            return Err(Error::MalformedDesign("no blocks".into()));
        };
        if blocks.iter().any(|b| b.len() != k) {
            return Err(Error::MalformedDesign("blocks have unequal sizes".into()));
        }
        let g = groups.len();
        if strength == 0 || strength > k || k > g {
            return Err(Error::MalformedDesign(format!(
                "need 1 <= t <= k <= g, got t = {strength}, k = {k}, g = {g}"
            )));
        }
        Ok(GroupDivisibleDesign {
            point_count,
            groups,
            blocks,
            strength,
            index,
        })
    }

    /// A t-(r, k, λ) design: singleton groups.
    pub fn t_design(point_count: usize, blocks: Vec<Block>, strength: usize, index: usize) -> Result<Self> {
        let groups = (1..=point_count).map(|i| vec![i]).collect();
        Self::new(point_count, groups, blocks, strength, index)
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn groups(&self) -> &[Block] {
        &self.groups
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn strength(&self) -> usize {
        self.strength
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    pub fn group_size(&self) -> usize {
        self.groups[0].len()
    }

    fn group_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.point_count + 1];
        for (gi, g) in self.groups.iter().enumerate() {
            for &x in g {
                of[x] = gi;
            }
        }
        of
    }

    /// At most one point from each group.
    pub fn is_transversal(&self, subset: &[usize]) -> bool {
        let of = self.group_of();
        subset.iter().map(|&x| of[x]).collect::<BTreeSet<_>>().len() == subset.len()
    }

    pub fn blocks_through(&self, subset: &[usize]) -> usize {
        self.blocks
            .iter()
            .filter(|b| subset.iter().all(|x| b.binary_search(x).is_ok()))
            .count()
    }

    /// Characteristic vectors of the blocks.
    pub fn char_vectors(&self) -> Vec<Vec<Rational>> {
        self.blocks
            .iter()
            .map(|b| char_vector(b, self.point_count).expect("blocks validated"))
            .collect()
    }

    /// Checks, for every s-subset of points, that the number of blocks through
    /// it is λ_s when it is transversal and 0 otherwise.
    pub fn lambda_s_holds(&self, s: usize) -> Result<bool> {
        let expected = gdd_lambda_s(
            self.index,
            self.strength,
            self.block_size(),
            self.group_count(),
            self.group_size(),
            s,
        )?;
        let mut counts: HashMap<Block, usize> = HashMap::new();
        for b in &self.blocks {
            for idx in combinations(b.len(), s) {
                *counts.entry(idx.iter().map(|&i| b[i]).collect()).or_default() += 1;
            }
        }
        let of = self.group_of();
        Ok(combinations(self.point_count, s).into_iter().all(|idx| {
            let subset: Block = idx.iter().map(|&i| i + 1).collect();
            let transversal =
                subset.iter().map(|&x| of[x]).collect::<BTreeSet<_>>().len() == s;
            let count = Rational::from(counts.get(&subset).copied().unwrap_or(0));
            if transversal {
                count == expected
            } else {
                count.is_zero()
            }
        }))
    }
}

/// Checks that blocks meet each group at most once and that every
/// transversal t-subset lies in exactly λ blocks (exhaustively).
pub fn verify_gdd(d: &GroupDivisibleDesign) -> GddCheck {
    let of = d.group_of();
    for b in &d.blocks {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for &x in b {
            if seen.insert(of[x], x).is_some() {
                return GddCheck::BlockMeetsGroupTwice {
                    block: b.clone(),
                    group: d.groups[of[x]].clone(),
                };
            }
        }
    }
    let t = d.strength;
    let mut counts: HashMap<Block, usize> = HashMap::new();
    for b in &d.blocks {
        for idx in combinations(b.len(), t) {
            *counts.entry(idx.iter().map(|&i| b[i]).collect()).or_default() += 1;
        }
    }
    for idx in combinations(d.point_count, t) {
        let subset: Block = idx.iter().map(|&i| i + 1).collect();
        if subset.iter().map(|&x| of[x]).collect::<BTreeSet<_>>().len() < t {
            continue;
        }
        let count = counts.get(&subset).copied().unwrap_or(0);
        if count != d.index {
            return GddCheck::Unbalanced {
                subset,
                count,
                expected: d.index,
            };
        }
    }
    GddCheck::Valid
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// λ_s = λ C(g-s, t-s) v^{t-s} / C(k-s, t-s): the number of blocks through
/// a transversal s-subset.
pub fn gdd_lambda_s(lambda: usize, t: usize, k: usize, g: usize, v: usize, s: usize) -> Result<Rational> {
    if s == 0 || s > t || t > k || k > g {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= s <= t <= k <= g, got s = {s}, t = {t}, k = {k}, g = {g}"
        )));
    }
    let numer = BigInt::from(lambda) * binomial(g - s, t - s) * BigInt::from(v).pow((t - s) as u32);
    Ok(Rational::new(numer, binomial(k - s, t - s)).expect("nonzero binomial"))
}

/// 0/1 vector of length r with ones at the (1-based) points of the block.
pub fn char_vector(block: &[usize], r: usize) -> Result<Vec<Rational>> {
    let mut v = vec![Rational::zero(); r];
    for &x in block {
        if x == 0 || x > r {
            return Err(Error::InvalidParameter(format!(
                "point {x} outside 1..={r}"
            )));
        }
        v[x - 1] = Rational::one();
    }
    Ok(v)
}

/// True iff the block families share no block.
pub fn designs_disjoint(a: &GroupDivisibleDesign, b: &GroupDivisibleDesign) -> bool {
    let set: BTreeSet<&Block> = a.blocks.iter().collect();
    !b.blocks.iter().any(|blk| set.contains(blk))
}
