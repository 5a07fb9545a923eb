//! Concrete designs used by the constructions. Points are 1-based; a residue
//! x of ℤ_n is the point x+1.

use super::gdd::{Block, GroupDivisibleDesign};

const WITT_BASE: [[usize; 7]; 11] = [
    [0, 1, 2, 3, 5, 14, 17],
    [0, 1, 2, 6, 7, 19, 21],
    [0, 1, 2, 8, 11, 12, 18],
    [0, 1, 2, 9, 10, 15, 20],
    [0, 1, 3, 4, 11, 19, 20],
    [0, 1, 3, 6, 8, 10, 13],
    [0, 1, 3, 7, 9, 16, 18],
    [0, 1, 4, 6, 9, 12, 17],
    [0, 1, 4, 10, 14, 18, 21],
    [0, 1, 5, 9, 11, 13, 21],
    [0, 1, 5, 10, 12, 16, 19],
];

/// All translates of the base blocks modulo n, as 1-based blocks.
pub fn develop(bases: &[&[usize]], n: usize) -> Vec<Block> {
    bases
        .iter()
        .flat_map(|base| (0..n).map(move |a| base.iter().map(|&x| (x + a) % n + 1).collect()))
        .collect()
}

/// Blocks {i, i+1, i+3} and {i, i+2, i+3} over 𝔽_7: two disjoint 2-(7,3,1)
/// designs.
pub fn fano_pair() -> (GroupDivisibleDesign, GroupDivisibleDesign) {
    let a = GroupDivisibleDesign::t_design(7, develop(&[&[0, 1, 3]], 7), 2, 1);
    let b = GroupDivisibleDesign::t_design(7, develop(&[&[0, 2, 3]], 7), 2, 1);
    (a.expect("valid structure"), b.expect("valid structure"))
}

/// The 4-(23,7,1) design from the eleven base blocks over 𝔽_23, and its
/// reversal (point j ↦ 24 - j).
pub fn witt_system() -> (GroupDivisibleDesign, GroupDivisibleDesign) {
    let bases: Vec<&[usize]> = WITT_BASE.iter().map(|b| &b[..]).collect();
    let blocks = develop(&bases, 23);
    let reversed = blocks
        .iter()
        .map(|b| b.iter().map(|&j| 24 - j).collect())
        .collect();
    (
        GroupDivisibleDesign::t_design(23, blocks, 4, 1).expect("valid structure"),
        GroupDivisibleDesign::t_design(23, reversed, 4, 1).expect("valid structure"),
    )
}

/// GDD_1(2,3,9) of type 3^3: the affine plane of order 3 with one parallel
/// class as groups.
pub fn affine_plane_gdd() -> GroupDivisibleDesign {
    GroupDivisibleDesign::new(
        9,
        vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]],
        vec![
            vec![1, 4, 7],
            vec![1, 5, 8],
            vec![1, 6, 9],
            vec![2, 6, 8],
            vec![2, 4, 9],
            vec![2, 5, 7],
            vec![3, 5, 9],
            vec![3, 6, 7],
            vec![3, 4, 8],
        ],
        2,
        1,
    )
    .expect("valid structure")
}

/// Two disjoint GDD_1(2,3,8) of type 2^4 on ℤ_8 with groups {i, i+4}:
/// the developments of {0,1,3} and {0,1,6}.
pub fn gdd_z8_pair() -> (GroupDivisibleDesign, GroupDivisibleDesign) {
    let groups: Vec<Block> = (1..=4).map(|i| vec![i, i + 4]).collect();
    let a = GroupDivisibleDesign::new(8, groups.clone(), develop(&[&[0, 1, 3]], 8), 2, 1);
    let b = GroupDivisibleDesign::new(8, groups, develop(&[&[0, 1, 6]], 8), 2, 1);
    (a.expect("valid structure"), b.expect("valid structure"))
}
