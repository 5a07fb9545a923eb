use serde::Serialize;

use crate::error::{Error, Result};

/// An ℓ×ℓ grid over the symbols 1..=ℓ, each once per row and column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatinSquare {
    order: usize,
    grid: Vec<Vec<usize>>,
}

/// Row and column exactness check over the symbols 1..=ℓ.
pub fn verify_latin(grid: &[Vec<usize>]) -> bool {
    let l = grid.len();
    if l == 0 || grid.iter().any(|row| row.len() != l) {
        return false;
    }
    let exact = |cells: Vec<usize>| {
        let mut seen = vec![false; l + 1];
        cells
            .into_iter()
            .all(|x| (1..=l).contains(&x) && !std::mem::replace(&mut seen[x], true))
    };
    (0..l).all(|i| exact(grid[i].clone()) && exact(grid.iter().map(|row| row[i]).collect()))
}

impl LatinSquare {
    pub fn new(grid: Vec<Vec<usize>>) -> Result<Self> {
        if !verify_latin(&grid) {
            return Err(Error::MalformedDesign(format!(
                "not a Latin square over 1..=n: {grid:?}"
            )));
        }
        Ok(LatinSquare {
            order: grid.len(),
            grid,
        })
    }

    /// The addition table of ℤ_ℓ, shifted to symbols 1..=ℓ.
    pub fn cyclic(order: usize) -> Result<Self> {
        Self::new(
            (0..order)
                .map(|i| (0..order).map(|j| (i + j) % order + 1).collect())
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn grid(&self) -> &[Vec<usize>] {
        &self.grid
    }

    /// Entry δ_{ai} with 0-based row and column.
    pub fn entry(&self, row: usize, col: usize) -> usize {
        self.grid[row][col]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(verify_latin(&[vec![1, 2], vec![2, 1]]));
        assert!(verify_latin(&[vec![1, 3, 2], vec![2, 1, 3], vec![3, 2, 1]]));
        assert!(!verify_latin(&[vec![1, 1], vec![2, 2]]));
        assert!(!verify_latin(&[vec![1, 2], vec![1, 2]]));
        assert!(!verify_latin(&[vec![0, 1], vec![1, 0]]));
        assert!(!verify_latin(&[vec![1, 2]]));
        assert!(!verify_latin(&[]));
    }

    #[test]
    fn cyclic_squares_are_latin() {
        for n in 1..8 {
            assert_eq!(LatinSquare::cyclic(n).unwrap().order(), n);
        }
    }
}
