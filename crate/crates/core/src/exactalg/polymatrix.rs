//! Matrices over Q[l].

use std::ops::{Index, IndexMut};

use super::matrix::{bareiss_echelon, RatMatrix};
use super::rational::Rational;
use super::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<UniPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![UniPoly::zero(); rows * cols] }
    }

    /// `a + l * b`, entrywise.
    pub fn linear(a: &RatMatrix, b: &RatMatrix) -> Self {
        assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()), "pencil shape mismatch");
        let mut m = Self::zeros(a.nrows(), a.ncols());
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                m[(i, j)] = UniPoly::linear(a[(i, j)].clone(), b[(i, j)].clone());
            }
        }
        m
    }

    pub fn from_entries(rows: Vec<Vec<UniPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let data: Vec<UniPoly> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged polynomial matrix");
        PolyMatrix { rows: r, cols: c, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| self[(i, i)].is_zero() && (0..i).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    pub fn max_degree(&self) -> usize {
        self.data.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &Rational) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].eval(x);
            }
        }
        m
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> PolyMatrix {
        let rows = idx.iter().map(|&i| idx.iter().map(|&j| self[(i, j)].clone()).collect()).collect();
        let mut m = Self::from_entries(rows);
        if idx.is_empty() {
            m.cols = 0;
        }
        m
    }

    pub fn rows_vec(&self) -> Vec<Vec<UniPoly>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }
}

/// Rank over the rational function field Q(l), by fraction-free elimination
/// in Q[l].
pub fn rank_symbolic(m: &PolyMatrix) -> usize {
    let mut rows = m.rows_vec();
    bareiss_echelon(&mut rows).len()
}

/// Rank of `A + l*B` over Q(l), by evaluation. Every minor has degree at most
/// `min(rows, cols)`, so the largest rank over that many plus one distinct
/// points is the generic rank.
pub fn linear_rank(a: &RatMatrix, b: &RatMatrix) -> usize {
    let full = a.nrows().min(a.ncols());
    let mut best = 0;
    for x in 0..=full as i64 {
        best = best.max(a.add_scaled(&Rational::from_integer(x.into()), b).rank());
        if best == full {
            break;
        }
    }
    best
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = UniPoly;
    fn index(&self, (i, j): (usize, usize)) -> &UniPoly {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut UniPoly {
        &mut self.data[i * self.cols + j]
    }
}
