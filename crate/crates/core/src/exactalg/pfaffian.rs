//! Pfaffians of skew-symmetric matrices.
//!
//! Over Q the Pfaffian is computed by skew Gaussian elimination: pivot on a
//! 2x2 block, take its entry, recurse on the Schur complement. Over Q[l] the
//! Pfaffian has degree at most `(n/2) * maxdeg`, so it is evaluated exactly at
//! that many plus one points and interpolated.

use num_traits::Zero;

use super::matrix::RatMatrix;
use super::polymatrix::PolyMatrix;
use super::rational::{rat, Rational};
use super::unipoly::UniPoly;
use crate::error::{JkError, Result};

fn check_shape(rows: usize, cols: usize, skew: bool) -> Result<()> {
    if rows != cols {
        return Err(JkError::Structural(format!("Pfaffian of a non-square {rows}x{cols} matrix")));
    }
    if rows % 2 == 1 {
        return Err(JkError::Structural(format!("Pfaffian of odd order {rows}")));
    }
    if !skew {
        return Err(JkError::Structural("Pfaffian of a matrix that is not skew-symmetric".into()));
    }
    Ok(())
}

/// Pf of a rational skew matrix; Pf of the empty matrix is 1.
pub fn pfaffian_rat(m: &RatMatrix) -> Result<Rational> {
    check_shape(m.nrows(), m.ncols(), m.is_skew())?;
    Ok(pfaffian_unchecked(m.rows_vec()))
}

fn pfaffian_unchecked(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut pf = rat(1);
    let mut k = 0;
    while k < n {
        let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) else {
            return rat(0);
        };
        if j != k + 1 {
            m.swap(k + 1, j);
            for row in m.iter_mut() {
                row.swap(k + 1, j);
            }
            pf = -pf;
        }
        let a = m[k][k + 1].clone();
        pf *= &a;
        let inv = a.recip();
        for i in k + 2..n {
            let ik = m[i][k].clone();
            let ik1 = m[i][k + 1].clone();
            if ik.is_zero() && ik1.is_zero() {
                continue;
            }
            for jj in k + 2..n {
                let d = (&ik * &m[k + 1][jj] - &ik1 * &m[k][jj]) * &inv;
                if !d.is_zero() {
                    m[i][jj] += d;
                }
            }
        }
        k += 2;
    }
    pf
}

/// Pf of a skew matrix over Q[l].
pub fn pfaffian_poly(m: &PolyMatrix) -> Result<UniPoly> {
    check_shape(m.nrows(), m.ncols(), m.is_skew())?;
    let n = m.nrows();
    let bound = (n / 2) * m.max_degree();
    let xs: Vec<Rational> = (0..=bound as i64).map(rat).collect();
    let ys: Vec<Rational> = xs.iter().map(|x| pfaffian_unchecked(m.eval(x).rows_vec())).collect();
    Ok(interpolate(&xs, &ys))
}

/// Newton interpolation through distinct nodes.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = UniPoly::zero();
    for i in (0..n).rev() {
        p = &(&p * &UniPoly::linear(-&xs[i], rat(1))) + &UniPoly::constant(coef[i].clone());
    }
    p
}
