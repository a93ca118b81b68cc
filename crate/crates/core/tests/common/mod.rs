//! Independent oracles and fixtures shared by the integration tests. Nothing
//! here calls into the library's elimination, Pfaffian or invariant code.

#![allow(dead_code, clippy::needless_range_loop)]

use jkpencil::exactalg::{rat, RatMatrix, Rational, UniPoly};
use jkpencil::pencil::generate::BlockSpec;
use jkpencil::pencil::{ProjParam, SkewPencil};
use num_traits::{One, Zero};

pub fn q(v: i64) -> Rational {
    rat(v)
}

pub fn dense(m: &RatMatrix) -> Vec<Vec<Rational>> {
    (0..m.nrows()).map(|i| m.row(i)).collect()
}

/// Pfaffian as the signed sum over perfect matchings.
pub fn pf_matchings(m: &[Vec<Rational>]) -> Rational {
    fn rec(m: &[Vec<Rational>], idx: &[usize]) -> Rational {
        if idx.is_empty() {
            return Rational::one();
        }
        let first = idx[0];
        let mut total = Rational::zero();
        for k in 1..idx.len() {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|&(t, _)| t != 0 && t != k).map(|(_, &v)| v).collect();
            let term = &m[first][idx[k]] * rec(m, &rest);
            if k % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
    if m.len() % 2 == 1 {
        return Rational::zero();
    }
    rec(m, &(0..m.len()).collect::<Vec<_>>())
}

/// Row reduction to echelon form over Q with plain fractions; returns rank
/// and the determinant sign-and-pivot product.
fn gauss(mut a: Vec<Vec<Rational>>) -> (usize, Rational) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut det = Rational::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            det = Rational::zero();
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            det = -det;
        }
        let piv = a[rank][c].clone();
        det *= &piv;
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..cols {
                let t = &f * &a[rank][k];
                a[r][k] -= t;
            }
        }
        rank += 1;
    }
    (rank, det)
}

pub fn rank_oracle(m: &[Vec<Rational>]) -> usize {
    gauss(m.to_vec()).0
}

pub fn det_oracle(m: &[Vec<Rational>]) -> Rational {
    if m.is_empty() {
        return Rational::one();
    }
    let (r, d) = gauss(m.to_vec());
    if r < m.len() {
        Rational::zero()
    } else {
        d
    }
}

/// `A + l B` evaluated densely.
pub fn form_at(p: &SkewPencil, l: &Rational) -> Vec<Vec<Rational>> {
    let (a, b) = (dense(p.a()), dense(p.b()));
    a.iter().zip(&b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + l * y).collect()).collect()
}

/// Maximal rank of `A + l B` over `0..=2n+1`, enough points to avoid all
/// rank-drop parameters.
pub fn generic_rank_oracle(p: &SkewPencil) -> usize {
    (0..=2 * p.n() as i64 + 1).map(|l| rank_oracle(&form_at(p, &q(l)))).max().unwrap_or(0)
}

/// Product of `(l + e)^m` over finite Jordan blocks.
pub fn charpoly_from_blocks(blocks: &[BlockSpec]) -> UniPoly {
    blocks.iter().fold(UniPoly::one(), |acc, b| match b {
        BlockSpec::Jordan(ProjParam::Finite(e), m) => &acc * &UniPoly::linear(e.clone(), q(1)).pow(*m),
        _ => acc,
    })
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![q(0); n];
    v[i] = q(1);
    v
}

/// The 5x5 example pencil, entered from the printed matrices.
pub fn example_pencil() -> SkewPencil {
    let a = RatMatrix::from_i64(&[
        vec![0, 0, 1, 0, 0],
        vec![0, 0, 0, 1, 0],
        vec![-1, 0, 0, 0, 0],
        vec![0, -1, 0, 0, 0],
        vec![0, 0, 0, 0, 0],
    ]);
    let b = RatMatrix::from_i64(&[
        vec![0, 0, 0, 1, 0],
        vec![0, 0, 0, 0, 1],
        vec![0, 0, 0, 0, 0],
        vec![-1, 0, 0, 0, 0],
        vec![0, -1, 0, 0, 0],
    ]);
    SkewPencil::new(a, b).unwrap()
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}
