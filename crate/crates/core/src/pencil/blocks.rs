//! Canonical Jordan and Kronecker blocks and congruence transforms.
//!
//! A finite Jordan block with eigenvalue `e` and half-size `m` is
//! `A = [[0, J], [-J^T, 0]]`, `B = [[0, I], [-I, 0]]` with `J = e*I + N`
//! (`N` the upper shift). Its pencil `A + l*B` is singular at `l = -e`.
//! The infinite block swaps the roles: `A = [[0, I], [-I, 0]]`,
//! `B = [[0, N], [-N^T, 0]]`. A Kronecker block of index `k` has size
//! `2k - 1`, with the `(k-1) x k` upper-right blocks `[I | 0]` in `A` and
//! `[0 | I]` in `B`.

use super::{ProjParam, SkewPencil};
use crate::error::{JkError, Result};
use crate::exactalg::{rat, RatMatrix, Rational};

fn skew_from_upper_right(p: usize, q: usize, block: &RatMatrix) -> RatMatrix {
    let n = p + q;
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..p {
        for j in 0..q {
            let v = block[(i, j)].clone();
            m[(j + p, i)] = -v.clone();
            m[(i, j + p)] = v;
        }
    }
    m
}

fn shifted_identity(rows: usize, cols: usize, diag: &Rational, upper: &Rational) -> RatMatrix {
    let mut m = RatMatrix::zeros(rows, cols);
    for i in 0..rows {
        if i < cols {
            m[(i, i)] = diag.clone();
        }
        if i + 1 < cols {
            m[(i, i + 1)] = upper.clone();
        }
    }
    m
}

/// Jordan block of size `2m` with the given eigenvalue.
pub fn build_jordan_block(eig: &ProjParam, m: usize) -> Result<SkewPencil> {
    if m == 0 {
        return Err(JkError::Precondition("Jordan half-size must be at least 1".into()));
    }
    let id = shifted_identity(m, m, &rat(1), &rat(0));
    let (a, b) = match eig {
        ProjParam::Finite(e) => (shifted_identity(m, m, e, &rat(1)), id),
        ProjParam::Infinity => (id, shifted_identity(m, m, &rat(0), &rat(1))),
    };
    SkewPencil::new(skew_from_upper_right(m, m, &a), skew_from_upper_right(m, m, &b))
}

/// Kronecker block of size `2k - 1`; `k = 1` is the 1x1 zero pencil.
pub fn build_kronecker_block(k: usize) -> Result<SkewPencil> {
    if k == 0 {
        return Err(JkError::Precondition("Kronecker index must be at least 1".into()));
    }
    let a = shifted_identity(k - 1, k, &rat(1), &rat(0));
    let b = shifted_identity(k - 1, k, &rat(0), &rat(1));
    SkewPencil::new(skew_from_upper_right(k - 1, k, &a), skew_from_upper_right(k - 1, k, &b))
}

pub fn direct_sum(parts: &[SkewPencil]) -> SkewPencil {
    let mut a = RatMatrix::zeros(0, 0);
    let mut b = RatMatrix::zeros(0, 0);
    for p in parts {
        a = a.direct_sum(p.a());
        b = b.direct_sum(p.b());
    }
    SkewPencil::new(a, b).expect("direct sum of skew pencils is skew")
}

/// `(S^T A S, S^T B S)`.
pub fn congruence_transform(p: &SkewPencil, s: &RatMatrix) -> Result<SkewPencil> {
    if !s.is_square() || s.nrows() != p.n() {
        return Err(JkError::Structural(format!(
            "congruence matrix must be {0}x{0}, got {1}x{2}",
            p.n(),
            s.nrows(),
            s.ncols()
        )));
    }
    if s.rank() < p.n() {
        return Err(JkError::Precondition("congruence matrix is singular".into()));
    }
    let st = s.transpose();
    SkewPencil::new(st.mul(p.a()).mul(s), st.mul(p.b()).mul(s))
}
