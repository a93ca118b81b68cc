//! Skew-symmetric pencils `A + l*B` and their discrete invariants.

pub mod blocks;
pub mod generate;
pub mod invariants;

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{JkError, Result};
use crate::exactalg::{format_rational, parse_rational, rat, PolyMatrix, RatMatrix, Rational};

pub use blocks::{build_jordan_block, build_kronecker_block, congruence_transform, direct_sum};
pub use invariants::{
    char_poly, eigenvalue_set, jk_invariants, jordan_structure, kronecker_indices, pencil_rank, CharPoly, Eigen,
    EigenvalueSet, JKInvariants, JordanEntry,
};

/// A point of the projective line: a finite rational or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjParam {
    Finite(Rational),
    Infinity,
}

impl ProjParam {
    pub fn int(v: i64) -> Self {
        ProjParam::Finite(rat(v))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ProjParam::Infinity)
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(ProjParam::Infinity),
            t => Ok(ProjParam::Finite(parse_rational(t)?)),
        }
    }
}

impl fmt::Display for ProjParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjParam::Finite(r) => f.write_str(&format_rational(r)),
            ProjParam::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ProjParam {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ProjParam {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = crate::io::StrOrNum::deserialize(d)?.0;
        ProjParam::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A pair of skew-symmetric `n x n` rational matrices; the form at parameter
/// `l` is `A + l*B`, and at infinity it is `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewPencil {
    a: RatMatrix,
    b: RatMatrix,
}

impl SkewPencil {
    pub fn new(a: RatMatrix, b: RatMatrix) -> Result<Self> {
        if !a.is_square() || !b.is_square() || a.nrows() != b.nrows() {
            return Err(JkError::Structural(format!(
                "pencil matrices must be square of equal size, got {}x{} and {}x{}",
                a.nrows(),
                a.ncols(),
                b.nrows(),
                b.ncols()
            )));
        }
        if !a.is_skew() {
            return Err(JkError::Structural("matrix A is not skew-symmetric".into()));
        }
        if !b.is_skew() {
            return Err(JkError::Structural("matrix B is not skew-symmetric".into()));
        }
        Ok(SkewPencil { a, b })
    }

    pub fn zero(n: usize) -> Self {
        SkewPencil { a: RatMatrix::zeros(n, n), b: RatMatrix::zeros(n, n) }
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &RatMatrix {
        &self.a
    }

    pub fn b(&self) -> &RatMatrix {
        &self.b
    }

    /// The form `A_l`.
    pub fn at(&self, l: &ProjParam) -> RatMatrix {
        match l {
            ProjParam::Finite(x) if x.is_zero() => self.a.clone(),
            ProjParam::Finite(x) => self.a.add_scaled(x, &self.b),
            ProjParam::Infinity => self.b.clone(),
        }
    }

    /// `A - e*B`, the form whose rank drop defines the eigenvalue `e`.
    pub fn eigen_form(&self, e: &ProjParam) -> RatMatrix {
        match e {
            ProjParam::Finite(x) => self.a.add_scaled(&-x, &self.b),
            ProjParam::Infinity => self.b.clone(),
        }
    }

    pub fn rank_at(&self, l: &ProjParam) -> usize {
        self.at(l).rank()
    }

    pub fn poly_matrix(&self) -> PolyMatrix {
        PolyMatrix::linear(&self.a, &self.b)
    }

    /// The pencil `B + m*A`, whose structure at `m = 0` is the structure of
    /// this pencil at infinity.
    pub fn reversed(&self) -> SkewPencil {
        SkewPencil { a: self.b.clone(), b: self.a.clone() }
    }

    /// Pencil with basis `(A', B') = (A + c*B, B)`.
    pub fn shifted(&self, c: &Rational) -> SkewPencil {
        SkewPencil { a: self.a.add_scaled(c, &self.b), b: self.b.clone() }
    }

    /// Regular parameters `0, 1, 2, ...` (skipping rank-drop values), `count`
    /// of them, followed by infinity when `B` is regular and `with_infinity`.
    pub fn regular_samples(&self, count: usize, with_infinity: bool) -> Vec<ProjParam> {
        let rk = pencil_rank(self);
        let mut out = Vec::with_capacity(count + 1);
        let mut x = 0i64;
        while out.len() < count {
            let p = ProjParam::int(x);
            if self.rank_at(&p) == rk {
                out.push(p);
            }
            x += 1;
        }
        if with_infinity && self.b.rank() == rk {
            out.push(ProjParam::Infinity);
        }
        out
    }
}
