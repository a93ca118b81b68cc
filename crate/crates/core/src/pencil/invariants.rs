//! Rank, characteristic polynomial, eigenvalues, and the Jordan-Kronecker
//! type of a pencil.
//!
//! Sign convention: `e` is an eigenvalue when `rank(A - e*B)` drops, so the
//! pencil `A + l*B` is singular at the parameter `l = -e`. Elementary
//! divisors of `A + l*B` at the factor `(l + e)` describe the Jordan blocks
//! with eigenvalue `e`; those of `B + m*A` at `m` describe infinity.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::{ProjParam, SkewPencil};
use crate::error::{JkError, Result};
use crate::exactalg::polymatrix::linear_rank;
use crate::exactalg::{
    format_rational, pfaffian_poly, rat, rational_roots, smith_form, uni_gcd, RatMatrix, Rational, UniPoly,
};

/// An eigenvalue: a rational, a class of conjugate non-rational
/// eigenvalues (the polynomial whose roots they are), or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Eigen {
    Finite(Rational),
    Class(UniPoly),
    Infinite,
}

impl Eigen {
    fn rank_key(&self) -> u8 {
        match self {
            Eigen::Finite(_) => 0,
            Eigen::Class(_) => 1,
            Eigen::Infinite => 2,
        }
    }

    pub fn as_param(&self) -> Option<ProjParam> {
        match self {
            Eigen::Finite(r) => Some(ProjParam::Finite(r.clone())),
            Eigen::Infinite => Some(ProjParam::Infinity),
            Eigen::Class(_) => None,
        }
    }
}

impl Ord for Eigen {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Eigen::Finite(a), Eigen::Finite(b)) => a.cmp(b),
            (Eigen::Class(a), Eigen::Class(b)) => {
                a.degree().cmp(&b.degree()).then_with(|| a.to_string().cmp(&b.to_string()))
            }
            _ => self.rank_key().cmp(&o.rank_key()),
        }
    }
}

impl PartialOrd for Eigen {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Eigen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigen::Finite(r) => f.write_str(&format_rational(r)),
            Eigen::Class(p) => write!(f, "root of {p}"),
            Eigen::Infinite => f.write_str("inf"),
        }
    }
}

/// Eigenvalues of a pencil, sorted: rationals ascending, then classes, then
/// infinity.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EigenvalueSet {
    pub eigenvalues: Vec<Eigen>,
}

impl EigenvalueSet {
    pub fn finite(&self) -> Vec<Rational> {
        self.eigenvalues
            .iter()
            .filter_map(|e| match e {
                Eigen::Finite(r) => Some(r.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn has_infinity(&self) -> bool {
        self.eigenvalues.contains(&Eigen::Infinite)
    }

    pub fn classes(&self) -> Vec<UniPoly> {
        self.eigenvalues
            .iter()
            .filter_map(|e| match e {
                Eigen::Class(p) => Some(p.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn all_rational(&self) -> bool {
        self.classes().is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Containment; a class is contained when it divides the product of the
    /// other set's classes.
    pub fn is_subset_of(&self, other: &EigenvalueSet) -> bool {
        let prod = other.classes().iter().fold(UniPoly::one(), |acc, c| &acc * c);
        self.eigenvalues.iter().all(|e| match e {
            Eigen::Class(c) => c.divides(&prod),
            _ => other.eigenvalues.contains(e),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub p: UniPoly,
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.p.to_factored_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanEntry {
    pub eig: Eigen,
    /// Half-sizes `m` of the `2m x 2m` blocks, ascending.
    pub halfsizes: Vec<usize>,
}

/// Discrete Jordan-Kronecker type of a pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JKInvariants {
    pub n: usize,
    pub rank: usize,
    /// Kronecker indices `k` (blocks of size `2k - 1`), ascending.
    pub kronecker: Vec<usize>,
    pub jordan: Vec<JordanEntry>,
}

impl JKInvariants {
    /// Type up to eigenvalues: Kronecker indices plus the sorted list of
    /// per-eigenvalue half-size multisets.
    pub fn pattern(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let mut j: Vec<Vec<usize>> = self.jordan.iter().map(|e| e.halfsizes.clone()).collect();
        j.sort();
        (self.kronecker.clone(), j)
    }

    pub fn halfsizes(&self, eig: &Eigen) -> Vec<usize> {
        self.jordan.iter().find(|e| &e.eig == eig).map(|e| e.halfsizes.clone()).unwrap_or_default()
    }
}

/// Rank over Q(l), i.e. the maximal rank of `A + l*B` over all parameters.
pub fn pencil_rank(p: &SkewPencil) -> usize {
    let rk = linear_rank(p.a(), p.b());
    debug_assert!(p.b().rank() <= rk);
    rk
}

fn combinations(n: usize, r: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - r + i {
                idx[i] += 1;
                for j in i + 1..r {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// gcd of the Pfaffians of all principal minors of order `rk P`, canonical.
pub fn char_poly(p: &SkewPencil) -> CharPoly {
    CharPoly { p: char_poly_of_rank(p, pencil_rank(p)) }
}

/// Splits square-free `base` elements by every `q`, so that afterwards each
/// element either divides `q` or is coprime to it.
fn refine(base: Vec<UniPoly>, q: &UniPoly) -> Vec<UniPoly> {
    let mut out = Vec::new();
    for b in base {
        let g = uni_gcd(&b, q);
        if g.is_constant() || g == b {
            out.push(b);
        } else {
            out.push(g.clone());
            out.push(b.exact_div(&g).unwrap().canonical());
        }
    }
    out
}

/// Square-free classes of the non-rational singular locus, refined so that
/// every class has the same valuation in every invariant factor.
fn irrational_classes(factors: &[UniPoly]) -> Vec<UniPoly> {
    let Some(last) = factors.last() else {
        return Vec::new();
    };
    let mut rest = last.squarefree_part();
    for (r, _) in rational_roots(last).unwrap_or_default() {
        rest = rest.exact_div(&UniPoly::linear(-r, rat(1))).unwrap();
    }
    if rest.is_constant() {
        return Vec::new();
    }
    let mut base = vec![rest.canonical()];
    for d in factors {
        // Factors of `b` with valuation >= e in `d` are gcd(b, d / b^(e-1)).
        let mut t = d.clone();
        loop {
            let g = uni_gcd(&rest, &t);
            if g.is_constant() {
                break;
            }
            base = refine(base, &g);
            t = t.exact_div(&g).unwrap();
        }
    }
    base.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.to_string().cmp(&b.to_string())));
    base
}

/// Pairs up elementary-divisor exponents; each `m` must occur an even number
/// of times for a skew pencil.
fn pair_exponents(exps: Vec<usize>, what: &dyn fmt::Display) -> Result<Vec<usize>> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for e in exps.into_iter().filter(|&e| e > 0) {
        *counts.entry(e).or_default() += 1;
    }
    let mut out = Vec::new();
    for (m, c) in counts {
        if c % 2 == 1 {
            return Err(JkError::Internal(format!(
                "elementary divisor of degree {m} at {what} has odd multiplicity {c}"
            )));
        }
        out.extend(std::iter::repeat_n(m, c / 2));
    }
    Ok(out)
}

/// Finite spectrum split into rational eigenvalues and non-rational classes.
/// The Smith form is only computed when a non-rational class exists.
struct Spectrum {
    rational: Vec<Rational>,
    classes: Vec<UniPoly>,
    factors: Option<Vec<UniPoly>>,
    infinite: bool,
}

fn char_poly_of_rank(p: &SkewPencil, rk: usize) -> UniPoly {
    if rk == 0 {
        return UniPoly::one();
    }
    let m = p.poly_matrix();
    let mut g = UniPoly::zero();
    combinations(p.n(), rk, |idx| {
        let pf = pfaffian_poly(&m.principal_submatrix(idx)).expect("principal minors are skew");
        if !pf.is_zero() {
            g = uni_gcd(&g, &pf);
        }
        !(g.is_constant() && !g.is_zero())
    });
    g.canonical()
}

fn spectrum(p: &SkewPencil, rk: usize) -> Result<Spectrum> {
    let cp = char_poly_of_rank(p, rk);
    let mut rational = Vec::new();
    let mut rest = cp.squarefree_part();
    if !cp.is_constant() {
        for (s, _) in rational_roots(&cp)? {
            rest = rest.exact_div(&UniPoly::linear(-s.clone(), rat(1))).unwrap();
            let e = -s;
            if p.eigen_form(&ProjParam::Finite(e.clone())).rank() >= rk {
                return Err(JkError::Internal(format!(
                    "characteristic polynomial vanishes at {} but the rank does not drop",
                    format_rational(&-&e)
                )));
            }
            rational.push(e);
        }
    }
    let (classes, factors) = if rest.is_constant() {
        (Vec::new(), None)
    } else {
        let f = smith_form(&p.poly_matrix());
        (irrational_classes(&f), Some(f))
    };
    Ok(Spectrum { rational, classes, factors, infinite: p.b().rank() < rk })
}

fn eigenvalues_of(sp: &Spectrum) -> EigenvalueSet {
    let mut eigs: Vec<Eigen> = sp.rational.iter().cloned().map(Eigen::Finite).collect();
    eigs.extend(sp.classes.iter().map(|c| Eigen::Class(c.negate_var().canonical())));
    if sp.infinite {
        eigs.push(Eigen::Infinite);
    }
    eigs.sort();
    EigenvalueSet { eigenvalues: eigs }
}

/// Eigenvalues: `e` with `rank(A - e*B) < rk P`; infinity when `rank B < rk P`.
pub fn eigenvalue_set(p: &SkewPencil) -> Result<EigenvalueSet> {
    Ok(eigenvalues_of(&spectrum(p, pencil_rank(p))?))
}

/// Partial multiplicities of `P0 + s*P1` at `s = 0`. Multiplication by the
/// pencil on vectors truncated mod `s^k` has kernel dimension
/// `sum_i min(kappa_i, k) + (n - rk) * k`.
fn local_multiplicities(p0: &RatMatrix, p1: &RatMatrix, rk: usize) -> Vec<usize> {
    let n = p0.nrows();
    let mut at_least = Vec::new();
    let mut prev = 0usize;
    for k in 1..=n + 1 {
        let mut t = RatMatrix::zeros(k * n, k * n);
        for b in 0..k {
            for r in 0..n {
                for c in 0..n {
                    t[(b * n + r, b * n + c)] = p0[(r, c)].clone();
                    if b + 1 < k {
                        t[((b + 1) * n + r, b * n + c)] = p1[(r, c)].clone();
                    }
                }
            }
        }
        let c = k * n - t.rank() - (n - rk) * k;
        if c == prev {
            break;
        }
        at_least.push(c - prev);
        prev = c;
    }
    let mut out = Vec::new();
    for (i, &g) in at_least.iter().enumerate() {
        let next = at_least.get(i + 1).copied().unwrap_or(0);
        out.extend(std::iter::repeat_n(i + 1, g - next));
    }
    out
}

fn jordan_from(p: &SkewPencil, rk: usize, sp: &Spectrum) -> Result<Vec<JordanEntry>> {
    let mut out = Vec::new();
    for e in eigenvalues_of(sp).eigenvalues {
        let exps = match &e {
            Eigen::Finite(r) => local_multiplicities(&p.eigen_form(&ProjParam::Finite(r.clone())), p.b(), rk),
            Eigen::Infinite => local_multiplicities(p.b(), p.a(), rk),
            Eigen::Class(c) => {
                let f = c.negate_var().canonical();
                sp.factors
                    .as_ref()
                    .expect("classes come with invariant factors")
                    .iter()
                    .map(|d| d.valuation(&f))
                    .collect()
            }
        };
        let halfsizes = pair_exponents(exps, &e)?;
        if halfsizes.is_empty() {
            return Err(JkError::Internal(format!("eigenvalue {e} has no elementary divisors")));
        }
        out.push(JordanEntry { eig: e, halfsizes });
    }
    Ok(out)
}

/// Jordan half-sizes per eigenvalue, read off paired elementary divisors.
pub fn jordan_structure(p: &SkewPencil) -> Result<Vec<JordanEntry>> {
    let rk = pencil_rank(p);
    jordan_from(p, rk, &spectrum(p, rk)?)
}

/// Block-Toeplitz matrix whose null space is the space of polynomial kernel
/// vectors of degree at most `d`.
fn toeplitz(p: &SkewPencil, d: usize) -> RatMatrix {
    let n = p.n();
    let mut t = RatMatrix::zeros(n * (d + 2), n * (d + 1));
    for i in 0..=d {
        for r in 0..n {
            for c in 0..n {
                t[(n * i + r, n * i + c)] = p.a()[(r, c)].clone();
                t[(n * (i + 1) + r, n * i + c)] = p.b()[(r, c)].clone();
            }
        }
    }
    t
}

/// Kronecker indices `k_i = eps_i + 1` from the minimal indices `eps_i` of
/// the polynomial kernel of `A + l*B`.
pub fn kronecker_indices(p: &SkewPencil) -> Vec<usize> {
    let n = p.n();
    let corank = n - pencil_rank(p);
    let mut out = Vec::with_capacity(corank);
    let mut prev_nullity = 0usize;
    let mut prev_le = 0usize;
    for d in 0..=n {
        if out.len() == corank {
            break;
        }
        let t = toeplitz(p, d);
        let nullity = t.ncols() - t.rank();
        let le = nullity - prev_nullity;
        out.extend(std::iter::repeat_n(d + 1, le - prev_le));
        prev_nullity = nullity;
        prev_le = le;
    }
    out
}

/// Full Jordan-Kronecker type with bookkeeping checks.
pub fn jk_invariants(p: &SkewPencil) -> Result<JKInvariants> {
    let n = p.n();
    let rk = pencil_rank(p);
    let jordan = jordan_from(p, rk, &spectrum(p, rk)?)?;
    let kronecker = kronecker_indices(p);
    let kron_size: usize = kronecker.iter().map(|k| 2 * k - 1).sum();
    let jordan_size: usize = jordan
        .iter()
        .map(|e| {
            let w = match &e.eig {
                Eigen::Class(c) => c.degree().unwrap(),
                _ => 1,
            };
            2 * w * e.halfsizes.iter().sum::<usize>()
        })
        .sum();
    if kron_size + jordan_size != n {
        return Err(JkError::Internal(format!("block sizes sum to {} but n = {n}", kron_size + jordan_size)));
    }
    if n - rk != kronecker.len() {
        return Err(JkError::Internal(format!(
            "corank {} differs from the number of Kronecker blocks {}",
            n - rk,
            kronecker.len()
        )));
    }
    Ok(JKInvariants { n, rank: rk, kronecker, jordan })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::blocks::{build_jordan_block, build_kronecker_block, direct_sum};

    fn j(e: i64, size: usize) -> SkewPencil {
        build_jordan_block(&ProjParam::int(e), size / 2).unwrap()
    }

    fn jinf(size: usize) -> SkewPencil {
        build_jordan_block(&ProjParam::Infinity, size / 2).unwrap()
    }

    fn k(k: usize) -> SkewPencil {
        build_kronecker_block(k).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(pencil_rank(&k(3)), 4);
        assert_eq!(pencil_rank(&j(2, 4)), 4);
        assert_eq!(pencil_rank(&SkewPencil::zero(3)), 0);
    }

    #[test]
    fn char_polys() {
        assert_eq!(char_poly(&j(2, 4)).p, UniPoly::from_i64(&[4, 4, 1]));
        assert_eq!(char_poly(&k(3)).p, UniPoly::one());
        assert_eq!(char_poly(&direct_sum(&[j(2, 4), k(3)])).p, UniPoly::from_i64(&[4, 4, 1]));
        assert_eq!(char_poly(&SkewPencil::zero(2)).p, UniPoly::one());
        assert_eq!(char_poly(&j(2, 4)).to_string(), "(l+2)^2");
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(eigenvalue_set(&j(2, 4)).unwrap().eigenvalues, vec![Eigen::Finite(rat(2))]);
        assert_eq!(eigenvalue_set(&jinf(4)).unwrap().eigenvalues, vec![Eigen::Infinite]);
        assert!(eigenvalue_set(&k(3)).unwrap().is_empty());
    }

    #[test]
    fn jordan() {
        let s = jordan_structure(&j(2, 4)).unwrap();
        assert_eq!(s, vec![JordanEntry { eig: Eigen::Finite(rat(2)), halfsizes: vec![2] }]);
        let s = jordan_structure(&direct_sum(&[j(2, 2), j(2, 4)])).unwrap();
        assert_eq!(s[0].halfsizes, vec![1, 2]);
        let s = jordan_structure(&jinf(4)).unwrap();
        assert_eq!(s, vec![JordanEntry { eig: Eigen::Infinite, halfsizes: vec![2] }]);
    }

    #[test]
    fn kronecker() {
        assert_eq!(kronecker_indices(&k(3)), vec![3]);
        assert_eq!(kronecker_indices(&SkewPencil::zero(1)), vec![1]);
        assert!(kronecker_indices(&j(2, 4)).is_empty());
        assert_eq!(kronecker_indices(&direct_sum(&[k(1), k(2), k(2)])), vec![1, 2, 2]);
    }

    #[test]
    fn full_invariants() {
        let inv = jk_invariants(&k(3)).unwrap();
        assert_eq!((inv.kronecker.clone(), inv.jordan.len()), (vec![3], 0));
        let inv = jk_invariants(&direct_sum(&[j(2, 4), k(3)])).unwrap();
        assert_eq!(inv.n, 9);
        assert_eq!(inv.kronecker, vec![3]);
        assert_eq!(inv.halfsizes(&Eigen::Finite(rat(2))), vec![2]);
        let inv = jk_invariants(&direct_sum(&[jinf(2), k(1)])).unwrap();
        assert_eq!(inv.kronecker, vec![1]);
        assert_eq!(inv.halfsizes(&Eigen::Infinite), vec![1]);
    }

    #[test]
    fn irrational_class() {
        // B = standard symplectic form on R^4 and A = B*Q with Q the
        // companion-style operator [[C, 0], [0, C^T]], C^2 = 2.
        let a = RatMatrix::from_i64(&[vec![0, 0, 0, 2], vec![0, 0, 1, 0], vec![0, -1, 0, 0], vec![-2, 0, 0, 0]]);
        let b = RatMatrix::from_i64(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![-1, 0, 0, 0], vec![0, -1, 0, 0]]);
        let p = SkewPencil::new(a, b).unwrap();
        let inv = jk_invariants(&p).unwrap();
        let class = Eigen::Class(UniPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(inv.jordan, vec![JordanEntry { eig: class, halfsizes: vec![1] }]);
        assert_eq!(char_poly(&p).p, UniPoly::from_i64(&[-2, 0, 1]));
    }
}
