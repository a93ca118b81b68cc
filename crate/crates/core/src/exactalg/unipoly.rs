//! Univariate polynomials over the rationals in the pencil parameter `l`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, rat, Rational};
use crate::error::{JkError, Result};

/// Dense polynomial, coefficient `i` multiplies `l^i`. Never stores a zero
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable `l` itself.
    pub fn var() -> Self {
        Self::from_coeffs(vec![rat(0), rat(1)])
    }

    /// `c * l^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![rat(0); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    /// `a + b*l`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::from_coeffs(vec![a, b])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect())
    }

    /// `p(-l)`.
    pub fn negate_var(&self) -> Self {
        Self::from_coeffs(
            self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect(),
        )
    }

    /// `l^deg * p(1/l)`, the reversal with respect to `deg`.
    pub fn reverse(&self, deg: usize) -> Self {
        let mut v = vec![rat(0); deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[deg - i] = c.clone();
        }
        Self::from_coeffs(v)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Primitive integer form with positive leading coefficient. Units are
    /// the nonzero rationals, so this pins one representative per class.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut g = BigInt::zero();
        for a in &ints {
            g = g.gcd(a);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        Self::from_coeffs(ints.into_iter().map(|a| Rational::from_integer(a / &g)).collect())
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let inv = d.leading().recip();
        let mut q = vec![rat(0); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (UniPoly::from_coeffs(q), UniPoly::from_coeffs(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicity of `f` (non-constant) as a factor of `self`.
    pub fn valuation(&self, f: &UniPoly) -> usize {
        assert!(!f.is_constant(), "valuation at a unit");
        if self.is_zero() {
            return usize::MAX;
        }
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.exact_div(f) {
            p = q;
            k += 1;
        }
        k
    }

    /// Square-free part (canonical).
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_constant() {
            return UniPoly::one();
        }
        let g = uni_gcd(self, &self.derivative());
        self.exact_div(&g).unwrap().canonical()
    }
}

/// Greatest common divisor in canonical form; `gcd(0, 0) = 0`.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut x = a.monic();
    let mut y = b.monic();
    while !y.is_zero() {
        let r = x.rem(&y).monic();
        x = y;
        y = r;
    }
    x.canonical()
}

/// Yun's square-free factorisation: `p = c * prod q_i^{e_i}` with the `q_i`
/// square-free, pairwise coprime and canonical. Constants give an empty list.
pub fn squarefree_factor(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = uni_gcd(&f, &df).monic();
    let mut b = f.exact_div(&a0).unwrap();
    let mut c = df.exact_div(&a0).unwrap();
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = uni_gcd(&b, &d).monic();
        if !a.is_constant() {
            out.push((a.canonical(), i));
        }
        b = b.exact_div(&a).unwrap();
        c = d.exact_div(&a).unwrap();
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            let q = &n / &i;
            if q != i {
                large.push(q);
            }
            small.push(i.clone());
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All rational roots with multiplicity, ascending, by the rational root
/// theorem applied to each square-free factor.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<(Rational, usize)>> {
    if p.is_zero() {
        return Err(JkError::Precondition("rational roots of the zero polynomial are undefined".into()));
    }
    let mut roots = Vec::new();
    for (q, e) in squarefree_factor(p) {
        let mut q = q;
        if q.coeff(0).is_zero() {
            roots.push((rat(0), e));
            q = q.exact_div(&UniPoly::var()).unwrap().canonical();
        }
        if q.is_constant() {
            continue;
        }
        let a0 = q.coeff(0).numer().clone();
        let an = q.leading().numer().clone();
        let dens = divisors(&an);
        let mut found: Vec<Rational> = Vec::new();
        for num in divisors(&a0) {
            for den in &dens {
                for s in [1i64, -1] {
                    let r = Rational::new(&num * BigInt::from(s), den.clone());
                    if !found.contains(&r) && q.eval(&r).is_zero() {
                        found.push(r);
                    }
                }
            }
        }
        roots.extend(found.into_iter().map(|r| (r, e)));
    }
    roots.sort();
    Ok(roots)
}

fn fmt_monomial(out: &mut String, c: &Rational, k: usize, first: bool, var: &str) {
    let neg = c.is_negative();
    let mag = c.abs();
    if neg {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    if k == 0 {
        out.push_str(&format_rational(&mag));
        return;
    }
    if !mag.is_one() {
        out.push_str(&format_rational(&mag));
        out.push('*');
    }
    out.push_str(var);
    if k > 1 {
        out.push('^');
        out.push_str(&k.to_string());
    }
}

impl UniPoly {
    /// Expanded form, highest degree first, e.g. `l^2+4*l+4`.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let first = s.is_empty();
            fmt_monomial(&mut s, c, k, first, var);
        }
        s
    }

    /// Product form over square-free factors with rational linear factors
    /// split out, e.g. `(l+2)^2*(l^2-2)`; constants print plainly.
    pub fn to_factored_string(&self) -> String {
        if self.is_constant() {
            return self.to_string();
        }
        let mut lead = self.clone();
        let mut parts: Vec<(UniPoly, usize)> = Vec::new();
        for (q, e) in squarefree_factor(self) {
            let mut rest = q.clone();
            let roots = rational_roots(&q).unwrap_or_default();
            for (r, _) in roots {
                let lin = UniPoly::linear(-r, rat(1)).canonical();
                rest = rest.exact_div(&lin).unwrap();
                parts.push((lin, e));
            }
            if !rest.is_constant() {
                parts.push((rest.canonical(), e));
            }
        }
        parts.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.to_string().cmp(&b.0.to_string())));
        let mut prod = UniPoly::one();
        for (q, e) in &parts {
            prod = &prod * &q.pow(*e);
        }
        lead = lead.exact_div(&prod).unwrap();
        let unit = lead.coeff(0);
        let mut s = String::new();
        if unit == -rat(1) {
            s.push('-');
        } else if !unit.is_one() {
            s.push_str(&format_rational(&unit));
            s.push('*');
        }
        let body: Vec<String> =
            parts.iter().map(|(q, e)| if *e == 1 { format!("({q})") } else { format!("({q})^{e}") }).collect();
        s.push_str(&body.join("*"));
        s
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("l"))
    }
}

impl std::str::FromStr for UniPoly {
    type Err = JkError;
    fn from_str(s: &str) -> Result<Self> {
        super::expr::parse_unipoly(s)
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, o: UniPoly) -> UniPoly {
        &self + &o
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, o: UniPoly) -> UniPoly {
        &self - &o
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, o: UniPoly) -> UniPoly {
        &self * &o
    }
}
