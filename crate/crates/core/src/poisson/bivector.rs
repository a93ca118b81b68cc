//! Polynomial bivectors and the Schouten bracket.

use std::collections::BTreeMap;

use crate::error::{JkError, Result};
use crate::exactalg::{MultiPoly, RatMatrix, Rational};
use crate::poisson::Guardrails;

/// Skew `n x n` grid of polynomials `Pi^{ij}(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyBivector {
    n: usize,
    grid: Vec<Vec<MultiPoly>>,
}

impl PolyBivector {
    pub fn zero(n: usize) -> Self {
        PolyBivector { n, grid: vec![vec![MultiPoly::zero(); n]; n] }
    }

    /// Bivector from `(i, j, Pi^{ij})` triples with 0-based indices; `j < i`
    /// is read through skew-symmetry.
    pub fn from_entries(n: usize, entries: Vec<(usize, usize, MultiPoly)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (i, j, p) in entries {
            if i >= n || j >= n {
                return Err(JkError::Structural(format!(
                    "entry ({},{}) outside a {n}-dimensional space",
                    i + 1,
                    j + 1
                )));
            }
            if i == j {
                return Err(JkError::Structural(format!("diagonal entry ({},{}) of a bivector", i + 1, j + 1)));
            }
            p.check_nvars(n)?;
            if !out.grid[i][j].is_zero() {
                return Err(JkError::Structural(format!("entry ({},{}) given twice", i + 1, j + 1)));
            }
            out.set(i, j, p);
        }
        Ok(out)
    }

    pub fn constant(m: &RatMatrix) -> Result<Self> {
        if !m.is_skew() {
            return Err(JkError::Structural("constant bivector matrix is not skew-symmetric".into()));
        }
        let n = m.nrows();
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                out.set(i, j, MultiPoly::constant(m[(i, j)].clone()));
            }
        }
        Ok(out)
    }

    fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        self.grid[j][i] = -&p;
        self.grid[i][j] = p;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.grid[i][j]
    }

    /// Nonzero upper-triangular entries.
    pub fn entries(&self) -> Vec<(usize, usize, &MultiPoly)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.grid[i][j].is_zero() {
                    out.push((i, j, &self.grid[i][j]));
                }
            }
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.entries().iter().filter_map(|e| e.2.degree()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &PolyBivector) -> PolyBivector {
        self.zip(o, |x, y| x + y)
    }

    /// `self + f * o`.
    pub fn add_times(&self, f: &MultiPoly, o: &PolyBivector) -> PolyBivector {
        self.zip(o, |x, y| x + &(f * y))
    }

    fn zip(&self, o: &PolyBivector, op: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> PolyBivector {
        assert_eq!(self.n, o.n, "bivector dimension mismatch");
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.set(i, j, op(&self.grid[i][j], &o.grid[i][j]));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> RatMatrix {
        let rows = self.grid.iter().map(|r| r.iter().map(|p| p.eval(point)).collect()).collect();
        RatMatrix::from_rows(rows, self.n)
    }

    /// `(Pi w)^i = sum_j Pi^{ij} w_j` for a covector field `w`.
    pub fn apply(&self, w: &[MultiPoly]) -> Vec<MultiPoly> {
        self.grid.iter().map(|row| row.iter().zip(w).fold(MultiPoly::zero(), |acc, (p, q)| &acc + &(p * q))).collect()
    }

    /// `{f, g} = df^T Pi dg`.
    pub fn bracket(&self, f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
        let df = f.gradient(self.n);
        let pdg = self.apply(&g.gradient(self.n));
        df.iter().zip(&pdg).fold(MultiPoly::zero(), |acc, (a, b)| &acc + &(a * b))
    }

    /// Constant bivectors are exempt from the dimension limit: all their
    /// derivatives vanish.
    pub(crate) fn check_guardrails(&self, g: &Guardrails) -> Result<()> {
        if self.n > g.max_dim && self.degree() > 0 {
            return Err(JkError::Guardrail(format!("dimension {} exceeds the symbolic limit {}", self.n, g.max_dim)));
        }
        if self.degree() > g.max_degree {
            return Err(JkError::Guardrail(format!(
                "entry degree {} exceeds the symbolic limit {}",
                self.degree(),
                g.max_degree
            )));
        }
        Ok(())
    }
}

/// Totally skew 3-tensor, stored by its nonzero components `i < j < k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivector {
    pub n: usize,
    pub components: BTreeMap<(usize, usize, usize), MultiPoly>,
}

impl Trivector {
    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}

/// `[p, q]^{ijk} = sum_l (p^{li} d_l q^{jk} + q^{li} d_l p^{jk}) + cyclic`.
pub fn schouten_bracket(p: &PolyBivector, q: &PolyBivector) -> Result<Trivector> {
    schouten_bracket_with(p, q, &Guardrails::default())
}

pub fn schouten_bracket_with(p: &PolyBivector, q: &PolyBivector, g: &Guardrails) -> Result<Trivector> {
    let n = p.n();
    if q.n() != n {
        return Err(JkError::Structural(format!("bivectors on dimensions {n} and {}", q.n())));
    }
    p.check_guardrails(g)?;
    q.check_guardrails(g)?;
    // d[l][j][k] = d_l of entry (j, k)
    let derivs = |b: &PolyBivector| -> Vec<Vec<Vec<MultiPoly>>> {
        (0..n).map(|l| (0..n).map(|j| (0..n).map(|k| b.get(j, k).diff(l)).collect()).collect()).collect()
    };
    let (dp, dq) = (derivs(p), derivs(q));
    let half = |i: usize, j: usize, k: usize| {
        (0..n).fold(MultiPoly::zero(), |acc, l| &(&acc + &(p.get(l, i) * &dq[l][j][k])) + &(q.get(l, i) * &dp[l][j][k]))
    };
    let mut components = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let c = &(&half(i, j, k) + &half(j, k, i)) + &half(k, i, j);
                if !c.is_zero() {
                    components.insert((i, j, k), c);
                }
            }
        }
    }
    Ok(Trivector { n, components })
}

/// Jacobi identity, as the vanishing of `[p, p]`.
pub fn is_poisson(p: &PolyBivector) -> Result<bool> {
    Ok(schouten_bracket(p, p)?.is_zero())
}

pub fn is_compatible(p: &PolyBivector, q: &PolyBivector) -> Result<bool> {
    Ok(schouten_bracket(p, q)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    pub(crate) fn mp(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    pub(crate) fn so3() -> PolyBivector {
        PolyBivector::from_entries(3, vec![(0, 1, mp("x3")), (0, 2, mp("-x2")), (1, 2, mp("x1"))]).unwrap()
    }

    fn frozen() -> PolyBivector {
        PolyBivector::from_entries(3, vec![(0, 1, mp("1"))]).unwrap()
    }

    #[test]
    fn skew_storage() {
        let p = so3();
        assert_eq!(p.get(1, 0), &mp("-x3"));
        assert!(p.get(2, 2).is_zero());
        assert!(PolyBivector::from_entries(3, vec![(1, 1, mp("1"))]).is_err());
        assert!(PolyBivector::from_entries(2, vec![(0, 1, mp("x3"))]).is_err());
        let m = p.eval(&[rat(1), rat(2), rat(3)]);
        assert!(m.is_skew());
        assert_eq!(m[(0, 1)], rat(3));
    }

    #[test]
    fn jacobi_and_compatibility() {
        assert!(is_poisson(&so3()).unwrap());
        assert!(is_poisson(&frozen()).unwrap());
        assert!(is_compatible(&so3(), &frozen()).unwrap());
        let two = PolyBivector::from_entries(2, vec![(0, 1, mp("x1^3+x2"))]).unwrap();
        assert!(is_poisson(&two).unwrap());
    }

    #[test]
    fn broken_cubic() {
        let p = PolyBivector::from_entries(3, vec![(0, 1, mp("-1/2")), (1, 2, mp("x2+x3^3"))]).unwrap();
        let t = schouten_bracket(&p, &p).unwrap();
        assert_eq!(t.components.get(&(0, 1, 2)), Some(&mp("1")));
        assert!(!is_poisson(&p).unwrap());
    }

    #[test]
    fn guardrails() {
        let p = PolyBivector::from_entries(3, vec![(0, 1, mp("x1^5"))]).unwrap();
        assert!(matches!(is_poisson(&p), Err(JkError::Guardrail(_))));
        let g = Guardrails { max_degree: 5, ..Guardrails::default() };
        assert!(schouten_bracket_with(&p, &p, &g).unwrap().is_zero());
    }

    #[test]
    fn brackets() {
        assert_eq!(so3().bracket(&mp("x1"), &mp("x2")), mp("x3"));
        assert!(so3().bracket(&mp("x1^2+x2^2+x3^2"), &mp("x1*x2")).is_zero());
    }
}
