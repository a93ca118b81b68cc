//! Compatible pairs of polynomial Poisson brackets and their pointwise
//! evaluation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{JkError, Result};
use crate::exactalg::{ratio, MultiPoly, Rational};
use crate::pencil::{jk_invariants, ProjParam, SkewPencil};
use crate::poisson::bivector::{schouten_bracket_with, PolyBivector};
use crate::poisson::Guardrails;

/// Pencil `A + l*B` of compatible Poisson bivectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyPencil {
    a: PolyBivector,
    b: PolyBivector,
}

impl PolyPencil {
    pub fn new(a: PolyBivector, b: PolyBivector) -> Result<Self> {
        Self::with_guardrails(a, b, &Guardrails::default())
    }

    /// Validates Jacobi for both brackets and their compatibility.
    pub fn with_guardrails(a: PolyBivector, b: PolyBivector, g: &Guardrails) -> Result<Self> {
        if a.n() != b.n() {
            return Err(JkError::Structural(format!("brackets on dimensions {} and {}", a.n(), b.n())));
        }
        for (name, x, y) in [("A", &a, &a), ("B", &b, &b), ("A and B", &a, &b)] {
            let t = schouten_bracket_with(x, y, g)?;
            if let Some(((i, j, k), c)) = t.components.iter().next() {
                let what = if name.contains("and") { "are not compatible" } else { "is not Poisson" };
                return Err(JkError::Precondition(format!(
                    "{name} {what}: Schouten component ({},{},{}) = {c}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
        }
        Ok(PolyPencil { a, b })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn a(&self) -> &PolyBivector {
        &self.a
    }

    pub fn b(&self) -> &PolyBivector {
        &self.b
    }

    /// The bracket `A_l`.
    pub fn at(&self, l: &ProjParam) -> PolyBivector {
        match l {
            ProjParam::Finite(x) => self.a.add_times(&MultiPoly::constant(x.clone()), &self.b),
            ProjParam::Infinity => self.b.clone(),
        }
    }

    pub fn eval_at(&self, point: &[Rational]) -> Result<SkewPencil> {
        self.check_point(point)?;
        SkewPencil::new(self.a.eval(point), self.b.eval(point))
    }

    pub(crate) fn check_point(&self, point: &[Rational]) -> Result<()> {
        if point.len() != self.n() {
            return Err(JkError::Structural(format!("point has {} coordinates, expected {}", point.len(), self.n())));
        }
        Ok(())
    }
}

/// `{f, g}_l = df^T (A + l B) dg`.
pub fn bracket_fn(p: &PolyPencil, f: &MultiPoly, g: &MultiPoly, l: &ProjParam) -> MultiPoly {
    p.at(l).bracket(f, g)
}

/// Both coefficients `({f,g}_A, {f,g}_B)` of the bracket as a polynomial in `l`.
pub fn bracket_fn_symbolic(p: &PolyPencil, f: &MultiPoly, g: &MultiPoly) -> (MultiPoly, MultiPoly) {
    (p.a.bracket(f, g), p.b.bracket(f, g))
}

/// `(A + l B) df = 0` identically.
pub fn is_casimir(p: &PolyPencil, f: &MultiPoly, l: &ProjParam) -> bool {
    p.at(l).apply(&f.gradient(p.n())).iter().all(MultiPoly::is_zero)
}

/// The bracket `A + f B` for a common Casimir `f`.
pub fn casimir_shift(p: &PolyPencil, f: &MultiPoly) -> Result<PolyBivector> {
    for (name, l) in [("A", ProjParam::int(0)), ("B", ProjParam::Infinity)] {
        if !is_casimir(p, f, &l) {
            return Err(JkError::Precondition(format!("{f} is not a Casimir of {name}")));
        }
    }
    let shifted = p.a.add_times(f, &p.b);
    PolyPencil::new(shifted.clone(), p.b.clone())?;
    PolyPencil::new(shifted.clone(), p.a.clone())?;
    Ok(shifted)
}

/// Outcome of comparing the Jordan-Kronecker type at a point with the type
/// at nearby rational points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityProbe {
    pub pattern: (Vec<usize>, Vec<Vec<usize>>),
    /// Same type at every perturbation. A probe, not a proof of regularity.
    pub stable: bool,
}

pub const PROBE_PERTURBATIONS: usize = 6;

fn perturbation(k: usize, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|i| {
            let d = ((k + 1) * (i + 2) + k) % 5;
            ratio(d as i64 - 2, 1000 * (k as i64 + 1))
        })
        .collect()
}

pub fn jk_regularity_probe(p: &PolyPencil, point: &[Rational]) -> Result<RegularityProbe> {
    let pattern = jk_invariants(&p.eval_at(point)?)?.pattern();
    let mut stable = true;
    for k in 0..PROBE_PERTURBATIONS {
        let q: Vec<Rational> = point.iter().zip(perturbation(k, point.len())).map(|(x, d)| x + d).collect();
        if jk_invariants(&p.eval_at(&q)?)?.pattern() != pattern {
            stable = false;
            break;
        }
    }
    Ok(RegularityProbe { pattern, stable })
}

/// `count` deterministic integer points with coordinates in `[-5, 5]` that
/// pass the regularity probe.
pub fn generate_points(p: &PolyPencil, count: usize, seed: u64) -> Result<Vec<Vec<Rational>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let limit = 50 * count.max(1);
    let mut tries = 0;
    while out.len() < count {
        if tries == limit {
            return Err(JkError::Precondition(format!("found only {} of {count} regular sample points", out.len())));
        }
        tries += 1;
        let pt: Vec<Rational> = (0..p.n()).map(|_| Rational::from_integer(rng.gen_range(-5i64..=5).into())).collect();
        if jk_regularity_probe(p, &pt)?.stable {
            out.push(pt);
        }
    }
    Ok(out)
}

/// Runs `f` on every point in parallel, keeping point order.
pub(crate) fn per_point<T: Send>(
    points: &[Vec<Rational>],
    f: impl Fn(&[Rational]) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    points.par_iter().map(|x| f(x)).collect()
}

pub(crate) fn is_zero_vec(v: &[MultiPoly]) -> bool {
    v.iter().all(|p| p.is_zero())
}

pub(crate) fn eval_vec(v: &[MultiPoly], x: &[Rational]) -> Vec<Rational> {
    v.iter().map(|p| p.eval(x)).collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exactalg::{rat, RatMatrix};
    use crate::pencil::{eigenvalue_set, Eigen};

    pub(crate) fn mp(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    pub(crate) fn so3_shift() -> PolyPencil {
        let a = PolyBivector::from_entries(3, vec![(0, 1, mp("x3")), (0, 2, mp("-x2")), (1, 2, mp("x1"))]).unwrap();
        let b = PolyBivector::from_entries(3, vec![(0, 1, mp("1"))]).unwrap();
        PolyPencil::new(a, b).unwrap()
    }

    pub(crate) fn plane() -> PolyPencil {
        let a = PolyBivector::from_entries(2, vec![(0, 1, mp("x1"))]).unwrap();
        let b = PolyBivector::from_entries(2, vec![(0, 1, mp("1"))]).unwrap();
        PolyPencil::new(a, b).unwrap()
    }

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rejects_incompatible_pairs() {
        let a = PolyBivector::from_entries(3, vec![(0, 1, mp("x3"))]).unwrap();
        let b = PolyBivector::from_entries(3, vec![(1, 2, mp("x2"))]).unwrap();
        let err = PolyPencil::new(a, b).unwrap_err();
        assert!(err.to_string().contains("not compatible"), "{err}");
    }

    #[test]
    fn brackets_and_casimirs() {
        let p = so3_shift();
        assert_eq!(bracket_fn(&p, &mp("x1"), &mp("x2"), &ProjParam::int(0)), mp("x3"));
        assert!(bracket_fn(&p, &mp("x1"), &mp("x1"), &ProjParam::int(5)).is_zero());
        let (fa, fb) = bracket_fn_symbolic(&p, &mp("x1^2+x2^2+x3^2"), &mp("x3"));
        assert!(fa.is_zero() && fb.is_zero());
        assert!(is_casimir(&p, &mp("x1^2+x2^2+x3^2"), &ProjParam::int(0)));
        assert!(is_casimir(&p, &mp("x3"), &ProjParam::Infinity));
        assert!(!is_casimir(&p, &mp("x1"), &ProjParam::int(0)));
    }

    #[test]
    fn shifts() {
        let p = plane();
        assert_eq!(casimir_shift(&p, &MultiPoly::zero()).unwrap(), *p.a());
        assert_eq!(casimir_shift(&p, &mp("1")).unwrap(), p.a().add(p.b()));
        let s = casimir_shift(&p, &mp("5")).unwrap();
        let q = PolyPencil::new(s, p.b().clone()).unwrap();
        let e = eigenvalue_set(&q.eval_at(&pt(&[3, 7])).unwrap()).unwrap();
        assert_eq!(e.eigenvalues, vec![Eigen::Finite(rat(8))]);
        assert!(matches!(casimir_shift(&p, &mp("x1")), Err(JkError::Precondition(_))));
    }

    #[test]
    fn pointwise() {
        let p = plane();
        let x = p.eval_at(&pt(&[3, 7])).unwrap();
        assert_eq!(x.a(), &RatMatrix::from_i64(&[vec![0, 3], vec![-3, 0]]));
        assert_eq!(eigenvalue_set(&x).unwrap().eigenvalues, vec![Eigen::Finite(rat(3))]);
        let inv = jk_invariants(&so3_shift().eval_at(&pt(&[1, 0, 0])).unwrap()).unwrap();
        assert_eq!((inv.rank, inv.kronecker.clone()), (2, vec![2]));
        assert!(so3_shift().eval_at(&pt(&[0, 0, 0])).unwrap().a().is_zero());
        assert!(p.eval_at(&pt(&[1])).is_err());
    }

    #[test]
    fn probe_and_points() {
        let p = so3_shift();
        assert!(jk_regularity_probe(&p, &pt(&[1, 2, 3])).unwrap().stable);
        assert!(!jk_regularity_probe(&p, &pt(&[0, 0, 0])).unwrap().stable);
        let a = generate_points(&p, 5, 7).unwrap();
        assert_eq!(a, generate_points(&p, 5, 7).unwrap());
        assert_eq!(a.len(), 5);
    }
}
