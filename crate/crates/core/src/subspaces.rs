//! Subspaces of the ambient space of a pencil, skew-orthogonal complements,
//! core and mantle, and the bi-isotropic / bi-Lagrangian / admissible
//! predicates.
//!
//! For a form `A_l` the complement of `U` is `{v : A_l(u, v) = 0 for u in U}`,
//! the null space of `U_basis * A_l`. "Almost all parameters" is realised by
//! `n + 1` regular finite samples plus infinity when it is regular; the
//! symbolic rank over Q(l) fixes the expected generic dimension.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{JkError, Result};
use crate::exactalg::polymatrix::linear_rank;
use crate::exactalg::{RatMatrix, Rational};
use crate::pencil::{eigenvalue_set, pencil_rank, Eigen, ProjParam, SkewPencil};

/// Row space of a matrix kept in reduced row echelon form, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: RatMatrix,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: Vec<Vec<Rational>>) -> Self {
        Self::from_rows(&RatMatrix::from_rows(vectors, ambient))
    }

    pub fn from_rows(m: &RatMatrix) -> Self {
        Subspace { ambient: m.ncols(), basis: m.rref().0 }
    }

    /// Column space of `m`.
    pub fn image_of(m: &RatMatrix) -> Self {
        Self::from_rows(&m.transpose())
    }

    pub fn zero(n: usize) -> Self {
        Subspace { ambient: n, basis: RatMatrix::zeros(0, n) }
    }

    pub fn whole(n: usize) -> Self {
        Subspace { ambient: n, basis: RatMatrix::identity(n) }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![Rational::zero(); n];
        v[i] = crate::exactalg::rat(1);
        Self::span(n, vec![v])
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.rows_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.ambient, o.ambient, "ambient dimension mismatch");
        Self::from_rows(&self.basis.vstack(&o.basis))
    }

    pub fn with_vector(&self, v: &[Rational]) -> Subspace {
        self.sum(&Subspace::span(self.ambient, vec![v.to_vec()]))
    }

    /// `{x : <u, x> = 0 for all u}` under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::whole(self.ambient);
        }
        Subspace { ambient: self.ambient, basis: self.basis.kernel() }
    }

    pub fn intersection(&self, o: &Subspace) -> Subspace {
        self.annihilator().sum(&o.annihilator()).annihilator()
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        self.with_vector(v).dim() == self.dim()
    }

    pub fn contains(&self, o: &Subspace) -> bool {
        self.sum(o).dim() == self.dim()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace({}; {:?})", self.ambient, self.basis.to_strings())
    }
}

fn check_ambient(p: &SkewPencil, u: &Subspace) -> Result<()> {
    if u.ambient() != p.n() {
        return Err(JkError::Structural(format!(
            "subspace lives in dimension {} but the pencil has n = {}",
            u.ambient(),
            p.n()
        )));
    }
    Ok(())
}

/// Skew-orthogonal complement of `u` with respect to `A_l`.
pub fn complement_at(p: &SkewPencil, u: &Subspace, l: &ProjParam) -> Subspace {
    complement_wrt(&p.at(l), u)
}

fn complement_wrt(form: &RatMatrix, u: &Subspace) -> Subspace {
    if u.dim() == 0 {
        return Subspace::whole(form.nrows());
    }
    Subspace { ambient: form.nrows(), basis: u.basis().mul(form).kernel() }
}

fn generic_samples(p: &SkewPencil) -> Vec<ProjParam> {
    p.regular_samples(p.n() + 1, true)
}

/// Sum of the kernels of all regular forms.
pub fn core_subspace(p: &SkewPencil) -> Result<Subspace> {
    let n = p.n();
    let samples = p.regular_samples(n + 2, true);
    let (extra, used): (Vec<_>, Vec<_>) = samples.into_iter().enumerate().partition(|(i, _)| *i == n + 1);
    let mut k = Subspace::zero(n);
    for (_, l) in &used {
        k = k.sum(&Subspace::from_rows(&p.at(l).kernel()));
    }
    let bigger = k.sum(&Subspace::from_rows(&p.at(&extra[0].1).kernel()));
    if bigger.dim() != k.dim() {
        return Err(JkError::Internal("core subspace did not stabilise".into()));
    }
    Ok(k)
}

/// First nonnegative integer `c` with `A + c*B` regular.
pub(crate) fn first_regular(p: &SkewPencil) -> ProjParam {
    p.regular_samples(1, false).remove(0)
}

/// Complement of the core with respect to a regular form.
pub fn mantle_subspace(p: &SkewPencil) -> Result<Subspace> {
    let k = core_subspace(p)?;
    let samples = p.regular_samples(3, false);
    let m = complement_at(p, &k, &samples[0]);
    for l in &samples[1..] {
        if complement_at(p, &k, l) != m {
            return Err(JkError::Internal(format!("mantle depends on the regular form (at {l})")));
        }
    }
    Ok(m)
}

/// `U^T A U = 0` and `U^T B U = 0`.
pub fn is_bi_isotropic(p: &SkewPencil, u: &Subspace) -> bool {
    let ub = u.basis();
    let ut = ub.transpose();
    ub.mul(p.a()).mul(&ut).is_zero() && ub.mul(p.b()).mul(&ut).is_zero()
}

/// Bi-isotropic of dimension `n - rk/2`.
pub fn is_bi_lagrangian(p: &SkewPencil, u: &Subspace) -> bool {
    u.dim() == p.n() - pencil_rank(p) / 2 && is_bi_isotropic(p, u)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityWitness {
    pub first: ProjParam,
    pub second: ProjParam,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// Generic dimension `n - rank_{Q(l)}(U (A + l B))`.
    pub generic_dim: usize,
    pub common_complement: Option<Subspace>,
    pub witness: Option<AdmissibilityWitness>,
    /// With `B` nondegenerate: whether `U` is invariant under `B^{-1} A`.
    pub recursion_invariant: Option<bool>,
}

pub fn is_admissible(p: &SkewPencil, u: &Subspace) -> Result<AdmissibilityReport> {
    check_ambient(p, u)?;
    let n = p.n();
    let ub = u.basis();
    let generic_rank = if u.dim() == 0 { 0 } else { linear_rank(&ub.mul(p.a()), &ub.mul(p.b())) };
    let generic_dim = n - generic_rank;
    // Complements at two distinct parameters already cut out Ker UA ∩ Ker UB,
    // the common complement of every form.
    let inter = if u.dim() == 0 {
        Subspace::whole(n)
    } else {
        Subspace { ambient: n, basis: ub.mul(p.a()).vstack(&ub.mul(p.b())).kernel() }
    };
    let admissible = inter.dim() == generic_dim;
    let witness = if admissible {
        None
    } else {
        let samples = generic_samples(p);
        let first = complement_at(p, u, &samples[0]);
        let second = samples[1..]
            .iter()
            .find(|l| complement_at(p, u, l) != first)
            .ok_or_else(|| JkError::Internal("sampled complements agree but their dimension is not generic".into()))?;
        Some(AdmissibilityWitness { first: samples[0].clone(), second: second.clone() })
    };
    let recursion_invariant = p.b().inverse().map(|binv| {
        let q = binv.mul(p.a());
        (0..u.dim()).all(|i| u.contains_vector(&q.mul_vec(u.basis().row_slice(i))))
    });
    if let Some(inv) = recursion_invariant {
        if inv != admissible {
            return Err(JkError::Internal(format!(
                "admissibility ({admissible}) disagrees with recursion-operator invariance ({inv})"
            )));
        }
    }
    Ok(AdmissibilityReport {
        admissible,
        generic_dim,
        common_complement: admissible.then_some(inter),
        witness,
        recursion_invariant,
    })
}

/// `K + span{v_i}` for vectors `v_i` in `Ker(A + mu_i B)` at distinct `mu_i`.
pub fn kernel_sum_subspace(p: &SkewPencil, pairs: &[(ProjParam, Vec<Rational>)]) -> Result<Subspace> {
    let n = p.n();
    for (i, (mu, v)) in pairs.iter().enumerate() {
        if v.len() != n {
            return Err(JkError::Structural(format!("vector {i} has length {}, expected {n}", v.len())));
        }
        if pairs[..i].iter().any(|(m, _)| m == mu) {
            return Err(JkError::Precondition(format!("parameter {mu} repeated at position {i}")));
        }
        if p.at(mu).mul_vec(v).iter().any(|x| !x.is_zero()) {
            return Err(JkError::Precondition(format!("vector {i} is not in the kernel of A + ({mu})B")));
        }
    }
    let mut u = core_subspace(p)?;
    for (_, v) in pairs {
        u = u.with_vector(v);
    }
    if !is_bi_isotropic(p, &u) || !is_admissible(p, &u)?.admissible {
        return Err(JkError::Internal("kernel-sum subspace is not bi-isotropic and admissible".into()));
    }
    Ok(u)
}

/// `K + span{v_l}` where `A_l v_l = beta` at regular parameters.
pub fn hamiltonian_preimage_span(p: &SkewPencil, beta: &[Rational], samples: usize) -> Result<Subspace> {
    let n = p.n();
    if beta.len() != n {
        return Err(JkError::Structural(format!("covector has length {}, expected {n}", beta.len())));
    }
    let mut w = core_subspace(p)?;
    let params = p.regular_samples(samples.max(1) + n + 1, true);
    let mut order = Vec::with_capacity(params.len());
    if params.last() == Some(&ProjParam::Infinity) {
        order.push(ProjParam::Infinity);
    }
    order.extend(params.into_iter().filter(|l| !l.is_infinite()));
    for (used, l) in order.iter().enumerate() {
        let v = p
            .at(l)
            .solve(beta)
            .ok_or_else(|| JkError::Precondition(format!("covector is not in the image of A + ({l})B")))?;
        let next = w.with_vector(&v);
        let grew = next.dim() > w.dim();
        w = next;
        if used + 1 >= samples && !grew {
            break;
        }
    }
    if !is_admissible(p, &w)?.admissible {
        return Err(JkError::Internal("Hamiltonian preimage span is not admissible".into()));
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorReport {
    /// `K^0` equals the intersection of the images of regular forms.
    pub core_annihilator: bool,
    /// `L^0` lies in that intersection for the completed bi-Lagrangian `L`;
    /// `None` when no rational completion exists.
    pub lagrangian_annihilator: Option<bool>,
    /// `A_a^{-1}(K^0)` lies in the mantle, checked at the listed parameters.
    pub preimage_in_mantle: bool,
    pub checked_params: Vec<ProjParam>,
}

impl AnnihilatorReport {
    pub fn all_pass(&self) -> bool {
        self.core_annihilator && self.lagrangian_annihilator != Some(false) && self.preimage_in_mantle
    }
}

pub fn annihilator_checks(p: &SkewPencil) -> Result<AnnihilatorReport> {
    let n = p.n();
    let k = core_subspace(p)?;
    let m = mantle_subspace(p)?;
    let k0 = k.annihilator();
    let images = generic_samples(p)
        .iter()
        .map(|l| Subspace::image_of(&p.at(l)))
        .fold(Subspace::whole(n), |acc, im| acc.intersection(&im));
    let core_annihilator = k0 == images;
    let lagrangian_annihilator = match crate::reduction::bilagrangian_completion(p, &k) {
        Ok(trace) => Some(images.contains(&trace.result.annihilator())),
        Err(JkError::NonRational(_)) => None,
        Err(e) => return Err(e),
    };
    let mut params = vec![ProjParam::int(0), ProjParam::int(1), ProjParam::int(2), ProjParam::Infinity];
    for e in eigenvalue_set(p)?.eigenvalues {
        if let Eigen::Finite(r) = e {
            let s = ProjParam::Finite(-r);
            if !params.contains(&s) {
                params.push(s);
            }
        }
    }
    let preimage_in_mantle = params.iter().all(|a| m.contains(&complement_at(p, &k, a)));
    Ok(AnnihilatorReport { core_annihilator, lagrangian_annihilator, preimage_in_mantle, checked_params: params })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::pencil::{build_jordan_block, build_kronecker_block, direct_sum};

    fn e(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![rat(0); n];
        v[i] = rat(1);
        v
    }

    fn span_units(n: usize, idx: &[usize]) -> Subspace {
        Subspace::span(n, idx.iter().map(|&i| e(n, i)).collect())
    }

    fn k3() -> SkewPencil {
        build_kronecker_block(3).unwrap()
    }

    fn j24() -> SkewPencil {
        build_jordan_block(&ProjParam::int(2), 2).unwrap()
    }

    #[test]
    fn subspace_algebra() {
        let a = span_units(4, &[0, 1]);
        let b = span_units(4, &[1, 2]);
        assert_eq!(a.intersection(&b), span_units(4, &[1]));
        assert_eq!(a.sum(&b).dim(), 3);
        assert_eq!(a.annihilator(), span_units(4, &[2, 3]));
        assert!(a.contains(&span_units(4, &[0])));
    }

    #[test]
    fn complements() {
        let p = j24();
        assert!(complement_at(&p, &Subspace::whole(4), &ProjParam::int(0)).is_zero());
        assert_eq!(complement_at(&p, &Subspace::zero(4), &ProjParam::int(0)), Subspace::whole(4));
        let c = complement_at(&k3(), &span_units(5, &[2, 3, 4]), &ProjParam::int(0));
        assert_eq!(c.dim(), 3);
        assert!(c.contains_vector(&e(5, 4)));
        assert_eq!(c, span_units(5, &[2, 3, 4]));
    }

    #[test]
    fn core_and_mantle() {
        assert_eq!(core_subspace(&k3()).unwrap(), span_units(5, &[2, 3, 4]));
        assert_eq!(mantle_subspace(&k3()).unwrap(), span_units(5, &[2, 3, 4]));
        assert!(core_subspace(&j24()).unwrap().is_zero());
        assert_eq!(mantle_subspace(&j24()).unwrap(), Subspace::whole(4));
        assert_eq!(core_subspace(&SkewPencil::zero(2)).unwrap(), Subspace::whole(2));
        let p = direct_sum(&[j24(), build_kronecker_block(1).unwrap()]);
        assert_eq!(mantle_subspace(&p).unwrap(), Subspace::whole(5));
        assert_eq!(core_subspace(&p).unwrap(), span_units(5, &[4]));
    }

    #[test]
    fn isotropy() {
        let u = span_units(5, &[2, 3, 4]);
        assert!(is_bi_isotropic(&k3(), &u));
        assert!(is_bi_lagrangian(&k3(), &u));
        assert!(!is_bi_isotropic(&k3(), &Subspace::whole(5)));
        assert!(is_bi_isotropic(&k3(), &span_units(5, &[0])));
    }

    #[test]
    fn admissibility() {
        let p = k3();
        let r = is_admissible(&p, &mantle_subspace(&p).unwrap()).unwrap();
        assert!(r.admissible);
        let r = is_admissible(&p, &span_units(5, &[0])).unwrap();
        assert!(!r.admissible);
        let w = r.witness.unwrap();
        assert_ne!(
            complement_at(&p, &span_units(5, &[0]), &w.first),
            complement_at(&p, &span_units(5, &[0]), &w.second)
        );
        // P-invariance cross-check on a nondegenerate pencil.
        let j = j24();
        let r = is_admissible(&j, &span_units(4, &[2])).unwrap();
        assert_eq!(r.recursion_invariant, Some(r.admissible));
        assert!(r.admissible);
        let r = is_admissible(&j, &span_units(4, &[3])).unwrap();
        assert!(!r.admissible);
        // Basis change (A + B, B) keeps admissibility.
        assert!(is_admissible(&j.shifted(&rat(1)), &span_units(4, &[2])).unwrap().admissible);
    }

    #[test]
    fn kernel_sums() {
        let p = k3();
        assert_eq!(kernel_sum_subspace(&p, &[]).unwrap(), core_subspace(&p).unwrap());
        let u = kernel_sum_subspace(&p, &[(ProjParam::int(0), e(5, 4))]).unwrap();
        assert_eq!(u, span_units(5, &[2, 3, 4]));
        let j = j24();
        let u = kernel_sum_subspace(&j, &[(ProjParam::int(-2), e(4, 2))]).unwrap();
        assert_eq!(u, span_units(4, &[2]));
        assert!(matches!(kernel_sum_subspace(&j, &[(ProjParam::int(-2), e(4, 3))]), Err(JkError::Precondition(_))));
    }

    #[test]
    fn hamiltonian_preimages() {
        let p = k3();
        assert_eq!(hamiltonian_preimage_span(&p, &vec![rat(0); 5], 3).unwrap(), core_subspace(&p).unwrap());
        let err = hamiltonian_preimage_span(&p, &e(5, 3), 3).unwrap_err();
        assert!(err.to_string().contains("A + (1)B"), "{err}");
        let j = j24();
        let beta = j.a().row(0);
        let w = hamiltonian_preimage_span(&j, &beta, 3).unwrap();
        assert!(w.dim() >= 1);
        assert!(is_admissible(&j, &w).unwrap().admissible);
    }

    #[test]
    fn annihilators() {
        let r = annihilator_checks(&k3()).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.lagrangian_annihilator, Some(true));
        assert!(annihilator_checks(&j24()).unwrap().all_pass());
    }
}
