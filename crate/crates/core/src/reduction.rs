//! Linear bi-Poisson reduction to `U_perp / U`, bi-Lagrangian projection,
//! eigenvector heights, the completion loop and the tangency obstruction.

use num_traits::{One, Zero};

use crate::error::{JkError, Result};
use crate::exactalg::polymatrix::linear_rank;
use crate::exactalg::{RatMatrix, Rational};
use crate::pencil::{eigenvalue_set, pencil_rank, Eigen, EigenvalueSet, ProjParam, SkewPencil};
use crate::subspaces::{core_subspace, first_regular, is_admissible, is_bi_isotropic, is_bi_lagrangian, Subspace};

/// Induced pencil on `U_perp / U` with the data to move vectors between the
/// two spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPencil {
    pub reduced: SkewPencil,
    /// Rows are representatives in `U_perp` of the reduced basis vectors.
    pub lift: RatMatrix,
    /// Basis of `U_perp`: the RREF basis of `U` followed by the rows of `lift`.
    pub projection: RatMatrix,
    pub u: Subspace,
    pub u_perp: Subspace,
    original: SkewPencil,
}

impl ReducedPencil {
    pub fn original(&self) -> &SkewPencil {
        &self.original
    }

    /// Original-space vector for reduced coordinates `x`.
    pub fn lift_vector(&self, x: &[Rational]) -> Vec<Rational> {
        self.lift.transpose().mul_vec(x)
    }

    /// Reduced coordinates of `v` in `U_perp`, or `None` outside it.
    pub fn project_vector(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let c = self.projection.transpose().solve(v)?;
        Some(c[self.u.dim()..].to_vec())
    }
}

pub fn bi_poisson_reduce(p: &SkewPencil, u: &Subspace) -> Result<ReducedPencil> {
    let r = reduce_admissible(p, u)?;
    if u.contains(&core_subspace(p)?) {
        check_spectrum(&r, &eigenvalue_set(p)?)?;
    }
    Ok(r)
}

fn reduce_admissible(p: &SkewPencil, u: &Subspace) -> Result<ReducedPencil> {
    if u.ambient() != p.n() {
        return Err(JkError::Structural(format!(
            "subspace lives in dimension {} but the pencil has n = {}",
            u.ambient(),
            p.n()
        )));
    }
    if !is_bi_isotropic(p, u) {
        return Err(JkError::Precondition("subspace is not bi-isotropic".into()));
    }
    let report = is_admissible(p, u)?;
    let u_perp = report.common_complement.ok_or_else(|| JkError::Precondition("subspace is not admissible".into()))?;
    reduce_with(p, u, u_perp)
}

fn reduce_with(p: &SkewPencil, u: &Subspace, u_perp: Subspace) -> Result<ReducedPencil> {
    if !u_perp.contains(u) {
        return Err(JkError::Internal("common complement does not contain the subspace".into()));
    }
    let ub = u.basis();
    let upt = u_perp.basis().transpose();
    if !ub.mul(p.a()).mul(&upt).is_zero() || !ub.mul(p.b()).mul(&upt).is_zero() {
        return Err(JkError::Internal("induced forms are not well defined".into()));
    }
    let mut span = u.clone();
    let mut extra = Vec::new();
    for w in u_perp.vectors() {
        if !span.contains_vector(&w) {
            span = span.with_vector(&w);
            extra.push(w);
        }
    }
    let n = p.n();
    let lift = RatMatrix::from_rows(extra, n);
    let lt = lift.transpose();
    let reduced = SkewPencil::new(lift.mul(p.a()).mul(&lt), lift.mul(p.b()).mul(&lt))?;
    Ok(ReducedPencil { reduced, projection: ub.vstack(&lift), lift, u: u.clone(), u_perp, original: p.clone() })
}

/// With the core factored out the quotient is nondegenerate and its
/// eigenvalues are among `eigs`, those of the original pencil.
fn check_spectrum(r: &ReducedPencil, eigs: &EigenvalueSet) -> Result<EigenvalueSet> {
    let m = r.reduced.n();
    if pencil_rank(&r.reduced) != m {
        return Err(JkError::Internal("reduced pencil is degenerate although the core was factored out".into()));
    }
    let reduced = eigenvalue_set(&r.reduced)?;
    if !reduced.is_subset_of(eigs) {
        return Err(JkError::Internal("reduced pencil has an eigenvalue the original lacks".into()));
    }
    Ok(reduced)
}

/// Image `((L ∩ U_perp) + U) / U` of `l` in the reduced space.
pub fn project_bilagrangian(r: &ReducedPencil, l: &Subspace) -> Result<Subspace> {
    let p = r.original();
    if !is_bi_isotropic(p, l) {
        return Err(JkError::Precondition("subspace is not bi-isotropic".into()));
    }
    let m = r.reduced.n();
    let coords = l
        .intersection(&r.u_perp)
        .vectors()
        .iter()
        .map(|v| r.project_vector(v).ok_or_else(|| JkError::Internal("vector left U_perp".into())))
        .collect::<Result<Vec<_>>>()?;
    let image = Subspace::span(m, coords);
    if !is_bi_isotropic(&r.reduced, &image) {
        return Err(JkError::Internal("projection is not bi-isotropic".into()));
    }
    if is_bi_lagrangian(p, l) && !is_bi_lagrangian(&r.reduced, &image) {
        return Err(JkError::Internal("projection of a bi-Lagrangian subspace is not bi-Lagrangian".into()));
    }
    Ok(image)
}

/// Eigenvectors at `eig` with their heights: the length of the longest Jordan
/// chain of the recursion operator ending at the vector. Ordered by height,
/// then RREF order within a level.
pub fn eigenvector_heights(p: &SkewPencil, eig: &Eigen) -> Result<Vec<(Vec<Rational>, usize)>> {
    let e = eig.as_param().ok_or_else(|| JkError::NonRational(format!("eigenvalue {eig} is not rational")))?;
    let n = p.n();
    if pencil_rank(p) != n {
        return Err(JkError::Precondition("pencil is degenerate".into()));
    }
    let c = first_regular(p);
    let ProjParam::Finite(cv) = &c else { unreachable!("first_regular is finite") };
    let t = p.at(&c).inverse().expect("regular form is invertible").mul(p.b());
    let tau = match &e {
        ProjParam::Finite(x) => Rational::one() / (cv + x),
        ProjParam::Infinity => Rational::zero(),
    };
    let shift = t.add_scaled(&-tau, &RatMatrix::identity(n));
    let ker = Subspace::from_rows(&shift.kernel());
    if ker.is_zero() {
        return Err(JkError::Precondition(format!("{eig} is not an eigenvalue")));
    }
    // levels[j] = Ker ∩ Im(shift^j)
    let mut levels = vec![ker.clone()];
    let mut power = shift.clone();
    loop {
        let lvl = ker.intersection(&Subspace::image_of(&power));
        if lvl.is_zero() {
            break;
        }
        levels.push(lvl);
        power = power.mul(&shift);
    }
    let mut span = Subspace::zero(n);
    let mut out = Vec::with_capacity(ker.dim());
    for (j, lvl) in levels.iter().enumerate().rev() {
        let mut here = Vec::new();
        for v in lvl.vectors() {
            if !span.contains_vector(&v) {
                span = span.with_vector(&v);
                here.push((v, j + 1));
            }
        }
        out.push(here);
    }
    Ok(out.into_iter().rev().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionStep {
    pub eigenvalue: Eigen,
    pub height: usize,
    /// Added generator in the original space.
    pub vector: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionTrace {
    pub steps: Vec<CompletionStep>,
    pub result: Subspace,
}

/// Extend `l0` to a bi-Lagrangian subspace by repeatedly reducing and
/// adjoining a lifted minimal-height eigenvector of the smallest eigenvalue.
pub fn bilagrangian_completion(p: &SkewPencil, l0: &Subspace) -> Result<CompletionTrace> {
    let core = core_subspace(p)?;
    if l0.ambient() != p.n() {
        return Err(JkError::Structural(format!(
            "subspace lives in dimension {} but the pencil has n = {}",
            l0.ambient(),
            p.n()
        )));
    }
    if !l0.contains(&core) {
        return Err(JkError::Precondition("subspace does not contain the core".into()));
    }
    let original = eigenvalue_set(p)?;
    let mut l = l0.clone();
    let mut steps = Vec::new();
    let mut last_dim = None;
    loop {
        let r = reduce_admissible(p, &l)?;
        let eigs = check_spectrum(&r, &original)?;
        let m = r.reduced.n();
        if let Some(prev) = last_dim {
            if m + 2 != prev {
                return Err(JkError::Internal(format!("reduced dimension went from {prev} to {m}")));
            }
        }
        if m == 0 {
            break;
        }
        last_dim = Some(m);
        if let Some(cls) = eigs.classes().first() {
            return Err(JkError::NonRational(format!("reduced pencil has eigenvalues that are roots of {cls}")));
        }
        let eig = eigs.eigenvalues[0].clone();
        let (v, height) = eigenvector_heights(&r.reduced, &eig)?.remove(0);
        let lifted = r.lift_vector(&v);
        l = l.with_vector(&lifted);
        steps.push(CompletionStep { eigenvalue: eig, height, vector: lifted });
    }
    if !is_bi_lagrangian(p, &l) {
        return Err(JkError::Internal("completion result is not bi-Lagrangian".into()));
    }
    Ok(CompletionTrace { steps, result: l })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionVerdict {
    /// `v` lies in the image of `A + l*B` over the rational function field.
    pub pass: bool,
    pub rank: usize,
    pub augmented_rank: usize,
    pub samples: Vec<(ProjParam, bool)>,
}

pub fn default_obstruction_samples() -> Vec<ProjParam> {
    vec![ProjParam::int(0), ProjParam::int(1), ProjParam::int(2), ProjParam::Infinity]
}

pub fn obstruction_check(p: &SkewPencil, v: &[Rational]) -> Result<ObstructionVerdict> {
    obstruction_check_at(p, v, &default_obstruction_samples())
}

/// Whether `v` lies in the image of every generic form `A_l`.
pub fn obstruction_check_at(p: &SkewPencil, v: &[Rational], samples: &[ProjParam]) -> Result<ObstructionVerdict> {
    let n = p.n();
    if v.len() != n {
        return Err(JkError::Structural(format!("vector has length {}, expected {n}", v.len())));
    }
    let col = RatMatrix::from_rows(v.iter().map(|x| vec![x.clone()]).collect(), 1);
    let zero = RatMatrix::zeros(n, 1);
    let rank = pencil_rank(p);
    let augmented_rank = linear_rank(&p.a().hstack(&col), &p.b().hstack(&zero));
    let samples = samples
        .iter()
        .map(|l| {
            let f = p.at(l);
            let ok = f.hstack(&col).rank() == f.rank();
            (l.clone(), ok)
        })
        .collect();
    Ok(ObstructionVerdict { pass: rank == augmented_rank, rank, augmented_rank, samples })
}
