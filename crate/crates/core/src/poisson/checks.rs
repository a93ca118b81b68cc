//! Reports on eigenvalue fields, bi-involution, completeness, bi-Hamiltonian
//! vector fields and families of standard integrals.

use crate::error::{JkError, Result};
use crate::exactalg::{MultiPoly, Rational};
use crate::pencil::{eigenvalue_set, pencil_rank, ProjParam};
use crate::poisson::family::{BiHamSystem, FunctionFamily, Role};
use crate::poisson::pencil::{eval_vec, is_casimir, is_zero_vec, jk_regularity_probe, per_point, PolyPencil};
use crate::reduction::{bilagrangian_completion, obstruction_check};
use crate::subspaces::{core_subspace, is_admissible, is_bi_isotropic, is_bi_lagrangian, Subspace};

fn format_point(x: &[Rational]) -> String {
    let parts: Vec<String> = x.iter().map(crate::exactalg::format_rational).collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigendiffReport {
    /// `(A - l B) dl` vanishes as a polynomial identity.
    pub symbolic: bool,
    pub points: Vec<bool>,
}

impl EigendiffReport {
    pub fn pass(&self) -> bool {
        self.symbolic || self.points.iter().all(|&b| b)
    }
}

/// Checks `(A - l(x) B) dl(x) = 0` for a claimed eigenvalue field `l`.
pub fn check_eigendiff(p: &PolyPencil, field: &MultiPoly, points: &[Vec<Rational>]) -> Result<EigendiffReport> {
    let n = p.n();
    field.check_nvars(n)?;
    let grad = field.gradient(n);
    let symbolic = is_zero_vec(&p.a().add_times(&-field, p.b()).apply(&grad));
    let points = per_point(points, |x| {
        let px = p.eval_at(x)?;
        let e = ProjParam::Finite(field.eval(x));
        let form = px.eigen_form(&e);
        if form.rank() >= pencil_rank(&px) {
            return Err(JkError::Precondition(format!("{field} is not an eigenvalue at {}", format_point(x))));
        }
        Ok(form.mul_vec(&eval_vec(&grad, x)).iter().all(num_traits::Zero::is_zero))
    })?;
    Ok(EigendiffReport { symbolic, points })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionFailure {
    pub first: String,
    pub second: String,
    /// `0` for `A`, `inf` for `B`.
    pub bracket: ProjParam,
    pub value: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiInvolutionReport {
    pub failures: Vec<InvolutionFailure>,
}

impl BiInvolutionReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn bi_involution_check(p: &PolyPencil, f: &FunctionFamily) -> BiInvolutionReport {
    let mut failures = Vec::new();
    for (i, x) in f.members.iter().enumerate() {
        for y in &f.members[i + 1..] {
            for (l, br) in [(ProjParam::int(0), p.a()), (ProjParam::Infinity, p.b())] {
                let value = br.bracket(&x.poly, &y.poly);
                if !value.is_zero() {
                    failures.push(InvolutionFailure {
                        first: x.name.clone(),
                        second: y.name.clone(),
                        bracket: l,
                        value,
                    });
                }
            }
        }
    }
    BiInvolutionReport { failures }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessPoint {
    pub rank: usize,
    /// `n - rank/2`, the size of a complete family.
    pub expected: usize,
    pub span_dim: usize,
    pub independent: bool,
    pub bi_lagrangian: bool,
}

impl CompletenessPoint {
    pub fn complete(&self) -> bool {
        self.span_dim == self.expected && self.bi_lagrangian
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    pub points: Vec<CompletenessPoint>,
}

impl CompletenessReport {
    pub fn complete(&self) -> bool {
        self.points.iter().all(CompletenessPoint::complete)
    }
}

fn differentials(p: &PolyPencil, f: &FunctionFamily) -> Result<Vec<Vec<MultiPoly>>> {
    f.members
        .iter()
        .map(|m| {
            m.poly.check_nvars(p.n())?;
            Ok(m.poly.gradient(p.n()))
        })
        .collect()
}

fn span_at(grads: &[Vec<MultiPoly>], n: usize, x: &[Rational]) -> Subspace {
    Subspace::span(n, grads.iter().map(|g| eval_vec(g, x)).collect())
}

pub fn completeness_check(p: &PolyPencil, f: &FunctionFamily, points: &[Vec<Rational>]) -> Result<CompletenessReport> {
    let n = p.n();
    let grads = differentials(p, f)?;
    let points = per_point(points, |x| {
        let px = p.eval_at(x)?;
        let rank = pencil_rank(&px);
        let span = span_at(&grads, n, x);
        Ok(CompletenessPoint {
            rank,
            expected: n - rank / 2,
            span_dim: span.dim(),
            independent: span.dim() == f.len(),
            bi_lagrangian: is_bi_lagrangian(&px, &span),
        })
    })?;
    Ok(CompletenessReport { points })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvabilityProbe {
    pub lambda: ProjParam,
    /// Whether `A_l(x) h = v(x)` has a solution, per point.
    pub solvable: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiHamReport {
    pub probes: Vec<SolvabilityProbe>,
    /// Tangency to the generic symplectic leaves, per point.
    pub tangent: Vec<bool>,
    pub first_integrals: Vec<(String, bool)>,
}

impl BiHamReport {
    pub fn bi_hamiltonian(&self) -> bool {
        self.tangent.iter().all(|&b| b) && self.probes.iter().all(|p| p.solvable.iter().all(|&b| b))
    }

    pub fn pass(&self) -> bool {
        self.bi_hamiltonian() && self.first_integrals.iter().all(|x| x.1)
    }
}

pub fn bihamiltonian_check(
    p: &PolyPencil,
    s: &BiHamSystem,
    extra: &[ProjParam],
    points: &[Vec<Rational>],
    integrals: &FunctionFamily,
) -> Result<BiHamReport> {
    let per = per_point(points, |x| {
        let px = p.eval_at(x)?;
        let v = eval_vec(&s.v, x);
        let solvable = extra.iter().map(|l| px.at(l).solve(&v).is_some()).collect::<Vec<_>>();
        Ok((solvable, obstruction_check(&px, &v)?.pass))
    })?;
    let probes = extra
        .iter()
        .enumerate()
        .map(|(k, l)| SolvabilityProbe { lambda: l.clone(), solvable: per.iter().map(|r| r.0[k]).collect() })
        .collect();
    let first_integrals =
        integrals.members.iter().map(|m| (m.name.clone(), s.derivative_of(&m.poly).is_zero())).collect();
    Ok(BiHamReport { probes, tangent: per.iter().map(|r| r.1).collect(), first_integrals })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoleCheck {
    pub name: String,
    pub role: Role,
    pub pass: bool,
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletionOutcome {
    Completed {
        added: usize,
        dim: usize,
    },
    /// Span of differentials is not a valid starting subspace.
    NotApplicable(String),
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardPoint {
    pub probe_passed: bool,
    pub finite_eigenvalues: bool,
    pub span_dim: usize,
    pub core_covered: bool,
    pub bi_isotropic: bool,
    pub admissible: bool,
    pub completion: Option<CompletionOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardReport {
    pub roles: Vec<RoleCheck>,
    pub bi_involution: BiInvolutionReport,
    pub points: Vec<StandardPoint>,
}

impl StandardReport {
    pub fn pass(&self) -> bool {
        self.roles.iter().all(|r| r.pass)
            && self.bi_involution.pass()
            && self.points.iter().all(|x| x.core_covered && x.admissible && x.bi_isotropic)
    }
}

pub fn standard_integrals_report(
    p: &PolyPencil,
    s: Option<&BiHamSystem>,
    f: &FunctionFamily,
    points: &[Vec<Rational>],
    run_completion: bool,
) -> Result<StandardReport> {
    let n = p.n();
    let grads = differentials(p, f)?;
    let roles = f
        .members
        .iter()
        .map(|m| {
            let (pass, message) = match &m.role {
                Role::Casimir(l) => (is_casimir(p, &m.poly, l), None),
                Role::Eigenvalue => match check_eigendiff(p, &m.poly, points) {
                    Ok(r) => (r.pass(), None),
                    Err(e) => (false, Some(e.to_string())),
                },
                Role::Hamiltonian(a) => match s {
                    Some(s) => (s.is_hamiltonian(p, a, &m.poly), None),
                    None => (false, Some("no bi-Hamiltonian system given".into())),
                },
                Role::Extension => (true, None),
            };
            let message = message.or_else(|| (!pass).then(|| format!("{} fails its {} identity", m.name, m.role)));
            RoleCheck { name: m.name.clone(), role: m.role.clone(), pass, message }
        })
        .collect();
    let bi_involution = bi_involution_check(p, f);
    let points = per_point(points, |x| {
        let px = p.eval_at(x)?;
        let probe = jk_regularity_probe(p, x)?;
        let span = span_at(&grads, n, x);
        let core_covered = span.contains(&core_subspace(&px)?);
        let bi_isotropic = is_bi_isotropic(&px, &span);
        let admissible = is_admissible(&px, &span)?.admissible;
        let completion = run_completion.then(|| {
            if !(core_covered && bi_isotropic && admissible) {
                return CompletionOutcome::NotApplicable(
                    "span of differentials must be bi-isotropic, admissible and contain the core".into(),
                );
            }
            match bilagrangian_completion(&px, &span) {
                Ok(t) => CompletionOutcome::Completed { added: t.steps.len(), dim: t.result.dim() },
                Err(e) => CompletionOutcome::Failed(e.to_string()),
            }
        });
        Ok(StandardPoint {
            probe_passed: probe.stable,
            finite_eigenvalues: !eigenvalue_set(&px)?.has_infinity(),
            span_dim: span.dim(),
            core_covered,
            bi_isotropic,
            admissible,
            completion,
        })
    })?;
    Ok(StandardReport { roles, bi_involution, points })
}
