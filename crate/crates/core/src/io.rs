//! JSON file formats for pencils, subspaces, vectors, Poisson data, and the
//! serialized reports. Rationals are written as strings such as `"-3/2"`;
//! on input plain JSON integers are accepted too.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer};
use serde_json::{json, Value};

use crate::error::{JkError, Result};
use crate::exactalg::{format_rational, parse_rational, MultiPoly, RatMatrix, Rational};
use crate::pencil::{CharPoly, Eigen, EigenvalueSet, JKInvariants, ProjParam, SkewPencil};
use crate::poisson::{
    BiHamReport, BiHamSystem, BiInvolutionReport, CompletenessReport, CompletionOutcome, EigendiffReport, FamilyMember,
    FunctionFamily, PolyBivector, PolyPencil, Role, StandardReport, Trivector,
};
use crate::reduction::{CompletionTrace, ObstructionVerdict, ReducedPencil};
use crate::subspaces::{AdmissibilityReport, AnnihilatorReport, Subspace};

/// A scalar written either as a JSON string or a JSON number.
#[derive(Debug, Clone)]
pub struct StrOrNum(pub String);

impl<'de> Deserialize<'de> for StrOrNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(s) => Ok(StrOrNum(s)),
            Value::Number(n) if n.is_i64() || n.is_u64() => Ok(StrOrNum(n.to_string())),
            other => Err(serde::de::Error::custom(format!("expected a rational string or an integer, got {other}"))),
        }
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| JkError::Parse(format!("{what}: {e}")))
}

fn rationals(v: &[StrOrNum]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(&s.0)).collect()
}

fn matrix(rows: &[Vec<StrOrNum>], n: usize, name: &str) -> Result<RatMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(JkError::Structural(format!("matrix {name} is not {n} x {n}")));
    }
    let rows = rows.iter().map(|r| rationals(r)).collect::<Result<Vec<_>>>()?;
    Ok(RatMatrix::from_rows(rows, n))
}

pub fn rat_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn matrix_json(m: &RatMatrix) -> Value {
    json!(m.to_strings())
}

#[derive(Deserialize)]
struct PencilFile {
    n: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<StrOrNum>>,
    #[serde(rename = "B")]
    b: Vec<Vec<StrOrNum>>,
}

/// `{"n": n, "A": [[...]], "B": [[...]]}`; other keys are ignored.
pub fn parse_pencil(text: &str) -> Result<SkewPencil> {
    let f: PencilFile = from_json(text, "pencil")?;
    SkewPencil::new(matrix(&f.a, f.n, "A")?, matrix(&f.b, f.n, "B")?)
}

pub fn pencil_json(p: &SkewPencil) -> Value {
    json!({"n": p.n(), "A": matrix_json(p.a()), "B": matrix_json(p.b())})
}

#[derive(Deserialize)]
struct SubspaceFile {
    ambient: usize,
    basis: Vec<Vec<StrOrNum>>,
}

/// `{"ambient": n, "basis": [[...], ...]}`; the basis may be redundant.
pub fn parse_subspace(text: &str) -> Result<Subspace> {
    let f: SubspaceFile = from_json(text, "subspace")?;
    let rows = f
        .basis
        .iter()
        .map(|r| {
            if r.len() != f.ambient {
                return Err(JkError::Structural(format!(
                    "basis vector of length {} in a {}-dimensional space",
                    r.len(),
                    f.ambient
                )));
            }
            rationals(r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Subspace::span(f.ambient, rows))
}

pub fn subspace_json(u: &Subspace) -> Value {
    json!({"ambient": u.ambient(), "basis": matrix_json(u.basis())})
}

#[derive(Deserialize)]
#[serde(untagged)]
enum VectorFile {
    Bare(Vec<StrOrNum>),
    Wrapped { v: Vec<StrOrNum> },
}

/// A bare array `[...]` or `{"v": [...]}`.
pub fn parse_vector(text: &str) -> Result<Vec<Rational>> {
    match from_json::<VectorFile>(text, "vector")? {
        VectorFile::Bare(v) | VectorFile::Wrapped { v } => rationals(&v),
    }
}

/// Comma-separated parameters such as `0,1,2,inf`.
pub fn parse_params(s: &str) -> Result<Vec<ProjParam>> {
    s.split(',').map(ProjParam::parse).collect()
}

/// `1,2,3;4,5,6`: points separated by semicolons.
pub fn parse_points(s: &str) -> Result<Vec<Vec<Rational>>> {
    s.split(';').map(|p| p.split(',').map(parse_rational).collect()).collect()
}

fn eigen_json(e: &Eigen) -> Value {
    match e {
        Eigen::Finite(r) => json!(format_rational(r)),
        Eigen::Infinite => json!("inf"),
        Eigen::Class(p) => json!({"factor": p.to_string()}),
    }
}

pub fn eigenvalues_json(e: &EigenvalueSet) -> Value {
    Value::Array(e.eigenvalues.iter().map(eigen_json).collect())
}

pub fn invariants_json(inv: &JKInvariants, cp: &CharPoly, eigs: &EigenvalueSet) -> Value {
    let jordan: Vec<Value> =
        inv.jordan.iter().map(|j| json!({"eig": eigen_json(&j.eig), "halfsizes": j.halfsizes})).collect();
    json!({
        "n": inv.n,
        "rank": inv.rank,
        "kronecker": inv.kronecker,
        "jordan": jordan,
        "charpoly": cp.to_string(),
        "eigenvalues": eigenvalues_json(eigs),
    })
}

pub fn ground_truth_json(inv: &JKInvariants) -> Value {
    let jordan: Vec<Value> =
        inv.jordan.iter().map(|j| json!({"eig": eigen_json(&j.eig), "halfsizes": j.halfsizes})).collect();
    json!({"n": inv.n, "rank": inv.rank, "kronecker": inv.kronecker, "jordan": jordan})
}

pub fn admissibility_json(r: &AdmissibilityReport) -> Value {
    json!({
        "admissible": r.admissible,
        "generic_dim": r.generic_dim,
        "common_complement": r.common_complement.as_ref().map(subspace_json),
        "witness": r.witness.as_ref().map(|w| json!({"first": w.first.to_string(), "second": w.second.to_string()})),
        "recursion_invariant": r.recursion_invariant,
    })
}

pub fn annihilator_json(r: &AnnihilatorReport) -> Value {
    json!({
        "core_annihilator": r.core_annihilator,
        "lagrangian_annihilator": r.lagrangian_annihilator,
        "preimage_in_mantle": r.preimage_in_mantle,
        "checked_params": r.checked_params.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "pass": r.all_pass(),
    })
}

pub fn reduced_json(r: &ReducedPencil) -> Value {
    json!({
        "pencil": pencil_json(&r.reduced),
        "lift": matrix_json(&r.lift),
        "projection": matrix_json(&r.projection),
        "u_dim": r.u.dim(),
        "u_perp_dim": r.u_perp.dim(),
    })
}

pub fn trace_json(t: &CompletionTrace) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| json!({"eigenvalue": eigen_json(&s.eigenvalue), "height": s.height, "vector": rat_strings(&s.vector)}))
        .collect();
    json!({"steps": steps, "result": subspace_json(&t.result)})
}

pub fn obstruction_json(v: &ObstructionVerdict) -> Value {
    let samples: Vec<Value> = v.samples.iter().map(|(l, ok)| json!({"lambda": l.to_string(), "pass": ok})).collect();
    json!({
        "verdict": if v.pass { "PASS" } else { "FAIL" },
        "rank": v.rank,
        "augmented_rank": v.augmented_rank,
        "samples": samples,
    })
}

#[derive(Deserialize)]
struct BivectorFile {
    n: usize,
    entries: BTreeMap<String, StrOrNum>,
}

fn parse_index_pair(key: &str, n: usize) -> Result<(usize, usize)> {
    let bad = || JkError::Parse(format!("entry key '{key}' is not of the form \"i,j\""));
    let (i, j) = key.split_once(',').ok_or_else(bad)?;
    let i: usize = i.trim().parse().map_err(|_| bad())?;
    let j: usize = j.trim().parse().map_err(|_| bad())?;
    if i == 0 || j == 0 || i > n || j > n {
        return Err(JkError::Structural(format!("entry ({i},{j}) outside 1..={n}")));
    }
    Ok((i - 1, j - 1))
}

/// `{"n": n, "entries": {"i,j": "poly"}}` with 1-based indices; an entry
/// `"j,i"` with `j > i` stands for `-Pi^{ij}`.
pub fn parse_bivector(text: &str) -> Result<PolyBivector> {
    let f: BivectorFile = from_json(text, "bivector")?;
    let entries = f
        .entries
        .iter()
        .map(|(k, v)| {
            let (i, j) = parse_index_pair(k, f.n)?;
            let p: MultiPoly = v.0.parse()?;
            Ok((i, j, p))
        })
        .collect::<Result<Vec<_>>>()?;
    PolyBivector::from_entries(f.n, entries)
}

pub fn bivector_json(p: &PolyBivector) -> Value {
    let entries: serde_json::Map<String, Value> =
        p.entries().into_iter().map(|(i, j, e)| (format!("{},{}", i + 1, j + 1), json!(e.to_string()))).collect();
    json!({"n": p.n(), "entries": entries})
}

pub fn trivector_json(t: &Trivector) -> Value {
    let c: serde_json::Map<String, Value> = t
        .components
        .iter()
        .map(|((i, j, k), p)| (format!("{},{},{}", i + 1, j + 1, k + 1), json!(p.to_string())))
        .collect();
    json!(c)
}

#[derive(Deserialize)]
struct MemberFile {
    name: Option<String>,
    poly: String,
    role: Option<String>,
    lambda: Option<StrOrNum>,
    alpha: Option<StrOrNum>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FamilyFile {
    Bare(Vec<MemberFile>),
    Wrapped { members: Vec<MemberFile> },
}

/// `{"members": [{"name", "poly", "role", "lambda" | "alpha"}]}` or the bare
/// member array. Roles: `casimir` (needs `lambda`), `eigenvalue`,
/// `hamiltonian` (needs `alpha`), `extension` (the default).
pub fn parse_family(text: &str) -> Result<FunctionFamily> {
    let members = match from_json::<FamilyFile>(text, "family")? {
        FamilyFile::Bare(m) | FamilyFile::Wrapped { members: m } => m,
    };
    let param = |v: &Option<StrOrNum>, key: &str, name: &str| -> Result<ProjParam> {
        let s = v.as_ref().ok_or_else(|| JkError::Parse(format!("member {name} needs '{key}'")))?;
        ProjParam::parse(&s.0)
    };
    let members = members
        .into_iter()
        .enumerate()
        .map(|(i, m)| {
            let name = m.name.clone().unwrap_or_else(|| format!("f{}", i + 1));
            let role = match m.role.as_deref().unwrap_or("extension") {
                "casimir" => Role::Casimir(param(&m.lambda, "lambda", &name)?),
                "eigenvalue" => Role::Eigenvalue,
                "hamiltonian" => Role::Hamiltonian(param(&m.alpha, "alpha", &name)?),
                "extension" => Role::Extension,
                other => return Err(JkError::Parse(format!("unknown role '{other}' for member {name}"))),
            };
            Ok(FamilyMember { name, poly: m.poly.parse()?, role })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FunctionFamily::new(members))
}

#[derive(Deserialize)]
struct HamFile {
    alpha: StrOrNum,
    #[serde(rename = "H")]
    h: String,
}

#[derive(Deserialize)]
struct SystemFile {
    v: Vec<StrOrNum>,
    #[serde(default)]
    hamiltonians: Vec<HamFile>,
}

/// `{"v": ["poly", ...], "hamiltonians": [{"alpha": "0", "H": "poly"}]}`,
/// validated against the pencil.
pub fn parse_system(text: &str, p: &PolyPencil) -> Result<BiHamSystem> {
    let f: SystemFile = from_json(text, "system")?;
    let v = f.v.iter().map(|s| s.0.parse()).collect::<Result<Vec<MultiPoly>>>()?;
    let h =
        f.hamiltonians.iter().map(|x| Ok((ProjParam::parse(&x.alpha.0)?, x.h.parse()?))).collect::<Result<Vec<_>>>()?;
    BiHamSystem::new(p, v, h)
}

fn points_json(points: &[Vec<Rational>]) -> Vec<Vec<String>> {
    points.iter().map(|x| rat_strings(x)).collect()
}

pub fn eigendiff_json(r: &EigendiffReport, points: &[Vec<Rational>]) -> Value {
    let per: Vec<Value> =
        points.iter().zip(&r.points).map(|(x, ok)| json!({"point": rat_strings(x), "pass": ok})).collect();
    json!({"symbolic": r.symbolic, "points": per, "pass": r.pass()})
}

pub fn involution_json(r: &BiInvolutionReport) -> Value {
    let f: Vec<Value> = r
        .failures
        .iter()
        .map(|x| {
            let br = if x.bracket.is_infinite() { "B" } else { "A" };
            json!({"first": x.first, "second": x.second, "bracket": br, "value": x.value.to_string()})
        })
        .collect();
    json!({"pass": r.pass(), "failures": f})
}

pub fn completeness_json(r: &CompletenessReport, points: &[Vec<Rational>]) -> Value {
    let per: Vec<Value> = points
        .iter()
        .zip(&r.points)
        .map(|(x, c)| {
            json!({
                "point": rat_strings(x),
                "rank": c.rank,
                "expected": c.expected,
                "span_dim": c.span_dim,
                "independent": c.independent,
                "bi_lagrangian": c.bi_lagrangian,
                "complete": c.complete(),
            })
        })
        .collect();
    json!({"complete": r.complete(), "points": per})
}

pub fn bihamiltonian_json(r: &BiHamReport, points: &[Vec<Rational>]) -> Value {
    let probes: Vec<Value> =
        r.probes.iter().map(|p| json!({"lambda": p.lambda.to_string(), "solvable": p.solvable})).collect();
    let ints: Vec<Value> = r.first_integrals.iter().map(|(n, ok)| json!({"name": n, "pass": ok})).collect();
    json!({
        "points": points_json(points),
        "probes": probes,
        "tangent": r.tangent,
        "first_integrals": ints,
        "bi_hamiltonian": r.bi_hamiltonian(),
        "pass": r.pass(),
    })
}

fn completion_outcome_json(c: &CompletionOutcome) -> Value {
    match c {
        CompletionOutcome::Completed { added, dim } => json!({"status": "completed", "added": added, "dim": dim}),
        CompletionOutcome::NotApplicable(m) => json!({"status": "not-applicable", "message": m}),
        CompletionOutcome::Failed(m) => json!({"status": "failed", "message": m}),
    }
}

pub fn standard_json(r: &StandardReport, points: &[Vec<Rational>]) -> Value {
    let roles: Vec<Value> = r
        .roles
        .iter()
        .map(|x| json!({"name": x.name, "role": x.role.to_string(), "pass": x.pass, "message": x.message}))
        .collect();
    let per: Vec<Value> = points
        .iter()
        .zip(&r.points)
        .map(|(x, s)| {
            json!({
                "point": rat_strings(x),
                "jk_regularity": if s.probe_passed { "probe passed" } else { "probe failed" },
                "finite_eigenvalues": s.finite_eigenvalues,
                "span_dim": s.span_dim,
                "core_covered": s.core_covered,
                "bi_isotropic": s.bi_isotropic,
                "admissible": s.admissible,
                "completion": s.completion.as_ref().map(completion_outcome_json),
            })
        })
        .collect();
    json!({"roles": roles, "bi_involution": involution_json(&r.bi_involution), "points": per, "pass": r.pass()})
}
