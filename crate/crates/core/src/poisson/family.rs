//! Function families with roles and bi-Hamiltonian systems.

use std::fmt;

use crate::error::{JkError, Result};
use crate::exactalg::MultiPoly;
use crate::pencil::ProjParam;
use crate::poisson::pencil::PolyPencil;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Role {
    /// Casimir of `A_l`.
    Casimir(ProjParam),
    /// Eigenvalue field.
    Eigenvalue,
    /// Hamiltonian `H_a` of the system's vector field with respect to `A_a`.
    Hamiltonian(ProjParam),
    Extension,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Casimir(l) => write!(f, "casimir({l})"),
            Role::Eigenvalue => f.write_str("eigenvalue"),
            Role::Hamiltonian(a) => write!(f, "hamiltonian({a})"),
            Role::Extension => f.write_str("extension"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub name: String,
    pub poly: MultiPoly,
    pub role: Role,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FunctionFamily {
    pub members: Vec<FamilyMember>,
}

impl FunctionFamily {
    pub fn new(members: Vec<FamilyMember>) -> Self {
        FunctionFamily { members }
    }

    /// Members named `f1, f2, ...` with the extension role.
    pub fn plain(polys: Vec<MultiPoly>) -> Self {
        let members = polys
            .into_iter()
            .enumerate()
            .map(|(i, poly)| FamilyMember { name: format!("f{}", i + 1), poly, role: Role::Extension })
            .collect();
        FunctionFamily { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn polys(&self) -> Vec<&MultiPoly> {
        self.members.iter().map(|m| &m.poly).collect()
    }
}

/// Vector field `v` with Hamiltonians `H_a` satisfying `v = A_a dH_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiHamSystem {
    pub v: Vec<MultiPoly>,
    pub hamiltonians: Vec<(ProjParam, MultiPoly)>,
}

impl BiHamSystem {
    /// Validates every stored identity `v = A_a dH_a` symbolically.
    pub fn new(p: &PolyPencil, v: Vec<MultiPoly>, hamiltonians: Vec<(ProjParam, MultiPoly)>) -> Result<Self> {
        let n = p.n();
        if v.len() != n {
            return Err(JkError::Structural(format!("vector field has {} components, expected {n}", v.len())));
        }
        for c in &v {
            c.check_nvars(n)?;
        }
        let s = BiHamSystem { v, hamiltonians };
        for (a, h) in &s.hamiltonians {
            h.check_nvars(n)?;
            if !s.is_hamiltonian(p, a, h) {
                return Err(JkError::Precondition(format!("v is not A_{a} dH for H = {h}")));
            }
        }
        Ok(s)
    }

    pub fn is_hamiltonian(&self, p: &PolyPencil, a: &ProjParam, h: &MultiPoly) -> bool {
        p.at(a).apply(&h.gradient(p.n())) == self.v
    }

    /// `v(f) = sum_i v^i d_i f`.
    pub fn derivative_of(&self, f: &MultiPoly) -> MultiPoly {
        self.v.iter().enumerate().fold(MultiPoly::zero(), |acc, (i, vi)| &acc + &(vi * &f.diff(i)))
    }
}
