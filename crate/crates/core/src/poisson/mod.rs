//! Polynomial Poisson pencils on coordinate space.
//!
//! Functions are polynomials with rational coefficients in `x1, ..., xn`.
//! Symbolic checks are exact; pointwise checks evaluate the pencil at
//! rational points and hand the resulting matrices to [`crate::pencil`].

pub mod bivector;
pub mod checks;
pub mod family;
pub mod pencil;

pub use bivector::{is_compatible, is_poisson, schouten_bracket, schouten_bracket_with, PolyBivector, Trivector};
pub use checks::{
    bi_involution_check, bihamiltonian_check, check_eigendiff, completeness_check, standard_integrals_report,
    BiHamReport, BiInvolutionReport, CompletenessReport, CompletionOutcome, EigendiffReport, StandardReport,
};
pub use family::{BiHamSystem, FamilyMember, FunctionFamily, Role};
pub use pencil::{
    bracket_fn, bracket_fn_symbolic, casimir_shift, generate_points, is_casimir, jk_regularity_probe, PolyPencil,
    RegularityProbe,
};

/// Limits on symbolic Schouten computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guardrails {
    pub max_degree: u32,
    pub max_dim: usize,
}

impl Default for Guardrails {
    fn default() -> Self {
        Guardrails { max_degree: 4, max_dim: 8 }
    }
}
