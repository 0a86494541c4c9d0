//! Exact symbolic computations for polynomial vector fields on affine space:
//! contact orders, degree-truncated maximal invariant ideals, dimension
//! estimates for minimal invariant varieties, and rational first integrals
//! via extactic polynomials and cofactor recombination.
//!
//! Everything is computed over ℚ or over a rational-function field
//! ℚ(t₁..t_k) in declared parameters, so results are exact and runs are
//! deterministic.

pub mod context;
pub mod error;
pub mod firstintegral;
pub mod foliation;
pub mod groebner;
pub mod invariant;
mod linalg;
pub mod parse;
pub mod poly;
pub mod report;
pub mod scalar;

pub use context::VariableContext;
pub use error::{FoliaError, Result};
pub use firstintegral::{
    combine_cofactors, constant_cofactor_search, darboux_cofactor_check, extactic_polynomial,
    find_first_integrals, verify_first_integral, CofactorSearch, DarbouxPair,
    RationalFirstIntegral,
};
pub use foliation::{
    close_under_brackets, contact_order, lie_bracket, stable_span, ContactOrderResult, Derivation,
    FoliationSpec, Site, Word,
};
pub use groebner::{DimensionReport, Ideal};
pub use invariant::{
    functional_matrix, invariant_variety_estimate, nf_profile, truncated_invariant_ideal,
    EvalPoint, FunctionalMatrix, InvariantEstimate, PointKind, ProfileEntry,
};
pub use parse::{parse_foliation_file, FoliationFile};
pub use poly::{dim_f, monomials_up_to, Monomial, MonomialOrder, Polynomial};
pub use report::{run_analysis, AnalysisOptions, Command, Report};
pub use scalar::{ParamPoly, Scalar};
