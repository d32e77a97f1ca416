//! Finite commutative ring toolkit.
//!
//! Builds explicit finite rings (Z/n, prime fields, quotients of
//! polynomial rings, products, trivial extensions, amalgamations along
//! a homomorphism) and decides identity-driven structure questions
//! about them: is the ring a p-ring, which ideals are p-ideals, is it
//! von Neumann regular, and what is its product-of-fields
//! decomposition when one exists. Every structural fast path has a
//! brute-force counterpart so the two can be played against each
//! other.

pub mod arith;
pub mod constructions;
pub mod decision;
pub mod dsl;
pub mod error;
pub mod eval;
pub mod hom;
pub mod ideal;
pub mod poly;
pub mod quotient;
pub mod ring;

pub use constructions::{
    make_amalgamation, make_duplication, make_trivial_extension, AmalgDesc, ModuleDesc,
};
pub use decision::{
    amalgamation_is_pring, enumerate_ideals_oracle, fp_projections, has_nonzero_p_ideal_oracle,
    is_p_ideal, is_p_ring_oracle, is_p_ring_theorem, is_vnr_oracle, is_vnr_theorem,
    list_p_ideals_oracle, mccoy_decompose, p_ideals_of_zmod, pring_poly_quotient_is_pring,
    quotient_has_p_ideal, reduce_with_projection, trivial_ext_check, ComponentReduction,
    DecisionReport, ExtMode, FpProjection, McCoyDecomposition, Method, PolyQuotientReport,
    Witness,
};
pub use dsl::{parse_poly_text, parse_ring_expr, ParseError, RingExpr};
pub use error::{Result, RingError};
pub use eval::{eval_ring_expr, eval_str, EvalContext, EvalError};
pub use hom::{identity_hom, make_hom, verify_hom, HomReport, RingHom};
pub use ideal::{IdealDesc, IdealRepr, StructuralIdeal};
pub use poly::{Factorization, FpPoly};
pub use quotient::{
    make_quotient, make_quotient_over_pring, reduce_mod_maximal, PolyOverRing, PringQuotient,
};
pub use ring::{
    enumerate_elements, make_prime_field, make_product, make_zmod, ring_arith, ArithArgs, Element,
    Family, FiniteRing, Limits, RingKind, RingOp, RingSummary,
};
