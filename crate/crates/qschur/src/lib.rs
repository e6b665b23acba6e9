//! Exact computations in the q-Schur algebras of types B and D.
//!
//! The crate builds the Weyl groups, Hecke algebras and natural bases from
//! scratch, implements the closed multiplication formulas for fundamental
//! generators, and provides two independent ways to check them: composition
//! of Hecke algebra endomorphisms ([`heckeoracle`]) and orbit counting on
//! isotropic flags over a prime field ([`flaggeom`]).

pub mod error;
pub mod exactring;
pub mod flaggeom;
pub mod heckealg;
pub mod heckeoracle;
pub mod matcomb;
pub mod schurd;
pub mod verify;
pub mod weylgroups;

pub use error::{Error, Result};
pub use exactring::{binomial, gauss, PolyQ};
pub use flaggeom::{make_orbit_rep, orbit_matrix, so_labels, FlagVariety, IsoFlag, Subspace};
pub use heckealg::{x_parabolic, HeckeAmbient, HeckeElt};
pub use heckeoracle::{double_coset_sum, OracleB, OracleD};
pub use matcomb::{
    classify, coset_to_matrix, enumerate_xi_b, enumerate_xi_d, matrix_to_da, Composition, EtaContext, EtaTriple,
    MatB, MatClass, MatD, Mark, Sign, SignedComposition, Tag,
};
pub use schurd::{
    coef_lower, coef_raise, dim_b, dim_d, embed_b_in_d, mult_fund_b, mult_fund_d, Direction, FormulaCase,
    Fundamental, SchurB, SchurD, SchurElt,
};
pub use weylgroups::{distinguished_reps, enumerate_parabolic, CoxeterType, Gen, ParabolicSpec, SignedPerm, WeylGroup};
