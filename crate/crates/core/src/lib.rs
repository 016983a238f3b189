//! Exact and numeric verification toolkit for the Abelian relations of
//! Legendrian d-webs.
//!
//! The exact layer builds the rho_d = (d-1)(d-2)(2d+3)/6 Abelian relations
//! of the model web y'' = q^a (distinct rational constants), verifies the
//! relation axioms as polynomial identities, computes exact ranks, and
//! checks the per-depth symbol matrices of the compatibility equations.
//! The numeric layer certifies the maximal-rank 3-web normal forms and the
//! Darboux super-integrable example in floating point via forward-mode
//! automatic differentiation and RK4 holonomy checks.

pub mod error;
pub mod exact;
pub mod forms;
pub mod model;
pub mod numeric;
pub mod relations;
pub mod symbol;

pub use error::{LegwebError, Result};
pub use exact::matrix::ExactMatrix;
pub use exact::poly::{Monomial, MultiPoly, Var};
pub use exact::rational::Rational;
pub use model::WebSpec;
pub use relations::{build_relations, rank_of_relations, rho, verify_relation, AbelianRelation};
