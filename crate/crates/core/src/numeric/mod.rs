//! Floating-point verification layer: automatic differentiation, the
//! maximal-rank 3-web normal forms, torsion extraction, Frobenius
//! integration, and the Darboux super-integrable example.

pub mod coframe;
pub mod darboux;
pub mod frobenius;
pub mod jet;
pub mod normal_form;
pub mod sampling;
pub mod torsion;

pub use coframe::{structure_residual, Coframe3, Point3};
pub use darboux::{darboux_check, DarbouxReport};
pub use frobenius::{frobenius_solve, holonomy_deviation};
pub use jet::{Jet1, Jet2};
pub use normal_form::{normal_form_coframe, normal_form_web, NormalFormCase};
pub use torsion::{maximal_rank_test, torsion_extract, TorsionRecord, Web3Numeric};
