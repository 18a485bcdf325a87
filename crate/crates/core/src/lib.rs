//! Artinian Gorenstein algebras from Macaulay dual generators.
//!
//! A homogeneous form `f` determines `A = Q/Ann_Q(f)` where `Q` acts on
//! `R = K[x]` by differentiation. This crate builds `A` degree by degree
//! with exact rational linear algebra, assembles mixed Hessians, and decides
//! the weak and strong Lefschetz properties through Hessian rank criteria.
//! Combinatorial sources of dual generators (simplicial complexes, graphs,
//! Turan complexes) and the counterexample families live alongside.
//!
//! Every verdict is either exact or carries an explicit Schwartz-Zippel
//! failure bound together with the seed that reproduces it.

pub mod apolarity;
pub mod complexes;
pub mod config;
pub mod error;
pub mod families;
pub mod hessians;
pub mod lefschetz;
pub mod linalg;
pub mod polyring;
pub mod report;

pub use apolarity::{build_algebra, unimodality_check, BigradedBasis, GradedAlgebra, QuadricsResult};
pub use complexes::{Graph, GraphClass, SimplicialComplex};
pub use config::CheckConfig;
pub use error::{Error, Result};
pub use hessians::{generic_rank, symbolic_det, MixedHessian, Mode, RankCertificate};
pub use lefschetz::{slp_check, wlp_check, LefschetzVerdict, Property, RankProfile};
pub use linalg::Matrix;
pub use polyring::{apolar_apply, LinearForm, Monomial, Polynomial, VarSet};
pub use report::AnalysisReport;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
