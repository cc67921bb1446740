//! Exact computer algebra for simple Lie algebras and their current and
//! Takiff extensions.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootdata`]: Cartan matrices, positive roots, coroots, Weyl groups and
//!   the combinatorial identities attached to them.
//! * [`poly`]: sparse commutative polynomials with exact rational
//!   coefficients over [`Letter`] variables.
//! * [`liealg`]: structure constants of `sl_{n+1}` and the bracket on the
//!   shared current/Takiff letter universe.
//! * [`pbw`]: words in the enveloping algebra, PBW normal ordering,
//!   symmetrisation and the Harish-Chandra style projections.
//! * [`invariants`]: trace-power invariants, the maps `T`, `psi` and the
//!   derivation `script_T`, both Jacobians and the end-to-end verifier.
//! * [`projector`]: Verma modules of `sl_2`/`sl_3` and the extremal projector.

pub mod error;
pub mod invariants;
pub mod letter;
pub mod liealg;
pub mod pbw;
pub mod poly;
pub mod projector;
pub mod rational;
pub mod rootdata;

pub use error::{Error, Result};
pub use letter::{Letter, LetterClass, Var};
pub use liealg::LieStructure;
pub use pbw::NCElement;
pub use poly::{CommPoly, Monomial};
pub use rational::Q;
pub use rootdata::{Family, RootSystem, SimpleType};
