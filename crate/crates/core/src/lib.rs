//! Exact symbolic calculus for Wang's and Goncharov's regulator forms.
//!
//! The crate is organised bottom-up:
//!
//! * [`rational`] and [`combinatorics`]: exact scalars, polynomials and the
//!   factorial-sum identities behind the comparison of the two regulators.
//! * [`form`]: a canonical graded-commutative algebra of formal differential
//!   forms built from degree-zero symbols and their `∂`, `∂̄`, `∂∂̄` images.
//! * [`deligne`]: the Deligne complex on top of [`form`] (differential,
//!   product, Wang's forms `T_m` and the identities they satisfy).
//! * [`logform`]: specialisation to logarithms of rational functions,
//!   Goncharov's forms and the geometric families `W_m`, `G_m`, `M_{n,m}`.
//! * [`residue`]: residues of wedges of coordinate monomials on
//!   `(P¹)ⁿ × Pᵐ` and the boundary formulas of the regulator currents.
//! * [`homology`]: integer matrices, Smith normal form, chain complexes,
//!   cubical abelian groups and simple complexes.
//!
//! Every verifier returns a [`report::Report`]; a failing report always
//! carries a counterexample.

pub mod combinatorics;
pub mod deligne;
pub mod error;
pub mod form;
pub mod homology;
pub mod logform;
pub mod rational;
pub mod report;
pub mod residue;

pub use error::{Error, Result};
pub use form::{Factor, FactorKind, FormExpr, Symbol};
pub use rational::Rational;
pub use report::Report;
