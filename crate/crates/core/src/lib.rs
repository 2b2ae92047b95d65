//! Tangent cones of numerical semigroup rings.
//!
//! The crate computes toric ideals `I_H`, their ideals of initial forms
//! `I_H*`, decides whether `I_H*` is generated by quadrics, and looks for
//! Koszul certificates (quadratic Gröbner bases, gluing chains) or
//! refutations (nonlinear Betti numbers of the residue field).

pub mod error;
pub mod families;
pub mod field;
pub mod gluing;
pub mod groebner;
pub mod homology;
pub mod poly;
pub mod semigroup;
pub mod tangent_cone;
pub mod toric;

pub use error::{Error, Result};
pub use groebner::IdealPresentation;
pub use field::{Field, FieldDescriptor, PrimeField, Rationals};
pub use poly::{Monomial, PolyRing, Polynomial, Term, TermOrder};
pub use semigroup::NumericalSemigroup;
