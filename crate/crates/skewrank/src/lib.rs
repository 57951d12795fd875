//! Sum-rank metric codes realized inside the skew-polynomial quotient
//! ring L[X;θ]/(H_Λ(X)) over finite-field towers.
//!
//! The crate is organized along the objects it manipulates:
//!
//! * [`gf`] — the tower F_p ⊆ K ⊆ (E) ⊆ L and its Galois maps;
//! * [`skew`] — the skew polynomial ring L[X;θ] and its right-Euclidean
//!   structure;
//! * [`sumrank`] — the quotient by H_Λ(X) = ∏(X^n − λ), sum-rank weights,
//!   Λ-Dickson matrices, annihilators, adjoints and the ⟨·,·⟩_Λ form;
//! * [`frameworks`] — the isometric vector and matrix representations with
//!   conversions and the associated bilinear forms;
//! * [`codes`] — linearized Reed-Solomon codes, their twisted and TZ-type
//!   variants, additive MDS codes, distance certification and duality;
//! * [`io`] — JSON/CSV wire formats and the text syntax for elements and
//!   polynomials.

pub mod codes;
pub mod error;
pub mod frameworks;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod skew;
pub mod sumrank;

pub use error::{Error, Result};
pub use gf::{Elem, FieldTag, Tower, TowerSpec};
pub use linalg::Matrix;
pub use skew::SkewPoly;
pub use sumrank::{LambdaContext, QuotientElem};
