//! Computable models of the twisted-sum topology `Y ⊔_f Z` and of spectra of
//! function-algebra sums, in three settings:
//!
//! * [`fintop`] — exact topology on finite ground sets; twisted and direct
//!   sums, the six-statement implication diagram, Borel algebras.
//! * [`zline`] — the discrete integer line glued to a finite space along an
//!   eventually periodic map; openness, closure, compactness and convergence
//!   are all decidable, with self-certifying answers.
//! * [`aap`] — asymptotically almost periodic functions over a finitely
//!   generated frequency module; characters on `ℝ ⊔ 𝕋^d`, Bohr means,
//!   Fourier–Bohr coefficients and Kronecker density search.
//! * [`measures`] — direct-sum Borel measures on the glued spaces, Haar
//!   integration on the torus factor, inner-regularity checks.

pub mod aap;
pub mod error;
pub mod fintop;
pub mod json;
pub mod measures;
pub mod zline;

pub use error::{Error, Result};
