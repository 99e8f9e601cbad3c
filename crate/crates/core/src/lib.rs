//! Exact arithmetic for Conway's surreal numbers.
//!
//! The crate is organised in tiers:
//!
//! * [`ordinal`]: ordinals below ε₀ in Cantor normal form (birthdays, ζ
//!   parameters, sequence indices);
//! * [`game`]: finite `{L | R}` forms with the recursive order and
//!   arithmetic, birthdays and simplification to dyadics;
//! * [`nf`]: finite-support Conway normal forms with rational
//!   coefficients, the main arithmetic tier, including ζ-field membership,
//!   truncated inverses and roots;
//! * [`poly`]: polynomials over normal forms and roots of odd-degree
//!   polynomials;
//! * [`explog`] and [`trig`]: truncated series for `exp`, `log`, `sin`,
//!   `cos`, the complex extension and the circle map;
//! * [`sequences`]: symbolic ζ-indexed sequences, limits, fundamentality
//!   and Dedekind sections.
//!
//! Truncated results carry a [`nf::Truncated`] certificate bounding the
//! leading exponent of the defect.

pub mod error;
pub mod explog;
pub mod game;
pub mod nf;
pub mod ordinal;
pub mod par;
pub mod poly;
pub mod rational;
pub mod sequences;
pub mod trig;

pub use error::{Error, Result};
pub use game::{Dyadic, GameForm};
pub use nf::{NormalForm, Truncated};
pub use ordinal::Ordinal;
pub use rational::Rational;
