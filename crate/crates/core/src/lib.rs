//! Exact symbolic computation in elementary Lie algebras of order three.
//!
//! The engine works over the cyclotomic field Q(q), q a primitive cube root of
//! unity, and provides:
//!
//! * [`coeff`] — exact scalars `a + b*q` with arbitrary-precision rationals;
//! * [`structure`] — algebra descriptions (binary bracket, module action,
//!   totally symmetric ternary bracket), axiom validation, and built-in
//!   families (inhomogeneous pseudo-orthogonal, Killing-form, matrix models);
//! * [`exterior`] — rise-free words and the three-exterior algebra;
//! * [`enveloping`] — PBW normal forms in the enveloping algebra, plus an
//!   independent linear-algebra oracle for cross-checking the rewrite engine;
//! * [`hopf`] — the q-twisted coproduct, counit, and antipode on the
//!   enveloping algebra, with structural checks;
//! * [`dual`] — truncated-exact products and coproducts on the graded dual;
//! * [`expr`], [`render`], [`cli`] — the textual expression language, the
//!   canonical renderings, and the command-line driver.
//!
//! All types are immutable once built and all operations are pure functions,
//! so values can be shared freely across threads.

pub mod cli;
pub mod coeff;
pub mod dual;
pub mod enveloping;
pub mod expr;
pub mod exterior;
pub mod hopf;
pub mod render;
pub mod structure;

pub use coeff::CycQ;
pub use enveloping::{Element, FreeWord, Gen, PBWMonomial};
pub use structure::AlgebraSpec;
