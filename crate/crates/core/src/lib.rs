//! Exact arithmetic for Drinfeld A-module torsion over F_q(t): Ore
//! polynomials, completions with tracked precision, Newton polygons,
//! function-field lattices with successive minima, rank-1 Tate uniformization,
//! ramification filtrations with Herbrand transition functions, and
//! exact-vs-bound certification of ramification breaks.

pub mod bounds;
pub mod drinfeld;
pub mod error;
pub mod fq;
pub mod lattice;
pub mod local;
pub mod newton;
pub mod ore;
pub mod parse;
pub mod place;
pub mod poly;
pub mod ramification;
pub mod rational;
pub mod residue;
pub mod tate;
pub mod testkit;

pub use error::{Error, Result};
