//! Algebraic linear orderings at desk scale.
//!
//! This crate is `no_std` (it needs `alloc`). It provides:
//!
//! * [`words`]: words over ordered alphabets with the prefix, strict and
//!   lexicographic orders, primitive roots, and the greedy embedding of a
//!   finite order into the rationals language `(0+11)*01`;
//! * [`ordinal`]: Cantor-normal-form arithmetic below ω^(ω^ω) together with
//!   Hausdorff-rank bound combinators;
//! * [`scheme`]: first-order recursion schemes, their Kleene approximants,
//!   branch languages and the sum/product/geometric-sum closures, including
//!   a synthesizer producing a scheme for any ordinal below ω^(ω^ω);
//! * [`grammar`]: context-free grammars over ordered alphabets with
//!   normalization, bounded enumeration, lexicographic intervals, reversal
//!   and the scattered-grammar analysis (heights, pumping prefixes,
//!   primitive roots, refutations, L/R decomposition, rank bounds);
//! * [`translate`]: the translation of a recursion scheme into a prefix
//!   grammar for its labeled frontier language.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod automaton;
mod error;
pub mod grammar;
pub mod ordinal;
pub mod scheme;
pub mod translate;
pub mod words;

pub use error::{Error, Result};
pub use grammar::Grammar;
pub use ordinal::Ordinal;
pub use scheme::RecursionScheme;
pub use words::{Letter, OrderedAlphabet, Word};
