//! Exact calculus of iterated difference sequences for polynomial maps over
//! the rationals.
//!
//! For a square polynomial map `F`, the sequence `P_0 = X`, `P_1 = F - X`,
//! `P_k = P_{k-1}∘F - P_{k-1}` either vanishes at some step `m` (the map is
//! *nice*) and then `G = Σ_{l<m} (-1)^l P_l` is its inverse, or it does not.
//! The crate computes these sequences exactly, certifies inverses, and
//! provides the surrounding toolkit: sparse polynomial arithmetic, a text
//! format for maps, Jacobians and nilpotence, constructions of classical
//! map families, and a corpus of worked examples.

pub mod cli;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod jacobian;
pub mod map_io;
pub mod modular;
pub mod monomial;
pub mod engine;
pub mod poly_map;
pub mod polynomial;
pub mod rat_matrix;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
pub use jacobian::{jacobian, keller_check, nilpotence_index, PolyMatrix};
pub use monomial::Monomial;
pub use engine::{check_nice, check_nice_factored, p_sequence, Factored, NiceOptions, NicetyReport, NicetySequence, Verdict};
pub use poly_map::{compose, iterate, substitute, PolyMap};
pub use polynomial::{Limits, Polynomial};
pub use rat_matrix::RatMatrix;
pub use rational::Rational;
