//! Core engine for dynamical systems with double recursion.
//!
//! A system is a finite alphabet with two distinguished letters (zero and
//! one) and a binary rule. Its development fills the quarter plane: border
//! cells are one, and every interior cell is the rule applied to its north
//! and west neighbors. The crate provides:
//!
//! * [`dynsys`]: systems, diagonal-by-diagonal development, the zero
//!   certificate scan, and structural validation;
//! * [`turing`]: two-way-infinite-tape Turing machines with acceptance
//!   classification for the clean-halt and negative-side problems;
//! * [`uw`]: the asymmetric machine-to-system compiler and its verifier;
//! * [`symcode`]: nested unordered-pair codes and the brute-force
//!   injectivity check they rely on;
//! * [`suw`]: the symmetric machine-to-system compiler and its verifier;
//! * [`fieldpoly`]: bivariate polynomial realizations of rule tables over
//!   prime fields.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dynsys;
pub mod fieldpoly;
pub mod samples;
pub mod suw;
pub mod symcode;
pub mod turing;
pub mod uw;
