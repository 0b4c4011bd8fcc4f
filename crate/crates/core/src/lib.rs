//! Spectra of radial Toeplitz operators on weighted Bergman spaces over
//! irreducible bounded symmetric domains.
//!
//! A Toeplitz operator `T_ψ` whose symbol is invariant under the maximal
//! compact group `K` acts on each `K`-isotypic component `P^α` of the weighted
//! Bergman space `A²_λ(D)` as a scalar `c_α`. After reduction to the squared
//! radial coordinates `x ∈ [0,1)^r` that scalar is a ratio of two
//! `r`-dimensional integrals against the density
//!
//! ```text
//! ∏ x_j^{α_j+b} ∏ (1-x_j)^{λ-p} ∏_{j<k} |x_j - x_k|^a
//! ```
//!
//! where `(r, a, b, p)` are the rank, characteristic multiplicities and genus
//! of the domain. This crate builds the domain catalog, the Gauss–Jacobi
//! machinery needed to evaluate those integrals to near machine precision, a
//! small symbol language, and an operator-level cross-check on the disk and
//! the two-dimensional ball.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled; `std` adds a shared quadrature-rule cache and `parallel` adds
//! rayon-backed batch evaluation.

#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > 0.0)` is used on purpose so NaN falls into the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod catalog;
mod error;
pub mod quadrature;
pub mod special;
pub mod spectrum;
pub mod symbol;
pub mod verify;

pub use catalog::{CartanDomain, DomainSpec};
pub use error::{Error, Result};
pub use quadrature::{jacobi_rule, radial_density_integral, QuadratureRule};
pub use spectrum::{eigenvalue, eigenvalue_table, EigenvalueRecord, MultiIndex};
pub use symbol::{builtin_symbol, check_symmetric, parse_symbol, Builtin, RadialSymbol};
