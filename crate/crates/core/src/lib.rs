//! Generalized matrix functions of complex matrices — determinants,
//! permanents, immanants, and induced-character immanants — together
//! with their exact conjugation averages over the unitary group and
//! Monte Carlo estimators that cross-check every closed form.
//!
//! The crate is organized around the pipeline the closed forms need:
//!
//! * [`partitions`] — integer partitions, dominance order, hook-length
//!   and hook-content tableau counts.
//! * [`symchar`] — conjugacy classes and characters of the symmetric
//!   group, Kostka numbers, induced permutation characters.
//! * [`matrixfn`] — complex matrices, `d_f(A)` permutation sums, the
//!   Ryser permanent, a Jacobi eigensolver, matrix file formats.
//! * [`schur`] — Schur polynomial evaluation at spectra (power-sum
//!   expansion) and at the all-ones point (exact hook content).
//! * [`haar`] — Haar-unitary sampling and streaming Monte Carlo
//!   estimation of conjugation averages.
//! * [`closedform`] — the exact averaged immanant, averaged
//!   induced-character immanant, matrix-element integral expansion, and
//!   submodule traces.
//! * [`verify`] — seeded inequality verification campaigns.
//! * [`cli`] — the `haar-immanants` command-line front end.

pub mod cli;
pub mod closedform;
pub mod error;
pub mod haar;
pub mod matrixfn;
pub mod partitions;
pub mod schur;
pub mod symchar;
pub mod verify;

pub use error::{Error, Result};
