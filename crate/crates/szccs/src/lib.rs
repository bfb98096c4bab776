//! Symmetrical Z-complementary code sets (SZCCS): construction,
//! verification, and application to GSM training design.
//!
//! The crate is organized bottom-up:
//!
//! | module      | contents                                                       |
//! |-------------|----------------------------------------------------------------|
//! | [`gbf`]     | generalized Boolean functions, permutations, unimodular sequences |
//! | [`corr`]    | aperiodic/periodic correlations, naive + FFT paths, exact mode |
//! | [`codeset`] | code sets, SZCCS/GCP verifiers, bound, P1/P2 transforms        |
//! | [`construct`] | Golay pairs, the two SZCCS constructions, baseline families  |
//! | [`training`]  | sparse GSM training matrices and their optimality criteria  |
//! | [`chansim`]   | frequency-selective channel Monte-Carlo and LS estimation    |
//!
//! The `szccs` binary exposes all of it behind `generate`, `verify`,
//! `corr`, `train`, `simulate` and `report` subcommands.

pub mod chansim;
pub mod codeset;
pub mod corr;
pub mod construct;
pub mod error;
pub mod gbf;
pub mod training;

pub use error::{Error, Result};
