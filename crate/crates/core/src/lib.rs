//! Simulation and verification toolkit for the bomb-and-prize game.
//!
//! The crate is organised bottom-up:
//!
//! * [`numkit`]: complex matrices, Jacobi eigensolver, entropies, rationals, RNG.
//! * [`qchannel`]: qubit channels (Pauli, UNOT, CQ, NOT mixtures), the PPT
//!   entanglement-breaking test, degradation weights and capacities.
//! * [`game`]: game configurations, strategy distributions, worst-case and
//!   average metrics, quantum protocol evaluation.
//! * [`classical`]: bit-channel strategies, the ambiguous-probability bound,
//!   Blahut–Arimoto, exhaustive zero-prize enumeration.
//! * [`simkit`]: strategy matrices and subtypes, the exact simulation
//!   feasibility analysis, and classical simulations of EB channels.

// Matrix code reads more clearly with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod classical;
pub mod error;
pub mod game;
pub mod numkit;
pub mod qchannel;
pub mod simkit;

pub use error::{Error, Result};
pub use numkit::{CMatrix, Prob, ProbVector, Rational, C64};
