//! Tools for analyzing the three-card guessing game and the quantum
//! circuit that is sometimes proposed as a winning strategy for it.
//!
//! The crate splits into three largely independent layers:
//!
//! * [`qstate`] is a small exact statevector simulator: complex amplitudes,
//!   single-qubit gates, controlled-Z, and a full-matrix reference path used
//!   to cross-check the fast kernels.
//! * [`oracle`] builds the card-readout circuits on top of [`qstate`] and
//!   checks that their output is a deterministic copy of the card faces.
//! * [`game`] models the game itself: deck, shuffle, Bob's strategies, payoff
//!   schemes, exact expected payoffs over rationals, and seeded Monte Carlo
//!   estimates.

pub mod game;
pub mod oracle;
pub mod qstate;
