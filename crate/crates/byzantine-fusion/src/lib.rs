//! Distributed Bayesian detection under Byzantine data falsification.
//!
//! A fusion center combines one-bit reports from `N` sensors, a fraction
//! `alpha` of which have been compromised and may flip their local decisions
//! before reporting. This crate computes the report distributions seen by the
//! fusion center, the Chernoff information that governs the asymptotic error
//! exponent of the optimal fused detector, the attacker's blinding conditions
//! and optimal flipping strategies, and exact finite-`N` / Monte Carlo
//! oracles used to cross-validate the asymptotics.
//!
//! Modules:
//! - [`model`]: sensor operating points, attack strategies, fused marginals.
//! - [`chernoff`]: Chernoff information, closed-form optimizer, brute-force
//!   numeric optimizer, analytic optimizer brackets.
//! - [`adversary`]: blinding fractions, optimal attacks, robust design.
//! - [`oracle`]: exact Bayesian error probability and error-exponent fits.
//! - [`sim`]: deterministic Monte Carlo simulation of the full pipeline.
//! - [`cli`]: command-line front-end (config files, sweeps, CSV/JSON output).

pub mod adversary;
pub mod chernoff;
pub mod cli;
pub mod error;
pub mod model;
pub mod numeric;
pub mod oracle;
pub mod sim;

pub use adversary::{AttackRegime, OptimalAttack};
pub use chernoff::{ChernoffResult, TStarBracket};
pub use error::{Error, Result};
pub use model::{
    AttackStrategy, FusedMarginals, GaussianSensingModel, NetworkParams, SensorOperatingPoint,
};
pub use oracle::ExponentFit;
pub use sim::{SamplingMode, SimulationReport};
