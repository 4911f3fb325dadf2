//! Simulation library for the uplink of a cell-free millimeter-wave massive
//! MIMO system in which distributed access points (APs) apply analog phase-
//! shifter combining and forward low-dimensional observations to a central
//! processing unit (CPU).
//!
//! The library covers the full experiment pipeline:
//!
//! * random AP/UE topologies, distance-dependent link states and path loss,
//!   and clustered geometric channel realizations ([`geometry`], [`link`],
//!   [`channel`]);
//! * analog combiner construction: centralized sequential hybrid beamforming,
//!   per-AP semi-centralized hybrid beamforming, codebook beam steering, and
//!   antenna selection ([`combining`], [`codebook`]);
//! * adaptive RF chain activation under a network-wide budget: tabu search,
//!   a fast sorted heuristic, singular-value and path-loss based allocation,
//!   and an exhaustive oracle ([`arfa`]);
//! * power consumption and energy-efficiency models for each receiver
//!   architecture ([`power`]);
//! * a deterministic, seed-stable Monte-Carlo experiment harness with CSV and
//!   JSON emission ([`experiments`]).
//!
//! All randomness flows through caller-supplied seeded generators; every
//! record emitted by the harness carries the seed that reproduces it.

pub mod arfa;
pub mod channel;
pub mod codebook;
pub mod combining;
pub mod config;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod link;
pub mod power;

pub use channel::ChannelRealization;
pub use codebook::PhaseCodebook;
pub use combining::{AnalogCombiner, RateBreakdown};
pub use config::{PathLossModel, ScenarioConfig};
pub use error::Error;
pub use experiments::{ExperimentPlan, MetricsRecord, Scheme};
pub use geometry::Topology;
pub use link::LinkState;
pub use power::PowerModel;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex<f64>;
/// Dense complex matrix.
pub type CMat = nalgebra::DMatrix<C64>;
/// Dense complex column vector.
pub type CVec = nalgebra::DVector<C64>;
