//! AP and UE placement.
//!
//! Both AP and UE positions are drawn independently and uniformly over a
//! square area. The draw order is fixed (all APs first, then all UEs, x before
//! y) so a topology is a pure function of the configuration and the generator
//! state.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::ScenarioConfig;

/// A point in the deployment plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Positions of all APs and UEs for one large-scale realization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Topology {
    pub aps: Vec<Point>,
    pub ues: Vec<Point>,
}

impl Topology {
    /// Distance in meters between UE `k` and AP `l`.
    pub fn distance(&self, k: usize, l: usize) -> f64 {
        self.ues[k].distance(&self.aps[l])
    }
}

/// Draws AP and UE positions uniformly over the configured square.
pub fn generate_topology<R: Rng>(cfg: &ScenarioConfig, rng: &mut R) -> Topology {
    let side = cfg.area_side_m;
    let mut draw = |n: usize| {
        (0..n)
            .map(|_| Point { x: side * rng.random::<f64>(), y: side * rng.random::<f64>() })
            .collect::<Vec<_>>()
    };
    let aps = draw(cfg.ap_count);
    let ues = draw(cfg.ue_count);
    Topology { aps, ues }
}
