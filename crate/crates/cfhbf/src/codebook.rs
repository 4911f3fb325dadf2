//! Finite-resolution phase-shifter codebook.
//!
//! Analog combiner columns are built from phase shifters only, so every entry
//! has fixed magnitude `1/sqrt(Nr)` and a phase restricted to `2^bits` evenly
//! spaced values. Quantizing a vector maps each entry independently to the
//! nearest grid phase, which maximizes `|f^H u|` over the codebook.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{C64, CVec};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhaseCodebook {
    bits: u32,
    elements: usize,
}

impl PhaseCodebook {
    /// Codebook for combiner columns of length `elements` with `bits` of phase
    /// resolution.
    pub fn new(bits: u32, elements: usize) -> Self {
        assert!(bits >= 1 && bits <= 16, "phase bits must be in 1..=16, got {bits}");
        assert!(elements >= 1, "codebook needs at least one element");
        Self { bits, elements }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn elements(&self) -> usize {
        self.elements
    }

    /// Number of grid phases `2^bits`.
    pub fn levels(&self) -> usize {
        1usize << self.bits
    }

    /// Fixed entry magnitude `1/sqrt(elements)`.
    pub fn magnitude(&self) -> f64 {
        1.0 / (self.elements as f64).sqrt()
    }

    /// Grid phase for index `idx`.
    pub fn phase(&self, idx: usize) -> f64 {
        2.0 * std::f64::consts::PI * idx as f64 / self.levels() as f64
    }

    /// Index of the grid phase nearest to `angle` (radians, any branch).
    ///
    /// An exact midpoint resolves toward the smaller grid index.
    pub fn nearest_index(&self, angle: f64) -> usize {
        let levels = self.levels() as f64;
        let step = 2.0 * std::f64::consts::PI / levels;
        let mut x = angle / step;
        x -= (x / levels).floor() * levels;
        let idx = (x - 0.5).ceil() as i64;
        (idx.rem_euclid(self.levels() as i64)) as usize
    }

    /// Quantizes `u` onto the codebook entrywise.
    ///
    /// A zero entry maps to grid phase zero; an all-zero vector has no
    /// meaningful direction and is rejected.
    pub fn quantize(&self, u: &CVec) -> Result<CVec> {
        assert_eq!(u.len(), self.elements, "vector length does not match the codebook");
        if u.iter().all(|z| z.norm_sqr() == 0.0) {
            return Err(Error::DegenerateVector);
        }
        let mag = self.magnitude();
        Ok(CVec::from_fn(self.elements, |i, _| {
            let z = u[i];
            let idx = if z.norm_sqr() == 0.0 { 0 } else { self.nearest_index(z.arg()) };
            C64::from_polar(mag, self.phase(idx))
        }))
    }
}
