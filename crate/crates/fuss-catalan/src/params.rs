//! Parameter pair and indexed real sequences shared by every module.

use crate::error::{Error, Result};

/// The (p, r) parameter pair, restricted to p >= 1, 0 < r <= p.
///
/// Every distribution in the crate is indexed by such a pair. Other parameter
/// ranges either reduce to this one by reflection or carry no probability
/// measure, so they are rejected at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FcParams {
    p: f64,
    r: f64,
}

impl FcParams {
    pub fn new(p: f64, r: f64) -> Result<Self> {
        if !p.is_finite() || !r.is_finite() {
            return Err(Error::InvalidParams(format!(
                "parameters must be finite, got (p, r) = ({p}, {r})"
            )));
        }
        if !(p >= 1.0) {
            return Err(Error::InvalidParams(format!(
                "p must satisfy p >= 1, got p = {p}"
            )));
        }
        if !(r > 0.0 && r <= p) {
            return Err(Error::InvalidParams(format!(
                "r must satisfy 0 < r <= p, got (p, r) = ({p}, {r})"
            )));
        }
        Ok(Self { p, r })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// The point mass at 1 (p = r = 1), the only non-absolutely-continuous
    /// member of the family.
    pub fn is_point_mass(&self) -> bool {
        self.p == 1.0 && self.r == 1.0
    }
}

/// A finite real sequence whose first entry carries the absolute index
/// `start_index` (0 for moment sequences m_0, m_1, ..., 1 for cumulant
/// sequences r_1, r_2, ...).
#[derive(Debug, Clone, PartialEq)]
pub struct RealSequence {
    start_index: usize,
    values: Vec<f64>,
}

impl RealSequence {
    pub fn new(start_index: usize, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParams("sequence must be non-empty".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "sequence entries must be finite, found {bad}"
            )));
        }
        Ok(Self {
            start_index,
            values,
        })
    }

    pub fn start_index(&self) -> usize {
        self.start_index
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest absolute index held by the sequence.
    pub fn max_index(&self) -> usize {
        self.start_index + self.values.len() - 1
    }

    /// Entry at absolute index `idx`, if present.
    pub fn get(&self, idx: usize) -> Option<f64> {
        if idx < self.start_index {
            return None;
        }
        self.values.get(idx - self.start_index).copied()
    }

    /// Entry at absolute index `idx`, or a length error.
    pub fn try_get(&self, idx: usize) -> Result<f64> {
        self.get(idx).ok_or(Error::SequenceTooShort {
            needed: idx,
            have: self.max_index(),
        })
    }
}
