use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Albert-Barabási growth parameters.
///
/// Each step adds `m` links between existing nodes with probability `p`,
/// rewires `m` link heads with probability `q`, and otherwise adds a node
/// with `m` out-links.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbParams {
    pub n_target: usize,
    pub m: usize,
    pub p: f64,
    pub q: f64,
    pub seed: u64,
    pub allow_self_loops: bool,
    /// Seed clique linked in both directions; otherwise a directed ring.
    pub bidirectional_seed: bool,
    /// Redraws allowed for a link rejected as duplicate or self-loop.
    pub max_retries: usize,
}

impl AbParams {
    pub fn new(n_target: usize, m: usize, p: f64, q: f64, seed: u64) -> Self {
        AbParams {
            n_target,
            m,
            p,
            q,
            seed,
            allow_self_loops: false,
            bidirectional_seed: true,
            max_retries: 100,
        }
    }

    pub(crate) fn validate(&self, seed_nodes: usize) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidParams("m must be at least 1".into()));
        }
        if !(self.p >= 0.0 && self.q >= 0.0 && self.p + self.q < 1.0) {
            return Err(Error::InvalidParams(format!(
                "need p, q >= 0 and p + q < 1, got p = {}, q = {}",
                self.p, self.q
            )));
        }
        if self.n_target < seed_nodes {
            return Err(Error::InvalidParams(format!(
                "n_target = {} is smaller than the {seed_nodes}-node seed",
                self.n_target
            )));
        }
        Ok(())
    }
}

/// What happens to a candidate link between different colors that loses the
/// rule-breaking draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ForbiddenLink {
    /// Dropped; the source simply ends up with fewer links.
    Omit,
    /// Replaced by a fresh candidate, within the retry budget.
    Redraw,
}

/// Color-model parameters on top of the AB process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColorParams {
    pub ab: AbParams,
    /// Probability that a new node founds a new color.
    pub eta: f64,
    /// Probability that a link between different colors is kept.
    pub epsilon: f64,
    pub initial_colors: usize,
    pub forbidden: ForbiddenLink,
}

impl ColorParams {
    pub fn new(ab: AbParams, eta: f64, epsilon: f64) -> Self {
        ColorParams {
            ab,
            eta,
            epsilon,
            initial_colors: 3,
            forbidden: ForbiddenLink::Redraw,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.initial_colors == 0 {
            return Err(Error::InvalidParams("need at least one initial color".into()));
        }
        for (name, v) in [("eta", self.eta), ("epsilon", self.epsilon)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParams(format!("{name} = {v} outside [0, 1]")));
            }
        }
        self.ab.validate(self.initial_colors * (self.ab.m + 1))
    }
}

/// Avrachenkov-Lebedev growth parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlParams {
    pub n_target: usize,
    /// Out-links per new node, repetitions allowed.
    pub m: usize,
    pub seed: u64,
}

impl AlParams {
    pub fn new(n_target: usize, m: usize, seed: u64) -> Self {
        AlParams { n_target, m, seed }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidParams("m must be at least 1".into()));
        }
        if self.n_target < self.m + 1 {
            return Err(Error::InvalidParams(format!(
                "n_target = {} is smaller than the {}-node seed",
                self.n_target,
                self.m + 1
            )));
        }
        Ok(())
    }
}
