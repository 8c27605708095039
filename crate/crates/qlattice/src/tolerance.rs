//! The single tolerance policy threaded through every numerical decision.

use crate::error::{Error, Result};

/// Numerical thresholds used by all rank, equality, and semidefiniteness
/// decisions in the crate.
///
/// One policy value travels through every layer so that a computation is
/// reproducible from its inputs plus this struct alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolerancePolicy {
    /// Relative singular-value cutoff for rank decisions: a singular value
    /// is retained when it exceeds `rank_rtol * max(sigma_max, 1)`.
    pub rank_rtol: f64,
    /// Absolute tolerance for entrywise / Frobenius-norm comparisons.
    pub eq_atol: f64,
    /// Slack allowed on eigenvalue sign tests (positive/negative
    /// semidefiniteness, probability ordering).
    pub psd_atol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            rank_rtol: 1e-10,
            eq_atol: 1e-9,
            psd_atol: 1e-9,
        }
    }
}

impl TolerancePolicy {
    pub fn new(rank_rtol: f64, eq_atol: f64, psd_atol: f64) -> Result<Self> {
        let policy = Self {
            rank_rtol,
            eq_atol,
            psd_atol,
        };
        policy.validate()?;
        Ok(policy)
    }

    /// Tighter thresholds for well-conditioned inputs.
    pub fn strict() -> Self {
        Self {
            rank_rtol: 1e-12,
            eq_atol: 1e-11,
            psd_atol: 1e-11,
        }
    }

    /// Looser thresholds for noisy input data.
    pub fn relaxed() -> Self {
        Self {
            rank_rtol: 1e-8,
            eq_atol: 1e-7,
            psd_atol: 1e-7,
        }
    }

    /// Look up a named profile: `default`, `strict`, or `relaxed`.
    pub fn named(name: &str) -> Result<Self> {
        match name {
            "default" => Ok(Self::default()),
            "strict" => Ok(Self::strict()),
            "relaxed" => Ok(Self::relaxed()),
            _ => Err(Error::UnknownToleranceProfile {
                name: name.to_string(),
            }),
        }
    }

    pub fn with_rank_rtol(mut self, rank_rtol: f64) -> Result<Self> {
        self.rank_rtol = rank_rtol;
        self.validate()?;
        Ok(self)
    }

    pub fn with_eq_atol(mut self, eq_atol: f64) -> Result<Self> {
        self.eq_atol = eq_atol;
        self.validate()?;
        Ok(self)
    }

    pub fn with_psd_atol(mut self, psd_atol: f64) -> Result<Self> {
        self.psd_atol = psd_atol;
        self.validate()?;
        Ok(self)
    }

    /// Threshold for projector-distance equality of subspaces of an
    /// ambient space of dimension `d`.
    pub fn subspace_eq_tol(&self, d: usize) -> f64 {
        self.eq_atol * (d as f64).sqrt()
    }

    fn validate(&self) -> Result<()> {
        if !(self.rank_rtol > 0.0 && self.eq_atol > 0.0 && self.psd_atol > 0.0) {
            return Err(Error::InvalidTolerance {
                reason: format!(
                    "all thresholds must be strictly positive (rank_rtol={}, eq_atol={}, psd_atol={})",
                    self.rank_rtol, self.eq_atol, self.psd_atol
                ),
            });
        }
        if self.rank_rtol >= 1e-3 {
            return Err(Error::InvalidTolerance {
                reason: format!("rank_rtol must stay below 1e-3, got {}", self.rank_rtol),
            });
        }
        Ok(())
    }
}
