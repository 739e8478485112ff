use crate::error::{Error, Result};

/// Numerical thresholds used throughout the crate.
///
/// `rank_tol` and `cluster_tol` are relative: a singular value counts as zero
/// below `rank_tol * sigma_max`, and eigenvalues closer than
/// `cluster_tol * norm` are merged into one cluster. `residual_tol` bounds
/// verification residuals, scaled by the norms of the participating matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub rank_tol: f64,
    pub cluster_tol: f64,
    pub residual_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_tol: 1e-9,
            cluster_tol: 1e-6,
            residual_tol: 1e-8,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.rank_tol > 0.0
            && self.rank_tol < 1.0
            && self.cluster_tol > 0.0
            && self.residual_tol > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(
                "tolerances must be strictly positive and rank_tol < 1".into(),
            ))
        }
    }

    /// Absolute clustering radius for a matrix of the given norm.
    pub fn cluster_radius(&self, scale: f64) -> f64 {
        self.cluster_tol * scale.max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        ToleranceConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_nonpositive() {
        let bad = ToleranceConfig {
            rank_tol: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
