//! Aggregate power-network frequency model
//! `G(s) = 1 / (m̂s + d̂ + Σ rᵢ⁻¹/(τᵢs + 1))` as an arrowhead system.

use crate::arrowhead::{to_state_space, ArrowheadRealization};
use crate::balance::{balance_with, certify_balanced, ReductionCertificate, ReductionMethod};
use crate::error::{Error, Result};
use crate::numkernel::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    /// Aggregate inertia.
    pub m_hat: f64,
    /// Aggregate damping.
    pub d_hat: f64,
    /// Inverse droop coefficients `rᵢ⁻¹`.
    pub droop_inv: Vec<f64>,
    /// Turbine time constants in seconds.
    pub tau: Vec<f64>,
}

impl GridConfig {
    pub fn validate(&self) -> Result<()> {
        let pos = |x: f64| x.is_finite() && x > 0.0;
        if !pos(self.m_hat) || !pos(self.d_hat) {
            return Err(Error::BadConfig("m_hat and d_hat must be positive".into()));
        }
        if self.droop_inv.is_empty() || self.droop_inv.len() != self.tau.len() {
            return Err(Error::BadConfig(format!(
                "need at least one generator and equal lengths (droop_inv {}, tau {})",
                self.droop_inv.len(),
                self.tau.len()
            )));
        }
        if !self.droop_inv.iter().chain(&self.tau).all(|&x| pos(x)) {
            return Err(Error::BadConfig("droop_inv and tau entries must be positive".into()));
        }
        for (i, a) in self.tau.iter().enumerate() {
            if let Some(j) = self.tau[i + 1..].iter().position(|b| b == a) {
                return Err(Error::BadConfig(format!(
                    "tau[{i}] and tau[{}] are both {a}; repeated time constants give repeated arrow \
                     diagonal entries and a non-minimal model",
                    i + 1 + j
                )));
            }
        }
        Ok(())
    }
}

/// Head `−d̂/m̂`, first row `1/m̂`, first column `−rᵢ⁻¹/τᵢ`, tail `−1/τᵢ`,
/// `γ = 1/m̂`.
pub fn build_grid_model(cfg: &GridConfig) -> Result<ArrowheadRealization> {
    cfg.validate()?;
    let m = cfg.tau.len();
    let mut d = vec![-cfg.d_hat / cfg.m_hat];
    d.extend(cfg.tau.iter().map(|t| -1.0 / t));
    let alpha = vec![1.0 / cfg.m_hat; m];
    let beta = cfg.droop_inv.iter().zip(&cfg.tau).map(|(r, t)| -r / t).collect();
    ArrowheadRealization::new(d, alpha, beta, 1.0 / cfg.m_hat)
}

pub fn grid_tightness_report(cfg: &GridConfig, method: ReductionMethod) -> Result<Vec<ReductionCertificate>> {
    grid_tightness_report_with(cfg, method, &Tolerances::default())
}

/// Certificates for every reduced order `r = 1..M`.
pub fn grid_tightness_report_with(
    cfg: &GridConfig,
    method: ReductionMethod,
    tol: &Tolerances,
) -> Result<Vec<ReductionCertificate>> {
    let sys = to_state_space(&build_grid_model(cfg)?);
    let bal = balance_with(&sys, tol)?;
    (1..=cfg.tau.len()).map(|r| certify_balanced(&bal, r, method, tol)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrowhead::{arrowhead_transfer, diagnose_signs};
    use num_complex::Complex64;

    fn single() -> GridConfig {
        GridConfig { m_hat: 0.05, d_hat: 0.04, droop_inv: vec![0.02], tau: vec![6.0] }
    }

    #[test]
    fn dc_gain_of_single_generator() {
        let ar = build_grid_model(&single()).unwrap();
        let g0 = arrowhead_transfer(&ar, Complex64::new(0.0, 0.0)).unwrap();
        assert!((g0.re - 1.0 / 0.06).abs() < 1e-12);
        assert!(diagnose_signs(&ar).unwrap().uniform_trailing);
    }

    #[test]
    fn single_generator_is_tight() {
        let certs = grid_tightness_report(&single(), ReductionMethod::Truncation).unwrap();
        assert_eq!(certs.len(), 1);
        assert!(certs[0].tight);
    }

    #[test]
    fn rejects_bad_configs() {
        let mut c = single();
        c.tau = vec![6.0, 6.0];
        c.droop_inv = vec![0.1, 0.2];
        assert!(matches!(build_grid_model(&c), Err(Error::BadConfig(_))));
        let mut c = single();
        c.m_hat = 0.0;
        assert!(build_grid_model(&c).is_err());
        let mut c = single();
        c.tau.clear();
        c.droop_inv.clear();
        assert!(build_grid_model(&c).is_err());
    }
}
