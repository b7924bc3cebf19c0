//! Central tolerance record. Every threshold the library compares against
//! lives here so callers can audit or override them in one place.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// LU pivot floor relative to `‖A‖_∞`.
    pub lu_pivot: f64,
    /// Symmetry check for `sym_eig`, relative to `‖A‖_∞`.
    pub symmetry: f64,
    /// QR sweep budget per matrix dimension.
    pub qr_sweeps_per_dim: usize,
    /// Gramian definiteness: smallest eigenvalue over largest.
    pub minimality: f64,
    /// Relative gap below which two Hankel singular values are one group.
    pub hsv_group_gap: f64,
    /// Smallest admissible `σ_min / σ_max`.
    pub hsv_floor: f64,
    /// Largest admissible `|Im λ| / |λ|` for cross-Gramian eigenvalues.
    pub complex_eig: f64,
    /// Relative agreement between bound and achieved error for a tight verdict.
    pub cert_tol: f64,
    /// Relative bracket width at which H∞ bisection stops.
    pub hinf_tol: f64,
    /// Relative distance to the imaginary axis for Hamiltonian eigenvalues.
    pub imag_axis: f64,
    /// Canonical-form symmetry tolerance.
    pub canonical: f64,
    /// Arrowhead off-diagonal entries below this (relative) count as zero.
    pub arrow_zero: f64,
    /// Arrowhead tail diagonal entries closer than this (relative) are repeated.
    pub arrow_gap: f64,
    /// Arrowhead inverse pivots below this (relative) are singular.
    pub singular_shift: f64,
    /// Largest dimension for which Lyapunov/Sylvester use the Kronecker solve.
    pub kronecker_max_n: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            lu_pivot: 1e-14,
            symmetry: 1e-10,
            qr_sweeps_per_dim: 30,
            minimality: 1e-14,
            hsv_group_gap: 1e-8,
            hsv_floor: 1e-13,
            complex_eig: 1e-8,
            cert_tol: 1e-6,
            hinf_tol: 1e-8,
            imag_axis: 1e-8,
            canonical: 1e-8,
            arrow_zero: 1e-13,
            arrow_gap: 1e-12,
            singular_shift: 1e-13,
            kronecker_max_n: 24,
        }
    }
}

impl Tolerances {
    /// Applies an override string: either a bare number (sets `hinf_tol`) or
    /// comma-separated `name=value` pairs.
    pub fn apply_overrides(&mut self, spec: &str) -> Result<()> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(());
        }
        if let Ok(v) = spec.parse::<f64>() {
            self.hinf_tol = positive("hinf_tol", v)?;
            return Ok(());
        }
        for pair in spec.split(',') {
            let (name, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::BadInput(format!("tolerance override `{pair}` is not name=value")))?;
            let name = name.trim();
            let value = value.trim();
            let num = || {
                value
                    .parse::<f64>()
                    .map_err(|_| Error::BadInput(format!("tolerance `{name}` has non-numeric value `{value}`")))
                    .and_then(|v| positive(name, v))
            };
            let count = || {
                value
                    .parse::<usize>()
                    .map_err(|_| Error::BadInput(format!("tolerance `{name}` needs an integer, got `{value}`")))
            };
            match name {
                "lu_pivot" => self.lu_pivot = num()?,
                "symmetry" => self.symmetry = num()?,
                "qr_sweeps_per_dim" => self.qr_sweeps_per_dim = count()?,
                "minimality" => self.minimality = num()?,
                "hsv_group_gap" => self.hsv_group_gap = num()?,
                "hsv_floor" => self.hsv_floor = num()?,
                "complex_eig" => self.complex_eig = num()?,
                "cert_tol" => self.cert_tol = num()?,
                "hinf_tol" => self.hinf_tol = num()?,
                "imag_axis" => self.imag_axis = num()?,
                "canonical" => self.canonical = num()?,
                "arrow_zero" => self.arrow_zero = num()?,
                "arrow_gap" => self.arrow_gap = num()?,
                "singular_shift" => self.singular_shift = num()?,
                "kronecker_max_n" => self.kronecker_max_n = count()?,
                other => return Err(Error::BadInput(format!("unknown tolerance `{other}`"))),
            }
        }
        Ok(())
    }
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::BadInput(format!("tolerance `{name}` must be positive and finite")))
    }
}
