//! H∞ norm by Hamiltonian bisection, plus frequency-response sampling.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lti::{require_stable, transfer_eval, StateSpace};
use crate::numkernel::{eigenvalues, Matrix, Tolerances};

const GRID_POINTS: usize = 400;
const MAX_BISECTIONS: usize = 200;
const MAX_BRACKET_DOUBLINGS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HinfResult {
    pub norm: f64,
    /// Frequency (rad/s) where the norm is attained; `+∞` when the
    /// supremum is the high-frequency limit `|d|`.
    pub peak_frequency: f64,
    pub iterations: usize,
}

pub fn hinf_norm(sys: &StateSpace) -> Result<HinfResult> {
    hinf_norm_with(sys, &Tolerances::default())
}

/// `sup_ω |G(iω)|`. The returned norm is always a value of `|G|` actually
/// attained (a verified lower bound) and lies within `tol.hinf_tol`
/// relative of the supremum.
pub fn hinf_norm_with(sys: &StateSpace, tol: &Tolerances) -> Result<HinfResult> {
    require_stable(sys)?;
    let mut best = Peak { value: sys.d.abs(), omega: f64::INFINITY };
    let n = sys.order();
    if n == 0 {
        return Ok(HinfResult { norm: best.value, peak_frequency: 0.0, iterations: 0 });
    }
    best.offer(0.0, mag(sys, 0.0)?);

    let spectrum = eigenvalues(&sys.a)?;
    let radii: Vec<f64> = spectrum.values.iter().map(|z| z.norm()).filter(|&r| r > 0.0).collect();
    let lo = radii.iter().copied().fold(f64::INFINITY, f64::min) * 1e-3;
    let hi = radii.iter().copied().fold(0.0, f64::max) * 1e3;
    let grid = log_grid(lo, hi, GRID_POINTS);
    let mut argmax = None;
    for (k, &w) in grid.iter().enumerate() {
        let m = mag(sys, w)?;
        if m > best.value {
            best = Peak { value: m, omega: w };
            argmax = Some(k);
        }
    }
    if let Some(k) = argmax {
        let a = grid[k.saturating_sub(1)];
        let b = grid[(k + 1).min(grid.len() - 1)];
        golden_section(sys, a, b, &mut best)?;
    }

    let bc = norm2(&sys.b) * norm2(&sys.c);
    if best.value <= 1e-13 * bc.max(1.0) {
        // G is numerically zero; the Hamiltonian test has nothing to resolve
        return Ok(HinfResult { norm: best.value, peak_frequency: best.omega, iterations: 0 });
    }

    let mut iterations = 0;
    let mut ub = 2.0 * best.value.max(sys.d.abs() * (1.0 + 1e-10));
    let mut doublings = 0;
    while let Some(found) = crossing(sys, ub, tol)? {
        best.offer(found.omega, found.value);
        ub = 2.0 * best.value.max(ub);
        doublings += 1;
        if doublings > MAX_BRACKET_DOUBLINGS {
            return Err(Error::NoConvergence(MAX_BRACKET_DOUBLINGS));
        }
    }
    while ub - best.value > tol.hinf_tol * best.value {
        iterations += 1;
        if iterations > MAX_BISECTIONS {
            return Err(Error::NoConvergence(MAX_BISECTIONS));
        }
        let gamma = 0.5 * (best.value + ub);
        match crossing(sys, gamma, tol)? {
            Some(found) => best.offer(found.omega, found.value),
            None => ub = gamma,
        }
    }
    Ok(HinfResult { norm: best.value, peak_frequency: best.omega, iterations })
}

#[derive(Debug, Clone, Copy)]
struct Peak {
    value: f64,
    omega: f64,
}

impl Peak {
    fn offer(&mut self, omega: f64, value: f64) {
        if value > self.value {
            *self = Peak { value, omega };
        }
    }
}

fn mag(sys: &StateSpace, w: f64) -> Result<f64> {
    Ok(transfer_eval(sys, Complex64::new(0.0, w))?.norm())
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (l, h) = (lo.log10(), hi.log10());
    (0..points).map(|k| 10f64.powf(l + (h - l) * k as f64 / (points - 1) as f64)).collect()
}

fn golden_section(sys: &StateSpace, a: f64, b: f64, best: &mut Peak) -> Result<()> {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (a.ln(), b.ln());
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let mut f1 = mag(sys, x1.exp())?;
    let mut f2 = mag(sys, x2.exp())?;
    for _ in 0..80 {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = mag(sys, x1.exp())?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = mag(sys, x2.exp())?;
        }
        if (b - a).abs() < 1e-12 {
            break;
        }
    }
    best.offer(x1.exp(), f1);
    best.offer(x2.exp(), f2);
    Ok(())
}

/// Hamiltonian level-set test at `γ > |d|`. Returns a frequency where
/// `|G| > γ` if one exists among the imaginary-axis eigenvalues of `H(γ)`
/// and the midpoints between them; `None` certifies `γ` as an upper bound.
fn crossing(sys: &StateSpace, gamma: f64, tol: &Tolerances) -> Result<Option<Peak>> {
    let n = sys.order();
    let d = sys.d;
    let r = gamma * gamma - d * d;
    let b = Matrix::column(&sys.b);
    let c = Matrix::row(&sys.c);
    let ad = &sys.a + &(&b * &c).scale(d / r);
    let mut h = Matrix::zeros(2 * n, 2 * n);
    h.set_block(0, 0, &ad);
    h.set_block(0, n, &(&b * &b.transpose()).scale(gamma / r));
    h.set_block(n, 0, &(&c.transpose() * &c).scale(-gamma / r));
    h.set_block(n, n, &ad.transpose().scale(-1.0));
    let axis = tol.imag_axis * h.norm_inf().max(1.0);
    let mut freqs: Vec<f64> = eigenvalues(&h)?
        .values
        .iter()
        .filter(|z| z.re.abs() <= axis)
        .map(|z| z.im.abs())
        .collect();
    if freqs.is_empty() {
        return Ok(None);
    }
    freqs.push(0.0);
    freqs.sort_by(|a, b| a.partial_cmp(b).expect("finite frequencies"));
    let mut probe: Vec<f64> = freqs.clone();
    probe.extend(freqs.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    let mut best = Peak { value: gamma, omega: f64::NAN };
    for w in probe {
        best.offer(w, mag(sys, w)?);
    }
    Ok(if best.omega.is_nan() { None } else { Some(best) })
}

/// `G(iω)` at each grid point; failures (a pole on the axis) are reported
/// per point.
pub fn frequency_response(sys: &StateSpace, omegas: &[f64]) -> Vec<(f64, Result<Complex64>)> {
    omegas.iter().map(|&w| (w, transfer_eval(sys, Complex64::new(0.0, w)))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lti::{dc_gain, error_system};

    fn lag(k: f64) -> StateSpace {
        StateSpace::new(Matrix::from_rows(&[[-1.0]]).unwrap(), vec![k], vec![1.0], 0.0).unwrap()
    }

    #[test]
    fn first_order_peaks_at_dc() {
        let r = hinf_norm(&lag(1.0)).unwrap();
        assert!((r.norm - 1.0).abs() < 1e-12);
        assert_eq!(r.peak_frequency, 0.0);
        assert!((hinf_norm(&lag(2.0)).unwrap().norm - 2.0).abs() < 1e-12);
    }

    #[test]
    fn static_gain() {
        let r = hinf_norm(&StateSpace::static_gain(-3.0)).unwrap();
        assert_eq!(r.norm, 3.0);
    }

    #[test]
    fn resonant_peak() {
        // ω₀ = 1, ζ = 0.05: peak 1/(2ζ√(1−ζ²)) at ω = √(1−2ζ²)
        let z: f64 = 0.05;
        let sys = StateSpace::new(Matrix::from_rows(&[[0.0, 1.0], [-1.0, -2.0 * z]]).unwrap(), vec![0.0, 1.0], vec![1.0, 0.0], 0.0)
            .unwrap();
        let r = hinf_norm(&sys).unwrap();
        let want = 1.0 / (2.0 * z * (1.0 - z * z).sqrt());
        assert!(((r.norm - want) / want).abs() < 1e-8, "{} vs {want}", r.norm);
        assert!((r.peak_frequency - (1.0 - 2.0 * z * z).sqrt()).abs() < 1e-3);
    }

    #[test]
    fn high_frequency_supremum() {
        // G = 2 − 1/(s+1): |G| rises from 1 at dc to 2 at ω → ∞
        let sys = StateSpace::new(Matrix::from_rows(&[[-1.0]]).unwrap(), vec![1.0], vec![-1.0], 2.0).unwrap();
        let r = hinf_norm(&sys).unwrap();
        assert_eq!(r.norm, 2.0);
        assert!(r.peak_frequency.is_infinite());
    }

    #[test]
    fn zero_error_system() {
        let g = lag(1.0);
        assert!(hinf_norm(&error_system(&g, &g)).unwrap().norm <= 1e-12);
    }

    #[test]
    fn response_grid() {
        let g = lag(1.0);
        assert!(frequency_response(&g, &[]).is_empty());
        let r = frequency_response(&g, &[0.0]);
        assert_eq!(r[0].1.clone().unwrap().re, dc_gain(&g).unwrap());
    }
}
