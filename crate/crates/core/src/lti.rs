//! SISO state-space systems `G(s) = c(sI − A)⁻¹b + d`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gramian;
use crate::numkernel::{complex_solve, eigenvalues, lu_solve, sym_eig, Matrix, Tolerances};

#[derive(Debug, Clone, PartialEq)]
pub struct StateSpace {
    pub a: Matrix,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub d: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    pub stable: bool,
    /// Largest real part over the spectrum of `A`; `-∞` for an empty state.
    pub spectral_abscissa: f64,
}

impl StateSpace {
    pub fn new(a: Matrix, b: Vec<f64>, c: Vec<f64>, d: f64) -> Result<Self> {
        let n = a.rows();
        if !a.is_square() {
            return Err(Error::BadDimension(format!("A must be square, got {}x{}", a.rows(), a.cols())));
        }
        if b.len() != n || c.len() != n {
            return Err(Error::BadDimension(format!(
                "A is {n}x{n} but b has {} and c has {} entries",
                b.len(),
                c.len()
            )));
        }
        if !a.is_finite() || !b.iter().chain(&c).all(|x| x.is_finite()) || !d.is_finite() {
            return Err(Error::BadInput("state-space entries must be finite".into()));
        }
        Ok(Self { a, b, c, d })
    }

    /// Feedthrough-only system with no states.
    pub fn static_gain(d: f64) -> Self {
        Self { a: Matrix::zeros(0, 0), b: vec![], c: vec![], d }
    }

    pub fn order(&self) -> usize {
        self.a.rows()
    }

    /// `(TAT⁻¹, Tb, cT⁻¹, d)`.
    pub fn transform(&self, t: &Matrix, t_inv: &Matrix) -> Self {
        let a = &(t * &self.a) * t_inv;
        let b = (t * &Matrix::column(&self.b)).into_vec();
        let c = (&Matrix::row(&self.c) * t_inv).into_vec();
        Self { a, b, c, d: self.d }
    }
}

/// `c(sI − A)⁻¹b + d`.
pub fn transfer_eval(sys: &StateSpace, s: Complex64) -> Result<Complex64> {
    let n = sys.order();
    if n == 0 {
        return Ok(Complex64::new(sys.d, 0.0));
    }
    let mut m: Vec<Complex64> = sys.a.as_slice().iter().map(|&x| Complex64::new(-x, 0.0)).collect();
    for i in 0..n {
        m[i * n + i] += s;
    }
    let rhs = sys.b.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    // pivot floor relative to ‖sI − A‖, so a pole makes the solve fail
    let x = complex_solve(n, m, rhs, Tolerances::default().lu_pivot)?;
    Ok(x.iter().zip(&sys.c).map(|(xi, ci)| xi * ci).sum::<Complex64>() + sys.d)
}

pub fn check_stability(sys: &StateSpace) -> Result<StabilityReport> {
    let eig = eigenvalues(&sys.a)?;
    let abscissa = eig.values.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    Ok(StabilityReport { stable: abscissa < 0.0, spectral_abscissa: abscissa })
}

pub(crate) fn require_stable(sys: &StateSpace) -> Result<()> {
    let rep = check_stability(sys)?;
    if rep.stable {
        Ok(())
    } else {
        Err(Error::NotStable(rep.spectral_abscissa))
    }
}

pub fn check_minimality(sys: &StateSpace) -> Result<bool> {
    check_minimality_with(sys, &Tolerances::default())
}

/// Minimal iff both Gramians are numerically positive definite:
/// `λ_min > tol.minimality · λ_max` for each.
pub fn check_minimality_with(sys: &StateSpace, tol: &Tolerances) -> Result<bool> {
    require_stable(sys)?;
    if sys.order() == 0 {
        return Ok(true);
    }
    let g = gramian::gramians_with(sys, tol)?;
    for m in [&g.p, &g.q] {
        let (l, _) = sym_eig(m)?;
        let max = l[0];
        let min = *l.last().expect("nonempty spectrum");
        if !(max > 0.0) || min <= tol.minimality * max {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(A[..k, ..k], b[..k], c[..k], d)`.
pub fn leading_subsystem(sys: &StateSpace, k: usize) -> Result<StateSpace> {
    let n = sys.order();
    if k == 0 || k >= n {
        return Err(Error::BadDimension(format!("leading subsystem order {k} must lie in 1..{n}")));
    }
    Ok(StateSpace {
        a: sys.a.block(0, k, 0, k),
        b: sys.b[..k].to_vec(),
        c: sys.c[..k].to_vec(),
        d: sys.d,
    })
}

/// Block-diagonal realization of `G − Gᵣ`.
pub fn error_system(full: &StateSpace, reduced: &StateSpace) -> StateSpace {
    let n = full.order();
    let r = reduced.order();
    let mut a = Matrix::zeros(n + r, n + r);
    a.set_block(0, 0, &full.a);
    a.set_block(n, n, &reduced.a);
    let b = full.b.iter().chain(&reduced.b).copied().collect();
    let c = full.c.iter().copied().chain(reduced.c.iter().map(|x| -x)).collect();
    StateSpace { a, b, c, d: full.d - reduced.d }
}

/// `d − cA⁻¹b`.
pub fn dc_gain(sys: &StateSpace) -> Result<f64> {
    if sys.order() == 0 {
        return Ok(sys.d);
    }
    let x = lu_solve(&sys.a, &Matrix::column(&sys.b))?;
    Ok(sys.d - x.as_slice().iter().zip(&sys.c).map(|(x, c)| x * c).sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first_order() -> StateSpace {
        StateSpace::new(Matrix::from_rows(&[[-1.0]]).unwrap(), vec![1.0], vec![1.0], 0.0).unwrap()
    }

    #[test]
    fn evaluates_first_order_lag() {
        let g = first_order();
        assert!((transfer_eval(&g, Complex64::new(0.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        let z = transfer_eval(&g, Complex64::new(0.0, 1.0)).unwrap();
        assert!((z - Complex64::new(0.5, -0.5)).norm() < 1e-15);
        assert_eq!(transfer_eval(&StateSpace::static_gain(-3.0), Complex64::new(2.0, 5.0)).unwrap().re, -3.0);
    }

    #[test]
    fn pole_is_singular() {
        let g = first_order();
        assert_eq!(transfer_eval(&g, Complex64::new(-1.0, 0.0)), Err(Error::SingularMatrix));
    }

    #[test]
    fn marginal_is_unstable() {
        let rot = StateSpace::new(Matrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]).unwrap(), vec![0.0, 1.0], vec![1.0, 0.0], 0.0)
            .unwrap();
        let rep = check_stability(&rot).unwrap();
        assert!(!rep.stable);
        assert!(rep.spectral_abscissa.abs() < 1e-14);
        assert!(matches!(check_minimality(&rot), Err(Error::NotStable(_))));
        let rep = check_stability(&first_order()).unwrap();
        assert_eq!(rep.spectral_abscissa, -1.0);
    }

    #[test]
    fn duplicated_state_is_not_minimal() {
        assert!(check_minimality(&first_order()).unwrap());
        let dup = StateSpace::new(Matrix::diag(&[-1.0, -1.0]), vec![1.0, 1.0], vec![1.0, 0.0], 0.0).unwrap();
        assert!(!check_minimality(&dup).unwrap());
    }

    #[test]
    fn subsystems_and_dc() {
        let g = StateSpace::new(
            Matrix::from_rows(&[[-1.0, 0.5, 0.2], [0.1, -2.0, 0.0], [0.3, 0.0, -3.0]]).unwrap(),
            vec![1.0, 2.0, 3.0],
            vec![4.0, 5.0, 6.0],
            0.5,
        )
        .unwrap();
        let g1 = leading_subsystem(&g, 1).unwrap();
        assert_eq!((g1.a[(0, 0)], g1.b[0], g1.c[0], g1.d), (-1.0, 1.0, 4.0, 0.5));
        assert!(leading_subsystem(&g, 3).is_err());
        let s0 = transfer_eval(&g, Complex64::new(0.0, 0.0)).unwrap();
        assert!((dc_gain(&g).unwrap() - s0.re).abs() < 1e-13);
        assert_eq!(dc_gain(&StateSpace::static_gain(2.5)).unwrap(), 2.5);
        let e = error_system(&g, &g);
        assert!(transfer_eval(&e, Complex64::new(0.3, 1.7)).unwrap().norm() < 1e-14);
        let e0 = error_system(&g, &StateSpace::static_gain(0.0));
        let s = Complex64::new(0.0, 0.7);
        assert!((transfer_eval(&e0, s).unwrap() - transfer_eval(&g, s).unwrap()).norm() < 1e-14);
    }
}
