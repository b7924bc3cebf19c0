use num_complex::Complex64;

use super::matrix::Matrix;
use super::tol::Tolerances;
use crate::error::{Error, Result};

const REFINEMENT_STEPS: usize = 2;

/// LU factorization with partial pivoting, `PA = LU`.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    // The original matrix, kept for iterative refinement.
    a: Vec<f64>,
    // Unit-lower L below the diagonal, U on and above.
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl Lu {
    pub fn factor(a: &Matrix) -> Result<Self> {
        Self::factor_with(a, Tolerances::default().lu_pivot)
    }

    pub fn factor_with(a: &Matrix, pivot_tol: f64) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::BadDimension(format!("LU needs a square matrix, got {}x{}", a.rows(), a.cols())));
        }
        let n = a.rows();
        let floor = pivot_tol * a.norm_inf();
        let orig = a.as_slice().to_vec();
        let mut lu = orig.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[i * n + k].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax <= floor || pmax == 0.0 {
                return Err(Error::SingularMatrix);
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                if f != 0.0 {
                    for j in (k + 1)..n {
                        lu[i * n + j] -= f * lu[k * n + j];
                    }
                }
            }
        }
        Ok(Self { n, a: orig, lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves `Ax = b` with up to two steps of iterative refinement, which
    /// makes the solve componentwise stable on badly scaled matrices.
    pub fn solve_vec(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut x = self.substitute(b);
        for _ in 0..REFINEMENT_STEPS {
            let r: Vec<f64> = (0..n)
                .map(|i| b[i] - self.a[i * n..(i + 1) * n].iter().zip(&x).map(|(a, x)| a * x).sum::<f64>())
                .collect();
            let dx = self.substitute(&r);
            let small = dx.iter().zip(&x).all(|(d, x)| d.abs() <= f64::EPSILON * x.abs());
            if dx.iter().any(|d| !d.is_finite()) {
                break;
            }
            for (x, d) in x.iter_mut().zip(&dx) {
                *x += d;
            }
            if small {
                break;
            }
        }
        x
    }

    fn substitute(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in (i + 1)..n {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s / self.lu[i * n + i];
        }
        x
    }

    pub fn solve(&self, b: &Matrix) -> Result<Matrix> {
        if b.rows() != self.n {
            return Err(Error::BadDimension(format!("rhs has {} rows, expected {}", b.rows(), self.n)));
        }
        let mut x = Matrix::zeros(self.n, b.cols());
        for j in 0..b.cols() {
            let col = self.solve_vec(&b.col_vec(j));
            for (i, v) in col.into_iter().enumerate() {
                x[(i, j)] = v;
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Matrix {
        self.solve(&Matrix::identity(self.n)).expect("identity has matching rows")
    }

    pub fn determinant(&self) -> f64 {
        let n = self.n;
        let mut det: f64 = (0..n).map(|i| self.lu[i * n + i]).product();
        // parity of the permutation
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j];
                len += 1;
            }
            if len % 2 == 0 {
                det = -det;
            }
        }
        det
    }
}

/// Solves `AX = B` with partial pivoting.
pub fn lu_solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if b.rows() != a.rows() {
        return Err(Error::BadDimension(format!("rhs has {} rows, expected {}", b.rows(), a.rows())));
    }
    Lu::factor(a)?.solve(b)
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    Ok(Lu::factor(a)?.inverse())
}

/// Solves the complex system `A x = b` for an n×n row-major `a`.
pub fn complex_solve(n: usize, mut a: Vec<Complex64>, mut b: Vec<Complex64>, pivot_tol: f64) -> Result<Vec<Complex64>> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    let scale = (0..n)
        .map(|i| a[i * n..(i + 1) * n].iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let floor = pivot_tol * scale;
    for k in 0..n {
        let (p, pmax) = (k..n)
            .map(|i| (i, a[i * n + k].norm()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pmax <= floor || pmax == 0.0 {
            return Err(Error::SingularMatrix);
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            b.swap(k, p);
        }
        let pivot = a[k * n + k];
        for i in (k + 1)..n {
            let f = a[i * n + k] / pivot;
            if f != Complex64::new(0.0, 0.0) {
                for j in (k + 1)..n {
                    let t = a[k * n + j];
                    a[i * n + j] -= f * t;
                }
                let t = b[k];
                b[i] -= f * t;
            }
        }
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in (i + 1)..n {
            s -= a[i * n + j] * b[j];
        }
        b[i] = s / a[i * n + i];
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_returns_rhs() {
        let b = Matrix::from_rows(&[[1.0, -2.0], [3.5, 4.0], [0.0, 7.0]]).unwrap();
        assert_eq!(lu_solve(&Matrix::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn diagonal_system() {
        let a = Matrix::diag(&[2.0, 4.0]);
        let x = lu_solve(&a, &Matrix::column(&[2.0, 8.0])).unwrap();
        assert_eq!(x.as_slice(), &[1.0, 2.0]);
    }

    #[test]
    fn singular_detected() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert_eq!(lu_solve(&a, &Matrix::column(&[1.0, 1.0])), Err(Error::SingularMatrix));
    }

    #[test]
    fn determinant_with_pivoting() {
        let a = Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!((Lu::factor(&a).unwrap().determinant() + 1.0).abs() < 1e-15);
        let b = Matrix::from_rows(&[[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]]).unwrap();
        assert!((Lu::factor(&b).unwrap().determinant() - 18.0).abs() < 1e-12);
    }

    #[test]
    fn complex_scalar() {
        let x = complex_solve(1, vec![Complex64::new(1.0, 1.0)], vec![Complex64::new(1.0, 0.0)], 1e-14).unwrap();
        assert!((x[0] - Complex64::new(0.5, -0.5)).norm() < 1e-15);
    }
}
