use super::matrix::Matrix;
use super::tol::Tolerances;
use crate::error::{Error, Result};

const JACOBI_MAX_SWEEPS: usize = 100;

/// Symmetric eigendecomposition `A = V diag(λ) Vᵀ` by cyclic Jacobi
/// rotations. Eigenvalues are returned in descending order with matching
/// columns of `V`.
pub fn sym_eig(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    sym_eig_with(a, &Tolerances::default())
}

pub fn sym_eig_with(a: &Matrix, tol: &Tolerances) -> Result<(Vec<f64>, Matrix)> {
    if !a.is_square() {
        return Err(Error::BadDimension(format!("sym_eig needs a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    let n = a.rows();
    let scale = a.norm_inf();
    for i in 0..n {
        for j in (i + 1)..n {
            if (a[(i, j)] - a[(j, i)]).abs() > tol.symmetry * scale {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let mut m = a.clone();
    m.symmetrize();
    let mut v = Matrix::identity(n);

    let mut converged = n < 2;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum();
        let total = m.norm_fro();
        if off.sqrt() <= f64::EPSILON * total * 1e-2 || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = m[(p, p)];
                let aqq = m[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].partial_cmp(&m[(i, i)]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let mut vs = Matrix::zeros(n, n);
    for (newj, &oldj) in order.iter().enumerate() {
        for i in 0..n {
            vs[(i, newj)] = v[(i, oldj)];
        }
    }
    Ok((values, vs))
}

/// Lower-triangular `L` with `LLᵀ = A` and positive diagonal.
pub fn cholesky(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::BadDimension(format!("cholesky needs a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    let n = a.rows();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        let djj = d.sqrt();
        l[(j, j)] = djj;
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}

/// Thin SVD `M = U diag(s) Vᵀ` of a square matrix by one-sided (Hestenes)
/// Jacobi. Singular values descend. Small singular values keep high
/// relative accuracy when the columns of `M` are well scaled, which the
/// square-root balancing route depends on.
pub fn svd(m: &Matrix) -> Result<(Matrix, Vec<f64>, Matrix)> {
    if !m.is_square() {
        return Err(Error::BadDimension(format!("svd expects a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut u = m.clone();
    let mut v = Matrix::identity(n);
    let mut converged = n < 2;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..n {
                    let up = u[(i, p)];
                    let uq = u[(i, q)];
                    alpha += up * up;
                    beta += uq * uq;
                    gamma += up * uq;
                }
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..n {
                    let up = u[(i, p)];
                    let uq = u[(i, q)];
                    u[(i, p)] = c * up - s * uq;
                    u[(i, q)] = s * up + c * uq;
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = c * vp - s * vq;
                    v[(i, q)] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
    }
    let mut sv: Vec<(f64, usize)> = (0..n)
        .map(|j| ((0..n).map(|i| u[(i, j)] * u[(i, j)]).sum::<f64>().sqrt(), j))
        .collect();
    sv.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite singular values"));
    let mut uo = Matrix::zeros(n, n);
    let mut vo = Matrix::zeros(n, n);
    for (newj, &(s, oldj)) in sv.iter().enumerate() {
        for i in 0..n {
            uo[(i, newj)] = if s > 0.0 { u[(i, oldj)] / s } else { 0.0 };
            vo[(i, newj)] = v[(i, oldj)];
        }
    }
    Ok((uo, sv.into_iter().map(|(s, _)| s).collect(), vo))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_eig() {
        let (l, v) = sym_eig(&Matrix::identity(2)).unwrap();
        assert_eq!(l, vec![1.0, 1.0]);
        assert!((&(&v.transpose() * &v) - &Matrix::identity(2)).norm_fro() < 1e-15);
    }

    #[test]
    fn two_by_two_closed_form() {
        let a = Matrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let (l, _) = sym_eig(&a).unwrap();
        assert!((l[0] - 3.0).abs() < 1e-14 && (l[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_nonsymmetric() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [0.0, 1.0]]).unwrap();
        assert_eq!(sym_eig(&a).unwrap_err(), Error::NotSymmetric);
    }

    #[test]
    fn cholesky_hand_factor() {
        let a = Matrix::from_rows(&[[4.0, 2.0], [2.0, 5.0]]).unwrap();
        let l = cholesky(&a).unwrap();
        assert_eq!(l.to_rows(), vec![vec![2.0, 0.0], vec![1.0, 2.0]]);
        assert_eq!(cholesky(&Matrix::identity(3)).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn cholesky_rank_deficient() {
        let a = Matrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        assert_eq!(cholesky(&a).unwrap_err(), Error::NotPositiveDefinite);
    }

    #[test]
    fn svd_graded_matrix_keeps_small_values() {
        // columns scaled over twelve orders of magnitude
        let d = [1.0, 1e-4, 1e-8, 1e-12];
        let q = Matrix::from_rows(&[
            [0.5, 0.5, 0.5, 0.5],
            [0.5, -0.5, 0.5, -0.5],
            [0.5, 0.5, -0.5, -0.5],
            [0.5, -0.5, -0.5, 0.5],
        ])
        .unwrap();
        let m = &q * &Matrix::diag(&d);
        let (u, s, v) = svd(&m).unwrap();
        for (got, want) in s.iter().zip(d) {
            assert!(((got - want) / want).abs() < 1e-12, "{got} vs {want}");
        }
        let rec = &(&u * &Matrix::diag(&s)) * &v.transpose();
        assert!((&rec - &m).norm_fro() < 1e-15);
    }
}
