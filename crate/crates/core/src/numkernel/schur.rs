//! Nonsymmetric eigenvalues: Householder reduction to Hessenberg form, then
//! Francis double-shift QR down to real Schur form (EISPACK `orthes`/`hqr2`
//! lineage, eigenvector back-substitution omitted).

use num_complex::Complex64;

use super::lu::complex_solve;
use super::matrix::Matrix;
use super::tol::Tolerances;
use crate::error::{Error, Result};

/// Eigenvalues and (optionally) right eigenvectors of a real square matrix.
///
/// When present, `vectors` follows the packed real convention: a real
/// eigenvalue owns one column; a conjugate pair `a ± bi` at positions
/// `j, j+1` stores `Re v` in column `j` and `Im v` in column `j+1`, with `v`
/// the eigenvector of `a + bi`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<Complex64>,
    pub vectors: Option<Matrix>,
}

/// Real Schur form `A = Z T Zᵀ`, `T` upper quasi-triangular.
#[derive(Debug, Clone)]
pub struct RealSchur {
    pub t: Matrix,
    pub z: Matrix,
    /// Eigenvalues in the order they appear on the diagonal of `T`.
    pub values: Vec<Complex64>,
}

impl RealSchur {
    /// Diagonal block sizes (1 or 2) in order.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let n = self.t.rows();
        let mut out = Vec::new();
        let mut i = 0;
        while i < n {
            if i + 1 < n && self.t[(i + 1, i)] != 0.0 {
                out.push((i, 2));
                i += 2;
            } else {
                out.push((i, 1));
                i += 1;
            }
        }
        out
    }
}

pub fn real_schur(a: &Matrix) -> Result<RealSchur> {
    real_schur_with(a, &Tolerances::default())
}

pub fn real_schur_with(a: &Matrix, tol: &Tolerances) -> Result<RealSchur> {
    if !a.is_square() {
        return Err(Error::BadDimension(format!("eigenproblem needs a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    let n = a.rows();
    let mut h = a.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    if n == 0 {
        return Ok(RealSchur { t: Matrix::zeros(0, 0), z: Matrix::zeros(0, 0), values: vec![] });
    }
    orthes(n, &mut h, &mut v);
    let mut wr = vec![0.0; n];
    let mut wi = vec![0.0; n];
    hqr(n, &mut h, &mut v, &mut wr, &mut wi, tol.qr_sweeps_per_dim * n.max(1))?;

    // Clean the quasi-triangular structure: zero below the subdiagonal and
    // subdiagonal entries that are not part of a complex 2×2 block.
    let mut i = 0;
    while i < n {
        for j in 0..i.saturating_sub(1) {
            h[i * n + j] = 0.0;
        }
        if wi[i] != 0.0 && i + 1 < n {
            // pair occupies i, i+1
            if i >= 1 {
                h[i * n + i - 1] = 0.0;
            }
            for j in 0..i {
                h[(i + 1) * n + j] = 0.0;
            }
            i += 2;
        } else {
            if i >= 1 {
                h[i * n + i - 1] = 0.0;
            }
            i += 1;
        }
    }
    // Real eigenvalues are read back from the cleaned diagonal so that
    // `values[i]` lines up with `T[i][i]`.
    let values = (0..n)
        .map(|i| if wi[i] == 0.0 { Complex64::new(h[i * n + i], 0.0) } else { Complex64::new(wr[i], wi[i]) })
        .collect();
    Ok(RealSchur {
        t: Matrix::from_vec_unchecked(n, n, h),
        z: Matrix::from_vec_unchecked(n, n, v),
        values,
    })
}

/// Eigenvalues of a square matrix (no vectors).
pub fn eigenvalues(a: &Matrix) -> Result<EigenDecomposition> {
    let s = real_schur(a)?;
    Ok(EigenDecomposition { values: s.values, vectors: None })
}

/// Eigenvalues plus right eigenvectors, the latter by inverse iteration on
/// each computed eigenvalue. Vectors are normalized to unit 2-norm.
pub fn eigen_with_vectors(a: &Matrix) -> Result<EigenDecomposition> {
    let s = real_schur(a)?;
    let n = a.rows();
    let values = s.values;
    let mut vecs = Matrix::zeros(n, n);
    let mut j = 0;
    while j < n {
        let lam = values[j];
        if lam.im != 0.0 && j + 1 < n {
            // pairs are stored (a + bi, a − bi); the vector belongs to a + bi
            let v = inverse_iteration(a, if lam.im > 0.0 { lam } else { lam.conj() })?;
            for i in 0..n {
                vecs[(i, j)] = v[i].re;
                vecs[(i, j + 1)] = v[i].im;
            }
            j += 2;
        } else {
            let v = inverse_iteration(a, lam)?;
            for i in 0..n {
                vecs[(i, j)] = v[i].re;
            }
            j += 1;
        }
    }
    Ok(EigenDecomposition { values, vectors: Some(vecs) })
}

fn inverse_iteration(a: &Matrix, lam: Complex64) -> Result<Vec<Complex64>> {
    let n = a.rows();
    let scale = a.norm_inf().max(f64::MIN_POSITIVE);
    // Perturb the shift slightly so the shifted matrix is numerically invertible.
    let shift = lam + Complex64::new(scale * 1e-10, 0.0);
    let mut m: Vec<Complex64> = a.as_slice().iter().map(|&x| Complex64::new(x, 0.0)).collect();
    for i in 0..n {
        m[i * n + i] -= shift;
    }
    let mut x: Vec<Complex64> = (0..n).map(|i| Complex64::new(1.0 + 0.1 * i as f64, 0.0)).collect();
    for _ in 0..3 {
        x = match complex_solve(n, m.clone(), x.clone(), 0.0) {
            Ok(y) => y,
            Err(_) => break,
        };
        let nrm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(nrm > 0.0 && nrm.is_finite()) {
            return Err(Error::NoConvergence(3));
        }
        for z in x.iter_mut() {
            *z /= nrm;
        }
    }
    // fix the phase: largest component real positive
    let (imax, _) = x
        .iter()
        .enumerate()
        .fold((0, -1.0), |b, (i, z)| if z.norm() > b.1 { (i, z.norm()) } else { b });
    let phase = x[imax].conj() / x[imax].norm();
    for z in x.iter_mut() {
        *z *= phase;
    }
    Ok(x)
}

fn orthes(n: usize, h: &mut [f64], v: &mut [f64]) {
    let mut ort = vec![0.0; n];
    let high = n - 1;
    for m in 1..high {
        let scale: f64 = (m..=high).map(|i| h[i * n + m - 1].abs()).sum();
        if scale != 0.0 {
            let mut hh = 0.0;
            for i in (m..=high).rev() {
                ort[i] = h[i * n + m - 1] / scale;
                hh += ort[i] * ort[i];
            }
            let g = if ort[m] > 0.0 { -hh.sqrt() } else { hh.sqrt() };
            hh -= ort[m] * g;
            ort[m] -= g;
            for j in m..n {
                let f = (m..=high).rev().map(|i| ort[i] * h[i * n + j]).sum::<f64>() / hh;
                for i in m..=high {
                    h[i * n + j] -= f * ort[i];
                }
            }
            for i in 0..=high {
                let f = (m..=high).rev().map(|j| ort[j] * h[i * n + j]).sum::<f64>() / hh;
                for j in m..=high {
                    h[i * n + j] -= f * ort[j];
                }
            }
            ort[m] *= scale;
            h[m * n + m - 1] = scale * g;
        }
    }
    for i in 0..n {
        for j in 0..n {
            v[i * n + j] = if i == j { 1.0 } else { 0.0 };
        }
    }
    for m in (1..high).rev() {
        if h[m * n + m - 1] != 0.0 {
            for i in (m + 1)..=high {
                ort[i] = h[i * n + m - 1];
            }
            for j in m..=high {
                let mut g: f64 = (m..=high).map(|i| ort[i] * v[i * n + j]).sum();
                g = (g / ort[m]) / h[m * n + m - 1];
                for i in m..=high {
                    v[i * n + j] += g * ort[i];
                }
            }
        }
    }
}

#[allow(clippy::many_single_char_names)]
fn hqr(n: usize, h: &mut [f64], v: &mut [f64], wr: &mut [f64], wi: &mut [f64], budget: usize) -> Result<()> {
    let nn = n as isize;
    let idx = |i: isize, j: isize| (i * nn + j) as usize;
    let low: isize = 0;
    let high = nn - 1;
    let eps = f64::EPSILON;
    let mut exshift = 0.0;
    let (mut p, mut q, mut r) = (0.0, 0.0, 0.0);
    let (mut s, mut z): (f64, f64);
    let (mut w, mut x, mut y);

    let mut norm = 0.0;
    for i in 0..nn {
        for j in (i - 1).max(0)..nn {
            norm += h[idx(i, j)].abs();
        }
    }

    let mut en = nn - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    while en >= low {
        let mut l = en;
        while l > low {
            s = h[idx(l - 1, l - 1)].abs() + h[idx(l, l)].abs();
            if s == 0.0 {
                s = norm;
            }
            if h[idx(l, l - 1)].abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == en {
            h[idx(en, en)] += exshift;
            wr[en as usize] = h[idx(en, en)];
            wi[en as usize] = 0.0;
            en -= 1;
            iter = 0;
        } else if l == en - 1 {
            w = h[idx(en, en - 1)] * h[idx(en - 1, en)];
            p = (h[idx(en - 1, en - 1)] - h[idx(en, en)]) / 2.0;
            q = p * p + w;
            z = q.abs().sqrt();
            h[idx(en, en)] += exshift;
            h[idx(en - 1, en - 1)] += exshift;
            x = h[idx(en, en)];
            if q >= 0.0 {
                z = if p >= 0.0 { p + z } else { p - z };
                wr[(en - 1) as usize] = x + z;
                wr[en as usize] = wr[(en - 1) as usize];
                if z != 0.0 {
                    wr[en as usize] = x - w / z;
                }
                wi[(en - 1) as usize] = 0.0;
                wi[en as usize] = 0.0;
                x = h[idx(en, en - 1)];
                s = x.abs() + z.abs();
                p = x / s;
                q = z / s;
                r = (p * p + q * q).sqrt();
                p /= r;
                q /= r;
                for j in (en - 1)..nn {
                    z = h[idx(en - 1, j)];
                    h[idx(en - 1, j)] = q * z + p * h[idx(en, j)];
                    h[idx(en, j)] = q * h[idx(en, j)] - p * z;
                }
                for i in 0..=en {
                    z = h[idx(i, en - 1)];
                    h[idx(i, en - 1)] = q * z + p * h[idx(i, en)];
                    h[idx(i, en)] = q * h[idx(i, en)] - p * z;
                }
                for i in low..=high {
                    z = v[idx(i, en - 1)];
                    v[idx(i, en - 1)] = q * z + p * v[idx(i, en)];
                    v[idx(i, en)] = q * v[idx(i, en)] - p * z;
                }
                // exact triangularization of the deflated pair
                h[idx(en, en - 1)] = 0.0;
            } else {
                wr[(en - 1) as usize] = x + p;
                wr[en as usize] = x + p;
                wi[(en - 1) as usize] = z;
                wi[en as usize] = -z;
            }
            en -= 2;
            iter = 0;
        } else {
            total += 1;
            if total > budget {
                return Err(Error::NoConvergence(budget));
            }
            x = h[idx(en, en)];
            y = 0.0;
            w = 0.0;
            if l < en {
                y = h[idx(en - 1, en - 1)];
                w = h[idx(en, en - 1)] * h[idx(en - 1, en)];
            }
            if iter == 10 {
                exshift += x;
                for i in low..=en {
                    h[idx(i, i)] -= x;
                }
                s = h[idx(en, en - 1)].abs() + h[idx(en - 1, en - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            if iter == 30 {
                s = (y - x) / 2.0;
                s = s * s + w;
                if s > 0.0 {
                    s = s.sqrt();
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / 2.0 + s);
                    for i in low..=en {
                        h[idx(i, i)] -= s;
                    }
                    exshift += s;
                    x = 0.964;
                    y = x;
                    w = x;
                }
            }
            iter += 1;

            let mut m = en - 2;
            while m >= l {
                z = h[idx(m, m)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[idx(m + 1, m)] + h[idx(m, m + 1)];
                q = h[idx(m + 1, m + 1)] - z - r - s;
                r = h[idx(m + 2, m + 1)];
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                if h[idx(m, m - 1)].abs() * (q.abs() + r.abs())
                    < eps * (p.abs() * (h[idx(m - 1, m - 1)].abs() + z.abs() + h[idx(m + 1, m + 1)].abs()))
                {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=en {
                h[idx(i, i - 2)] = 0.0;
                if i > m + 2 {
                    h[idx(i, i - 3)] = 0.0;
                }
            }
            let mut k = m;
            while k < en {
                let notlast = k != en - 1;
                if k != m {
                    p = h[idx(k, k - 1)];
                    q = h[idx(k + 1, k - 1)];
                    r = if notlast { h[idx(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        k += 1;
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = (p * p + q * q + r * r).sqrt();
                if p < 0.0 {
                    s = -s;
                }
                if s != 0.0 {
                    if k != m {
                        h[idx(k, k - 1)] = -s * x;
                    } else if l != m {
                        h[idx(k, k - 1)] = -h[idx(k, k - 1)];
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..nn {
                        p = h[idx(k, j)] + q * h[idx(k + 1, j)];
                        if notlast {
                            p += r * h[idx(k + 2, j)];
                            h[idx(k + 2, j)] -= p * z;
                        }
                        h[idx(k, j)] -= p * x;
                        h[idx(k + 1, j)] -= p * y;
                    }
                    for i in 0..=en.min(k + 3) {
                        p = x * h[idx(i, k)] + y * h[idx(i, k + 1)];
                        if notlast {
                            p += z * h[idx(i, k + 2)];
                            h[idx(i, k + 2)] -= p * r;
                        }
                        h[idx(i, k)] -= p;
                        h[idx(i, k + 1)] -= p * q;
                    }
                    for i in low..=high {
                        p = x * v[idx(i, k)] + y * v[idx(i, k + 1)];
                        if notlast {
                            p += z * v[idx(i, k + 2)];
                            v[idx(i, k + 2)] -= p * r;
                        }
                        v[idx(i, k)] -= p;
                        v[idx(i, k + 1)] -= p * q;
                    }
                }
                k += 1;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_re(v: &[Complex64]) -> Vec<f64> {
        let mut r: Vec<f64> = v.iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        r
    }

    #[test]
    fn diagonal_spectrum() {
        let e = eigenvalues(&Matrix::diag(&[-1.0, -2.0, -3.0])).unwrap();
        assert_eq!(sorted_re(&e.values), vec![-3.0, -2.0, -1.0]);
        assert!(e.values.iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn rotation_has_unit_imaginary_pair() {
        let a = Matrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]).unwrap();
        let e = eigenvalues(&a).unwrap();
        let mut im: Vec<f64> = e.values.iter().map(|z| z.im).collect();
        im.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((im[0] + 1.0).abs() < 1e-14 && (im[1] - 1.0).abs() < 1e-14);
        assert!(e.values.iter().all(|z| z.re.abs() < 1e-14));
    }

    #[test]
    fn companion_of_quadratic() {
        // s² + 3s + 1
        let a = Matrix::from_rows(&[[-3.0, -1.0], [1.0, 0.0]]).unwrap();
        let e = eigenvalues(&a).unwrap();
        let disc = 5.0f64.sqrt();
        let expect = [(-3.0 - disc) / 2.0, (-3.0 + disc) / 2.0];
        let got = sorted_re(&e.values);
        for (g, x) in got.iter().zip(expect) {
            assert!(((g - x) / x).abs() < 1e-12);
        }
    }

    #[test]
    fn schur_reconstructs() {
        let a = Matrix::from_rows(&[
            [1.0, 2.0, 0.5, -1.0],
            [-3.0, 0.2, 1.0, 2.0],
            [0.0, 1.5, -2.0, 0.3],
            [4.0, -1.0, 0.7, 0.1],
        ])
        .unwrap();
        let s = real_schur(&a).unwrap();
        let rec = &(&s.z * &s.t) * &s.z.transpose();
        assert!((&rec - &a).norm_fro() < 1e-12 * a.norm_fro());
        let ortho = &(&s.z.transpose() * &s.z) - &Matrix::identity(4);
        assert!(ortho.norm_fro() < 1e-13);
        for i in 0..4usize {
            for j in 0..(i as usize).saturating_sub(1) {
                assert_eq!(s.t[(i, j)], 0.0);
            }
        }
    }

    #[test]
    fn eigenvectors_satisfy_definition() {
        let a = Matrix::from_rows(&[[2.0, 1.0, 0.0], [-1.0, 2.0, 0.5], [0.0, 0.3, -1.0]]).unwrap();
        let e = eigen_with_vectors(&a).unwrap();
        let v = e.vectors.unwrap();
        let n = 3;
        let mut j = 0;
        while j < n {
            let lam = e.values[j];
            let x: Vec<Complex64> = if lam.im != 0.0 {
                (0..n).map(|i| Complex64::new(v[(i, j)], v[(i, j + 1)])).collect()
            } else {
                (0..n).map(|i| Complex64::new(v[(i, j)], 0.0)).collect()
            };
            for i in 0..n {
                let ax: Complex64 = (0..n).map(|k| a[(i, k)] * x[k]).sum();
                assert!((ax - lam * x[i]).norm() < 1e-9, "column {j}");
            }
            j += if lam.im != 0.0 { 2 } else { 1 };
        }
    }
}
