//! Lyapunov and Sylvester solvers, Gramians, Hankel singular values and the
//! sign parameters read off the cross Gramian.

use crate::error::{Error, Result};
use crate::lti::{require_stable, StateSpace};
use crate::numkernel::{cholesky, eigenvalues, real_schur, svd, Lu, Matrix, Tolerances};

/// Which dense algorithm solves `AX + XB + C = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolverStrategy {
    /// Kronecker up to `Tolerances::kronecker_max_n`, Bartels–Stewart above.
    #[default]
    Auto,
    Kronecker,
    BartelsStewart,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramianPair {
    /// Reachability Gramian, `AP + PAᵀ + bbᵀ = 0`.
    pub p: Matrix,
    /// Observability Gramian, `AᵀQ + QA + cᵀc = 0`.
    pub q: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HankelSpectrum {
    /// Distinct values, strictly decreasing. A repeated group is represented
    /// by its mean.
    pub sigmas: Vec<f64>,
    pub multiplicities: Vec<usize>,
    /// Every computed value in decreasing order, before grouping.
    pub values: Vec<f64>,
}

impl HankelSpectrum {
    /// One entry per state: each group value repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<f64> {
        self.sigmas
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&s, &m)| std::iter::repeat(s).take(m))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn all_distinct(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 1)
    }

    /// True when the first `r` states end exactly on a group boundary.
    pub fn splits_groups_at(&self, r: usize) -> bool {
        let mut acc = 0;
        if r == 0 {
            return true;
        }
        for &m in &self.multiplicities {
            acc += m;
            if acc == r {
                return true;
            }
            if acc > r {
                return false;
            }
        }
        false
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignSpectrum {
    pub signs: Vec<i8>,
    /// Cross-Gramian eigenvalues, `|λ|` non-increasing.
    pub lambdas: Vec<f64>,
}

/// Unique `X` with `AX + XAᵀ + M = 0`.
pub fn solve_lyapunov(a: &Matrix, m: &Matrix) -> Result<Matrix> {
    solve_lyapunov_using(a, m, SolverStrategy::Auto, &Tolerances::default())
}

pub fn solve_lyapunov_using(a: &Matrix, m: &Matrix, strategy: SolverStrategy, tol: &Tolerances) -> Result<Matrix> {
    check_square_pair(a, m)?;
    if m.asymmetry() > tol.symmetry * m.norm_fro().max(f64::MIN_POSITIVE) {
        return Err(Error::NotSymmetric);
    }
    require_stable_matrix(a)?;
    let mut x = solve_general(a, &a.transpose(), m, strategy, tol)?;
    x.symmetrize();
    Ok(x)
}

/// Unique `X` with `AX + XA + C = 0`.
pub fn solve_sylvester(a: &Matrix, c: &Matrix) -> Result<Matrix> {
    solve_sylvester_using(a, c, SolverStrategy::Auto, &Tolerances::default())
}

pub fn solve_sylvester_using(a: &Matrix, c: &Matrix, strategy: SolverStrategy, tol: &Tolerances) -> Result<Matrix> {
    check_square_pair(a, c)?;
    require_stable_matrix(a)?;
    solve_general(a, a, c, strategy, tol)
}

fn check_square_pair(a: &Matrix, c: &Matrix) -> Result<()> {
    if !a.is_square() || c.rows() != a.rows() || c.cols() != a.rows() {
        return Err(Error::BadDimension(format!(
            "coefficient is {}x{}, right-hand side {}x{}",
            a.rows(),
            a.cols(),
            c.rows(),
            c.cols()
        )));
    }
    Ok(())
}

fn require_stable_matrix(a: &Matrix) -> Result<()> {
    let abscissa = eigenvalues(a)?.values.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    if abscissa < 0.0 || a.rows() == 0 {
        Ok(())
    } else {
        Err(Error::NotStable(abscissa))
    }
}

/// `AX + XB + C = 0` with square `A`, `B` of equal size.
fn solve_general(a: &Matrix, b: &Matrix, c: &Matrix, strategy: SolverStrategy, tol: &Tolerances) -> Result<Matrix> {
    let n = a.rows();
    if n == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let kron = match strategy {
        SolverStrategy::Auto => n <= tol.kronecker_max_n,
        SolverStrategy::Kronecker => true,
        SolverStrategy::BartelsStewart => false,
    };
    if kron {
        kronecker(a, b, c, tol)
    } else {
        bartels_stewart(a, b, c, tol)
    }
}

fn kronecker(a: &Matrix, b: &Matrix, c: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    let n = a.rows();
    let nn = n * n;
    let mut k = Matrix::zeros(nn, nn);
    // row (i, j): Σₖ A[i,k] X[k,j] + Σₖ X[i,k] B[k,j]
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for l in 0..n {
                k[(row, l * n + j)] += a[(i, l)];
                k[(row, i * n + l)] += b[(l, j)];
            }
        }
    }
    let rhs: Vec<f64> = c.as_slice().iter().map(|x| -x).collect();
    let x = Lu::factor_with(&k, tol.lu_pivot)?.solve_vec(&rhs);
    Matrix::new(n, n, x)
}

fn bartels_stewart(a: &Matrix, b: &Matrix, c: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    let n = a.rows();
    let sa = real_schur(a)?;
    let sb = real_schur(b)?;
    let (s, u) = (&sa.t, &sa.z);
    let (t, v) = (&sb.t, &sb.z);
    // S Y + Y T = F with F = −Uᵀ C V, X = U Y Vᵀ
    let f = (&(&u.transpose() * c) * v).scale(-1.0);
    let mut y = Matrix::zeros(n, n);
    for (k, size) in sb.blocks() {
        let mut rhs = Matrix::zeros(n, size);
        for col in 0..size {
            for i in 0..n {
                let mut acc = f[(i, k + col)];
                for j in 0..k {
                    acc -= y[(i, j)] * t[(j, k + col)];
                }
                rhs[(i, col)] = acc;
            }
        }
        if size == 1 {
            let mut m = s.clone();
            for i in 0..n {
                m[(i, i)] += t[(k, k)];
            }
            let col = Lu::factor_with(&m, tol.lu_pivot)?.solve_vec(&rhs.col_vec(0));
            for i in 0..n {
                y[(i, k)] = col[i];
            }
        } else {
            let mut m = Matrix::zeros(2 * n, 2 * n);
            m.set_block(0, 0, s);
            m.set_block(n, n, s);
            for i in 0..n {
                m[(i, i)] += t[(k, k)];
                m[(i, n + i)] += t[(k + 1, k)];
                m[(n + i, i)] += t[(k, k + 1)];
                m[(n + i, n + i)] += t[(k + 1, k + 1)];
            }
            let stacked: Vec<f64> = rhs.col_vec(0).into_iter().chain(rhs.col_vec(1)).collect();
            let sol = Lu::factor_with(&m, tol.lu_pivot)?.solve_vec(&stacked);
            for i in 0..n {
                y[(i, k)] = sol[i];
                y[(i, k + 1)] = sol[n + i];
            }
        }
    }
    Ok(&(u * &y) * &v.transpose())
}

pub fn gramians(sys: &StateSpace) -> Result<GramianPair> {
    gramians_with(sys, &Tolerances::default())
}

pub fn gramians_with(sys: &StateSpace, tol: &Tolerances) -> Result<GramianPair> {
    let b = Matrix::column(&sys.b);
    let c = Matrix::row(&sys.c);
    let p = solve_lyapunov_using(&sys.a, &(&b * &b.transpose()), SolverStrategy::Auto, tol)?;
    let q = solve_lyapunov_using(&sys.a.transpose(), &(&c.transpose() * &c), SolverStrategy::Auto, tol)?;
    Ok(GramianPair { p, q })
}

/// Solution of `A𝒳 + 𝒳A + bc = 0`.
pub fn cross_gramian(sys: &StateSpace) -> Result<Matrix> {
    cross_gramian_with(sys, &Tolerances::default())
}

pub fn cross_gramian_with(sys: &StateSpace, tol: &Tolerances) -> Result<Matrix> {
    let bc = &Matrix::column(&sys.b) * &Matrix::row(&sys.c);
    solve_sylvester_using(&sys.a, &bc, SolverStrategy::Auto, tol)
}

/// Square-root factors: `P = L_P L_Pᵀ`, `Q = L_Q L_Qᵀ` and the SVD
/// `L_Qᵀ L_P = U diag(σ) Vᵀ`.
pub(crate) struct SquareRootFactors {
    pub l_p: Matrix,
    pub l_q: Matrix,
    pub u: Matrix,
    pub sigma: Vec<f64>,
    pub v: Matrix,
}

pub(crate) fn square_root_factors(sys: &StateSpace, tol: &Tolerances) -> Result<SquareRootFactors> {
    require_stable(sys)?;
    let g = gramians_with(sys, tol)?;
    let not_minimal = |which: &str| Error::NotMinimal(format!("{which} Gramian is not positive definite"));
    let l_p = cholesky(&g.p).map_err(|_| not_minimal("reachability"))?;
    let l_q = cholesky(&g.q).map_err(|_| not_minimal("observability"))?;
    let (u, sigma, v) = svd(&(&l_q.transpose() * &l_p))?;
    if let (Some(&first), Some(&last)) = (sigma.first(), sigma.last()) {
        if !(last > tol.hsv_floor * first) {
            return Err(Error::NotMinimal(format!(
                "smallest Hankel singular value {last:e} is negligible against {first:e}"
            )));
        }
    }
    Ok(SquareRootFactors { l_p, l_q, u, sigma, v })
}

pub fn hankel_spectrum(sys: &StateSpace) -> Result<HankelSpectrum> {
    hankel_spectrum_with(sys, &Tolerances::default())
}

pub fn hankel_spectrum_with(sys: &StateSpace, tol: &Tolerances) -> Result<HankelSpectrum> {
    let f = square_root_factors(sys, tol)?;
    Ok(group_values(f.sigma, tol.hsv_group_gap))
}

pub(crate) fn group_values(values: Vec<f64>, gap: f64) -> HankelSpectrum {
    let mut sigmas = Vec::new();
    let mut multiplicities = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let mut j = i + 1;
        while j < values.len() && values[j - 1] - values[j] <= gap * values[j - 1] {
            j += 1;
        }
        sigmas.push(values[i..j].iter().sum::<f64>() / (j - i) as f64);
        multiplicities.push(j - i);
        i = j;
    }
    HankelSpectrum { sigmas, multiplicities, values }
}

pub fn sign_spectrum(sys: &StateSpace) -> Result<SignSpectrum> {
    sign_spectrum_with(sys, &Tolerances::default())
}

pub fn sign_spectrum_with(sys: &StateSpace, tol: &Tolerances) -> Result<SignSpectrum> {
    require_stable(sys)?;
    let x = cross_gramian_with(sys, tol)?;
    let eig = eigenvalues(&x)?;
    let mut lambdas = Vec::with_capacity(eig.values.len());
    for z in &eig.values {
        if z.im.abs() > tol.complex_eig * z.norm() {
            return Err(Error::ComplexEigenvalue { re: z.re, im: z.im });
        }
        lambdas.push(z.re);
    }
    Ok(order_signs(lambdas, tol.hsv_group_gap))
}

/// Sorts by `|λ|` descending; inside a group of numerically equal `|λ|`
/// the order is by `λ` descending, so positive signs come first.
pub(crate) fn order_signs(mut lambdas: Vec<f64>, gap: f64) -> SignSpectrum {
    lambdas.sort_by(|a, b| b.abs().partial_cmp(&a.abs()).expect("finite eigenvalues"));
    let mut i = 0;
    while i < lambdas.len() {
        let mut j = i + 1;
        while j < lambdas.len() && lambdas[j - 1].abs() - lambdas[j].abs() <= gap * lambdas[j - 1].abs() {
            j += 1;
        }
        lambdas[i..j].sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        i = j;
    }
    let signs = lambdas.iter().map(|&l| if l < 0.0 { -1 } else { 1 }).collect();
    SignSpectrum { signs, lambdas }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Matrix, b: &Matrix, tol: f64) -> bool {
        (a - b).norm_fro() <= tol * (1.0 + b.norm_fro())
    }

    #[test]
    fn scalar_equations() {
        let a = Matrix::from_rows(&[[-1.0]]).unwrap();
        let m = Matrix::from_rows(&[[2.0]]).unwrap();
        assert_eq!(solve_lyapunov(&a, &m).unwrap(), Matrix::from_rows(&[[1.0]]).unwrap());
        assert_eq!(solve_sylvester(&a, &m).unwrap(), Matrix::from_rows(&[[1.0]]).unwrap());
        let x = solve_lyapunov(&Matrix::identity(2).scale(-1.0), &Matrix::identity(2)).unwrap();
        assert!(close(&x, &Matrix::identity(2).scale(0.5), 1e-15));
        assert_eq!(solve_sylvester(&a, &Matrix::zeros(1, 1)).unwrap(), Matrix::zeros(1, 1));
    }

    #[test]
    fn unstable_rejected() {
        let a = Matrix::from_rows(&[[1.0]]).unwrap();
        assert!(matches!(solve_lyapunov(&a, &Matrix::identity(1)), Err(Error::NotStable(_))));
    }

    #[test]
    fn strategies_agree_with_complex_spectrum() {
        let a = Matrix::from_rows(&[
            [-1.0, 2.0, 0.0, 0.3],
            [-2.0, -1.0, 0.5, 0.0],
            [0.0, 0.1, -3.0, 1.0],
            [0.2, 0.0, -1.0, -0.5],
        ])
        .unwrap();
        let c = Matrix::from_rows(&[[1.0, 0.0, 2.0, -1.0], [0.5, 1.0, 0.0, 0.0], [0.0, 3.0, 1.0, 0.0], [1.0, 1.0, 1.0, 1.0]])
            .unwrap();
        let tol = Tolerances::default();
        let k = solve_sylvester_using(&a, &c, SolverStrategy::Kronecker, &tol).unwrap();
        let bs = solve_sylvester_using(&a, &c, SolverStrategy::BartelsStewart, &tol).unwrap();
        assert!(close(&k, &bs, 1e-12));
        let m = &c * &c.transpose();
        let k = solve_lyapunov_using(&a, &m, SolverStrategy::Kronecker, &tol).unwrap();
        let bs = solve_lyapunov_using(&a, &m, SolverStrategy::BartelsStewart, &tol).unwrap();
        assert!(close(&k, &bs, 1e-12));
    }

    #[test]
    fn first_order_gramians() {
        let sys = StateSpace::new(Matrix::from_rows(&[[-1.0]]).unwrap(), vec![1.0], vec![1.0], 0.0).unwrap();
        let g = gramians(&sys).unwrap();
        assert_eq!(g.p[(0, 0)], 0.5);
        assert_eq!(g.q[(0, 0)], 0.5);
        assert_eq!(cross_gramian(&sys).unwrap()[(0, 0)], 0.5);
        let h = hankel_spectrum(&sys).unwrap();
        assert!((h.sigmas[0] - 0.5).abs() < 1e-15);
        assert_eq!(sign_spectrum(&sys).unwrap().signs, vec![1]);
    }

    #[test]
    fn grouping() {
        let h = group_values(vec![3.0, 2.0, 2.0 * (1.0 - 1e-12), 1.0], 1e-8);
        assert_eq!(h.multiplicities, vec![1, 2, 1]);
        assert_eq!(h.expanded().len(), 4);
        assert!(h.splits_groups_at(1) && !h.splits_groups_at(2) && h.splits_groups_at(3) && h.splits_groups_at(4));
        let s = order_signs(vec![-2.0, 0.5, 2.0 * (1.0 - 1e-12), -3.0], 1e-8);
        assert_eq!(s.signs, vec![-1, 1, -1, 1]);
    }
}
