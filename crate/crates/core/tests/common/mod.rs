#![allow(dead_code)]

use baltrunc::arrowhead::ArrowheadRealization;
use baltrunc::gridmodel::GridConfig;
use baltrunc::lti::StateSpace;
use baltrunc::numkernel::{eigenvalues, Matrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn example_3_1_data() -> ([f64; 4], [i8; 4], [f64; 4]) {
    ([10.0, 1.0, 0.1, 0.01], [1, 1, -1, -1], [1.0, 2.0, 3.0, 4.0])
}

pub fn example_5_2() -> GridConfig {
    GridConfig {
        m_hat: 0.044,
        d_hat: 0.038,
        droop_inv: vec![0.013, 0.014, 0.022, 0.025],
        tau: vec![5.01, 6.82, 7.38, 7.79],
    }
}

pub fn example_4_5_a1() -> ArrowheadRealization {
    ArrowheadRealization::new(vec![-1.0, -2.0, -3.0], vec![1.0, 1.0], vec![-1.0, 1.0], 1.0).unwrap()
}

pub fn example_4_5_a2() -> ArrowheadRealization {
    ArrowheadRealization::new(vec![-1.0, -3.0, -2.0], vec![1.0, 1.0], vec![1.0, -1.0], 1.0).unwrap()
}

pub fn rel(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

/// `n` values log-uniform over `decades`, strictly decreasing.
pub fn log_uniform_sigmas(rng: &mut TestRng, n: usize, decades: f64) -> Vec<f64> {
    loop {
        let mut s: Vec<f64> = (0..n).map(|_| 10f64.powf(-decades * rng.gen::<f64>())).collect();
        s.sort_by(|a, b| b.partial_cmp(a).unwrap());
        if s.windows(2).all(|w| w[0] - w[1] > 1e-3 * w[0]) {
            return s;
        }
    }
}

/// Like [`log_uniform_sigmas`] but with consecutive ratios of at least
/// `ratio`, which keeps the canonical realization well conditioned.
pub fn spread_sigmas(rng: &mut TestRng, n: usize, decades: f64, ratio: f64) -> Vec<f64> {
    loop {
        let s = log_uniform_sigmas(rng, n, decades);
        if s.windows(2).all(|w| w[0] >= ratio * w[1]) {
            return s;
        }
    }
}

pub fn random_signs(rng: &mut TestRng, n: usize) -> Vec<i8> {
    (0..n).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect()
}

pub fn random_gammas(rng: &mut TestRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| 10f64.powf(rng.gen_range(-0.5..0.5))).collect()
}

pub fn random_matrix(rng: &mut TestRng, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Matrix::new(rows, cols, data).unwrap()
}

/// Random stable system of order `n` with spectral abscissa in `[-1, -0.1]`.
pub fn random_stable(rng: &mut TestRng, n: usize) -> StateSpace {
    let mut a = random_matrix(rng, n, n);
    let abscissa = eigenvalues(&a).unwrap().values.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let shift = abscissa + rng.gen_range(0.1..1.0);
    for i in 0..n {
        a[(i, i)] -= shift;
    }
    let b = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let c = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    StateSpace::new(a, b, c, rng.gen_range(-0.5..0.5)).unwrap()
}

/// Random arrow with negative, pairwise separated diagonal and nonzero
/// arrow entries. Not necessarily minimum-phase.
pub fn random_arrow(rng: &mut TestRng, n: usize) -> ArrowheadRealization {
    let mut d: Vec<f64> = Vec::with_capacity(n);
    d.push(-10f64.powf(rng.gen_range(-1.0..1.0)));
    while d.len() < n {
        let x = -10f64.powf(rng.gen_range(-1.0..1.0));
        if d[1..].iter().all(|y| (x - y).abs() > 1e-2 * x.abs()) {
            d.push(x);
        }
    }
    let entry = |rng: &mut TestRng| {
        let m = 10f64.powf(rng.gen_range(-0.7..0.7));
        if rng.gen::<bool>() { m } else { -m }
    };
    let alpha = (1..n).map(|_| entry(rng)).collect();
    let beta = (1..n).map(|_| entry(rng)).collect();
    let gamma = entry(rng);
    ArrowheadRealization::new(d, alpha, beta, gamma).unwrap()
}

/// Coefficients (high to low) of `k·Π(s − rᵢ)`.
pub fn poly_from_roots(k: f64, roots: &[f64]) -> Vec<f64> {
    let mut p = vec![k];
    for &r in roots {
        let mut next = vec![0.0; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c * r;
        }
        p = next;
    }
    p
}

pub fn polyval(p: &[f64], s: num_complex::Complex64) -> num_complex::Complex64 {
    p.iter().fold(num_complex::Complex64::new(0.0, 0.0), |acc, &c| acc * s + c)
}

/// `count` negative values, log-uniform in `[10^lo, 10^hi]`, pairwise
/// separated by a relative margin and away from `avoid`.
pub fn separated_negatives(rng: &mut TestRng, count: usize, avoid: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(count);
    while out.len() < count {
        let x = -10f64.powf(rng.gen_range(-1.0..1.0));
        if out.iter().chain(avoid).all(|y| (x - y).abs() > 5e-2 * x.abs().max(y.abs())) {
            out.push(x);
        }
    }
    out
}

/// Upper bound-free grid oracle for `sup |G(iω)|`: 10⁵ log-spaced points,
/// dc, the high-frequency limit, then a fine local grid around the best
/// sample.
pub fn grid_peak(sys: &StateSpace) -> f64 {
    use baltrunc::lti::transfer_eval;
    use num_complex::Complex64;
    let mag = |w: f64| transfer_eval(sys, Complex64::new(0.0, w)).unwrap().norm();
    let points = 100_000;
    let (lo, hi) = (-4.0f64, 4.0f64);
    let grid = |k: usize, lo: f64, hi: f64, m: usize| 10f64.powf(lo + (hi - lo) * k as f64 / (m - 1) as f64);
    let mut best = sys.d.abs().max(mag(0.0));
    let mut arg = None;
    for k in 0..points {
        let m = mag(grid(k, lo, hi, points));
        if m > best {
            best = m;
            arg = Some(k);
        }
    }
    if let Some(k) = arg {
        let step = (hi - lo) / (points - 1) as f64;
        let centre = lo + step * k as f64;
        let (l, h) = (centre - step, centre + step);
        for j in 0..2001 {
            best = best.max(mag(grid(j, l, h, 2001)));
        }
    }
    best
}
