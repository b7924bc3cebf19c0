//! Arrowhead realizations
//!
//! ```text
//!     ⎡ d₁  α₂  ⋯  αₙ ⎤
//! A = ⎢ β₂  d₂        ⎥ ,   b = γe₁,   c = e₁ᵀ,   d = 0
//!     ⎢ ⋮       ⋱     ⎥
//!     ⎣ βₙ          dₙ⎦
//! ```
//!
//! with transfer function `γ / (s − d₁ − Σ αᵢβᵢ/(s − dᵢ))`. For minimum-phase
//! arrows the sign parameters are `sign γ` together with `sign(γαᵢβᵢ)`, up to
//! a permutation that is recovered here from the cross Gramian.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gramian::{cross_gramian_with, sign_spectrum_with};
use crate::lti::{check_stability, leading_subsystem, StateSpace};
use crate::numkernel::{eigen_with_vectors, eigenvalues, inverse, Matrix, Tolerances};

const BRUTE_FORCE_MAX: usize = 7;

#[derive(Debug, Clone, PartialEq)]
pub struct ArrowheadRealization {
    /// Diagonal, head `d₁` first.
    pub d: Vec<f64>,
    /// First row `α₂…αₙ`.
    pub alpha: Vec<f64>,
    /// First column `β₂…βₙ`.
    pub beta: Vec<f64>,
    pub gamma: f64,
}

impl ArrowheadRealization {
    pub fn new(d: Vec<f64>, alpha: Vec<f64>, beta: Vec<f64>, gamma: f64) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::BadDimension("arrowhead needs at least one state".into()));
        }
        if alpha.len() + 1 != d.len() || beta.len() + 1 != d.len() {
            return Err(Error::BadDimension(format!(
                "arrowhead with {} diagonal entries needs {} alpha and beta entries, got {} and {}",
                d.len(),
                d.len() - 1,
                alpha.len(),
                beta.len()
            )));
        }
        if !d.iter().chain(&alpha).chain(&beta).all(|x| x.is_finite()) || !gamma.is_finite() {
            return Err(Error::BadInput("arrowhead entries must be finite".into()));
        }
        if gamma == 0.0 {
            return Err(Error::BadInput("gamma must be nonzero".into()));
        }
        Ok(Self { d, alpha, beta, gamma })
    }

    pub fn order(&self) -> usize {
        self.d.len()
    }

    fn scale(&self) -> f64 {
        self.d.iter().chain(&self.alpha).chain(&self.beta).fold(0.0, |m, x| m.max(x.abs()))
    }

    fn dense_a(&self) -> Matrix {
        let n = self.order();
        let mut a = Matrix::diag(&self.d);
        for i in 1..n {
            a[(0, i)] = self.alpha[i - 1];
            a[(i, 0)] = self.beta[i - 1];
        }
        a
    }
}

pub fn to_state_space(ar: &ArrowheadRealization) -> StateSpace {
    let n = ar.order();
    let mut b = vec![0.0; n];
    let mut c = vec![0.0; n];
    b[0] = ar.gamma;
    c[0] = 1.0;
    StateSpace { a: ar.dense_a(), b, c, d: 0.0 }
}

pub fn arrowhead_inverse(ar: &ArrowheadRealization) -> Result<Matrix> {
    arrowhead_inverse_with(ar, &Tolerances::default())
}

/// `A⁻¹` as a diagonal plus a rank-one update, with `ρ = 1/(d₁ − αD⁻¹β)`.
pub fn arrowhead_inverse_with(ar: &ArrowheadRealization, tol: &Tolerances) -> Result<Matrix> {
    let n = ar.order();
    let floor = tol.singular_shift * ar.scale();
    let tail = &ar.d[1..];
    if let Some(i) = tail.iter().position(|x| x.abs() <= floor) {
        return Err(Error::SingularShift(format!("d{} = {:e}", i + 2, tail[i])));
    }
    let u: Vec<f64> = ar.beta.iter().zip(tail).map(|(b, d)| b / d).collect();
    let w: Vec<f64> = ar.alpha.iter().zip(tail).map(|(a, d)| a / d).collect();
    let schur = ar.d[0] - ar.alpha.iter().zip(&u).map(|(a, u)| a * u).sum::<f64>();
    if schur.abs() <= floor {
        return Err(Error::SingularShift(format!("d1 - alpha D^-1 beta = {schur:e}")));
    }
    let rho = 1.0 / schur;
    let mut inv = Matrix::zeros(n, n);
    inv[(0, 0)] = rho;
    for i in 1..n {
        inv[(0, i)] = -rho * w[i - 1];
        inv[(i, 0)] = -rho * u[i - 1];
        for j in 1..n {
            inv[(i, j)] = rho * u[i - 1] * w[j - 1];
        }
        inv[(i, i)] += 1.0 / tail[i - 1];
    }
    Ok(inv)
}

/// `γ / (s − d₁ − Σ αᵢβᵢ/(s − dᵢ))`.
pub fn arrowhead_transfer(ar: &ArrowheadRealization, s: Complex64) -> Result<Complex64> {
    let floor = 1e-14 * ar.scale().max(s.norm());
    let mut den = s - ar.d[0];
    for ((a, b), d) in ar.alpha.iter().zip(&ar.beta).zip(&ar.d[1..]) {
        let gap = s - d;
        if gap.norm() <= floor {
            return Err(Error::PoleHit);
        }
        den -= a * b / gap;
    }
    if den.norm() <= floor {
        return Err(Error::PoleHit);
    }
    Ok(ar.gamma / den)
}

pub fn check_arrowhead_minimality(ar: &ArrowheadRealization) -> bool {
    check_arrowhead_minimality_with(ar, &Tolerances::default())
}

/// All `αᵢ`, `βᵢ` nonzero and the tail `d₂…dₙ` pairwise distinct.
pub fn check_arrowhead_minimality_with(ar: &ArrowheadRealization, tol: &Tolerances) -> bool {
    let scale = ar.scale();
    if ar.alpha.iter().chain(&ar.beta).any(|x| x.abs() <= tol.arrow_zero * scale) {
        return false;
    }
    let mut tail = ar.d[1..].to_vec();
    tail.sort_by(|a, b| a.partial_cmp(b).expect("finite diagonal"));
    tail.windows(2).all(|w| w[1] - w[0] > tol.arrow_gap * scale)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignDiagnosis {
    /// `sign γ` followed by `sign(γαᵢβᵢ)`, in arrow state order.
    pub sign_multiset: Vec<i8>,
    pub hypothesis_ok: bool,
    /// Why the hypotheses fail, when they do.
    pub hypothesis_note: Option<String>,
    /// `sign(αᵢβᵢ) = −1` for every `i`.
    pub uniform_trailing: bool,
    /// Entry `i` is the position (0-based, σ-descending) of arrow state `i`
    /// in the canonical sign order.
    pub canonical_permutation: Option<Vec<usize>>,
}

impl SignDiagnosis {
    /// Count of `(+1, −1)` entries.
    pub fn counts(&self) -> (usize, usize) {
        let plus = self.sign_multiset.iter().filter(|&&s| s > 0).count();
        (plus, self.sign_multiset.len() - plus)
    }

    /// Signs in canonical order, when the permutation is known.
    pub fn ordered_signs(&self) -> Option<Vec<i8>> {
        let perm = self.canonical_permutation.as_ref()?;
        let mut out = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            out[p] = self.sign_multiset[i];
        }
        Some(out)
    }

    pub fn require_hypothesis(&self) -> Result<&Self> {
        if self.hypothesis_ok {
            Ok(self)
        } else {
            Err(Error::HypothesisViolated(self.hypothesis_note.clone().unwrap_or_default()))
        }
    }
}

pub fn diagnose_signs(ar: &ArrowheadRealization) -> Result<SignDiagnosis> {
    diagnose_signs_with(ar, &Tolerances::default())
}

/// Sign multiset of the arrow, a hypothesis check (minimal, every `dᵢ < 0`,
/// every leading subsystem asymptotically stable) and, when the hypotheses
/// hold, the permutation into canonical order.
pub fn diagnose_signs_with(ar: &ArrowheadRealization, tol: &Tolerances) -> Result<SignDiagnosis> {
    let g = sign_of(ar.gamma);
    let mut sign_multiset = vec![g];
    sign_multiset.extend(ar.alpha.iter().zip(&ar.beta).map(|(a, b)| g * sign_of(a * b)));
    let uniform_trailing = ar.alpha.iter().zip(&ar.beta).all(|(a, b)| a * b < 0.0);
    let note = hypothesis_failure(ar, tol)?;
    let mut diag = SignDiagnosis {
        sign_multiset,
        hypothesis_ok: note.is_none(),
        hypothesis_note: note,
        uniform_trailing,
        canonical_permutation: None,
    };
    if !diag.hypothesis_ok {
        return Ok(diag);
    }
    let n = ar.order();
    diag.canonical_permutation = if uniform_trailing {
        Some((0..n).collect())
    } else {
        match_permutation(ar, &diag.sign_multiset, tol)?
    };
    Ok(diag)
}

fn sign_of(x: f64) -> i8 {
    if x < 0.0 {
        -1
    } else {
        1
    }
}

fn hypothesis_failure(ar: &ArrowheadRealization, tol: &Tolerances) -> Result<Option<String>> {
    if !check_arrowhead_minimality_with(ar, tol) {
        return Ok(Some("arrow is not minimal".into()));
    }
    if let Some(i) = ar.d.iter().position(|&x| x >= 0.0) {
        return Ok(Some(format!("d{} = {} is not negative", i + 1, ar.d[i])));
    }
    let full = to_state_space(ar);
    for k in 1..=ar.order() {
        let sub = if k == ar.order() { full.clone() } else { leading_subsystem(&full, k)? };
        let rep = check_stability(&sub)?;
        if !rep.stable {
            return Ok(Some(format!("leading subsystem of order {k} is not asymptotically stable")));
        }
    }
    Ok(None)
}

/// Matches arrow states to canonical positions of equal sign, breaking ties
/// by the cross-Gramian participation factors `|vᵢⱼ wⱼᵢ|`. `None` when the
/// dense sign spectrum disagrees with the multiset.
fn match_permutation(ar: &ArrowheadRealization, multiset: &[i8], tol: &Tolerances) -> Result<Option<Vec<usize>>> {
    let n = ar.order();
    let sys = to_state_space(ar);
    let spectrum = sign_spectrum_with(&sys, tol)?;
    let x = cross_gramian_with(&sys, tol)?;
    let eig = eigen_with_vectors(&x)?;
    let mut v = eig.vectors.expect("vectors requested");
    // reorder eigenpairs to match the sign spectrum (|λ| descending)
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (eig.values[i].re, eig.values[j].re);
        b.abs().partial_cmp(&a.abs()).expect("finite").then(b.partial_cmp(&a).expect("finite"))
    });
    let mut sorted = Matrix::zeros(n, n);
    for (newj, &oldj) in order.iter().enumerate() {
        for i in 0..n {
            sorted[(i, newj)] = v[(i, oldj)];
        }
    }
    v = sorted;
    let w = match inverse(&v) {
        Ok(w) => w,
        Err(_) => return Ok(None),
    };
    let mut part = Matrix::zeros(n, n);
    for j in 0..n {
        let total: f64 = (0..n).map(|i| (v[(i, j)] * w[(j, i)]).abs()).sum();
        for i in 0..n {
            part[(i, j)] = (v[(i, j)] * w[(j, i)]).abs() / total.max(f64::MIN_POSITIVE);
        }
    }
    let mut perm = vec![usize::MAX; n];
    for sign in [1i8, -1] {
        let states: Vec<usize> = (0..n).filter(|&i| multiset[i] == sign).collect();
        let slots: Vec<usize> = (0..n).filter(|&j| spectrum.signs[j] == sign).collect();
        if states.len() != slots.len() {
            return Ok(None);
        }
        for (state, slot) in assign(&states, &slots, &part) {
            perm[state] = slot;
        }
    }
    Ok(Some(perm))
}

/// Assignment of `states` to `slots` maximizing total participation.
fn assign(states: &[usize], slots: &[usize], part: &Matrix) -> Vec<(usize, usize)> {
    let m = states.len();
    if m <= BRUTE_FORCE_MAX {
        let mut best: Option<(f64, Vec<usize>)> = None;
        let mut idx: Vec<usize> = (0..m).collect();
        permutations(&mut idx, 0, &mut |p| {
            let score: f64 = p.iter().enumerate().map(|(k, &s)| part[(states[k], slots[s])]).sum();
            if best.as_ref().map_or(true, |(b, _)| score > *b) {
                best = Some((score, p.to_vec()));
            }
        });
        let (_, p) = best.expect("at least one permutation");
        return p.iter().enumerate().map(|(k, &s)| (states[k], slots[s])).collect();
    }
    let mut free: Vec<usize> = slots.to_vec();
    let mut pairs = Vec::with_capacity(m);
    let mut pending: Vec<usize> = states.to_vec();
    while !pending.is_empty() {
        let (mut bi, mut bj, mut bv) = (0, 0, -1.0);
        for (i, &st) in pending.iter().enumerate() {
            for (j, &sl) in free.iter().enumerate() {
                if part[(st, sl)] > bv {
                    (bi, bj, bv) = (i, j, part[(st, sl)]);
                }
            }
        }
        pairs.push((pending.remove(bi), free.remove(bj)));
    }
    pairs
}

fn permutations(idx: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == idx.len() {
        visit(idx);
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permutations(idx, k + 1, visit);
        idx.swap(k, i);
    }
}

/// The arrow with its tail reordered into canonical sign order, together
/// with the (1-based) canonical position `k` of the head state.
pub fn permuted_realization(ar: &ArrowheadRealization) -> Result<(ArrowheadRealization, usize)> {
    let diag = diagnose_signs(ar)?;
    diag.require_hypothesis()?;
    let perm = diag
        .canonical_permutation
        .ok_or_else(|| Error::HypothesisViolated("sign multiset does not match the dense sign spectrum".into()))?;
    let mut tail: Vec<usize> = (1..ar.order()).collect();
    tail.sort_by_key(|&i| perm[i]);
    let mut d = vec![ar.d[0]];
    d.extend(tail.iter().map(|&i| ar.d[i]));
    let alpha = tail.iter().map(|&i| ar.alpha[i - 1]).collect();
    let beta = tail.iter().map(|&i| ar.beta[i - 1]).collect();
    Ok((ArrowheadRealization { d, alpha, beta, gamma: ar.gamma }, perm[0] + 1))
}

/// Recognizes a dense realization with arrow pattern, `b ∝ e₁`, `c ∝ e₁ᵀ`
/// and `d = 0`. The output scaling is absorbed into `γ`.
pub fn detect_arrowhead(sys: &StateSpace) -> Option<ArrowheadRealization> {
    let n = sys.order();
    if n == 0 || sys.d != 0.0 {
        return None;
    }
    let zero = 1e-13 * sys.a.max_abs();
    for i in 1..n {
        for j in 1..n {
            if i != j && sys.a[(i, j)].abs() > zero {
                return None;
            }
        }
    }
    let bmax = sys.b.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cmax = sys.c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if sys.b[0] == 0.0 || sys.c[0] == 0.0 {
        return None;
    }
    if sys.b[1..].iter().any(|x| x.abs() > 1e-13 * bmax) || sys.c[1..].iter().any(|x| x.abs() > 1e-13 * cmax) {
        return None;
    }
    let c0 = sys.c[0];
    let d = sys.a.diagonal();
    let alpha = (1..n).map(|i| c0 * sys.a[(0, i)]).collect();
    let beta = (1..n).map(|i| sys.a[(i, 0)] / c0).collect();
    ArrowheadRealization::new(d, alpha, beta, sys.b[0] * c0).ok()
}

pub fn canonical_arrowhead_from_tf(numer: &[f64], denom: &[f64]) -> Result<ArrowheadRealization> {
    canonical_arrowhead_from_tf_with(numer, denom, &Tolerances::default())
}

/// Canonical arrow of `N/D` with `deg N = deg D − 1`: divide
/// `D = N·(μs + q₀) + R`, take residues `ρᵢ = R(dᵢ)/N′(dᵢ)` at the zeros of
/// `N`, and set `γ = 1/μ`, head `−γq₀`, `αᵢ = γρᵢ`, `βᵢ = −1`.
pub fn canonical_arrowhead_from_tf_with(numer: &[f64], denom: &[f64], tol: &Tolerances) -> Result<ArrowheadRealization> {
    let num = trim(numer);
    let den = trim(denom);
    if num.is_empty() || den.len() < 2 || num.len() + 1 != den.len() {
        return Err(Error::DegreeMismatch(format!(
            "numerator degree must be one less than denominator degree (got {} and {})",
            num.len() as isize - 1,
            den.len() as isize - 1
        )));
    }
    if !num.iter().chain(den).all(|x| x.is_finite()) {
        return Err(Error::BadInput("polynomial coefficients must be finite".into()));
    }
    let poles = roots(den)?;
    let abscissa = poles.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    if abscissa >= 0.0 {
        return Err(Error::NotStable(abscissa));
    }
    let (q, r) = poly_div(den, num);
    let (mu, q0) = (q[0], q[1]);
    if mu == 0.0 || !mu.is_finite() {
        return Err(Error::DegreeMismatch("leading quotient coefficient vanishes".into()));
    }
    let gamma = 1.0 / mu;
    let zeros = real_distinct_roots(num, tol)?;
    let dnum = derivative(num);
    let mut alpha = Vec::with_capacity(zeros.len());
    for &z in &zeros {
        let rz = horner(&r, z);
        let rscale: f64 = r.iter().fold(0.0, |acc, c| acc * z.abs() + c.abs());
        if rz.abs() <= 1e-10 * rscale.max(f64::MIN_POSITIVE) || r.iter().all(|&c| c == 0.0) {
            return Err(Error::NotCoprime);
        }
        alpha.push(gamma * rz / horner(&dnum, z));
    }
    let mut d = vec![-gamma * q0];
    d.extend(&zeros);
    let beta = vec![-1.0; zeros.len()];
    ArrowheadRealization::new(d, alpha, beta, gamma)
}

fn trim(p: &[f64]) -> &[f64] {
    let start = p.iter().position(|&c| c != 0.0).unwrap_or(p.len());
    &p[start..]
}

fn horner(p: &[f64], x: f64) -> f64 {
    p.iter().fold(0.0, |acc, c| acc * x + c)
}

fn derivative(p: &[f64]) -> Vec<f64> {
    let deg = p.len().saturating_sub(1);
    p[..deg].iter().enumerate().map(|(k, c)| c * (deg - k) as f64).collect()
}

/// Quotient and remainder, coefficients high to low. The remainder has
/// `divisor.len() − 1` coefficients.
fn poly_div(dividend: &[f64], divisor: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut rem = dividend.to_vec();
    let qlen = dividend.len() + 1 - divisor.len();
    let mut q = vec![0.0; qlen];
    for k in 0..qlen {
        let coef = rem[k] / divisor[0];
        q[k] = coef;
        for (j, dc) in divisor.iter().enumerate() {
            rem[k + j] -= coef * dc;
        }
    }
    (q, rem[qlen..].to_vec())
}

/// Roots via companion-matrix eigenvalues.
fn roots(p: &[f64]) -> Result<Vec<Complex64>> {
    let deg = p.len() - 1;
    if deg == 0 {
        return Ok(vec![]);
    }
    let mut comp = Matrix::zeros(deg, deg);
    for j in 0..deg {
        comp[(0, j)] = -p[j + 1] / p[0];
    }
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    Ok(eigenvalues(&comp)?.values)
}

fn real_distinct_roots(p: &[f64], tol: &Tolerances) -> Result<Vec<f64>> {
    let near = tol.arrow_gap.sqrt();
    let mut out = Vec::new();
    for z in roots(p)? {
        if z.im.abs() > tol.complex_eig * z.norm().max(1.0) {
            // a conjugate pair this close to the axis is a split double root
            return Err(if z.im.abs() <= near * z.norm().max(1.0) { Error::RepeatedZeros } else { Error::ComplexZeros });
        }
        out.push(polish(p, z.re));
    }
    out.sort_by(|a, b| b.partial_cmp(a).expect("finite roots"));
    if out.windows(2).any(|w| w[0] - w[1] <= near * w[0].abs().max(1.0)) {
        return Err(Error::RepeatedZeros);
    }
    Ok(out)
}

fn polish(p: &[f64], mut x: f64) -> f64 {
    let dp = derivative(p);
    for _ in 0..3 {
        let f = horner(p, x);
        let df = horner(&dp, x);
        if df == 0.0 || f == 0.0 {
            break;
        }
        let step = f / df;
        if !step.is_finite() || step.abs() > 1e-6 * x.abs().max(1.0) {
            break;
        }
        x -= step;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lti::transfer_eval;
    use crate::numkernel::inverse;

    fn a1() -> ArrowheadRealization {
        ArrowheadRealization::new(vec![-1.0, -2.0, -3.0], vec![1.0, 1.0], vec![-1.0, 1.0], 1.0).unwrap()
    }

    fn a2() -> ArrowheadRealization {
        ArrowheadRealization::new(vec![-1.0, -3.0, -2.0], vec![1.0, 1.0], vec![1.0, -1.0], 1.0).unwrap()
    }

    #[test]
    fn dense_pattern() {
        let s = to_state_space(&ArrowheadRealization::new(vec![-4.0], vec![], vec![], 2.5).unwrap());
        assert_eq!((s.a[(0, 0)], s.b[0], s.c[0], s.d), (-4.0, 2.5, 1.0, 0.0));
        let s = to_state_space(&a1());
        assert_eq!(s.a.to_rows(), vec![vec![-1.0, 1.0, 1.0], vec![-1.0, -2.0, 0.0], vec![1.0, 0.0, -3.0]]);
    }

    #[test]
    fn two_state_inverse() {
        let ar = ArrowheadRealization::new(vec![-2.0, -1.0], vec![1.0], vec![-1.0], 1.0).unwrap();
        let inv = arrowhead_inverse(&ar).unwrap();
        let want = Matrix::from_rows(&[[-1.0 / 3.0, -1.0 / 3.0], [1.0 / 3.0, -2.0 / 3.0]]).unwrap();
        assert!((&inv - &want).norm_fro() < 1e-15);
        let diag = ArrowheadRealization::new(vec![2.0, 4.0], vec![0.0], vec![0.0], 1.0).unwrap();
        assert_eq!(arrowhead_inverse(&diag).unwrap(), Matrix::diag(&[0.5, 0.25]));
        let lu = inverse(&to_state_space(&a1()).a).unwrap();
        assert!((&arrowhead_inverse(&a1()).unwrap() - &lu).norm_fro() < 1e-14);
    }

    #[test]
    fn singular_shift() {
        let ar = ArrowheadRealization::new(vec![-1.0, 0.0], vec![1.0], vec![1.0], 1.0).unwrap();
        assert!(matches!(arrowhead_inverse(&ar), Err(Error::SingularShift(_))));
        let ar = ArrowheadRealization::new(vec![1.0, 1.0], vec![1.0], vec![1.0], 1.0).unwrap();
        assert!(matches!(arrowhead_inverse(&ar), Err(Error::SingularShift(_))));
    }

    #[test]
    fn transfer_agrees_with_dense() {
        let ar = a1();
        let s = Complex64::new(0.3, 2.0);
        let got = arrowhead_transfer(&ar, s).unwrap();
        let want = transfer_eval(&to_state_space(&ar), s).unwrap();
        assert!((got - want).norm() < 1e-14 * want.norm());
        assert_eq!(arrowhead_transfer(&ar, Complex64::new(-2.0, 0.0)), Err(Error::PoleHit));
    }

    #[test]
    fn minimality() {
        assert!(check_arrowhead_minimality(&a1()));
        let ar = ArrowheadRealization::new(vec![-1.0, -2.0, -3.0], vec![0.0, 1.0], vec![-1.0, 1.0], 1.0).unwrap();
        assert!(!check_arrowhead_minimality(&ar));
        let ar = ArrowheadRealization::new(vec![-1.0, -2.0, -2.0], vec![1.0, 1.0], vec![-1.0, 1.0], 1.0).unwrap();
        assert!(!check_arrowhead_minimality(&ar));
    }

    #[test]
    fn example_permutations() {
        let d1 = diagnose_signs(&a1()).unwrap();
        assert!(d1.hypothesis_ok && !d1.uniform_trailing);
        assert_eq!(d1.sign_multiset, vec![1, -1, 1]);
        assert_eq!(d1.canonical_permutation, Some(vec![0, 1, 2]));
        let d2 = diagnose_signs(&a2()).unwrap();
        assert_eq!(d2.canonical_permutation, Some(vec![0, 2, 1]));
        assert_eq!(d2.ordered_signs(), Some(vec![1, -1, 1]));
        let (p, k) = permuted_realization(&a2()).unwrap();
        assert_eq!(k, 1);
        assert_eq!(p.d, vec![-1.0, -2.0, -3.0]);
        assert_eq!(p.beta, vec![-1.0, 1.0]);
    }

    #[test]
    fn hypothesis_failure_is_reported() {
        let ar = ArrowheadRealization::new(vec![1.0, -2.0], vec![1.0], vec![-5.0], 1.0).unwrap();
        let d = diagnose_signs(&ar).unwrap();
        assert!(!d.hypothesis_ok && d.canonical_permutation.is_none());
        assert!(matches!(permuted_realization(&ar), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn detects_scaled_arrow() {
        let mut s = to_state_space(&a1());
        assert_eq!(detect_arrowhead(&s), Some(a1()));
        s.a[(1, 2)] = 0.5;
        assert_eq!(detect_arrowhead(&s), None);
    }

    #[test]
    fn tf_example() {
        let ar = canonical_arrowhead_from_tf(&[1.0, 2.0], &[1.0, 3.0, 1.0]).unwrap();
        assert_eq!(ar.gamma, 1.0);
        assert_eq!(ar.beta, vec![-1.0]);
        assert!((ar.d[0] + 1.0).abs() < 1e-15 && (ar.d[1] + 2.0).abs() < 1e-14);
        assert!((ar.alpha[0] + 1.0).abs() < 1e-14);
        let scalar = canonical_arrowhead_from_tf(&[3.0], &[2.0, 4.0]).unwrap();
        assert_eq!((scalar.d.clone(), scalar.gamma), (vec![-2.0], 1.5));
    }

    #[test]
    fn tf_errors() {
        assert!(matches!(canonical_arrowhead_from_tf(&[1.0, 0.0, 1.0], &[1.0, 3.0, 3.0, 1.0]), Err(Error::ComplexZeros)));
        assert!(matches!(canonical_arrowhead_from_tf(&[1.0, 2.0, 1.0], &[1.0, 6.0, 11.0, 6.0]), Err(Error::RepeatedZeros)));
        // (s+1)/((s+1)(s+2))
        assert!(matches!(canonical_arrowhead_from_tf(&[1.0, 1.0], &[1.0, 3.0, 2.0]), Err(Error::NotCoprime)));
        assert!(matches!(canonical_arrowhead_from_tf(&[1.0, 1.0], &[1.0, 1.0]), Err(Error::DegreeMismatch(_))));
    }
}
