use num_traits::{Float, FromPrimitive};
use serde::{Deserialize, Serialize};

use super::recurrence::order4_row;
use super::AnalyticsError;

/// A companion matrix: free first row, shifted identity below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompanionMatrix<T> {
    /// Model parameters when built from `(p, q)`.
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub entries: Vec<Vec<T>>,
}

impl<T: Float> CompanionMatrix<T> {
    /// Companion matrix of `x^k - a_1 x^{k-1} - ... - a_k` for `row = [a_1..a_k]`.
    pub fn from_first_row(row: Vec<T>) -> Self {
        let k = row.len();
        assert!(k >= 1, "companion matrix needs at least one coefficient");
        let mut entries = vec![row];
        for i in 1..k {
            let mut r = vec![T::zero(); k];
            r[i - 1] = T::one();
            entries.push(r);
        }
        CompanionMatrix { p: None, q: None, entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn first_row(&self) -> &[T] {
        &self.entries[0]
    }

    /// Coefficients `c_1..c_k` of the monic characteristic polynomial
    /// `x^k + c_1 x^{k-1} + ... + c_k`.
    pub fn char_poly_coefficients(&self) -> Vec<T> {
        self.first_row().iter().map(|&a| -a).collect()
    }

    /// Characteristic polynomial at `x`, by Horner's rule.
    pub fn char_poly(&self, x: T) -> T {
        self.first_row().iter().fold(T::one(), |acc, &a| acc * x - a)
    }

    fn apply(&self, v: &[T]) -> Vec<T> {
        self.entries.iter().map(|row| row.iter().zip(v).fold(T::zero(), |s, (&a, &b)| s + a * b)).collect()
    }
}

/// The 4×4 matrix whose dominant eigenvalue is the Kleinberg ball growth
/// rate for local range `p` and `q` long-range contacts.
pub fn companion_matrix<T: Float + FromPrimitive>(p: u64, q: u64) -> Result<CompanionMatrix<T>, AnalyticsError> {
    if p < 1 || q < 1 {
        return Err(AnalyticsError::InvalidParameter(format!("p and q must be at least 1, got p={p}, q={q}")));
    }
    let row = order4_row(p, q).iter().map(|&a| T::from_u64(a).expect("representable")).collect();
    let mut m = CompanionMatrix::from_first_row(row);
    m.p = Some(p);
    m.q = Some(q);
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaEstimate<T> {
    /// The bisection root, reported as the estimate.
    pub alpha: T,
    pub power: T,
    pub bisection: T,
    /// `|char_poly(alpha)|`.
    pub residual: T,
    pub power_iterations: usize,
}

const POWER_CAP: usize = 100_000;

fn power_iteration<T: Float>(m: &CompanionMatrix<T>, tol: T) -> Result<(T, usize), AnalyticsError> {
    let mut v = vec![T::one(); m.dim()];
    let mut lambda = T::zero();
    let floor = T::epsilon() * T::from(8.0).unwrap();
    // Stop well inside the tolerance so the estimate, not just the step, is within it.
    let target = tol / T::from(100.0).unwrap();
    for it in 1..=POWER_CAP {
        let w = m.apply(&v);
        let next = w.iter().fold(T::zero(), |a, &x| a.max(x.abs()));
        if next == T::zero() {
            return Ok((T::zero(), it));
        }
        v = w.into_iter().map(|x| x / next).collect();
        let diff = (next - lambda).abs();
        lambda = next;
        if it > 1 && (diff <= target || diff <= floor * lambda) {
            return Ok((lambda, it));
        }
    }
    Err(AnalyticsError::NonConvergence(POWER_CAP))
}

/// Largest positive root of `x^k - Σ a_i x^{k-i}` with `a_i >= 0`.
///
/// The bracket is `[0, 2^⌈log₂(1 + max a_i)⌉]`: the polynomial is `<= 0` at
/// zero and positive beyond the Cauchy bound `1 + max a_i`, and a power of
/// two keeps dyadic roots exactly representable as midpoints.
fn bisect<T: Float>(m: &CompanionMatrix<T>, tol: T) -> T {
    let bound = m.first_row().iter().fold(T::zero(), |a, &x| a.max(x.abs())) + T::one();
    let two = T::one() + T::one();
    let mut hi = T::one();
    while hi < bound {
        hi = hi * two;
    }
    let mut lo = T::zero();
    for _ in 0..2000 {
        let mid = (lo + hi) / two;
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let f = m.char_poly(mid);
        if f == T::zero() {
            return mid;
        }
        if f < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / two
}

/// Dominant eigenvalue by power iteration and by bisection on the
/// characteristic polynomial; the two must agree within `tol`.
pub fn dominant_eigenvalue<T: Float + Into<f64>>(
    m: &CompanionMatrix<T>,
    tol: T,
) -> Result<AlphaEstimate<T>, AnalyticsError> {
    if !(tol > T::zero()) {
        return Err(AnalyticsError::InvalidParameter("tolerance must be positive".into()));
    }
    if m.first_row().iter().any(|&a| a < T::zero()) {
        return Err(AnalyticsError::InvalidParameter("first row must be non-negative".into()));
    }
    let (power, power_iterations) = power_iteration(m, tol)?;
    let bisection = bisect(m, tol);
    if (power - bisection).abs() > tol {
        return Err(AnalyticsError::MethodsDisagree { power: power.into(), bisection: bisection.into() });
    }
    Ok(AlphaEstimate { alpha: bisection, power, bisection, residual: m.char_poly(bisection).abs(), power_iterations })
}

/// `ℓ_n = log_α n`.
pub fn predict_ell<T: Float>(n: T, alpha: T) -> T {
    n.ln() / alpha.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::recurrence_c_general;
    use num_traits::ToPrimitive;

    #[test]
    fn first_rows() {
        let m = companion_matrix::<f64>(1, 1).unwrap();
        assert_eq!(m.first_row(), &[2.0, 4.0, 2.0, 1.0]);
        assert_eq!(m.char_poly_coefficients(), vec![-2.0, -4.0, -2.0, -1.0]);
        assert_eq!(companion_matrix::<f64>(1, 2).unwrap().first_row(), &[3.0, 7.0, 5.0, 2.0]);
        for (p, q) in [(1, 1), (2, 3), (4, 4)] {
            let m = companion_matrix::<f64>(p, q).unwrap();
            for i in 1..4 {
                for j in 0..4 {
                    assert_eq!(m.entries[i][j], if j == i - 1 { 1.0 } else { 0.0 });
                }
            }
        }
        assert!(companion_matrix::<f64>(0, 1).is_err());
    }

    #[test]
    fn plain_alpha() {
        let a = dominant_eigenvalue(&companion_matrix::<f64>(1, 1).unwrap(), 1e-12).unwrap();
        assert!((a.alpha - 3.38298).abs() < 1e-4, "{}", a.alpha);
        assert!((a.power - a.bisection).abs() < 1e-9);
        assert!(a.residual < 1e-9);
    }

    #[test]
    fn degenerate_one_by_one() {
        let m = CompanionMatrix::from_first_row(vec![2.0f64]);
        let a = dominant_eigenvalue(&m, 1e-12).unwrap();
        assert_eq!(a.alpha, 2.0);
        assert_eq!(a.power, 2.0);
    }

    /// Root of x^4 - 3x^3 - 7x^2 - 5x - 2 by plain bisection on [4, 6].
    fn quartic_root() -> f64 {
        let f = |x: f64| (((x - 3.0) * x - 7.0) * x - 5.0) * x - 2.0;
        let (mut lo, mut hi) = (4.0, 6.0);
        assert!(f(lo) < 0.0 && f(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 { lo = mid } else { hi = mid }
        }
        lo
    }

    #[test]
    fn p1_q2_root() {
        let a = dominant_eigenvalue(&companion_matrix::<f64>(1, 2).unwrap(), 1e-12).unwrap();
        assert!((a.alpha - quartic_root()).abs() < 1e-10);
    }

    #[test]
    fn recurrence_ratios_converge_to_alpha() {
        for p in 1..=4 {
            for q in 1..=4 {
                let a = dominant_eigenvalue(&companion_matrix::<f64>(p, q).unwrap(), 1e-12).unwrap();
                assert!((a.power - a.bisection).abs() < 1e-9, "p={p} q={q}");
                let s = recurrence_c_general(p, q, 61).unwrap();
                let ratio = (&s.values[61] / &s.values[60]).to_f64().unwrap();
                assert!((ratio - a.alpha).abs() < 1e-6, "p={p} q={q}: {ratio} vs {}", a.alpha);
            }
        }
    }

    #[test]
    fn single_precision_works() {
        let a = dominant_eigenvalue(&companion_matrix::<f32>(1, 1).unwrap(), 1e-4).unwrap();
        assert!((a.alpha - 3.38298).abs() < 1e-4);
    }

    #[test]
    fn ell_values() {
        assert_eq!(predict_ell(16.0, 2.0), 4.0);
        let alpha = 3.38298f64;
        assert!((predict_ell(alpha.powi(4), alpha) - 4.0).abs() < 1e-12);
        assert!((predict_ell(1e6, alpha) - 11.3357).abs() < 1e-4);
        assert!(predict_ell(1e6, alpha) < predict_ell(2e6, alpha));
        assert!(predict_ell(1e6, 3.0) > predict_ell(1e6, alpha));
    }
}
