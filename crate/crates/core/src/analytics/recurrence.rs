use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::AnalyticsError;

/// `C_0..=C_imax` for local range `p` and `q` long-range contacts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceSeries<T> {
    pub p: u64,
    pub q: u64,
    pub values: Vec<T>,
    /// `C_{i+1} / C_i` for `i = 0..imax`.
    pub ratios: Vec<f64>,
    /// Whether the order-4 form reproduced every value with `i > 2`.
    pub order4_agrees: bool,
}

impl<T: ToPrimitive> RecurrenceSeries<T> {
    /// `C_imax / α^imax`, the constant in `C_i ~ ρ α^i`.
    pub fn rho(&self, alpha: f64) -> f64 {
        let i = self.values.len() - 1;
        self.values[i].to_f64().unwrap_or(f64::NAN) / alpha.powi(i as i32)
    }
}

fn scalar<T: FromPrimitive>(x: u64) -> T {
    T::from_u64(x).expect("small integers are representable")
}

/// Direct-sum form:
/// `C_{i+1} = q C_i + Σ_{j≥1} (4p²(j - 1/2) + 2p) q C_{i-j}` with `C_0 = 1/q`.
pub fn recurrence_values<T>(p: u64, q: u64, i_max: usize) -> Result<Vec<T>, AnalyticsError>
where
    T: Clone + Num + FromPrimitive,
{
    if p < 1 || q < 1 {
        return Err(AnalyticsError::InvalidParameter(format!("p and q must be at least 1, got p={p}, q={q}")));
    }
    let qt: T = scalar(q);
    let c0 = T::one() / qt.clone();
    if c0.clone() * qt.clone() != T::one() {
        return Err(AnalyticsError::InexactScalar(q));
    }
    let mut c = Vec::with_capacity(i_max + 1);
    c.push(c0);
    for i in 0..i_max {
        let mut next = qt.clone() * c[i].clone();
        for j in 1..=i {
            let coef: T = scalar((4 * p * p * j as u64 - 2 * p * p + 2 * p) * q);
            next = next + coef * c[i - j].clone();
        }
        c.push(next);
    }
    Ok(c)
}

/// First row of the order-4 form, shared with the companion matrix.
pub(super) fn order4_row(p: u64, q: u64) -> [u64; 4] {
    [q + 1, (2 * p * p + 2 * p - 1) * q + 1, 4 * p * p * q - q - 1, (2 * p * p - 2 * p + 1) * q]
}

fn order4_agrees<T: Clone + Num + FromPrimitive>(values: &[T], row: [u64; 4]) -> bool {
    (3..values.len().saturating_sub(1)).all(|i| {
        let predicted = (0..4).fold(T::zero(), |acc, k| acc + scalar::<T>(row[k]) * values[i - k].clone());
        predicted == values[i + 1]
    })
}

fn ratios<T: ToPrimitive>(values: &[T]) -> Vec<f64> {
    values.windows(2).map(|w| w[1].to_f64().unwrap_or(f64::NAN) / w[0].to_f64().unwrap_or(f64::NAN)).collect()
}

/// The `p = q = 1` series `1, 1, 5, 17, 57, ...` over exact integers.
pub fn recurrence_c(i_max: usize) -> RecurrenceSeries<BigInt> {
    let values = recurrence_values::<BigInt>(1, 1, i_max).expect("p = q = 1 is valid and exact");
    RecurrenceSeries { p: 1, q: 1, order4_agrees: order4_agrees(&values, order4_row(1, 1)), ratios: ratios(&values), values }
}

/// The general series over exact rationals (`C_0 = 1/q`).
pub fn recurrence_c_general(p: u64, q: u64, i_max: usize) -> Result<RecurrenceSeries<BigRational>, AnalyticsError> {
    let values = recurrence_values::<BigRational>(p, q, i_max)?;
    Ok(RecurrenceSeries { p, q, order4_agrees: order4_agrees(&values, order4_row(p, q)), ratios: ratios(&values), values })
}
