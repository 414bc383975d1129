use num_traits::{Float, FromPrimitive};
use serde::{Deserialize, Serialize};

use super::AnalyticsError;

/// The smallest long-range contact probability on a torus against
/// `1 / (4 n ln n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck<T> {
    pub n: usize,
    pub r: T,
    /// `Σ_{v ≠ u} d(u, v)^{-r}`.
    pub normalizer: T,
    pub max_distance: usize,
    /// `max_distance^{-r} / normalizer`.
    pub min_prob: T,
    pub bound: T,
    pub holds: bool,
    /// The normalizer bound `4 ln n` used in the proof.
    pub normalizer_within_4_ln_n: bool,
}

/// Sums `d(u, v)^{-r}` over every other node of the `√n × √n` torus by
/// explicit enumeration of offsets.
pub fn verify_longrange_lower_bound<T: Float + FromPrimitive>(n: usize, r: T) -> Result<BoundCheck<T>, AnalyticsError> {
    let side = (n as f64).sqrt().round() as usize;
    if n < 9 || side * side != n {
        return Err(AnalyticsError::InvalidParameter(format!("n must be a perfect square >= 9, got {n}")));
    }
    let two = T::from_u8(2).unwrap();
    if !(r >= T::zero() && r <= two) {
        return Err(AnalyticsError::InvalidParameter("r must be in [0, 2]".into()));
    }
    let axis = |a: usize| a.min(side - a);
    let mut z = T::zero();
    let mut max_distance = 0;
    for dy in 0..side {
        for dx in 0..side {
            let d = axis(dx) + axis(dy);
            if d > 0 {
                z = z + T::from_usize(d).unwrap().powf(-r);
                max_distance = max_distance.max(d);
            }
        }
    }
    let nf = T::from_usize(n).unwrap();
    let min_prob = T::from_usize(max_distance).unwrap().powf(-r) / z;
    let four = two + two;
    let bound = T::one() / (four * nf * nf.ln());
    Ok(BoundCheck {
        n,
        r,
        normalizer: z,
        max_distance,
        min_prob,
        bound,
        holds: min_prob >= bound,
        normalizer_within_4_ln_n: z <= four * nf.ln(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_nodes() {
        let b = verify_longrange_lower_bound(16, 2.0f64).unwrap();
        // 4/1 + 6/4 + 4/9 + 1/16
        assert!((b.normalizer - (4.0 + 1.5 + 4.0 / 9.0 + 0.0625)).abs() < 1e-12);
        assert_eq!(b.max_distance, 4);
        assert!((b.min_prob - 0.0104).abs() < 5e-5, "{}", b.min_prob);
        assert!((b.bound - 0.00564).abs() < 5e-6);
        assert!(b.holds);
        let u = verify_longrange_lower_bound(16, 0.0f64).unwrap();
        assert!((u.min_prob - 1.0 / 15.0).abs() < 1e-15);
        assert!(u.holds);
    }

    #[test]
    fn sweep_all_squares() {
        for side in 3..=100 {
            for r in [0.0, 0.5, 1.0, 1.5, 2.0f64] {
                let b = verify_longrange_lower_bound(side * side, r).unwrap();
                assert!(b.holds, "n={} r={r}", side * side);
            }
            assert!(verify_longrange_lower_bound(side * side, 2.0f64).unwrap().normalizer_within_4_ln_n);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(verify_longrange_lower_bound(4, 2.0f64).is_err());
        assert!(verify_longrange_lower_bound(10, 2.0f64).is_err());
        assert!(verify_longrange_lower_bound(16, 2.5f64).is_err());
    }
}
