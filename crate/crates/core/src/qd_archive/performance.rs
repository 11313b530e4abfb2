use thiserror::Error;

/// Win rate with the highest performance.
pub const TARGET_WIN_RATE: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("win rate {0} is outside [0, 1]")]
pub struct PerformanceError(pub f64);

/// Maps a win rate onto [0, 1], peaking at 60%:
///
/// ```text
/// p(w) = (5/3) w                         for w <= 0.6
/// p(w) = -(25/4) w^2 + (15/2) w - 5/4    for w >  0.6
/// ```
///
/// The quadratic is evaluated as `(5/4)(5w - 1)(1 - w)`, which is the same
/// polynomial with less cancellation near the roots.
pub fn performance(w: f64) -> Result<f64, PerformanceError> {
    if !(0.0..=1.0).contains(&w) {
        return Err(PerformanceError(w));
    }
    Ok(if w <= TARGET_WIN_RATE {
        5.0 * w / 3.0
    } else {
        1.25 * (5.0 * w - 1.0) * (1.0 - w)
    })
}

/// Exact performance of `wins` out of `n` rollouts: both branches are
/// ratios of integers, so the result is correctly rounded and thresholds
/// such as `p >= 0.75` are decided without floating-point noise.
pub fn performance_from_counts(wins: u32, n: u32) -> f64 {
    assert!(n > 0 && wins <= n, "need 0 <= wins <= n and n > 0");
    let (k, n) = (u64::from(wins), u64::from(n));
    // k/n <= 3/5  <=>  5k <= 3n
    if 5 * k <= 3 * n {
        (5 * k) as f64 / (3 * n) as f64
    } else {
        // (5/4)(5k/n - 1)(1 - k/n) = 5(5k - n)(n - k) / (4 n^2)
        (5 * (5 * k - n) * (n - k)) as f64 / (4 * n * n) as f64
    }
}
