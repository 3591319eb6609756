//! Confidence intervals for Monte Carlo estimates.

/// Wilson score interval for a binomial proportion at `z` standard deviations.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = (z / denom) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Newcombe's score interval for the difference of two independent
/// proportions `p1 - p2`.
pub fn newcombe_diff_interval(s1: u64, n1: u64, s2: u64, n2: u64, z: f64) -> (f64, f64) {
    let p1 = if n1 == 0 { 0.0 } else { s1 as f64 / n1 as f64 };
    let p2 = if n2 == 0 { 0.0 } else { s2 as f64 / n2 as f64 };
    let (l1, u1) = wilson_interval(s1, n1, z);
    let (l2, u2) = wilson_interval(s2, n2, z);
    let d = p1 - p2;
    let lo = d - ((p1 - l1).powi(2) + (u2 - p2).powi(2)).sqrt();
    let hi = d + ((u1 - p1).powi(2) + (p2 - l2).powi(2)).sqrt();
    (lo.max(-1.0), hi.min(1.0))
}
