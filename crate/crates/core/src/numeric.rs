//! Floating-point limit estimation shared by the Abel cross-checks and the
//! summation methods.
//!
//! A power series truncated at order `N` and evaluated at `|t| = 1 - δ` with
//! `Nδ ≈ 4` still carries a tail of relative size `e^{-4}`. Partial sums are
//! therefore multiplied by a `C^∞` window that is flat on the first half of
//! the coefficients and decays smoothly to zero on the second half; the window
//! error then decays faster than any power of `N`. Values along a schedule of
//! offsets `δ_k` are extrapolated to `δ = 0` by quadratic Richardson steps.

/// Smooth cutoff weight for coefficient `n` of a series truncated at `order`.
pub fn taper_weight(n: usize, order: usize) -> f64 {
    let x = n as f64 / (order as f64 + 1.0);
    if x <= 0.5 {
        return 1.0;
    }
    let y = 2.0 * x - 1.0;
    let h = |z: f64| if z > 0.0 { (-1.0 / z).exp() } else { 0.0 };
    let (a, b) = (h(1.0 - y), h(y));
    a / (a + b)
}

/// `Σ_n w_n c_n t^n` with the smooth window, using compensated summation.
pub fn tapered_eval(coeffs: &[f64], t: f64) -> f64 {
    if coeffs.is_empty() {
        return 0.0;
    }
    let order = coeffs.len() - 1;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut pw = 1.0f64;
    for (n, &c) in coeffs.iter().enumerate() {
        if c != 0.0 {
            let term = taper_weight(n, order) * c * pw;
            let s = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - s) + term;
            } else {
                comp += (term - s) + sum;
            }
            sum = s;
        }
        pw *= t;
    }
    sum + comp
}

/// Offsets `δ_k` and truncation orders `N_k` for approaching a boundary point.
#[derive(Clone, Debug, PartialEq)]
pub struct AbelSchedule {
    pub offsets: Vec<f64>,
    pub orders: Vec<usize>,
    /// Cauchy window for the extrapolated values.
    pub tol: f64,
    /// Magnitude beyond which a component is declared divergent outright.
    pub blowup: f64,
}

impl Default for AbelSchedule {
    /// `δ_k = 2^{-k}` for `k = 4..=14`, `N_k = 4/δ_k`.
    fn default() -> Self {
        AbelSchedule::dyadic(4, 14)
    }
}

impl AbelSchedule {
    pub fn dyadic(k_min: u32, k_max: u32) -> Self {
        assert!(k_min <= k_max, "empty schedule");
        let offsets: Vec<f64> = (k_min..=k_max).map(|k| (-(k as f64)).exp2()).collect();
        let orders = (k_min..=k_max).map(|k| 4usize << k).collect();
        AbelSchedule { offsets, orders, tol: 1e-4, blowup: 1e6 }
    }

    /// Longest dyadic schedule ending at `k_max` whose orders fit in `budget` terms.
    pub fn within_budget(budget: usize) -> Self {
        let mut k_max = 4;
        while (4usize << (k_max + 1)) < budget && k_max < 20 {
            k_max += 1;
        }
        AbelSchedule::dyadic(4.min(k_max), k_max)
    }

    pub fn max_order(&self) -> usize {
        self.orders.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Limit {
    Converged(f64),
    Diverging,
    /// Neither test fired; carries the last extrapolated estimate.
    Undecided(f64),
}

impl Limit {
    pub fn value(&self) -> Option<f64> {
        match *self {
            Limit::Converged(v) => Some(v),
            _ => None,
        }
    }

    /// Best available estimate, `NaN` when diverging.
    pub fn estimate(&self) -> f64 {
        match *self {
            Limit::Converged(v) | Limit::Undecided(v) => v,
            Limit::Diverging => f64::NAN,
        }
    }
}

/// Quadratic extrapolation to `x = 0` through three points.
pub(crate) fn extrapolate3(x: [f64; 3], y: [f64; 3]) -> f64 {
    let mut acc = 0.0;
    for i in 0..3 {
        let mut w = 1.0;
        for j in 0..3 {
            if i != j {
                w *= x[j] / (x[j] - x[i]);
            }
        }
        acc += w * y[i];
    }
    acc
}

/// Classifies values `f(δ_k)` sampled along decreasing offsets.
pub fn classify(offsets: &[f64], values: &[f64], tol: f64, blowup: f64) -> Limit {
    assert_eq!(offsets.len(), values.len());
    let n = values.len();
    let last = values[n - 1];
    if !last.is_finite() || last.abs() > blowup {
        return Limit::Diverging;
    }
    if n < 3 {
        return if n == 2 && (values[1] - values[0]).abs() < tol {
            Limit::Converged(last)
        } else {
            Limit::Undecided(last)
        };
    }
    let d_last = (values[n - 1] - values[n - 2]).abs();
    let d_prev = (values[n - 2] - values[n - 3]).abs();
    // A pole of order p multiplies successive differences by ~2^p on a dyadic schedule.
    if d_last > tol && d_last > 1.2 * d_prev {
        return Limit::Diverging;
    }
    let ext: Vec<f64> = (2..n)
        .map(|k| {
            extrapolate3(
                [offsets[k - 2], offsets[k - 1], offsets[k]],
                [values[k - 2], values[k - 1], values[k]],
            )
        })
        .collect();
    let best = ext[ext.len() - 1];
    let settled = if ext.len() >= 2 {
        (ext[ext.len() - 1] - ext[ext.len() - 2]).abs() < tol
    } else {
        d_last < tol
    };
    if settled {
        Limit::Converged(best)
    } else {
        Limit::Undecided(best)
    }
}

/// Estimate of `lim_{x → 1-} Σ a_n x^n` from the terms `a_0, a_1, …`.
pub fn abel_limit(terms: &[f64], schedule: &AbelSchedule) -> Limit {
    abel_limit_at(terms, 1.0, schedule)
}

/// Approach `t → point` from the inside of the unit disk, `point = ±1`.
pub(crate) fn abel_limit_at(coeffs: &[f64], point: f64, schedule: &AbelSchedule) -> Limit {
    if coeffs.is_empty() {
        return Limit::Converged(0.0);
    }
    if schedule.offsets.is_empty() {
        return Limit::Undecided(f64::NAN);
    }
    let mut vals = Vec::with_capacity(schedule.offsets.len());
    for (&d, &order) in schedule.offsets.iter().zip(&schedule.orders) {
        let n = order.min(coeffs.len() - 1);
        vals.push(tapered_eval(&coeffs[..=n], point * (1.0 - d)));
    }
    let offs = &schedule.offsets[..vals.len()];
    classify(offs, &vals, schedule.tol, schedule.blowup)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taper_is_flat_then_vanishes() {
        assert_eq!(taper_weight(0, 100), 1.0);
        assert_eq!(taper_weight(50, 100), 1.0);
        assert!(taper_weight(75, 100) > 0.0 && taper_weight(75, 100) < 1.0);
        assert!(taper_weight(100, 100) < 1e-12);
        let w: Vec<f64> = (50..=100).map(|n| taper_weight(n, 100)).collect();
        assert!(w.windows(2).all(|p| p[0] >= p[1]));
    }

    #[test]
    fn tapered_geometric_series() {
        // 1/(1-t) at t = -1 + 2^-12 with only 2^14 terms.
        let t = -1.0 + (-12f64).exp2();
        let c = vec![1.0; (1 << 14) + 1];
        assert!((tapered_eval(&c, t) - 1.0 / (1.0 - t)).abs() < 1e-8);
    }

    #[test]
    fn grandi_abel_sum() {
        let terms: Vec<f64> = (0..1 << 16).map(|n| if n % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let lim = abel_limit(&terms, &AbelSchedule::default());
        assert!((lim.value().unwrap() - 0.5).abs() < 1e-9, "{lim:?}");
    }

    #[test]
    fn pole_is_diverging() {
        // Σ x^n → 1/(1-x) has a pole at x = 1.
        let terms = vec![1.0; 1 << 16];
        assert_eq!(abel_limit(&terms, &AbelSchedule::default()), Limit::Diverging);
    }

    #[test]
    fn classify_extrapolates_linear_drift() {
        let offs: Vec<f64> = (4..10).map(|k| (-(k as f64)).exp2()).collect();
        let vals: Vec<f64> = offs.iter().map(|d| 0.25 + 3.0 * d + d * d).collect();
        match classify(&offs, &vals, 1e-9, 1e6) {
            Limit::Converged(v) => assert!((v - 0.25).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }
}
