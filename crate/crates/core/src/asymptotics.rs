//! Closed-form predictions for random graphs: thresholds, windows, tail
//! bounds and the Poisson functionals behind k-core emergence.
//!
//! All logarithms are natural. Evaluators reject inputs outside the regime
//! a formula speaks about with [`Error::OutOfRegime`], and plain domain
//! violations with [`Error::InvalidParameter`].

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::error::{Error, Result};

/// A predicted quantity together with its precision and regime.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prediction {
    pub quantity: String,
    pub value: f64,
    /// Bound on the absolute numerical error of `value`.
    pub abs_error: f64,
    pub regime: String,
}

impl Prediction {
    pub fn new(quantity: impl Into<String>, value: f64, abs_error: f64, regime: impl Into<String>) -> Self {
        Self { quantity: quantity.into(), value, abs_error, regime: regime.into() }
    }
}

fn regime(msg: impl Into<String>) -> Error {
    Error::OutOfRegime(msg.into())
}

/// β = 2 / log(e/2) ≈ 6.51778.
pub fn beta() -> f64 {
    2.0 / (1.0 - LN_2)
}

/// min(δ, ⌊m/(n−1)⌋).
pub fn stp_prediction(delta: usize, m: usize, n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::TooFewVertices { n, required: 2 });
    }
    Ok(delta.min(m / (n - 1)))
}

/// β(log n − log log n / 2)/(n − 1), the edge probability where δ and
/// ⌊m/(n−1)⌋ trade places.
pub fn threshold_p(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::param(format!("threshold needs n >= 3, got {n}")));
    }
    let ln = (n as f64).ln();
    Ok(beta() * (ln - ln.ln() / 2.0) / (n as f64 - 1.0))
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::param(format!("eps must lie in (0, 1), got {eps}")))
    }
}

/// (φ₁, φ₂) = n·exp(−(1 ± ε)·2m/(βn)).
pub fn phi_window(m: usize, n: usize, eps: f64) -> Result<(f64, f64)> {
    check_eps(eps)?;
    if n < 2 {
        return Err(Error::TooFewVertices { n, required: 2 });
    }
    if m == 0 {
        return Err(Error::param("m must be at least 1"));
    }
    let (nf, x) = (n as f64, 2.0 * m as f64 / (beta() * n as f64));
    Ok((nf * (-(1.0 + eps) * x).exp(), nf * (-(1.0 - eps) * x).exp()))
}

/// Candidate values of A(G_m) from the φ window, by the remainder
/// R = m mod (n − 1): sorted, one or two entries.
pub fn arboricity_prediction(m: usize, n: usize, eps: f64) -> Result<Vec<usize>> {
    let (phi1, phi2) = phi_window(m, n, eps)?;
    let base = m.div_ceil(n - 1);
    let r = (m % (n - 1)) as f64;
    let slack = (n - 1) as f64;
    Ok(if r == 0.0 || r > slack - phi1 {
        vec![base + 1]
    } else if r <= slack - phi2 {
        vec![base]
    } else {
        vec![base, base + 1]
    })
}

/// Window for the hitting time m_{A=i} along the random graph process.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HittingPrediction {
    /// Exact value (i−1)(n−1)+1 in the high regime.
    pub exact: Option<usize>,
    /// Strict lower bound (i−1)(n−1) − φ₂.
    pub lower: f64,
    /// Strict upper bound (i−1)(n−1) − φ₁ in the low regime; otherwise the
    /// deterministic bound (i−1)(n−1) + 2.
    pub upper: f64,
}

/// Predicted m_{A=i}: exact for i ≥ (1+ε)β log n/2, a φ window for
/// i ≤ (1−ε)β log n/2 (φ evaluated at 2i/β in place of 2m/(βn)).
pub fn hitting_prediction(i: usize, n: usize, eps: f64) -> Result<HittingPrediction> {
    check_eps(eps)?;
    if n < 3 {
        return Err(Error::param(format!("n must be at least 3, got {n}")));
    }
    if i < 2 || i > n / 2 {
        return Err(regime(format!("i = {i} outside 2..=n/2")));
    }
    let nf = n as f64;
    let scale = beta() * nf.ln() / 2.0;
    let base = ((i - 1) * (n - 1)) as f64;
    let phi = |e: f64| nf * (-2.0 * e * i as f64 / beta()).exp();
    let (phi1, phi2) = (phi(1.0 + eps), phi(1.0 - eps));
    let lower = base - phi2;
    if i as f64 >= (1.0 + eps) * scale {
        let exact = (i - 1) * (n - 1) + 1;
        Ok(HittingPrediction { exact: Some(exact), lower, upper: exact as f64 + 1.0 })
    } else if i as f64 <= (1.0 - eps) * scale {
        Ok(HittingPrediction { exact: None, lower, upper: base - phi1 })
    } else {
        Ok(HittingPrediction { exact: None, lower, upper: base + 2.0 })
    }
}

/// φ in the k-orientability window: 0 when k ≥ (1+ε)β log n/2, else
/// n·exp(−2(1−ε)k/β).
pub fn orientability_phi(n: usize, k: usize, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    if n < 2 {
        return Err(Error::TooFewVertices { n, required: 2 });
    }
    let nf = n as f64;
    if k as f64 >= (1.0 + eps) / 2.0 * beta() * nf.ln() {
        Ok(0.0)
    } else {
        Ok(nf * (-2.0 * (1.0 - eps) * k as f64 / beta()).exp())
    }
}

/// (k(n−1) − ⌈φ⌉, kn + 1): G(n, m) is predicted k-orientable at or below
/// the first value and is never k-orientable at or above the second.
pub fn orientability_thresholds(n: usize, k: usize, eps: f64) -> Result<(i64, usize)> {
    let phi = orientability_phi(n, k, eps)?;
    Ok(((k * (n - 1)) as i64 - phi.ceil() as i64, k * n + 1))
}

/// (e^{−τ²μ/3}, e^{−τ²μ/2}): bounds on Pr(X ≥ (1+τ)μ) and Pr(X ≤ (1−τ)μ)
/// for a binomial X with mean μ.
pub fn chernoff_bounds(mu: f64, tau: f64) -> Result<(f64, f64)> {
    if !(tau > 0.0 && tau < 1.0) || !(0.0..).contains(&mu) {
        return Err(Error::param(format!("need 0 < tau < 1 and mu >= 0, got tau = {tau}, mu = {mu}")));
    }
    let x = tau * tau * mu;
    Ok(((-x / 3.0).exp(), (-x / 2.0).exp()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailEstimate {
    pub value: f64,
    /// Set when p > 1/√n, outside the range the estimate is stated for.
    pub p_outside_regime: bool,
}

/// e^{−pn}(epn/k)^k/√k, the constant-free order of Pr(Bin(n, p) ≤ k) for
/// 0 < k < np.
pub fn binomial_lower_tail_estimate(n: usize, p: f64, k: usize) -> Result<TailEstimate> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::param(format!("p must lie in (0, 1], got {p}")));
    }
    let np = n as f64 * p;
    if k == 0 || k as f64 >= np {
        return Err(regime(format!("k = {k} must satisfy 0 < k < np = {np}")));
    }
    let kf = k as f64;
    let log = -np + kf * (np.ln() + 1.0 - kf.ln()) - 0.5 * kf.ln();
    Ok(TailEstimate { value: log.exp(), p_outside_regime: p > 1.0 / (n as f64).sqrt() })
}

fn ln_factorial(k: u32) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

fn poisson_tail(k: u32, mu: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if mu == 0.0 {
        return 0.0;
    }
    if (k as f64) <= mu {
        // 1 − Pr(X < k)
        let mut term = (-mu).exp();
        let mut below = 0.0;
        for i in 0..k {
            if i > 0 {
                term *= mu / i as f64;
            }
            below += term;
        }
        (1.0 - below).clamp(0.0, 1.0)
    } else {
        let mut term = (-mu + k as f64 * mu.ln() - ln_factorial(k)).exp();
        let mut sum = 0.0;
        let mut i = k;
        while term > sum * 1e-17 && term > 0.0 {
            sum += term;
            i += 1;
            term *= mu / i as f64;
        }
        sum.min(1.0)
    }
}

/// f_k(μ) = e^{−μ} Σ_{i≥k} μ^i/i!, the Poisson(μ) upper tail.
pub fn f_k(k: u32, mu: f64) -> Result<f64> {
    if !(0.0..f64::INFINITY).contains(&mu) {
        return Err(Error::param(format!("mu must be finite and >= 0, got {mu}")));
    }
    Ok(poisson_tail(k, mu))
}

fn h(k: u32, mu: f64) -> f64 {
    mu / poisson_tail(k - 1, mu)
}

/// h_k(μ) = μ / f_{k−1}(μ).
pub fn h_k(k: u32, mu: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::param(format!("k must be at least 2, got {k}")));
    }
    if mu.is_nan() || mu <= 0.0 || mu.is_infinite() {
        return Err(Error::param(format!("mu must be finite and > 0, got {mu}")));
    }
    Ok(h(k, mu))
}

const MU_TOL: f64 = 1e-10;

/// Golden-section search for the minimiser of h_k, k ≥ 3.
fn argmin_h(k: u32) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.01, 4.0 * k as f64 + 20.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (h(k, c), h(k, d));
    while b - a > MU_TOL {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = h(k, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = h(k, d);
        }
    }
    (a + b) / 2.0
}

/// c_k = inf over μ > 0 of h_k(μ) for k ≥ 3, and c_2 = 1.
pub fn c_k(k: u32) -> Result<f64> {
    match k {
        0 | 1 => Err(Error::param(format!("k must be at least 2, got {k}"))),
        2 => Ok(1.0),
        _ => Ok(h(k, argmin_h(k))),
    }
}

/// μ_{c,k}: the larger solution of h_k(μ) = c, for c > c_k.
pub fn mu_ck(c: f64, k: u32) -> Result<f64> {
    let ck = c_k(k)?;
    if c.is_nan() || c <= ck || c.is_infinite() {
        return Err(regime(format!("c = {c} must exceed c_{k} = {ck}")));
    }
    // h_k(μ) > μ, so the root lies below c; for k ≥ 3 it lies right of the
    // minimiser, for k = 2 h_2 is increasing on (0, ∞)
    let mut lo = if k == 2 { 0.0 } else { argmin_h(k) };
    let mut hi = c;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mid > 0.0 && h(k, mid) < c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// (vertex fraction f_k(μ), edges per vertex μ f_{k−1}(μ)/2) of the
/// k-core of G(n, c/n), with μ = μ_{c,k}.
pub fn core_prediction(c: f64, k: u32) -> Result<(f64, f64)> {
    let mu = mu_ck(c, k)?;
    Ok((poisson_tail(k, mu), mu * poisson_tail(k - 1, mu) / 2.0))
}

/// Largest k ≥ 2 with c_k ≤ c whose predicted k-core has average degree
/// above 2(k − 1); 1 when c ≤ 1. The arboricity of G(n, c/n) is predicted
/// to lie in {k_c, k_c + 1}.
pub fn k_c(c: f64) -> Result<usize> {
    if c.is_nan() || c <= 0.0 || c.is_infinite() {
        return Err(Error::param(format!("c must be finite and > 0, got {c}")));
    }
    if c <= 1.0 {
        return Ok(1);
    }
    let mut best = 2;
    for k in 3u32.. {
        let ck = c_k(k)?;
        if ck > c {
            break;
        }
        let mu = if c > ck { mu_ck(c, k)? } else { argmin_h(k) };
        if mu * poisson_tail(k - 1, mu) / poisson_tail(k, mu) > 2.0 * (k - 1) as f64 {
            best = k as usize;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct_tail(k: u32, mu: f64) -> f64 {
        let mut term = (-mu).exp();
        let mut sum = 0.0;
        for i in 0..50u32 {
            if i > 0 {
                term *= mu / i as f64;
            }
            if i >= k {
                sum += term;
            }
        }
        sum
    }

    #[test]
    fn beta_value() {
        assert!((beta() - 6.51778).abs() < 1e-5);
        assert!((beta() * (1.0 - LN_2) - 2.0).abs() < 1e-15);
        assert!(((std::f64::consts::E / 2.0).ln() - (1.0 - LN_2)).abs() < 1e-15);
    }

    #[test]
    fn stp_prediction_examples() {
        assert_eq!(stp_prediction(5, 100, 21).unwrap(), 5);
        assert_eq!(stp_prediction(0, 77, 10).unwrap(), 0);
        assert_eq!(stp_prediction(40, 1000, 26).unwrap(), 40);
        assert!(stp_prediction(1, 1, 1).is_err());
    }

    #[test]
    fn threshold_values() {
        let p = threshold_p(1_000_000).unwrap();
        let ln = (1e6f64).ln();
        let scaled = p * (1e6 - 1.0) / ln;
        assert!((scaled - beta() * (1.0 - ln.ln() / (2.0 * ln))).abs() < 1e-12);
        assert!((scaled - 5.90).abs() < 0.01);
        for n in 20..2000 {
            assert!(threshold_p(n + 1).unwrap() < threshold_p(n).unwrap());
        }
        assert!(threshold_p(2).is_err());
    }

    #[test]
    fn phi_and_arboricity_windows() {
        let n = 10_000;
        let (a, b) = phi_window(100_000, n, 0.1).unwrap();
        assert!(a <= b && b < n as f64);
        let (a, b) = phi_window(100_000, n, 1e-12).unwrap();
        assert!((a - b).abs() < 1e-6 * b);
        // m = βn log n / 2 gives φ₂ = n^ε
        let m = (beta() * n as f64 * (n as f64).ln() / 2.0).round() as usize;
        let (_, b) = phi_window(m, n, 0.2).unwrap();
        assert!((b / (n as f64).powf(0.2) - 1.0).abs() < 1e-3);
        assert_eq!(arboricity_prediction(5 * 999, 1000, 0.1).unwrap(), vec![6]);
        let m = 20 * 999 + 499;
        assert_eq!(arboricity_prediction(m, 1000, 0.1).unwrap(), vec![21]);
        assert!(phi_window(10, 10, 1.0).is_err());
    }

    #[test]
    fn chernoff_and_binomial_tail() {
        let (u, l) = chernoff_bounds(100.0, 0.5).unwrap();
        assert!((u - (-25.0f64 / 3.0).exp()).abs() < 1e-15);
        assert!((l - (-12.5f64).exp()).abs() < 1e-15);
        let (u, l) = chernoff_bounds(100.0, 1e-9).unwrap();
        assert!(u > 1.0 - 1e-12 && l > 1.0 - 1e-12);
        assert!(binomial_lower_tail_estimate(100, 0.0, 1).is_err());
        assert!(binomial_lower_tail_estimate(100, 0.1, 10).is_err());
        assert!(binomial_lower_tail_estimate(100, 0.5, 3).unwrap().p_outside_regime);
    }

    fn binomial_cdf(n: u32, p: f64, k: u32) -> f64 {
        let mut term = (1.0 - p).powi(n as i32);
        let mut sum = term;
        for i in 1..=k {
            term *= (n - i + 1) as f64 / i as f64 * p / (1.0 - p);
            sum += term;
        }
        sum
    }

    #[test]
    fn binomial_tail_estimate_within_band() {
        for k in [2, 4, 6, 8] {
            let est = binomial_lower_tail_estimate(10_000, 1e-3, k as usize).unwrap();
            assert!(!est.p_outside_regime);
            let ratio = binomial_cdf(10_000, 1e-3, k) / est.value;
            assert!((0.05..=20.0).contains(&ratio), "k = {k}: ratio {ratio}");
        }
    }

    #[test]
    fn poisson_tail_values() {
        for mu in [0.0, 0.3, 2.0, 7.5] {
            assert_eq!(f_k(0, mu).unwrap(), 1.0);
            assert!((f_k(1, mu).unwrap() - (1.0 - (-mu).exp())).abs() < 1e-15);
        }
        assert!((f_k(3, 2.0).unwrap() - direct_tail(3, 2.0)).abs() < 1e-12);
        for k in 0..12 {
            for mu in [0.1, 1.0, 3.3, 9.0] {
                assert!((f_k(k, mu).unwrap() - direct_tail(k, mu)).abs() < 1e-12, "k={k} mu={mu}");
            }
        }
        assert!(f_k(2, -1.0).is_err());
    }

    #[test]
    fn core_constants() {
        assert_eq!(c_k(2).unwrap(), 1.0);
        let c3 = c_k(3).unwrap();
        assert!((c3 - 3.350_918_8).abs() < 1e-6, "{c3}");
        let mut prev = c3;
        for k in 4..=8 {
            let c = c_k(k).unwrap();
            assert!(c > prev);
            prev = c;
        }
        // h_k blows up at both ends of the bracket
        let mstar = argmin_h(3);
        assert!(h(3, 1e-3) > c3 + 100.0 && h(3, 50.0) > c3 + 40.0);
        let mu = mu_ck(5.0, 3).unwrap();
        assert!(mu > mstar);
        assert!((h(3, mu) - 5.0).abs() < 1e-9);
        assert!(mu_ck(3.0, 3).is_err());
        assert!(mu_ck(h(3, 2.5), 3).unwrap() >= mstar);
    }

    #[test]
    fn core_prediction_consistency() {
        let (frac, _) = core_prediction(1.01, 2).unwrap();
        assert!(frac < 0.001);
        for (c, k) in [(5.0, 3), (8.0, 4), (1.5, 2)] {
            let (frac, edges) = core_prediction(c, k).unwrap();
            assert!(frac > 0.0 && frac <= 1.0);
            assert!(2.0 * edges / frac >= k as f64);
        }
        assert!(core_prediction(2.0, 3).is_err());
    }

    #[test]
    fn k_c_values() {
        assert_eq!(k_c(0.5).unwrap(), 1);
        assert_eq!(k_c(1.5).unwrap(), 2);
        assert_eq!(k_c(10.0).unwrap(), 6);
        assert!(k_c(0.0).is_err());
    }
}
