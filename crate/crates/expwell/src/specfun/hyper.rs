//! Terminating hypergeometric sums and the closed-form Laguerre-weighted
//! integral built from them.
//!
//! All gamma ratios go through running products or `log_gamma` differences;
//! Gamma itself is never formed.

use super::gamma::log_gamma_pos;
use super::SpecFunError;

/// Terminating confluent series 1F1(-n; sigma; xi) =
/// sum_{m=0}^{n} (-1)^m n!/((n-m)! m!) * Gamma(sigma)/Gamma(sigma+m) * xi^m.
///
/// The sum is evaluated with term-to-term ratios, so sigma may be any real
/// that avoids the poles sigma + m = 0 for m < n.
pub fn hyp1f1_poly(n: usize, sigma: f64, xi: f64) -> Result<f64, SpecFunError> {
    let mut sum = 1.0;
    let mut term = 1.0;
    for m in 0..n {
        let denom = sigma + m as f64;
        if denom == 0.0 {
            return Err(SpecFunError::GammaPole {
                argument: denom,
                context: "hyp1f1_poly: sigma + m",
            });
        }
        term *= -((n - m) as f64) / ((m + 1) as f64) * xi / denom;
        sum += term;
    }
    Ok(sum)
}

/// Terminating 3F2(-m, a, b; d, e; 1) as a finite Pochhammer-ratio sum.
///
/// A zero numerator Pochhammer terminates the series early (all later terms
/// vanish); a zero denominator Pochhammer reached while terms are still
/// alive is a domain error.
pub fn hyp3f2_unit(m: usize, a: f64, b: f64, d: f64, e: f64) -> Result<f64, SpecFunError> {
    let mut sum = 1.0;
    let mut term = 1.0;
    for j in 0..m {
        let jf = j as f64;
        let num = (-(m as f64) + jf) * (a + jf) * (b + jf);
        if num == 0.0 {
            break;
        }
        let d_factor = d + jf;
        let e_factor = e + jf;
        if d_factor == 0.0 {
            return Err(SpecFunError::PochhammerPole { parameter: d, term: j });
        }
        if e_factor == 0.0 {
            return Err(SpecFunError::PochhammerPole { parameter: e, term: j });
        }
        term *= num / (d_factor * e_factor * (jf + 1.0));
        sum += term;
    }
    Ok(sum)
}

/// Closed form of `int_0^inf t^{alpha-1} e^{-delta t} L_m^{lambda}(delta t)
/// L_n^{beta_p}(delta t) dt`:
///
/// `delta^{-alpha} * Gamma(alpha) Gamma(n-alpha+beta_p+1) Gamma(m+lambda+1) /
///  (m! n! Gamma(1-alpha+beta_p) Gamma(1+lambda)) *
///  3F2(-m, alpha, alpha-beta_p; -n+alpha-beta_p, lambda+1; 1)`.
///
/// The gamma ratios collapse to the Pochhammer products `(1-alpha+beta_p)_n`
/// and `(1+lambda)_m`, which are finite polynomials, so only `alpha > 0`
/// (convergence at t = 0) restricts the domain. The integral is symmetric under
/// (m, lambda) <-> (n, beta_p) while the printed form is not: when
/// alpha - beta_p is a non-positive integer the 3F2 numerator dies before
/// the series has run its course and the truncated sum is not the correct
/// limit value (0/0 terms would revive past j = n). That order is rejected
/// and the swapped one tried, so equal-superscript integrals work for any
/// (m, n) ordering.
pub fn laguerre_weighted_integral(
    alpha: f64,
    delta: f64,
    m: usize,
    lambda: f64,
    n: usize,
    beta_p: f64,
) -> Result<f64, SpecFunError> {
    match closed_form_ordered(alpha, delta, m, lambda, n, beta_p) {
        Ok(v) => Ok(v),
        Err(first) => closed_form_ordered(alpha, delta, n, beta_p, m, lambda).map_err(|_| first),
    }
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)` as an exact finite product.
fn pochhammer(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (x + j as f64))
}

fn closed_form_ordered(
    alpha: f64,
    delta: f64,
    m: usize,
    lambda: f64,
    n: usize,
    beta_p: f64,
) -> Result<f64, SpecFunError> {
    if !(alpha > 0.0) {
        return Err(SpecFunError::GammaPole { argument: alpha, context: "alpha" });
    }
    // Degenerate truncation: alpha - beta' a non-positive integer cutting the
    // series short of terms that the symmetric-limit value retains.
    let b = alpha - beta_p;
    if b <= 0.0 && b.fract() == 0.0 && m as f64 + b > n as f64 {
        return Err(SpecFunError::PochhammerPole { parameter: b, term: (-b) as usize });
    }
    let f = hyp3f2_unit(
        m,
        alpha,
        alpha - beta_p,
        -(n as f64) + alpha - beta_p,
        lambda + 1.0,
    )?;
    let log_pref = -alpha * delta.ln() + log_gamma_pos(alpha)
        - log_gamma_pos(m as f64 + 1.0)
        - log_gamma_pos(n as f64 + 1.0);
    let poch = pochhammer(1.0 - alpha + beta_p, n) * pochhammer(1.0 + lambda, m);
    Ok(log_pref.exp() * poch * f)
}
