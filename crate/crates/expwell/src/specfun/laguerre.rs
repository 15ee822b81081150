//! Associated Laguerre polynomials by upward three-term recurrence.

use serde::Serialize;

/// One evaluation of L_n^alpha together with its x-derivative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaguerreEval {
    pub n: usize,
    pub alpha: f64,
    pub x: f64,
    pub value: f64,
    /// d/dx L_n^alpha(x)
    pub derivative: f64,
}

/// L_n^alpha(x) from L_0 = 1, L_1 = 1 + alpha - x and
/// (n+1) L_{n+1} = (2n+alpha+1-x) L_n - (n+alpha) L_{n-1}.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + alpha + 1.0 - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// d/dx L_n^alpha(x) via d/dx L_n^alpha = -L_{n-1}^{alpha+1}.
pub fn laguerre_derivative(n: usize, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        -laguerre(n - 1, alpha + 1.0, x)
    }
}

/// Value and derivative bundled.
pub fn laguerre_eval(n: usize, alpha: f64, x: f64) -> LaguerreEval {
    LaguerreEval {
        n,
        alpha,
        x,
        value: laguerre(n, alpha, x),
        derivative: laguerre_derivative(n, alpha, x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// |lhs - rhs| scaled by the sum of term magnitudes, so the measure is
    /// meaningful near polynomial roots as well.
    fn scaled_residual(lhs: f64, rhs: f64, magnitudes: &[f64]) -> f64 {
        let scale: f64 = magnitudes.iter().map(|m| m.abs()).sum::<f64>() + 1e-300;
        (lhs - rhs).abs() / scale
    }

    #[test]
    fn degree_zero_and_one() {
        assert_eq!(laguerre(0, 3.7, 11.0), 1.0);
        assert_eq!(laguerre(1, 2.5, 1.0), 2.5);
        assert_eq!(laguerre_derivative(0, 1.2, 4.0), 0.0);
        assert_eq!(laguerre_derivative(1, -0.3, 9.0), -1.0);
    }

    #[test]
    fn explicit_degree_two() {
        // L_2^0(x) = (x^2 - 4x + 2)/2
        assert_relative_eq!(laguerre(2, 0.0, 2.0), -1.0, max_relative = 1e-14);
        // derivative x - 2 vanishes at x = 2
        assert_eq!(laguerre_derivative(2, 0.0, 2.0), 0.0);
    }

    // mpmath references (40 digits).
    #[test]
    fn frozen_reference_values() {
        assert_relative_eq!(
            laguerre(5, 0.5, 2.0),
            0.43515625, // exact rational value
            max_relative = 1e-13
        );
        assert_relative_eq!(
            laguerre(10, 33.8228, 30.0),
            -25833.53998845926483376110001523197413437,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            laguerre(3, 2.0, 1.3),
            0.8588333333333333333333333333333333333334,
            max_relative = 1e-13
        );
        // equals -L_4^{1.5}(2), which is itself negative
        assert_relative_eq!(
            laguerre_derivative(5, 0.5, 2.0),
            1.768229166666666666666666666666666666667,
            max_relative = 1e-13
        );
    }

    #[test]
    fn recurrence_residual_on_random_parameters() {
        let mut rng = StdRng::seed_from_u64(0x1a6e55e);
        for _ in 0..500 {
            let n = rng.gen_range(1..=30usize);
            let alpha = rng.gen_range(-0.9..40.0);
            let x = rng.gen_range(0.0..60.0);
            let lm1 = if n >= 2 { laguerre(n - 1, alpha, x) } else { 1.0 };
            let l = laguerre(n, alpha, x);
            let lp1 = laguerre(n + 1, alpha, x);
            let nf = n as f64;
            let lhs = (nf + 1.0) * lp1;
            let rhs = (2.0 * nf + alpha + 1.0 - x) * l - (nf + alpha) * lm1;
            let r = scaled_residual(lhs, rhs, &[lhs, (2.0 * nf + alpha + 1.0 - x) * l, (nf + alpha) * lm1]);
            assert!(r <= 1e-12, "recurrence residual {r} at n={n}, alpha={alpha}, x={x}");
        }
    }

    #[test]
    fn derivative_identity_step_down() {
        // x L'_n = n L_n - (n+alpha) L_{n-1}
        let mut rng = StdRng::seed_from_u64(0x2b7f001);
        for _ in 0..500 {
            let n = rng.gen_range(1..=30usize);
            let alpha = rng.gen_range(-0.9..40.0);
            let x = rng.gen_range(0.0..60.0);
            let nf = n as f64;
            let lhs = x * laguerre_derivative(n, alpha, x);
            let a = nf * laguerre(n, alpha, x);
            let b = (nf + alpha) * laguerre(n - 1, alpha, x);
            let r = scaled_residual(lhs, a - b, &[lhs, a, b]);
            assert!(r <= 1e-12, "step-down identity residual {r} at n={n}, alpha={alpha}, x={x}");
        }
    }

    #[test]
    fn derivative_identity_step_up() {
        // x L'_n = (n+1) L_{n+1} - (n+alpha+1-x) L_n
        let mut rng = StdRng::seed_from_u64(0x3c42);
        for _ in 0..500 {
            let n = rng.gen_range(0..=30usize);
            let alpha = rng.gen_range(-0.9..40.0);
            let x = rng.gen_range(0.0..60.0);
            let nf = n as f64;
            let lhs = x * laguerre_derivative(n, alpha, x);
            let a = (nf + 1.0) * laguerre(n + 1, alpha, x);
            let b = (nf + alpha + 1.0 - x) * laguerre(n, alpha, x);
            let r = scaled_residual(lhs, a - b, &[lhs, a, b]);
            assert!(r <= 1e-12, "step-up identity residual {r} at n={n}, alpha={alpha}, x={x}");
        }
    }

    #[test]
    fn eval_bundles_value_and_derivative() {
        let e = laguerre_eval(4, 1.5, 0.7);
        assert_eq!(e.value, laguerre(4, 1.5, 0.7));
        assert_eq!(e.derivative, laguerre_derivative(4, 1.5, 0.7));
        assert_eq!(e.n, 4);
    }
}
