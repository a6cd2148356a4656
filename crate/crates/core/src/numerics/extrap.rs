//! One-sided limits by polynomial extrapolation and Richardson helpers.

use num_complex::Complex64 as C64;

use crate::error::{CoreError, Result};

/// Extrapolated one-sided limit at 0 from samples `(x_i, f(x_i))` taken on
/// one side of the origin, together with an error estimate.
///
/// The samples must approach 0 strictly monotonically, share their sign and
/// exclude 0 itself. Neville's scheme evaluates the interpolating
/// polynomial at 0; the error estimate is the difference between the full
/// and the next-lower degree.
pub fn one_sided_limit(samples: &[(f64, C64)]) -> Result<(C64, f64)> {
    if samples.len() < 3 {
        return Err(CoreError::Domain(format!(
            "one-sided limit needs >= 3 samples, got {}",
            samples.len()
        )));
    }
    let sign = samples[0].0.signum();
    for &(x, _) in samples {
        if x == 0.0 {
            return Err(CoreError::Domain("sample at x = 0 is not one-sided".into()));
        }
        if x.signum() != sign {
            return Err(CoreError::Domain("samples mix both sides of the origin".into()));
        }
    }
    for win in samples.windows(2) {
        if win[1].0.abs() >= win[0].0.abs() {
            return Err(CoreError::Domain("samples must approach 0 strictly monotonically".into()));
        }
    }
    let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let full = neville_at_zero(&xs, &samples.iter().map(|s| s.1).collect::<Vec<_>>());
    let lower = neville_at_zero(
        &xs[..xs.len() - 1],
        &samples[..samples.len() - 1].iter().map(|s| s.1).collect::<Vec<_>>(),
    );
    Ok((full, (full - lower).norm()))
}

fn neville_at_zero(xs: &[f64], ys: &[C64]) -> C64 {
    let n = xs.len();
    let mut p = ys.to_vec();
    for m in 1..n {
        for i in 0..n - m {
            // interpolate at x = 0
            p[i] = (p[i] * (-xs[i + m]) + p[i + 1] * xs[i]) / (xs[i] - xs[i + m]);
        }
    }
    p[0]
}

/// Central finite difference of `f` at `x` with one Richardson step over
/// the pair of steps `(h, h/2)`; accuracy O(h^4) for smooth `f`.
pub fn richardson_derivative(mut f: impl FnMut(f64) -> C64, x: f64, h: f64) -> C64 {
    let d = |f: &mut dyn FnMut(f64) -> C64, h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    let d1 = d(&mut f, h);
    let d2 = d(&mut f, h / 2.0);
    (d2 * 4.0 - d1) / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn constant_samples_give_the_constant() {
        let s = vec![(0.1, c(3.5)), (0.05, c(3.5)), (0.025, c(3.5))];
        let (v, err) = one_sided_limit(&s).unwrap();
        assert!((v - c(3.5)).norm() < 1e-14);
        assert!(err < 1e-13);
    }

    #[test]
    fn linear_function_is_reproduced_exactly() {
        let f = |x: f64| c(1.0 + x);
        let s = vec![(0.1, f(0.1)), (0.05, f(0.05)), (0.025, f(0.025))];
        let (v, _) = one_sided_limit(&s).unwrap();
        assert!((v - c(1.0)).norm() < 1e-10);
    }

    #[test]
    fn exponential_from_below() {
        let xs: [f64; 5] = [-0.1, -0.05, -0.025, -0.0125, -0.00625];
        let s: Vec<_> = xs.iter().map(|&x| (x, c(x.exp()))).collect();
        let (v, err) = one_sided_limit(&s).unwrap();
        assert!((v - c(1.0)).norm() < 1e-8, "value {v}, est {err}");
    }

    #[test]
    fn rejects_bad_sample_sets() {
        assert!(one_sided_limit(&[(0.1, c(1.0)), (0.05, c(1.0))]).is_err());
        assert!(one_sided_limit(&[(0.1, c(1.0)), (-0.05, c(1.0)), (0.02, c(1.0))]).is_err());
        assert!(one_sided_limit(&[(0.1, c(1.0)), (0.0, c(1.0)), (0.05, c(1.0))]).is_err());
        assert!(one_sided_limit(&[(0.05, c(1.0)), (0.1, c(1.0)), (0.02, c(1.0))]).is_err());
    }

    #[test]
    fn richardson_derivative_of_exp() {
        let d = richardson_derivative(|x| c(x).exp(), 0.3, 1e-2);
        assert!((d - c(0.3f64.exp())).norm() < 1e-9);
    }
}
