//! Gauss-Legendre panels, adaptive interval integration and semi-axis
//! Laplace-type quadrature.

use std::sync::OnceLock;

use num_complex::Complex64 as C64;

use crate::error::{CoreError, Result};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n(x) and P_n'(x)
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = pk;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl20() -> &'static (Vec<f64>, Vec<f64>) {
    static GL: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    GL.get_or_init(|| gauss_legendre(20))
}

fn gl_panel(f: &mut impl FnMut(f64) -> C64, a: f64, b: f64) -> C64 {
    let (x, w) = gl20();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = C64::new(0.0, 0.0);
    for (xi, wi) in x.iter().zip(w) {
        acc += f(mid + half * xi) * wi;
    }
    acc * half
}

/// Adaptive Gauss-Legendre integration of a complex integrand over
/// `[a, b]`, splitting panels until the two-half refinement agrees with
/// the parent panel to `tol` (absolute, scaled by accumulated magnitude).
pub fn integrate_adaptive(mut f: impl FnMut(f64) -> C64, a: f64, b: f64, tol: f64) -> C64 {
    fn recurse(
        f: &mut impl FnMut(f64) -> C64,
        a: f64,
        b: f64,
        whole: C64,
        tol: f64,
        depth: usize,
    ) -> C64 {
        let mid = 0.5 * (a + b);
        let left = gl_panel(f, a, mid);
        let right = gl_panel(f, mid, b);
        let delta = left + right - whole;
        if delta.norm() <= tol || depth >= 28 {
            return left + right;
        }
        recurse(f, a, mid, left, tol * 0.5, depth + 1)
            + recurse(f, mid, b, right, tol * 0.5, depth + 1)
    }
    let whole = gl_panel(&mut f, a, b);
    recurse(&mut f, a, b, whole, tol, 0)
}

/// Like [`integrate_adaptive`] but honoring interior breakpoints where the
/// integrand is allowed to be discontinuous.
pub fn integrate_with_breaks(
    mut f: impl FnMut(f64) -> C64,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: f64,
) -> C64 {
    let mut pts: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|&x| x > a && x < b))
        .chain(std::iter::once(b))
        .collect();
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup();
    let mut acc = C64::new(0.0, 0.0);
    for win in pts.windows(2) {
        acc += integrate_adaptive(&mut f, win[0], win[1], tol);
    }
    acc
}

/// Options for [`laplace_quadrature`].
#[derive(Debug, Clone)]
pub struct LaplaceOptions {
    /// Truncate the semi-axis where `e^{-Re(mu) t}` drops below this.
    pub tail_tol: f64,
    /// Interior points where the integrand jumps or kinks.
    pub breaks: Vec<f64>,
    /// Absolute tolerance handed to the adaptive panels.
    pub tol: f64,
}

impl Default for LaplaceOptions {
    fn default() -> Self {
        Self { tail_tol: 1e-12, breaks: Vec::new(), tol: 1e-11 }
    }
}

/// `Int_0^inf e^{-mu t} f(t) dt` for `Re mu > 0`, truncated at the point
/// where the exponential damping reaches `tail_tol` and integrated by
/// adaptive Gauss-Legendre panels.
pub fn laplace_quadrature(
    mut f: impl FnMut(f64) -> C64,
    mu: C64,
    opts: &LaplaceOptions,
) -> Result<C64> {
    if mu.re <= 0.0 {
        return Err(CoreError::Domain(format!("Laplace quadrature needs Re mu > 0, got {mu}")));
    }
    let t_cut = (1.0 / opts.tail_tol).ln() / mu.re;
    let g = move |t: f64| C64::from_polar((-mu.re * t).exp(), -mu.im * t) * f(t);
    Ok(integrate_with_breaks(g, 0.0, t_cut, &opts.breaks, opts.tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_nodes_integrate_polynomials_exactly() {
        let (x, w) = gauss_legendre(8);
        // degree-15 monomial on [-1,1]
        let exact = 2.0 / 15.0; // integral of t^14
        let got: f64 = x.iter().zip(&w).map(|(t, wi)| t.powi(14) * wi).sum();
        assert!((got - exact).abs() < 1e-13);
        let odd: f64 = x.iter().zip(&w).map(|(t, wi)| t.powi(13) * wi).sum();
        assert!(odd.abs() < 1e-14);
    }

    #[test]
    fn laplace_of_one_is_inverse_mu() {
        let v = laplace_quadrature(|_| C64::new(1.0, 0.0), C64::new(1.0, 0.0), &Default::default())
            .unwrap();
        assert!((v - C64::new(1.0, 0.0)).norm() < 1e-8, "got {v}");
    }

    #[test]
    fn laplace_of_exponential() {
        let v = laplace_quadrature(
            |t| C64::new((-t).exp(), 0.0),
            C64::new(1.0, 0.0),
            &Default::default(),
        )
        .unwrap();
        assert!((v - C64::new(0.5, 0.0)).norm() < 1e-8, "got {v}");
    }

    #[test]
    fn laplace_of_sine_matches_closed_form() {
        // Int e^{-t} sin t = 1/(mu^2+1) = 1/2 at mu = 1
        let v = laplace_quadrature(
            |t| C64::new(t.sin(), 0.0),
            C64::new(1.0, 0.0),
            &Default::default(),
        )
        .unwrap();
        assert!((v - C64::new(0.5, 0.0)).norm() < 1e-8, "got {v}");
    }

    #[test]
    fn complex_mu_and_breakpoints() {
        // f = indicator of [0, 2): integral = (1 - e^{-2 mu})/mu
        let mu = C64::new(1.0, 1.0);
        let opts = LaplaceOptions { breaks: vec![2.0], ..Default::default() };
        let v = laplace_quadrature(
            |t| if t < 2.0 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) },
            mu,
            &opts,
        )
        .unwrap();
        let exact = (C64::new(1.0, 0.0) - (-mu * 2.0).exp()) / mu;
        assert!((v - exact).norm() < 1e-9, "got {v}, want {exact}");
    }

    #[test]
    fn rejects_nonpositive_real_part() {
        let r = laplace_quadrature(|_| C64::new(1.0, 0.0), C64::new(-0.5, 0.0), &Default::default());
        assert!(r.is_err());
    }

    #[test]
    fn halving_tolerance_is_consistent() {
        let f = |t: f64| C64::new((t * 3.0).cos() * (-0.3 * t).exp(), (1.1 * t).sin());
        let coarse = laplace_quadrature(f, C64::new(0.7, 0.2), &LaplaceOptions { tol: 1e-8, ..Default::default() }).unwrap();
        let fine = laplace_quadrature(f, C64::new(0.7, 0.2), &LaplaceOptions { tol: 1e-12, ..Default::default() }).unwrap();
        assert!((coarse - fine).norm() < 1e-7);
    }
}
