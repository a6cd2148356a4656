//! Discrete realization of the unitary transform pair with the pinned sign
//! convention
//!
//! ```text
//!   forward  (t -> omega):  (F f)(w)  = (2 pi)^(-1/2) Int e^{-i w t} f(t) dt
//!   inverse  (omega -> t):  (F* u)(t) = (2 pi)^(-1/2) Int e^{+i w t} u(w) dw
//! ```
//!
//! On a dual grid pair the two maps are exactly mutually inverse and norm
//! preserving (with the `spacing`-weighted discrete norms), independent of
//! how well the sampled function is resolved.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};

use crate::error::{CoreError, Result};
use crate::numerics::grid::{FrequencyGrid, TimeGrid};
use crate::SQRT_2PI;

/// Cached plans and twiddle phases for one dual grid pair.
pub struct UnitaryFourier {
    freq: FrequencyGrid,
    time: TimeGrid,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    /// e^{2 pi i c j / n}, c = n/2 - offset (node index shift to the origin)
    pre: Vec<C64>,
    /// (dt / sqrt(2 pi)) e^{2 pi i c k / n} e^{-2 pi i c^2 / n}
    post_fwd: Vec<C64>,
    /// (dw / sqrt(2 pi)) e^{-2 pi i c j / n} e^{+2 pi i c^2 / n}
    post_inv: Vec<C64>,
}

impl UnitaryFourier {
    pub fn new(freq: &FrequencyGrid) -> Self {
        let time = freq.dual();
        let n = freq.len();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let cc = -freq.node(0) / freq.spacing(); // = n/2 - offset
        let tau = std::f64::consts::TAU;
        let pre: Vec<C64> =
            (0..n).map(|j| C64::from_polar(1.0, tau * cc * j as f64 / n as f64)).collect();
        let corr = C64::from_polar(1.0, -tau * cc * cc / n as f64);
        let post_fwd: Vec<C64> = (0..n)
            .map(|k| {
                C64::from_polar(time.spacing() / SQRT_2PI, tau * cc * k as f64 / n as f64) * corr
            })
            .collect();
        let post_inv: Vec<C64> = (0..n)
            .map(|j| {
                C64::from_polar(freq.spacing() / SQRT_2PI, -tau * cc * j as f64 / n as f64)
                    * corr.conj()
            })
            .collect();
        Self { freq: freq.clone(), time, fwd, inv, pre, post_fwd, post_inv }
    }

    pub fn freq_grid(&self) -> &FrequencyGrid {
        &self.freq
    }

    pub fn time_grid(&self) -> &TimeGrid {
        &self.time
    }

    /// `F_{t->w}` applied to samples on the time grid.
    pub fn forward(&self, f: &[C64]) -> Result<Vec<C64>> {
        if f.len() != self.time.len() {
            return Err(CoreError::Config(format!(
                "transform input has {} samples, grid has {}",
                f.len(),
                self.time.len()
            )));
        }
        let mut buf: Vec<C64> = f.iter().zip(&self.pre).map(|(x, p)| x * p).collect();
        self.fwd.process(&mut buf);
        for (x, p) in buf.iter_mut().zip(&self.post_fwd) {
            *x *= p;
        }
        Ok(buf)
    }

    /// `F*_{w->t}` applied to samples on the frequency grid.
    pub fn inverse(&self, u: &[C64]) -> Result<Vec<C64>> {
        if u.len() != self.freq.len() {
            return Err(CoreError::Config(format!(
                "transform input has {} samples, grid has {}",
                u.len(),
                self.freq.len()
            )));
        }
        // pre-phase e^{-2 pi i c k / n}: conjugate of `pre`
        let mut buf: Vec<C64> = u.iter().zip(&self.pre).map(|(x, p)| x * p.conj()).collect();
        self.inv.process(&mut buf);
        for (x, p) in buf.iter_mut().zip(&self.post_inv) {
            *x *= p;
        }
        Ok(buf)
    }

    /// Multiplication by the sampled indicator of `[a, b)` in the time
    /// domain: `u -> F [ I_[a,b) F* u ]`, the discrete window projection.
    pub fn window_project(&self, u: &[C64], a: f64, b: f64) -> Result<Vec<C64>> {
        let mut tv = self.inverse(u)?;
        for (j, x) in tv.iter_mut().enumerate() {
            let t = self.time.node(j);
            if !(t >= a && t < b) {
                *x = C64::new(0.0, 0.0);
            }
        }
        self.forward(&tv)
    }
}

/// Convenience wrapper: forward transform with a freshly built plan.
pub fn fourier_forward(freq: &FrequencyGrid, f: &[C64]) -> Result<Vec<C64>> {
    UnitaryFourier::new(freq).forward(f)
}

/// Convenience wrapper: inverse transform with a freshly built plan.
pub fn fourier_inverse(freq: &FrequencyGrid, u: &[C64]) -> Result<Vec<C64>> {
    UnitaryFourier::new(freq).inverse(u)
}

/// Closed form of the forward transform of the indicator of `[a, b)`:
/// `(e^{-i w a} - e^{-i w b}) / (i w sqrt(2 pi))`, with the `w -> 0` limit
/// `(b - a)/sqrt(2 pi)`.
pub fn indicator_transform_at(a: f64, b: f64, w: f64) -> C64 {
    if w.abs() < 1e-9 {
        // second-order expansion around w = 0 keeps the value smooth
        let mid = 0.5 * (a + b);
        let len = b - a;
        let c = C64::from_polar(1.0, -w * mid);
        return c * C64::new(len, 0.0) * C64::new(1.0 - w * w * len * len / 24.0, 0.0) / SQRT_2PI;
    }
    let num = C64::from_polar(1.0, -w * a) - C64::from_polar(1.0, -w * b);
    num / (C64::new(0.0, w) * SQRT_2PI)
}

/// [`indicator_transform_at`] sampled on a frequency grid.
pub fn indicator_transform(a: f64, b: f64, grid: &FrequencyGrid) -> Result<Vec<C64>> {
    if !(a < b) {
        return Err(CoreError::Domain(format!("indicator needs a < b, got a={a}, b={b}")));
    }
    Ok(grid.nodes().map(|w| indicator_transform_at(a, b, w)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn packet(t: f64) -> C64 {
        C64::from_polar((-0.5 * (t - 0.3) * (t - 0.3) / 0.49).exp(), 1.7 * t)
    }

    #[test]
    fn round_trip_and_parseval() {
        let g = FrequencyGrid::new(40.0, 512).unwrap();
        let uf = UnitaryFourier::new(&g);
        let f: Vec<C64> = uf.time_grid().nodes().map(packet).collect();
        let u = uf.forward(&f).unwrap();
        let back = uf.inverse(&u).unwrap();
        let num = uf.time_grid().norm(
            &f.iter().zip(&back).map(|(a, b)| a - b).collect::<Vec<_>>(),
        );
        assert!(num / uf.time_grid().norm(&f) < 1e-10, "round trip error {num}");
        let nf = uf.time_grid().norm(&f);
        let nu = g.norm(&u);
        assert!((nf - nu).abs() / nf < 1e-10, "Parseval violated: {nf} vs {nu}");
    }

    #[test]
    fn zero_maps_to_zero() {
        let g = FrequencyGrid::new(10.0, 64).unwrap();
        let z = vec![C64::new(0.0, 0.0); 64];
        let u = fourier_forward(&g, &z).unwrap();
        assert!(u.iter().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn round_trip_on_offset_grid() {
        let g = FrequencyGrid::new_offset(40.0, 256).unwrap();
        let uf = UnitaryFourier::new(&g);
        let f: Vec<C64> = uf.time_grid().nodes().map(packet).collect();
        let u = uf.forward(&f).unwrap();
        let back = uf.inverse(&u).unwrap();
        let err = uf
            .time_grid()
            .norm(&f.iter().zip(&back).map(|(a, b)| a - b).collect::<Vec<_>>());
        assert!(err / uf.time_grid().norm(&f) < 1e-10);
    }

    #[test]
    fn indicator_closed_form_values() {
        // zero-frequency limit
        let v = indicator_transform_at(0.0, 2.5, 0.0);
        assert!((v - C64::new(2.5 / SQRT_2PI, 0.0)).norm() < 1e-12);
        // full period of e^{-i w t} integrates to zero
        let v = indicator_transform_at(0.0, std::f64::consts::TAU, 1.0);
        assert!(v.norm() < 1e-12);
        // Parseval: || Itilde_[0,t) ||^2 = t
        let g = FrequencyGrid::new(2000.0, 1 << 16).unwrap();
        let tt = 1.7;
        let it = indicator_transform(0.0, tt, &g).unwrap();
        let n2 = g.norm(&it).powi(2);
        assert!((n2 - tt).abs() < 2e-3, "norm^2 = {n2}, expected {tt}");
    }

    #[test]
    fn indicator_matches_transform_of_sampled_indicator() {
        let g = FrequencyGrid::new(60.0, 2048).unwrap();
        let uf = UnitaryFourier::new(&g);
        let (a, b) = (0.25, 1.75);
        let sampled: Vec<C64> = uf
            .time_grid()
            .nodes()
            .map(|t| if t >= a && t < b { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
            .collect();
        let via_fft = uf.forward(&sampled).unwrap();
        let closed = indicator_transform(a, b, &g).unwrap();
        // discrete transform of a sampled jump differs from the closed form
        // at O(spacing) in l2
        let diff: Vec<C64> = via_fft.iter().zip(&closed).map(|(x, y)| x - y).collect();
        let err = g.norm(&diff);
        assert!(err < 3.0 * uf.time_grid().spacing(), "err = {err}");
    }

    #[test]
    fn window_projection_is_idempotent_on_aligned_windows() {
        let g = FrequencyGrid::new(40.0, 1024).unwrap();
        let uf = UnitaryFourier::new(&g);
        let f: Vec<C64> = uf.time_grid().nodes().map(packet).collect();
        let u = uf.forward(&f).unwrap();
        let p1 = uf.window_project(&u, 0.0, 1.0).unwrap();
        let p2 = uf.window_project(&p1, 0.0, 1.0).unwrap();
        let diff: Vec<C64> = p1.iter().zip(&p2).map(|(x, y)| x - y).collect();
        assert!(g.norm(&diff) < 1e-12 * g.norm(&p1).max(1.0));
    }
}
