//! Scalar warm-up model on `L2(R)`: the shift group dressed by a Gaussian
//! pulse coupling, its sharp-interface limit, the explicit resolvent with
//! its phase-jump boundary condition, and the two bilinear forms whose
//! difference shows that the weak limit and the resolvent limit of the
//! generators disagree.

use num_complex::Complex64 as C64;
use statrs::function::erf::erfc;

use crate::error::{CoreError, Result};
use crate::numerics::extrap::one_sided_limit;
use crate::numerics::fourier::UnitaryFourier;
use crate::numerics::grid::{FrequencyGrid, TimeGrid};
use crate::numerics::quad::{integrate_with_breaks, laplace_quadrature, LaplaceOptions};

/// Coupling strength, pulse width and resolvent parameter.
#[derive(Debug, Clone, Copy)]
pub struct ToyParams {
    pub lambda: f64,
    pub alpha: f64,
    pub mu: C64,
}

impl ToyParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) {
            return Err(CoreError::Domain(format!("alpha must be positive, got {}", self.alpha)));
        }
        if self.mu.re <= 0.0 {
            return Err(CoreError::Domain(format!("Re mu must be positive, got {}", self.mu)));
        }
        Ok(())
    }
}

/// Analytic test functions with closed-form point evaluation; sampling a
/// grid from one keeps quadrature free of interpolation error.
#[derive(Debug, Clone, Copy)]
pub enum TestFunction {
    /// `(pi w^2)^{-1/4} exp(-(x-c)^2 / (2 w^2)) e^{i p x}`, unit L2 norm.
    Gaussian { center: f64, width: f64, momentum: f64 },
    /// Compactly supported smooth bump `exp(-r^2/(r^2-(x-c)^2)) e^{i p x}`.
    Bump { center: f64, radius: f64, momentum: f64 },
}

impl TestFunction {
    pub fn eval(&self, x: f64) -> C64 {
        match *self {
            TestFunction::Gaussian { center, width, momentum } => {
                let z = (x - center) / width;
                let amp =
                    (std::f64::consts::PI * width * width).powf(-0.25) * (-0.5 * z * z).exp();
                C64::from_polar(amp, momentum * x)
            }
            TestFunction::Bump { center, radius, momentum } => {
                let u = (x - center) / radius;
                if u.abs() >= 1.0 {
                    C64::new(0.0, 0.0)
                } else {
                    C64::from_polar((-1.0 / (1.0 - u * u)).exp(), momentum * x)
                }
            }
        }
    }
}

/// Complex-valued function on a uniform spatial grid, optionally backed by
/// the analytic source it was sampled from.
#[derive(Debug, Clone)]
pub struct WavefunctionGrid {
    x: TimeGrid,
    k: FrequencyGrid,
    values: Vec<C64>,
    source: Option<TestFunction>,
}

impl WavefunctionGrid {
    /// Uniform grid on `[-half_width, half_width)` with `n` nodes (zero is
    /// a node for even `n`).
    pub fn sample(f: TestFunction, half_width: f64, n: usize) -> Result<Self> {
        let k = FrequencyGrid::new(n as f64 * std::f64::consts::PI / (2.0 * half_width), n)?;
        let x = k.dual();
        let values = x.nodes().map(|xi| f.eval(xi)).collect();
        Ok(Self { x, k, values, source: Some(f) })
    }

    pub fn from_values(half_width: f64, values: Vec<C64>) -> Result<Self> {
        let n = values.len();
        let k = FrequencyGrid::new(n as f64 * std::f64::consts::PI / (2.0 * half_width), n)?;
        let x = k.dual();
        Ok(Self { x, k, values, source: None })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.x
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn norm(&self) -> f64 {
        self.x.norm(&self.values)
    }

    pub fn inner(&self, other: &WavefunctionGrid) -> C64 {
        self.x.inner(&self.values, &other.values)
    }

    /// Largest modulus on the two outermost nodes of each boundary.
    pub fn boundary_magnitude(&self) -> f64 {
        let n = self.values.len();
        [0, 1, n - 2, n - 1].iter().map(|&i| self.values[i].norm()).fold(0.0, f64::max)
    }

    /// Evaluate at an arbitrary point: analytic if backed by a source,
    /// otherwise 8-point centered Lagrange interpolation.
    pub fn eval(&self, x: f64) -> C64 {
        if let Some(f) = self.source {
            return f.eval(x);
        }
        let n = self.values.len();
        let dx = self.x.spacing();
        let pos = (x - self.x.node(0)) / dx;
        if pos < 0.0 || pos > (n - 1) as f64 {
            return C64::new(0.0, 0.0);
        }
        let i0 = (pos.floor() as usize).saturating_sub(3).min(n - 8);
        let mut acc = C64::new(0.0, 0.0);
        for j in i0..i0 + 8 {
            let mut l = 1.0;
            for m in i0..i0 + 8 {
                if m != j {
                    l *= (pos - m as f64) / (j as f64 - m as f64);
                }
            }
            acc += self.values[j] * l;
        }
        acc
    }

    fn with_values(&self, values: Vec<C64>) -> Self {
        Self { x: self.x.clone(), k: self.k.clone(), values, source: None }
    }

    /// Band-limited shift `psi(x) -> psi(x - t)` through the transform pair.
    pub fn shift(&self, t: f64) -> Result<Self> {
        let uf = UnitaryFourier::new(&self.k);
        let mut spec = uf.forward(&self.values)?;
        for (j, s) in spec.iter_mut().enumerate() {
            *s *= C64::from_polar(1.0, -self.k.node(j) * t);
        }
        let shifted = uf.inverse(&spec)?;
        Ok(self.with_values(shifted))
    }
}

fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// Finite-width evolution: shift by `t` and multiply by the pulse phase
/// `exp{i lambda [Phi(x/sqrt(alpha)) - Phi((x-t)/sqrt(alpha))]}` with `Phi`
/// the standard normal distribution function (the Gaussian time integral
/// in closed form).
pub fn evolve_alpha(psi: &WavefunctionGrid, t: f64, p: &ToyParams) -> Result<WavefunctionGrid> {
    p.validate()?;
    if t < 0.0 {
        return Err(CoreError::Domain(format!("evolution time must be >= 0, got {t}")));
    }
    let shifted = psi.shift(t)?;
    let sa = p.alpha.sqrt();
    let values = shifted
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let x = shifted.x.node(j);
            let phase = p.lambda * (normal_cdf(x / sa) - normal_cdf((x - t) / sa));
            v * C64::from_polar(1.0, phase)
        })
        .collect();
    Ok(shifted.with_values(values))
}

/// Sharp-interface limit: shift and multiply by `e^{i lambda}` exactly on
/// the window `[0, t)`.
pub fn evolve_limit(psi: &WavefunctionGrid, t: f64, lambda: f64) -> Result<WavefunctionGrid> {
    if t < 0.0 {
        return Err(CoreError::Domain(format!("evolution time must be >= 0, got {t}")));
    }
    let shifted = psi.shift(t)?;
    let jump = C64::from_polar(1.0, lambda);
    let values = shifted
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let x = shifted.x.node(j);
            if x >= 0.0 && x < t {
                v * jump
            } else {
                *v
            }
        })
        .collect();
    Ok(shifted.with_values(values))
}

/// Resolvent of the limit group,
///
/// ```text
/// R psi(x) = Int_0^inf e^{-mu t} psi(x - t) dt
///          + theta(x) (e^{i lambda} - 1) e^{-mu x} Int_0^inf e^{-mu t} psi(-t) dt,
/// ```
///
/// computed per node by semi-axis quadrature. The node at `x = 0` (when
/// present) carries the left limit, so `theta(0) = 0`.
pub fn resolvent(psi: &WavefunctionGrid, p: &ToyParams) -> Result<WavefunctionGrid> {
    p.validate()?;
    let opts = LaplaceOptions::default();
    let j0 = laplace_quadrature(|t| psi.eval(-t), p.mu, &opts)?;
    let jump = C64::from_polar(1.0, p.lambda) - C64::new(1.0, 0.0);
    let values = (0..psi.values.len())
        .map(|j| {
            let x = psi.x.node(j);
            let free = laplace_quadrature(|t| psi.eval(x - t), p.mu, &opts)?;
            let boundary =
                if x > 0.0 { jump * (-p.mu * x).exp() * j0 } else { C64::new(0.0, 0.0) };
            Ok(free + boundary)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(psi.with_values(values))
}

/// Threshold below which the one-sided limit from below counts as
/// degenerate and the phase-jump ratio is undefined.
pub const JUMP_DENOM_THRESHOLD: f64 = 1e-8;

/// Ratio of the one-sided limits at the origin,
/// `lim_{x->+0} phi / lim_{x->-0} phi`, each obtained by polynomial
/// extrapolation along the grid nodes nearest to zero.
pub fn jump_ratio(phi: &WavefunctionGrid) -> Result<C64> {
    let n = phi.values.len();
    let dx = phi.x.spacing();
    let above0 = (0..n)
        .find(|&j| phi.x.node(j) > 0.05 * dx)
        .ok_or_else(|| CoreError::Config("grid does not straddle the origin".into()))?;
    let take = 5usize;
    let up: Vec<(f64, C64)> =
        (0..take).rev().map(|m| (phi.x.node(above0 + m), phi.values[above0 + m])).collect();
    // skip a node sitting at the origin itself
    let lo_start = above0 - 1 - usize::from(phi.x.node(above0 - 1).abs() < 0.05 * dx);
    let dn: Vec<(f64, C64)> =
        (0..take).rev().map(|m| (phi.x.node(lo_start - m), phi.values[lo_start - m])).collect();
    let (upper, _) = one_sided_limit(&up)?;
    let (lower, _) = one_sided_limit(&dn)?;
    if lower.norm() < JUMP_DENOM_THRESHOLD {
        return Err(CoreError::DegenerateJump {
            denom: lower.norm(),
            threshold: JUMP_DENOM_THRESHOLD,
        });
    }
    Ok(upper / lower)
}

/// Residual of the resolvent identity `mu R psi + d/dx (R psi) = psi` over
/// nodes away from the origin, with the derivative taken by one-sided
/// second-order differences that never straddle `x = 0`.
pub fn generator_residual(psi: &WavefunctionGrid, p: &ToyParams) -> Result<f64> {
    let r = resolvent(psi, p)?;
    let n = r.values.len();
    let dx = r.x.spacing();
    let mut acc = 0.0;
    for j in 2..n - 2 {
        let x = r.x.node(j);
        // 3-node collar around the interface
        if x.abs() <= 1.5 * dx {
            continue;
        }
        let d = if x < 0.0 {
            // backward stencil, stays on the left of the origin
            (r.values[j] * 3.0 - r.values[j - 1] * 4.0 + r.values[j - 2]) / (2.0 * dx)
        } else {
            (r.values[j] * -3.0 + r.values[j + 1] * 4.0 - r.values[j + 2]) / (2.0 * dx)
        };
        let res = p.mu * r.values[j] + d - psi.values[j];
        acc += res.norm_sqr();
    }
    Ok((acc * dx).sqrt())
}

/// Piecewise-smooth function with the prescribed multiplicative jump at the
/// origin: `f(x) = a(x) + theta(x) (e^{i lambda} - 1) a(0) b(x)` with
/// smooth decaying `a`, `b` and `b(0) = 1`, so `f(+0) = e^{i lambda} f(-0)`.
#[derive(Clone, Copy)]
pub struct DomainFunction {
    pub a: TestFunction,
    pub lambda: f64,
    /// width of the smooth relaxation factor `b(x) = exp(-x^2 / (2 w^2))`
    pub relax_width: f64,
}

impl DomainFunction {
    pub fn eval(&self, x: f64) -> C64 {
        let base = self.a.eval(x);
        if x >= 0.0 {
            let jump = C64::from_polar(1.0, self.lambda) - C64::new(1.0, 0.0);
            let b = (-0.5 * x * x / (self.relax_width * self.relax_width)).exp();
            base + jump * self.a.eval(0.0) * b
        } else {
            base
        }
    }

    /// Derivative away from the origin, by a high-order difference of the
    /// closed-form evaluation (callers only probe |x| >> h).
    pub fn deriv(&self, x: f64) -> C64 {
        let h = 1e-4;
        let d1 = self.eval(x + h) - self.eval(x - h);
        let d2 = self.eval(x + 2.0 * h) - self.eval(x - 2.0 * h);
        (d1 * 8.0 - d2) / (12.0 * h)
    }
}

/// `< phi, i d/dx psi >` for piecewise-smooth arguments, integrating each
/// side of the origin separately (the integrands are smooth there).
pub fn transport_pairing(phi: &DomainFunction, psi: &DomainFunction, half_width: f64) -> C64 {
    let f = |x: f64| phi.eval(x).conj() * C64::new(0.0, 1.0) * psi.deriv(x);
    integrate_with_breaks(f, -half_width, half_width, &[-1e-3, 1e-3], 1e-11)
}

/// Weak-limit form `i (phi, psi') + lambda conj(phi(0)) psi(0)` on smooth
/// test functions.
pub fn form_weak(phi: &WavefunctionGrid, psi: &WavefunctionGrid, lambda: f64) -> C64 {
    let (transport, at0) = form_parts(phi, psi);
    transport + at0 * lambda
}

/// Resolvent-limit form `i (phi, psi') + i (e^{i lambda} - 1) conj(phi(0)) psi(0)`.
pub fn form_resolvent(phi: &WavefunctionGrid, psi: &WavefunctionGrid, lambda: f64) -> C64 {
    let (transport, at0) = form_parts(phi, psi);
    transport + at0 * C64::new(0.0, 1.0) * (C64::from_polar(1.0, lambda) - C64::new(1.0, 0.0))
}

fn form_parts(phi: &WavefunctionGrid, psi: &WavefunctionGrid) -> (C64, C64) {
    let n = psi.values.len();
    let dx = psi.x.spacing();
    let mut transport = C64::new(0.0, 0.0);
    for j in 1..n - 1 {
        let d = (psi.values[j + 1] - psi.values[j - 1]) / (2.0 * dx);
        transport += phi.values[j].conj() * C64::new(0.0, 1.0) * d * dx;
    }
    let at0 = phi.eval(0.0).conj() * psi.eval(0.0);
    (transport, at0)
}
