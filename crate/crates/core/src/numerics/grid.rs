//! Uniform 1-D grids in frequency and time, dual under the discrete
//! transform pair.

use crate::error::{CoreError, Result};

/// Uniform grid over the angular-frequency variable, symmetric about 0.
///
/// The node layout is `omega_j = (j - n/2 + offset) * spacing`; with
/// `offset = 0` the origin is a node for even `n`, with `offset = 1/2` the
/// grid straddles the origin and jump probes never touch it.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    n: usize,
    spacing: f64,
    offset: f64,
}

impl FrequencyGrid {
    pub fn new(omega_max: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(CoreError::Config(format!("frequency grid needs >= 2 points, got {n}")));
        }
        if !(omega_max > 0.0) {
            return Err(CoreError::Config(format!("omega_max must be positive, got {omega_max}")));
        }
        Ok(Self { n, spacing: 2.0 * omega_max / n as usize as f64, offset: 0.0 })
    }

    /// Grid with nodes at half-integer multiples of the spacing.
    pub fn new_offset(omega_max: f64, n: usize) -> Result<Self> {
        let mut g = Self::new(omega_max, n)?;
        g.offset = 0.5;
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn node(&self, j: usize) -> f64 {
        (j as f64 - self.n as f64 / 2.0 + self.offset) * self.spacing
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.node(j))
    }

    pub fn omega_min(&self) -> f64 {
        self.node(0)
    }

    pub fn omega_max(&self) -> f64 {
        self.node(self.n - 1)
    }

    /// The time grid dual to this one: same point count, spacing
    /// `2 pi / (n * spacing)`, and matching origin offset.
    pub fn dual(&self) -> TimeGrid {
        let dt = std::f64::consts::TAU / (self.n as f64 * self.spacing);
        TimeGrid { n: self.n, spacing: dt, offset: self.offset }
    }

    /// Discrete l2 norm with the `spacing` weight.
    pub fn norm(&self, values: &[crate::C64]) -> f64 {
        (values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.spacing).sqrt()
    }

    /// Discrete inner product `sum conj(a) b * spacing` (antilinear left).
    pub fn inner(&self, a: &[crate::C64], b: &[crate::C64]) -> crate::C64 {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<crate::C64>() * self.spacing
    }
}

/// Uniform grid over the time variable; see [`FrequencyGrid`] for the node
/// layout convention.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    n: usize,
    spacing: f64,
    offset: f64,
}

impl TimeGrid {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn node(&self, j: usize) -> f64 {
        (j as f64 - self.n as f64 / 2.0 + self.offset) * self.spacing
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.node(j))
    }

    pub fn t_min(&self) -> f64 {
        self.node(0)
    }

    pub fn t_max(&self) -> f64 {
        self.node(self.n - 1)
    }

    pub fn norm(&self, values: &[crate::C64]) -> f64 {
        (values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.spacing).sqrt()
    }

    pub fn inner(&self, a: &[crate::C64], b: &[crate::C64]) -> crate::C64 {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<crate::C64>() * self.spacing
    }

    /// Index of the first node `>= x`, clamped to the grid.
    pub fn index_at_or_above(&self, x: f64) -> usize {
        let j = ((x - self.node(0)) / self.spacing).ceil();
        j.max(0.0).min((self.n - 1) as f64) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_grid_matches_fft_resolution() {
        let g = FrequencyGrid::new(32.0, 256).unwrap();
        let t = g.dual();
        assert_eq!(t.len(), 256);
        // n * dw * dt = 2 pi
        let prod = g.len() as f64 * g.spacing() * t.spacing();
        assert!((prod - std::f64::consts::TAU).abs() < 1e-12);
        // symmetric about zero, zero is a node for the default layout
        assert!(g.nodes().any(|w| w.abs() < 1e-12));
    }

    #[test]
    fn offset_grid_excludes_origin() {
        let g = FrequencyGrid::new_offset(10.0, 128).unwrap();
        assert!(g.nodes().all(|w| w.abs() > 1e-9));
        let t = g.dual();
        assert!(t.nodes().all(|x| x.abs() > 1e-9));
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(FrequencyGrid::new(10.0, 1).is_err());
        assert!(FrequencyGrid::new(-1.0, 64).is_err());
    }
}
