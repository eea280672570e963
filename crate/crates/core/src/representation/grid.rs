use std::f64::consts::PI;
use std::sync::Arc;

use ndarray::{Array2, Array3, Axis};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use super::error::RepresentationError;

/// Periodic phase-space grid for the classical apparatus.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub n_a: usize,
    pub n_b: usize,
    pub l_a: f64,
    pub l_b: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { n_a: 64, n_b: 64, l_a: 8.0, l_b: 8.0 }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), RepresentationError> {
        check_size(self.n_a)?;
        check_size(self.n_b)?;
        check_half_width(self.l_a)?;
        check_half_width(self.l_b)
    }

    pub fn da(&self) -> f64 {
        2.0 * self.l_a / self.n_a as f64
    }

    pub fn db(&self) -> f64 {
        2.0 * self.l_b / self.n_b as f64
    }

    pub fn measure(&self) -> f64 {
        self.da() * self.db()
    }
}

pub(crate) fn check_size(n: usize) -> Result<(), RepresentationError> {
    if n < 8 || !n.is_power_of_two() {
        return Err(RepresentationError::BadGridSize(n));
    }
    Ok(())
}

pub(crate) fn check_half_width(l: f64) -> Result<(), RepresentationError> {
    if !(l.is_finite() && l > 0.0) {
        return Err(RepresentationError::BadHalfWidth(l));
    }
    Ok(())
}

/// One periodic axis `x_j = -L + j·Δ` with its FFT plans and wavenumbers.
///
/// The Nyquist wavenumber is set to zero so the first-derivative symbol is
/// odd and `-i d/dx` stays Hermitian.
#[derive(Clone)]
pub struct SpectralAxis {
    n: usize,
    half_width: f64,
    coords: Vec<f64>,
    wavenumbers: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for SpectralAxis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralAxis").field("n", &self.n).field("half_width", &self.half_width).finish()
    }
}

impl SpectralAxis {
    pub fn new(n: usize, half_width: f64) -> Result<Self, RepresentationError> {
        check_size(n)?;
        check_half_width(half_width)?;
        let dx = 2.0 * half_width / n as f64;
        let coords = (0..n).map(|j| -half_width + j as f64 * dx).collect();
        let dk = PI / half_width;
        let wavenumbers = (0..n)
            .map(|m| {
                let signed = if m < n / 2 {
                    m as f64
                } else if m == n / 2 {
                    0.0
                } else {
                    m as f64 - n as f64
                };
                signed * dk
            })
            .collect();
        let mut planner = FftPlanner::new();
        Ok(SpectralAxis {
            n,
            half_width,
            coords,
            wavenumbers,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    /// Multiplies the discrete spectrum of `line` by `symbol[m]` in place.
    pub fn filter_line(&self, line: &mut [Complex64], scratch: &mut Vec<Complex64>, symbol: impl Fn(usize) -> Complex64) {
        let need = self.forward.get_inplace_scratch_len().max(self.inverse.get_inplace_scratch_len());
        if scratch.len() < need {
            scratch.resize(need, Complex64::new(0.0, 0.0));
        }
        self.forward.process_with_scratch(line, &mut scratch[..need]);
        let norm = 1.0 / self.n as f64;
        for (m, v) in line.iter_mut().enumerate() {
            *v *= symbol(m) * norm;
        }
        self.inverse.process_with_scratch(line, &mut scratch[..need]);
    }

    /// Dense `-i d/dx` built from explicit Fourier sums (no FFT), raised to
    /// `power` with an overall sign `sign` on the symbol.
    pub fn dense_derivative(&self, sign: f64, power: u32) -> Array2<Complex64> {
        let n = self.n;
        if power == 0 {
            return Array2::eye(n);
        }
        let dx = self.spacing();
        let mut out = Array2::zeros((n, n));
        for j in 0..n {
            for l in 0..n {
                let shift = (j as f64 - l as f64) * dx;
                let mut acc = Complex64::new(0.0, 0.0);
                for &k in &self.wavenumbers {
                    let sym = (sign * k).powi(power as i32);
                    if sym != 0.0 {
                        acc += Complex64::from_polar(sym, k * shift);
                    }
                }
                out[[j, l]] = acc / n as f64;
            }
        }
        out
    }

    pub fn dense_coordinate(&self, power: u32) -> Array2<Complex64> {
        Array2::from_diag(&ndarray::Array1::from_iter(
            self.coords.iter().map(|&x| Complex64::new(x.powi(power as i32), 0.0)),
        ))
    }
}

/// Applies `symbol(perp_index, quantum_index, m)` to the spectrum of every
/// line of `amps` along `along` (0 = a axis, 1 = b axis).
pub(crate) fn filter_axis<F>(amps: &mut Array3<Complex64>, axis: &SpectralAxis, along: usize, symbol: F)
where
    F: Fn(usize, usize, usize) -> Complex64 + Sync,
{
    let perp = 1 - along;
    let d = amps.len_of(Axis(2));
    amps.axis_iter_mut(Axis(perp)).into_par_iter().enumerate().for_each(|(ip, mut slab)| {
        let mut line = vec![Complex64::new(0.0, 0.0); axis.len()];
        let mut scratch = Vec::new();
        for iq in 0..d {
            let mut col = slab.index_axis_mut(Axis(1), iq);
            for (dst, src) in line.iter_mut().zip(col.iter()) {
                *dst = *src;
            }
            axis.filter_line(&mut line, &mut scratch, |m| symbol(ip, iq, m));
            for (dst, src) in col.iter_mut().zip(line.iter()) {
                *dst = *src;
            }
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(SpectralAxis::new(12, 1.0).is_err());
        assert!(SpectralAxis::new(4, 1.0).is_err());
        assert!(SpectralAxis::new(16, 0.0).is_err());
        assert!(GridSpec { n_a: 64, n_b: 48, l_a: 8.0, l_b: 8.0 }.validate().is_err());
        assert!(GridSpec::default().validate().is_ok());
    }

    #[test]
    fn spectral_derivative_of_gaussian() {
        let axis = SpectralAxis::new(64, 8.0).unwrap();
        let mut line: Vec<Complex64> =
            axis.coords().iter().map(|&x| Complex64::new((-x * x / 0.98).exp(), 0.0)).collect();
        let mut scratch = Vec::new();
        let k = axis.wavenumbers().to_vec();
        axis.filter_line(&mut line, &mut scratch, |m| Complex64::new(0.0, k[m]));
        for (x, v) in axis.coords().iter().zip(&line) {
            let exact = -2.0 * x / 0.98 * (-x * x / 0.98).exp();
            assert!((v.re - exact).abs() < 1e-12 && v.im.abs() < 1e-12);
        }
    }

    #[test]
    fn dense_derivative_matches_fft_route() {
        let axis = SpectralAxis::new(16, 3.0).unwrap();
        let dense = axis.dense_derivative(1.0, 1);
        let k = axis.wavenumbers().to_vec();
        for l in 0..16 {
            let mut line = vec![Complex64::new(0.0, 0.0); 16];
            line[l] = Complex64::new(1.0, 0.0);
            axis.filter_line(&mut line, &mut Vec::new(), |m| Complex64::new(k[m], 0.0));
            for j in 0..16 {
                assert!((line[j] - dense[[j, l]]).norm() < 1e-13);
            }
        }
        // Hermitian
        for j in 0..16 {
            for l in 0..16 {
                assert!((dense[[j, l]] - dense[[l, j]].conj()).norm() < 1e-13);
            }
        }
    }
}
