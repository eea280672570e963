use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::error::RepresentationError;
use super::grid::SpectralAxis;
use crate::algebra::GeneratorId;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Oscillator sector parameters. `omega = 0` selects a free particle
/// discretized on a periodic `q` grid of `n_levels` points instead of a
/// Fock basis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FockSpec {
    pub n_levels: usize,
    pub mu: f64,
    pub omega: f64,
    /// Half-width of the `q` grid; only used when `omega = 0`.
    #[serde(default = "default_grid_half_width")]
    pub grid_half_width: f64,
}

fn default_grid_half_width() -> f64 {
    16.0
}

impl Default for FockSpec {
    fn default() -> Self {
        FockSpec { n_levels: 24, mu: 1.0, omega: 1.0, grid_half_width: default_grid_half_width() }
    }
}

impl FockSpec {
    pub fn validate(&self) -> Result<(), RepresentationError> {
        if self.n_levels < 2 {
            return Err(RepresentationError::TooFewLevels(self.n_levels));
        }
        if !(self.mu.is_finite() && self.mu > 0.0) {
            return Err(RepresentationError::BadQuantumParameter(format!("mu = {}", self.mu)));
        }
        if !(self.omega.is_finite() && self.omega >= 0.0) {
            return Err(RepresentationError::BadQuantumParameter(format!("omega = {}", self.omega)));
        }
        Ok(())
    }
}

/// Dense realization of the quantum generators.
#[derive(Clone, Debug)]
pub enum QuantumSector {
    /// No quantum system; dimension one.
    Trivial,
    Fock { spec: FockSpec, q: Array2<Complex64>, p: Array2<Complex64> },
    Grid { spec: FockSpec, axis: SpectralAxis, q: Array2<Complex64>, p: Array2<Complex64> },
    Spin { s: [Array2<Complex64>; 3] },
}

impl QuantumSector {
    pub fn dim(&self) -> usize {
        match self {
            QuantumSector::Trivial => 1,
            QuantumSector::Fock { q, .. } | QuantumSector::Grid { q, .. } => q.nrows(),
            QuantumSector::Spin { .. } => 2,
        }
    }

    pub fn matrix(&self, g: GeneratorId) -> Option<&Array2<Complex64>> {
        use GeneratorId::*;
        match (self, g) {
            (QuantumSector::Fock { q, .. } | QuantumSector::Grid { q, .. }, QHat) => Some(q),
            (QuantumSector::Fock { p, .. } | QuantumSector::Grid { p, .. }, PHat) => Some(p),
            (QuantumSector::Spin { s }, S1) => Some(&s[0]),
            (QuantumSector::Spin { s }, S2) => Some(&s[1]),
            (QuantumSector::Spin { s }, S3) => Some(&s[2]),
            _ => None,
        }
    }

    pub fn generators(&self) -> Vec<GeneratorId> {
        use GeneratorId::*;
        match self {
            QuantumSector::Trivial => vec![],
            QuantumSector::Fock { .. } | QuantumSector::Grid { .. } => vec![QHat, PHat],
            QuantumSector::Spin { .. } => vec![S1, S2, S3],
        }
    }

    pub fn fock_spec(&self) -> Option<&FockSpec> {
        match self {
            QuantumSector::Fock { spec, .. } | QuantumSector::Grid { spec, .. } => Some(spec),
            _ => None,
        }
    }

    /// `p²/2μ + μω²q²/2` from the truncated matrices.
    pub fn oscillator_hamiltonian(&self) -> Option<Array2<Complex64>> {
        match self {
            QuantumSector::Fock { spec, q, p } | QuantumSector::Grid { spec, q, p, .. } => {
                let kinetic = p.dot(p) * c(0.5 / spec.mu, 0.0);
                let potential = q.dot(q) * c(0.5 * spec.mu * spec.omega * spec.omega, 0.0);
                Some(kinetic + potential)
            }
            _ => None,
        }
    }
}

/// Ladder-operator Fock realization, or the `q`-grid variant when `omega = 0`.
pub fn build_quantum_fock(spec: FockSpec) -> Result<QuantumSector, RepresentationError> {
    spec.validate()?;
    if spec.omega == 0.0 {
        let axis = SpectralAxis::new(spec.n_levels, spec.grid_half_width)?;
        let q = axis.dense_coordinate(1);
        let p = axis.dense_derivative(1.0, 1);
        return Ok(QuantumSector::Grid { spec, axis, q, p });
    }
    let n = spec.n_levels;
    let mut lower = Array2::<Complex64>::zeros((n, n));
    for k in 1..n {
        lower[[k - 1, k]] = c((k as f64).sqrt(), 0.0);
    }
    let raise = lower.t().to_owned();
    let sq = (spec.mu * spec.omega).sqrt();
    let q = (&lower + &raise) * c(1.0 / (std::f64::consts::SQRT_2 * sq), 0.0);
    let p = (&raise - &lower) * c(0.0, sq / std::f64::consts::SQRT_2);
    Ok(QuantumSector::Fock { spec, q, p })
}

/// Spin-1/2 matrices `S_i = σ_i / 2`.
pub fn build_spin() -> QuantumSector {
    let half = 0.5;
    let s1 = Array2::from_shape_vec((2, 2), vec![c(0.0, 0.0), c(half, 0.0), c(half, 0.0), c(0.0, 0.0)]).unwrap();
    let s2 = Array2::from_shape_vec((2, 2), vec![c(0.0, 0.0), c(0.0, -half), c(0.0, half), c(0.0, 0.0)]).unwrap();
    let s3 = Array2::from_diag(&Array1::from(vec![c(half, 0.0), c(-half, 0.0)]));
    QuantumSector::Spin { s: [s1, s2, s3] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagator::hermitian_eigen;

    fn commutator(x: &Array2<Complex64>, y: &Array2<Complex64>) -> Array2<Complex64> {
        x.dot(y) - y.dot(x)
    }

    #[test]
    fn oscillator_spectrum_is_equally_spaced() {
        let sector = build_quantum_fock(FockSpec { n_levels: 16, mu: 1.0, omega: 1.0, ..Default::default() }).unwrap();
        let h = sector.oscillator_hamiltonian().unwrap();
        // truncation drops the A A† contribution on the top level only
        for r in 0..16 {
            for col in 0..16 {
                let expect = match (r == col, r) {
                    (false, _) => 0.0,
                    (true, 15) => 7.5,
                    (true, n) => n as f64 + 0.5,
                };
                assert!((h[[r, col]] - c(expect, 0.0)).norm() < 1e-12, "({r},{col})");
            }
        }
        let (vals, _) = hermitian_eigen(&h);
        assert!((vals.iter().cloned().fold(f64::INFINITY, f64::min) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn canonical_commutator_on_low_levels() {
        let sector = build_quantum_fock(FockSpec { n_levels: 12, mu: 2.0, omega: 0.7, ..Default::default() }).unwrap();
        let comm = commutator(sector.matrix(GeneratorId::QHat).unwrap(), sector.matrix(GeneratorId::PHat).unwrap());
        for r in 0..12 {
            for col in 0..10 {
                let expect = if r == col { c(0.0, 1.0) } else { c(0.0, 0.0) };
                assert!((comm[[r, col]] - expect).norm() < 1e-13);
            }
        }
        // truncation shows up only in the last level
        assert!((comm[[11, 11]] - c(0.0, -11.0)).norm() < 1e-12);
    }

    #[test]
    fn spin_relations() {
        let spin = build_spin();
        let s = |g| spin.matrix(g).unwrap().clone();
        use GeneratorId::*;
        let i = c(0.0, 1.0);
        assert_eq!(commutator(&s(S1), &s(S2)), s(S3) * i);
        assert_eq!(commutator(&s(S2), &s(S3)), s(S1) * i);
        assert_eq!(commutator(&s(S3), &s(S1)), s(S2) * i);
        assert_eq!(s(S3).dot(&s(S3)), Array2::eye(2) * c(0.25, 0.0));
        assert_eq!(s(S3).diag().to_vec(), vec![c(0.5, 0.0), c(-0.5, 0.0)]);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(build_quantum_fock(FockSpec { n_levels: 1, ..Default::default() }).is_err());
        assert!(build_quantum_fock(FockSpec { mu: 0.0, ..Default::default() }).is_err());
        assert!(build_quantum_fock(FockSpec { omega: -1.0, ..Default::default() }).is_err());
        assert!(build_quantum_fock(FockSpec { omega: 0.0, n_levels: 24, ..Default::default() }).is_err());
    }
}
