use ndarray::{Array1, Array3, Axis};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::error::RepresentationError;
use super::grid::GridSpec;
use super::operator::{ExpectationCache, MatrixOperator, Representation};
use super::quantum::QuantumSector;

/// Amplitudes over `(a, b, quantum)` with the grid measure `Δa·Δb`.
///
/// The quantum index runs over an orthonormal basis (Fock levels, spin
/// states or normalized `q` grid points), so no extra weight enters there.
#[derive(Clone, Debug, PartialEq)]
pub struct HybridState {
    amps: Array3<Complex64>,
    grid: GridSpec,
}

impl HybridState {
    pub fn from_amplitudes(amps: Array3<Complex64>, grid: GridSpec) -> Result<Self, RepresentationError> {
        let (na, nb, _) = amps.dim();
        if na != grid.n_a || nb != grid.n_b {
            return Err(RepresentationError::DimensionMismatch { expected: grid.n_a * grid.n_b, got: na * nb });
        }
        Ok(HybridState { amps, grid })
    }

    pub(crate) fn with_amplitudes(&self, amps: Array3<Complex64>) -> Self {
        HybridState { amps, grid: self.grid }
    }

    pub fn amplitudes(&self) -> &Array3<Complex64> {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut Array3<Complex64> {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Array3<Complex64> {
        self.amps
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn measure(&self) -> f64 {
        self.grid.measure()
    }

    pub fn inner(&self, other: &HybridState) -> Complex64 {
        let sum: Complex64 = self.amps.iter().zip(other.amps.iter()).map(|(x, y)| x.conj() * y).sum();
        sum * self.measure()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.measure()
    }

    pub fn normalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        if n > 0.0 {
            self.amps.mapv_inplace(|v| v / n);
        }
    }

    /// Flattened amplitudes in `(a, b, quantum)` row-major order.
    pub fn to_vector(&self) -> Array1<Complex64> {
        Array1::from_iter(self.amps.iter().copied())
    }

    pub fn from_vector(&self, v: &Array1<Complex64>) -> Self {
        let amps = Array3::from_shape_vec(self.amps.raw_dim(), v.to_vec()).expect("matching length");
        self.with_amplitudes(amps)
    }

    /// Largest relative distance `|x - y| / |y|`.
    pub fn relative_distance(&self, reference: &HybridState) -> f64 {
        let diff: f64 = self.amps.iter().zip(reference.amps.iter()).map(|(x, y)| (x - y).norm_sqr()).sum();
        let base: f64 = reference.amps.iter().map(|y| y.norm_sqr()).sum();
        (diff / base).sqrt()
    }

    /// Probability in the outermost cells of the two classical axes.
    pub fn classical_boundary_mass(&self) -> f64 {
        let (na, nb, _) = self.amps.dim();
        let mut mass = 0.0;
        for ((ia, ib, _), v) in self.amps.indexed_iter() {
            if ia == 0 || ia == na - 1 || ib == 0 || ib == nb - 1 {
                mass += v.norm_sqr();
            }
        }
        mass * self.measure()
    }

    /// Probability on the two outermost quantum basis states. For a Fock
    /// sector these are the top two levels; for a `q` grid, the edge cells.
    pub fn quantum_edge_mass(&self, sector: &QuantumSector) -> f64 {
        let d = self.amps.len_of(Axis(2));
        let edges: Vec<usize> = match sector {
            QuantumSector::Fock { .. } => vec![d - 2, d - 1],
            QuantumSector::Grid { .. } => vec![0, d - 1],
            _ => return 0.0,
        };
        let mut mass = 0.0;
        for &e in &edges {
            mass += self.amps.index_axis(Axis(2), e).iter().map(|v| v.norm_sqr()).sum::<f64>();
        }
        mass * self.measure()
    }
}

/// Initial state of the quantum factor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum QuantumInit {
    /// Oscillator coherent state centered at `(q0, p0)`.
    Coherent { q0: f64, p0: f64 },
    /// Oscillator number state `|n>`.
    Number { n: usize },
    /// Gaussian wave packet on the `q` grid, amplitude width `sigma`.
    Wavepacket { q0: f64, p0: f64, sigma: f64 },
    /// Spin-1/2 pointing along polar angle `theta`, azimuth `phi`.
    Spin { theta: f64, phi: f64 },
}

/// Product Gaussian for the apparatus. `sigma_*` is the width of the
/// amplitude, `ψ ∝ exp(-(x - x0)² / 2σ²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianSpec {
    pub a0: f64,
    pub b0: f64,
    pub sigma_a: f64,
    pub sigma_b: f64,
    pub quantum: Option<QuantumInit>,
}

fn gaussian_profile(coords: &[f64], center: f64, sigma: f64, momentum: f64) -> Vec<Complex64> {
    coords
        .iter()
        .map(|&x| {
            let env = (-(x - center).powi(2) / (2.0 * sigma * sigma)).exp();
            Complex64::from_polar(env, momentum * (x - center))
        })
        .collect()
}

fn normalized(mut v: Vec<Complex64>, weight: f64) -> Vec<Complex64> {
    let n = (v.iter().map(|x| x.norm_sqr()).sum::<f64>() * weight).sqrt();
    v.iter_mut().for_each(|x| *x /= n);
    v
}

fn check_interior(axis: &'static str, center: f64, sigma: f64, half_width: f64) -> Result<(), RepresentationError> {
    let ok = sigma.is_finite() && sigma > 0.0 && center.is_finite() && center.abs() + 5.0 * sigma <= half_width;
    if ok {
        Ok(())
    } else {
        Err(RepresentationError::SupportTooCloseToBoundary { axis, center, sigma, half_width })
    }
}

fn quantum_vector(sector: &QuantumSector, init: Option<QuantumInit>) -> Result<Vec<Complex64>, RepresentationError> {
    use RepresentationError::IncompatibleInitialState as Bad;
    match (sector, init) {
        (QuantumSector::Trivial, None) => Ok(vec![Complex64::new(1.0, 0.0)]),
        (QuantumSector::Trivial, Some(_)) => Err(Bad("quantum init without quantum sector")),
        (_, None) => Err(Bad("missing quantum init")),
        (QuantumSector::Fock { spec, .. }, Some(QuantumInit::Coherent { q0, p0 })) => {
            let s = (spec.mu * spec.omega).sqrt();
            let alpha = Complex64::new(q0 * s, p0 / s) / std::f64::consts::SQRT_2;
            let mut coeffs = Vec::with_capacity(spec.n_levels);
            let mut term = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
            for k in 0..spec.n_levels {
                if k > 0 {
                    term *= alpha / (k as f64).sqrt();
                }
                coeffs.push(term);
            }
            Ok(normalized(coeffs, 1.0))
        }
        (QuantumSector::Fock { spec, .. }, Some(QuantumInit::Number { n })) => {
            if n >= spec.n_levels {
                return Err(Bad("number state above the Fock truncation"));
            }
            let mut v = vec![Complex64::new(0.0, 0.0); spec.n_levels];
            v[n] = Complex64::new(1.0, 0.0);
            Ok(v)
        }
        (QuantumSector::Grid { axis, .. }, Some(QuantumInit::Wavepacket { q0, p0, sigma })) => {
            check_interior("q", q0, sigma, axis.half_width())?;
            Ok(normalized(gaussian_profile(axis.coords(), q0, sigma, p0), 1.0))
        }
        (QuantumSector::Spin { .. }, Some(QuantumInit::Spin { theta, phi })) => Ok(vec![
            Complex64::new((theta / 2.0).cos(), 0.0),
            Complex64::from_polar((theta / 2.0).sin(), phi),
        ]),
        (QuantumSector::Fock { .. }, Some(_)) => Err(Bad("Fock sector takes `coherent` or `number`")),
        (QuantumSector::Grid { .. }, Some(_)) => Err(Bad("q-grid sector takes `wavepacket`")),
        (QuantumSector::Spin { .. }, Some(_)) => Err(Bad("spin sector takes `spin`")),
    }
}

/// Real product Gaussian on the grid times the requested quantum state,
/// normalized in the grid measure.
pub fn gaussian_state(rep: &Representation, spec: &GaussianSpec) -> Result<HybridState, RepresentationError> {
    let grid = &rep.classical;
    check_interior("a", spec.a0, spec.sigma_a, grid.spec.l_a)?;
    check_interior("b", spec.b0, spec.sigma_b, grid.spec.l_b)?;
    let fa = normalized(gaussian_profile(grid.a_axis.coords(), spec.a0, spec.sigma_a, 0.0), grid.spec.da());
    let fb = normalized(gaussian_profile(grid.b_axis.coords(), spec.b0, spec.sigma_b, 0.0), grid.spec.db());
    let fq = quantum_vector(&rep.quantum, spec.quantum)?;
    let amps = Array3::from_shape_fn(rep.shape(), |(i, j, k)| fa[i] * fb[j] * fq[k]);
    let mut state = HybridState::from_amplitudes(amps, grid.spec)?;
    state.normalize();
    Ok(state)
}

/// `<state| op |state>` in the grid measure.
pub fn expectation(state: &HybridState, op: &MatrixOperator) -> Result<Complex64, RepresentationError> {
    op.expectation_cached(&ExpectationCache::new(state))
}
