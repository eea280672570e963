use ndarray::{Array1, Array2};
use num_complex::Complex64;

use super::config::{MonitorLimits, PropagatorConfig};
use super::error::PropagatorError;
use super::linalg::{adjoint, hermitian_eigen, hermiticity_defect};
use super::split::{sample, Channel, Diagnostics, Evolution};
use super::timeseries::TimeSeries;
use crate::representation::{HybridState, MatrixOperator};

/// Eigendecomposition of one invariant block of the Hamiltonian.
struct Block {
    index: Vec<usize>,
    vals: Array1<f64>,
    vecs: Array2<Complex64>,
    vecs_adj: Array2<Complex64>,
}

/// Exact propagator `exp(-iHt)` from a full eigendecomposition of the
/// materialized Hamiltonian. Basis states never connected by a nonzero
/// matrix element are diagonalized as separate blocks.
pub struct DenseEvolver {
    blocks: Vec<Block>,
}

/// Connected components of the nonzero pattern of `h`.
fn invariant_blocks(h: &Array2<Complex64>) -> Vec<Vec<usize>> {
    let n = h.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for ((i, j), v) in h.indexed_iter() {
        if i < j && (*v != Complex64::new(0.0, 0.0) || h[[j, i]] != Complex64::new(0.0, 0.0)) {
            let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = root(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

impl DenseEvolver {
    pub fn new(h: &MatrixOperator) -> Result<Self, PropagatorError> {
        let dense = h.materialize()?;
        Self::from_matrix(&dense)
    }

    pub fn from_matrix(dense: &Array2<Complex64>) -> Result<Self, PropagatorError> {
        let scale = dense.iter().map(|v| v.norm()).fold(1.0, f64::max);
        let defect = hermiticity_defect(dense);
        if defect > 1e-10 * scale {
            return Err(PropagatorError::NotHermitian(defect));
        }
        let blocks = invariant_blocks(dense)
            .into_iter()
            .map(|index| {
                let sub = Array2::from_shape_fn((index.len(), index.len()), |(r, c)| dense[[index[r], index[c]]]);
                let (vals, vecs) = hermitian_eigen(&sub);
                let vecs_adj = adjoint(&vecs);
                Block { index, vals, vecs, vecs_adj }
            })
            .collect();
        Ok(DenseEvolver { blocks })
    }

    /// Number of independently diagonalized blocks.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// All eigenvalues, sorted.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self.blocks.iter().flat_map(|b| b.vals.iter().cloned()).collect();
        all.sort_by(|x, y| x.total_cmp(y));
        all
    }

    pub fn evolve(&self, state: &HybridState, t: f64) -> HybridState {
        let v = state.to_vector();
        let mut out = Array1::<Complex64>::zeros(v.len());
        for b in &self.blocks {
            let local = Array1::from_iter(b.index.iter().map(|&i| v[i]));
            let mut c = b.vecs_adj.dot(&local);
            for (z, &lam) in c.iter_mut().zip(b.vals.iter()) {
                *z *= Complex64::from_polar(1.0, -lam * t);
            }
            for (&i, z) in b.index.iter().zip(b.vecs.dot(&c)) {
                out[i] = z;
            }
        }
        state.from_vector(&out)
    }
}

/// `exp(-iHt)·state` via dense matrix exponential; `H` must be small
/// enough to materialize.
pub fn evolve_dense(state: &HybridState, h: &MatrixOperator, t: f64) -> Result<HybridState, PropagatorError> {
    if t == 0.0 {
        return Ok(state.clone());
    }
    Ok(DenseEvolver::new(h)?.evolve(state, t))
}

/// Dense counterpart of [`crate::propagator::evolve_split`]: every sample is
/// an exact exponential from the initial state.
pub fn evolve_dense_series(
    state: &HybridState,
    h: &MatrixOperator,
    cfg: &PropagatorConfig,
    channels: &[Channel],
    limits: &MonitorLimits,
) -> Result<Evolution, PropagatorError> {
    cfg.validate()?;
    let evolver = DenseEvolver::new(h)?;
    let rep = h.representation();
    let labels: Vec<String> = channels.iter().map(|c| c.label.clone()).collect();
    let mut series = TimeSeries::new(&labels);
    let mut diagnostics = Diagnostics::default();
    let initial_norm = state.norm_sqr();
    let mut current = state.clone();
    for step in cfg.record_steps() {
        let t = step as f64 * cfg.dt;
        current = evolver.evolve(state, t);
        diagnostics.observe(&current, rep, initial_norm, t, limits)?;
        series.push(t, &sample(channels, &current)?);
    }
    Ok(Evolution { series, final_state: current, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_decoupled_blocks() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let mut h = Array2::<Complex64>::zeros((4, 4));
        h[[0, 2]] = c(1.0);
        h[[2, 0]] = c(1.0);
        h[[1, 1]] = c(3.0);
        h[[3, 3]] = c(-1.0);
        let blocks = invariant_blocks(&h);
        assert_eq!(blocks, vec![vec![0, 2], vec![1], vec![3]]);
        let ev = DenseEvolver::from_matrix(&h).unwrap();
        assert_eq!(ev.eigenvalues(), vec![-1.0, -1.0, 1.0, 3.0]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut h = Array2::<Complex64>::zeros((2, 2));
        h[[0, 1]] = Complex64::new(1.0, 0.0);
        assert!(matches!(DenseEvolver::from_matrix(&h), Err(PropagatorError::NotHermitian(_))));
    }
}
