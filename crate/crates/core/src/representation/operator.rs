use std::cell::OnceCell;

use ndarray::{Array2, Array3, Axis};
use num_complex::Complex64;

use super::error::RepresentationError;
use super::grid::{filter_axis, GridSpec, SpectralAxis};
use super::quantum::QuantumSector;
use super::state::HybridState;
use crate::algebra::{to_c64, GeneratorId, OperatorPoly};

/// Largest total dimension for which a dense matrix is built.
pub const DENSE_LIMIT: usize = 4096;

/// The classical sector: `a`, `b` act by multiplication, `at = -i d/db` and
/// `bt = i d/da` by spectral differentiation.
#[derive(Clone, Debug)]
pub struct ClassicalGrid {
    pub spec: GridSpec,
    pub a_axis: SpectralAxis,
    pub b_axis: SpectralAxis,
}

pub fn build_classical_rep(spec: GridSpec) -> Result<ClassicalGrid, RepresentationError> {
    spec.validate()?;
    Ok(ClassicalGrid {
        spec,
        a_axis: SpectralAxis::new(spec.n_a, spec.l_a)?,
        b_axis: SpectralAxis::new(spec.n_b, spec.l_b)?,
    })
}

/// Classical grid tensored with a quantum sector.
#[derive(Clone, Debug)]
pub struct Representation {
    pub classical: ClassicalGrid,
    pub quantum: QuantumSector,
}

impl Representation {
    pub fn new(classical: ClassicalGrid, quantum: QuantumSector) -> Self {
        Representation { classical, quantum }
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.classical.spec.n_a, self.classical.spec.n_b, self.quantum.dim())
    }

    pub fn dim(&self) -> usize {
        let (na, nb, d) = self.shape();
        na * nb * d
    }

    pub fn measure(&self) -> f64 {
        self.classical.spec.measure()
    }

    pub fn supports(&self, g: GeneratorId) -> bool {
        !g.is_quantum() || self.quantum.matrix(g).is_some()
    }
}

/// Sign of the Fourier symbol of `at` (along b) and `bt` (along a).
pub(crate) fn tilde_symbol_sign(g: GeneratorId) -> f64 {
    match g {
        GeneratorId::ATilde => 1.0,
        GeneratorId::BTilde => -1.0,
        _ => unreachable!("not a tilde generator"),
    }
}

/// One normal-ordered monomial `coeff · Q ⊗ a^i b^j at^k bt^l`.
#[derive(Clone, Debug)]
struct Term {
    coeff: Complex64,
    a_pow: u32,
    b_pow: u32,
    at_pow: u32,
    bt_pow: u32,
    quantum: Option<Array2<Complex64>>,
}

impl Term {
    fn is_multiplicative(&self) -> bool {
        self.at_pow == 0 && self.bt_pow == 0
    }
}

/// Per-state reductions shared by many expectation values: the reduced
/// quantum density matrix and the classical probability marginal.
pub struct ExpectationCache<'a> {
    state: &'a HybridState,
    density: OnceCell<Array2<Complex64>>,
    marginal: OnceCell<Array2<f64>>,
}

impl<'a> ExpectationCache<'a> {
    pub fn new(state: &'a HybridState) -> Self {
        ExpectationCache { state, density: OnceCell::new(), marginal: OnceCell::new() }
    }

    pub fn state(&self) -> &HybridState {
        self.state
    }

    /// `R[l, k] = Σ_cells ψ_l conj(ψ_k)` in the grid measure.
    fn density(&self) -> &Array2<Complex64> {
        self.density.get_or_init(|| {
            let amps = self.state.amplitudes();
            let (na, nb, d) = amps.dim();
            let flat = amps.view().into_shape_with_order((na * nb, d)).expect("contiguous state");
            let conj = flat.mapv(|v| v.conj());
            flat.t().dot(&conj) * Complex64::new(self.state.measure(), 0.0)
        })
    }

    fn marginal(&self) -> &Array2<f64> {
        self.marginal.get_or_init(|| {
            let m = self.state.measure();
            self.state.amplitudes().map_axis(Axis(2), |cell| cell.iter().map(|v| v.norm_sqr()).sum::<f64>() * m)
        })
    }
}

/// Linear operator on hybrid states, stored as a sum of axis-local actions.
#[derive(Clone, Debug)]
pub struct MatrixOperator {
    rep: Representation,
    terms: Vec<Term>,
}

/// Realizes `poly` on `rep`, term by term.
pub fn assemble(poly: &OperatorPoly, rep: &Representation) -> Result<MatrixOperator, RepresentationError> {
    let d = rep.quantum.dim();
    let mut terms = Vec::with_capacity(poly.len());
    for (word, coeff) in poly.terms() {
        let (quantum_word, classical_word) = word.split_sectors();
        let mut quantum: Option<Array2<Complex64>> = None;
        for g in quantum_word.expand() {
            let m = rep.quantum.matrix(g).ok_or(RepresentationError::UnknownGenerator(g))?;
            if m.nrows() != d {
                return Err(RepresentationError::DimensionMismatch { expected: d, got: m.nrows() });
            }
            quantum = Some(match quantum {
                None => m.clone(),
                Some(acc) => acc.dot(m),
            });
        }
        terms.push(Term {
            coeff: to_c64(coeff),
            a_pow: classical_word.power_of(GeneratorId::A),
            b_pow: classical_word.power_of(GeneratorId::B),
            at_pow: classical_word.power_of(GeneratorId::ATilde),
            bt_pow: classical_word.power_of(GeneratorId::BTilde),
            quantum,
        });
    }
    Ok(MatrixOperator { rep: rep.clone(), terms })
}

impl MatrixOperator {
    /// Realizes a raw (not normal-ordered) product `g1 g2 ... gn` as the
    /// composition of single-generator actions, rightmost first.
    pub fn apply_word(
        word: &[GeneratorId],
        rep: &Representation,
        state: &HybridState,
    ) -> Result<HybridState, RepresentationError> {
        let mut out = state.clone();
        for &g in word.iter().rev() {
            let op = assemble(&OperatorPoly::generator(g), rep)?;
            out = op.apply(&out)?;
        }
        Ok(out)
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn apply(&self, state: &HybridState) -> Result<HybridState, RepresentationError> {
        if state.amplitudes().dim() != self.rep.shape() {
            return Err(RepresentationError::DimensionMismatch { expected: self.rep.dim(), got: state.dim() });
        }
        Ok(state.with_amplitudes(self.apply_array(state.amplitudes())))
    }

    /// `<state| self |state>` using the shared reductions in `cache`
    /// where a term allows it.
    pub fn expectation_cached(&self, cache: &ExpectationCache<'_>) -> Result<Complex64, RepresentationError> {
        let state = cache.state();
        if state.amplitudes().dim() != self.rep.shape() {
            return Err(RepresentationError::DimensionMismatch { expected: self.rep.dim(), got: state.dim() });
        }
        let grid = &self.rep.classical;
        let mut total = Complex64::new(0.0, 0.0);
        for term in &self.terms {
            let value = match (&term.quantum, term.is_multiplicative(), term.a_pow + term.b_pow) {
                (Some(q), true, 0) => {
                    let r = cache.density();
                    q.iter().zip(r.t().iter()).map(|(x, y)| x * y).sum()
                }
                (None, true, _) => {
                    let a = grid.a_axis.coords();
                    let b = grid.b_axis.coords();
                    let w: f64 = cache
                        .marginal()
                        .indexed_iter()
                        .map(|((i, j), p)| p * a[i].powi(term.a_pow as i32) * b[j].powi(term.b_pow as i32))
                        .sum();
                    Complex64::new(w, 0.0)
                }
                _ => {
                    let mut tmp = state.amplitudes().to_owned();
                    self.apply_term(term, &mut tmp);
                    state.inner(&state.with_amplitudes(tmp))
                }
            };
            total += term.coeff * value;
        }
        Ok(total)
    }

    pub(crate) fn apply_array(&self, amps: &Array3<Complex64>) -> Array3<Complex64> {
        let mut acc = Array3::<Complex64>::zeros(amps.raw_dim());
        for term in &self.terms {
            let mut tmp = amps.to_owned();
            self.apply_term(term, &mut tmp);
            acc.scaled_add(term.coeff, &tmp);
        }
        acc
    }

    fn apply_term(&self, term: &Term, amps: &mut Array3<Complex64>) {
        let grid = &self.rep.classical;
        if term.bt_pow > 0 {
            let k = grid.a_axis.wavenumbers();
            let sign = tilde_symbol_sign(GeneratorId::BTilde);
            filter_axis(amps, &grid.a_axis, 0, |_, _, m| Complex64::new((sign * k[m]).powi(term.bt_pow as i32), 0.0));
        }
        if term.at_pow > 0 {
            let k = grid.b_axis.wavenumbers();
            let sign = tilde_symbol_sign(GeneratorId::ATilde);
            filter_axis(amps, &grid.b_axis, 1, |_, _, m| Complex64::new((sign * k[m]).powi(term.at_pow as i32), 0.0));
        }
        if term.b_pow > 0 {
            for (mut plane, &b) in amps.axis_iter_mut(Axis(1)).zip(grid.b_axis.coords()) {
                plane.mapv_inplace(|v| v * b.powi(term.b_pow as i32));
            }
        }
        if term.a_pow > 0 {
            for (mut plane, &a) in amps.axis_iter_mut(Axis(0)).zip(grid.a_axis.coords()) {
                plane.mapv_inplace(|v| v * a.powi(term.a_pow as i32));
            }
        }
        if let Some(q) = &term.quantum {
            apply_quantum(amps, q);
        }
    }

    /// Dense matrix built from Kronecker products of per-axis matrices.
    /// The axis matrices come from explicit Fourier sums, independent of
    /// the FFT path used by [`MatrixOperator::apply`].
    pub fn materialize(&self) -> Result<Array2<Complex64>, RepresentationError> {
        let dim = self.dim();
        if dim > DENSE_LIMIT {
            return Err(RepresentationError::TooLargeForDense { dim, limit: DENSE_LIMIT });
        }
        let grid = &self.rep.classical;
        let d = self.rep.quantum.dim();
        let mut out = Array2::<Complex64>::zeros((dim, dim));
        for term in &self.terms {
            let on_a = grid.a_axis.dense_coordinate(term.a_pow).dot(&grid.a_axis.dense_derivative(
                tilde_symbol_sign(GeneratorId::BTilde),
                term.bt_pow,
            ));
            let on_b = grid.b_axis.dense_coordinate(term.b_pow).dot(&grid.b_axis.dense_derivative(
                tilde_symbol_sign(GeneratorId::ATilde),
                term.at_pow,
            ));
            let on_q = term.quantum.clone().unwrap_or_else(|| Array2::eye(d));
            let k = kron(&on_a.mapv(|v| v * term.coeff), &kron(&on_b, &on_q));
            out += &k;
        }
        Ok(out)
    }
}

/// `amps[i, j, :] <- Q · amps[i, j, :]` for every grid cell.
pub(crate) fn apply_quantum(amps: &mut Array3<Complex64>, q: &Array2<Complex64>) {
    let (na, nb, d) = amps.dim();
    let flat = amps.view().into_shape_with_order((na * nb, d)).expect("contiguous state");
    let product = flat.dot(&q.t());
    amps.assign(&product.into_shape_with_order((na, nb, d)).expect("same size"));
}

pub(crate) fn kron(x: &Array2<Complex64>, y: &Array2<Complex64>) -> Array2<Complex64> {
    let (xr, xc) = x.dim();
    let (yr, yc) = y.dim();
    let mut out = Array2::zeros((xr * yr, xc * yc));
    for i in 0..xr {
        for j in 0..xc {
            let s = x[[i, j]];
            if s == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut block = out.slice_mut(ndarray::s![i * yr..(i + 1) * yr, j * yc..(j + 1) * yc]);
            block.zip_mut_with(y, |o, &v| *o = s * v);
        }
    }
    out
}
