use faer::complex_native::c64;
use faer::{Mat, Side};
use ndarray::{Array1, Array2};
use num_complex::Complex64;

/// Eigenvalues and orthonormal eigenvectors (as columns) of a Hermitian
/// matrix. Only the lower triangle is read.
pub fn hermitian_eigen(h: &Array2<Complex64>) -> (Array1<f64>, Array2<Complex64>) {
    let n = h.nrows();
    let m = Mat::<c64>::from_fn(n, n, |i, j| {
        let v = h[[i, j]];
        c64::new(v.re, v.im)
    });
    let evd = m.selfadjoint_eigendecomposition(Side::Lower);
    let s = evd.s().column_vector();
    let u = evd.u();
    let vals = Array1::from_iter((0..n).map(|i| s.read(i).re));
    let vecs = Array2::from_shape_fn((n, n), |(i, j)| {
        let v = u.read(i, j);
        Complex64::new(v.re, v.im)
    });
    (vals, vecs)
}

/// `V diag(exp(-i λ t)) V†`.
pub fn unitary_from_eigen(vals: &Array1<f64>, vecs: &Array2<Complex64>, t: f64) -> Array2<Complex64> {
    let mut scaled = vecs.clone();
    for (mut col, &lam) in scaled.columns_mut().into_iter().zip(vals.iter()) {
        let phase = Complex64::from_polar(1.0, -lam * t);
        col.mapv_inplace(|v| v * phase);
    }
    scaled.dot(&adjoint(vecs))
}

pub fn adjoint(m: &Array2<Complex64>) -> Array2<Complex64> {
    m.t().mapv(|v| v.conj())
}

/// Largest `|H_ij - conj(H_ji)|`.
pub fn hermiticity_defect(h: &Array2<Complex64>) -> f64 {
    let mut worst: f64 = 0.0;
    for ((i, j), v) in h.indexed_iter() {
        worst = worst.max((v - h[[j, i]].conj()).norm());
    }
    worst
}

pub fn max_off_diagonal(m: &Array2<Complex64>) -> f64 {
    m.indexed_iter().filter(|((i, j), _)| i != j).map(|(_, v)| v.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_reconstructs_matrix() {
        let h = Array2::from_shape_fn((5, 5), |(i, j)| {
            let (x, y) = (i as f64, j as f64);
            if i == j {
                Complex64::new(x, 0.0)
            } else {
                Complex64::new((x + y).sin(), (x - y) * 0.3)
            }
        });
        let (vals, vecs) = hermitian_eigen(&h);
        let diag = Array2::from_diag(&vals.mapv(|v| Complex64::new(v, 0.0)));
        let back = vecs.dot(&diag).dot(&adjoint(&vecs));
        assert!((&back - &h).iter().all(|v| v.norm() < 1e-12));
        let u = unitary_from_eigen(&vals, &vecs, 0.7);
        let id = u.dot(&adjoint(&u));
        assert!((&id - &Array2::<Complex64>::eye(5)).iter().all(|v| v.norm() < 1e-12));
    }
}
