//! Small complex Hermitian matrix algebra and validated density operators.
//!
//! Everything here targets dimensions 2 and 4, so the eigensolver is a
//! cyclic Jacobi iteration (exact in one rotation for 2x2) rather than an
//! external numerics dependency.

use super::EstimationError;
use num_complex::Complex64;

const HERMITICITY_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = -1e-10;
const JACOBI_TARGET: f64 = 1e-13;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Self {
        assert_eq!(entries.len(), dim * dim);
        Self {
            dim,
            data: entries.to_vec(),
        }
    }

    /// Outer product |psi><psi| of a (not necessarily normalized) vector.
    pub fn projector(state: &[Complex64]) -> Self {
        let dim = state.len();
        let norm2: f64 = state.iter().map(|z| z.norm_sqr()).sum();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, state[i] * state[j].conj() / norm2);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for k in 0..self.dim {
                let a = self.get(r, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for c in 0..self.dim {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, Complex64::ONE)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, -Complex64::ONE)
    }

    pub fn add_scaled(&self, other: &Self, scale: Complex64) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (o, v) in out.data.iter_mut().zip(&other.data) {
            *o += scale * v;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v *= s;
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Self) -> Self {
        let dim = self.dim * other.dim;
        let mut out = Self::zeros(dim);
        for ar in 0..self.dim {
            for ac in 0..self.dim {
                let a = self.get(ar, ac);
                for br in 0..other.dim {
                    for bc in 0..other.dim {
                        out.set(
                            ar * other.dim + br,
                            ac * other.dim + bc,
                            a * other.get(br, bc),
                        );
                    }
                }
            }
        }
        out
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                let d = (self.get(r, c) - self.get(c, r).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Returns `(eigenvalues, V)` with columns of `V` the eigenvectors, so
    /// `self = V diag(eigenvalues) V^H`. Off-diagonal mass is reduced below
    /// 1e-13 (absolute), which one rotation already achieves for dim 2.
    pub fn eigh(&self) -> (Vec<f64>, ComplexMatrix) {
        let dim = self.dim;
        let mut a = self.clone();
        let mut v = ComplexMatrix::identity(dim);

        for _sweep in 0..60 {
            let mut off = 0.0f64;
            for p in 0..dim {
                for q in p + 1..dim {
                    off = off.max(a.get(p, q).norm());
                }
            }
            if off <= JACOBI_TARGET {
                break;
            }
            for p in 0..dim {
                for q in p + 1..dim {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
        }

        let eigenvalues: Vec<f64> = (0..dim).map(|i| a.get(i, i).re).collect();
        (eigenvalues, v)
    }
}

/// One complex Jacobi rotation zeroing the (p, q) entry of `a`,
/// accumulating the unitary into `v`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let dim = a.dim;
    let phase = apq / r; // e^{i phi}

    // Absorb the phase: column q *= conj(phase), row q *= phase. The (p,q)
    // entry becomes the real number r and the matrix stays Hermitian.
    for i in 0..dim {
        let val = a.get(i, q) * phase.conj();
        a.set(i, q, val);
    }
    for j in 0..dim {
        let val = a.get(q, j) * phase;
        a.set(q, j, val);
    }
    for i in 0..dim {
        let val = v.get(i, q) * phase.conj();
        v.set(i, q, val);
    }

    // Real symmetric rotation choosing the smaller angle.
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let (c, s) = (Complex64::new(c, 0.0), Complex64::new(s, 0.0));

    for j in 0..dim {
        let ap = a.get(p, j);
        let aq = a.get(q, j);
        a.set(p, j, c * ap - s * aq);
        a.set(q, j, s * ap + c * aq);
    }
    for i in 0..dim {
        let ap = a.get(i, p);
        let aq = a.get(i, q);
        a.set(i, p, c * ap - s * aq);
        a.set(i, q, s * ap + c * aq);
    }
    for i in 0..dim {
        let vp = v.get(i, p);
        let vq = v.get(i, q);
        v.set(i, p, c * vp - s * vq);
        v.set(i, q, s * vp + c * vq);
    }
}

/// A validated density operator: Hermitian, trace one, positive
/// semi-definite, of dimension 2 or 4.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self, EstimationError> {
        let dim = matrix.dim();
        if dim != 2 && dim != 4 {
            return Err(EstimationError::UnsupportedDimension { dim });
        }
        let herm = matrix.hermiticity_defect();
        if herm > HERMITICITY_TOL {
            return Err(EstimationError::InvalidDensity {
                reason: format!("hermiticity defect {herm:.3e}"),
            });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(EstimationError::InvalidDensity {
                reason: format!("trace {} + {}i", tr.re, tr.im),
            });
        }
        let (eigenvalues, _) = matrix.eigh();
        let min = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        if min < PSD_TOL {
            return Err(EstimationError::InvalidDensity {
                reason: format!("minimum eigenvalue {min:.3e}"),
            });
        }
        Ok(Self { matrix })
    }

    /// Pure state |psi><psi|; the vector is normalized internally.
    pub fn pure(state: &[Complex64]) -> Result<Self, EstimationError> {
        Self::new(ComplexMatrix::projector(state))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let m = ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0));
        Self::new(m).expect("I/d is a valid state")
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.matrix.eigh().0
    }

    /// Convex mixture `w * self + (1 - w) * other`.
    pub fn mix(&self, other: &Self, w: f64) -> Result<Self, EstimationError> {
        let m = self
            .matrix
            .scale(Complex64::new(w, 0.0))
            .add_scaled(&other.matrix, Complex64::new(1.0 - w, 0.0));
        Self::new(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigh_diagonalizes_known_hermitian() {
        // Pauli X: eigenvalues -1, 1.
        let x = ComplexMatrix::from_rows(2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let (mut vals, v) = x.eigh();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
        // V is unitary.
        let vv = v.adjoint().mul(&v);
        assert!(vv.sub(&ComplexMatrix::identity(2)).max_abs() < 1e-12);
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        // A fixed complex Hermitian 4x4 with distinct eigenvalues.
        let mut m = ComplexMatrix::zeros(4);
        let entries = [
            (0, 0, 1.3, 0.0),
            (1, 1, -0.4, 0.0),
            (2, 2, 0.9, 0.0),
            (3, 3, 2.1, 0.0),
            (0, 1, 0.2, 0.7),
            (0, 2, -0.1, 0.3),
            (0, 3, 0.5, -0.2),
            (1, 2, 0.6, 0.1),
            (1, 3, -0.3, 0.4),
            (2, 3, 0.05, -0.6),
        ];
        for &(r, cidx, re, im) in &entries {
            m.set(r, cidx, c(re, im));
            if r != cidx {
                m.set(cidx, r, c(re, -im));
            }
        }
        let (vals, v) = m.eigh();
        // Reconstruct V D V^H.
        let mut d = ComplexMatrix::zeros(4);
        for (i, &v) in vals.iter().enumerate() {
            d.set(i, i, c(v, 0.0));
        }
        let rec = v.mul(&d).mul(&v.adjoint());
        assert!(rec.sub(&m).max_abs() < 1e-11, "defect {}", rec.sub(&m).max_abs());
        let unit = v.adjoint().mul(&v).sub(&ComplexMatrix::identity(4)).max_abs();
        assert!(unit < 1e-12, "unitarity defect {unit}");
    }

    #[test]
    fn density_validation_rejects_bad_inputs() {
        // Non-unit trace.
        let m = ComplexMatrix::identity(2);
        assert!(matches!(
            DensityOperator::new(m),
            Err(EstimationError::InvalidDensity { .. })
        ));
        // Non-Hermitian.
        let mut m = ComplexMatrix::zeros(2);
        m.set(0, 0, c(0.5, 0.0));
        m.set(1, 1, c(0.5, 0.0));
        m.set(0, 1, c(0.3, 0.0));
        m.set(1, 0, c(-0.3, 0.0));
        assert!(DensityOperator::new(m).is_err());
        // Negative eigenvalue with trace one.
        let mut m = ComplexMatrix::zeros(2);
        m.set(0, 0, c(1.5, 0.0));
        m.set(1, 1, c(-0.5, 0.0));
        assert!(DensityOperator::new(m).is_err());
        // Wrong dimension.
        let m = ComplexMatrix::identity(3).scale(c(1.0 / 3.0, 0.0));
        assert!(matches!(
            DensityOperator::new(m),
            Err(EstimationError::UnsupportedDimension { dim: 3 })
        ));
    }

    #[test]
    fn pure_state_has_unit_top_eigenvalue() {
        let rho = DensityOperator::pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let mut vals = rho.eigenvalues();
        vals.sort_by(f64::total_cmp);
        assert!((vals[1] - 1.0).abs() < 1e-12);
        assert!(vals[0].abs() < 1e-12);
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let a = ComplexMatrix::identity(2);
        assert_eq!(a.kron(&a), ComplexMatrix::identity(4));
    }
}
