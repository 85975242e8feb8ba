//! Depolarizing-channel action on probe states, the symmetric logarithmic
//! derivative, and quantum Fisher information for the two probing schemes.

use super::density::{ComplexMatrix, DensityOperator};
use super::EstimationError;
use num_complex::Complex64;

const SLD_SUPPORT_TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
}

fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
}

/// Probing scheme for channel identification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ProbeScheme {
    /// Scheme A: a single unentangled qubit probe.
    Unentangled,
    /// Scheme B: half of a maximally entangled pair goes through the channel.
    Entangled,
}

impl ProbeScheme {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" | "UNENTANGLED" => Some(Self::Unentangled),
            "B" | "ENTANGLED" => Some(Self::Entangled),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Unentangled => "A",
            Self::Entangled => "B",
        }
    }
}

/// Scheme A probe: |0>. Any pure single-qubit state is equivalent under
/// the depolarizing channel's symmetry.
pub fn single_qubit_probe() -> DensityOperator {
    DensityOperator::pure(&[c(1.0, 0.0), c(0.0, 0.0)]).expect("|0> is a valid state")
}

/// Scheme B probe: the Bell pair (|00> + |11>)/sqrt(2).
pub fn bell_probe() -> DensityOperator {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DensityOperator::pure(&[c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)])
        .expect("Bell pair is a valid state")
}

/// The three Kraus conjugation operators for the given dimension and
/// subsystem: sigma_j for dim 2, sigma_j (x) I or I (x) sigma_j for dim 4.
fn flip_operators(dim: usize, subsystem: usize) -> Result<Vec<ComplexMatrix>, EstimationError> {
    let paulis = [pauli_x(), pauli_y(), pauli_z()];
    match (dim, subsystem) {
        (2, 0) => Ok(paulis.to_vec()),
        (4, 0) => Ok(paulis.iter().map(|p| p.kron(&ComplexMatrix::identity(2))).collect()),
        (4, 1) => Ok(paulis.iter().map(|p| ComplexMatrix::identity(2).kron(p)).collect()),
        (2, _) => Err(EstimationError::BadSubsystem { index: subsystem, dim }),
        (d, _) => Err(EstimationError::UnsupportedDimension { dim: d }),
    }
}

/// Depolarize one subsystem: `(1-f) rho + (f/3) sum_j S_j rho S_j`.
///
/// The output is re-validated against the density-operator invariants.
pub fn apply_depolarizing(
    rho: &DensityOperator,
    f: f64,
    on_subsystem: usize,
) -> Result<DensityOperator, EstimationError> {
    if !(0.0..=0.75).contains(&f) {
        return Err(EstimationError::FlipProbabilityOutOfRange { value: f });
    }
    let ops = flip_operators(rho.dim(), on_subsystem)?;
    let mut out = rho.matrix().scale(c(1.0 - f, 0.0));
    for op in &ops {
        let conj = op.mul(rho.matrix()).mul(op);
        out = out.add_scaled(&conj, c(f / 3.0, 0.0));
    }
    DensityOperator::new(out)
}

/// d(rho_f)/df for the depolarizing map on one subsystem of `probe`:
/// `-probe + (1/3) sum_j S_j probe S_j`, independent of f.
pub fn depolarizing_derivative(
    probe: &DensityOperator,
    on_subsystem: usize,
) -> Result<ComplexMatrix, EstimationError> {
    let ops = flip_operators(probe.dim(), on_subsystem)?;
    let mut out = probe.matrix().scale(c(-1.0, 0.0));
    for op in &ops {
        let conj = op.mul(probe.matrix()).mul(op);
        out = out.add_scaled(&conj, c(1.0 / 3.0, 0.0));
    }
    Ok(out)
}

/// Channel output for a scheme's probe at flip probability `f`.
pub fn channel_output(scheme: ProbeScheme, f: f64) -> Result<DensityOperator, EstimationError> {
    let probe = match scheme {
        ProbeScheme::Unentangled => single_qubit_probe(),
        ProbeScheme::Entangled => bell_probe(),
    };
    apply_depolarizing(&probe, f, 0)
}

/// d(rho_f)/df for a scheme's probe.
pub fn channel_derivative(scheme: ProbeScheme) -> ComplexMatrix {
    let probe = match scheme {
        ProbeScheme::Unentangled => single_qubit_probe(),
        ProbeScheme::Entangled => bell_probe(),
    };
    depolarizing_derivative(&probe, 0).expect("probe dimensions are supported")
}

/// Symmetric logarithmic derivative: the Hermitian `L` solving
/// `2 d(rho) = L rho + rho L`, computed in the eigenbasis of `rho` as
/// `L_jk = 2 (d rho)_jk / (lambda_j + lambda_k)`.
///
/// Pairs with `lambda_j + lambda_k < 1e-12` and a non-negligible numerator
/// are reported as a singular-support error.
pub fn sld(
    rho: &DensityOperator,
    drho: &ComplexMatrix,
    f_context: Option<f64>,
) -> Result<ComplexMatrix, EstimationError> {
    let dim = rho.dim();
    assert_eq!(drho.dim(), dim, "derivative dimension mismatch");
    let (eigenvalues, v) = rho.matrix().eigh();
    // Rotate the derivative into the eigenbasis.
    let d_tilde = v.adjoint().mul(drho).mul(&v);
    let mut l_tilde = ComplexMatrix::zeros(dim);
    for j in 0..dim {
        for k in 0..dim {
            let denom = eigenvalues[j] + eigenvalues[k];
            let num = d_tilde.get(j, k);
            if denom.abs() < SLD_SUPPORT_TOL {
                if num.norm() > 1e-10 {
                    return Err(EstimationError::SingularSupport { f: f_context });
                }
                l_tilde.set(j, k, Complex64::ZERO);
            } else {
                l_tilde.set(j, k, num * c(2.0 / denom, 0.0));
            }
        }
    }
    Ok(v.mul(&l_tilde).mul(&v.adjoint()))
}

/// Quantum Fisher information `tr(rho_f L_f^2)` for a scheme's optimal
/// probe, computed through the numeric SLD.
pub fn qfi(scheme: ProbeScheme, f: f64) -> Result<f64, EstimationError> {
    if f <= 0.0 || f >= 0.75 {
        return Err(EstimationError::BoundaryDivergence { f });
    }
    let rho = channel_output(scheme, f)?;
    let drho = channel_derivative(scheme);
    let l = sld(&rho, &drho, Some(f))?;
    let j = rho.matrix().mul(&l).mul(&l).trace();
    Ok(j.re)
}

/// Closed forms of the scheme Fisher informations:
/// `J_A(f) = 2 / (f (3 - 2f))` and `J_B(f) = 1 / (f (1 - f))`.
pub fn qfi_closed_form(scheme: ProbeScheme, f: f64) -> f64 {
    match scheme {
        ProbeScheme::Unentangled => 2.0 / (f * (3.0 - 2.0 * f)),
        ProbeScheme::Entangled => 1.0 / (f * (1.0 - f)),
    }
}

/// Standard deviation of the optimal unbiased estimator after `n_probes`
/// independent measurements: `sqrt(1 / (n_probes J(f)))`.
pub fn cramer_rao_sd(scheme: ProbeScheme, f: f64, n_probes: usize) -> Result<f64, EstimationError> {
    let j = qfi(scheme, f)?;
    Ok((n_probes as f64 * j).recip().sqrt())
}
