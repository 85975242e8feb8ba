//! Classification of the residual error left after decoding.

use super::DecodeError;
use crate::codes::StabilizerCode;
use crate::gf2::RowSpace;
use crate::pauli::PauliVector;

/// What the residual `e_true (+) e_hat` does to the code space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualClass {
    /// Residual is the identity: the exact error was found.
    Success,
    /// Residual is a product of stabilizers: acts trivially on the code
    /// space, so recovery still succeeds.
    DegenerateSuccess,
    /// Residual commutes with every stabilizer but is not a stabilizer
    /// product: a logical operator was applied.
    LogicalFailure,
}

/// Classify a decoded estimate against the true error. Both must produce
/// the same syndrome.
pub fn classify_residual(
    code: &StabilizerCode,
    e_true: &PauliVector,
    e_hat: &PauliVector,
) -> Result<ResidualClass, DecodeError> {
    let space = code.generator_row_space();
    classify_residual_with(code, &space, e_true, e_hat)
}

/// Same as [`classify_residual`] with a precomputed generator row space,
/// for use in trial loops.
pub fn classify_residual_with(
    code: &StabilizerCode,
    generator_space: &RowSpace,
    e_true: &PauliVector,
    e_hat: &PauliVector,
) -> Result<ResidualClass, DecodeError> {
    if e_true.len() != code.n() || e_hat.len() != code.n() {
        return Err(DecodeError::PatternLengthMismatch {
            expected: code.n(),
            got: if e_true.len() != code.n() {
                e_true.len()
            } else {
                e_hat.len()
            },
        });
    }
    let s_true = code.syndrome(e_true).expect("length checked");
    let s_hat = code.syndrome(e_hat).expect("length checked");
    if s_true != s_hat {
        return Err(DecodeError::SyndromeMismatch);
    }
    let residual = e_true.compose(e_hat).expect("lengths agree");
    if residual.is_identity() {
        return Ok(ResidualClass::Success);
    }
    if generator_space.contains(&residual.to_symplectic()) {
        Ok(ResidualClass::DegenerateSuccess)
    } else {
        Ok(ResidualClass::LogicalFailure)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::StabilizerCode;
    use crate::gf2::BinaryVector;
    use crate::pauli::Pauli;

    const FIVE_QUBIT: [&str; 4] = ["ZZXIX", "XZZXI", "IXZZX", "XIXZZ"];

    #[test]
    fn exact_recovery_is_success() {
        let code = StabilizerCode::from_pauli_strings(&FIVE_QUBIT).unwrap();
        let mut e = PauliVector::identity(5);
        e.set(2, Pauli::Y);
        assert_eq!(
            classify_residual(&code, &e, &e).unwrap(),
            ResidualClass::Success
        );
    }

    #[test]
    fn stabilizer_offset_is_degenerate_success() {
        let code = StabilizerCode::from_pauli_strings(&FIVE_QUBIT).unwrap();
        let mut e = PauliVector::identity(5);
        e.set(0, Pauli::Z);
        let e_hat = e.compose(&code.generator(1)).unwrap();
        assert_eq!(
            classify_residual(&code, &e, &e_hat).unwrap(),
            ResidualClass::DegenerateSuccess
        );
    }

    #[test]
    fn logical_offset_is_a_failure() {
        let code = StabilizerCode::from_pauli_strings(&FIVE_QUBIT).unwrap();
        // Find a logical operator: commutes with all generators, outside
        // the generator row space.
        let logical = find_logical(&code);
        let e = PauliVector::identity(5);
        let e_hat = e.compose(&logical).unwrap();
        assert_eq!(
            classify_residual(&code, &e, &e_hat).unwrap(),
            ResidualClass::LogicalFailure
        );
    }

    #[test]
    fn differing_syndromes_are_rejected() {
        let code = StabilizerCode::from_pauli_strings(&FIVE_QUBIT).unwrap();
        let mut a = PauliVector::identity(5);
        a.set(0, Pauli::X);
        let b = PauliVector::identity(5);
        assert_eq!(
            classify_residual(&code, &a, &b).unwrap_err(),
            DecodeError::SyndromeMismatch
        );
    }

    /// Exhaustive search for a symplectic-kernel element outside the row
    /// space (N = 5 is small enough to scan).
    fn find_logical(code: &StabilizerCode) -> PauliVector {
        let space = code.generator_row_space();
        for bits in 1u32..(1 << 10) {
            let v = BinaryVector::from_bits(
                &(0..10).map(|i| ((bits >> i) & 1) as u8).collect::<Vec<_>>(),
            );
            let p = PauliVector::from_symplectic(&v);
            let s = code.syndrome(&p).unwrap();
            if s.is_zero() && !space.contains(&v) {
                return p;
            }
        }
        panic!("five-qubit code has logical operators");
    }
}
