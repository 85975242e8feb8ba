//! Pauli error patterns in binary symplectic form.
//!
//! A length-N Pauli operator is stored as a pair of bit vectors `(x, z)`:
//! position i carries I, X, Z or Y according to `(x_i, z_i)` being
//! (0,0), (1,0), (0,1) or (1,1). Phase factors are dropped throughout;
//! they do not affect syndromes or error classes.

use crate::gf2::BinaryVector;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliError {
    #[error("invalid Pauli character '{ch}' at position {pos}")]
    InvalidCharacter { ch: char, pos: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(ch: char) -> Option<Self> {
        match ch {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// (x, z) bit pair of the symplectic encoding.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// True iff the two single-qubit letters commute.
    pub fn commutes(self, other: Pauli) -> bool {
        let (ax, az) = self.bits();
        let (bx, bz) = other.bits();
        !((ax & bz) ^ (az & bx))
    }
}

/// A length-N Pauli pattern as separate X-part and Z-part bit vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliVector {
    x: BinaryVector,
    z: BinaryVector,
}

impl PauliVector {
    pub fn identity(len: usize) -> Self {
        Self {
            x: BinaryVector::zeros(len),
            z: BinaryVector::zeros(len),
        }
    }

    pub fn from_parts(x: BinaryVector, z: BinaryVector) -> Result<Self, PauliError> {
        if x.len() != z.len() {
            return Err(PauliError::LengthMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(Self { x, z })
    }

    /// Parse an I/X/Y/Z string.
    pub fn parse(s: &str) -> Result<Self, PauliError> {
        let mut out = Self::identity(s.chars().count());
        for (i, ch) in s.chars().enumerate() {
            let p = Pauli::from_char(ch).ok_or(PauliError::InvalidCharacter { ch, pos: i })?;
            out.set(i, p);
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> Pauli {
        Pauli::from_bits(self.x.get(i), self.z.get(i))
    }

    pub fn set(&mut self, i: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.x.set(i, x);
        self.z.set(i, z);
    }

    pub fn x_part(&self) -> &BinaryVector {
        &self.x
    }

    pub fn z_part(&self) -> &BinaryVector {
        &self.z
    }

    /// Number of non-identity positions.
    pub fn weight(&self) -> usize {
        let mut count = 0;
        for i in 0..self.len() {
            if self.x.get(i) || self.z.get(i) {
                count += 1;
            }
        }
        count
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Phase-free product: positionwise XOR of the symplectic bits.
    pub fn compose(&self, other: &Self) -> Result<Self, PauliError> {
        if self.len() != other.len() {
            return Err(PauliError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Self {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        })
    }

    /// The symplectic bits `(x | z)` as one vector of length 2N.
    pub fn to_symplectic(&self) -> BinaryVector {
        let n = self.len();
        let mut out = BinaryVector::zeros(2 * n);
        for i in 0..n {
            if self.x.get(i) {
                out.set(i, true);
            }
            if self.z.get(i) {
                out.set(n + i, true);
            }
        }
        out
    }

    pub fn from_symplectic(v: &BinaryVector) -> Self {
        assert!(v.len().is_multiple_of(2), "symplectic vector must have even length");
        let n = v.len() / 2;
        let mut out = Self::identity(n);
        for i in 0..n {
            out.x.set(i, v.get(i));
            out.z.set(i, v.get(n + i));
        }
        out
    }

    pub fn to_letter_string(&self) -> String {
        (0..self.len()).map(|i| self.get(i).to_char()).collect()
    }
}

/// True iff two Pauli patterns commute: `a_x . b_z + a_z . b_x = 0` mod 2.
pub fn symplectic_commutes(a: &PauliVector, b: &PauliVector) -> Result<bool, PauliError> {
    if a.len() != b.len() {
        return Err(PauliError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let xz = a.x.dot(&b.z).expect("lengths already checked");
    let zx = a.z.dot(&b.x).expect("lengths already checked");
    Ok(!(xz ^ zx))
}
