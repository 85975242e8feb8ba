//! Exhaustive maximum-likelihood syndrome decoding for small instances.

use super::DecodeError;
use crate::codes::StabilizerCode;
use crate::gf2::BinaryVector;
use crate::pauli::{Pauli, PauliVector};

const MAX_BLOCK: usize = 16;
const FLIPS: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

/// Most likely error pattern consistent with the syndrome, by exhaustive
/// search over the 4^N Pauli patterns (guarded at N <= 16).
///
/// Under the per-letter priors (1-f for I, f/3 each for X/Y/Z) the
/// likelihood is strictly decreasing in pattern weight for every
/// f in (0, 3/4), so the search enumerates weights in increasing order and
/// stops at the first weight with a consistent pattern. Exact ties are
/// broken by lexicographic order of the concatenated (x|z) bits.
pub fn decode_ml_bruteforce(
    code: &StabilizerCode,
    syndrome: &BinaryVector,
    f_assumed: f64,
) -> Result<PauliVector, DecodeError> {
    let n = code.n();
    if n > MAX_BLOCK {
        return Err(DecodeError::BlockTooLarge { n, max: MAX_BLOCK });
    }
    if syndrome.len() != code.m() {
        return Err(DecodeError::SyndromeLengthMismatch {
            expected: code.m(),
            got: syndrome.len(),
        });
    }
    if !(0.0 < f_assumed && f_assumed < 0.75) {
        return Err(DecodeError::AssumedProbabilityOutOfRange {
            value: f_assumed,
            lo: 0.0,
            hi: 0.75,
        });
    }

    // Syndrome of a single letter at a single position, packed into u64
    // (M <= 2N <= 32 bits).
    let m = code.m();
    let mut letter_syndrome = vec![[0u64; 3]; n];
    for (i, entry) in letter_syndrome.iter_mut().enumerate() {
        for (li, &letter) in FLIPS.iter().enumerate() {
            let mut e = PauliVector::identity(n);
            e.set(i, letter);
            let s = code.syndrome(&e).expect("lengths agree");
            let mut packed = 0u64;
            for j in 0..m {
                if s.get(j) {
                    packed |= 1 << j;
                }
            }
            entry[li] = packed;
        }
    }
    let mut target = 0u64;
    for j in 0..m {
        if syndrome.get(j) {
            target |= 1 << j;
        }
    }

    for weight in 0..=n {
        let mut best: Option<PauliVector> = None;
        let mut positions: Vec<usize> = (0..weight).collect();
        loop {
            // All 3^weight letter assignments on this position set.
            let combos = 3usize.pow(weight as u32);
            for assignment in 0..combos {
                let mut acc = 0u64;
                let mut a = assignment;
                for &pos in &positions {
                    acc ^= letter_syndrome[pos][a % 3];
                    a /= 3;
                }
                if acc == target {
                    let mut cand = PauliVector::identity(n);
                    let mut a = assignment;
                    for &pos in &positions {
                        cand.set(pos, FLIPS[a % 3]);
                        a /= 3;
                    }
                    if best
                        .as_ref()
                        .is_none_or(|b| symplectic_key(&cand) < symplectic_key(b))
                    {
                        best = Some(cand);
                    }
                }
            }
            if weight == 0 || !next_combination(&mut positions, n) {
                break;
            }
        }
        if let Some(found) = best {
            return Ok(found);
        }
    }
    unreachable!("full-rank stabilizer matrices make every syndrome reachable")
}

/// Lexicographic key over the bit sequence x_0..x_{N-1} z_0..z_{N-1}.
fn symplectic_key(p: &PauliVector) -> String {
    p.to_symplectic().to_bit_string()
}

/// Advance `positions` to the next k-combination of 0..n; false at the end.
fn next_combination(positions: &mut [usize], n: usize) -> bool {
    let k = positions.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if positions[i] < n - (k - i) {
            positions[i] += 1;
            for j in i + 1..k {
                positions[j] = positions[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
