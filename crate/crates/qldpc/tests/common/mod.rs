//! Shared oracle helpers for the integration suites: random cycle-free
//! instances and direct (exponential-sum) evaluation of the quaternary
//! check update.

use qldpc::codes::StabilizerCode;
use qldpc::gf2::BinaryMatrix;
use qldpc::pauli::{Pauli, PauliVector};
use rand::rngs::StdRng;
use rand::Rng;

pub const LETTERS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

/// Random cycle-free parity-check matrix: each new check attaches to one
/// existing variable and brings fresh leaf variables.
pub fn random_tree_matrix(rng: &mut StdRng, max_vars: usize) -> BinaryMatrix {
    let mut checks: Vec<Vec<usize>> = Vec::new();
    let mut n_vars = 1usize;
    loop {
        let attach = rng.random_range(0..n_vars);
        let fresh = rng.random_range(1..3usize);
        if n_vars + fresh > max_vars {
            break;
        }
        let mut support = vec![attach];
        for _ in 0..fresh {
            support.push(n_vars);
            n_vars += 1;
        }
        checks.push(support);
        if checks.len() >= 8 {
            break;
        }
    }
    let mut h = BinaryMatrix::zeros(checks.len(), n_vars);
    for (c, support) in checks.iter().enumerate() {
        for &v in support {
            h.set(c, v, true);
        }
    }
    h
}

/// Random commuting stabilizer set on a tree: every shared variable gets a
/// fixed letter so overlapping generators agree there, which makes all
/// pairs commute (any two generators share at most one position).
pub fn random_tree_code(rng: &mut StdRng, max_qubits: usize) -> StabilizerCode {
    let h = random_tree_matrix(rng, max_qubits);
    let n = h.cols();
    let shared_letter: Vec<Pauli> = (0..n).map(|_| LETTERS[rng.random_range(1..4)]).collect();
    let mut rows = Vec::new();
    for c in 0..h.rows() {
        let mut row = PauliVector::identity(n);
        for v in h.row_support(c) {
            let letter = if h.col_weight(v) > 1 {
                shared_letter[v]
            } else {
                LETTERS[rng.random_range(1..4)]
            };
            row.set(v, letter);
        }
        rows.push(row.to_letter_string());
    }
    StabilizerCode::from_pauli_strings(&rows).expect("tree construction commutes")
}

/// Direct evaluation of the check-to-qubit message: sum over all letter
/// assignments of the other neighbors whose anticommutation parity with
/// the check matches the syndrome bit.
pub fn check_message_direct(
    letters: &[Pauli],
    incoming: &[[f64; 4]],
    target: usize,
    syndrome_bit: bool,
) -> [f64; 4] {
    let deg = letters.len();
    let others: Vec<usize> = (0..deg).filter(|&k| k != target).collect();
    let mut out = [0.0f64; 4];
    for (ti, &t) in LETTERS.iter().enumerate() {
        let own_anti = !t.commutes(letters[target]);
        let combos = 4usize.pow(others.len() as u32);
        let mut sum = 0.0;
        for assignment in 0..combos {
            let mut a = assignment;
            let mut parity = own_anti;
            let mut weight = 1.0;
            for &k in &others {
                let letter_idx = a % 4;
                a /= 4;
                weight *= incoming[k][letter_idx];
                if !LETTERS[letter_idx].commutes(letters[k]) {
                    parity = !parity;
                }
            }
            if parity == syndrome_bit {
                sum += weight;
            }
        }
        out[ti] = sum;
    }
    out
}
