//! Code construction and validation: stabilizer codes in binary symplectic
//! form, CSS codes, the dual-containing bicycle construction, and
//! girth-conscious regular classical LDPC codes.

mod bicycle;
mod peg;

pub use bicycle::build_bicycle_code;
pub use peg::build_peg_regular;

use crate::gf2::{matmul_gf2, rank_gf2, BinaryMatrix, BinaryVector, RowSpace};
use crate::pauli::{PauliError, PauliVector};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("stabilizer rows {row_a} and {row_b} anticommute")]
    NonCommuting { row_a: usize, row_b: usize },
    #[error("stabilizer rows are linearly dependent: rank {rank} < {rows} rows")]
    DependentRows { rank: usize, rows: usize },
    #[error("CSS blocks violate H G^T = 0")]
    CssOrthogonality,
    #[error("error pattern has length {got}, code expects {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("infeasible construction: {reason}")]
    Construction { reason: String },
}

/// A validated stabilizer code in binary symplectic form.
///
/// The generator matrix is `A = (A1 | A2)` with M = N - K rows; `A1` marks
/// X-containing positions and `A2` Z-containing positions. CSS codes
/// additionally carry their `(H, G)` block pair.
#[derive(Debug, Clone)]
pub struct StabilizerCode {
    n: usize,
    k: usize,
    a1: BinaryMatrix,
    a2: BinaryMatrix,
    css: Option<(BinaryMatrix, BinaryMatrix)>,
}

impl StabilizerCode {
    /// Build from the symplectic halves, checking commutation and rank.
    pub fn from_parts(a1: BinaryMatrix, a2: BinaryMatrix) -> Result<Self, CodeError> {
        assert_eq!(a1.rows(), a2.rows(), "A1 and A2 must have equal row counts");
        assert_eq!(a1.cols(), a2.cols(), "A1 and A2 must have equal column counts");
        let n = a1.cols();
        let m = a1.rows();

        // A1 A2^T + A2 A1^T = 0 is the commutation constraint.
        let cross = matmul_gf2(&a1, &a2.transpose()).expect("dimensions agree");
        let cross_t = matmul_gf2(&a2, &a1.transpose()).expect("dimensions agree");
        let mut sum = cross.clone();
        for r in 0..sum.rows() {
            for c in cross_t.row_support(r) {
                let v = sum.get(r, c);
                sum.set(r, c, !v);
            }
        }
        if !sum.is_zero() {
            let (row_a, row_b) = first_anticommuting_pair(&a1, &a2)
                .expect("nonzero commutation matrix implies an anticommuting pair");
            return Err(CodeError::NonCommuting { row_a, row_b });
        }

        let a = a1.hstack(&a2);
        let rank = rank_gf2(&a);
        if rank != m {
            return Err(CodeError::DependentRows { rank, rows: m });
        }

        Ok(Self {
            n,
            k: n - m,
            a1,
            a2,
            css: None,
        })
    }

    /// Build a CSS code from its `(H, G)` blocks; requires `H G^T = 0`.
    pub fn css(h: BinaryMatrix, g: BinaryMatrix) -> Result<Self, CodeError> {
        assert_eq!(h.cols(), g.cols(), "H and G must act on the same qubits");
        let n = h.cols();
        let hg = matmul_gf2(&h, &g.transpose()).expect("dimensions agree");
        if !hg.is_zero() {
            return Err(CodeError::CssOrthogonality);
        }
        let a1 = h.vstack(&BinaryMatrix::zeros(g.rows(), n));
        let a2 = BinaryMatrix::zeros(h.rows(), n).vstack(&g);
        let mut code = Self::from_parts(a1, a2)?;
        code.css = Some((h, g));
        Ok(code)
    }

    /// Convert a set of Pauli strings into a stabilizer code.
    pub fn from_pauli_strings<S: AsRef<str>>(ops: &[S]) -> Result<Self, CodeError> {
        let rows: Vec<PauliVector> = ops
            .iter()
            .map(|s| PauliVector::parse(s.as_ref()))
            .collect::<Result<_, _>>()?;
        if let Some(first) = rows.first() {
            for r in &rows {
                if r.len() != first.len() {
                    return Err(CodeError::Pauli(PauliError::LengthMismatch {
                        left: first.len(),
                        right: r.len(),
                    }));
                }
            }
        }
        let n = rows.first().map_or(0, PauliVector::len);
        let m = rows.len();
        let mut a1 = BinaryMatrix::zeros(m, n);
        let mut a2 = BinaryMatrix::zeros(m, n);
        for (r, p) in rows.iter().enumerate() {
            a1.set_row(r, p.x_part());
            a2.set_row(r, p.z_part());
        }
        Self::from_parts(a1, a2)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of stabilizer generators, M = N - K.
    pub fn m(&self) -> usize {
        self.n - self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn is_css(&self) -> bool {
        self.css.is_some()
    }

    /// CSS `(H, G)` blocks, when the code was built in CSS form.
    pub fn css_blocks(&self) -> Option<(&BinaryMatrix, &BinaryMatrix)> {
        self.css.as_ref().map(|(h, g)| (h, g))
    }

    pub fn a1(&self) -> &BinaryMatrix {
        &self.a1
    }

    pub fn a2(&self) -> &BinaryMatrix {
        &self.a2
    }

    /// The full generator matrix `A = (A1 | A2)`, M x 2N.
    pub fn a_matrix(&self) -> BinaryMatrix {
        self.a1.hstack(&self.a2)
    }

    /// Stabilizer generator `j` as a Pauli pattern.
    pub fn generator(&self, j: usize) -> PauliVector {
        PauliVector::from_parts(self.a1.row(j), self.a2.row(j)).expect("rows have equal length")
    }

    /// Syndrome of an error pattern: bit j is the symplectic product of
    /// generator j with the error (1 = anticommutes).
    pub fn syndrome(&self, error: &PauliVector) -> Result<BinaryVector, CodeError> {
        if error.len() != self.n {
            return Err(CodeError::LengthMismatch {
                expected: self.n,
                got: error.len(),
            });
        }
        let from_z = self.a1.mul_vec(error.z_part()).expect("length checked");
        let from_x = self.a2.mul_vec(error.x_part()).expect("length checked");
        Ok(from_z.xor(&from_x))
    }

    /// Echelon basis of the generator row space in symplectic (x|z) layout,
    /// for residual-error classification.
    pub fn generator_row_space(&self) -> RowSpace {
        RowSpace::new(&self.a_matrix())
    }
}

fn first_anticommuting_pair(a1: &BinaryMatrix, a2: &BinaryMatrix) -> Option<(usize, usize)> {
    let m = a1.rows();
    for i in 0..m {
        let pi = PauliVector::from_parts(a1.row(i), a2.row(i)).ok()?;
        for j in i + 1..m {
            let pj = PauliVector::from_parts(a1.row(j), a2.row(j)).ok()?;
            if !crate::pauli::symplectic_commutes(&pi, &pj).ok()? {
                return Some((i, j));
            }
        }
    }
    None
}

/// A classical binary linear code given by its parity-check matrix.
#[derive(Debug, Clone)]
pub struct ClassicalCode {
    h: BinaryMatrix,
    rank: usize,
    girth: Option<usize>,
}

impl ClassicalCode {
    pub fn new(h: BinaryMatrix) -> Result<Self, CodeError> {
        if h.is_zero() {
            return Err(CodeError::Construction {
                reason: "parity-check matrix is all-zero".to_string(),
            });
        }
        let rank = rank_gf2(&h);
        let girth = tanner_girth(&h);
        Ok(Self { h, rank, girth })
    }

    pub fn h(&self) -> &BinaryMatrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn m(&self) -> usize {
        self.h.rows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rate(&self) -> f64 {
        (self.n() - self.rank) as f64 / self.n() as f64
    }

    /// Shortest Tanner-graph cycle length; `None` for acyclic graphs.
    pub fn girth(&self) -> Option<usize> {
        self.girth
    }

    pub fn syndrome(&self, error: &BinaryVector) -> Result<BinaryVector, CodeError> {
        if error.len() != self.n() {
            return Err(CodeError::LengthMismatch {
                expected: self.n(),
                got: error.len(),
            });
        }
        Ok(self.h.mul_vec(error).expect("length checked"))
    }
}

/// Girth of the bipartite Tanner graph of `h`: BFS from every variable
/// node, taking the shortest cycle discovered at the first cross edge.
pub fn tanner_girth(h: &BinaryMatrix) -> Option<usize> {
    let (row_adj, col_adj) = h.adjacency();
    let n_vars = h.cols();
    let n_checks = h.rows();
    let total = n_vars + n_checks;
    // Node ids: variables 0..n_vars, checks n_vars..
    let neighbors = |node: usize| -> &[usize] {
        if node < n_vars {
            &col_adj[node]
        } else {
            &row_adj[node - n_vars]
        }
    };
    let offset = |node: usize, other: usize| -> usize {
        // Map a neighbor in the opposite partition to its node id.
        if node < n_vars {
            n_vars + other
        } else {
            other
        }
    };

    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; total];
    let mut parent = vec![usize::MAX; total];
    for root in 0..n_vars {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                // Cycles through deeper nodes cannot beat the current best.
                if 2 * dist[u] >= b {
                    break;
                }
            }
            for &raw in neighbors(u) {
                let w = offset(u, raw);
                if w == parent[u] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else {
                    let cycle = dist[u] + dist[w] + 1;
                    if best.is_none_or(|b| cycle < b) {
                        best = Some(cycle);
                    }
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::matmul_gf2;
    use crate::pauli::PauliVector;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    pub(crate) const FIVE_QUBIT: [&str; 4] = ["ZZXIX", "XZZXI", "IXZZX", "XIXZZ"];

    #[test]
    fn five_qubit_code_matches_binary_form() {
        let code = StabilizerCode::from_pauli_strings(&FIVE_QUBIT).unwrap();
        assert_eq!(code.n(), 5);
        assert_eq!(code.k(), 1);
        let a1 = [
            [0, 0, 1, 0, 1],
            [1, 0, 0, 1, 0],
            [0, 1, 0, 0, 1],
            [1, 0, 1, 0, 0],
        ];
        let a2 = [
            [1, 1, 0, 0, 0],
            [0, 1, 1, 0, 0],
            [0, 0, 1, 1, 0],
            [0, 0, 0, 1, 1],
        ];
        for r in 0..4 {
            for c in 0..5 {
                assert_eq!(code.a1().get(r, c), a1[r][c] == 1, "A1 ({r},{c})");
                assert_eq!(code.a2().get(r, c), a2[r][c] == 1, "A2 ({r},{c})");
            }
        }
        // A1 A2^T + A2 A1^T = 0 for the published matrix.
        let cross = matmul_gf2(code.a1(), &code.a2().transpose()).unwrap();
        let cross_t = matmul_gf2(code.a2(), &code.a1().transpose()).unwrap();
        assert_eq!(cross, cross_t.transpose());
        // Rank of the 4x10 matrix is 4.
        assert_eq!(crate::gf2::rank_gf2(&code.a_matrix()), 4);
    }

    #[test]
    fn xx_zz_pair_converts() {
        let code = StabilizerCode::from_pauli_strings(&["XX", "ZZ"]).unwrap();
        assert_eq!(code.n(), 2);
        assert_eq!(code.k(), 0);
        assert_eq!(code.a1().row(0).to_bit_string(), "11");
        assert_eq!(code.a2().row(0).to_bit_string(), "00");
        assert_eq!(code.a1().row(1).to_bit_string(), "00");
        assert_eq!(code.a2().row(1).to_bit_string(), "11");
    }

    #[test]
    fn xz_zx_pair_is_accepted() {
        // (X,Z) and (Z,X) anticommute at both positions: even count, commuting.
        let code = StabilizerCode::from_pauli_strings(&["XZ", "ZX"]).unwrap();
        assert_eq!(code.a1().row(0).to_bit_string(), "10");
        assert_eq!(code.a2().row(0).to_bit_string(), "01");
        assert_eq!(code.a1().row(1).to_bit_string(), "01");
        assert_eq!(code.a2().row(1).to_bit_string(), "10");
    }

    #[test]
    fn non_commuting_set_is_rejected_with_pair() {
        let err = StabilizerCode::from_pauli_strings(&["XI", "ZI"]).unwrap_err();
        assert_eq!(err, CodeError::NonCommuting { row_a: 0, row_b: 1 });
    }

    #[test]
    fn bad_character_is_a_parse_error() {
        let err = StabilizerCode::from_pauli_strings(&["XA"]).unwrap_err();
        assert!(matches!(err, CodeError::Pauli(_)));
    }

    #[test]
    fn syndrome_of_identity_is_zero() {
        let code = StabilizerCode::from_pauli_strings(&FIVE_QUBIT).unwrap();
        let s = code.syndrome(&PauliVector::identity(5)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn syndrome_of_stabilizer_row_is_zero() {
        let code = StabilizerCode::from_pauli_strings(&FIVE_QUBIT).unwrap();
        for j in 0..4 {
            let s = code.syndrome(&code.generator(j)).unwrap();
            assert!(s.is_zero(), "generator {j} must commute with all rows");
        }
    }

    #[test]
    fn syndrome_of_single_x_error() {
        // X on qubit index 1 anticommutes exactly with the generators
        // carrying Z there: rows 0 and 1.
        let code = StabilizerCode::from_pauli_strings(&FIVE_QUBIT).unwrap();
        let mut e = PauliVector::identity(5);
        e.set(1, crate::pauli::Pauli::X);
        let s = code.syndrome(&e).unwrap();
        // Oracle: count anticommuting positions per row directly.
        for j in 0..4 {
            let row = code.generator(j);
            let anti: usize = (0..5)
                .filter(|&i| !row.get(i).commutes(e.get(i)))
                .count();
            assert_eq!(s.get(j), anti % 2 == 1, "row {j}");
        }
        assert_eq!(s.to_bit_string(), "1100");
    }

    #[test]
    fn syndrome_rejects_length_mismatch() {
        let code = StabilizerCode::from_pauli_strings(&FIVE_QUBIT).unwrap();
        let err = code.syndrome(&PauliVector::identity(4)).unwrap_err();
        assert_eq!(err, CodeError::LengthMismatch { expected: 5, got: 4 });
    }

    #[test]
    fn girth_of_small_graphs() {
        // Two checks sharing two variables: a 4-cycle.
        let h = BinaryMatrix::from_rows(2, 3, &[1, 1, 0, 1, 1, 1]);
        assert_eq!(tanner_girth(&h), Some(4));
        // A tree has no cycle.
        let tree = BinaryMatrix::from_rows(2, 3, &[1, 1, 0, 0, 1, 1]);
        assert_eq!(tanner_girth(&tree), None);
        // Three checks pairwise sharing one variable: a 6-cycle.
        let hex = BinaryMatrix::from_rows(3, 3, &[1, 1, 0, 0, 1, 1, 1, 0, 1]);
        assert_eq!(tanner_girth(&hex), Some(6));
    }

    fn random_pauli(rng: &mut StdRng, n: usize) -> PauliVector {
        let mut v = PauliVector::identity(n);
        for i in 0..n {
            let p = match rng.random_range(0..4) {
                0 => crate::pauli::Pauli::I,
                1 => crate::pauli::Pauli::X,
                2 => crate::pauli::Pauli::Y,
                _ => crate::pauli::Pauli::Z,
            };
            v.set(i, p);
        }
        v
    }

    proptest! {
        #[test]
        fn syndrome_is_bilinear(seed in 0u64..300) {
            let code = StabilizerCode::from_pauli_strings(&FIVE_QUBIT).unwrap();
            let mut rng = StdRng::seed_from_u64(seed);
            let e1 = random_pauli(&mut rng, 5);
            let e2 = random_pauli(&mut rng, 5);
            let lhs = code.syndrome(&e1.compose(&e2).unwrap()).unwrap();
            let rhs = code.syndrome(&e1).unwrap().xor(&code.syndrome(&e2).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn syndrome_ignores_stabilizer_offsets(seed in 0u64..300) {
            let code = StabilizerCode::from_pauli_strings(&FIVE_QUBIT).unwrap();
            let mut rng = StdRng::seed_from_u64(seed);
            let e = random_pauli(&mut rng, 5);
            let row = code.generator(rng.random_range(0..4));
            let shifted = e.compose(&row).unwrap();
            prop_assert_eq!(
                code.syndrome(&e).unwrap(),
                code.syndrome(&shifted).unwrap()
            );
        }
    }
}
