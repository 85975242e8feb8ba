//! Dual-containing CSS codes from a circulant pair `[C | C^T]`.
//!
//! `C` is a random circulant over GF(2) with even row weight, so
//! `[C | C^T]` is self-orthogonal: `C C^T + C^T C = 2 C C^T = 0 mod 2`.
//! Rows are then deleted to reach the target rate, keeping column weights
//! as uniform as possible.

use super::{CodeError, StabilizerCode};
use crate::gf2::{BinaryMatrix, RowSpace};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Build a dual-containing bicycle code with `G = H`.
///
/// `n` qubits (even), total stabilizer row weight `row_weight` (even),
/// target logical count `k_target <= n/2`. The number of kept rows is
/// `ceil((n - k_target) / 2)` per sector, so the achieved K can differ
/// from the target by one when `n - k_target` is odd.
pub fn build_bicycle_code(
    n: usize,
    row_weight: usize,
    k_target: usize,
    seed: u64,
) -> Result<StabilizerCode, CodeError> {
    let infeasible = |reason: String| Err(CodeError::Construction { reason });
    if n < 4 || !n.is_multiple_of(2) {
        return infeasible(format!("block length {n} must be even and >= 4"));
    }
    if row_weight < 2 || !row_weight.is_multiple_of(2) {
        return infeasible(format!("row weight {row_weight} must be even and >= 2"));
    }
    let half = n / 2;
    let circ_weight = row_weight / 2;
    if circ_weight > half {
        return infeasible(format!(
            "row weight {row_weight} exceeds circulant size {half}"
        ));
    }
    if k_target > half {
        return infeasible(format!("k_target {k_target} exceeds n/2 = {half}"));
    }
    let keep = (n - k_target).div_ceil(2);
    if keep == 0 || keep > half {
        return infeasible(format!("cannot keep {keep} of {half} rows"));
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let offsets: Vec<usize> = sample(&mut rng, half, circ_weight).into_vec();

    // [C | C^T]: row i of C has ones at (o + i) mod half; row i of C^T at
    // (i - o) mod half.
    let mut h0 = BinaryMatrix::zeros(half, n);
    for i in 0..half {
        for &o in &offsets {
            h0.set(i, (o + i) % half, true);
            h0.set(i, half + (i + half - o) % half, true);
        }
    }

    let h = delete_rows_evenly(&h0, half - keep)?;
    let h = drop_dependent_rows(h);
    StabilizerCode::css(h.clone(), h)
}

/// Greedily delete `count` rows, each time removing the row whose support
/// sits on the heaviest columns (equivalently, whose removal minimizes the
/// column-weight variance). Rows that would zero out a column are skipped.
fn delete_rows_evenly(h0: &BinaryMatrix, count: usize) -> Result<BinaryMatrix, CodeError> {
    let rows = h0.rows();
    let cols = h0.cols();
    let mut col_weight = Vec::with_capacity(cols);
    for c in 0..cols {
        col_weight.push(h0.col_weight(c));
    }
    let supports: Vec<Vec<usize>> = (0..rows).map(|r| h0.row_support(r)).collect();
    let mut alive = vec![true; rows];

    for _ in 0..count {
        let mut best: Option<(usize, usize)> = None; // (score, row)
        for r in 0..rows {
            if !alive[r] {
                continue;
            }
            if supports[r].iter().any(|&c| col_weight[c] <= 1) {
                continue; // deleting would disconnect a qubit
            }
            let score: usize = supports[r].iter().map(|&c| col_weight[c]).sum();
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, r));
            }
        }
        let Some((_, victim)) = best else {
            return Err(CodeError::Construction {
                reason: "row deletion would leave an unchecked qubit".to_string(),
            });
        };
        alive[victim] = false;
        for &c in &supports[victim] {
            col_weight[c] -= 1;
        }
    }

    let kept: Vec<usize> = (0..rows).filter(|&r| alive[r]).collect();
    Ok(h0.select_rows(&kept))
}

fn drop_dependent_rows(h: BinaryMatrix) -> BinaryMatrix {
    let mut space = RowSpace::empty(h.cols());
    let mut kept = Vec::new();
    for r in 0..h.rows() {
        if space.insert(h.row(r)) {
            kept.push(r);
        }
    }
    if kept.len() == h.rows() {
        h
    } else {
        h.select_rows(&kept)
    }
}
