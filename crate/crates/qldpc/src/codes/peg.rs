//! Progressive edge growth construction of regular LDPC codes.
//!
//! Edges are placed round-robin over edge ranks; each new edge goes to a
//! check node as far as possible from its variable in the current Tanner
//! graph (unreachable checks first), breaking ties by lowest degree and
//! then uniformly at random. Check degrees are capped at `row_weight` so
//! the finished code is exactly (col_weight, row_weight)-regular.

use super::{ClassicalCode, CodeError};
use crate::gf2::BinaryMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::collections::VecDeque;

/// Exact regularity makes the final edges of a run occasionally force a
/// 4-cycle; a handful of deterministic restarts with derived seeds find a
/// girth-6 placement in practice.
const PEG_ATTEMPTS: u64 = 12;

pub fn build_peg_regular(
    n: usize,
    col_weight: usize,
    row_weight: usize,
    seed: u64,
) -> Result<ClassicalCode, CodeError> {
    let mut best: Option<ClassicalCode> = None;
    let mut last_error = None;
    for attempt in 0..PEG_ATTEMPTS {
        let attempt_seed = seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let code = match peg_attempt(n, col_weight, row_weight, attempt_seed) {
            Ok(code) => code,
            Err(e @ CodeError::Construction { .. }) => {
                // Tight instances can dead-end on one placement order.
                last_error = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        let acyclic = code.girth().is_none();
        let better = match (&best, code.girth()) {
            (None, _) => true,
            (Some(b), g) => match (b.girth(), g) {
                (Some(old), Some(new)) => new > old,
                (Some(_), None) => true,
                (None, _) => false,
            },
        };
        if better {
            best = Some(code);
        }
        if acyclic || best.as_ref().is_some_and(|c| c.girth() >= Some(6)) {
            break;
        }
    }
    best.ok_or_else(|| last_error.expect("no code implies at least one error"))
}

fn peg_attempt(
    n: usize,
    col_weight: usize,
    row_weight: usize,
    seed: u64,
) -> Result<ClassicalCode, CodeError> {
    if n == 0 || col_weight == 0 || row_weight == 0 {
        return Err(CodeError::Construction {
            reason: "degrees and length must be positive".to_string(),
        });
    }
    if !(n * col_weight).is_multiple_of(row_weight) {
        return Err(CodeError::Construction {
            reason: format!(
                "{n} variables of degree {col_weight} cannot fill rows of degree {row_weight}"
            ),
        });
    }
    let m = n * col_weight / row_weight;
    if col_weight > m {
        return Err(CodeError::Construction {
            reason: format!("column weight {col_weight} exceeds {m} checks"),
        });
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut var_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut check_adj: Vec<Vec<usize>> = vec![Vec::new(); m];

    // Round-robin over edge ranks keeps check loads balanced to the end,
    // which avoids the forced short cycles a variable-at-a-time fill hits
    // once the remaining capacity concentrates in a few checks.
    for _rank in 0..col_weight {
        for v in 0..n {
            let dist = check_distances(v, &var_adj, &check_adj);
            // Eligible checks: spare capacity and not already a neighbor.
            let eligible: Vec<usize> = (0..m)
                .filter(|&c| check_adj[c].len() < row_weight && !var_adj[v].contains(&c))
                .collect();
            if eligible.is_empty() {
                return Err(CodeError::Construction {
                    reason: format!("no placeable check for variable {v}"),
                });
            }
            let unreachable: Vec<usize> = eligible
                .iter()
                .copied()
                .filter(|&c| dist[c].is_none())
                .collect();
            let pool = if !unreachable.is_empty() {
                unreachable
            } else {
                let far = eligible
                    .iter()
                    .filter_map(|&c| dist[c])
                    .max()
                    .expect("eligible set is non-empty and fully reachable");
                eligible
                    .into_iter()
                    .filter(|&c| dist[c] == Some(far))
                    .collect()
            };
            let min_deg = pool.iter().map(|&c| check_adj[c].len()).min().unwrap();
            let lightest: Vec<usize> = pool
                .into_iter()
                .filter(|&c| check_adj[c].len() == min_deg)
                .collect();
            let chosen = lightest[rng.random_range(0..lightest.len())];
            var_adj[v].push(chosen);
            check_adj[chosen].push(v);
        }
    }

    let mut h = BinaryMatrix::zeros(m, n);
    for (c, vars) in check_adj.iter().enumerate() {
        for &v in vars {
            h.set(c, v, true);
        }
    }
    ClassicalCode::new(h)
}

/// BFS distances from variable `v` to every check in the current graph.
fn check_distances(
    v: usize,
    var_adj: &[Vec<usize>],
    check_adj: &[Vec<usize>],
) -> Vec<Option<usize>> {
    let mut var_dist: Vec<Option<usize>> = vec![None; var_adj.len()];
    let mut check_dist: Vec<Option<usize>> = vec![None; check_adj.len()];
    var_dist[v] = Some(0);
    let mut queue = VecDeque::new();
    queue.push_back(v);
    while let Some(u) = queue.pop_front() {
        let d = var_dist[u].unwrap();
        for &c in &var_adj[u] {
            if check_dist[c].is_none() {
                check_dist[c] = Some(d + 1);
                for &w in &check_adj[c] {
                    if var_dist[w].is_none() {
                        var_dist[w] = Some(d + 2);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    check_dist
}
