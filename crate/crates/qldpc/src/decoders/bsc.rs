//! Log-domain sum-product decoding of a binary syndrome: find an error
//! pattern `e` with `H e = s` under i.i.d. Bernoulli(p) priors.

use super::{DecodeError, DecodeResult};
use crate::gf2::{BinaryMatrix, BinaryVector};

/// Sparse bipartite view of a binary parity-check matrix with flat edge
/// indexing (variable-major).
#[derive(Debug, Clone)]
pub struct BinaryTanner {
    n: usize,
    m: usize,
    /// Edge index ranges per variable; edges of v are `start[v]..start[v+1]`.
    var_edge_start: Vec<usize>,
    /// Check neighbor of each edge, variable-major.
    edge_check: Vec<usize>,
    /// Per check: flat edge indices of its incident edges.
    check_edges: Vec<Vec<usize>>,
    /// Per check: the variable on each incident edge, aligned with `check_edges`.
    check_vars: Vec<Vec<usize>>,
}

impl BinaryTanner {
    pub fn new(h: &BinaryMatrix) -> Self {
        let (row_adj, col_adj) = h.adjacency();
        let n = h.cols();
        let m = h.rows();
        let mut var_edge_start = Vec::with_capacity(n + 1);
        var_edge_start.push(0);
        let mut edge_check = Vec::new();
        for adj in col_adj.iter().take(n) {
            for &c in adj {
                edge_check.push(c);
            }
            var_edge_start.push(edge_check.len());
        }
        let mut check_edges = vec![Vec::new(); m];
        let mut check_vars = vec![Vec::new(); m];
        for v in 0..n {
            for (k, &c) in col_adj[v].iter().enumerate() {
                check_edges[c].push(var_edge_start[v] + k);
                check_vars[c].push(v);
            }
        }
        let _ = row_adj;
        Self {
            n,
            m,
            var_edge_start,
            edge_check,
            check_edges,
            check_vars,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn num_edges(&self) -> usize {
        self.edge_check.len()
    }
}

/// Sum-product syndrome decoder for the BSC. One instance owns its message
/// buffers; the graph is shared read-only.
#[derive(Debug)]
pub struct BscDecoder<'a> {
    graph: &'a BinaryTanner,
    max_iters: usize,
    var_to_check: Vec<f64>,
    check_to_var: Vec<f64>,
    posterior: Vec<f64>,
}

impl<'a> BscDecoder<'a> {
    pub fn new(graph: &'a BinaryTanner, max_iters: usize) -> Self {
        let e = graph.num_edges();
        Self {
            graph,
            max_iters,
            var_to_check: vec![0.0; e],
            check_to_var: vec![0.0; e],
            posterior: vec![0.0; graph.n()],
        }
    }

    /// Posterior log-likelihood ratios `ln P(e_i = 0) / P(e_i = 1)` from the
    /// last decode call.
    pub fn posterior_llrs(&self) -> &[f64] {
        &self.posterior
    }

    /// Posterior flip probabilities from the last decode call.
    pub fn posterior_probs(&self) -> Vec<f64> {
        self.posterior.iter().map(|l| 1.0 / (1.0 + l.exp())).collect()
    }

    pub fn decode(
        &mut self,
        p_assumed: f64,
        syndrome: &BinaryVector,
    ) -> Result<DecodeResult<BinaryVector>, DecodeError> {
        let prior = self.start(p_assumed, syndrome)?;

        let mut estimate = self.hard_decision();
        if self.syndrome_satisfied(&estimate, syndrome) {
            return Ok(result(true, 0, estimate));
        }

        for iter in 1..=self.max_iters {
            self.check_update(syndrome);
            self.variable_update(prior);
            estimate = self.hard_decision();
            if self.syndrome_satisfied(&estimate, syndrome) {
                return Ok(result(true, iter, estimate));
            }
        }
        Ok(result(false, self.max_iters, estimate))
    }

    /// Run exactly `iterations` flooding rounds with no convergence exit,
    /// leaving the posterior marginals at the BP fixed point (exact on
    /// cycle-free graphs once `iterations` covers the diameter).
    pub fn propagate(
        &mut self,
        p_assumed: f64,
        syndrome: &BinaryVector,
        iterations: usize,
    ) -> Result<(), DecodeError> {
        let prior = self.start(p_assumed, syndrome)?;
        for _ in 0..iterations {
            self.check_update(syndrome);
            self.variable_update(prior);
        }
        Ok(())
    }

    /// Validate inputs and reset message state; returns the prior LLR.
    fn start(&mut self, p_assumed: f64, syndrome: &BinaryVector) -> Result<f64, DecodeError> {
        if !(0.0 < p_assumed && p_assumed < 1.0) {
            return Err(DecodeError::AssumedProbabilityOutOfRange {
                value: p_assumed,
                lo: 0.0,
                hi: 1.0,
            });
        }
        if syndrome.len() != self.graph.m() {
            return Err(DecodeError::SyndromeLengthMismatch {
                expected: self.graph.m(),
                got: syndrome.len(),
            });
        }
        let prior = ((1.0 - p_assumed) / p_assumed).ln();
        self.var_to_check.fill(prior);
        self.check_to_var.fill(0.0);
        self.posterior.fill(prior);
        Ok(prior)
    }

    fn check_update(&mut self, syndrome: &BinaryVector) {
        for c in 0..self.graph.m() {
            let edges = &self.graph.check_edges[c];
            let deg = edges.len();
            let sign = if syndrome.get(c) { -1.0 } else { 1.0 };
            // tanh(msg/2) with exclusion products via prefix/suffix scans.
            let tanhs: Vec<f64> = edges
                .iter()
                .map(|&e| (self.var_to_check[e] * 0.5).tanh())
                .collect();
            let mut prefix = vec![1.0; deg + 1];
            for (k, t) in tanhs.iter().enumerate() {
                prefix[k + 1] = prefix[k] * t;
            }
            let mut suffix = vec![1.0; deg + 1];
            for k in (0..deg).rev() {
                suffix[k] = suffix[k + 1] * tanhs[k];
            }
            for (k, &e) in edges.iter().enumerate() {
                let prod = (prefix[k] * suffix[k + 1]).clamp(-1.0 + 1e-15, 1.0 - 1e-15);
                self.check_to_var[e] = sign * 2.0 * prod.atanh();
            }
        }
    }

    fn variable_update(&mut self, prior: f64) {
        for v in 0..self.graph.n() {
            let start = self.graph.var_edge_start[v];
            let end = self.graph.var_edge_start[v + 1];
            let mut total = prior;
            for e in start..end {
                total += self.check_to_var[e];
            }
            self.posterior[v] = total;
            for e in start..end {
                self.var_to_check[e] = total - self.check_to_var[e];
            }
        }
    }

    fn hard_decision(&self) -> BinaryVector {
        let mut e = BinaryVector::zeros(self.graph.n());
        for (v, &l) in self.posterior.iter().enumerate() {
            if l < 0.0 {
                e.set(v, true);
            }
        }
        e
    }

    fn syndrome_satisfied(&self, estimate: &BinaryVector, syndrome: &BinaryVector) -> bool {
        for c in 0..self.graph.m() {
            let mut parity = false;
            for &v in &self.graph.check_vars[c] {
                parity ^= estimate.get(v);
            }
            if parity != syndrome.get(c) {
                return false;
            }
        }
        true
    }
}

fn result(converged: bool, iterations: usize, estimate: BinaryVector) -> DecodeResult<BinaryVector> {
    DecodeResult {
        converged,
        iterations_used: iterations,
        error_estimate: estimate,
        syndrome_matched: converged,
        logical_failure: None,
    }
}
