//! Syndrome sum-product decoding over the four-letter Pauli alphabet.
//!
//! Check-to-qubit messages are computed by collapsing each incoming 4-ary
//! message to a (commute, anticommute) pair relative to the check's Pauli
//! at that position, convolving the parities under the observed syndrome
//! bit, and lifting back to the 4-ary alphabet. This realizes the
//! exponential sum over consistent error sequences at linear cost per
//! check; the equivalence is covered by a direct-evaluation oracle in the
//! test suite.

use super::{DecodeError, DecodeResult};
use crate::codes::StabilizerCode;
use crate::gf2::BinaryVector;
use crate::pauli::{Pauli, PauliVector};

const LETTERS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

/// Normalized 4-tuple of per-letter probabilities (I, X, Y, Z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitBelief(pub [f64; 4]);

impl QubitBelief {
    pub fn prob(&self, p: Pauli) -> f64 {
        self.0[letter_index(p)]
    }

    /// Most likely letter, preferring I, then X, Y, Z on exact ties.
    pub fn decision(&self) -> Pauli {
        let mut best = 0;
        for i in 1..4 {
            if self.0[i] > self.0[best] {
                best = i;
            }
        }
        LETTERS[best]
    }

    fn normalized(mut raw: [f64; 4]) -> Self {
        let sum: f64 = raw.iter().sum();
        if sum > 0.0 {
            for v in raw.iter_mut() {
                *v /= sum;
            }
        } else {
            raw = [0.25; 4];
        }
        QubitBelief(raw)
    }
}

fn letter_index(p: Pauli) -> usize {
    match p {
        Pauli::I => 0,
        Pauli::X => 1,
        Pauli::Y => 2,
        Pauli::Z => 3,
    }
}

/// Tanner graph of a stabilizer code over the quaternary alphabet.
///
/// Check j neighbors the qubits where generator j is non-identity; each
/// edge carries the generator's Pauli letter at that position.
#[derive(Debug, Clone)]
pub struct PauliTanner {
    n: usize,
    m: usize,
    var_edge_start: Vec<usize>,
    /// Per edge (variable-major): the check it belongs to.
    edge_check: Vec<usize>,
    /// Per edge: the check's Pauli letter at this qubit.
    edge_letter: Vec<Pauli>,
    /// Per check: flat edge indices.
    check_edges: Vec<Vec<usize>>,
    /// Per check: qubit on each incident edge, aligned with `check_edges`.
    check_vars: Vec<Vec<usize>>,
}

impl PauliTanner {
    pub fn new(code: &StabilizerCode) -> Self {
        let n = code.n();
        let m = code.m();
        // Collect the support of each generator with its letters.
        let mut check_support: Vec<Vec<(usize, Pauli)>> = Vec::with_capacity(m);
        for j in 0..m {
            let gen = code.generator(j);
            let support: Vec<(usize, Pauli)> = (0..n)
                .filter_map(|i| {
                    let p = gen.get(i);
                    (p != Pauli::I).then_some((i, p))
                })
                .collect();
            check_support.push(support);
        }
        let mut var_checks: Vec<Vec<(usize, Pauli)>> = vec![Vec::new(); n];
        for (j, support) in check_support.iter().enumerate() {
            for &(i, p) in support {
                var_checks[i].push((j, p));
            }
        }

        let mut var_edge_start = Vec::with_capacity(n + 1);
        var_edge_start.push(0);
        let mut edge_check = Vec::new();
        let mut edge_letter = Vec::new();
        for list in &var_checks {
            for &(j, p) in list {
                edge_check.push(j);
                edge_letter.push(p);
            }
            var_edge_start.push(edge_check.len());
        }
        let mut check_edges = vec![Vec::new(); m];
        let mut check_vars = vec![Vec::new(); m];
        for v in 0..n {
            for (k, &(j, _)) in var_checks[v].iter().enumerate() {
                check_edges[j].push(var_edge_start[v] + k);
                check_vars[j].push(v);
            }
        }

        Self {
            n,
            m,
            var_edge_start,
            edge_check,
            edge_letter,
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

/// Quaternary sum-product decoder. One instance owns its mutable message
/// state; the graph is shared read-only across instances.
#[derive(Debug)]
pub struct DepolarizingDecoder<'a> {
    graph: &'a PauliTanner,
    max_iters: usize,
    /// Qubit-to-check messages, normalized over the four letters.
    var_to_check: Vec<[f64; 4]>,
    /// Check-to-qubit messages as (commute, anticommute) masses.
    check_to_var: Vec<[f64; 2]>,
    beliefs: Vec<QubitBelief>,
}

impl<'a> DepolarizingDecoder<'a> {
    pub fn new(graph: &'a PauliTanner, max_iters: usize) -> Self {
        let e = graph.num_edges();
        Self {
            graph,
            max_iters,
            var_to_check: vec![[0.25; 4]; e],
            check_to_var: vec![[0.5; 2]; e],
            beliefs: vec![QubitBelief([0.25; 4]); graph.n()],
        }
    }

    /// Per-qubit marginals from the last decode call.
    pub fn beliefs(&self) -> &[QubitBelief] {
        &self.beliefs
    }

    /// Drive the production check update for check 0 on explicit incoming
    /// messages and return the outgoing messages lifted to the four-letter
    /// alphabet, one per neighbor in support order. Validation hook for
    /// the direct-evaluation oracle.
    pub fn check_update_for_test(
        &mut self,
        incoming: &[[f64; 4]],
        syndrome_bit: bool,
    ) -> Vec<[f64; 4]> {
        let edges = self.graph.check_edges[0].clone();
        assert_eq!(edges.len(), incoming.len(), "one message per neighbor");
        for (&e, msg) in edges.iter().zip(incoming) {
            self.var_to_check[e] = *msg;
        }
        let mut syndrome = BinaryVector::zeros(self.graph.m());
        syndrome.set(0, syndrome_bit);
        self.check_update(&syndrome);
        edges
            .iter()
            .map(|&e| {
                let pair = self.check_to_var[e];
                let letter = self.graph.edge_letter[e];
                let mut row = [0.0; 4];
                for (idx, &t) in LETTERS.iter().enumerate() {
                    row[idx] = if t.commutes(letter) { pair[0] } else { pair[1] };
                }
                row
            })
            .collect()
    }

    pub fn decode(
        &mut self,
        f_assumed: f64,
        syndrome: &BinaryVector,
    ) -> Result<DecodeResult<PauliVector>, DecodeError> {
        let prior = self.start(f_assumed, syndrome)?;

        let mut estimate = self.decision();
        if self.syndrome_satisfied(&estimate, syndrome) {
            return Ok(result(true, 0, estimate));
        }

        for iter in 1..=self.max_iters {
            self.check_update(syndrome);
            self.variable_update(&prior);
            estimate = self.decision();
            if self.syndrome_satisfied(&estimate, syndrome) {
                return Ok(result(true, iter, estimate));
            }
        }
        Ok(result(false, self.max_iters, estimate))
    }

    /// Run exactly `iterations` flooding rounds with no convergence exit,
    /// leaving the marginals at the BP fixed point (exact on cycle-free
    /// graphs once `iterations` covers the diameter).
    pub fn propagate(
        &mut self,
        f_assumed: f64,
        syndrome: &BinaryVector,
        iterations: usize,
    ) -> Result<(), DecodeError> {
        let prior = self.start(f_assumed, syndrome)?;
        for _ in 0..iterations {
            self.check_update(syndrome);
            self.variable_update(&prior);
        }
        Ok(())
    }

    /// Validate inputs and reset message state; returns the prior tuple.
    fn start(
        &mut self,
        f_assumed: f64,
        syndrome: &BinaryVector,
    ) -> Result<[f64; 4], DecodeError> {
        if !(0.0 < f_assumed && f_assumed < 0.75) {
            return Err(DecodeError::AssumedProbabilityOutOfRange {
                value: f_assumed,
                lo: 0.0,
                hi: 0.75,
            });
        }
        if syndrome.len() != self.graph.m() {
            return Err(DecodeError::SyndromeLengthMismatch {
                expected: self.graph.m(),
                got: syndrome.len(),
            });
        }
        // Non-identity mass f split evenly over X, Y, Z.
        let prior = [
            1.0 - f_assumed,
            f_assumed / 3.0,
            f_assumed / 3.0,
            f_assumed / 3.0,
        ];
        self.var_to_check.fill(QubitBelief::normalized(prior).0);
        self.check_to_var.fill([0.5; 2]);
        self.beliefs.fill(QubitBelief::normalized(prior));
        Ok(prior)
    }

    /// Parity convolution of the collapsed messages, constrained to the
    /// observed syndrome bit.
    fn check_update(&mut self, syndrome: &BinaryVector) {
        for c in 0..self.graph.m() {
            let edges = &self.graph.check_edges[c];
            let deg = edges.len();
            let sign = if syndrome.get(c) { -1.0 } else { 1.0 };
            // delta = P(commute) - P(anticommute) per incoming message.
            let deltas: Vec<f64> = edges
                .iter()
                .map(|&e| {
                    let msg = &self.var_to_check[e];
                    let letter = self.graph.edge_letter[e];
                    let mut comm = 0.0;
                    let mut anti = 0.0;
                    for (idx, &t) in LETTERS.iter().enumerate() {
                        if t.commutes(letter) {
                            comm += msg[idx];
                        } else {
                            anti += msg[idx];
                        }
                    }
                    comm - anti
                })
                .collect();
            let mut prefix = vec![1.0; deg + 1];
            for (k, d) in deltas.iter().enumerate() {
                prefix[k + 1] = prefix[k] * d;
            }
            let mut suffix = vec![1.0; deg + 1];
            for k in (0..deg).rev() {
                suffix[k] = suffix[k + 1] * deltas[k];
            }
            for (k, &e) in edges.iter().enumerate() {
                let others = prefix[k] * suffix[k + 1];
                let comm = 0.5 * (1.0 + sign * others);
                let anti = 0.5 * (1.0 - sign * others);
                self.check_to_var[e] = [comm.max(0.0), anti.max(0.0)];
            }
        }
    }

    /// Per-letter product of the prior with incoming check messages, with
    /// per-edge exclusion and normalization.
    fn variable_update(&mut self, prior: &[f64; 4]) {
        for v in 0..self.graph.n() {
            let start = self.graph.var_edge_start[v];
            let end = self.graph.var_edge_start[v + 1];
            let deg = end - start;

            // Lift each incoming (comm, anti) pair to the four letters.
            // lifted[k][t] for edge k.
            let mut lifted: Vec<[f64; 4]> = Vec::with_capacity(deg);
            for e in start..end {
                let pair = self.check_to_var[e];
                let letter = self.graph.edge_letter[e];
                let mut row = [0.0; 4];
                for (idx, &t) in LETTERS.iter().enumerate() {
                    row[idx] = if t.commutes(letter) { pair[0] } else { pair[1] };
                }
                lifted.push(row);
            }

            // Prefix/suffix products per letter for stable exclusion.
            let mut prefix = vec![[1.0f64; 4]; deg + 1];
            for k in 0..deg {
                for t in 0..4 {
                    prefix[k + 1][t] = prefix[k][t] * lifted[k][t];
                }
            }
            let mut suffix = vec![[1.0f64; 4]; deg + 1];
            for k in (0..deg).rev() {
                for t in 0..4 {
                    suffix[k][t] = suffix[k + 1][t] * lifted[k][t];
                }
            }

            for k in 0..deg {
                let mut out = [0.0; 4];
                for t in 0..4 {
                    out[t] = prior[t] * prefix[k][t] * suffix[k + 1][t];
                }
                self.var_to_check[start + k] = QubitBelief::normalized(out).0;
            }
            let mut total = [0.0; 4];
            for t in 0..4 {
                total[t] = prior[t] * prefix[deg][t];
            }
            self.beliefs[v] = QubitBelief::normalized(total);
        }
    }

    fn decision(&self) -> PauliVector {
        let mut e = PauliVector::identity(self.graph.n());
        for (v, b) in self.beliefs.iter().enumerate() {
            e.set(v, b.decision());
        }
        e
    }

    fn syndrome_satisfied(&self, estimate: &PauliVector, syndrome: &BinaryVector) -> bool {
        for c in 0..self.graph.m() {
            let mut parity = false;
            for (&v, &e) in self.graph.check_vars[c].iter().zip(&self.graph.check_edges[c]) {
                let letter = self.graph.edge_letter[e];
                if !estimate.get(v).commutes(letter) {
                    parity = !parity;
                }
            }
            if parity != syndrome.get(c) {
                return false;
            }
        }
        true
    }
}

fn result(converged: bool, iterations: usize, estimate: PauliVector) -> DecodeResult<PauliVector> {
    DecodeResult {
        converged,
        iterations_used: iterations,
        error_estimate: estimate,
        syndrome_matched: converged,
        logical_failure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::StabilizerCode;

    const FIVE_QUBIT: [&str; 4] = ["ZZXIX", "XZZXI", "IXZZX", "XIXZZ"];

    #[test]
    fn zero_syndrome_returns_identity_immediately() {
        let code = StabilizerCode::from_pauli_strings(&FIVE_QUBIT).unwrap();
        let graph = PauliTanner::new(&code);
        let mut dec = DepolarizingDecoder::new(&graph, 200);
        for f in [0.01, 0.1, 0.5] {
            let r = dec.decode(f, &BinaryVector::zeros(4)).unwrap();
            assert!(r.converged);
            assert_eq!(r.iterations_used, 0);
            assert!(r.error_estimate.is_identity());
        }
    }

    #[test]
    fn five_qubit_code_matches_single_x_syndrome() {
        let code = StabilizerCode::from_pauli_strings(&FIVE_QUBIT).unwrap();
        let mut e = PauliVector::identity(5);
        e.set(1, Pauli::X);
        let s = code.syndrome(&e).unwrap();
        assert_eq!(s.to_bit_string(), "1100");

        let graph = PauliTanner::new(&code);
        let mut dec = DepolarizingDecoder::new(&graph, 200);
        let r = dec.decode(0.05, &s).unwrap();
        assert!(r.converged, "expected convergence on a weight-1 syndrome");
        assert_eq!(code.syndrome(&r.error_estimate).unwrap(), s);
    }

    #[test]
    fn decoder_rejects_bad_inputs() {
        let code = StabilizerCode::from_pauli_strings(&FIVE_QUBIT).unwrap();
        let graph = PauliTanner::new(&code);
        let mut dec = DepolarizingDecoder::new(&graph, 10);
        assert!(dec.decode(0.0, &BinaryVector::zeros(4)).is_err());
        assert!(dec.decode(0.75, &BinaryVector::zeros(4)).is_err());
        assert!(dec.decode(0.1, &BinaryVector::zeros(3)).is_err());
    }

    #[test]
    fn messages_stay_normalized() {
        let code = StabilizerCode::from_pauli_strings(&FIVE_QUBIT).unwrap();
        let mut e = PauliVector::identity(5);
        e.set(3, Pauli::Y);
        let s = code.syndrome(&e).unwrap();
        let graph = PauliTanner::new(&code);
        let mut dec = DepolarizingDecoder::new(&graph, 3);
        let _ = dec.decode(0.08, &s).unwrap();
        for msg in &dec.var_to_check {
            let sum: f64 = msg.iter().sum();
            assert!((sum - 1.0).abs() < 1e-10, "qubit message sums to {sum}");
            assert!(msg.iter().all(|&p| p >= 0.0));
        }
        for pair in &dec.check_to_var {
            let sum: f64 = pair.iter().sum();
            assert!((sum - 1.0).abs() < 1e-10, "check message sums to {sum}");
        }
        for b in dec.beliefs() {
            let sum: f64 = b.0.iter().sum();
            assert!((sum - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn decision_prefers_identity_on_ties() {
        let b = QubitBelief([0.25, 0.25, 0.25, 0.25]);
        assert_eq!(b.decision(), Pauli::I);
        let b = QubitBelief([0.1, 0.4, 0.4, 0.1]);
        assert_eq!(b.decision(), Pauli::X);
    }
}
