// Copyright 2026 The qtri Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Exact amplitude simulation: diffusion, Grover iteration and Safe Grover Search.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng as _;

use crate::error::{domain, Error, Result};
use crate::math::{ceil_log2, ceil_u64, log2, pow, sqrt};
use crate::rng::Rng;
use crate::session::OracleSession;

/// Tolerance for norm preservation checks.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Complex amplitudes over an explicitly enumerated basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amp: Vec<Complex64>,
}

impl StateVector {
    /// `|index⟩`.
    pub fn basis(size: usize, index: usize) -> Result<Self> {
        if index >= size {
            return Err(Error::IndexOutOfRange { index, size });
        }
        let mut amp = vec![Complex64::new(0.0, 0.0); size];
        amp[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amp })
    }

    /// Uniform superposition over every basis state.
    pub fn uniform(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(domain("empty basis"));
        }
        let a = 1.0 / sqrt(size as f64);
        Ok(StateVector { amp: vec![Complex64::new(a, 0.0); size] })
    }

    /// Uniform superposition over `support`, zero elsewhere.
    pub fn uniform_over(size: usize, support: &[usize]) -> Result<Self> {
        if support.is_empty() {
            return Err(domain("empty support"));
        }
        let a = 1.0 / sqrt(support.len() as f64);
        let mut amp = vec![Complex64::new(0.0, 0.0); size];
        for &i in support {
            if i >= size {
                return Err(Error::IndexOutOfRange { index: i, size });
            }
            amp[i] = Complex64::new(a, 0.0);
        }
        Ok(StateVector { amp })
    }

    /// Normalizes the given amplitudes.
    pub fn from_amplitudes(mut amp: Vec<Complex64>) -> Result<Self> {
        let norm = sqrt(amp.iter().map(|a| a.norm_sqr()).sum::<f64>());
        if norm.is_nan() || norm <= 0.0 {
            return Err(domain("zero vector"));
        }
        for a in &mut amp {
            *a /= norm;
        }
        Ok(StateVector { amp })
    }

    pub fn len(&self) -> usize {
        self.amp.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amp.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amp
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.amp.iter().map(|a| a.norm_sqr()).sum::<f64>())
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amp[index].norm_sqr()
    }

    /// Total measurement probability of the indices selected by `pred`.
    pub fn probability_where(&self, mut pred: impl FnMut(usize) -> bool) -> f64 {
        self.amp.iter().enumerate().filter(|(i, _)| pred(*i)).map(|(_, a)| a.norm_sqr()).sum()
    }

    /// Diffusion over `subset`: `|x⟩ ↦ −|x⟩ + (2/|T|) Σ_{y∈T} |y⟩` on `span(T)`,
    /// identity elsewhere. Equivalently each amplitude in `T` is reflected about the mean.
    pub fn diffuse(&mut self, subset: &[usize]) -> Result<()> {
        if subset.is_empty() {
            return Err(domain("diffusion over an empty set"));
        }
        for &i in subset {
            if i >= self.amp.len() {
                return Err(Error::IndexOutOfRange { index: i, size: self.amp.len() });
            }
        }
        self.diffuse_unchecked(subset.iter().copied());
        Ok(())
    }

    /// Diffusion over the contiguous block `start..start + len`.
    pub fn diffuse_block(&mut self, start: usize, len: usize) {
        let block = &mut self.amp[start..start + len];
        let mean = block.iter().sum::<Complex64>() / len as f64;
        for a in block {
            *a = mean * 2.0 - *a;
        }
    }

    fn diffuse_unchecked(&mut self, subset: impl Iterator<Item = usize> + Clone) {
        let count = subset.clone().count() as f64;
        let mean = subset.clone().map(|i| self.amp[i]).sum::<Complex64>() / count;
        for i in subset {
            self.amp[i] = mean * 2.0 - self.amp[i];
        }
    }

    /// Oracle phase flip `|x⟩ ↦ −|x⟩` on the indices selected by `marked`.
    pub fn phase_flip(&mut self, mut marked: impl FnMut(usize) -> bool) {
        for (i, a) in self.amp.iter_mut().enumerate() {
            if marked(i) {
                *a = -*a;
            }
        }
    }

    /// Draws a basis index with probability `|amp|²`.
    pub fn sample(&self, rng: &mut Rng) -> usize {
        let total: f64 = self.amp.iter().map(|a| a.norm_sqr()).sum();
        let mut u = rng.gen::<f64>() * total;
        for (i, a) in self.amp.iter().enumerate() {
            u -= a.norm_sqr();
            if u < 0.0 {
                return i;
            }
        }
        self.amp.len() - 1
    }
}

/// Functional form of [`StateVector::diffuse`].
pub fn diffusion(state: &StateVector, subset: &[usize]) -> Result<StateVector> {
    let mut out = state.clone();
    out.diffuse(subset)?;
    Ok(out)
}

/// One Grover search setting: domain size, marked items, iteration count and
/// the Safe Grover safety parameter `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroverParams {
    pub domain_size: usize,
    pub marked: Vec<usize>,
    pub iterations: u64,
    pub safety: f64,
}

impl GroverParams {
    pub fn validate(&self) -> Result<()> {
        if self.domain_size == 0 {
            return Err(domain("empty Grover domain"));
        }
        if let Some(&bad) = self.marked.iter().find(|&&i| i >= self.domain_size) {
            return Err(Error::IndexOutOfRange { index: bad, size: self.domain_size });
        }
        if self.safety.is_nan() || self.safety <= 0.0 {
            return Err(domain("Safe Grover safety parameter must be positive"));
        }
        Ok(())
    }

    /// State after `iterations` Grover iterations from the uniform start.
    pub fn evolve(&self) -> Result<StateVector> {
        self.validate()?;
        let mut is_marked = vec![false; self.domain_size];
        for &i in &self.marked {
            is_marked[i] = true;
        }
        let mut state = StateVector::uniform(self.domain_size)?;
        for _ in 0..self.iterations {
            grover_iteration(&mut state, &is_marked);
        }
        Ok(state)
    }
}

fn grover_iteration(state: &mut StateVector, is_marked: &[bool]) {
    state.phase_flip(|i| is_marked[i]);
    let n = state.len();
    state.diffuse_block(0, n);
}

/// Probability of measuring a marked item after `j` Grover iterations over `N`
/// items with the first `m` marked, by direct simulation.
pub fn grover_success_prob(domain_size: usize, marked: usize, iterations: u64) -> Result<f64> {
    if domain_size == 0 {
        return Err(domain("empty Grover domain"));
    }
    if marked > domain_size {
        return Err(domain(format!("{marked} marked items exceed domain size {domain_size}")));
    }
    if marked == 0 {
        return Ok(0.0);
    }
    let params = GroverParams {
        domain_size,
        marked: (0..marked).collect(),
        iterations,
        safety: 1.0,
    };
    let state = params.evolve()?;
    Ok(state.probability_where(|i| i < marked))
}

/// Iteration counts tried by one Safe Grover round over `N` items: zero, then
/// `⌈(π/4)·√(N/m̂)⌉` for the guesses `m̂ = 2^i ≤ N`, largest guess first.
///
/// Some count in the list lands within a factor two of the unknown marked
/// count, which keeps the round's failure probability at most one half for
/// every `1 ≤ m ≤ N` (checked exhaustively in the tests).
pub fn round_schedule(domain_size: usize) -> Vec<u64> {
    let mut js = vec![0u64];
    let mut guess = 1usize << (usize::BITS - 1 - domain_size.leading_zeros());
    loop {
        let j = ceil_u64(core::f64::consts::FRAC_PI_4 * sqrt(domain_size as f64 / guess as f64));
        if !js.contains(&j) {
            js.push(j);
        }
        if guess == 1 {
            break;
        }
        guess /= 2;
    }
    js
}

/// Number of Safe Grover rounds for safety `c`: `max(1, ⌈c·log₂ N⌉)`.
pub fn safe_rounds(domain_size: usize, c: f64) -> u64 {
    ceil_u64(c * log2(domain_size as f64)).max(1)
}

/// Safe Grover Search with amplitudes simulated exactly.
///
/// `predicate` decides markedness through oracle probes on the session it is
/// handed. One oracle application in superposition costs as many queries as the
/// predicate's most expensive classical evaluation; the measured candidate is
/// then re-checked with real probes, so an unmarked item is never returned.
/// Returns the index into `domain` of a verified marked item, or `None`.
pub fn safe_grover_exact<I: ?Sized, T, P>(
    session: &mut OracleSession<'_, I>,
    domain_items: &[T],
    mut predicate: P,
    c: f64,
) -> Result<Option<usize>>
where
    P: FnMut(&mut OracleSession<'_, I>, &T) -> Result<bool>,
{
    if domain_items.is_empty() {
        return Err(domain("Safe Grover Search over an empty domain"));
    }
    if c.is_nan() || c <= 0.0 {
        return Err(domain("Safe Grover safety parameter must be positive"));
    }
    let size = domain_items.len();
    // Tabulate the phase oracle on fresh meters.
    let mut is_marked = Vec::with_capacity(size);
    let mut oracle_cost = 0u64;
    for item in domain_items {
        let mut scratch = session.scratch();
        is_marked.push(predicate(&mut scratch, item)?);
        oracle_cost = oracle_cost.max(scratch.exact_queries());
    }
    let schedule = round_schedule(size);
    for _ in 0..safe_rounds(size, c) {
        for &iterations in &schedule {
            let mut state = StateVector::uniform(size)?;
            for _ in 0..iterations {
                grover_iteration(&mut state, &is_marked);
            }
            session.add_exact_queries(iterations * oracle_cost);
            let candidate = state.sample(session.rng());
            if predicate(session, &domain_items[candidate])? {
                return Ok(Some(candidate));
            }
        }
    }
    Ok(None)
}

/// Query charge of Safe Grover Search over `N` items: `⌈c·√N·log₂(max(N, 2))⌉`.
pub fn grover_charge(domain_size: u64, c: f64) -> u64 {
    let n = domain_size as f64;
    ceil_u64(c * sqrt(n) * log2(n.max(2.0)))
}

/// Success probability granted to a charged Safe Grover Search with at least
/// one marked item: `1 − max(N, 2)^{−c}`.
pub fn charged_success_probability(domain_size: u64, c: f64) -> f64 {
    1.0 - pow((domain_size as f64).max(2.0), -c)
}

/// Safe Grover Search in the cost model.
///
/// Charges [`grover_charge`] under `label`, then resolves the search
/// classically: with no marked item it rejects; otherwise it returns a uniform
/// rank in `0..marked_count` with probability [`charged_success_probability`].
/// The caller maps the rank to its marked item.
pub fn safe_grover_charged<I: ?Sized>(
    session: &mut OracleSession<'_, I>,
    label: impl Into<String>,
    domain_size: u64,
    marked_count: u64,
    c: f64,
) -> Result<Option<u64>> {
    if domain_size == 0 {
        return Err(domain("Safe Grover Search over an empty domain"));
    }
    if marked_count > domain_size {
        return Err(domain("more marked items than domain items"));
    }
    session.charge(label, grover_charge(domain_size, c));
    if marked_count == 0 {
        return Ok(None);
    }
    let rng = session.rng();
    if !rng.gen_bool(charged_success_probability(domain_size, c)) {
        return Ok(None);
    }
    Ok(Some(rng.gen_range(0..marked_count)))
}

/// `⌈log₂ n⌉` clamped to at least one, the explicit log factor of charged formulas.
pub fn log_factor(n: u64) -> u64 {
    ceil_log2(n.max(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::rng::seeded;

    #[test]
    fn diffusion_small_cases() {
        let mut s = StateVector::basis(3, 1).unwrap();
        s.diffuse(&[1]).unwrap();
        assert_eq!(s, StateVector::basis(3, 1).unwrap());

        let mut s = StateVector::basis(2, 0).unwrap();
        s.diffuse(&[0, 1]).unwrap();
        assert!((s.probability(1) - 1.0).abs() < 1e-12);
        assert!(s.probability(0) < 1e-24);

        assert!(StateVector::basis(2, 0).unwrap().diffuse(&[]).is_err());
        assert!(StateVector::basis(2, 0).unwrap().diffuse(&[2]).is_err());
    }

    #[test]
    fn diffusion_leaves_outside_untouched() {
        let amp = (0..6).map(|i| Complex64::new(i as f64, 1.0)).collect();
        let s = StateVector::from_amplitudes(amp).unwrap();
        let d = diffusion(&s, &[1, 3, 4]).unwrap();
        for i in [0, 2, 5] {
            assert_eq!(d.amplitudes()[i], s.amplitudes()[i]);
        }
        assert!((d.norm() - 1.0).abs() < NORM_TOLERANCE);
    }

    #[test]
    fn grover_examples() {
        assert!((grover_success_prob(4, 1, 1).unwrap() - 1.0).abs() < 1e-9);
        assert!((grover_success_prob(2, 1, 0).unwrap() - 0.5).abs() < 1e-12);
        assert!((grover_success_prob(4, 4, 0).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(grover_success_prob(8, 0, 3).unwrap(), 0.0);
        assert!(grover_success_prob(4, 5, 0).is_err());
    }

    /// Exhaustive check that one round of the schedule fails with probability
    /// at most 1/2, using the closed form `sin²((2j+1)θ)`.
    #[test]
    fn round_failure_at_most_half() {
        for n in 1..=512usize {
            let schedule = round_schedule(n);
            for m in 1..=n {
                let theta = libm::asin(sqrt(m as f64 / n as f64));
                let fail: f64 = schedule
                    .iter()
                    .map(|&j| 1.0 - libm::pow(libm::sin((2 * j + 1) as f64 * theta), 2.0))
                    .product();
                assert!(fail <= 0.45, "N={n} m={m} fail={fail}");
            }
        }
    }

    #[test]
    fn schedules() {
        assert_eq!(round_schedule(1), vec![0, 1]);
        assert_eq!(round_schedule(4), vec![0, 1, 2]);
        assert_eq!(safe_rounds(4, 2.0), 4);
        assert_eq!(safe_rounds(1, 2.0), 1);
    }

    fn edge_predicate(s: &mut OracleSession<'_, Graph>, pair: &(usize, usize)) -> Result<bool> {
        s.query_edge(pair.0, pair.1)
    }

    #[test]
    fn safe_grover_exact_behaviour() {
        // Four candidate pairs, exactly one an edge.
        let g = Graph::from_edges(5, &[(2, 3)]).unwrap();
        let domain = [(1, 2), (2, 3), (3, 4), (4, 5)];
        let mut hits = 0;
        for seed in 0..200 {
            let mut s = OracleSession::new(&g, seed);
            if let Some(i) = safe_grover_exact(&mut s, &domain, edge_predicate, 2.0).unwrap() {
                assert_eq!(domain[i], (2, 3));
                hits += 1;
            }
            assert!(s.exact_queries() > 0);
        }
        assert!(hits as f64 / 200.0 >= 1.0 - 1.0 / 16.0);

        let empty = Graph::empty(5);
        for seed in 0..50 {
            let mut s = OracleSession::new(&empty, seed);
            assert_eq!(safe_grover_exact(&mut s, &domain, edge_predicate, 2.0).unwrap(), None);
        }

        let full = Graph::complete(5);
        let mut s = OracleSession::new(&full, 3);
        let i = safe_grover_exact(&mut s, &domain, edge_predicate, 1.0).unwrap().unwrap();
        assert!(full.contains(domain[i].0, domain[i].1));
    }

    #[test]
    fn safe_grover_exact_is_reproducible() {
        let g = Graph::from_edges(6, &[(1, 2), (5, 6)]).unwrap();
        let domain: Vec<(usize, usize)> = g.threshold_graph(6);
        let run = |seed| {
            let mut s = OracleSession::new(&g, seed);
            let r = safe_grover_exact(&mut s, &domain, edge_predicate, 1.5).unwrap();
            (r, s.exact_queries())
        };
        assert_eq!(run(11), run(11));
    }

    #[test]
    fn charged_examples() {
        let g = Graph::empty(3);
        let mut s = OracleSession::new(&g, 0);
        let r = safe_grover_charged(&mut s, "grover", 1024, 5, 3.0).unwrap();
        assert_eq!(s.ledger().total(), 960);
        assert!(r.unwrap() < 5);

        let mut s = OracleSession::new(&g, 0);
        assert_eq!(safe_grover_charged(&mut s, "grover", 1024, 0, 3.0).unwrap(), None);
        assert_eq!(s.ledger().total(), 960);

        let run = |seed| {
            let mut s = OracleSession::new(&g, seed);
            let r = safe_grover_charged(&mut s, "grover", 77, 9, 1.0).unwrap();
            (r, s.into_ledger())
        };
        assert_eq!(run(5), run(5));
        assert_eq!(grover_charge(1, 1.0), 1);
    }

    #[test]
    fn sampling_follows_born_rule() {
        let s = StateVector::from_amplitudes(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 3f64.sqrt()),
        ])
        .unwrap();
        let mut rng = seeded(1, 0);
        let hits = (0..4000).filter(|_| s.sample(&mut rng) == 2).count();
        assert!((hits as f64 / 4000.0 - 0.75).abs() < 0.03);
        assert!((0..100).all(|_| s.sample(&mut rng) != 1));
    }
}
