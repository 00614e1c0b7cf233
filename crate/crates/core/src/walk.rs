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

//! Exact simulation of the set walk on `(A, x)` pairs and of the generic
//! collision-finding algorithm built on it.
//!
//! The ground set is `S = {0, …, n-1}`. Legal basis states are `(A, x)` with
//! `|A| = r, x ∉ A` (the *lower* sector) or `|A| = r + 1, x ∈ A` (the *upper*
//! sector). The data register is never simulated: it is a function of `A`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::statevector::StateVector;
use crate::subsets::{binomial, nth_member, nth_non_member, position_in, position_outside, rank, unrank};

/// Largest ground set simulated exactly.
pub const MAX_WALK_N: u32 = 20;

/// Index maps for the legal `(A, x)` pairs.
///
/// Lower states come first, grouped by colex rank of `A` with the coin
/// ordered among `S − A`; upper states follow, grouped likewise with the coin
/// ordered among `A`. Each coin diffusion is therefore a contiguous block.
#[derive(Clone, Debug)]
pub struct WalkBasis {
    n: u32,
    r: u32,
    lower: usize,
    upper: usize,
}

impl WalkBasis {
    pub fn new(n: u32, r: u32) -> Result<Self> {
        if r == 0 || r + 1 > n {
            return Err(domain(alloc::format!("set walk needs 0 < r < n, got n={n}, r={r}")));
        }
        if n > MAX_WALK_N {
            return Err(domain(alloc::format!("exact walk limited to n ≤ {MAX_WALK_N}")));
        }
        let lower = binomial(n as u64, r as u64) as usize * (n - r) as usize;
        let upper = binomial(n as u64, r as u64 + 1) as usize * (r + 1) as usize;
        Ok(WalkBasis { n, r, lower, upper })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn size(&self) -> usize {
        self.lower + self.upper
    }

    /// Number of lower-sector states, `C(n, r)·(n − r)`.
    pub fn lower_size(&self) -> usize {
        self.lower
    }

    pub fn encode(&self, set: u64, x: u32) -> Result<usize> {
        let universe = (1u64 << self.n) - 1;
        if set & !universe != 0 || x >= self.n {
            return Err(domain("pair outside the ground set"));
        }
        let size = set.count_ones();
        let inside = set >> x & 1 == 1;
        if size == self.r && !inside {
            Ok(rank(set) as usize * (self.n - self.r) as usize + position_outside(set, x))
        } else if size == self.r + 1 && inside {
            Ok(self.lower + rank(set) as usize * (self.r + 1) as usize + position_in(set, x))
        } else {
            Err(domain("illegal (A, x) pair"))
        }
    }

    pub fn decode(&self, index: usize) -> Result<(u64, u32)> {
        if index < self.lower {
            let width = (self.n - self.r) as usize;
            let set = unrank((index / width) as u64, self.r);
            Ok((set, nth_non_member(set, self.n, index % width)))
        } else if index < self.size() {
            let width = (self.r + 1) as usize;
            let local = index - self.lower;
            let set = unrank((local / width) as u64, self.r + 1);
            Ok((set, nth_member(set, local % width)))
        } else {
            Err(Error::IndexOutOfRange { index, size: self.size() })
        }
    }
}

/// A walk with its permutation tables precomputed.
#[derive(Clone, Debug)]
pub struct SetWalk {
    basis: WalkBasis,
    /// Set register of every basis index.
    sets: Vec<u64>,
    /// Partner under `(A, x) ↔ (A ∪ {x}, x)`.
    partner: Vec<usize>,
}

impl SetWalk {
    pub fn new(n: u32, r: u32) -> Result<Self> {
        let basis = WalkBasis::new(n, r)?;
        let size = basis.size();
        let mut sets = vec![0u64; size];
        let mut partner = vec![0usize; size];
        for i in 0..basis.lower {
            let (set, x) = basis.decode(i)?;
            let j = basis.encode(set | 1 << x, x)?;
            sets[i] = set;
            sets[j] = set | 1 << x;
            partner[i] = j;
            partner[j] = i;
        }
        Ok(SetWalk { basis, sets, partner })
    }

    pub fn basis(&self) -> &WalkBasis {
        &self.basis
    }

    pub fn set_of(&self, index: usize) -> u64 {
        self.sets[index]
    }

    /// Uniform superposition over the lower sector: uniform `A` with uniform coin over `S − A`.
    pub fn initial_state(&self) -> StateVector {
        let support: Vec<usize> = (0..self.basis.lower).collect();
        StateVector::uniform_over(self.basis.size(), &support).expect("nonempty lower sector")
    }

    /// One walk step: diffuse the coin over `S − A`, add `x` to `A`, diffuse the
    /// coin over `A`, remove `x` from `A`.
    ///
    /// The insert and remove moves are the same involution `(A, x) ↔ (A ∪ {x}, x)`
    /// on the legal basis, so the step is unitary on the whole space and maps
    /// the lower sector onto itself.
    pub fn step(&self, state: &mut StateVector) -> Result<()> {
        if state.len() != self.basis.size() {
            return Err(domain("state does not live on this walk basis"));
        }
        let (n, r) = (self.basis.n as usize, self.basis.r as usize);
        let lower_width = n - r;
        for start in (0..self.basis.lower).step_by(lower_width) {
            state.diffuse_block(start, lower_width);
        }
        self.swap_sectors(state);
        for start in (self.basis.lower..self.basis.size()).step_by(r + 1) {
            state.diffuse_block(start, r + 1);
        }
        self.swap_sectors(state);
        Ok(())
    }

    fn swap_sectors(&self, state: &mut StateVector) {
        let amp = state.amplitudes_mut();
        for i in 0..self.basis.lower {
            amp.swap(i, self.partner[i]);
        }
    }
}

/// Functional walk step on a state over `walk`'s basis.
pub fn walk_step(walk: &SetWalk, state: &StateVector) -> Result<StateVector> {
    let mut out = state.clone();
    walk.step(&mut out)?;
    Ok(out)
}

/// A collision problem small enough for exact simulation.
///
/// `collisions` lists the members of `𝒞` as element sets (bit masks over `S`).
/// `A` is marked iff it contains one of them, which is decidable from `f`
/// restricted to `A`; the witness extracted from a marked `A` is the first
/// listed collision it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCollisionInstance {
    n: u32,
    arity: u32,
    collisions: Vec<u64>,
}

impl ExactCollisionInstance {
    /// Element distinctness: `{u, v}` collides iff `u ≠ v` and `f(u) = f(v)`.
    pub fn element_distinctness(values: &[u64]) -> Result<Self> {
        let n = values.len() as u32;
        let mut collisions = Vec::new();
        for u in 0..values.len() {
            for v in u + 1..values.len() {
                if values[u] == values[v] {
                    collisions.push(1u64 << u | 1u64 << v);
                }
            }
        }
        Self::new(n, 2, collisions)
    }

    pub fn new(n: u32, arity: u32, collisions: Vec<u64>) -> Result<Self> {
        if n == 0 || n > MAX_WALK_N {
            return Err(domain(alloc::format!("exact instances need 1 ≤ n ≤ {MAX_WALK_N}")));
        }
        if arity == 0 {
            return Err(domain("collision arity must be positive"));
        }
        let universe = (1u64 << n) - 1;
        for &c in &collisions {
            if c & !universe != 0 || c.count_ones() == 0 || c.count_ones() > arity {
                return Err(domain("collision is not a subset of S of size ≤ k"));
            }
        }
        Ok(ExactCollisionInstance { n, arity, collisions })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn collisions(&self) -> &[u64] {
        &self.collisions
    }

    /// `Φ`: the first collision inside `set`, if any.
    pub fn witness(&self, set: u64) -> Option<usize> {
        self.collisions.iter().position(|&c| c & set == c)
    }

    pub fn is_marked(&self, set: u64) -> bool {
        self.witness(set).is_some()
    }
}

/// Result of one exact generic-algorithm evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactOutcome {
    /// Probability that measuring the set register yields a marked `A`.
    pub success_probability: f64,
    /// `(collision index, conditional probability)` for every witness with positive mass.
    pub witnesses: Vec<(usize, f64)>,
    /// Norm of the final state, for unitarity checks.
    pub final_norm: f64,
}

/// Exact evaluator for the generic algorithm on one instance and set size.
pub struct GenericExact<'a> {
    instance: &'a ExactCollisionInstance,
    walk: SetWalk,
    marked: Vec<bool>,
    witness_of: Vec<Option<usize>>,
}

impl<'a> GenericExact<'a> {
    pub fn new(instance: &'a ExactCollisionInstance, r: u32) -> Result<Self> {
        if r < instance.arity {
            return Err(domain(alloc::format!(
                "r = {r} is below the arity k = {}: no r-set can certify a collision",
                instance.arity
            )));
        }
        let walk = SetWalk::new(instance.n, r)?;
        let witness_of: Vec<Option<usize>> =
            (0..walk.basis().size()).map(|i| instance.witness(walk.set_of(i))).collect();
        let marked = witness_of.iter().map(Option::is_some).collect();
        Ok(GenericExact { instance, walk, marked, witness_of })
    }

    pub fn walk(&self) -> &SetWalk {
        &self.walk
    }

    /// One outer iteration: phase flip on marked `A`, then `walk_steps` walk steps.
    pub fn iterate(&self, state: &mut StateVector, walk_steps: u32) -> Result<()> {
        state.phase_flip(|i| self.marked[i]);
        for _ in 0..walk_steps {
            self.walk.step(state)?;
        }
        Ok(())
    }

    pub fn measure(&self, state: &StateVector) -> ExactOutcome {
        let mut mass = vec![0.0; self.instance.collisions.len()];
        let mut success = 0.0;
        for (i, w) in self.witness_of.iter().enumerate() {
            if let Some(c) = w {
                let p = state.probability(i);
                mass[*c] += p;
                success += p;
            }
        }
        let witnesses = if success > 0.0 {
            mass.iter()
                .enumerate()
                .filter(|(_, &p)| p > 0.0)
                .map(|(c, &p)| (c, p / success))
                .collect()
        } else {
            Vec::new()
        };
        ExactOutcome { success_probability: success, witnesses, final_norm: state.norm() }
    }

    pub fn run(&self, outer: u32, walk_steps: u32) -> Result<ExactOutcome> {
        let mut state = self.walk.initial_state();
        for _ in 0..outer {
            self.iterate(&mut state, walk_steps)?;
        }
        Ok(self.measure(&state))
    }

    /// Outcomes after each of `1..=outer_max` outer iterations with `walk_steps` steps each.
    pub fn trajectory(&self, outer_max: u32, walk_steps: u32) -> Result<Vec<ExactOutcome>> {
        let mut state = self.walk.initial_state();
        let mut out = Vec::with_capacity(outer_max as usize);
        for _ in 0..outer_max {
            self.iterate(&mut state, walk_steps)?;
            out.push(self.measure(&state));
        }
        Ok(out)
    }

    /// Success probability on the grid `outer ∈ 1..=outer_max`,
    /// `walk_steps ∈ 1..=steps_max`, as `(outer, walk_steps, outcome)` rows.
    pub fn sweep(&self, outer_max: u32, steps_max: u32) -> Result<Vec<(u32, u32, ExactOutcome)>> {
        let mut rows = Vec::new();
        for steps in 1..=steps_max {
            for (i, out) in self.trajectory(outer_max, steps)?.into_iter().enumerate() {
                rows.push((i as u32 + 1, steps, out));
            }
        }
        rows.sort_by_key(|(o, s, _)| (*o, *s));
        Ok(rows)
    }
}

/// Generic algorithm, exactly: start uniform on the lower sector, repeat
/// `outer` times [phase flip on marked `A`, `walk_steps` walk steps], then
/// measure the set register.
pub fn generic_exact(
    instance: &ExactCollisionInstance,
    r: u32,
    outer: u32,
    walk_steps: u32,
) -> Result<ExactOutcome> {
    GenericExact::new(instance, r)?.run(outer, walk_steps)
}
