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

//! The collision framework at cost-model scale: database cost functions, the
//! charged generic algorithm, and random restriction to a unique collision.

use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::graph::{Graph, SparseGraph, Vertex};
use crate::math::{ceil_u64, log2, pow, sqrt};
use crate::rng::mix64;
use crate::session::OracleSession;

/// One multiplicative factor of a cost function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Factor {
    /// `n^e`.
    N(f64),
    /// `r^e`.
    R(f64),
    /// `log₂ n`.
    Log2N,
}

impl Factor {
    fn value(self, n: f64, r: f64) -> f64 {
        match self {
            Factor::N(e) => pow(n, e),
            Factor::R(e) => pow(r, e),
            Factor::Log2N => log2(n),
        }
    }

    fn exponent(self, rho: f64) -> f64 {
        match self {
            Factor::N(e) => e,
            Factor::R(e) => rho * e,
            Factor::Log2N => 0.0,
        }
    }
}

/// A cost function of `(n, r)`: zero, or a product of [`Factor`]s.
///
/// The charged value ceilings each factor separately, so `√n·r^{2/3}·log₂ n`
/// charges `⌈√n⌉·⌈r^{2/3}⌉·⌈log₂ n⌉`.
#[derive(Clone, Debug, PartialEq)]
pub enum CostFn {
    Zero,
    Product(Vec<Factor>),
}

impl CostFn {
    pub fn one() -> Self {
        CostFn::Product(Vec::new())
    }

    pub fn r_pow(e: f64) -> Self {
        CostFn::Product(alloc::vec![Factor::R(e)])
    }

    pub fn value(&self, n: u64, r: u64) -> f64 {
        match self {
            CostFn::Zero => 0.0,
            CostFn::Product(fs) => fs.iter().map(|f| f.value(n as f64, r as f64)).product(),
        }
    }

    pub fn charge(&self, n: u64, r: u64) -> u64 {
        match self {
            CostFn::Zero => 0,
            CostFn::Product(fs) => fs
                .iter()
                .map(|f| ceil_u64(f.value(n as f64, r as f64)))
                .fold(1u64, u64::saturating_mul),
        }
    }

    /// Polynomial exponent in `n` when `r = n^ρ`; logs count as exponent zero.
    pub fn exponent(&self, rho: f64) -> f64 {
        match self {
            CostFn::Zero => f64::NEG_INFINITY,
            CostFn::Product(fs) => fs.iter().map(|f| f.exponent(rho)).sum(),
        }
    }

    fn nondecreasing_in_r(&self) -> bool {
        match self {
            CostFn::Zero => true,
            CostFn::Product(fs) => fs.iter().all(|f| !matches!(f, Factor::R(e) if *e < 0.0)),
        }
    }
}

/// Setup, update and checking costs `s(r)`, `u(r)`, `c(r)` of a database.
#[derive(Clone, Debug, PartialEq)]
pub struct DatabaseModel {
    pub name: &'static str,
    pub setup: CostFn,
    pub update: CostFn,
    pub check: CostFn,
}

impl DatabaseModel {
    pub fn new(name: &'static str, setup: CostFn, update: CostFn, check: CostFn) -> Result<Self> {
        if ![&setup, &update, &check].iter().all(|c| c.nondecreasing_in_r()) {
            return Err(domain("database costs must be nondecreasing in r"));
        }
        Ok(DatabaseModel { name, setup, update, check })
    }

    /// Element distinctness: `s = r`, `u = 1`, `c = 0`.
    pub fn element_distinctness() -> Self {
        DatabaseModel {
            name: "element-distinctness",
            setup: CostFn::r_pow(1.0),
            update: CostFn::one(),
            check: CostFn::Zero,
        }
    }

    /// Graph collision: the values of `f` on `A` form the database, as for element distinctness.
    pub fn graph_collision() -> Self {
        DatabaseModel { name: "graph-collision", ..Self::element_distinctness() }
    }

    /// Triangle with `D(U) = G|_U`: `s = r²`, `u = r`, `c = √n·r^{2/3}`.
    pub fn triangle() -> Self {
        DatabaseModel {
            name: "triangle",
            setup: CostFn::r_pow(2.0),
            update: CostFn::r_pow(1.0),
            check: CostFn::Product(alloc::vec![Factor::N(0.5), Factor::R(2.0 / 3.0)]),
        }
    }

    /// [`DatabaseModel::triangle`] with the checking procedure's log factor made explicit.
    pub fn walk_triangle() -> Self {
        DatabaseModel {
            name: "walk-triangle",
            check: CostFn::Product(alloc::vec![Factor::N(0.5), Factor::R(2.0 / 3.0), Factor::Log2N]),
            ..Self::triangle()
        }
    }

    /// Copy of a pattern whose distinguished vertex has degree `d`:
    /// `s = r²`, `u = r`, `c = √n·r^{d/(d+1)}·log₂ n`.
    pub fn h_copy(d: u32) -> Self {
        let e = d as f64 / (d as f64 + 1.0);
        DatabaseModel {
            name: "h-copy",
            setup: CostFn::r_pow(2.0),
            update: CostFn::r_pow(1.0),
            check: CostFn::Product(alloc::vec![Factor::N(0.5), Factor::R(e), Factor::Log2N]),
        }
    }
}

fn check_r(n: u64, r: u64) -> Result<()> {
    if r == 0 || r >= n {
        return Err(domain(alloc::format!("set size must satisfy 1 ≤ r < n, got r={r}, n={n}")));
    }
    Ok(())
}

/// `s(r) + (n/r)^{k/2}·(c(r) + √r·u(r))`.
pub fn generic_cost(n: u64, k: u32, r: u64, db: &DatabaseModel) -> Result<f64> {
    check_r(n, r)?;
    let rounds = pow(n as f64 / r as f64, k as f64 / 2.0);
    Ok(db.setup.value(n, r) + rounds * (db.check.value(n, r) + sqrt(r as f64) * db.update.value(n, r)))
}

/// Number of charged rounds, `⌈(n/r)^{k/2}⌉`.
pub fn generic_rounds(n: u64, k: u32, r: u64) -> u64 {
    ceil_u64(pow(n as f64 / r as f64, k as f64 / 2.0))
}

/// Charge of one round, `c(r) + ⌈√r⌉·u(r)` with every factor ceilinged.
pub fn generic_round_charge(n: u64, r: u64, db: &DatabaseModel) -> u64 {
    db.check.charge(n, r) + ceil_u64(sqrt(r as f64)).saturating_mul(db.update.charge(n, r))
}

/// Integer form of [`generic_cost`]: `s(r) + ⌈(n/r)^{k/2}⌉·(c(r) + ⌈√r⌉·u(r))`.
pub fn generic_charge(n: u64, k: u32, r: u64, db: &DatabaseModel) -> Result<u64> {
    check_r(n, r)?;
    Ok(db.setup.charge(n, r) + generic_rounds(n, k, r).saturating_mul(generic_round_charge(n, r, db)))
}

/// Polynomial exponent of [`generic_cost`] at `r = n^ρ`, the maximum over its three terms.
pub fn cost_exponent(db: &DatabaseModel, k: u32, rho: f64) -> f64 {
    let rounds = (1.0 - rho) * k as f64 / 2.0;
    let setup = db.setup.exponent(rho);
    let check = rounds + db.check.exponent(rho);
    let update = rounds + rho / 2.0 + db.update.exponent(rho);
    setup.max(check).max(update)
}

/// Minimizes [`cost_exponent`] over `ρ ∈ [0, 1]`; returns `(ρ*, exponent)`.
///
/// The exponent is a maximum of affine functions of `ρ`, hence convex, and a
/// ternary search converges to the minimum.
pub fn optimal_exponent(db: &DatabaseModel, k: u32) -> (f64, f64) {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let a = lo + (hi - lo) / 3.0;
        let b = hi - (hi - lo) / 3.0;
        if cost_exponent(db, k, a) <= cost_exponent(db, k, b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let rho = (lo + hi) / 2.0;
    (rho, cost_exponent(db, k, rho))
}

/// The collision set `𝒞` of a reference input, as sorted `k`-element tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionSet {
    n: u64,
    arity: usize,
    flat: Vec<u32>,
}

impl CollisionSet {
    /// Builds `𝒞` from tuples over a ground set of size `n`. Each tuple is
    /// sorted; duplicate tuples are merged.
    pub fn from_tuples(n: u64, arity: usize, tuples: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        if arity == 0 {
            return Err(domain("collision arity must be positive"));
        }
        let mut all: Vec<Vec<u32>> = Vec::new();
        for mut t in tuples {
            if t.len() != arity {
                return Err(domain("tuple length differs from the arity"));
            }
            t.sort_unstable();
            all.push(t);
        }
        all.sort_unstable();
        all.dedup();
        Ok(CollisionSet { n, arity, flat: all.concat() })
    }

    /// Builds a pair relation; pairs are normalized to `a < b`, sorted and deduplicated.
    pub fn from_pairs(n: u64, mut pairs: Vec<[u32; 2]>) -> Self {
        for p in pairs.iter_mut() {
            p.sort_unstable();
        }
        pairs.sort_unstable();
        pairs.dedup();
        CollisionSet { n, arity: 2, flat: pairs.concat() }
    }

    /// Pairs `{u, v}` (0-based) with `f(u) = f(v)`.
    pub fn element_distinctness(values: &[u64]) -> Self {
        let mut order: Vec<u32> = (0..values.len() as u32).collect();
        order.sort_by_key(|&i| (values[i as usize], i));
        let mut pairs = Vec::new();
        let mut start = 0;
        while start < order.len() {
            let mut end = start + 1;
            while end < order.len() && values[order[end] as usize] == values[order[start] as usize] {
                end += 1;
            }
            for a in start..end {
                for b in a + 1..end {
                    pairs.push([order[a], order[b]]);
                }
            }
            start = end;
        }
        Self::from_pairs(values.len() as u64, pairs)
    }

    /// Edges `{u, v}` of the known graph with `f(u) = f(v) = 1`.
    pub fn graph_collision(known: &SparseGraph, f: &[bool]) -> Self {
        let pairs = known
            .edges()
            .filter(|&(a, b)| f[a] && f[b])
            .map(|(a, b)| [a as u32, b as u32])
            .collect();
        Self::from_pairs(known.n() as u64, pairs)
    }

    /// Edges of `g` that lie in at least one triangle.
    pub fn triangle_edges(g: &Graph) -> Self {
        let pairs = g
            .edges()
            .filter(|&(a, b)| g.first_common_neighbor(a, b).is_some())
            .map(|(a, b)| [a as u32, b as u32])
            .collect();
        Self::from_pairs(g.n() as u64, pairs)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.flat.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn iter(&self) -> core::slice::ChunksExact<'_, u32> {
        self.flat.chunks_exact(self.arity)
    }

    pub fn contains(&self, tuple: &[u32]) -> bool {
        let mut t = tuple.to_vec();
        t.sort_unstable();
        let mut lo = 0usize;
        let mut hi = self.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.flat[mid * self.arity..(mid + 1) * self.arity].cmp(&t[..]) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

/// A random restriction `ℛ`: a tuple passes iff the top `level` bits of its
/// keyed hash are zero, so each tuple passes independently-looking with
/// density `2^{-level}`. Level zero is the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub key: u64,
    pub level: u32,
}

impl Restriction {
    pub const IDENTITY: Restriction = Restriction { key: 0, level: 0 };

    pub fn accepts(&self, tuple: &[u32]) -> bool {
        if self.level == 0 {
            return true;
        }
        let h = tuple.iter().fold(self.key, |h, &x| mix64(h ^ x as u64));
        h >> (64 - self.level) == 0
    }

    pub fn density(&self) -> f64 {
        pow(2.0, -(self.level as f64))
    }
}

/// A collision problem: `𝒞` from the reference input, cut down by `ℛ`.
#[derive(Clone, Copy, Debug)]
pub struct CollisionSpec<'a> {
    pub collisions: &'a CollisionSet,
    pub restriction: Restriction,
}

impl<'a> CollisionSpec<'a> {
    pub fn new(collisions: &'a CollisionSet) -> Self {
        CollisionSpec { collisions, restriction: Restriction::IDENTITY }
    }

    pub fn n(&self) -> u64 {
        self.collisions.n
    }

    pub fn arity(&self) -> u32 {
        self.collisions.arity as u32
    }

    /// The effective relation `𝒞 ∩ ℛ`.
    pub fn effective(&self) -> impl Iterator<Item = &'a [u32]> + '_ {
        let restriction = self.restriction;
        self.collisions.iter().filter(move |t| restriction.accepts(t))
    }

    pub fn effective_count(&self) -> usize {
        self.effective().count()
    }

    pub fn is_effective(&self, tuple: &[u32]) -> bool {
        self.restriction.accepts(tuple) && self.collisions.contains(tuple)
    }
}

/// Independent restriction keys per density level in [`reduce_to_unique`].
pub const ISOLATION_SWEEPS: u32 = 3;

/// Number of density levels, `⌈log₂ n^k⌉`, capped to what a 64-bit hash resolves.
pub fn isolation_levels(n: u64, k: u32) -> u32 {
    (ceil_u64(k as f64 * log2(n.max(2) as f64)) as u32).clamp(1, 63)
}

/// Restricted copies of `spec` for the unique-collision promise.
///
/// The identity comes first, so a unique collision is kept as is. Then density
/// levels `2^{-ℓ}` follow for `ℓ` from `⌈log₂ n^k⌉ − 1` down to 1, each with
/// [`ISOLATION_SWEEPS`] independent keys. Whatever `|𝒞| ≥ 1` is, some level has
/// `|𝒞|·2^{-ℓ}` in `[1/2, 1]` and isolates one tuple with constant probability
/// per key; the neighbouring levels give further chances.
pub fn reduce_to_unique<'a>(spec: &CollisionSpec<'a>, seed: u64) -> Vec<CollisionSpec<'a>> {
    let levels = isolation_levels(spec.n(), spec.arity());
    let mut out = alloc::vec![CollisionSpec { restriction: Restriction::IDENTITY, ..*spec }];
    let mut counter = 0u64;
    for level in (1..levels).rev() {
        for _ in 0..ISOLATION_SWEEPS {
            counter += 1;
            let key = mix64(seed ^ mix64(counter));
            out.push(CollisionSpec { restriction: Restriction { key, level }, ..*spec });
        }
    }
    out
}

/// Charged generic algorithm under the unique-collision promise.
///
/// Charges `s(r)` once, then `⌈(n/r)^{k/2}⌉` rounds of `c(r) + ⌈√r⌉·u(r)`. The
/// collision is resolved through the reference checker. With two or more
/// effective collisions the charges stand and a promise error is returned.
pub fn run_generic_cost_model<I: ?Sized>(
    session: &mut OracleSession<'_, I>,
    spec: &CollisionSpec<'_>,
    db: &DatabaseModel,
    r: u64,
) -> Result<Option<Vec<u32>>> {
    let n = spec.n();
    let k = spec.arity();
    check_r(n, r)?;
    session.charge(alloc::format!("{}-setup(r={r})", db.name), db.setup.charge(n, r));
    let rounds = generic_rounds(n, k, r);
    session.charge(
        alloc::format!("{}-rounds(r={r},t={rounds})", db.name),
        rounds.saturating_mul(generic_round_charge(n, r, db)),
    );
    let mut effective = spec.effective();
    let first = effective.next();
    let rest = effective.count();
    match (first, rest) {
        (None, _) => Ok(None),
        (Some(t), 0) => Ok(Some(t.to_vec())),
        (Some(_), more) => Err(Error::PromiseViolated { count: more + 1 }),
    }
}

/// Result of [`solve_collision`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionOutcome {
    pub witness: Option<Vec<u32>>,
    /// Restricted rounds executed, including the successful one.
    pub rounds: usize,
}

/// Generic algorithm without the promise: runs the rounds of
/// [`reduce_to_unique`] in order until one returns a collision.
///
/// Every returned witness lies in `𝒞`. With `𝒞 = ∅` every round rejects and
/// all of them are charged.
pub fn solve_collision<I: ?Sized>(
    session: &mut OracleSession<'_, I>,
    collisions: &CollisionSet,
    db: &DatabaseModel,
    r: u64,
    seed: u64,
) -> Result<CollisionOutcome> {
    let spec = CollisionSpec::new(collisions);
    let plan = reduce_to_unique(&spec, seed);
    for (i, round) in plan.iter().enumerate() {
        match run_generic_cost_model(session, round, db, r) {
            Ok(Some(w)) => {
                debug_assert!(collisions.contains(&w));
                return Ok(CollisionOutcome { witness: Some(w), rounds: i + 1 });
            }
            Ok(None) | Err(Error::PromiseViolated { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(CollisionOutcome { witness: None, rounds: plan.len() })
}

/// The vertex pair of a 2-tuple as graph vertices.
pub(crate) fn pair_of(t: &[u32]) -> (Vertex, Vertex) {
    (t[0] as Vertex, t[1] as Vertex)
}
