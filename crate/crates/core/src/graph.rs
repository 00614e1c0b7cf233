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

//! Undirected simple graphs on `[n] = {1, …, n}` stored as packed bit rows.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};

/// A vertex of `[n]`. Vertices are 1-based throughout the public API.
pub type Vertex = usize;

/// Largest pattern accepted by the brute-force copy search.
pub const MAX_PATTERN_VERTICES: usize = 8;

/// Symmetric, loop-free adjacency bit matrix.
///
/// Row `v` holds bit `w - 1` for every neighbour `w`, so the number of common
/// neighbours of two vertices is a popcount over the AND of their rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph { n, words, bits: vec![0; n * words] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for a in 1..=n {
            for b in a + 1..=n {
                g.insert(a, b);
            }
        }
        g
    }

    /// Path `1 – 2 – … – n`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for a in 1..n {
            g.insert(a, a + 1);
        }
        g
    }

    /// Cycle `1 – 2 – … – n – 1`.
    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.insert(1, n);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of 64-bit words per adjacency row.
    #[inline]
    pub fn row_words(&self) -> usize {
        self.words
    }

    /// Adjacency row of `v` as packed bits (bit `w - 1` set iff `v ~ w`).
    #[inline]
    pub fn row(&self, v: Vertex) -> &[u64] {
        let start = (v - 1) * self.words;
        &self.bits[start..start + self.words]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, v: Vertex) -> &mut [u64] {
        let start = (v - 1) * self.words;
        &mut self.bits[start..start + self.words]
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn check_pair(&self, a: Vertex, b: Vertex) -> Result<()> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        Ok(())
    }

    /// Adjacency test for valid vertices; `a == b` is never an edge.
    #[inline]
    pub fn contains(&self, a: Vertex, b: Vertex) -> bool {
        let w = b - 1;
        self.bits[(a - 1) * self.words + w / 64] >> (w % 64) & 1 == 1
    }

    /// Inserts `{a, b}`; returns whether the edge was new.
    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<bool> {
        self.check_pair(a, b)?;
        let fresh = !self.contains(a, b);
        self.insert(a, b);
        Ok(fresh)
    }

    #[inline]
    pub(crate) fn insert(&mut self, a: Vertex, b: Vertex) {
        self.set_bit(a, b);
        self.set_bit(b, a);
    }

    /// Removes `{a, b}` if present; returns whether it was present.
    pub fn remove(&mut self, a: Vertex, b: Vertex) -> bool {
        let had = self.contains(a, b);
        self.clear_bit(a, b);
        self.clear_bit(b, a);
        had
    }

    #[inline]
    fn set_bit(&mut self, a: Vertex, b: Vertex) {
        let w = b - 1;
        self.bits[(a - 1) * self.words + w / 64] |= 1 << (w % 64);
    }

    #[inline]
    fn clear_bit(&mut self, a: Vertex, b: Vertex) {
        let w = b - 1;
        self.bits[(a - 1) * self.words + w / 64] &= !(1 << (w % 64));
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn neighbors(&self, v: Vertex) -> BitIter<'_> {
        BitIter::new(self.row(v))
    }

    /// Edges as canonical pairs `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (1..=self.n).flat_map(move |a| {
            self.neighbors(a).skip_while(move |&b| b < a).map(move |b| (a, b))
        })
    }

    /// `t(G, a, b)` without range checks.
    #[inline]
    pub fn common_neighbor_count(&self, a: Vertex, b: Vertex) -> usize {
        and_popcount(self.row(a), self.row(b))
    }

    /// Number of length-two paths between `a` and `b`, i.e. `|ν(a) ∩ ν(b)|`.
    ///
    /// A reference quantity: it never touches any query meter.
    pub fn two_path_count(&self, a: Vertex, b: Vertex) -> Result<usize> {
        self.check_pair(a, b)?;
        Ok(self.common_neighbor_count(a, b))
    }

    /// All canonical pairs `a < b` with `t(G, a, b) ≤ k`, i.e. the pair set `G^⟨k⟩`.
    pub fn threshold_graph(&self, k: usize) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                if self.common_neighbor_count(a, b) <= k {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Number of triangles `t(G)`.
    pub fn triangle_count(&self) -> u64 {
        let mut total = 0u64;
        for (a, b) in self.edges() {
            total += count_above(self.row(a), self.row(b), b) as u64;
        }
        total
    }

    /// Lexicographically smallest triangle `(a, b, c)` with `a < b < c`.
    pub fn brute_find_triangle(&self) -> Option<(Vertex, Vertex, Vertex)> {
        for (a, b) in self.edges() {
            if let Some(c) = first_common_above(self.row(a), self.row(b), b) {
                return Some((a, b, c));
            }
        }
        None
    }

    /// Some vertex adjacent to both `a` and `b`, smallest first.
    pub fn first_common_neighbor(&self, a: Vertex, b: Vertex) -> Option<Vertex> {
        first_common_above(self.row(a), self.row(b), 0)
    }

    /// Graph induced on `vertices` and relabelled to `1..=vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut sub = Graph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.contains(a, b) {
                    sub.insert(i + 1, j + 1);
                }
            }
        }
        sub
    }

    /// An injective map of `V(h)` into `V(self)` carrying every edge of `h` onto an
    /// edge of `self` (subgraph containment, not induced). `result[i]` is the
    /// image of pattern vertex `i + 1`.
    pub fn brute_find_copy(&self, h: &Graph) -> Result<Option<Vec<Vertex>>> {
        self.find_copy(h, None, None)
    }

    /// Copy search with optional constraints.
    ///
    /// `pin` forces pattern vertex `pin.0` onto host vertex `pin.1`; `allowed`
    /// restricts the image to the given host vertices.
    pub fn find_copy(
        &self,
        h: &Graph,
        pin: Option<(Vertex, Vertex)>,
        allowed: Option<&[Vertex]>,
    ) -> Result<Option<Vec<Vertex>>> {
        let mut found = None;
        self.for_each_copy(h, pin, allowed, |m| {
            found = Some(m.to_vec());
            false
        })?;
        Ok(found)
    }

    /// Visits every copy of `h` (as an injective vertex map); the visitor returns
    /// `false` to stop early.
    pub fn for_each_copy(
        &self,
        h: &Graph,
        pin: Option<(Vertex, Vertex)>,
        allowed: Option<&[Vertex]>,
        mut visit: impl FnMut(&[Vertex]) -> bool,
    ) -> Result<()> {
        let k = h.n();
        if k > MAX_PATTERN_VERTICES {
            return Err(Error::PatternTooLarge { k, max: MAX_PATTERN_VERTICES });
        }
        if let Some((hv, gv)) = pin {
            h.check_vertex(hv)?;
            self.check_vertex(gv)?;
        }
        if k == 0 {
            visit(&[]);
            return Ok(());
        }
        let candidates: Vec<Vertex> = match allowed {
            Some(list) => {
                for &v in list {
                    self.check_vertex(v)?;
                }
                list.to_vec()
            }
            None => (1..=self.n).collect(),
        };
        // Map pattern vertices in order of decreasing degree so constraints bite early.
        let mut order: Vec<Vertex> = (1..=k).collect();
        order.sort_by_key(|&v| (core::cmp::Reverse(h.degree(v)), v));
        if let Some((hv, _)) = pin {
            order.retain(|&v| v != hv);
            order.insert(0, hv);
        }
        let mut image = vec![0usize; k + 1];
        let mut used = vec![false; self.n + 1];
        let mut search = CopySearch { g: self, h, order: &order, pin, candidates: &candidates };
        search.extend(0, &mut image, &mut used, &mut visit);
        Ok(())
    }
}

struct CopySearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: &'a [Vertex],
    pin: Option<(Vertex, Vertex)>,
    candidates: &'a [Vertex],
}

impl CopySearch<'_> {
    /// Returns `false` once the visitor asked to stop.
    fn extend(
        &mut self,
        depth: usize,
        image: &mut [Vertex],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[Vertex]) -> bool,
    ) -> bool {
        if depth == self.order.len() {
            return visit(&image[1..]);
        }
        let hv = self.order[depth];
        let pinned = match self.pin {
            Some((p, gv)) if p == hv => Some(gv),
            _ => None,
        };
        let candidates: &[Vertex] = match pinned {
            Some(ref gv) => core::slice::from_ref(gv),
            None => self.candidates,
        };
        for &gv in candidates {
            if used[gv] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&prev| !self.h.contains(hv, prev) || self.g.contains(gv, image[prev]));
            if !consistent {
                continue;
            }
            image[hv] = gv;
            used[gv] = true;
            let go_on = self.extend(depth + 1, image, used, visit);
            used[gv] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

#[inline]
pub(crate) fn and_popcount(x: &[u64], y: &[u64]) -> usize {
    x.iter().zip(y).map(|(a, b)| (a & b).count_ones() as usize).sum()
}

/// Mask selecting bits for vertices strictly greater than `v` in word `i`.
#[inline]
fn above_mask(i: usize, v: Vertex) -> u64 {
    // vertex v occupies bit v - 1; we want bits ≥ v.
    let lo = i * 64;
    if v <= lo {
        !0
    } else if v >= lo + 64 {
        0
    } else {
        !0 << (v - lo)
    }
}

pub(crate) fn count_above(x: &[u64], y: &[u64], v: Vertex) -> usize {
    x.iter()
        .zip(y)
        .enumerate()
        .skip(v / 64)
        .map(|(i, (a, b))| (a & b & above_mask(i, v)).count_ones() as usize)
        .sum()
}

pub(crate) fn first_common_above(x: &[u64], y: &[u64], v: Vertex) -> Option<Vertex> {
    for (i, (a, b)) in x.iter().zip(y).enumerate().skip(v / 64) {
        let w = a & b & above_mask(i, v);
        if w != 0 {
            return Some(i * 64 + w.trailing_zeros() as usize + 1);
        }
    }
    None
}

/// Triangle `(a, b, c)` with `a < b < c`.
pub type Triangle = (Vertex, Vertex, Vertex);

/// Sorts three vertices into a [`Triangle`].
pub fn triangle_of(a: Vertex, b: Vertex, c: Vertex) -> Triangle {
    let mut t = [a, b, c];
    t.sort_unstable();
    (t[0], t[1], t[2])
}

/// Iterator over the 1-based positions of set bits in a packed row.
pub struct BitIter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        BitIter { words, index: 0, current: words.first().copied().unwrap_or(0) }
    }
}

impl Iterator for BitIter<'_> {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit + 1);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

/// Packed vertex set over `[n]`, laid out like a graph row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet { bits: vec![0; n.div_ceil(64)] }
    }

    pub fn from_row(row: &[u64]) -> Self {
        VertexSet { bits: row.to_vec() }
    }

    pub fn insert(&mut self, v: Vertex) {
        self.bits[(v - 1) / 64] |= 1 << ((v - 1) % 64);
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.bits[(v - 1) / 64] >> ((v - 1) % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn iter(&self) -> BitIter<'_> {
        BitIter::new(&self.bits)
    }
}

/// Number of edges of `g` with both endpoints in `set` (`|G ∩ set²|`).
pub fn edges_within(g: &Graph, set: &VertexSet) -> u64 {
    let mut twice = 0u64;
    for v in set.iter() {
        twice += and_popcount(g.row(v), set.words()) as u64;
    }
    twice / 2
}

/// The `rank`-th edge (0-based, lexicographic over `a < b`) of `g` inside `set²`.
pub fn nth_edge_within(g: &Graph, set: &VertexSet, mut rank: u64) -> Option<(Vertex, Vertex)> {
    for a in set.iter() {
        let here = count_above_in(g.row(a), set.words(), a) as u64;
        if rank < here {
            let mut it = BitIter::new(g.row(a)).filter(|&b| b > a && set.contains(b));
            return it.nth(rank as usize).map(|b| (a, b));
        }
        rank -= here;
    }
    None
}

fn count_above_in(row: &[u64], set: &[u64], v: Vertex) -> usize {
    count_above(row, set, v)
}

/// Adjacency-list graph for large explicitly known graphs (the Graph Collision input).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseGraph {
    n: usize,
    adj: Vec<Vec<Vertex>>,
}

impl SparseGraph {
    pub fn empty(n: usize) -> Self {
        SparseGraph { n, adj: vec![Vec::new(); n + 1] }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = SparseGraph::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Inserts `{a, b}`; returns whether the edge was new.
    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<bool> {
        for v in [a, b] {
            if v == 0 || v > self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        match self.adj[a].binary_search(&b) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[a].insert(pos, b);
                let pos = self.adj[b].binary_search(&a).unwrap_err();
                self.adj[b].insert(pos, a);
                Ok(true)
            }
        }
    }

    pub fn contains(&self, a: Vertex, b: Vertex) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (1..=self.n).flat_map(move |a| {
            self.adj[a].iter().copied().filter(move |&b| b > a).map(move |b| (a, b))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
}

impl From<&Graph> for SparseGraph {
    fn from(g: &Graph) -> Self {
        let mut s = SparseGraph::empty(g.n());
        for v in 1..=g.n() {
            s.adj[v] = g.neighbors(v).collect();
        }
        s
    }
}

pub(crate) fn check_size(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(domain(alloc::format!("need n ≥ {min}, got {n}")))
    } else {
        Ok(())
    }
}
