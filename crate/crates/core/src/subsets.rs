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

//! Colexicographic ranking of fixed-size subsets held as bit masks.
//!
//! An `r`-subset `{a_0 < … < a_{r-1}}` of `{0, …, n-1}` has colex rank
//! `Σ_i C(a_i, i + 1)`. Ranks of all `r`-subsets of `{0, …, n-1}` are exactly
//! `0..C(n, r)`, independent of `n`.

/// Exact binomial coefficient; `0` when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn rank(set: u64) -> u64 {
    let mut r = 0;
    let mut rest = set;
    let mut i = 1;
    while rest != 0 {
        let a = rest.trailing_zeros() as u64;
        r += binomial(a, i);
        rest &= rest - 1;
        i += 1;
    }
    r
}

/// Inverse of [`rank`] for subsets of size `size`.
pub fn unrank(mut rank: u64, size: u32) -> u64 {
    let mut set = 0u64;
    for i in (1..=size as u64).rev() {
        // Largest c with C(c, i) ≤ rank.
        let mut c = i - 1;
        while binomial(c + 1, i) <= rank {
            c += 1;
        }
        rank -= binomial(c, i);
        set |= 1 << c;
    }
    set
}

/// Position of element `x` among the members of `set` (0-based), assuming `x ∈ set`.
#[inline]
pub fn position_in(set: u64, x: u32) -> usize {
    (set & ((1u64 << x) - 1)).count_ones() as usize
}

/// Position of `x` among the non-members of `set` within `{0, …, n-1}`, assuming `x ∉ set`.
#[inline]
pub fn position_outside(set: u64, x: u32) -> usize {
    x as usize - position_in(set, x)
}

/// The `pos`-th member (0-based) of `set`.
pub fn nth_member(set: u64, pos: usize) -> u32 {
    let mut rest = set;
    for _ in 0..pos {
        rest &= rest - 1;
    }
    rest.trailing_zeros()
}

/// The `pos`-th non-member (0-based) of `set` within `{0, …, n-1}`.
pub fn nth_non_member(set: u64, n: u32, pos: usize) -> u32 {
    let universe = if n == 64 { !0 } else { (1u64 << n) - 1 };
    nth_member(!set & universe, pos)
}
