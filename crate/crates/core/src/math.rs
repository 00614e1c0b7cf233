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

//! Small numeric helpers shared by the charge formulas.

/// `⌈x⌉` as an integer, tolerant of floating-point noise just above an integer.
///
/// `27f64.powf(2.0 / 3.0)` evaluates to `9.000000000000002`; a plain ceiling
/// would charge 10.
pub fn ceil_u64(x: f64) -> u64 {
    if x <= 0.0 {
        return 0;
    }
    let c = libm::ceil(x);
    let below = c - 1.0;
    if x - below <= 1e-9 * libm::fmax(1.0, x) {
        below as u64
    } else {
        c as u64
    }
}

/// Exact `⌈√n⌉` for integers.
pub fn ceil_sqrt(n: u64) -> u64 {
    let mut s = libm::sqrt(n as f64) as u64;
    while s * s > n {
        s -= 1;
    }
    while s * s < n {
        s += 1;
    }
    s
}

/// Exact `⌈log₂ n⌉` for `n ≥ 1`.
pub fn ceil_log2(n: u64) -> u64 {
    assert!(n >= 1, "ceil_log2(0)");
    (64 - (n - 1).leading_zeros()) as u64
}

pub fn log2(x: f64) -> f64 {
    libm::log2(x)
}

pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

pub fn pow(x: f64, e: f64) -> f64 {
    libm::pow(x, e)
}

/// `C(n, k)` as a float, exact while the result fits in 53 bits.
pub fn binomial_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    libm::round(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceilings() {
        assert_eq!(ceil_u64(pow(27.0, 2.0 / 3.0)), 9);
        assert_eq!(ceil_u64(pow(8.0, 2.0 / 3.0)), 4);
        assert_eq!(ceil_u64(12.27), 13);
        assert_eq!(ceil_u64(0.0), 0);
        assert_eq!(ceil_u64(0.2), 1);
        assert_eq!(ceil_sqrt(43), 7);
        assert_eq!(ceil_sqrt(49), 7);
        assert_eq!(ceil_sqrt(50), 8);
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(512), 9);
        assert_eq!(ceil_log2(513), 10);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_f64(9, 3), 84.0);
        assert_eq!(binomial_f64(4096, 2), 8_386_560.0);
        assert_eq!(binomial_f64(3, 5), 0.0);
    }
}
