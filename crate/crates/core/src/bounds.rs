//! Lower bounds on DFT multiplicative complexity.
//!
//! [`heideman_bound`] evaluates Heideman's closed form
//!
//! ```text
//! μ(N) = 2N - Σ_{i_1..i_m} φ(gcd(Π p_k^{i_k}, 4)) · (1 + Σ_{d_k | D_k} Π φ(d_k) / φ(lcm(d_1..d_m)))
//! ```
//!
//! with `N = Π p_k^{e_k}`, `0 ≤ i_k ≤ e_k` and
//! `D_k = φ(p_k^{i_k}) / φ(gcd(p_k^{i_k}, 4))`.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

/// Prime factorisation, primes ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn product(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

pub fn factorize(mut n: u64) -> Factorization {
    let mut factors = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Factorization { factors }
}

pub fn euler_totient(n: u64) -> u64 {
    assert!(n >= 1, "totient of zero");
    factorize(n)
        .factors
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Calls `f` on every tuple picking one entry from each list (odometer order).
fn for_each_tuple(choices: &[Vec<u64>], mut f: impl FnMut(&[u64])) {
    if choices.iter().any(Vec::is_empty) {
        return;
    }
    let mut pos = vec![0usize; choices.len()];
    let mut tuple: Vec<u64> = choices.iter().map(|c| c[0]).collect();
    loop {
        f(&tuple);
        let mut k = 0;
        loop {
            if k == choices.len() {
                return;
            }
            pos[k] += 1;
            if pos[k] < choices[k].len() {
                tuple[k] = choices[k][pos[k]];
                break;
            }
            pos[k] = 0;
            tuple[k] = choices[k][0];
            k += 1;
        }
    }
}

/// Heideman's minimal multiplicative complexity of a length-`n` DFT.
pub fn heideman_bound(n: u64) -> u64 {
    assert!(n >= 1, "blocklength must be positive");
    let fact = factorize(n);
    let exponent_choices: Vec<Vec<u64>> = fact
        .factors
        .iter()
        .map(|&(_, e)| (0..=e as u64).collect())
        .collect();

    let mut total = 0u64;
    for_each_tuple(&exponent_choices, |exps| {
        let powers: Vec<u64> = fact
            .factors
            .iter()
            .zip(exps)
            .map(|(&(p, _), &i)| p.pow(i as u32))
            .collect();
        let weight = euler_totient(powers.iter().product::<u64>().gcd(&4));
        let divisor_choices: Vec<Vec<u64>> = powers
            .iter()
            .map(|&q| divisors(euler_totient(q) / euler_totient(q.gcd(&4))))
            .collect();

        let mut inner = Ratio::<u64>::zero();
        for_each_tuple(&divisor_choices, |ds| {
            let num: u64 = ds.iter().map(|&d| euler_totient(d)).product();
            let l = ds.iter().fold(1u64, |acc, &d| acc.lcm(&d));
            inner += Ratio::new(num, euler_totient(l));
        });
        assert!(inner.is_integer(), "divisor sum {inner} is not integral");
        total += weight * (1 + inner.to_integer());
    });

    (2 * n)
        .checked_sub(total)
        .expect("bound sum never exceeds 2N")
}

/// Heideman-Burrus real-multiplication bound `4N - 2(L² + L + 2)`, `N = 2^L`.
pub fn heideman_burrus_bound(n: u64) -> Result<u64> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let l = n.trailing_zeros() as u64;
    Ok(4 * n - 2 * (l * l + l + 2))
}

pub fn nlog2n_rounded(n: u64) -> u64 {
    assert!(n >= 1, "blocklength must be positive");
    let x = n as f64;
    (x * x.log2()).round() as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub n: u64,
    pub heideman_mu: u64,
    /// Present only for powers of two.
    pub heideman_burrus_mu: Option<u64>,
    pub nlog2n_rounded: u64,
}

pub fn bounds_row(n: u64) -> BoundsRow {
    BoundsRow {
        n,
        heideman_mu: heideman_bound(n),
        heideman_burrus_mu: heideman_burrus_bound(n).ok(),
        nlog2n_rounded: nlog2n_rounded(n),
    }
}

/// Published multiplication counts kept for side-by-side display.
pub mod reference {
    /// Laurent-series FFT real multiplications, `N ≡ 4 (mod 8)`.
    pub const LAURENT_ODD_QUARTER: [(u64, u64); 7] =
        [(12, 8), (20, 32), (28, 72), (36, 88), (44, 200), (52, 288), (60, 208)];

    /// Laurent-series FFT real multiplications, powers of two.
    pub const LAURENT_POWER_OF_TWO: [(u64, u64); 4] = [(8, 2), (16, 12), (32, 54), (64, 224)];

    pub const HEIDEMAN_BURRUS: [(u64, u64); 4] = [(8, 4), (16, 20), (32, 64), (64, 168)];

    /// Rader-Brenner counts; not computed by this crate.
    pub const RADER_BRENNER: [(u64, u64); 4] = [(8, 4), (16, 20), (32, 68), (64, 196)];

    pub fn lookup(table: &[(u64, u64)], n: u64) -> Option<u64> {
        table.iter().find(|&&(k, _)| k == n).map(|&(_, v)| v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totients() {
        assert_eq!(euler_totient(1), 1);
        assert_eq!(euler_totient(4), 2);
        let coprime_below_12 = (1..12u64).filter(|k| k.gcd(&12) == 1).count() as u64;
        assert_eq!(euler_totient(12), coprime_below_12);
        assert_eq!(euler_totient(12), 4);
        for n in 1..200u64 {
            let brute = (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64;
            assert_eq!(euler_totient(n), brute, "{n}");
        }
    }

    #[test]
    fn factorizations() {
        assert_eq!(factorize(1).factors, vec![]);
        assert_eq!(factorize(60).factors, vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(factorize(64).factors, vec![(2, 6)]);
        for n in 1..500 {
            let f = factorize(n);
            assert_eq!(f.product(), n);
            assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn heideman_small() {
        assert_eq!(heideman_bound(1), 0);
        assert_eq!(heideman_bound(2), 0);
        assert_eq!(heideman_bound(4), 0);
        assert_eq!(heideman_bound(8), 2);
    }

    #[test]
    fn heideman_burrus_values() {
        assert_eq!(heideman_burrus_bound(16).unwrap(), 20);
        assert_eq!(heideman_burrus_bound(32).unwrap(), 64);
        assert_eq!(heideman_burrus_bound(64).unwrap(), 168);
        assert_eq!(heideman_burrus_bound(2).unwrap(), 0);
        assert!(matches!(heideman_burrus_bound(12), Err(Error::NotPowerOfTwo(12))));
        assert!(heideman_burrus_bound(1).is_err());
        assert!(heideman_burrus_bound(0).is_err());
    }

    #[test]
    fn nlog2n() {
        assert_eq!(nlog2n_rounded(2), 2);
        assert_eq!(nlog2n_rounded(12), 43);
        assert_eq!(nlog2n_rounded(20), 86);
        for &(n, want) in &[(28, 135), (36, 186), (44, 240), (52, 296), (60, 354)] {
            assert_eq!(nlog2n_rounded(n), want);
        }
    }

    #[test]
    fn rows() {
        let r = bounds_row(16);
        assert_eq!(r.heideman_burrus_mu, Some(20));
        assert_eq!(r.nlog2n_rounded, 64);
        assert_eq!(bounds_row(12).heideman_burrus_mu, None);
    }
}
