//! Helpers shared by the integration tests. Everything here is written
//! without calling into the library so it can serve as an oracle.

#![allow(dead_code)]

use num_complex::Complex64;

/// Blocklengths divisible by four up to `max`.
pub fn supported_up_to(max: usize) -> Vec<usize> {
    (4..=max).step_by(4).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Totient by counting residues coprime to `n`.
pub fn phi(n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    (1..n).filter(|&k| gcd(k, n) == 1).count() as u64
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// `(p, e)` pairs with `p` ascending, found by trial division over primes.
fn prime_powers(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in (2..=n).filter(|&p| is_prime(p) && n % p == 0) {
        let mut e = 0;
        let mut r = n;
        while r % p == 0 {
            r /= p;
            e += 1;
        }
        out.push((p, e));
    }
    out
}

/// Exact fraction kept as (numerator, denominator) in lowest terms.
#[derive(Clone, Copy)]
struct Frac(u64, u64);

impl Frac {
    fn add(self, o: Frac) -> Frac {
        let den = lcm(self.1, o.1);
        let num = self.0 * (den / self.1) + o.0 * (den / o.1);
        let g = gcd(num, den);
        Frac(num / g, den / g)
    }
}

fn divisor_sum(lists: &[Vec<u64>], chosen: &mut Vec<u64>, acc: &mut Frac) {
    if chosen.len() == lists.len() {
        let num: u64 = chosen.iter().map(|&d| phi(d)).product();
        let l = chosen.iter().fold(1, |a, &d| lcm(a, d));
        *acc = acc.add(Frac(num, phi(l)));
        return;
    }
    for &d in &lists[chosen.len()] {
        chosen.push(d);
        divisor_sum(lists, chosen, acc);
        chosen.pop();
    }
}

fn exponent_sum(factors: &[(u64, u32)], powers: &mut Vec<u64>, total: &mut u64) {
    if powers.len() == factors.len() {
        let prod: u64 = powers.iter().product();
        let g = phi(gcd(prod, 4));
        let lists: Vec<Vec<u64>> = powers
            .iter()
            .map(|&q| divisors(phi(q) / phi(gcd(q, 4))))
            .collect();
        let mut acc = Frac(0, 1);
        divisor_sum(&lists, &mut Vec::new(), &mut acc);
        assert_eq!(acc.1, 1, "divisor sum is not an integer");
        *total += g * (1 + acc.0);
        return;
    }
    let (p, e) = factors[powers.len()];
    for i in 0..=e {
        powers.push(p.pow(i));
        exponent_sum(factors, powers, total);
        powers.pop();
    }
}

/// Heideman's nested totient sum evaluated by brute force.
pub fn heideman_oracle(n: u64) -> u64 {
    let mut total = 0;
    exponent_sum(&prime_powers(n), &mut Vec::new(), &mut total);
    2 * n - total
}

/// `exp(-j 2 pi k n / N)` evaluated directly from the definition.
pub fn dft_entry(n_len: usize, k: usize, n: usize) -> Complex64 {
    let theta = -2.0 * std::f64::consts::PI * ((k * n) % n_len) as f64 / n_len as f64;
    Complex64::new(theta.cos(), theta.sin())
}

pub fn direct_dft(v: &[f64]) -> Vec<Complex64> {
    let n = v.len();
    (0..n)
        .map(|k| (0..n).map(|i| dft_entry(n, k, i) * v[i]).sum())
        .collect()
}
