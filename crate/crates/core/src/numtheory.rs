//! Elementary number theory over `u64`: factorization, Euler's totient,
//! the number of distinct prime divisors, prime-power detection and the
//! set of repunit representations `n = (q^d - 1)/(q - 1)`.
//!
//! Factorization is trial division up to one million followed by a
//! deterministic Miller-Rabin test and, for the rare composite cofactor
//! with two large factors, Pollard-Brent rho. For bulk work over a range
//! of degrees use [`Sieve`], which answers the same questions from a
//! smallest-prime-factor table.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Prime factorization `n = p_1^a_1 ... p_r^a_r` with `p_1 < ... < p_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    fn from_sorted(n: u64, mut primes: Vec<u64>) -> Self {
        primes.sort_unstable();
        let mut factors: Vec<(u64, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Factorization { n, factors }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Number of distinct primes.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// Total number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn euler_phi(&self) -> u64 {
        self.factors
            .iter()
            .fold(self.n, |acc, &(p, _)| acc / p * (p - 1))
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u64) -> u64 {
    // n is odd, composite and has no factor below TRIAL_LIMIT.
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n < 2 {
        return domain(format!("factorize requires n >= 2, got {n}"));
    }
    let mut primes = Vec::new();
    let mut m = n;
    while m.is_multiple_of(2) {
        primes.push(2);
        m /= 2;
    }
    let mut p = 3u64;
    while p <= TRIAL_LIMIT && p * p <= m {
        while m.is_multiple_of(p) {
            primes.push(p);
            m /= p;
        }
        p += 2;
    }
    if m > 1 {
        if p * p > m {
            primes.push(m);
        } else {
            split_large(m, &mut primes);
        }
    }
    Ok(Factorization::from_sorted(n, primes))
}

/// Euler's totient; `euler_phi(1) == 1`.
pub fn euler_phi(n: u64) -> Result<u64> {
    match n {
        0 => domain("euler_phi requires n >= 1"),
        1 => Ok(1),
        _ => Ok(factorize(n)?.euler_phi()),
    }
}

/// Number of distinct prime divisors.
pub fn omega(n: u64) -> Result<usize> {
    Ok(factorize(n)?.omega())
}

/// `Some((p, a))` iff `n = p^a` with `p` prime and `a >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let f = factorize(n).ok()?;
    match f.factors() {
        [(p, a)] => Some((*p, *a)),
        _ => None,
    }
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// `1 + q + ... + q^(d-1)`, or `None` on `u128` overflow.
pub fn repunit(q: u64, d: u32) -> Option<u128> {
    let q = q as u128;
    let mut acc: u128 = 0;
    for _ in 0..d {
        acc = acc.checked_mul(q)?.checked_add(1)?;
    }
    Some(acc)
}

/// A representation `n = (q^d - 1)/(q - 1)` with `q` a prime power, `d >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QRep {
    pub q: u64,
    pub d: u32,
}

impl QRep {
    pub fn degree(&self) -> u128 {
        repunit(self.q, self.d).expect("QRep degree fits u128")
    }
}

impl fmt::Display for QRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.q, self.d)
    }
}

/// All representations of `n` as `(q^d - 1)/(q - 1)` with `q` a prime
/// power and `d >= 2`. For each `d` the unique real root `q` is located by
/// binary search, since the repunit is strictly increasing in `q`.
pub fn q_set(n: u64) -> Result<BTreeSet<QRep>> {
    if n < 3 {
        return domain(format!("q_set requires n >= 3, got {n}"));
    }
    let target = n as u128;
    let max_d = 64 - n.leading_zeros(); // floor(log2 n) + 1
    let mut out = BTreeSet::new();
    for d in 2..=max_d {
        let (mut lo, mut hi) = (2u64, n - 1);
        while lo <= hi {
            let mid = lo + (hi - lo) / 2;
            match repunit(mid, d) {
                Some(v) if v == target => {
                    if prime_power(mid).is_some() {
                        out.insert(QRep { q: mid, d });
                    }
                    break;
                }
                Some(v) if v < target => lo = mid + 1,
                _ => {
                    if mid == 0 {
                        break;
                    }
                    hi = mid - 1;
                }
            }
        }
    }
    Ok(out)
}

/// Smallest-prime-factor table for fast factorization of every integer
/// up to a fixed limit.
pub struct Sieve {
    spf: Vec<u32>,
}

impl Sieve {
    pub fn new(limit: u64) -> Self {
        let limit = limit.max(2) as usize;
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Sieve { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n < 2 {
            return domain(format!("factorize requires n >= 2, got {n}"));
        }
        if n > self.limit() {
            return factorize(n);
        }
        let mut primes = Vec::new();
        let mut m = n as usize;
        while m > 1 {
            let p = self.spf[m] as usize;
            primes.push(p as u64);
            m /= p;
        }
        Ok(Factorization::from_sorted(n, primes))
    }

    pub fn omega(&self, n: u64) -> usize {
        let mut m = n as usize;
        let mut count = 0;
        let mut last = 0;
        while m > 1 {
            let p = self.spf[m] as usize;
            if p != last {
                count += 1;
                last = p;
            }
            m /= p;
        }
        count
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..self.spf.len()).filter(|&i| self.spf[i] as usize == i).map(|i| i as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi_by_gcd(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(2021).unwrap().factors(), &[(43, 1), (47, 1)]);
        assert_eq!(factorize(31).unwrap().factors(), &[(31, 1)]);
        assert!(factorize(1).is_err());
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorize_large_cofactors() {
        // 1000003 * 1000033, both primes above the trial-division limit
        let n = 1_000_003u64 * 1_000_033;
        assert_eq!(factorize(n).unwrap().factors(), &[(1_000_003, 1), (1_000_033, 1)]);
        let n = 4_294_967_291u64 * 4_294_967_279;
        let f = factorize(n).unwrap();
        assert_eq!(f.factors(), &[(4_294_967_279, 1), (4_294_967_291, 1)]);
        assert_eq!(factorize(u64::MAX).unwrap().to_string(), "3 * 5 * 17 * 257 * 641 * 65537 * 6700417");
    }

    #[test]
    fn trial_division_matches_2021_oracle() {
        let oracle: Vec<u64> = (2..2021).filter(|d| 2021 % d == 0).collect();
        assert_eq!(oracle, vec![43, 47]);
    }

    #[test]
    fn totient_examples() {
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert_eq!(euler_phi(2021).unwrap(), 1932);
        assert_eq!(phi_by_gcd(2021), 1932);
        assert_eq!(euler_phi(1).unwrap(), 1);
    }

    #[test]
    fn totient_agrees_with_gcd_count() {
        for n in 1..=2000 {
            assert_eq!(euler_phi(n).unwrap(), phi_by_gcd(n), "n = {n}");
        }
    }

    #[test]
    fn totient_of_even_is_at_most_half() {
        for d in (2..=10_000).step_by(2) {
            assert!(euler_phi(d).unwrap() <= d / 2, "d = {d}");
        }
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(12).unwrap(), 2);
        assert_eq!(omega(30).unwrap(), 3);
        assert_eq!(omega(1024).unwrap(), 1);
        assert!(omega(1).is_err());
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(10), None);
        assert_eq!(prime_power(2048), Some((2, 11)));
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn q_set_examples() {
        let q31: Vec<QRep> = q_set(31).unwrap().into_iter().collect();
        assert_eq!(q31, vec![QRep { q: 2, d: 5 }, QRep { q: 5, d: 3 }]);
        let q10: Vec<QRep> = q_set(10).unwrap().into_iter().collect();
        assert_eq!(q10, vec![QRep { q: 9, d: 2 }]);
        assert!(q_set(11).unwrap().is_empty());
        assert!(q_set(2).is_err());
    }

    #[test]
    fn q_set_matches_exhaustive_scan() {
        for n in 3..=3000u64 {
            let mut oracle = BTreeSet::new();
            for q in 2..n {
                if prime_power(q).is_none() {
                    continue;
                }
                let mut value = 1 + q;
                let mut d = 2;
                while value < n {
                    value = value * q + 1;
                    d += 1;
                }
                if value == n {
                    oracle.insert(QRep { q, d });
                }
            }
            assert_eq!(q_set(n).unwrap(), oracle, "n = {n}");
        }
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        let sieve = Sieve::new(5000);
        for n in 2..=5000 {
            assert_eq!(sieve.factorize(n).unwrap(), factorize(n).unwrap());
            assert_eq!(sieve.omega(n), omega(n).unwrap());
            assert_eq!(sieve.is_prime(n), is_prime(n));
        }
        assert_eq!(sieve.primes().take(5).collect::<Vec<_>>(), vec![2, 3, 5, 7, 11]);
    }

    #[test]
    fn next_prime_walks_forward() {
        assert_eq!(next_prime(43), 47);
        assert_eq!(next_prime(1), 2);
        assert_eq!(next_prime(7919), 7927);
    }
}
