//! The inequality chain showing that `N(r, p)`, the product of `r`
//! consecutive primes starting at `p >= 43`, eventually violates the
//! conjectured value of the normal covering number.
//!
//! * (a2) `N/2 (1 - 1/p1)(1 - 1/p2) + 2 > N/3 + N/7`
//! * (a3) `omega(N) = r < N/14`
//! * (a4) `phi(N)/2 < N/14`, i.e. `phi(N)/N < 1/7`
//!
//! (a4) only kicks in once the product of `(1 - 1/p)` drops below `1/7`,
//! which starting from 43 takes primes far beyond any desk-scale sieve.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numtheory::{is_prime, next_prime, Sieve};

pub const DEFAULT_PRIME_BUDGET: u64 = 10_000_000;

pub const NOT_DESK_SCALE: &str = "a full counterexample n is not desk-scale reproducible: \
phi(N)/N < 1/7 needs consecutive primes from 43 beyond ~10^11";

/// `(1/2)(1 - 1/p1)(1 - 1/p2) > 1/3 + 1/7` for `p2` the next prime after
/// `p1`. Since the left side grows with `p2`, this settles every `r >= 2`
/// up to the vanishing `+2` slack.
pub fn a2_leading_coefficient_holds(p1: u64) -> bool {
    let p2 = next_prime(p1);
    // 21 (p1-1)(p2-1) > 20 p1 p2
    21 * (p1 as u128 - 1) * (p2 as u128 - 1) > 20 * p1 as u128 * p2 as u128
}

/// (a2) for a concrete `N` with smallest primes `p1 < p2`, exactly:
/// `21 N (p1-1)(p2-1) + 84 p1 p2 > 20 N p1 p2`.
pub fn a2_exact(n: &BigInt, p1: u64, p2: u64) -> bool {
    let lhs = BigInt::from(21) * n * BigInt::from(p1 - 1) * BigInt::from(p2 - 1) + BigInt::from(84u128 * p1 as u128 * p2 as u128);
    let rhs = BigInt::from(20) * n * BigInt::from(p1) * BigInt::from(p2);
    lhs > rhs
}

/// The (a3) surrogate `r ln p > ln(14 r)`, which gives `N > p^r > 14 r`.
pub fn a3_surrogate_holds(p: u64, r: u64) -> bool {
    r as f64 * (p as f64).ln() > (14.0 * r as f64).ln() + 1e-9
}

/// `phi(N)/N` as the unreduced product `prod (p-1) / prod p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiRatio {
    pub num: BigInt,
    pub den: BigInt,
}

impl PhiRatio {
    pub fn one() -> Self {
        PhiRatio { num: BigInt::one(), den: BigInt::one() }
    }

    pub fn push(&mut self, p: u64) {
        self.num *= p - 1;
        self.den *= p;
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.den.clone())
    }

    /// `ln(num/den)`, usable far below `f64::MIN_POSITIVE`.
    pub fn ln(&self) -> f64 {
        fn big_ln(x: &BigInt) -> f64 {
            let bits = x.bits();
            let shift = bits.saturating_sub(60);
            let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
            top.ln() + shift as f64 * std::f64::consts::LN_2
        }
        big_ln(&self.num) - big_ln(&self.den)
    }

    pub fn lt(&self, other: &PhiRatio) -> bool {
        &self.num * &other.den < &other.num * &self.den
    }

    /// `phi(N)/N < 1/7`
    pub fn below_seventh(&self) -> bool {
        BigInt::from(7) * &self.num < self.den
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub p: u64,
    pub r: u64,
    pub prime_budget: u64,
    pub warning: Option<String>,
    /// The r consecutive primes from p all lie within the budget.
    pub feasible: bool,
    pub largest_prime: Option<u64>,
    pub a2_leading: bool,
    pub a2_exact: Option<bool>,
    pub a3_surrogate: bool,
    pub a3_exact: Option<bool>,
    pub n_digits: Option<usize>,
    pub phi_ratio_ln: Option<f64>,
    pub phi_ratio_approx: Option<f64>,
    /// The exact ratio as `num/den`, only when both fit in 200 digits.
    pub phi_ratio: Option<String>,
    pub strictly_decreasing: Option<bool>,
    pub a4_holds: Option<bool>,
    pub note: String,
}

/// Runs the chain for `N(r, p)`. Primes come from a sieve up to
/// `prime_budget`; if fewer than `r` primes from `p` fit, the exact parts
/// are left out and the report is flagged infeasible.
pub fn counterexample_check(p: u64, r: u64, prime_budget: u64) -> Result<CounterexampleReport> {
    if !is_prime(p) {
        return domain(format!("counterexample_check requires p prime, got {p}"));
    }
    if r < 2 {
        return domain(format!("counterexample_check requires r >= 2, got {r}"));
    }
    let warning = (p < 43).then(|| format!("p = {p} < 43: inequality (a2) is not guaranteed"));
    let mut report = CounterexampleReport {
        p,
        r,
        prime_budget,
        warning,
        feasible: false,
        largest_prime: None,
        a2_leading: a2_leading_coefficient_holds(p),
        a2_exact: None,
        a3_surrogate: a3_surrogate_holds(p, r),
        a3_exact: None,
        n_digits: None,
        phi_ratio_ln: None,
        phi_ratio_approx: None,
        phi_ratio: None,
        strictly_decreasing: None,
        a4_holds: None,
        note: NOT_DESK_SCALE.to_string(),
    };
    if prime_budget < p {
        return Ok(report);
    }
    let sieve = Sieve::new(prime_budget);
    let primes: Vec<u64> = sieve.primes().filter(|&q| q >= p).take(r as usize).collect();
    if (primes.len() as u64) < r {
        return Ok(report);
    }
    let traj = phi_ratio_trajectory(&primes);
    let mut n = BigInt::one();
    for &q in &primes {
        n *= q;
    }
    let last = traj.last().expect("r >= 2");
    report.feasible = true;
    report.largest_prime = primes.last().copied();
    report.a2_exact = Some(a2_exact(&n, primes[0], primes[1]));
    report.a3_exact = Some(n > BigInt::from(14 * r));
    report.n_digits = Some(n.to_string().len());
    report.phi_ratio_ln = Some(last.ln());
    report.phi_ratio_approx = Some(last.ln().exp());
    if last.den.bits() < 660 {
        report.phi_ratio = Some(format!("{}/{}", last.num, last.den));
    }
    report.strictly_decreasing = Some(strictly_decreasing(&traj));
    report.a4_holds = Some(last.below_seventh());
    Ok(report)
}

/// `phi(N_k)/N_k` for each prefix `N_k` of `primes`, `k = 1..=len`.
pub fn phi_ratio_trajectory(primes: &[u64]) -> Vec<PhiRatio> {
    let mut cur = PhiRatio::one();
    primes
        .iter()
        .map(|&q| {
            cur.push(q);
            cur.clone()
        })
        .collect()
}

/// Every step is a strict decrease, by exact cross-multiplication.
pub fn strictly_decreasing(traj: &[PhiRatio]) -> bool {
    use rayon::prelude::*;
    traj.par_windows(2).all(|w| w[1].lt(&w[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficient_threshold() {
        assert!(a2_leading_coefficient_holds(43));
        assert!(a2_leading_coefficient_holds(41));
        assert!(!a2_leading_coefficient_holds(37));
        assert!(!a2_leading_coefficient_holds(3));
    }

    #[test]
    fn first_steps_from_43() {
        let r = counterexample_check(43, 2, 1000).unwrap();
        assert!(r.feasible && r.warning.is_none());
        assert_eq!(r.a2_exact, Some(true));
        assert_eq!(r.phi_ratio.as_deref(), Some("1932/2021"));
        assert!((r.phi_ratio_approx.unwrap() - 0.956).abs() < 1e-3);
        assert_eq!(r.a4_holds, Some(false));
        assert_eq!(r.strictly_decreasing, Some(true));
    }

    #[test]
    fn surrogate_and_budget() {
        assert!(a3_surrogate_holds(47, 3));
        let r = counterexample_check(47, 3, 10).unwrap();
        assert!(!r.feasible && r.a3_surrogate && r.a2_exact.is_none());
        let w = counterexample_check(7, 3, 1000).unwrap();
        assert!(w.warning.is_some());
        assert!(counterexample_check(45, 3, 1000).is_err());
        assert!(counterexample_check(43, 1, 1000).is_err());
    }

    #[test]
    fn ratio_ln_matches_product() {
        let primes = [43u64, 47, 53, 59, 61];
        let t = phi_ratio_trajectory(&primes);
        let direct: f64 = primes.iter().map(|&p| (1.0 - 1.0 / p as f64).ln()).sum();
        assert!((t[4].ln() - direct).abs() < 1e-12);
    }
}
