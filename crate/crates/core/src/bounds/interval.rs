//! Dyadic interval arithmetic on `BigInt`.
//!
//! An [`Interval`] at precision `p` is a pair of integers `lo <= hi`
//! standing for the real interval `[lo / 2^p, hi / 2^p]`. Each operation
//! rounds the lower endpoint toward negative infinity and the upper
//! endpoint toward positive infinity, so the true value of every
//! expression built from exact inputs stays enclosed.
//!
//! Logarithms use `ln m = k ln 2 + 2 atanh((m - 2^k)/(m + 2^k))` with the
//! atanh series bounded from both sides; pi uses Machin's formula.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

const GUARD_BITS: u32 = 16;

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

fn floor_shr(a: &BigInt, s: u32) -> BigInt {
    floor_div(a, &(BigInt::one() << s))
}

fn ceil_shr(a: &BigInt, s: u32) -> BigInt {
    ceil_div(a, &(BigInt::one() << s))
}

fn ceil_sqrt(a: &BigInt) -> BigInt {
    let s = a.sqrt();
    if &(&s * &s) < a {
        s + 1
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

impl Interval {
    fn from_parts(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi, prec }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        let v = v.into() << prec;
        Interval::from_parts(v.clone(), v, prec)
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(den.is_positive(), "denominator must be positive");
        let scaled = num << prec;
        Interval::from_parts(floor_div(&scaled, den), ceil_div(&scaled, den), prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Interval::from_ratio(r.numer(), r.denom(), prec)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Rescale to a different precision, rounding outward.
    pub fn with_precision(&self, prec: u32) -> Self {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = prec - self.prec;
                Interval::from_parts(&self.lo << s, &self.hi << s, prec)
            }
            Ordering::Less => {
                let s = self.prec - prec;
                Interval::from_parts(floor_shr(&self.lo, s), ceil_shr(&self.hi, s), prec)
            }
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        let o = o.with_precision(self.prec);
        Interval::from_parts(&self.lo + &o.lo, &self.hi + &o.hi, self.prec)
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        let o = o.with_precision(self.prec);
        Interval::from_parts(&self.lo - &o.hi, &self.hi - &o.lo, self.prec)
    }

    pub fn neg(&self) -> Interval {
        Interval::from_parts(-&self.hi, -&self.lo, self.prec)
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let o = o.with_precision(self.prec);
        let products = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let min = products.iter().min().unwrap();
        let max = products.iter().max().unwrap();
        Interval::from_parts(floor_shr(min, self.prec), ceil_shr(max, self.prec), self.prec)
    }

    /// Division by an interval that excludes zero.
    pub fn div(&self, o: &Interval) -> Option<Interval> {
        let o = o.with_precision(self.prec);
        if !o.lo.is_positive() && !o.hi.is_negative() {
            return None;
        }
        let p = self.prec;
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let scaled = a << p;
                let (num, den) = if b.is_negative() { (-scaled, -b) } else { (scaled, b.clone()) };
                let f = floor_div(&num, &den);
                let c = ceil_div(&num, &den);
                lo = Some(match lo {
                    Some(v) if v <= f => v,
                    _ => f,
                });
                hi = Some(match hi {
                    Some(v) if v >= c => v,
                    _ => c,
                });
            }
        }
        Some(Interval::from_parts(lo.unwrap(), hi.unwrap(), p))
    }

    pub fn mul_ratio(&self, num: i64, den: i64) -> Interval {
        self.mul(&Interval::from_ratio(&BigInt::from(num), &BigInt::from(den), self.prec))
    }

    /// Square root of a nonnegative interval. `None` if any part of the
    /// interval is negative.
    pub fn sqrt(&self) -> Option<Interval> {
        if self.lo.is_negative() {
            return None;
        }
        let p = self.prec;
        let lo = (&self.lo << p).sqrt();
        let hi = ceil_sqrt(&(&self.hi << p));
        Some(Interval::from_parts(lo, hi, p))
    }

    /// Natural logarithm of a positive integer.
    pub fn ln_u64(m: u64, prec: u32) -> Interval {
        assert!(m >= 1, "ln of zero");
        let w = prec + GUARD_BITS;
        let k = 63 - m.leading_zeros();
        let base = 1u64 << k;
        let (alo, ahi) = atanh_bounds(&BigInt::from(m - base), &BigInt::from(m + base), w);
        let (l2lo, l2hi) = ln2_bounds(w);
        let lo = (l2lo * k) + (alo << 1);
        let hi = (l2hi * k) + (ahi << 1);
        Interval::from_parts(floor_shr(&lo, GUARD_BITS), ceil_shr(&hi, GUARD_BITS), prec)
    }

    pub fn pi(prec: u32) -> Interval {
        let w = prec + GUARD_BITS;
        let (lo, hi) = pi_bounds(w);
        Interval::from_parts(floor_shr(&lo, GUARD_BITS), ceil_shr(&hi, GUARD_BITS), prec)
    }

    /// Intersection of two enclosures of the same quantity, at the finer
    /// of the two precisions. Panics if they are disjoint, which would
    /// mean a rounding bug.
    pub fn intersect(&self, o: &Interval) -> Interval {
        let prec = self.prec.max(o.prec);
        let a = self.with_precision(prec);
        let b = o.with_precision(prec);
        let lo = a.lo.max(b.lo);
        let hi = a.hi.min(b.hi);
        assert!(lo <= hi, "disjoint enclosures of the same value");
        Interval::from_parts(lo, hi, prec)
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// `Some(true)` if every point is below every point of `o`,
    /// `Some(false)` if no point is, `None` if undecided at this precision.
    pub fn certainly_lt(&self, o: &Interval) -> Option<bool> {
        let prec = self.prec.max(o.prec);
        let a = self.with_precision(prec);
        let b = o.with_precision(prec);
        if a.hi < b.lo {
            Some(true)
        } else if a.lo >= b.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn floor_lower(&self) -> BigInt {
        floor_shr(&self.lo, self.prec)
    }

    pub fn ceil_lower(&self) -> BigInt {
        ceil_shr(&self.lo, self.prec)
    }

    pub fn ceil_upper(&self) -> BigInt {
        ceil_shr(&self.hi, self.prec)
    }

    pub fn lower_rational(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.prec)
    }

    pub fn upper_rational(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.prec)
    }

    /// Largest `f64` not above the lower endpoint.
    pub fn lower_f64(&self) -> f64 {
        dyadic_to_f64(&self.lo, self.prec, false)
    }

    /// Smallest `f64` not below the upper endpoint.
    pub fn upper_f64(&self) -> f64 {
        dyadic_to_f64(&self.hi, self.prec, true)
    }

    pub fn midpoint_f64(&self) -> f64 {
        0.5 * (self.lower_f64() + self.upper_f64())
    }

    pub fn width_f64(&self) -> f64 {
        dyadic_to_f64(&(&self.hi - &self.lo), self.prec, true)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12e}, {:.12e}]", self.lower_f64(), self.upper_f64())
    }
}

/// Directed conversion of `m / 2^p` to `f64`.
fn dyadic_to_f64(m: &BigInt, p: u32, round_up: bool) -> f64 {
    // keep the top 60 significant bits, rounded in the requested direction
    let s = m.bits().saturating_sub(60) as u32;
    let m = if round_up { ceil_shr(m, s) } else { floor_shr(m, s) };
    let mut f = m.to_f64().expect("at most 61 bits");
    let exact: BigInt = FromPrimitive::from_f64(f).expect("finite f64");
    if round_up && exact < m {
        f = f.next_up();
    } else if !round_up && exact > m {
        f = f.next_down();
    }
    let mut e = s as i64 - p as i64;
    while e != 0 {
        let step = e.clamp(-1000, 1000);
        f *= 2f64.powi(step as i32);
        e -= step;
    }
    // underflow must not cross zero in the wrong direction
    match m.sign() {
        Sign::Plus if f == 0.0 && round_up => f64::MIN_POSITIVE,
        Sign::Minus if f == 0.0 && !round_up => -f64::MIN_POSITIVE,
        _ => f,
    }
}

/// Bounds on `2^w * atanh(a/b)` for `0 <= a/b <= 1/3`.
fn atanh_bounds(a: &BigInt, b: &BigInt, w: u32) -> (BigInt, BigInt) {
    if a.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    debug_assert!(BigInt::from(3) * a <= *b);
    let a2 = a * a;
    let b2 = b * b;
    let mut pow_lo = floor_div(&(a << w), b);
    let mut pow_hi = ceil_div(&(a << w), b);
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut j: u32 = 0;
    loop {
        let d = BigInt::from(2 * j + 1);
        sum_lo += floor_div(&pow_lo, &d);
        sum_hi += ceil_div(&pow_hi, &d);
        pow_lo = floor_div(&(&pow_lo * &a2), &b2);
        pow_hi = ceil_div(&(&pow_hi * &a2), &b2);
        j += 1;
        if pow_hi <= BigInt::one() {
            break;
        }
    }
    // tail <= t^(2j+1) / ((2j+1)(1 - t^2)) <= pow * 9 / (8 (2j+1))
    let d = BigInt::from(8 * (2 * j + 1));
    sum_hi += ceil_div(&(pow_hi * 9), &d);
    (sum_lo, sum_hi)
}

/// Bounds on `2^w * atan(1/b)` for `b >= 2`.
fn atan_inv_bounds(b: u64, w: u32) -> (BigInt, BigInt) {
    let b = BigInt::from(b);
    let b2 = &b * &b;
    let one = BigInt::one() << w;
    let mut pow_lo = floor_div(&one, &b);
    let mut pow_hi = ceil_div(&one, &b);
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut j: u32 = 0;
    while pow_hi > BigInt::zero() {
        let d = BigInt::from(2 * j + 1);
        if j.is_multiple_of(2) {
            sum_lo += floor_div(&pow_lo, &d);
            sum_hi += ceil_div(&pow_hi, &d);
        } else {
            sum_lo -= ceil_div(&pow_hi, &d);
            sum_hi -= floor_div(&pow_lo, &d);
        }
        pow_lo = floor_div(&pow_lo, &b2);
        pow_hi = ceil_div(&pow_hi, &b2);
        j += 1;
        if pow_hi <= BigInt::one() {
            break;
        }
    }
    let d = BigInt::from(2 * j + 1);
    let tail = ceil_div(&pow_hi, &d);
    (sum_lo - &tail, sum_hi + tail)
}

thread_local! {
    static LN2: RefCell<HashMap<u32, (BigInt, BigInt)>> = RefCell::new(HashMap::new());
    static PI: RefCell<HashMap<u32, (BigInt, BigInt)>> = RefCell::new(HashMap::new());
}

fn ln2_bounds(w: u32) -> (BigInt, BigInt) {
    LN2.with(|cache| {
        cache
            .borrow_mut()
            .entry(w)
            .or_insert_with(|| {
                let (lo, hi) = atanh_bounds(&BigInt::one(), &BigInt::from(3), w);
                (lo << 1, hi << 1)
            })
            .clone()
    })
}

fn pi_bounds(w: u32) -> (BigInt, BigInt) {
    PI.with(|cache| {
        cache
            .borrow_mut()
            .entry(w)
            .or_insert_with(|| {
                let (a_lo, a_hi) = atan_inv_bounds(5, w);
                let (b_lo, b_hi) = atan_inv_bounds(239, w);
                (a_lo * 16 - b_hi * 4, a_hi * 16 - b_lo * 4)
            })
            .clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn encloses(iv: &Interval, x: f64) -> bool {
        iv.lower_f64() <= x && x <= iv.upper_f64()
    }

    #[test]
    fn bigint_shift_semantics() {
        assert_eq!(floor_shr(&BigInt::from(-3), 1), BigInt::from(-2));
        assert_eq!(ceil_shr(&BigInt::from(-3), 1), BigInt::from(-1));
        assert_eq!(ceil_shr(&BigInt::from(3), 1), BigInt::from(2));
        assert_eq!(floor_shr(&BigInt::from(3), 1), BigInt::from(1));
    }

    #[test]
    fn constants_enclose_reference_values() {
        for prec in [32, 64, 128, 512] {
            let pi = Interval::pi(prec);
            assert!(encloses(&pi, std::f64::consts::PI), "prec {prec}: {pi}");
            let ln2 = Interval::ln_u64(2, prec);
            assert!(encloses(&ln2, std::f64::consts::LN_2));
            let ln10 = Interval::ln_u64(10, prec);
            assert!(encloses(&ln10, std::f64::consts::LN_10));
        }
        let pi = Interval::pi(300);
        assert!(pi.width_f64() < 1e-80, "{}", pi.width_f64());
        // 100 digits of pi
        let digits = "31415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";
        let reference = BigRational::new(digits.parse::<BigInt>().unwrap(), BigInt::from(10).pow(100));
        let slack = BigRational::new(BigInt::one(), BigInt::from(10).pow(99));
        assert!(pi.lower_rational() <= reference.clone() + slack.clone());
        assert!(pi.upper_rational() >= reference - slack);
    }

    #[test]
    fn ln_encloses_f64_values() {
        for m in [1u64, 2, 3, 5, 7, 1000, 65_535, 65_536, 999_983, u32::MAX as u64] {
            let iv = Interval::ln_u64(m, 80);
            let x = (m as f64).ln();
            assert!(iv.lower_f64() <= x * (1.0 + 1e-15) && x * (1.0 - 1e-15) <= iv.upper_f64(), "ln {m}: {iv}");
            assert!(iv.width_f64() < 1e-18);
        }
    }

    #[test]
    fn sqrt_and_division() {
        let two = Interval::from_int(2, 64);
        let r = two.sqrt().unwrap();
        assert!(encloses(&r, std::f64::consts::SQRT_2));
        let sq = r.mul(&r);
        assert!(sq.lower_f64() <= 2.0 && 2.0 <= sq.upper_f64());
        let third = Interval::from_int(1, 64).div(&Interval::from_int(3, 64)).unwrap();
        assert!(encloses(&third, 1.0 / 3.0));
        assert!(Interval::from_int(1, 64).div(&Interval::from_int(0, 64)).is_none());
        assert!(Interval::from_int(-1, 64).sqrt().is_none());
        let neg = Interval::from_int(-7, 40).div(&Interval::from_int(-2, 40)).unwrap();
        assert!(encloses(&neg, 3.5));
    }

    #[test]
    fn directed_f64_conversion() {
        let third = Interval::from_ratio(&BigInt::from(1), &BigInt::from(3), 200);
        assert!(third.lower_f64() <= 1.0 / 3.0);
        assert!(third.upper_f64() >= 1.0 / 3.0);
        assert!(third.lower_f64() < third.upper_f64());
        let exact = Interval::from_int(5, 10);
        assert_eq!(exact.lower_f64(), 5.0);
        assert_eq!(exact.upper_f64(), 5.0);
    }

    #[test]
    fn intersection_tightens() {
        let a = Interval::pi(32);
        let b = Interval::pi(96);
        let c = a.intersect(&b);
        assert_eq!(c.precision(), 96);
        assert!(c.width_f64() <= b.width_f64());
        assert_eq!(Interval::from_int(1, 32).certainly_lt(&Interval::from_int(2, 64)), Some(true));
        assert_eq!(Interval::from_int(2, 32).certainly_lt(&Interval::from_int(2, 64)), Some(false));
        assert_eq!(Interval::pi(8).certainly_lt(&Interval::pi(8)), None);
    }
}
