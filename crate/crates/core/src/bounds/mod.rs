//! Certified evaluation of the intransitive-cover lower bound for
//! `Sym(n)` with `n` even and `Alt(n)` with `n` odd.
//!
//! The coprime-3-partition density `zeta2(n)` is an exact rational. The
//! overhead `f(n)` collects the primitive cap and the imprimitive cap
//! `2 n^(3/2)`, both divided by `n^2`. Everything transcendental goes
//! through [`Interval`], and every reported real carries the rounding
//! direction that keeps it a valid bound:
//!
//! * `f_upper`, the caps and `radicand` are rounded up;
//! * the theorem value and both corollary forms are rounded down;
//! * `theorem_bound` is the ceiling of the rounded-down theorem value.
//!
//! Reports are computed on a precision ladder `p, p/2, p/4, ...` whose
//! enclosures are intersected, and `p` is doubled until the ceiling of the
//! theorem value is unambiguous. Doubling the requested precision therefore
//! only adds enclosures, so it can never lower `theorem_bound` or raise
//! `f_upper`.

pub mod interval;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

pub use interval::Interval;

use crate::covering::{conjecture_value, maroti_upper_bound, Family, GroupKind};
use crate::error::{domain, Error, Result};
use crate::numtheory::{self, Factorization, Sieve};

pub const DEFAULT_PRECISION: u32 = 128;
pub const MIN_PRECISION: u32 = 32;
pub const MAX_PRECISION: u32 = 4096;

/// Threshold from which the 0.025 n reference bound is quoted.
pub const BPS_THRESHOLD: u64 = 792_000;

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// `(1/12) prod_{p | n} (1 - 1/p^2)`.
pub fn zeta2(n: u64) -> Result<BigRational> {
    if n < 4 {
        return domain(format!("zeta2 requires n >= 4, got {n}"));
    }
    Ok(zeta2_from_factorization(&numtheory::factorize(n)?))
}

pub fn zeta2_from_factorization(f: &Factorization) -> BigRational {
    f.primes().fold(ratio(1, 12), |acc, p| {
        let p2 = big(p) * big(p);
        acc * BigRational::new(&p2 - 1, p2)
    })
}

/// The exact inputs every bound needs for a given degree.
#[derive(Debug, Clone)]
pub struct DegreeData {
    pub n: u64,
    pub zeta2: BigRational,
    pub omega_prev: usize,
}

impl DegreeData {
    pub fn new(n: u64) -> Result<Self> {
        if n < 4 {
            return domain(format!("bounds require n >= 4, got {n}"));
        }
        Ok(DegreeData { n, zeta2: zeta2(n)?, omega_prev: numtheory::omega(n - 1)? })
    }

    pub fn with_sieve(n: u64, sieve: &Sieve) -> Result<Self> {
        if n < 4 {
            return domain(format!("bounds require n >= 4, got {n}"));
        }
        Ok(DegreeData {
            n,
            zeta2: zeta2_from_factorization(&sieve.factorize(n)?),
            omega_prev: sieve.omega(n - 1),
        })
    }
}

/// `(log_3 n + 1)/4 * omega(n-1) + 2` for even `n`,
/// `(log_2 n + 1)/2 * omega(n-1) + 2` for odd `n`.
fn primitive_cap_enclosure(n: u64, omega_prev: usize, prec: u32) -> Interval {
    let ln_n = Interval::ln_u64(n, prec);
    let (base, div) = if n.is_multiple_of(2) { (3, 4) } else { (2, 2) };
    let log = ln_n.div(&Interval::ln_u64(base, prec)).expect("ln 2, ln 3 > 0");
    log.add(&Interval::from_int(1, prec))
        .mul_ratio(omega_prev as i64, div)
        .add(&Interval::from_int(2, prec))
}

/// Primitive-component cap on coprime 3-partitions, rounded up.
pub fn primitive_cap(n: u64) -> Result<f64> {
    if n < 3 {
        return domain(format!("primitive_cap requires n >= 3, got {n}"));
    }
    Ok(primitive_cap_enclosure(n, numtheory::omega(n - 1)?, DEFAULT_PRECISION).upper_f64())
}

pub fn primitive_cap_interval(n: u64, omega_prev: usize, prec: u32) -> Interval {
    primitive_cap_enclosure(n, omega_prev, prec)
}

/// Enclosure of `f(n) = primitive_cap(n)/n^2 + 2/sqrt(n)`.
pub fn f_interval(n: u64, omega_prev: usize, prec: u32) -> Interval {
    let cap = primitive_cap_enclosure(n, omega_prev, prec);
    let n_sq = Interval::from_int(big(n) * big(n), prec);
    let sqrt_n = Interval::from_int(n, prec).sqrt().expect("n > 0");
    cap.div(&n_sq)
        .expect("n > 0")
        .add(&Interval::from_int(2, prec).div(&sqrt_n).expect("n > 0"))
}

/// `f(n)` rounded up.
pub fn f_overhead(n: u64) -> Result<f64> {
    let d = DegreeData::new(n)?;
    Ok(certified_evaluation(&d, DEFAULT_PRECISION)?.f.upper_f64())
}

/// Enclosure of `g(n) = (log_2 n + 1) log_2 n / (2 n^2) + 2/n^2 + 2/sqrt(n)`,
/// the surrogate for `f` obtained from `omega(n-1) <= log_2(n-1)`.
pub fn g_interval(n: u64, prec: u32) -> Interval {
    let log2 = Interval::ln_u64(n, prec).div(&Interval::ln_u64(2, prec)).expect("ln 2 > 0");
    let n_sq = Interval::from_int(big(n) * big(n), prec);
    let sqrt_n = Interval::from_int(n, prec).sqrt().expect("n > 0");
    let first = log2
        .add(&Interval::from_int(1, prec))
        .mul(&log2)
        .div(&n_sq.mul_ratio(2, 1))
        .expect("n > 0");
    first
        .add(&Interval::from_int(2, prec).div(&n_sq).expect("n > 0"))
        .add(&Interval::from_int(2, prec).div(&sqrt_n).expect("n > 0"))
}

/// `1/(2 pi^2)`.
pub fn inv_two_pi_sq(prec: u32) -> Interval {
    let pi = Interval::pi(prec);
    Interval::from_int(1, prec).div(&pi.mul(&pi).mul_ratio(2, 1)).expect("pi > 0")
}

/// `(1 - sqrt(1 - 4/pi^2))/2`, the leading coefficient of the simple form.
pub fn simple_form_constant(prec: u32) -> Interval {
    let pi = Interval::pi(prec);
    let four_over = Interval::from_int(4, prec).div(&pi.mul(&pi)).expect("pi > 0");
    let root = Interval::from_int(1, prec).sub(&four_over).sqrt().expect("1 - 4/pi^2 > 0");
    Interval::from_int(1, prec).sub(&root).mul_ratio(1, 2)
}

/// Every enclosure behind one bound report, at one precision.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub precision: u32,
    pub f: Interval,
    pub primitive_cap: Interval,
    pub imprimitive_cap: Interval,
    /// `1 - 8 zeta2 + 8 f + (16n+8)/(n+1)^2 (zeta2 - f)`
    pub radicand: Interval,
    /// `(n+1)/2 (1 - sqrt(radicand))`
    pub theorem: Interval,
    /// `8 f + (16n+8)/(n+1)^2 (zeta2 - f)`
    pub aux: Interval,
    pub corollary: Interval,
    /// `n/2 (1 - sqrt(1 - 4/pi^2)) - (sqrt 17 / 2) n^(3/4)`
    pub simple: Interval,
    /// `n/2 (1 - sqrt(1 - 8 zeta2)) - sqrt(n)`
    pub summary: Interval,
    /// `(n/2) sqrt(aux)`, compared against `(sqrt 17 / 2) n^(3/4)`
    pub aux_scaled: Interval,
    pub aux_cap: Interval,
}

impl Evaluation {
    fn intersect(&self, o: &Evaluation) -> Evaluation {
        Evaluation {
            precision: self.precision.max(o.precision),
            f: self.f.intersect(&o.f),
            primitive_cap: self.primitive_cap.intersect(&o.primitive_cap),
            imprimitive_cap: self.imprimitive_cap.intersect(&o.imprimitive_cap),
            radicand: self.radicand.intersect(&o.radicand),
            theorem: self.theorem.intersect(&o.theorem),
            aux: self.aux.intersect(&o.aux),
            corollary: self.corollary.intersect(&o.corollary),
            simple: self.simple.intersect(&o.simple),
            summary: self.summary.intersect(&o.summary),
            aux_scaled: self.aux_scaled.intersect(&o.aux_scaled),
            aux_cap: self.aux_cap.intersect(&o.aux_cap),
        }
    }
}

/// Evaluates every enclosure at a single precision.
pub fn evaluate(d: &DegreeData, prec: u32) -> Result<Evaluation> {
    let n = d.n;
    let one = Interval::from_int(1, prec);
    let n_iv = Interval::from_int(n, prec);
    let sqrt_n = n_iv.sqrt().expect("n > 0");
    let primitive_cap = primitive_cap_enclosure(n, d.omega_prev, prec);
    let imprimitive_cap = n_iv.mul(&sqrt_n).mul_ratio(2, 1);
    let n_sq = big(n) * big(n);
    let f = primitive_cap
        .div(&Interval::from_int(n_sq.clone(), prec))
        .expect("n > 0")
        .add(&Interval::from_int(2, prec).div(&sqrt_n).expect("n > 0"));

    let z = &d.zeta2;
    let n1 = big(n) + 1;
    let c = BigRational::new(big(16 * n + 8), &n1 * &n1);
    let eight = BigRational::from_integer(BigInt::from(8));
    let f_coef = Interval::from_rational(&(&eight - &c), prec);

    let radicand_exact = BigRational::one() - &eight * z + &c * z;
    let radicand = Interval::from_rational(&radicand_exact, prec).add(&f_coef.mul(&f));
    let half_n1 = Interval::from_ratio(&n1, &BigInt::from(2), prec);
    let theorem = half_n1.mul(
        &one.sub(&radicand.sqrt().ok_or_else(|| Error::Invariant(format!("radicand not positive at n = {n}")))?),
    );

    let aux = Interval::from_rational(&(&c * z), prec).add(&f_coef.mul(&f));
    let sqrt_aux = aux.sqrt().ok_or_else(|| Error::Invariant(format!("aux radicand negative at n = {n}")))?;
    let s1 = Interval::from_rational(&(BigRational::one() - &eight * z), prec)
        .sqrt()
        .expect("zeta2 < 1/12");
    let corollary = half_n1.mul(&one.sub(&s1)).sub(&half_n1.mul(&sqrt_aux));

    let half_n = Interval::from_ratio(&big(n), &BigInt::from(2), prec);
    let n_34 = n_iv.mul(&sqrt_n).sqrt().expect("n > 0");
    let sqrt17_half = Interval::from_int(17, prec).sqrt().expect("17 > 0").mul_ratio(1, 2);
    let aux_cap = sqrt17_half.mul(&n_34);
    let simple = simple_form_constant(prec).mul(&n_iv).sub(&aux_cap);
    let summary = half_n.mul(&one.sub(&s1)).sub(&sqrt_n);
    let aux_scaled = half_n.mul(&sqrt_aux);

    Ok(Evaluation {
        precision: prec,
        f,
        primitive_cap,
        imprimitive_cap,
        radicand,
        theorem,
        aux,
        corollary,
        simple,
        summary,
        aux_scaled,
        aux_cap,
    })
}

fn ladder_evaluation(d: &DegreeData, prec: u32) -> Result<Evaluation> {
    let mut ev = evaluate(d, prec)?;
    let mut p = prec / 2;
    while p >= MIN_PRECISION {
        ev = ev.intersect(&evaluate(d, p)?);
        p /= 2;
    }
    Ok(ev)
}

/// Ladder evaluation with the precision doubled until the ceiling of the
/// theorem value is determined, or [`MAX_PRECISION`] is reached.
pub fn certified_evaluation(d: &DegreeData, prec: u32) -> Result<Evaluation> {
    let mut p = prec.max(1);
    loop {
        let ev = ladder_evaluation(d, p)?;
        if ev.theorem.ceil_lower() == ev.theorem.ceil_upper() || p >= MAX_PRECISION {
            return Ok(ev);
        }
        p *= 2;
    }
}

fn check_hypothesis(g: &GroupKind) -> Result<()> {
    let ok = match g.family() {
        Family::Sym => g.n().is_multiple_of(2) && g.n() >= 4,
        Family::Alt => g.n() % 2 == 1 && g.n() >= 5,
    };
    if ok {
        Ok(())
    } else {
        domain(format!("the lower bound needs Sym(n) with n even >= 4 or Alt(n) with n odd >= 5, got {g}"))
    }
}

fn to_i64(v: BigInt) -> i64 {
    v.to_i64().expect("bound fits i64")
}

/// Certified integer lower bound for the normal covering number.
pub fn lower_bound_theorem(g: &GroupKind) -> Result<i64> {
    check_hypothesis(g)?;
    let ev = certified_evaluation(&DegreeData::new(g.n())?, DEFAULT_PRECISION)?;
    Ok(to_i64(ev.theorem.ceil_lower()))
}

/// The two corollary forms, rounded down. The simple form is `None`
/// below `n = 20`.
pub fn lower_bound_corollary(g: &GroupKind) -> Result<(f64, Option<f64>)> {
    check_hypothesis(g)?;
    let ev = certified_evaluation(&DegreeData::new(g.n())?, DEFAULT_PRECISION)?;
    let simple = (g.n() >= 20).then(|| ev.simple.lower_f64());
    Ok((ev.corollary.lower_f64(), simple))
}

/// Smaller root of `l^2 - (n+1) l + 2 deficit = 0`, rounded down.
pub fn intransitive_quadratic_solve(n: u64, deficit: &BigRational) -> Result<f64> {
    Ok(quadratic_root_interval(n, deficit, DEFAULT_PRECISION)?.lower_f64())
}

pub fn quadratic_root_interval(n: u64, deficit: &BigRational, prec: u32) -> Result<Interval> {
    let n1 = BigRational::from_integer(big(n) + 1);
    let disc = &n1 * &n1 - BigRational::from_integer(BigInt::from(8)) * deficit;
    if disc.is_negative() {
        return Err(Error::NegativeDiscriminant(disc.to_string()));
    }
    let root = Interval::from_rational(&disc, prec).sqrt().expect("disc >= 0");
    Ok(Interval::from_rational(&n1, prec).sub(&root).mul_ratio(1, 2))
}

/// Every intermediate quantity of the lower-bound pipeline for one group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u64,
    pub group: String,
    pub kind: String,
    pub requested_precision: u32,
    pub precision_bits: u32,
    pub zeta2: String,
    pub zeta2_approx: f64,
    pub omega_n_minus_1: usize,
    pub f_upper: f64,
    pub primitive_cap: f64,
    pub imprimitive_cap: f64,
    pub radicand: f64,
    pub theorem_raw: f64,
    pub theorem_bound: i64,
    pub clamped: i64,
    pub vacuous: bool,
    pub corollary_bound: f64,
    pub corollary_simple: Option<f64>,
    pub summary_sqrt_form: f64,
    pub bps_reference: Option<f64>,
    pub maroti_upper_bound: Option<f64>,
    pub conjecture_value: Option<i64>,
    pub rounding: BTreeMap<String, String>,
}

/// Column order of [`BoundReport::csv_header`]; `rounding` is JSON-only.
pub const CSV_COLUMNS: [&str; 22] = [
    "n",
    "group",
    "kind",
    "requested_precision",
    "precision_bits",
    "zeta2",
    "zeta2_approx",
    "omega_n_minus_1",
    "f_upper",
    "primitive_cap",
    "imprimitive_cap",
    "radicand",
    "theorem_raw",
    "theorem_bound",
    "clamped",
    "vacuous",
    "corollary_bound",
    "corollary_simple",
    "summary_sqrt_form",
    "bps_reference",
    "maroti_upper_bound",
    "conjecture_value",
];

fn rounding_table() -> BTreeMap<String, String> {
    [
        ("zeta2", "exact"),
        ("f_upper", "up"),
        ("primitive_cap", "up"),
        ("imprimitive_cap", "up"),
        ("radicand", "up"),
        ("theorem_raw", "down"),
        ("theorem_bound", "ceil(down)"),
        ("corollary_bound", "down"),
        ("corollary_simple", "down"),
        ("summary_sqrt_form", "down"),
        ("maroti_upper_bound", "up"),
        ("zeta2_approx", "nearest"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}

pub fn bound_report(g: &GroupKind) -> Result<BoundReport> {
    bound_report_with_precision(g, DEFAULT_PRECISION)
}

pub fn bound_report_with_precision(g: &GroupKind, prec: u32) -> Result<BoundReport> {
    check_hypothesis(g)?;
    report_from_data(g, &DegreeData::new(g.n())?, prec)
}

pub fn report_from_data(g: &GroupKind, d: &DegreeData, prec: u32) -> Result<BoundReport> {
    check_hypothesis(g)?;
    let n = g.n();
    let ev = certified_evaluation(d, prec)?;
    let theorem_bound = to_i64(ev.theorem.ceil_lower());
    let composite = n >= 4 && !numtheory::is_prime(n);
    let maroti = if composite {
        Some(Interval::from_rational(&maroti_upper_bound(n)?, 64).upper_f64())
    } else {
        None
    };
    let conjecture = if composite { Some(conjecture_value(n)?) } else { None };
    let bps = (g.family() == Family::Sym && n.is_multiple_of(2) && n >= BPS_THRESHOLD).then_some(0.025 * n as f64);
    Ok(BoundReport {
        n,
        group: g.family().to_string(),
        kind: format!("{:?}", g.kind()),
        requested_precision: prec,
        precision_bits: ev.precision,
        zeta2: d.zeta2.to_string(),
        zeta2_approx: d.zeta2.to_f64().unwrap_or(f64::NAN),
        omega_n_minus_1: d.omega_prev,
        f_upper: ev.f.upper_f64(),
        primitive_cap: ev.primitive_cap.upper_f64(),
        imprimitive_cap: ev.imprimitive_cap.upper_f64(),
        radicand: ev.radicand.upper_f64(),
        theorem_raw: ev.theorem.lower_f64(),
        theorem_bound,
        clamped: theorem_bound.max(1),
        vacuous: theorem_bound <= 0,
        corollary_bound: ev.corollary.lower_f64(),
        corollary_simple: (n >= 20).then(|| ev.simple.lower_f64()),
        summary_sqrt_form: ev.summary.lower_f64(),
        bps_reference: bps,
        maroti_upper_bound: maroti,
        conjecture_value: conjecture,
        rounding: rounding_table(),
    })
}

impl BoundReport {
    pub fn csv_header() -> Vec<&'static str> {
        CSV_COLUMNS.to_vec()
    }

    pub fn csv_record(&self) -> Vec<String> {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(|x| x.to_string()).unwrap_or_default()
        }
        vec![
            self.n.to_string(),
            self.group.clone(),
            self.kind.clone(),
            self.requested_precision.to_string(),
            self.precision_bits.to_string(),
            self.zeta2.clone(),
            self.zeta2_approx.to_string(),
            self.omega_n_minus_1.to_string(),
            self.f_upper.to_string(),
            self.primitive_cap.to_string(),
            self.imprimitive_cap.to_string(),
            self.radicand.to_string(),
            self.theorem_raw.to_string(),
            self.theorem_bound.to_string(),
            self.clamped.to_string(),
            self.vacuous.to_string(),
            self.corollary_bound.to_string(),
            opt(&self.corollary_simple),
            self.summary_sqrt_form.to_string(),
            opt(&self.bps_reference),
            opt(&self.maroti_upper_bound),
            opt(&self.conjecture_value),
        ]
    }
}

/// CSV with a header line and one record per report.
pub fn reports_to_csv(reports: &[BoundReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Invariant(format!("csv: {e}"));
    w.write_record(BoundReport::csv_header()).map_err(io)?;
    for r in reports {
        w.write_record(r.csv_record()).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invariant(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Invariant(format!("csv: {e}")))
}
