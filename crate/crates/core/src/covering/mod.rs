//! Maximal-subgroup types of `Sym(n)` and `Alt(n)` and which partition
//! types (cycle types) they cover.

pub mod blocks;
pub mod counterexample;
pub mod tables;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numtheory::{self, gcd};
use crate::partitions::{partition_number, Partition, PartitionStream, SubsetSums};

pub use blocks::preserves_block_system;
pub use counterexample::{counterexample_check, CounterexampleReport};
pub use tables::PrimitiveEntry;

/// Largest `p(n)` that [`verify_basic_set`] will enumerate.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    Sym,
    Alt,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sym => "Sym",
            Family::Alt => "Alt",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sym" => Ok(Family::Sym),
            "alt" => Ok(Family::Alt),
            _ => domain(format!("unknown group family {s:?} (expected sym or alt)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    SymEven,
    SymOdd,
    AltEven,
    AltOdd,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `Sym(n)` with `n >= 3` or `Alt(n)` with `n >= 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupKind {
    family: Family,
    n: u64,
}

impl GroupKind {
    pub fn new(family: Family, n: u64) -> Result<Self> {
        let min = match family {
            Family::Sym => 3,
            Family::Alt => 4,
        };
        if n < min {
            return domain(format!("{family}(n) has no normal covering for n < {min}, got n = {n}"));
        }
        Ok(GroupKind { family, n })
    }

    pub fn sym(n: u64) -> Result<Self> {
        Self::new(Family::Sym, n)
    }

    pub fn alt(n: u64) -> Result<Self> {
        Self::new(Family::Alt, n)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn kind(&self) -> Kind {
        match (self.family, self.n.is_multiple_of(2)) {
            (Family::Sym, true) => Kind::SymEven,
            (Family::Sym, false) => Kind::SymOdd,
            (Family::Alt, true) => Kind::AltEven,
            (Family::Alt, false) => Kind::AltOdd,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.n)
    }
}

/// A basic component, up to conjugacy.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SubgroupType {
    /// `Sym(x) x Sym(n-x)`, `1 <= x < n/2`
    Intransitive(u64),
    /// `Sym(b) wr Sym(n/b)`, `2 <= b <= n/2`, `b | n`
    Imprimitive(u64),
    Alternating,
    Primitive(PrimitiveEntry),
}

impl fmt::Display for SubgroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupType::Intransitive(x) => write!(f, "intransitive:{x}"),
            SubgroupType::Imprimitive(b) => write!(f, "imprimitive:{b}"),
            SubgroupType::Alternating => f.write_str("alternating"),
            SubgroupType::Primitive(e) => write!(f, "primitive:{e}"),
        }
    }
}

impl FromStr for SubgroupType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("cannot parse subgroup type {s:?}"));
        let num = |v: &str| v.trim().parse::<u64>().map_err(|_| bad());
        let s = s.trim();
        if s.eq_ignore_ascii_case("alternating") {
            return Ok(SubgroupType::Alternating);
        }
        let (tag, rest) = s.split_once(':').ok_or_else(bad)?;
        match tag.to_ascii_lowercase().as_str() {
            "intransitive" => Ok(SubgroupType::Intransitive(num(rest)?)),
            "imprimitive" => Ok(SubgroupType::Imprimitive(num(rest)?)),
            "primitive" => {
                let (row, params) = rest.split_once(':').ok_or_else(bad)?;
                let params = params.split(',').map(num).collect::<Result<Vec<_>>>()?;
                Ok(SubgroupType::Primitive(PrimitiveEntry { row: row.to_string(), params }))
            }
            _ => Err(bad()),
        }
    }
}

impl SubgroupType {
    /// Checks the variant constraints for `g`.
    pub fn validate(&self, g: &GroupKind) -> Result<()> {
        let n = g.n();
        let invalid = |reason: String| Err(Error::InvalidComponent { group: g.to_string(), reason });
        match self {
            SubgroupType::Intransitive(x) => {
                if *x == 0 || 2 * x >= n {
                    return invalid(format!("intransitive:{x} needs 1 <= x < n/2"));
                }
            }
            SubgroupType::Imprimitive(b) => {
                if *b < 2 || 2 * b > n || !n.is_multiple_of(*b) {
                    return invalid(format!("imprimitive:{b} needs 2 <= b <= n/2 and b | n"));
                }
            }
            SubgroupType::Alternating => {
                if g.family() == Family::Alt {
                    return invalid("alternating is not a proper subgroup of Alt(n)".into());
                }
            }
            SubgroupType::Primitive(e) => {
                if let Err(err) = tables::shipped().resolve(e, n) {
                    return invalid(err.to_string());
                }
            }
        }
        Ok(())
    }
}

/// True for `Sym(n)`; for `Alt(n)` true iff the permutation type is even.
pub fn partition_in_group(p: &Partition, g: &GroupKind) -> Result<bool> {
    if p.n() != g.n() {
        return domain(format!("partition {p} sums to {}, not to the degree {}", p.n(), g.n()));
    }
    Ok(match g.family() {
        Family::Sym => true,
        Family::Alt => is_even_type(p.terms()),
    })
}

fn is_even_type(terms: &[u64]) -> bool {
    let n: u64 = terms.iter().sum();
    (n - terms.len() as u64).is_multiple_of(2)
}

/// Whether some conjugate of the component contains a permutation of type `p`.
pub fn covers(s: &SubgroupType, p: &Partition, g: &GroupKind) -> Result<bool> {
    s.validate(g)?;
    if !partition_in_group(p, g)? {
        return domain(format!("{p} is not a type of {g}"));
    }
    Ok(match s {
        SubgroupType::Intransitive(x) => SubsetSums::new(p.terms(), *x).contains(*x),
        SubgroupType::Imprimitive(b) => preserves_block_system(p.terms(), *b),
        SubgroupType::Alternating => is_even_type(p.terms()),
        SubgroupType::Primitive(e) => &tables::shipped().resolve(e, g.n())? == p,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicSet {
    pub group: GroupKind,
    pub components: BTreeSet<SubgroupType>,
}

impl BasicSet {
    pub fn new(group: GroupKind, components: impl IntoIterator<Item = SubgroupType>) -> Result<Self> {
        let components: BTreeSet<_> = components.into_iter().collect();
        for c in &components {
            c.validate(&group)?;
        }
        Ok(BasicSet { group, components })
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// The construction: `P_k` for `k <= n/3`, `P_k` for `k < n/2` coprime to
/// `n`, and `Sym(p) wr Sym(n/p)` for each prime `p | n`.
pub fn maroti_basic_set(n: u64) -> Result<BasicSet> {
    if n < 4 || numtheory::is_prime(n) {
        return domain(format!("the construction needs a composite n >= 4, got {n}"));
    }
    let mut comps = BTreeSet::new();
    for k in 1..=n / 3 {
        comps.insert(SubgroupType::Intransitive(k));
    }
    for k in (1..).take_while(|k| 2 * k < n) {
        if gcd(k, n) == 1 {
            comps.insert(SubgroupType::Intransitive(k));
        }
    }
    for p in numtheory::factorize(n)?.primes() {
        comps.insert(SubgroupType::Imprimitive(p));
    }
    BasicSet::new(GroupKind::sym(n)?, comps)
}

/// `n/3 + phi(n)/2 + omega(n)`.
pub fn maroti_upper_bound(n: u64) -> Result<BigRational> {
    let f = numtheory::factorize(n)?;
    let r = |a: u64, b: u64| BigRational::new(BigInt::from(a), BigInt::from(b));
    Ok(r(n, 3) + r(f.euler_phi(), 2) + r(f.omega() as u64, 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub group: String,
    pub components: usize,
    pub checked: u64,
    pub covered: u64,
    /// First uncovered types in enumeration order, at most `limit` of them.
    pub uncovered: Vec<Partition>,
    pub uncovered_total: u64,
    pub complete: bool,
}

struct Compiled {
    alt_group: bool,
    alternating: bool,
    intransitive: Vec<u64>,
    imprimitive: Vec<u64>,
    primitive: BTreeSet<Partition>,
}

impl Compiled {
    fn new(bs: &BasicSet) -> Result<Self> {
        let mut c = Compiled {
            alt_group: bs.group.family() == Family::Alt,
            alternating: false,
            intransitive: Vec::new(),
            imprimitive: Vec::new(),
            primitive: BTreeSet::new(),
        };
        for s in &bs.components {
            match s {
                SubgroupType::Intransitive(x) => c.intransitive.push(*x),
                SubgroupType::Imprimitive(b) => c.imprimitive.push(*b),
                SubgroupType::Alternating => c.alternating = true,
                SubgroupType::Primitive(e) => {
                    c.primitive.insert(tables::shipped().resolve(e, bs.group.n())?);
                }
            }
        }
        Ok(c)
    }

    fn covered(&self, terms: &[u64]) -> bool {
        let even = is_even_type(terms);
        if self.alternating && even {
            return true;
        }
        if terms.len() == 3 && !self.primitive.is_empty() {
            if let Ok(p) = Partition::new(terms.to_vec()) {
                if self.primitive.contains(&p) {
                    return true;
                }
            }
        }
        if let Some(&max_x) = self.intransitive.iter().max() {
            if terms.iter().any(|t| self.intransitive.contains(t)) {
                return true;
            }
            let sums = SubsetSums::new(terms, max_x);
            if self.intransitive.iter().any(|&x| sums.contains(x)) {
                return true;
            }
        }
        self.imprimitive.iter().any(|&b| preserves_block_system(terms, b))
    }

    fn in_group(&self, terms: &[u64]) -> bool {
        !self.alt_group || is_even_type(terms)
    }
}

const CHUNK: usize = 1 << 14;

/// Enumerates every type of the group and reports those no component
/// covers. Refuses when `p(n)` exceeds [`ENUMERATION_LIMIT`].
pub fn verify_basic_set(bs: &BasicSet, limit: usize) -> Result<CoverageReport> {
    let n = bs.group.n();
    let count = partition_number(n)?;
    if count > ENUMERATION_LIMIT {
        return Err(Error::EnumerationGuard { n, count, limit: ENUMERATION_LIMIT });
    }
    let compiled = Compiled::new(bs)?;
    let mut stream = PartitionStream::new(n, None);
    let mut report = CoverageReport {
        group: bs.group.to_string(),
        components: bs.len(),
        checked: 0,
        covered: 0,
        uncovered: Vec::new(),
        uncovered_total: 0,
        complete: false,
    };
    let mut chunk: Vec<Vec<u64>> = Vec::with_capacity(CHUNK);
    loop {
        chunk.clear();
        while chunk.len() < CHUNK {
            match stream.advance() {
                Some(t) if compiled.in_group(t) => chunk.push(t.to_vec()),
                Some(_) => {}
                None => break,
            }
        }
        if chunk.is_empty() {
            break;
        }
        let misses: Vec<usize> = chunk
            .par_iter()
            .enumerate()
            .filter(|(_, t)| !compiled.covered(t))
            .map(|(i, _)| i)
            .collect();
        report.checked += chunk.len() as u64;
        report.uncovered_total += misses.len() as u64;
        for i in misses {
            if report.uncovered.len() < limit {
                report.uncovered.push(Partition::new(chunk[i].clone())?);
            }
        }
        if chunk.len() < CHUNK {
            break;
        }
    }
    report.covered = report.checked - report.uncovered_total;
    report.complete = report.uncovered_total == 0;
    Ok(report)
}

/// The conjectured normal covering number of `Sym(n)`, from the
/// factorization `n = p1^a1 ... pr^ar`.
pub fn conjecture_value(n: u64) -> Result<i64> {
    if n < 3 {
        return domain(format!("conjecture_value requires n >= 3, got {n}"));
    }
    let f = numtheory::factorize(n)?;
    let r = |a: u64, b: u64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let factors = f.factors();
    let (p1, a1) = factors[0];
    let half = r(n, 2) * r(p1 - 1, p1);
    let v = if factors.len() == 1 {
        if a1 == 1 {
            half
        } else {
            half + r(1, 1)
        }
    } else {
        let p2 = factors[1].0;
        let base = half * r(p2 - 1, p2);
        if f.big_omega() == 2 {
            base + r(1, 1)
        } else {
            base + r(2, 1)
        }
    };
    if !v.is_integer() {
        return Err(Error::Invariant(format!("conjectured value {v} at n = {n} is not an integer")));
    }
    v.to_integer().to_i64().ok_or(Error::Overflow("conjecture_value"))
}

/// The catalogued coprime 3-partition types of proper primitive groups of
/// degree `n`, restricted to the types that lie in `g`.
pub fn primitive_coprime3_types(g: &GroupKind) -> Result<BTreeSet<Partition>> {
    let mut out = BTreeSet::new();
    for (_, p) in tables::shipped().instances(g.n())? {
        if p.n() != g.n() || p.len() != 3 || !p.is_coprime() {
            return Err(Error::Invariant(format!("catalog type {p} is not a coprime 3-partition of {}", g.n())));
        }
        if partition_in_group(&p, g)? {
            out.insert(p);
        }
    }
    Ok(out)
}

/// Catalog membership annotated with every row instance producing it.
pub fn primitive_catalog_sources(n: u64) -> Result<BTreeMap<Partition, Vec<PrimitiveEntry>>> {
    let mut out: BTreeMap<Partition, Vec<PrimitiveEntry>> = BTreeMap::new();
    for (e, p) in tables::shipped().instances(n)? {
        out.entry(p).or_default().push(e);
    }
    Ok(out)
}

/// Number of coprime 3-partitions of `n` preserving a block system with
/// blocks of some size `b`, `2 <= b <= n/2`.
pub fn imprimitive_coprime3_count(n: u64) -> Result<u64> {
    if n < 3 {
        return domain(format!("imprimitive_coprime3_count requires n >= 3, got {n}"));
    }
    if numtheory::is_prime(n) {
        return Ok(0);
    }
    let bs: Vec<u64> = (2..=n / 2).filter(|b| n.is_multiple_of(*b)).collect();
    let mut stream = PartitionStream::new(n, Some(3));
    let mut count = 0;
    while let Some(t) = stream.advance() {
        if gcd(gcd(t[0], t[1]), t[2]) == 1 && bs.iter().any(|&b| preserves_block_system(t, b)) {
            count += 1;
        }
    }
    Ok(count)
}
