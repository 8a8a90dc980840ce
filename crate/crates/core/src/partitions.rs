//! Integer partitions: enumeration, exact counts of k-partitions and
//! coprime k-partitions, x-clusters and intersections of the sets of
//! 3-partitions carrying prescribed clusters.
//!
//! A [`Partition`] is stored with its terms in non-increasing order so
//! that multiset equality is plain `Vec` equality. Display order is the
//! same; the CLI never reorders.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numtheory::{self, gcd, prime_power};

/// A multiset of positive integers, terms sorted non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Partition {
    terms: Vec<u64>,
}

impl Partition {
    pub fn new(mut terms: Vec<u64>) -> Result<Self> {
        if terms.is_empty() {
            return domain("a partition needs at least one term");
        }
        if terms.contains(&0) {
            return domain("partition terms must be positive");
        }
        terms.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { terms })
    }

    /// Caller guarantees positive, non-increasing terms.
    pub(crate) fn from_sorted(terms: Vec<u64>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] >= w[1]));
        Partition { terms }
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n(&self) -> u64 {
        self.terms.iter().sum()
    }

    pub fn gcd(&self) -> u64 {
        self.terms.iter().fold(0, |g, &t| gcd(g, t))
    }

    pub fn is_coprime(&self) -> bool {
        self.gcd() == 1
    }
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = Error;
    fn try_from(terms: Vec<u64>) -> Result<Self> {
        Partition::new(terms)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Vec<u64> {
        p.terms
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `5,3,2` or `[5,3,2]`, any order, optional spaces.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let terms = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Domain(format!("bad partition term {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(terms)
    }
}

/// Streams the partitions of `n` (optionally with exactly `k` parts) in
/// reverse lexicographic order without allocating per item. Use
/// [`PartitionStream::advance`] in hot loops; the `Iterator` impl clones.
pub struct PartitionStream {
    terms: Vec<u64>,
    parts: Option<usize>,
    started: bool,
    done: bool,
}

impl PartitionStream {
    pub fn new(n: u64, k: Option<usize>) -> Self {
        let mut s = PartitionStream { terms: Vec::new(), parts: k, started: false, done: false };
        match k {
            _ if n == 0 => s.done = true,
            None => s.terms = vec![n],
            Some(k) if k == 0 || k as u64 > n => s.done = true,
            Some(k) => {
                s.terms = vec![1; k];
                s.terms[0] = n - k as u64 + 1;
            }
        }
        s
    }

    pub fn advance(&mut self) -> Option<&[u64]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.terms);
        }
        let found = match self.parts {
            None => self.step_unrestricted(),
            Some(_) => self.step_fixed_length(),
        };
        if found {
            Some(&self.terms)
        } else {
            self.done = true;
            None
        }
    }

    fn step_unrestricted(&mut self) -> bool {
        let Some(i) = self.terms.iter().rposition(|&t| t > 1) else {
            return false;
        };
        let ones = (self.terms.len() - i - 1) as u64;
        let v = self.terms[i] - 1;
        let mut rest = ones + 1;
        self.terms.truncate(i);
        self.terms.push(v);
        while rest > 0 {
            let t = rest.min(v);
            self.terms.push(t);
            rest -= t;
        }
        true
    }

    fn step_fixed_length(&mut self) -> bool {
        let k = self.terms.len();
        if k < 2 {
            return false;
        }
        // Rightmost i < k-1 whose decrement still admits a completion of
        // the suffix into k - i parts bounded by the new value.
        let mut suffix: u64 = self.terms[k - 1];
        for i in (0..k - 1).rev() {
            suffix += self.terms[i];
            let cap = self.terms[i] - 1;
            let slots = (k - i) as u64;
            if cap >= 1 && suffix <= slots * cap {
                let mut remaining = suffix;
                for j in i..k {
                    let after = (k - j - 1) as u64;
                    let t = cap.min(remaining - after);
                    self.terms[j] = t;
                    remaining -= t;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for PartitionStream {
    type Item = Partition;
    fn next(&mut self) -> Option<Partition> {
        self.advance().map(|t| Partition::from_sorted(t.to_vec()))
    }
}

/// All partitions of `n`, or all with exactly `k` parts.
pub fn enumerate_partitions(n: u64, k: Option<usize>) -> Result<PartitionStream> {
    if n == 0 {
        return domain("enumerate_partitions requires n >= 1");
    }
    if k == Some(0) {
        return domain("enumerate_partitions requires k >= 1");
    }
    Ok(PartitionStream::new(n, k))
}

/// p(n) by Euler's pentagonal recurrence.
pub fn partition_number(n: u64) -> Result<u128> {
    let n = n as usize;
    let mut table: Vec<u128> = vec![0; n + 1];
    table[0] = 1;
    for i in 1..=n {
        let mut acc: i128 = 0;
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > i {
                break;
            }
            let sign: i128 = if j % 2 == 1 { 1 } else { -1 };
            let mut term = table[i - g1] as i128;
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= i {
                term = term.checked_add(table[i - g2] as i128).ok_or(Error::Overflow("p(n)"))?;
            }
            acc = acc.checked_add(sign * term).ok_or(Error::Overflow("p(n)"))?;
        }
        table[i] = u128::try_from(acc).map_err(|_| Error::Overflow("p(n)"))?;
    }
    Ok(table[n])
}

fn p3_closed_form(n: u64) -> Result<u128> {
    let n = n as i128;
    let eps = if n % 3 == 0 { Ratio::new(1, 3) } else { Ratio::from_integer(0) };
    let value = Ratio::new((n - 1) * (n - 2), 12) + Ratio::new((n - 1) / 2, 2) + eps;
    if !value.is_integer() {
        return Err(Error::Invariant(format!("p_3({n}) closed form is not integral: {value}")));
    }
    Ok(value.to_integer() as u128)
}

fn pk_recurrence(n: u64, k: u64) -> Result<u128> {
    // p_k(n) = p_{k-1}(n-1) + p_k(n-k), rows indexed by k.
    let (n, k) = (n as usize, k as usize);
    let mut prev = vec![0u128; n + 1];
    prev[0] = 1; // k = 0
    for parts in 1..=k {
        let mut cur = vec![0u128; n + 1];
        for m in parts..=n {
            cur[m] = prev[m - 1]
                .checked_add(cur[m - parts])
                .ok_or(Error::Overflow("p_k(n)"))?;
        }
        prev = cur;
    }
    Ok(prev[n])
}

/// p_k(n): closed forms for k = 2, 3, the two-variable recurrence otherwise.
pub fn count_partitions(n: u64, k: u64) -> Result<u128> {
    if n == 0 || k == 0 {
        return domain("count_partitions requires n, k >= 1");
    }
    if k > n {
        return Ok(0);
    }
    match k {
        1 => Ok(1),
        2 => Ok((n / 2) as u128),
        3 => p3_closed_form(n),
        _ => pk_recurrence(n, k),
    }
}

/// Same quantity, always via the recurrence. Used to cross-check the
/// closed forms.
pub fn count_partitions_recurrence(n: u64, k: u64) -> Result<u128> {
    if n == 0 || k == 0 {
        return domain("count_partitions requires n, k >= 1");
    }
    if k > n {
        return Ok(0);
    }
    pk_recurrence(n, k)
}

/// n^2 * prod_{p | n} (1 - 1/p^2) / 12, evaluated exactly.
fn p3_coprime_closed_form(n: u64) -> Result<u128> {
    let f = numtheory::factorize(n)?;
    let mut value = Ratio::new(n as i128 * n as i128, 12);
    for p in f.primes() {
        let p2 = p as i128 * p as i128;
        value *= Ratio::new(p2 - 1, p2);
    }
    if !value.is_integer() {
        return Err(Error::Invariant(format!("p_3({n})' closed form is not integral: {value}")));
    }
    Ok(value.to_integer() as u128)
}

/// |P_k(n)'|, the number of k-partitions of n with coprime terms.
pub fn count_coprime(n: u64, k: u64) -> Result<u128> {
    if n == 0 || k == 0 {
        return domain("count_coprime requires n, k >= 1");
    }
    if k > n {
        return Ok(0);
    }
    match k {
        2 => {
            let phi = numtheory::euler_phi(n)?;
            Ok(phi.div_ceil(2) as u128)
        }
        3 if n >= 4 => p3_coprime_closed_form(n),
        _ => count_coprime_enumerated(n, k),
    }
}

pub fn count_coprime_enumerated(n: u64, k: u64) -> Result<u128> {
    let mut stream = enumerate_partitions(n, Some(k as usize))?;
    let mut count = 0u128;
    while let Some(t) = stream.advance() {
        if t.iter().fold(0, |g, &x| gcd(g, x)) == 1 {
            count += 1;
        }
    }
    Ok(count)
}

/// Bitset of the sub-multiset sums of `terms` that do not exceed `limit`.
#[derive(Debug, Clone)]
pub struct SubsetSums {
    words: Vec<u64>,
    limit: u64,
}

impl SubsetSums {
    pub fn new(terms: &[u64], limit: u64) -> Self {
        let len = (limit as usize + 64) / 64;
        let mut words = vec![0u64; len];
        words[0] = 1;
        for &t in terms {
            if t > limit {
                continue;
            }
            let (ws, bs) = ((t / 64) as usize, (t % 64) as u32);
            for i in (ws..len).rev() {
                let mut v = words[i - ws] << bs;
                if bs > 0 && i > ws {
                    v |= words[i - ws - 1] >> (64 - bs);
                }
                words[i] |= v;
            }
        }
        let tail = (limit % 64) as u32;
        if let Some(last) = words.last_mut() {
            if tail < 63 {
                *last &= (1u64 << (tail + 1)) - 1;
            }
        }
        SubsetSums { words, limit }
    }

    pub fn contains(&self, s: u64) -> bool {
        s <= self.limit && (self.words[(s / 64) as usize] >> (s % 64)) & 1 == 1
    }
}

fn check_cluster_target(n: u64, x: u64) -> Result<()> {
    if n < 2 || x == 0 || x >= n {
        return domain(format!("cluster size x must satisfy 1 <= x <= n-1 (n = {n}, x = {x})"));
    }
    Ok(())
}

fn has_cluster_terms(terms: &[u64], n: u64, x: u64) -> bool {
    let t = x.min(n - x);
    match *terms {
        [a] => a == t,
        [a, b] => a == t || b == t,
        [a, b, c] => a == t || b == t || c == t || a + b == t || a + c == t || b + c == t,
        _ => SubsetSums::new(terms, t).contains(t),
    }
}

/// True iff some nonempty sub-multiset of the terms sums to `x`.
pub fn has_cluster(p: &Partition, x: u64) -> Result<bool> {
    let n = p.n();
    check_cluster_target(n, x)?;
    Ok(has_cluster_terms(&p.terms, n, x))
}

/// p_3(n, x) by the closed form.
pub fn p3_cluster_formula(n: u64, x: u64) -> u64 {
    if n >= 4 && n.is_multiple_of(2) && 2 * x == n {
        n / 4
    } else {
        (n - x) / 2 + x / 2
    }
}

/// |P_k(n, x)|, the k-partitions of n with an x-cluster.
pub fn count_cluster_partitions(n: u64, x: u64, k: u64) -> Result<u64> {
    check_cluster_target(n, x)?;
    if k == 0 {
        return domain("count_cluster_partitions requires k >= 1");
    }
    if k == 3 {
        return Ok(p3_cluster_formula(n, x));
    }
    let mut stream = PartitionStream::new(n, Some(k as usize));
    let mut count = 0;
    while let Some(t) = stream.advance() {
        if has_cluster_terms(t, n, x) {
            count += 1;
        }
    }
    Ok(count)
}

/// A set of cluster sizes `1 <= x < n/2` for degree `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterFamily {
    n: u64,
    xs: Vec<u64>,
}

impl ClusterFamily {
    pub fn new(n: u64, xs: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut xs: Vec<u64> = xs.into_iter().collect();
        xs.sort_unstable();
        if xs.windows(2).any(|w| w[0] == w[1]) {
            return domain("cluster family members must be distinct");
        }
        let max = n.div_ceil(2).saturating_sub(1);
        if let Some(&bad) = xs.iter().find(|&&x| x == 0 || x > max) {
            return domain(format!("cluster size {bad} outside [1, {max}] for n = {n}"));
        }
        Ok(ClusterFamily { n, xs })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn xs(&self) -> &[u64] {
        &self.xs
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

fn triple(a: u64, b: u64, c: u64) -> Partition {
    let mut t = vec![a, b, c];
    t.sort_unstable_by(|a, b| b.cmp(a));
    Partition::from_sorted(t)
}

/// P_3(n, x) built directly: partitions with x as a term, plus those with
/// n - x as a term.
fn cluster_set_single(n: u64, x: u64) -> BTreeSet<Partition> {
    let mut out = BTreeSet::new();
    for (fixed, rest) in [(x, n - x), (n - x, x)] {
        for a in 1..=rest / 2 {
            out.insert(triple(fixed, a, rest - a));
        }
    }
    out
}

/// The exact intersection of P_3(n, x) over the family. One member gives
/// the whole cluster set; two give the two partitions `[x, y, n-x-y]` and
/// `[x, y-x, n-y]`; three give `[x, y, n-x-y]` exactly when
/// `z` is `x + y` or `n - x - y`, and nothing otherwise; four or more
/// always give the empty set.
pub fn cluster_intersection(fam: &ClusterFamily) -> Result<BTreeSet<Partition>> {
    let n = fam.n;
    Ok(match *fam.xs() {
        [] => return domain("cluster_intersection requires a nonempty family"),
        [x] => cluster_set_single(n, x),
        [x, y] => BTreeSet::from([triple(x, y, n - x - y), triple(x, y - x, n - y)]),
        [x, y, z] => {
            if z == x + y || z == n - x - y {
                BTreeSet::from([triple(x, y, n - x - y)])
            } else {
                BTreeSet::new()
            }
        }
        [_, _, _, _] => BTreeSet::new(),
        _ => {
            return Err(Error::Unsupported(format!(
                "cluster_intersection of {} sets (at most 4 supported)",
                fam.len()
            )))
        }
    })
}

/// Brute-force intersection over an enumeration of all 3-partitions.
pub fn cluster_intersection_enumerated(fam: &ClusterFamily) -> BTreeSet<Partition> {
    let n = fam.n;
    let mut out = BTreeSet::new();
    let mut stream = PartitionStream::new(n, Some(3));
    while let Some(t) = stream.advance() {
        if fam.xs.iter().all(|&x| has_cluster_terms(t, n, x)) {
            out.insert(Partition::from_sorted(t.to_vec()));
        }
    }
    out
}

/// [`cluster_intersection`] with the result checked against enumeration.
pub fn cluster_intersection_checked(fam: &ClusterFamily) -> Result<BTreeSet<Partition>> {
    let closed = cluster_intersection(fam)?;
    let brute = cluster_intersection_enumerated(fam);
    if closed != brute {
        return Err(Error::Invariant(format!(
            "cluster intersection mismatch for n = {}, X = {:?}",
            fam.n, fam.xs
        )));
    }
    Ok(closed)
}

/// |union of P_3(n, x_i)| by inclusion-exclusion. Pairwise intersections
/// have size 2, a triple contributes one partition exactly when its
/// largest member is the sum of the other two or their complement in n,
/// and deeper intersections are empty.
pub fn union_cluster_count(fam: &ClusterFamily) -> u64 {
    let n = fam.n;
    let xs = &fam.xs;
    let l = xs.len() as u64;
    if l == 0 {
        return 0;
    }
    let singles: u64 = xs.iter().map(|&x| p3_cluster_formula(n, x)).sum();
    let pairs = l * (l - 1) / 2;
    let mut member = vec![false; n as usize + 1];
    for &x in xs {
        member[x as usize] = true;
    }
    let mut triples = 0u64;
    for (i, &x) in xs.iter().enumerate() {
        for &y in &xs[i + 1..] {
            let s = x + y;
            if (s <= n && member[s as usize]) || (s < n && n - s > y && member[(n - s) as usize]) {
                triples += 1;
            }
        }
    }
    singles + triples - 2 * pairs
}

/// Terms of the projective-line-type coprime triple in u128:
/// `(q^d1 - 1)/(q - 1)`, `(q^d2 - 1)/(q - 1)`, `(q^d1 - 1)(q^d2 - 1)/(q - 1)`
/// in non-increasing order, together with their sum `(q^(d1+d2) - 1)/(q - 1)`.
pub fn projective_terms(q: u64, d1: u32, d2: u32) -> Result<([u128; 3], u128)> {
    if prime_power(q).is_none() {
        return domain(format!("q = {q} is not a prime power"));
    }
    if d1 == 0 || d2 == 0 {
        return domain("d1, d2 must be >= 1");
    }
    if gcd(d1 as u64, d2 as u64) != 1 {
        return domain(format!("gcd(d1, d2) = gcd({d1}, {d2}) != 1"));
    }
    let overflow = Error::Overflow("projective triple");
    let r1 = numtheory::repunit(q, d1).ok_or(overflow.clone())?;
    let r2 = numtheory::repunit(q, d2).ok_or(overflow.clone())?;
    let big = r1.checked_mul(r2).and_then(|v| v.checked_mul(q as u128 - 1)).ok_or(overflow.clone())?;
    let total = numtheory::repunit(q, d1 + d2).ok_or(overflow)?;
    let mut t = [r1, r2, big];
    t.sort_unstable_by(|a, b| b.cmp(a));
    Ok((t, total))
}

pub fn projective_triple(q: u64, d1: u32, d2: u32) -> Result<Partition> {
    let (t, _) = projective_terms(q, d1, d2)?;
    let terms = t
        .iter()
        .map(|&v| u64::try_from(v).map_err(|_| Error::Overflow("projective triple")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition::from_sorted(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[u64]) -> Partition {
        Partition::new(terms.to_vec()).unwrap()
    }

    fn listed(n: u64, k: Option<usize>) -> Vec<String> {
        enumerate_partitions(n, k).unwrap().map(|p| p.to_string()).collect()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(listed(3, None), vec!["[3]", "[2,1]", "[1,1,1]"]);
        assert_eq!(listed(6, Some(3)), vec!["[4,1,1]", "[3,2,1]", "[2,2,2]"]);
        assert_eq!(enumerate_partitions(50, None).unwrap().count(), 204_226);
        assert_eq!(enumerate_partitions(4, Some(5)).unwrap().count(), 0);
        assert_eq!(listed(1, None), vec!["[1]"]);
        assert_eq!(listed(5, Some(5)), vec!["[1,1,1,1,1]"]);
        assert_eq!(listed(5, Some(1)), vec!["[5]"]);
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        for n in 1..=18 {
            let all: Vec<Partition> = enumerate_partitions(n, None).unwrap().collect();
            let set: BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
            assert_eq!(all.len() as u128, partition_number(n).unwrap());
            for q in &all {
                assert_eq!(q.n(), n);
                assert!(q.terms().windows(2).all(|w| w[0] >= w[1]));
            }
            for k in 1..=n as usize {
                let ks: Vec<Partition> = enumerate_partitions(n, Some(k)).unwrap().collect();
                let expected: Vec<Partition> = all.iter().filter(|q| q.len() == k).cloned().collect();
                assert_eq!(ks, expected, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn partition_number_matches_known_values() {
        assert_eq!(partition_number(36).unwrap(), 17_977);
        assert_eq!(partition_number(50).unwrap(), 204_226);
        assert_eq!(partition_number(100).unwrap(), 190_569_292);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_partitions(9, 3).unwrap(), 7);
        assert_eq!(enumerate_partitions(9, Some(3)).unwrap().count(), 7);
        for n in 1..50 {
            assert_eq!(count_partitions(n, 1).unwrap(), 1);
            assert_eq!(count_partitions(n, n).unwrap(), 1);
        }
        assert_eq!(
            count_partitions(100, 3).unwrap(),
            enumerate_partitions(100, Some(3)).unwrap().count() as u128
        );
        assert_eq!(count_partitions(100, 3).unwrap(), 833);
        assert_eq!(count_partitions(3, 4).unwrap(), 0);
    }

    #[test]
    fn closed_forms_agree_with_recurrence() {
        for n in 1..=400 {
            for k in [2, 3] {
                assert_eq!(count_partitions(n, k).unwrap(), count_partitions_recurrence(n, k).unwrap());
            }
        }
    }

    #[test]
    fn coprime_examples() {
        assert_eq!(count_coprime(6, 3).unwrap(), 2);
        assert_eq!(count_coprime(12, 2).unwrap(), 2);
        assert_eq!(count_coprime(3, 3).unwrap(), 1);
        assert_eq!(count_coprime(1, 2).unwrap(), 0);
        assert_eq!(count_coprime(2, 2).unwrap(), 1);
        assert_eq!(count_coprime(1, 1).unwrap(), 1);
        assert_eq!(count_coprime(7, 1).unwrap(), 0);
    }

    #[test]
    fn coprime_counts_match_filtered_enumeration() {
        for n in 1..=200 {
            for k in 1..=5 {
                assert_eq!(
                    count_coprime(n, k).unwrap(),
                    count_coprime_enumerated(n, k).unwrap(),
                    "n = {n}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn cluster_examples() {
        assert!(has_cluster(&p(&[5, 4, 1]), 5).unwrap());
        assert!(has_cluster(&p(&[5, 4, 1]), 9).unwrap());
        assert!(!has_cluster(&p(&[3, 3, 3]), 4).unwrap());
        assert!(has_cluster(&p(&[3, 3, 3]), 6).unwrap());
        assert!(has_cluster(&p(&[3, 3, 3]), 0).is_err());
        assert!(has_cluster(&p(&[3, 3, 3]), 9).is_err());
    }

    #[test]
    fn subset_sums_long_partitions() {
        let q = p(&[7, 7, 7, 7, 5, 3, 1, 1, 1, 1]);
        for x in 1..q.n() {
            let brute = (1u32..(1 << q.len())).any(|mask| {
                q.terms().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| t).sum::<u64>() == x
            });
            assert_eq!(has_cluster(&q, x).unwrap(), brute, "x = {x}");
        }
        let wide = p(&[130, 70, 64, 1]);
        assert!(has_cluster(&wide, 135).unwrap());
        assert!(has_cluster(&wide, 131).unwrap());
        assert!(!has_cluster(&wide, 100).unwrap());
    }

    #[test]
    fn cluster_count_examples() {
        assert_eq!(count_cluster_partitions(10, 5, 3).unwrap(), 2);
        assert_eq!(count_cluster_partitions(10, 3, 3).unwrap(), 4);
        let brute: Vec<String> = enumerate_partitions(10, Some(3))
            .unwrap()
            .filter(|q| has_cluster(q, 5).unwrap())
            .map(|q| q.to_string())
            .collect();
        assert_eq!(brute, vec!["[5,4,1]", "[5,3,2]"]);
        assert_eq!(count_cluster_partitions(10, 1, 3).unwrap(), 4);
        assert_eq!(count_cluster_partitions(8, 3, 2).unwrap(), 1);
        assert_eq!(count_cluster_partitions(8, 3, 1).unwrap(), 0);
    }

    #[test]
    fn intersection_examples() {
        let fam = ClusterFamily::new(10, [2, 3]).unwrap();
        let got: Vec<String> = cluster_intersection(&fam).unwrap().iter().map(|q| q.to_string()).collect();
        assert_eq!(got, vec!["[5,3,2]", "[7,2,1]"]);
        assert_eq!(cluster_intersection_checked(&fam).unwrap().len(), 2);

        let fam = ClusterFamily::new(20, [2, 5, 7]).unwrap();
        let got: Vec<String> = cluster_intersection(&fam).unwrap().iter().map(|q| q.to_string()).collect();
        assert_eq!(got, vec!["[13,5,2]"]);

        let fam = ClusterFamily::new(30, [2, 5, 7, 11]).unwrap();
        assert!(cluster_intersection_checked(&fam).unwrap().is_empty());

        let fam = ClusterFamily::new(30, [1, 2, 3, 4, 5]).unwrap();
        assert!(matches!(cluster_intersection(&fam), Err(Error::Unsupported(_))));
    }

    #[test]
    fn cluster_family_validation() {
        assert!(ClusterFamily::new(10, [5]).is_err());
        assert!(ClusterFamily::new(10, [4]).is_ok());
        assert!(ClusterFamily::new(11, [5]).is_ok());
        assert!(ClusterFamily::new(11, [0]).is_err());
        assert!(ClusterFamily::new(11, [2, 2]).is_err());
        assert_eq!(ClusterFamily::new(11, [3, 1]).unwrap().xs(), &[1, 3]);
    }

    #[test]
    fn union_examples() {
        let fam = ClusterFamily::new(10, [1]).unwrap();
        assert_eq!(union_cluster_count(&fam), 4);
        for n in 3..=40u64 {
            let max = n.div_ceil(2) - 1;
            let fam = ClusterFamily::new(n, 1..=max).unwrap();
            assert_eq!(union_cluster_count(&fam) as u128, count_partitions(n, 3).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn projective_examples() {
        assert_eq!(projective_triple(2, 2, 3).unwrap(), p(&[21, 7, 3]));
        assert_eq!(projective_triple(5, 1, 2).unwrap(), p(&[24, 6, 1]));
        for q in [2, 3, 4, 5, 7, 8, 9] {
            assert_eq!(projective_triple(q, 1, 1).unwrap(), p(&[q - 1, 1, 1]));
        }
        assert!(projective_triple(2, 2, 4).is_err());
        assert!(projective_triple(6, 1, 2).is_err());
        assert!(projective_triple(64, 5, 7).is_err());
        assert!(projective_terms(64, 5, 7).is_ok());
    }

    #[test]
    fn parse_and_display() {
        let q: Partition = "[1, 3,6]".parse().unwrap();
        assert_eq!(q.to_string(), "[6,3,1]");
        assert!("1,0".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, "[6,3,1]");
        assert_eq!(serde_json::from_str::<Partition>("[1,6,3]").unwrap(), q);
    }
}
