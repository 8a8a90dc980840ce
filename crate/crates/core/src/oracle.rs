//! Brute-force reference implementations. Nothing here shares code with
//! the closed forms it is used to check: no recurrences, no lemmas, no
//! subset-sum bitsets.

use std::collections::BTreeSet;

use crate::partitions::Partition;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `phi(n)` by counting `1 <= k <= n` with `gcd(k, n) = 1`.
pub fn phi_by_gcd(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

pub fn is_prime_naive(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn is_prime_power_naive(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// Every `(q, d)` with `2 <= q <= n-1`, `2 <= d <= log2(n)+1` and
/// `1 + q + ... + q^(d-1) = n`, `q` a prime power.
pub fn q_set_scan(n: u64) -> BTreeSet<(u64, u32)> {
    let mut out = BTreeSet::new();
    let max_d = 64 - n.leading_zeros();
    for q in 2..n {
        let mut sum = 1u64;
        let mut pow = 1u64;
        for d in 2..=max_d {
            pow = match pow.checked_mul(q) {
                Some(v) => v,
                None => break,
            };
            sum = match sum.checked_add(pow) {
                Some(v) => v,
                None => break,
            };
            if sum > n {
                break;
            }
            if sum == n && is_prime_power_naive(q) {
                out.insert((q, d));
            }
        }
    }
    out
}

/// All 3-partitions `a >= b >= c >= 1` of `n`, by nested loops.
pub fn three_partitions(n: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for c in 1..=n / 3 {
        for b in c..=(n - c) / 2 {
            let a = n - b - c;
            if a >= b {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// All 2-partitions `a >= b >= 1` of `n`.
pub fn two_partitions(n: u64) -> Vec<[u64; 2]> {
    (1..=n / 2).map(|b| [n - b, b]).collect()
}

/// Subset sums by explicit enumeration of index subsets (`k <= 20`).
pub fn has_subset_sum(terms: &[u64], x: u64) -> bool {
    assert!(terms.len() <= 20, "oracle subset enumeration is exponential");
    (1u32..1 << terms.len()).any(|mask| {
        terms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, t)| t)
            .sum::<u64>()
            == x
    })
}

pub fn three_cluster_set(n: u64, x: u64) -> BTreeSet<[u64; 3]> {
    three_partitions(n).into_iter().filter(|t| has_subset_sum(t, x)).collect()
}

/// `|P_3(n,x_1) u ... u P_3(n,x_l)|` by direct membership tests.
pub fn three_cluster_union(n: u64, xs: &[u64]) -> u64 {
    three_partitions(n)
        .into_iter()
        .filter(|t| xs.iter().any(|&x| has_subset_sum(t, x)))
        .count() as u64
}

pub fn three_cluster_intersection(n: u64, xs: &[u64]) -> BTreeSet<Partition> {
    three_partitions(n)
        .into_iter()
        .filter(|t| xs.iter().all(|&x| has_subset_sum(t, x)))
        .map(|t| Partition::new(t.to_vec()).expect("positive terms"))
        .collect()
}

/// Every 3-partition of `n < 128` with the bitmask of its nonempty
/// sub-multiset sums, found by trying all 7 index subsets.
pub fn three_partition_sum_masks(n: u64) -> Vec<([u64; 3], u128)> {
    assert!(n < 128);
    three_partitions(n)
        .into_iter()
        .map(|t| {
            let mut mask = 0u128;
            for sel in 1u32..8 {
                let s: u64 = (0..3).filter(|i| sel >> i & 1 == 1).map(|i| t[i]).sum();
                mask |= 1 << s;
            }
            (t, mask)
        })
        .collect()
}

/// `counts[x]` = number of 3-partitions of `n` with an `x`-cluster, for
/// `0 <= x <= n`, by listing the 6 proper sub-multisets of each one.
pub fn three_cluster_counts(n: u64) -> Vec<u64> {
    let mut counts = vec![0u64; n as usize + 1];
    for t in three_partitions(n) {
        let mut sums: Vec<u64> = (1u32..7).map(|sel| (0..3).filter(|i| sel >> i & 1 == 1).map(|i| t[i]).sum()).collect();
        sums.sort_unstable();
        sums.dedup();
        for s in sums {
            counts[s as usize] += 1;
        }
    }
    counts
}

/// A concrete permutation of `0..n` with the given cycle lengths.
pub fn permutation_of_type(terms: &[u64]) -> Vec<usize> {
    let n: u64 = terms.iter().sum();
    let mut perm = vec![0usize; n as usize];
    let mut start = 0usize;
    for &len in terms {
        let len = len as usize;
        for i in 0..len {
            perm[start + i] = start + (i + 1) % len;
        }
        start += len;
    }
    perm
}

/// Every partition of `0..n` into blocks of size `b`, as a block label
/// per point. The block containing the smallest unassigned point is
/// always opened next, so each system appears once.
pub fn block_systems(n: usize, b: usize) -> Vec<Vec<usize>> {
    fn rec(label: &mut Vec<usize>, b: usize, next: usize, out: &mut Vec<Vec<usize>>) {
        let Some(first) = label.iter().position(|&l| l == usize::MAX) else {
            out.push(label.clone());
            return;
        };
        label[first] = next;
        let free: Vec<usize> = (first + 1..label.len()).filter(|&i| label[i] == usize::MAX).collect();
        choose(label, b, next, &free, 0, b - 1, out);
        label[first] = usize::MAX;
    }
    fn choose(
        label: &mut Vec<usize>,
        b: usize,
        next: usize,
        free: &[usize],
        from: usize,
        left: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            rec(label, b, next + 1, out);
            return;
        }
        for j in from..free.len() {
            if free.len() - j < left {
                break;
            }
            label[free[j]] = next;
            choose(label, b, next, free, j + 1, left - 1, out);
            label[free[j]] = usize::MAX;
        }
    }
    assert!(b >= 1 && n.is_multiple_of(b));
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; n], b, 0, &mut out);
    out
}

/// `perm` maps every block onto a block.
pub fn preserves(perm: &[usize], label: &[usize]) -> bool {
    let blocks = label.iter().max().map_or(0, |m| m + 1);
    let mut image = vec![usize::MAX; blocks];
    for (i, &j) in perm.iter().enumerate() {
        let (from, to) = (label[i], label[j]);
        if image[from] == usize::MAX {
            image[from] = to;
        } else if image[from] != to {
            return false;
        }
    }
    true
}

/// Some system in `systems` is preserved by a permutation of type `terms`.
pub fn block_system_search(terms: &[u64], systems: &[Vec<usize>]) -> bool {
    let perm = permutation_of_type(terms);
    systems.iter().any(|s| preserves(&perm, s))
}

/// All partitions of `n`, by recursion on the largest part.
pub fn all_partitions(n: u64) -> Vec<Vec<u64>> {
    fn rec(n: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for t in (1..=max.min(n)).rev() {
            cur.push(t);
            rec(n - t, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_system_counts() {
        // 10!/(2^5 5!) perfect matchings, C(10,5)/2 splits into two 5-sets
        assert_eq!(block_systems(10, 2).len(), 945);
        assert_eq!(block_systems(10, 5).len(), 126);
        assert_eq!(block_systems(6, 3).len(), 10);
        assert_eq!(block_systems(4, 4).len(), 1);
        assert_eq!(block_systems(4, 1).len(), 1);
    }

    #[test]
    fn small_oracles() {
        assert_eq!(phi_by_gcd(12), 4);
        assert_eq!(q_set_scan(31), [(2, 5), (5, 3)].into_iter().collect());
        assert_eq!(three_partitions(9).len(), 7);
        assert_eq!(all_partitions(10).len(), 42);
        let systems = block_systems(10, 5);
        assert!(block_system_search(&[5, 3, 2], &systems));
        assert!(!block_system_search(&[7, 3], &systems));
    }
}
