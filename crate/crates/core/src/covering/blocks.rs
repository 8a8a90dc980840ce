//! Membership of a cycle type in `Sym(b) wr Sym(n/b)`.
//!
//! A permutation preserving a system of blocks of size `b` permutes the
//! blocks; each orbit of `m` blocks is covered by cycles of lengths
//! divisible by `m` that together fill `m * b` points. Conversely any such
//! grouping of the cycles is realised by some block system. So a type lies
//! in a conjugate of the wreath product iff its terms can be grouped, each
//! group with an `m` dividing all its terms and summing to `m * b`.

use std::collections::HashSet;

struct Search {
    values: Vec<u64>,
    counts: Vec<u32>,
    b: u64,
    failed: HashSet<Vec<u32>>,
}

impl Search {
    fn solve(&mut self) -> bool {
        let Some(i) = self.counts.iter().position(|&c| c > 0) else {
            return true;
        };
        if self.failed.contains(&self.counts) {
            return false;
        }
        let key = self.counts.clone();
        let x = self.values[i];
        self.counts[i] -= 1;
        let mut ok = false;
        // m * b >= x and m | x
        let m_min = x.div_ceil(self.b);
        for m in m_min..=x {
            if x.is_multiple_of(m) && self.fill(0, m * self.b - x, m) {
                ok = true;
                break;
            }
        }
        self.counts[i] += 1;
        if !ok {
            self.failed.insert(key);
        }
        ok
    }

    /// Completes the current group with terms divisible by `m` summing to
    /// `target`, then solves the rest.
    fn fill(&mut self, j: usize, target: u64, m: u64) -> bool {
        if target == 0 {
            return self.solve();
        }
        if j == self.values.len() {
            return false;
        }
        let v = self.values[j];
        if !v.is_multiple_of(m) || self.counts[j] == 0 {
            return self.fill(j + 1, target, m);
        }
        let max_t = (self.counts[j] as u64).min(target / v) as u32;
        for t in (0..=max_t).rev() {
            self.counts[j] -= t;
            let ok = self.fill(j + 1, target - t as u64 * v, m);
            self.counts[j] += t;
            if ok {
                return true;
            }
        }
        false
    }
}

/// True iff a permutation with cycle lengths `terms` preserves some system
/// of blocks of size `b`. Requires `b | sum(terms)`; returns false otherwise.
pub fn preserves_block_system(terms: &[u64], b: u64) -> bool {
    let n: u64 = terms.iter().sum();
    if b == 0 || n == 0 || !n.is_multiple_of(b) {
        return false;
    }
    let mut sorted = terms.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut values = Vec::new();
    let mut counts = Vec::new();
    for t in sorted {
        if values.last() == Some(&t) {
            *counts.last_mut().unwrap() += 1;
        } else {
            values.push(t);
            counts.push(1);
        }
    }
    Search { values, counts, b, failed: HashSet::new() }.solve()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(preserves_block_system(&[6, 4], 2));
        assert!(preserves_block_system(&[5, 3, 2], 5));
        assert!(!preserves_block_system(&[7, 3], 2));
        assert!(!preserves_block_system(&[7, 3], 5));
        assert!(preserves_block_system(&[9], 3));
        assert!(preserves_block_system(&[4, 3, 2], 3));
        assert!(!preserves_block_system(&[5, 4], 3));
        // the 6-cycle alternates between two blocks
        assert!(preserves_block_system(&[6, 2, 2, 2], 3));
        assert!(!preserves_block_system(&[5, 5], 3));
    }

    #[test]
    fn trivial_block_sizes() {
        for terms in [vec![5u64, 3, 2], vec![7, 1, 1, 1], vec![4, 4, 2]] {
            let n: u64 = terms.iter().sum();
            assert!(preserves_block_system(&terms, 1));
            assert!(preserves_block_system(&terms, n));
        }
    }
}
