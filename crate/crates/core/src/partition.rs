//! Partitions, bipartitions and β-sets.
//!
//! A partition is stored without trailing zeros, so structural equality is
//! equality of partitions. A β-set is a strictly decreasing list of
//! non-negative integers; `beta_set_of` and `partition_of_beta` move between
//! the two encodings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{parse_error, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from weakly decreasing parts. Trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(parse_error("partition", &join(&parts), "parts must be weakly decreasing"));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The staircase `[d, d-1, ..., 1]`.
    pub fn staircase(d: u32) -> Self {
        Partition { parts: (1..=d).rev().collect() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Part `i` (0-based), with the implicit zero padding.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// `Some(d)` when the partition is the staircase `[d, ..., 1]`.
    pub fn staircase_index(&self) -> Option<u32> {
        let d = self.parts.len() as u32;
        self.parts.iter().enumerate().all(|(i, &p)| p == d - i as u32).then_some(d)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.parts))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_list("partition", s)?;
        Partition::new(parts).map_err(|_| parse_error("partition", s, "parts must be weakly decreasing"))
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Partition {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Bipartition {
    pub upper: Partition,
    pub lower: Partition,
}

impl Bipartition {
    pub fn new(upper: Partition, lower: Partition) -> Self {
        Bipartition { upper, lower }
    }

    pub fn size(&self) -> u32 {
        self.upper.size() + self.lower.size()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty() && self.lower.is_empty()
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]/[{}]", self.upper, self.lower)
    }
}

/// A finite set of non-negative integers, kept in strictly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BetaSet {
    elements: Vec<u32>,
}

impl BetaSet {
    /// Accepts the elements in any order; duplicates are rejected.
    pub fn new(mut elements: Vec<u32>) -> Result<Self> {
        elements.sort_unstable_by(|a, b| b.cmp(a));
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(parse_error("beta-set", &join(&elements), "repeated entry"));
        }
        Ok(BetaSet { elements })
    }

    pub(crate) fn from_decreasing(elements: Vec<u32>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] > w[1]));
        BetaSet { elements }
    }

    pub fn empty() -> Self {
        BetaSet::default()
    }

    /// `{m-1, ..., 1, 0}`.
    pub fn staircase(m: u32) -> Self {
        BetaSet { elements: (0..m).rev().collect() }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max(&self) -> Option<u32> {
        self.elements.first().copied()
    }

    pub fn sum(&self) -> u64 {
        self.elements.iter().map(|&a| a as u64).sum()
    }

    pub fn contains(&self, a: u32) -> bool {
        self.elements.last() == Some(&a) || self.elements.binary_search_by(|x| a.cmp(x)).is_ok()
    }

    /// `max(A) - |A| + 1`, and 0 for the empty set.
    pub fn delta(&self) -> u32 {
        match self.max() {
            None => 0,
            Some(top) => top + 1 - self.len() as u32,
        }
    }

    /// Adds one to every entry and appends 0.
    pub fn shifted_up(&self) -> BetaSet {
        let mut elements: Vec<u32> = self.elements.iter().map(|a| a + 1).collect();
        elements.push(0);
        BetaSet { elements }
    }

    /// Removes the trailing 0 and subtracts one from the rest. Caller checks `contains(0)`.
    pub(crate) fn shifted_down(&self) -> BetaSet {
        debug_assert_eq!(self.elements.last(), Some(&0));
        BetaSet { elements: self.elements[..self.len() - 1].iter().map(|a| a - 1).collect() }
    }

    /// The set without its largest element.
    pub fn without_max(&self) -> BetaSet {
        BetaSet { elements: self.elements.iter().skip(1).copied().collect() }
    }
}

impl fmt::Display for BetaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.elements))
    }
}

/// `λ ≼ μ`: `μ1 ≥ λ1 ≥ μ2 ≥ λ2 ≥ ...`, both padded with zeros.
pub fn interleaves(lambda: &Partition, mu: &Partition) -> bool {
    let n = lambda.len().max(mu.len());
    (0..n).all(|i| mu.part(i) >= lambda.part(i) && lambda.part(i) >= mu.part(i + 1))
}

/// The β-set `{λ_i + n_slots - i}` with `n_slots` elements.
pub fn beta_set_of(lambda: &Partition, n_slots: usize) -> Result<BetaSet> {
    if n_slots < lambda.len() {
        return Err(Error::SlotsTooFew { parts: lambda.len(), slots: n_slots });
    }
    let elements = (0..n_slots).map(|i| lambda.part(i) + (n_slots - 1 - i) as u32).collect();
    Ok(BetaSet::from_decreasing(elements))
}

/// Subtracts the staircase `{m-1, ..., 0}` row-wise.
pub fn partition_of_beta(a: &BetaSet) -> Partition {
    let m = a.len();
    let parts = a.elements().iter().enumerate().map(|(i, &x)| x - (m - 1 - i) as u32).filter(|&p| p > 0).collect();
    Partition { parts }
}

/// The 2-core, computed by splitting a β-set by parity and packing each half down.
pub fn two_core(lambda: &Partition) -> Partition {
    let slots = lambda.len() + lambda.len() % 2;
    let beta = beta_set_of(lambda, slots).expect("enough slots");
    let odd = beta.elements().iter().filter(|&&x| x % 2 == 1).count() as u32;
    let even = beta.len() as u32 - odd;
    let mut packed: Vec<u32> = (0..odd).map(|k| 2 * k + 1).chain((0..even).map(|k| 2 * k)).collect();
    packed.sort_unstable_by(|a, b| b.cmp(a));
    partition_of_beta(&BetaSet::from_decreasing(packed))
}

/// All partitions of `n`, in decreasing lexicographic order (`[n]` first).
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(rest: u32, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for k in (1..=rest.min(cap)).rev() {
            prefix.push(k);
            go(rest - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All bipartitions of `n`, ordered by the size of the upper part, then by each part's order.
pub fn bipartitions_of(n: u32) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for k in (0..=n).rev() {
        let uppers = partitions_of(k);
        let lowers = partitions_of(n - k);
        for upper in &uppers {
            for lower in &lowers {
                out.push(Bipartition::new(upper.clone(), lower.clone()));
            }
        }
    }
    out
}

pub(crate) fn join(items: &[u32]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub(crate) fn parse_list(what: &'static str, s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|tok| tok.trim().parse::<u32>().map_err(|e| parse_error(what, s, e.to_string()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn b(elements: &[u32]) -> BetaSet {
        BetaSet::new(elements.to_vec()).unwrap()
    }

    /// Removes dominoes one at a time from the rim until none is removable.
    fn naive_two_core(lambda: &Partition) -> Partition {
        let mut rows: Vec<u32> = lambda.parts().to_vec();
        loop {
            let mut removed = false;
            let n = rows.len();
            for i in 0..n {
                let below = rows.get(i + 1).copied().unwrap_or(0);
                // horizontal domino at the end of row i
                if rows[i] >= below + 2 {
                    rows[i] -= 2;
                    removed = true;
                    break;
                }
                // vertical domino in the last column of rows i and i+1
                if i + 1 < n && rows[i] == rows[i + 1] && rows.get(i + 2).copied().unwrap_or(0) < rows[i] {
                    rows[i] -= 1;
                    rows[i + 1] -= 1;
                    removed = true;
                    break;
                }
            }
            while rows.last() == Some(&0) {
                rows.pop();
            }
            if !removed {
                return Partition::new(rows).unwrap();
            }
        }
    }

    #[test]
    fn interleaving_examples() {
        assert!(interleaves(&p(&[]), &p(&[])));
        assert!(interleaves(&p(&[2]), &p(&[2])));
        assert!(!interleaves(&p(&[3, 1]), &p(&[2, 2])));
        assert!(interleaves(&p(&[2, 1]), &p(&[3, 1, 1])));
        assert!(!interleaves(&p(&[1, 1]), &p(&[1])));
    }

    #[test]
    fn beta_set_examples() {
        assert_eq!(beta_set_of(&p(&[]), 3).unwrap(), b(&[2, 1, 0]));
        assert_eq!(beta_set_of(&p(&[2, 1]), 2).unwrap(), b(&[3, 1]));
        assert_eq!(beta_set_of(&p(&[2, 1]), 3).unwrap(), b(&[4, 2, 0]));
        assert_eq!(beta_set_of(&p(&[2, 1]), 1), Err(Error::SlotsTooFew { parts: 2, slots: 1 }));
    }

    #[test]
    fn partition_of_beta_examples() {
        assert_eq!(partition_of_beta(&b(&[2, 1, 0])), p(&[]));
        assert_eq!(partition_of_beta(&b(&[3, 1])), p(&[2, 1]));
        assert_eq!(partition_of_beta(&b(&[2])), p(&[2]));
        assert_eq!(partition_of_beta(&BetaSet::empty()), p(&[]));
    }

    #[test]
    fn two_core_examples() {
        assert_eq!(two_core(&p(&[])), p(&[]));
        assert_eq!(two_core(&p(&[2])), p(&[]));
        assert_eq!(two_core(&p(&[2, 1])), p(&[2, 1]));
        assert_eq!(two_core(&p(&[3])), p(&[1]));
        assert_eq!(two_core(&p(&[4, 3, 2, 1])), p(&[4, 3, 2, 1]));
    }

    #[test]
    fn two_core_matches_domino_removal() {
        for n in 0..=20 {
            for lambda in partitions_of(n) {
                let core = two_core(&lambda);
                assert_eq!(core, naive_two_core(&lambda), "{lambda}");
                assert!(core.staircase_index().is_some());
                assert_eq!((lambda.size() - core.size()) % 2, 0);
            }
        }
    }

    #[test]
    fn interleaving_is_reflexive_and_monotone_in_size() {
        let all: Vec<Partition> = (0..=12).flat_map(partitions_of).collect();
        for lambda in &all {
            assert!(interleaves(lambda, lambda));
        }
        // all pairs of partitions of size <= 12 is ~ 6M pairs; sizes <= 9 keep this quick
        let small: Vec<&Partition> = all.iter().filter(|l| l.size() <= 9).collect();
        for lambda in &small {
            for mu in &small {
                if interleaves(lambda, mu) {
                    assert!(lambda.size() <= mu.size(), "{lambda} ≼ {mu}");
                }
            }
        }
        for lambda in all.iter().filter(|l| l.size() > 9) {
            for mu in all.iter().filter(|m| m.size() < lambda.size()) {
                assert!(!interleaves(lambda, mu));
            }
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(bipartitions_of(2).len(), 5);
        assert_eq!(bipartitions_of(4).len(), 20);
    }

    #[test]
    fn literals() {
        assert_eq!("3,1".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), p(&[]));
        assert_eq!(p(&[3, 1]).to_string(), "3,1");
        assert!("1,3".parse::<Partition>().is_err());
        assert!("2,x".parse::<Partition>().is_err());
        assert!("2,0,1".parse::<Partition>().is_err());
        assert!(BetaSet::new(vec![1, 1]).is_err());
    }

    #[test]
    fn beta_contains_and_delta() {
        let a = b(&[5, 2, 0]);
        assert!(a.contains(0) && a.contains(2) && !a.contains(1));
        assert_eq!(a.delta(), 3);
        assert_eq!(BetaSet::staircase(4).delta(), 0);
        assert_eq!(BetaSet::empty().delta(), 0);
    }
}
