//! Partitions, constrained enumeration, and the even/odd split.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Count, Error, Result};

/// A partition stored as a nonincreasing sequence of positive parts.
///
/// Serializes as a plain JSON array, e.g. `[5,3,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
    weight: u32,
}

impl Partition {
    /// Validates that `parts` is nonincreasing and strictly positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "parts must be positive",
            });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition {
                parts,
                reason: "parts must be nonincreasing",
            });
        }
        let weight = parts
            .iter()
            .try_fold(0u32, |acc, &p| acc.checked_add(p))
            .ok_or(Error::Overflow("partition weight"))?;
        Ok(Self { parts, weight })
    }

    /// Builds a partition from parts in any order.
    pub fn from_multiset(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Self {
            parts: Vec::new(),
            weight: 0,
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.parts.last().copied()
    }

    pub fn split(&self) -> EvenOddSplit {
        split_even_odd(self)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        for (k, part) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

/// The even parts and the odd parts of a partition, each nonincreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenOddSplit {
    pub evens: Vec<u32>,
    pub odds: Vec<u32>,
}

impl EvenOddSplit {
    /// Number of even parts.
    pub fn r(&self) -> usize {
        self.evens.len()
    }

    /// Number of odd parts.
    pub fn s(&self) -> usize {
        self.odds.len()
    }

    pub fn len(&self) -> usize {
        self.r() + self.s()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn smallest_even(&self) -> Option<u32> {
        self.evens.last().copied()
    }

    pub fn smallest_odd(&self) -> Option<u32> {
        self.odds.last().copied()
    }

    /// Merges the two halves back into a single partition.
    pub fn merge(&self) -> Partition {
        let mut parts = Vec::with_capacity(self.len());
        let (mut e, mut o) = (0, 0);
        while e < self.evens.len() || o < self.odds.len() {
            let take_even = match (self.evens.get(e), self.odds.get(o)) {
                (Some(a), Some(b)) => a >= b,
                (Some(_), None) => true,
                _ => false,
            };
            if take_even {
                parts.push(self.evens[e]);
                e += 1;
            } else {
                parts.push(self.odds[o]);
                o += 1;
            }
        }
        let weight = parts.iter().sum();
        Partition { parts, weight }
    }
}

pub fn split_even_odd(p: &Partition) -> EvenOddSplit {
    let (evens, odds) = p.parts.iter().partition(|&&x| x % 2 == 0);
    EvenOddSplit { evens, odds }
}

/// Bounds applied to every part (and to the number of parts) during enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConstraints {
    min_part: u32,
    max_part: Option<u32>,
    max_length: Option<usize>,
}

impl Default for EnumConstraints {
    fn default() -> Self {
        Self {
            min_part: 1,
            max_part: None,
            max_length: None,
        }
    }
}

impl EnumConstraints {
    pub fn new(min_part: u32, max_part: Option<u32>, max_length: Option<usize>) -> Result<Self> {
        if min_part == 0 {
            return Err(Error::InvalidConstraints("min_part must be at least 1"));
        }
        if matches!(max_part, Some(m) if m < min_part) {
            return Err(Error::InvalidConstraints("max_part must be >= min_part"));
        }
        Ok(Self {
            min_part,
            max_part,
            max_length,
        })
    }

    pub fn with_min_part(min_part: u32) -> Result<Self> {
        Self::new(min_part, None, None)
    }

    pub fn min_part(&self) -> u32 {
        self.min_part
    }

    pub fn max_part(&self) -> Option<u32> {
        self.max_part
    }

    pub fn max_length(&self) -> Option<usize> {
        self.max_length
    }

    pub fn admits(&self, p: &Partition) -> bool {
        p.parts
            .iter()
            .all(|&x| x >= self.min_part && self.max_part.is_none_or(|m| x <= m))
            && self.max_length.is_none_or(|l| p.len() <= l)
    }
}

/// Streams every partition of `n` admitted by `c`, in decreasing
/// lexicographic order. For `n = 0` the only item is the empty partition.
pub fn enumerate_partitions(n: u32, c: EnumConstraints) -> Partitions {
    Partitions {
        c,
        parts: Vec::new(),
        remaining: n,
        started: false,
        done: false,
    }
}

/// Depth-first partition generator; see [`enumerate_partitions`].
#[derive(Debug, Clone)]
pub struct Partitions {
    c: EnumConstraints,
    parts: Vec<u32>,
    remaining: u32,
    started: bool,
    done: bool,
}

impl Partitions {
    /// Greedily extends the current prefix with the largest admissible parts.
    /// Returns false on a dead end, leaving the prefix for backtracking.
    fn descend(&mut self) -> bool {
        while self.remaining > 0 {
            let mut cap = self.remaining;
            if let Some(&last) = self.parts.last() {
                cap = cap.min(last);
            }
            if let Some(m) = self.c.max_part {
                cap = cap.min(m);
            }
            if cap < self.c.min_part {
                return false;
            }
            if let Some(limit) = self.c.max_length {
                let slots = limit.saturating_sub(self.parts.len()) as u64;
                if u64::from(self.remaining) > u64::from(cap) * slots {
                    return false;
                }
            }
            self.parts.push(cap);
            self.remaining -= cap;
        }
        true
    }

    fn emit(&self) -> Partition {
        Partition {
            parts: self.parts.clone(),
            weight: self.parts.iter().sum(),
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.descend() {
                return Some(self.emit());
            }
        }
        loop {
            let Some(last) = self.parts.pop() else {
                self.done = true;
                return None;
            };
            self.remaining += last;
            if last > self.c.min_part {
                self.parts.push(last - 1);
                self.remaining -= last - 1;
                if self.descend() {
                    return Some(self.emit());
                }
            }
        }
    }
}

/// Unrestricted partition count p(n) via Euler's pentagonal-number recurrence.
///
/// Independent of [`enumerate_partitions`]; used to cross-check it.
pub fn partition_count_oracle(n: u32) -> Result<Count> {
    let n = n as usize;
    let mut p: Vec<i128> = Vec::with_capacity(n + 1);
    p.push(1);
    for m in 1..=n {
        let mut total: i128 = 0;
        for k in 1.. {
            let k = k as usize;
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign: i128 = if k % 2 == 1 { 1 } else { -1 };
            total = total
                .checked_add(sign * p[m - g1])
                .ok_or(Error::Overflow("p(n)"))?;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                total = total
                    .checked_add(sign * p[m - g2])
                    .ok_or(Error::Overflow("p(n)"))?;
            }
        }
        if total > i128::from(Count::MAX) {
            return Err(Error::Overflow("p(n)"));
        }
        p.push(total);
    }
    Ok(p[n] as Count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts_of(n: u32, c: EnumConstraints) -> Vec<Vec<u32>> {
        enumerate_partitions(n, c).map(Vec::from).collect()
    }

    #[test]
    fn four_has_five_partitions_in_order() {
        assert_eq!(
            parts_of(4, EnumConstraints::default()),
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }

    #[test]
    fn zero_yields_only_the_empty_partition() {
        let all: Vec<_> = enumerate_partitions(0, EnumConstraints::default()).collect();
        assert_eq!(all, vec![Partition::empty()]);
        assert_eq!(all[0].weight(), 0);
    }

    #[test]
    fn nine_has_thirty() {
        assert_eq!(enumerate_partitions(9, EnumConstraints::default()).count(), 30);
    }

    #[test]
    fn over_constrained_is_empty() {
        let c = EnumConstraints::new(3, Some(3), None).unwrap();
        assert_eq!(enumerate_partitions(5, c).count(), 0);
        let c = EnumConstraints::new(1, None, Some(0)).unwrap();
        assert_eq!(enumerate_partitions(5, c).count(), 0);
        assert_eq!(enumerate_partitions(0, c).count(), 1);
        let c = EnumConstraints::with_min_part(10).unwrap();
        assert_eq!(enumerate_partitions(9, c).count(), 0);
    }

    #[test]
    fn constraints_are_respected() {
        let c = EnumConstraints::new(2, Some(5), Some(3)).unwrap();
        let all = parts_of(12, c);
        assert!(all.contains(&vec![5, 5, 2]));
        assert!(all.contains(&vec![4, 4, 4]));
        assert!(!all.iter().any(|p| p.len() > 3 || p.iter().any(|x| !(2..=5).contains(x))));
        assert_eq!(all.len(), 3); // 5+5+2, 5+4+3, 4+4+4
    }

    #[test]
    fn bad_constraints_rejected() {
        assert!(EnumConstraints::new(0, None, None).is_err());
        assert!(EnumConstraints::new(4, Some(3), None).is_err());
    }

    #[test]
    fn split_examples() {
        let p = Partition::new(vec![8, 1]).unwrap();
        let sp = split_even_odd(&p);
        assert_eq!((sp.evens.clone(), sp.odds.clone(), sp.r(), sp.s()), (vec![8], vec![1], 1, 1));

        let sp = split_even_odd(&Partition::empty());
        assert_eq!((sp.r(), sp.s()), (0, 0));

        let sp = split_even_odd(&Partition::new(vec![5, 3, 1]).unwrap());
        assert_eq!((sp.evens, sp.odds), (vec![], vec![5, 3, 1]));
    }

    #[test]
    fn invalid_partitions_rejected() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![3, 0]).is_err());
        assert_eq!(
            Partition::from_multiset(vec![1, 3, 2]).unwrap().parts(),
            &[3, 2, 1]
        );
    }

    #[test]
    fn pentagonal_oracle_values() {
        assert_eq!(partition_count_oracle(0).unwrap(), 1);
        assert_eq!(partition_count_oracle(4).unwrap(), 5);
        assert_eq!(partition_count_oracle(9).unwrap(), 30);
        assert_eq!(partition_count_oracle(100).unwrap(), 190_569_292);
    }

    #[test]
    fn pentagonal_oracle_reports_overflow() {
        // p(416) is the last value below 2^64.
        assert!(partition_count_oracle(416).is_ok());
        assert_eq!(
            partition_count_oracle(417),
            Err(Error::Overflow("p(n)"))
        );
    }

    #[test]
    fn json_form_is_a_plain_array() {
        let p = Partition::new(vec![5, 3, 1]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[5,3,1]");
        let back: Partition = serde_json::from_str("[5,3,1]").unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Partition>("[1,5]").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Partition::new(vec![5, 3, 1]).unwrap().to_string(), "5+3+1");
        assert_eq!(Partition::empty().to_string(), "()");
    }
}
