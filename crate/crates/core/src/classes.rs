//! Membership predicates and brute-force counters for the three partition
//! classes: the Göllnitz–Gordon difference class `G_i`, the mod-8 class
//! `G'_i`, and the even/odd class `H_i`.
//!
//! Everything here enumerates and filters. These counters are the trusted
//! oracle that the recurrence and the series engine are checked against.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{checked_add, Count, Error, Result};
use crate::partition::{enumerate_partitions, split_even_odd, EnumConstraints, Partition};

/// The index `i ∈ {1, 2}` shared by every family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum FamilyIndex {
    One,
    Two,
}

impl FamilyIndex {
    pub const ALL: [FamilyIndex; 2] = [FamilyIndex::One, FamilyIndex::Two];

    pub fn get(self) -> i64 {
        match self {
            FamilyIndex::One => 1,
            FamilyIndex::Two => 2,
        }
    }

    /// `2i - 1`, the lower bound on parts (odd parts, for `H_i`).
    pub fn min_part(self) -> u32 {
        (2 * self.get() - 1) as u32
    }
}

impl TryFrom<i64> for FamilyIndex {
    type Error = Error;

    fn try_from(i: i64) -> Result<Self> {
        match i {
            1 => Ok(FamilyIndex::One),
            2 => Ok(FamilyIndex::Two),
            other => Err(Error::InvalidFamilyIndex(other)),
        }
    }
}

impl From<FamilyIndex> for i64 {
    fn from(i: FamilyIndex) -> Self {
        i.get()
    }
}

impl fmt::Display for FamilyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.get())
    }
}

/// The two families refined by even/odd part counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    G,
    H,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::G, Family::H];

    pub fn contains(self, p: &Partition, i: FamilyIndex) -> bool {
        match self {
            Family::G => is_gg_member(p, i),
            Family::H => is_h_member(p, i),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::G => "G",
            Family::H => "H",
        })
    }
}

/// Any of the three classes, as named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Class {
    G,
    Gprime,
    H,
}

impl Class {
    pub const ALL: [Class; 3] = [Class::G, Class::Gprime, Class::H];

    pub fn contains(self, p: &Partition, i: FamilyIndex) -> bool {
        match self {
            Class::G => is_gg_member(p, i),
            Class::Gprime => is_mod8_member(p, i),
            Class::H => is_h_member(p, i),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Class::G => "G",
            Class::Gprime => "Gprime",
            Class::H => "H",
        }
    }
}

impl From<Family> for Class {
    fn from(f: Family) -> Self {
        match f {
            Family::G => Class::G,
            Family::H => Class::H,
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Class {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "G" => Ok(Class::G),
            "Gprime" => Ok(Class::Gprime),
            "H" => Ok(Class::H),
            other => Err(format!("unknown class {other:?} (expected G, Gprime or H)")),
        }
    }
}

/// `(i, r, s, n)`: family index, even-part count, odd-part count, weight.
/// Any integers are accepted; keys outside the nonnegative range count 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RefinedKey {
    pub i: FamilyIndex,
    pub r: i64,
    pub s: i64,
    pub n: i64,
}

impl RefinedKey {
    pub fn new(i: FamilyIndex, r: i64, s: i64, n: i64) -> Self {
        Self { i, r, s, n }
    }

    pub fn has_negative_index(&self) -> bool {
        self.r < 0 || self.s < 0 || self.n < 0
    }
}

impl fmt::Display for RefinedKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(i={}, r={}, s={}, n={})", self.i, self.r, self.s, self.n)
    }
}

/// Göllnitz–Gordon difference class: parts `>= 2i-1`, no two parts equal
/// or differing by 1, and no two even parts differing by 2.
pub fn is_gg_member(p: &Partition, i: FamilyIndex) -> bool {
    if p.smallest().is_some_and(|m| m < i.min_part()) {
        return false;
    }
    // Nonincreasing order: adjacent gaps >= 2 covers every pair.
    if p.parts().windows(2).any(|w| w[0] - w[1] < 2) {
        return false;
    }
    let split = split_even_odd(p);
    !split.evens.windows(2).any(|w| w[0] - w[1] == 2)
}

/// Every part lies in `{1,4,7}` mod 8 (`i = 1`) or `{3,4,5}` mod 8 (`i = 2`).
pub fn is_mod8_member(p: &Partition, i: FamilyIndex) -> bool {
    let residues: [u32; 3] = match i {
        FamilyIndex::One => [1, 4, 7],
        FamilyIndex::Two => [3, 4, 5],
    };
    p.parts().iter().all(|x| residues.contains(&(x % 8)))
}

/// Distinct odd parts, smallest odd part `>= 2i-1`, and smallest even part
/// `>= 2(r + s + i - 1)` where `r + s` is the total number of parts.
pub fn is_h_member(p: &Partition, i: FamilyIndex) -> bool {
    let split = split_even_odd(p);
    if split.odds.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    if split.smallest_odd().is_some_and(|m| m < i.min_part()) {
        return false;
    }
    let bound = 2 * (split.len() as u64 + i.get() as u64 - 1);
    !split.smallest_even().is_some_and(|m| u64::from(m) < bound)
}

fn nonnegative_weight(n: i64) -> Option<u32> {
    u32::try_from(n).ok()
}

/// Brute-force count of family members of weight `n` with exactly `r` even
/// and `s` odd parts.
pub fn count_refined(family: Family, key: RefinedKey) -> Result<Count> {
    if key.has_negative_index() {
        return Ok(0);
    }
    let Some(n) = nonnegative_weight(key.n) else {
        return Ok(0);
    };
    let (r, s) = (key.r as usize, key.s as usize);
    let c = EnumConstraints::new(1, None, Some(r + s))?;
    let mut total: Count = 0;
    for p in enumerate_partitions(n, c) {
        let split = split_even_odd(&p);
        if split.r() == r && split.s() == s && family.contains(&p, key.i) {
            total = checked_add(total, 1, "refined count")?;
        }
    }
    Ok(total)
}

/// Members of `class` at weight `n`, in enumeration order.
pub fn members(class: Class, i: FamilyIndex, n: i64) -> Vec<Partition> {
    let Some(n) = nonnegative_weight(n) else {
        return Vec::new();
    };
    enumerate_partitions(n, EnumConstraints::default())
        .filter(|p| class.contains(p, i))
        .collect()
}

/// Members of `family` at the refined key, in enumeration order.
pub fn members_refined(family: Family, key: RefinedKey) -> Vec<Partition> {
    if key.has_negative_index() {
        return Vec::new();
    }
    let (r, s) = (key.r as usize, key.s as usize);
    members(family.into(), key.i, key.n)
        .into_iter()
        .filter(|p| {
            let split = split_even_odd(p);
            split.r() == r && split.s() == s
        })
        .collect()
}

/// Members of `family` at weight `n`, grouped by `(r, s)`.
pub fn members_by_split(
    family: Family,
    i: FamilyIndex,
    n: i64,
) -> BTreeMap<(usize, usize), Vec<Partition>> {
    let mut groups: BTreeMap<(usize, usize), Vec<Partition>> = BTreeMap::new();
    for p in members(family.into(), i, n) {
        let split = split_even_odd(&p);
        groups.entry((split.r(), split.s())).or_default().push(p);
    }
    groups
}

/// Brute-force total count of `class` at weight `n`.
pub fn count_total(class: Class, i: FamilyIndex, n: i64) -> Result<Count> {
    let Some(n) = nonnegative_weight(n) else {
        return Ok(0);
    };
    let mut total: Count = 0;
    for p in enumerate_partitions(n, EnumConstraints::default()) {
        if class.contains(&p, i) {
            total = checked_add(total, 1, "total count")?;
        }
    }
    Ok(total)
}

/// All refined counts of a family at one weight, keyed by `(r, s)`.
/// Absent entries are zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RefinedTable {
    counts: BTreeMap<(usize, usize), Count>,
}

impl RefinedTable {
    pub fn get(&self, r: i64, s: i64) -> Count {
        if r < 0 || s < 0 {
            return 0;
        }
        self.counts
            .get(&(r as usize, s as usize))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self) -> Result<Count> {
        self.counts
            .values()
            .try_fold(0, |acc, &c| checked_add(acc, c, "refined table total"))
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), Count)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }
}

/// One enumeration pass over the partitions of `n`, classified by `(r, s)`.
pub fn refined_table(family: Family, i: FamilyIndex, n: i64) -> Result<RefinedTable> {
    let mut table = RefinedTable::default();
    let Some(n) = nonnegative_weight(n) else {
        return Ok(table);
    };
    for p in enumerate_partitions(n, EnumConstraints::default()) {
        if family.contains(&p, i) {
            let split = split_even_odd(&p);
            let slot = table.counts.entry((split.r(), split.s())).or_insert(0);
            *slot = checked_add(*slot, 1, "refined table")?;
        }
    }
    Ok(table)
}

/// Brute-force refined counter that caches one [`RefinedTable`] per weight.
#[derive(Debug)]
pub struct BruteForceCounter {
    family: Family,
    tables: HashMap<(FamilyIndex, i64), RefinedTable>,
}

impl BruteForceCounter {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            tables: HashMap::new(),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn count(&mut self, key: RefinedKey) -> Result<Count> {
        if key.has_negative_index() {
            return Ok(0);
        }
        let table = match self.tables.entry((key.i, key.n)) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(refined_table(self.family, key.i, key.n)?)
            }
        };
        Ok(table.get(key.r, key.s))
    }
}
