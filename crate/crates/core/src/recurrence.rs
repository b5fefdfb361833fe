//! The three-equation recurrence system for `H_i(r, s, n)`:
//!
//! ```text
//! H_i(0,0,0) = 1;  H_i(r,s,n) = 0 when an index is negative, or exactly one of
//!                               n and r+s is zero
//! H_1(r,s,n) - H_2(r,s,n) = H_1(r,s-1,n-2(r+s)+1) + H_1(r-1,s,n-4(r+s)+2)
//! H_2(r,s,n) = H_1(r,s,n-2(r+s))
//! ```
//!
//! [`h_recurrence`] evaluates the unique solution top-down with a memo,
//! [`tabulate`] builds it bottom-up in increasing `n`, and [`check_system`]
//! tests whether an arbitrary counter satisfies all three equations.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classes::{FamilyIndex, RefinedKey};
use crate::error::{checked_add, Count, Error, Result};

pub type CountKey = RefinedKey;

/// Write-once memo for recurrence values.
#[derive(Debug, Clone, Default)]
pub struct CountTable {
    values: HashMap<CountKey, Count>,
}

impl CountTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &CountKey) -> Option<Count> {
        self.values.get(key).copied()
    }

    /// Stores `value` under `key`. Re-storing the same value is a no-op;
    /// a different value is a [`Error::MemoConflict`].
    pub fn insert(&mut self, key: CountKey, value: Count) -> Result<Count> {
        match self.values.get(&key) {
            Some(&stored) if stored != value => Err(Error::MemoConflict {
                key: key.to_string(),
                stored,
                offered: value,
            }),
            Some(&stored) => Ok(stored),
            None => {
                self.values.insert(key, value);
                Ok(value)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Value fixed by the base equations, or `None` if the key is interior.
fn base_value(key: &CountKey) -> Option<Count> {
    if key.has_negative_index() {
        return Some(0);
    }
    match (key.r + key.s == 0, key.n == 0) {
        (true, true) => Some(1),
        (true, false) | (false, true) => Some(0),
        (false, false) => None,
    }
}

fn one(r: i64, s: i64, n: i64) -> CountKey {
    CountKey::new(FamilyIndex::One, r, s, n)
}

/// The keys an interior key depends on. `H_2` has a single term; `H_1` is
/// the rearranged sum `H_1 = H_1(shift) + H_1(odd-one) + H_1(even-min)`.
fn dependencies(key: &CountKey) -> Vec<CountKey> {
    let CountKey { i, r, s, n } = *key;
    let len = r + s;
    match i {
        FamilyIndex::Two => vec![one(r, s, n - 2 * len)],
        FamilyIndex::One => vec![
            one(r, s, n - 2 * len),
            one(r, s - 1, n - 2 * len + 1),
            one(r - 1, s, n - 4 * len + 2),
        ],
    }
}

/// Evaluates `H_i(r, s, n)` from the recurrence system alone. Every interior
/// key evaluated is stored in `memo`; base keys are resolved directly.
pub fn h_recurrence(key: CountKey, memo: &mut CountTable) -> Result<Count> {
    if let Some(v) = base_value(&key) {
        return Ok(v);
    }
    if let Some(v) = memo.get(&key) {
        return Ok(v);
    }
    // Every interior dependency has strictly smaller n, so this terminates.
    let mut total: Count = 0;
    for dep in dependencies(&key) {
        let v = h_recurrence(dep, memo)?;
        total = checked_add(total, v, "recurrence")?;
    }
    memo.insert(key, total)
}

/// Total `H_i(n) = Σ_{r,s} H_i(r,s,n)` from the recurrence.
pub fn h_total(i: FamilyIndex, n: i64, memo: &mut CountTable) -> Result<Count> {
    if n < 0 {
        return Ok(0);
    }
    let mut total: Count = 0;
    // For n > 0 every dependency of a key with 2(r+s) - 1 > n has negative
    // weight, so those keys vanish by the base equations alone.
    let max_len = if n == 0 { 0 } else { (n + 1) / 2 };
    for len in 0..=max_len {
        for r in 0..=len {
            let v = h_recurrence(CountKey::new(i, r, len - r, n), memo)?;
            total = checked_add(total, v, "recurrence total")?;
        }
    }
    Ok(total)
}

/// Inclusive bounds `0..=max_r × 0..=max_s × 0..=max_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub max_r: i64,
    pub max_s: i64,
    pub max_n: i64,
}

impl Grid {
    pub fn new(max_r: i64, max_s: i64, max_n: i64) -> Self {
        Self {
            max_r,
            max_s,
            max_n,
        }
    }

    /// Grid points in increasing `n`, then increasing `r + s`, then `r`.
    pub fn points(&self) -> Vec<(i64, i64, i64)> {
        let mut pts = Vec::new();
        for n in 0..=self.max_n {
            for len in 0..=(self.max_r + self.max_s) {
                for r in 0..=self.max_r.min(len) {
                    let s = len - r;
                    if s <= self.max_s {
                        pts.push((r, s, n));
                    }
                }
            }
        }
        pts
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r<={} s<={} n<={}",
            self.max_r, self.max_s, self.max_n
        )
    }
}

/// Bottom-up table of the recurrence over a grid, filled in increasing `n`
/// using only base cases and previously filled cells.
#[derive(Debug, Clone)]
pub struct Tabulation {
    grid: Grid,
    cells: Vec<Option<Count>>,
}

impl Tabulation {
    fn index(&self, key: &CountKey) -> Option<usize> {
        let g = &self.grid;
        if key.r < 0 || key.s < 0 || key.n < 0 || key.r > g.max_r || key.s > g.max_s || key.n > g.max_n {
            return None;
        }
        let i = match key.i {
            FamilyIndex::One => 0,
            FamilyIndex::Two => 1,
        };
        let (w_r, w_s, w_n) = (g.max_r + 1, g.max_s + 1, g.max_n + 1);
        Some((((i * w_n + key.n) * w_r + key.r) * w_s + key.s) as usize)
    }

    /// The tabulated value, `None` outside the grid.
    pub fn get(&self, key: &CountKey) -> Option<Count> {
        if key.has_negative_index() {
            return Some(0);
        }
        self.index(key).and_then(|k| self.cells[k])
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }
}

pub fn tabulate(grid: Grid) -> Result<Tabulation> {
    let size = 2 * ((grid.max_r + 1) * (grid.max_s + 1) * (grid.max_n + 1)).max(0) as usize;
    let mut tab = Tabulation {
        grid,
        cells: vec![None; size],
    };
    for (r, s, n) in grid.points() {
        for i in FamilyIndex::ALL {
            let key = CountKey::new(i, r, s, n);
            let value = match base_value(&key) {
                Some(v) => v,
                None => {
                    let mut total: Count = 0;
                    for dep in dependencies(&key) {
                        let v = tab.get(&dep).ok_or_else(|| Error::Precondition {
                            case: "tabulate".into(),
                            parts: key.to_string(),
                            reason: format!("dependency {dep} not yet derived"),
                        })?;
                        total = checked_add(total, v, "tabulation")?;
                    }
                    total
                }
            };
            let k = tab.index(&key).expect("grid point in range");
            tab.cells[k] = Some(value);
        }
    }
    Ok(tab)
}

/// Re-derives every grid value bottom-up and compares with the memoized
/// top-down evaluator.
pub fn verify_uniqueness(grid: Grid) -> Result<bool> {
    let tab = tabulate(grid)?;
    let mut memo = CountTable::new();
    for (r, s, n) in grid.points() {
        for i in FamilyIndex::ALL {
            let key = CountKey::new(i, r, s, n);
            if tab.get(&key) != Some(h_recurrence(key, &mut memo)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equation {
    /// Base values, including zeros at negative indices.
    Base,
    /// `H_1 - H_2 = H_1(odd-one key) + H_1(even-min key)`.
    Difference,
    /// `H_2(r,s,n) = H_1(r,s,n-2(r+s))`.
    Shift,
}

/// Offsets in the difference equation. The true system uses `+1` for the
/// odd-one term and `+2` for the even-min term; other values are mutations
/// used to confirm the checker can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemVariant {
    pub odd_one_offset: i64,
    pub even_min_offset: i64,
}

impl Default for SystemVariant {
    fn default() -> Self {
        Self {
            odd_one_offset: 1,
            even_min_offset: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub equation: Equation,
    pub key: RefinedKey,
    pub lhs: i128,
    pub rhs: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemReport {
    pub grid: Grid,
    pub variant: SystemVariant,
    pub equations_checked: u64,
    pub violations: Vec<Violation>,
    pub verdict: bool,
}

/// Checks the recurrence system against `counter` at every grid point.
pub fn check_system<F>(counter: F, grid: Grid) -> Result<SystemReport>
where
    F: FnMut(RefinedKey) -> Result<Count>,
{
    check_system_with(counter, grid, SystemVariant::default())
}

pub fn check_system_with<F>(mut counter: F, grid: Grid, variant: SystemVariant) -> Result<SystemReport>
where
    F: FnMut(RefinedKey) -> Result<Count>,
{
    let mut violations = Vec::new();
    let mut checked = 0u64;
    let mut record = |equation, key, lhs: i128, rhs: i128, checked: &mut u64| {
        *checked += 1;
        if lhs != rhs {
            violations.push(Violation {
                equation,
                key,
                lhs,
                rhs,
            });
        }
    };

    for (r, s, n) in grid.points() {
        let len = r + s;
        for i in FamilyIndex::ALL {
            let key = RefinedKey::new(i, r, s, n);
            if let Some(expected) = base_value(&key) {
                let got = counter(key)?;
                record(Equation::Base, key, got.into(), expected.into(), &mut checked);
            }
            for neighbour in [
                RefinedKey::new(i, -1 - r, s, n),
                RefinedKey::new(i, r, -1 - s, n),
                RefinedKey::new(i, r, s, -1 - n),
            ] {
                let got = counter(neighbour)?;
                record(Equation::Base, neighbour, got.into(), 0, &mut checked);
            }
        }

        let h1 = i128::from(counter(one(r, s, n))?);
        let h2 = i128::from(counter(RefinedKey::new(FamilyIndex::Two, r, s, n))?);
        let odd_one = i128::from(counter(one(r, s - 1, n - 2 * len + variant.odd_one_offset))?);
        let even_min = i128::from(counter(one(r - 1, s, n - 4 * len + variant.even_min_offset))?);
        record(Equation::Difference, one(r, s, n), h1 - h2, odd_one + even_min, &mut checked);

        let shifted = i128::from(counter(one(r, s, n - 2 * len))?);
        record(
            Equation::Shift,
            RefinedKey::new(FamilyIndex::Two, r, s, n),
            h2,
            shifted,
            &mut checked,
        );
    }

    let verdict = violations.is_empty();
    Ok(SystemReport {
        grid,
        variant,
        equations_checked: checked,
        violations,
        verdict,
    })
}
