//! The part-removal maps behind the recurrence system, with inverses and an
//! exhaustive audit harness.
//!
//! Each map sends a class-1 (or, for [`CaseKind::Shift`], class-2) partition
//! at key `(r, s, n)` to a class-1 partition at a smaller key:
//!
//! | case      | removes                        | subtracts per part | target key               |
//! |-----------|--------------------------------|--------------------|--------------------------|
//! | `OddOne`  | the part 1                     | 2                  | `(r, s-1, n-2(r+s)+1)`   |
//! | `EvenMin` | smallest even (`2(r+s)` for H, `2` for G) | 2 (H), 4 (G) | `(r-1, s, n-4(r+s)+2)` |
//! | `Shift`   | nothing                        | 2                  | `(r, s, n-2(r+s))`       |

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classes::{members_by_split, Family, FamilyIndex, RefinedKey};
use crate::error::{Error, Result};
use crate::partition::{split_even_odd, EvenOddSplit, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    /// Smallest odd part is 1.
    OddOne,
    /// Smallest odd part is not 1 and the smallest even part sits at its lower bound.
    EvenMin,
    /// A class-2 partition, lowered by 2 in every part.
    Shift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TransformCase {
    pub family: Family,
    pub kind: CaseKind,
}

impl TransformCase {
    pub const ALL: [TransformCase; 6] = [
        TransformCase::new(Family::H, CaseKind::OddOne),
        TransformCase::new(Family::H, CaseKind::EvenMin),
        TransformCase::new(Family::H, CaseKind::Shift),
        TransformCase::new(Family::G, CaseKind::OddOne),
        TransformCase::new(Family::G, CaseKind::EvenMin),
        TransformCase::new(Family::G, CaseKind::Shift),
    ];

    pub const fn new(family: Family, kind: CaseKind) -> Self {
        Self { family, kind }
    }

    pub fn source_index(&self) -> FamilyIndex {
        match self.kind {
            CaseKind::Shift => FamilyIndex::Two,
            _ => FamilyIndex::One,
        }
    }

    pub fn source_key(&self, r: i64, s: i64, n: i64) -> RefinedKey {
        RefinedKey::new(self.source_index(), r, s, n)
    }

    pub fn target_key(&self, r: i64, s: i64, n: i64) -> RefinedKey {
        let len = r + s;
        let (r, s, n) = match self.kind {
            CaseKind::OddOne => (r, s - 1, n - 2 * len + 1),
            CaseKind::EvenMin => (r - 1, s, n - 4 * len + 2),
            CaseKind::Shift => (r, s, n - 2 * len),
        };
        RefinedKey::new(FamilyIndex::One, r, s, n)
    }

    /// Amount subtracted from every surviving part.
    fn step(&self) -> u32 {
        match (self.family, self.kind) {
            (Family::G, CaseKind::EvenMin) => 4,
            _ => 2,
        }
    }

    /// Size of the part removed by the map, given the source `(r, s)`.
    fn removed_part(&self, r: usize, s: usize) -> Option<u32> {
        match (self.family, self.kind) {
            (_, CaseKind::OddOne) => Some(1),
            (Family::H, CaseKind::EvenMin) => Some(2 * (r + s) as u32),
            (Family::G, CaseKind::EvenMin) => Some(2),
            (_, CaseKind::Shift) => None,
        }
    }

    /// Whether `split` meets this case's trigger condition. Class membership
    /// is checked separately.
    pub fn triggers(&self, split: &EvenOddSplit) -> bool {
        match self.kind {
            CaseKind::OddOne => odd_one_trigger(split),
            CaseKind::EvenMin => even_min_trigger(self.family, split),
            CaseKind::Shift => true,
        }
    }

    fn check_domain(&self, p: &Partition) -> std::result::Result<EvenOddSplit, String> {
        let i = self.source_index();
        if !self.family.contains(p, i) {
            return Err(format!("not in class {}_{}", self.family, i));
        }
        let split = split_even_odd(p);
        match self.kind {
            CaseKind::OddOne if !odd_one_trigger(&split) => {
                Err("smallest odd part is not 1".into())
            }
            CaseKind::EvenMin if split.smallest_odd() == Some(1) => {
                Err("smallest odd part is 1".into())
            }
            CaseKind::EvenMin if !even_min_trigger(self.family, &split) => Err(format!(
                "smallest even part is not {}",
                even_threshold(self.family, &split)
            )),
            _ => Ok(split),
        }
    }

    fn precondition(&self, p: &Partition, reason: impl Into<String>) -> Error {
        Error::Precondition {
            case: self.to_string(),
            parts: p.to_string(),
            reason: reason.into(),
        }
    }
}

impl fmt::Display for TransformCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            CaseKind::OddOne => "odd-one",
            CaseKind::EvenMin => "even-min",
            CaseKind::Shift => "shift",
        };
        write!(f, "{}/{}", self.family, kind)
    }
}

fn odd_one_trigger(split: &EvenOddSplit) -> bool {
    split.smallest_odd() == Some(1)
}

fn even_threshold(family: Family, split: &EvenOddSplit) -> u32 {
    match family {
        Family::H => 2 * split.len() as u32,
        Family::G => 2,
    }
}

// OddOne wins when both conditions hold, so EvenMin excludes a part 1.
fn even_min_trigger(family: Family, split: &EvenOddSplit) -> bool {
    split.smallest_odd() != Some(1) && split.smallest_even() == Some(even_threshold(family, split))
}

/// Applies the case's map to `p`, rejecting inputs outside its domain.
pub fn forward(case: TransformCase, p: &Partition) -> Result<Partition> {
    let split = case
        .check_domain(p)
        .map_err(|reason| case.precondition(p, reason))?;
    let mut parts = p.parts().to_vec();
    if let Some(removed) = case.removed_part(split.r(), split.s()) {
        let at = parts
            .iter()
            .rposition(|&x| x == removed)
            .ok_or_else(|| case.precondition(p, format!("no part {removed} to remove")))?;
        parts.remove(at);
    }
    let step = case.step();
    if parts.iter().any(|&x| x <= step) {
        return Err(case.precondition(p, "a remaining part would become nonpositive"));
    }
    Partition::new(parts.into_iter().map(|x| x - step).collect())
}

/// Inverse of [`forward`]. `r` and `s` are the even/odd counts of the
/// partition being reconstructed; the inserted part depends on them.
pub fn backward(case: TransformCase, mu: &Partition, r: i64, s: i64) -> Result<Partition> {
    if r < 0 || s < 0 {
        return Err(case.precondition(mu, format!("negative target (r={r}, s={s})")));
    }
    let expected = case.target_key(r, s, 0);
    let split = split_even_odd(mu);
    if (split.r() as i64, split.s() as i64) != (expected.r, expected.s) {
        return Err(case.precondition(
            mu,
            format!(
                "expected {} even and {} odd parts, found {} and {}",
                expected.r,
                expected.s,
                split.r(),
                split.s()
            ),
        ));
    }
    if !case.family.contains(mu, FamilyIndex::One) {
        return Err(case.precondition(mu, format!("not in class {}_1", case.family)));
    }
    let step = case.step();
    let mut parts: Vec<u32> = mu.parts().iter().map(|&x| x + step).collect();
    if let Some(removed) = case.removed_part(r as usize, s as usize) {
        parts.push(removed);
    }
    let lambda = Partition::from_multiset(parts)?;
    case.check_domain(&lambda)
        .map_err(|reason| case.precondition(mu, format!("inverse leaves the domain: {reason}")))?;
    Ok(lambda)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Bijective,
    NotWellDefined,
    NotInjective,
    NotSurjective,
}

/// Result of mapping every domain element at one key and matching the
/// images against the codomain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformAudit {
    pub case: TransformCase,
    pub source_key: RefinedKey,
    pub target_key: RefinedKey,
    pub verdict: Verdict,
    pub mapping: Vec<(Partition, Partition)>,
    pub witnesses: Vec<Partition>,
    #[serde(skip)]
    pub domain: Vec<Partition>,
    #[serde(skip)]
    pub codomain: Vec<Partition>,
}

impl TransformAudit {
    pub fn is_bijective(&self) -> bool {
        self.verdict == Verdict::Bijective
    }
}

type Groups = BTreeMap<(usize, usize), Vec<Partition>>;

/// Audit harness that enumerates each `(family, i, n)` universe once and
/// serves every `(r, s)` slice of it from a cache.
#[derive(Debug, Default)]
pub struct Auditor {
    universes: HashMap<(Family, FamilyIndex, i64), Groups>,
}

impl Auditor {
    pub fn new() -> Self {
        Self::default()
    }

    fn members(&mut self, family: Family, key: RefinedKey) -> Vec<Partition> {
        if key.has_negative_index() {
            return Vec::new();
        }
        self.universes
            .entry((family, key.i, key.n))
            .or_insert_with(|| members_by_split(family, key.i, key.n))
            .get(&(key.r as usize, key.s as usize))
            .cloned()
            .unwrap_or_default()
    }

    /// Exhaustively audits `case` at source key `(r, s, n)`.
    pub fn audit(&mut self, case: TransformCase, r: i64, s: i64, n: i64) -> TransformAudit {
        self.audit_with(case, r, s, n, |p| forward(case, p))
    }

    /// Audits an arbitrary map over the domain and codomain of `case`.
    pub fn audit_with<F>(
        &mut self,
        case: TransformCase,
        r: i64,
        s: i64,
        n: i64,
        map: F,
    ) -> TransformAudit
    where
        F: Fn(&Partition) -> Result<Partition>,
    {
        let source_key = case.source_key(r, s, n);
        let target_key = case.target_key(r, s, n);
        let domain: Vec<Partition> = self
            .members(case.family, source_key)
            .into_iter()
            .filter(|p| case.triggers(&split_even_odd(p)))
            .collect();
        let codomain = self.members(case.family, target_key);
        let codomain_set: BTreeSet<&Partition> = codomain.iter().collect();

        let mut mapping = Vec::with_capacity(domain.len());
        let mut ill_defined = Vec::new();
        for lambda in &domain {
            match map(lambda) {
                Ok(mu) if codomain_set.contains(&mu) => mapping.push((lambda.clone(), mu)),
                _ => ill_defined.push(lambda.clone()),
            }
        }

        let mut preimages: BTreeMap<&Partition, Vec<&Partition>> = BTreeMap::new();
        for (lambda, mu) in &mapping {
            preimages.entry(mu).or_default().push(lambda);
        }
        let collisions: Vec<Partition> = preimages
            .values()
            .filter(|v| v.len() > 1)
            .flat_map(|v| v.iter().map(|&p| p.clone()))
            .collect();
        let missed: Vec<Partition> = codomain
            .iter()
            .filter(|mu| !preimages.contains_key(mu))
            .cloned()
            .collect();

        let (verdict, witnesses) = if !ill_defined.is_empty() {
            (Verdict::NotWellDefined, ill_defined)
        } else if !collisions.is_empty() {
            (Verdict::NotInjective, collisions)
        } else if !missed.is_empty() {
            (Verdict::NotSurjective, missed)
        } else {
            (Verdict::Bijective, Vec::new())
        };

        TransformAudit {
            case,
            source_key,
            target_key,
            verdict,
            mapping,
            witnesses,
            domain,
            codomain,
        }
    }

    pub fn case_split(&mut self, family: Family, r: i64, s: i64, n: i64) -> CaseSplit {
        let class1 = self.members(family, RefinedKey::new(FamilyIndex::One, r, s, n));
        let class2 = self.members(family, RefinedKey::new(FamilyIndex::Two, r, s, n));
        let class2_set: BTreeSet<&Partition> = class2.iter().collect();
        let class1_set: BTreeSet<&Partition> = class1.iter().collect();

        let mut out = CaseSplit::default();
        out.misfits
            .extend(class2.iter().filter(|p| !class1_set.contains(p)).cloned());
        for p in &class1 {
            let split = split_even_odd(p);
            let odd = odd_one_trigger(&split);
            let even = even_min_trigger(family, &split);
            match (class2_set.contains(p), odd, even) {
                (true, false, false) => out.shifted.push(p.clone()),
                (false, true, false) => out.odd_one.push(p.clone()),
                (false, false, true) => out.even_min.push(p.clone()),
                _ => out.misfits.push(p.clone()),
            }
        }
        out
    }
}

/// Exhaustively audits `case` at source key `(r, s, n)`.
pub fn audit(case: TransformCase, r: i64, s: i64, n: i64) -> TransformAudit {
    Auditor::new().audit(case, r, s, n)
}

pub fn audit_with<F>(case: TransformCase, r: i64, s: i64, n: i64, map: F) -> TransformAudit
where
    F: Fn(&Partition) -> Result<Partition>,
{
    Auditor::new().audit_with(case, r, s, n, map)
}

/// How the class-1 members at one key divide among the three cases.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CaseSplit {
    /// Class-2 members at the same key (handled by the shift).
    pub shifted: Vec<Partition>,
    pub odd_one: Vec<Partition>,
    pub even_min: Vec<Partition>,
    /// Class-1 members that are neither class-2 nor triggered, or are
    /// class-2 and triggered, or class-2 members missing from class 1.
    pub misfits: Vec<Partition>,
}

pub fn case_split(family: Family, r: i64, s: i64, n: i64) -> CaseSplit {
    Auditor::new().case_split(family, r, s, n)
}

/// True iff class 1 minus class 2 at the key is exactly the disjoint union
/// of the odd-one and even-min trigger sets.
pub fn case_split_check(family: Family, r: i64, s: i64, n: i64) -> bool {
    case_split(family, r, s, n).misfits.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    const H_ODD: TransformCase = TransformCase::new(Family::H, CaseKind::OddOne);
    const H_EVEN: TransformCase = TransformCase::new(Family::H, CaseKind::EvenMin);
    const H_SHIFT: TransformCase = TransformCase::new(Family::H, CaseKind::Shift);
    const G_ODD: TransformCase = TransformCase::new(Family::G, CaseKind::OddOne);
    const G_EVEN: TransformCase = TransformCase::new(Family::G, CaseKind::EvenMin);
    const G_SHIFT: TransformCase = TransformCase::new(Family::G, CaseKind::Shift);

    #[test]
    fn forward_examples() {
        assert_eq!(forward(H_ODD, &p(&[5, 3, 1])).unwrap(), p(&[3, 1]));
        assert_eq!(forward(H_EVEN, &p(&[5, 4])).unwrap(), p(&[3]));
        assert_eq!(forward(G_EVEN, &p(&[7, 2])).unwrap(), p(&[3]));
        assert_eq!(forward(G_SHIFT, &p(&[6, 3])).unwrap(), p(&[4, 1]));
        assert_eq!(forward(G_ODD, &p(&[8, 1])).unwrap(), p(&[6]));
        assert_eq!(forward(H_SHIFT, &Partition::empty()).unwrap(), Partition::empty());
    }

    #[test]
    fn backward_examples() {
        assert_eq!(backward(H_ODD, &p(&[3, 1]), 0, 3).unwrap(), p(&[5, 3, 1]));
        assert_eq!(backward(G_EVEN, &p(&[3]), 1, 1).unwrap(), p(&[7, 2]));
        assert_eq!(backward(H_SHIFT, &p(&[4, 1]), 1, 1).unwrap(), p(&[6, 3]));
        assert_eq!(backward(H_EVEN, &p(&[3]), 1, 1).unwrap(), p(&[5, 4]));
    }

    #[test]
    fn forward_rejects_out_of_domain() {
        // not in H_1
        let err = forward(H_ODD, &p(&[7, 2])).unwrap_err();
        assert!(err.to_string().contains("not in class H_1"), "{err}");
        // no part 1
        assert!(forward(H_ODD, &p(&[9])).is_err());
        // part 1 present, so OddOne owns it
        assert!(forward(G_EVEN, &p(&[8, 1])).is_err());
        // smallest even above the threshold
        assert!(forward(H_EVEN, &p(&[8, 1])).is_err());
        // shift needs class 2
        assert!(forward(G_SHIFT, &p(&[8, 1])).is_err());
    }

    #[test]
    fn backward_rejects_bad_targets() {
        assert!(backward(H_ODD, &p(&[3, 1]), 1, 3).is_err());
        assert!(backward(H_ODD, &p(&[3, 1]), -1, 3).is_err());
        // 2+1 is not in G_1
        assert!(backward(G_SHIFT, &p(&[2, 1]), 1, 1).is_err());
    }

    #[test]
    fn audit_examples() {
        let a = audit(G_EVEN, 1, 1, 9);
        assert_eq!(a.domain, vec![p(&[7, 2])]);
        assert_eq!(a.codomain, vec![p(&[3])]);
        assert_eq!(a.target_key, RefinedKey::new(FamilyIndex::One, 0, 1, 3));
        assert!(a.is_bijective());

        let a = audit(H_ODD, 0, 1, 1);
        assert_eq!(a.domain, vec![p(&[1])]);
        assert_eq!(a.codomain, vec![Partition::empty()]);
        assert!(a.is_bijective());
    }

    #[test]
    fn audit_json_fields() {
        let a = audit(G_EVEN, 1, 1, 9);
        let v: serde_json::Value = serde_json::to_value(&a).unwrap();
        let obj = v.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(
            keys,
            ["case", "mapping", "source_key", "target_key", "verdict", "witnesses"]
        );
        assert_eq!(v["mapping"], serde_json::json!([[[7, 2], [3]]]));
        assert_eq!(v["verdict"], "bijective");
    }

    #[test]
    fn case_split_examples() {
        let h = case_split(Family::H, 1, 1, 9);
        assert_eq!(h.odd_one, vec![p(&[8, 1])]);
        assert_eq!(h.even_min, vec![p(&[5, 4])]);
        assert_eq!(h.shifted, vec![p(&[6, 3])]);
        assert!(h.misfits.is_empty());

        let g = case_split(Family::G, 1, 1, 9);
        assert_eq!(g.odd_one, vec![p(&[8, 1])]);
        assert_eq!(g.even_min, vec![p(&[7, 2])]);
        assert!(case_split_check(Family::G, 1, 1, 9));
        assert!(case_split_check(Family::H, 0, 0, -3));
    }

    #[test]
    fn broken_maps_fail_their_audits() {
        // G even-min must subtract 4; subtracting 2 misses the codomain weight.
        let shallow = |q: &Partition| {
            let mut parts = q.parts().to_vec();
            parts.pop();
            Partition::new(parts.into_iter().map(|x| x - 2).collect())
        };
        let a = audit_with(G_EVEN, 1, 1, 9, shallow);
        assert_eq!(a.verdict, Verdict::NotWellDefined);
        assert_eq!(a.witnesses, vec![p(&[7, 2])]);

        // Collapse every image onto one codomain element.
        let a0 = audit(H_SHIFT, 0, 2, 16);
        assert!(a0.is_bijective());
        assert!(a0.domain.len() >= 2, "{:?}", a0.domain);
        let first = a0.codomain[0].clone();
        let a = audit_with(H_SHIFT, 0, 2, 16, |_| Ok(first.clone()));
        assert_eq!(a.verdict, Verdict::NotInjective);
        assert_eq!(a.witnesses.len(), a0.domain.len());
    }

    #[test]
    fn every_case_round_trips_small() {
        let mut auditor = Auditor::new();
        for case in TransformCase::ALL {
            for n in 0..=14 {
                for r in 0..=4 {
                    for s in 0..=4 {
                        let a = auditor.audit(case, r, s, n);
                        assert!(a.is_bijective(), "{case} at ({r},{s},{n}): {:?}", a.witnesses);
                        for (lambda, mu) in &a.mapping {
                            assert_eq!(&backward(case, mu, r, s).unwrap(), lambda);
                        }
                    }
                }
            }
        }
    }
}
