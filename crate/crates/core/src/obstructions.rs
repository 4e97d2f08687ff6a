//! Necessary conditions for `g → h` and the rigidity test built on them.
//!
//! If `g` degenerates to a non-isomorphic `h` then
//! (a) `dim O(g) > dim O(h)`, (b) `dim z(g) ≤ dim z(h)`,
//! (c) `dim [g,g] ≥ dim [h,h]`, (d) `dim H^k(g) ≤ dim H^k(h)` for every `k`,
//! and (e) `a(g) ≤ a(h)`. A violated relation is an obstruction.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::catalog::ProfileTable;
use crate::error::{Error, Result};
use crate::invariants::InvariantProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObstructionKind {
    OrbitDim,
    CenterDim,
    DerivedDim,
    CohomologyDim(usize),
    MaxAbelian,
    External,
}

impl ObstructionKind {
    /// Short code used in reports: `a`, `b`, `c`, `d<k>`, `e`, `ext`.
    pub fn code(&self) -> String {
        match self {
            ObstructionKind::OrbitDim => "a".into(),
            ObstructionKind::CenterDim => "b".into(),
            ObstructionKind::DerivedDim => "c".into(),
            ObstructionKind::CohomologyDim(k) => alloc::format!("d{k}"),
            ObstructionKind::MaxAbelian => "e".into(),
            ObstructionKind::External => "ext".into(),
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        Some(match code {
            "a" => ObstructionKind::OrbitDim,
            "b" => ObstructionKind::CenterDim,
            "c" => ObstructionKind::DerivedDim,
            "e" => ObstructionKind::MaxAbelian,
            "ext" => ObstructionKind::External,
            _ => ObstructionKind::CohomologyDim(code.strip_prefix('d')?.parse().ok()?),
        })
    }

    /// Position in the fixed checking order.
    fn rank(&self) -> (usize, usize) {
        match self {
            ObstructionKind::OrbitDim => (0, 0),
            ObstructionKind::CenterDim => (1, 0),
            ObstructionKind::DerivedDim => (2, 0),
            ObstructionKind::CohomologyDim(k) => (3, *k),
            ObstructionKind::MaxAbelian => (4, 0),
            ObstructionKind::External => (5, 0),
        }
    }

    /// Whether `self` is checked no later than `other`.
    pub fn precedes_or_equals(&self, other: &ObstructionKind) -> bool {
        self.rank() <= other.rank()
    }
}

impl fmt::Display for ObstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionKind::CohomologyDim(k) => write!(f, "CohomologyDim({k})"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReason {
    pub kind: ObstructionKind,
    /// The compared invariant of the source and of the target. Zero for
    /// external facts.
    pub source_value: usize,
    pub target_value: usize,
    pub citation: Option<String>,
}

impl ObstructionReason {
    fn computed(kind: ObstructionKind, source_value: usize, target_value: usize) -> Self {
        ObstructionReason { kind, source_value, target_value, citation: None }
    }

    pub fn external(citation: impl Into<String>) -> Self {
        ObstructionReason { kind: ObstructionKind::External, source_value: 0, target_value: 0, citation: Some(citation.into()) }
    }

    /// Re-checks that the recorded values violate the relation of `kind`.
    pub fn is_genuine(&self) -> bool {
        let (g, h) = (self.source_value, self.target_value);
        match self.kind {
            ObstructionKind::OrbitDim => g <= h,
            ObstructionKind::CenterDim | ObstructionKind::CohomologyDim(_) | ObstructionKind::MaxAbelian => g > h,
            ObstructionKind::DerivedDim => g < h,
            ObstructionKind::External => self.citation.is_some(),
        }
    }
}

impl fmt::Display for ObstructionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.kind, &self.citation) {
            (ObstructionKind::External, Some(c)) => write!(f, "External: {c}"),
            (ObstructionKind::OrbitDim, _) => write!(f, "OrbitDim: {} <= {}", self.source_value, self.target_value),
            (ObstructionKind::DerivedDim, _) => write!(f, "DerivedDim: {} < {}", self.source_value, self.target_value),
            (kind, _) => write!(f, "{kind}: {} > {}", self.source_value, self.target_value),
        }
    }
}

/// Every relation that fails for `g → h`, in checking order. Max-abelian
/// comparisons use certified values only.
pub fn profile_violations(g: &InvariantProfile, h: &InvariantProfile) -> Vec<ObstructionReason> {
    let mut out = Vec::new();
    if g.orbit_dim <= h.orbit_dim {
        out.push(ObstructionReason::computed(ObstructionKind::OrbitDim, g.orbit_dim, h.orbit_dim));
    }
    if g.center_dim > h.center_dim {
        out.push(ObstructionReason::computed(ObstructionKind::CenterDim, g.center_dim, h.center_dim));
    }
    if g.derived_dim < h.derived_dim {
        out.push(ObstructionReason::computed(ObstructionKind::DerivedDim, g.derived_dim, h.derived_dim));
    }
    for (k, (bg, bh)) in g.betti.iter().zip(&h.betti).enumerate() {
        if bg > bh {
            out.push(ObstructionReason::computed(ObstructionKind::CohomologyDim(k), *bg, *bh));
        }
    }
    if let (Some(ag), Some(ah)) = (g.max_abelian.exact(), h.max_abelian.exact()) {
        if ag > ah {
            out.push(ObstructionReason::computed(ObstructionKind::MaxAbelian, ag, ah));
        }
    }
    out
}

/// First failing relation for `g → h`, in the order (a), (b), (c), (d), (e).
pub fn first_violation(g: &InvariantProfile, h: &InvariantProfile) -> Option<ObstructionReason> {
    profile_violations(g, h).into_iter().next()
}

/// Obstruction between two distinct catalog entries, by name.
pub fn obstruction(profiles: &ProfileTable, g: &str, h: &str) -> Result<Option<ObstructionReason>> {
    let pg = profiles.get(g).ok_or_else(|| Error::UnknownAlgebra(g.into()))?;
    let ph = profiles.get(h).ok_or_else(|| Error::UnknownAlgebra(h.into()))?;
    if g == h {
        return Ok(None);
    }
    Ok(first_violation(pg, ph))
}

/// A non-degeneration taken from the literature rather than computed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExternalFact {
    pub source: String,
    pub target: String,
    pub citation: String,
}

/// Obstructions for every ordered pair of distinct entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionMatrix {
    pub names: Vec<String>,
    pub cells: BTreeMap<(String, String), ObstructionReason>,
}

impl ObstructionMatrix {
    pub fn get(&self, g: &str, h: &str) -> Option<&ObstructionReason> {
        self.cells.get(&(g.into(), h.into()))
    }

    /// Adds external facts for pairs that have no computed obstruction.
    pub fn with_external(mut self, facts: &[ExternalFact]) -> Self {
        for f in facts {
            self.cells
                .entry((f.source.clone(), f.target.clone()))
                .or_insert_with(|| ObstructionReason::external(f.citation.clone()));
        }
        self
    }
}

pub fn obstruction_matrix(profiles: &ProfileTable) -> ObstructionMatrix {
    let names: Vec<String> = profiles.keys().cloned().collect();
    let mut cells = BTreeMap::new();
    for (g, pg) in profiles {
        for (h, ph) in profiles {
            if g == h {
                continue;
            }
            if let Some(r) = first_violation(pg, ph) {
                cells.insert((g.clone(), h.clone()), r);
            }
        }
    }
    ObstructionMatrix { names, cells }
}

/// Entries `h` such that every `g` with larger orbit is blocked from
/// degenerating to `h`, by a computed obstruction or an external fact.
pub fn undominated(profiles: &ProfileTable, external: &[ExternalFact]) -> BTreeSet<String> {
    let blocked: BTreeSet<(&str, &str)> = external.iter().map(|f| (f.source.as_str(), f.target.as_str())).collect();
    profiles
        .iter()
        .filter(|(h, ph)| {
            profiles.iter().all(|(g, pg)| {
                pg.orbit_dim <= ph.orbit_dim || first_violation(pg, ph).is_some() || blocked.contains(&(g.as_str(), h.as_str()))
            })
        })
        .map(|(h, _)| h.clone())
        .collect()
}

/// Potential dominators of `h` that no obstruction rules out.
pub fn open_dominators(profiles: &ProfileTable, external: &[ExternalFact], h: &str) -> Result<Vec<String>> {
    let ph = profiles.get(h).ok_or_else(|| Error::UnknownAlgebra(h.into()))?;
    Ok(profiles
        .iter()
        .filter(|(g, pg)| {
            pg.orbit_dim > ph.orbit_dim
                && first_violation(pg, ph).is_none()
                && !external.iter().any(|f| f.source == **g && f.target == h)
        })
        .map(|(g, _)| g.clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::CertifiedValue;
    use alloc::vec;

    fn prof(orbit: usize, z: usize, d: usize, b2: usize, ab: (usize, usize)) -> InvariantProfile {
        InvariantProfile {
            orbit_dim: orbit,
            center_dim: z,
            derived_dim: d,
            betti: vec![1, 8 - d, b2, 0, 0, 0, b2, 8 - d, 1],
            max_abelian: CertifiedValue { lower: ab.0, upper: ab.1, witness: None },
            nilpotency_class: 2,
        }
    }

    #[test]
    fn order_of_checks() {
        let g = prof(40, 3, 2, 10, (5, 5));
        let h = prof(41, 2, 3, 9, (4, 4));
        let all = profile_violations(&g, &h);
        let kinds: Vec<_> = all.iter().map(|r| r.kind).collect();
        assert_eq!(
            kinds,
            vec![
                ObstructionKind::OrbitDim,
                ObstructionKind::CenterDim,
                ObstructionKind::DerivedDim,
                ObstructionKind::CohomologyDim(1),
                ObstructionKind::CohomologyDim(2),
                ObstructionKind::CohomologyDim(6),
                ObstructionKind::CohomologyDim(7),
                ObstructionKind::MaxAbelian,
            ]
        );
        assert!(all.iter().all(ObstructionReason::is_genuine));
    }

    #[test]
    fn uncertified_max_abelian_never_obstructs() {
        let g = prof(40, 2, 2, 10, (6, 7));
        let h = prof(30, 2, 2, 10, (5, 5));
        assert_eq!(first_violation(&g, &h), None);
        let g = prof(40, 2, 2, 10, (6, 6));
        assert_eq!(first_violation(&g, &h).map(|r| r.kind), Some(ObstructionKind::MaxAbelian));
    }

    #[test]
    fn codes_round_trip() {
        for k in [
            ObstructionKind::OrbitDim,
            ObstructionKind::CenterDim,
            ObstructionKind::DerivedDim,
            ObstructionKind::CohomologyDim(4),
            ObstructionKind::MaxAbelian,
            ObstructionKind::External,
        ] {
            assert_eq!(ObstructionKind::from_code(&k.code()), Some(k));
        }
        assert_eq!(ObstructionKind::from_code("dx"), None);
        assert!(ObstructionKind::CenterDim.precedes_or_equals(&ObstructionKind::CohomologyDim(2)));
        assert!(!ObstructionKind::CohomologyDim(3).precedes_or_equals(&ObstructionKind::CohomologyDim(2)));
    }

    #[test]
    fn undominated_on_tiny_tables() {
        let mut t = ProfileTable::new();
        t.insert("A".into(), prof(10, 2, 2, 5, (3, 3)));
        t.insert("B".into(), prof(5, 2, 2, 5, (3, 3)));
        assert_eq!(undominated(&t, &[]), BTreeSet::from(["A".into()]));
        let fact = ExternalFact { source: "A".into(), target: "B".into(), citation: "cited".into() };
        assert_eq!(undominated(&t, core::slice::from_ref(&fact)).len(), 2);
        assert_eq!(open_dominators(&t, &[], "B").unwrap(), vec![String::from("A")]);
        assert!(open_dominators(&t, &[fact], "B").unwrap().is_empty());
    }
}
