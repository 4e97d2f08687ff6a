//! The degeneration order on catalog entries: verified edges, forbidden
//! pairs, closure, Hasse diagram and the pairs nobody has decided yet.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::obstructions::{ObstructionMatrix, ObstructionReason};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeProvenance {
    /// Verified from a witness file.
    Witness(String),
    Published,
    Derived,
    /// Composite of verified edges.
    Transitive,
}

pub type Pair = (String, String);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegenerationGraph {
    /// Node names with their orbit dimension, when known.
    nodes: BTreeMap<String, Option<usize>>,
    verified: BTreeMap<Pair, EdgeProvenance>,
    forbidden: BTreeMap<Pair, ObstructionReason>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosetError {
    /// A verified cycle through the named node.
    Cycle(String),
    /// Closure edges that are also forbidden.
    Contradictions(Vec<(Pair, ObstructionReason)>),
}

impl DegenerationGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, name: impl Into<String>, orbit_dim: Option<usize>) {
        self.nodes.insert(name.into(), orbit_dim);
    }

    /// Adds a verified edge; unknown endpoints become nodes.
    pub fn add_edge(&mut self, from: impl Into<String>, to: impl Into<String>, provenance: EdgeProvenance) {
        let (from, to) = (from.into(), to.into());
        self.nodes.entry(from.clone()).or_insert(None);
        self.nodes.entry(to.clone()).or_insert(None);
        self.verified.entry((from, to)).or_insert(provenance);
    }

    pub fn forbid(&mut self, from: impl Into<String>, to: impl Into<String>, reason: ObstructionReason) {
        self.forbidden.insert((from.into(), to.into()), reason);
    }

    pub fn nodes(&self) -> impl Iterator<Item = (&String, &Option<usize>)> {
        self.nodes.iter()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn orbit_dim(&self, name: &str) -> Option<usize> {
        self.nodes.get(name).copied().flatten()
    }

    pub fn verified(&self) -> &BTreeMap<Pair, EdgeProvenance> {
        &self.verified
    }

    pub fn forbidden(&self) -> &BTreeMap<Pair, ObstructionReason> {
        &self.forbidden
    }

    pub fn has_edge(&self, from: &str, to: &str) -> bool {
        self.verified.contains_key(&(from.into(), to.into()))
    }

    fn successors(&self) -> BTreeMap<&str, Vec<&str>> {
        let mut out: BTreeMap<&str, Vec<&str>> = self.nodes.keys().map(|n| (n.as_str(), Vec::new())).collect();
        for (a, b) in self.verified.keys() {
            out.get_mut(a.as_str()).expect("endpoints are nodes").push(b.as_str());
        }
        out
    }

    /// Verified edges and all their composites. Fails on a cycle, or when a
    /// composite edge is forbidden.
    pub fn transitive_closure(&self) -> Result<DegenerationGraph, PosetError> {
        let succ = self.successors();
        let mut out = self.clone();
        for &start in succ.keys() {
            let mut seen = BTreeSet::new();
            let mut stack: Vec<&str> = succ[start].clone();
            while let Some(v) = stack.pop() {
                if v == start {
                    return Err(PosetError::Cycle(start.into()));
                }
                if seen.insert(v) {
                    stack.extend(succ[v].iter().copied());
                }
            }
            for v in seen {
                out.verified.entry((start.into(), v.into())).or_insert(EdgeProvenance::Transitive);
            }
        }
        let contradictions: Vec<(Pair, ObstructionReason)> =
            out.verified.keys().filter_map(|p| out.forbidden.get(p).map(|r| (p.clone(), r.clone()))).collect();
        if !contradictions.is_empty() {
            return Err(PosetError::Contradictions(contradictions));
        }
        Ok(out)
    }

    /// Closure edges with no intermediate node; the forbidden set is ignored.
    pub fn hasse(&self) -> Result<BTreeSet<Pair>, PosetError> {
        let closed = self.without_forbidden().transitive_closure()?;
        let edges: BTreeSet<&Pair> = closed.verified.keys().collect();
        let mut mids: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (a, b) in &edges {
            mids.entry(a.as_str()).or_default().push(b.as_str());
        }
        Ok(edges
            .iter()
            .filter(|(a, c)| {
                !mids[a.as_str()].iter().any(|b| edges.contains(&(String::from(*b), c.clone())))
            })
            .map(|&p| p.clone())
            .collect())
    }

    fn without_forbidden(&self) -> DegenerationGraph {
        DegenerationGraph { nodes: self.nodes.clone(), verified: self.verified.clone(), forbidden: BTreeMap::new() }
    }

    /// Nodes without incoming verified edges. Incoming edges in the closure
    /// exist exactly when direct ones do, so no closure is needed.
    pub fn maximal_elements(&self) -> BTreeSet<String> {
        let targets: BTreeSet<&String> = self.verified.keys().map(|(_, b)| b).collect();
        self.nodes.keys().filter(|n| !targets.contains(n)).cloned().collect()
    }

    /// Verified edges that do not strictly decrease orbit dimension.
    pub fn orbit_violations(&self) -> Vec<Pair> {
        self.verified
            .keys()
            .filter(|(a, b)| match (self.orbit_dim(a), self.orbit_dim(b)) {
                (Some(x), Some(y)) => x <= y,
                _ => false,
            })
            .cloned()
            .collect()
    }

    /// Cross-checks verified edges (with composites) against computed
    /// obstructions and the graph's own forbidden pairs.
    pub fn consistency_check(&self, matrix: &ObstructionMatrix) -> ConsistencyReport {
        let mut report = ConsistencyReport::default();
        let closed = match self.without_forbidden().transitive_closure() {
            Ok(c) => c,
            Err(PosetError::Cycle(n)) => {
                report.cycle = Some(n);
                self.without_forbidden()
            }
            Err(PosetError::Contradictions(_)) => unreachable!("no forbidden pairs"),
        };
        for (pair, prov) in &closed.verified {
            if let Some(r) = matrix.cells.get(pair) {
                report.contradictions.push((pair.clone(), prov.clone(), r.clone()));
            }
            if let Some(r) = self.forbidden.get(pair) {
                report.disjointness.push((pair.clone(), r.clone()));
            }
        }
        report.orbit_violations = closed.orbit_violations();
        for a in self.nodes.keys() {
            for b in self.nodes.keys() {
                if a == b {
                    continue;
                }
                let p = (a.clone(), b.clone());
                if !closed.verified.contains_key(&p) && !matrix.cells.contains_key(&p) && !self.forbidden.contains_key(&p) {
                    report.open_pairs.push(p);
                }
            }
        }
        report
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConsistencyReport {
    /// Verified (possibly composite) edges carrying an obstruction.
    pub contradictions: Vec<(Pair, EdgeProvenance, ObstructionReason)>,
    /// Pairs both verified and listed as forbidden in the graph.
    pub disjointness: Vec<(Pair, ObstructionReason)>,
    pub orbit_violations: Vec<Pair>,
    pub cycle: Option<String>,
    /// Ordered pairs neither verified nor forbidden.
    pub open_pairs: Vec<Pair>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.contradictions.is_empty() && self.disjointness.is_empty() && self.orbit_violations.is_empty() && self.cycle.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstructions::ObstructionKind;
    use alloc::vec;

    fn chain(edges: &[(&str, &str)]) -> DegenerationGraph {
        let mut g = DegenerationGraph::new();
        for (a, b) in edges {
            g.add_edge(*a, *b, EdgeProvenance::Derived);
        }
        g
    }

    fn pairs(p: &[(&str, &str)]) -> BTreeSet<Pair> {
        p.iter().map(|(a, b)| (String::from(*a), String::from(*b))).collect()
    }

    #[test]
    fn closure_adds_composites() {
        let c = chain(&[("a", "b"), ("b", "c")]).transitive_closure().unwrap();
        assert_eq!(c.verified()[&("a".into(), "c".into())], EdgeProvenance::Transitive);
        assert_eq!(DegenerationGraph::new().transitive_closure().unwrap(), DegenerationGraph::new());
    }

    #[test]
    fn hasse_drops_shortcuts() {
        let g = chain(&[("a", "b"), ("b", "c"), ("a", "c")]);
        assert_eq!(g.hasse().unwrap(), pairs(&[("a", "b"), ("b", "c")]));
        assert_eq!(chain(&[("a", "b")]).hasse().unwrap(), pairs(&[("a", "b")]));
    }

    #[test]
    fn maxima() {
        assert_eq!(chain(&[("a", "b"), ("b", "c")]).maximal_elements(), BTreeSet::from(["a".into()]));
        let mut g = DegenerationGraph::new();
        g.add_node("x", None);
        g.add_node("y", None);
        assert_eq!(g.maximal_elements().len(), 2);
    }

    #[test]
    fn cycles_and_contradictions() {
        assert_eq!(chain(&[("a", "b"), ("b", "a")]).transitive_closure(), Err(PosetError::Cycle("a".into())));
        let mut g = chain(&[("a", "b"), ("b", "c")]);
        g.forbid("a", "c", ObstructionReason::external("cited"));
        match g.transitive_closure() {
            Err(PosetError::Contradictions(v)) => assert_eq!(v[0].0, ("a".into(), "c".into())),
            other => panic!("unexpected {other:?}"),
        }
        let report = g.consistency_check(&ObstructionMatrix { names: vec![], cells: BTreeMap::new() });
        assert_eq!(report.disjointness.len(), 1);
        assert!(!report.is_consistent());
    }

    #[test]
    fn open_pairs_inventory() {
        let mut g = chain(&[("a", "b")]);
        g.add_node("c", None);
        let mut cells = BTreeMap::new();
        cells.insert(
            ("b".into(), "a".into()),
            ObstructionReason { kind: ObstructionKind::OrbitDim, source_value: 1, target_value: 2, citation: None },
        );
        let report = g.consistency_check(&ObstructionMatrix { names: vec![], cells });
        assert!(report.is_consistent());
        assert_eq!(report.open_pairs.len(), 6 - 2);
    }
}
