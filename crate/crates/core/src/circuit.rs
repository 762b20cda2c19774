// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Routed circuits and the normalized area weight.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OpKind {
    #[serde(rename = "1q")]
    OneQubit,
    #[serde(rename = "2q")]
    TwoQubit,
    #[serde(rename = "measure")]
    Measure,
}

impl OpKind {
    fn arity(self) -> usize {
        match self {
            OpKind::TwoQubit => 2,
            OpKind::OneQubit | OpKind::Measure => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Op {
    pub kind: OpKind,
    pub qubits: Vec<usize>,
}

impl Op {
    pub fn one(q: usize) -> Self {
        Op {
            kind: OpKind::OneQubit,
            qubits: vec![q],
        }
    }

    pub fn two(a: usize, b: usize) -> Self {
        Op {
            kind: OpKind::TwoQubit,
            qubits: vec![a, b],
        }
    }

    pub fn measure(q: usize) -> Self {
        Op {
            kind: OpKind::Measure,
            qubits: vec![q],
        }
    }
}

/// A circuit after routing: every two-qubit interaction must land on a
/// coupling edge once the circuit is laid out.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitSpec {
    id: String,
    num_qubits: usize,
    depth: usize,
    ops: Vec<Op>,
    interactions: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircuitDocument {
    pub id: String,
    pub num_qubits: usize,
    pub depth: usize,
    #[serde(default)]
    pub ops: Vec<Op>,
}

impl CircuitSpec {
    pub fn new(
        id: impl Into<String>,
        num_qubits: usize,
        depth: usize,
        ops: Vec<Op>,
    ) -> Result<Self> {
        let id = id.into();
        let invalid = |reason: String| Error::InvalidCircuit {
            id: id.clone(),
            reason,
        };
        if num_qubits == 0 {
            return Err(invalid("num_qubits must be at least 1".into()));
        }
        if depth == 0 {
            return Err(invalid("depth must be at least 1".into()));
        }
        let mut interactions = BTreeSet::new();
        for (i, op) in ops.iter().enumerate() {
            if op.qubits.len() != op.kind.arity() {
                return Err(invalid(format!("op {i} has {} qubits", op.qubits.len())));
            }
            if let Some(&q) = op.qubits.iter().find(|&&q| q >= num_qubits) {
                return Err(invalid(format!("op {i} uses qubit {q}")));
            }
            if op.kind == OpKind::TwoQubit {
                let (a, b) = (op.qubits[0], op.qubits[1]);
                if a == b {
                    return Err(invalid(format!("op {i} acts twice on qubit {a}")));
                }
                interactions.insert((a.min(b), a.max(b)));
            }
        }
        Ok(CircuitSpec {
            id,
            num_qubits,
            depth,
            ops,
            interactions,
        })
    }

    /// Linear nearest-neighbour circuit: `layers` rounds of single-qubit gates
    /// followed by a CX ladder, then a final measurement of every qubit.
    /// Depth is the as-soon-as-possible depth of the generated op list.
    pub fn chain(id: impl Into<String>, num_qubits: usize, layers: usize) -> Self {
        let mut ops = Vec::new();
        for _ in 0..layers {
            ops.extend((0..num_qubits).map(Op::one));
            ops.extend((1..num_qubits).map(|q| Op::two(q - 1, q)));
        }
        ops.extend((0..num_qubits).map(Op::measure));
        let depth = asap_depth(num_qubits, &ops);
        CircuitSpec::new(id, num_qubits, depth, ops).expect("chain circuit is well formed")
    }

    pub fn from_document(doc: &CircuitDocument) -> Result<Self> {
        Self::new(doc.id.clone(), doc.num_qubits, doc.depth, doc.ops.clone())
    }

    pub fn to_document(&self) -> CircuitDocument {
        CircuitDocument {
            id: self.id.clone(),
            num_qubits: self.num_qubits,
            depth: self.depth,
            ops: self.ops.clone(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    /// Distinct virtual-qubit pairs touched by two-qubit ops, smaller index first.
    pub fn interactions(&self) -> &BTreeSet<(usize, usize)> {
        &self.interactions
    }

    pub fn area(&self) -> u64 {
        self.num_qubits as u64 * self.depth as u64
    }
}

pub fn asap_depth(num_qubits: usize, ops: &[Op]) -> usize {
    let mut frontier = vec![0usize; num_qubits];
    for op in ops {
        let level = op.qubits.iter().map(|&q| frontier[q]).max().unwrap_or(0) + 1;
        for &q in &op.qubits {
            frontier[q] = level;
        }
    }
    frontier.into_iter().max().unwrap_or(0).max(1)
}

/// The circuits of one scheduling instance together with their areas
/// normalized by the largest area in the set.
#[derive(Debug, Clone, Default)]
pub struct CircuitSet {
    circuits: Vec<CircuitSpec>,
    areas: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircuitSetDocument {
    pub circuits: Vec<CircuitDocument>,
}

impl CircuitSet {
    pub fn new(circuits: Vec<CircuitSpec>) -> Result<Self> {
        let mut ids = HashSet::new();
        for c in &circuits {
            if !ids.insert(c.id()) {
                return Err(Error::DuplicateCircuit(c.id().to_string()));
            }
        }
        let max_area = circuits.iter().map(CircuitSpec::area).max().unwrap_or(1) as f64;
        let areas = circuits
            .iter()
            .map(|c| c.area() as f64 / max_area)
            .collect();
        Ok(CircuitSet { circuits, areas })
    }

    pub fn from_document(doc: &CircuitSetDocument) -> Result<Self> {
        let circuits = doc
            .circuits
            .iter()
            .map(CircuitSpec::from_document)
            .collect::<Result<_>>()?;
        Self::new(circuits)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CircuitSetDocument =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> CircuitSetDocument {
        CircuitSetDocument {
            circuits: self.circuits.iter().map(CircuitSpec::to_document).collect(),
        }
    }

    pub fn circuits(&self) -> &[CircuitSpec] {
        &self.circuits
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.circuits.iter().position(|c| c.id() == id)
    }

    pub fn get(&self, id: &str) -> Option<&CircuitSpec> {
        self.position(id).map(|i| &self.circuits[i])
    }

    /// Area of circuit `i` divided by the largest area in the set.
    pub fn area_at(&self, i: usize) -> f64 {
        self.areas[i]
    }

    pub fn normalized_area(&self, id: &str) -> Result<f64> {
        self.position(id)
            .map(|i| self.areas[i])
            .ok_or_else(|| Error::UnknownCircuit(id.to_string()))
    }

    /// A new set restricted to `ids` (in this set's order); areas are
    /// renormalized over the subset.
    pub fn subset<'a>(&self, ids: impl IntoIterator<Item = &'a str>) -> CircuitSet {
        let keep: HashSet<&str> = ids.into_iter().collect();
        let circuits = self
            .circuits
            .iter()
            .filter(|c| keep.contains(c.id()))
            .cloned()
            .collect();
        CircuitSet::new(circuits).expect("subset of a valid set")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circuit(id: &str, n: usize, depth: usize) -> CircuitSpec {
        CircuitSpec::new(id, n, depth, vec![]).unwrap()
    }

    #[test]
    fn single_circuit_area_is_one() {
        let set = CircuitSet::new(vec![circuit("a", 7, 13)]).unwrap();
        assert_eq!(set.normalized_area("a").unwrap(), 1.0);
    }

    #[test]
    fn two_circuit_areas() {
        let set = CircuitSet::new(vec![circuit("small", 5, 8), circuit("big", 10, 8)]).unwrap();
        assert_eq!(set.normalized_area("small").unwrap(), 0.5);
        assert_eq!(set.normalized_area("big").unwrap(), 1.0);
        assert!(matches!(
            set.normalized_area("none"),
            Err(Error::UnknownCircuit(_))
        ));
    }

    #[test]
    fn identical_circuits_all_one() {
        let set =
            CircuitSet::new((0..3).map(|i| circuit(&format!("c{i}"), 4, 6)).collect()).unwrap();
        assert!((0..3).all(|i| set.area_at(i) == 1.0));
    }

    #[test]
    fn subset_renormalizes() {
        let set = CircuitSet::new(vec![circuit("small", 5, 8), circuit("big", 10, 8)]).unwrap();
        let only_small = set.subset(["small"]);
        assert_eq!(only_small.normalized_area("small").unwrap(), 1.0);
    }

    #[test]
    fn interactions_are_distinct_pairs() {
        let c = CircuitSpec::new(
            "x",
            3,
            3,
            vec![Op::two(1, 0), Op::two(0, 1), Op::two(2, 1), Op::one(2)],
        )
        .unwrap();
        assert_eq!(
            c.interactions().iter().copied().collect::<Vec<_>>(),
            vec![(0, 1), (1, 2)]
        );
    }

    #[test]
    fn rejects_malformed_circuits() {
        assert!(CircuitSpec::new("x", 0, 1, vec![]).is_err());
        assert!(CircuitSpec::new("x", 2, 0, vec![]).is_err());
        assert!(CircuitSpec::new("x", 2, 1, vec![Op::two(0, 2)]).is_err());
        assert!(CircuitSpec::new("x", 2, 1, vec![Op::two(1, 1)]).is_err());
        let bad_arity = Op {
            kind: OpKind::TwoQubit,
            qubits: vec![0],
        };
        assert!(CircuitSpec::new("x", 2, 1, vec![bad_arity]).is_err());
        assert!(matches!(
            CircuitSet::new(vec![circuit("a", 1, 1), circuit("a", 2, 1)]),
            Err(Error::DuplicateCircuit(_))
        ));
    }

    #[test]
    fn document_format() {
        let text = r#"{"circuits":[{"id":"bell","num_qubits":2,"depth":3,
            "ops":[{"kind":"1q","qubits":[0]},{"kind":"2q","qubits":[0,1]},{"kind":"measure","qubits":[1]}]}]}"#;
        let set = CircuitSet::from_json(text).unwrap();
        let bell = set.get("bell").unwrap();
        assert_eq!(bell.ops()[1], Op::two(0, 1));
        assert_eq!(bell.ops()[2].kind, OpKind::Measure);
        let out = serde_json::to_string(&set.to_document()).unwrap();
        assert!(out.contains(r#""kind":"2q""#));
    }

    #[test]
    fn chain_depth() {
        // one layer on 3 qubits: 1q layer, cx(0,1), cx(1,2), measures
        let c = CircuitSpec::chain("c", 3, 1);
        assert_eq!(c.depth(), 4);
        assert_eq!(c.interactions().len(), 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn area_scaling_and_ordering(dims in prop::collection::vec((1usize..20, 1usize..50), 1..8), k in 1usize..6) {
                let base: Vec<_> = dims.iter().enumerate().map(|(i, &(n, d))| circuit(&format!("c{i}"), n, d)).collect();
                let scaled: Vec<_> = dims.iter().enumerate().map(|(i, &(n, d))| circuit(&format!("c{i}"), n, d * k)).collect();
                let a = CircuitSet::new(base).unwrap();
                let b = CircuitSet::new(scaled).unwrap();
                for i in 0..dims.len() {
                    prop_assert!((a.area_at(i) - b.area_at(i)).abs() < 1e-12);
                    prop_assert!(a.area_at(i) > 0.0 && a.area_at(i) <= 1.0);
                    for j in 0..dims.len() {
                        let raw = a.circuits()[i].area().cmp(&a.circuits()[j].area());
                        prop_assert_eq!(raw, a.area_at(i).partial_cmp(&a.area_at(j)).unwrap());
                    }
                }
                prop_assert!((0..dims.len()).any(|i| a.area_at(i) == 1.0));
            }
        }
    }
}
