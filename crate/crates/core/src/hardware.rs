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

//! Device model: the coupling graph, its cached hop distances and the
//! calibration error rates attached to qubits and couplings.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hop distance between qubits that sit in different connected components.
pub const UNREACHABLE: u32 = u32::MAX;

/// Undirected physical connectivity with an all-pairs hop-distance table.
#[derive(Debug, Clone)]
pub struct CouplingMap {
    num_qubits: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    distances: Vec<u32>,
    fingerprint: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CouplingMapDocument {
    pub num_qubits: usize,
    pub edges: Vec<[usize; 2]>,
}

impl CouplingMap {
    /// Validates the edge list and runs a breadth-first search from every
    /// qubit to fill the distance table.
    pub fn new(num_qubits: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::Malformed("num_qubits must be positive".into()));
        }
        let mut seen = BTreeSet::new();
        let mut neighbors = vec![Vec::new(); num_qubits];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for q in [a, b] {
                if q >= num_qubits {
                    return Err(Error::QubitOutOfRange {
                        index: q,
                        num_qubits,
                    });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
            normalized.push(key);
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for adj in &mut neighbors {
            adj.sort_unstable();
        }
        normalized.sort_unstable();

        let mut distances = vec![UNREACHABLE; num_qubits * num_qubits];
        let mut queue = VecDeque::new();
        for source in 0..num_qubits {
            let row = &mut distances[source * num_qubits..(source + 1) * num_qubits];
            row[source] = 0;
            queue.push_back(source);
            while let Some(q) = queue.pop_front() {
                let next = row[q] + 1;
                for &n in &neighbors[q] {
                    if row[n] == UNREACHABLE {
                        row[n] = next;
                        queue.push_back(n);
                    }
                }
            }
        }

        let mut hasher = DefaultHasher::new();
        num_qubits.hash(&mut hasher);
        normalized.hash(&mut hasher);

        Ok(CouplingMap {
            num_qubits,
            edges: normalized,
            neighbors,
            distances,
            fingerprint: hasher.finish(),
        })
    }

    pub fn from_document(doc: &CouplingMapDocument) -> Result<Self> {
        let edges: Vec<_> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::new(doc.num_qubits, &edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CouplingMapDocument =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> CouplingMapDocument {
        CouplingMapDocument {
            num_qubits: self.num_qubits,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Edges with the smaller endpoint first, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.neighbors[q]
    }

    pub fn degree(&self, q: usize) -> usize {
        self.neighbors[q].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.num_qubits && self.neighbors[a].binary_search(&b).is_ok()
    }

    /// Shortest-path hop count, or [`UNREACHABLE`] across components.
    pub fn distance(&self, a: usize, b: usize) -> Result<u32> {
        for q in [a, b] {
            if q >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits: self.num_qubits,
                });
            }
        }
        Ok(self.distance_unchecked(a, b))
    }

    #[inline]
    pub(crate) fn distance_unchecked(&self, a: usize, b: usize) -> u32 {
        self.distances[a * self.num_qubits + b]
    }

    /// Identity of the topology; layouts remember it so that layouts built
    /// against different devices are never compared.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
}

/// Per-qubit and per-coupling error probabilities for one [`CouplingMap`].
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationData {
    readout_error: Vec<f64>,
    single_qubit_error: Vec<f64>,
    two_qubit_error: BTreeMap<(usize, usize), f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CalibrationDocument {
    pub readout_error: Vec<f64>,
    pub single_qubit_error: Vec<f64>,
    /// Keyed by `"a-b"` with `a < b`.
    pub two_qubit_error: BTreeMap<String, f64>,
}

fn check_probability(what: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Calibration(format!(
            "{what} = {p} is not a probability"
        )))
    }
}

impl CalibrationData {
    pub fn new(
        map: &CouplingMap,
        readout_error: Vec<f64>,
        single_qubit_error: Vec<f64>,
        two_qubit_error: BTreeMap<(usize, usize), f64>,
    ) -> Result<Self> {
        let m = map.num_qubits();
        if readout_error.len() != m || single_qubit_error.len() != m {
            return Err(Error::Calibration(format!(
                "expected {m} per-qubit entries, got {} readout and {} single-qubit",
                readout_error.len(),
                single_qubit_error.len()
            )));
        }
        for (q, (&r, &s)) in readout_error.iter().zip(&single_qubit_error).enumerate() {
            check_probability(&format!("readout_error[{q}]"), r)?;
            check_probability(&format!("single_qubit_error[{q}]"), s)?;
        }
        for (&(a, b), &p) in &two_qubit_error {
            if a > b || !map.has_edge(a, b) {
                return Err(Error::Calibration(format!(
                    "{a}-{b} is not a coupling edge"
                )));
            }
            check_probability(&format!("two_qubit_error[{a}-{b}]"), p)?;
        }
        if let Some(&(a, b)) = map
            .edges()
            .iter()
            .find(|e| !two_qubit_error.contains_key(e))
        {
            return Err(Error::Calibration(format!(
                "missing two_qubit_error for {a}-{b}"
            )));
        }
        Ok(CalibrationData {
            readout_error,
            single_qubit_error,
            two_qubit_error,
        })
    }

    /// All rates equal to the given values.
    pub fn uniform(map: &CouplingMap, readout: f64, single: f64, two: f64) -> Result<Self> {
        let m = map.num_qubits();
        let two_qubit = map.edges().iter().map(|&e| (e, two)).collect();
        Self::new(map, vec![readout; m], vec![single; m], two_qubit)
    }

    pub fn from_document(map: &CouplingMap, doc: &CalibrationDocument) -> Result<Self> {
        let mut two_qubit = BTreeMap::new();
        for (key, &p) in &doc.two_qubit_error {
            let edge = parse_edge_key(key)?;
            if two_qubit.insert(edge, p).is_some() {
                return Err(Error::Calibration(format!(
                    "duplicate entry for edge {key}"
                )));
            }
        }
        Self::new(
            map,
            doc.readout_error.clone(),
            doc.single_qubit_error.clone(),
            two_qubit,
        )
    }

    pub fn from_json(map: &CouplingMap, text: &str) -> Result<Self> {
        let doc: CalibrationDocument =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_document(map, &doc)
    }

    pub fn to_document(&self) -> CalibrationDocument {
        CalibrationDocument {
            readout_error: self.readout_error.clone(),
            single_qubit_error: self.single_qubit_error.clone(),
            two_qubit_error: self
                .two_qubit_error
                .iter()
                .map(|(&(a, b), &p)| (format!("{a}-{b}"), p))
                .collect(),
        }
    }

    pub fn readout_error(&self, q: usize) -> Option<f64> {
        self.readout_error.get(q).copied()
    }

    pub fn single_qubit_error(&self, q: usize) -> Option<f64> {
        self.single_qubit_error.get(q).copied()
    }

    pub fn two_qubit_error(&self, a: usize, b: usize) -> Option<f64> {
        self.two_qubit_error.get(&(a.min(b), a.max(b))).copied()
    }
}

fn parse_edge_key(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::Calibration(format!("bad edge key `{key}`, expected \"a-b\""));
    let (a, b) = key.split_once('-').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a >= b {
        return Err(Error::Calibration(format!(
            "edge key `{key}` must list the smaller index first"
        )));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> CouplingMap {
        CouplingMap::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn path_distances() {
        let map = path3();
        assert_eq!(map.distance(0, 0).unwrap(), 0);
        assert_eq!(map.distance(0, 2).unwrap(), 2);
        assert_eq!(map.distance(2, 1).unwrap(), 1);
    }

    #[test]
    fn disconnected_is_unreachable() {
        let map = CouplingMap::new(2, &[]).unwrap();
        let d = map.distance(0, 1).unwrap();
        assert_eq!(d, UNREACHABLE);
        assert!(d as usize > map.num_qubits());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            CouplingMap::new(3, &[(0, 3)]),
            Err(Error::QubitOutOfRange { index: 3, .. })
        ));
        assert!(matches!(
            CouplingMap::new(3, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            CouplingMap::new(3, &[(2, 2)]),
            Err(Error::SelfLoop(2))
        ));
        assert!(path3().distance(0, 5).is_err());
    }

    #[test]
    fn document_parsing() {
        let map =
            CouplingMap::from_json(r#"{"num_qubits": 3, "edges": [[1, 2], [0, 1]]}"#).unwrap();
        assert_eq!(map.edges(), &[(0, 1), (1, 2)]);
        assert!(CouplingMap::from_json(r#"{"num_qubits": 3}"#).is_err());
        assert!(CouplingMap::from_json("not json").is_err());
    }

    #[test]
    fn calibration_document() {
        let map = path3();
        let text = r#"{"readout_error":[0.01,0.02,0.03],"single_qubit_error":[0.001,0.001,0.001],
            "two_qubit_error":{"0-1":0.01,"1-2":0.02}}"#;
        let cal = CalibrationData::from_json(&map, text).unwrap();
        assert_eq!(cal.two_qubit_error(2, 1), Some(0.02));
        assert_eq!(cal.readout_error(1), Some(0.02));

        let missing = r#"{"readout_error":[0,0,0],"single_qubit_error":[0,0,0],"two_qubit_error":{"0-1":0.01}}"#;
        assert!(CalibrationData::from_json(&map, missing).is_err());
        let reversed = r#"{"readout_error":[0,0,0],"single_qubit_error":[0,0,0],"two_qubit_error":{"1-0":0.01,"1-2":0.0}}"#;
        assert!(CalibrationData::from_json(&map, reversed).is_err());
        let not_prob = r#"{"readout_error":[0,1.5,0],"single_qubit_error":[0,0,0],"two_qubit_error":{"0-1":0.01,"1-2":0.0}}"#;
        assert!(CalibrationData::from_json(&map, not_prob).is_err());
        let short = r#"{"readout_error":[0,0],"single_qubit_error":[0,0,0],"two_qubit_error":{"0-1":0.01,"1-2":0.0}}"#;
        assert!(CalibrationData::from_json(&map, short).is_err());
    }

    #[test]
    fn calibration_round_trip() {
        let map = path3();
        let cal = CalibrationData::uniform(&map, 0.02, 0.001, 0.01).unwrap();
        let again = CalibrationData::from_document(&map, &cal.to_document()).unwrap();
        assert_eq!(cal, again);
    }
}
