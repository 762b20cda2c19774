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

//! Layout enumeration, noise scoring, the near-best filter and the
//! buffer-distance overlap test between two layouts.
//!
//! Overlap between two disjoint layouts only needs distances between their
//! boundary qubits: any shortest path from one layout to the other leaves
//! the first through one of its boundary qubits and enters the second
//! through one of its boundary qubits.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::circuit::{CircuitSpec, OpKind};
use crate::error::{Error, Result};
use crate::hardware::{CalibrationData, CouplingMap};

/// Default cap on embeddings kept per circuit.
pub const DEFAULT_LAYOUT_CAP: usize = 1000;

/// Assignment of a circuit's virtual qubits to physical qubits.
#[derive(Debug, Clone)]
pub struct Layout {
    circuit_id: String,
    mapping: Vec<usize>,
    score: f64,
    boundary: Vec<usize>,
    device: u64,
}

impl PartialEq for Layout {
    fn eq(&self, other: &Self) -> bool {
        self.circuit_id == other.circuit_id
            && self.mapping == other.mapping
            && self.score == other.score
            && self.device == other.device
    }
}

impl Layout {
    /// Checks that `mapping` is injective and inside the device, and caches
    /// the boundary. The score starts at 0.
    pub fn new(
        circuit_id: impl Into<String>,
        mapping: Vec<usize>,
        map: &CouplingMap,
    ) -> Result<Self> {
        let circuit_id = circuit_id.into();
        let m = map.num_qubits();
        let mut used = vec![false; m];
        for &p in &mapping {
            if p >= m {
                return Err(Error::InvalidLayout {
                    id: circuit_id,
                    reason: format!("physical qubit {p} not on a {m}-qubit device"),
                });
            }
            if std::mem::replace(&mut used[p], true) {
                return Err(Error::InvalidLayout {
                    id: circuit_id,
                    reason: format!("physical qubit {p} used twice"),
                });
            }
        }
        let boundary = boundary_of(&mapping, map);
        Ok(Layout {
            circuit_id,
            mapping,
            score: 0.0,
            boundary,
            device: map.fingerprint(),
        })
    }

    /// Like [`Layout::new`], additionally requiring the mapping to cover the
    /// circuit and to put every interacting pair on a coupling edge.
    pub fn for_circuit(
        circuit: &CircuitSpec,
        mapping: Vec<usize>,
        map: &CouplingMap,
    ) -> Result<Self> {
        if mapping.len() != circuit.num_qubits() {
            return Err(Error::InvalidLayout {
                id: circuit.id().to_string(),
                reason: format!(
                    "{} entries for {} qubits",
                    mapping.len(),
                    circuit.num_qubits()
                ),
            });
        }
        if let Some(&(a, b)) = circuit
            .interactions()
            .iter()
            .find(|&&(a, b)| !map.has_edge(mapping[a], mapping[b]))
        {
            return Err(Error::InvalidLayout {
                id: circuit.id().to_string(),
                reason: format!(
                    "interaction {a}-{b} maps to {}-{}, which is not a coupling edge",
                    mapping[a], mapping[b]
                ),
            });
        }
        Self::new(circuit.id(), mapping, map)
    }

    pub fn with_score(mut self, score: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&score) {
            return Err(Error::InvalidLayout {
                id: self.circuit_id,
                reason: format!("score {score} outside [0, 1]"),
            });
        }
        self.score = score;
        Ok(self)
    }

    pub fn circuit_id(&self) -> &str {
        &self.circuit_id
    }

    /// `mapping()[v]` is the physical qubit holding virtual qubit `v`.
    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn score(&self) -> f64 {
        self.score
    }

    /// Cached boundary qubits, sorted.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn num_qubits(&self) -> usize {
        self.mapping.len()
    }

    pub fn device(&self) -> u64 {
        self.device
    }

    pub fn to_entry(&self) -> LayoutEntry {
        LayoutEntry {
            mapping: self.mapping.clone(),
            score: self.score,
        }
    }
}

/// Layout qubits with at least one coupling neighbour outside the layout.
pub fn find_boundary(layout: &Layout, map: &CouplingMap) -> Vec<usize> {
    boundary_of(layout.mapping(), map)
}

pub(crate) fn boundary_of(qubits: &[usize], map: &CouplingMap) -> Vec<usize> {
    let mut inside = vec![false; map.num_qubits()];
    for &q in qubits {
        inside[q] = true;
    }
    let mut boundary: Vec<usize> = qubits
        .iter()
        .copied()
        .filter(|&q| map.neighbors(q).iter().any(|&n| !inside[n]))
        .collect();
    boundary.sort_unstable();
    boundary
}

fn check_device(l1: &Layout, l2: &Layout, map: &CouplingMap) -> Result<()> {
    if l1.device != map.fingerprint() || l2.device != map.fingerprint() {
        return Err(Error::DeviceMismatch);
    }
    Ok(())
}

fn shares_qubit(l1: &Layout, l2: &Layout, num_qubits: usize) -> bool {
    Footprint::new(l1, num_qubits).intersects(&Footprint::new(l2, num_qubits))
}

/// Occupied physical qubits of a layout as a bitset.
#[derive(Debug, Clone)]
pub(crate) struct Footprint(Vec<u64>);

impl Footprint {
    pub(crate) fn new(layout: &Layout, num_qubits: usize) -> Self {
        let mut words = vec![0u64; num_qubits.div_ceil(64)];
        for &q in layout.mapping() {
            words[q / 64] |= 1 << (q % 64);
        }
        Footprint(words)
    }

    pub(crate) fn intersects(&self, other: &Footprint) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
}

/// [`b_overlap`] for layouts already checked against `map`, with their
/// footprints precomputed.
pub(crate) fn b_overlap_prepared(
    l1: &Layout,
    f1: &Footprint,
    l2: &Layout,
    f2: &Footprint,
    map: &CouplingMap,
    b: u32,
) -> bool {
    f1.intersects(f2)
        || l1.boundary().iter().any(|&qa| {
            l2.boundary()
                .iter()
                .any(|&qb| map.distance_unchecked(qa, qb) <= b)
        })
}

/// True when the layouts share a qubit or some pair of their qubits is at
/// most `b` hops apart.
pub fn b_overlap(l1: &Layout, l2: &Layout, map: &CouplingMap, b: u32) -> Result<bool> {
    b_overlap_counted(l1, l2, map, b).map(|(overlap, _)| overlap)
}

/// [`b_overlap`] that also reports how many distance lookups it made.
pub fn b_overlap_counted(
    l1: &Layout,
    l2: &Layout,
    map: &CouplingMap,
    b: u32,
) -> Result<(bool, usize)> {
    check_device(l1, l2, map)?;
    if shares_qubit(l1, l2, map.num_qubits()) {
        return Ok((true, 0));
    }
    let mut queries = 0;
    for &qa in l1.boundary() {
        for &qb in l2.boundary() {
            queries += 1;
            if map.distance_unchecked(qa, qb) <= b {
                return Ok((true, queries));
            }
        }
    }
    Ok((false, queries))
}

/// Overlap by checking every cross pair of qubits, with the lookup count.
pub fn b_overlap_all_pairs_counted(
    l1: &Layout,
    l2: &Layout,
    map: &CouplingMap,
    b: u32,
) -> Result<(bool, usize)> {
    check_device(l1, l2, map)?;
    let mut queries = 0;
    for &qa in l1.mapping() {
        for &qb in l2.mapping() {
            queries += 1;
            if map.distance_unchecked(qa, qb) <= b {
                return Ok((true, queries));
            }
        }
    }
    Ok((false, queries))
}

/// All embeddings of the circuit's interaction graph into the coupling
/// graph, in lexicographic order of the interacting qubits' images, capped
/// at `cap`. Virtual qubits without interactions take the lowest free
/// physical qubits. A circuit with no interactions at all is placed on
/// every injective assignment instead. Scores are left at 0.
pub fn enumerate_layouts(circuit: &CircuitSpec, map: &CouplingMap, cap: usize) -> Vec<Layout> {
    let n = circuit.num_qubits();
    let m = map.num_qubits();
    if n > m || cap == 0 {
        return Vec::new();
    }

    let mut pattern_adj = vec![Vec::new(); n];
    for &(a, b) in circuit.interactions() {
        pattern_adj[a].push(b);
        pattern_adj[b].push(a);
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| !pattern_adj[v].is_empty()).collect();
    if order.is_empty() {
        order = (0..n).collect();
    }
    let isolated: Vec<usize> = (0..n).filter(|v| !order.contains(v)).collect();

    let mut search = Embedding {
        circuit,
        map,
        cap,
        order: &order,
        isolated: &isolated,
        pattern_adj: &pattern_adj,
        image: vec![usize::MAX; n],
        used: vec![false; m],
        found: Vec::new(),
    };
    search.extend(0);
    search.found
}

struct Embedding<'a> {
    circuit: &'a CircuitSpec,
    map: &'a CouplingMap,
    cap: usize,
    order: &'a [usize],
    isolated: &'a [usize],
    pattern_adj: &'a [Vec<usize>],
    image: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Layout>,
}

impl Embedding<'_> {
    fn extend(&mut self, depth: usize) {
        if self.found.len() >= self.cap {
            return;
        }
        if depth == self.order.len() {
            self.emit();
            return;
        }
        let v = self.order[depth];
        let placed: Vec<usize> = self.pattern_adj[v]
            .iter()
            .copied()
            .filter(|&u| self.image[u] != usize::MAX)
            .collect();
        let candidates: Vec<usize> = match placed.first() {
            Some(&u) => self.map.neighbors(self.image[u]).to_vec(),
            None => (0..self.map.num_qubits()).collect(),
        };
        for p in candidates {
            if self.used[p]
                || self.map.degree(p) < self.pattern_adj[v].len()
                || !placed.iter().all(|&u| self.map.has_edge(p, self.image[u]))
            {
                continue;
            }
            self.image[v] = p;
            self.used[p] = true;
            self.extend(depth + 1);
            self.used[p] = false;
            self.image[v] = usize::MAX;
            if self.found.len() >= self.cap {
                return;
            }
        }
    }

    fn emit(&mut self) {
        let mut mapping = self.image.clone();
        let mut free = (0..self.map.num_qubits()).filter(|&p| !self.used[p]);
        for &v in self.isolated {
            mapping[v] = free.next().expect("circuit fits on the device");
        }
        let layout =
            Layout::for_circuit(self.circuit, mapping, self.map).expect("embedding is valid");
        self.found.push(layout);
    }
}

/// `1 - prod(1 - e)` over the circuit's ops, with `e` the error rate of the
/// physical qubit or coupling each op lands on. Lower is better.
pub fn score_layout(
    layout: &Layout,
    circuit: &CircuitSpec,
    calib: &CalibrationData,
) -> Result<f64> {
    let missing =
        |what: String| Error::Calibration(format!("no {what} for layout of `{}`", circuit.id()));
    let mut success = 1.0;
    for op in circuit.ops() {
        let phys: Vec<usize> = op.qubits.iter().map(|&v| layout.mapping()[v]).collect();
        let error = match op.kind {
            OpKind::OneQubit => calib
                .single_qubit_error(phys[0])
                .ok_or_else(|| missing(format!("single-qubit error on {}", phys[0])))?,
            OpKind::Measure => calib
                .readout_error(phys[0])
                .ok_or_else(|| missing(format!("readout error on {}", phys[0])))?,
            OpKind::TwoQubit => calib
                .two_qubit_error(phys[0], phys[1])
                .ok_or_else(|| missing(format!("two-qubit error on {}-{}", phys[0], phys[1])))?,
        };
        success *= 1.0 - error;
    }
    Ok((1.0 - success).clamp(0.0, 1.0))
}

/// Enumerate and score in one step.
pub fn scored_layouts(
    circuit: &CircuitSpec,
    map: &CouplingMap,
    calib: &CalibrationData,
    cap: usize,
) -> Result<Vec<Layout>> {
    enumerate_layouts(circuit, map, cap)
        .into_iter()
        .map(|l| {
            let s = score_layout(&l, circuit, calib)?;
            l.with_score(s)
        })
        .collect()
}

/// Which layouts count as near-best.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LayoutFilter {
    /// Keep layouts scoring within `epsilon` of the best.
    Absolute(f64),
    /// Keep the best `ceil(fraction * len)` layouts.
    TopFraction(f64),
}

impl Default for LayoutFilter {
    fn default() -> Self {
        LayoutFilter::TopFraction(0.5)
    }
}

impl LayoutFilter {
    pub fn validate(self) -> Result<Self> {
        match self {
            LayoutFilter::Absolute(e) if e.is_nan() || e < 0.0 => Err(Error::InvalidFilter(
                format!("epsilon {e} must be non-negative"),
            )),
            LayoutFilter::TopFraction(f) if f.is_nan() || f <= 0.0 || f > 1.0 => Err(
                Error::InvalidFilter(format!("fraction {f} must lie in (0, 1]")),
            ),
            ok => Ok(ok),
        }
    }
}

/// Near-best layouts of one circuit, ascending by score.
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutList {
    pub circuit_id: String,
    pub layouts: Vec<Layout>,
    pub filter: LayoutFilter,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutEntry {
    pub mapping: Vec<usize>,
    pub score: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LayoutDocument {
    pub circuit_id: String,
    pub layouts: Vec<LayoutEntry>,
}

impl LayoutList {
    pub fn to_document(&self) -> LayoutDocument {
        LayoutDocument {
            circuit_id: self.circuit_id.clone(),
            layouts: self.layouts.iter().map(Layout::to_entry).collect(),
        }
    }

    pub fn best(&self) -> Option<&Layout> {
        self.layouts.first()
    }

    pub fn is_empty(&self) -> bool {
        self.layouts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.layouts.len()
    }
}

/// Rebuilds scored layouts from a document, checking each one against the
/// circuit and the device.
pub fn layouts_from_document(
    doc: &LayoutDocument,
    circuit: &CircuitSpec,
    map: &CouplingMap,
) -> Result<Vec<Layout>> {
    if doc.circuit_id != circuit.id() {
        return Err(Error::InvalidLayout {
            id: doc.circuit_id.clone(),
            reason: format!(
                "document is for `{}`, not `{}`",
                doc.circuit_id,
                circuit.id()
            ),
        });
    }
    doc.layouts
        .iter()
        .map(|e| Layout::for_circuit(circuit, e.mapping.clone(), map)?.with_score(e.score))
        .collect()
}

fn by_score(a: &Layout, b: &Layout) -> Ordering {
    a.score.total_cmp(&b.score)
}

/// Sorts by score (stable, so enumeration order breaks ties) and keeps the
/// near-best layouts.
pub fn filter_layouts(mut layouts: Vec<Layout>, filter: LayoutFilter) -> Result<LayoutList> {
    let filter = filter.validate()?;
    let circuit_id = match layouts.first() {
        Some(l) => l.circuit_id.clone(),
        None => return Err(Error::InvalidFilter("no layouts to filter".into())),
    };
    layouts.sort_by(by_score);
    match filter {
        LayoutFilter::Absolute(eps) => {
            let best = layouts[0].score;
            layouts.retain(|l| l.score - best <= eps);
        }
        LayoutFilter::TopFraction(fraction) => {
            // the small slack keeps e.g. 0.7 * 10 from rounding up to 8
            let keep = ((fraction * layouts.len() as f64) - 1e-9).ceil().max(1.0) as usize;
            layouts.truncate(keep);
        }
    }
    Ok(LayoutList {
        circuit_id,
        layouts,
        filter,
    })
}
