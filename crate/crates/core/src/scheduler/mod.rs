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

//! Batch selection and the scheduling loop.

mod exact;
mod greedy;

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::circuit::{CircuitSet, CircuitSpec};
use crate::compat::build_graph;
use crate::error::{Error, Result};
use crate::hardware::{CalibrationData, CouplingMap};
use crate::layout::{
    b_overlap, filter_layouts, scored_layouts, Layout, LayoutEntry, LayoutFilter, LayoutList,
    DEFAULT_LAYOUT_CAP,
};

pub use exact::{solve_ilp_exact, IlpCircuit, IlpInstance, IlpSolution, EXACT_SEARCH_LIMIT};
pub use greedy::{greedy_clique, is_clique, is_maximal_clique, Clique};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Solver {
    #[default]
    Greedy,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleConfig {
    pub buffer: u32,
    pub filter: LayoutFilter,
    pub solver: Solver,
    pub layout_cap: usize,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        ScheduleConfig {
            buffer: 1,
            filter: LayoutFilter::default(),
            solver: Solver::Greedy,
            layout_cap: DEFAULT_LAYOUT_CAP,
        }
    }
}

/// Circuits run together in one device access.
#[derive(Debug, Clone, PartialEq)]
pub struct Batch {
    /// In the order the circuits were submitted.
    pub assignments: Vec<(String, Layout)>,
    /// Objective value over the circuits pending when the batch was formed.
    pub objective: f64,
    pub total_qubits: usize,
    /// Time step at which the batch ran, for arrival-driven schedules.
    pub start_time: Option<u64>,
}

impl Batch {
    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn contains(&self, circuit_id: &str) -> bool {
        self.assignments.iter().any(|(id, _)| id == circuit_id)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Schedule {
    pub batches: Vec<Batch>,
    pub unschedulable: Vec<String>,
    /// Device size, for utilization.
    pub num_qubits: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleMetrics {
    pub num_batches: usize,
    pub gain: f64,
    pub mean_qubit_utilization: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchDocument {
    pub assignments: BTreeMap<String, LayoutEntry>,
    pub objective: f64,
    pub total_qubits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_time: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleDocument {
    pub batches: Vec<BatchDocument>,
    pub unschedulable: Vec<String>,
    pub metrics: ScheduleMetrics,
}

impl Schedule {
    pub fn num_scheduled(&self) -> usize {
        self.batches.iter().map(Batch::len).sum()
    }

    /// Scheduled circuits per batch; 0 for an empty schedule.
    pub fn gain(&self) -> f64 {
        if self.batches.is_empty() {
            0.0
        } else {
            self.num_scheduled() as f64 / self.batches.len() as f64
        }
    }

    pub fn metrics(&self) -> ScheduleMetrics {
        let utilization = if self.batches.is_empty() || self.num_qubits == 0 {
            0.0
        } else {
            self.batches
                .iter()
                .map(|b| b.total_qubits as f64 / self.num_qubits as f64)
                .sum::<f64>()
                / self.batches.len() as f64
        };
        ScheduleMetrics {
            num_batches: self.batches.len(),
            gain: self.gain(),
            mean_qubit_utilization: utilization,
        }
    }

    pub fn to_document(&self) -> ScheduleDocument {
        ScheduleDocument {
            batches: self
                .batches
                .iter()
                .map(|b| BatchDocument {
                    assignments: b
                        .assignments
                        .iter()
                        .map(|(id, l)| (id.clone(), l.to_entry()))
                        .collect(),
                    objective: b.objective,
                    total_qubits: b.total_qubits,
                    start_time: b.start_time,
                })
                .collect(),
            unschedulable: self.unschedulable.clone(),
            metrics: self.metrics(),
        }
    }
}

/// Near-best layouts for every circuit. `None` marks a circuit with no
/// embedding on the device. Layouts in `supplied` replace enumeration for
/// their circuit but still go through the filter.
pub fn prepare_layouts(
    circuits: &CircuitSet,
    map: &CouplingMap,
    calib: &CalibrationData,
    config: &ScheduleConfig,
    supplied: &HashMap<String, Vec<Layout>>,
) -> Result<Vec<Option<LayoutList>>> {
    config.filter.validate()?;
    circuits
        .circuits()
        .iter()
        .map(|c| {
            let layouts = match supplied.get(c.id()) {
                Some(ls) => ls.clone(),
                None => scored_layouts(c, map, calib, config.layout_cap)?,
            };
            if layouts.is_empty() || c.num_qubits() > map.num_qubits() {
                Ok(None)
            } else {
                filter_layouts(layouts, config.filter).map(Some)
            }
        })
        .collect()
}

/// Repeatedly forms batches until every schedulable circuit has run.
pub fn schedule_all(
    circuits: &CircuitSet,
    map: &CouplingMap,
    calib: &CalibrationData,
    config: &ScheduleConfig,
) -> Result<Schedule> {
    let lists = prepare_layouts(circuits, map, calib, config, &HashMap::new())?;
    schedule_prepared(circuits, &lists, map, config)
}

/// [`schedule_all`] over layouts that were already filtered.
pub fn schedule_prepared(
    circuits: &CircuitSet,
    lists: &[Option<LayoutList>],
    map: &CouplingMap,
    config: &ScheduleConfig,
) -> Result<Schedule> {
    let arrivals: Vec<u64> = vec![0; circuits.len()];
    let mut schedule = run_schedule(circuits, lists, &arrivals, map, config)?;
    for b in &mut schedule.batches {
        b.start_time = None;
    }
    Ok(schedule)
}

/// A circuit entering the queue at `time`.
#[derive(Debug, Clone)]
pub struct Arrival {
    pub time: u64,
    pub circuit: CircuitSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrivalEntry {
    pub time: u64,
    pub circuit: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrivalsDocument {
    pub arrivals: Vec<ArrivalEntry>,
}

/// Pairs an arrivals document with the circuits it names.
pub fn arrivals_from_document(
    doc: &ArrivalsDocument,
    circuits: &CircuitSet,
) -> Result<Vec<Arrival>> {
    let mut seen = HashSet::new();
    doc.arrivals
        .iter()
        .map(|a| {
            let circuit = circuits
                .get(&a.circuit)
                .ok_or_else(|| Error::UnknownCircuit(a.circuit.clone()))?;
            if !seen.insert(a.circuit.as_str()) {
                return Err(Error::DuplicateCircuit(a.circuit.clone()));
            }
            Ok(Arrival {
                time: a.time,
                circuit: circuit.clone(),
            })
        })
        .collect()
}

/// Scheduling with a queue that fills over time. Each batch takes one time
/// step; a batch formed at time `t` only draws on circuits that arrived at or
/// before `t`. When the queue is empty the clock jumps to the next arrival.
pub fn schedule_dynamic(
    arrivals: &[Arrival],
    map: &CouplingMap,
    calib: &CalibrationData,
    config: &ScheduleConfig,
) -> Result<Schedule> {
    run_arrivals(arrivals, map, calib, config, &HashMap::new())
}

/// [`schedule_dynamic`] with optional pre-computed layouts per circuit.
pub fn run_arrivals(
    arrivals: &[Arrival],
    map: &CouplingMap,
    calib: &CalibrationData,
    config: &ScheduleConfig,
    supplied: &HashMap<String, Vec<Layout>>,
) -> Result<Schedule> {
    if arrivals.windows(2).any(|w| w[0].time > w[1].time) {
        return Err(Error::Malformed("arrivals must be ordered by time".into()));
    }
    let circuits = CircuitSet::new(arrivals.iter().map(|a| a.circuit.clone()).collect())?;
    let times: Vec<u64> = arrivals.iter().map(|a| a.time).collect();
    let lists = prepare_layouts(&circuits, map, calib, config, supplied)?;
    let mut schedule = run_schedule(&circuits, &lists, &times, map, config)?;
    if times.iter().all(|&t| t == times[0]) {
        // a single release time is the static problem
        for b in &mut schedule.batches {
            b.start_time = None;
        }
    }
    Ok(schedule)
}

fn run_schedule(
    circuits: &CircuitSet,
    lists: &[Option<LayoutList>],
    arrivals: &[u64],
    map: &CouplingMap,
    config: &ScheduleConfig,
) -> Result<Schedule> {
    if lists.len() != circuits.len() {
        return Err(Error::Malformed(format!(
            "{} layout lists for {} circuits",
            lists.len(),
            circuits.len()
        )));
    }
    let mut schedule = Schedule {
        num_qubits: map.num_qubits(),
        ..Schedule::default()
    };
    let mut pending: Vec<usize> = Vec::new();
    for (i, list) in lists.iter().enumerate() {
        match list {
            Some(_) => pending.push(i),
            None => schedule
                .unschedulable
                .push(circuits.circuits()[i].id().to_string()),
        }
    }

    let mut clock = pending.iter().map(|&i| arrivals[i]).min().unwrap_or(0);
    while !pending.is_empty() {
        let ready: Vec<usize> = pending
            .iter()
            .copied()
            .filter(|&i| arrivals[i] <= clock)
            .collect();
        if ready.is_empty() {
            clock = pending
                .iter()
                .map(|&i| arrivals[i])
                .min()
                .expect("pending is non-empty");
            continue;
        }
        let mut batch = select_batch(circuits, lists, &ready, map, config)?;
        batch.start_time = Some(clock);
        pending.retain(|&i| !batch.contains(circuits.circuits()[i].id()));
        schedule.batches.push(batch);
        clock += 1;
    }
    Ok(schedule)
}

/// One batch over the `ready` circuits (indices into `circuits`).
fn select_batch(
    circuits: &CircuitSet,
    lists: &[Option<LayoutList>],
    ready: &[usize],
    map: &CouplingMap,
    config: &ScheduleConfig,
) -> Result<Batch> {
    let sub = circuits.subset(ready.iter().map(|&i| circuits.circuits()[i].id()));
    let sub_lists: Vec<LayoutList> = ready
        .iter()
        .map(|&i| lists[i].clone().expect("ready circuits have layouts"))
        .collect();
    let graph = build_graph(&sub, &sub_lists, map, config.buffer)?;

    let mut choice: Vec<Option<usize>> = vec![None; sub.len()];
    match config.solver {
        Solver::Greedy => {
            let clique = greedy_clique(&graph, map.num_qubits());
            for v in clique.vertices {
                let vx = &graph.vertices()[v];
                choice[vx.circuit] = Some(vx.layout_index);
            }
        }
        Solver::Exact => {
            let instance = IlpInstance::from_graph(&graph, &sub, map.num_qubits());
            choice = solve_ilp_exact(&instance)?.choice;
        }
    }
    if choice.iter().all(Option::is_none) {
        // nothing fits together: run the circuit with the best single layout
        let best = (0..sub.len())
            .min_by(|&a, &b| {
                sub_lists[a].layouts[0]
                    .score()
                    .total_cmp(&sub_lists[b].layouts[0].score())
            })
            .expect("ready is non-empty");
        choice[best] = Some(0);
    }

    let mut assignments = Vec::new();
    let mut objective = 0.0;
    let mut total_qubits = 0;
    for (k, c) in choice.iter().enumerate() {
        if let Some(j) = *c {
            let layout = sub_lists[k].layouts[j].clone();
            objective += layout.score() * sub.area_at(k) - 1.0;
            total_qubits += layout.num_qubits();
            assignments.push((sub.circuits()[k].id().to_string(), layout));
        }
    }
    Ok(Batch {
        assignments,
        objective,
        total_qubits,
        start_time: None,
    })
}

/// Re-checks a schedule document against the circuits and device: every
/// circuit in exactly one batch or listed unschedulable, layouts valid for
/// their circuits, one layout per circuit, no two layouts in a batch within
/// the buffer, and batches within the device size.
pub fn validate_schedule_document(
    doc: &ScheduleDocument,
    circuits: &CircuitSet,
    map: &CouplingMap,
    buffer: u32,
) -> Result<()> {
    let fail = |msg: String| Err(Error::Malformed(msg));
    let mut placed: HashSet<&str> = HashSet::new();
    for (k, batch) in doc.batches.iter().enumerate() {
        if batch.assignments.is_empty() {
            return fail(format!("batch {k} is empty"));
        }
        let mut layouts = Vec::new();
        for (id, entry) in &batch.assignments {
            let circuit = circuits
                .get(id)
                .ok_or_else(|| Error::UnknownCircuit(id.clone()))?;
            if !placed.insert(id.as_str()) {
                return fail(format!("circuit `{id}` scheduled twice"));
            }
            layouts.push(
                Layout::for_circuit(circuit, entry.mapping.clone(), map)?
                    .with_score(entry.score)?,
            );
        }
        let total: usize = layouts.iter().map(Layout::num_qubits).sum();
        if total != batch.total_qubits || total > map.num_qubits() {
            return fail(format!(
                "batch {k} uses {total} qubits (recorded {})",
                batch.total_qubits
            ));
        }
        for (a, la) in layouts.iter().enumerate() {
            for lb in &layouts[a + 1..] {
                if b_overlap(la, lb, map, buffer)? {
                    return fail(format!(
                        "batch {k}: `{}` and `{}` are within the buffer",
                        la.circuit_id(),
                        lb.circuit_id()
                    ));
                }
            }
        }
    }
    for id in &doc.unschedulable {
        if circuits.get(id).is_none() {
            return Err(Error::UnknownCircuit(id.clone()));
        }
        if !placed.insert(id.as_str()) {
            return fail(format!("circuit `{id}` both scheduled and unschedulable"));
        }
    }
    if placed.len() != circuits.len() {
        return fail(format!(
            "{} of {} circuits accounted for",
            placed.len(),
            circuits.len()
        ));
    }
    Ok(())
}
