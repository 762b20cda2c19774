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

//! Command-line front end. Everything is configured through flags so that a
//! run is reproducible from its command line alone.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::circuit::CircuitSet;
use crate::compat::{build_graph, GraphDocument};
use crate::error::{Error, Result};
use crate::hardware::{CalibrationData, CouplingMap};
use crate::layout::{
    filter_layouts, layouts_from_document, scored_layouts, LayoutDocument, LayoutFilter,
    DEFAULT_LAYOUT_CAP,
};
use crate::results::JointCounts;
use crate::scheduler::{
    arrivals_from_document, prepare_layouts, run_arrivals, schedule_prepared,
    validate_schedule_document, ArrivalsDocument, Schedule, ScheduleConfig, Solver,
};

#[derive(Debug, Parser)]
#[command(
    name = "qbatch",
    version,
    about = "Batch quantum circuits onto one device"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partition the circuits into batches and write the schedule document.
    Schedule(ScheduleArgs),
    /// Write the near-best layouts of every circuit.
    Layouts(RunArgs),
    /// Extract one circuit's counts from a joint-counts document.
    Marginalize(MarginalizeArgs),
    /// Write the compatibility graph over all circuits.
    GraphDump(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EpsilonMode {
    Absolute,
    TopFraction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Greedy,
    Exact,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub coupling: PathBuf,
    #[arg(long)]
    pub calibration: PathBuf,
    #[arg(long)]
    pub circuits: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub buffer: u32,
    #[arg(long, value_enum, default_value_t = EpsilonMode::TopFraction)]
    pub epsilon_mode: EpsilonMode,
    /// Margin for `absolute`, fraction for `top-fraction` (default 0.5).
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, value_enum, default_value_t = SolverArg::Greedy)]
    pub solver: SolverArg,
    #[arg(long, default_value_t = DEFAULT_LAYOUT_CAP)]
    pub layout_cap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ScheduleArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Pre-computed layout documents (a JSON array) used instead of enumeration.
    #[arg(long)]
    pub layouts: Option<PathBuf>,
    /// Timestamped arrivals; circuits enter the queue at their time.
    #[arg(long)]
    pub arrivals: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MarginalizeArgs {
    #[arg(long)]
    pub counts: PathBuf,
    #[arg(long)]
    pub circuit: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parsed inputs of a scheduling run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub map: CouplingMap,
    pub calibration: CalibrationData,
    pub circuits: CircuitSet,
    pub schedule: ScheduleConfig,
    pub out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))
}

impl RunArgs {
    pub fn filter(&self) -> Result<LayoutFilter> {
        let filter = match (self.epsilon_mode, self.epsilon) {
            (EpsilonMode::TopFraction, e) => LayoutFilter::TopFraction(e.unwrap_or(0.5)),
            (EpsilonMode::Absolute, Some(e)) => LayoutFilter::Absolute(e),
            (EpsilonMode::Absolute, None) => {
                return Err(Error::InvalidFilter(
                    "--epsilon-mode absolute needs --epsilon".into(),
                ))
            }
        };
        filter.validate()
    }

    pub fn load(&self) -> Result<RunConfig> {
        let map = CouplingMap::from_json(&read(&self.coupling)?)?;
        let calibration = CalibrationData::from_json(&map, &read(&self.calibration)?)?;
        let circuits = CircuitSet::from_json(&read(&self.circuits)?)?;
        let schedule = ScheduleConfig {
            buffer: self.buffer,
            filter: self.filter()?,
            solver: match self.solver {
                SolverArg::Greedy => Solver::Greedy,
                SolverArg::Exact => Solver::Exact,
            },
            layout_cap: self.layout_cap,
        };
        Ok(RunConfig {
            map,
            calibration,
            circuits,
            schedule,
            out: self.out.clone(),
        })
    }
}

/// Output of a subcommand: the document text plus lines for the terminal.
#[derive(Debug, Clone, Default)]
pub struct CommandOutput {
    pub document: String,
    pub summary: String,
    pub warnings: Vec<String>,
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn cmd_schedule(
    config: &RunConfig,
    supplied: Option<&[LayoutDocument]>,
    arrivals: Option<&ArrivalsDocument>,
) -> Result<(Schedule, CommandOutput)> {
    let mut given = HashMap::new();
    for doc in supplied.unwrap_or_default() {
        let circuit = config
            .circuits
            .get(&doc.circuit_id)
            .ok_or_else(|| Error::UnknownCircuit(doc.circuit_id.clone()))?;
        given.insert(
            doc.circuit_id.clone(),
            layouts_from_document(doc, circuit, &config.map)?,
        );
    }

    let schedule = match arrivals {
        None => {
            let lists = prepare_layouts(
                &config.circuits,
                &config.map,
                &config.calibration,
                &config.schedule,
                &given,
            )?;
            schedule_prepared(&config.circuits, &lists, &config.map, &config.schedule)?
        }
        Some(doc) => {
            let arrivals = arrivals_from_document(doc, &config.circuits)?;
            run_arrivals(
                &arrivals,
                &config.map,
                &config.calibration,
                &config.schedule,
                &given,
            )?
        }
    };

    let doc = schedule.to_document();
    validate_schedule_document(&doc, &config.circuits, &config.map, config.schedule.buffer)?;
    let mut out = CommandOutput {
        document: to_json(&doc)?,
        ..Default::default()
    };
    for id in &schedule.unschedulable {
        out.warnings.push(format!(
            "warning: circuit `{id}` has no layout on this device"
        ));
    }
    out.summary = summary_table(&schedule, config.map.num_qubits());
    Ok((schedule, out))
}

fn summary_table(schedule: &Schedule, m: usize) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>5}  {:>8}  {:>6}  {:>11}  circuits",
        "batch", "circuits", "qubits", "utilization"
    );
    for (k, b) in schedule.batches.iter().enumerate() {
        let ids: Vec<&str> = b.assignments.iter().map(|(id, _)| id.as_str()).collect();
        let _ = writeln!(
            s,
            "{:>5}  {:>8}  {:>6}  {:>10.1}%  {}",
            k + 1,
            b.len(),
            b.total_qubits,
            100.0 * b.total_qubits as f64 / m as f64,
            ids.join(", ")
        );
    }
    let metrics = schedule.metrics();
    let _ = writeln!(
        s,
        "{} circuits in {} batches, gain {:.2}x, mean utilization {:.1}%",
        schedule.num_scheduled(),
        metrics.num_batches,
        metrics.gain,
        100.0 * metrics.mean_qubit_utilization
    );
    if !schedule.unschedulable.is_empty() {
        let _ = writeln!(s, "unschedulable: {}", schedule.unschedulable.join(", "));
    }
    s
}

pub fn cmd_layouts(config: &RunConfig) -> Result<CommandOutput> {
    let mut docs = Vec::new();
    let mut out = CommandOutput::default();
    for circuit in config.circuits.circuits() {
        let layouts = scored_layouts(
            circuit,
            &config.map,
            &config.calibration,
            config.schedule.layout_cap,
        )?;
        if layouts.is_empty() {
            out.warnings.push(format!(
                "warning: circuit `{}` has no layout on this device",
                circuit.id()
            ));
            docs.push(LayoutDocument {
                circuit_id: circuit.id().to_string(),
                layouts: vec![],
            });
            continue;
        }
        let total = layouts.len();
        let list = filter_layouts(layouts, config.schedule.filter)?;
        let _ = writeln!(
            out.summary,
            "{}: kept {} of {} layouts, best score {:.4}",
            circuit.id(),
            list.len(),
            total,
            list.best().map_or(0.0, |l| l.score())
        );
        docs.push(list.to_document());
    }
    out.document = to_json(&docs)?;
    Ok(out)
}

pub fn cmd_graph_dump(config: &RunConfig) -> Result<CommandOutput> {
    let lists = prepare_layouts(
        &config.circuits,
        &config.map,
        &config.calibration,
        &config.schedule,
        &HashMap::new(),
    )?;
    let mut out = CommandOutput::default();
    let mut present = Vec::new();
    let mut kept = Vec::new();
    for (c, list) in config.circuits.circuits().iter().zip(lists) {
        match list {
            Some(l) => {
                present.push(c.id());
                kept.push(l);
            }
            None => out.warnings.push(format!(
                "warning: circuit `{}` has no layout on this device",
                c.id()
            )),
        }
    }
    let sub = config.circuits.subset(present);
    let graph = build_graph(&sub, &kept, &config.map, config.schedule.buffer)?;
    let doc: GraphDocument = graph.to_document();
    let _ = writeln!(
        out.summary,
        "{} vertices, {} edges",
        doc.vertices.len(),
        doc.edges.len()
    );
    out.document = to_json(&doc)?;
    Ok(out)
}

pub fn cmd_marginalize(args: &MarginalizeArgs) -> Result<CommandOutput> {
    let joint = JointCounts::from_json(&read(&args.counts)?)?;
    let marginal = joint.marginalize(&args.circuit)?;
    let summary = format!(
        "{}: {} outcomes, {} shots\n",
        args.circuit,
        marginal.len(),
        marginal.values().sum::<u64>()
    );
    Ok(CommandOutput {
        document: to_json(&marginal)?,
        summary,
        warnings: vec![],
    })
}

/// Process exit status for an error: 2 for the exact-solver size guard,
/// 1 for everything else.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InstanceTooLarge { .. } => 2,
        _ => 1,
    }
}

fn execute(cli: &Cli) -> Result<(CommandOutput, Option<PathBuf>)> {
    match &cli.command {
        Command::Schedule(args) => {
            let config = args.run.load()?;
            let supplied: Option<Vec<LayoutDocument>> = match &args.layouts {
                Some(p) => Some(
                    serde_json::from_str(&read(p)?).map_err(|e| Error::Malformed(e.to_string()))?,
                ),
                None => None,
            };
            let arrivals: Option<ArrivalsDocument> = match &args.arrivals {
                Some(p) => Some(
                    serde_json::from_str(&read(p)?).map_err(|e| Error::Malformed(e.to_string()))?,
                ),
                None => None,
            };
            let (_, out) = cmd_schedule(&config, supplied.as_deref(), arrivals.as_ref())?;
            Ok((out, config.out))
        }
        Command::Layouts(args) => {
            let config = args.load()?;
            Ok((cmd_layouts(&config)?, config.out))
        }
        Command::GraphDump(args) => {
            let config = args.load()?;
            Ok((cmd_graph_dump(&config)?, config.out))
        }
        Command::Marginalize(args) => Ok((cmd_marginalize(args)?, args.out.clone())),
    }
}

/// Runs a parsed command. The document goes to `--out` when given (and the
/// summary to `stdout`), otherwise the document itself goes to `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = execute(cli).and_then(|(out, path)| {
        for w in &out.warnings {
            let _ = writeln!(stderr, "{w}");
        }
        match path {
            Some(path) => {
                fs::write(&path, &out.document)?;
                stdout.write_all(out.summary.as_bytes())?;
            }
            None => stdout.write_all(out.document.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
