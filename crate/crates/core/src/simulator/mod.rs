//! Trace-driven job-stream simulation.
//!
//! One allocator, the situation algorithm, places every job and so shapes
//! the free set seen by later jobs. At each job start every decision
//! algorithm is also asked to allocate on the same free set; its total is
//! recorded but not committed.
//!
//! Scheduling is strict first-come first-served: the queue head waits until
//! enough processors are free and blocks every job behind it. Completions at
//! a timestamp are processed before starts at that timestamp. Run times do
//! not depend on the allocation.

mod swf;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt::Write as _;

use log::warn;
use rayon::prelude::*;
use serde::Serialize;

pub use swf::{parse_swf, Job, Trace};

use crate::allocators::{Algorithm, Mesh};
use crate::decimal;
use crate::error::{Error, Result};
use crate::geometry::{Allocation, Point};

/// One job start.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EventRecord {
    pub time: u64,
    pub job_id: u64,
    pub procs: usize,
    /// Free processors seen by the decision algorithms.
    pub free_count: usize,
    /// Processors held by running jobs at that moment.
    pub busy_count: usize,
    /// One total per decision algorithm, in [`SimResult::decisions`] order.
    pub totals: Vec<u64>,
}

/// Log of one simulation driven by a single situation algorithm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SituationRun {
    pub situation: Algorithm,
    pub mesh_size: usize,
    pub events: Vec<EventRecord>,
    /// Jobs dropped because they need more processors than the mesh has.
    pub oversized: Vec<u64>,
    pub completed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SimResult {
    /// Decision columns, in the fixed order MC1x1, MM, MM+Inc, HilbertBF.
    pub decisions: Vec<Algorithm>,
    /// One run per situation algorithm, in the same fixed order.
    pub runs: Vec<SituationRun>,
}

impl SimResult {
    /// Sum and count of a decision column for one run.
    pub fn column_sum(&self, run: &SituationRun, decision: Algorithm) -> Option<(u128, u128)> {
        let col = self.decisions.iter().position(|&d| d == decision)?;
        let sum = run.events.iter().map(|e| e.totals[col] as u128).sum();
        Some((sum, run.events.len() as u128))
    }

    /// Mean decision total over a run's events; `None` without events.
    pub fn mean(&self, situation: Algorithm, decision: Algorithm) -> Option<f64> {
        let run = self.runs.iter().find(|r| r.situation == situation)?;
        let (sum, count) = self.column_sum(run, decision)?;
        (count > 0).then(|| sum as f64 / count as f64)
    }
}

fn normalized(algos: &[Algorithm]) -> Vec<Algorithm> {
    let mut v = algos.to_vec();
    v.sort();
    v.dedup();
    v
}

struct Running {
    end: u64,
    procs: Vec<Point>,
}

/// Replays `trace` on an initially empty mesh with `situation` committing
/// the allocations.
pub fn simulate(
    trace: &Trace,
    extents: &[usize],
    situation: Algorithm,
    decisions: &[Algorithm],
) -> Result<SimResult> {
    let decisions = normalized(decisions);
    let run = simulate_run(trace, extents, situation, &decisions)?;
    Ok(SimResult { decisions, runs: vec![run] })
}

/// Runs every situation algorithm independently (in parallel) and gathers
/// the runs into one result.
pub fn simulate_matrix(
    trace: &Trace,
    extents: &[usize],
    situations: &[Algorithm],
    decisions: &[Algorithm],
) -> Result<SimResult> {
    let decisions = normalized(decisions);
    let runs = normalized(situations)
        .into_par_iter()
        .map(|s| simulate_run(trace, extents, s, &decisions))
        .collect::<Result<Vec<_>>>()?;
    Ok(SimResult { decisions, runs })
}

fn simulate_run(
    trace: &Trace,
    extents: &[usize],
    situation: Algorithm,
    decisions: &[Algorithm],
) -> Result<SituationRun> {
    let mut mesh = Mesh::new(extents.to_vec())?;
    if mesh.dim() != 2 && (situation == Algorithm::HilbertBf || decisions.contains(&Algorithm::HilbertBf)) {
        return Err(Error::invalid("HilbertBF needs a 2D mesh"));
    }
    let size = mesh.size();
    let mut oversized = Vec::new();
    let jobs: Vec<&Job> = trace
        .jobs
        .iter()
        .filter(|j| {
            if j.procs > size {
                warn!("job {} needs {} processors, mesh has {size}; skipped", j.id, j.procs);
                oversized.push(j.id);
                false
            } else {
                true
            }
        })
        .collect();

    let mut next_job = 0usize;
    let mut queue: VecDeque<&Job> = VecDeque::new();
    let mut running: BinaryHeap<Reverse<(u64, u64, usize)>> = BinaryHeap::new();
    let mut slots: Vec<Option<Running>> = Vec::new();
    let mut held = 0usize;
    let mut events = Vec::new();
    let mut completed = 0usize;

    loop {
        let next_submit = jobs.get(next_job).map(|j| j.submit_time);
        let next_end = running.peek().map(|Reverse((end, _, _))| *end);
        let now = match (next_submit, next_end) {
            (None, None) => break,
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
        };

        while let Some(Reverse((end, _, slot))) = running.peek().copied() {
            if end > now {
                break;
            }
            running.pop();
            let job = slots[slot].take().ok_or_else(|| Error::MeshState("job freed twice".into()))?;
            debug_assert_eq!(job.end, end);
            for p in &job.procs {
                mesh.release(p)?;
            }
            held -= job.procs.len();
            completed += 1;
        }
        while let Some(job) = jobs.get(next_job).filter(|j| j.submit_time <= now) {
            queue.push_back(job);
            next_job += 1;
        }
        while let Some(&job) = queue.front() {
            if job.procs > mesh.free_count() {
                break;
            }
            queue.pop_front();
            if held != mesh.busy_count() || held + mesh.free_count() != size {
                return Err(Error::MeshState(format!(
                    "conservation violated at t={now}: held {held}, busy {}, free {}",
                    mesh.busy_count(),
                    mesh.free_count()
                )));
            }
            let decided: Vec<Allocation> =
                decisions.par_iter().map(|d| d.allocate(&mesh, job.procs)).collect::<Result<_>>()?;
            let committed = match decisions.iter().position(|&d| d == situation) {
                Some(i) => decided[i].clone(),
                None => situation.allocate(&mesh, job.procs)?,
            };
            events.push(EventRecord {
                time: now,
                job_id: job.id,
                procs: job.procs,
                free_count: mesh.free_count(),
                busy_count: mesh.busy_count(),
                totals: decided.iter().map(|a| a.total_distance).collect(),
            });
            let procs = committed.selected.into_points();
            for p in &procs {
                mesh.occupy(p)?;
            }
            held += procs.len();
            let end = now + job.run_time;
            slots.push(Some(Running { end, procs }));
            running.push(Reverse((end, job.id, slots.len() - 1)));
        }
    }
    if !queue.is_empty() || held != 0 || mesh.busy_count() != 0 {
        return Err(Error::MeshState("simulation ended with processors still held".into()));
    }
    Ok(SituationRun { situation, mesh_size: size, events, oversized, completed })
}

/// Situation rows × decision columns of mean totals, two decimals, rounded
/// half up. Runs without events leave their cells empty.
pub fn decision_matrix_csv(result: &SimResult) -> String {
    let mut out = String::from("situation");
    for d in &result.decisions {
        write!(out, ",{}", d.name()).unwrap();
    }
    out.push('\n');
    for run in &result.runs {
        out.push_str(run.situation.name());
        for &d in &result.decisions {
            out.push(',');
            if let Some((sum, count)) = result.column_sum(run, d).filter(|(_, c)| *c > 0) {
                out.push_str(&decimal::rounded(sum, count, 2));
            }
        }
        out.push('\n');
    }
    out
}

/// Every recorded event: situation, time, job, free count and one total per
/// decision algorithm.
pub fn event_log_csv(result: &SimResult) -> String {
    let mut out = String::from("situation,time,job,free_count");
    for d in &result.decisions {
        write!(out, ",{}", d.name()).unwrap();
    }
    out.push('\n');
    for run in &result.runs {
        for e in &run.events {
            write!(out, "{},{},{},{}", run.situation.name(), e.time, e.job_id, e.free_count).unwrap();
            for t in &e.totals {
                write!(out, ",{t}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}
