//! Plot-ready solution dumps: a JSON document and a per-waypoint CSV.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use ubopt_core::model::{Position, TimeSplit, Trajectory};
use ubopt_core::problem::{slot_metrics, EvaluatedSolution, Problem};
use ubopt_core::report::SolverReport;

use crate::error::HarnessError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDump {
    pub solver: String,
    pub seed: u64,
    /// N + 1 waypoints (m).
    pub waypoints_m: Vec<[f64; 3]>,
    pub delta: Vec<f64>,
    /// Σ R_d (bit/s).
    pub objective: f64,
    pub fitness: f64,
    pub feasible: bool,
    pub margins: BTreeMap<String, f64>,
}

impl SolutionDump {
    pub fn new(report: &SolverReport) -> Self {
        let best = &report.best;
        Self {
            solver: report.solver.clone(),
            seed: report.seed,
            waypoints_m: best.trajectory.waypoints.iter().map(|w| w.to_array()).collect(),
            delta: best.time_split.fractions.clone(),
            objective: best.objective,
            fitness: best.fitness,
            feasible: best.feasibility.feasible,
            margins: best
                .feasibility
                .margins()
                .iter()
                .map(|&(k, v)| (k.to_string(), v))
                .collect(),
        }
    }

    /// Re-evaluates the stored waypoints and split on `problem`.
    pub fn reevaluate(&self, problem: &Problem) -> Result<EvaluatedSolution, HarnessError> {
        let traj = Trajectory {
            waypoints: self.waypoints_m.iter().map(|&a| Position::from_array(a)).collect(),
        };
        let ts = TimeSplit {
            fractions: self.delta.clone(),
        };
        let genome = problem.encode(&traj, &ts)?;
        Ok(problem.evaluate(&genome)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub waypoint: usize,
    pub x_m: f64,
    pub y_m: f64,
    pub z_m: f64,
    pub delta: Option<f64>,
    pub speed_mps: Option<f64>,
    pub rate_downlink_bps: Option<f64>,
    pub rate_uplink_bps: Option<f64>,
    pub harvested_j: Option<f64>,
    pub flying_j: Option<f64>,
    pub backscatter_j: Option<f64>,
    pub cache_j: Option<f64>,
}

/// One row per waypoint; slot quantities sit on the slot's start waypoint
/// and are empty on the final one.
pub fn trajectory_rows(solution: &EvaluatedSolution, problem: &Problem) -> Result<Vec<TrajectoryRow>, HarnessError> {
    let slots = slot_metrics(&solution.trajectory, &solution.time_split, problem.scenario())?;
    Ok(solution
        .trajectory
        .waypoints
        .iter()
        .enumerate()
        .map(|(k, w)| {
            let s = slots.get(k);
            TrajectoryRow {
                waypoint: k,
                x_m: w.x,
                y_m: w.y,
                z_m: w.z,
                delta: s.map(|s| s.delta),
                speed_mps: s.map(|s| s.speed),
                rate_downlink_bps: s.map(|s| s.rate_downlink),
                rate_uplink_bps: s.map(|s| s.rate_uplink),
                harvested_j: s.map(|s| s.harvested),
                flying_j: s.map(|s| s.consumption.flying),
                backscatter_j: s.map(|s| s.consumption.backscatter),
                cache_j: s.map(|s| s.consumption.cache),
            }
        })
        .collect())
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<(), HarnessError> {
    let file = File::create(path).map_err(|e| HarnessError::io(path, e))?;
    serde_json::to_writer_pretty(BufWriter::new(file), value)?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, HarnessError> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| HarnessError::Parse {
        source_name: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn write_csv<T: Serialize>(rows: &[T], path: &Path) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => HarnessError::io(path, io),
        other => HarnessError::Usage(format!("{}: {other:?}", path.display())),
    })?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))?;
    Ok(())
}

/// Writes `<stem>.solution.json` and `<stem>.trajectory.csv` into `dir`.
pub fn export_solution(
    report: &SolverReport,
    problem: &Problem,
    dir: &Path,
    stem: &str,
) -> Result<(PathBuf, PathBuf), HarnessError> {
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let json = dir.join(format!("{stem}.solution.json"));
    let csv = dir.join(format!("{stem}.trajectory.csv"));
    write_json(&SolutionDump::new(report), &json)?;
    write_csv(&trajectory_rows(&report.best, problem)?, &csv)?;
    Ok((json, csv))
}
