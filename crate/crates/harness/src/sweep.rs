//! One-parameter sweeps over a scenario.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::campaign::{median, run_one, RunArtifact, SolverKind};
use crate::config::ScenarioConfig;
use crate::error::HarnessError;
use crate::export::write_csv;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    WptPowerDb,
    UbPowerDbm,
    SourcePowerDbm,
    MissionTimeS,
    AltitudeM,
}

impl SweepParam {
    pub const ALL: [SweepParam; 5] = [
        Self::WptPowerDb,
        Self::UbPowerDbm,
        Self::SourcePowerDbm,
        Self::MissionTimeS,
        Self::AltitudeM,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Self::WptPowerDb => "wpt_power_db",
            Self::UbPowerDbm => "ub_power_dbm",
            Self::SourcePowerDbm => "source_power_dbm",
            Self::MissionTimeS => "mission_time_s",
            Self::AltitudeM => "altitude_m",
        }
    }

    pub fn parse(s: &str) -> Result<Self, HarnessError> {
        Self::ALL.into_iter().find(|p| p.key() == s).ok_or_else(|| {
            let keys: Vec<_> = Self::ALL.iter().map(|p| p.key()).collect();
            HarnessError::Usage(format!(
                "unknown sweep parameter {s:?}; expected one of {}",
                keys.join(", ")
            ))
        })
    }

    /// Copy of `cfg` with this parameter set to `value`. Altitude also moves
    /// the pinned endpoints, which sit at H.
    pub fn apply(self, cfg: &ScenarioConfig, value: f64) -> ScenarioConfig {
        let mut c = cfg.clone();
        match self {
            Self::WptPowerDb => c.radio.wpt_power_db = value,
            Self::UbPowerDbm => c.radio.ub_power_dbm = value,
            Self::SourcePowerDbm => c.radio.source_power_dbm = value,
            Self::MissionTimeS => c.mission.mission_time_s = value,
            Self::AltitudeM => {
                c.mission.altitude_m = value;
                c.mission.start_m[2] = value;
                c.mission.end_m[2] = value;
            }
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParam,
    pub values: Vec<f64>,
    pub seeds: Vec<u64>,
    pub solvers: Vec<SolverKind>,
    #[serde(default)]
    pub budget: Option<u64>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let mut issues = Vec::new();
        if self.values.is_empty() {
            issues.push("sweep needs at least one value".to_string());
        }
        if self.seeds.is_empty() {
            issues.push("sweep needs at least one seed".to_string());
        }
        if self.solvers.is_empty() {
            issues.push("sweep needs at least one solver".to_string());
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(HarnessError::Invalid(issues))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub parameter: String,
    pub value: f64,
    pub solver: SolverKind,
    pub seed: u64,
    /// Σ R_d of the best solution when feasible, else 0.
    pub best_objective: f64,
    pub feasible: bool,
    pub evaluations: u64,
    pub wall_clock_s: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub parameter: String,
    pub value: f64,
    pub solver: SolverKind,
    pub median_objective: f64,
    pub feasible_runs: usize,
    pub runs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    pub summary: Vec<SummaryRow>,
}

impl SweepTable {
    /// Median objectives of `solver` in sweep-value order.
    pub fn medians(&self, solver: SolverKind) -> Vec<f64> {
        self.summary
            .iter()
            .filter(|r| r.solver == solver)
            .map(|r| r.median_objective)
            .collect()
    }

    pub fn write(&self, dir: &Path) -> Result<(), HarnessError> {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
        write_csv(&self.rows, &dir.join("sweep.csv"))?;
        write_csv(&self.summary, &dir.join("sweep_summary.csv"))
    }
}

/// Runs every (value, solver, seed) point; failing points are recorded
/// with an error message and zero objective.
pub fn run_sweep(spec: &SweepSpec, cfg: &ScenarioConfig) -> Result<SweepTable, HarnessError> {
    run_sweep_with(spec, cfg, |_, _| {})
}

/// [`run_sweep`], also handing each successful run's artifact and sweep
/// value to `inspect` (called concurrently, in no particular order).
pub fn run_sweep_with(
    spec: &SweepSpec,
    cfg: &ScenarioConfig,
    inspect: impl Fn(f64, &RunArtifact) + Sync,
) -> Result<SweepTable, HarnessError> {
    spec.validate()?;
    let key = spec.parameter.key();
    let jobs: Vec<(f64, SolverKind, u64)> = spec
        .values
        .iter()
        .flat_map(|&v| {
            spec.solvers
                .iter()
                .flat_map(move |&k| spec.seeds.iter().map(move |&s| (v, k, s)))
        })
        .collect();
    let rows: Vec<SweepRow> = jobs
        .into_par_iter()
        .map(|(value, solver, seed)| {
            let point = spec.parameter.apply(cfg, value);
            match run_one(&point, solver, seed, spec.budget) {
                Ok(a) => {
                    inspect(value, &a);
                    SweepRow {
                        parameter: key.into(),
                        value,
                        solver,
                        seed,
                        best_objective: a.report.feasible_objective(),
                        feasible: a.report.feasible,
                        evaluations: a.report.evaluations,
                        wall_clock_s: a.wall_clock_s,
                        error: None,
                    }
                }
                Err(f) => SweepRow {
                    parameter: key.into(),
                    value,
                    solver,
                    seed,
                    best_objective: 0.0,
                    feasible: false,
                    evaluations: 0,
                    wall_clock_s: 0.0,
                    error: Some(format!("{}: {}", f.category, f.message)),
                },
            }
        })
        .collect();

    let mut summary = Vec::new();
    for &value in &spec.values {
        for &solver in &spec.solvers {
            let point: Vec<&SweepRow> = rows.iter().filter(|r| r.value == value && r.solver == solver).collect();
            let mut objectives: Vec<f64> = point.iter().map(|r| r.best_objective).collect();
            summary.push(SummaryRow {
                parameter: key.into(),
                value,
                solver,
                median_objective: median(&mut objectives).unwrap_or(0.0),
                feasible_runs: point.iter().filter(|r| r.feasible).count(),
                runs: point.len(),
            });
        }
    }
    Ok(SweepTable { rows, summary })
}
