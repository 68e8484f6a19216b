use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use ubopt::campaign::{random_search_baseline, run_campaign, RunArtifact, SolverKind};
use ubopt::config::{load_config, ScenarioConfig};
use ubopt::export::{export_solution, read_json, write_json};
use ubopt::oracle::grid_oracle;
use ubopt::sweep::{run_sweep, SweepParam, SweepSpec};
use ubopt::HarnessError;

#[derive(Parser)]
#[command(
    name = "ubopt",
    version,
    about = "Trajectory and time-splitting optimization for a UAV-borne backscatter relay"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario TOML file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or more solvers over one or more seeds.
    Run {
        #[command(flatten)]
        common: Common,
        /// Comma-separated: ga, ipso, pso, random.
        #[arg(long, value_delimiter = ',', default_value = "ipso")]
        solver: Vec<SolverKind>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated seeds; overrides --seed.
        #[arg(long, value_delimiter = ',')]
        seeds: Option<Vec<u64>>,
        /// Fitness evaluations per run.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Sweep one scenario parameter.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Sweep spec TOML; replaces --param/--values/--seeds/--solver.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// wpt_power_db, ub_power_dbm, source_power_dbm, mission_time_s or altitude_m.
        #[arg(long)]
        param: Option<String>,
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "ga,ipso")]
        solver: Vec<SolverKind>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Exhaustive grid search (at most 3 slots).
    Oracle {
        #[command(flatten)]
        common: Common,
        /// Levels per free gene.
        #[arg(long, default_value_t = 9)]
        resolution: usize,
    },
    /// Uniform random search.
    Baseline {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: u64,
    },
    /// Export the solution held in a run artifact.
    Export {
        /// Run artifact JSON written by `run`.
        #[arg(long)]
        artifact: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool, HarnessError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        if n == 0 {
            return Err(HarnessError::Usage("--workers must be >= 1".into()));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| HarnessError::Usage(e.to_string()))
}

fn create_dir(dir: &Path) -> Result<(), HarnessError> {
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))
}

fn artifact_stem(a: &RunArtifact) -> String {
    format!("{}_seed{}", a.solver, a.seed)
}

fn save_artifact(a: &RunArtifact, cfg: &ScenarioConfig, out: &Path) -> Result<serde_json::Value, HarnessError> {
    let stem = artifact_stem(a);
    let path = out.join(format!("{stem}.json"));
    write_json(a, &path)?;
    export_solution(&a.report, &cfg.problem()?, out, &stem)?;
    Ok(json!({
        "solver": a.solver,
        "seed": a.seed,
        "objective": a.report.feasible_objective(),
        "feasible": a.report.feasible,
        "evaluations": a.report.evaluations,
        "artifact": path,
    }))
}

fn execute(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Run {
            common,
            solver,
            seed,
            seeds,
            budget,
        } => {
            let cfg = load_config(&common.config)?;
            create_dir(&common.out)?;
            let seeds = seeds.unwrap_or_else(|| vec![seed]);
            let outcomes = pool(common.workers)?.install(|| run_campaign(&cfg, &solver, &seeds, budget));
            let mut failed = 0;
            for o in outcomes {
                match o {
                    Ok(a) => println!("{}", save_artifact(&a, &cfg, &common.out)?),
                    Err(f) => {
                        failed += 1;
                        eprintln!("{}", serde_json::to_string(&f)?);
                    }
                }
            }
            if failed > 0 {
                return Err(HarnessError::Usage(format!("{failed} run(s) failed")));
            }
        }
        Command::Sweep {
            common,
            spec,
            param,
            values,
            seeds,
            solver,
            budget,
        } => {
            let cfg = load_config(&common.config)?;
            let spec = match spec {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| HarnessError::io(&path, e))?;
                    toml::from_str::<SweepSpec>(&text).map_err(|e| HarnessError::Parse {
                        source_name: path.display().to_string(),
                        message: e.to_string(),
                    })?
                }
                None => SweepSpec {
                    parameter: SweepParam::parse(
                        param
                            .as_deref()
                            .ok_or_else(|| HarnessError::Usage("--param or --spec is required".into()))?,
                    )?,
                    values: values.ok_or_else(|| HarnessError::Usage("--values is required".into()))?,
                    seeds,
                    solvers: solver,
                    budget,
                },
            };
            let table = pool(common.workers)?.install(|| run_sweep(&spec, &cfg))?;
            table.write(&common.out)?;
            for r in &table.summary {
                println!("{}", serde_json::to_string(r)?);
            }
        }
        Command::Oracle { common, resolution } => {
            let cfg = load_config(&common.config)?;
            create_dir(&common.out)?;
            let problem = cfg.problem()?;
            let report = pool(common.workers)?.install(|| grid_oracle(&problem, resolution))?;
            write_json(&report, &common.out.join("grid.json"))?;
            export_solution(&report, &problem, &common.out, "grid")?;
            println!(
                "{}",
                json!({"objective": report.feasible_objective(), "feasible": report.feasible, "evaluations": report.evaluations})
            );
        }
        Command::Baseline { common, seed, budget } => {
            let cfg = load_config(&common.config)?;
            create_dir(&common.out)?;
            let problem = cfg.problem()?;
            let report = pool(common.workers)?
                .install(|| random_search_baseline(&problem, budget, seed, cfg.solvers.population))?;
            let stem = format!("random_seed{seed}");
            write_json(&report, &common.out.join(format!("{stem}.json")))?;
            export_solution(&report, &problem, &common.out, &stem)?;
            println!(
                "{}",
                json!({"objective": report.feasible_objective(), "feasible": report.feasible, "evaluations": report.evaluations})
            );
        }
        Command::Export { artifact, out } => {
            let a: RunArtifact = read_json(&artifact)?;
            let (json_path, csv_path) = export_solution(&a.report, &a.config.problem()?, &out, &artifact_stem(&a))?;
            println!("{}", json!({"solution": json_path, "trajectory": csv_path}));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({"error": e.category(), "message": e.to_string()}));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
