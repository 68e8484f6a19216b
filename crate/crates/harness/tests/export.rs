mod common;

use ubopt::campaign::{run_solver, SolverKind};
use ubopt::config::reference;
use ubopt::export::{export_solution, read_json, SolutionDump, TrajectoryRow};

#[test]
fn exported_files_recompose_the_solution() {
    let cfg = reference();
    let problem = cfg.problem().unwrap();
    let report = run_solver(&cfg, &problem, SolverKind::Ga, 4, Some(2_000)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let (json, csv_path) = export_solution(&report, &problem, dir.path(), "ga").unwrap();

    let rows: Vec<TrajectoryRow> = csv::Reader::from_path(&csv_path)
        .unwrap()
        .deserialize()
        .map(|r| r.unwrap())
        .collect();
    assert_eq!(rows.len(), cfg.mission.slots + 1);
    assert!(rows.last().unwrap().rate_downlink_bps.is_none());

    let rate_sum: f64 = rows.iter().filter_map(|r| r.rate_downlink_bps).sum();
    assert!((rate_sum - report.best.objective).abs() <= 1e-9 * report.best.objective);

    if report.feasible {
        let harvested: f64 = rows.iter().filter_map(|r| r.harvested_j).sum();
        let consumed: f64 = rows
            .iter()
            .filter_map(|r| Some(r.flying_j? + r.backscatter_j? + r.cache_j?))
            .sum();
        assert!(harvested >= consumed * (1.0 - 1e-9));
    }

    let dump: SolutionDump = read_json(&json).unwrap();
    assert_eq!(dump.waypoints_m.len(), cfg.mission.slots + 1);
    let again = dump.reevaluate(&problem).unwrap();
    assert!((again.objective - dump.objective).abs() <= 1e-12 * dump.objective);
    assert_eq!(again.feasibility.feasible, dump.feasible);
}

#[test]
fn unwritable_directory_reports_the_path() {
    let cfg = common::small(2);
    let problem = cfg.problem().unwrap();
    let report = run_solver(&cfg, &problem, SolverKind::Random, 0, Some(10)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let err = export_solution(&report, &problem, &blocker.join("sub"), "x").unwrap_err();
    assert_eq!(err.category(), "io");
    assert!(err.to_string().contains("file"));
}
