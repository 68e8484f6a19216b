mod common;

use ubopt::campaign::SolverKind;
use ubopt::sweep::{run_sweep, SweepParam, SweepSpec};

fn spec(parameter: SweepParam, values: Vec<f64>, seeds: Vec<u64>, solvers: Vec<SolverKind>) -> SweepSpec {
    SweepSpec {
        parameter,
        values,
        seeds,
        solvers,
        budget: Some(300),
    }
}

#[test]
fn single_point_single_seed() {
    let t = run_sweep(
        &spec(SweepParam::WptPowerDb, vec![60.0], vec![0], vec![SolverKind::Ga]),
        &common::small(3),
    )
    .unwrap();
    assert_eq!(t.rows.len(), 1);
    assert_eq!(t.summary.len(), 1);
    assert_eq!(t.summary[0].median_objective, t.rows[0].best_objective);
}

#[test]
fn row_count_is_points_times_solvers_times_seeds() {
    let s = spec(
        SweepParam::WptPowerDb,
        vec![55.0, 60.0, 65.0, 70.0, 75.0],
        vec![0, 1],
        vec![SolverKind::Ga, SolverKind::Ipso],
    );
    let t = run_sweep(&s, &common::small(3)).unwrap();
    assert_eq!(t.rows.len(), 5 * 2 * 2);
    assert_eq!(t.summary.len(), 5 * 2);
    assert_eq!(t.medians(SolverKind::Ga).len(), 5);

    let dir = tempfile::tempdir().unwrap();
    t.write(dir.path()).unwrap();
    let mut rdr = csv::Reader::from_path(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(rdr.records().count(), 20);
    let header = csv::Reader::from_path(dir.path().join("sweep_summary.csv"))
        .unwrap()
        .headers()
        .unwrap()
        .clone();
    assert!(header.iter().any(|h| h == "median_objective"));
}

#[test]
fn failing_point_is_recorded_and_sweep_continues() {
    let s = spec(
        SweepParam::MissionTimeS,
        vec![-5.0, 15.0],
        vec![0],
        vec![SolverKind::Ipso],
    );
    let t = run_sweep(&s, &common::small(3)).unwrap();
    assert_eq!(t.rows.len(), 2);
    assert!(t.rows[0].error.as_deref().unwrap().starts_with("config"));
    assert!(t.rows[1].error.is_none());
}

#[test]
fn empty_spec_rejected() {
    let s = spec(SweepParam::AltitudeM, vec![], vec![], vec![SolverKind::Ga]);
    let err = run_sweep(&s, &common::small(3)).unwrap_err();
    assert_eq!(err.category(), "config");
    assert!(err.to_string().contains("value") && err.to_string().contains("seed"));
}

#[test]
fn altitude_sweep_moves_the_pinned_endpoints() {
    let cfg = SweepParam::AltitudeM.apply(&common::small(3), 35.0);
    assert_eq!(cfg.mission.altitude_m, 35.0);
    assert_eq!(cfg.mission.start_m[2], 35.0);
    assert_eq!(cfg.mission.end_m[2], 35.0);
    assert!(cfg.to_scenario().is_ok());
}
