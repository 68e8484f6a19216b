mod common;

use ubopt::campaign::{random_search_baseline, run_campaign, SolverKind};
use ubopt::config::reference;

#[test]
fn two_solvers_three_seeds_give_six_artifacts() {
    let cfg = common::small(3);
    let out = run_campaign(&cfg, &[SolverKind::Ga, SolverKind::Ipso], &[1, 2, 3], Some(600));
    assert_eq!(out.len(), 6);
    let arts: Vec<_> = out.into_iter().map(|o| o.unwrap()).collect();
    let keys: Vec<_> = arts.iter().map(|a| (a.solver, a.seed)).collect();
    assert_eq!(keys[0], (SolverKind::Ga, 1));
    assert_eq!(keys[5], (SolverKind::Ipso, 3));
    assert!(arts.iter().all(|a| a.scenario_hash == cfg.hash()));
}

#[test]
fn repeated_campaign_is_byte_identical() {
    let cfg = common::small(3);
    let solvers = [SolverKind::Ga, SolverKind::Ipso, SolverKind::Pso, SolverKind::Random];
    let a = run_campaign(&cfg, &solvers, &[7, 8], Some(500));
    let b = run_campaign(&cfg, &solvers, &[7, 8], Some(500));
    for (x, y) in a.iter().zip(&b) {
        let (x, y) = (x.as_ref().unwrap(), y.as_ref().unwrap());
        assert_eq!(x.canonical_json(), y.canonical_json());
    }
}

#[test]
fn budget_parity_across_solvers() {
    let cfg = common::small(4);
    let budget = 1_000;
    for o in run_campaign(&cfg, &SolverKind::ALL, &[0, 1, 2], Some(budget)) {
        let a = o.unwrap();
        assert_eq!(a.report.evaluation_cap, Some(budget), "{}", a.solver);
        assert!(
            a.report.evaluations <= budget,
            "{} used {}",
            a.solver,
            a.report.evaluations
        );
    }
}

#[test]
fn failures_stay_with_their_run() {
    let cfg = common::small(3);
    // 10 evaluations cannot cover a population of 50; random search is unaffected
    let out = run_campaign(&cfg, &[SolverKind::Ga, SolverKind::Random], &[0], Some(10));
    assert_eq!(out[0].as_ref().unwrap_err().category, "config");
    assert_eq!(out[1].as_ref().unwrap().report.evaluations, 10);
}

#[test]
fn random_search_single_sample() {
    let problem = reference().problem().unwrap();
    let r = random_search_baseline(&problem, 1, 3, 50).unwrap();
    assert_eq!(r.evaluations, 1);
    assert_eq!(r.trace.len(), 1);
    assert_eq!(r.best.sequence, 0);
    assert_eq!(r.trace[0].best_fitness, r.best.fitness);
}

#[test]
fn random_search_is_deterministic_and_nested() {
    let problem = common::small(3).problem().unwrap();
    let a = random_search_baseline(&problem, 300, 5, 50).unwrap();
    assert_eq!(a, random_search_baseline(&problem, 300, 5, 50).unwrap());
    let mut prev = f64::INFINITY;
    for budget in [1, 7, 50, 51, 120, 300] {
        let r = random_search_baseline(&problem, budget, 5, 50).unwrap();
        assert!(r.trace.last().unwrap().best_fitness <= prev);
        prev = r.trace.last().unwrap().best_fitness;
    }
    assert_eq!(prev, a.trace.last().unwrap().best_fitness);
}
