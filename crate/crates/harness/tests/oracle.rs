mod common;

use ubopt::oracle::{grid_oracle, levels};
use ubopt::problem::Genome;

#[test]
fn resolution_one_is_the_centre() {
    let problem = common::small(2).problem().unwrap();
    let r = grid_oracle(&problem, 1).unwrap();
    assert_eq!(r.evaluations, 1);
    for g in problem.free_genes() {
        assert_eq!(r.best.genome.0[g], 0.5);
    }
}

#[test]
fn single_slot_enumerates_delta_only() {
    let problem = common::small(1).problem().unwrap();
    assert_eq!(problem.free_genes().len(), 1);
    let r = grid_oracle(&problem, 3).unwrap();
    assert_eq!(r.evaluations, 3);
}

#[test]
fn guard_rails() {
    let problem = common::small(4).problem().unwrap();
    assert_eq!(grid_oracle(&problem, 2).unwrap_err().category(), "guard_rail");
    let problem = common::small(3).problem().unwrap();
    // 3 slots, fixed altitude: 4 + 3 = 7 free genes; 11^7 > 1e7
    assert_eq!(problem.free_genes().len(), 7);
    assert_eq!(grid_oracle(&problem, 11).unwrap_err().category(), "guard_rail");
    assert!(grid_oracle(&problem, 0).is_err());
}

#[test]
fn two_slot_grid_matches_nested_loops() {
    let problem = common::small(2).problem().unwrap();
    let r = 5;
    let oracle = grid_oracle(&problem, r).unwrap();
    assert_eq!(oracle.evaluations, 5u64.pow(4));

    // genome: [x2, y2, z2, d1, d2], z2 frozen; enumerate with d2 outermost
    let lv = levels(r);
    let z = problem.mean_genome(0.5).0[2];
    let mut best = f64::INFINITY;
    for &d2 in &lv {
        for &d1 in &lv {
            for &y in &lv {
                for &x in &lv {
                    let e = problem.evaluate(&Genome(vec![x, y, z, d1, d2])).unwrap();
                    best = best.min(e.fitness);
                }
            }
        }
    }
    assert_eq!(oracle.best.fitness, best);
}
