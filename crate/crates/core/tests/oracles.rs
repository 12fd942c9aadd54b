mod common;

use common::{contiguous, cost, ctsp_optimum, random_instance, tsp_optimum};
use ctsp::exact::{brute_force_ctsp, brute_force_tsp, ctsp_enumeration_size};
use ctsp::instance::Point;
use ctsp::transform::{big_m_value, lift_tour, recover_cost, to_tsp};
use ctsp::{Distance, Instance};

#[test]
fn held_karp_matches_enumeration() {
    for seed in 0..30 {
        let n = 2 + (seed as usize % 7);
        let inst = random_instance(n, 1, seed);
        let (tour, c) = brute_force_tsp(&inst).unwrap();
        assert_eq!(c, tsp_optimum(&inst), "seed {seed}");
        assert_eq!(cost(&inst, tour.order()), c);
    }
}

#[test]
fn ctsp_brute_force_matches_enumeration() {
    for seed in 0..40 {
        let n = 3 + (seed as usize % 6);
        let m = 1 + (seed as usize % 4).min(n - 1);
        let inst = random_instance(n, m, 100 + seed);
        let (tour, c) = brute_force_ctsp(&inst).unwrap();
        assert_eq!(c, ctsp_optimum(&inst), "n={n} m={m} seed {seed}");
        assert!(contiguous(&inst, tour.order()));
        assert_eq!(cost(&inst, tour.order()), c);
    }
}

#[test]
fn transformed_optimum_recovers_ctsp_optimum() {
    for seed in 0..30 {
        let n = 4 + (seed as usize % 5);
        let m = 2 + (seed as usize % 3);
        let inst = random_instance(n, m, 300 + seed);
        let tsp = to_tsp(&inst).unwrap();
        let (t, c) = brute_force_tsp(&tsp).unwrap();
        assert_eq!(c, tsp_optimum(&tsp));
        let (lifted, feasible) = lift_tour(&t, &inst);
        assert!(feasible);
        assert_eq!(
            recover_cost(c, m, tsp.big_m()).unwrap(),
            ctsp_optimum(&inst)
        );
        assert_eq!(lifted.cost(), ctsp_optimum(&inst));
    }
}

#[test]
fn big_m_is_n_cmax_plus_one() {
    for seed in 0..10 {
        let inst = random_instance(9, 3, seed);
        let pts = inst.coords().unwrap();
        let mut cmax = 0;
        for i in 0..9 {
            for j in 0..9 {
                cmax = cmax.max(common::nint(pts[i], pts[j]));
            }
        }
        assert_eq!(big_m_value(&inst).unwrap(), 9 * cmax + 1);
        let tsp = to_tsp(&inst).unwrap();
        for i in 0..9 {
            for j in 0..9 {
                if i == j {
                    continue;
                }
                let extra = if inst.cluster_of(i) == inst.cluster_of(j) {
                    0
                } else {
                    tsp.big_m()
                };
                assert_eq!(tsp.dist(i, j), inst.dist(i, j) + extra);
            }
        }
    }
}

#[test]
fn enumeration_size_closed_form() {
    // clusters of sizes 3, 2, 2: m! * 2! * 1! * 1!
    let pts = (0..7).map(|i| Point::new(i as f64, 0.0)).collect();
    let inst =
        Instance::from_coords("s", pts, vec![vec![0, 1, 2], vec![3, 4], vec![5, 6]]).unwrap();
    assert_eq!(ctsp_enumeration_size(&inst), 6 * 2);
}
