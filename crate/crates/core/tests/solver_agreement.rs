use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use srdg_core::dp_path::solve_path_dp;
use srdg_core::exact::brute_force_feasible;
use srdg_core::generators::{random_small_instance, SmallParams, SmallShape};
use srdg_core::star::solve_star;
use srdg_core::validate;

#[test]
fn path_dp_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let params = SmallParams::new(SmallShape::Path);
    let mut feasible = 0;
    for case in 0..400 {
        let inst = random_small_instance(&mut rng, &params);
        let brute = brute_force_feasible(&inst, 0).unwrap();
        let dp = solve_path_dp(&inst).unwrap();
        assert_eq!(brute.is_feasible(), dp.is_feasible(), "case {case}: {inst:?}");
        if let Some(s) = dp.schedule() {
            feasible += 1;
            assert!(validate(&inst, s).unwrap().is_valid(), "case {case}");
        }
    }
    assert!(feasible > 40, "only {feasible} feasible cases");
}

#[test]
fn star_solver_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut params = SmallParams::new(SmallShape::Star);
    params.max_vertices = 7;
    let mut feasible = 0;
    for case in 0..400 {
        let inst = random_small_instance(&mut rng, &params);
        let brute = brute_force_feasible(&inst, 0).unwrap();
        let star = solve_star(&inst).unwrap();
        assert_eq!(brute.is_feasible(), star.is_feasible(), "case {case}: {inst:?}");
        if let Some(s) = star.schedule() {
            feasible += 1;
            assert!(validate(&inst, s).unwrap().is_valid(), "case {case}");
        }
    }
    assert!(feasible > 40, "only {feasible} feasible cases");
}
