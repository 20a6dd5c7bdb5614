use mub_entropy::bounds::refined_intermediate_bound;
use mub_entropy::measure::{entropy_sum, LogBase};
use mub_entropy::mub::generate_mub_set;
use mub_entropy::qstate::{haar_random_state_with, PureState, Seed};
use mub_entropy::tightness::{gap_sweep, minimize_entropy_sum, OptimizerConfig};

fn cfg(restarts: usize, seed: u64) -> OptimizerConfig {
    OptimizerConfig {
        restarts,
        seed: Seed(seed),
        ..OptimizerConfig::default()
    }
}

#[test]
fn more_restarts_never_hurt() {
    let set = generate_mub_set::<f64>(5, 3).unwrap();
    for seed in [1, 2, 3] {
        let mins: Vec<f64> = [1, 4, 16]
            .iter()
            .map(|&r| {
                minimize_entropy_sum(&set, LogBase::two(), &cfg(r, seed))
                    .unwrap()
                    .min_value
            })
            .collect();
        assert!(mins[1] <= mins[0] && mins[2] <= mins[1], "{mins:?}");
    }
}

#[test]
fn single_basis_minimum_is_an_eigenstate() {
    for p in [2, 3, 5, 7, 11, 13] {
        let set = generate_mub_set::<f64>(p, 1).unwrap();
        let r = minimize_entropy_sum(&set, LogBase::two(), &cfg(4, p as u64)).unwrap();
        assert!(r.min_value <= 1e-8, "p={p}: {}", r.min_value);
    }
}

#[test]
fn qubit_full_set_sits_between_bounds() {
    let set = generate_mub_set::<f64>(2, 3).unwrap();
    let r = minimize_entropy_sum(&set, LogBase::two(), &cfg(8, 4)).unwrap();
    assert!(r.min_value <= 2.0 + 1e-4, "{}", r.min_value);
    assert!(r.min_value >= 1.754_887_502_163_468_5);
}

/// Random search is a brute-force ceiling on the true minimum; the optimizer
/// must do at least as well and never cross the refined bound.
#[test]
fn optimizer_beats_random_search_and_respects_bound() {
    let set = generate_mub_set::<f64>(5, 3).unwrap();
    let mut rng = Seed(77).rng();
    let mut sampled_min = f64::INFINITY;
    for _ in 0..1_000_000 {
        let psi: PureState<f64> = haar_random_state_with(5, &mut rng).unwrap();
        sampled_min = sampled_min.min(entropy_sum(&psi, &set, LogBase::two()).unwrap());
    }
    let bound: f64 = refined_intermediate_bound(5, 3, LogBase::two()).unwrap();
    assert!((bound - 3.350_977_500_432_694).abs() < 1e-12);
    let r = minimize_entropy_sum(&set, LogBase::two(), &cfg(16, 5)).unwrap();
    assert!(r.min_value >= bound - 1e-9);
    assert!(
        sampled_min >= r.min_value - 1e-9,
        "{sampled_min} < {}",
        r.min_value
    );
    assert!(r.gap >= -1e-9);
    eprintln!(
        "N=5 M=3: optimizer {} random {} bound {}",
        r.min_value, sampled_min, bound
    );
}

#[test]
fn gap_sweep_examples() {
    let r = gap_sweep::<f64>(3, &[4], LogBase::two(), &cfg(8, 1)).unwrap();
    assert!(r[0].min_value >= 4.0 - 1e-9);
    let r = gap_sweep::<f64>(7, &[1], LogBase::two(), &cfg(4, 1)).unwrap();
    assert!(r[0].min_value <= 1e-8);
}

#[test]
fn argmin_reproduces_min_value() {
    let set = generate_mub_set::<f64>(3, 2).unwrap();
    let r = minimize_entropy_sum(&set, LogBase::two(), &cfg(4, 8)).unwrap();
    let direct = entropy_sum(&r.argmin, &set, LogBase::two()).unwrap();
    assert!((direct - r.min_value).abs() < 1e-12);
}

#[test]
fn f32_optimizer_runs() {
    let set = generate_mub_set::<f32>(3, 2).unwrap();
    let r = minimize_entropy_sum(&set, LogBase::<f32>::two(), &cfg(4, 8)).unwrap();
    assert!((r.min_value - 3f32.log2()).abs() < 1e-2, "{}", r.min_value);
}
