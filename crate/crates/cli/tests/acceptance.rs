//! Acceptance suite: one test per shipped guarantee, each ending in a
//! single `[PASS] criterion N` line. Run with:
//!
//! ```text
//! cargo test -p mimo-select --test acceptance -- --nocapture
//! ```
//!
//! A failed assertion replaces the [PASS] line with the test failure, so
//! the suite always yields one verdict per criterion.

use mimo_select::seed::derive_seed;
use mimo_select::tight::{run_tight, TightCase, TightConfig};
use mimo_select::verify::{run_verify, VerifyConfig};
use mimo_select_core::channel::{gen_gaussian, gen_parallel, MimoChannel};
use mimo_select_core::identities::{
    verify_avg_det_bound, verify_case2_tuple_count, verify_derivative_special_case,
    verify_induction_step, verify_property1,
};
use mimo_select_core::matrix::{dual_gram, gram, ComplexMatrix, HermitianForm};
use mimo_select_core::selection::{
    exhaustive_best, greedy_prune, theorem2_bound, Method, PruneOrder, Theorem,
    DEFAULT_ENUMERATION_CAP,
};
use mimo_select_core::SubsetIndex;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const POWERS: [f64; 3] = [0.01, 1.0, 100.0];

/// Master seed for the shared 200-form Gram ensemble (criteria 5-7).
const GRAM_ENSEMBLE_SEED: u64 = 0xACCE;

fn verify_config(theorem: Theorem, method: Method) -> VerifyConfig {
    VerifyConfig {
        theorem,
        method,
        trials: 1000,
        max_n: 6,
        powers: POWERS.to_vec(),
        seed: 2024,
    }
}

/// 200 seeded Gram forms with dimensions drawn uniformly from 2..=7.
fn gram_ensemble() -> Vec<HermitianForm> {
    (0..200u64)
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(GRAM_ENSEMBLE_SEED, trial));
            let n = rng.random_range(2..=7);
            let ch = gen_gaussian(n, n, rng.next_u64()).expect("dims are valid");
            gram(ch.matrix(), 1.0).expect("power is positive")
        })
        .collect()
}

fn random_channel(rng: &mut ChaCha8Rng, max_n: usize) -> MimoChannel {
    let n_t = rng.random_range(1..=max_n);
    let n_r = rng.random_range(1..=max_n);
    gen_gaussian(n_t, n_r, rng.next_u64()).expect("dims are valid")
}

fn random_nonempty_subset(rng: &mut ChaCha8Rng, n: usize) -> SubsetIndex {
    loop {
        let members: Vec<usize> = (1..=n).filter(|_| rng.random_bool(0.6)).collect();
        if !members.is_empty() {
            return SubsetIndex::new(members).expect("ascending by construction");
        }
    }
}

fn random_nonempty_subset_of(rng: &mut ChaCha8Rng, sup: &SubsetIndex) -> SubsetIndex {
    loop {
        let members: Vec<usize> = sup
            .members()
            .iter()
            .copied()
            .filter(|_| rng.random_bool(0.7))
            .collect();
        if !members.is_empty() {
            return SubsetIndex::new(members).expect("subsequence stays ascending");
        }
    }
}

#[test]
fn criterion_01_multiplicative_bound_holds_for_both_methods() {
    for method in [Method::Exhaustive, Method::Greedy] {
        let run = run_verify(&verify_config(Theorem::One, method)).expect("config is valid");
        assert!(
            run.failures.is_empty(),
            "{method:?} selection violated the k_t*k_r/(n_t*n_r) bound: {:?}",
            run.failures
        );
        assert!(
            run.min_slack_bits >= -1e-9,
            "{method:?} min slack {} below tolerance",
            run.min_slack_bits
        );
    }
    println!(
        "[PASS] criterion 1: multiplicative bound held for exhaustive and greedy selection \
         over 1000 seeded channels, dims 1-6, three powers, every subset size pair"
    );
}

#[test]
fn criterion_02_additive_gap_bound_holds_on_ensemble() {
    let run =
        run_verify(&verify_config(Theorem::Two, Method::Exhaustive)).expect("config is valid");
    assert!(
        run.failures.is_empty(),
        "exhaustive selection violated the min-ratio-minus-gap bound: {:?}",
        run.failures
    );
    println!(
        "[PASS] criterion 2: additive-gap bound held for exhaustive selection over the same \
         1000-channel ensemble (min slack {:.6} bits)",
        run.min_slack_bits
    );
}

#[test]
fn criterion_03_all_ones_low_power_ratio_is_tight() {
    for (n, predicted) in [(3usize, 1.0 / 9.0), (2usize, 0.25)] {
        let report = run_tight(&TightConfig {
            case: TightCase::AllOnesLowSnr,
            n_t: n,
            n_r: n,
            k_t: 1,
            k_r: 1,
            power: 1e-6,
        })
        .expect("config is valid");
        assert!(
            (report.ratio_predicted - predicted).abs() < 1e-15,
            "predicted ratio should be 1/{}",
            n * n
        );
        assert!(
            report.abs_error <= 1e-4,
            "all-ones {n}x{n} k=1x1 at P=1e-6: |ratio - {predicted}| = {} > 1e-4",
            report.abs_error
        );
    }
    println!(
        "[PASS] criterion 3: all-ones low-power capacity ratio matched k_t*k_r/(n_t*n_r) \
         within 1e-4 for 3x3 and 2x2 single-antenna selections"
    );
}

#[test]
fn criterion_04_parallel_channel_ratio_and_gap_are_exact() {
    let report = run_tight(&TightConfig {
        case: TightCase::Parallel,
        n_t: 4,
        n_r: 4,
        k_t: 2,
        k_r: 2,
        power: 100.0,
    })
    .expect("config is valid");

    let expected_selected = 2.0 * 101f64.log2();
    assert!(
        (report.selected_capacity_bits - expected_selected).abs() <= 1e-9,
        "selected capacity {} != 2*log2(101)",
        report.selected_capacity_bits
    );
    assert!(
        (report.ratio_observed - 0.5).abs() <= 1e-9,
        "capacity ratio {} != 1/2",
        report.ratio_observed
    );

    // The slack against the additive-gap bound is exactly the gap term
    // G = log2(C(4,2)^2) = log2(36), because the retained fraction is met
    // with equality on this channel.
    let channel = gen_parallel(4).expect("dims are valid");
    let bound = theorem2_bound(&channel, 100.0, 2, 2, report.selected_capacity_bits)
        .expect("inputs are valid");
    let expected_gap = 36f64.log2();
    assert!(
        (bound.slack_bits - expected_gap).abs() <= 1e-9,
        "slack {} != log2(36) = {expected_gap}",
        bound.slack_bits
    );
    assert!(
        (bound.gap_g_bits - expected_gap).abs() <= 1e-12,
        "gap term {} != log2(36)",
        bound.gap_g_bits
    );

    println!(
        "[PASS] criterion 4: parallel 4x4 selection gave capacity 2*log2(101), ratio 1/2, \
         and bound slack log2(36), each within 1e-9"
    );
}

#[test]
fn criterion_05_subset_charpoly_sum_matches_derivative() {
    for (i, f) in gram_ensemble().iter().enumerate() {
        let n = f.n();
        for k in 1..n {
            let rep = verify_property1(f, k, 1e-8).expect("arguments are valid");
            assert!(
                rep.passed,
                "form {i} (n={n}), k={k}: relative error {} > 1e-8",
                rep.max_rel_error
            );
        }
        let rep = verify_derivative_special_case(f, 1e-8).expect("n >= 2");
        assert!(
            rep.passed,
            "form {i} (n={n}), k=n-1 linear case: relative error {} > 1e-8",
            rep.max_rel_error
        );
    }
    println!(
        "[PASS] criterion 5: subset characteristic-polynomial sums matched the scaled \
         derivatives within 1e-8 on 200 Gram forms, dims 2-7, every k, including k = n-1"
    );
}

#[test]
fn criterion_06_induction_step_holds_on_ensemble() {
    for (i, f) in gram_ensemble().iter().enumerate() {
        let n = f.n();
        for k in 1..n {
            let rep = verify_induction_step(f, k, 1e-8).expect("arguments are valid");
            assert!(
                rep.passed,
                "form {i} (n={n}), k={k}: relative error {} > 1e-8",
                rep.max_rel_error
            );
        }
    }
    println!(
        "[PASS] criterion 6: differentiating the k-subset sum reproduced the (k+1)-subset \
         sum within 1e-8 on the same 200-form ensemble"
    );
}

#[test]
fn criterion_07_average_minor_determinant_bound_holds() {
    for (i, f) in gram_ensemble().iter().enumerate() {
        let rep = verify_avg_det_bound(f, 1e-9).expect("forms are positive definite");
        assert!(
            rep.passed,
            "form {i} (n={}): relative violation {} > 1e-9",
            f.n(),
            rep.max_rel_error
        );
    }

    // Equality case: at the identity every principal minor determinant is 1,
    // so the average equals det^((n-1)/n) exactly.
    for n in 2..=7usize {
        let eye = HermitianForm::new(&ComplexMatrix::identity(n).expect("n >= 1"))
            .expect("identity is Hermitian");
        let full = SubsetIndex::full(n);
        let mut sum = 0.0;
        for i in 1..=n {
            let minor = eye
                .principal_submatrix(&full.without(i).expect("member exists"))
                .expect("subset is valid");
            sum += minor.det().expect("spectrum is positive");
        }
        let average = sum / n as f64;
        let reference = eye
            .det()
            .expect("spectrum is positive")
            .powf((n as f64 - 1.0) / n as f64);
        assert!(
            (average - reference).abs() <= 1e-12,
            "identity {n}x{n}: |{average} - {reference}| > 1e-12"
        );
    }

    println!(
        "[PASS] criterion 7: average principal-minor determinant dominated det^((n-1)/n) \
         within 1e-9 on the ensemble, with equality at the identity to 1e-12"
    );
}

#[test]
fn criterion_08_log_det_duality_holds_including_rectangular() {
    let mut shapes: Vec<(usize, usize)> = vec![(6, 3), (3, 6), (6, 1), (1, 6), (6, 6)];
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(0xD0A1, 0));
    for _ in 0..195 {
        shapes.push((rng.random_range(1..=6), rng.random_range(1..=6)));
    }
    for (i, (n_t, n_r)) in shapes.iter().copied().enumerate() {
        let ch = gen_gaussian(n_t, n_r, derive_seed(0xD0A1, i as u64 + 1)).expect("valid dims");
        for power in POWERS {
            let direct = gram(ch.matrix(), power)
                .expect("power is positive")
                .log_det()
                .expect("spectrum is positive");
            let dual = dual_gram(ch.matrix(), power)
                .expect("power is positive")
                .log_det()
                .expect("spectrum is positive");
            assert!(
                (direct - dual).abs() <= 1e-9,
                "shape {n_t}x{n_r}, P={power}: |{direct} - {dual}| > 1e-9"
            );
        }
    }
    println!(
        "[PASS] criterion 8: receive- and transmit-side Gram log-determinants agreed within \
         1e-9 across 200 channels including 6x3 and 3x6"
    );
}

#[test]
fn criterion_09_greedy_dominated_and_capacity_monotone() {
    // Greedy never beats the exhaustive optimum, for any subset sizes,
    // either pruning order, and all three powers.
    for trial in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(0x90D, trial));
        let ch = random_channel(&mut rng, 5);
        for power in POWERS {
            for k_t in 1..=ch.n_t() {
                for k_r in 1..=ch.n_r() {
                    let best = exhaustive_best(&ch, power, k_t, k_r, DEFAULT_ENUMERATION_CAP)
                        .expect("within cap");
                    for order in [PruneOrder::RxFirst, PruneOrder::TxFirst] {
                        let greedy =
                            greedy_prune(&ch, power, k_t, k_r, order).expect("arguments are valid");
                        assert!(
                            greedy.capacity_bits <= best.capacity_bits + 1e-9,
                            "trial {trial}, k={k_t}x{k_r}, P={power}, {order:?}: greedy {} \
                             exceeds optimum {}",
                            greedy.capacity_bits,
                            best.capacity_bits
                        );
                    }
                }
            }
        }
    }

    // Capacity never decreases when a subset pair grows.
    for pair in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(0x707, pair));
        let ch = random_channel(&mut rng, 6);
        let big_tx = random_nonempty_subset(&mut rng, ch.n_t());
        let big_rx = random_nonempty_subset(&mut rng, ch.n_r());
        let small_tx = random_nonempty_subset_of(&mut rng, &big_tx);
        let small_rx = random_nonempty_subset_of(&mut rng, &big_rx);
        let power = POWERS[(pair % 3) as usize];
        let small = ch
            .subchannel(&small_tx, &small_rx)
            .expect("subsets are valid")
            .capacity(power)
            .expect("power is positive")
            .capacity_bits;
        let big = ch
            .subchannel(&big_tx, &big_rx)
            .expect("subsets are valid")
            .capacity(power)
            .expect("power is positive")
            .capacity_bits;
        assert!(
            small <= big + 1e-9,
            "pair {pair}: nested capacity {small} exceeds {big}"
        );
    }

    println!(
        "[PASS] criterion 9: greedy stayed within 1e-9 of the exhaustive optimum everywhere, \
         and capacity was monotone over 1000 random nested subset pairs"
    );
}

#[test]
fn criterion_10_containment_count_formula_is_exact() {
    for n_r in 1..=8usize {
        for n_t in 1..=n_r {
            for k_r in n_t..=n_r {
                let check = verify_case2_tuple_count(n_r, n_t, k_r).expect("arguments are valid");
                assert!(
                    check.equal,
                    "(n_r={n_r}, n_t={n_t}, k_r={k_r}): enumerated {} != formula {}",
                    check.enumerated, check.formula
                );
            }
        }
    }
    println!(
        "[PASS] criterion 10: containment-count formula matched exhaustive enumeration for \
         every (n_r <= 8, n_t <= n_r, n_t <= k_r <= n_r)"
    );
}
