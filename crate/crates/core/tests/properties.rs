//! Path equivalences on random programs.

mod common;

use common::{arb_program, arb_symmetric_program};
use kolam_core::*;
use proptest::prelude::*;

fn all_options() -> impl Iterator<Item = CountOptions> {
    [false, true].into_iter().flat_map(|split| {
        [false, true].into_iter().flat_map(move |reduce| {
            [Mode::A0, Mode::Exact].into_iter().map(move |mode| CountOptions {
                split,
                reduce,
                mode,
                ..CountOptions::default()
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn brute_force_matches_polynomial(program in arb_program(12)) {
        let poly = component_polynomial(&program).unwrap();
        let dist = brute_distribution(&program, 24).unwrap();
        prop_assert_eq!(dist.to_poly(), poly.clone());
        prop_assert_eq!(poly.total().unwrap(), 1u128 << program.site_count());
        prop_assert_eq!(poly.coefficient(0), 0);
    }

    #[test]
    fn single_assignments_agree_with_the_histogram(program in arb_program(8)) {
        let d = program.site_count();
        let mut hist = std::collections::BTreeMap::new();
        for index in 0..1u64 << d {
            let c = evaluate_assignment(&program, &Assignment::from_index(index, d)).unwrap();
            *hist.entry(c).or_insert(0u128) += 1;
        }
        prop_assert_eq!(hist, brute_distribution(&program, 24).unwrap().counts);
    }

    #[test]
    fn every_option_gives_the_same_count(program in arb_symmetric_program(18)) {
        let reference = component_polynomial(&program).unwrap().coefficient(1);
        for opts in all_options() {
            prop_assert_eq!(count_infinite(&program, &opts).unwrap(), reference, "{:?}", opts);
        }
    }

    #[test]
    fn unsplit_options_on_asymmetric_programs(program in arb_program(18)) {
        let reference = component_polynomial(&program).unwrap().coefficient(1);
        for opts in all_options().filter(|o| !o.split) {
            prop_assert_eq!(count_infinite(&program, &opts).unwrap(), reference);
        }
    }

    #[test]
    fn reduction_keeps_symmetry(program in arb_symmetric_program(18)) {
        prop_assert!(boundary_reduce(&program).unwrap().program.is_palindromic());
    }

    #[test]
    fn mirror_and_reversal_keep_the_polynomial(program in arb_program(14)) {
        let poly = component_polynomial(&program).unwrap();
        prop_assert_eq!(component_polynomial(&program.mirror()).unwrap(), poly.clone());
        prop_assert_eq!(component_polynomial(&program.reversed()).unwrap(), poly);
    }

    #[test]
    fn enumeration_matches_the_count(program in arb_program(12)) {
        let solutions: Vec<Assignment> = enumerate_solutions(&program, 24).unwrap().collect();
        prop_assert_eq!(solutions.len() as u128, brute_distribution(&program, 24).unwrap().single());
        prop_assert!(solutions.windows(2).all(|w| w[0].index() < w[1].index()));
        for s in &solutions {
            prop_assert_eq!(evaluate_assignment(&program, s).unwrap(), 1);
        }
    }

    #[test]
    fn state_support_is_bounded(program in arb_symmetric_program(18)) {
        let stats = evolution_stats(&program, false).unwrap();
        prop_assert!(stats.distinct_basis_states as u128 <= double_factorial(program.chords()).unwrap());
        let split_half: usize = program.split_halves().unwrap().0.iter().map(Row::len).sum();
        prop_assert!(stats.surviving_diagram_weight <= 1u128 << split_half);
    }

    #[test]
    fn reduced_program_is_valid_and_smaller(program in arb_program(18)) {
        let reduced = boundary_reduce(&program).unwrap();
        prop_assert_eq!(reduced.program.validate(), Ok(()));
        prop_assert!(reduced.program.site_count() + reduced.forced_sites.len() == program.site_count());
        prop_assert_eq!(reduced.program.strands() + reduced.removed_strands.len(), program.strands());
    }
}

#[test]
fn brute_range_partitions_merge() {
    let program = MorseProgram::diamond(2);
    let whole = brute_distribution(&program, 24).unwrap();
    let mut merged = ComponentDistribution::default();
    for chunk in 0..8u64 {
        merged.merge(&brute_distribution_range(&program, chunk * 8192..(chunk + 1) * 8192).unwrap());
    }
    assert_eq!(merged, whole);
    assert_eq!(whole.total(), 65_536);
    assert_eq!(whole.single(), 240);
}
