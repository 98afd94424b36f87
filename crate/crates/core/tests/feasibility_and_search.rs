use std::time::{Duration, Instant};

use itertools::Itertools;
use kuniform::algebra::SymbolGroup;
use kuniform::constructions::{partition_search, search_difference_scheme, verify_difference_scheme, PartitionSearch};
use kuniform::oa::{feasibility_bound, verify_mixed_state_partition, ExistenceFacts, FeasibilityVerdict, OaParams};
use kuniform::search::{SearchBudget, SearchOutcome};
use kuniform::{fixtures, recipes};

fn sorted_blocks(blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    blocks
        .iter()
        .map(|b| b.iter().copied().sorted().collect())
        .sorted()
        .collect()
}

#[test]
fn seven_qutrit_bound() {
    let rep = feasibility_bound(729, 7, 3, 5, 1, &fixtures::facts().unwrap()).unwrap();
    assert_eq!(rep.verdict, FeasibilityVerdict::MinBlocks(243));
    assert_eq!(rep.min_blocks(), Some(243));
    assert_eq!(rep.max_block_size, Some(3));
}

#[test]
fn nonexistence_fact_rules_out_three_blocks() {
    let facts = fixtures::facts().unwrap();
    assert!(facts.known_nonexistent(&OaParams::new(81, 8, 3, 4)).is_some());
    let rep = feasibility_bound(243, 8, 3, 4, 3, &facts).unwrap();
    assert!(rep.is_excluded(3));
    let reason = &rep.excluded.iter().find(|(m, _)| *m == 3).unwrap().1;
    assert!(reason.contains("OA(81,8,3,4)"), "{reason}");
    let blind = feasibility_bound(243, 8, 3, 4, 3, &ExistenceFacts::default()).unwrap();
    assert!(!blind.is_excluded(3));
}

#[test]
fn small_scheme_found_quickly() {
    let t = Instant::now();
    let res = search_difference_scheme(4, 4, 2, 3, SearchBudget::time(Duration::from_secs(1))).unwrap();
    assert!(t.elapsed() < Duration::from_secs(1));
    let ds = res.outcome.found().unwrap();
    assert!(verify_difference_scheme(ds.array(), 3, &SymbolGroup::new(2).unwrap()));
}

#[test]
fn impossible_schemes_are_proven_absent() {
    let res = search_difference_scheme(2, 3, 2, 2, SearchBudget::UNLIMITED).unwrap();
    assert_eq!(res.outcome, SearchOutcome::ProvenNonexistent);
    let res = search_difference_scheme(8, 5, 2, 4, SearchBudget::UNLIMITED).unwrap();
    assert_eq!(res.outcome, SearchOutcome::ProvenNonexistent);
}

#[test]
fn eighteen_row_scheme_is_reproducible() {
    let res = search_difference_scheme(18, 5, 3, 3, SearchBudget::default()).unwrap();
    let ds = res.outcome.found().unwrap();
    assert_eq!(ds.array(), fixtures::scheme(fixtures::DS_18_5_3).unwrap().array());
}

#[test]
fn budget_exhaustion_is_reported() {
    let res = search_difference_scheme(18, 5, 3, 3, SearchBudget::nodes(10)).unwrap();
    assert_eq!(res.outcome, SearchOutcome::BudgetExhausted);
}

#[test]
fn partition_search_recovers_shift_partition() {
    let shift = recipes::shift_partition().unwrap();
    let t = Instant::now();
    let params = PartitionSearch {
        blocks: 4,
        k: 3,
        block_strength: None,
    };
    let res = partition_search(shift.parent(), params, SearchBudget::default()).unwrap();
    assert!(t.elapsed() < Duration::from_secs(60));
    let found = res.outcome.found().unwrap();
    assert_eq!(sorted_blocks(found.blocks()), sorted_blocks(shift.blocks()));
    assert!(verify_mixed_state_partition(&found, 3).passed());
}

#[test]
fn partition_search_proves_absence() {
    // Two blocks of eight rows at distance 5 would need a length-5 binary
    // code of size 8 with distance 5.
    let even = fixtures::oa(fixtures::EVEN_WEIGHT).unwrap();
    let params = PartitionSearch {
        blocks: 2,
        k: 4,
        block_strength: None,
    };
    let res = partition_search(&even, params, SearchBudget::UNLIMITED).unwrap();
    assert!(matches!(res.outcome, SearchOutcome::ProvenNonexistent));
}
