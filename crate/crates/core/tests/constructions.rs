use itertools::Itertools;
use kuniform::algebra::SymbolGroup;
use kuniform::constructions::{
    code_to_oa, coset_partition, diagonal_repartition, drop_column, mixture_from_partition, prefix_partition,
    product_construction, quadratic_evaluation_candidate, verify_difference_scheme, CodeClaims, Provenance,
};
use kuniform::oa::{
    is_irredundant, kronecker_sum_scalar, max_strength, min_hamming_distance, verify_mixed_state_partition,
    verify_strength, MinDistance, SymbolArray,
};
use kuniform::quantum::{is_k_uniform, lower_purity, mixture_purity, ReductionLimits};
use kuniform::{fixtures, recipes, ExactMixture, Rational};

/// Naive difference-scheme oracle: for each column tuple, count the
/// differences against the first column directly.
fn naive_scheme(a: &SymbolArray, k: usize, g: &SymbolGroup) -> bool {
    let cells = a.levels().pow(k as u32 - 1);
    (0..a.cols()).combinations(k).all(|cols| {
        let mut counts = std::collections::HashMap::new();
        for row in a.iter_rows() {
            let diff: Vec<u8> = cols[1..].iter().map(|&c| g.sub(row[c], row[cols[0]])).collect();
            *counts.entry(diff).or_insert(0usize) += 1;
        }
        counts.len() == cells && counts.values().all(|&c| c * cells == a.rows())
    })
}

#[test]
fn printed_scheme_and_its_expansion() {
    let ds = fixtures::scheme(fixtures::DS_16_6_4).unwrap();
    assert_eq!(ds.provenance(), &Provenance::Printed);
    let g = SymbolGroup::new(4).unwrap();
    assert!(verify_difference_scheme(ds.array(), 3, &g));
    assert!(naive_scheme(ds.array(), 3, &g));
    assert!(!naive_scheme(ds.array(), 4, &g));

    let p = recipes::printed_scheme_blocks().unwrap();
    let parent = p.parent();
    assert_eq!((parent.rows(), parent.cols()), (64, 6));
    assert_eq!(max_strength(parent), 3);
    assert!(is_irredundant(parent, 3).unwrap());
    assert_eq!(p.len(), 16);
    // a_2 ⊕ (4), read on the inner columns.
    let inner = recipes::printed_scheme_inner_blocks().unwrap();
    let a2 = SymbolArray::from_digit_rows(4, &["0121", "1030", "2303", "3212"]).unwrap();
    assert_eq!(inner.block(1), a2);
}

#[test]
fn printed_scheme_mixtures() {
    let limits = ReductionLimits::default();
    let inner = recipes::printed_scheme_inner_blocks().unwrap();
    let mix: ExactMixture = mixture_from_partition(&inner).unwrap();
    assert_eq!((mix.parties(), mix.len()), (4, 16));
    assert_eq!(mixture_purity(&mix), Rational::new(1, 16));
    assert!(is_k_uniform(&mix, 3, limits).unwrap().is_uniform());

    let shift = recipes::shift_partition().unwrap();
    let a = shift.block(0);
    assert_eq!(min_hamming_distance(&a), MinDistance::Finite(4));
    let g = SymbolGroup::new(4).unwrap();
    for j in 1..4u8 {
        assert_eq!(shift.block(j as usize), kronecker_sum_scalar(j, &a, &g).unwrap());
    }
    let mix: ExactMixture = mixture_from_partition(&shift).unwrap();
    assert_eq!((mix.parties(), mix.len()), (5, 4));
    assert_eq!(mixture_purity(&mix), Rational::new(1, 4));
    assert!(is_k_uniform(&mix, 3, limits).unwrap().is_uniform());
}

#[test]
fn complement_pair_and_lowering() {
    let p = recipes::complement_pair().unwrap();
    let (a1, a2) = (p.block(0), p.block(1));
    assert_eq!(min_hamming_distance(&a1), MinDistance::Finite(4));
    assert_eq!(min_hamming_distance(&a2), MinDistance::Finite(4));
    assert_eq!(max_strength(&a1), 2);
    assert_eq!(max_strength(p.parent()), 3);
    let mix: ExactMixture = mixture_from_partition(&p).unwrap();
    assert_eq!(mixture_purity(&mix), Rational::new(1, 2));
    let limits = ReductionLimits::default();
    let rep = is_k_uniform(&mix, 3, limits).unwrap();
    assert_eq!(rep.subsets_checked, 35);
    assert!(rep.is_uniform());

    let g = SymbolGroup::new(2).unwrap();
    let low = lower_purity(&mix, 6, 1, &g).unwrap();
    assert!(low.overlap.is_none());
    assert_eq!(low.purity, Rational::new(1, 4));
    assert!(is_k_uniform(&low.mixture, 3, limits).unwrap().is_uniform());
    // Flipping the same qubit again recreates the originals.
    let twice = lower_purity(&low.mixture, 6, 1, &g).unwrap();
    assert!(twice.overlap.is_some());
}

#[test]
fn golay_chain() {
    let g = fixtures::code(fixtures::GOLAY_11).unwrap();
    assert_eq!((g.rows(), g.cols(), g.levels()), (243, 11, 3));
    assert!(verify_strength(&g, 4));
    assert_eq!(min_hamming_distance(&g), MinDistance::Finite(6));
    let dropped = drop_column(&g, 10).unwrap();
    assert_eq!(min_hamming_distance(&dropped), MinDistance::Finite(5));
    assert!(is_irredundant(&dropped, 4).unwrap());
    let limits = ReductionLimits::default();
    for x in 1..=4 {
        let p = prefix_partition(&dropped, x, 4).unwrap();
        assert_eq!(p, recipes::golay_prefix(x).unwrap());
        assert_eq!(p.len(), 3usize.pow(x as u32));
        assert!(verify_mixed_state_partition(&p, 4).passed());
        let mix: ExactMixture = mixture_from_partition(&p).unwrap();
        assert_eq!(mix.parties(), 10 - x);
        assert_eq!(mixture_purity(&mix), Rational::new(1, 3i128.pow(x as u32)));
        assert!(is_k_uniform(&mix, 4, limits).unwrap().is_uniform(), "x={x}");
    }
    assert!(prefix_partition(&dropped, 5, 4).is_err());
}

#[test]
fn code_claims_are_enforced() {
    let mut spec = fixtures::code_spec(fixtures::GOLAY_11).unwrap();
    let claims = spec.claims.unwrap();
    spec.claims = Some(CodeClaims { distance: 7, ..claims });
    assert!(code_to_oa(&spec).is_err());
    for name in [
        fixtures::GOLAY_12,
        fixtures::QR_11,
        fixtures::QR_12,
        fixtures::QUATERNARY_4_2,
    ] {
        let spec = fixtures::code_spec(name).unwrap();
        let a = code_to_oa(&spec).unwrap();
        assert_eq!(a.rows(), spec.q.pow(spec.dimension() as u32), "{name}");
        assert_eq!(
            min_hamming_distance(&a),
            MinDistance::Finite(spec.claims.unwrap().distance),
            "{name}"
        );
    }
}

#[test]
fn quadratic_candidate_is_not_a_scheme() {
    let a = quadratic_evaluation_candidate(3).unwrap();
    let g = SymbolGroup::new(3).unwrap();
    assert!(!naive_scheme(&a, 3, &g));
    assert!(!verify_difference_scheme(&a, 3, &g));
}

#[test]
fn product_pieces() {
    let g = SymbolGroup::new(4).unwrap();
    let code = fixtures::code(fixtures::QUATERNARY_4_2).unwrap();
    let left = coset_partition(code.array(), &g).unwrap();
    assert_eq!((left.len(), left.block_size()), (16, 16));
    for i in 0..left.len() {
        assert_eq!(min_hamming_distance(&left.block(i)), MinDistance::Finite(3));
        assert!(verify_strength(&left.block(i), 2));
    }
    let right = coset_partition(recipes::shift_partition().unwrap().parent(), &g).unwrap();
    assert_eq!((right.len(), right.block_size()), (16, 64));
    for i in 0..right.len() {
        // 64 words of length 5 over GF(4) cannot beat the Singleton bound 3;
        // the 16-row bands inside each coset reach 4.
        let block = right.block(i);
        assert_eq!(min_hamming_distance(&block), MinDistance::Finite(3));
        assert!(verify_strength(&block, 3));
        for band in 0..4 {
            let rows: Vec<usize> = (band * 16..(band + 1) * 16).collect();
            assert_eq!(min_hamming_distance(&block.select_rows(&rows)), MinDistance::Finite(4));
        }
    }
    let prod = product_construction(&left, &right).unwrap();
    assert_eq!((prod.array.rows(), prod.array.cols()), (16384, 9));
    assert_eq!(prod.array.claimed_strength(), 6);
    assert!(verify_strength(&prod.array, 6));
    assert_eq!(prod.super_blocks.len(), 16);
    let blocks = diagonal_repartition(&prod.super_blocks[0]).unwrap();
    assert_eq!(blocks.len(), 64);
    for b in &blocks {
        let rows = prod.array.select_rows(b);
        assert!(min_hamming_distance(&rows).at_least(7));
    }
    let p = recipes::ququart_product().unwrap();
    let report = verify_mixed_state_partition(&p, 6);
    assert!(report.passed());
    assert_eq!(report.blocks, 1024);
}
