mod common;

use common::*;
use hilbert_core::cone::Cone;
use hilbert_core::fm::FmOptions;
use hilbert_core::linalg::{IntVector, LatticeMode};
use hilbert_core::primal::triangulated_cone;
use hilbert_core::shelling::{
    compute_w_sets, eval_polynomial, h_vector, hilbert_series, is_shelling, shelled_triangulation,
    CountingFormula, LiftOptions,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn polytope() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (3..=4usize)
        .prop_flat_map(|d| prop::collection::vec(prop::collection::vec(0..=3i64, d - 1), d..=7))
        .prop_map(|pts| {
            let mut gens: Vec<Vec<i64>> = pts
                .into_iter()
                .map(|mut p| {
                    p.push(1);
                    p
                })
                .collect();
            gens.sort();
            gens.dedup();
            gens
        })
        .prop_filter("full dimensional", |g| !g.is_empty() && rank(g) == g[0].len())
}

fn options(weights: &[i64], interior: &[i64]) -> LiftOptions {
    LiftOptions {
        initial_weights: Some(weights.iter().map(|&w| BigInt::from(w)).collect()),
        interior_coefficients: Some(interior.iter().map(|&c| BigInt::from(c)).collect()),
        ..LiftOptions::default()
    }
}

fn lex_volume(gens: &[Vec<i64>]) -> BigInt {
    triangulated_cone(&big(gens), LatticeMode::AmbientLattice, FmOptions::default())
        .unwrap()
        .1
        .total_multiplicity()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn h_vector_is_invariant_and_sums_to_the_volume(
        gens in polytope(),
        weights in prop::collection::vec(1..=15i64, 8),
        interior in prop::collection::vec(1..=15i64, 9),
    ) {
        let cone = Cone::from_generators(&big(&gens), LatticeMode::AmbientLattice).unwrap();
        let base = hilbert_series(&cone, &LiftOptions::default()).unwrap();
        let m = base.generators.len();
        let other = hilbert_series(&cone, &options(&weights[..m], &interior[..=m])).unwrap();
        prop_assert_eq!(&other.h_vector, &base.h_vector);
        prop_assert_eq!(base.h_vector.sum(), lex_volume(&gens));
        prop_assert!(is_shelling(&other.triangulation.cells, gens[0].len()));
        for k in 0..=3 {
            prop_assert_eq!(
                eval_polynomial(&base.polynomial, k),
                BigRational::from_integer(BigInt::from(ehrhart_count(&gens, k)))
            );
        }
    }

    #[test]
    fn both_counting_formulas_agree(gens in polytope()) {
        let cone = Cone::from_generators(&big(&gens), LatticeMode::AmbientLattice).unwrap();
        let series = hilbert_series(&cone, &LiftOptions::default()).unwrap();
        let shelled = compute_w_sets(&series.triangulation.cells);
        let grading = series.h_vector.grading.clone();
        let union = h_vector(&shelled, &series.generators, &grading, CountingFormula::Union);
        let difference = h_vector(&shelled, &series.generators, &grading, CountingFormula::Difference);
        prop_assert_eq!(union, difference);
    }

    #[test]
    fn lex_volume_ignores_insertion_order(gens in polytope(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(lex_volume(&gens), lex_volume(&shuffled));
    }
}

#[test]
fn first_cell_of_a_shelling_has_empty_w() {
    let square: Vec<IntVector> = big(&[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]);
    let (tri, _) = shelled_triangulation(&square, &LiftOptions::default()).unwrap();
    let shelled = compute_w_sets(&tri.cells);
    assert!(shelled[0].w.is_empty());
    assert_eq!(shelled.iter().map(|s| s.w.len()).sum::<usize>(), 1);
}

#[test]
fn non_shelling_orders_are_rejected() {
    use hilbert_core::primal::SimplicialCell;
    // two triangles sharing only a vertex, joined later by a third
    let gens = big(&[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![2, 1, 1], vec![1, 2, 1]]);
    let cells = vec![
        SimplicialCell::new(vec![0, 1, 2], &gens),
        SimplicialCell::new(vec![2, 3, 4], &gens),
    ];
    assert!(!is_shelling(&cells, 3));
}
