use acgw::acgw::{compose_flat, span_equiv, Acgw, FlatMor};
use acgw::chains::{coker_hor, ker_ver, validate_chain_map, ChainComplex};
use acgw::finset::FinSet;
use acgw::gen::{GenConfig, Generator};
use acgw::homology::{
    cardinality_law, check_functoriality, h_on_map, homology_at, homology_complex, homology_grid, is_exact,
    is_quasi_iso, qiso_iff_complement_exact_hor, qiso_iff_complement_exact_ver, Direction,
};
use acgw::linear::Linear;
use acgw::oracle::{disagreements, free_complex, linearize_weak};
use acgw::setforms::{
    check_snake_closed_forms, exact_by_partition, h_on_map_closed, homology_generic_mask, homology_mask,
    qiso_by_sets, zigzag_partition_violations,
};
use acgw::snake::{les_of_ses, snake_strong, snake_weak};
use proptest::prelude::*;

fn gen(seed: u64) -> Generator {
    Generator::new(GenConfig::with_seed(seed)).unwrap()
}

#[test]
fn homology_orders_agree_and_count() {
    let mut g = gen(100);
    for _ in 0..200 {
        let x = g.complex().unwrap();
        for i in x.lo() - 1..=x.hi() + 1 {
            homology_grid(&FinSet, &x, i).unwrap();
            assert!(cardinality_law(&FinSet, &x, i).unwrap());
            assert_eq!(homology_generic_mask(&x, i).unwrap(), homology_mask(&x, i));
        }
        assert_eq!(is_exact(&FinSet, &x).unwrap(), exact_by_partition(&x));
    }
}

#[test]
fn oracle_agrees() {
    let mut g = gen(101);
    for _ in 0..200 {
        let x = g.complex().unwrap();
        assert!(free_complex(&x, 2).squares_to_zero());
        assert!(disagreements(&x, 2).unwrap().is_empty());
        assert!(disagreements(&x, 3).unwrap().is_empty());
    }
}

#[test]
fn weak_and_strong_snakes() {
    let mut g = gen(102);
    for _ in 0..150 {
        let s = g.weak_snake().unwrap();
        let out = snake_weak(&FinSet, &s).unwrap();
        assert!(zigzag_partition_violations(&out.zigzag).is_empty());
        assert!(check_snake_closed_forms(&s, &out).is_empty());
        let t = g.strong_snake().unwrap();
        let out = snake_strong(&FinSet, &t).unwrap();
        assert!(zigzag_partition_violations(&out.zigzag).is_empty());
        assert!(out.zigzag.is_exact(&FinSet));
    }
}

#[test]
fn linear_snakes_from_random_sets() {
    let mut g = gen(103);
    let lin = Linear::new(2).unwrap();
    for _ in 0..40 {
        let s = g.weak_snake().unwrap();
        let l = linearize_weak(&s, 2, |_, n| g.invertible(n)).unwrap();
        let out = snake_weak(&lin, &l).unwrap();
        assert!(out.zigzag.is_exact(&lin));
        assert_eq!(out.zigzag.alternating_sum(&lin), 0);
        let sizes: Vec<usize> = out.zigzag.objects(&lin).iter().map(|o| o.dim).collect();
        let set_out = snake_weak(&FinSet, &s).unwrap();
        let set_sizes: Vec<usize> = set_out.zigzag.objects(&FinSet).iter().map(|o| o.len()).collect();
        assert_eq!(sizes, set_sizes);
    }
}

#[test]
fn les_is_exact() {
    let mut g = gen(104);
    for _ in 0..80 {
        let s = g.ses().unwrap();
        let z = les_of_ses(&FinSet, &s).unwrap();
        assert!(z.is_exact(&FinSet));
        assert!(zigzag_partition_violations(&z).is_empty());
    }
}

#[test]
fn induced_spans_and_functoriality() {
    let mut g = gen(105);
    for _ in 0..80 {
        let (f, h) = g.composable_pair().unwrap();
        assert!(check_functoriality(&FinSet, &f, &h).unwrap());
        let (lo, hi) = f.degree_hull();
        for i in lo..=hi {
            let a = h_on_map(&FinSet, &f, i).unwrap();
            let b = h_on_map_closed(&f, i).unwrap();
            assert!(span_equiv(&FinSet, &a, &b));
        }
        assert_eq!(is_quasi_iso(&FinSet, &f).unwrap(), qiso_by_sets(&f));
    }
}

#[test]
fn qiso_matches_complement_exactness() {
    let mut g = gen(106);
    for _ in 0..100 {
        let (a, b) = qiso_iff_complement_exact_hor(&FinSet, &g.hor_mor().unwrap()).unwrap();
        assert_eq!(a, b);
        let (a, b) = qiso_iff_complement_exact_ver(&FinSet, &g.ver_mor().unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn homology_complex_is_quasi_isomorphic() {
    let mut g = gen(107);
    for _ in 0..80 {
        let x = g.complex().unwrap();
        for dir in [Direction::Horizontal, Direction::Vertical] {
            let (_, f) = homology_complex(&x, dir).unwrap();
            assert!(validate_chain_map(&FinSet, &f).is_empty());
            assert!(is_quasi_iso(&FinSet, &f).unwrap());
        }
    }
}

#[test]
fn linear_parity() {
    let mut g = gen(108);
    let lin = Linear::new(2).unwrap();
    for _ in 0..40 {
        let (x, l) = g.linear_complex().unwrap();
        assert!(acgw::chains::validate_complex(&lin, &l).is_empty());
        for i in x.lo()..=x.hi() {
            assert_eq!(homology_at(&lin, &l, i).unwrap().dim, homology_at(&FinSet, &x, i).unwrap().len());
            assert!(cardinality_law(&lin, &l, i).unwrap());
        }
    }
}

#[test]
fn coker_ker_round_trip() {
    let mut g = gen(109);
    for _ in 0..60 {
        let f = g.hor_mor().unwrap();
        let (z, c) = coker_hor(&FinSet, &f).unwrap();
        let (k, _) = ker_ver(&FinSet, &c).unwrap();
        assert!(k.same_as(&FinSet, &f.src));
        assert!(acgw::chains::validate_complex(&FinSet, &z).is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_spans_compose(seed in 0u64..10_000) {
        let x = gen(seed).complex().unwrap();
        for i in x.degrees() {
            let o = x.obj(&FinSet, i);
            let id = FlatMor::identity(&FinSet, &o);
            let t = x.tr(&FinSet, i);
            prop_assert!(span_equiv(&FinSet, &compose_flat(&FinSet, &id, &t).unwrap(), &t));
        }
    }

    #[test]
    fn generated_maps_validate(seed in 0u64..10_000) {
        let f = gen(seed).chain_map().unwrap();
        prop_assert!(validate_chain_map(&FinSet, &f).is_empty());
    }

    #[test]
    fn empty_is_exact(lo in -3i64..3) {
        let x: ChainComplex<FinSet> = ChainComplex::concentrated(lo, FinSet.empty());
        prop_assert!(is_exact(&FinSet, &x).unwrap());
    }
}
