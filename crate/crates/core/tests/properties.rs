//! Property suites: homology and SNF identities, link accounting, subcomplex stability,
//! spines and scl invariants.

mod common;

use proptest::prelude::*;

use sclcx::cellcx::{parse_cells, print_cells};
use sclcx::homlin::Ring;
use sclcx::par::ExecPolicy;
use sclcx::sclopt::{bavard_sandwich, scl_lp, scl_upper_from_surface, OneChain, RotStructure, SclValue};
use sclcx::veriharness::fixtures::*;
use sclcx::veriharness::{check_h1_injectivity, chain_corpus, Spine};

use common::*;

fn space() -> impl Strategy<Value = usize> {
    0..ambient_complexes().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_poincare_on_pairs(i in space(), seed in any::<u64>()) {
        let (_, x) = &ambient_complexes()[i];
        let y = random_subcomplex(x, &mut rng(seed));
        prop_assert_eq!(euler_poincare(x, &y), Ok(()));
    }

    #[test]
    fn snf_on_random_matrices(seed in any::<u64>()) {
        let m = random_matrix(&mut rng(seed), 12);
        prop_assert_eq!(snf_identities(&m), Ok(()));
    }

    #[test]
    fn stability_on_subcomplexes(i in space(), seed in any::<u64>()) {
        let (_, x) = &ambient_complexes()[i];
        let y = random_subcomplex(x, &mut rng(seed));
        prop_assert_eq!(subcomplex_stability(x, &y), Ok(()));
    }

    #[test]
    fn cells_files_round_trip(i in space(), seed in any::<u64>()) {
        let (_, x) = &ambient_complexes()[i];
        let y = random_subcomplex(x, &mut rng(seed));
        let text = print_cells(x, &y);
        prop_assert_eq!(parse_cells(x, &text).unwrap(), y);
    }

    /// Every subcomplex of a surface with boundary has `H2(S, T) = 0` once `H1(T) → H1(S)` is injective.
    #[test]
    fn h1_injectivity_implication(g in 1usize..=2, seed in any::<u64>()) {
        let x = sg1b_ambient(g);
        let t = random_subcomplex(&x, &mut rng(seed));
        let r = check_h1_injectivity(&x, &t).unwrap();
        prop_assert!(r.boundary_nonempty);
        prop_assert!(r.implication_holds);
    }

    #[test]
    fn scl_is_rotation_invariant(k in 0usize..13, shift in 0usize..8) {
        let c = &chain_corpus(2)[k];
        let rotated: Vec<(i64, Vec<i32>)> = c.terms.iter().map(|(m, w)| {
            let s = shift % w.len();
            (*m, [&w[s..], &w[..s]].concat())
        }).collect();
        let r = OneChain::from_terms(&c.basis, rotated).unwrap();
        prop_assert_eq!(scl(c), scl(&r));
    }
}

#[test]
fn link_accounting_on_fixtures() {
    for f in FixtureSet::load().complexes {
        assert!(link_corner_accounting(&f.complex), "{}", f.name);
    }
    assert!(link_corner_accounting(&three_squares()));
}

#[test]
fn three_squares_lack_small_links() {
    assert!(!three_squares().has_small_links().holds);
}

#[test]
fn spine_rank_is_one_minus_euler() {
    let mut complexes = vec![fan_disc(), disc()];
    complexes.extend((1..=3).map(sg1b));
    complexes.extend((1..=2).map(sg1b_ambient));
    for x in complexes {
        let s = Spine::new(&x).unwrap();
        assert_eq!(s.rank() as i64, 1 - x.euler_characteristic());
        assert_eq!(s.basis.len() + s.tree.len() + s.collapsed.len(), x.num_edges());
    }
}

#[test]
fn homogeneity_on_corpus() {
    for c in chain_corpus(2) {
        assert_eq!(homogeneous(&c, 2), Ok(()));
    }
    let a = OneChain::parse("[a,b]", &OneChain::standard_basis(2)).unwrap();
    assert_eq!(homogeneous(&a, 3), Ok(()));
}

#[test]
fn sandwich_agrees_with_lp() {
    for g in 1..=2 {
        let t = target(sg1b(g));
        let w = identity_surface(&t);
        let rot = RotStructure::balanced(t.clone()).unwrap();
        let s = bavard_sandwich(&rot, &w.edge_loops(), Some(scl_upper_from_surface(&w).unwrap())).unwrap();
        let word: String = (0..g).map(|i| format!("[{},{}]", (b'a' + 2 * i as u8) as char, (b'b' + 2 * i as u8) as char)).collect();
        let c = OneChain::parse(&word, &OneChain::standard_basis(2 * g)).unwrap();
        let lp = scl_lp(&c, ExecPolicy::Sequential).unwrap();
        assert_eq!(lp.value, SclValue::Finite(s.exact().unwrap().clone()));
    }
}

#[test]
fn lp_is_deterministic_across_policies() {
    for c in chain_corpus(2) {
        let a = scl_lp(&c, ExecPolicy::Sequential).unwrap();
        let b = scl_lp(&c, ExecPolicy::Parallel).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.solution, b.solution);
    }
}

#[test]
fn fixtures_pass_self_checks() {
    assert!(FixtureSet::load().self_check().is_empty());
    let x = closed_s3();
    let h = sclcx::homlin::homology(&x, Ring::Q);
    assert_eq!((x.euler_characteristic(), h.betti(1), h.betti(2)), (-4, 6, 1));
}
