mod common;

use flatbldg::{build_system, Word};
use proptest::prelude::*;

/// Composes permutations of `0..n`: `(p·q)(i) = p(q(i))`.
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn transposition(n: usize, i: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(i, i + 1);
    p
}

#[test]
fn type_a_matches_the_symmetric_group() {
    for (ty, n) in [("A2", 3), ("A3", 4)] {
        let sys = build_system(ty).unwrap();
        let mut by_perm = std::collections::HashMap::new();
        for len in 0..=6 {
            for word in common::all_words(sys.rank(), len) {
                let perm = word.letters().iter().fold((0..n).collect::<Vec<_>>(), |acc, &s| compose(&acc, &transposition(n, s)));
                let w = sys.elem_from_word(&word);
                let prev = by_perm.entry(perm).or_insert_with(|| w.clone());
                assert_eq!(*prev, w, "{ty}: {word:?}");
            }
        }
        let distinct: std::collections::HashSet<_> = by_perm.values().cloned().collect();
        assert_eq!(distinct.len(), by_perm.len(), "{ty}: the map must be injective");
    }
}

#[test]
fn coxeter_relations_hold() {
    for ty in ["A~2", "C~2", "G~2", "A3", "B3", "F4"] {
        let sys = build_system(ty).unwrap();
        for s in 0..sys.rank() {
            for t in 0..sys.rank() {
                let m = sys.m(s, t);
                if m == flatbldg::coxeter::M_INF {
                    continue;
                }
                let st = sys.multiply(&sys.generator(s), &sys.generator(t)).unwrap();
                let mut p = sys.identity();
                for k in 1..=m {
                    p = sys.multiply(&p, &st).unwrap();
                    assert_eq!(p.is_identity(), k == m, "{ty} ({s},{t})");
                }
            }
        }
    }
}

#[test]
fn length_matches_cayley_distance() {
    for ty in ["A~1", "A~2", "C~2", "G~2"] {
        let sys = build_system(ty).unwrap();
        for (w, d) in common::cayley_lengths(&sys, 6) {
            assert_eq!(sys.length(&w), d, "{ty}");
        }
    }
}

#[test]
fn sts_in_affine_a1_has_length_three() {
    let sys = build_system("A~1").unwrap();
    let w = sys.parse_elem("s0 s1 s0").unwrap();
    let shorter: Vec<Word> = (0..3).flat_map(|k| common::all_words(2, k)).collect();
    assert!(shorter.iter().all(|u| sys.elem_from_word(u) != w));
    assert_eq!(sys.length(&w), 3);
}

fn system_strategy() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("A~1"), Just("A~2"), Just("C~2"), Just("G~2"), Just("A3"), Just("B~3")]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn length_changes_by_one(ty in system_strategy(), word in prop::collection::vec(0usize..4, 0..12), s in 0usize..4) {
        let sys = build_system(ty).unwrap();
        let word = Word(word.into_iter().filter(|&x| x < sys.rank()).collect());
        let s = s % sys.rank();
        let w = sys.elem_from_word(&word);
        let ws = sys.multiply(&w, &sys.generator(s)).unwrap();
        let (a, b) = (sys.length(&w), sys.length(&ws));
        prop_assert!(a + 1 == b || b + 1 == a);
        prop_assert_eq!(sys.right_descents(&w).contains(&s), b < a);
        let sw = sys.multiply(&sys.generator(s), &w).unwrap();
        prop_assert_eq!(sys.descents(&w).contains(&s), sys.length(&sw) < a);
    }

    #[test]
    fn reduced_words_reproduce_and_prefixes_are_reduced(ty in system_strategy(), word in prop::collection::vec(0usize..4, 0..14)) {
        let sys = build_system(ty).unwrap();
        let word = Word(word.into_iter().filter(|&x| x < sys.rank()).collect());
        let w = sys.elem_from_word(&word);
        let red = sys.reduced_word(&w);
        prop_assert_eq!(red.len(), sys.length(&w));
        prop_assert_eq!(sys.elem_from_word(&red), w.clone());
        for k in 0..=red.len() {
            prop_assert!(sys.is_reduced(&Word(red.letters()[..k].to_vec())));
        }
        let inv = sys.inverse(&w).unwrap();
        prop_assert!(sys.multiply(&w, &inv).unwrap().is_identity());
        prop_assert_eq!(sys.elem_from_matrix(w.matrix().clone()).unwrap(), w.clone());
        prop_assert!(w.matrix().determinant().abs() == 1);
    }

    #[test]
    fn root_images_stay_sign_pure(ty in system_strategy(), word in prop::collection::vec(0usize..4, 0..12), s in 0usize..4) {
        let sys = build_system(ty).unwrap();
        let word = Word(word.into_iter().filter(|&x| x < sys.rank()).collect());
        let w = sys.elem_from_word(&word);
        let b = sys.simple_root(s % sys.rank());
        let img = sys.act_on_root(&w, &b).unwrap();
        let coords = img.coords();
        prop_assert!(coords.iter().all(|&x| x >= 0) || coords.iter().all(|&x| x <= 0));
        prop_assert!(sys.root(coords.to_vec()).is_ok());
    }
}

#[test]
fn diagram_automorphisms_preserve_length() {
    for (ty, perm) in [("A~2", vec![1, 2, 0]), ("A~2", vec![0, 2, 1]), ("C~2", vec![2, 1, 0]), ("A3", vec![2, 1, 0])] {
        let sys = build_system(ty).unwrap();
        let sigma = sys.extend_diagram_automorphism(&perm).unwrap();
        for w in sys.ball(6) {
            let img = sigma.apply(&sys, &w).unwrap();
            assert_eq!(sys.length(&img), sys.length(&w));
            assert_eq!(sigma.inverse().apply(&sys, &img).unwrap(), w);
        }
        // a homomorphism on products
        let mut r = common::rng(7);
        for _ in 0..50 {
            let x = common::random_elem(&sys, &mut r, 8);
            let y = common::random_elem(&sys, &mut r, 8);
            let lhs = sigma.apply(&sys, &sys.multiply(&x, &y).unwrap()).unwrap();
            let rhs = sys.multiply(&sigma.apply(&sys, &x).unwrap(), &sigma.apply(&sys, &y).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
