mod common;

use std::collections::HashSet;

use flatbldg::chamber::{Gallery, HullMode, MinimalityMode, ResidueRef};
use flatbldg::{build_system, CoxSystem, Elem, Word};
use rand::Rng;

fn len(sys: &CoxSystem, w: &Elem) -> usize {
    sys.length(w)
}

#[test]
fn building_axioms_on_sampled_triples() {
    let sys = build_system("A~2").unwrap();
    let mut r = common::rng(1);
    for _ in 0..200 {
        let x = common::random_elem(&sys, &mut r, 8);
        let y = common::random_elem(&sys, &mut r, 8);
        let d = sys.weyl_distance(&x, &y).unwrap();
        // (Bu1)
        assert_eq!(d.is_identity(), x == y);
        for s in 0..sys.rank() {
            // (Bu2): z s-adjacent to y
            let z = sys.multiply(&y, &sys.generator(s)).unwrap();
            let ws = sys.multiply(&d, &sys.generator(s)).unwrap();
            let dz = sys.weyl_distance(&x, &z).unwrap();
            assert!(dz == ws || dz == d);
            if len(&sys, &ws) == len(&sys, &d) + 1 {
                assert_eq!(dz, ws);
            }
            // (Bu3): some z with δ(y, z) = s and δ(x, z) = ws
            assert_eq!(sys.weyl_distance(&y, &z).unwrap(), sys.generator(s));
            assert_eq!(dz, ws);
        }
    }
}

#[test]
fn left_multiplication_is_an_isometry() {
    let sys = build_system("C~2").unwrap();
    let mut r = common::rng(2);
    for _ in 0..200 {
        let w = common::random_elem(&sys, &mut r, 10);
        let x = common::random_elem(&sys, &mut r, 10);
        let y = common::random_elem(&sys, &mut r, 10);
        let wx = sys.multiply(&w, &x).unwrap();
        let wy = sys.multiply(&w, &y).unwrap();
        assert_eq!(sys.weyl_distance(&wx, &wy).unwrap(), sys.weyl_distance(&x, &y).unwrap());
    }
}

fn gate_property(sys: &CoxSystem, r: &ResidueRef, x: &Elem, z: &Elem) -> bool {
    let chambers = sys.residue_chambers(r, 10_000).unwrap();
    let xz = len(sys, &sys.weyl_distance(x, z).unwrap());
    chambers.iter().all(|y| len(sys, &sys.weyl_distance(x, y).unwrap()) == xz + len(sys, &sys.weyl_distance(z, y).unwrap()))
}

#[test]
fn projections_are_gates_and_commute_with_the_action() {
    let sys = build_system("A~2").unwrap();
    let mut r = common::rng(3);
    for _ in 0..100 {
        let types: Vec<usize> = (0..sys.rank()).filter(|_| r.gen_bool(0.5)).collect();
        let types = if types.len() == sys.rank() { vec![0, 1] } else { types };
        let base = common::random_elem(&sys, &mut r, 8);
        let x = common::random_elem(&sys, &mut r, 8);
        let res = ResidueRef::new(types.clone(), base.clone());
        let z = sys.proj(&res, &x).unwrap();
        assert!(sys.residue_contains(&res, &z));
        assert!(gate_property(&sys, &res, &x, &z));

        let w = common::random_elem(&sys, &mut r, 8);
        let moved = ResidueRef::new(types, sys.multiply(&w, &base).unwrap());
        let wx = sys.multiply(&w, &x).unwrap();
        assert_eq!(sys.multiply(&w, &z).unwrap(), sys.proj(&moved, &wx).unwrap());
    }
}

#[test]
fn panels_of_a_minimal_gallery_project_back() {
    for ty in ["A~2", "C~2", "G~2"] {
        let sys = build_system(ty).unwrap();
        let mut r = common::rng(4);
        for _ in 0..50 {
            let d0 = common::random_elem(&sys, &mut r, 6);
            let target = common::random_elem(&sys, &mut r, 8);
            let word = sys.reduced_word(&sys.weyl_distance(&d0, &target).unwrap());
            let g = Gallery::new(d0.clone(), word.clone());
            let ch = g.chambers(&sys);
            for (i, &s) in word.letters().iter().enumerate() {
                let panel = ResidueRef::panel(s, ch[i].clone());
                assert_eq!(sys.proj(&panel, &d0).unwrap(), ch[i]);
            }
        }
    }
}

#[test]
fn negation_commutes_with_the_action() {
    let sys = build_system("G~2").unwrap();
    let mut r = common::rng(5);
    for _ in 0..100 {
        let w = common::random_elem(&sys, &mut r, 10);
        let u = common::random_elem(&sys, &mut r, 10);
        let b = sys.act_on_root(&u, &sys.simple_root(r.gen_range(0..3))).unwrap();
        assert_eq!(sys.act_on_root(&w, &b.neg()).unwrap(), sys.act_on_root(&w, &b).unwrap().neg());
        // −α is the complement of α
        assert_ne!(sys.root_contains(&b, &w), sys.root_contains(&b.neg(), &w));
    }
}

#[test]
fn separating_roots_count_length() {
    for ty in ["A~2", "C~2"] {
        let sys = build_system(ty).unwrap();
        let ball = sys.ball(5);
        let mut r = common::rng(6);
        for _ in 0..200 {
            let x = &ball[r.gen_range(0..ball.len())];
            let y = &ball[r.gen_range(0..ball.len())];
            let sep = sys.separating_roots(x, y).unwrap();
            assert_eq!(sep.len(), len(&sys, &sys.weyl_distance(x, y).unwrap()));
            let distinct: HashSet<_> = sep.iter().collect();
            assert_eq!(distinct.len(), sep.len());
            for a in &sep {
                assert!(sys.root_contains(a, x) && !sys.root_contains(a, y));
            }
        }
    }
}

#[test]
fn minimality_modes_agree_exhaustively() {
    for ty in ["A~2", "C~2"] {
        let sys = build_system(ty).unwrap();
        for k in 0..=6 {
            for word in common::all_words(sys.rank(), k) {
                let g = Gallery::new(sys.identity(), word);
                let a = sys.is_minimal(&g, MinimalityMode::ByLength);
                let b = sys.is_minimal(&g, MinimalityMode::ByWalls);
                assert_eq!(a.minimal, b.minimal);
                assert_eq!(b.repeated_wall.is_some(), !b.minimal);
            }
        }
    }
}

#[test]
fn hull_is_monotone_and_idempotent() {
    let sys = build_system("A~2").unwrap();
    let mut r = common::rng(8);
    for _ in 0..30 {
        let a: Vec<Elem> = (0..3).map(|_| common::random_elem(&sys, &mut r, 4)).collect();
        let mut b = a.clone();
        b.push(common::random_elem(&sys, &mut r, 4));
        for mode in [HullMode::RootIntersection, HullMode::GalleryClosure] {
            let ha = sys.convex_hull(&a, mode).unwrap();
            let hb = sys.convex_hull(&b, mode).unwrap();
            let hb_set: HashSet<_> = hb.iter().collect();
            assert!(ha.iter().all(|x| hb_set.contains(x)));
            assert_eq!(sys.convex_hull(&ha, mode).unwrap(), ha);
            for x in sys.ball(6) {
                assert_eq!(sys.in_convex_hull(&a, &x).unwrap(), ha.contains(&x));
            }
        }
    }
}

#[test]
fn intervals_are_minimal_gallery_chambers() {
    let sys = build_system("C~2").unwrap();
    let mut r = common::rng(9);
    for _ in 0..40 {
        let x = common::random_elem(&sys, &mut r, 6);
        let y = common::random_elem(&sys, &mut r, 6);
        let d = len(&sys, &sys.weyl_distance(&x, &y).unwrap());
        let interval: HashSet<Elem> = sys.interval(&x, &y).into_iter().collect();
        // oracle: chambers z of a ball around x with d(x,z) + d(z,y) = d(x,y)
        for u in sys.ball(d) {
            let z = sys.multiply(&x, &u).unwrap();
            let on = len(&sys, &u) + len(&sys, &sys.weyl_distance(&z, &y).unwrap()) == d;
            assert_eq!(interval.contains(&z), on);
        }
    }
}

#[test]
fn canonical_ball_order_and_word_round_trip() {
    let sys = build_system("G~2").unwrap();
    let ball = sys.ball(5);
    let lens = common::cayley_lengths(&sys, 5);
    assert_eq!(ball.len(), lens.len());
    for w in &ball {
        let text = sys.format_elem(w);
        assert_eq!(sys.parse_elem(&text).unwrap(), *w);
    }
    let words: Vec<Word> = ball.iter().map(|w| sys.reduced_word(w)).collect();
    assert!(words.windows(2).all(|p| (p[0].len(), &p[0]) < (p[1].len(), &p[1])));
}
