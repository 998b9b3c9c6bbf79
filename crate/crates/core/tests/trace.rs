mod common;

use common::*;
use horotile_core::developing::DevelopedPolyhedron;
use horotile_core::geometry::{HPoint, Object};
use horotile_core::trace::*;
use horotile_core::{Error, MMatrix, MVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn same(a: &MMatrix, b: &MMatrix) -> bool {
    (0..4).all(|j| a.column(j).overlaps(&b.column(j)))
}

/// No face of `m T_t` separates `x` from the tile.
fn not_excluded(p: &DevelopedPolyhedron, x: &HPoint, c: &LiftedTet) -> bool {
    let y = c.m.o13_inverse().apply(&x.0);
    (0..4).all(|f| !y.dot(&p.normals[c.t][f]).is_positive())
}

fn inside(p: &DevelopedPolyhedron, x: &HPoint, c: &LiftedTet) -> bool {
    let y = c.m.o13_inverse().apply(&x.0);
    (0..4).all(|f| y.dot(&p.normals[c.t][f]).is_negative())
}

#[test]
fn incenter_of_the_first_tet_is_found_immediately() {
    let p = develop(M004);
    let r = trace(&p, &p.incenters[0], &TraceConfig::default()).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].t, 0);
    assert!(same(&r[0].m, &MMatrix::identity(P)));
}

#[test]
fn translated_incenters_give_the_translating_element() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for bytes in [M004, CHAIN] {
        let p = develop(bytes);
        for _ in 0..40 {
            let len = rand::Rng::gen_range(&mut rng, 0..8);
            let w = random_word(&mut rng, p.num_generators(), len);
            let t = rand::Rng::gen_range(&mut rng, 0..p.num_tetrahedra());
            let g = p.word_matrix(&w).unwrap();
            let x = p.incenters[t].transform(&g);
            let r = trace(&p, &x, &TraceConfig::default()).unwrap();
            assert_eq!(r.len(), 1, "{w}");
            assert_eq!(r[0].t, t, "{w}");
            assert!(same(&r[0].m, &g), "{w}");
        }
    }
}

#[test]
fn point_on_a_face_gives_both_tiles() {
    let p = develop(M004);
    for f in 0..4 {
        let s = (0..4)
            .filter(|&v| v != f)
            .fold(MVector::zero(P), |a, v| a.add(&p.vertices[0][v]));
        let x = HPoint::from_timelike(&s).unwrap();
        let r = trace(&p, &x, &TraceConfig::default()).unwrap();
        assert_eq!(r.len(), 2, "face {f}");
        let ts: Vec<_> = r.iter().map(|c| c.t).collect();
        let (t2, _) = p.neighbor(0, f);
        assert!(ts.contains(&0) && ts.contains(&t2));
        assert!(r.iter().all(|c| not_excluded(&p, &x, c)));
    }
}

#[test]
fn verification_rejects_a_wrong_candidate() {
    let p = develop(M004);
    let g = p.word_matrix("abAB").unwrap();
    let x = p.incenters[1].transform(&g);
    let e = trace_verify(&p, &x, &LiftedTet::identity(0, P)).unwrap_err();
    assert!(matches!(e, Error::InsufficientPrecision(_)));
}

#[test]
fn random_points_are_located() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let p = develop(M004);
    let cfg = TraceConfig::default();
    let mut pairs = 0;
    for _ in 0..1000 {
        let x = HPoint::from_f64(hyperboloid_point(&mut rng, 4.0), P);
        let r = trace(&p, &x, &cfg).unwrap();
        match r.as_slice() {
            [c] => assert!(inside(&p, &x, c)),
            [a, b] => {
                pairs += 1;
                assert!(not_excluded(&p, &x, a) && not_excluded(&p, &x, b));
            }
            _ => unreachable!(),
        }
    }
    assert!(pairs < 10);
}

#[test]
fn float_walk_agrees_with_interval_walk() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let p = develop(CHAIN);
    let fcfg = TraceConfig { float_mode: true, ..TraceConfig::default() };
    for _ in 0..200 {
        let x = HPoint::from_f64(hyperboloid_point(&mut rng, 3.0), P);
        let exact = trace(&p, &x, &TraceConfig::default()).unwrap();
        let approx = trace_heuristic(&p, &x, None, &fcfg).unwrap();
        let r = trace_verify(&p, &x, &approx).unwrap();
        assert!(r.iter().any(|c| exact.iter().any(|e| e.t == c.t && same(&e.m, &c.m))));
    }
}

#[test]
fn budget_is_enforced() {
    let p = develop(M004);
    let x = p.incenters[0].transform(&p.word_matrix("abababab").unwrap());
    let e = trace(&p, &x, &TraceConfig { budget: 2, float_mode: false }).unwrap_err();
    assert!(matches!(e, Error::BudgetExceeded(_)));
}

#[test]
fn tetrahedra_view_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let p = develop(M004);
    for _ in 0..50 {
        let x = HPoint::from_f64(hyperboloid_point(&mut rng, 3.0), P);
        let view = trace_tetrahedra_view(&p, &Object::Point(x.clone()), &x, 0, &TraceConfig::default()).unwrap();
        let walk = trace_heuristic(&p, &x, None, &TraceConfig::default()).unwrap();
        assert_eq!(view.tet, walk.t);
        assert!(same(&view.m, &walk.m));
        let back = view.basepoint.transform(&view.m);
        assert!(back.0.overlaps(&x.0));
        match view.object {
            Object::Point(y) => assert!(y.0.overlaps(&view.basepoint.0)),
            _ => unreachable!(),
        }
    }
}
