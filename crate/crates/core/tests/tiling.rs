mod common;

use common::coverage::*;
use common::*;
use horotile_core::developing::DevelopedPolyhedron;
use horotile_core::geometry::{HPoint, Object};
use horotile_core::tiling::*;
use horotile_core::MMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn generic_point(p: &DevelopedPolyhedron) -> [f64; 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    sample_near(&mut rng, &p.incenters[0].0.to_f64(), 0.3)
}

#[test]
fn point_tiles_cover_a_ball() {
    let p = develop(M004);
    let k = generic_point(&p);
    let tiles = tiles_covering(&p, GeometricObject::Point(HPoint::from_f64(k, P)), 1.5);
    let p0 = p.incenters[0].0.to_f64();
    let keys: Vec<_> = tiles.iter().map(|(m, t)| (mapply(m, &p0), *t)).collect();
    for (i, a) in keys.iter().enumerate() {
        assert!(keys[..i].iter().all(|b| a.1 != b.1 || !close(&a.0, &b.0)), "duplicate tile");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let samples = (0..2000).map(|_| sample_near(&mut rng, &k, 1.5));
    let n = check_coverage(&p, samples, |m, t| {
        let key = mapply(m, &p0);
        keys.iter().any(|(q, s)| *s == t && close(q, &key))
    });
    assert_eq!(n, 2000);
}

#[test]
fn horoball_tiles_cover_a_neighborhood() {
    let p = develop(M004);
    let k = GeometricObject::cusp(&p, 0).unwrap();
    let l = match &k {
        GeometricObject::Horoball { ball, .. } => ball.0.to_f64(),
        _ => unreachable!(),
    };
    let tiles = tiles_covering(&p, k, 1.0);
    let inv = |m: &[[f64; 4]; 4]| MMatrix::from_f64(*m, 53).o13_inverse().to_f64();
    let keys: Vec<_> = tiles.iter().map(|(m, t)| (mapply(&inv(m), &l), *t)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let p0 = p.incenters[0].0.to_f64();
    let samples = core::iter::repeat_with(|| sample_near(&mut rng, &p0, 4.0))
        .filter(|x| (-mdot(x, &l)).ln() < 1.0)
        .take(1000);
    let n = check_coverage(&p, samples, |m, t| {
        let key = mapply(&inv(m), &l);
        keys.iter().any(|(q, s)| *s == t && close(q, &key))
    });
    assert_eq!(n, 1000);
}

#[test]
fn geodesic_tiles_cover_a_tube() {
    let p = develop(M004);
    let k = GeometricObject::geodesic_word(&p, "ab").unwrap();
    let (h, x0, x1, mid) = match &k {
        GeometricObject::Line(g) => {
            (g.holonomy.to_f64(), g.line.x0.to_f64(), g.line.x1.to_f64(), g.line.midpoint().unwrap().0.to_f64())
        }
        _ => unreachable!(),
    };
    let tiles = tiles_covering(&p, k, 0.8);
    let p0 = p.incenters[0].0.to_f64();
    let keys: Vec<_> = tiles.iter().map(|(m, t)| (mapply(m, &p0), *t)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let tube = |x: &[f64; 4]| (-2.0 * mdot(x, &x0) * mdot(x, &x1) / mdot(&x0, &x1)).sqrt().acosh();
    let samples = core::iter::repeat_with(|| sample_near(&mut rng, &mid, 2.5)).filter(|x| tube(x) < 0.8).take(1000);
    let hinv = MMatrix::from_f64(h, 53).o13_inverse().to_f64();
    let n = check_coverage(&p, samples, |m, t| {
        let key = mapply(m, &p0);
        let hit = |q: &[f64; 4]| keys.iter().any(|(k, s)| *s == t && close(k, q));
        // translates along the axis, iterated separately to keep accuracy
        [h, hinv].iter().any(|g| {
            let mut q = key;
            (0..8).any(|_| {
                let found = hit(&q);
                q = mapply(g, &q);
                found
            })
        })
    });
    assert_eq!(n, 1000);
}

#[test]
fn seeds_come_first_with_minus_infinity() {
    let p = develop(CHAIN);
    let mut s = TileStream::new(&p, GeometricObject::incenter(&p, 2)).unwrap();
    let e = s.next_event().unwrap().unwrap();
    assert!(e.r.is_neg_infinity());
    assert_eq!((e.index, e.t), (0, 2));
    let e = s.next_event().unwrap().unwrap();
    assert!(!e.r.is_neg_infinity());
    assert_eq!(s.emitted(), 2);
}

#[test]
fn cusp_tiles_are_finite_up_to_the_stabilizer() {
    let p = develop(M004);
    // every tile touches the cusp, so around it there are as many tiles as
    // triangles in the cross section, each at distance -inf from the horoball
    let s = TileStream::new(&p, GeometricObject::cusp(&p, 0).unwrap()).unwrap();
    let events: Vec<_> = s.take(40).map(|e| e.unwrap()).collect();
    let touching = events.iter().filter(|e| e.r.lower_f64() == f64::NEG_INFINITY).count();
    assert_eq!(touching, 8);
}

#[test]
fn tetrahedra_view_matches_the_lifted_object() {
    let p = develop(M004);
    let k = GeometricObject::incenter(&p, 1);
    let base = k.to_object();
    let s = TileStream::new(&p, k.clone()).unwrap();
    let events: Vec<_> = s.take(30).map(|e| e.unwrap()).collect();
    let view: Vec<_> = TileStream::new(&p, k).unwrap().tetrahedra_view().take(30).map(|e| e.unwrap()).collect();
    for (e, (r, obj, t)) in events.iter().zip(&view) {
        assert_eq!(e.t, *t);
        assert_eq!(e.r.lower_f64(), r.lower_f64());
        match (base.transform(&e.m.o13_inverse()), obj) {
            (Object::Point(a), Object::Point(b)) => assert!(a.0.overlaps(&b.0)),
            _ => unreachable!(),
        }
    }
}
