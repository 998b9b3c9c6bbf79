use super::*;
use horotile_core::developing::DevelopedPolyhedron;
use horotile_core::geometry::HPoint;
use horotile_core::tiling::{GeometricObject, TileStream};
use horotile_core::trace::{trace, TraceConfig};
use horotile_core::ExtendedBound;

/// Emitted tiles before the first event whose running maximum of `r`
/// reaches `radius`, as `(m, t)` in doubles.
pub fn tiles_covering(p: &DevelopedPolyhedron, k: GeometricObject, radius: f64) -> Vec<([[f64; 4]; 4], usize)> {
    let mut out = Vec::new();
    let mut reach = f64::NEG_INFINITY;
    for e in TileStream::new(p, k).unwrap() {
        let e = e.unwrap();
        if let ExtendedBound::Value(r) = &e.r {
            reach = reach.max(r.lo_f64());
        }
        if reach >= radius {
            return out;
        }
        out.push((e.m.to_f64(), e.t));
        assert!(out.len() < 200_000);
    }
    unreachable!()
}

/// Checks that every sample within `radius` of the object lies in a tile
/// equal to an emitted one up to `same`.
pub fn check_coverage(
    p: &DevelopedPolyhedron,
    samples: impl Iterator<Item = [f64; 4]>,
    same: impl Fn(&[[f64; 4]; 4], usize) -> bool,
) -> usize {
    let mut n = 0;
    for x in samples {
        let cands = trace(p, &HPoint::from_f64(x, P), &TraceConfig::default()).unwrap();
        assert!(cands.iter().any(|c| same(&c.m.to_f64(), c.t)), "uncovered sample {x:?}");
        n += 1;
    }
    n
}
