#![allow(dead_code)]

use horotile_core::certify::krawczyk_certify;
use horotile_core::developing::*;
use horotile_core::format::parse_manifold_file;
use horotile_core::Interval;
use rand::Rng;

pub const M004: &[u8] = include_bytes!("../../../../fixtures/m004.tri");
pub const M003: &[u8] = include_bytes!("../../../../fixtures/m003.tri");
pub const CHAIN: &[u8] = include_bytes!("../../../../fixtures/6_3_1.tri");
pub const P: usize = 212;

pub fn develop_at(bytes: &[u8], prec: usize) -> DevelopedPolyhedron {
    let m = parse_manifold_file(bytes).unwrap();
    let z = m.shape_intervals(prec).unwrap();
    let c = krawczyk_certify(&m.triangulation, &z, prec).unwrap();
    let t = m.triangulation;
    let ones: Vec<Interval> = (0..t.num_cusps()).map(|_| Interval::one(prec)).collect();
    let cs = cross_sections_with_areas(&t, &c.shapes, &ones).unwrap();
    develop_polyhedron(&t, &c.shapes, &cs).unwrap()
}

pub fn develop(bytes: &[u8]) -> DevelopedPolyhedron {
    develop_at(bytes, P)
}

pub fn random_word(rng: &mut impl Rng, generators: usize, len: usize) -> String {
    let mut w = String::new();
    let mut last: Option<char> = None;
    while w.len() < len {
        let i = rng.gen_range(0..generators) as u8;
        let c = if rng.gen_bool(0.5) { (b'a' + i) as char } else { (b'A' + i) as char };
        // skip immediate cancellation
        if last.is_some_and(|l| l != c && l.eq_ignore_ascii_case(&c)) {
            continue;
        }
        w.push(c);
        last = Some(c);
    }
    w
}

/// Point at distance `r` from the origin of the hyperboloid in direction `u`.
pub fn hyperboloid_point(rng: &mut impl Rng, rmax: f64) -> [f64; 4] {
    let r = rng.gen_range(0.0..rmax);
    let u = loop {
        let v: [f64; 3] = core::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-3 && n <= 1.0 {
            break v.map(|x| x / n);
        }
    };
    [r.cosh(), r.sinh() * u[0], r.sinh() * u[1], r.sinh() * u[2]]
}

pub fn mdot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

pub fn mapply(m: &[[f64; 4]; 4], v: &[f64; 4]) -> [f64; 4] {
    core::array::from_fn(|i| (0..4).map(|j| m[i][j] * v[j]).sum())
}

/// Lorentz boost taking the origin to the unit time-like vector `k`.
pub fn boost(k: &[f64; 4]) -> [[f64; 4]; 4] {
    let mut b = [[0.0; 4]; 4];
    b[0][0] = k[0];
    for i in 1..4 {
        b[0][i] = k[i];
        b[i][0] = k[i];
        for j in 1..4 {
            b[i][j] = f64::from(u8::from(i == j)) + k[i] * k[j] / (1.0 + k[0]);
        }
    }
    b
}

pub fn sample_near(rng: &mut impl Rng, center: &[f64; 4], rmax: f64) -> [f64; 4] {
    mapply(&boost(center), &hyperboloid_point(rng, rmax))
}

pub fn close(a: &[f64; 4], b: &[f64; 4]) -> bool {
    let s = a.iter().chain(b).fold(1f64, |m, v| m.max(v.abs()));
    (0..4).all(|i| (a[i] - b[i]).abs() <= 1e-8 * s)
}

/// Minimum of `d(x, g y)` over group elements `g != 1` spelled by words of
/// length at most `len` in the generators of `p`.
///
/// Words are enumerated breadth first in doubles, one word per group
/// element. Prepending a letter moves the point by at most
/// `c = max d(x, g x)` towards `x`, so a word at depth `j` further than
/// `best + (len - j) c` cannot lead below `best` and is dropped. The
/// surviving near-optimal words are re-evaluated in the interval arithmetic
/// of `exact`, which may use a higher precision than `p`.
pub fn orbit_min_distance(
    p: &DevelopedPolyhedron,
    exact: &DevelopedPolyhedron,
    x: &horotile_core::MVector,
    y: &horotile_core::MVector,
    len: usize,
) -> Interval {
    use std::collections::HashSet;
    let letters: Vec<(usize, bool)> = (0..p.num_generators()).flat_map(|i| [(i, false), (i, true)]).collect();
    let gens: Vec<[[f64; 4]; 4]> = letters.iter().map(|&(i, inv)| p.generator(i, inv).to_f64()).collect();
    let xf = x.to_f64();
    let dist = |z: &[f64; 4]| (-mdot(&xf, z)).max(1.0).acosh();
    let c = gens.iter().map(|g| dist(&mapply(g, &xf))).fold(0f64, f64::max);
    let key = |z: &[f64; 4]| -> [i64; 4] { core::array::from_fn(|i| (z[i] * 1e7).round() as i64) };
    // (point, parent, letter)
    let mut nodes: Vec<([f64; 4], usize, usize)> = vec![(y.to_f64(), usize::MAX, usize::MAX)];
    let mut seen = HashSet::from([key(&nodes[0].0)]);
    let mut best = f64::INFINITY;
    let yd = dist(&nodes[0].0);
    if yd > 1e-8 {
        best = yd;
    }
    let mut layer = vec![0usize];
    for depth in 1..=len {
        let mut next = Vec::new();
        for &n in &layer {
            for (l, g) in gens.iter().enumerate() {
                let z = mapply(g, &nodes[n].0);
                if !seen.insert(key(&z)) {
                    continue;
                }
                let d = dist(&z);
                if d > 1e-8 {
                    best = best.min(d);
                }
                if d - (len - depth) as f64 * c > best + 1e-6 {
                    continue;
                }
                nodes.push((z, n, l));
                next.push(nodes.len() - 1);
            }
        }
        layer = next;
    }
    let mut out: Option<Interval> = None;
    for (i, (z, _, _)) in nodes.iter().enumerate() {
        let d = dist(z);
        if d <= 1e-8 || d > best + 1e-6 {
            continue;
        }
        let mut word = Vec::new();
        let mut k = i;
        while nodes[k].1 != usize::MAX {
            word.push(nodes[k].2);
            k = nodes[k].1;
        }
        // letters were prepended, so the first in `word` acts last
        let prec = exact.prec();
        let mut v = y.with_prec(prec);
        for &l in word.iter().rev() {
            let (g, inv) = letters[l];
            v = exact.generator(g, inv).apply(&v);
        }
        let d = x.with_prec(prec).dot(&v).neg().max(&Interval::one(prec)).acosh().unwrap();
        out = Some(out.map_or(d.clone(), |o| o.min(&d)));
    }
    out.expect("a nontrivial element within reach")
}

pub mod coverage;
pub mod exact;
pub mod oracle;
pub mod words;
