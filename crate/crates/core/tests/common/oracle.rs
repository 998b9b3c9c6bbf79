//! Numeric-minimization oracles for the closed-form distances.
//!
//! Every distance is recomputed in doubles as a minimum over
//! parametrizations of the objects: geodesics by arc length, planes and
//! ideal triangles through their Klein-model discs, horospheres through
//! their flat coordinates. All objectives are quasi-convex in those
//! coordinates, so nested golden-section search finds the minimum.
//! Where a formula has already been checked against a full minimization
//! (point to plane, point to horoball) it is reused as the inner objective
//! of the higher-dimensional problems.

use horotile_core::geometry::*;
use horotile_core::{Interval, MVector};
use rand::Rng;

type V = [f64; 4];

fn dot(a: &V, b: &V) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

fn acosh1(c: f64) -> f64 {
    c.max(1.0).acosh()
}

fn golden(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - g * (hi - lo);
    let mut b = lo + g * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..iters {
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = f(b);
        }
    }
    if fa <= fb {
        (a, fa)
    } else {
        (b, fb)
    }
}

const LINE_RANGE: f64 = 30.0;
const ITERS: usize = 90;

/// Arc-length parametrization, `t -> inf` towards `x0`.
fn line_point(x0: &V, x1: &V, t: f64) -> V {
    let s = (-2.0 * dot(x0, x1)).sqrt();
    core::array::from_fn(|i| (t.exp() * x0[i] + (-t).exp() * x1[i]) / s)
}

fn min_on_line(x0: &V, x1: &V, f: impl Fn(&V) -> f64, iters: usize) -> (f64, f64) {
    golden(|t| f(&line_point(x0, x1, t)), -LINE_RANGE, LINE_RANGE, iters)
}

fn klein_point(k: &[f64; 3]) -> Option<V> {
    let q = 1.0 - (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    if q <= 0.0 {
        return None;
    }
    let s = q.sqrt();
    Some([1.0 / s, k[0] / s, k[1] / s, k[2] / s])
}

fn orthonormal_complement(u: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let seed = if u[0].abs() < 0.6 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let d = seed[0] * u[0] + seed[1] * u[1] + seed[2] * u[2];
    let mut e1: [f64; 3] = core::array::from_fn(|i| seed[i] - d * u[i]);
    let n = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    e1 = e1.map(|x| x / n);
    let e2 = [u[1] * e1[2] - u[2] * e1[1], u[2] * e1[0] - u[0] * e1[2], u[0] * e1[1] - u[1] * e1[0]];
    (e1, e2)
}

/// Minimum of `f` over the plane `n^perp`, through its Klein disc.
fn min_on_plane(n: &V, f: impl Fn(&V) -> f64, iters: usize) -> f64 {
    let ns = [n[1], n[2], n[3]];
    let len2 = ns[0] * ns[0] + ns[1] * ns[1] + ns[2] * ns[2];
    let c: [f64; 3] = core::array::from_fn(|i| n[0] * ns[i] / len2);
    let rho = (1.0 - n[0] * n[0] / len2).sqrt() * (1.0 - 1e-13);
    let u = ns.map(|x| x / len2.sqrt());
    let (e1, e2) = orthonormal_complement(&u);
    let at = |a: f64, b: f64| -> f64 {
        let k: [f64; 3] = core::array::from_fn(|i| c[i] + a * e1[i] + b * e2[i]);
        klein_point(&k).map_or(f64::INFINITY, |y| f(&y))
    };
    golden(
        |a| {
            let w = (rho * rho - a * a).max(0.0).sqrt();
            golden(|b| at(a, b), -w, w, iters).1
        },
        -rho,
        rho,
        iters,
    )
    .1
}

/// Minimum of `f` over the ideal triangle with the given light-like vertices.
fn min_on_triangle(v: &[V; 3], f: impl Fn(&V) -> f64, iters: usize) -> f64 {
    let q: [[f64; 3]; 3] = core::array::from_fn(|i| [v[i][1] / v[i][0], v[i][2] / v[i][0], v[i][3] / v[i][0]]);
    let at = |a: f64, b: f64| -> f64 {
        // slices parallel to the edge q1 q2
        let k: [f64; 3] = core::array::from_fn(|i| q[0][i] + a * (q[1][i] - q[0][i]) + a * b * (q[2][i] - q[1][i]));
        klein_point(&k).map_or(f64::INFINITY, |y| f(&y))
    };
    golden(|a| golden(|b| at(a, b), 0.0, 1.0, iters).1, 0.0, 1.0, iters).1
}

/// Flat coordinates on the horosphere `y . l = -1`.
fn horosphere(l: &V) -> impl Fn(f64, f64) -> V {
    let u = [l[1] / l[0], l[2] / l[0], l[3] / l[0]];
    let m = [1.0 / (2.0 * l[0]), -u[0] / (2.0 * l[0]), -u[1] / (2.0 * l[0]), -u[2] / (2.0 * l[0])];
    let (e1, e2) = orthonormal_complement(&u);
    let l = *l;
    move |a, b| {
        let alpha = (1.0 + a * a + b * b) / 2.0;
        [
            alpha * l[0] + m[0],
            alpha * l[1] + m[1] + a * e1[0] + b * e2[0],
            alpha * l[2] + m[2] + a * e1[1] + b * e2[1],
            alpha * l[3] + m[3] + a * e1[2] + b * e2[2],
        ]
    }
}

const HORO_RANGE: f64 = 1e4;

fn min_on_horosphere(l: &V, f: impl Fn(&V) -> f64, iters: usize) -> f64 {
    let y = horosphere(l);
    golden(
        |a| golden(|b| f(&y(a, b)), -HORO_RANGE, HORO_RANGE, iters).1,
        -HORO_RANGE,
        HORO_RANGE,
        iters,
    )
    .1
}

fn busemann(y: &V, l: &V) -> f64 {
    (-dot(y, l)).ln()
}

fn plane_dist(y: &V, n: &V) -> f64 {
    dot(y, n).asinh().abs()
}

// --- random configurations with exact double inputs ---

/// Light-like future vector with dyadic entries, so that it is exactly
/// light-like; the scale is arbitrary.
pub fn ideal_point(rng: &mut impl Rng) -> V {
    let a = rng.gen_range(-4096i64..=4096) as f64 / 1024.0;
    let b = rng.gen_range(-4096i64..=4096) as f64 / 1024.0;
    let s = a * a + b * b;
    let mut v = [1.0 + s, 2.0 * a, 2.0 * b, 1.0 - s];
    if rng.gen_bool(0.5) {
        v[3] = -v[3];
    }
    let k = rng.gen_range(1..4);
    v.swap(k, 3);
    let scale = rng.gen_range(8i64..=256) as f64 / 64.0;
    v.map(|x| x * scale)
}

/// Point at distance below `rmax` from the origin.
pub fn point(rng: &mut impl Rng, rmax: f64) -> V {
    let r = rng.gen_range(0.0..rmax);
    let u = direction(rng);
    [r.cosh(), r.sinh() * u[0], r.sinh() * u[1], r.sinh() * u[2]]
}

fn direction(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = core::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-3 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

/// Unit space-like normal at distance at most `dmax` from the origin.
pub fn plane(rng: &mut impl Rng, dmax: f64) -> V {
    let d = rng.gen_range(-dmax..dmax);
    let u = direction(rng);
    [d.sinh(), d.cosh() * u[0], d.cosh() * u[1], d.cosh() * u[2]]
}

fn mv(v: &V, prec: usize) -> MVector {
    MVector::from_f64(*v, prec)
}

fn hp(v: &V, prec: usize) -> HPoint {
    HPoint::from_timelike(&mv(v, prec)).unwrap()
}

fn hl(a: &V, b: &V, prec: usize) -> HLine {
    HLine::new(mv(a, prec), mv(b, prec))
}

fn hpl(n: &V, prec: usize) -> HPlane {
    HPlane(mv(n, prec).normalize().unwrap())
}

fn hb(l: &V, prec: usize) -> Horoball {
    Horoball(mv(l, prec))
}

fn unit(n: &V) -> V {
    let s = dot(n, n).sqrt();
    n.map(|x| x / s)
}

fn timelike_unit(x: &V) -> V {
    let s = (-dot(x, x)).sqrt();
    x.map(|c| c / s)
}

#[derive(Debug, Clone)]
pub struct Report {
    pub name: &'static str,
    pub cases: usize,
    pub violations: usize,
    pub worst: f64,
    pub first_failure: Option<String>,
}

struct Tally(Report);

impl Tally {
    fn new(name: &'static str) -> Tally {
        Tally(Report { name, cases: 0, violations: 0, worst: 0.0, first_failure: None })
    }

    /// The closed form must overlap the oracle value up to `tol`.
    fn check(&mut self, closed: &Interval, oracle: f64, what: impl FnOnce() -> String) {
        let tol = 1e-6 * (1.0 + oracle.abs());
        let (lo, hi) = closed.to_f64_bounds();
        let err = if oracle < lo { lo - oracle } else if oracle > hi { oracle - hi } else { 0.0 };
        self.0.cases += 1;
        self.0.worst = self.0.worst.max(err);
        if !(err <= tol) {
            self.0.violations += 1;
            if self.0.first_failure.is_none() {
                self.0.first_failure = Some(format!("{}: closed [{lo}, {hi}], oracle {oracle}", what()));
            }
        }
    }

    /// The closed form must not exceed the oracle beyond `tol`.
    fn check_below(&mut self, closed: &Interval, oracle: f64, what: impl FnOnce() -> String) {
        let tol = 1e-6 * (1.0 + oracle.abs());
        let lo = closed.lo_f64();
        self.0.cases += 1;
        let err = (lo - oracle).max(0.0);
        self.0.worst = self.0.worst.max(err);
        if !(err <= tol) {
            self.0.violations += 1;
            if self.0.first_failure.is_none() {
                self.0.first_failure = Some(format!("{}: lower {lo}, oracle {oracle}", what()));
            }
        }
    }
}

/// Runs `n` random configurations per formula.
pub fn distance_suite(rng: &mut impl Rng, n: usize, prec: usize) -> Vec<Report> {
    let mut out = Vec::new();
    const R: f64 = 2.5;

    let mut t = Tally::new("point-point");
    for _ in 0..n {
        let (x, y) = (point(rng, R), point(rng, R));
        let closed = point_point(&hp(&x, prec), &hp(&y, prec)).unwrap();
        // no minimization needed: compare with the chord length 2 sinh(d / 2)
        let (xu, yu) = (timelike_unit(&x), timelike_unit(&y));
        let d: V = core::array::from_fn(|i| yu[i] - xu[i]);
        let chord = dot(&d, &d).max(0.0).sqrt();
        t.check(&closed, 2.0 * (chord / 2.0).asinh(), || format!("{x:?} {y:?}"));
    }
    out.push(t.0);

    let mut t = Tally::new("point-line");
    for _ in 0..n {
        let (x, a, b) = (point(rng, R), ideal_point(rng), ideal_point(rng));
        let closed = point_line(&hp(&x, prec), &hl(&a, &b, prec)).unwrap();
        let xu = timelike_unit(&x);
        let oracle = acosh1(min_on_line(&a, &b, |y| -dot(&xu, y), ITERS).1);
        t.check(&closed, oracle, || format!("{x:?} {a:?} {b:?}"));
    }
    out.push(t.0);

    let mut t = Tally::new("line-line");
    for _ in 0..n {
        let (a, b, c, d) = (ideal_point(rng), ideal_point(rng), ideal_point(rng), ideal_point(rng));
        let closed = line_line(&hl(&a, &b, prec), &hl(&c, &d, prec)).unwrap();
        let oracle = acosh1(min_on_line(&a, &b, |y| min_on_line(&c, &d, |z| -dot(y, z), ITERS).1, ITERS).1);
        t.check(&closed, oracle, || format!("{a:?} {b:?} {c:?} {d:?}"));
    }
    out.push(t.0);

    let mut t = Tally::new("point-plane");
    for _ in 0..n {
        let (x, n) = (point(rng, R), plane(rng, 2.0));
        let closed = point_plane(&hp(&x, prec), &hpl(&n, prec));
        let xu = timelike_unit(&x);
        let oracle = acosh1(min_on_plane(&unit(&n), |y| -dot(&xu, y), ITERS));
        t.check(&closed, oracle, || format!("{x:?} {n:?}"));
    }
    out.push(t.0);

    let mut t = Tally::new("line-plane");
    for _ in 0..n {
        let (a, b, n) = (ideal_point(rng), ideal_point(rng), plane(rng, 2.0));
        let closed = line_plane(&hl(&a, &b, prec), &hpl(&n, prec)).unwrap();
        let nu = unit(&n);
        let oracle = min_on_line(&a, &b, |y| plane_dist(y, &nu), ITERS).1;
        t.check(&closed, oracle, || format!("{a:?} {b:?} {n:?}"));
    }
    out.push(t.0);

    let mut t = Tally::new("plane-plane");
    for _ in 0..n {
        let (n1, n2) = (plane(rng, 2.0), plane(rng, 2.0));
        let closed = plane_plane(&hpl(&n1, prec), &hpl(&n2, prec)).unwrap();
        let (u1, u2) = (unit(&n1), unit(&n2));
        let oracle = min_on_plane(&u1, |y| plane_dist(y, &u2), ITERS);
        t.check(&closed, oracle, || format!("{n1:?} {n2:?}"));
    }
    out.push(t.0);

    let mut t = Tally::new("point-horoball");
    for _ in 0..n {
        let (x, l) = (point(rng, R), ideal_point(rng));
        let closed = point_horoball(&hp(&x, prec), &hb(&l, prec)).unwrap();
        let xu = timelike_unit(&x);
        let d = acosh1(min_on_horosphere(&l, |y| -dot(&xu, y), ITERS));
        let oracle = if dot(&xu, &l) > -1.0 { -d } else { d };
        t.check(&closed, oracle, || format!("{x:?} {l:?}"));
    }
    out.push(t.0);

    let mut t = Tally::new("line-horoball");
    for _ in 0..n {
        let (a, b, l) = (ideal_point(rng), ideal_point(rng), ideal_point(rng));
        let closed = line_horoball(&hl(&a, &b, prec), &hb(&l, prec)).unwrap();
        let oracle = min_on_line(&a, &b, |y| busemann(y, &l), ITERS).1;
        t.check(&closed, oracle, || format!("{a:?} {b:?} {l:?}"));
    }
    out.push(t.0);

    let mut t = Tally::new("plane-horoball");
    for _ in 0..n {
        let (n, l) = (plane(rng, 2.0), ideal_point(rng));
        let closed = plane_horoball(&hpl(&n, prec), &hb(&l, prec)).unwrap();
        let oracle = min_on_plane(&unit(&n), |y| busemann(y, &l), ITERS);
        t.check(&closed, oracle, || format!("{n:?} {l:?}"));
    }
    out.push(t.0);

    let mut t = Tally::new("horoball-horoball");
    for _ in 0..n {
        let (l, m) = (ideal_point(rng), ideal_point(rng));
        let closed = horoball_horoball(&hb(&l, prec), &hb(&m, prec)).unwrap();
        let oracle = min_on_horosphere(&m, |y| busemann(y, &l), ITERS);
        t.check(&closed, oracle, || format!("{l:?} {m:?}"));
    }
    out.push(t.0);

    let mut t = Tally::new("projection-offset");
    for _ in 0..n {
        let (a, b, x, y) = (ideal_point(rng), ideal_point(rng), point(rng, R), point(rng, R));
        let closed = line_projection_offset(&hl(&a, &b, prec), &hp(&x, prec), &hp(&y, prec)).unwrap();
        let (xu, yu) = (timelike_unit(&x), timelike_unit(&y));
        let tx = min_on_line(&a, &b, |z| -dot(&xu, z), ITERS).0;
        let ty = min_on_line(&a, &b, |z| -dot(&yu, z), ITERS).0;
        t.check(&closed, tx - ty, || format!("{a:?} {b:?} {x:?} {y:?}"));
    }
    out.push(t.0);

    let mut t = Tally::new("horospherical-length");
    for _ in 0..n {
        let (l, a, b) = (ideal_point(rng), ideal_point(rng), ideal_point(rng));
        let closed = horospherical_length(&hb(&l, prec), &mv(&a, prec), &mv(&b, prec)).unwrap();
        // feet of the geodesics from the center of the horoball to a, b
        let foot = |x: &V| -> V { core::array::from_fn(|i| l[i] / 2.0 - x[i] / dot(x, &l)) };
        let (fa, fb) = (foot(&a), foot(&b));
        let d: V = core::array::from_fn(|i| fa[i] - fb[i]);
        t.check(&closed, dot(&d, &d).max(0.0).sqrt(), || format!("{l:?} {a:?} {b:?}"));
    }
    out.push(t.0);

    let tri = |rng: &mut _| -> ([V; 3], IdealTriangle) {
        let v = [ideal_point(rng), ideal_point(rng), ideal_point(rng)];
        let t = IdealTriangle::new([mv(&v[0], prec), mv(&v[1], prec), mv(&v[2], prec)]).unwrap();
        (v, t)
    };

    let mut t = Tally::new("point-triangle");
    let mut lb = Tally::new("point-triangle lower bound");
    for _ in 0..n {
        let x = point(rng, R);
        let (v, tr) = tri(rng);
        let xp = hp(&x, prec);
        let closed = point_triangle(&xp, &tr, false).unwrap();
        let lower = point_triangle(&xp, &tr, true).unwrap();
        let xu = timelike_unit(&x);
        let oracle = acosh1(min_on_triangle(&v, |y| -dot(&xu, y), ITERS));
        t.check(&closed, oracle, || format!("{x:?} {v:?}"));
        lb.check_below(&lower, oracle, || format!("{x:?} {v:?}"));
        lb.check_below(&lower, closed.hi_f64(), || format!("exact mode {x:?} {v:?}"));
    }
    out.push(t.0);
    out.push(lb.0);

    let mut t = Tally::new("line-triangle");
    let mut lb = Tally::new("line-triangle lower bound");
    for _ in 0..n {
        let (a, b) = (ideal_point(rng), ideal_point(rng));
        let (v, tr) = tri(rng);
        let l = hl(&a, &b, prec);
        let closed = line_triangle(&l, &tr, false).unwrap();
        let lower = line_triangle(&l, &tr, true).unwrap();
        let oracle = acosh1(min_on_line(&a, &b, |y| min_on_triangle(&v, |z| -dot(y, z), 45), 60).1);
        t.check(&closed, oracle, || format!("{a:?} {b:?} {v:?}"));
        lb.check_below(&lower, oracle, || format!("{a:?} {b:?} {v:?}"));
        lb.check_below(&lower, closed.hi_f64(), || format!("exact mode {a:?} {b:?} {v:?}"));
    }
    out.push(t.0);
    out.push(lb.0);

    let mut t = Tally::new("horoball-triangle");
    let mut lb = Tally::new("horoball-triangle lower bound");
    for _ in 0..n {
        let l = ideal_point(rng);
        let (v, tr) = tri(rng);
        let ball = hb(&l, prec);
        let closed = horoball_triangle(&ball, &tr, false).unwrap();
        let lower = horoball_triangle(&ball, &tr, true).unwrap();
        let oracle = min_on_triangle(&v, |y| busemann(y, &l), ITERS);
        t.check(&closed, oracle, || format!("{l:?} {v:?}"));
        lb.check_below(&lower, oracle, || format!("{l:?} {v:?}"));
        lb.check_below(&lower, closed.hi_f64(), || format!("exact mode {l:?} {v:?}"));
    }
    out.push(t.0);
    out.push(lb.0);

    out
}
