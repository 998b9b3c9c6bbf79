//! Objects in the hyperboloid model and certified distances between them.
//!
//! Horoball distances are signed: negative when the objects intersect.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::minkowski::{orthogonal_to, MMatrix, MVector};

/// Point with `x . x = -1`, `x0 > 0`.
#[derive(Clone, Debug)]
pub struct HPoint(pub MVector);

/// Geodesic with light-like endpoints `x0`, `x1`.
#[derive(Clone, Debug)]
pub struct HLine {
    pub x0: MVector,
    pub x1: MVector,
}

/// Horoball `B(l) = { x : x . l > -1 }` for light-like `l`.
#[derive(Clone, Debug)]
pub struct Horoball(pub MVector);

/// Plane `{ x : x . n = 0 }` with unit space-like normal.
#[derive(Clone, Debug)]
pub struct HPlane(pub MVector);

/// Ideal triangle with its supporting plane and, for each vertex `v_k`,
/// the unit normal `side_normals[k]` of the plane through the opposite
/// edge perpendicular to the triangle, pointing towards `v_k`.
#[derive(Clone, Debug)]
pub struct IdealTriangle {
    pub vertices: [MVector; 3],
    pub plane: HPlane,
    pub touch_points: [MVector; 3],
    pub side_normals: [MVector; 3],
}

// max(x, 0) and max(x, 1): valid enclosures that never become empty
fn nonneg(x: &Interval) -> Interval {
    x.max(&Interval::zero(x.prec()))
}

fn at_least_one(x: &Interval) -> Interval {
    x.max(&Interval::one(x.prec()))
}

/// `max(num, 0) / max(den, 0)`, unbounded above when `den` may vanish
/// (line endpoints that cannot be told apart).
fn div_nonneg(num: &Interval, den: &Interval) -> Result<Interval> {
    let (num, den) = (nonneg(num), nonneg(den));
    if den.is_positive() {
        return num.div(&den);
    }
    let prec = num.prec();
    let top = Interval::new(den.hi().clone(), den.hi().clone(), prec);
    let lo = if top.is_positive() { num.div(&top)?.lo().clone() } else { crate::bigfloat::zero(prec) };
    Ok(Interval::new(lo, crate::bigfloat::inf_pos(), prec))
}

impl HPoint {
    pub fn from_f64(v: [f64; 4], prec: usize) -> HPoint {
        HPoint(MVector::from_f64(v, prec))
    }

    /// Normalizes a time-like vector onto the hyperboloid.
    pub fn from_timelike(v: &MVector) -> Result<HPoint> {
        let n = v.norm_sqr();
        if !n.is_negative() {
            return Err(Error::InsufficientPrecision("vector not certified time-like"));
        }
        let mut x = v.normalize()?;
        if x.0[0].is_negative() {
            x = x.neg();
        }
        Ok(HPoint(x))
    }

    pub fn transform(&self, m: &MMatrix) -> HPoint {
        HPoint(m.apply(&self.0))
    }
}

impl HLine {
    pub fn new(x0: MVector, x1: MVector) -> HLine {
        HLine { x0, x1 }
    }

    pub fn transform(&self, m: &MMatrix) -> HLine {
        HLine { x0: m.apply(&self.x0), x1: m.apply(&self.x1) }
    }

    /// Point on the line where `(e^t x0 + e^-t x1)` is normalized, `t = 0`.
    pub fn midpoint(&self) -> Result<HPoint> {
        HPoint::from_timelike(&self.x0.add(&self.x1))
    }
}

impl Horoball {
    pub fn transform(&self, m: &MMatrix) -> Horoball {
        Horoball(m.apply(&self.0))
    }
}

impl HPlane {
    pub fn transform(&self, m: &MMatrix) -> HPlane {
        HPlane(m.apply(&self.0))
    }
}

impl IdealTriangle {
    pub fn new(v: [MVector; 3]) -> Result<IdealTriangle> {
        let ortho = orthogonal_to(&v[0], &v[1], &v[2]);
        let n = ortho.normalize()?;
        let mut touch = [v[0].clone(), v[1].clone(), v[2].clone()];
        let mut side = [v[0].clone(), v[1].clone(), v[2].clone()];
        for i in 0..3 {
            let j = (i + 1) % 3;
            let k = (i + 2) % 3;
            // closest point of edge v_j v_k to the ideal point v_i
            let a = v[i].dot(&v[k]);
            let b = v[i].dot(&v[j]);
            let m = v[j].scale(&a).add(&v[k].scale(&b)).neg();
            let m = HPoint::from_timelike(&m)?.0;
            let w = v[i].sub(&m);
            let t = w.add(&m.scale(&w.dot(&m)));
            side[i] = t.normalize()?;
            touch[i] = m;
        }
        Ok(IdealTriangle { vertices: v, plane: HPlane(n), touch_points: touch, side_normals: side })
    }

    pub fn transform(&self, g: &MMatrix) -> IdealTriangle {
        IdealTriangle {
            vertices: [g.apply(&self.vertices[0]), g.apply(&self.vertices[1]), g.apply(&self.vertices[2])],
            plane: self.plane.transform(g),
            touch_points: [
                g.apply(&self.touch_points[0]),
                g.apply(&self.touch_points[1]),
                g.apply(&self.touch_points[2]),
            ],
            side_normals: [
                g.apply(&self.side_normals[0]),
                g.apply(&self.side_normals[1]),
                g.apply(&self.side_normals[2]),
            ],
        }
    }

    /// Edge opposite vertex `k`.
    pub fn edge(&self, k: usize) -> HLine {
        HLine::new(self.vertices[(k + 1) % 3].clone(), self.vertices[(k + 2) % 3].clone())
    }

    /// Distance from an object whose nearest point on the supporting plane
    /// is decided by the test vector `probe`. `edge_dist` and `plane_dist`
    /// supply the two candidate formulas.
    fn case_split(
        &self,
        probe: &MVector,
        lower_bound_only: bool,
        edge_dist: impl Fn(&HLine) -> Result<Interval>,
        plane_dist: impl Fn(&HPlane) -> Result<Interval>,
    ) -> Result<Interval> {
        let signs: [Interval; 3] = [
            probe.dot(&self.side_normals[0]),
            probe.dot(&self.side_normals[1]),
            probe.dot(&self.side_normals[2]),
        ];
        for k in 0..3 {
            if !crate::bigfloat::is_pos(signs[k].hi()) {
                return edge_dist(&self.edge(k));
            }
        }
        let pd = plane_dist(&self.plane)?;
        if lower_bound_only {
            return Ok(pd);
        }
        let mut out = pd;
        for k in 0..3 {
            if !signs[k].is_positive() {
                out = out.hull(&edge_dist(&self.edge(k))?);
            }
        }
        Ok(out)
    }
}

/// `acosh(-x . x')`
pub fn point_point(x: &HPoint, y: &HPoint) -> Result<Interval> {
    at_least_one(&x.0.dot(&y.0).neg()).acosh()
}

pub fn point_line(x: &HPoint, l: &HLine) -> Result<Interval> {
    let num = (&l.x0.dot(&x.0) * &x.0.dot(&l.x1)).scale(2.0);
    // clamp after the root, whose outward rounding can dip below 1
    at_least_one(&div_nonneg(&num, &l.x0.dot(&l.x1).neg())?.sqrt()?).acosh()
}

pub fn point_plane(x: &HPoint, p: &HPlane) -> Interval {
    x.0.dot(&p.0).asinh().abs()
}

/// Signed distance `log(-x . l)`.
pub fn point_horoball(x: &HPoint, b: &Horoball) -> Result<Interval> {
    nonneg(&x.0.dot(&b.0).neg()).ln()
}

pub fn line_line(a: &HLine, b: &HLine) -> Result<Interval> {
    let d = (&a.x0.dot(&a.x1) * &b.x0.dot(&b.x1)).abs();
    let t1 = div_nonneg(&(&a.x0.dot(&b.x0) * &a.x1.dot(&b.x1)), &d)?.sqrt()?;
    let t2 = div_nonneg(&(&a.x0.dot(&b.x1) * &a.x1.dot(&b.x0)), &d)?.sqrt()?;
    let lam = t1 + t2;
    let u = nonneg(&(lam - Interval::one(d.prec())).scale(0.5));
    Ok(u.sqrt()?.asinh().scale(2.0))
}

pub fn line_plane(l: &HLine, p: &HPlane) -> Result<Interval> {
    let a = l.x0.dot(&p.0);
    let b = p.0.dot(&l.x1);
    let prod = &a * &b;
    let prec = prod.prec();
    if !prod.is_positive() {
        // the line meets the plane, or may do so
        if !crate::bigfloat::is_pos(prod.hi()) {
            return Ok(Interval::zero(prec));
        }
        let v = div_nonneg(&prod.scale(2.0), &l.x0.dot(&l.x1).neg())?.sqrt()?.asinh();
        return Ok(Interval::zero(prec).hull(&v));
    }
    let v = div_nonneg(&prod.scale(2.0), &l.x0.dot(&l.x1).neg())?.sqrt()?.asinh();
    Ok(v)
}

/// Signed distance `log sqrt(-2 (x0 . l)(l . x1) / (x0 . x1))`.
pub fn line_horoball(l: &HLine, b: &Horoball) -> Result<Interval> {
    let num = (&l.x0.dot(&b.0) * &b.0.dot(&l.x1)).scale(-2.0);
    let v = nonneg(&num.div(&l.x0.dot(&l.x1))?);
    Ok(v.ln()?.scale(0.5))
}

pub fn plane_plane(p: &HPlane, q: &HPlane) -> Result<Interval> {
    at_least_one(&p.0.dot(&q.0).abs()).acosh()
}

/// Signed distance `log |n . l|`.
pub fn plane_horoball(p: &HPlane, b: &Horoball) -> Result<Interval> {
    p.0.dot(&b.0).abs().ln()
}

/// Signed distance `log(-l . l' / 2)`.
pub fn horoball_horoball(a: &Horoball, b: &Horoball) -> Result<Interval> {
    nonneg(&a.0.dot(&b.0).scale(-0.5)).ln()
}

/// Signed distance between the projections of `x` and `y` onto the line,
/// positive when `y` lies further towards `x1`.
pub fn line_projection_offset(l: &HLine, x: &HPoint, y: &HPoint) -> Result<Interval> {
    let num = x.0.dot(&l.x1).mul(&y.0.dot(&l.x0));
    let den = x.0.dot(&l.x0).mul(&y.0.dot(&l.x1));
    Ok(num.div(&den)?.ln()?.scale(0.5))
}

/// Euclidean length of the segment `x0 x1` projected to the horosphere
/// bounding `b`.
pub fn horospherical_length(b: &Horoball, x0: &MVector, x1: &MVector) -> Result<Interval> {
    let num = x0.dot(x1).scale(-2.0);
    let den = x0.dot(&b.0).mul(&b.0.dot(x1));
    nonneg(&num.div(&den)?).sqrt()
}

pub fn point_triangle(x: &HPoint, t: &IdealTriangle, lower_bound_only: bool) -> Result<Interval> {
    t.case_split(&x.0, lower_bound_only, |e| point_line(x, e), |p| Ok(point_plane(x, p)))
}

pub fn line_triangle(l: &HLine, t: &IdealTriangle, lower_bound_only: bool) -> Result<Interval> {
    let n = &t.plane.0;
    let a = l.x1.dot(n).abs();
    let b = l.x0.dot(n).abs();
    let probe = l.x0.scale(&a).add(&l.x1.scale(&b));
    t.case_split(&probe, lower_bound_only, |e| line_line(l, e), |p| line_plane(l, p))
}

pub fn horoball_triangle(b: &Horoball, t: &IdealTriangle, lower_bound_only: bool) -> Result<Interval> {
    t.case_split(&b.0, lower_bound_only, |e| line_horoball(e, b), |p| plane_horoball(p, b))
}

/// Geometric object for tilings and distance queries.
#[derive(Clone, Debug)]
pub enum Object {
    Point(HPoint),
    Line(HLine),
    Horoball(Horoball),
    Plane(HPlane),
}

impl Object {
    pub fn transform(&self, m: &MMatrix) -> Object {
        match self {
            Object::Point(p) => Object::Point(p.transform(m)),
            Object::Line(l) => Object::Line(l.transform(m)),
            Object::Horoball(b) => Object::Horoball(b.transform(m)),
            Object::Plane(p) => Object::Plane(p.transform(m)),
        }
    }

    /// Distance between the objects; signed if either is a horoball.
    pub fn distance(&self, other: &Object) -> Result<Interval> {
        use Object::*;
        match (self, other) {
            (Point(a), Point(b)) => point_point(a, b),
            (Point(a), Line(b)) | (Line(b), Point(a)) => point_line(a, b),
            (Point(a), Plane(b)) | (Plane(b), Point(a)) => Ok(point_plane(a, b)),
            (Point(a), Horoball(b)) | (Horoball(b), Point(a)) => point_horoball(a, b),
            (Line(a), Line(b)) => line_line(a, b),
            (Line(a), Plane(b)) | (Plane(b), Line(a)) => line_plane(a, b),
            (Line(a), Horoball(b)) | (Horoball(b), Line(a)) => line_horoball(a, b),
            (Plane(a), Plane(b)) => plane_plane(a, b),
            (Plane(a), Horoball(b)) | (Horoball(b), Plane(a)) => plane_horoball(a, b),
            (Horoball(a), Horoball(b)) => horoball_horoball(a, b),
        }
    }

    /// Distance to an ideal triangle.
    pub fn distance_to_triangle(&self, t: &IdealTriangle, lower_bound_only: bool) -> Result<Interval> {
        match self {
            Object::Point(p) => point_triangle(p, t, lower_bound_only),
            Object::Line(l) => line_triangle(l, t, lower_bound_only),
            Object::Horoball(b) => horoball_triangle(b, t, lower_bound_only),
            Object::Plane(_) => Err(Error::Unsupported("plane to triangle distance".into())),
        }
    }
}

/// Axis of a loxodromic element `h` together with `h` itself; `h` moves
/// points along the axis towards `line.x1` by `length`.
#[derive(Clone, Debug)]
pub struct ClosedGeodesic {
    pub line: HLine,
    pub holonomy: MMatrix,
    pub inverse: MMatrix,
    pub length: Interval,
}

fn trace4(m: &MMatrix) -> Interval {
    &(&m.0[0][0] + &m.0[1][1]) + &(&m.0[2][2] + &m.0[3][3])
}

fn future(v: MVector) -> Result<MVector> {
    if v.0[0].is_positive() {
        Ok(v)
    } else if v.0[0].is_negative() {
        Ok(v.neg())
    } else {
        Err(Error::InsufficientPrecision("fixed point not certified future pointing"))
    }
}

impl ClosedGeodesic {
    /// Fixed points of `h` from the eigenvalues `e^{+-l}`, `e^{+-i theta}`.
    /// With `a = cosh l` and `c = cos theta`, `tr h = 2a + 2c` and
    /// `tr h^2 = 4a^2 + 4c^2 - 4`.
    pub fn from_holonomy(h: &MMatrix) -> Result<ClosedGeodesic> {
        let prec = h.prec();
        let one = Interval::one(prec);
        let h2 = h.mul(h);
        let s = trace4(h).scale(0.5);
        let q = (trace4(&h2) + Interval::from_f64(4.0, prec)).scale(0.25);
        let disc = q.scale(2.0) - s.sqr();
        if !disc.is_positive() {
            return Err(Error::Unsupported("element is not loxodromic".into()));
        }
        let root = disc.sqrt()?;
        let a = (&s + &root).scale(0.5);
        let c = (&s - &root).scale(0.5);
        if !(&a - &one).is_positive() {
            return Err(Error::Unsupported("element is not loxodromic".into()));
        }
        let stretch = &a + &(a.sqr() - one.clone()).sqrt()?;
        let shrink = stretch.recip()?;
        let id = MMatrix::identity(prec);
        // h^2 - 2c h + 1 kills the rotation eigenspace
        let rot = MMatrix(core::array::from_fn(|i| {
            core::array::from_fn(|j| &(&h2.0[i][j] - &(&c * &h.0[i][j]).scale(2.0)) + &id.0[i][j])
        }));
        let shifted = |e: &Interval| {
            MMatrix(core::array::from_fn(|i| core::array::from_fn(|j| &h.0[i][j] - &(e * &id.0[i][j]))))
        };
        let v = MVector::basis(0, prec);
        let base = rot.apply(&v);
        let x1 = future(shifted(&shrink).apply(&base))?;
        let x0 = future(shifted(&stretch).apply(&base))?;
        Ok(ClosedGeodesic { line: HLine::new(x0, x1), holonomy: h.clone(), inverse: h.o13_inverse(), length: a.acosh()? })
    }

    /// Image under `m`, with the holonomy conjugated accordingly.
    pub fn transform(&self, m: &MMatrix) -> ClosedGeodesic {
        let mi = m.o13_inverse();
        ClosedGeodesic {
            line: self.line.transform(m),
            holonomy: m.mul(&self.holonomy).mul(&mi),
            inverse: m.mul(&self.inverse).mul(&mi),
            length: self.length.clone(),
        }
    }
}
