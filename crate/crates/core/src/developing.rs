//! Cusp cross sections, standard form bounds and the developed
//! fundamental polyhedron in the hyperboloid model.

use crate::certify::shape_terms;
use crate::complex::ComplexInterval;
use crate::error::{Error, Result};
use crate::geometry::{horospherical_length, HPoint, Horoball, IdealTriangle};
use crate::interval::Interval;
use crate::minkowski::{orthogonal_to, solve4, MMatrix, MVector};
use crate::triangulation::{corners_ccw, edge_shape_kind, Triangulation, EDGE_VERTICES};
use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::array;

/// The triangle cut out of tetrahedron `tet` by a horosphere about
/// `vertex`. Sides are indexed by the face they lie in, corners by the
/// vertex whose edge they sit on; index `vertex` is unused in both.
#[derive(Clone, Debug)]
pub struct HoroTriangle {
    pub tet: usize,
    pub vertex: usize,
    pub lengths: [Interval; 4],
    /// Corner positions in a development of the cusp torus in `C`.
    pub corners: [ComplexInterval; 4],
    pub area: Interval,
}

/// Compatible Euclidean edge lengths on the cusp triangulation of a cusp.
#[derive(Clone, Debug)]
pub struct CuspCrossSection {
    pub cusp: usize,
    pub triangles: Vec<HoroTriangle>,
    index: Vec<[usize; 4]>,
}

impl CuspCrossSection {
    pub fn triangle(&self, t: usize, v: usize) -> Option<&HoroTriangle> {
        match self.index.get(t).map(|r| r[v]) {
            Some(i) if i != usize::MAX => Some(&self.triangles[i]),
            _ => None,
        }
    }

    /// Length of the side on face `f` of the triangle at vertex `v` of `t`.
    pub fn length(&self, t: usize, v: usize, f: usize) -> &Interval {
        &self.triangle(t, v).expect("vertex belongs to another cusp").lengths[f]
    }

    pub fn area(&self) -> Interval {
        let p = self.triangles[0].area.prec();
        self.triangles.iter().fold(Interval::zero(p), |a, t| a.add(&t.area))
    }

    /// Multiplies all lengths by `c`.
    pub fn scaled(&self, c: &Interval) -> CuspCrossSection {
        let c2 = c.sqr();
        let cc = ComplexInterval::real(c.clone());
        let triangles = self
            .triangles
            .iter()
            .map(|t| HoroTriangle {
                tet: t.tet,
                vertex: t.vertex,
                lengths: array::from_fn(|f| t.lengths[f].mul(c)),
                corners: array::from_fn(|k| t.corners[k].mul(&cc)),
                area: t.area.mul(&c2),
            })
            .collect();
        CuspCrossSection { cusp: self.cusp, triangles, index: self.index.clone() }
    }

    /// Rescales to total area `a`.
    pub fn with_area(&self, a: &Interval) -> Result<CuspCrossSection> {
        let c = a.div(&self.area())?.sqrt()?;
        Ok(self.scaled(&c))
    }
}

/// The parameters `z`, `1/(1-z)`, `1-1/z` of each tetrahedron.
pub fn shape_parameters(z: &[ComplexInterval]) -> Result<Vec<[ComplexInterval; 3]>> {
    z.iter().map(shape_terms).collect()
}

/// Side length ratios of the horotriangle at `v` relative to the side on
/// the face `r` of `corners_ccw(v) = [p, q, r]`.
fn base_lengths(params: &[ComplexInterval; 3], v: usize) -> [Interval; 4] {
    let [p, q, r] = corners_ccw(v);
    let w = &params[edge_shape_kind(v, p)];
    let prec = w.prec();
    let mut out: [Interval; 4] = array::from_fn(|_| Interval::zero(prec));
    out[r] = Interval::one(prec);
    out[q] = w.abs();
    out[p] = w.sub(&ComplexInterval::one(prec)).abs();
    out
}

/// Completes the corner positions of the triangle at `v` given two of them.
fn third_corner(params: &[ComplexInterval; 3], v: usize, corners: &mut [Option<ComplexInterval>; 4]) -> Result<()> {
    let [p, q, r] = corners_ccw(v);
    let w = &params[edge_shape_kind(v, p)];
    let one = ComplexInterval::one(w.prec());
    // (P_r - P_p) = w (P_q - P_p)
    match (corners[p].clone(), corners[q].clone(), corners[r].clone()) {
        (Some(a), Some(b), None) => corners[r] = Some(a.add(&w.mul(&b.sub(&a)))),
        (Some(a), None, Some(c)) => corners[q] = Some(a.add(&c.sub(&a).div(w)?)),
        (None, Some(b), Some(c)) => corners[p] = Some(w.mul(&b).sub(&c).div(&w.sub(&one))?),
        _ => unreachable!("exactly one corner is unknown"),
    }
    Ok(())
}

/// Develops a cross section of `cusp` by breadth-first propagation from
/// the first triangle of the cusp, whose side on face `r` gets length 1.
pub fn develop_cusp_cross_section(t: &Triangulation, z: &[ComplexInterval], cusp: usize) -> Result<CuspCrossSection> {
    let params = shape_parameters(z)?;
    let members = t.cusp_members(cusp);
    if members.is_empty() {
        return Err(Error::InvalidTriangulation(format!("no cusp {cusp}")));
    }
    let prec = z[0].prec();
    let n = t.num_tetrahedra();
    let mut scale: Vec<[Option<Interval>; 4]> = vec![array::from_fn(|_| None); n];
    let mut corners: Vec<[Option<[ComplexInterval; 4]>; 4]> = vec![array::from_fn(|_| None); n];
    let (t0, v0) = members[0];
    let [p, q, r] = corners_ccw(v0);
    scale[t0][v0] = Some(Interval::one(prec));
    let mut seed: [ComplexInterval; 4] = array::from_fn(|_| ComplexInterval::zero(prec));
    seed[q] = ComplexInterval::one(prec);
    seed[r] = params[t0][edge_shape_kind(v0, p)].clone();
    corners[t0][v0] = Some(seed);
    let mut queue = VecDeque::from([(t0, v0)]);
    while let Some((ti, v)) = queue.pop_front() {
        let base = base_lengths(&params[ti], v);
        let l = scale[ti][v].clone().unwrap();
        for f in 0..4 {
            if f == v {
                continue;
            }
            let tet = &t.tets[ti];
            let (t2, g) = (tet.neighbors[f], tet.gluings[f]);
            let (v2, f2) = (g.apply(v), g.apply(f));
            let side = l.mul(&base[f]);
            let b2 = base_lengths(&params[t2], v2);
            if let Some(l2) = &scale[t2][v2] {
                if !side.overlaps(&l2.mul(&b2[f2])) {
                    return Err(Error::InsufficientPrecision("cusp cross section does not close up"));
                }
                continue;
            }
            scale[t2][v2] = Some(side.div(&b2[f2])?);
            let here = corners[ti][v].clone().unwrap();
            let mut c2: [Option<ComplexInterval>; 4] = array::from_fn(|_| None);
            for a in 0..4 {
                if a != v && a != f {
                    c2[g.apply(a)] = Some(here[a].clone());
                }
            }
            third_corner(&params[t2], v2, &mut c2)?;
            c2[v2] = Some(ComplexInterval::zero(prec));
            corners[t2][v2] = Some(array::from_fn(|k| c2[k].clone().unwrap()));
            queue.push_back((t2, v2));
        }
    }
    let mut tris = Vec::with_capacity(members.len());
    let mut index = vec![[usize::MAX; 4]; n];
    for &(ti, v) in &members {
        let l = scale[ti][v]
            .clone()
            .ok_or_else(|| Error::InvalidTriangulation(String::from("cusp triangulation is disconnected")))?;
        let base = base_lengths(&params[ti], v);
        let lengths = array::from_fn(|f| if f == v { Interval::zero(prec) } else { l.mul(&base[f]) });
        let w = &params[ti][edge_shape_kind(v, corners_ccw(v)[0])];
        let area = l.sqr().mul(&w.im).scale(0.5);
        index[ti][v] = tris.len();
        let c = corners[ti][v].clone().unwrap();
        tris.push(HoroTriangle { tet: ti, vertex: v, lengths, corners: c, area });
    }
    Ok(CuspCrossSection { cusp, triangles: tris, index })
}

/// Maximal area of a horotriangle about a vertex of a tetrahedron with
/// shape `z` whose horoball meets the tetrahedron in standard form.
pub fn max_standard_area(z: &ComplexInterval) -> Result<Interval> {
    let prec = z.prec();
    let one = ComplexInterval::one(prec);
    let abs_z = z.abs();
    let abs_1z = one.sub(z).abs();
    // the triangle (0, 1, z) is acute iff 0 < Re z < 1 and |z|^2 > Re z
    let tests = [z.re.clone(), Interval::one(prec).sub(&z.re), z.norm_sqr().sub(&z.re)];
    let acute = tests.iter().all(|x| x.is_positive());
    let obtuse = tests.iter().any(|x| !crate::bigfloat::is_pos(x.hi()));
    let h_acute = || -> Result<Interval> { Ok(abs_z.mul(&abs_1z).div(&z.im)?.scale(0.5)) };
    let h_other = || abs_z.max(&abs_1z).max(&Interval::one(prec)).scale(0.5);
    let h = if acute {
        h_acute()?
    } else if obtuse {
        h_other()
    } else {
        h_acute()?.hull(&h_other())
    };
    z.im.div(&h.sqr().scale(2.0))
}

/// For each cusp, an enclosure of the largest length factor `s` such that
/// the cross section scaled by `s` meets every tetrahedron in standard
/// form and every edge from the cusp to itself has `a b <= 1`.
pub fn standard_form_scale(t: &Triangulation, z: &[ComplexInterval], cross_sections: &[CuspCrossSection]) -> Result<Vec<Interval>> {
    let nc = t.num_cusps();
    let mut bound: Vec<Option<Interval>> = vec![None; nc];
    let mut tighten = |c: usize, x: Interval| {
        bound[c] = Some(match bound[c].take() {
            None => x,
            Some(b) => b.min(&x),
        });
    };
    for cs in cross_sections {
        for tri in &cs.triangles {
            let a = max_standard_area(&z[tri.tet])?;
            tighten(cs.cusp, a.div(&tri.area)?);
        }
    }
    for class in t.edge_classes() {
        let (ti, e) = class.members[0];
        let (a, b) = EDGE_VERTICES[e];
        let (ca, cb) = (t.cusp_of(ti, a), t.cusp_of(ti, b));
        if ca != cb {
            continue;
        }
        let f = (0..4).find(|&f| f != a && f != b).unwrap();
        let cs = cross_sections.iter().find(|c| c.cusp == ca).ok_or(Error::Domain("missing cross section"))?;
        let prod = cs.length(ti, a, f).mul(cs.length(ti, b, f));
        tighten(ca, prod.recip()?);
    }
    bound
        .into_iter()
        .map(|b| b.ok_or(Error::Domain("missing cross section")).and_then(|b| b.sqrt()))
        .collect()
}

/// Point of `CP^1` as `[value : 1]`, or `[1 : value]` when `flipped`.
#[derive(Clone, Debug)]
pub struct ProjectivePoint {
    pub value: ComplexInterval,
    pub flipped: bool,
}

impl ProjectivePoint {
    pub fn finite(z: ComplexInterval) -> ProjectivePoint {
        ProjectivePoint { value: z, flipped: false }
    }

    pub fn infinity(prec: usize) -> ProjectivePoint {
        ProjectivePoint { value: ComplexInterval::zero(prec), flipped: true }
    }

    fn homogeneous(&self) -> (ComplexInterval, ComplexInterval) {
        let one = ComplexInterval::one(self.value.prec());
        if self.flipped {
            (one, self.value.clone())
        } else {
            (self.value.clone(), one)
        }
    }

    /// Picks the chart in which the coordinate has modulus at most about 1.
    fn from_homogeneous(p: ComplexInterval, q: ComplexInterval) -> Result<ProjectivePoint> {
        let (a, b) = (p.norm_sqr().mid_f64(), q.norm_sqr().mid_f64());
        if a <= b {
            Ok(ProjectivePoint { value: p.div(&q)?, flipped: false })
        } else {
            Ok(ProjectivePoint { value: q.div(&p)?, flipped: true })
        }
    }

    /// Light-like vector of the boundary point, up to positive scale.
    pub fn light_vector(&self) -> MVector {
        let (p, q) = self.homogeneous();
        let pp = p.norm_sqr();
        let qq = q.norm_sqr();
        let pq = p.mul(&q.conj());
        MVector([pp.add(&qq).scale(0.5), pq.re, pq.im, pp.sub(&qq).scale(0.5)])
    }
}

fn det2(x: &(ComplexInterval, ComplexInterval), y: &(ComplexInterval, ComplexInterval)) -> ComplexInterval {
    x.0.mul(&y.1).sub(&x.1.mul(&y.0))
}

/// Fourth vertex `u_l` with `cr(u_i, u_j, u_k, u_l) = w`.
fn fourth_vertex(a: &ProjectivePoint, b: &ProjectivePoint, c: &ProjectivePoint, w: &ComplexInterval) -> Result<ProjectivePoint> {
    let (a, b, c) = (a.homogeneous(), b.homogeneous(), c.homogeneous());
    let ca = det2(&c, &a);
    let cb = w.mul(&det2(&c, &b));
    let p = ca.mul(&b.0).sub(&cb.mul(&a.0));
    let q = ca.mul(&b.1).sub(&cb.mul(&a.1));
    ProjectivePoint::from_homogeneous(p, q)
}

/// A fundamental polyhedron made of one chart per tetrahedron.
#[derive(Clone, Debug)]
pub struct DevelopedPolyhedron {
    pub triangulation: Triangulation,
    pub shapes: Vec<ComplexInterval>,
    /// Cross sections used to scale the vertices, one per cusp.
    pub cross_sections: Vec<CuspCrossSection>,
    pub ideal_points: Vec<[ProjectivePoint; 4]>,
    pub vertices: Vec<[MVector; 4]>,
    pub normals: Vec<[MVector; 4]>,
    pub faces: Vec<[IdealTriangle; 4]>,
    pub pairings: Vec<[MMatrix; 4]>,
    /// Faces crossed by the spanning tree of the dual 1-skeleton.
    pub tree: Vec<[bool; 4]>,
    pub incenters: Vec<HPoint>,
    pub inradii: Vec<Interval>,
    /// Non-tree face pairs `(t, f)` with `(t, f) < (t', f')`, in order;
    /// generator `i` is the pairing matrix of `generators[i]`.
    pub generators: Vec<(usize, usize)>,
}

/// Orders `(i, j, k)` so that `(i, j, k, l)` is an even permutation.
fn even_completion(l: usize) -> [usize; 3] {
    let mut rest = [0usize; 3];
    let mut k = 0;
    for v in 0..4 {
        if v != l {
            rest[k] = v;
            k += 1;
        }
    }
    let perm = [rest[0], rest[1], rest[2], l];
    let mut inv = 0;
    for a in 0..4 {
        for b in a + 1..4 {
            if perm[a] > perm[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 1 {
        rest.swap(0, 1);
    }
    rest
}

fn face_vertices(f: usize) -> [usize; 3] {
    let mut out = [0usize; 3];
    let mut k = 0;
    for v in 0..4 {
        if v != f {
            out[k] = v;
            k += 1;
        }
    }
    out
}

/// Develops the fundamental polyhedron: tet 0 is placed at
/// `(inf, 0, 1, z_0)` and the others are attached along a breadth-first
/// spanning tree; vertices are scaled to match `cross_sections`.
pub fn develop_polyhedron(t: &Triangulation, z: &[ComplexInterval], cross_sections: &[CuspCrossSection]) -> Result<DevelopedPolyhedron> {
    let n = t.num_tetrahedra();
    let prec = z[0].prec();
    let params = shape_parameters(z)?;
    let cs_of = |c: usize| -> Result<&CuspCrossSection> {
        cross_sections.iter().find(|s| s.cusp == c).ok_or(Error::Domain("missing cross section"))
    };
    let mut points: Vec<Option<[ProjectivePoint; 4]>> = vec![None; n];
    let mut verts: Vec<Option<[MVector; 4]>> = vec![None; n];
    let mut tree = vec![[false; 4]; n];

    // scale of vertex v of tet ti so that the horosphere distance between
    // the other two vertices of its lowest face matches the cross section
    let scaled = |ti: usize, v: usize, pts: &[ProjectivePoint; 4]| -> Result<MVector> {
        let f = (0..4).find(|&f| f != v).unwrap();
        let others: Vec<usize> = (0..4).filter(|&k| k != v && k != f).collect();
        let l = pts[v].light_vector();
        let d = horospherical_length(&Horoball(l.clone()), &pts[others[0]].light_vector(), &pts[others[1]].light_vector())?;
        let e = cs_of(t.cusp_of(ti, v))?.length(ti, v, f).clone();
        Ok(l.scale(&d.div(&e)?))
    };

    let p0 = [
        ProjectivePoint::infinity(prec),
        ProjectivePoint::finite(ComplexInterval::zero(prec)),
        ProjectivePoint::finite(ComplexInterval::one(prec)),
        ProjectivePoint::finite(z[0].clone()),
    ];
    let v0: [MVector; 4] = {
        let mut out: [Option<MVector>; 4] = array::from_fn(|_| None);
        for v in 0..4 {
            out[v] = Some(scaled(0, v, &p0)?);
        }
        array::from_fn(|v| out[v].take().unwrap())
    };
    points[0] = Some(p0);
    verts[0] = Some(v0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(ti) = queue.pop_front() {
        for f in 0..4 {
            let tet = &t.tets[ti];
            let (t2, g) = (tet.neighbors[f], tet.gluings[f]);
            if points[t2].is_some() {
                continue;
            }
            let f2 = g.apply(f);
            tree[ti][f] = true;
            tree[t2][f2] = true;
            let src_p = points[ti].clone().unwrap();
            let src_v = verts[ti].clone().unwrap();
            let mut pts: [Option<ProjectivePoint>; 4] = array::from_fn(|_| None);
            let mut vs: [Option<MVector>; 4] = array::from_fn(|_| None);
            for v in 0..4 {
                if v != f {
                    pts[g.apply(v)] = Some(src_p[v].clone());
                    vs[g.apply(v)] = Some(src_v[v].clone());
                }
            }
            let [i, j, k] = even_completion(f2);
            let w = &params[t2][edge_shape_kind(i, j)];
            let u = fourth_vertex(pts[i].as_ref().unwrap(), pts[j].as_ref().unwrap(), pts[k].as_ref().unwrap(), w)?;
            pts[f2] = Some(u);
            let pts: [ProjectivePoint; 4] = array::from_fn(|k| pts[k].take().unwrap());
            vs[f2] = Some(scaled(t2, f2, &pts)?);
            points[t2] = Some(pts);
            verts[t2] = Some(array::from_fn(|k| vs[k].take().unwrap()));
            queue.push_back(t2);
        }
    }
    if points.iter().any(|p| p.is_none()) {
        return Err(Error::InvalidTriangulation(String::from("dual 1-skeleton is disconnected")));
    }
    let ideal_points: Vec<[ProjectivePoint; 4]> = points.into_iter().map(|p| p.unwrap()).collect();
    let vertices: Vec<[MVector; 4]> = verts.into_iter().map(|v| v.unwrap()).collect();

    let mut normals = Vec::with_capacity(n);
    let mut faces = Vec::with_capacity(n);
    for vs in &vertices {
        let mut ns: [Option<MVector>; 4] = array::from_fn(|_| None);
        let mut fs: [Option<IdealTriangle>; 4] = array::from_fn(|_| None);
        for f in 0..4 {
            let [a, b, c] = face_vertices(f);
            let mut nv = orthogonal_to(&vs[a], &vs[b], &vs[c]).normalize()?;
            let s = nv.dot(&vs[f]);
            if s.is_positive() {
                nv = nv.neg();
            } else if !s.is_negative() {
                return Err(Error::InsufficientPrecision("cannot orient a face normal"));
            }
            ns[f] = Some(nv);
            fs[f] = Some(IdealTriangle::new([vs[a].clone(), vs[b].clone(), vs[c].clone()])?);
        }
        normals.push(array::from_fn(|f| ns[f].take().unwrap()));
        faces.push(array::from_fn(|f| fs[f].take().unwrap()));
    }

    let mut pairings = Vec::with_capacity(n);
    let mut generators = Vec::new();
    for ti in 0..n {
        let mut gs: [Option<MMatrix>; 4] = array::from_fn(|_| None);
        for f in 0..4 {
            if tree[ti][f] {
                gs[f] = Some(MMatrix::identity(prec));
                continue;
            }
            let tet = &t.tets[ti];
            let (t2, g) = (tet.neighbors[f], tet.gluings[f]);
            let f2 = g.apply(f);
            if (ti, f) < (t2, f2) {
                generators.push((ti, f));
            }
            let [a, b, c] = face_vertices(f);
            let src = [vertices[ti][a].clone(), vertices[ti][b].clone(), vertices[ti][c].clone(), normals[ti][f].clone()];
            let dst = [
                vertices[t2][g.apply(a)].clone(),
                vertices[t2][g.apply(b)].clone(),
                vertices[t2][g.apply(c)].clone(),
                normals[t2][f2].neg(),
            ];
            gs[f] = Some(MMatrix::from_frames(&src, &dst)?);
        }
        pairings.push(array::from_fn(|f| gs[f].take().unwrap()));
    }

    let mut incenters = Vec::with_capacity(n);
    let mut inradii = Vec::with_capacity(n);
    for ns in &normals {
        let (x, r) = incenter_of(ns)?;
        incenters.push(x);
        inradii.push(r);
    }

    let poly = DevelopedPolyhedron {
        triangulation: t.clone(),
        shapes: z.to_vec(),
        cross_sections: cross_sections.to_vec(),
        ideal_points,
        vertices,
        normals,
        faces,
        pairings,
        tree,
        incenters,
        inradii,
        generators,
    };
    poly.check()?;
    Ok(poly)
}

/// Point at equal distance from the four planes and that distance.
fn incenter_of(ns: &[MVector; 4]) -> Result<(HPoint, Interval)> {
    let prec = ns[0].prec();
    // x . n_f = -1 for every face
    let a: [[Interval; 4]; 4] = array::from_fn(|f| array::from_fn(|i| if i == 0 { ns[f].0[0].neg() } else { ns[f].0[i].clone() }));
    let b: [Interval; 4] = array::from_fn(|_| Interval::from_f64(-1.0, prec));
    let x = MVector(solve4(&a, &b)?);
    let q = x.norm_sqr().neg();
    let r = q.sqrt()?.recip()?.asinh();
    let p = HPoint::from_timelike(&x)?;
    for nv in ns {
        if !p.0.dot(nv).is_negative() {
            return Err(Error::InsufficientPrecision("incenter not certified inside"));
        }
    }
    Ok((p, r))
}

impl DevelopedPolyhedron {
    pub fn num_tetrahedra(&self) -> usize {
        self.vertices.len()
    }

    pub fn prec(&self) -> usize {
        self.shapes[0].prec()
    }

    pub fn incenter_inradius(&self, t: usize) -> (&HPoint, &Interval) {
        (&self.incenters[t], &self.inradii[t])
    }

    /// Tet and face across face `f` of tet `t`.
    pub fn neighbor(&self, t: usize, f: usize) -> (usize, usize) {
        let tet = &self.triangulation.tets[t];
        (tet.neighbors[f], tet.gluings[f].apply(f))
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Generator `i` (`inverse = false`) or its inverse.
    pub fn generator(&self, i: usize, inverse: bool) -> &MMatrix {
        let (t, f) = self.generators[i];
        if inverse {
            let (t2, f2) = self.neighbor(t, f);
            &self.pairings[t2][f2]
        } else {
            &self.pairings[t][f]
        }
    }

    /// Matrix of a word such as `"aB"`: lower case letters are generators
    /// in order, upper case their inverses; the product is left to right.
    pub fn word_matrix(&self, word: &str) -> Result<MMatrix> {
        let mut m = MMatrix::identity(self.prec());
        for ch in word.chars() {
            let (i, inv) = letter_index(ch).ok_or_else(|| Error::Parse(format!("bad letter {ch:?} in word")))?;
            if i >= self.num_generators() {
                return Err(Error::Parse(format!("letter {ch:?} but only {} generators", self.num_generators())));
            }
            m = m.mul(self.generator(i, inv));
        }
        Ok(m)
    }

    /// Verifies the chart invariants up to enclosure overlap.
    pub fn check(&self) -> Result<()> {
        let fail = |what: &'static str| Err(Error::InsufficientPrecision(what));
        for ti in 0..self.num_tetrahedra() {
            for f in 0..4 {
                let nv = &self.normals[ti][f];
                if !nv.norm_sqr().contains_f64(1.0) {
                    return fail("face normal is not a unit vector");
                }
                for v in 0..4 {
                    let d = nv.dot(&self.vertices[ti][v]);
                    if v == f && !d.is_negative() || v != f && !d.contains_zero() {
                        return fail("face normal does not support its face");
                    }
                }
                let g = &self.pairings[ti][f];
                let (t2, _) = self.neighbor(ti, f);
                let perm = self.triangulation.tets[ti].gluings[f];
                for v in 0..4 {
                    if v != f && !g.apply(&self.vertices[ti][v]).overlaps(&self.vertices[t2][perm.apply(v)]) {
                        return fail("face pairing does not match vertices");
                    }
                }
                if !g.preserves_form() {
                    return fail("face pairing does not preserve the form");
                }
            }
        }
        Ok(())
    }
}

pub fn letter_index(ch: char) -> Option<(usize, bool)> {
    if ch.is_ascii_lowercase() {
        Some(((ch as u8 - b'a') as usize, false))
    } else if ch.is_ascii_uppercase() {
        Some(((ch as u8 - b'A') as usize, true))
    } else {
        None
    }
}

/// Cross sections of every cusp scaled to the given areas.
pub fn cross_sections_with_areas(t: &Triangulation, z: &[ComplexInterval], areas: &[Interval]) -> Result<Vec<CuspCrossSection>> {
    (0..t.num_cusps())
        .map(|c| develop_cusp_cross_section(t, z, c)?.with_area(&areas[c]))
        .collect()
}
