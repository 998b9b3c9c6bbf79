//! Streaming enumeration of lifted tetrahedra ordered by their distance to
//! an object, up to the stabilizer of the object.

use crate::collections::{LiftKind, LiftedTetSet};
use crate::developing::{standard_form_scale, DevelopedPolyhedron};
use crate::error::{Error, Result};
use crate::geometry::{ClosedGeodesic, HPoint, Horoball, Object};
use crate::interval::{ExtendedBound, Interval, OrdBound};
use crate::minkowski::MMatrix;
use crate::trace::{trace, LiftedTet, TraceConfig};
use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Object to tile about.
#[derive(Clone, Debug)]
pub enum GeometricObject {
    Point(HPoint),
    Line(ClosedGeodesic),
    /// Horoball about vertex `vertex` of tetrahedron `tet`.
    Horoball { ball: Horoball, cusp: usize, tet: usize, vertex: usize },
}

impl GeometricObject {
    pub fn incenter(p: &DevelopedPolyhedron, t: usize) -> GeometricObject {
        GeometricObject::Point(p.incenters[t].clone())
    }

    pub fn horoball_at(p: &DevelopedPolyhedron, tet: usize, vertex: usize) -> GeometricObject {
        GeometricObject::Horoball {
            ball: Horoball(p.vertices[tet][vertex].clone()),
            cusp: p.triangulation.cusp_of(tet, vertex),
            tet,
            vertex,
        }
    }

    /// Horoball at the first vertex belonging to `cusp`.
    pub fn cusp(p: &DevelopedPolyhedron, cusp: usize) -> Result<GeometricObject> {
        let &(t, v) = p
            .triangulation
            .cusp_members(cusp)
            .first()
            .ok_or_else(|| Error::Unsupported("no such cusp".into()))?;
        Ok(Self::horoball_at(p, t, v))
    }

    /// Axis of the group element spelled by `word`.
    pub fn geodesic_word(p: &DevelopedPolyhedron, word: &str) -> Result<GeometricObject> {
        let h = p.word_matrix(word)?;
        Ok(GeometricObject::Line(ClosedGeodesic::from_holonomy(&h)?))
    }

    pub fn to_object(&self) -> Object {
        match self {
            GeometricObject::Point(x) => Object::Point(x.clone()),
            GeometricObject::Line(g) => Object::Line(g.line.clone()),
            GeometricObject::Horoball { ball, .. } => Object::Horoball(ball.clone()),
        }
    }

    /// Distances to horoballs are signed, so `d(K, H^3) = -inf` for them.
    pub fn is_signed(&self) -> bool {
        matches!(self, GeometricObject::Horoball { .. })
    }

    /// Point on a line used to locate it, `(mu0 x0 + mu1 x1)^` with a ratio
    /// far from algebraic numbers of small height.
    pub fn line_basepoint(g: &ClosedGeodesic) -> Result<HPoint> {
        let prec = g.length.prec();
        let mu1 = Interval::from_f64((-1.0 / core::f64::consts::PI).exp(), prec);
        HPoint::from_timelike(&g.line.x0.add(&g.line.x1.scale(&mu1)))
    }
}

/// Candidate seeds; at least one of them is a seed for `k`.
pub fn make_seeds(p: &DevelopedPolyhedron, k: &GeometricObject, cfg: &TraceConfig) -> Result<Vec<LiftedTet>> {
    match k {
        GeometricObject::Point(x) => trace(p, x, cfg),
        GeometricObject::Line(g) => trace(p, &GeometricObject::line_basepoint(g)?, cfg),
        GeometricObject::Horoball { tet, .. } => Ok(vec![LiftedTet::identity(*tet, p.prec())]),
    }
}

/// Identification of lifted tetrahedra appropriate for `k`.
pub fn lift_kind(p: &DevelopedPolyhedron, k: &GeometricObject) -> Result<LiftKind> {
    let (x, r) = p.incenter_inradius(0);
    let point_bound = || r.cosh();
    Ok(match k {
        GeometricObject::Point(_) => LiftKind::Point { p: x.0.clone(), b: point_bound() },
        GeometricObject::Line(g) => LiftKind::Line { p: x.0.clone(), b: point_bound(), geodesic: g.clone() },
        GeometricObject::Horoball { ball, cusp, .. } => {
            let s = standard_form_scale(&p.triangulation, &p.shapes, &p.cross_sections)?;
            let idx = p.cross_sections.iter().position(|c| c.cusp == *cusp).ok_or(Error::Domain("missing cross section"))?;
            LiftKind::Horoball { l: ball.0.clone(), b: s[idx].sqr() }
        }
    })
}

/// One emitted tile. Tiles emitted before this one cover the closed
/// neighborhood of radius `r` (lower endpoint) about the object.
#[derive(Clone, Debug)]
pub struct TileEvent {
    pub index: usize,
    pub r: ExtendedBound,
    pub m: MMatrix,
    pub t: usize,
    /// `m^-1 K` in the chart of `T_t`.
    pub object: Object,
}

struct Frontier {
    key: OrdBound,
    seq: u64,
    r: ExtendedBound,
    m: MMatrix,
    t: usize,
    entry: Option<usize>,
}

impl PartialEq for Frontier {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Frontier {}
impl PartialOrd for Frontier {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Frontier {
    // reversed so that the max-heap pops the lowest key, oldest first
    fn cmp(&self, o: &Self) -> Ordering {
        o.key.cmp(&self.key).then(o.seq.cmp(&self.seq))
    }
}

/// Pull-based tiler. After an error the stream ends.
pub struct TileStream<'a> {
    p: &'a DevelopedPolyhedron,
    object: GeometricObject,
    base: Object,
    set: LiftedTetSet,
    queue: BinaryHeap<Frontier>,
    seq: u64,
    emitted: usize,
    failed: bool,
}

impl<'a> TileStream<'a> {
    pub fn new(p: &'a DevelopedPolyhedron, object: GeometricObject) -> Result<TileStream<'a>> {
        let seeds = make_seeds(p, &object, &TraceConfig::default())?;
        Self::with_seeds(p, object, seeds)
    }

    pub fn with_seeds(p: &'a DevelopedPolyhedron, object: GeometricObject, seeds: Vec<LiftedTet>) -> Result<TileStream<'a>> {
        let set = LiftedTetSet::new(lift_kind(p, &object)?, p.num_tetrahedra())?;
        let base = object.to_object();
        let mut s = TileStream { p, object, base, set, queue: BinaryHeap::new(), seq: 0, emitted: 0, failed: false };
        for seed in seeds {
            s.push(ExtendedBound::NegInfinity, seed.m, seed.t, None);
        }
        Ok(s)
    }

    pub fn object(&self) -> &GeometricObject {
        &self.object
    }

    pub fn emitted(&self) -> usize {
        self.emitted
    }

    pub fn lifted_set(&self) -> &LiftedTetSet {
        &self.set
    }

    fn push(&mut self, r: ExtendedBound, m: MMatrix, t: usize, entry: Option<usize>) {
        let key = OrdBound(r.lower());
        self.queue.push(Frontier { key, seq: self.seq, r, m, t, entry });
        self.seq += 1;
    }

    /// Next tile, or `None` once the stream has failed.
    pub fn next_event(&mut self) -> Result<Option<TileEvent>> {
        if self.failed {
            return Ok(None);
        }
        let out = self.advance();
        if out.is_err() {
            self.failed = true;
        }
        out
    }

    fn advance(&mut self) -> Result<Option<TileEvent>> {
        while let Some(Frontier { r, m, t, entry, .. }) = self.queue.pop() {
            if !self.set.insert(&m, t)? {
                continue;
            }
            let lifted = self.base.transform(&m.o13_inverse());
            let p = self.p;
            for f in 0..4 {
                if Some(f) == entry {
                    continue;
                }
                let d = lifted.distance_to_triangle(&p.faces[t][f], true)?;
                let (t2, f2) = p.neighbor(t, f);
                self.push(ExtendedBound::Value(d), m.mul(&p.pairings[t2][f2]), t2, Some(f2));
            }
            let index = self.emitted;
            self.emitted += 1;
            return Ok(Some(TileEvent { index, r, m, t, object: lifted }));
        }
        Ok(None)
    }

    /// The same stream as `(r, m^-1 K, t)`.
    pub fn tetrahedra_view(self) -> impl Iterator<Item = Result<(ExtendedBound, Object, usize)>> + 'a {
        self.map(|e| e.map(|e| (e.r, e.object, e.t)))
    }
}

impl Iterator for TileStream<'_> {
    type Item = Result<TileEvent>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_event().transpose()
    }
}
