//! Distances between objects in the manifold from tile streams, and the
//! maximal cusp area matrix.

use crate::developing::DevelopedPolyhedron;
use crate::error::{Error, Result};
use crate::geometry::Object;
use crate::interval::{ExtendedBound, Interval};
use crate::tiling::{GeometricObject, TileEvent, TileStream};
use alloc::vec;
use alloc::vec::Vec;

/// Lifts `m^-1 K` of an object seen by each tetrahedron, with the stream
/// index they came from.
#[derive(Clone, Debug)]
pub struct TilesBook {
    pub per_tet: Vec<Vec<(usize, Object)>>,
    /// Radius covered by the tiles recorded so far.
    pub r: ExtendedBound,
    /// Whether distances to the object are signed (horoballs).
    pub signed: bool,
}

impl TilesBook {
    pub fn new(num_tets: usize, signed: bool) -> TilesBook {
        TilesBook { per_tet: vec![Vec::new(); num_tets], r: ExtendedBound::NegInfinity, signed }
    }

    /// Records an event: the radius it reports is covered by the earlier
    /// tiles, hence also by these.
    pub fn record(&mut self, e: &TileEvent) {
        if e.r.cmp_lower(&self.r).is_gt() {
            self.r = e.r.clone();
        }
        self.per_tet[e.t].push((e.index, e.object.clone()));
    }

    pub fn len(&self) -> usize {
        self.per_tet.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `r > d(K, H^3)` certified: `0` for ordinary objects, `-inf` for horoballs.
    pub fn reaches_space(&self) -> bool {
        match &self.r {
            ExtendedBound::NegInfinity => false,
            ExtendedBound::Value(r) => self.signed || r.is_positive(),
        }
    }
}

fn min_opt(a: Option<Interval>, b: Interval) -> Option<Interval> {
    Some(match a {
        Some(a) => a.min(&b),
        None => b,
    })
}

/// Minimum distance over co-located lifts `A`, `A'` with `A != A'`; lifts of
/// the same object are distinct when their stream indices differ. `None`
/// stands for `+inf`.
pub fn pairwise_min_distance(book: &TilesBook, other: &TilesBook, same_object: bool) -> Result<Option<Interval>> {
    let mut best = None;
    for (a, b) in book.per_tet.iter().zip(&other.per_tet) {
        for (i, x) in a {
            for (j, y) in b {
                if same_object && i == j {
                    continue;
                }
                best = min_opt(best, x.distance(y)?);
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceStatus {
    /// The value encloses the distance.
    Certified,
    /// The iteration cap was hit; the value is a bracket whose lower end
    /// is certified positive, so the neighborhoods are embedded and disjoint.
    EmbeddedDisjointOnly,
    /// The iteration cap was hit with nothing certified beyond the bracket.
    Incomplete,
}

#[derive(Clone, Debug)]
pub struct DistanceResult {
    pub value: Interval,
    pub status: DistanceStatus,
    /// Tiles pulled from the two streams (the second is 0 for `K = K'`).
    pub tiles_used: (usize, usize),
}

#[derive(Clone, Copy, Debug)]
pub struct DistanceConfig {
    /// Maximal number of tiles pulled in total.
    pub max_tiles: usize,
}

impl Default for DistanceConfig {
    fn default() -> Self {
        DistanceConfig { max_tiles: 200_000 }
    }
}

fn pull(stream: &mut TileStream) -> Result<TileEvent> {
    stream.next_event()?.ok_or(Error::Domain("tile stream ended"))
}

/// Has `r + r' > d` been certified?
fn converged(r: &ExtendedBound, r2: &ExtendedBound, d: &Option<Interval>) -> bool {
    match (r, r2, d) {
        (ExtendedBound::Value(a), ExtendedBound::Value(b), Some(d)) => a.add(b).gt(d) == Some(true),
        _ => false,
    }
}

fn bracket(r: &ExtendedBound, r2: &ExtendedBound, d: Option<Interval>, tiles: (usize, usize), prec: usize) -> DistanceResult {
    let reach = match (r, r2) {
        (ExtendedBound::Value(a), ExtendedBound::Value(b)) => Some(a.add(b).to_f64_bounds().0),
        _ => None,
    };
    let value = match (&d, reach) {
        (Some(d), Some(s)) if s < d.lo_f64() => Interval::from_f64_pair(s, d.hi_f64(), prec),
        (Some(d), Some(_)) => d.clone(),
        (Some(d), None) => Interval::new(crate::bigfloat::inf_neg(), d.hi().clone(), prec),
        (None, Some(s)) => Interval::at_least(s, prec),
        (None, None) => Interval::entire(prec),
    };
    let status = if value.is_positive() { DistanceStatus::EmbeddedDisjointOnly } else { DistanceStatus::Incomplete };
    DistanceResult { value, status, tiles_used: tiles }
}

/// Distance in the manifold between two objects, or between an object and
/// itself when `k2` is `None` (twice the injectivity radius for a point,
/// the shortest return path for a cusp neighborhood).
pub fn compute_distance(
    p: &DevelopedPolyhedron,
    k: &GeometricObject,
    k2: Option<&GeometricObject>,
    cfg: &DistanceConfig,
) -> Result<DistanceResult> {
    let n = p.num_tetrahedra();
    let prec = p.prec();
    let mut s1 = TileStream::new(p, k.clone())?;
    let mut b1 = TilesBook::new(n, k.is_signed());
    let mut d: Option<Interval> = None;
    let Some(k2) = k2 else {
        for used in 1..=cfg.max_tiles {
            let e = pull(&mut s1)?;
            for (_, y) in &b1.per_tet[e.t] {
                d = min_opt(d, e.object.distance(y)?);
            }
            b1.record(&e);
            if b1.reaches_space() && converged(&b1.r, &b1.r, &d) {
                let value = d.expect("converged implies a pair");
                return Ok(DistanceResult { value, status: DistanceStatus::Certified, tiles_used: (used, 0) });
            }
        }
        return Ok(bracket(&b1.r, &b1.r, d, (cfg.max_tiles, 0), prec));
    };
    let mut s2 = TileStream::new(p, k2.clone())?;
    let mut b2 = TilesBook::new(n, k2.is_signed());
    let mut used = (0, 0);
    for step in 0..cfg.max_tiles {
        // alternate between the streams
        let (s, own, other) = if step % 2 == 0 { (&mut s1, &mut b1, &b2) } else { (&mut s2, &mut b2, &b1) };
        let e = pull(s)?;
        for (_, y) in &other.per_tet[e.t] {
            d = min_opt(d, e.object.distance(y)?);
        }
        own.record(&e);
        if step % 2 == 0 {
            used.0 += 1;
        } else {
            used.1 += 1;
        }
        if b1.reaches_space() && b2.reaches_space() && converged(&b1.r, &b2.r, &d) {
            let value = d.expect("converged implies a pair");
            return Ok(DistanceResult { value, status: DistanceStatus::Certified, tiles_used: used });
        }
    }
    Ok(bracket(&b1.r, &b2.r, d, used, prec))
}

/// Entries `e^{2 d} A(C_i) A(C_j)` for the chosen cross sections of `p`,
/// where `d` is the signed distance between the cusp neighborhoods.
pub fn cusp_area_matrix(p: &DevelopedPolyhedron, cfg: &DistanceConfig) -> Result<Vec<Vec<Interval>>> {
    let n = p.cross_sections.len();
    let areas: Vec<Interval> = p.cross_sections.iter().map(|c| c.area()).collect();
    let balls: Vec<GeometricObject> =
        p.cross_sections.iter().map(|c| GeometricObject::cusp(p, c.cusp)).collect::<Result<_>>()?;
    let prec = p.prec();
    let mut a = vec![vec![Interval::zero(prec); n]; n];
    for i in 0..n {
        for j in i..n {
            let other = if i == j { None } else { Some(&balls[j]) };
            let r = compute_distance(p, &balls[i], other, cfg)?;
            if r.status != DistanceStatus::Certified {
                return Err(Error::BudgetExceeded("cusp distance"));
            }
            let v = r.value.scale(2.0).exp().mul(&areas[i]).mul(&areas[j]);
            a[i][j] = v.clone();
            a[j][i] = v;
        }
    }
    Ok(a)
}

/// Radius `r` such that the `r` neighborhoods of all objects are embedded
/// and pairwise disjoint, from each stream advanced past `radius`.
pub fn system_lower_bound(p: &DevelopedPolyhedron, objects: &[GeometricObject], radius: f64, cfg: &DistanceConfig) -> Result<Interval> {
    let n = p.num_tetrahedra();
    let prec = p.prec();
    let mut books = Vec::with_capacity(objects.len());
    let mut used = 0;
    for k in objects {
        let mut s = TileStream::new(p, k.clone())?;
        let mut b = TilesBook::new(n, k.is_signed());
        while !(b.reaches_space() && b.r.lower_f64() > radius) {
            if used == cfg.max_tiles {
                return Err(Error::BudgetExceeded("system lower bound"));
            }
            b.record(&pull(&mut s)?);
            used += 1;
        }
        books.push(b);
    }
    let mut m = books.iter().fold(None, |acc, b| min_opt(acc, b.r.to_interval(prec)));
    for (i, a) in books.iter().enumerate() {
        for b in &books[i..] {
            let same = core::ptr::eq(a, b);
            if let Some(d) = pairwise_min_distance(a, b, same)? {
                m = min_opt(m, d);
            }
        }
    }
    Ok(m.ok_or(Error::Domain("no objects"))?.scale(0.5))
}
