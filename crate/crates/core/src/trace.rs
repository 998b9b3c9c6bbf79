//! Locating points in the tiling of H^3 by lifted tetrahedra.

use crate::developing::DevelopedPolyhedron;
use crate::error::{Error, Result};
use crate::geometry::{HPoint, Object};
use crate::minkowski::{MMatrix, MVector};
use alloc::vec;
use alloc::vec::Vec;

/// A translate `m T_t` of a chart tetrahedron.
#[derive(Clone, Debug)]
pub struct LiftedTet {
    pub m: MMatrix,
    pub t: usize,
}

impl LiftedTet {
    pub fn identity(t: usize, prec: usize) -> LiftedTet {
        LiftedTet { m: MMatrix::identity(prec), t }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct TraceConfig {
    /// Maximal number of face crossings.
    pub budget: usize,
    /// Walk with doubles and a small tolerance instead of intervals.
    pub float_mode: bool,
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig { budget: 1_000_000, float_mode: false }
    }
}

pub const FLOAT_EPSILON: f64 = 1.0 / 1048576.0;

fn dot_f64(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

fn apply_f64(m: &[[f64; 4]; 4], v: &[f64; 4]) -> [f64; 4] {
    core::array::from_fn(|i| (0..4).map(|j| m[i][j] * v[j]).sum())
}

/// Face `f != entry` with the largest value; lowest index wins ties.
fn pick_face(d: &[f64; 4], entry: Option<usize>) -> usize {
    let mut best = None;
    for f in 0..4 {
        if Some(f) == entry {
            continue;
        }
        match best {
            Some(b) if d[b] >= d[f] => {}
            _ => best = Some(f),
        }
    }
    best.unwrap()
}

/// One face crossing out of `t` through `f`: the new tet, the entry face
/// there and the matrix `g` with `m' = m g`.
fn cross<'a>(p: &'a DevelopedPolyhedron, t: usize, f: usize) -> (usize, usize, &'a MMatrix) {
    let (t2, f2) = p.neighbor(t, f);
    (t2, f2, &p.pairings[t2][f2])
}

/// Walks towards `x` starting from `start` (or `Id T_0`). Returns a lifted
/// tetrahedron for which no face test proves `x` outside.
pub fn trace_heuristic(p: &DevelopedPolyhedron, x: &HPoint, start: Option<LiftedTet>, cfg: &TraceConfig) -> Result<LiftedTet> {
    let prec = p.prec();
    let start = start.unwrap_or_else(|| LiftedTet::identity(0, prec));
    if cfg.float_mode {
        return trace_float(p, x, start, cfg);
    }
    let LiftedTet { mut m, mut t } = start;
    // y = m^-1 x, so that x . (m n) = y . n
    let mut y = m.o13_inverse().apply(&x.0);
    let mut entry = None;
    for _ in 0..cfg.budget {
        let d: Vec<_> = (0..4).map(|f| y.dot(&p.normals[t][f])).collect();
        if !d.iter().any(|v| v.is_positive()) {
            return Ok(LiftedTet { m, t });
        }
        let mids: [f64; 4] = core::array::from_fn(|f| d[f].mid_f64());
        let f = pick_face(&mids, entry);
        let (t2, f2, g) = cross(p, t, f);
        y = p.pairings[t][f].apply(&y);
        m = m.mul(g);
        t = t2;
        entry = Some(f2);
    }
    Err(Error::BudgetExceeded("graph trace"))
}

fn trace_float(p: &DevelopedPolyhedron, x: &HPoint, start: LiftedTet, cfg: &TraceConfig) -> Result<LiftedTet> {
    let mut y = start.m.o13_inverse().apply(&x.0).to_f64();
    let mut t = start.t;
    let mut entry = None;
    let mut path = Vec::new();
    for _ in 0..cfg.budget {
        let d: [f64; 4] = core::array::from_fn(|f| dot_f64(&y, &p.normals[t][f].to_f64()));
        let scale = d.iter().fold(0f64, |a, v| a.max(v.abs()));
        if !d.iter().any(|&v| v > FLOAT_EPSILON * scale) {
            let mut m = start.m;
            for (ti, fi) in path {
                let (_, _, g) = cross(p, ti, fi);
                m = m.mul(g);
            }
            return Ok(LiftedTet { m, t });
        }
        let f = pick_face(&d, entry);
        let (t2, f2, _) = cross(p, t, f);
        y = apply_f64(&p.pairings[t][f].to_f64(), &y);
        path.push((t, f));
        t = t2;
        entry = Some(f2);
    }
    Err(Error::BudgetExceeded("graph trace"))
}

fn certified_negative(y: &MVector, p: &DevelopedPolyhedron, t: usize) -> [bool; 4] {
    core::array::from_fn(|f| y.dot(&p.normals[t][f]).is_negative())
}

/// Certifies that `x` lies in the candidate tile or in the union of the
/// candidate and one neighbor. Fails rather than guessing.
pub fn trace_verify(p: &DevelopedPolyhedron, x: &HPoint, cand: &LiftedTet) -> Result<Vec<LiftedTet>> {
    let y = cand.m.o13_inverse().apply(&x.0);
    let neg = certified_negative(&y, p, cand.t);
    let open: Vec<usize> = (0..4).filter(|&f| !neg[f]).collect();
    match open.as_slice() {
        [] => Ok(vec![cand.clone()]),
        [f] => {
            let (t2, f2, g) = cross(p, cand.t, *f);
            let y2 = p.pairings[cand.t][*f].apply(&y);
            let neg2 = certified_negative(&y2, p, t2);
            if (0..4).all(|k| k == f2 || neg2[k]) {
                Ok(vec![cand.clone(), LiftedTet { m: cand.m.mul(g), t: t2 }])
            } else {
                Err(Error::InsufficientPrecision("graph trace verification"))
            }
        }
        _ => Err(Error::InsufficientPrecision("graph trace verification")),
    }
}

/// Heuristic walk followed by verification.
pub fn trace(p: &DevelopedPolyhedron, x: &HPoint, cfg: &TraceConfig) -> Result<Vec<LiftedTet>> {
    let cand = trace_heuristic(p, x, None, cfg)?;
    trace_verify(p, x, &cand)
}

/// Result of the walk that moves the object instead of the tetrahedra.
#[derive(Clone, Debug)]
pub struct TetView {
    /// `m^-1 K` in the chart of `tet`.
    pub object: Object,
    pub basepoint: HPoint,
    pub tet: usize,
    /// The lifted tetrahedron `m T_tet` of the object view.
    pub m: MMatrix,
}

/// Walk in the tetrahedra view starting at `tet`: every crossing applies
/// the inverse pairing to the object and its base point.
pub fn trace_tetrahedra_view(
    p: &DevelopedPolyhedron,
    object: &Object,
    basepoint: &HPoint,
    tet: usize,
    cfg: &TraceConfig,
) -> Result<TetView> {
    let mut t = tet;
    let mut obj = object.clone();
    let mut x = basepoint.clone();
    let mut m = MMatrix::identity(p.prec());
    let mut entry = None;
    for _ in 0..cfg.budget {
        let d: Vec<_> = (0..4).map(|f| x.0.dot(&p.normals[t][f])).collect();
        if !d.iter().any(|v| v.is_positive()) {
            return Ok(TetView { object: obj, basepoint: x, tet: t, m });
        }
        let mids: [f64; 4] = core::array::from_fn(|f| d[f].mid_f64());
        let f = pick_face(&mids, entry);
        let g_inv = &p.pairings[t][f];
        let (t2, f2, g) = cross(p, t, f);
        obj = obj.transform(g_inv);
        x = x.transform(g_inv);
        m = m.mul(g);
        t = t2;
        entry = Some(f2);
    }
    Err(Error::BudgetExceeded("graph trace"))
}
