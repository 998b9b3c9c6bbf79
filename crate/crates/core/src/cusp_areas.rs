//! Choosing cusp neighborhoods from the maximal cusp area matrix, and
//! slope lengths for the 6-Theorem.

use crate::complex::ComplexInterval;
use crate::developing::{CuspCrossSection, DevelopedPolyhedron};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::triangulation::Triangulation;
use alloc::vec;
use alloc::vec::Vec;

/// Ratio `s = lambda / mu` of the cusp translations, with `im s > 0`.
#[derive(Clone, Debug)]
pub struct CuspShape {
    pub s: ComplexInterval,
}

/// Peripheral curve `p mu + q lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

/// Translations `(mu, lambda)` of the developed cross section along the
/// meridian and longitude. `lambda` is negated if needed so that
/// `im(lambda / mu) > 0`.
pub fn cusp_translations(t: &Triangulation, cs: &CuspCrossSection) -> Result<(ComplexInterval, ComplexInterval)> {
    let prec = cs.triangles[0].area.prec();
    let half = Interval::from_f64(0.5, prec);
    let mut mu = ComplexInterval::zero(prec);
    let mut lam = ComplexInterval::zero(prec);
    for tri in &cs.triangles {
        let tet = &t.tets[tri.tet];
        let v = tri.vertex;
        for f in 0..4 {
            if f == v {
                continue;
            }
            let (wm, wl) = (tet.meridian[v][f], tet.longitude[v][f]);
            if wm == 0 && wl == 0 {
                continue;
            }
            let mut ends = (0..4).filter(|&k| k != v && k != f);
            let (a, b) = (ends.next().unwrap(), ends.next().unwrap());
            let mid = tri.corners[a].add(&tri.corners[b]).scale(&half);
            // weights count entries positively, so the displacement is
            // the sum of exits minus entries
            mu = mu.sub(&mid.scale(&Interval::from_i64(wm as i64, prec)));
            lam = lam.sub(&mid.scale(&Interval::from_i64(wl as i64, prec)));
        }
    }
    let s = lam.div(&mu)?;
    if s.im.is_negative() {
        lam = lam.neg();
    } else if !s.im.is_positive() {
        return Err(Error::InsufficientPrecision("cusp shape is not certified non-real"));
    }
    Ok((mu, lam))
}

pub fn cusp_shapes(p: &DevelopedPolyhedron) -> Result<Vec<CuspShape>> {
    p.cross_sections
        .iter()
        .map(|cs| {
            let (mu, lam) = cusp_translations(&p.triangulation, cs)?;
            Ok(CuspShape { s: lam.div(&mu)? })
        })
        .collect()
}

fn check_positive(a: &[Vec<Interval>]) -> Result<()> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::Domain("cusp area matrix is not square"));
    }
    if a.iter().flatten().any(|x| !x.is_positive()) {
        return Err(Error::Domain("cusp area matrix entries not certified positive"));
    }
    Ok(())
}

fn upper(x: &Interval) -> Interval {
    Interval::new(x.hi().clone(), x.hi().clone(), x.prec())
}

fn lower(x: &Interval) -> Interval {
    Interval::new(x.lo().clone(), x.lo().clone(), x.prec())
}

/// Grows all cusp neighborhoods at the same rate, each stopping when it
/// bumps into itself or another one. Ties pick the smallest `(i, j)`.
pub fn unbiased_areas(a: &[Vec<Interval>]) -> Result<Vec<Interval>> {
    check_positive(a)?;
    let n = a.len();
    let mut out: Vec<Option<Interval>> = vec![None; n];
    let roots: Vec<Vec<Interval>> = a.iter().map(|r| r.iter().map(|x| x.sqrt()).collect::<Result<_>>()).collect::<Result<_>>()?;
    while out.iter().any(Option::is_none) {
        let mut best: Option<(Interval, usize)> = None;
        for i in (0..n).filter(|&i| out[i].is_none()) {
            for j in 0..n {
                let t = match &out[j] {
                    None => roots[i][j].clone(),
                    Some(aj) => a[i][j].div(aj)?,
                };
                let better = match &best {
                    None => true,
                    Some((b, _)) => crate::bigfloat::lt(t.lo(), b.lo()),
                };
                if better {
                    best = Some((lower(&t), i));
                }
            }
        }
        let (t_lo, i) = best.expect("an open entry exists");
        let mut t_hi = upper(&roots[i][i]);
        for j in 0..n {
            if j == i {
                continue;
            }
            let bound = match &out[j] {
                None => a[i][j].div(&t_lo)?,
                Some(aj) => a[i][j].div(aj)?,
            };
            t_hi = t_hi.min(&upper(&bound));
        }
        out[i] = Some(Interval::new(t_lo.lo().clone(), t_hi.hi().clone(), t_lo.prec()));
    }
    Ok(out.into_iter().map(Option::unwrap).collect())
}

/// Grows the neighborhoods one after another in `order`.
pub fn greedy_areas(a: &[Vec<Interval>], order: &[usize]) -> Result<Vec<Interval>> {
    check_positive(a)?;
    let n = a.len();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&i| i >= n || core::mem::replace(&mut seen[i], true)) {
        return Err(Error::Domain("order is not a permutation of the cusps"));
    }
    let mut out: Vec<Option<Interval>> = vec![None; n];
    for (k, &i) in order.iter().enumerate() {
        let mut v = a[i][i].sqrt()?;
        for &j in &order[..k] {
            v = v.min(&a[i][j].div(out[j].as_ref().unwrap())?);
        }
        out[i] = Some(v);
    }
    Ok(out.into_iter().map(Option::unwrap).collect())
}

fn lattice_abs(s: &ComplexInterval, slope: Slope) -> Interval {
    let prec = s.prec();
    let v = s.scale(&Interval::from_i64(slope.q, prec)).add(&ComplexInterval::real(Interval::from_i64(slope.p, prec)));
    v.abs()
}

/// Length of `slope` on a cusp cross section of area `area`.
pub fn slope_length(area: &Interval, s: &ComplexInterval, slope: Slope) -> Result<Interval> {
    Ok(area.div(&s.im)?.sqrt()?.mul(&lattice_abs(s, slope)))
}

/// Area at which `slope` has length exactly 6; `0` for the unfilled `(0, 0)`.
pub fn six_theorem_area(s: &ComplexInterval, slope: Slope) -> Result<Interval> {
    let prec = s.prec();
    if slope == (Slope { p: 0, q: 0 }) {
        return Ok(Interval::zero(prec));
    }
    let six = Interval::from_f64(6.0, prec);
    Ok(s.im.mul(&six.div(&lattice_abs(s, slope))?.sqr()))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Primitive slopes, one per sign pair, that may satisfy `|p + q s| <= bound`.
fn slopes_within(s: &ComplexInterval, bound: f64) -> Vec<Slope> {
    let (re_lo, re_hi) = s.re.to_f64_bounds();
    let im_lo = s.im.to_f64_bounds().0;
    // enough slack that rounding in the doubles cannot drop a candidate
    let bound = bound * (1.0 + 1e-9) + 1e-9;
    let q_max = (bound / im_lo).floor() as i64;
    let mut out = Vec::new();
    for q in 0..=q_max {
        let (lo, hi) = if q == 0 { (0.0, 0.0) } else { (-(q as f64) * re_hi, -(q as f64) * re_lo) };
        let p_min = (lo - bound).floor() as i64;
        let p_max = (hi + bound).ceil() as i64;
        for p in p_min..=p_max {
            if gcd(p, q) != 1 || (q == 0 && p < 0) {
                continue;
            }
            out.push(Slope { p, q });
        }
    }
    out
}

/// Per cusp, the slopes whose length on the chosen neighborhood is not
/// certified to exceed 6.
pub fn short_slopes(shapes: &[CuspShape], areas: &[Interval]) -> Result<Vec<Vec<Slope>>> {
    let six = Interval::from_f64(6.0, shapes.first().map_or(53, |c| c.s.prec()));
    shapes
        .iter()
        .zip(areas)
        .map(|(c, a)| {
            // |p + q s| <= 6 sqrt(im s / A)
            let bound = six.mul(&c.s.im.div(a)?.sqrt()?).to_f64_bounds().1;
            let mut out = Vec::new();
            for sl in slopes_within(&c.s, bound) {
                if slope_length(a, &c.s, sl)?.gt(&six) != Some(true) {
                    out.push(sl);
                }
            }
            Ok(out)
        })
        .collect()
}

/// `alpha = max` of `six_theorem_area` over the primitive slopes, attained
/// by the shortest lattice vectors.
pub fn max_six_theorem_area(s: &CuspShape) -> Result<Interval> {
    let mut best: Option<Interval> = None;
    // (1, 0) has length 1, so the shortest vector is not longer
    for sl in slopes_within(&s.s, 1.0) {
        if lattice_abs(&s.s, sl).lo_f64() > 1.0 + 1e-9 {
            continue;
        }
        let v = six_theorem_area(&s.s, sl)?;
        best = Some(match best {
            Some(b) => b.max(&v),
            None => v,
        });
    }
    best.ok_or(Error::Domain("no primitive slope"))
}

/// Whether `alpha alpha^T < A` is certified elementwise, so that every
/// Dehn filling of every cusp satisfies the 6-Theorem.
pub fn all_fillings_hyperbolic_check(a: &[Vec<Interval>], shapes: &[CuspShape]) -> Result<bool> {
    check_positive(a)?;
    if shapes.len() != a.len() {
        return Err(Error::Domain("one cusp shape per cusp required"));
    }
    let alpha: Vec<Interval> = shapes.iter().map(max_six_theorem_area).collect::<Result<_>>()?;
    for i in 0..a.len() {
        for j in 0..a.len() {
            if alpha[i].mul(&alpha[j]).lt(&a[i][j]) != Some(true) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
