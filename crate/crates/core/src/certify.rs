//! Certified shapes of the complete hyperbolic structure via Krawczyk's
//! test on the logarithmic gluing equations.

use crate::complex::ComplexInterval;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::triangulation::{GluingEquations, RowKind, Triangulation};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Newton polishing may move the supplied shapes by at most this much.
pub const POLISH_TOLERANCE: f64 = 1e-6;

/// Shapes certified to contain the unique solution inside the Krawczyk box.
#[derive(Clone, Debug)]
pub struct CertifiedShapes {
    pub shapes: Vec<ComplexInterval>,
    pub prec: usize,
    /// Rows of the square subsystem passed to the Krawczyk test.
    pub selected_rows: Vec<usize>,
    /// Residual enclosures of every gluing equation on `shapes`.
    pub residuals: Vec<ComplexInterval>,
}

impl CertifiedShapes {
    pub fn max_width(&self) -> f64 {
        self.shapes.iter().map(|z| z.width_f64()).fold(0.0, f64::max)
    }
}

pub(crate) fn shape_terms(z: &ComplexInterval) -> Result<[ComplexInterval; 3]> {
    let p = z.prec();
    let one = ComplexInterval::one(p);
    let zp = one.sub(z).recip()?;
    let zpp = one.sub(&z.recip()?);
    Ok([z.clone(), zp, zpp])
}

/// Residuals `sum a log z + b log z' + c log z'' - const` for every row.
pub fn log_gluing_residual(eqs: &GluingEquations, shapes: &[ComplexInterval]) -> Result<Vec<ComplexInterval>> {
    let p = shapes[0].prec();
    let mut logs = Vec::with_capacity(shapes.len());
    for z in shapes {
        let t = shape_terms(z)?;
        logs.push([t[0].ln()?, t[1].ln()?, t[2].ln()?]);
    }
    let two_pi_i = ComplexInterval::two_pi_i(p);
    let mut out = Vec::with_capacity(eqs.rows.len());
    for (row, kind) in eqs.rows.iter().zip(&eqs.kinds) {
        let mut acc = ComplexInterval::zero(p);
        for (t, ex) in row.iter().enumerate() {
            for k in 0..3 {
                if ex[k] != 0 {
                    acc = acc.add(&logs[t][k].scale(&Interval::from_i64(ex[k] as i64, p)));
                }
            }
        }
        if let RowKind::Edge(_) = kind {
            acc = acc.sub(&two_pi_i);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Interval Jacobian of the selected rows over the box `shapes`.
fn jacobian(eqs: &GluingEquations, rows: &[usize], shapes: &[ComplexInterval]) -> Result<Vec<Vec<ComplexInterval>>> {
    let p = shapes[0].prec();
    let one = ComplexInterval::one(p);
    let mut d = Vec::with_capacity(shapes.len());
    for z in shapes {
        // derivatives of log z, log 1/(1-z), log(1-1/z)
        let a = z.recip()?;
        let b = one.sub(z).recip()?;
        let c = z.mul(&z.sub(&one)).recip()?;
        d.push([a, b, c]);
    }
    let mut out = Vec::with_capacity(rows.len());
    for &r in rows {
        let row = &eqs.rows[r];
        let mut jr = Vec::with_capacity(shapes.len());
        for (t, ex) in row.iter().enumerate() {
            let mut acc = ComplexInterval::zero(p);
            for k in 0..3 {
                if ex[k] != 0 {
                    acc = acc.add(&d[t][k].scale(&Interval::from_i64(ex[k] as i64, p)));
                }
            }
            jr.push(acc);
        }
        out.push(jr);
    }
    Ok(out)
}

fn cabs_f64(z: &ComplexInterval) -> f64 {
    let (a, b) = z.to_f64();
    (a * a + b * b).sqrt()
}

/// Chooses `n` rows with full rank by eliminating on the midpoint Jacobian
/// and always taking the candidate with the largest pivot.
fn select_rows(jac: &[Vec<ComplexInterval>], n: usize) -> Result<Vec<usize>> {
    let mut m: Vec<Vec<(f64, f64)>> = jac.iter().map(|r| r.iter().map(|z| z.to_f64()).collect()).collect();
    let mut chosen = Vec::with_capacity(n);
    let mut used = vec![false; m.len()];
    for col in 0..n {
        let mut best = None;
        let mut bv = 0.0;
        for (r, row) in m.iter().enumerate() {
            if used[r] {
                continue;
            }
            let v = (row[col].0 * row[col].0 + row[col].1 * row[col].1).sqrt();
            if v > bv * (1.0 + 1e-12) {
                bv = v;
                best = Some(r);
            }
        }
        let piv = match best {
            Some(r) if bv > 1e-9 => r,
            _ => return Err(Error::CertificationFailed("gluing equations have deficient rank".into())),
        };
        used[piv] = true;
        chosen.push(piv);
        let pr = m[piv].clone();
        let (pa, pb) = pr[col];
        let den = pa * pa + pb * pb;
        for (r, row) in m.iter_mut().enumerate() {
            if used[r] {
                continue;
            }
            let (a, b) = row[col];
            // f = row[col] / pivot
            let f = ((a * pa + b * pb) / den, (b * pa - a * pb) / den);
            for c in col..n {
                let (x, y) = pr[c];
                row[c].0 -= f.0 * x - f.1 * y;
                row[c].1 -= f.0 * y + f.1 * x;
            }
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Approximate inverse of a complex matrix by Gauss-Jordan on midpoints.
fn approx_inverse(a: &[Vec<ComplexInterval>]) -> Result<Vec<Vec<ComplexInterval>>> {
    let n = a.len();
    let p = a[0][0].prec();
    let mut m: Vec<Vec<ComplexInterval>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<ComplexInterval> = r.iter().map(|z| z.mid()).collect();
            for j in 0..n {
                row.push(if i == j { ComplexInterval::one(p) } else { ComplexInterval::zero(p) });
            }
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| cabs_f64(&m[x][col]).partial_cmp(&cabs_f64(&m[y][col])).unwrap())
            .unwrap();
        if cabs_f64(&m[piv][col]) == 0.0 {
            return Err(Error::CertificationFailed("singular Jacobian".into()));
        }
        m.swap(col, piv);
        let inv = m[col][col].recip()?.mid();
        for c in 0..2 * n {
            m[col][c] = m[col][c].mul(&inv).mid();
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..2 * n {
                let t = f.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&t).mid();
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn mat_vec(m: &[Vec<ComplexInterval>], v: &[ComplexInterval]) -> Vec<ComplexInterval> {
    let p = v[0].prec();
    m.iter()
        .map(|r| r.iter().zip(v).fold(ComplexInterval::zero(p), |acc, (a, b)| acc.add(&a.mul(b))))
        .collect()
}

fn newton_polish(eqs: &GluingEquations, rows: &[usize], z0: &[ComplexInterval], prec: usize) -> Result<Vec<ComplexInterval>> {
    let mut z: Vec<ComplexInterval> = z0.to_vec();
    let target = 2f64.powi(-(prec as i32) + 16);
    for _ in 0..60 {
        let res = log_gluing_residual(eqs, &z)?;
        let f: Vec<ComplexInterval> = rows.iter().map(|&r| res[r].mid()).collect();
        let j = jacobian(eqs, rows, &z)?;
        let c = approx_inverse(&j)?;
        let step = mat_vec(&c, &f);
        let mut size: f64 = 0.0;
        for (zi, s) in z.iter_mut().zip(&step) {
            *zi = zi.sub(s).mid();
            size = size.max(cabs_f64(s));
        }
        if size <= target || size == 0.0 {
            return Ok(z);
        }
    }
    Ok(z)
}

/// Certifies the complete structure near `approx` at precision `prec`.
///
/// Fails unless the shapes polish to a solution within
/// [`POLISH_TOLERANCE`] of `approx`, the Krawczyk operator maps the box
/// into its interior, every shape has positive imaginary part, and every
/// gluing residual contains zero.
pub fn krawczyk_certify(t: &Triangulation, approx: &[ComplexInterval], prec: usize) -> Result<CertifiedShapes> {
    let n = t.num_tetrahedra();
    if approx.len() != n {
        return Err(Error::InvalidTriangulation(format!("{} shapes for {n} tetrahedra", approx.len())));
    }
    let eqs = t.gluing_equations();
    let z0: Vec<ComplexInterval> = approx
        .iter()
        .map(|z| ComplexInterval::new(z.re.with_prec(prec), z.im.with_prec(prec)).mid())
        .collect();
    for z in &z0 {
        if !z.im.is_positive() {
            return Err(Error::CertificationFailed("a supplied shape is not positively oriented".into()));
        }
    }
    let all: Vec<usize> = (0..eqs.rows.len()).collect();
    let jac_all = jacobian(&eqs, &all, &z0)?;
    let rows = select_rows(&jac_all, n)?;

    let z = newton_polish(&eqs, &rows, &z0, prec)?;
    let moved = z.iter().zip(&z0).map(|(a, b)| cabs_f64(&a.sub(b))).fold(0.0, f64::max);
    if !(moved <= POLISH_TOLERANCE) {
        return Err(Error::CertificationFailed(format!(
            "supplied shapes are {moved:.3e} away from a solution of the gluing equations"
        )));
    }

    let res = log_gluing_residual(&eqs, &z)?;
    let f: Vec<ComplexInterval> = rows.iter().map(|&r| res[r].clone()).collect();
    let c = approx_inverse(&jacobian(&eqs, &rows, &z)?)?;
    let cf = mat_vec(&c, &f);
    let mut r = cf.iter().map(|v| v.re.mag_f64().max(v.im.mag_f64())).fold(0.0, f64::max);
    r = (4.0 * r).max(2f64.powi(-(prec as i32) + 24));

    for attempt in 0..2 {
        let rad = Interval::from_f64_pair(-r, r, prec);
        let boxz: Vec<ComplexInterval> = z
            .iter()
            .map(|zi| ComplexInterval::new(&zi.re + &rad, &zi.im + &rad))
            .collect();
        let kz = krawczyk_image(&eqs, &rows, &z, &boxz, &c, &cf)?;
        if kz.iter().zip(&boxz).all(|(k, b)| k.interior_of(b)) {
            for s in &kz {
                if !s.im.is_positive() {
                    return Err(Error::CertificationFailed("solution is not positively oriented".into()));
                }
            }
            let residuals = log_gluing_residual(&eqs, &kz)?;
            for (i, v) in residuals.iter().enumerate() {
                if !v.contains_zero() {
                    return Err(Error::CertificationFailed(format!("gluing equation {i} does not vanish")));
                }
            }
            return Ok(CertifiedShapes { shapes: kz, prec, selected_rows: rows, residuals });
        }
        if attempt == 0 {
            // epsilon-inflation: enlarge to cover the image and retry once
            let grow = kz
                .iter()
                .zip(&z)
                .map(|(k, zi)| {
                    let d = k.sub(zi);
                    d.re.mag_f64().max(d.im.mag_f64())
                })
                .fold(0.0, f64::max);
            r = (2.0 * grow).max(4.0 * r);
        }
    }
    Err(Error::CertificationFailed("Krawczyk test did not contract".into()))
}

fn krawczyk_image(
    eqs: &GluingEquations,
    rows: &[usize],
    z: &[ComplexInterval],
    boxz: &[ComplexInterval],
    c: &[Vec<ComplexInterval>],
    cf: &[ComplexInterval],
) -> Result<Vec<ComplexInterval>> {
    let n = z.len();
    let p = z[0].prec();
    let j = jacobian(eqs, rows, boxz)?;
    // I - C J(Z)
    let mut m = vec![vec![ComplexInterval::zero(p); n]; n];
    for i in 0..n {
        for k in 0..n {
            let mut acc = if i == k { ComplexInterval::one(p) } else { ComplexInterval::zero(p) };
            for l in 0..n {
                acc = acc.sub(&c[i][l].mul(&j[l][k]));
            }
            m[i][k] = acc;
        }
    }
    let dz: Vec<ComplexInterval> = boxz.iter().zip(z).map(|(b, zi)| b.sub(zi)).collect();
    let md = mat_vec(&m, &dz);
    Ok((0..n).map(|i| z[i].sub(&cf[i]).add(&md[i])).collect())
}
