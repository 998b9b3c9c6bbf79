//! Vectors and matrices in R^{1,3} with the form diag(-1, 1, 1, 1).

use crate::error::{Error, Result};
use crate::interval::Interval;
use alloc::vec::Vec;
use core::array;

#[derive(Clone, Debug, PartialEq)]
pub struct MVector(pub [Interval; 4]);

#[derive(Clone, Debug, PartialEq)]
pub struct MMatrix(pub [[Interval; 4]; 4]);

impl MVector {
    pub fn from_f64(v: [f64; 4], prec: usize) -> MVector {
        MVector(array::from_fn(|i| Interval::from_f64(v[i], prec)))
    }

    pub fn zero(prec: usize) -> MVector {
        MVector::from_f64([0.0; 4], prec)
    }

    pub fn basis(i: usize, prec: usize) -> MVector {
        let mut v = [0.0; 4];
        v[i] = 1.0;
        MVector::from_f64(v, prec)
    }

    pub fn prec(&self) -> usize {
        self.0[0].prec()
    }

    pub fn to_f64(&self) -> [f64; 4] {
        array::from_fn(|i| self.0[i].mid_f64())
    }

    /// Minkowski inner product `-x0 y0 + x1 y1 + x2 y2 + x3 y3`.
    pub fn dot(&self, o: &MVector) -> Interval {
        let a = &self.0;
        let b = &o.0;
        &a[1] * &b[1] + &a[2] * &b[2] + &a[3] * &b[3] - &a[0] * &b[0]
    }

    pub fn norm_sqr(&self) -> Interval {
        let a = &self.0;
        a[1].sqr() + a[2].sqr() + a[3].sqr() - a[0].sqr()
    }

    pub fn add(&self, o: &MVector) -> MVector {
        MVector(array::from_fn(|i| &self.0[i] + &o.0[i]))
    }

    pub fn sub(&self, o: &MVector) -> MVector {
        MVector(array::from_fn(|i| &self.0[i] - &o.0[i]))
    }

    pub fn neg(&self) -> MVector {
        MVector(array::from_fn(|i| self.0[i].neg()))
    }

    pub fn scale(&self, k: &Interval) -> MVector {
        MVector(array::from_fn(|i| &self.0[i] * k))
    }

    /// Divides by `sqrt(|x . x|)`; fails if the norm is not bounded away
    /// from zero.
    pub fn normalize(&self) -> Result<MVector> {
        let n = self.norm_sqr().abs();
        if !n.is_positive() {
            return Err(Error::InsufficientPrecision("normalizing a vector of undecided norm"));
        }
        let s = n.sqrt()?.recip()?;
        Ok(self.scale(&s))
    }

    pub fn hull(&self, o: &MVector) -> MVector {
        MVector(array::from_fn(|i| self.0[i].hull(&o.0[i])))
    }

    pub fn overlaps(&self, o: &MVector) -> bool {
        (0..4).all(|i| self.0[i].overlaps(&o.0[i]))
    }

    pub fn max_width(&self) -> f64 {
        self.0.iter().map(|x| x.width_f64()).fold(0.0, f64::max)
    }

    /// Component-wise midpoints as an exact vector.
    pub fn mid(&self) -> MVector {
        MVector(array::from_fn(|i| self.0[i].mid_interval()))
    }

    pub fn with_prec(&self, prec: usize) -> MVector {
        MVector(array::from_fn(|i| self.0[i].with_prec(prec)))
    }
}

/// Minkowski-orthogonal vector to `a`, `b`, `c`: `n . x = det[x; a; b; c]`.
pub fn orthogonal_to(a: &MVector, b: &MVector, c: &MVector) -> MVector {
    // cofactor expansion along the first row of [x; a; b; c]
    let m = |r: [usize; 3]| -> Interval {
        let (i, j, k) = (r[0], r[1], r[2]);
        let (a, b, c) = (&a.0, &b.0, &c.0);
        &a[i] * &(&b[j] * &c[k] - &b[k] * &c[j]) - &a[j] * &(&b[i] * &c[k] - &b[k] * &c[i])
            + &a[k] * &(&b[i] * &c[j] - &b[j] * &c[i])
    };
    let y = [m([1, 2, 3]), m([0, 2, 3]).neg(), m([0, 1, 3]), m([0, 1, 2]).neg()];
    // n = J y so that n . x = y^T x
    let [y0, y1, y2, y3] = y;
    MVector([y0.neg(), y1, y2, y3])
}

impl MMatrix {
    pub fn identity(prec: usize) -> MMatrix {
        MMatrix(array::from_fn(|i| {
            array::from_fn(|j| Interval::from_f64(if i == j { 1.0 } else { 0.0 }, prec))
        }))
    }

    pub fn from_f64(m: [[f64; 4]; 4], prec: usize) -> MMatrix {
        MMatrix(array::from_fn(|i| array::from_fn(|j| Interval::from_f64(m[i][j], prec))))
    }

    pub fn prec(&self) -> usize {
        self.0[0][0].prec()
    }

    pub fn to_f64(&self) -> [[f64; 4]; 4] {
        array::from_fn(|i| array::from_fn(|j| self.0[i][j].mid_f64()))
    }

    pub fn apply(&self, v: &MVector) -> MVector {
        MVector(array::from_fn(|i| {
            let r = &self.0[i];
            &r[0] * &v.0[0] + &r[1] * &v.0[1] + &r[2] * &v.0[2] + &r[3] * &v.0[3]
        }))
    }

    pub fn mul(&self, o: &MMatrix) -> MMatrix {
        MMatrix(array::from_fn(|i| {
            array::from_fn(|j| {
                &self.0[i][0] * &o.0[0][j]
                    + &self.0[i][1] * &o.0[1][j]
                    + &self.0[i][2] * &o.0[2][j]
                    + &self.0[i][3] * &o.0[3][j]
            })
        }))
    }

    pub fn transpose(&self) -> MMatrix {
        MMatrix(array::from_fn(|i| array::from_fn(|j| self.0[j][i].clone())))
    }

    /// Inverse of an element of O(1,3): `J m^T J`. Exact, no divisions.
    pub fn o13_inverse(&self) -> MMatrix {
        MMatrix(array::from_fn(|i| {
            array::from_fn(|j| {
                let v = self.0[j][i].clone();
                if (i == 0) != (j == 0) {
                    v.neg()
                } else {
                    v
                }
            })
        }))
    }

    pub fn column(&self, j: usize) -> MVector {
        MVector(array::from_fn(|i| self.0[i][j].clone()))
    }

    pub fn max_width(&self) -> f64 {
        self.0.iter().flat_map(|r| r.iter()).map(|x| x.width_f64()).fold(0.0, f64::max)
    }

    /// Largest absolute entry (upper bound, as a double).
    pub fn max_mag(&self) -> f64 {
        self.0.iter().flat_map(|r| r.iter()).map(|x| x.mag_f64()).fold(0.0, f64::max)
    }

    /// Checks `m^T J m = J` up to enclosure overlap.
    pub fn preserves_form(&self) -> bool {
        for i in 0..4 {
            for j in 0..4 {
                let ci = self.column(i);
                let cj = self.column(j);
                let target = if i != j { 0.0 } else if i == 0 { -1.0 } else { 1.0 };
                if !ci.dot(&cj).contains_f64(target) {
                    return false;
                }
            }
        }
        true
    }

    /// Map sending each `src[i]` to `dst[i]` for a basis `src` consisting of
    /// three light-like vectors followed by a unit space-like vector
    /// orthogonal to them.
    pub fn from_frames(src: &[MVector; 4], dst: &[MVector; 4]) -> Result<MMatrix> {
        // x = sum_i c_i src_i with c = G^{-1} (src_j . x)_j; g = sum_ij Ginv_ij dst_i (J src_j)^T
        let a = src[0].dot(&src[1]);
        let b = src[0].dot(&src[2]);
        let c = src[1].dot(&src[2]);
        let det2 = (&a * &b * &c).scale(2.0);
        let inv = det2.recip()?;
        let g3 = [
            [c.sqr().neg(), &b * &c, &a * &c],
            [&b * &c, b.sqr().neg(), &a * &b],
            [&a * &c, &a * &b, a.sqr().neg()],
        ];
        let nn = src[3].norm_sqr().recip()?;
        let p = src[0].prec();
        let mut ginv: [[Interval; 4]; 4] = array::from_fn(|_| array::from_fn(|_| Interval::zero(p)));
        for i in 0..3 {
            for j in 0..3 {
                ginv[i][j] = &g3[i][j] * &inv;
            }
        }
        ginv[3][3] = nn;
        // covectors J src_j
        let js: Vec<MVector> = src
            .iter()
            .map(|s| {
                let mut v = s.clone();
                v.0[0] = v.0[0].neg();
                v
            })
            .collect();
        let mut out: [[Interval; 4]; 4] = array::from_fn(|_| array::from_fn(|_| Interval::zero(p)));
        for i in 0..4 {
            for j in 0..4 {
                if (i < 3) != (j < 3) {
                    continue;
                }
                let coef = &ginv[i][j];
                for r in 0..4 {
                    for s in 0..4 {
                        let t = &(coef * &dst[i].0[r]) * &js[j].0[s];
                        out[r][s] = &out[r][s] + &t;
                    }
                }
            }
        }
        Ok(MMatrix(out))
    }

    pub fn hull(&self, o: &MMatrix) -> MMatrix {
        MMatrix(array::from_fn(|i| array::from_fn(|j| self.0[i][j].hull(&o.0[i][j]))))
    }

    pub fn with_prec(&self, prec: usize) -> MMatrix {
        MMatrix(array::from_fn(|i| array::from_fn(|j| self.0[i][j].with_prec(prec))))
    }
}

/// Solves the 4x4 interval system `a x = b` by Gauss-Jordan elimination,
/// pivoting on the entry with the largest lower magnitude.
pub fn solve4(a: &[[Interval; 4]; 4], b: &[Interval; 4]) -> Result<[Interval; 4]> {
    let n = 4;
    let mut m: Vec<Vec<Interval>> = (0..n)
        .map(|i| {
            let mut r: Vec<Interval> = a[i].to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    for col in 0..n {
        let mut best = col;
        let mut bv = -1.0;
        for r in col..n {
            let v = m[r][col].mig();
            let v = crate::bigfloat::to_f64(&v);
            if v > bv {
                bv = v;
                best = r;
            }
        }
        if bv <= 0.0 {
            return Err(Error::InsufficientPrecision("singular linear system"));
        }
        m.swap(col, best);
        let piv = m[col][col].clone();
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r][col].div(&piv)?;
            for c in col..=n {
                let t = &f * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    let mut x: [Interval; 4] = array::from_fn(|_| Interval::zero(a[0][0].prec()));
    for i in 0..n {
        x[i] = m[i][n].div(&m[i][i])?;
    }
    Ok(x)
}
