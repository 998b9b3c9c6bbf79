//! Rectangular complex intervals.

use crate::error::{Error, Result};
use crate::interval::Interval;
use core::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> ComplexInterval {
        ComplexInterval { re, im }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> ComplexInterval {
        ComplexInterval { re: Interval::from_f64(re, prec), im: Interval::from_f64(im, prec) }
    }

    pub fn real(re: Interval) -> ComplexInterval {
        let p = re.prec();
        ComplexInterval { re, im: Interval::zero(p) }
    }

    pub fn zero(prec: usize) -> ComplexInterval {
        ComplexInterval::from_f64(0.0, 0.0, prec)
    }

    pub fn one(prec: usize) -> ComplexInterval {
        ComplexInterval::from_f64(1.0, 0.0, prec)
    }

    /// The constant `2 pi i`.
    pub fn two_pi_i(prec: usize) -> ComplexInterval {
        ComplexInterval { re: Interval::zero(prec), im: Interval::pi(prec).scale(2.0) }
    }

    pub fn prec(&self) -> usize {
        self.re.prec().max(self.im.prec())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }

    pub fn mid(&self) -> ComplexInterval {
        ComplexInterval { re: self.re.mid_interval(), im: self.im.mid_interval() }
    }

    pub fn conj(&self) -> ComplexInterval {
        ComplexInterval { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn add(&self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn neg(&self) -> ComplexInterval {
        ComplexInterval { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn scale(&self, k: &Interval) -> ComplexInterval {
        ComplexInterval { re: &self.re * k, im: &self.im * k }
    }

    /// `|z|^2`
    pub fn norm_sqr(&self) -> Interval {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(&self) -> Interval {
        self.norm_sqr().sqrt().expect("squares are nonnegative")
    }

    pub fn recip(&self) -> Result<ComplexInterval> {
        let n = self.norm_sqr();
        let c = self.conj();
        Ok(ComplexInterval { re: c.re.div(&n)?, im: c.im.div(&n)? })
    }

    pub fn div(&self, o: &ComplexInterval) -> Result<ComplexInterval> {
        let n = o.norm_sqr();
        let num = self.mul(&o.conj());
        Ok(ComplexInterval { re: num.re.div(&n)?, im: num.im.div(&n)? })
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn subset_of(&self, o: &ComplexInterval) -> bool {
        self.re.subset_of(&o.re) && self.im.subset_of(&o.im)
    }

    pub fn interior_of(&self, o: &ComplexInterval) -> bool {
        self.re.interior_of(&o.re) && self.im.interior_of(&o.im)
    }

    pub fn overlaps(&self, o: &ComplexInterval) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn hull(&self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: self.re.hull(&o.re), im: self.im.hull(&o.im) }
    }

    pub fn intersect(&self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: self.re.intersect(&o.re), im: self.im.intersect(&o.im) }
    }

    /// Larger of the real and imaginary widths.
    pub fn width_f64(&self) -> f64 {
        self.re.width_f64().max(self.im.width_f64())
    }

    /// Argument, defined when the enclosure avoids the closed negative real
    /// axis and the origin.
    pub fn arg(&self) -> Result<Interval> {
        let p = self.prec();
        let half_pi = Interval::pi(p).scale(0.5);
        if self.im.is_positive() {
            // pi/2 - atan(re/im)
            let t = self.re.div(&self.im)?.atan();
            return Ok(&half_pi - &t);
        }
        if self.im.is_negative() {
            let t = self.re.div(&self.im)?.atan();
            return Ok(half_pi.neg() - t);
        }
        if self.re.is_positive() {
            return Ok(self.im.div(&self.re)?.atan());
        }
        Err(Error::InsufficientPrecision("argument undecided near the branch cut"))
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Result<ComplexInterval> {
        let r = self.norm_sqr().ln()?.scale(0.5);
        Ok(ComplexInterval { re: r, im: self.arg()? })
    }

    /// Principal square root for enclosures away from the branch cut.
    pub fn sqrt(&self) -> Result<ComplexInterval> {
        // sqrt(z) = sqrt((|z|+re)/2) + i sign(im) sqrt((|z|-re)/2)
        let a = self.abs();
        let u = (&a + &self.re).scale(0.5).intersect(&Interval::at_least(0.0, self.prec()));
        let v = (&a - &self.re).scale(0.5).intersect(&Interval::at_least(0.0, self.prec()));
        if self.re.is_positive() || self.im.sign().is_some() {
            let re = u.sqrt()?;
            let mag_im = v.sqrt()?;
            let im = if self.im.is_negative() {
                mag_im.neg()
            } else if self.im.is_positive() {
                mag_im
            } else {
                // re > 0 and im straddles zero: im = im(z) / (2 re(sqrt z))
                self.im.div(&re.scale(2.0))?
            };
            return Ok(ComplexInterval { re, im });
        }
        Err(Error::InsufficientPrecision("square root undecided near the branch cut"))
    }
}

macro_rules! cbinop {
    ($tr:ident, $m:ident) => {
        impl $tr<&ComplexInterval> for &ComplexInterval {
            type Output = ComplexInterval;
            fn $m(self, o: &ComplexInterval) -> ComplexInterval {
                ComplexInterval::$m(self, o)
            }
        }
        impl $tr<ComplexInterval> for ComplexInterval {
            type Output = ComplexInterval;
            fn $m(self, o: ComplexInterval) -> ComplexInterval {
                ComplexInterval::$m(&self, &o)
            }
        }
    };
}

cbinop!(Add, add);
cbinop!(Sub, sub);
cbinop!(Mul, mul);

impl Neg for &ComplexInterval {
    type Output = ComplexInterval;
    fn neg(self) -> ComplexInterval {
        ComplexInterval::neg(self)
    }
}
