//! Outward-rounded real intervals over arbitrary precision floats.

use crate::bigfloat::{self as bf, Rm};
use crate::error::{Error, Result};
use alloc::string::{String, ToString};
use astro_float::{BigFloat, Radix};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

/// Closed interval `[lo, hi]`. Endpoints may be infinite. The empty
/// interval is stored as `lo = +inf, hi = -inf`.
#[derive(Clone)]
pub struct Interval {
    lo: BigFloat,
    hi: BigFloat,
    prec: usize,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "[empty]");
        }
        write!(f, "[{:e}, {:e}]", self.lo_f64(), self.hi_f64())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_decimal_pair();
        write!(f, "[{a}, {b}]")
    }
}

impl Interval {
    pub fn point(v: BigFloat, prec: usize) -> Interval {
        Interval { lo: v.clone(), hi: v, prec }
    }

    /// Exact enclosure of a double (exact when `prec >= 53`).
    pub fn from_f64(v: f64, prec: usize) -> Interval {
        assert!(v.is_finite() || v.is_infinite(), "NaN is not an interval");
        let x = bf::from_f64(v, prec);
        Interval { lo: x.clone(), hi: x, prec }
    }

    pub fn from_i64(v: i64, prec: usize) -> Interval {
        let x = BigFloat::from_i64(v, prec.max(64));
        Interval { lo: x.clone(), hi: x, prec }
    }

    /// Interval `[lo, hi]` from doubles, rounded outward.
    pub fn from_f64_pair(lo: f64, hi: f64, prec: usize) -> Interval {
        Interval::new(bf::from_f64(lo, prec), bf::from_f64(hi, prec), prec)
    }

    pub fn new(lo: BigFloat, hi: BigFloat, prec: usize) -> Interval {
        assert!(!lo.is_nan() && !hi.is_nan(), "NaN endpoint");
        Interval { lo, hi, prec }
    }

    pub fn empty(prec: usize) -> Interval {
        Interval { lo: bf::inf_pos(), hi: bf::inf_neg(), prec }
    }

    pub fn entire(prec: usize) -> Interval {
        Interval { lo: bf::inf_neg(), hi: bf::inf_pos(), prec }
    }

    /// `[a, +inf)`
    pub fn at_least(a: f64, prec: usize) -> Interval {
        Interval { lo: bf::from_f64(a, prec), hi: bf::inf_pos(), prec }
    }

    pub fn zero(prec: usize) -> Interval {
        Interval::from_f64(0.0, prec)
    }

    pub fn one(prec: usize) -> Interval {
        Interval::from_f64(1.0, prec)
    }

    /// Enclosure of pi.
    pub fn pi(prec: usize) -> Interval {
        let (lo, hi) = bf::with_consts(|cc| (cc.pi(prec, Rm::Down), cc.pi(prec, Rm::Up)));
        Interval {
            lo: bf::nudge(&lo, prec, Rm::Down),
            hi: bf::nudge(&hi, prec, Rm::Up),
            prec,
        }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// Same endpoints, new working precision for later operations.
    pub fn with_prec(&self, prec: usize) -> Interval {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        if !lo.is_inf() && lo.precision().unwrap_or(0) > prec {
            let _ = lo.set_precision(prec, Rm::Down);
        }
        if !hi.is_inf() && hi.precision().unwrap_or(0) > prec {
            let _ = hi.set_precision(prec, Rm::Up);
        }
        Interval { lo, hi, prec }
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        bf::to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        bf::to_f64(&self.hi)
    }

    /// Doubles `(lo, hi)` enclosing the interval.
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (self.lo_f64().next_down(), self.hi_f64().next_up())
    }

    /// Nearest double to the midpoint.
    pub fn mid_f64(&self) -> f64 {
        bf::to_f64(&self.mid())
    }

    pub fn is_empty(&self) -> bool {
        bf::lt(&self.hi, &self.lo)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_empty() && !self.lo.is_inf() && !self.hi.is_inf()
    }

    /// Midpoint rounded to nearest (finite intervals only).
    pub fn mid(&self) -> BigFloat {
        if self.lo.is_inf() || self.hi.is_inf() {
            if self.lo.is_inf() && self.hi.is_inf() {
                return bf::zero(self.prec);
            }
            return if self.lo.is_inf() { self.hi.clone() } else { self.lo.clone() };
        }
        let s = self.lo.add(&self.hi, self.prec + 64, Rm::ToEven);
        let mut m = s.div(&BigFloat::from_word(2, 64), self.prec + 64, Rm::ToEven);
        let _ = m.set_precision(self.prec, Rm::ToEven);
        m
    }

    pub fn mid_interval(&self) -> Interval {
        Interval::point(self.mid(), self.prec)
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> BigFloat {
        if self.is_empty() {
            return bf::zero(self.prec);
        }
        self.hi.sub(&self.lo, self.prec, Rm::Up)
    }

    pub fn width_f64(&self) -> f64 {
        bf::to_f64(&self.width())
    }

    /// Upper bound on `max(|lo|, |hi|)`.
    pub fn mag(&self) -> BigFloat {
        let a = self.lo.abs();
        let b = self.hi.abs();
        bf::max(&a, &b)
    }

    pub fn mag_f64(&self) -> f64 {
        bf::to_f64(&self.mag())
    }

    /// Lower bound on `min |x|` over the interval.
    pub fn mig(&self) -> BigFloat {
        if self.contains_zero() {
            bf::zero(self.prec)
        } else {
            bf::min(&self.lo.abs(), &self.hi.abs())
        }
    }

    pub fn contains(&self, x: &BigFloat) -> bool {
        bf::le(&self.lo, x) && bf::le(x, &self.hi)
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        self.contains(&bf::from_f64(x, 64))
    }

    pub fn contains_zero(&self) -> bool {
        !bf::is_pos(&self.lo) && !bf::is_neg(&self.hi)
    }

    /// True when `self` is a subset of `other`.
    pub fn subset_of(&self, other: &Interval) -> bool {
        self.is_empty() || (bf::le(&other.lo, &self.lo) && bf::le(&self.hi, &other.hi))
    }

    /// True when `self` lies in the interior of `other`.
    pub fn interior_of(&self, other: &Interval) -> bool {
        self.is_empty() || (bf::lt(&other.lo, &self.lo) && bf::lt(&self.hi, &other.hi))
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        !self.intersect(other).is_empty()
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval {
            lo: bf::max(&self.lo, &other.lo),
            hi: bf::min(&self.hi, &other.hi),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        Interval {
            lo: bf::min(&self.lo, &other.lo),
            hi: bf::max(&self.hi, &other.hi),
            prec: self.prec.max(other.prec),
        }
    }

    /// Intersection with `[a, +inf)`.
    pub fn clamp_below(&self, a: f64) -> Interval {
        self.intersect(&Interval::at_least(a, self.prec))
    }

    /// Certified `self < other`: `Some(true)` if every element is smaller,
    /// `Some(false)` if no element is, `None` if undecided.
    pub fn lt(&self, other: &Interval) -> Option<bool> {
        if bf::lt(&self.hi, &other.lo) {
            Some(true)
        } else if bf::le(&other.hi, &self.lo) {
            Some(false)
        } else {
            None
        }
    }

    pub fn gt(&self, other: &Interval) -> Option<bool> {
        other.lt(self)
    }

    pub fn le(&self, other: &Interval) -> Option<bool> {
        if bf::le(&self.hi, &other.lo) {
            Some(true)
        } else if bf::lt(&other.hi, &self.lo) {
            Some(false)
        } else {
            None
        }
    }

    /// Certified sign: `Some(Less)`, `Some(Greater)`, or `None` when the
    /// interval contains zero (including the exact zero).
    pub fn sign(&self) -> Option<Ordering> {
        if bf::is_neg(&self.hi) {
            Some(Ordering::Less)
        } else if bf::is_pos(&self.lo) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn is_positive(&self) -> bool {
        bf::is_pos(&self.lo)
    }

    pub fn is_negative(&self) -> bool {
        bf::is_neg(&self.hi)
    }

    pub fn is_nonneg(&self) -> bool {
        !bf::is_neg(&self.lo)
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: BigFloat::neg(&self.hi), hi: BigFloat::neg(&self.lo), prec: self.prec }
    }

    pub fn abs(&self) -> Interval {
        if self.is_nonneg() {
            self.clone()
        } else if !bf::is_pos(&self.hi) {
            self.neg()
        } else {
            Interval { lo: bf::zero(self.prec), hi: self.mag(), prec: self.prec }
        }
    }

    fn prec2(&self, o: &Interval) -> usize {
        self.prec.max(o.prec)
    }

    pub fn add(&self, o: &Interval) -> Interval {
        if self.is_empty() || o.is_empty() {
            return Interval::empty(self.prec2(o));
        }
        let p = self.prec2(o);
        Interval { lo: self.lo.add(&o.lo, p, Rm::Down), hi: self.hi.add(&o.hi, p, Rm::Up), prec: p }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        if self.is_empty() || o.is_empty() {
            return Interval::empty(self.prec2(o));
        }
        let p = self.prec2(o);
        Interval { lo: self.lo.sub(&o.hi, p, Rm::Down), hi: self.hi.sub(&o.lo, p, Rm::Up), prec: p }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let p = self.prec2(o);
        if self.is_empty() || o.is_empty() {
            return Interval::empty(p);
        }
        let m = |a: &BigFloat, b: &BigFloat, rm: Rm| -> BigFloat {
            // 0 * inf is taken as 0: such products only arise from
            // unbounded enclosures of finite quantities
            if a.is_zero() || b.is_zero() {
                bf::zero(p)
            } else {
                a.mul(b, p, rm)
            }
        };
        let (a, b, c, d) = (&self.lo, &self.hi, &o.lo, &o.hi);
        let a_nn = !bf::is_neg(a);
        let b_np = !bf::is_pos(b);
        let c_nn = !bf::is_neg(c);
        let d_np = !bf::is_pos(d);
        let (lo, hi) = if a_nn {
            if c_nn {
                (m(a, c, Rm::Down), m(b, d, Rm::Up))
            } else if d_np {
                (m(b, c, Rm::Down), m(a, d, Rm::Up))
            } else {
                (m(b, c, Rm::Down), m(b, d, Rm::Up))
            }
        } else if b_np {
            if c_nn {
                (m(a, d, Rm::Down), m(b, c, Rm::Up))
            } else if d_np {
                (m(b, d, Rm::Down), m(a, c, Rm::Up))
            } else {
                (m(a, d, Rm::Down), m(a, c, Rm::Up))
            }
        } else if c_nn {
            (m(a, d, Rm::Down), m(b, d, Rm::Up))
        } else if d_np {
            (m(b, c, Rm::Down), m(a, c, Rm::Up))
        } else {
            let l1 = m(a, d, Rm::Down);
            let l2 = m(b, c, Rm::Down);
            let h1 = m(a, c, Rm::Up);
            let h2 = m(b, d, Rm::Up);
            (bf::min(&l1, &l2), bf::max(&h1, &h2))
        };
        Interval { lo, hi, prec: p }
    }

    pub fn sqr(&self) -> Interval {
        let p = self.prec;
        if self.is_empty() {
            return self.clone();
        }
        let a = self.abs();
        let lo = if a.lo.is_zero() { bf::zero(p) } else { a.lo.mul(&a.lo, p, Rm::Down) };
        let hi = a.hi.mul(&a.hi, p, Rm::Up);
        Interval { lo, hi, prec: p }
    }

    /// Multiplication by a double, exact scaling when it is a power of two.
    pub fn scale(&self, k: f64) -> Interval {
        self.mul(&Interval::from_f64(k, self.prec))
    }

    /// Reciprocal; fails when the interval contains zero.
    pub fn recip(&self) -> Result<Interval> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        if self.contains_zero() {
            return Err(Error::InsufficientPrecision("division by an interval containing zero"));
        }
        let p = self.prec;
        let one = BigFloat::from_word(1, p);
        let r = |x: &BigFloat, rm: Rm| -> BigFloat {
            if x.is_inf() {
                bf::zero(p)
            } else {
                one.div(x, p, rm)
            }
        };
        Ok(Interval { lo: r(&self.hi, Rm::Down), hi: r(&self.lo, Rm::Up), prec: p })
    }

    pub fn div(&self, o: &Interval) -> Result<Interval> {
        if o.contains_zero() && !o.is_empty() {
            return Err(Error::InsufficientPrecision("division by an interval containing zero"));
        }
        if self.is_finite() && o.is_finite() {
            // direct quotient of endpoints is tighter than self * (1/o)
            let p = self.prec2(o);
            let q = |a: &BigFloat, b: &BigFloat, rm: Rm| a.div(b, p, rm);
            let (a, b, c, d) = (&self.lo, &self.hi, &o.lo, &o.hi);
            let (lo, hi) = if bf::is_pos(c) {
                if !bf::is_neg(a) {
                    (q(a, d, Rm::Down), q(b, c, Rm::Up))
                } else if !bf::is_pos(b) {
                    (q(a, c, Rm::Down), q(b, d, Rm::Up))
                } else {
                    (q(a, c, Rm::Down), q(b, c, Rm::Up))
                }
            } else if !bf::is_neg(a) {
                (q(b, d, Rm::Down), q(a, c, Rm::Up))
            } else if !bf::is_pos(b) {
                (q(b, c, Rm::Down), q(a, d, Rm::Up))
            } else {
                (q(b, d, Rm::Down), q(a, d, Rm::Up))
            };
            return Ok(Interval { lo, hi, prec: p });
        }
        Ok(self.mul(&o.recip()?))
    }

    pub fn min(&self, o: &Interval) -> Interval {
        Interval { lo: bf::min(&self.lo, &o.lo), hi: bf::min(&self.hi, &o.hi), prec: self.prec2(o) }
    }

    pub fn max(&self, o: &Interval) -> Interval {
        Interval { lo: bf::max(&self.lo, &o.lo), hi: bf::max(&self.hi, &o.hi), prec: self.prec2(o) }
    }

    /// Applies a monotone increasing endpoint function, widening by one ulp.
    fn monotone_up(&self, f: impl Fn(&BigFloat, Rm) -> BigFloat) -> Interval {
        let p = self.prec;
        let lo = f(&self.lo, Rm::Down);
        let hi = f(&self.hi, Rm::Up);
        Interval { lo: bf::nudge(&lo, p, Rm::Down), hi: bf::nudge(&hi, p, Rm::Up), prec: p }
    }

    /// Square root; requires `lo >= 0`.
    pub fn sqrt(&self) -> Result<Interval> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        if bf::is_neg(&self.lo) {
            return Err(Error::Domain("sqrt of an interval with negative part"));
        }
        let p = self.prec;
        Ok(self.monotone_up(|x, rm| if x.is_inf() { x.clone() } else { x.sqrt(p, rm) }))
    }

    pub fn exp(&self) -> Interval {
        if self.is_empty() {
            return self.clone();
        }
        let p = self.prec;
        let lo_zero = self.lo.is_inf_neg();
        let mut r = self.monotone_up(|x, rm| {
            if x.is_inf_neg() {
                bf::zero(p)
            } else if x.is_inf_pos() {
                x.clone()
            } else {
                bf::with_consts(|cc| x.exp(p, rm, cc))
            }
        });
        if lo_zero || bf::is_neg(&r.lo) {
            r.lo = bf::zero(p);
        }
        r
    }

    /// Natural log. A zero lower endpoint maps to `-inf`; negative values
    /// are a domain error.
    pub fn ln(&self) -> Result<Interval> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        if bf::is_neg(&self.lo) {
            return Err(Error::Domain("log of an interval with negative part"));
        }
        let p = self.prec;
        Ok(self.monotone_up(|x, rm| {
            if x.is_zero() {
                bf::inf_neg()
            } else if x.is_inf_pos() {
                x.clone()
            } else {
                bf::with_consts(|cc| x.ln(p, rm, cc))
            }
        }))
    }

    /// Inverse hyperbolic cosine on `[1, inf)`.
    pub fn acosh(&self) -> Result<Interval> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        let one = BigFloat::from_word(1, 64);
        if bf::lt(&self.lo, &one) {
            return Err(Error::Domain("acosh of an interval reaching below 1"));
        }
        let p = self.prec;
        let mut r = self.monotone_up(|x, rm| {
            if x.is_inf_pos() {
                x.clone()
            } else if bf::cmp(x, &one) == Ordering::Equal {
                bf::zero(p)
            } else {
                bf::with_consts(|cc| x.acosh(p, rm, cc))
            }
        });
        if bf::is_neg(&r.lo) {
            r.lo = bf::zero(p);
        }
        Ok(r)
    }

    pub fn asinh(&self) -> Interval {
        if self.is_empty() {
            return self.clone();
        }
        let p = self.prec;
        self.monotone_up(|x, rm| {
            if x.is_inf() || x.is_zero() {
                x.clone()
            } else {
                bf::with_consts(|cc| x.asinh(p, rm, cc))
            }
        })
    }

    pub fn atan(&self) -> Interval {
        if self.is_empty() {
            return self.clone();
        }
        let p = self.prec;
        let half_pi = Interval::pi(p).scale(0.5);
        self.monotone_up(|x, rm| {
            if x.is_inf_pos() {
                if rm == Rm::Up { half_pi.hi.clone() } else { half_pi.lo.clone() }
            } else if x.is_inf_neg() {
                if rm == Rm::Up { BigFloat::neg(&half_pi.lo) } else { BigFloat::neg(&half_pi.hi) }
            } else if x.is_zero() {
                x.clone()
            } else {
                bf::with_consts(|cc| x.atan(p, rm, cc))
            }
        })
    }

    pub fn cosh(&self) -> Interval {
        let e = self.exp();
        let ei = self.neg().exp();
        let c = e.add(&ei).scale(0.5);
        c.intersect(&Interval::at_least(1.0, self.prec))
    }

    pub fn sinh(&self) -> Interval {
        let e = self.exp();
        let ei = self.neg().exp();
        e.sub(&ei).scale(0.5)
    }

    /// Largest integer not exceeding each endpoint.
    pub fn floor(&self) -> Interval {
        Interval { lo: self.lo.floor(), hi: self.hi.floor(), prec: self.prec }
    }

    /// Endpoints as exact decimal strings with explicit exponent. Parsing
    /// the pair back at the same precision reproduces the interval.
    pub fn to_decimal_pair(&self) -> (String, String) {
        (endpoint_to_string(&self.lo, Rm::Down), endpoint_to_string(&self.hi, Rm::Up))
    }

    pub fn from_decimal_pair(lo: &str, hi: &str, prec: usize) -> Result<Interval> {
        let l = endpoint_from_string(lo, prec, Rm::Down)?;
        let h = endpoint_from_string(hi, prec, Rm::Up)?;
        Ok(Interval { lo: l, hi: h, prec })
    }

    /// Tight enclosure of a decimal literal such as `0.866025403784`.
    pub fn from_decimal(s: &str, prec: usize) -> Result<Interval> {
        Interval::from_decimal_pair(s, s, prec)
    }
}

fn endpoint_to_string(x: &BigFloat, rm: Rm) -> String {
    if x.is_inf_pos() {
        return "inf".to_string();
    }
    if x.is_inf_neg() {
        return "-inf".to_string();
    }
    if x.is_zero() {
        return "0.0e0".to_string();
    }
    // Binary fractions have finite decimal expansions; widen the working
    // precision until the printed digits are exact.
    let p = x.precision().unwrap_or(64);
    let mut q = 4 * p;
    let s = loop {
        let mut z = x.clone();
        let _ = z.set_precision(q, Rm::None);
        let s = bf::with_consts(|cc| z.format(Radix::Dec, rm, cc)).expect("decimal formatting");
        let exact = bf::with_consts(|cc| {
            BigFloat::parse(&s, Radix::Dec, p, Rm::Down, cc) == *x
                && BigFloat::parse(&s, Radix::Dec, p, Rm::Up, cc) == *x
        });
        if exact || q > 64 * p {
            break s;
        }
        q *= 2;
    };
    if s.contains('e') {
        s
    } else {
        alloc::format!("{s}e0")
    }
}

fn endpoint_from_string(s: &str, prec: usize, rm: Rm) -> Result<BigFloat> {
    let t = s.trim();
    match t {
        "inf" | "+inf" => return Ok(bf::inf_pos()),
        "-inf" => return Ok(bf::inf_neg()),
        _ => {}
    }
    let ok = !t.is_empty()
        && t.chars().all(|c| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'))
        && t.chars().any(|c| c.is_ascii_digit());
    if !ok {
        return Err(Error::Parse(alloc::format!("not a decimal number: {t:?}")));
    }
    let v = bf::with_consts(|cc| BigFloat::parse(t, Radix::Dec, prec, rm, cc));
    if v.is_nan() {
        return Err(Error::Parse(alloc::format!("not a decimal number: {t:?}")));
    }
    Ok(v)
}

impl PartialEq for Interval {
    /// Endpoint-wise equality (not a certified predicate).
    fn eq(&self, other: &Interval) -> bool {
        (self.is_empty() && other.is_empty())
            || (bf::cmp(&self.lo, &other.lo) == Ordering::Equal
                && bf::cmp(&self.hi, &other.hi) == Ordering::Equal)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Interval> for &Interval {
            type Output = Interval;
            fn $m(self, o: &Interval) -> Interval {
                Interval::$m(self, o)
            }
        }
        impl $tr<Interval> for Interval {
            type Output = Interval;
            fn $m(self, o: Interval) -> Interval {
                Interval::$m(&self, &o)
            }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, o: &Interval) -> Interval {
                Interval::$m(&self, o)
            }
        }
        impl $tr<Interval> for &Interval {
            type Output = Interval;
            fn $m(self, o: Interval) -> Interval {
                Interval::$m(self, &o)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::neg(self)
    }
}


/// A bound that is either an interval or exactly minus infinity.
#[derive(Clone, Debug)]
pub enum ExtendedBound {
    NegInfinity,
    Value(Interval),
}

impl ExtendedBound {
    pub fn lower_f64(&self) -> f64 {
        match self {
            ExtendedBound::NegInfinity => f64::NEG_INFINITY,
            ExtendedBound::Value(v) => v.lo_f64(),
        }
    }

    pub fn upper_f64(&self) -> f64 {
        match self {
            ExtendedBound::NegInfinity => f64::NEG_INFINITY,
            ExtendedBound::Value(v) => v.hi_f64(),
        }
    }

    /// Lower endpoint, `-inf` for the symbol.
    pub fn lower(&self) -> BigFloat {
        match self {
            ExtendedBound::NegInfinity => bf::inf_neg(),
            ExtendedBound::Value(v) => v.lo().clone(),
        }
    }

    pub fn upper(&self) -> BigFloat {
        match self {
            ExtendedBound::NegInfinity => bf::inf_neg(),
            ExtendedBound::Value(v) => v.hi().clone(),
        }
    }

    pub fn is_neg_infinity(&self) -> bool {
        matches!(self, ExtendedBound::NegInfinity)
    }

    /// Interval view, with `-inf` as the degenerate `[-inf, -inf]`.
    pub fn to_interval(&self, prec: usize) -> Interval {
        match self {
            ExtendedBound::NegInfinity => Interval::new(bf::inf_neg(), bf::inf_neg(), prec),
            ExtendedBound::Value(v) => v.clone(),
        }
    }

    /// Orders by lower endpoint.
    pub fn cmp_lower(&self, other: &ExtendedBound) -> Ordering {
        bf::cmp(&self.lower(), &other.lower())
    }

    pub fn min(&self, other: &ExtendedBound) -> ExtendedBound {
        match (self, other) {
            (ExtendedBound::NegInfinity, _) | (_, ExtendedBound::NegInfinity) => {
                ExtendedBound::NegInfinity
            }
            (ExtendedBound::Value(a), ExtendedBound::Value(b)) => ExtendedBound::Value(a.min(b)),
        }
    }

    /// Decimal rendering; the symbol prints as `-inf`.
    pub fn to_decimal_pair(&self) -> (String, String) {
        match self {
            ExtendedBound::NegInfinity => ("-inf".to_string(), "-inf".to_string()),
            ExtendedBound::Value(v) => v.to_decimal_pair(),
        }
    }
}

/// Key wrapper giving a total order on lower endpoints.
#[derive(Clone, Debug)]
pub struct OrdBound(pub BigFloat);

impl PartialEq for OrdBound {
    fn eq(&self, o: &Self) -> bool {
        bf::cmp(&self.0, &o.0) == Ordering::Equal
    }
}
impl Eq for OrdBound {}
impl PartialOrd for OrdBound {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for OrdBound {
    fn cmp(&self, o: &Self) -> Ordering {
        bf::cmp(&self.0, &o.0)
    }
}

/// Minimum number of correct bits such an enclosure delivers around its
/// midpoint, used in diagnostics.
pub fn relative_bits(x: &Interval) -> f64 {
    let w = x.width_f64();
    let m = x.mag_f64().max(f64::MIN_POSITIVE);
    if w == 0.0 {
        return x.prec() as f64;
    }
    -(w / m).log2()
}
