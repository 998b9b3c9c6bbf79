//! Thin helpers around the arbitrary precision float backend.

use astro_float::{BigFloat, Consts, RoundingMode, Sign, INF_NEG, INF_POS};
use core::cmp::Ordering;

pub use astro_float::RoundingMode as Rm;

#[cfg(feature = "std")]
std::thread_local! {
    static CONSTS: core::cell::RefCell<Consts> =
        core::cell::RefCell::new(Consts::new().expect("constant cache"));
}

/// Runs `f` with a constants cache.
pub(crate) fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    #[cfg(feature = "std")]
    {
        CONSTS.with(|c| f(&mut c.borrow_mut()))
    }
    #[cfg(not(feature = "std"))]
    {
        let mut c = Consts::new().expect("constant cache");
        f(&mut c)
    }
}

pub(crate) fn inf_pos() -> BigFloat {
    INF_POS
}

pub(crate) fn inf_neg() -> BigFloat {
    INF_NEG
}

pub(crate) fn zero(p: usize) -> BigFloat {
    BigFloat::from_word(0, p)
}

/// Total order on non-NaN values.
pub(crate) fn cmp(a: &BigFloat, b: &BigFloat) -> Ordering {
    match a.cmp(b) {
        Some(c) if c < 0 => Ordering::Less,
        Some(c) if c > 0 => Ordering::Greater,
        Some(_) => Ordering::Equal,
        None => panic!("NaN reached an interval endpoint"),
    }
}

pub(crate) fn lt(a: &BigFloat, b: &BigFloat) -> bool {
    cmp(a, b) == Ordering::Less
}

pub(crate) fn le(a: &BigFloat, b: &BigFloat) -> bool {
    cmp(a, b) != Ordering::Greater
}

pub(crate) fn min(a: &BigFloat, b: &BigFloat) -> BigFloat {
    if le(a, b) {
        a.clone()
    } else {
        b.clone()
    }
}

pub(crate) fn max(a: &BigFloat, b: &BigFloat) -> BigFloat {
    if le(a, b) {
        b.clone()
    } else {
        a.clone()
    }
}

pub(crate) fn is_neg(a: &BigFloat) -> bool {
    !a.is_zero() && a.is_negative()
}

pub(crate) fn is_pos(a: &BigFloat) -> bool {
    !a.is_zero() && a.is_positive()
}

/// Moves `x` one unit in the last place (relative to `p`) away from zero
/// in direction `rm`. Used to widen results of library transcendentals.
pub(crate) fn nudge(x: &BigFloat, p: usize, rm: RoundingMode) -> BigFloat {
    if x.is_zero() || x.is_inf() {
        return x.clone();
    }
    let e = x.exponent().unwrap_or(0);
    let mut ulp = BigFloat::from_word(1, p);
    ulp.set_exponent(e - p as i32 + 1);
    match rm {
        RoundingMode::Up => x.add(&ulp, p, RoundingMode::Up),
        _ => x.sub(&ulp, p, RoundingMode::Down),
    }
}

/// Nearest double to `x`. Infinities map to infinities.
pub(crate) fn to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    let (words, _, sign, e, _) = x.as_raw_parts().expect("finite value");
    let top = *words.last().unwrap_or(&0) as f64 / 18446744073709551616.0;
    let e = e as i32;
    let mut v = top;
    // powi on f64 is fine for the exponent ranges of interest
    if e > 1000 {
        v *= 2f64.powi(1000) * 2f64.powi(e - 1000);
    } else if e < -1000 {
        v *= 2f64.powi(-1000) * 2f64.powi(e + 1000);
    } else {
        v *= 2f64.powi(e);
    }
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

pub(crate) fn from_f64(v: f64, p: usize) -> BigFloat {
    if v == f64::INFINITY {
        inf_pos()
    } else if v == f64::NEG_INFINITY {
        inf_neg()
    } else {
        BigFloat::from_f64(v, p.max(64))
    }
}
