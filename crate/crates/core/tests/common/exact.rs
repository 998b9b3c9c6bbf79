use super::P;
use horotile_core::cusp_areas::unbiased_areas;
use horotile_core::Interval;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

/// Algorithm run with exact rationals; each value is kept as its square.
pub fn unbiased_exact(a: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = a.len();
    let mut out: Vec<Option<BigRational>> = vec![None; n];
    while out.iter().any(Option::is_none) {
        let mut best: Option<(BigRational, usize)> = None;
        for i in (0..n).filter(|&i| out[i].is_none()) {
            for j in 0..n {
                let t2 = match &out[j] {
                    None => a[i][j].clone(),
                    Some(aj2) => &a[i][j] * &a[i][j] / aj2,
                };
                if best.as_ref().is_none_or(|(b, _)| t2 < *b) {
                    best = Some((t2, i));
                }
            }
        }
        let (t2, i) = best.unwrap();
        out[i] = Some(t2);
    }
    out.into_iter().map(Option::unwrap).collect()
}

pub fn rational_interval(x: &BigRational, prec: usize) -> Interval {
    let n = Interval::from_decimal(&x.numer().to_string(), prec).unwrap();
    let d = Interval::from_decimal(&x.denom().to_string(), prec).unwrap();
    n.div(&d).unwrap()
}

pub fn check_inclusion(exact: &[Vec<i64>], widen: &[Vec<f64>]) -> Result<(), String> {
    let n = exact.len();
    let q: Vec<Vec<BigRational>> =
        exact.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let enclosed: Vec<Vec<Interval>> = (0..n)
        .map(|i| (0..n).map(|j| Interval::from_f64_pair(exact[i][j] as f64 - widen[i][j], exact[i][j] as f64 + widen[i][j], P)).collect())
        .collect();
    let want = unbiased_exact(&q);
    let got = unbiased_areas(&enclosed).map_err(|e| format!("{e:?}"))?;
    for (w, g) in want.iter().zip(&got) {
        let truth = rational_interval(w, 4 * P).sqrt().unwrap();
        if !truth.subset_of(&g.with_prec(4 * P)) {
            return Err(format!("{} not in {:?}", truth.mid_f64(), g.to_f64_bounds()));
        }
    }
    assert!(w_is_positive(&want));
    Ok(())
}

pub fn w_is_positive(v: &[BigRational]) -> bool {
    v.iter().all(|x| *x > BigRational::zero())
}

/// Symmetric positive integer matrix; with `ties` many entries are made to
/// coincide so that the widened intervals cannot order the bumps.
pub fn random_matrix(rng: &mut impl Rng, n: usize, ties: bool) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    let pool = [4i64, 9, 16, 2, 8, 6];
    for i in 0..n {
        for j in i..n {
            let v = if ties { pool[rng.gen_range(0..pool.len())] } else { rng.gen_range(1..60) };
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}
