//! Bessel functions of the first kind `J_m` and modified `I_m`, integer order.
//!
//! `J_m` is evaluated in three regimes:
//!
//! * ascending series while `x² ≤ 4(m + 1)` (terms decrease from the first one,
//!   so there is no cancellation),
//! * Hankel's large-argument expansion for `x ≥ max(60, m²)`,
//! * Miller's backward recurrence normalised by `J_0 + 2 Σ J_2k = 1` in between.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Lower limit of the large-argument regime.
pub const ASYMPTOTIC_MIN_X: f64 = 60.0;

fn check_arg<T: Real>(x: T, what: &str) -> Result<()> {
    if x.is_nan() || x < T::zero() {
        return Err(Error::InvalidArgument(format!(
            "{what} requires a nonnegative argument, got {x}"
        )));
    }
    Ok(())
}

/// `J_m(x)` for `x ≥ 0`.
pub fn bessel_j<T: Real>(m: u32, x: T) -> Result<T> {
    check_arg(x, "bessel_j")?;
    if x.is_infinite() {
        return Ok(T::zero());
    }
    Ok(j_unchecked(m, x))
}

/// `J_m′(x)` from `J_m′ = (J_{m−1} − J_{m+1}) / 2`, `J_0′ = −J_1`.
pub fn bessel_j_prime<T: Real>(m: u32, x: T) -> Result<T> {
    check_arg(x, "bessel_j_prime")?;
    Ok(jp_unchecked(m, x))
}

/// Which evaluation route `bessel_j` takes for `(m, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JRegime {
    Series,
    Recurrence,
    Asymptotic,
}

pub fn j_regime<T: Real>(m: u32, x: T) -> JRegime {
    let mf = T::lit(f64::from(m));
    if x * x <= T::lit(4.0) * (mf + T::one()) {
        JRegime::Series
    } else if x >= T::lit(ASYMPTOTIC_MIN_X) && x >= mf * mf {
        JRegime::Asymptotic
    } else {
        JRegime::Recurrence
    }
}

pub(crate) fn j_unchecked<T: Real>(m: u32, x: T) -> T {
    if x == T::zero() {
        return if m == 0 { T::one() } else { T::zero() };
    }
    match j_regime(m, x) {
        JRegime::Series => j_series(m, x),
        JRegime::Recurrence => j_miller(m, x),
        JRegime::Asymptotic => j_hankel(m, x),
    }
}

pub(crate) fn jp_unchecked<T: Real>(m: u32, x: T) -> T {
    if m == 0 {
        -j_unchecked(1, x)
    } else {
        (j_unchecked(m - 1, x) - j_unchecked(m + 1, x)) / T::lit(2.0)
    }
}

/// `(x/2)^m / m!` built up multiplicatively.
fn leading_term<T: Real>(m: u32, x: T) -> T {
    let half = x / T::lit(2.0);
    let mut t = T::one();
    for k in 1..=m {
        t = t * half / T::lit(f64::from(k));
    }
    t
}

/// Ascending series `Σ (−1)^k (x/2)^{2k+m} / (k! (k+m)!)`.
pub fn j_series<T: Real>(m: u32, x: T) -> T {
    let q = -(x * x) / T::lit(4.0);
    let mut term = leading_term(m, x);
    let mut sum = term;
    let mf = T::lit(f64::from(m));
    for k in 1..500 {
        let kf = T::from_count(k);
        term = term * q / (kf * (kf + mf));
        sum += term;
        if term.abs() <= T::epsilon() * sum.abs() * T::lit(0.25) {
            break;
        }
    }
    sum
}

/// Miller's algorithm: downward recurrence from an order well above `max(m, x)`.
pub fn j_miller<T: Real>(m: u32, x: T) -> T {
    let xf = x.as_f64();
    let top = (f64::from(m)).max(xf.ceil());
    let mut start = (top + 40.0 + (60.0 * top).sqrt().ceil()) as usize;
    if start % 2 == 1 {
        start += 1;
    }
    let big = T::max_value().sqrt().sqrt();
    let two_over_x = T::lit(2.0) / x;

    let mut j_next = T::zero(); // J_{k+1}
    let mut j_cur = T::min_positive_value().sqrt(); // J_k, arbitrary seed
    let mut norm = T::zero();
    let mut wanted = T::zero();
    let m = m as usize;
    for k in (1..=start).rev() {
        // J_{k-1} = (2k/x) J_k − J_{k+1}
        let j_prev = T::from_count(k) * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        let order = k - 1;
        if order == m {
            wanted = j_cur;
        }
        if order > 0 && order % 2 == 0 {
            norm += j_cur;
        }
        if j_cur.abs() > big {
            j_cur /= big;
            j_next /= big;
            norm /= big;
            wanted /= big;
        }
    }
    norm = T::lit(2.0) * norm + j_cur;
    wanted / norm
}

/// Hankel's expansion `√(2/πx) (P cos χ − Q sin χ)`, `χ = x − (m/2 + 1/4)π`,
/// truncated at the smallest term.
pub fn j_hankel<T: Real>(m: u32, x: T) -> T {
    let mu = T::lit(4.0 * f64::from(m) * f64::from(m));
    let eight_x = T::lit(8.0) * x;
    let mut p = T::one();
    let mut q = T::zero();
    let mut term = T::one();
    let mut last_abs = T::infinity();
    for k in 1..200usize {
        let odd = T::from_count(2 * k - 1);
        term = term * (mu - odd * odd) / (T::from_count(k) * eight_x);
        let a = term.abs();
        if a > last_abs {
            break;
        }
        last_abs = a;
        // a_k enters P (k even) or Q (k odd) with sign (−1)^{⌊k/2⌋}
        let signed = if (k / 2) % 2 == 0 { term } else { -term };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
        if a <= T::epsilon() * T::lit(1e-3) {
            break;
        }
    }
    let pi = T::PI();
    let phase = x - (T::lit(f64::from(m)) / T::lit(2.0) + T::lit(0.25)) * pi;
    (T::lit(2.0) / (pi * x)).sqrt() * (p * phase.cos() - q * phase.sin())
}

/// `I_m(x)` for `x ≥ 0` by the all-positive ascending series. Signals overflow
/// once the result is no longer representable (about `x > 713` in `f64`).
pub fn bessel_i<T: Real>(m: u32, x: T) -> Result<T> {
    check_arg(x, "bessel_i")?;
    if x == T::zero() {
        return Ok(if m == 0 { T::one() } else { T::zero() });
    }
    let q = x * x / T::lit(4.0);
    let mut term = leading_term(m, x);
    let mut sum = term;
    let mf = T::lit(f64::from(m));
    let mut k = 1usize;
    while term > T::epsilon() * sum * T::lit(0.1) {
        let kf = T::from_count(k);
        term = term * q / (kf * (kf + mf));
        sum += term;
        if !sum.is_finite() {
            break;
        }
        k += 1;
    }
    if !sum.is_finite() {
        return Err(Error::Overflow(format!("I_{m}({x}) exceeds the floating-point range")));
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_i(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn first_zero_of_j0_to_four_digits() {
        assert!(bessel_j(0, 2.4048f64).unwrap().abs() < 5e-4);
    }

    #[test]
    fn negative_argument_rejected() {
        assert!(bessel_j(0, -1.0).is_err());
        assert!(bessel_i(2, -0.5).is_err());
        assert!(bessel_j(0, f64::NAN).is_err());
    }

    #[test]
    fn modified_overflow_signalled() {
        assert!(matches!(bessel_i(0, 800.0), Err(Error::Overflow(_))));
        assert!(bessel_i(0, 700.0f64).unwrap().is_finite());
    }

    // Reference values from an independent arbitrary-precision evaluation.
    #[test]
    fn reference_values() {
        let cases = [
            (0, 1.0, 0.7651976865579666),
            (1, 1.0, 0.44005058574493355),
            (0, 10.0, -0.2459357644513483),
            (5, 10.0, -0.23406152818679365),
            (2, 30.0, 0.078_451_246_073_265_35),
            (20, 30.0, 0.0048310199934040645),
            (0, 50.0, 0.055812327669251815),
            (3, 75.0, 0.083_171_231_648_937_94),
        ];
        for (m, x, want) in cases {
            let got: f64 = bessel_j(m, x).unwrap();
            assert!((got - want).abs() < 1e-12, "J_{m}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn regimes_agree_at_switchover() {
        for m in 0..12u32 {
            let xs = (4.0 * (f64::from(m) + 1.0)).sqrt();
            let d = (j_series(m, xs) - j_miller(m, xs)).abs();
            assert!(d < 1e-10, "series/recurrence m={m}: {d}");
        }
        for m in 0..8u32 {
            let xa = ASYMPTOTIC_MIN_X.max(f64::from(m * m));
            let d = (j_hankel(m, xa) - j_miller(m, xa)).abs();
            assert!(d < 1e-10, "recurrence/asymptotic m={m}: {d}");
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        for m in 0..4u32 {
            for &x in &[0.7f64, 3.3, 12.0] {
                let h = 1e-5f64;
                let fd = (bessel_j(m, x + h).unwrap() - bessel_j(m, x - h).unwrap()) / (2.0 * h);
                assert!((bessel_j_prime(m, x).unwrap() - fd).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn single_precision_evaluates() {
        let v: f32 = bessel_j(0, 1.0f32).unwrap();
        assert!((v - 0.765_197_7).abs() < 1e-5);
        let w: f32 = bessel_i(1, 2.0f32).unwrap();
        assert!((w - 1.590_636_9).abs() < 1e-5);
    }
}
