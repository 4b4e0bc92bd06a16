use crate::error::{Error, Result};
use crate::scalar::{Real, Sign};

/// Default bracket width for characteristic-equation roots.
pub const ROOT_TOL: f64 = 1e-13;

const MAX_BISECTIONS: usize = 400;

/// An interval known to contain a sign change of some continuous function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket<T> {
    lo: T,
    hi: T,
    f_lo_sign: Sign,
    f_hi_sign: Sign,
}

impl<T: Real> RootBracket<T> {
    /// Evaluates `f` at both ends and checks for a sign change.
    pub fn new<F: Fn(T) -> T>(f: &F, lo: T, hi: T) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::InvalidArgument(format!(
                "bracket requires lo < hi, got [{lo}, {hi}]"
            )));
        }
        let (f_lo, f_hi) = (f(lo), f(hi));
        if f_lo.is_nan() || f_hi.is_nan() {
            return Err(Error::InvalidArgument(format!(
                "function is NaN on bracket [{lo}, {hi}]"
            )));
        }
        let (f_lo_sign, f_hi_sign) = (Sign::of(f_lo), Sign::of(f_hi));
        if f_lo_sign == f_hi_sign {
            return Err(Error::InvalidBracket {
                lo: lo.as_f64(),
                hi: hi.as_f64(),
            });
        }
        Ok(RootBracket {
            lo,
            hi,
            f_lo_sign,
            f_hi_sign,
        })
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn f_lo_sign(&self) -> Sign {
        self.f_lo_sign
    }

    pub fn f_hi_sign(&self) -> Sign {
        self.f_hi_sign
    }
}

/// Bisection on a validated bracket until its width is at most `tol` (or no
/// representable midpoint remains). Fully deterministic.
pub fn find_root<T: Real, F: Fn(T) -> T>(f: F, bracket: RootBracket<T>, tol: T) -> T {
    if bracket.f_lo_sign == Sign::Zero {
        return bracket.lo;
    }
    if bracket.f_hi_sign == Sign::Zero {
        return bracket.hi;
    }
    let two = T::lit(2.0);
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let lo_sign = bracket.f_lo_sign;
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + (hi - lo) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        match Sign::of(f(mid)) {
            Sign::Zero => return mid,
            s if s == lo_sign => lo = mid,
            _ => hi = mid,
        }
    }
    lo + (hi - lo) / two
}

/// Validates `[lo, hi]` and bisects it.
pub fn bracket_root<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, tol: T) -> Result<T> {
    let bracket = RootBracket::new(&f, lo, hi)?;
    Ok(find_root(f, bracket, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn linear_root() {
        let r = bracket_root(|x: f64| x - 1.0, 0.0, 2.0, 1e-12).unwrap();
        assert_eq!(r, 1.0);
    }

    #[test]
    fn tan_equation_without_poles() {
        let f = |y: f64| y.sin() - y * y.cos();
        let r = bracket_root(f, PI, 1.5 * PI, 1e-13).unwrap();
        assert!((r - 4.493409457909064).abs() < 1e-11, "{r}");
    }

    #[test]
    fn same_sign_rejected() {
        let err = bracket_root(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-10).unwrap_err();
        assert!(matches!(err, Error::InvalidBracket { .. }));
        assert!(RootBracket::new(&|x: f64| x, 1.0, 1.0).is_err());
    }

    #[test]
    fn endpoint_root_returned_exactly() {
        let r = bracket_root(|x: f64| x, 0.0, 3.0, 1e-12).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn bit_identical_reruns() {
        let f = |x: f64| (x * 1.3).cos() - 0.2 * x;
        let a = bracket_root(f, 0.0, 2.0, 1e-14).unwrap();
        let b = bracket_root(f, 0.0, 2.0, 1e-14).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn works_in_single_precision() {
        let r = bracket_root(|x: f32| x * x - 2.0, 0.0f32, 2.0, 1e-6).unwrap();
        assert!((r - std::f32::consts::SQRT_2).abs() < 1e-6);
    }
}
