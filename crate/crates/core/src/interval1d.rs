//! Spectra of the four problems on `[0, L]`.
//!
//! * Dirichlet `(kπ/L)²`, Neumann `((k−1)π/L)²`.
//! * Clamped beam: `Γ_k = κ_k²` with `cos(κL) cosh(κL) = 1`.
//! * Buckling: the union of `(2kπ/L)²` (eigenfunction `1 − cos(2kπx/L)`) and
//!   `(2y_k/L)²` where `y_k` is the `k`-th positive root of `tan y = y`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::{bracket_root, ROOT_TOL};
use crate::spectrum::{DomainDescriptor, ProblemKind, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalDomain<T> {
    length: T,
}

impl<T: Real> IntervalDomain<T> {
    pub fn new(length: T) -> Result<Self> {
        if !(length > T::zero()) || !length.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "interval length must be positive, got {length}"
            )));
        }
        Ok(IntervalDomain { length })
    }

    pub fn length(&self) -> T {
        self.length
    }

    pub fn descriptor(&self) -> DomainDescriptor {
        DomainDescriptor::Interval {
            length: self.length.as_f64(),
        }
    }
}

/// The two families of 1D buckling eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `sin(√Λ L/2) = 0`: `Λ = (2kπ/L)²`.
    Cosine,
    /// `tan(√Λ L/2) = √Λ L/2`.
    TanRoot,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BucklingBranch<T> {
    pub branch: Branch,
    pub index: usize,
    pub value: T,
}

/// `k`-th positive root of `tan y = y`, solved as `sin y − y cos y = 0` on
/// `(kπ, kπ + π/2)` where the function has no poles.
pub fn tan_root<T: Real>(k: usize) -> Result<T> {
    if k == 0 {
        return Err(Error::InvalidArgument("root index must be ≥ 1".into()));
    }
    let pi = T::PI();
    let lo = T::from_count(k) * pi;
    let hi = lo + pi / T::lit(2.0);
    bracket_root(|y: T| y.sin() - y * y.cos(), lo, hi, T::lit(ROOT_TOL))
}

/// `k`-th positive root `β` of `cos β cosh β = 1`.
pub fn clamped_beam_root<T: Real>(k: usize) -> Result<T> {
    if k == 0 {
        return Err(Error::InvalidArgument("root index must be ≥ 1".into()));
    }
    let pi = T::PI();
    let mid = (T::from_count(k) + T::lit(0.5)) * pi;
    let odd = k % 2 == 1;
    if mid > T::lit(36.0) {
        // sech β is below machine precision: β = mid ∓ 2e^{−mid} to first order.
        let corr = T::lit(2.0) * (-mid).exp();
        return Ok(if odd { mid + corr } else { mid - corr });
    }
    let f = |b: T| b.cos() - T::one() / b.cosh();
    let (lo, hi) = if odd {
        (mid, mid + pi / T::lit(2.0))
    } else {
        (mid - pi / T::lit(2.0), mid)
    };
    bracket_root(f, lo, hi, T::lit(ROOT_TOL))
}

/// Both buckling branches up to index `count`, merged in ascending order.
pub fn buckling_branches<T: Real>(
    domain: &IntervalDomain<T>,
    count: usize,
) -> Result<Vec<BucklingBranch<T>>> {
    let l = domain.length;
    let two_pi = T::lit(2.0) * T::PI();
    let mut out = Vec::with_capacity(2 * count);
    for k in 1..=count {
        let c = two_pi * T::from_count(k) / l;
        out.push(BucklingBranch {
            branch: Branch::Cosine,
            index: k,
            value: c * c,
        });
        let y = tan_root::<T>(k)?;
        let s = T::lit(2.0) * y / l;
        out.push(BucklingBranch {
            branch: Branch::TanRoot,
            index: k,
            value: s * s,
        });
    }
    out.sort_by(|a, b| a.value.partial_cmp(&b.value).expect("finite"));
    Ok(out)
}

/// The `count` smallest eigenvalues of `kind` on the interval (all simple).
pub fn interval_values<T: Real>(
    domain: &IntervalDomain<T>,
    kind: ProblemKind,
    count: usize,
) -> Result<Vec<T>> {
    let l = domain.length;
    let pi = T::PI();
    let values = match kind {
        ProblemKind::Dirichlet => (1..=count)
            .map(|k| {
                let s = T::from_count(k) * pi / l;
                s * s
            })
            .collect(),
        ProblemKind::Neumann => (0..count)
            .map(|k| {
                let s = T::from_count(k) * pi / l;
                s * s
            })
            .collect(),
        ProblemKind::Clamped => (1..=count)
            .map(|k| clamped_beam_root::<T>(k).map(|b| b * b / (l * l)))
            .collect::<Result<_>>()?,
        ProblemKind::Buckling => {
            // Branches interleave one-for-one, so `count` of each suffices.
            let mut v: Vec<T> = buckling_branches(domain, count)?
                .into_iter()
                .map(|b| b.value)
                .collect();
            v.truncate(count);
            v
        }
    };
    Ok(values)
}

pub fn interval_spectrum<T: Real>(
    domain: &IntervalDomain<T>,
    kind: ProblemKind,
    count: usize,
) -> Result<Spectrum<T>> {
    if count == 0 {
        return Err(Error::InvalidArgument("eigenvalue count must be ≥ 1".into()));
    }
    let values = interval_values(domain, kind, count)?;
    Spectrum::analytic(kind, domain.descriptor(), values)
}

/// `Λ_2` against `λ_3` on `[0, L]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PayneCheck1d {
    pub length: f64,
    pub buckling_2: f64,
    pub dirichlet_3: f64,
    /// `Λ_2 < λ_3`, i.e. `λ_{k+1} ≤ Λ_k` fails at `k = 2`.
    pub counterexample: bool,
}

pub fn payne_check_1d<T: Real>(domain: &IntervalDomain<T>) -> Result<PayneCheck1d> {
    let b = interval_values(domain, ProblemKind::Buckling, 2)?[1];
    let d = interval_values(domain, ProblemKind::Dirichlet, 3)?[2];
    Ok(PayneCheck1d {
        length: domain.length.as_f64(),
        buckling_2: b.as_f64(),
        dirichlet_3: d.as_f64(),
        counterexample: b < d,
    })
}
