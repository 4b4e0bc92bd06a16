use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval1d::tan_root;
use crate::scalar::Real;
use crate::spectrum::{complete_multiplet, DomainDescriptor, ProblemKind, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectDomain<T> {
    a: T,
    b: T,
}

impl<T: Real> RectDomain<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if !(a > T::zero() && b > T::zero()) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "rectangle sides must be positive, got {a} × {b}"
            )));
        }
        Ok(RectDomain { a, b })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn area(&self) -> T {
        self.a * self.b
    }

    pub fn perimeter(&self) -> T {
        T::lit(2.0) * (self.a + self.b)
    }

    pub fn descriptor(&self) -> DomainDescriptor {
        DomainDescriptor::Rectangle {
            a: self.a.as_f64(),
            b: self.b.as_f64(),
        }
    }

    /// `π²(l²/a² + m²/b²)`; every routine evaluates the lattice value through here
    /// so that ties and threshold comparisons agree bit for bit.
    #[inline]
    pub fn mode_value(&self, l: usize, m: usize) -> T {
        let pi = T::PI();
        let (lf, mf) = (T::from_count(l), T::from_count(m));
        pi * pi * (lf * lf / (self.a * self.a) + mf * mf / (self.b * self.b))
    }
}

fn first_index(kind: ProblemKind) -> Result<usize> {
    match kind {
        ProblemKind::Dirichlet => Ok(1),
        ProblemKind::Neumann => Ok(0),
        other => Err(Error::InvalidArgument(format!(
            "no closed-form {other} spectrum on a rectangle"
        ))),
    }
}

/// Largest `m ≥ m0 − 1` with `value(l, m) ≤ τ`, found from a floating estimate
/// and corrected against the exact comparison.
fn last_m_within<T: Real>(rect: &RectDomain<T>, l: usize, tau: T) -> Option<usize> {
    let pi = T::PI();
    let lf = T::from_count(l);
    let rest = tau / (pi * pi) - lf * lf / (rect.a * rect.a);
    let mut m = if rest > T::zero() {
        (rect.b * rest.sqrt()).floor().to_usize().unwrap_or(0)
    } else {
        0
    };
    while rect.mode_value(l, m + 1) <= tau {
        m += 1;
    }
    loop {
        if rect.mode_value(l, m) <= tau {
            return Some(m);
        }
        if m == 0 {
            return None;
        }
        m -= 1;
    }
}

/// Exact `#{(l, m) : π²(l²/a² + m²/b²) ≤ τ}` over the index range of `kind`.
pub fn rect_count<T: Real>(rect: &RectDomain<T>, kind: ProblemKind, tau: T) -> Result<usize> {
    let start = first_index(kind)?;
    let mut count = 0usize;
    let mut l = start;
    while rect.mode_value(l, start) <= tau {
        if let Some(m) = last_m_within(rect, l, tau) {
            count += m + 1 - start;
        }
        l += 1;
    }
    Ok(count)
}

/// Every lattice eigenvalue `≤ τ`, sorted, with multiplicity.
pub fn rect_values_up_to<T: Real>(rect: &RectDomain<T>, kind: ProblemKind, tau: T) -> Result<Vec<T>> {
    let start = first_index(kind)?;
    let mut values = Vec::new();
    let mut l = start;
    while rect.mode_value(l, start) <= tau {
        if let Some(m_last) = last_m_within(rect, l, tau) {
            for m in start..=m_last {
                values.push(rect.mode_value(l, m));
            }
        }
        l += 1;
    }
    values.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    Ok(values)
}

/// The `count` smallest eigenvalues (plus any tail of the last multiplet).
pub fn rect_spectrum<T: Real>(rect: &RectDomain<T>, kind: ProblemKind, count: usize) -> Result<Spectrum<T>> {
    if count == 0 {
        return Err(Error::InvalidArgument("eigenvalue count must be ≥ 1".into()));
    }
    first_index(kind)?;
    // Grow the threshold from the Weyl estimate until enough modes are enclosed.
    let four_pi = T::lit(4.0) * T::PI();
    let mut tau = (T::from_count(count) + T::lit(4.0)) * four_pi / rect.area()
        + rect.mode_value(1, 1);
    while rect_count(rect, kind, tau)? < count {
        tau *= T::lit(1.5);
    }
    let values = rect_values_up_to(rect, kind, tau)?;
    let keep = complete_multiplet(&values, count, T::lit(1e-12));
    Spectrum::analytic(kind, rect.descriptor(), values[..keep].to_vec())
}

/// Every eigenvalue `≤ τ` and the multiplet just above, so that counting is
/// exact up to and including `τ`.
pub fn rect_spectrum_up_to<T: Real>(rect: &RectDomain<T>, kind: ProblemKind, tau: T) -> Result<Spectrum<T>> {
    let below = rect_count(rect, kind, tau)?;
    rect_spectrum(rect, kind, below + 1)
}

/// Exact lattice count together with its Weyl term `τ·ab/(4π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeCount {
    pub tau: f64,
    pub count: usize,
    pub weyl_term: f64,
    /// `count − weyl_term`.
    pub remainder: f64,
}

impl LatticeCount {
    fn new(tau: f64, count: usize, weyl_term: f64) -> Self {
        LatticeCount {
            tau,
            count,
            weyl_term,
            remainder: count as f64 - weyl_term,
        }
    }
}

pub fn rect_lattice_count<T: Real>(rect: &RectDomain<T>, kind: ProblemKind, tau: T) -> Result<LatticeCount> {
    if tau < T::zero() {
        return Err(Error::InvalidArgument(format!("threshold must be ≥ 0, got {tau}")));
    }
    let count = rect_count(rect, kind, tau)?;
    let weyl = tau * rect.area() / (T::lit(4.0) * T::PI());
    Ok(LatticeCount::new(tau.as_f64(), count, weyl.as_f64()))
}

/// The four candidate buckling families on a rectangle, counted separately.
/// Each family's Weyl share is `τ·ab/(16π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BucklingFamilyCounts {
    /// `(2πl/a)² + (2πm/b)²`.
    pub cosine_cosine: LatticeCount,
    /// `(2πl/a)² + Λ_{2,m}(b)`.
    pub cosine_tan: LatticeCount,
    /// `Λ_{2,l}(a) + (2πm/b)²`.
    pub tan_cosine: LatticeCount,
    /// `Λ_{2,l}(a) + Λ_{2,m}(b)`.
    pub tan_tan: LatticeCount,
    pub total: LatticeCount,
}

/// 1D buckling values of each branch on `[0, length]` not exceeding `tau`.
fn branch_values<T: Real>(length: T, tau: T) -> Result<(Vec<T>, Vec<T>)> {
    let two_pi = T::lit(2.0) * T::PI();
    let mut cosine = Vec::new();
    let mut k = 1usize;
    loop {
        let s = two_pi * T::from_count(k) / length;
        if s * s > tau {
            break;
        }
        cosine.push(s * s);
        k += 1;
    }
    let mut tan = Vec::new();
    let mut k = 1usize;
    loop {
        // y_k > kπ, so the branch is exhausted once (2kπ/L)² exceeds τ.
        let lower = two_pi * T::from_count(k) / length;
        if lower * lower > tau {
            break;
        }
        let y = tan_root::<T>(k)?;
        let s = T::lit(2.0) * y / length;
        if s * s <= tau {
            tan.push(s * s);
        }
        k += 1;
    }
    Ok((cosine, tan))
}

fn pair_count<T: Real>(xs: &[T], ys: &[T], tau: T) -> usize {
    // Both lists ascend; count pairs with x + y ≤ τ.
    let mut count = 0;
    let mut j = ys.len();
    for &x in xs {
        while j > 0 && x + ys[j - 1] > tau {
            j -= 1;
        }
        count += j;
    }
    count
}

/// Counts, below `τ`, the sums of 1D buckling values that a separable product
/// ansatz would assign to the rectangle.
///
/// These products do not solve the plate equation (see
/// [`buckling_product_residual`]), so this is not a count of rectangle
/// buckling eigenvalues; use the finite-difference spectrum for that.
pub fn paper_buckling_family_count<T: Real>(rect: &RectDomain<T>, tau: T) -> Result<BucklingFamilyCounts> {
    if tau < T::zero() {
        return Err(Error::InvalidArgument(format!("threshold must be ≥ 0, got {tau}")));
    }
    let (cos_a, tan_a) = branch_values(rect.a, tau)?;
    let (cos_b, tan_b) = branch_values(rect.b, tau)?;
    let share = (tau * rect.area() / (T::lit(16.0) * T::PI())).as_f64();
    let t = tau.as_f64();
    let n1 = pair_count(&cos_a, &cos_b, tau);
    let n2 = pair_count(&cos_a, &tan_b, tau);
    let n3 = pair_count(&tan_a, &cos_b, tau);
    let n4 = pair_count(&tan_a, &tan_b, tau);
    Ok(BucklingFamilyCounts {
        cosine_cosine: LatticeCount::new(t, n1, share),
        cosine_tan: LatticeCount::new(t, n2, share),
        tan_cosine: LatticeCount::new(t, n3, share),
        tan_tan: LatticeCount::new(t, n4, share),
        total: LatticeCount::new(t, n1 + n2 + n3 + n4, 4.0 * share),
    })
}

/// Normalised residual `max|Δ²u + ΛΔu| / max|u|` of the product function
/// `u = (1 − cos αx)(1 − cos βy)`, `α = 2lπ/a`, `β = 2mπ/b`, `Λ = α² + β²`,
/// sampled at the interior points of an `n × n` grid. Derivatives are exact.
pub fn buckling_product_residual<T: Real>(rect: &RectDomain<T>, l: usize, m: usize, n: usize) -> Result<T> {
    if l == 0 || m == 0 || n < 2 {
        return Err(Error::InvalidArgument(
            "mode indices must be ≥ 1 and the grid at least 2 cells".into(),
        ));
    }
    let two_pi = T::lit(2.0) * T::PI();
    let alpha = two_pi * T::from_count(l) / rect.a;
    let beta = two_pi * T::from_count(m) / rect.b;
    let lambda = alpha * alpha + beta * beta;
    let (a2, b2) = (alpha * alpha, beta * beta);
    let mut max_r = T::zero();
    let mut max_u = T::zero();
    for i in 1..n {
        let x = rect.a * T::from_count(i) / T::from_count(n);
        let cx = (alpha * x).cos();
        let (f, f2, f4) = (T::one() - cx, a2 * cx, -a2 * a2 * cx);
        for j in 1..n {
            let y = rect.b * T::from_count(j) / T::from_count(n);
            let cy = (beta * y).cos();
            let (g, g2, g4) = (T::one() - cy, b2 * cy, -b2 * b2 * cy);
            let bilap = f4 * g + T::lit(2.0) * f2 * g2 + f * g4;
            let lap = f2 * g + f * g2;
            max_r = max_r.max((bilap + lambda * lap).abs());
            max_u = max_u.max((f * g).abs());
        }
    }
    Ok(max_r / max_u)
}

/// Same residual for the 1D factor `1 − cos(2lπx/L)` under `u'''' + Λu''`,
/// `Λ = (2lπ/L)²`; this is a genuine eigenfunction, so the result is round-off.
pub fn buckling_factor_residual_1d<T: Real>(length: T, l: usize, n: usize) -> Result<T> {
    if l == 0 || n < 2 || !(length > T::zero()) {
        return Err(Error::InvalidArgument("invalid 1D residual request".into()));
    }
    let alpha = T::lit(2.0) * T::PI() * T::from_count(l) / length;
    let a2 = alpha * alpha;
    let mut max_r = T::zero();
    let mut max_u = T::zero();
    for i in 1..n {
        let x = length * T::from_count(i) / T::from_count(n);
        let c = (alpha * x).cos();
        let r = -a2 * a2 * c + a2 * (a2 * c);
        max_r = max_r.max(r.abs());
        max_u = max_u.max((T::one() - c).abs());
    }
    Ok(max_r / max_u)
}
