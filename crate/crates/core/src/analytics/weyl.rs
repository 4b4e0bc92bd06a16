use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectrum::{ProblemKind, Spectrum, SpectrumSource};

/// Fewest eigenvalues a fit window may hold.
pub const MIN_WINDOW_VALUES: usize = 10;
const SAMPLES: usize = 400;

/// Threshold interval `[lo, hi]` over which `N(τ)` is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct WeylWindow {
    pub lo: f64,
    pub hi: f64,
}

impl WeylWindow {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo >= 0.0 && hi > lo && hi.is_finite()) {
            return Err(Error::InvalidArgument(format!("bad Weyl window [{lo}, {hi}]")));
        }
        Ok(WeylWindow { lo, hi })
    }

    fn samples(&self) -> impl Iterator<Item = f64> + '_ {
        (0..SAMPLES).map(move |i| self.lo + (self.hi - self.lo) * (i as f64 + 0.5) / SAMPLES as f64)
    }
}

/// Volume of the unit ball in `ℝⁿ`.
pub fn unit_ball_volume(n: u32) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * std::f64::consts::PI / n as f64 * unit_ball_volume(n - 2),
    }
}

/// `(2π)^{−n} ωₙ vol`.
fn leading_coefficient(n: u32, volume: f64) -> f64 {
    unit_ball_volume(n) * volume / (2.0 * std::f64::consts::PI).powi(n as i32)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondTerm {
    pub fitted: f64,
    /// `±¼(2π)^{1−n} ω_{n−1} vol(∂Ω)`, `+` for Neumann and `−` for Dirichlet.
    pub theoretical: f64,
    pub boundary: f64,
    pub sign_ok: bool,
    /// `|fitted − theoretical| / |theoretical|`.
    pub relative_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeylFit {
    pub kind: ProblemKind,
    pub n: u32,
    pub volume: f64,
    pub window: WeylWindow,
    /// Eigenvalues inside the window.
    pub points: usize,
    pub fitted: f64,
    pub theoretical: f64,
    pub ratio: f64,
    pub second: Option<SecondTerm>,
}

/// Sampled `(τ, N(τ))` over the window, after checking it holds enough values.
fn window_data<T: Real>(spectrum: &Spectrum<T>, window: &WeylWindow) -> Result<(usize, Vec<(f64, f64)>)> {
    let lo = T::lit(window.lo);
    let hi = T::lit(window.hi);
    let points = spectrum.count_leq(hi)? - spectrum.values().partition_point(|&v| v < lo);
    if points < MIN_WINDOW_VALUES {
        return Err(Error::InsufficientData {
            points,
            required: MIN_WINDOW_VALUES,
        });
    }
    let data = window
        .samples()
        .map(|t| Ok((t, spectrum.count_leq(T::lit(t))? as f64)))
        .collect::<Result<Vec<_>>>()?;
    Ok((points, data))
}

/// Least-squares `N(τ) ≈ c τ^{n/2}` over the window.
pub fn weyl_fit<T: Real>(spectrum: &Spectrum<T>, n: u32, volume: f64, window: &WeylWindow) -> Result<WeylFit> {
    let (points, data) = window_data(spectrum, window)?;
    let half = n as f64 / 2.0;
    let (num, den) = data.iter().fold((0.0, 0.0), |(p, q), &(t, c)| {
        let x = t.powf(half);
        (p + c * x, q + x * x)
    });
    let fitted = num / den;
    let theoretical = leading_coefficient(n, volume);
    Ok(WeylFit {
        kind: spectrum.kind(),
        n,
        volume,
        window: *window,
        points,
        fitted,
        theoretical,
        ratio: fitted / theoretical,
        second: None,
    })
}

/// `N(τ) / ((2π)^{−n} ωₙ vol τ^{n/2})` at a single threshold.
pub fn weyl_ratio_at<T: Real>(spectrum: &Spectrum<T>, n: u32, volume: f64, tau: T) -> Result<f64> {
    let count = spectrum.count_leq(tau)? as f64;
    Ok(count / (leading_coefficient(n, volume) * tau.as_f64().powf(n as f64 / 2.0)))
}

/// Least-squares `N(τ) ≈ c₀ τ^{n/2} + c₁ τ^{(n−1)/2}` on an exact Dirichlet
/// or Neumann spectrum, with `c₁` compared against the boundary term.
pub fn weyl_two_term_fit<T: Real>(
    spectrum: &Spectrum<T>,
    n: u32,
    volume: f64,
    boundary: f64,
    window: &WeylWindow,
) -> Result<WeylFit> {
    let sign = match spectrum.kind() {
        ProblemKind::Neumann => 1.0,
        ProblemKind::Dirichlet => -1.0,
        other => return Err(Error::InvalidArgument(format!("no boundary term is known for the {other} problem"))),
    };
    if spectrum.source() != SpectrumSource::Analytic {
        return Err(Error::InvalidArgument("two-term fits need an exact spectrum".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be ≥ 1".into()));
    }
    let (points, data) = window_data(spectrum, window)?;
    let (p0, p1) = (n as f64 / 2.0, (n as f64 - 1.0) / 2.0);
    // Normal equations of the 2×2 least-squares problem.
    let (mut s00, mut s01, mut s11, mut r0, mut r1) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(t, c) in &data {
        let (x0, x1) = (t.powf(p0), t.powf(p1));
        s00 += x0 * x0;
        s01 += x0 * x1;
        s11 += x1 * x1;
        r0 += x0 * c;
        r1 += x1 * c;
    }
    let det = s00 * s11 - s01 * s01;
    let c0 = (r0 * s11 - r1 * s01) / det;
    let c1 = (s00 * r1 - s01 * r0) / det;
    let theoretical_c1 = sign * 0.25 * unit_ball_volume(n - 1) * boundary / (2.0 * std::f64::consts::PI).powi(n as i32 - 1);
    let theoretical = leading_coefficient(n, volume);
    Ok(WeylFit {
        kind: spectrum.kind(),
        n,
        volume,
        window: *window,
        points,
        fitted: c0,
        theoretical,
        ratio: c0 / theoretical,
        second: Some(SecondTerm {
            fitted: c1,
            theoretical: theoretical_c1,
            boundary,
            sign_ok: c1 * sign > 0.0,
            relative_error: ((c1 - theoretical_c1) / theoretical_c1).abs(),
        }),
    })
}
