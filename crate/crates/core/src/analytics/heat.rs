use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectrum::{ProblemKind, Spectrum};

use super::weyl::unit_ball_volume;

/// Largest admissible estimate of the omitted part `Σ_{e > E} e^{−te}`.
pub const HEAT_TAIL_LIMIT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeatTraceEntry {
    pub t: f64,
    /// `(4πt)^{n/2} Σ e^{−t e_k}`.
    pub scaled_trace: f64,
    /// `vol(Ω) ± ¼√(4πt)·vol(∂Ω)`.
    pub two_term: f64,
    /// `|scaled_trace − vol| / vol`.
    pub deviation_leading: f64,
    /// `|scaled_trace − two_term| / |two_term|`.
    pub deviation_two_term: f64,
    /// Estimated omitted tail of the unscaled sum.
    pub tail: f64,
    /// Share of the sum carried by the first eigenvalue; above one half the
    /// small-`t` expansion does not apply.
    pub first_term_share: f64,
    pub asymptotic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatTraceReport {
    pub kind: ProblemKind,
    pub n: u32,
    pub volume: f64,
    pub boundary: f64,
    pub entries: Vec<HeatTraceEntry>,
}

/// Compares the heat trace of an exact Dirichlet or Neumann spectrum with its
/// two-term small-time expansion.
///
/// The tail past the largest value `E` is estimated from the Weyl density,
/// `c (n/2) E^{n/2−1} e^{−tE} / t` with a factor 2 in reserve.
pub fn heat_trace_check<T: Real>(spectrum: &Spectrum<T>, volume: f64, boundary: f64, ts: &[f64]) -> Result<HeatTraceReport> {
    let sign = match spectrum.kind() {
        ProblemKind::Neumann => 1.0,
        ProblemKind::Dirichlet => -1.0,
        other => return Err(Error::InvalidArgument(format!("no heat-trace expansion for the {other} problem"))),
    };
    let values: Vec<f64> = spectrum.trusted_values().iter().map(|v| v.as_f64()).collect();
    let Some(&top) = values.last() else {
        return Err(Error::InvalidArgument("empty spectrum".into()));
    };
    let n = spectrum.domain().dimension();
    let half = n as f64 / 2.0;
    let density = unit_ball_volume(n) * volume / (2.0 * std::f64::consts::PI).powi(n as i32);
    let mut entries = Vec::with_capacity(ts.len());
    for &t in ts {
        if !(t > 0.0) {
            return Err(Error::InvalidArgument(format!("heat time must be positive, got {t}")));
        }
        let tail = 2.0 * density * half * top.max(1.0).powf(half - 1.0) * (-t * top).exp() / t;
        if !(tail < HEAT_TAIL_LIMIT) {
            return Err(Error::TruncationInsufficient { t, tail });
        }
        let sum: f64 = values.iter().rev().map(|&e| (-t * e).exp()).sum();
        let scale = (4.0 * std::f64::consts::PI * t).powf(half);
        let scaled = scale * sum;
        let two_term = volume + sign * 0.25 * (4.0 * std::f64::consts::PI * t).sqrt() * boundary;
        let share = (-t * values[0]).exp() / sum;
        entries.push(HeatTraceEntry {
            t,
            scaled_trace: scaled,
            two_term,
            deviation_leading: (scaled - volume).abs() / volume,
            deviation_two_term: (scaled - two_term).abs() / two_term.abs(),
            tail,
            first_term_share: share,
            asymptotic: share <= 0.5,
        });
    }
    Ok(HeatTraceReport {
        kind: spectrum.kind(),
        n,
        volume,
        boundary,
        entries,
    })
}
