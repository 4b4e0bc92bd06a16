use serde::Serialize;

use crate::error::Result;
use crate::scalar::Real;
use crate::spectrum::{DomainDescriptor, ProblemKind, Spectrum};

use super::FourSpectra;

/// `#{k : e_k ≤ τ}`; thresholds past the trusted range are refused.
pub fn count_leq<T: Real>(spectrum: &Spectrum<T>, tau: T) -> Result<usize> {
    spectrum.count_leq(tau)
}

/// A counting function sampled on a grid of thresholds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountingFunction {
    pub kind: ProblemKind,
    pub domain: DomainDescriptor,
    pub taus: Vec<f64>,
    pub counts: Vec<usize>,
}

pub fn counting_function<T: Real>(spectrum: &Spectrum<T>, taus: &[T]) -> Result<CountingFunction> {
    let counts = taus.iter().map(|&t| spectrum.count_leq(t)).collect::<Result<Vec<_>>>()?;
    Ok(CountingFunction {
        kind: spectrum.kind(),
        domain: spectrum.domain().clone(),
        taus: taus.iter().map(|t| t.as_f64()).collect(),
        counts,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountingChainPoint {
    pub tau: f64,
    /// Neumann, Dirichlet, clamped, buckling.
    pub counts: [usize; 4],
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountingChainReport {
    pub points: Vec<CountingChainPoint>,
    /// Thresholds at which `N_N ≥ N_D ≥ N_P ≥ N_B` fails.
    pub violations: Vec<f64>,
}

impl CountingChainReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `N_N(τ) ≥ N_D(τ) ≥ N_P(τ) ≥ N_B(τ)` at every `τ`.
///
/// The clamped count is taken on `Γ`, the same scale as the other three.
pub fn counting_chain_check<T: Real>(spectra: &FourSpectra<'_, T>, taus: &[T]) -> Result<CountingChainReport> {
    spectra.validate()?;
    let mut points = Vec::with_capacity(taus.len());
    let mut violations = Vec::new();
    for &tau in taus {
        let mut counts = [0usize; 4];
        for (c, s) in counts.iter_mut().zip(spectra.in_order()) {
            *c = s.count_leq(tau)?;
        }
        let holds = counts.windows(2).all(|w| w[0] >= w[1]);
        if !holds {
            violations.push(tau.as_f64());
        }
        points.push(CountingChainPoint {
            tau: tau.as_f64(),
            counts,
            holds,
        });
    }
    Ok(CountingChainReport { points, violations })
}
