//! Checks run on computed spectra: counting functions, the eigenvalue and
//! counting chains, Weyl fits, heat traces, domain decomposition, the Payne
//! inequality and the disk/cap sharpness examples.

mod chain;
mod counting;
mod decomposition;
mod heat;
mod payne;
mod sharpness;
mod weyl;

pub use chain::{inequality_chain_check, ChainEntry, ChainReport};
pub use counting::{count_leq, counting_chain_check, counting_function, CountingChainPoint, CountingChainReport, CountingFunction};
pub use decomposition::{decomposition_check, DecompositionEntry, DecompositionReport};
pub use heat::{heat_trace_check, HeatTraceEntry, HeatTraceReport, HEAT_TAIL_LIMIT};
pub use payne::{payne_scan, PayneEntry, PayneReport};
pub use sharpness::{sharpness_report, SharpnessRecord, SharpnessReport};
pub use weyl::{unit_ball_volume, weyl_fit, weyl_ratio_at, weyl_two_term_fit, SecondTerm, WeylFit, WeylWindow, MIN_WINDOW_VALUES};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectrum::{ensure_same_domain, ProblemKind, Spectrum};

/// One spectrum of each problem on a common domain.
#[derive(Debug, Clone, Copy)]
pub struct FourSpectra<'a, T> {
    pub neumann: &'a Spectrum<T>,
    pub dirichlet: &'a Spectrum<T>,
    pub clamped: &'a Spectrum<T>,
    pub buckling: &'a Spectrum<T>,
}

impl<'a, T: Real> FourSpectra<'a, T> {
    /// Picks the four kinds out of `spectra` (any order) and checks they share
    /// one domain.
    pub fn from_slice(spectra: &'a [Spectrum<T>]) -> Result<Self> {
        let pick = |kind: ProblemKind| {
            let mut found = spectra.iter().filter(|s| s.kind() == kind);
            match (found.next(), found.next()) {
                (Some(s), None) => Ok(s),
                (None, _) => Err(Error::InvalidArgument(format!("no {kind} spectrum supplied"))),
                (Some(_), Some(_)) => Err(Error::InvalidArgument(format!("two {kind} spectra supplied"))),
            }
        };
        let four = FourSpectra {
            neumann: pick(ProblemKind::Neumann)?,
            dirichlet: pick(ProblemKind::Dirichlet)?,
            clamped: pick(ProblemKind::Clamped)?,
            buckling: pick(ProblemKind::Buckling)?,
        };
        four.validate()?;
        Ok(four)
    }

    /// In chain order: Neumann, Dirichlet, clamped, buckling.
    pub fn in_order(&self) -> [&'a Spectrum<T>; 4] {
        [self.neumann, self.dirichlet, self.clamped, self.buckling]
    }

    fn validate(&self) -> Result<()> {
        for (s, kind) in self.in_order().iter().zip(ProblemKind::ALL) {
            if s.kind() != kind {
                return Err(Error::InvalidArgument(format!("expected a {kind} spectrum, got {}", s.kind())));
            }
        }
        ensure_same_domain(&self.in_order())
    }
}

#[cfg(test)]
mod tests;
