use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectrum::{ensure_same_domain, DomainDescriptor, ProblemKind, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PayneEntry {
    pub k: usize,
    /// `λ_{k+1}`.
    pub dirichlet_next: f64,
    /// `Λ_k`.
    pub buckling: f64,
    /// `λ_{k+1} − Λ_k`.
    pub difference: f64,
    /// `λ_{k+1} ≤ Λ_k`.
    pub holds: bool,
}

/// Observations of `λ_{k+1} ≤ Λ_k`; nothing here is asserted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PayneReport {
    pub domain: DomainDescriptor,
    pub entries: Vec<PayneEntry>,
}

impl PayneReport {
    /// First index where the inequality fails.
    pub fn first_violation(&self) -> Option<usize> {
        self.entries.iter().find(|e| !e.holds).map(|e| e.k)
    }
}

pub fn payne_scan<T: Real>(dirichlet: &Spectrum<T>, buckling: &Spectrum<T>, count: usize) -> Result<PayneReport> {
    if dirichlet.kind() != ProblemKind::Dirichlet || buckling.kind() != ProblemKind::Buckling {
        return Err(Error::InvalidArgument("payne scan needs a Dirichlet and a buckling spectrum".into()));
    }
    ensure_same_domain(&[dirichlet, buckling])?;
    if count + 1 > dirichlet.trusted_count() || count > buckling.trusted_count() {
        return Err(Error::InvalidArgument(format!(
            "payne scan over {count} indices needs {} Dirichlet and {count} buckling values",
            count + 1
        )));
    }
    let entries = (1..=count)
        .map(|k| {
            let next = dirichlet.values()[k].as_f64();
            let b = buckling.values()[k - 1].as_f64();
            PayneEntry {
                k,
                dirichlet_next: next,
                buckling: b,
                difference: next - b,
                holds: next <= b,
            }
        })
        .collect();
    Ok(PayneReport {
        domain: dirichlet.domain().clone(),
        entries,
    })
}
