use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectrum::{DomainDescriptor, ProblemKind, Spectrum};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessRecord {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs > rhs`.
    pub holds: bool,
    /// False for observations (caps narrower than a hemisphere).
    pub asserted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub records: Vec<SharpnessRecord>,
}

impl SharpnessReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.holds || !r.asserted)
    }
}

fn value<T: Real>(s: &Spectrum<T>, kind: ProblemKind, k: usize) -> Result<f64> {
    if s.kind() != kind {
        return Err(Error::InvalidArgument(format!("expected a {kind} spectrum, got {}", s.kind())));
    }
    match s.trusted_values().get(k - 1) {
        Some(v) => Ok(v.as_f64()),
        None => Err(Error::InvalidArgument(format!("{kind} spectrum has no trusted value {k}"))),
    }
}

fn record(label: String, lhs: f64, rhs: f64, asserted: bool) -> SharpnessRecord {
    SharpnessRecord {
        label,
        lhs,
        rhs,
        holds: lhs > rhs,
        asserted,
    }
}

/// Disk: `λ₂ > Γ₁` and `Γ₂ > Λ₁`. Each cap, given as (Dirichlet, Neumann):
/// `μ₂ > λ₁`, asserted only for apertures beyond `π/2`.
pub fn sharpness_report<T: Real>(
    dirichlet: &Spectrum<T>,
    clamped: &Spectrum<T>,
    buckling: &Spectrum<T>,
    caps: &[(&Spectrum<T>, &Spectrum<T>)],
) -> Result<SharpnessReport> {
    crate::spectrum::ensure_same_domain(&[dirichlet, clamped, buckling])?;
    if !matches!(dirichlet.domain(), DomainDescriptor::Disk { .. }) {
        return Err(Error::InvalidArgument("disk sharpness needs disk spectra".into()));
    }
    let mut records = vec![
        record(
            "disk lambda_2 > gamma_1".into(),
            value(dirichlet, ProblemKind::Dirichlet, 2)?,
            value(clamped, ProblemKind::Clamped, 1)?,
            true,
        ),
        record(
            "disk gamma_2 > buckling_1".into(),
            value(clamped, ProblemKind::Clamped, 2)?,
            value(buckling, ProblemKind::Buckling, 1)?,
            true,
        ),
    ];
    for (d, nm) in caps {
        crate::spectrum::ensure_same_domain(&[*d, *nm])?;
        let DomainDescriptor::Cap { aperture } = *d.domain() else {
            return Err(Error::InvalidArgument("cap sharpness needs cap spectra".into()));
        };
        records.push(record(
            format!("cap {aperture:.6} mu_2 > lambda_1"),
            value(nm, ProblemKind::Neumann, 2)?,
            value(d, ProblemKind::Dirichlet, 1)?,
            aperture > std::f64::consts::FRAC_PI_2,
        ));
    }
    Ok(SharpnessReport { records })
}
