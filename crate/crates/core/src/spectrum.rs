use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// The four boundary-value problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    /// `−Δu = μu`, `∂u/∂ν = 0`.
    Neumann,
    /// `−Δu = λu`, `u = 0`.
    Dirichlet,
    /// `Δ²u = Γ²u`, `u = ∂u/∂ν = 0`; spectra store `Γ`.
    Clamped,
    /// `Δ²u = −ΛΔu`, `u = ∂u/∂ν = 0`.
    Buckling,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 4] = [
        ProblemKind::Neumann,
        ProblemKind::Dirichlet,
        ProblemKind::Clamped,
        ProblemKind::Buckling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Neumann => "neumann",
            ProblemKind::Dirichlet => "dirichlet",
            ProblemKind::Clamped => "clamped",
            ProblemKind::Buckling => "buckling",
        }
    }
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Geometry of a grid-defined domain (before discretisation).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum GridShape {
    /// `[x0, x0+a] × [y0, y0+b]`; the corner must sit on the lattice.
    Rectangle {
        a: f64,
        b: f64,
        #[serde(default)]
        x0: f64,
        #[serde(default)]
        y0: f64,
    },
    Disk { radius: f64 },
    /// `[0,a]×[0,b]` with the top-right corner `[(1−notch)a, a]×[(1−notch)b, b]` removed.
    LShape { a: f64, b: f64, notch: f64 },
    /// Mask read from a file or built by hand; `name` identifies it.
    Mask { name: String },
}

/// Which domain a spectrum belongs to.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum DomainDescriptor {
    Interval { length: f64 },
    Rectangle { a: f64, b: f64 },
    Disk { radius: f64 },
    Cap { aperture: f64 },
    Grid { shape: GridShape, h: f64 },
}

impl DomainDescriptor {
    /// Same continuous domain, ignoring the mesh width of grid descriptors.
    pub fn same_geometry(&self, other: &DomainDescriptor) -> bool {
        match (self, other) {
            (DomainDescriptor::Grid { shape: a, .. }, DomainDescriptor::Grid { shape: b, .. }) => {
                a == b
            }
            _ => self == other,
        }
    }

    /// Euclidean (or Riemannian) dimension of the domain.
    pub fn dimension(&self) -> u32 {
        match self {
            DomainDescriptor::Interval { .. } => 1,
            _ => 2,
        }
    }

    /// Mesh width for grid descriptors.
    pub fn mesh_width(&self) -> Option<f64> {
        match self {
            DomainDescriptor::Grid { h, .. } => Some(*h),
            _ => None,
        }
    }
}

/// How the eigenvalues were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SpectrumSource {
    Analytic,
    Fd { h: f64 },
    Cap { points: usize },
}

impl SpectrumSource {
    pub fn label(&self) -> &'static str {
        match self {
            SpectrumSource::Analytic => "analytic",
            SpectrumSource::Fd { .. } => "fd",
            SpectrumSource::Cap { .. } => "cap",
        }
    }
}

/// Nondecreasing eigenvalues of one problem on one domain, repeated by multiplicity.
///
/// Only the first `trusted_count` values (and any exact ties of the last
/// trusted one) may be used for counting.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    kind: ProblemKind,
    domain: DomainDescriptor,
    values: Vec<T>,
    source: SpectrumSource,
    trusted_count: usize,
}

impl<T: Real> Spectrum<T> {
    pub fn new(
        kind: ProblemKind,
        domain: DomainDescriptor,
        values: Vec<T>,
        source: SpectrumSource,
        trusted_count: usize,
    ) -> Result<Self> {
        if let Some(i) = values.windows(2).position(|w| !(w[0] <= w[1])) {
            return Err(Error::InvalidArgument(format!(
                "spectrum values must be nondecreasing (index {})",
                i + 1
            )));
        }
        if trusted_count > values.len() {
            return Err(Error::InvalidArgument(format!(
                "trusted count {trusted_count} exceeds {} values",
                values.len()
            )));
        }
        Ok(Spectrum {
            kind,
            domain,
            values,
            source,
            trusted_count,
        })
    }

    /// Exact spectrum: every value is trusted.
    pub fn analytic(kind: ProblemKind, domain: DomainDescriptor, values: Vec<T>) -> Result<Self> {
        let n = values.len();
        Self::new(kind, domain, values, SpectrumSource::Analytic, n)
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn domain(&self) -> &DomainDescriptor {
        &self.domain
    }

    pub fn source(&self) -> SpectrumSource {
        self.source
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn trusted_count(&self) -> usize {
        self.trusted_count
    }

    pub fn trusted_values(&self) -> &[T] {
        &self.values[..self.trusted_count]
    }

    /// Largest threshold at which counting is exact.
    pub fn max_trusted_value(&self) -> Option<T> {
        self.trusted_values().last().copied()
    }

    /// `k`-th value, 1-based.
    pub fn get(&self, k: usize) -> Option<T> {
        k.checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }

    /// `#{k : e_k ≤ τ}`, refusing thresholds past the trusted range.
    pub fn count_leq(&self, tau: T) -> Result<usize> {
        match self.max_trusted_value() {
            Some(max) if tau <= max => Ok(self.values.partition_point(|&v| v <= tau)),
            Some(max) => Err(Error::OutOfTrustedRange {
                tau: tau.as_f64(),
                max: max.as_f64(),
            }),
            None => Err(Error::OutOfTrustedRange {
                tau: tau.as_f64(),
                max: f64::NEG_INFINITY,
            }),
        }
    }

    /// Scales every value by `factor` (used for domain rescaling).
    pub fn scaled(&self, factor: T, domain: DomainDescriptor) -> Spectrum<T> {
        Spectrum {
            kind: self.kind,
            domain,
            values: self.values.iter().map(|&v| v * factor).collect(),
            source: self.source,
            trusted_count: self.trusted_count,
        }
    }
}

/// Requires every spectrum to share one domain geometry.
pub fn ensure_same_domain<T: Real>(spectra: &[&Spectrum<T>]) -> Result<()> {
    if let Some((first, rest)) = spectra.split_first() {
        for s in rest {
            if !first.domain().same_geometry(s.domain()) {
                return Err(Error::DomainMismatch(format!(
                    "{:?} vs {:?}",
                    first.domain(),
                    s.domain()
                )));
            }
        }
    }
    Ok(())
}

/// Extends `k` so that a multiplet straddling position `k` is kept whole.
pub(crate) fn complete_multiplet<T: Real>(sorted: &[T], k: usize, rel_tol: T) -> usize {
    if k == 0 || k >= sorted.len() {
        return k.min(sorted.len());
    }
    let last = sorted[k - 1];
    let tol = rel_tol * last.abs().max(T::one());
    let mut end = k;
    while end < sorted.len() && (sorted[end] - last).abs() <= tol {
        end += 1;
    }
    end
}
