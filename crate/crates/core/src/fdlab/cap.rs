use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectrum::{complete_multiplet, DomainDescriptor, ProblemKind, Spectrum, SpectrumSource};

use super::dense::Tridiagonal;

/// Geodesic ball of radius `aperture` on the unit sphere, discretised with
/// `points` staggered radial nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapDomain<T> {
    aperture: T,
    points: usize,
}

impl<T: Real> CapDomain<T> {
    pub fn new(aperture: T, points: usize) -> Result<Self> {
        if !(aperture > T::zero() && aperture < T::PI()) {
            return Err(Error::InvalidArgument(format!("cap aperture must lie in (0, π), got {aperture}")));
        }
        if points < 4 {
            return Err(Error::InvalidArgument(format!("cap needs at least 4 grid points, got {points}")));
        }
        Ok(CapDomain { aperture, points })
    }

    pub fn aperture(&self) -> T {
        self.aperture
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn descriptor(&self) -> DomainDescriptor {
        DomainDescriptor::Cap {
            aperture: self.aperture.as_f64(),
        }
    }

    /// Symmetrised three-point matrix of `−(sin θ f′)′ + (m²/sin θ) f = λ sin θ f`
    /// on nodes `θᵢ = (i − ½)h`. Dirichlet puts the zero ghost at `θ = δ`;
    /// Neumann puts the zero-flux face there.
    pub fn radial_matrix(&self, kind: ProblemKind, m: u32) -> Result<Tridiagonal<T>> {
        let n = self.points;
        let half = T::lit(0.5);
        let h = match kind {
            ProblemKind::Dirichlet => self.aperture / (T::from_count(n) + half),
            ProblemKind::Neumann => self.aperture / T::from_count(n),
            other => return Err(Error::InvalidArgument(format!("no {other} problem on a cap"))),
        };
        let h2 = h * h;
        let theta = |i: usize| (T::from_count(i) - half) * h;
        // flux coefficient at the face between node i and i + 1
        let face = |i: usize| (T::from_count(i) * h).sin();
        let m2 = T::from_count(m as usize * m as usize);
        let w: Vec<T> = (1..=n).map(|i| theta(i).sin()).collect();
        let mut d = Vec::with_capacity(n);
        let mut e = Vec::with_capacity(n - 1);
        for i in 1..=n {
            let right = if i < n || kind == ProblemKind::Dirichlet { face(i) } else { T::zero() };
            let a = (face(i - 1) + right) / h2 + m2 / w[i - 1];
            d.push(a / w[i - 1]);
            if i < n {
                e.push(-face(i) / h2 / (w[i - 1] * w[i]).sqrt());
            }
        }
        Tridiagonal::new(d, e)
    }
}

/// The `count` smallest Dirichlet or Neumann eigenvalues of the cap, angular
/// orders `m ≥ 1` counted twice.
pub fn cap_spectrum<T: Real>(cap: &CapDomain<T>, kind: ProblemKind, count: usize) -> Result<Spectrum<T>> {
    if count == 0 {
        return Err(Error::InvalidArgument("eigenvalue count must be ≥ 1".into()));
    }
    let mut values = cap.radial_matrix(kind, 0)?.eigenvalues_in(0, count);
    for m in 1u32.. {
        let tau = values[count.min(values.len()) - 1];
        let tri = cap.radial_matrix(kind, m)?;
        // Admit ties of the current threshold as well.
        let below = tri.count_below(tau + T::lit(1e-10) * tau.abs().max(T::one()));
        if below == 0 {
            break;
        }
        for v in tri.eigenvalues_in(0, below) {
            values.push(v);
            values.push(v);
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    }
    let keep = complete_multiplet(&values, count, T::lit(1e-10));
    values.truncate(keep);
    let n = values.len();
    Spectrum::new(kind, cap.descriptor(), values, SpectrumSource::Cap { points: cap.points }, n)
}
