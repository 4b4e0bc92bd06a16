use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::{bessel_i, bracket_root, j_unchecked, BesselZeroTable, ROOT_TOL};
use crate::spectrum::{complete_multiplet, DomainDescriptor, ProblemKind, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskDomain<T> {
    radius: T,
}

impl<T: Real> DiskDomain<T> {
    pub fn new(radius: T) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "disk radius must be positive, got {radius}"
            )));
        }
        Ok(DiskDomain { radius })
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn area(&self) -> T {
        T::PI() * self.radius * self.radius
    }

    pub fn perimeter(&self) -> T {
        T::lit(2.0) * T::PI() * self.radius
    }

    pub fn descriptor(&self) -> DomainDescriptor {
        DomainDescriptor::Disk {
            radius: self.radius.as_f64(),
        }
    }
}

/// `J_m(k) I_{m+1}(k) + I_m(k) J_{m+1}(k)`; its positive roots give the
/// clamped-plate values `Γ = k²` on the unit disk.
pub fn clamped_disk_determinant<T: Real>(m: u32, k: T) -> Result<T> {
    Ok(j_unchecked(m, k) * bessel_i(m + 1, k)? + bessel_i(m, k)? * j_unchecked(m + 1, k))
}

/// The determinant divided by `I_m(k)`: same roots, no exponential growth.
fn clamped_scaled<T: Real>(m: u32, k: T) -> T {
    let im = bessel_i(m, k).unwrap_or_else(|_| T::infinity());
    let im1 = bessel_i(m + 1, k).unwrap_or_else(|_| T::infinity());
    j_unchecked(m, k) * (im1 / im) + j_unchecked(m + 1, k)
}

/// Characteristic roots `x ≤ x_max` on the unit disk with their multiplicity.
fn unit_disk_roots<T: Real>(kind: ProblemKind, x_max: T) -> Result<Vec<(T, usize)>> {
    let table = BesselZeroTable::<T>::covering(x_max)?;
    let mult = |m: u32| if m == 0 { 1 } else { 2 };
    let mut out = Vec::new();
    match kind {
        ProblemKind::Dirichlet => {
            for m in 0..=table.max_order() {
                for &z in table.row(m).iter().take_while(|&&z| z <= x_max) {
                    out.push((z, mult(m)));
                }
            }
        }
        ProblemKind::Buckling => {
            // Λ = (j_{m+1}^(l))² for angular order m.
            for m in 0..table.max_order() {
                for &z in table.row(m + 1).iter().take_while(|&&z| z <= x_max) {
                    out.push((z, mult(m)));
                }
            }
        }
        ProblemKind::Neumann => {
            out.push((T::zero(), 1));
            for m in 0..table.max_order() {
                for z in table.prime_zeros_below(m, x_max)? {
                    out.push((z, mult(m)));
                }
            }
        }
        ProblemKind::Clamped => {
            let tol = T::lit(ROOT_TOL);
            for m in 0..table.max_order() {
                let lower = table.row(m);
                let upper = table.row(m + 1);
                for (&lo, &hi) in lower.iter().zip(upper) {
                    if lo > x_max {
                        break;
                    }
                    let k = bracket_root(|k| clamped_scaled(m, k), lo, hi, tol)?;
                    if k <= x_max {
                        out.push((k, mult(m)));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Every kind maps a unit-disk root `x` to `(x/R)²`; for the clamped plate
/// this is `Γ`, the square root of the bilaplacian eigenvalue `(x/R)⁴`.
fn root_to_value<T: Real>(x: T, radius: T) -> T {
    let s = x / radius;
    s * s
}

/// The `count` smallest eigenvalues on the disk, angular modes `m ≥ 1` twice.
pub fn disk_spectrum<T: Real>(disk: &DiskDomain<T>, kind: ProblemKind, count: usize) -> Result<Spectrum<T>> {
    if count == 0 {
        return Err(Error::InvalidArgument("eigenvalue count must be ≥ 1".into()));
    }
    // N(τ) ≈ τR²/4 on the disk, so the count-th root sits near 2√count.
    let mut x_max = T::lit(2.0) * T::from_count(count).sqrt() + T::lit(4.0);
    loop {
        let roots = unit_disk_roots(kind, x_max)?;
        let total: usize = roots.iter().map(|r| r.1).sum();
        if total >= count {
            let mut values: Vec<T> = roots
                .iter()
                .flat_map(|&(x, mult)| std::iter::repeat_n(root_to_value(x, disk.radius), mult))
                .collect();
            values.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
            let keep = complete_multiplet(&values, count, T::lit(1e-12));
            values.truncate(keep);
            return Spectrum::analytic(kind, disk.descriptor(), values);
        }
        x_max *= T::lit(1.5);
    }
}
