//! Finite differences on `[0, L]` with `cells` equal steps: the 1D
//! counterparts of the grid operators.

use crate::error::{Error, Result};
use crate::interval1d::IntervalDomain;
use crate::scalar::Real;
use crate::spectrum::{ProblemKind, Spectrum, SpectrumSource};

use super::fd::{finish, solve_pencil};
use super::gevp::SolverOptions;
use super::operator::SparseSymOperator;

/// Stiffness and mass of `kind`.
///
/// Dirichlet, clamped and buckling use the interior nodes `1..cells`;
/// clamped ends mirror the first interior value into the ghost beyond the
/// boundary. Neumann uses every node with half-weight end cells.
pub fn interval_pencil<T: Real>(
    length: T,
    cells: usize,
    kind: ProblemKind,
) -> Result<(SparseSymOperator<T>, Option<SparseSymOperator<T>>)> {
    if cells < 4 {
        return Err(Error::InvalidArgument(format!("need at least 4 cells, got {cells}")));
    }
    let h = length / T::from_count(cells);
    let s2 = T::one() / (h * h);
    let dirichlet = |n: usize| {
        let mut e = Vec::with_capacity(2 * n);
        for i in 0..n {
            e.push((i, i, T::lit(2.0) * s2));
            if i + 1 < n {
                e.push((i, i + 1, -s2));
            }
        }
        SparseSymOperator::from_upper(n, &e)
    };
    let clamped = |n: usize| {
        let s4 = s2 * s2;
        let mut e = Vec::with_capacity(3 * n);
        for i in 0..n {
            let ghost = if i == 0 || i + 1 == n { 1.0 } else { 0.0 };
            e.push((i, i, T::lit(6.0 + ghost) * s4));
            if i + 1 < n {
                e.push((i, i + 1, T::lit(-4.0) * s4));
            }
            if i + 2 < n {
                e.push((i, i + 2, s4));
            }
        }
        SparseSymOperator::from_upper(n, &e)
    };
    let interior = cells - 1;
    Ok(match kind {
        ProblemKind::Dirichlet => (dirichlet(interior)?, None),
        ProblemKind::Clamped => (clamped(interior)?, None),
        ProblemKind::Buckling => (clamped(interior)?, Some(dirichlet(interior)?)),
        ProblemKind::Neumann => {
            let n = cells + 1;
            let mut a = Vec::with_capacity(2 * n);
            let mut m = Vec::with_capacity(n);
            for i in 0..n {
                let end = i == 0 || i + 1 == n;
                a.push((i, i, if end { s2 } else { T::lit(2.0) * s2 }));
                if i + 1 < n {
                    a.push((i, i + 1, -s2));
                }
                m.push((i, i, if end { T::lit(0.5) } else { T::one() }));
            }
            (SparseSymOperator::from_upper(n, &a)?, Some(SparseSymOperator::from_upper(n, &m)?))
        }
    })
}

pub fn interval_fd_spectrum<T: Real>(
    domain: &IntervalDomain<T>,
    cells: usize,
    kind: ProblemKind,
    count: usize,
    opts: &SolverOptions,
) -> Result<Spectrum<T>> {
    let (a, m) = interval_pencil(domain.length(), cells, kind)?;
    let dim = a.dim();
    let raw = solve_pencil(&a, m.as_ref(), kind, count, dim, opts)?;
    let h = domain.length().as_f64() / cells as f64;
    finish(kind, domain.descriptor(), SpectrumSource::Fd { h }, raw, count, dim)
}
