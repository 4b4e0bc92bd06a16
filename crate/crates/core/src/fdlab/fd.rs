use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectrum::{complete_multiplet, DomainDescriptor, ProblemKind, Spectrum, SpectrumSource};

use super::gevp::{solve_gevp, solve_gevp_deflated, SolverOptions};
use super::grid::GridDomain;
use super::operator::{assemble_bilaplacian_clamped, assemble_laplacian, LaplaceBc, SparseSymOperator};

/// Extra eigenvalues computed past the request so a multiplet at the cut is
/// seen whole.
const LOOKAHEAD: usize = 4;
const TIE: f64 = 1e-8;

/// The `count` smallest eigenvalues of `kind` on the grid domain.
///
/// Clamped values are reported as `Γ`, the square root of the bilaplacian
/// eigenvalue. Only the lowest quarter of the discrete spectrum is trusted.
pub fn fd_spectrum<T: Real>(
    domain: &GridDomain<T>,
    kind: ProblemKind,
    count: usize,
    opts: &SolverOptions,
) -> Result<Spectrum<T>> {
    let n = domain.unknowns();
    let (a, m) = pencil(domain, kind);
    let raw = solve_pencil(&a, m.as_ref(), kind, count, n, opts)?;
    let source = SpectrumSource::Fd { h: domain.h().as_f64() };
    finish(kind, domain.descriptor(), source, raw, count, n)
}

/// Stiffness and mass operators of `kind` (`None` mass means identity).
pub fn pencil<T: Real>(domain: &GridDomain<T>, kind: ProblemKind) -> (SparseSymOperator<T>, Option<SparseSymOperator<T>>) {
    match kind {
        ProblemKind::Neumann => (assemble_laplacian(domain, LaplaceBc::Neumann), None),
        ProblemKind::Dirichlet => (assemble_laplacian(domain, LaplaceBc::Dirichlet), None),
        ProblemKind::Clamped => (assemble_bilaplacian_clamped(domain), None),
        ProblemKind::Buckling => (
            assemble_bilaplacian_clamped(domain),
            Some(assemble_laplacian(domain, LaplaceBc::Dirichlet)),
        ),
    }
}

/// Solves for `count + LOOKAHEAD` values; Neumann runs deflate the constants,
/// clamped values come back as square roots.
pub(crate) fn solve_pencil<T: Real>(
    a: &SparseSymOperator<T>,
    m: Option<&SparseSymOperator<T>>,
    kind: ProblemKind,
    count: usize,
    dim: usize,
    opts: &SolverOptions,
) -> Result<Vec<T>> {
    if count == 0 {
        return Err(Error::InvalidArgument("eigenvalue count must be ≥ 1".into()));
    }
    if count > dim {
        return Err(Error::InvalidArgument(format!("{count} eigenvalues requested from {dim} unknowns")));
    }
    let want = (count + LOOKAHEAD).min(dim);
    let sol = if kind == ProblemKind::Neumann {
        solve_gevp_deflated(a, m, want, &[vec![T::one(); dim]], opts)?
    } else {
        solve_gevp(a, m, want, opts)?
    };
    Ok(match kind {
        ProblemKind::Clamped => sol.eigenvalues.into_iter().map(|v| v.max(T::zero()).sqrt()).collect(),
        _ => sol.eigenvalues,
    })
}

/// Trims to `count` (plus the rest of a multiplet) and sets the trusted range
/// to at most a quarter of the unknowns, never splitting a cluster.
pub(crate) fn finish<T: Real>(
    kind: ProblemKind,
    domain: DomainDescriptor,
    source: SpectrumSource,
    mut values: Vec<T>,
    count: usize,
    dim: usize,
) -> Result<Spectrum<T>> {
    let tie = |a: T, b: T| (b - a).abs() <= T::lit(TIE) * a.abs().max(b.abs()).max(T::one());
    let computed = values.len();
    let keep = complete_multiplet(&values, count, T::lit(TIE));
    let mut trusted = keep.min(dim / 4);
    let cluster_open = if trusted == computed {
        computed < dim
    } else {
        trusted > 0 && tie(values[trusted - 1], values[trusted])
    };
    if cluster_open && trusted > 0 {
        let last = values[trusted - 1];
        while trusted > 0 && tie(values[trusted - 1], last) {
            trusted -= 1;
        }
    }
    values.truncate(keep);
    Spectrum::new(kind, domain, values, source, trusted)
}
