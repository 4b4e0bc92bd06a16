use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fdlab::{fd_spectrum, GridDomain, SolverOptions};
use crate::scalar::Real;
use crate::spectrum::{DomainDescriptor, ProblemKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecompositionEntry {
    pub k: usize,
    /// `Λ_k` of the whole domain.
    pub whole: f64,
    /// `Λ*_k`, the `k`-th value of the merged part spectra.
    pub merged: f64,
    /// `Λ*_k − Λ_k`.
    pub gap: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub whole: DomainDescriptor,
    pub parts: Vec<DomainDescriptor>,
    pub entries: Vec<DecompositionEntry>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }
}

/// Buckling values of `whole` against the merged buckling values of `parts`.
///
/// Grid domains share the lattice `h·ℤ²`; the parts must use the mesh width
/// of `whole`, lie inside it and be pairwise disjoint. `Λ_k ≤ Λ*_k` is
/// accepted up to the relative solver tolerance.
pub fn decomposition_check<T: Real>(
    whole: &GridDomain<T>,
    parts: &[GridDomain<T>],
    count: usize,
    opts: &SolverOptions,
) -> Result<DecompositionReport> {
    if parts.is_empty() {
        return Err(Error::Partition("no parts given".into()));
    }
    let h = whole.h();
    let mut seen: HashSet<(i64, i64)> = HashSet::new();
    for (p, part) in parts.iter().enumerate() {
        if (part.h() - h).abs() > T::lit(1e-12) * h {
            return Err(Error::Partition(format!("part {p} uses mesh width {}, whole uses {h}", part.h())));
        }
        for &(i, j) in part.nodes() {
            let node = (i, j);
            if !whole.contains(node.0, node.1) {
                return Err(Error::Partition(format!("part {p} leaves the whole domain at node {node:?}")));
            }
            if !seen.insert(node) {
                return Err(Error::Partition(format!("part {p} overlaps another part at node {node:?}")));
            }
        }
    }
    let whole_spec = fd_spectrum(whole, ProblemKind::Buckling, count, opts)?;
    if whole_spec.trusted_count() < count {
        return Err(Error::InvalidArgument(format!(
            "whole domain trusts only {} buckling values",
            whole_spec.trusted_count()
        )));
    }
    let mut merged: Vec<f64> = Vec::new();
    for part in parts {
        let want = count.min(part.unknowns() / 4).max(1);
        let s = fd_spectrum(part, ProblemKind::Buckling, want, opts)?;
        merged.extend(s.trusted_values().iter().map(|v| v.as_f64()));
    }
    merged.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    if merged.len() < count {
        return Err(Error::Partition(format!("parts supply only {} trusted values", merged.len())));
    }
    let slack = opts.tol.max(1e-12);
    let entries = (1..=count)
        .map(|k| {
            let w = whole_spec.values()[k - 1].as_f64();
            let m = merged[k - 1];
            DecompositionEntry {
                k,
                whole: w,
                merged: m,
                gap: m - w,
                holds: w <= m * (1.0 + slack),
            }
        })
        .collect();
    Ok(DecompositionReport {
        whole: whole.descriptor(),
        parts: parts.iter().map(|p| p.descriptor()).collect(),
        entries,
    })
}
