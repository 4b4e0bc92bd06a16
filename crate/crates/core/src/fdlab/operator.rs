use crate::error::{Error, Result};
use crate::scalar::Real;

use super::grid::{GridDomain, NEIGHBOURS};

/// Symmetric sparse matrix in compressed-row form, both triangles stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymOperator<T> {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<T>,
}

impl<T: Real> SparseSymOperator<T> {
    /// Builds the operator from upper-triangle entries `(row ≤ col)`;
    /// duplicates are summed.
    pub fn from_upper(dim: usize, entries: &[(usize, usize, T)]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("operator dimension must be ≥ 1".into()));
        }
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); dim];
        for &(r, c, v) in entries {
            if r > c || c >= dim {
                return Err(Error::InvalidArgument(format!(
                    "entry ({r}, {c}) is not in the upper triangle of a {dim}×{dim} operator"
                )));
            }
            rows[r].push((c, v));
            if r != c {
                rows[c].push((r, v));
            }
        }
        Ok(Self::from_rows(rows))
    }

    fn from_rows(mut rows: Vec<Vec<(usize, T)>>) -> Self {
        let dim = rows.len();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for row in rows.iter_mut() {
            row.sort_by_key(|e| e.0);
            let mut last: Option<usize> = None;
            for &(c, v) in row.iter() {
                if last == Some(c) {
                    *vals.last_mut().unwrap() += v;
                } else {
                    cols.push(c);
                    vals.push(v);
                    last = Some(c);
                }
            }
            row_ptr.push(cols.len());
        }
        SparseSymOperator {
            dim,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_rows((0..dim).map(|i| vec![(i, T::one())]).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> (&[usize], &[T]) {
        let (s, e) = (self.row_ptr[i], self.row_ptr[i + 1]);
        (&self.cols[s..e], &self.vals[s..e])
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        let (c, v) = self.row(i);
        c.binary_search(&j).map(|k| v[k]).unwrap_or_else(|_| T::zero())
    }

    /// Upper-triangle entries `(row, col, value)` with `row ≤ col`.
    pub fn entries(&self) -> Vec<(usize, usize, T)> {
        (0..self.dim)
            .flat_map(|i| {
                let (c, v) = self.row(i);
                c.iter()
                    .zip(v)
                    .filter(move |(&j, _)| j >= i)
                    .map(move |(&j, &x)| (i, j, x))
            })
            .collect()
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// `y = A x`, summed in a fixed order.
    pub fn matvec(&self, x: &[T], y: &mut [T]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let (c, v) = self.row(i);
            let mut s = T::zero();
            for (&j, &a) in c.iter().zip(v) {
                s += a * x[j];
            }
            *yi = s;
        }
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.dim];
        self.matvec(x, &mut y);
        y
    }

    /// Largest absolute row sum.
    pub fn norm_inf(&self) -> T {
        (0..self.dim)
            .map(|i| self.row(i).1.iter().map(|v| v.abs()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    /// Entry-level check `A[i][j] == A[j][i]`.
    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            let (c, v) = self.row(i);
            c.iter().zip(v).all(|(&j, &x)| self.get(j, i) == x)
        })
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<T> {
        let n = self.dim;
        let mut d = vec![T::zero(); n * n];
        for i in 0..n {
            let (c, v) = self.row(i);
            for (&j, &x) in c.iter().zip(v) {
                d[i * n + j] = x;
            }
        }
        d
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, s: T, other: &SparseSymOperator<T>) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::InvalidArgument(format!(
                "dimension mismatch {} vs {}",
                self.dim, other.dim
            )));
        }
        let rows = (0..self.dim)
            .map(|i| {
                let (c, v) = self.row(i);
                let (oc, ov) = other.row(i);
                c.iter()
                    .zip(v)
                    .map(|(&j, &x)| (j, x))
                    .chain(oc.iter().zip(ov).map(|(&j, &x)| (j, s * x)))
                    .collect()
            })
            .collect();
        Ok(Self::from_rows(rows))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplaceBc {
    /// Exterior values are zero.
    Dirichlet,
    /// Finite-volume form: missing neighbours contribute nothing.
    Neumann,
}

/// Five-point `−Δ` over `h²`.
pub fn assemble_laplacian<T: Real>(domain: &GridDomain<T>, bc: LaplaceBc) -> SparseSymOperator<T> {
    let s = T::one() / (domain.h() * domain.h());
    let rows = domain
        .nodes()
        .iter()
        .enumerate()
        .map(|(p, &(i, j))| {
            let mut row = Vec::with_capacity(5);
            let mut present = 0usize;
            for (di, dj) in NEIGHBOURS {
                if let Some(q) = domain.index_of(i + di, j + dj) {
                    row.push((q, -s));
                    present += 1;
                }
            }
            let diag = match bc {
                LaplaceBc::Dirichlet => 4,
                LaplaceBc::Neumann => present,
            };
            row.push((p, T::from_count(diag) * s));
            row
        })
        .collect();
    SparseSymOperator::from_rows(rows)
}

/// Thirteen-point `Δ²` over `h⁴` with clamped conditions: exterior nodes carry
/// zero, and a ghost two steps out behind an exterior axial neighbour mirrors
/// the node itself, which adds one to the diagonal per exterior axial neighbour.
pub fn assemble_bilaplacian_clamped<T: Real>(domain: &GridDomain<T>) -> SparseSymOperator<T> {
    let h2 = domain.h() * domain.h();
    let s = T::one() / (h2 * h2);
    const STENCIL: [((i64, i64), f64); 12] = [
        ((1, 0), -8.0),
        ((-1, 0), -8.0),
        ((0, 1), -8.0),
        ((0, -1), -8.0),
        ((2, 0), 1.0),
        ((-2, 0), 1.0),
        ((0, 2), 1.0),
        ((0, -2), 1.0),
        ((1, 1), 2.0),
        ((1, -1), 2.0),
        ((-1, 1), 2.0),
        ((-1, -1), 2.0),
    ];
    let rows = domain
        .nodes()
        .iter()
        .enumerate()
        .map(|(p, &(i, j))| {
            let mut row = Vec::with_capacity(13);
            for ((di, dj), w) in STENCIL {
                if let Some(q) = domain.index_of(i + di, j + dj) {
                    row.push((q, T::lit(w) * s));
                }
            }
            let exterior = NEIGHBOURS
                .iter()
                .filter(|&&(di, dj)| !domain.contains(i + di, j + dj))
                .count();
            row.push((p, T::from_count(20 + exterior) * s));
            row
        })
        .collect();
    SparseSymOperator::from_rows(rows)
}
