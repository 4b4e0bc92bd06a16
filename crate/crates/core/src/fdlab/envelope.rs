use crate::error::{Error, Result};
use crate::scalar::Real;

use super::operator::SparseSymOperator;

/// Cholesky factor `L` of a sparse symmetric positive definite matrix,
/// stored row by row over each row's envelope (first nonzero to diagonal).
#[derive(Debug, Clone)]
pub struct EnvelopeCholesky<T> {
    first: Vec<usize>,
    start: Vec<usize>,
    data: Vec<T>,
}

impl<T: Real> EnvelopeCholesky<T> {
    pub fn factor(a: &SparseSymOperator<T>) -> Result<Self> {
        let n = a.dim();
        let first: Vec<usize> = (0..n).map(|i| a.row(i).0.first().copied().unwrap_or(i).min(i)).collect();
        let mut start = Vec::with_capacity(n + 1);
        start.push(0);
        for i in 0..n {
            start.push(start[i] + i - first[i] + 1);
        }
        let data = vec![T::zero(); start[n]];
        let mut f = EnvelopeCholesky { first, start, data };
        for i in 0..n {
            let (cols, vals) = a.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                if j <= i {
                    let at = f.at(i, j);
                    f.data[at] = v;
                }
            }
            let fi = f.first[i];
            let aii = a.get(i, i).abs();
            for j in fi..=i {
                let lo = fi.max(f.first[j]);
                let (ri, rj) = (f.at(i, lo), f.at(j, lo));
                let mut s = f.data[f.at(i, j)];
                for k in 0..j - lo {
                    s -= f.data[ri + k] * f.data[rj + k];
                }
                if j < i {
                    let d = f.data[f.at(j, j)];
                    let at = f.at(i, j);
                    f.data[at] = s / d;
                } else {
                    if !(s > T::lit(16.0) * T::epsilon() * aii) || !s.is_finite() {
                        return Err(Error::NotPositiveDefinite {
                            row: i,
                            pivot: s.as_f64(),
                        });
                    }
                    let at = f.at(i, i);
                    f.data[at] = s.sqrt();
                }
            }
        }
        Ok(f)
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        self.start[i] + j - self.first[i]
    }

    pub fn dim(&self) -> usize {
        self.first.len()
    }

    /// Stored entries of `L`.
    pub fn envelope_size(&self) -> usize {
        self.data.len()
    }

    /// Solves `L Lᵀ x = b` in place.
    pub fn solve_in_place(&self, x: &mut [T]) {
        let n = self.dim();
        for i in 0..n {
            let fi = self.first[i];
            let row = &self.data[self.start[i]..self.start[i + 1]];
            let mut s = x[i];
            for (k, &l) in row[..i - fi].iter().enumerate() {
                s -= l * x[fi + k];
            }
            x[i] = s / row[i - fi];
        }
        for i in (0..n).rev() {
            let fi = self.first[i];
            let row = &self.data[self.start[i]..self.start[i + 1]];
            x[i] /= row[i - fi];
            let xi = x[i];
            for (k, &l) in row[..i - fi].iter().enumerate() {
                x[fi + k] -= l * xi;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdlab::grid::GridDomain;
    use crate::fdlab::operator::{assemble_bilaplacian_clamped, assemble_laplacian, LaplaceBc};

    #[test]
    fn solves_grid_systems() {
        let g = GridDomain::lshape(1.0, 1.0, 0.5, 1.0 / 16.0).unwrap();
        for a in [assemble_laplacian(&g, LaplaceBc::Dirichlet), assemble_bilaplacian_clamped(&g)] {
            let f = EnvelopeCholesky::factor(&a).unwrap();
            let x: Vec<f64> = (0..a.dim()).map(|i| ((i * 37) % 11) as f64 - 5.0).collect();
            let mut b = a.apply(&x);
            f.solve_in_place(&mut b);
            let err = x.iter().zip(&b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
            assert!(err < 1e-8, "solve error {err}");
        }
    }

    #[test]
    fn rejects_singular_neumann() {
        let g = GridDomain::rectangle(1.0, 1.0, 0.125).unwrap();
        let a = assemble_laplacian::<f64>(&g, LaplaceBc::Neumann);
        assert!(matches!(
            EnvelopeCholesky::factor(&a),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn envelope_is_banded_for_row_ordering() {
        let g = GridDomain::<f64>::rectangle(1.0, 1.0, 1.0 / 20.0).unwrap();
        let f = EnvelopeCholesky::factor(&assemble_bilaplacian_clamped(&g)).unwrap();
        // 19 unknowns per row, reach two rows back
        assert!(f.envelope_size() <= g.unknowns() * (2 * 19 + 1));
    }
}
