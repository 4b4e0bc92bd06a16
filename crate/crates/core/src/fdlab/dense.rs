//! Dense symmetric eigenproblems: Householder tridiagonalisation, Sturm
//! bisection for selected eigenvalues, inverse iteration for their vectors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Symmetric tridiagonal matrix: diagonal `d`, off-diagonal `e` (`len = n − 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal<T> {
    pub d: Vec<T>,
    pub e: Vec<T>,
}

impl<T: Real> Tridiagonal<T> {
    pub fn new(d: Vec<T>, e: Vec<T>) -> Result<Self> {
        if d.is_empty() || e.len() + 1 != d.len() {
            return Err(Error::InvalidArgument(format!(
                "tridiagonal needs n ≥ 1 diagonal and n − 1 off-diagonal entries, got {} and {}",
                d.len(),
                e.len()
            )));
        }
        Ok(Tridiagonal { d, e })
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    fn gershgorin(&self) -> (T, T) {
        let n = self.dim();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let r = if i > 0 { self.e[i - 1].abs() } else { T::zero() }
                + if i + 1 < n { self.e[i].abs() } else { T::zero() };
            lo = lo.min(self.d[i] - r);
            hi = hi.max(self.d[i] + r);
        }
        (lo, hi)
    }

    fn norm(&self) -> T {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(T::min_positive_value())
    }

    fn pivmin(&self) -> T {
        let emax = self.e.iter().map(|&x| x * x).fold(T::one(), T::max);
        T::min_positive_value() * emax
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence).
    pub fn count_below(&self, x: T) -> usize {
        let pivmin = self.pivmin();
        let mut count = 0;
        let mut q = self.d[0] - x;
        for i in 0.. {
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < T::zero() {
                count += 1;
            }
            if i + 1 == self.dim() {
                break;
            }
            q = self.d[i + 1] - x - self.e[i] * self.e[i] / q;
        }
        count
    }

    /// Eigenvalues with ascending indices `lo..hi` (0-based), by bisection.
    pub fn eigenvalues_in(&self, lo: usize, hi: usize) -> Vec<T> {
        let (glo, ghi) = self.gershgorin();
        let pivmin = self.pivmin();
        let eps = T::epsilon();
        let mut out = Vec::with_capacity(hi.saturating_sub(lo));
        let mut floor = glo;
        for k in lo..hi.min(self.dim()) {
            let (mut a, mut b) = (floor, ghi);
            for _ in 0..256 {
                let width = b - a;
                if width <= T::lit(2.0) * eps * a.abs().max(b.abs()) + T::lit(4.0) * pivmin {
                    break;
                }
                let mid = a + width / T::lit(2.0);
                if mid <= a || mid >= b {
                    break;
                }
                if self.count_below(mid) > k {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            let v = a + (b - a) / T::lit(2.0);
            out.push(v);
            floor = a;
        }
        out
    }

    /// Unit eigenvectors for ascending eigenvalue estimates `lambdas`.
    pub fn eigenvectors(&self, lambdas: &[T], seed: u64) -> Vec<Vec<T>> {
        let n = self.dim();
        let norm = self.norm();
        let eps = T::epsilon();
        let cluster = T::lit(1e-3) * norm;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vecs: Vec<Vec<T>> = Vec::with_capacity(lambdas.len());
        let mut cluster_start = 0;
        let mut prev_shift = T::neg_infinity();
        for (j, &lam) in lambdas.iter().enumerate() {
            if j > 0 && lam - lambdas[j - 1] > cluster {
                cluster_start = j;
            }
            // Coincident estimates get nudged apart so each solve differs.
            let sep = T::lit(10.0) * eps * norm;
            let shift = if lam - prev_shift < sep { prev_shift + sep } else { lam };
            prev_shift = shift;
            let lu = TridiagLu::factor(self, shift, eps * norm);
            let mut x: Vec<T> = (0..n).map(|_| T::lit(rng.gen_range(-1.0..1.0))).collect();
            for _ in 0..4 {
                lu.solve(&mut x);
                for v in &vecs[cluster_start..j] {
                    let c = dot(v, &x);
                    axpy(-c, v, &mut x);
                }
                let nrm = dot(&x, &x).sqrt();
                if !(nrm > T::zero()) || !nrm.is_finite() {
                    x = (0..n).map(|_| T::lit(rng.gen_range(-1.0..1.0))).collect();
                    continue;
                }
                x.iter_mut().for_each(|v| *v /= nrm);
            }
            vecs.push(x);
        }
        vecs
    }
}

/// LU factorisation with partial pivoting of `T − σI`.
struct TridiagLu<T> {
    dl: Vec<T>,
    dd: Vec<T>,
    du: Vec<T>,
    du2: Vec<T>,
    swapped: Vec<bool>,
}

impl<T: Real> TridiagLu<T> {
    fn factor(t: &Tridiagonal<T>, shift: T, tiny: T) -> Self {
        let n = t.dim();
        let mut dl = t.e.clone();
        let mut du = t.e.clone();
        let mut dd: Vec<T> = t.d.iter().map(|&x| x - shift).collect();
        let mut du2 = vec![T::zero(); n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if dd[i].abs() >= dl[i].abs() {
                if dd[i] != T::zero() {
                    let fact = dl[i] / dd[i];
                    dl[i] = fact;
                    dd[i + 1] -= fact * du[i];
                }
            } else {
                let fact = dd[i] / dl[i];
                dd[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = dd[i + 1];
                dd[i + 1] = temp - fact * dd[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        for v in dd.iter_mut() {
            if v.abs() < tiny {
                *v = if *v < T::zero() { -tiny } else { tiny };
            }
        }
        TridiagLu {
            dl,
            dd,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [T]) {
        let n = self.dd.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.dd[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.dd[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.dd[i];
        }
    }
}

/// Householder reduction `A = Q T Qᵀ` of a dense symmetric matrix.
pub struct HouseholderTridiag<T> {
    pub tri: Tridiagonal<T>,
    reflectors: Vec<Vec<T>>,
}

impl<T: Real> HouseholderTridiag<T> {
    /// Reduces the row-major `n × n` matrix `a`; only the lower triangle is read.
    pub fn new(mut a: Vec<T>, n: usize) -> Result<Self> {
        if n == 0 || a.len() != n * n {
            return Err(Error::InvalidArgument(format!("expected a {n}×{n} matrix")));
        }
        let mut d = vec![T::zero(); n];
        let mut e = vec![T::zero(); n - 1];
        let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
        let two = T::lit(2.0);
        for k in 0..n.saturating_sub(2) {
            let m = n - k - 1;
            let mut v: Vec<T> = (0..m).map(|i| a[(k + 1 + i) * n + k]).collect();
            let xnorm = dot(&v, &v).sqrt();
            d[k] = a[k * n + k];
            if xnorm == T::zero() {
                e[k] = T::zero();
                reflectors.push(Vec::new());
                continue;
            }
            let alpha = if v[0] > T::zero() { -xnorm } else { xnorm };
            v[0] -= alpha;
            let vn = dot(&v, &v).sqrt();
            v.iter_mut().for_each(|x| *x /= vn);
            e[k] = alpha;
            // p = 2·A₂₂v from the lower triangle, row by row.
            let base = k + 1;
            let mut p = vec![T::zero(); m];
            for i in 0..m {
                let row = &a[(base + i) * n + base..(base + i) * n + base + i + 1];
                let vi = v[i];
                let mut s = T::zero();
                for j in 0..i {
                    s += row[j] * v[j];
                    p[j] += row[j] * vi;
                }
                p[i] += s + row[i] * vi;
            }
            p.iter_mut().for_each(|x| *x *= two);
            let kk = dot(&v, &p);
            let w: Vec<T> = p.iter().zip(&v).map(|(&pi, &vi)| pi - kk * vi).collect();
            for i in 0..m {
                let (vi, wi) = (v[i], w[i]);
                let row = &mut a[(base + i) * n + base..(base + i) * n + base + i + 1];
                for j in 0..=i {
                    row[j] -= vi * w[j] + wi * v[j];
                }
            }
            reflectors.push(v);
        }
        if n >= 2 {
            d[n - 2] = a[(n - 2) * n + n - 2];
            e[n - 2] = a[(n - 1) * n + n - 2];
        }
        d[n - 1] = a[(n - 1) * n + n - 1];
        Ok(HouseholderTridiag {
            tri: Tridiagonal { d, e },
            reflectors,
        })
    }

    /// `z ← Q z`.
    pub fn back_transform(&self, z: &mut [T]) {
        let two = T::lit(2.0);
        for (k, v) in self.reflectors.iter().enumerate().rev() {
            if v.is_empty() {
                continue;
            }
            let sub = &mut z[k + 1..];
            let s = two * dot(v, sub);
            axpy(-s, v, sub);
        }
    }
}

/// Eigenpairs with ascending indices `lo..hi` of a dense symmetric matrix.
pub fn sym_eig_select<T: Real>(a: Vec<T>, n: usize, lo: usize, hi: usize, seed: u64) -> Result<(Vec<T>, Vec<Vec<T>>)> {
    if lo > hi || hi > n {
        return Err(Error::InvalidArgument(format!("index range {lo}..{hi} outside 0..{n}")));
    }
    let h = HouseholderTridiag::new(a, n)?;
    let vals = h.tri.eigenvalues_in(lo, hi);
    let mut vecs = h.tri.eigenvectors(&vals, seed);
    for v in vecs.iter_mut() {
        h.back_transform(v);
    }
    Ok((vals, vecs))
}

/// In-place lower Cholesky factor of a row-major SPD matrix.
pub fn cholesky_lower<T: Real>(a: &mut [T], n: usize) -> Result<()> {
    for j in 0..n {
        let mut s = a[j * n + j];
        for k in 0..j {
            s -= a[j * n + k] * a[j * n + k];
        }
        if !(s > T::zero()) || !s.is_finite() {
            return Err(Error::NotPositiveDefinite { row: j, pivot: s.as_f64() });
        }
        let l = s.sqrt();
        a[j * n + j] = l;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / l;
        }
        for k in j + 1..n {
            a[j * n + k] = T::zero();
        }
    }
    Ok(())
}

/// `X ← L⁻¹ X` for row-major `n × n` `X` and lower `L`.
pub fn forward_solve_rows<T: Real>(l: &[T], x: &mut [T], n: usize) {
    for i in 0..n {
        for k in 0..i {
            let lik = l[i * n + k];
            if lik != T::zero() {
                let (head, tail) = x.split_at_mut(i * n);
                axpy(-lik, &head[k * n..k * n + n], &mut tail[..n]);
            }
        }
        let d = l[i * n + i];
        x[i * n..i * n + n].iter_mut().for_each(|v| *v /= d);
    }
}

/// `z ← L⁻ᵀ z`.
pub fn backward_solve_transpose<T: Real>(l: &[T], z: &mut [T], n: usize) {
    for i in (0..n).rev() {
        z[i] /= l[i * n + i];
        let zi = z[i];
        for k in 0..i {
            z[k] -= l[i * n + k] * zi;
        }
    }
}

pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    let mut s = T::zero();
    for (&x, &y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

pub(crate) fn axpy<T: Real>(alpha: T, x: &[T], y: &mut [T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize) -> Vec<f64> {
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = (((i * 31 + j * 17) % 23) as f64 - 11.0) / 7.0;
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        a
    }

    #[test]
    fn matches_nalgebra_oracle() {
        let n = 40;
        let a = sample(n);
        let oracle = nalgebra::DMatrix::from_row_slice(n, n, &a).symmetric_eigen();
        let mut want: Vec<f64> = oracle.eigenvalues.iter().copied().collect();
        want.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let (vals, vecs) = sym_eig_select(a.clone(), n, 0, n, 7).unwrap();
        for (g, w) in vals.iter().zip(&want) {
            assert!((g - w).abs() < 1e-11, "{g} vs {w}");
        }
        for (lam, v) in vals.iter().zip(&vecs) {
            let mut r = 0.0f64;
            for i in 0..n {
                let av: f64 = (0..n).map(|j| a[i * n + j] * v[j]).sum();
                r = r.max((av - lam * v[i]).abs());
            }
            assert!(r < 1e-10, "residual {r}");
        }
    }

    #[test]
    fn repeated_eigenvalues_get_orthogonal_vectors() {
        // diag(1, 2, 2, 2, 5) rotated by a fixed reflector
        let n = 5;
        let diag = [1.0, 2.0, 2.0, 2.0, 5.0];
        let u: Vec<f64> = [1.0, -2.0, 0.5, 3.0, 1.0].iter().map(|x| x / 15.25f64.sqrt()).collect();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    let qik = if i == k { 1.0 } else { 0.0 } - 2.0 * u[i] * u[k];
                    let qjk = if j == k { 1.0 } else { 0.0 } - 2.0 * u[j] * u[k];
                    s += qik * diag[k] * qjk;
                }
                a[i * n + j] = s;
            }
        }
        let (vals, vecs) = sym_eig_select(a, n, 0, 5, 1).unwrap();
        for (g, w) in vals.iter().zip(diag) {
            assert!((g - w).abs() < 1e-12);
        }
        for i in 1..4 {
            for j in i + 1..4 {
                assert!(dot(&vecs[i], &vecs[j]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn sturm_count_on_path_laplacian() {
        let n = 50;
        let t = Tridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap();
        let exact = |k: usize| 2.0 - 2.0 * ((k as f64) * std::f64::consts::PI / (n as f64 + 1.0)).cos();
        assert_eq!(t.count_below(exact(10) + 1e-9), 10);
        let v = t.eigenvalues_in(0, 3);
        for (k, x) in v.iter().enumerate() {
            assert!((x - exact(k + 1)).abs() < 1e-14);
        }
    }

    #[test]
    fn cholesky_and_triangular_solves() {
        let n = 3;
        let m = vec![4.0f64, 2.0, 0.0, 2.0, 5.0, 1.0, 0.0, 1.0, 3.0];
        let mut l = m.clone();
        cholesky_lower(&mut l, n).unwrap();
        let mut x = m.clone();
        forward_solve_rows(&l, &mut x, n);
        // L⁻¹ M = Lᵀ
        for i in 0..n {
            for j in 0..n {
                assert!((x[i * n + j] - l[j * n + i]).abs() < 1e-14);
            }
        }
        let mut z = vec![1.0, 2.0, 3.0];
        backward_solve_transpose(&l, &mut z, n);
        let mut back = vec![0.0f64; n];
        for i in 0..n {
            for k in i..n {
                back[i] += l[k * n + i] * z[k];
            }
        }
        assert!((back[2] - 3.0).abs() < 1e-14 && (back[0] - 1.0).abs() < 1e-14);
        assert!(cholesky_lower(&mut [1.0, 2.0, 2.0, 1.0], 2).is_err());
    }
}
