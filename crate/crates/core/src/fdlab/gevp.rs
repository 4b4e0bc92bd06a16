use serde::{Deserialize, Serialize};

use crate::error::{Error, PartialSolution, Result};
use crate::scalar::Real;

use super::dense::{backward_solve_transpose, cholesky_lower, dot, forward_solve_rows, sym_eig_select};
use super::krylov::{accepted, krylov_smallest, rayleigh_pair, shifted_factor};
use super::operator::SparseSymOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverMethod {
    /// Dense for small problems or when a large fraction of the spectrum is
    /// wanted, Krylov otherwise.
    Auto,
    Dense,
    Krylov,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub tol: f64,
    pub method: SolverMethod,
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-8,
            method: SolverMethod::Auto,
            seed: 0x5eed_1ab5,
        }
    }
}

/// Smallest eigenvalues of a pencil with their relative residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct EvpSolution<T> {
    pub eigenvalues: Vec<T>,
    pub residuals: Vec<T>,
    /// Round-off level of each residual; a pair is accepted when its residual
    /// is at most the larger of this and `tolerance`.
    pub floors: Vec<T>,
    /// Path actually taken (never `Auto`).
    pub method: SolverMethod,
    pub tolerance: f64,
}

const DENSE_LIMIT: usize = 3000;
const SMALL: usize = 400;

fn resolve(method: SolverMethod, n: usize, k: usize) -> SolverMethod {
    match method {
        SolverMethod::Auto if n <= SMALL || (n <= DENSE_LIMIT && 8 * k >= n) => SolverMethod::Dense,
        SolverMethod::Auto => SolverMethod::Krylov,
        other => other,
    }
}

/// The `k` smallest eigenvalues of `A u = θ M u` (`M = I` when `None`).
pub fn solve_gevp<T: Real>(
    a: &SparseSymOperator<T>,
    m: Option<&SparseSymOperator<T>>,
    k: usize,
    opts: &SolverOptions,
) -> Result<EvpSolution<T>> {
    solve_gevp_deflated(a, m, k, &[], opts)
}

/// As [`solve_gevp`], with known null vectors of `A` reported as exact zeros
/// and removed from the iteration.
pub fn solve_gevp_deflated<T: Real>(
    a: &SparseSymOperator<T>,
    m: Option<&SparseSymOperator<T>>,
    k: usize,
    null: &[Vec<T>],
    opts: &SolverOptions,
) -> Result<EvpSolution<T>> {
    let n = a.dim();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("requested {k} eigenvalues of a {n}-dimensional pencil")));
    }
    if let Some(m) = m {
        if m.dim() != n {
            return Err(Error::InvalidArgument(format!("pencil dimensions differ: {n} vs {}", m.dim())));
        }
    }
    if null.len() >= n || null.iter().any(|z| z.len() != n) {
        return Err(Error::InvalidArgument("null vectors do not fit the pencil".into()));
    }
    let a_norm = a.norm_inf();
    let apply_m = |x: &[T]| m.map(|m| m.apply(x)).unwrap_or_else(|| x.to_vec());
    let mut zs: Vec<Vec<T>> = Vec::with_capacity(null.len());
    for z in null {
        let mut z = z.clone();
        for q in &zs {
            let c = dot(&apply_m(q), &z);
            z.iter_mut().zip(q).for_each(|(zi, &qi)| *zi -= c * qi);
        }
        let nrm = dot(&z, &apply_m(&z)).sqrt();
        let az = a.apply(&z);
        if !(nrm > T::zero()) || dot(&az, &az).sqrt() > T::lit(1e-10) * a_norm * nrm {
            return Err(Error::InvalidArgument("supplied null vector is not in the kernel".into()));
        }
        z.iter_mut().for_each(|x| *x /= nrm);
        zs.push(z);
    }
    let want = k.saturating_sub(zs.len());
    let tol = T::lit(opts.tol);
    let method = resolve(opts.method, n, k);

    let mut values: Vec<T> = vec![T::zero(); k.min(zs.len())];
    let mut residuals = Vec::with_capacity(k);
    let mut floors = Vec::with_capacity(k);
    for z in zs.iter().take(k) {
        let (_, r, f) = rayleigh_pair(a, m, z);
        residuals.push(r);
        floors.push(f);
    }
    if want > 0 {
        let (vals, res, fl, converged) = match method {
            SolverMethod::Dense => {
                let (v, r, f) = dense_smallest(a, m, want, &zs, opts.seed)?;
                let ok = r.iter().zip(&f).all(|(&r, &f)| accepted(r, f, tol));
                (v, r, f, ok)
            }
            _ => {
                let out = krylov_smallest(a, m, want, tol, &zs, opts.seed)?;
                (out.values, out.residuals, out.floors, out.converged)
            }
        };
        values.extend(vals);
        residuals.extend(res);
        floors.extend(fl);
        if !converged {
            return Err(Error::NoConvergence(Box::new(PartialSolution {
                eigenvalues: values.iter().map(|v| v.as_f64()).collect(),
                residuals: residuals.iter().map(|v| v.as_f64()).collect(),
                tolerance: opts.tol,
            })));
        }
    }
    Ok(EvpSolution {
        eigenvalues: values,
        residuals,
        floors,
        method,
        tolerance: opts.tol,
    })
}

type Pairs<T> = (Vec<T>, Vec<T>, Vec<T>);

/// Cholesky reduction to a standard problem, then selected dense eigenpairs,
/// each polished by one shift-invert step on the sparse pencil.
fn dense_smallest<T: Real>(
    a: &SparseSymOperator<T>,
    m: Option<&SparseSymOperator<T>>,
    k: usize,
    null: &[Vec<T>],
    seed: u64,
) -> Result<Pairs<T>> {
    let n = a.dim();
    let mut c = a.to_dense();
    let l = match m {
        Some(m) => {
            let mut l = m.to_dense();
            cholesky_lower(&mut l, n)?;
            forward_solve_rows(&l, &mut c, n);
            transpose_in_place(&mut c, n);
            forward_solve_rows(&l, &mut c, n);
            Some(l)
        }
        None => None,
    };
    if !null.is_empty() {
        // Lift the kernel above the spectrum: C + s·y yᵀ with y = Lᵀz.
        let c_norm = (0..n)
            .map(|i| c[i * n..i * n + n].iter().map(|v| v.abs()).sum::<T>())
            .fold(T::zero(), T::max);
        let lift = T::lit(2.0) * c_norm + T::one();
        for z in null {
            let y: Vec<T> = match &l {
                Some(l) => (0..n).map(|i| (i..n).map(|r| l[r * n + i] * z[r]).sum()).collect(),
                None => z.clone(),
            };
            for i in 0..n {
                for j in 0..n {
                    c[i * n + j] += lift * y[i] * y[j];
                }
            }
        }
    }
    let (_, vecs) = sym_eig_select(c, n, 0, k, seed)?;
    let (_, factor) = shifted_factor(a, m, !null.is_empty())?;
    let apply_m = |x: &[T]| m.map(|m| m.apply(x)).unwrap_or_else(|| x.to_vec());
    let mz: Vec<Vec<T>> = null.iter().map(|z| apply_m(z)).collect();
    // One block shift-invert step, then Rayleigh–Ritz on the image.
    let mut ys: Vec<Vec<T>> = Vec::with_capacity(k);
    for mut x in vecs {
        if let Some(l) = &l {
            backward_solve_transpose(l, &mut x, n);
        }
        let mut y = apply_m(&x);
        factor.solve_in_place(&mut y);
        for (z, mz) in null.iter().zip(&mz) {
            let c = dot(mz, &y);
            y.iter_mut().zip(z).for_each(|(yi, &zi)| *yi -= c * zi);
        }
        let s = dot(&y, &y).sqrt();
        y.iter_mut().for_each(|v| *v /= s);
        ys.push(y);
    }
    let ay: Vec<Vec<T>> = ys.iter().map(|y| a.apply(y)).collect();
    let my: Vec<Vec<T>> = ys.iter().map(|y| apply_m(y)).collect();
    let mut pa = vec![T::zero(); k * k];
    let mut pm = vec![T::zero(); k * k];
    for i in 0..k {
        for j in 0..=i {
            pa[i * k + j] = (dot(&ys[i], &ay[j]) + dot(&ys[j], &ay[i])) * T::lit(0.5);
            pa[j * k + i] = pa[i * k + j];
            pm[i * k + j] = (dot(&ys[i], &my[j]) + dot(&ys[j], &my[i])) * T::lit(0.5);
            pm[j * k + i] = pm[i * k + j];
        }
    }
    cholesky_lower(&mut pm, k)?;
    forward_solve_rows(&pm, &mut pa, k);
    transpose_in_place(&mut pa, k);
    forward_solve_rows(&pm, &mut pa, k);
    let (_, cs) = sym_eig_select(pa, k, 0, k, seed)?;
    let mut pairs = Vec::with_capacity(k);
    for mut c in cs {
        backward_solve_transpose(&pm, &mut c, k);
        let mut x = vec![T::zero(); n];
        for (ci, y) in c.iter().zip(&ys) {
            x.iter_mut().zip(y).for_each(|(xi, &yi)| *xi += *ci * yi);
        }
        pairs.push(rayleigh_pair(a, m, &x));
    }
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).expect("finite eigenvalues"));
    let mut out: Pairs<T> = (Vec::with_capacity(k), Vec::with_capacity(k), Vec::with_capacity(k));
    for (v, r, f) in pairs {
        out.0.push(v);
        out.1.push(r);
        out.2.push(f);
    }
    Ok(out)
}

fn transpose_in_place<T: Real>(c: &mut [T], n: usize) {
    for i in 0..n {
        for j in i + 1..n {
            c.swap(i * n + j, j * n + i);
        }
    }
}
