//! Block shift-invert Krylov iteration with full reorthogonalisation in the
//! `M` inner product and thick restarts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::scalar::Real;

use super::dense::{axpy, dot, sym_eig_select};
use super::envelope::EnvelopeCholesky;
use super::operator::SparseSymOperator;

const BLOCK: usize = 4;
const MAX_RESTARTS: usize = 80;

pub(crate) struct KrylovResult<T> {
    pub values: Vec<T>,
    pub residuals: Vec<T>,
    pub floors: Vec<T>,
    pub converged: bool,
}

struct Pencil<'a, T> {
    a: &'a SparseSymOperator<T>,
    m: Option<&'a SparseSymOperator<T>>,
}

impl<T: Real> Pencil<'_, T> {
    fn apply_m(&self, x: &[T]) -> Vec<T> {
        match self.m {
            Some(m) => m.apply(x),
            None => x.to_vec(),
        }
    }

    fn m_diag(&self, i: usize) -> T {
        self.m.map(|m| m.get(i, i)).unwrap_or_else(T::one)
    }
}

/// Factors `A − σM`, with `σ = 0` unless `A` is singular or `force_shift`.
pub(crate) fn shifted_factor<T: Real>(
    a: &SparseSymOperator<T>,
    m: Option<&SparseSymOperator<T>>,
    force_shift: bool,
) -> Result<(T, EnvelopeCholesky<T>)> {
    let p = Pencil { a, m };
    if !force_shift {
        if let Ok(f) = EnvelopeCholesky::factor(p.a) {
            return Ok((T::zero(), f));
        }
    }
    let n = p.a.dim();
    let scale = (0..n).map(|i| p.a.get(i, i) / p.m_diag(i)).fold(T::zero(), T::max);
    let sigma = -T::lit(1e-4) * scale.max(T::min_positive_value());
    let shifted = match p.m {
        Some(m) => p.a.add_scaled(-sigma, m)?,
        None => p.a.add_scaled(-sigma, &SparseSymOperator::identity(n))?,
    };
    Ok((sigma, EnvelopeCholesky::factor(&shifted)?))
}

struct Basis<T> {
    v: Vec<Vec<T>>,
    mv: Vec<Vec<T>>,
    sv: Vec<Vec<T>>,
    /// `h[i][j] = (M vᵢ)·(S vⱼ)`.
    h: Vec<Vec<T>>,
}

/// Rayleigh quotient of `x`, its relative residual
/// `‖Ax − θMx‖ / (‖Ax‖ + |θ|‖Mx‖)` and the round-off level of that residual.
///
/// The floor bounds the rounding error of forming `Ax − θMx` row by row; no
/// vector can be certified below it.
pub(crate) fn rayleigh_pair<T: Real>(
    a: &SparseSymOperator<T>,
    m: Option<&SparseSymOperator<T>>,
    x: &[T],
) -> (T, T, T) {
    let ax = a.apply(x);
    let mx = match m {
        Some(m) => m.apply(x),
        None => x.to_vec(),
    };
    let xmx = dot(x, &mx);
    let theta = if xmx > T::zero() { dot(x, &ax) / xmx } else { T::zero() };
    let r: Vec<T> = ax.iter().zip(&mx).map(|(&p, &q)| p - theta * q).collect();
    let nrm = |v: &[T]| dot(v, v).sqrt();
    let abs_apply = |op: &SparseSymOperator<T>| -> (Vec<T>, usize) {
        let mut width = 0;
        let y = (0..op.dim())
            .map(|i| {
                let (cols, vals) = op.row(i);
                width = width.max(cols.len());
                cols.iter().zip(vals).map(|(&j, &v)| v.abs() * x[j].abs()).sum()
            })
            .collect();
        (y, width)
    };
    let (aa, wa) = abs_apply(a);
    let (mm, wm) = match m {
        Some(m) => abs_apply(m),
        None => (x.iter().map(|v| v.abs()).collect(), 1),
    };
    let bound: Vec<T> = aa.iter().zip(&mm).map(|(&p, &q)| p + theta.abs() * q).collect();
    let denom = nrm(&ax) + theta.abs() * nrm(&mx);
    if denom == T::zero() {
        return (theta, T::zero(), T::zero());
    }
    let floor = T::from_count(wa.max(wm) + 2) * T::epsilon() * nrm(&bound) / denom;
    (theta, nrm(&r) / denom, floor)
}

/// `res ≤ tol`, or at the round-off floor when that lies above `tol`.
pub(crate) fn accepted<T: Real>(res: T, floor: T, tol: T) -> bool {
    res <= tol.max(floor)
}

/// The `k` smallest eigenpairs of `A x = θ M x` on the `M`-orthogonal
/// complement of `deflate` (which must be `M`-orthonormal null vectors of `A`).
pub(crate) fn krylov_smallest<T: Real>(
    a: &SparseSymOperator<T>,
    m: Option<&SparseSymOperator<T>>,
    k: usize,
    tol: T,
    deflate: &[Vec<T>],
    seed: u64,
) -> Result<KrylovResult<T>> {
    let pencil = Pencil { a, m };
    let n = a.dim();
    let (_, factor) = shifted_factor(a, m, !deflate.is_empty())?;
    let locked: Vec<(Vec<T>, Vec<T>)> = deflate.iter().map(|z| (z.clone(), pencil.apply_m(z))).collect();
    let space = n - locked.len();
    let p = BLOCK.min(space);
    let m_max = space.min((2 * k + 4 * p).max(40));
    let keep = (k + 2 * p).min(m_max.saturating_sub(p)).max(k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let apply_s = |x: &[T]| {
        let mut y = pencil.apply_m(x);
        factor.solve_in_place(&mut y);
        y
    };

    let mut basis = Basis {
        v: Vec::new(),
        mv: Vec::new(),
        sv: Vec::new(),
        h: Vec::new(),
    };

    let orthonormalize = |basis: &Basis<T>, mut w: Vec<T>| -> Option<(Vec<T>, Vec<T>)> {
        let mw0 = pencil.apply_m(&w);
        let n0 = dot(&w, &mw0).sqrt();
        if !(n0 > T::zero()) || !n0.is_finite() {
            return None;
        }
        for _ in 0..2 {
            for (z, mz) in locked.iter() {
                let c = dot(mz, &w);
                axpy(-c, z, &mut w);
            }
            for (vj, mvj) in basis.v.iter().zip(&basis.mv) {
                let c = dot(mvj, &w);
                axpy(-c, vj, &mut w);
            }
        }
        let mut mw = pencil.apply_m(&w);
        let nrm = dot(&w, &mw).sqrt();
        if !(nrm > T::lit(1e-12) * n0) {
            return None;
        }
        w.iter_mut().for_each(|x| *x /= nrm);
        mw.iter_mut().for_each(|x| *x /= nrm);
        Some((w, mw))
    };

    let push = |basis: &mut Basis<T>, w: Vec<T>, mw: Vec<T>| {
        let sw = apply_s(&w);
        let j = basis.v.len();
        let col: Vec<T> = basis.mv.iter().map(|mvi| dot(mvi, &sw)).collect();
        let hjj = dot(&mw, &sw);
        for (i, row) in basis.h.iter_mut().enumerate() {
            row.push(col[i]);
        }
        let mut last = col;
        last.push(hjj);
        basis.h.push(last);
        basis.v.push(w);
        basis.mv.push(mw);
        basis.sv.push(sw);
        j
    };

    let random_vector = |rng: &mut ChaCha8Rng| -> Vec<T> { (0..n).map(|_| T::lit(rng.gen_range(-1.0..1.0))).collect() };

    let add = |basis: &mut Basis<T>, candidate: Vec<T>, rng: &mut ChaCha8Rng| -> Option<usize> {
        if let Some((w, mw)) = orthonormalize(basis, candidate) {
            return Some(push(basis, w, mw));
        }
        for _ in 0..4 {
            if let Some((w, mw)) = orthonormalize(basis, random_vector(rng)) {
                return Some(push(basis, w, mw));
            }
        }
        None
    };

    let mut block: Vec<usize> = Vec::new();
    for _ in 0..p {
        let r = random_vector(&mut rng);
        if let Some(j) = add(&mut basis, r, &mut rng) {
            block.push(j);
        }
    }

    let mut best: Option<Ritz<T>> = None;
    let mut next_check = (k + p).min(m_max);
    for _restart in 0..=MAX_RESTARTS {
        loop {
            let full = basis.v.len() >= m_max;
            if basis.v.len() >= next_check || full {
                let ritz = rayleigh_ritz(&basis, k, a, m, &locked)?;
                let done = ritz.all_accepted(k, tol);
                best = Some(ritz);
                if done {
                    return Ok(best.expect("just set").into_result(k, true));
                }
                let len = basis.v.len();
                next_check = len + p.max(len / 4);
            }
            if full {
                break;
            }
            let mut next = Vec::with_capacity(p);
            for &j in &block {
                if basis.v.len() >= m_max {
                    break;
                }
                let cand = basis.sv[j].clone();
                if let Some(i) = add(&mut basis, cand, &mut rng) {
                    next.push(i);
                }
            }
            if next.is_empty() {
                break;
            }
            block = next;
        }
        if basis.v.len() >= space {
            break;
        }
        // Thick restart on the `keep` dominant Ritz vectors.
        let q = keep.min(basis.v.len());
        let ritz = rayleigh_ritz(&basis, q, a, m, &locked)?;
        basis = restart(&basis, &ritz.coef);
        let mut order: Vec<usize> = (0..k.min(q))
            .filter(|&i| !accepted(ritz.residuals[i], ritz.floors[i], tol))
            .collect();
        let rest: Vec<usize> = (0..q).filter(|i| !order.contains(i)).collect();
        order.extend(rest);
        block = order.into_iter().take(p).collect();
        next_check = basis.v.len() + p;
    }
    let ritz = best.expect("at least one Rayleigh–Ritz step");
    let done = ritz.all_accepted(k, tol);
    Ok(ritz.into_result(k, done))
}

struct Ritz<T> {
    values: Vec<T>,
    residuals: Vec<T>,
    floors: Vec<T>,
    /// Basis coefficients of each Ritz vector, dominant first.
    coef: Vec<Vec<T>>,
    /// Positions in ascending order of value.
    order: Vec<usize>,
}

impl<T: Real> Ritz<T> {
    fn all_accepted(&self, k: usize, tol: T) -> bool {
        (0..k.min(self.values.len())).all(|i| accepted(self.residuals[i], self.floors[i], tol))
    }

    fn into_result(self, k: usize, converged: bool) -> KrylovResult<T> {
        let take = |v: &[T]| self.order.iter().take(k).map(|&i| v[i]).collect::<Vec<T>>();
        KrylovResult {
            values: take(&self.values),
            residuals: take(&self.residuals),
            floors: take(&self.floors),
            converged,
        }
    }
}

/// Rayleigh–Ritz on the `count` dominant eigenvalues of the projected
/// shift-invert operator.
///
/// Each Ritz vector `x` is reported through `Sx`, which is free from the
/// stored `S`-images and damps the high modes that `A` would amplify.
fn rayleigh_ritz<T: Real>(
    basis: &Basis<T>,
    count: usize,
    a: &SparseSymOperator<T>,
    m: Option<&SparseSymOperator<T>>,
    locked: &[(Vec<T>, Vec<T>)],
) -> Result<Ritz<T>> {
    let dim = basis.v.len();
    let n = basis.v[0].len();
    let count = count.min(dim);
    let flat: Vec<T> = basis.h.iter().flat_map(|r| r.iter().copied()).collect();
    let (_, y) = sym_eig_select(flat, dim, dim - count, dim, 0x5eed)?;
    let mut out = Ritz {
        values: Vec::with_capacity(count),
        residuals: Vec::with_capacity(count),
        floors: Vec::with_capacity(count),
        coef: Vec::with_capacity(count),
        order: Vec::new(),
    };
    for y_i in y.into_iter().rev() {
        let mut x = vec![T::zero(); n];
        for (c, sv) in y_i.iter().zip(&basis.sv) {
            axpy(*c, sv, &mut x);
        }
        for (z, mz) in locked {
            let c = dot(mz, &x);
            axpy(-c, z, &mut x);
        }
        let (th, res, floor) = rayleigh_pair(a, m, &x);
        out.values.push(th);
        out.residuals.push(res);
        out.floors.push(floor);
        out.coef.push(y_i);
    }
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by(|&i, &j| out.values[i].partial_cmp(&out.values[j]).expect("finite Ritz values"));
    out.order = order;
    Ok(out)
}
fn restart<T: Real>(basis: &Basis<T>, y: &[Vec<T>]) -> Basis<T> {
    let n = basis.v[0].len();
    let combine = |src: &[Vec<T>], coef: &[T]| {
        let mut out = vec![T::zero(); n];
        for (c, s) in coef.iter().zip(src) {
            axpy(*c, s, &mut out);
        }
        out
    };
    let v: Vec<Vec<T>> = y.iter().map(|c| combine(&basis.v, c)).collect();
    let mv = y.iter().map(|c| combine(&basis.mv, c)).collect();
    let sv: Vec<Vec<T>> = y.iter().map(|c| combine(&basis.sv, c)).collect();
    let hy: Vec<Vec<T>> = y
        .iter()
        .map(|c| (0..basis.h.len()).map(|i| dot(&basis.h[i], c)).collect())
        .collect();
    let h = y
        .iter()
        .map(|ci| hy.iter().map(|hcj| dot(ci, hcj)).collect())
        .collect();
    Basis { v, mv, sv, h }
}
