//! Positive zeros of `J_m` and `J_m′`.
//!
//! Zeros of `J_0` are bracketed by `((l − ½)π, lπ)`. Higher orders follow from
//! interlacing, `j_{m−1}^(l) < j_m^(l) < j_{m−1}^(l+1)`, so each row of the
//! table is bisected inside consecutive zeros of the previous row.

use super::bessel::{j_unchecked, jp_unchecked};
use super::roots::{bracket_root, ROOT_TOL};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Rows `J_0, J_1, …` of positive zeros; row `m` holds one fewer entry than row `m − 1`.
#[derive(Debug, Clone)]
pub struct BesselZeroTable<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Real> BesselZeroTable<T> {
    /// Table with `row0_len` zeros of `J_0` and rows up to order `max_order`
    /// (requires `max_order < row0_len`).
    pub fn new(row0_len: usize, max_order: u32) -> Result<Self> {
        if (max_order as usize) >= row0_len {
            return Err(Error::InvalidArgument(format!(
                "zero table needs more than {max_order} zeros of J_0, got {row0_len}"
            )));
        }
        let tol = T::lit(ROOT_TOL);
        let pi = T::PI();
        let mut row0 = Vec::with_capacity(row0_len);
        for l in 1..=row0_len {
            let lf = T::from_count(l);
            let lo = (lf - T::lit(0.5)) * pi;
            let hi = lf * pi;
            row0.push(bracket_root(|x| j_unchecked(0, x), lo, hi, tol)?);
        }
        let mut rows = vec![row0];
        for m in 1..=max_order {
            let prev = rows.last().expect("row 0 present");
            let mut row = Vec::with_capacity(prev.len() - 1);
            for w in prev.windows(2) {
                row.push(bracket_root(|x| j_unchecked(m, x), w[0], w[1], tol)?);
            }
            rows.push(row);
        }
        Ok(BesselZeroTable { rows })
    }

    /// Smallest table holding every zero `≤ x_max` of each order `m` with `j_m^(1) ≤ x_max`,
    /// and at least one zero above `x_max` in each of those rows.
    pub fn covering(x_max: T) -> Result<Self> {
        let xf = x_max.as_f64().max(0.0);
        // j_m^(1) > m, so orders above x_max contribute nothing.
        let max_order = xf.ceil() as u32 + 2;
        // Row m's last zero exceeds j_0^(len0 − m); zeros of J_0 are ~π apart.
        let k0 = (xf / std::f64::consts::PI).ceil() as usize + 2;
        let len0 = k0 + max_order as usize + 2;
        Self::new(len0, max_order)
    }

    pub fn max_order(&self) -> u32 {
        (self.rows.len() - 1) as u32
    }

    /// Zeros of `J_m` held in the table (ascending).
    pub fn row(&self, m: u32) -> &[T] {
        &self.rows[m as usize]
    }

    /// `j_m^(l)`, `l ≥ 1`, if present.
    pub fn get(&self, m: u32, l: usize) -> Option<T> {
        if l == 0 {
            return None;
        }
        self.rows.get(m as usize).and_then(|r| r.get(l - 1)).copied()
    }

    /// Zeros of `J_m′` in `(0, x_max]` (the trivial zero of `J_0′` at the origin excluded).
    pub fn prime_zeros_below(&self, m: u32, x_max: T) -> Result<Vec<T>> {
        let tol = T::lit(ROOT_TOL);
        let row = self.row(m);
        let mut out = Vec::new();
        let mut lo = if m == 0 {
            // J_0′ = −J_1 vanishes at the zeros of J_1, which interlace J_0's.
            return Ok(self
                .row(1)
                .iter()
                .copied()
                .take_while(|&z| z <= x_max)
                .collect());
        } else {
            T::lit(f64::from(m))
        };
        for &z in row {
            if lo > x_max {
                break;
            }
            let r = bracket_root(|x| jp_unchecked(m, x), lo, z, tol)?;
            if r > x_max {
                break;
            }
            out.push(r);
            lo = z;
        }
        Ok(out)
    }
}

/// `j_m^(l)`, the `l`-th positive zero of `J_m`.
pub fn bessel_j_zero<T: Real>(m: u32, l: usize) -> Result<T> {
    if l == 0 {
        return Err(Error::InvalidArgument("zero index l must be ≥ 1".into()));
    }
    let table = BesselZeroTable::<T>::new(l + m as usize, m)?;
    Ok(table.get(m, l).expect("table sized for (m, l)"))
}

/// The `l`-th positive zero of `J_m′`.
pub fn bessel_j_prime_zero<T: Real>(m: u32, l: usize) -> Result<T> {
    if l == 0 {
        return Err(Error::InvalidArgument("zero index l must be ≥ 1".into()));
    }
    if m == 0 {
        return bessel_j_zero(1, l);
    }
    let table = BesselZeroTable::<T>::new(l + m as usize, m)?;
    let tol = T::lit(ROOT_TOL);
    let lo = if l == 1 {
        T::lit(f64::from(m))
    } else {
        table.get(m, l - 1).expect("sized")
    };
    let hi = table.get(m, l).expect("sized");
    bracket_root(|x| jp_unchecked(m, x), lo, hi, tol)
}
