use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectrum::DomainDescriptor;

use super::FourSpectra;

/// Index `k` of the chain `μ_k < λ_k < Γ_k < Λ_k`.
///
/// Arrays run Neumann, Dirichlet, clamped, buckling; margins and flags run over
/// the three neighbouring pairs. A pair is strict when its margin exceeds the
/// summed uncertainty of its two values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainEntry {
    pub k: usize,
    pub values: [f64; 4],
    /// `|e_k(h) − e_k(h/2)|` per kind; zero for exact spectra.
    pub uncertainty: [f64; 4],
    pub margins: [f64; 3],
    pub strict: [bool; 3],
}

impl ChainEntry {
    pub fn passed(&self) -> bool {
        self.strict.iter().all(|&s| s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub domain: DomainDescriptor,
    pub entries: Vec<ChainEntry>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(ChainEntry::passed)
    }
}

/// Checks the chain for `k = 1..=count` on `spectra`.
///
/// With `coarse` (the same domain on a grid twice as coarse) the per-index
/// uncertainty is the change between the two grids.
pub fn inequality_chain_check<T: Real>(
    spectra: &FourSpectra<'_, T>,
    coarse: Option<&FourSpectra<'_, T>>,
    count: usize,
) -> Result<ChainReport> {
    spectra.validate()?;
    let fine = spectra.in_order();
    let coarse = match coarse {
        Some(c) => {
            c.validate()?;
            if !c.neumann.domain().same_geometry(spectra.neumann.domain()) {
                return Err(Error::DomainMismatch(format!(
                    "{:?} vs {:?}",
                    c.neumann.domain(),
                    spectra.neumann.domain()
                )));
            }
            Some(c.in_order())
        }
        None => None,
    };
    let mut trusted = fine.iter().map(|s| s.trusted_count()).min().unwrap_or(0);
    if let Some(c) = &coarse {
        trusted = trusted.min(c.iter().map(|s| s.trusted_count()).min().unwrap_or(0));
    }
    if count > trusted {
        return Err(Error::InvalidArgument(format!(
            "chain check over {count} indices, only {trusted} trusted values"
        )));
    }
    let entries = (1..=count)
        .map(|k| {
            let mut values = [0.0; 4];
            let mut uncertainty = [0.0; 4];
            for i in 0..4 {
                values[i] = fine[i].values()[k - 1].as_f64();
                if let Some(c) = &coarse {
                    uncertainty[i] = (c[i].values()[k - 1].as_f64() - values[i]).abs();
                }
            }
            let mut margins = [0.0; 3];
            let mut strict = [false; 3];
            for i in 0..3 {
                margins[i] = values[i + 1] - values[i];
                strict[i] = margins[i] > uncertainty[i] + uncertainty[i + 1];
            }
            ChainEntry {
                k,
                values,
                uncertainty,
                margins,
                strict,
            }
        })
        .collect();
    Ok(ChainReport {
        domain: spectra.neumann.domain().clone(),
        entries,
    })
}
