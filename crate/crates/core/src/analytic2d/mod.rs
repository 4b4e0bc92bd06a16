//! Exact and semi-analytic spectra on rectangles and disks, and exact lattice
//! counts for rectangle counting functions.

mod disk;
mod rect;

pub use disk::{clamped_disk_determinant, disk_spectrum, DiskDomain};
pub use rect::{
    buckling_factor_residual_1d, buckling_product_residual, paper_buckling_family_count,
    rect_count, rect_lattice_count, rect_spectrum, rect_spectrum_up_to, rect_values_up_to, BucklingFamilyCounts,
    LatticeCount, RectDomain,
};

#[cfg(test)]
mod tests;
