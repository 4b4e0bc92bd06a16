//! One-term Weyl fit on a finite-difference buckling spectrum.

use speclab::analytics::{weyl_fit, WeylWindow};
use speclab::fdlab::{fd_spectrum, GridDomain, SolverOptions};
use speclab::ProblemKind;

#[test]
fn square_buckling_fit_near_weyl_constant() {
    let g = GridDomain::rectangle(1.0, 1.0, 1.0 / 80.0).unwrap();
    let s = fd_spectrum(&g, ProblemKind::Buckling, 480, &SolverOptions::default()).unwrap();
    // The window stays below both the last computed value and the trust cutoff.
    assert!(s.values()[479] > 6000.0 && s.trusted_count() >= 480);
    let fit = weyl_fit(&s, 2, 1.0, &WeylWindow::new(2000.0, 6000.0).unwrap()).unwrap();
    assert!((fit.ratio - 1.0).abs() <= 0.10, "ratio {}", fit.ratio);
}
