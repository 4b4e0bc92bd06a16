//! Observed orders of the grid discretisations on the unit square, where every
//! boundary is grid-aligned.

use std::f64::consts::PI;

use speclab::fdlab::{fd_spectrum, GridDomain, SolverOptions};
use speclab::ProblemKind;

fn first(kind: ProblemKind, n: usize) -> f64 {
    let g = GridDomain::rectangle(1.0, 1.0, 1.0 / n as f64).unwrap();
    fd_spectrum(&g, kind, 1, &SolverOptions::default()).unwrap().values()[0]
}

/// Order from three grids without a known limit.
fn self_order(kind: ProblemKind) -> f64 {
    let e = [first(kind, 16), first(kind, 32), first(kind, 64)];
    ((e[0] - e[1]) / (e[1] - e[2])).log2()
}

#[test]
fn dirichlet_is_second_order() {
    let exact = 2.0 * PI * PI;
    let p = ((first(ProblemKind::Dirichlet, 16) - exact).abs() / (first(ProblemKind::Dirichlet, 32) - exact).abs()).log2();
    assert!(p >= 1.8, "order {p}");
}

#[test]
fn clamped_and_buckling_are_second_order() {
    for kind in [ProblemKind::Clamped, ProblemKind::Buckling] {
        let p = self_order(kind);
        assert!(p >= 1.8, "{kind}: order {p}");
    }
}

#[test]
fn clamped_square_near_extrapolated_limit() {
    let coarse = first(ProblemKind::Clamped, 32);
    let mid = first(ProblemKind::Clamped, 64);
    let fine = first(ProblemKind::Clamped, 128);
    let p = ((coarse - mid) / (mid - fine)).log2();
    let limit = fine + (fine - mid) / (2f64.powf(p) - 1.0);
    assert!((mid / limit - 1.0).abs() < 0.03, "Γ(1/64) = {mid}, limit {limit}");
    // Published clamped-square value: Γ₁² ≈ 1294.93, Γ₁ ≈ 35.985.
    assert!((limit - 35.985).abs() < 0.05, "limit {limit}");
}

#[test]
fn neumann_converges() {
    let e: Vec<f64> = [16, 32, 64].iter().map(|&n| {
        let g = GridDomain::rectangle(1.0, 1.0, 1.0 / n as f64).unwrap();
        fd_spectrum(&g, ProblemKind::Neumann, 2, &SolverOptions::default()).unwrap().values()[1]
    })
    .collect();
    let err: Vec<f64> = e.iter().map(|v| (v - PI * PI).abs()).collect();
    assert!(err[0] > err[1] && err[1] > err[2], "{err:?}");
    assert!(err[2] / (PI * PI) < 0.05);
}
