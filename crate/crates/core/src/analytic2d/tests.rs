use std::f64::consts::PI;

use super::*;
use crate::spectrum::ProblemKind;

fn unit_square() -> RectDomain<f64> {
    RectDomain::new(1.0, 1.0).unwrap()
}

fn unit_disk() -> DiskDomain<f64> {
    DiskDomain::new(1.0).unwrap()
}

/// Brute-force enumeration over a generous index box, independent of the
/// row-by-row counting path.
fn brute_count(a: f64, b: f64, start: usize, tau: f64) -> usize {
    let mut n = 0;
    for l in start..400 {
        for m in start..400 {
            if PI * PI * ((l * l) as f64 / (a * a) + (m * m) as f64 / (b * b)) <= tau {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn rect_small_spectra() {
    let d = rect_spectrum(&unit_square(), ProblemKind::Dirichlet, 3).unwrap();
    let p2 = PI * PI;
    assert_eq!(d.values().len(), 3);
    assert!((d.values()[0] - 2.0 * p2).abs() < 1e-12);
    assert!((d.values()[1] - 5.0 * p2).abs() < 1e-12);
    assert_eq!(d.values()[1], d.values()[2]);

    let n = rect_spectrum(&unit_square(), ProblemKind::Neumann, 1).unwrap();
    assert_eq!(n.values()[0], 0.0);

    let r = rect_spectrum(&RectDomain::new(1.0, 2.0).unwrap(), ProblemKind::Dirichlet, 1).unwrap();
    // enumeration oracle over l, m ≤ 10
    let mut best = f64::INFINITY;
    for l in 1..=10 {
        for m in 1..=10 {
            best = best.min(p2 * ((l * l) as f64 + (m * m) as f64 / 4.0));
        }
    }
    assert!((r.values()[0] - best).abs() < 1e-12);
    assert!((best - 12.337).abs() < 1e-3);
}

#[test]
fn rect_multiplet_not_split() {
    // (1,2) and (2,1) are tied; asking for two values returns both copies.
    let d = rect_spectrum(&unit_square(), ProblemKind::Dirichlet, 2).unwrap();
    assert_eq!(d.len(), 3);
    assert_eq!(d.count_leq(d.values()[2]).unwrap(), 3);
    assert!(d.count_leq(d.values()[2] + 1e-9).is_err());
}

#[test]
fn rect_axis_symmetry() {
    for kind in [ProblemKind::Dirichlet, ProblemKind::Neumann] {
        let ab = rect_spectrum(&RectDomain::new(1.3f64, 0.7).unwrap(), kind, 60).unwrap();
        let ba = rect_spectrum(&RectDomain::new(0.7, 1.3).unwrap(), kind, 60).unwrap();
        for (x, y) in ab.values().iter().zip(ba.values()) {
            assert!((x - y).abs() <= 1e-12 * x.max(1.0));
        }
    }
}

#[test]
fn lattice_count_examples() {
    let sq = unit_square();
    let p2 = PI * PI;
    assert_eq!(rect_lattice_count(&sq, ProblemKind::Dirichlet, 2.0 * p2).unwrap().count, 1);
    assert_eq!(rect_lattice_count(&sq, ProblemKind::Dirichlet, 5.0 * p2 + 1e-9).unwrap().count, 3);
    assert_eq!(rect_lattice_count(&sq, ProblemKind::Neumann, 0.0).unwrap().count, 1);
    let c = rect_lattice_count(&sq, ProblemKind::Dirichlet, 1000.0).unwrap();
    assert_eq!(c.count, brute_count(1.0, 1.0, 1, 1000.0));
    assert!((c.count as f64 - c.weyl_term - c.remainder).abs() < 1e-9);
    assert!(rect_lattice_count(&sq, ProblemKind::Dirichlet, -1.0).is_err());
    assert!(rect_lattice_count(&sq, ProblemKind::Clamped, 1.0).is_err());
}

#[test]
fn lattice_count_matches_spectrum_counts() {
    for (a, b) in [(1.0, 1.0), (1.0, 2.0), (0.6, 1.7)] {
        let rect = RectDomain::new(a, b).unwrap();
        for kind in [ProblemKind::Dirichlet, ProblemKind::Neumann] {
            let s = rect_spectrum(&rect, kind, 200).unwrap();
            let top = s.max_trusted_value().unwrap();
            for i in 0..=60 {
                let tau = (top * i as f64 / 60.0).min(top);
                let direct = rect_lattice_count(&rect, kind, tau).unwrap().count;
                assert_eq!(direct, s.count_leq(tau).unwrap(), "{a}x{b} {kind} τ={tau}");
                let start = if kind == ProblemKind::Dirichlet { 1 } else { 0 };
                assert_eq!(direct, brute_count(a, b, start, tau));
            }
        }
    }
}

#[test]
fn lattice_remainder_is_boundary_order() {
    let rect = RectDomain::new(1.0, 2.0).unwrap();
    let mut worst: f64 = 0.0;
    let mut tau: f64 = 100.0;
    while tau <= 1e5 {
        let c = rect_lattice_count(&rect, ProblemKind::Dirichlet, tau).unwrap();
        worst = worst.max(c.remainder.abs() / (2.0 * tau.sqrt()));
        tau *= 1.07;
    }
    // Leading boundary correction alone is perimeter/(4π max(a,b)) ≈ 0.24.
    assert!(worst < 0.5, "remainder constant {worst}");
}

#[test]
fn disk_ground_truth() {
    let disk = unit_disk();
    let d = disk_spectrum(&disk, ProblemKind::Dirichlet, 3).unwrap();
    assert!((d.values()[0] - 5.783).abs() < 1e-3);
    assert!((d.values()[1] - 14.682).abs() < 1e-3);
    assert_eq!(d.values()[1], d.values()[2]);
    let c = disk_spectrum(&disk, ProblemKind::Clamped, 1).unwrap();
    assert!((c.values()[0] - 10.216).abs() < 1e-3);
    assert!((c.values()[0].sqrt() - 3.1962).abs() < 1e-4);
    let b = disk_spectrum(&disk, ProblemKind::Buckling, 1).unwrap();
    assert!((b.values()[0] - 14.682).abs() < 1e-3);
    let n = disk_spectrum(&disk, ProblemKind::Neumann, 3).unwrap();
    assert_eq!(n.values()[0], 0.0);
    assert!((n.values()[1] - 1.841183781340659f64.powi(2)).abs() < 1e-9);
}

#[test]
fn disk_values_match_scipy_reference() {
    // Clamped roots from an independent bracketed solve: (m, l) = (0,1), (1,1), (2,1), (0,2).
    let want = [3.1962206165825413f64, 4.610899879049017, 5.905678235420518, 6.306437047688424];
    let c = disk_spectrum(&unit_disk(), ProblemKind::Clamped, 6).unwrap();
    let got: Vec<f64> = c.values().iter().map(|v: &f64| v.sqrt()).collect();
    assert!((got[0] - want[0]).abs() < 1e-10);
    assert!((got[1] - want[1]).abs() < 1e-10 && got[1] == got[2]);
    assert!((got[3] - want[2]).abs() < 1e-10 && got[3] == got[4]);
    assert!((got[5] - want[3]).abs() < 1e-10);
}

#[test]
fn disk_enumeration_complete() {
    // Every kind: no value below the last returned one is missing, checked
    // against a direct order-by-order enumeration with a wide margin.
    let disk = unit_disk();
    for kind in ProblemKind::ALL {
        let s = disk_spectrum(&disk, kind, 120).unwrap();
        let big = disk_spectrum(&disk, kind, 400).unwrap();
        for (i, v) in s.values().iter().enumerate() {
            assert_eq!(*v, big.values()[i], "{kind} index {i}");
        }
    }
}

#[test]
fn disk_scaling() {
    let one = disk_spectrum(&unit_disk(), ProblemKind::Dirichlet, 30).unwrap();
    let r = 1.7;
    let big = disk_spectrum(&DiskDomain::new(r).unwrap(), ProblemKind::Dirichlet, 30).unwrap();
    for (a, b) in one.values().iter().zip(big.values()) {
        assert!((a / (r * r) - b).abs() < 1e-12 * a);
    }
}

#[test]
fn disk_clamped_roots_satisfy_determinant() {
    let c = disk_spectrum(&unit_disk(), ProblemKind::Clamped, 6).unwrap();
    let ms = [0u32, 1, 1, 2, 2, 0];
    for (v, m) in c.values().iter().zip(ms) {
        let det = clamped_disk_determinant(m, v.sqrt()).unwrap();
        assert!(det.abs() < 1e-9, "m={m}: {det}");
    }
}

#[test]
fn disk_sharpness_inequalities() {
    let disk = unit_disk();
    let d = disk_spectrum(&disk, ProblemKind::Dirichlet, 2).unwrap();
    let c = disk_spectrum(&disk, ProblemKind::Clamped, 2).unwrap();
    let b = disk_spectrum(&disk, ProblemKind::Buckling, 1).unwrap();
    assert!(d.values()[1] > c.values()[0]);
    assert!(c.values()[1] > b.values()[0]);
    assert!((c.values()[1] - 4.6109f64.powi(2)).abs() < 1e-2);
}

#[test]
fn buckling_family_counts() {
    let sq = unit_square();
    let p2 = PI * PI;
    assert_eq!(paper_buckling_family_count(&sq, 8.0 * p2 - 1.0).unwrap().cosine_cosine.count, 0);
    assert_eq!(paper_buckling_family_count(&sq, 8.0 * p2).unwrap().cosine_cosine.count, 1);
    // Oracle: brute force over the family (2πl)² + (2πm)² ≤ 200.
    let mut brute = 0;
    for l in 1..10 {
        for m in 1..10 {
            if (2.0 * PI * l as f64).powi(2) + (2.0 * PI * m as f64).powi(2) <= 200.0 {
                brute += 1;
            }
        }
    }
    let f = paper_buckling_family_count(&sq, 200.0).unwrap();
    assert_eq!(f.cosine_cosine.count, brute);
    assert_eq!(brute, 3); // 8π² once, 20π² ≈ 197.4 twice
    assert_eq!(
        f.total.count,
        f.cosine_cosine.count + f.cosine_tan.count + f.tan_cosine.count + f.tan_tan.count
    );
}

#[test]
fn buckling_family_symmetry_and_growth() {
    let r = RectDomain::new(1.0, 1.6).unwrap();
    let t = RectDomain::new(1.6, 1.0).unwrap();
    let a = paper_buckling_family_count(&r, 5000.0).unwrap();
    let b = paper_buckling_family_count(&t, 5000.0).unwrap();
    assert_eq!(a.cosine_tan.count, b.tan_cosine.count);
    assert_eq!(a.total.count, b.total.count);
    let big = paper_buckling_family_count(&r, 2e5).unwrap();
    let ratio = big.total.count as f64 / big.total.weyl_term;
    assert!((ratio - 1.0).abs() < 0.1, "family Weyl ratio {ratio}");
}

/// Symbolic substitution gives Δ²u + ΛΔu = α²β²(cos αx + cos βy).
fn symbolic_residual(a: f64, b: f64, l: usize, m: usize, n: usize) -> f64 {
    let al = 2.0 * PI * l as f64 / a;
    let be = 2.0 * PI * m as f64 / b;
    let mut r: f64 = 0.0;
    let mut u: f64 = 0.0;
    for i in 1..n {
        for j in 1..n {
            let x = a * i as f64 / n as f64;
            let y = b * j as f64 / n as f64;
            r = r.max((al * al * be * be * ((al * x).cos() + (be * y).cos())).abs());
            u = u.max(((1.0 - (al * x).cos()) * (1.0 - (be * y).cos())).abs());
        }
    }
    r / u
}

#[test]
fn product_ansatz_is_not_an_eigenfunction() {
    let r = buckling_product_residual(&unit_square(), 1, 1, 256).unwrap();
    assert!(r > 10.0);
    assert!((r - symbolic_residual(1.0, 1.0, 1, 1, 256)).abs() < 1e-9 * r);
    let wide = RectDomain::new(2.0, 1.0).unwrap();
    let r2 = buckling_product_residual(&wide, 2, 1, 256).unwrap();
    assert!(r2 > 0.0);
    assert!((r2 - symbolic_residual(2.0, 1.0, 2, 1, 256)).abs() < 1e-9 * r2);
    for len in [1.0, 2.5] {
        let f = buckling_factor_residual_1d(len, 1, 256).unwrap();
        assert!(f < 1e-9, "1D factor residual {f}");
    }
}

#[test]
fn generic_over_f32() {
    let d = disk_spectrum(&DiskDomain::new(1.0f32).unwrap(), ProblemKind::Dirichlet, 1).unwrap();
    assert!((d.values()[0] - 5.783).abs() < 1e-3);
    let r = rect_spectrum(&RectDomain::new(1.0f32, 1.0).unwrap(), ProblemKind::Dirichlet, 3).unwrap();
    assert_eq!(r.len(), 3);
}
