use std::f64::consts::PI;

use super::*;
use crate::analytic2d::{disk_spectrum, rect_spectrum, rect_spectrum_up_to, DiskDomain, RectDomain};
use crate::fdlab::{cap_spectrum, CapDomain, GridDomain, SolverOptions};
use crate::interval1d::{interval_spectrum, IntervalDomain};
use crate::spectrum::{DomainDescriptor, SpectrumSource};
use crate::{Error, ProblemKind, Spectrum};

/// `#{(l, m) ≥ start : π²(l²/a² + m²/b²) ≤ τ}` by plain enumeration.
fn brute_count(a: f64, b: f64, start: usize, tau: f64) -> usize {
    let mut n = 0;
    for l in start..2000 {
        for m in start..2000 {
            let v = PI * PI * ((l * l) as f64 / (a * a) + (m * m) as f64 / (b * b));
            if v <= tau {
                n += 1;
            }
        }
    }
    n
}

fn all_disk(count: usize) -> Vec<Spectrum<f64>> {
    let d = DiskDomain::new(1.0).unwrap();
    ProblemKind::ALL.iter().map(|&k| disk_spectrum(&d, k, count).unwrap()).collect()
}

fn all_interval(count: usize) -> Vec<Spectrum<f64>> {
    let d = IntervalDomain::new(1.0).unwrap();
    ProblemKind::ALL.iter().map(|&k| interval_spectrum(&d, k, count).unwrap()).collect()
}

#[test]
fn count_leq_threshold_is_inclusive() {
    let s = &all_interval(3)[1];
    assert_eq!(count_leq(s, PI * PI).unwrap(), 1);
    assert_eq!(count_leq(s, PI * PI - 1e-9).unwrap(), 0);
}

#[test]
fn count_leq_square_matches_enumeration() {
    let sq = RectDomain::new(1.0, 1.0).unwrap();
    let s = rect_spectrum_up_to(&sq, ProblemKind::Dirichlet, 1000.0).unwrap();
    assert_eq!(count_leq(&s, 1000.0).unwrap(), brute_count(1.0, 1.0, 1, 1000.0));
}

#[test]
fn counting_function_samples() {
    let s = &all_interval(5)[1];
    let f = counting_function(s, &[1.0, 10.0, 40.0, 100.0]).unwrap();
    assert_eq!(f.counts, vec![0, 1, 2, 3]);
    assert!(counting_function(s, &[1e6]).is_err());
}

#[test]
fn disk_chain_is_strict() {
    let spectra = all_disk(6);
    let four = FourSpectra::from_slice(&spectra).unwrap();
    let r = inequality_chain_check(&four, None, 5).unwrap();
    assert!(r.passed());
    let v = r.entries[0].values;
    assert_eq!(v[0], 0.0);
    for (got, want) in v[1..].iter().zip([5.783, 10.216, 14.682]) {
        assert!((got - want).abs() < 1e-3, "{got} vs {want}");
    }
}

#[test]
fn interval_chain_is_strict() {
    let spectra = all_interval(4);
    let four = FourSpectra::from_slice(&spectra).unwrap();
    assert!(inequality_chain_check(&four, None, 3).unwrap().passed());
}

#[test]
fn chain_uncertainty_can_veto() {
    let dom = DomainDescriptor::Interval { length: 1.0 };
    let make = |kind, v: Vec<f64>, h| Spectrum::new(kind, dom.clone(), v, SpectrumSource::Fd { h }, 1).unwrap();
    let fine = [
        make(ProblemKind::Neumann, vec![0.0], 0.05),
        make(ProblemKind::Dirichlet, vec![1.0], 0.05),
        make(ProblemKind::Clamped, vec![1.1], 0.05),
        make(ProblemKind::Buckling, vec![2.0], 0.05),
    ];
    let coarse = [
        make(ProblemKind::Neumann, vec![0.0], 0.1),
        make(ProblemKind::Dirichlet, vec![1.05], 0.1),
        make(ProblemKind::Clamped, vec![1.2], 0.1),
        make(ProblemKind::Buckling, vec![2.1], 0.1),
    ];
    let f = FourSpectra::from_slice(&fine).unwrap();
    let c = FourSpectra::from_slice(&coarse).unwrap();
    let r = inequality_chain_check(&f, Some(&c), 1).unwrap();
    let e = r.entries[0];
    assert!((e.uncertainty[2] - 0.1).abs() < 1e-12);
    // 1.1 − 1.0 = 0.1 does not exceed 0.05 + 0.1
    assert_eq!(e.strict, [true, false, true]);
    assert!(!r.passed());
}

#[test]
fn chain_rejects_mixed_domains() {
    let mut spectra = all_disk(3);
    spectra[2] = interval_spectrum(&IntervalDomain::new(1.0).unwrap(), ProblemKind::Clamped, 3).unwrap();
    assert!(matches!(FourSpectra::from_slice(&spectra), Err(Error::DomainMismatch(_))));
    assert!(FourSpectra::from_slice(&all_disk(3)[..3]).is_err());
}

#[test]
fn counting_chain_on_disk() {
    let spectra = all_disk(30);
    let four = FourSpectra::from_slice(&spectra).unwrap();
    let r = counting_chain_check(&four, &[0.0, 5.0, 10.0, 15.0, 20.0, 30.0]).unwrap();
    assert!(r.passed());
    assert_eq!(r.points[0].counts, [1, 0, 0, 0]);
}

#[test]
fn counting_chain_reports_violations() {
    let dom = DomainDescriptor::Interval { length: 1.0 };
    let make = |kind, v: Vec<f64>| Spectrum::analytic(kind, dom.clone(), v).unwrap();
    let spectra = [
        make(ProblemKind::Neumann, vec![0.0, 5.0]),
        make(ProblemKind::Dirichlet, vec![1.0, 2.0, 3.0]),
        make(ProblemKind::Clamped, vec![3.0, 6.0]),
        make(ProblemKind::Buckling, vec![4.0, 7.0]),
    ];
    let four = FourSpectra::from_slice(&spectra).unwrap();
    let r = counting_chain_check(&four, &[1.5, 2.5]).unwrap();
    assert_eq!(r.violations, vec![2.5]);
}

#[test]
fn weyl_square_window() {
    let sq = RectDomain::new(1.0, 1.0).unwrap();
    let s = rect_spectrum_up_to(&sq, ProblemKind::Dirichlet, 1e4).unwrap();
    let window = WeylWindow::new(1e3, 1e4).unwrap();
    let fit = weyl_fit(&s, 2, 1.0, &window).unwrap();
    assert!((fit.theoretical - 1.0 / (4.0 * PI)).abs() < 1e-15);
    // A one-term fit absorbs the boundary term −√τ/π: projecting
    // τ/(4π) − √τ/π onto τ over the window predicts 1 − 4∫τ^{3/2}/∫τ².
    let (lo, hi) = (1e3f64, 1e4f64);
    let predicted = 1.0 - 4.0 * ((hi.powf(2.5) - lo.powf(2.5)) / 2.5) / ((hi.powi(3) - lo.powi(3)) / 3.0);
    assert!((fit.ratio - predicted).abs() < 0.005, "ratio {} vs {predicted}", fit.ratio);
    // With the boundary term fitted, the leading coefficient is recovered.
    let two = weyl_two_term_fit(&s, 2, 1.0, 4.0, &window).unwrap();
    assert!((two.ratio - 1.0).abs() < 0.03, "two-term ratio {}", two.ratio);
}

#[test]
fn weyl_interval_closed_form() {
    let s = interval_spectrum(&IntervalDomain::new(1.0).unwrap(), ProblemKind::Dirichlet, 400).unwrap();
    let top = s.max_trusted_value().unwrap();
    let fit = weyl_fit(&s, 1, 1.0, &WeylWindow::new(top / 2.0, top).unwrap()).unwrap();
    assert!((fit.theoretical - 1.0 / PI).abs() < 1e-15);
    assert!((fit.ratio - 1.0).abs() < 0.01);
    // ⌊√τ/π⌋ at a point
    let tau = 1234.5f64;
    let want = (tau.sqrt() / PI).floor() / (tau.sqrt() / PI);
    assert!((weyl_ratio_at(&s, 1, 1.0, tau).unwrap() - want).abs() < 1e-12);
}

#[test]
fn weyl_needs_enough_values() {
    let s = &all_interval(20)[1];
    let r = weyl_fit(s, 1, 1.0, &WeylWindow::new(0.0, 50.0 * PI * PI).unwrap());
    assert!(matches!(r, Err(Error::InsufficientData { points: 7, required: 10 })));
    assert!(WeylWindow::new(5.0, 1.0).is_err());
}

#[test]
fn two_term_signs_and_size() {
    let window = WeylWindow::new(1e3, 1e5).unwrap();
    for (a, b) in [(1.0, 1.0), (1.0, 2.0), (0.7, 1.3)] {
        let r = RectDomain::new(a, b).unwrap();
        let fit = |kind| {
            let s = rect_spectrum_up_to(&r, kind, 1e5).unwrap();
            weyl_two_term_fit(&s, 2, a * b, 2.0 * (a + b), &window).unwrap().second.unwrap()
        };
        let d = fit(ProblemKind::Dirichlet);
        let n = fit(ProblemKind::Neumann);
        assert!(d.fitted < 0.0 && n.fitted > 0.0, "{a}x{b}");
        assert!(d.sign_ok && n.sign_ok);
        let magnitude = 2.0 * (a + b) / (4.0 * PI);
        assert!((d.theoretical + magnitude).abs() < 1e-14);
        assert!(d.relative_error < 0.25 && n.relative_error < 0.25, "{} {}", d.relative_error, n.relative_error);
    }
}

#[test]
fn two_term_rejects_fourth_order_problems() {
    let s = &all_disk(30)[2];
    assert!(weyl_two_term_fit(s, 2, PI, 2.0 * PI, &WeylWindow::new(10.0, 100.0).unwrap()).is_err());
}

#[test]
fn heat_trace_square() {
    let sq = RectDomain::new(1.0, 1.0).unwrap();
    let d = rect_spectrum_up_to(&sq, ProblemKind::Dirichlet, 30000.0).unwrap();
    let n = rect_spectrum_up_to(&sq, ProblemKind::Neumann, 30000.0).unwrap();
    let ts = [0.002, 0.005, 0.01];
    let rd = heat_trace_check(&d, 1.0, 4.0, &ts).unwrap();
    let rn = heat_trace_check(&n, 1.0, 4.0, &ts).unwrap();
    let e = rd.entries[2];
    assert!((e.two_term - (1.0 - (4.0 * PI * 0.01).sqrt())).abs() < 1e-14);
    assert!((e.two_term - 0.6455).abs() < 1e-4);
    assert!(e.deviation_two_term < 0.05);
    // oracle: the square trace factorises into two 1D theta sums
    let theta = |t: f64, start: usize| (start..5000).map(|l| (-t * PI * PI * (l * l) as f64).exp()).sum::<f64>();
    assert!((e.scaled_trace - 4.0 * PI * 0.01 * theta(0.01, 1).powi(2)).abs() < 1e-10);
    let en = rn.entries[2];
    assert!((en.scaled_trace - 4.0 * PI * 0.01 * theta(0.01, 0).powi(2)).abs() < 1e-10);
    assert!(en.scaled_trace > 1.0 && e.scaled_trace < 1.0);
    let dev: Vec<f64> = rd.entries.iter().map(|e| e.deviation_leading).collect();
    assert!(dev[0] < dev[1] && dev[1] < dev[2]);
    assert!(rd.entries.iter().all(|e| e.asymptotic && e.tail < HEAT_TAIL_LIMIT));
}

#[test]
fn heat_trace_large_time_and_truncation() {
    let sq = RectDomain::new(1.0, 1.0).unwrap();
    let n = rect_spectrum(&sq, ProblemKind::Neumann, 50).unwrap();
    let r = heat_trace_check(&n, 1.0, 4.0, &[10.0]).unwrap();
    assert!(!r.entries[0].asymptotic);
    assert!((r.entries[0].scaled_trace - 4.0 * PI * 10.0).abs() < 1e-6);
    assert!(matches!(
        heat_trace_check(&n, 1.0, 4.0, &[0.01]),
        Err(Error::TruncationInsufficient { .. })
    ));
}

#[test]
fn payne_interval_and_disk() {
    let iv = all_interval(5);
    let r = payne_scan(&iv[1], &iv[3], 3).unwrap();
    assert!(r.entries[0].holds);
    assert_eq!(r.first_violation(), Some(2));
    let e = r.entries[1];
    assert!((e.dirichlet_next - 9.0 * PI * PI).abs() < 1e-9);
    assert!((e.buckling - 80.76).abs() < 0.01);

    let disk = all_disk(5);
    let r = payne_scan(&disk[1], &disk[3], 1).unwrap();
    assert!(r.entries[0].holds);
    assert!(r.entries[0].difference.abs() < 1e-9);
    assert!(payne_scan(&disk[3], &disk[1], 1).is_err());
}

#[test]
fn sharpness_disk_and_caps() {
    let disk = all_disk(4);
    let cap = |delta: f64| {
        let c = CapDomain::new(delta, 4000).unwrap();
        (
            cap_spectrum(&c, ProblemKind::Dirichlet, 2).unwrap(),
            cap_spectrum(&c, ProblemKind::Neumann, 2).unwrap(),
        )
    };
    let wide = cap(0.75 * PI);
    let narrow = cap(0.40 * PI);
    let r = sharpness_report(&disk[1], &disk[2], &disk[3], &[(&wide.0, &wide.1), (&narrow.0, &narrow.1)]).unwrap();
    assert_eq!(r.records.len(), 4);
    assert!(r.records[..3].iter().all(|x| x.holds && x.asserted));
    assert!((r.records[1].lhs - 4.610899879049017f64.powi(2)).abs() < 1e-6);
    let obs = &r.records[3];
    assert!(!obs.asserted && !obs.holds);
    assert!(r.passed());
}

fn half_rectangles(h: f64) -> (GridDomain<f64>, Vec<GridDomain<f64>>) {
    let whole = GridDomain::rectangle(1.0, 1.0, h).unwrap();
    let parts = vec![
        GridDomain::rectangle_at(0.0, 0.0, 1.0, 0.5, h).unwrap(),
        GridDomain::rectangle_at(0.0, 0.5, 1.0, 0.5, h).unwrap(),
    ];
    (whole, parts)
}

#[test]
fn decomposition_halves_and_quarters() {
    let o = SolverOptions::default();
    let (whole, halves) = half_rectangles(1.0 / 16.0);
    let r = decomposition_check(&whole, &halves, 6, &o).unwrap();
    assert!(r.passed());
    let quarters: Vec<_> = [(0.0, 0.0), (0.5, 0.0), (0.0, 0.5), (0.5, 0.5)]
        .iter()
        .map(|&(x, y)| GridDomain::rectangle_at(x, y, 0.5, 0.5, 1.0 / 16.0).unwrap())
        .collect();
    let q = decomposition_check(&whole, &quarters, 6, &o).unwrap();
    assert!(q.passed());
    assert!(q.entries[0].gap > 0.1 * q.entries[0].whole);
    // refining the partition raises the merged values
    for (a, b) in r.entries.iter().zip(&q.entries) {
        assert!(b.merged >= a.merged * (1.0 - 1e-9));
    }
}

#[test]
fn decomposition_identity_partition() {
    let whole = GridDomain::<f64>::lshape(1.0, 1.0, 0.5, 1.0 / 12.0).unwrap();
    let r = decomposition_check(&whole, std::slice::from_ref(&whole), 5, &SolverOptions::default()).unwrap();
    assert!(r.passed());
    assert!(r.entries.iter().all(|e| e.gap.abs() <= 1e-8 * e.whole));
}

#[test]
fn decomposition_rejects_bad_partitions() {
    let o = SolverOptions::default();
    let (whole, mut parts) = half_rectangles(1.0 / 16.0);
    parts.push(GridDomain::rectangle_at(0.25, 0.25, 0.5, 0.5, 1.0 / 16.0).unwrap());
    assert!(matches!(decomposition_check(&whole, &parts, 4, &o), Err(Error::Partition(_))));
    let outside = GridDomain::rectangle_at(0.5, 0.5, 1.0, 1.0, 1.0 / 16.0).unwrap();
    assert!(matches!(decomposition_check(&whole, &[outside], 4, &o), Err(Error::Partition(_))));
    let coarse = GridDomain::rectangle(1.0, 0.5, 1.0 / 8.0).unwrap();
    assert!(matches!(decomposition_check(&whole, &[coarse], 4, &o), Err(Error::Partition(_))));
}
