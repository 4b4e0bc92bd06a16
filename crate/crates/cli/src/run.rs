//! Executes one experiment: spectra for every requested kind and mesh width,
//! then the analytics the verb selects.

use std::f64::consts::PI;

use serde::Serialize;
use serde_json::Value;
use speclab::analytic2d::{disk_spectrum, rect_spectrum, rect_spectrum_up_to, DiskDomain, RectDomain};
use speclab::analytics::{
    counting_chain_check, decomposition_check, heat_trace_check, inequality_chain_check, payne_scan, sharpness_report,
    weyl_fit, weyl_two_term_fit, FourSpectra, WeylWindow,
};
use speclab::fdlab::{cap_spectrum, fd_spectrum, interval_fd_spectrum, CapDomain, GridDomain, SolverOptions};
use speclab::interval1d::{interval_spectrum, IntervalDomain};
use speclab::{ProblemKind, Spectrum64};

use crate::config::{Analytic, Backend, DomainSpec, Experiment};
use crate::error::CliError;

/// Which analytics a verb runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Spectrum,
    Verify,
    Weyl,
    Report,
}

impl Verb {
    pub fn name(self) -> &'static str {
        match self {
            Verb::Spectrum => "spectrum",
            Verb::Verify => "verify",
            Verb::Weyl => "weyl",
            Verb::Report => "report",
        }
    }

    fn selects(self, a: &Analytic) -> bool {
        let weyl = matches!(a, Analytic::Weyl { .. } | Analytic::Weyl2 { .. });
        match self {
            Verb::Spectrum => false,
            Verb::Verify => !weyl,
            Verb::Weyl => weyl,
            Verb::Report => true,
        }
    }
}

/// Spectra of every requested kind at one mesh width (`None` for exact ones).
#[derive(Debug, Clone)]
pub struct Level {
    pub h: Option<f64>,
    pub spectra: Vec<Spectrum64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyticOutcome {
    #[serde(rename = "type")]
    pub label: &'static str,
    /// Whether `passed` counts towards the exit status.
    pub asserted: bool,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub report: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub levels: Vec<Level>,
    pub analytics: Vec<AnalyticOutcome>,
    pub error: Option<String>,
}

impl ExperimentResult {
    pub fn status(&self) -> Status {
        if self.error.is_some() || self.analytics.iter().any(|a| a.error.is_some()) {
            Status::Error
        } else if self.analytics.iter().any(|a| a.asserted && !a.passed) {
            Status::Fail
        } else {
            Status::Pass
        }
    }
}

pub fn run_experiment(e: &Experiment, verb: Verb) -> ExperimentResult {
    let selected: Vec<&Analytic> = e.analytics.iter().filter(|a| verb.selects(a)).collect();
    let levels = match compute_levels(e, &selected) {
        Ok(l) => l,
        Err(err) => {
            return ExperimentResult {
                levels: Vec::new(),
                analytics: Vec::new(),
                error: Some(err.to_string()),
            }
        }
    };
    let analytics = selected
        .into_iter()
        .map(|a| match run_analytic(e, &levels, a) {
            Ok((asserted, passed, report)) => AnalyticOutcome {
                label: a.label(),
                asserted,
                passed,
                error: None,
                report,
            },
            Err(err) => AnalyticOutcome {
                label: a.label(),
                asserted: true,
                passed: false,
                error: Some(err.to_string()),
                report: Value::Null,
            },
        })
        .collect();
    ExperimentResult {
        levels,
        analytics,
        error: None,
    }
}

/// Threshold an exact spectrum must reach for the analytics to use it.
fn analytic_reach(selected: &[&Analytic]) -> f64 {
    selected
        .iter()
        .map(|a| match a {
            Analytic::Weyl { window, .. } | Analytic::Weyl2 { window, .. } => window[1],
            // e^{−45} leaves the heat-trace tail far below its limit.
            Analytic::Heat { t, .. } => 45.0 / t.iter().copied().fold(f64::INFINITY, f64::min),
            _ => 0.0,
        })
        .fold(0.0, f64::max)
}

/// Doubles the count until the spectrum passes `reach`.
fn grow(count: usize, reach: f64, make: impl Fn(usize) -> speclab::Result<Spectrum64>) -> speclab::Result<Spectrum64> {
    let mut k = count;
    loop {
        let s = make(k)?;
        if reach <= 0.0 || s.values().last().is_some_and(|&v| v > reach) {
            return Ok(s);
        }
        k *= 2;
    }
}

fn grid_domain(spec: &DomainSpec, h: f64) -> Result<GridDomain<f64>, CliError> {
    Ok(match spec {
        DomainSpec::Rect { a, b } => GridDomain::rectangle(*a, *b, h)?,
        DomainSpec::RectAt { x0, y0, a, b } => GridDomain::rectangle_at(*x0, *y0, *a, *b, h)?,
        DomainSpec::Disk { radius } => GridDomain::disk(*radius, h)?,
        DomainSpec::Lshape { a, b, notch } => GridDomain::lshape(*a, *b, *notch, h)?,
        DomainSpec::Mask { path } => {
            let g: GridDomain<f64> = GridDomain::from_mask_file(path)?;
            if (g.h() - h).abs() > 1e-12 * h {
                return Err(CliError::Runtime(format!(
                    "{} has mesh width {}, expected {h}",
                    path.display(),
                    g.h()
                )));
            }
            g
        }
        DomainSpec::Interval { .. } | DomainSpec::Cap { .. } => {
            return Err(CliError::Runtime("not a planar grid domain".into()))
        }
    })
}

fn compute_levels(e: &Experiment, selected: &[&Analytic]) -> Result<Vec<Level>, CliError> {
    let opts = SolverOptions::default();
    let reach = analytic_reach(selected);
    let per_kind = |f: &dyn Fn(ProblemKind) -> speclab::Result<Spectrum64>| -> Result<Vec<Spectrum64>, CliError> {
        e.kinds.iter().map(|&k| f(k).map_err(CliError::from)).collect()
    };
    match (&e.domain, &e.backend) {
        (DomainSpec::Interval { length }, Backend::Analytic) => {
            let d = IntervalDomain::new(*length)?;
            let spectra = per_kind(&|k| grow(e.count, reach, |n| interval_spectrum(&d, k, n)))?;
            Ok(vec![Level { h: None, spectra }])
        }
        (DomainSpec::Rect { a, b }, Backend::Analytic) => {
            let r = RectDomain::new(*a, *b)?;
            let spectra = per_kind(&|k| {
                let s = rect_spectrum(&r, k, e.count)?;
                if reach <= 0.0 || s.values().last().is_some_and(|&v| v > reach) {
                    Ok(s)
                } else {
                    rect_spectrum_up_to(&r, k, reach)
                }
            })?;
            Ok(vec![Level { h: None, spectra }])
        }
        (DomainSpec::Disk { radius }, Backend::Analytic) => {
            let d = DiskDomain::new(*radius)?;
            let spectra = per_kind(&|k| grow(e.count, reach, |n| disk_spectrum(&d, k, n)))?;
            Ok(vec![Level { h: None, spectra }])
        }
        (DomainSpec::Cap { aperture }, Backend::Cap { points }) => {
            let cap = CapDomain::new(*aperture, *points)?;
            let spectra = per_kind(&|k| cap_spectrum(&cap, k, e.count))?;
            Ok(vec![Level { h: None, spectra }])
        }
        (DomainSpec::Interval { length }, Backend::Fd { h }) => {
            let d = IntervalDomain::new(*length)?;
            h.iter()
                .map(|&h| {
                    let cells = (length / h).round() as usize;
                    let spectra = per_kind(&|k| interval_fd_spectrum(&d, cells, k, e.count, &opts))?;
                    Ok(Level { h: Some(h), spectra })
                })
                .collect()
        }
        (DomainSpec::Mask { path }, Backend::Fd { .. }) => {
            let g = GridDomain::from_mask_file(path)?;
            let spectra = per_kind(&|k| fd_spectrum(&g, k, e.count, &opts))?;
            Ok(vec![Level { h: Some(g.h()), spectra }])
        }
        (spec, Backend::Fd { h }) => h
            .iter()
            .map(|&h| {
                let g = grid_domain(spec, h)?;
                let spectra = per_kind(&|k| fd_spectrum(&g, k, e.count, &opts))?;
                Ok(Level { h: Some(h), spectra })
            })
            .collect(),
        _ => Err(CliError::Runtime("unsupported domain and backend".into())),
    }
}

/// Dimension, volume and boundary measure of the experiment's domain.
fn geometry(e: &Experiment, fine: &Level) -> Result<(u32, f64, f64), CliError> {
    Ok(match &e.domain {
        DomainSpec::Interval { length } => (1, *length, 2.0),
        DomainSpec::Rect { a, b } => (2, a * b, 2.0 * (a + b)),
        DomainSpec::Disk { radius } => (2, PI * radius * radius, 2.0 * PI * radius),
        DomainSpec::Cap { aperture } => (2, 2.0 * PI * (1.0 - aperture.cos()), 2.0 * PI * aperture.sin()),
        DomainSpec::Lshape { a, b, notch } => (2, a * b * (1.0 - notch * notch), 2.0 * (a + b)),
        spec @ (DomainSpec::Mask { .. } | DomainSpec::RectAt { .. }) => {
            let g = grid_domain(spec, fine.h.unwrap_or(0.0))?;
            (2, g.area(), g.perimeter())
        }
    })
}

fn finest(levels: &[Level]) -> (&Level, Option<&Level>) {
    let mut order: Vec<&Level> = levels.iter().collect();
    order.sort_by(|x, y| y.h.unwrap_or(0.0).total_cmp(&x.h.unwrap_or(0.0)));
    let fine = order.pop().expect("at least one level");
    (fine, order.pop())
}

fn spectrum_of(level: &Level, kind: ProblemKind) -> Result<&Spectrum64, CliError> {
    level
        .spectra
        .iter()
        .find(|s| s.kind() == kind)
        .ok_or_else(|| CliError::Runtime(format!("no {kind} spectrum computed")))
}

fn to_value<S: Serialize>(v: &S) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Runtime(e.to_string()))
}

/// Runs one analytic; returns (asserted, passed, report).
fn run_analytic(e: &Experiment, levels: &[Level], a: &Analytic) -> Result<(bool, bool, Value), CliError> {
    let (fine, coarse) = finest(levels);
    match a {
        Analytic::Chain => {
            let f = FourSpectra::from_slice(&fine.spectra)?;
            let c = coarse.map(|c| FourSpectra::from_slice(&c.spectra)).transpose()?;
            let report = inequality_chain_check(&f, c.as_ref(), e.count)?;
            Ok((true, report.passed(), to_value(&report)?))
        }
        Analytic::CountingChain { points } => {
            let f = FourSpectra::from_slice(&fine.spectra)?;
            let top = f
                .in_order()
                .iter()
                .filter_map(|s| s.max_trusted_value())
                .fold(f64::INFINITY, f64::min);
            let taus: Vec<f64> = (1..=*points).map(|i| top * i as f64 / *points as f64).collect();
            let report = counting_chain_check(&f, &taus)?;
            Ok((true, report.passed(), to_value(&report)?))
        }
        Analytic::Weyl { window, tolerance } => {
            let (n, vol, _) = geometry(e, fine)?;
            let w = WeylWindow::new(window[0], window[1])?;
            let fits = fine
                .spectra
                .iter()
                .map(|s| weyl_fit(s, n, vol, &w))
                .collect::<speclab::Result<Vec<_>>>()?;
            let passed = tolerance.is_none_or(|tol| fits.iter().all(|f| (f.ratio - 1.0).abs() <= tol));
            Ok((tolerance.is_some(), passed, to_value(&fits)?))
        }
        Analytic::Weyl2 { window, tolerance } => {
            let (n, vol, boundary) = geometry(e, fine)?;
            let w = WeylWindow::new(window[0], window[1])?;
            let fits = second_order_kinds(fine)?
                .map(|s| weyl_two_term_fit(s, n, vol, boundary, &w))
                .collect::<speclab::Result<Vec<_>>>()?;
            let passed = fits.iter().all(|f| {
                f.second
                    .is_some_and(|s| s.sign_ok && tolerance.is_none_or(|tol| s.relative_error <= tol))
            });
            Ok((true, passed, to_value(&fits)?))
        }
        Analytic::Heat { t, tolerance } => {
            let (_, vol, boundary) = geometry(e, fine)?;
            let reports = second_order_kinds(fine)?
                .map(|s| heat_trace_check(s, vol, boundary, t))
                .collect::<speclab::Result<Vec<_>>>()?;
            let passed = tolerance.is_none_or(|tol| {
                reports
                    .iter()
                    .flat_map(|r| &r.entries)
                    .all(|x| !x.asymptotic || x.deviation_two_term <= tol)
            });
            Ok((tolerance.is_some(), passed, to_value(&reports)?))
        }
        Analytic::Payne => {
            let d = spectrum_of(fine, ProblemKind::Dirichlet)?;
            let b = spectrum_of(fine, ProblemKind::Buckling)?;
            let k = (e.count.min(d.trusted_count()).min(b.trusted_count())).saturating_sub(1).max(1);
            let report = payne_scan(d, b, k)?;
            Ok((false, true, to_value(&report)?))
        }
        Analytic::Decomposition { parts } => {
            let h = fine.h.ok_or_else(|| CliError::Runtime("decomposition needs a mesh width".into()))?;
            let whole = grid_domain(&e.domain, h)?;
            let parts = parts.iter().map(|p| grid_domain(p, h)).collect::<Result<Vec<_>, _>>()?;
            let report = decomposition_check(&whole, &parts, e.count, &SolverOptions::default())?;
            Ok((true, report.passed(), to_value(&report)?))
        }
        Analytic::Sharpness { apertures, points } => {
            let caps = apertures
                .iter()
                .map(|&delta| {
                    let cap = CapDomain::new(delta, *points)?;
                    Ok((
                        cap_spectrum(&cap, ProblemKind::Dirichlet, 1)?,
                        cap_spectrum(&cap, ProblemKind::Neumann, 2)?,
                    ))
                })
                .collect::<speclab::Result<Vec<_>>>()?;
            let pairs: Vec<_> = caps.iter().map(|(d, n)| (d, n)).collect();
            let report = sharpness_report(
                spectrum_of(fine, ProblemKind::Dirichlet)?,
                spectrum_of(fine, ProblemKind::Clamped)?,
                spectrum_of(fine, ProblemKind::Buckling)?,
                &pairs,
            )?;
            Ok((true, report.passed(), to_value(&report)?))
        }
    }
}

/// The Neumann and Dirichlet spectra of a level, which carry a boundary term.
fn second_order_kinds(level: &Level) -> Result<impl Iterator<Item = &Spectrum64>, CliError> {
    let found: Vec<&Spectrum64> = level
        .spectra
        .iter()
        .filter(|s| matches!(s.kind(), ProblemKind::Neumann | ProblemKind::Dirichlet))
        .collect();
    if found.is_empty() {
        return Err(CliError::Runtime("needs a neumann or dirichlet spectrum".into()));
    }
    Ok(found.into_iter())
}
