//! Experiment configuration: one JSON document holding a list of experiments.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use speclab::ProblemKind;

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub experiments: Vec<Experiment>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Experiment {
    pub name: String,
    pub domain: DomainSpec,
    #[serde(default = "all_kinds")]
    pub kinds: Vec<ProblemKind>,
    pub backend: Backend,
    /// Eigenvalues per kind (`K`).
    pub count: usize,
    #[serde(default)]
    pub analytics: Vec<Analytic>,
    /// Subdirectory of `--out` for this experiment's files.
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn all_kinds() -> Vec<ProblemKind> {
    ProblemKind::ALL.to_vec()
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DomainSpec {
    Interval { length: f64 },
    Rect { a: f64, b: f64 },
    Disk { radius: f64 },
    /// Only for part lists of decomposition checks.
    RectAt { x0: f64, y0: f64, a: f64, b: f64 },
    Lshape { a: f64, b: f64, notch: f64 },
    Cap { aperture: f64 },
    Mask { path: PathBuf },
}

impl DomainSpec {
    fn label(&self) -> &'static str {
        match self {
            DomainSpec::Interval { .. } => "interval",
            DomainSpec::Rect { .. } => "rect",
            DomainSpec::Disk { .. } => "disk",
            DomainSpec::RectAt { .. } => "rect-at",
            DomainSpec::Lshape { .. } => "lshape",
            DomainSpec::Cap { .. } => "cap",
            DomainSpec::Mask { .. } => "mask",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Backend {
    Analytic,
    /// Mesh widths, coarse to fine. Mask domains carry their own width and
    /// take an empty list.
    Fd {
        #[serde(default)]
        h: Vec<f64>,
    },
    Cap { points: usize },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Analytic {
    Chain,
    CountingChain {
        #[serde(default = "default_points")]
        points: usize,
    },
    Weyl {
        window: [f64; 2],
        /// Asserts `|ratio − 1| ≤ tolerance` when given.
        #[serde(default)]
        tolerance: Option<f64>,
    },
    Weyl2 {
        window: [f64; 2],
        #[serde(default)]
        tolerance: Option<f64>,
    },
    Heat {
        t: Vec<f64>,
        #[serde(default)]
        tolerance: Option<f64>,
    },
    Payne,
    Decomposition { parts: Vec<DomainSpec> },
    Sharpness {
        #[serde(default)]
        apertures: Vec<f64>,
        #[serde(default = "default_cap_points")]
        points: usize,
    },
}

fn default_points() -> usize {
    50
}

fn default_cap_points() -> usize {
    4000
}

impl Analytic {
    pub fn label(&self) -> &'static str {
        match self {
            Analytic::Chain => "chain",
            Analytic::CountingChain { .. } => "counting-chain",
            Analytic::Weyl { .. } => "weyl",
            Analytic::Weyl2 { .. } => "weyl2",
            Analytic::Heat { .. } => "heat",
            Analytic::Payne => "payne",
            Analytic::Decomposition { .. } => "decomposition",
            Analytic::Sharpness { .. } => "sharpness",
        }
    }
}

pub fn load(path: &Path) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text, path)
}

pub fn parse(text: &str, path: &Path) -> Result<ExperimentConfig, CliError> {
    let config: ExperimentConfig = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    config.validate()?;
    Ok(config)
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let mut names = std::collections::HashSet::new();
        for (i, e) in self.experiments.iter().enumerate() {
            let bad = |message: String| CliError::Invalid {
                experiment: format!("#{} ({})", i + 1, e.name),
                message,
            };
            if e.name.is_empty() || e.name.contains(['/', '\\']) {
                return Err(bad("name must be a nonempty file stem".into()));
            }
            let target = e.output.clone().unwrap_or_default().join(&e.name);
            if !names.insert(target) {
                return Err(bad("two experiments write to the same files".into()));
            }
            if e.kinds.is_empty() {
                return Err(bad("no problem kinds requested".into()));
            }
            if e.count == 0 {
                return Err(bad("count must be at least 1".into()));
            }
            e.validate_backend().map_err(bad)?;
            for a in &e.analytics {
                e.validate_analytic(a).map_err(bad)?;
            }
        }
        Ok(())
    }
}

impl Experiment {
    fn validate_backend(&self) -> Result<(), String> {
        let domain = self.domain.label();
        match (&self.domain, &self.backend) {
            (DomainSpec::RectAt { .. }, _) => Err("rect-at is only valid as a decomposition part".into()),
            (DomainSpec::Rect { .. }, Backend::Analytic) => {
                match self.kinds.iter().find(|k| !matches!(k, ProblemKind::Neumann | ProblemKind::Dirichlet)) {
                    Some(k) => Err(format!("rectangles have no exact {k} spectrum; use the fd backend")),
                    None => Ok(()),
                }
            }
            (DomainSpec::Interval { .. } | DomainSpec::Disk { .. }, Backend::Analytic) => Ok(()),
            (DomainSpec::Cap { .. }, Backend::Cap { points }) => {
                if *points < 2 {
                    return Err("cap backend needs at least 2 points".into());
                }
                match self.kinds.iter().find(|k| !matches!(k, ProblemKind::Neumann | ProblemKind::Dirichlet)) {
                    Some(k) => Err(format!("the cap backend has no {k} problem")),
                    None => Ok(()),
                }
            }
            (DomainSpec::Mask { .. }, Backend::Fd { h }) => {
                if h.is_empty() {
                    Ok(())
                } else {
                    Err("mask domains take their mesh width from the file; leave h empty".into())
                }
            }
            (
                DomainSpec::Interval { .. } | DomainSpec::Rect { .. } | DomainSpec::Disk { .. } | DomainSpec::Lshape { .. },
                Backend::Fd { h },
            ) => {
                if h.is_empty() {
                    return Err("fd backend needs a nonempty h list".into());
                }
                if h.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
                    return Err(format!("mesh widths must be positive, got {h:?}"));
                }
                Ok(())
            }
            (_, backend) => Err(format!("{domain} domains do not support the {} backend", backend_label(backend))),
        }
    }

    fn validate_analytic(&self, a: &Analytic) -> Result<(), String> {
        let four = ProblemKind::ALL.iter().all(|k| self.kinds.contains(k));
        let has = |k: ProblemKind| self.kinds.contains(&k);
        match a {
            Analytic::Chain | Analytic::CountingChain { .. } if !four => {
                Err(format!("{} needs all four problem kinds", a.label()))
            }
            Analytic::CountingChain { points } if *points == 0 => Err("counting-chain needs at least one point".into()),
            Analytic::Weyl { window, .. } | Analytic::Weyl2 { window, .. } if !(window[0] >= 0.0 && window[1] > window[0]) => {
                Err(format!("bad window {window:?}"))
            }
            Analytic::Heat { t, .. } if t.is_empty() || t.iter().any(|v| !(*v > 0.0)) => {
                Err("heat needs a nonempty list of positive times".into())
            }
            Analytic::Payne if !(has(ProblemKind::Dirichlet) && has(ProblemKind::Buckling)) => {
                Err("payne needs the dirichlet and buckling kinds".into())
            }
            Analytic::Payne if self.count < 2 => Err("payne needs count ≥ 2".into()),
            Analytic::Decomposition { parts } => {
                if !matches!(self.backend, Backend::Fd { .. }) {
                    return Err("decomposition needs the fd backend".into());
                }
                if matches!(self.domain, DomainSpec::Interval { .. }) {
                    return Err("decomposition needs a planar grid domain".into());
                }
                if parts.is_empty() {
                    return Err("decomposition needs at least one part".into());
                }
                match parts.iter().find(|p| matches!(p, DomainSpec::Interval { .. } | DomainSpec::Cap { .. })) {
                    Some(p) => Err(format!("{} cannot be a decomposition part", p.label())),
                    None => Ok(()),
                }
            }
            Analytic::Sharpness { apertures, points } => {
                let disk = matches!(self.domain, DomainSpec::Disk { .. }) && self.backend == Backend::Analytic;
                if !disk {
                    return Err("sharpness needs an analytic disk".into());
                }
                if !(has(ProblemKind::Dirichlet) && has(ProblemKind::Clamped) && has(ProblemKind::Buckling)) {
                    return Err("sharpness needs the dirichlet, clamped and buckling kinds".into());
                }
                if self.count < 2 {
                    return Err("sharpness needs count ≥ 2".into());
                }
                if *points < 2 || apertures.iter().any(|d| !(*d > 0.0 && *d < std::f64::consts::PI)) {
                    return Err("cap apertures must lie in (0, π) with at least 2 points".into());
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

fn backend_label(b: &Backend) -> &'static str {
    match b {
        Backend::Analytic => "analytic",
        Backend::Fd { .. } => "fd",
        Backend::Cap { .. } => "cap",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_str(text: &str) -> Result<ExperimentConfig, CliError> {
        parse(text, Path::new("test.json"))
    }

    #[test]
    fn minimal_experiment() {
        let c = parse_str(
            r#"{"experiments": [{"name": "i", "domain": {"type": "interval", "length": 1},
                "backend": {"type": "analytic"}, "count": 3}]}"#,
        )
        .unwrap();
        assert_eq!(c.experiments[0].kinds, ProblemKind::ALL.to_vec());
        assert!(c.experiments[0].analytics.is_empty());
    }

    #[test]
    fn parse_error_has_position() {
        let err = parse_str("{\n  \"experiments\": [\n    {\"name\": 3}\n  ]\n}").unwrap_err();
        match err {
            CliError::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn unknown_fields_rejected() {
        let err = parse_str(r#"{"experiments": [], "extra": 1}"#).unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn unsupported_combinations() {
        let cases = [
            r#"{"name": "a", "domain": {"type": "lshape", "a": 1, "b": 1, "notch": 0.5}, "backend": {"type": "analytic"}, "count": 3}"#,
            r#"{"name": "a", "domain": {"type": "rect", "a": 1, "b": 1}, "backend": {"type": "fd", "h": []}, "count": 3}"#,
            r#"{"name": "a", "domain": {"type": "cap", "aperture": 1}, "kinds": ["clamped"], "backend": {"type": "cap", "points": 100}, "count": 3}"#,
            r#"{"name": "a", "domain": {"type": "rect", "a": 1, "b": 1}, "kinds": ["dirichlet"], "backend": {"type": "analytic"}, "count": 3, "analytics": [{"type": "chain"}]}"#,
            r#"{"name": "a", "domain": {"type": "rect", "a": 1, "b": 1}, "backend": {"type": "analytic"}, "count": 3, "analytics": [{"type": "sharpness"}]}"#,
            r#"{"name": "a/b", "domain": {"type": "rect", "a": 1, "b": 1}, "backend": {"type": "analytic"}, "count": 3}"#,
        ];
        for body in cases {
            let text = format!(r#"{{"experiments": [{body}]}}"#);
            assert!(matches!(parse_str(&text), Err(CliError::Invalid { .. })), "{body}");
        }
    }

    #[test]
    fn duplicate_names_rejected() {
        let one = r#"{"name": "a", "domain": {"type": "disk", "radius": 1}, "backend": {"type": "analytic"}, "count": 3}"#;
        let text = format!(r#"{{"experiments": [{one}, {one}]}}"#);
        assert!(matches!(parse_str(&text), Err(CliError::Invalid { .. })));
    }
}
