//! Line-oriented `key = value` run configuration with `[section]` headers.
//!
//! The format is hand-editable and diff-friendly: `#` starts a comment,
//! blank lines are ignored, `[run]` and `[eos]` hold scalars, and repeated
//! `[branch]` / `[segment]` sections list eos pieces in order. Unknown
//! sections and keys are rejected. The full grammar ships in
//! `docs/config.md`.

use crate::analysis::Plane;
use crate::eos_barotropic::BarotropicEos;
use crate::eos_ideal::{BranchKind, BranchSpec, Param, PiecewiseIdealEos};
use crate::error::{EosError, PolarError};
use crate::scenarios::ScenarioModel;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Eos(#[from] EosError),

    #[error(transparent)]
    Polar(#[from] PolarError),
}

/// Which analyses a run performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Analyses {
    pub convexity: bool,
    pub critical: bool,
    pub sonic: bool,
    pub residuals: bool,
}

impl Default for Analyses {
    fn default() -> Self {
        Analyses { convexity: true, critical: true, sonic: true, residuals: true }
    }
}

/// Which artifacts a run writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutputKind {
    pub csv: bool,
    pub svg: bool,
    pub report: bool,
}

impl Default for OutputKind {
    fn default() -> Self {
        OutputKind { csv: true, svg: false, report: true }
    }
}

/// A validated polar run: model + upstream + sampling + requested outputs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ScenarioModel,
    pub m0: f64,
    pub n: usize,
    pub plane: Plane,
    pub analyses: Analyses,
    pub outputs: OutputKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Run,
    Eos,
    Branch(usize),
    Segment(usize),
}

#[derive(Debug, Default, Clone)]
struct RawBranch {
    kind: Option<String>,
    t_hi: Option<f64>,
    cv: Option<Param>,
    c: Option<Param>,
    line: usize,
}

#[derive(Debug, Default, Clone)]
struct RawSegment {
    gamma: Option<f64>,
    v_hi: Option<f64>,
    line: usize,
}

/// Parse and validate a run configuration.
pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
    let mut section = Section::None;
    let mut model: Option<String> = None;
    let mut m0: Option<f64> = None;
    let mut n: usize = 512;
    let mut plane = Plane::U;
    let mut analyses = Analyses::default();
    let mut outputs = OutputKind::default();

    let mut gamma: Option<f64> = None;
    let mut t0: f64 = 1.0;
    let mut t_min: f64 = 0.5;
    let mut c0_sq: f64 = 1.0;
    let mut v_min: f64 = 1e-6;
    let mut branches: Vec<RawBranch> = Vec::new();
    let mut segments: Vec<RawSegment> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| ConfigError::Parse { line: line_no, message };

        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| err("unterminated section header".to_string()))?
                .trim();
            section = match name {
                "run" => Section::Run,
                "eos" => Section::Eos,
                "branch" => {
                    branches.push(RawBranch { line: line_no, ..RawBranch::default() });
                    Section::Branch(branches.len() - 1)
                }
                "segment" => {
                    segments.push(RawSegment { line: line_no, ..RawSegment::default() });
                    Section::Segment(segments.len() - 1)
                }
                other => return Err(err(format!("unknown section [{other}]"))),
            };
            continue;
        }

        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err("expected `key = value`".to_string()))?;
        let key = key.trim();
        let value = value.trim();
        let num = |v: &str| -> Result<f64, ConfigError> {
            v.parse::<f64>().map_err(|_| ConfigError::Parse {
                line: line_no,
                message: format!("`{v}` is not a number"),
            })
        };
        let param = |v: &str| -> Result<Param, ConfigError> {
            if v == "match" {
                Ok(Param::Match)
            } else {
                num(v).map(Param::Value)
            }
        };

        match section {
            Section::None => return Err(err(format!("key `{key}` outside any section"))),
            Section::Run => match key {
                "model" => model = Some(value.to_string()),
                "m0" => m0 = Some(num(value)?),
                "n" => {
                    n = value.parse::<usize>().map_err(|_| ConfigError::Parse {
                        line: line_no,
                        message: format!("`{value}` is not a sample count"),
                    })?
                }
                "plane" => {
                    plane = match value {
                        "u" => Plane::U,
                        "j" => Plane::J,
                        other => return Err(err(format!("plane must be `u` or `j`, got `{other}`"))),
                    }
                }
                "analyses" => analyses = parse_analyses(value).map_err(err)?,
                "outputs" => outputs = parse_outputs(value).map_err(err)?,
                other => return Err(err(format!("unknown key `{other}` in [run]"))),
            },
            Section::Eos => match key {
                "gamma" => gamma = Some(num(value)?),
                "t0" => t0 = num(value)?,
                "t_min" => t_min = num(value)?,
                "c0_sq" => c0_sq = num(value)?,
                "v_min" => v_min = num(value)?,
                other => return Err(err(format!("unknown key `{other}` in [eos]"))),
            },
            Section::Branch(i) => {
                let b = &mut branches[i];
                match key {
                    "kind" => b.kind = Some(value.to_string()),
                    "t_hi" => b.t_hi = Some(num(value)?),
                    "cv" => b.cv = Some(param(value)?),
                    "c" => b.c = Some(param(value)?),
                    other => return Err(err(format!("unknown key `{other}` in [branch]"))),
                }
            }
            Section::Segment(i) => {
                let s = &mut segments[i];
                match key {
                    "gamma" => s.gamma = Some(num(value)?),
                    "v_hi" => s.v_hi = Some(num(value)?),
                    other => return Err(err(format!("unknown key `{other}` in [segment]"))),
                }
            }
        }
    }

    let model = model.ok_or_else(|| ConfigError::Invalid("missing `model` in [run]".into()))?;
    let m0 = m0.ok_or_else(|| ConfigError::Invalid("missing `m0` in [run]".into()))?;
    if !(m0 > 1.0) {
        return Err(ConfigError::Polar(PolarError::SubsonicUpstream(m0)));
    }
    if n < 16 {
        return Err(ConfigError::Polar(PolarError::TooFewSamples { min: 16, got: n }));
    }

    let model = match model.as_str() {
        "euler-polytropic" => {
            let gamma =
                gamma.ok_or_else(|| ConfigError::Invalid("euler-polytropic needs `gamma` in [eos]".into()))?;
            if !(gamma > -1.0) {
                return Err(ConfigError::Polar(PolarError::GammaOutOfRange(gamma)));
            }
            if !branches.is_empty() || !segments.is_empty() {
                return Err(ConfigError::Invalid(
                    "euler-polytropic takes no [branch]/[segment] sections".into(),
                ));
            }
            ScenarioModel::EulerPolytropic { gamma }
        }
        "euler-ideal" => {
            if branches.is_empty() {
                return Err(ConfigError::Invalid("euler-ideal needs at least one [branch]".into()));
            }
            let specs = branches
                .iter()
                .map(raw_branch_to_spec)
                .collect::<Result<Vec<_>, _>>()?;
            let eos = PiecewiseIdealEos::new(1.0, t_min, &specs, t0, 0.0)?;
            ScenarioModel::EulerIdeal { eos }
        }
        "potential" => {
            if segments.is_empty() {
                return Err(ConfigError::Invalid("potential needs at least one [segment]".into()));
            }
            let mut specs = Vec::with_capacity(segments.len());
            for s in &segments {
                let gamma = s.gamma.ok_or(ConfigError::Parse {
                    line: s.line,
                    message: "segment needs `gamma`".into(),
                })?;
                let v_hi = s.v_hi.ok_or(ConfigError::Parse {
                    line: s.line,
                    message: "segment needs `v_hi`".into(),
                })?;
                specs.push((gamma, v_hi));
            }
            let eos = BarotropicEos::new(v_min, &specs, c0_sq)?;
            ScenarioModel::Potential { eos }
        }
        other => {
            return Err(ConfigError::Invalid(format!(
                "unknown model `{other}` (expected euler-polytropic, euler-ideal, or potential)"
            )))
        }
    };

    Ok(RunConfig { model, m0, n, plane, analyses, outputs })
}

fn raw_branch_to_spec(b: &RawBranch) -> Result<BranchSpec, ConfigError> {
    let fail = |message: String| ConfigError::Parse { line: b.line, message };
    let kind = match b.kind.as_deref() {
        Some("polytropic") => BranchKind::Polytropic,
        Some("constant-sound-speed") => BranchKind::ConstantSoundSpeed,
        Some("borderline-convex") => BranchKind::BorderlineConvex,
        Some(other) => return Err(fail(format!("unknown branch kind `{other}`"))),
        None => return Err(fail("branch needs `kind`".into())),
    };
    let t_hi = b.t_hi.ok_or_else(|| fail("branch needs `t_hi`".into()))?;
    let param = match kind {
        BranchKind::Polytropic => {
            if b.c.is_some() {
                return Err(fail("polytropic branch takes `cv`, not `c`".into()));
            }
            b.cv.ok_or_else(|| fail("polytropic branch needs `cv`".into()))?
        }
        BranchKind::ConstantSoundSpeed | BranchKind::BorderlineConvex => {
            if b.cv.is_some() {
                return Err(fail("this branch kind takes `c`, not `cv`".into()));
            }
            b.c.ok_or_else(|| fail("branch needs `c`".into()))?
        }
    };
    Ok(BranchSpec { kind, t_hi, param })
}

fn parse_analyses(value: &str) -> Result<Analyses, String> {
    if value == "all" {
        return Ok(Analyses::default());
    }
    let mut a = Analyses { convexity: false, critical: false, sonic: false, residuals: false };
    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item {
            "convexity" => a.convexity = true,
            "critical" => a.critical = true,
            "sonic" => a.sonic = true,
            "residuals" => a.residuals = true,
            other => return Err(format!("unknown analysis `{other}`")),
        }
    }
    Ok(a)
}

fn parse_outputs(value: &str) -> Result<OutputKind, String> {
    let mut o = OutputKind { csv: false, svg: false, report: false };
    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item {
            "csv" => o.csv = true,
            "svg" => o.svg = true,
            "report" => o.report = true,
            other => return Err(format!("unknown output `{other}`")),
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1: &str = "\
# baseline polar
[run]
model = euler-polytropic
m0 = 1.3

[eos]
gamma = 1.4
";

    #[test]
    fn parses_baseline_config() {
        let cfg = parse(FIG1).unwrap();
        assert_eq!(cfg.m0, 1.3);
        assert_eq!(cfg.n, 512);
        assert!(matches!(cfg.model, ScenarioModel::EulerPolytropic { gamma } if gamma == 1.4));
    }

    #[test]
    fn rejects_unknown_keys_and_sections() {
        let bad_key = FIG1.replace("m0 = 1.3", "m0 = 1.3\nwhatever = 3");
        assert!(matches!(parse(&bad_key), Err(ConfigError::Parse { .. })));
        assert!(parse("[nope]\n").is_err());
        assert!(parse("m0 = 1.3\n").is_err()); // key before any section
    }

    #[test]
    fn rejects_subsonic_and_invalid_gamma() {
        let subsonic = FIG1.replace("m0 = 1.3", "m0 = 0.9");
        let err = parse(&subsonic).unwrap_err();
        assert!(err.to_string().contains("must exceed 1"), "{err}");
        let bad_gamma = FIG1.replace("gamma = 1.4", "gamma = -1.0");
        assert!(parse(&bad_gamma).is_err());
    }

    #[test]
    fn parses_ideal_branches_with_match() {
        let text = "\
[run]
model = euler-ideal
m0 = 5
n = 128

[eos]
t0 = 1.0
t_min = 0.5

[branch]
kind = polytropic
t_hi = 10.3
cv = 1.5

[branch]
kind = constant-sound-speed
t_hi = 10.815
c = match

[branch]
kind = polytropic
t_hi = 100
cv = match
";
        let cfg = parse(text).unwrap();
        let ScenarioModel::EulerIdeal { eos } = &cfg.model else { panic!() };
        assert_eq!(eos.branches().len(), 3);
        assert_eq!(cfg.n, 128);
    }

    #[test]
    fn parses_potential_segments() {
        let text = "\
[run]
model = potential
m0 = 2
plane = u
analyses = convexity,critical
outputs = csv,svg,report

[eos]
v_min = 1e-9

[segment]
gamma = 1.6666666666666667
v_hi = 0.019

[segment]
gamma = -0.75
v_hi = 1.2
";
        let cfg = parse(text).unwrap();
        let ScenarioModel::Potential { eos } = &cfg.model else { panic!() };
        assert_eq!(eos.segments().len(), 2);
        assert!(cfg.outputs.svg);
        assert!(cfg.analyses.convexity && cfg.analyses.critical);
        assert!(!cfg.analyses.sonic);
    }

    #[test]
    fn branch_param_key_mismatch_is_rejected() {
        let text = "\
[run]
model = euler-ideal
m0 = 2

[branch]
kind = polytropic
t_hi = 4
c = 1.5
";
        assert!(parse(text).is_err());
    }
}
