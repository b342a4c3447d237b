//! Run configuration files.
//!
//! One `key = value` pair per line; `#` starts a comment. Keys:
//!
//! ```text
//! name         = free text label used in the summary line
//! plate        = sigma <σ> | sigma * | graphene | pe | pm | delta <λe> <λg> | transparent
//! gaps         = <g1> <g2> ...          (default: all 1)
//! method       = auto | polylog | quadrature | ideal
//! sweep        = log|linear <start> <stop> <points>
//! shared_sigma = true | false
//! rel_tol      = <x>
//! abs_tol      = <x>
//! output       = <path>
//! ```
//!
//! `plate` lines are ordered and repeatable; every other key may appear once.
//! `sigma *` marks a slot that takes the sweep value.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use casimir_core::{
    linear_grid, log_grid, Material, MethodChoice, QuadratureSpec, Slot, StackSpec, StackTemplate,
};

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub field: String,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, field: &str, message: impl Into<String>) -> Self {
        ConfigError {
            line: Some(line),
            field: field.to_string(),
            message: message.into(),
        }
    }

    fn global(field: &str, message: impl Into<String>) -> Self {
        ConfigError {
            line: None,
            field: field.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}, field '{}': {}", self.field, self.message),
            None => write!(f, "field '{}': {}", self.field, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlateSpec {
    Sigma(f64),
    FreeSigma,
    Graphene,
    PerfectElectric,
    PerfectMagnetic,
    Delta { lambda_e: f64, lambda_g: f64 },
    Transparent,
}

impl PlateSpec {
    fn slot(self) -> Result<Slot, String> {
        let m = match self {
            PlateSpec::FreeSigma => return Ok(Slot::FreeSigma),
            PlateSpec::Sigma(s) => Material::conductivity(s).map_err(|e| e.to_string())?,
            PlateSpec::Graphene => Material::graphene(),
            PlateSpec::PerfectElectric => Material::PerfectElectric,
            PlateSpec::PerfectMagnetic => Material::PerfectMagnetic,
            PlateSpec::Delta { lambda_e, lambda_g } => {
                Material::delta_plate(lambda_e, lambda_g).map_err(|e| e.to_string())?
            }
            PlateSpec::Transparent => Material::Transparent,
        };
        Ok(Slot::Fixed(m))
    }
}

impl fmt::Display for PlateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlateSpec::Sigma(s) => write!(f, "sigma {s:?}"),
            PlateSpec::FreeSigma => f.write_str("sigma *"),
            PlateSpec::Graphene => f.write_str("graphene"),
            PlateSpec::PerfectElectric => f.write_str("pe"),
            PlateSpec::PerfectMagnetic => f.write_str("pm"),
            PlateSpec::Delta { lambda_e, lambda_g } => write!(f, "delta {lambda_e:?} {lambda_g:?}"),
            PlateSpec::Transparent => f.write_str("transparent"),
        }
    }
}

impl FromStr for PlateSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let words: Vec<&str> = s.split_whitespace().collect();
        match words.as_slice() {
            ["sigma", "*"] => Ok(PlateSpec::FreeSigma),
            ["sigma", v] => {
                let sigma = number(v)?;
                if sigma < 0.0 {
                    return Err(format!("conductivity must be non-negative, got {sigma}"));
                }
                Ok(PlateSpec::Sigma(sigma))
            }
            ["graphene"] => Ok(PlateSpec::Graphene),
            ["pe"] => Ok(PlateSpec::PerfectElectric),
            ["pm"] => Ok(PlateSpec::PerfectMagnetic),
            ["delta", e, g] => {
                let (lambda_e, lambda_g) = (number(e)?, number(g)?);
                if lambda_e < 0.0 || lambda_g < 0.0 {
                    return Err(format!("delta-plate couplings must be non-negative, got {lambda_e} {lambda_g}"));
                }
                Ok(PlateSpec::Delta { lambda_e, lambda_g })
            }
            ["transparent"] => Ok(PlateSpec::Transparent),
            _ => Err(format!(
                "expected sigma <v>, sigma *, graphene, pe, pm, delta <le> <lg> or transparent, got '{s}'"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub kind: GridKind,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SweepSpec {
    pub fn grid(&self) -> Result<Vec<f64>, String> {
        match self.kind {
            GridKind::Log => log_grid(self.start, self.stop, self.points),
            GridKind::Linear => linear_grid(self.start, self.stop, self.points),
        }
        .map_err(|e| e.to_string())
    }
}

impl fmt::Display for SweepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            GridKind::Log => "log",
            GridKind::Linear => "linear",
        };
        write!(f, "{kind} {:?} {:?} {}", self.start, self.stop, self.points)
    }
}

impl FromStr for SweepSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let [kind, start, stop, points] = words.as_slice() else {
            return Err(format!("expected 'log|linear <start> <stop> <points>', got '{s}'"));
        };
        let kind = match *kind {
            "log" => GridKind::Log,
            "linear" => GridKind::Linear,
            other => return Err(format!("grid kind must be log or linear, got '{other}'")),
        };
        let points = points
            .parse()
            .map_err(|_| format!("point count must be a positive integer, got '{points}'"))?;
        let sweep = SweepSpec {
            kind,
            start: number(start)?,
            stop: number(stop)?,
            points,
        };
        sweep.grid()?;
        Ok(sweep)
    }
}

fn number(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("expected a finite number, got '{s}'")),
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub name: Option<String>,
    pub plates: Vec<PlateSpec>,
    pub gaps: Option<Vec<f64>>,
    pub method: MethodChoice,
    pub sweep: Option<SweepSpec>,
    pub shared_sigma: bool,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub output: Option<PathBuf>,
}

/// What a validated config asks for.
#[derive(Debug, Clone)]
pub enum Job {
    Single(StackSpec),
    Sweep { template: StackTemplate, grid: Vec<f64> },
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut config = RunConfig::default();
        let mut seen: Vec<String> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::at(line, content, "expected 'key = value'"));
            };
            let (key, value) = (key.trim(), value.trim());
            if key != "plate" {
                if seen.iter().any(|k| k == key) {
                    return Err(ConfigError::at(line, key, "key given more than once"));
                }
                seen.push(key.to_string());
            }
            let err = |m: String| ConfigError::at(line, key, m);
            match key {
                "name" => config.name = Some(value.to_string()),
                "plate" => config.plates.push(value.parse().map_err(err)?),
                "gaps" => {
                    let gaps = value
                        .split_whitespace()
                        .map(number)
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(err)?;
                    if gaps.is_empty() || gaps.iter().any(|g| *g <= 0.0) {
                        return Err(ConfigError::at(line, key, "gaps must be a non-empty list of positive numbers"));
                    }
                    config.gaps = Some(gaps);
                }
                "method" => config.method = value.parse().map_err(err)?,
                "sweep" => config.sweep = Some(value.parse().map_err(err)?),
                "shared_sigma" => {
                    config.shared_sigma = match value {
                        "true" => true,
                        "false" => false,
                        other => return Err(err(format!("expected true or false, got '{other}'"))),
                    }
                }
                "rel_tol" | "abs_tol" => {
                    let v = number(value).map_err(err)?;
                    if v <= 0.0 {
                        return Err(err(format!("tolerance must be positive, got {v}")));
                    }
                    if key == "rel_tol" {
                        config.rel_tol = Some(v);
                    } else {
                        config.abs_tol = Some(v);
                    }
                }
                "output" => {
                    if value.is_empty() {
                        return Err(err("empty output path".into()));
                    }
                    config.output = Some(PathBuf::from(value));
                }
                other => return Err(ConfigError::at(line, other, "unknown key")),
            }
        }
        Ok(config)
    }

    /// Text that [`RunConfig::parse`] maps back to `self`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out += &format!("name = {name}\n");
        }
        for p in &self.plates {
            out += &format!("plate = {p}\n");
        }
        if let Some(gaps) = &self.gaps {
            let list: Vec<String> = gaps.iter().map(|g| format!("{g:?}")).collect();
            out += &format!("gaps = {}\n", list.join(" "));
        }
        out += &format!("method = {}\n", self.method);
        if let Some(sweep) = &self.sweep {
            out += &format!("sweep = {sweep}\n");
        }
        if self.shared_sigma {
            out += "shared_sigma = true\n";
        }
        if let Some(v) = self.rel_tol {
            out += &format!("rel_tol = {v:?}\n");
        }
        if let Some(v) = self.abs_tol {
            out += &format!("abs_tol = {v:?}\n");
        }
        if let Some(path) = &self.output {
            out += &format!("output = {}\n", path.display());
        }
        out
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| {
            let plates: Vec<String> = self.plates.iter().map(PlateSpec::to_string).collect();
            format!("[{}]", plates.join(", "))
        })
    }

    pub fn quadrature_spec(&self) -> Result<QuadratureSpec, ConfigError> {
        let default = QuadratureSpec::default();
        QuadratureSpec::new(
            self.rel_tol.unwrap_or(default.rel_tol),
            self.abs_tol.unwrap_or(default.abs_tol),
            default.max_subdivisions,
        )
        .map_err(|e| ConfigError::global("rel_tol", e.to_string()))
    }

    /// Check the cross-field rules and build the stack or sweep template.
    pub fn job(&self) -> Result<Job, ConfigError> {
        if self.plates.len() < 2 {
            return Err(ConfigError::global("plate", format!("need at least two plates, got {}", self.plates.len())));
        }
        let free = self.plates.iter().filter(|p| **p == PlateSpec::FreeSigma).count();
        let gaps = self
            .gaps
            .clone()
            .unwrap_or_else(|| vec![1.0; self.plates.len() - 1]);
        if gaps.len() != self.plates.len() - 1 {
            return Err(ConfigError::global(
                "gaps",
                format!("{} plates need {} gaps, got {}", self.plates.len(), self.plates.len() - 1, gaps.len()),
            ));
        }
        let slots = self
            .plates
            .iter()
            .map(|p| p.slot())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|m| ConfigError::global("plate", m))?;
        match (&self.sweep, free) {
            (None, 0) => {
                let plates = slots
                    .into_iter()
                    .map(|s| match s {
                        Slot::Fixed(m) => m,
                        Slot::FreeSigma => unreachable!("no free slots"),
                    })
                    .collect();
                let stack = StackSpec::new(plates, gaps).map_err(|e| ConfigError::global("plate", e.to_string()))?;
                if self.method == MethodChoice::Ideal && !stack.is_all_ideal() {
                    return Err(ConfigError::global("method", "ideal requires every plate to be pe or pm"));
                }
                Ok(Job::Single(stack))
            }
            (None, _) => Err(ConfigError::global("sweep", "'sigma *' plates need a sweep line")),
            (Some(_), 0) => Err(ConfigError::global("sweep", "sweep needs at least one 'sigma *' plate")),
            (Some(_), n) if n > 1 && !self.shared_sigma => Err(ConfigError::global(
                "shared_sigma",
                format!("{n} 'sigma *' plates need shared_sigma = true"),
            )),
            (Some(_), _) if self.method == MethodChoice::Ideal => Err(ConfigError::global(
                "method",
                "ideal requires every plate to be pe or pm, which leaves nothing to sweep",
            )),
            (Some(sweep), _) => {
                let grid = sweep.grid().map_err(|m| ConfigError::global("sweep", m))?;
                let template =
                    StackTemplate::new(slots, gaps).map_err(|e| ConfigError::global("plate", e.to_string()))?;
                Ok(Job::Sweep { template, grid })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_key() {
        let text = "\
# sample
name = demo
plate = pm
plate = sigma *   # swept
plate = sigma *
gaps = 1 0.5
method = polylog
sweep = log 0.01 1000 7
shared_sigma = true
rel_tol = 1e-8
abs_tol = 1e-13
output = out.csv
";
        let c = RunConfig::parse(text).unwrap();
        assert_eq!(c.name.as_deref(), Some("demo"));
        assert_eq!(c.plates, vec![PlateSpec::PerfectMagnetic, PlateSpec::FreeSigma, PlateSpec::FreeSigma]);
        assert_eq!(c.gaps, Some(vec![1.0, 0.5]));
        assert_eq!(c.method, MethodChoice::Polylog);
        assert_eq!(c.sweep.unwrap().points, 7);
        assert!(c.shared_sigma);
        assert_eq!(c.rel_tol, Some(1e-8));
        assert_eq!(c.output, Some(PathBuf::from("out.csv")));
        assert_eq!(RunConfig::parse(&c.to_text()).unwrap(), c);
        assert!(matches!(c.job().unwrap(), Job::Sweep { ref grid, .. } if grid.len() == 7));
    }

    #[test]
    fn errors_carry_line_and_field() {
        let e = RunConfig::parse("plate = pe\nplate = copper\n").unwrap_err();
        assert_eq!((e.line, e.field.as_str()), (Some(2), "plate"));
        let e = RunConfig::parse("method = fast").unwrap_err();
        assert_eq!((e.line, e.field.as_str()), (Some(1), "method"));
        let e = RunConfig::parse("plate = pe\nspeed = 3").unwrap_err();
        assert_eq!(e.field, "speed");
        let e = RunConfig::parse("rel_tol = 1e-9\nrel_tol = 1e-8").unwrap_err();
        assert_eq!(e.line, Some(2));
        assert!(RunConfig::parse("sweep = log 0 10 5").is_err());
        assert!(RunConfig::parse("gaps = 1 -1").is_err());
        assert!(RunConfig::parse("plate = sigma -2").is_err());
        assert!(RunConfig::parse("just words").is_err());
    }

    #[test]
    fn cross_field_rules() {
        let job = |t: &str| RunConfig::parse(t).unwrap().job();
        assert!(job("plate = pe").is_err());
        assert!(job("plate = pe\nplate = sigma *").is_err());
        assert!(job("plate = pe\nplate = pe\nsweep = log 1 10 3").is_err());
        assert!(job("plate = sigma *\nplate = sigma *\nsweep = log 1 10 3").is_err());
        assert!(job("plate = sigma *\nplate = sigma *\nsweep = log 1 10 3\nshared_sigma = true").is_ok());
        assert!(job("plate = pe\nplate = graphene\nmethod = ideal").is_err());
        assert!(job("plate = pe\nplate = pm\nmethod = ideal").is_ok());
        assert!(job("plate = pe\nplate = pm\ngaps = 1 1").is_err());
        assert!(job("plate = pe\nplate = sigma *\nmethod = ideal\nsweep = log 1 10 3").is_err());
    }
}
