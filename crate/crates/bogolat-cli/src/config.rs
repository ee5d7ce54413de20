//! Scenario configuration: one JSON document describes a lattice, its
//! boundary treatment, and how to integrate it. Numeric fields accept JSON
//! numbers or strings; under the rational backend both are parsed exactly
//! (`"1/3"`, `"0.1"` and `0.1` all mean the printed decimal, not its binary
//! rounding).

use std::path::Path;

use bogolat::{Boundary, Family, LatticeState, Scalar};
use serde::Deserialize;

use crate::CliError;

#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum NumberOrString {
    Num(serde_json::Number),
    Str(String),
}

impl NumberOrString {
    pub fn parse<K: Scalar>(&self) -> bogolat::Result<K> {
        match self {
            NumberOrString::Num(n) => K::parse_number(&n.to_string()),
            NumberOrString::Str(s) => K::parse_number(s),
        }
    }
}

#[derive(Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum FamilyChoice {
    /// Rates driven by products of neighbours.
    Product,
    /// Rates driven by sums of neighbours.
    Sum,
}

impl FamilyChoice {
    pub fn family(self) -> Family {
        match self {
            FamilyChoice::Product => Family::A,
            FamilyChoice::Sum => Family::B,
        }
    }
}

/// `{"finite": N}` — open-end lattice with coefficients `0..=N`;
/// `{"window": W}` — truncation window of `W` coefficients standing in for
/// a semi-infinite lattice.
#[derive(Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum SizeSpec {
    Finite(usize),
    Window(usize),
}

impl SizeSpec {
    pub fn count(self) -> usize {
        match self {
            SizeSpec::Finite(n) => n + 1,
            SizeSpec::Window(w) => w,
        }
    }

    pub fn boundary(self) -> Boundary {
        match self {
            SizeSpec::Finite(_) => Boundary::OpenEnd,
            SizeSpec::Window(_) => Boundary::TruncatedSemiInfinite,
        }
    }
}

/// Either the full coefficient vector or a constant to broadcast.
#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum InitialData {
    Values(Vec<NumberOrString>),
    Constant { constant: NumberOrString },
}

#[derive(Deserialize, Clone, Copy, Debug, Default, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    Series,
    Rk4,
    #[default]
    Both,
}

#[derive(Deserialize, Clone, Copy, Debug, Default, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum BackendChoice {
    #[default]
    Rational,
    Float,
}

fn default_t_end() -> NumberOrString {
    NumberOrString::Str("0.1".to_string())
}

fn default_dt() -> f64 {
    1e-3
}

fn default_terms() -> usize {
    60
}

fn default_tail() -> f64 {
    1e-14
}

fn default_points() -> usize {
    10
}

#[derive(Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub family: FamilyChoice,
    pub p: usize,
    pub size: SizeSpec,
    pub initial: InitialData,
    /// Integration horizon (exact under the rational backend).
    #[serde(default = "default_t_end")]
    pub t_end: NumberOrString,
    /// Direct-integration step.
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default)]
    pub method: MethodChoice,
    #[serde(default)]
    pub backend: BackendChoice,
    /// Cap on Taylor terms per moment series (env `BOGOLAT_MAX_TERMS`
    /// overrides).
    #[serde(default = "default_terms")]
    pub series_terms_max: usize,
    #[serde(default = "default_tail")]
    pub series_tail_tol: f64,
    /// How many leading coefficients the series route reconstructs
    /// (default: all for finite lattices, the certified maximum for
    /// windows).
    #[serde(default)]
    pub depth: Option<usize>,
    /// Number of output times after t = 0.
    #[serde(default = "default_points")]
    pub output_points: usize,
    /// Moment depth recorded in moments.csv.
    #[serde(default)]
    pub moment_depth: Option<usize>,
    /// Leading-coefficient seeds for the inverse transformation (`p - 1`
    /// values).
    #[serde(default)]
    pub seeds: Option<Vec<NumberOrString>>,
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read {}: {e}", path.display()))
        })?;
        let cfg: ScenarioConfig = serde_json::from_str(&text).map_err(|e| {
            CliError::Config(format!("cannot parse {}: {e}", path.display()))
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.p < 1 {
            return Err(CliError::Config("p must be at least 1".to_string()));
        }
        if self.size.count() == 0 {
            return Err(CliError::Config("lattice must have coefficients".to_string()));
        }
        if self.output_points == 0 {
            return Err(CliError::Config("output_points must be positive".to_string()));
        }
        if !(self.dt > 0.0) {
            return Err(CliError::Config(format!("dt must be positive, got {}", self.dt)));
        }
        if let InitialData::Values(v) = &self.initial {
            if v.len() != self.size.count() {
                return Err(CliError::Config(format!(
                    "initial data has {} values but the size spec implies {}",
                    v.len(),
                    self.size.count()
                )));
            }
        }
        if let Some(s) = &self.seeds {
            if s.len() != self.p - 1 {
                return Err(CliError::Config(format!(
                    "order-{} inverse seeds need {} values, got {}",
                    self.p,
                    self.p - 1,
                    s.len()
                )));
            }
        }
        Ok(())
    }

    pub fn initial_values<K: Scalar>(&self) -> bogolat::Result<Vec<K>> {
        match &self.initial {
            InitialData::Values(v) => v.iter().map(|x| x.parse()).collect(),
            InitialData::Constant { constant } => {
                let c: K = constant.parse()?;
                Ok(vec![c; self.size.count()])
            }
        }
    }

    pub fn state<K: Scalar>(&self) -> bogolat::Result<LatticeState<K>> {
        LatticeState::new(
            self.family.family(),
            self.p,
            self.initial_values()?,
            self.size.boundary(),
        )
    }

    pub fn seed_values<K: Scalar>(&self) -> bogolat::Result<Option<Vec<K>>> {
        match &self.seeds {
            None => Ok(None),
            Some(s) => Ok(Some(s.iter().map(|x| x.parse()).collect::<bogolat::Result<_>>()?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bogolat::BigRational;

    #[test]
    fn minimal_config_parses_with_defaults() {
        let cfg: ScenarioConfig = serde_json::from_str(
            r#"{"family":"sum","p":2,"size":{"finite":3},"initial":[1,2,3,4]}"#,
        )
        .unwrap();
        assert_eq!(cfg.method, MethodChoice::Both);
        assert_eq!(cfg.backend, BackendChoice::Rational);
        assert_eq!(cfg.series_terms_max, 60);
        assert_eq!(cfg.size.count(), 4);
        let vals: Vec<BigRational> = cfg.initial_values().unwrap();
        assert_eq!(vals[3], BigRational::from_int(4));
    }

    #[test]
    fn decimal_numbers_parse_exactly() {
        let cfg: ScenarioConfig = serde_json::from_str(
            r#"{"family":"product","p":2,"size":{"window":3},"initial":[0.1,"1/3","2e-1"]}"#,
        )
        .unwrap();
        let vals: Vec<BigRational> = cfg.initial_values().unwrap();
        let r = |n: i64, d: i64| BigRational::from_int(n) / BigRational::from_int(d);
        assert_eq!(vals, vec![r(1, 10), r(1, 3), r(1, 5)]);
    }

    #[test]
    fn constant_broadcasts_over_window() {
        let cfg: ScenarioConfig = serde_json::from_str(
            r#"{"family":"product","p":2,"size":{"window":40},"initial":{"constant":1}}"#,
        )
        .unwrap();
        let vals: Vec<f64> = cfg.initial_values().unwrap();
        assert_eq!(vals.len(), 40);
        assert!(vals.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn unknown_fields_and_wrong_lengths_are_rejected() {
        assert!(serde_json::from_str::<ScenarioConfig>(
            r#"{"family":"sum","p":2,"size":{"finite":3},"initial":[1,1,1,1],"typo":1}"#,
        )
        .is_err());
        let cfg: ScenarioConfig = serde_json::from_str(
            r#"{"family":"sum","p":2,"size":{"finite":3},"initial":[1,1,1]}"#,
        )
        .unwrap();
        assert!(cfg.validate().is_err());
    }
}
