//! Line-oriented `key = value` configuration files.
//!
//! ```text
//! # two members with conflicting preferences
//! theta_A = 3
//! theta_B = -3
//! mu_G = 0
//! functions = linear-log
//! beta = 1
//! manual_cost = 2
//! ```
//!
//! `theta_A` and `theta_B` are required; the rest default to `mu_G = 0`,
//! `functions = linear-log`, `beta = 1`, `manual_cost = 0`. Unknown keys produce
//! warnings, not errors. `#` starts a comment.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::GameError;
use crate::functions::{make_linear_log_pair, FunctionPair};
use crate::game::GameConfig;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FunctionFamily {
    #[default]
    LinearLog,
}

impl FromStr for FunctionFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear-log" => Ok(FunctionFamily::LinearLog),
            other => Err(format!("unknown function family `{other}` (expected `linear-log`)")),
        }
    }
}

impl fmt::Display for FunctionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionFamily::LinearLog => f.write_str("linear-log"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, found `{text}`")]
    Syntax { line: usize, text: String },

    #[error("line {line}: invalid value for `{key}`: {message}")]
    InvalidValue { line: usize, key: String, message: String },

    #[error("line {line}: duplicate key `{key}`")]
    Duplicate { line: usize, key: String },

    #[error("missing required key `{key}`")]
    Missing { key: &'static str },

    #[error(transparent)]
    Game(#[from] GameError),
}

/// Parsed configuration values, independent of the scalar type.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigSpec {
    pub theta_a: f64,
    pub theta_b: f64,
    pub mu_g: f64,
    pub functions: FunctionFamily,
    pub beta: f64,
    pub manual_cost: f64,
}

impl Default for ConfigSpec {
    fn default() -> Self {
        Self {
            theta_a: 0.0,
            theta_b: 0.0,
            mu_g: 0.0,
            functions: FunctionFamily::LinearLog,
            beta: 1.0,
            manual_cost: 0.0,
        }
    }
}

impl ConfigSpec {
    pub fn function_pair<T: Scalar>(&self) -> Result<FunctionPair<T>, GameError> {
        match self.functions {
            FunctionFamily::LinearLog => make_linear_log_pair(T::lit(self.beta)),
        }
    }

    pub fn build<T: Scalar>(&self) -> Result<GameConfig<T>, GameError> {
        GameConfig::new(
            T::lit(self.theta_a),
            T::lit(self.theta_b),
            T::lit(self.mu_g),
            self.function_pair()?,
            T::lit(self.manual_cost),
        )
    }

    /// Serialises back to the file format.
    pub fn to_config_string(&self) -> String {
        format!(
            "theta_A = {}\ntheta_B = {}\nmu_G = {}\nfunctions = {}\nbeta = {}\nmanual_cost = {}\n",
            self.theta_a, self.theta_b, self.mu_g, self.functions, self.beta, self.manual_cost
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedConfig {
    pub spec: ConfigSpec,
    pub warnings: Vec<String>,
}

pub fn parse_config(text: &str) -> Result<ParsedConfig, ConfigError> {
    let mut spec = ConfigSpec::default();
    let mut warnings = Vec::new();
    let mut seen: Vec<String> = Vec::new();
    let (mut has_a, mut has_b) = (false, false);

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Syntax {
                line,
                text: raw.trim().to_string(),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(ConfigError::Syntax {
                line,
                text: raw.trim().to_string(),
            });
        }
        if seen.iter().any(|k| k == key) {
            return Err(ConfigError::Duplicate {
                line,
                key: key.to_string(),
            });
        }
        seen.push(key.to_string());

        let number = || -> Result<f64, ConfigError> {
            value
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| ConfigError::InvalidValue {
                    line,
                    key: key.to_string(),
                    message: format!("`{value}` is not a finite number"),
                })
        };
        match key {
            "theta_A" => {
                spec.theta_a = number()?;
                has_a = true;
            }
            "theta_B" => {
                spec.theta_b = number()?;
                has_b = true;
            }
            "mu_G" => spec.mu_g = number()?,
            "beta" => spec.beta = number()?,
            "manual_cost" => spec.manual_cost = number()?,
            "functions" => {
                spec.functions = value.parse().map_err(|message| ConfigError::InvalidValue {
                    line,
                    key: key.to_string(),
                    message,
                })?
            }
            other => warnings.push(format!("line {line}: unknown key `{other}` ignored")),
        }
    }

    if !has_a {
        return Err(ConfigError::Missing { key: "theta_A" });
    }
    if !has_b {
        return Err(ConfigError::Missing { key: "theta_B" });
    }
    Ok(ParsedConfig { spec, warnings })
}

/// Parses and builds in one step.
pub fn load_config<T: Scalar>(text: &str) -> Result<(GameConfig<T>, ParsedConfig), ConfigError> {
    let parsed = parse_config(text)?;
    let config = parsed.spec.build()?;
    Ok((config, parsed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Member;

    #[test]
    fn parses_full_file() {
        let text = "# comment\ntheta_A = 3\ntheta_B=-3 # trailing\n\nmu_G = 0.5\nbeta = 2\nmanual_cost = 1.5\nfunctions = linear-log\n";
        let parsed = parse_config(text).unwrap();
        assert!(parsed.warnings.is_empty());
        assert_eq!(
            parsed.spec,
            ConfigSpec {
                theta_a: 3.0,
                theta_b: -3.0,
                mu_g: 0.5,
                functions: FunctionFamily::LinearLog,
                beta: 2.0,
                manual_cost: 1.5,
            }
        );
        let config: GameConfig<f64> = parsed.spec.build().unwrap();
        assert_eq!(config.diversity(Member::B), -3.5);
    }

    #[test]
    fn unknown_key_warns() {
        let parsed = parse_config("theta_A = 1\ntheta_B = 2\ncolour = blue\n").unwrap();
        assert_eq!(parsed.warnings.len(), 1);
        assert!(parsed.warnings[0].contains("colour"));
        assert!(parsed.warnings[0].contains("line 3"));
    }

    #[test]
    fn errors_name_key_and_line() {
        let err = parse_config("theta_A = 1\ntheta_B = abc\n").unwrap_err();
        assert_eq!(
            err,
            ConfigError::InvalidValue {
                line: 2,
                key: "theta_B".into(),
                message: "`abc` is not a finite number".into()
            }
        );
        assert!(err.to_string().contains("line 2") && err.to_string().contains("theta_B"));

        assert!(matches!(
            parse_config("theta_A 1\n"),
            Err(ConfigError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_config("theta_A = 1\ntheta_A = 2\n"),
            Err(ConfigError::Duplicate { line: 2, .. })
        ));
        assert_eq!(
            parse_config("theta_A = 1\n"),
            Err(ConfigError::Missing { key: "theta_B" })
        );
        assert!(matches!(
            parse_config("theta_A = 1\ntheta_B = 1\nfunctions = cubic\n"),
            Err(ConfigError::InvalidValue { line: 3, .. })
        ));
    }

    #[test]
    fn negative_beta_is_invalid_parameter() {
        let err = load_config::<f64>("theta_A = 3\ntheta_B = -3\nbeta = -1\n").unwrap_err();
        assert!(matches!(
            err,
            ConfigError::Game(GameError::InvalidParameter { name: "beta", .. })
        ));
    }

    #[test]
    fn round_trips_through_text() {
        let spec = ConfigSpec {
            theta_a: 1.25,
            theta_b: -0.5,
            mu_g: 0.1,
            functions: FunctionFamily::LinearLog,
            beta: 0.75,
            manual_cost: 2.0,
        };
        assert_eq!(parse_config(&spec.to_config_string()).unwrap().spec, spec);
    }
}
