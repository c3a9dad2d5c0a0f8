//! Instance configuration: a flat TOML file with field, group, equation,
//! search, and certification sections. Rational functions and rationals
//! are strings in the expression syntax of [`crate::parse`].
//!
//! ```toml
//! name = "f5-reference"
//!
//! [field]
//! p = 5
//!
//! [group]
//! free_gens = [["t", "1-t"]]
//!
//! [search]
//! bound = 6
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use thiserror::Error;

use crate::certify::{validate_theta, CertifyOptions};
use crate::field::{FieldError, FieldRef, FieldSpec};
use crate::group::{GroupError, GroupRef, GroupSpec};
use crate::parse::{parse_ratfunc, ParseError};
use crate::ratfunc::RatFunc;
use crate::solver::SearchBox;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("malformed config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("field section: {0}")]
    Field(#[from] FieldError),
    #[error("cannot parse {what} {text:?}: {source}")]
    Expr {
        what: &'static str,
        text: String,
        source: ParseError,
    },
    #[error("group section: {0}")]
    Group(#[from] GroupError),
    #[error("torsion generators must be nonzero constants, got {0:?}")]
    TorsionNotConstant(String),
    #[error("equation coefficients must be nonzero")]
    ZeroEquationCoefficient,
    #[error("search bound must be >= 1")]
    BadBound,
    #[error("theta must be a rational a/b strictly between 0 and 1/9, got {0:?}")]
    BadTheta(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub name: Option<String>,
    pub field: FieldSection,
    pub group: GroupSection,
    #[serde(default)]
    pub equation: EquationSection,
    pub search: SearchSection,
    #[serde(default)]
    pub certify: CertifySection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    pub p: u64,
    pub k: Option<usize>,
    /// Modulus coefficients low-to-high; required when k > 1.
    pub modulus: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    #[serde(default)]
    pub free_gens: Vec<[String; 2]>,
    #[serde(default)]
    pub torsion_gens: Vec<[String; 2]>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationSection {
    pub a: Option<String>,
    pub b: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSection {
    #[serde(alias = "B")]
    pub bound: i64,
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertifySection {
    /// Rational "a/b" strictly inside (0, 1/9); defaults to 1/9 - 1/1000.
    pub theta: Option<String>,
    pub n_list: Option<Vec<u32>>,
}

/// A fully validated instance ready to run.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub field: FieldRef,
    pub group: GroupRef,
    pub a: RatFunc,
    pub b: RatFunc,
    pub search: SearchBox,
    pub theta: BigRational,
    pub n_list: Vec<u32>,
}

impl Instance {
    pub fn is_unit_equation(&self) -> bool {
        self.a.is_one() && self.b.is_one()
    }

    pub fn certify_options(&self) -> CertifyOptions {
        CertifyOptions {
            theta: self.theta.clone(),
            n_list: self.n_list.clone(),
            box_bound: Some(self.search.bound),
        }
    }
}

impl InstanceConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn build(&self) -> Result<Instance, ConfigError> {
        let field = match (self.field.k, &self.field.modulus) {
            (None, _) | (Some(1), None) => FieldSpec::prime(self.field.p)?,
            (Some(k), Some(modulus)) => FieldSpec::extension(self.field.p, k, modulus)?,
            (Some(k), None) => {
                return Err(ConfigError::Field(FieldError::BadModulusDegree {
                    expected: k,
                    got: 0,
                }))
            }
        };

        let expr = |what: &'static str, text: &str| -> Result<RatFunc, ConfigError> {
            parse_ratfunc(text, &field).map_err(|source| ConfigError::Expr {
                what,
                text: text.to_string(),
                source,
            })
        };

        let mut free_gens = vec![];
        for [x, y] in &self.group.free_gens {
            free_gens.push((expr("free generator", x)?, expr("free generator", y)?));
        }
        let mut torsion_gens = vec![];
        for [c, d] in &self.group.torsion_gens {
            let cv = expr("torsion generator", c)?;
            let dv = expr("torsion generator", d)?;
            match (cv.constant_value(), dv.constant_value()) {
                (Some(cc), Some(dc)) if !cc.is_zero() && !dc.is_zero() => {
                    torsion_gens.push((cc, dc))
                }
                _ => return Err(ConfigError::TorsionNotConstant(format!("[{c}, {d}]"))),
            }
        }
        let group = GroupSpec::new(&field, free_gens, torsion_gens)?;

        let a = match &self.equation.a {
            Some(s) => expr("equation coefficient a", s)?,
            None => RatFunc::one(&field),
        };
        let b = match &self.equation.b {
            Some(s) => expr("equation coefficient b", s)?,
            None => RatFunc::one(&field),
        };
        if a.is_zero() || b.is_zero() {
            return Err(ConfigError::ZeroEquationCoefficient);
        }

        if self.search.bound < 1 {
            return Err(ConfigError::BadBound);
        }
        let search = SearchBox::new(
            self.search.bound,
            self.search.budget.unwrap_or(DEFAULT_BUDGET),
        );

        let theta = match &self.certify.theta {
            Some(s) => parse_theta(s)?,
            None => CertifyOptions::default().theta,
        };
        let n_list = self.certify.n_list.clone().unwrap_or_default();

        Ok(Instance {
            name: self.name.clone().unwrap_or_else(|| "instance".to_string()),
            field,
            group,
            a,
            b,
            search,
            theta,
            n_list,
        })
    }
}

/// Parses "a/b" (or a bare integer numerator) into a validated theta.
pub fn parse_theta(text: &str) -> Result<BigRational, ConfigError> {
    let bad = || ConfigError::BadTheta(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad())?;
    let den: i64 = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    let theta = BigRational::new(BigInt::from(num), BigInt::from(den));
    validate_theta(&theta).map_err(|_| bad())?;
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    const REFERENCE: &str = r#"
name = "f5-reference"

[field]
p = 5

[group]
free_gens = [["t", "1-t"]]

[search]
bound = 6
"#;

    #[test]
    fn reference_config_builds() {
        let cfg = InstanceConfig::from_toml(REFERENCE).unwrap();
        let inst = cfg.build().unwrap();
        assert_eq!(inst.name, "f5-reference");
        assert_eq!(inst.group.rank(), 1);
        assert!(inst.is_unit_equation());
        assert_eq!(inst.search.bound, 6);
        assert_eq!(inst.search.budget, DEFAULT_BUDGET);
        assert_eq!(inst.theta.to_string(), "991/9000");
    }

    #[test]
    fn full_config_builds() {
        let text = r#"
name = "full"

[field]
p = 5

[group]
free_gens = [["t", "1-t"]]
torsion_gens = [["3", "3"]]

[equation]
a = "1/t^2"
b = "1/(1-t)^2"

[search]
bound = 4
budget = 5000

[certify]
theta = "1/10"
n_list = [1, 2]
"#;
        let inst = InstanceConfig::from_toml(text).unwrap().build().unwrap();
        assert!(!inst.is_unit_equation());
        assert_eq!(inst.group.torsion().len(), 4);
        assert_eq!(inst.n_list, vec![1, 2]);
        assert_eq!(inst.theta.to_string(), "1/10");
    }

    #[test]
    fn diagnostics() {
        assert!(InstanceConfig::from_toml("nonsense = ").is_err());

        let bad_expr = REFERENCE.replace("\"1-t\"", "\"1-x\"");
        let err = InstanceConfig::from_toml(&bad_expr)
            .unwrap()
            .build()
            .unwrap_err();
        assert!(matches!(err, ConfigError::Expr { .. }));

        let bad_bound = REFERENCE.replace("bound = 6", "bound = 0");
        assert!(matches!(
            InstanceConfig::from_toml(&bad_bound).unwrap().build(),
            Err(ConfigError::BadBound)
        ));

        let unknown_key = format!("{REFERENCE}\n[extra]\nx = 1\n");
        assert!(InstanceConfig::from_toml(&unknown_key).is_err());
    }

    #[test]
    fn theta_parsing() {
        assert!(parse_theta("991/9000").is_ok());
        assert!(parse_theta("1/9").is_err());
        assert!(parse_theta("0").is_err());
        assert!(parse_theta("2/9").is_err());
        assert!(parse_theta("abc").is_err());
        assert!(parse_theta("1/0").is_err());
    }

    #[test]
    fn uppercase_b_alias() {
        let text = REFERENCE.replace("bound = 6", "B = 6");
        let inst = InstanceConfig::from_toml(&text).unwrap().build().unwrap();
        assert_eq!(inst.search.bound, 6);
    }
}
