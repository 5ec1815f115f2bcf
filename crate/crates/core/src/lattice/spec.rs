//! The lattice spec file: a laminated family, a parameter or interval and
//! the symmetry generators, all as exact strings.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "base_rows": [["1"]],
//!   "offset": ["1/2"],
//!   "parameter": "3/4",
//!   "group": ["-1 2", "1 -2"]
//! }
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{LamiqError, Result};
use crate::exactnum::{QVector, Rational};
use crate::symmetry::{GroupSpec, SignedPerm};

use super::generator::{GeneratorMatrix, LaminatedFamily};

/// Either a single parameter `a` or an interval of `ν = a²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParameterSpec {
    Value(Rational),
    Interval([Rational; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    /// Dimension `n` of the instantiated lattice.
    pub dimension: usize,
    /// `(n−1)×(n−1)` base generator rows.
    pub base_rows: Vec<Vec<Rational>>,
    pub offset: Vec<Rational>,
    #[serde(default)]
    pub parameter: Option<ParameterSpec>,
    /// Interval of `ν`, accepted as an alternative to `parameter`.
    #[serde(default)]
    pub interval: Option<[Rational; 2]>,
    /// Signed-permutation words; empty means the trivial group.
    #[serde(default)]
    pub group: Vec<SignedPerm>,
    #[serde(default)]
    pub claimed_order: Option<u64>,
}

impl LatticeSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: LatticeSpec =
            serde_json::from_str(text).map_err(|e| LamiqError::Parse(format!("lattice spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dimension;
        if n < 2 {
            return Err(LamiqError::InvalidInput("dimension must be at least 2".into()));
        }
        if self.base_rows.len() != n - 1 || self.base_rows.iter().any(|r| r.len() != n - 1) {
            return Err(LamiqError::InvalidInput(format!("base_rows must be {0}×{0}", n - 1)));
        }
        if self.offset.len() != n - 1 {
            return Err(LamiqError::InvalidInput(format!("offset must have {} entries", n - 1)));
        }
        if self.parameter.is_some() && self.interval.is_some() {
            return Err(LamiqError::InvalidInput("give either parameter or interval, not both".into()));
        }
        if let Some(ParameterSpec::Value(a)) = &self.parameter {
            if !a.is_positive() {
                return Err(LamiqError::InvalidInput(format!("parameter {a} must be positive")));
            }
        }
        if let Some([lo, hi]) = self.nu_interval() {
            if !lo.is_positive() || lo >= hi {
                return Err(LamiqError::InvalidInput(format!("invalid interval [{lo}, {hi}]")));
            }
        }
        if self.group.iter().any(|g| g.dim() != n) {
            return Err(LamiqError::InvalidInput(format!("group words must act on {n} coordinates")));
        }
        Ok(())
    }

    pub fn family(&self) -> Result<LaminatedFamily> {
        let rows: Vec<QVector> = self.base_rows.iter().map(|r| QVector(r.clone())).collect();
        LaminatedFamily::new(&GeneratorMatrix::from_rows(&rows)?, QVector(self.offset.clone()))
    }

    pub fn group_spec(&self) -> Result<GroupSpec> {
        if self.group.is_empty() {
            return Ok(GroupSpec::trivial(self.dimension));
        }
        GroupSpec::new(self.group.clone(), self.claimed_order)
    }

    pub fn value(&self) -> Option<&Rational> {
        match &self.parameter {
            Some(ParameterSpec::Value(a)) => Some(a),
            _ => None,
        }
    }

    pub fn nu_interval(&self) -> Option<[Rational; 2]> {
        match (&self.parameter, &self.interval) {
            (Some(ParameterSpec::Interval(i)), _) | (_, Some(i)) => Some(i.clone()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEX: &str = r#"{
        "dimension": 2,
        "base_rows": [["1"]],
        "offset": ["1/2"],
        "parameter": "3/4",
        "group": ["-1 2", "1 -2"]
    }"#;

    #[test]
    fn parses_and_instantiates() {
        let s = LatticeSpec::parse(HEX).unwrap();
        assert_eq!(s.value(), Some(&Rational::new(3, 4)));
        let b = s.family().unwrap().instantiate(&Rational::new(3, 4)).unwrap();
        s.group_spec().unwrap().validate_for(&b).unwrap();
    }

    #[test]
    fn interval_forms() {
        let a = HEX.replace(r#""parameter": "3/4""#, r#""parameter": ["1/10", "1"]"#);
        let b = HEX.replace(r#""parameter": "3/4""#, r#""interval": ["1/10", "1"]"#);
        let a = LatticeSpec::parse(&a).unwrap();
        assert_eq!(a.nu_interval(), LatticeSpec::parse(&b).unwrap().nu_interval());
        assert!(a.value().is_none());
    }

    #[test]
    fn rejects_bad_shapes() {
        for bad in [
            HEX.replace(r#""offset": ["1/2"]"#, r#""offset": ["1/2", "0"]"#),
            HEX.replace(r#""3/4""#, r#""-3/4""#),
            HEX.replace(r#""1 -2""#, r#""1 -2 3""#),
            HEX.replace("dimension", "dim"),
            "[]".to_string(),
        ] {
            assert!(LatticeSpec::parse(&bad).is_err(), "{bad}");
        }
    }
}
