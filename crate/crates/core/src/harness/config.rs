use serde::{Deserialize, Serialize};

use crate::arith::numth::is_prime;
use crate::error::{Error, Result};
use crate::torus::{RepSpec, WeightSystem};

use super::suites::Suite;

pub const DEFAULT_SEED: u64 = 0x5eed_2026;
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 22;

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    /// largest tower level M; derived from the suites when absent
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tower: Option<u32>,
    /// bound on brute-force enumerations (matrices, flags)
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub p: u64,
    #[serde(default = "one")]
    pub f: u32,
    pub shape: Vec<usize>,
    pub rep: RepSpec,
    #[serde(default)]
    pub suites: Vec<String>,
    #[serde(default)]
    pub caps: Caps,
}

fn one() -> u32 {
    1
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Config = serde_json::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::ConfigInvalid(format!("p = {} is not prime", self.p)));
        }
        if self.f == 0 || self.shape.is_empty() || self.shape.contains(&0) {
            return Err(Error::ConfigInvalid("f and every n_i must be positive".into()));
        }
        self.weight_system()?;
        for s in &self.suites {
            let suite = Suite::parse(s)?;
            suite.applicable(self)?;
        }
        Ok(())
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }

    pub fn weight_system(&self) -> Result<WeightSystem> {
        WeightSystem::from_spec(&self.shape, &self.rep).map_err(|e| Error::ConfigInvalid(e.to_string()))
    }

    /// The suites to run: the configured list, or every applicable suite.
    pub fn suites(&self) -> Result<Vec<Suite>> {
        if self.suites.is_empty() {
            return Ok(Suite::ALL.iter().copied().filter(|s| s.applicable(self).is_ok()).collect());
        }
        self.suites.iter().map(|s| Suite::parse(s)).collect()
    }

    pub fn enumeration_cap(&self) -> u64 {
        self.caps.enumeration.unwrap_or(DEFAULT_ENUMERATION_CAP)
    }

    /// Single GL(n) factor, if the shape is one.
    pub fn gl_n(&self) -> Option<usize> {
        match self.shape.as_slice() {
            [n] => Some(*n),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_config() {
        let c = Config::from_json(r#"{"p":3,"f":1,"shape":[2],"rep":"std","suites":["gl2-main"]}"#).unwrap();
        assert_eq!(c.q(), 3);
        assert!(Config::from_json(r#"{"p":3,"shape":[2],"rep":"std","suites":["nope"]}"#).is_err());
        assert!(Config::from_json(r#"{"p":4,"shape":[2],"rep":"std"}"#).is_err());
        let explicit = r#"{"p":5,"shape":[2],"rep":[{"weight":[1,0],"mult":2},[0,1],[0,1]],"caps":{"tower":2}}"#;
        assert_eq!(Config::from_json(explicit).unwrap().weight_system().unwrap().r(), 4);
    }
}
