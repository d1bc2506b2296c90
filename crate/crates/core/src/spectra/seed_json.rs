//! JSON description of user-supplied finite seeds.
//!
//! ```json
//! { "kind": "holo", "name": "two-term", "weight": 0.5, "delta": 1.0,
//!   "terms": [ { "lambda": 1.0, "a": [1.0, 0.0] }, { "lambda": 2.0, "a": [0.5, 0.0] } ] }
//! ```
//!
//! Real seeds use `"kind": "real"` and add an integer `"p"` to each term.
//! `delta`, when present, must equal the smallest exponent.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{HoloSeed, RealSeed, RealTerm, Seed, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SeedDescription {
    Holo {
        name: String,
        weight: f64,
        #[serde(default)]
        delta: Option<f64>,
        #[serde(default)]
        covariant: bool,
        terms: Vec<HoloTermJson>,
    },
    Real {
        name: String,
        weight: f64,
        #[serde(default)]
        delta: Option<f64>,
        terms: Vec<RealTermJson>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HoloTermJson {
    pub lambda: f64,
    pub a: [f64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealTermJson {
    pub lambda: f64,
    pub p: i64,
    pub a: [f64; 2],
}

fn check_delta(declared: Option<f64>, actual: f64) -> Result<()> {
    match declared {
        Some(d) if d != actual => {
            Err(Error::SeedFormat(format!("declared delta {d} differs from the smallest exponent {actual}")))
        }
        _ => Ok(()),
    }
}

impl SeedDescription {
    pub fn into_seed(self) -> Result<Seed> {
        match self {
            SeedDescription::Holo { name, weight, delta, covariant, terms } => {
                let terms: Vec<Term> =
                    terms.into_iter().map(|t| Term { lambda: t.lambda, a: Complex64::new(t.a[0], t.a[1]) }).collect();
                let seed = HoloSeed::from_terms(&name, weight, terms, true, covariant)?;
                check_delta(delta, seed.delta())?;
                Ok(Seed::Holo(seed))
            }
            SeedDescription::Real { name, weight, delta, terms } => {
                let terms = terms
                    .into_iter()
                    .map(|t| RealTerm { lambda: t.lambda, p: t.p, a: Complex64::new(t.a[0], t.a[1]) })
                    .collect();
                let seed = RealSeed::from_terms(&name, weight, terms)?;
                check_delta(delta, seed.delta())?;
                Ok(Seed::Real(seed))
            }
        }
    }
}

/// Parses a seed description.
pub fn parse_seed(text: &str) -> Result<Seed> {
    let desc: SeedDescription = serde_json::from_str(text).map_err(|e| Error::SeedFormat(e.to_string()))?;
    desc.into_seed()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holo_roundtrip() {
        let s = parse_seed(
            r#"{"kind":"holo","name":"pair","weight":0.5,"delta":1.0,
                "terms":[{"lambda":1.0,"a":[1.0,0.0]},{"lambda":2.5,"a":[0.0,-1.0]}]}"#,
        )
        .unwrap();
        let h = s.as_holo().unwrap();
        assert_eq!(h.delta(), 1.0);
        assert_eq!(h.term(1).unwrap().unwrap().a, Complex64::new(0.0, -1.0));
        assert!(h.term(2).unwrap().is_none());
    }

    #[test]
    fn real_requires_hermitian_pairs() {
        let ok = r#"{"kind":"real","name":"r","weight":0,"terms":[
            {"lambda":1,"p":1,"a":[1,2]},{"lambda":1,"p":-1,"a":[1,-2]}]}"#;
        assert!(parse_seed(ok).is_ok());
        let bad = r#"{"kind":"real","name":"r","weight":0,"terms":[{"lambda":1,"p":1,"a":[1,2]}]}"#;
        assert!(matches!(parse_seed(bad), Err(Error::SeedFormat(_))));
    }

    #[test]
    fn wrong_delta_and_unknown_fields() {
        let s = r#"{"kind":"holo","name":"x","weight":0,"delta":0.5,"terms":[{"lambda":1,"a":[1,0]}]}"#;
        assert!(parse_seed(s).is_err());
        let s = r#"{"kind":"holo","name":"x","weight":0,"extra":1,"terms":[{"lambda":1,"a":[1,0]}]}"#;
        assert!(parse_seed(s).is_err());
    }
}
