//! JSON polynomial specs: a single spec or `{"batch": [...]}`.

use polarcert::{Complex64, FactoredPolynomial, Orientation, Polynomial, RadiusProfile};
use serde::{Deserialize, Serialize};

use crate::InputError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactoredSpec {
    pub leading: Complex64,
    pub zeros: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSpec {
    pub orientation: Orientation,
    pub radii: Vec<f64>,
}

/// Coefficients ascending by power, or leading coefficient and zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<Complex64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factored: Option<FactoredSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileSpec>,
}

/// A spec turned into library values.
#[derive(Debug, Clone)]
pub struct Instance {
    pub spec: PolySpec,
    pub poly: Polynomial,
    pub factored: Option<FactoredPolynomial>,
    pub profile: Option<RadiusProfile>,
}

impl Instance {
    pub fn from_parts(factored: FactoredPolynomial, profile: RadiusProfile) -> Self {
        let spec = PolySpec {
            coeffs: None,
            factored: Some(FactoredSpec { leading: factored.leading(), zeros: factored.zeros().to_vec() }),
            profile: Some(ProfileSpec { orientation: profile.orientation(), radii: profile.radii().to_vec() }),
        };
        Self { spec, poly: factored.expand(), factored: Some(factored), profile: Some(profile) }
    }

    pub fn require_factored(&self, what: &str) -> Result<&FactoredPolynomial, InputError> {
        self.factored.as_ref().ok_or_else(|| InputError(format!("{what} requires factored form")))
    }

    /// The factored form and a profile of the given orientation.
    pub fn require_profile(
        &self,
        what: &str,
        orientation: Orientation,
    ) -> Result<(&FactoredPolynomial, &RadiusProfile), InputError> {
        let f = self.require_factored(what)?;
        match &self.profile {
            Some(p) if p.orientation() == orientation => Ok((f, p)),
            _ => Err(InputError(format!(
                "{what} requires a profile with orientation \"{}\"",
                orientation_name(orientation)
            ))),
        }
    }
}

pub fn orientation_name(o: Orientation) -> &'static str {
    match o {
        Orientation::ZerosOutside => "outside",
        Orientation::ZerosInside => "inside",
    }
}

// serde_json appends " at line L column C"; the location is reported separately.
fn parse_error(source: &str, e: &serde_json::Error) -> InputError {
    let msg = e.to_string();
    let msg = msg.split(" at line ").next().unwrap_or(&msg).to_string();
    InputError(format!("{source}:{}:{}: {msg}", e.line(), e.column()))
}

pub fn parse(source: &str, text: &str) -> Result<Vec<PolySpec>, InputError> {
    // Parse to a value first so syntax errors keep their line numbers.
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| parse_error(source, &e))?;
    if value.get("batch").is_some() {
        serde_json::from_str::<BatchOnly>(text).map(|b| b.batch)
    } else {
        serde_json::from_str::<PolySpec>(text).map(|s| vec![s])
    }
    .map_err(|e| parse_error(source, &e))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BatchOnly {
    batch: Vec<PolySpec>,
}

pub fn resolve(spec: PolySpec) -> Result<Instance, InputError> {
    let lib = |e: polarcert::Error| InputError(e.to_string());
    let (poly, factored) = match (&spec.coeffs, &spec.factored) {
        (Some(coeffs), None) => (Polynomial::new(coeffs.clone()).map_err(lib)?, None),
        (None, Some(f)) => {
            let f = FactoredPolynomial::new(f.leading, f.zeros.clone()).map_err(lib)?;
            (f.expand(), Some(f))
        }
        _ => return Err(InputError("exactly one of \"coeffs\" and \"factored\" is required".into())),
    };
    let profile = match &spec.profile {
        None => None,
        Some(p) => {
            if p.radii.len() != poly.degree() {
                return Err(InputError(format!(
                    "profile has {} radii but the polynomial has degree {}",
                    p.radii.len(),
                    poly.degree()
                )));
            }
            let profile = RadiusProfile::new(p.radii.clone(), p.orientation).map_err(lib)?;
            if let Some(f) = &factored {
                profile.validate_against(f).map_err(lib)?;
            }
            Some(profile)
        }
    };
    Ok(Instance { spec, poly, factored, profile })
}

pub fn load(source: &str, text: &str) -> Result<Vec<Instance>, InputError> {
    let specs = parse(source, text)?;
    let many = specs.len() > 1;
    specs
        .into_iter()
        .enumerate()
        .map(|(i, spec)| {
            resolve(spec).map_err(|e| {
                if many {
                    InputError(format!("{source}: batch[{i}]: {}", e.0))
                } else {
                    InputError(format!("{source}: {}", e.0))
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        let specs = parse("t", r#"{"coeffs": [[1, 0], [2, 0], [1, 0]]}"#).unwrap();
        let inst = resolve(specs[0].clone()).unwrap();
        assert_eq!(inst.poly.degree(), 2);
        assert!(inst.factored.is_none());

        let text = r#"{"factored": {"leading": [1, 0], "zeros": [[-2, 0], [-3, 0]]},
                       "profile": {"orientation": "outside", "radii": [2, 3]}}"#;
        let inst = resolve(parse("t", text).unwrap().remove(0)).unwrap();
        assert_eq!(inst.poly.coeffs()[0], Complex64::new(6.0, 0.0));
        assert!(inst.profile.is_some());
    }

    #[test]
    fn batch_documents() {
        let text = r#"{"batch": [{"coeffs": [[1, 0], [1, 0]]}, {"coeffs": [[0, 1], [0, 0], [1, 0]]}]}"#;
        let all = load("t", text).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[1].poly.degree(), 2);
    }

    #[test]
    fn errors_carry_location() {
        let err = parse("in.json", "{\n  \"coeffs\": [[1, 0],\n  oops]\n}").unwrap_err();
        assert!(err.0.starts_with("in.json:3:"), "{}", err.0);
        let err = load("in.json", r#"{"coeffs": [[1, 0]], "factored": {"leading": [1, 0], "zeros": []}}"#).unwrap_err();
        assert!(err.0.contains("exactly one"), "{}", err.0);
        let err = load("in.json", r#"{"coefs": [[1, 0]]}"#).unwrap_err();
        assert!(err.0.contains("unknown field"), "{}", err.0);
    }

    #[test]
    fn profile_checks() {
        let bad = r#"{"factored": {"leading": [1, 0], "zeros": [[-1.5, 0]]},
                      "profile": {"orientation": "outside", "radii": [2]}}"#;
        assert!(load("t", bad).unwrap_err().0.contains("violating"));
        let short = r#"{"coeffs": [[1, 0], [1, 0], [1, 0]], "profile": {"orientation": "outside", "radii": [1]}}"#;
        assert!(load("t", short).unwrap_err().0.contains("degree 2"));
    }

    #[test]
    fn spec_round_trips() {
        let text = r#"{"factored": {"leading": [0.1, -3], "zeros": [[-1.25, 0.3333333333333333]]},
                       "profile": {"orientation": "outside", "radii": [1.2]}}"#;
        let spec = parse("t", text).unwrap().remove(0);
        let again = parse("t", &serde_json::to_string(&spec).unwrap()).unwrap().remove(0);
        assert_eq!(spec, again);
    }
}
