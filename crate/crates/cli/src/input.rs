//! Scheme files.
//!
//! ```json
//! { "field": "Q", "vars": 3, "mode": "components",
//!   "components": [{"point": [1, 2, 0], "local_gens": ["X1-2*X0", "X2^2"]}] }
//! ```
//!
//! `field` is `"Q"`, `"Fp:<p>"` or `{"Fp": p}`. Raw-mode files list `gens`
//! instead of `components`. Point coordinates are integers or rational strings.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use schemelink_core::gbasis::HomogIdeal;
use schemelink_core::scheme::{scheme_from_homog_ideal, SchemeComponent};
use schemelink_core::{parse_form, parse_poly, scheme_from_components, AffinePoint, Field, Poly, Ring, Scalar, Scheme};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Value>,
    pub vars: usize,
    #[serde(default = "default_mode")]
    pub mode: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gens: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub point: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_gens: Option<Vec<String>>,
}

fn default_mode() -> String {
    "components".into()
}

pub fn parse_field(s: &str) -> Result<Field> {
    let s = s.trim();
    if s == "Q" {
        return Ok(Field::Rational);
    }
    let p = s.strip_prefix("Fp:").ok_or_else(|| anyhow!("field must be Q or Fp:<p>, got {s:?}"))?;
    let p: u64 = p.parse().with_context(|| format!("bad prime {p:?}"))?;
    Ok(Field::prime(p)?)
}

fn field_of(v: &Value) -> Result<Field> {
    match v {
        Value::String(s) => parse_field(s),
        Value::Object(m) if m.len() == 1 && m.contains_key("Fp") => {
            let p = m["Fp"].as_u64().ok_or_else(|| anyhow!("Fp must be a positive integer"))?;
            Ok(Field::prime(p)?)
        }
        _ => bail!("field must be \"Q\", \"Fp:<p>\" or {{\"Fp\": p}}"),
    }
}

pub fn field_name(f: Field) -> String {
    match f {
        Field::Rational => "Q".into(),
        Field::Prime(p) => format!("Fp:{p}"),
    }
}

fn coordinate(ring: Ring, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => {
            let k = n.as_i64().ok_or_else(|| anyhow!("coordinate {n} is not an integer"))?;
            Ok(ring.field.int(k))
        }
        Value::String(s) => {
            let c = parse_poly(ring, s).with_context(|| format!("coordinate {s:?}"))?;
            if c.degree().is_some_and(|d| d > 0) {
                bail!("coordinate {s:?} is not a constant");
            }
            Ok(c.lead_coeff().cloned().unwrap_or_else(|| ring.field.zero()))
        }
        _ => bail!("coordinate must be a number or a string"),
    }
}

impl SchemeFile {
    /// The base field: the override if given, else the file's, else `Q`.
    pub fn field(&self, over: Option<Field>) -> Result<Field> {
        match (over, &self.field) {
            (Some(f), _) => Ok(f),
            (None, Some(v)) => field_of(v),
            (None, None) => Ok(Field::Rational),
        }
    }

    pub fn build(&self, over: Option<Field>, cap: Option<u32>) -> Result<Scheme> {
        if self.vars < 2 {
            bail!("need at least 2 variables");
        }
        let ring = Ring::new(self.vars, self.field(over)?);
        match self.mode.as_str() {
            "components" => {
                if !self.gens.is_empty() {
                    bail!("components-mode files take no top-level gens");
                }
                let comps = self
                    .components
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        if c.point.len() != self.vars {
                            bail!("component {j}: point has {} coordinates, expected {}", c.point.len(), self.vars);
                        }
                        let coords = c.point.iter().map(|v| coordinate(ring, v)).collect::<Result<Vec<_>>>()?;
                        let point = AffinePoint::normalized(coords).with_context(|| format!("component {j}"))?;
                        let gens = match &c.local_gens {
                            None => Vec::new(),
                            Some(gs) => gs
                                .iter()
                                .map(|g| parse_form(ring, g).with_context(|| format!("component {j}: {g:?}")))
                                .collect::<Result<Vec<_>>>()?,
                        };
                        Ok(SchemeComponent::new(point, gens))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(scheme_from_components(ring, &comps)?)
            }
            "raw" => {
                if !self.components.is_empty() {
                    bail!("raw-mode files take gens, not components");
                }
                if self.gens.is_empty() {
                    bail!("raw-mode file lists no generators");
                }
                let gens = self
                    .gens
                    .iter()
                    .map(|g| parse_form(ring, g).with_context(|| format!("generator {g:?}")))
                    .collect::<Result<Vec<_>>>()?;
                let ideal = HomogIdeal::with_cap(ring, gens, cap)?;
                if let Some(c) = ideal.basis().truncated_at() {
                    return Err(schemelink_core::Error::CapExceeded { degree: c + 1, cap: c }.into());
                }
                Ok(scheme_from_homog_ideal(ideal)?)
            }
            m => bail!("mode must be \"components\" or \"raw\", got {m:?}"),
        }
    }

    /// A raw-mode file with the given generators.
    pub fn raw(ring: Ring, gens: &[Poly]) -> SchemeFile {
        SchemeFile {
            field: Some(Value::String(field_name(ring.field))),
            vars: ring.nvars,
            mode: "raw".into(),
            components: Vec::new(),
            gens: gens.iter().map(|g| g.to_string()).collect(),
        }
    }
}

pub fn parse_scheme_str(text: &str, over: Option<Field>, cap: Option<u32>) -> Result<Scheme> {
    let file: SchemeFile = serde_json::from_str(text).context("malformed scheme file")?;
    file.build(over, cap)
}

pub fn load_scheme(path: &Path, over: Option<Field>, cap: Option<u32>) -> Result<Scheme> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_scheme_str(&text, over, cap).with_context(|| format!("in {}", path.display()))
}
