//! JSON cover descriptions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::base::{NSClass, NumericalBase, Pic0Marker};
use crate::cover::{CoverData, CoverSpec};
use crate::deformations::InvariantDims;
use crate::error::{Error, Result};
use crate::group::{FinAbGroup, InertiaDatum};
use crate::rational::{self, Rational};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineBase {
    #[serde(default = "custom_name")]
    pub name: String,
    pub dim: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ns_rank: Option<usize>,
    pub form: Vec<Vec<i64>>,
    #[serde(rename = "K")]
    pub canonical: Vec<i64>,
    pub q: i64,
    #[serde(rename = "chi_O")]
    pub chi_o: i64,
    pub e: i64,
    #[serde(default)]
    pub ample_tests: Vec<Vec<i64>>,
}

fn custom_name() -> String {
    "custom".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetRef {
    pub preset: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g1: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g2: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseConfig {
    Name(String),
    Preset(PresetRef),
    Inline(InlineBase),
}

impl BaseConfig {
    pub fn resolve(&self) -> Result<NumericalBase> {
        match self {
            BaseConfig::Name(name) => {
                NumericalBase::preset(name).ok_or_else(|| Error::InvalidConfig(format!("unknown base preset {name}")))
            }
            BaseConfig::Preset(p) => match p.preset.as_str() {
                "curve_product" => NumericalBase::curve_product(p.g1.unwrap_or(0), p.g2.unwrap_or(0)),
                other if p.g1.is_none() && p.g2.is_none() => NumericalBase::preset(other)
                    .ok_or_else(|| Error::InvalidConfig(format!("unknown base preset {other}"))),
                other => Err(Error::InvalidConfig(format!("preset {other} takes no genera"))),
            },
            BaseConfig::Inline(b) => {
                if let Some(r) = b.ns_rank {
                    if r != b.form.len() {
                        return Err(Error::InvalidBase(format!("ns_rank {r} but form has {} rows", b.form.len())));
                    }
                }
                NumericalBase::new(
                    b.name.clone(),
                    b.dim,
                    b.form.clone(),
                    NSClass(b.canonical.clone()),
                    b.q,
                    b.chi_o,
                    b.e,
                    b.ample_tests.iter().cloned().map(NSClass).collect(),
                )
            }
        }
    }
}

/// A cover description as read from disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverConfig {
    pub schema: u32,
    pub group: Vec<i64>,
    pub inertia: Vec<Vec<i64>>,
    pub base: BaseConfig,
    pub branch: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch_markers: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced_markers: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersection_pattern: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_dims: Option<InvariantDims>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aut_dim: Option<i64>,
    /// Overrides `e(D_i)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch_euler: Option<Vec<i64>>,
    /// Entries `[i, j, #D_i ∩ D_j]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point_counts: Option<Vec<[i64; 3]>>,
    /// Parameter values (`p/q` strings) for the fibre count, keyed by plain
    /// parameter name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber_params: Option<BTreeMap<String, String>>,
}

impl CoverConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: CoverConfig = serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        if cfg.schema != SCHEMA_VERSION {
            return Err(Error::InvalidConfig(format!(
                "schema version {} is not supported (expected {SCHEMA_VERSION})",
                cfg.schema
            )));
        }
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn group(&self) -> Result<FinAbGroup> {
        FinAbGroup::new(self.group.clone())
    }

    pub fn inertia(&self, group: &FinAbGroup) -> Result<Vec<InertiaDatum>> {
        self.inertia.iter().map(|g| group.inertia_from(g)).collect()
    }

    pub fn spec(&self) -> Result<CoverSpec> {
        let group = self.group()?;
        let inertia = self.inertia(&group)?;
        let base = self.base.resolve()?;
        let classes = |v: &Vec<Vec<i64>>| v.iter().cloned().map(NSClass).collect::<Vec<_>>();
        let markers = |v: &Vec<Vec<i64>>| v.iter().cloned().map(Pic0Marker).collect::<Vec<_>>();
        let mut spec = CoverSpec::new(group, inertia, base, classes(&self.branch));
        spec.reduced = self.reduced.as_ref().map(classes);
        spec.branch_markers = self.branch_markers.as_ref().map(markers);
        spec.reduced_markers = self.reduced_markers.as_ref().map(markers);
        spec.intersection_pattern = self.intersection_pattern.clone();
        Ok(spec)
    }

    pub fn cover(&self) -> Result<CoverData> {
        CoverData::from_spec(self.spec()?)
    }

    pub fn fiber_values(&self) -> Result<Vec<(String, Rational)>> {
        let Some(map) = &self.fiber_params else {
            return Ok(Vec::new());
        };
        map.iter()
            .map(|(k, v)| {
                rational::parse(v)
                    .map(|r| (k.clone(), r))
                    .ok_or_else(|| Error::InvalidConfig(format!("{k}: not a rational: {v}")))
            })
            .collect()
    }

    pub fn point_counts(&self) -> Option<Vec<((usize, usize), i64)>> {
        self.point_counts.as_ref().map(|v| {
            v.iter().map(|[i, j, n]| ((*i as usize, *j as usize), *n)).collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BIDOUBLE: &str = r#"{
        "schema": 1,
        "group": [2, 2],
        "inertia": [[1, 0], [0, 1], [1, 1]],
        "base": "P2",
        "branch": [[2], [2], [2]]
    }"#;

    #[test]
    fn parses_and_builds() {
        let cfg = CoverConfig::from_json(BIDOUBLE).unwrap();
        let cd = cfg.cover().unwrap();
        assert_eq!(cd.group().order(), 4);
        let again = CoverConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn rejects_unknown_keys_and_versions() {
        let extra = BIDOUBLE.replace("\"base\"", "\"colour\": 1, \"base\"");
        assert!(matches!(CoverConfig::from_json(&extra), Err(Error::InvalidConfig(_))));
        let v2 = BIDOUBLE.replace("\"schema\": 1", "\"schema\": 2");
        assert!(matches!(CoverConfig::from_json(&v2), Err(Error::InvalidConfig(_))));
        assert!(CoverConfig::from_json("{ not json").is_err());
    }

    #[test]
    fn inline_and_preset_bases() {
        let inline = BIDOUBLE.replace(
            "\"P2\"",
            r#"{"dim": 2, "form": [[1]], "K": [-3], "q": 0, "chi_O": 1, "e": 3, "ample_tests": [[1]]}"#,
        );
        let cd = CoverConfig::from_json(&inline).unwrap().cover().unwrap();
        assert_eq!(cd.base().euler_number, 3);
        let cp = BIDOUBLE
            .replace("\"P2\"", r#"{"preset": "curve_product", "g1": 2, "g2": 2}"#)
            .replace("[[2], [2], [2]]", "[[2, 2], [2, 2], [2, 2]]");
        let cd = CoverConfig::from_json(&cp).unwrap().cover().unwrap();
        assert_eq!(cd.base().q, 4);
    }
}
