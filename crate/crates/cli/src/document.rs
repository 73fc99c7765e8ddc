//! The JSON input document and its conversion to a lifting datum.

use anyhow::{anyhow, Context};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use qplane_core::cyclotomic::{CycNum, CycloLevel};
use qplane_core::groups::FinAbGroup;
use qplane_core::lifting::LiftingDatum;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub group: GroupSpec,
    pub generators: Vec<GeneratorSpec>,
    /// Cyclotomic literals in `z = ζ_N`, `N` the exponent of the group.
    pub alpha: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub invariant_factors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub g: Vec<i64>,
    pub chi: Vec<i64>,
}

impl InputDocument {
    /// Accepts either an input document or a report that embeds one under
    /// `"input"`.
    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        let value: Value = serde_json::from_str(text).context("input is not valid JSON")?;
        let doc = match value.get("input") {
            Some(inner) if value.get("group").is_none() => inner.clone(),
            _ => value,
        };
        serde_json::from_value(doc).context("input does not match the document schema")
    }

    pub fn to_datum(&self) -> qplane_core::Result<LiftingDatum> {
        let group = FinAbGroup::new(self.group.invariant_factors.clone())?;
        let level = CycloLevel::get(group.exponent());
        let mut g = Vec::new();
        let mut chi = Vec::new();
        for gen in &self.generators {
            g.push(group.element(&gen.g)?);
            chi.push(group.character(&gen.chi)?);
        }
        let alpha = self
            .alpha
            .iter()
            .map(|row| row.iter().map(|s| CycNum::parse(&level, s)).collect())
            .collect::<qplane_core::Result<Vec<Vec<CycNum>>>>()?;
        LiftingDatum::new(group, g, chi, alpha)
    }

    /// The document of a datum, with reduced exponents and canonical literals.
    pub fn canonical(d: &LiftingDatum) -> Self {
        let to_i64 = |v: &[u64]| v.iter().map(|&x| x as i64).collect();
        InputDocument {
            group: GroupSpec { invariant_factors: d.group().invariant_factors().to_vec() },
            generators: (0..d.theta())
                .map(|i| GeneratorSpec { g: to_i64(d.g(i).exponents()), chi: to_i64(d.chi(i).exponents()) })
                .collect(),
            alpha: d.alpha_matrix().iter().map(|row| row.iter().map(|a| a.to_string()).collect()).collect(),
        }
    }
}

pub fn read_datum(path: &std::path::Path) -> anyhow::Result<LiftingDatum> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc = InputDocument::from_json(&text)?;
    doc.to_datum().map_err(|e| anyhow!(e))
}
