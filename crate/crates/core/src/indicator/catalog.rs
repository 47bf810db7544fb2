use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Directionality, IndicatorError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndicatorSpec {
    pub id: String,
    pub name: String,
    pub unit: String,
    pub directionality: Directionality,
    pub profile_id: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileSpec {
    pub id: String,
    pub name: String,
    pub indicator_ids: Vec<String>,
}

/// A validated set of indicators grouped into profiles.
///
/// Every indicator belongs to exactly one profile, and every profile lists
/// only known indicators. Order is significant: it drives report columns and
/// radar axes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Catalog {
    indicators: Vec<IndicatorSpec>,
    profiles: Vec<ProfileSpec>,
}

#[derive(Deserialize)]
struct RawCatalog {
    indicators: Vec<IndicatorSpec>,
    profiles: Vec<ProfileSpec>,
}

impl Catalog {
    pub fn new(
        indicators: Vec<IndicatorSpec>,
        profiles: Vec<ProfileSpec>,
    ) -> Result<Self, IndicatorError> {
        let bad = |msg: String| Err(IndicatorError::InvalidCatalog(msg));

        let mut by_id = BTreeMap::new();
        for ind in &indicators {
            if ind.id.is_empty() {
                return bad("indicator with empty id".into());
            }
            if ind.unit.trim().is_empty() {
                return bad(format!("indicator `{}` has an empty unit", ind.id));
            }
            if by_id.insert(ind.id.as_str(), ind).is_some() {
                return bad(format!("duplicate indicator id `{}`", ind.id));
            }
        }

        let mut profile_ids = BTreeSet::new();
        let mut owner: BTreeMap<&str, &str> = BTreeMap::new();
        for p in &profiles {
            if !profile_ids.insert(p.id.as_str()) {
                return bad(format!("duplicate profile id `{}`", p.id));
            }
            if p.indicator_ids.is_empty() {
                return bad(format!("profile `{}` has no indicators", p.id));
            }
            for iid in &p.indicator_ids {
                let Some(ind) = by_id.get(iid.as_str()) else {
                    return bad(format!(
                        "profile `{}` lists unknown indicator `{iid}`",
                        p.id
                    ));
                };
                if let Some(prev) = owner.insert(iid.as_str(), p.id.as_str()) {
                    return bad(if prev == p.id {
                        format!("profile `{}` lists `{iid}` twice", p.id)
                    } else {
                        format!(
                            "indicator `{iid}` listed by profiles `{prev}` and `{}`",
                            p.id
                        )
                    });
                }
                if ind.profile_id != p.id {
                    return bad(format!(
                        "indicator `{iid}` declares profile `{}` but is listed by `{}`",
                        ind.profile_id, p.id
                    ));
                }
            }
        }
        for ind in &indicators {
            if !owner.contains_key(ind.id.as_str()) {
                return bad(format!("indicator `{}` belongs to no profile", ind.id));
            }
        }

        Ok(Catalog {
            indicators,
            profiles,
        })
    }

    /// Parses and validates a JSON catalog file
    /// (`{"indicators": [...], "profiles": [...]}`).
    pub fn from_json(text: &str) -> Result<Self, IndicatorError> {
        let raw: RawCatalog = serde_json::from_str(text)
            .map_err(|e| IndicatorError::InvalidCatalog(e.to_string()))?;
        Catalog::new(raw.indicators, raw.profiles)
    }

    pub fn indicators(&self) -> &[IndicatorSpec] {
        &self.indicators
    }

    pub fn profiles(&self) -> &[ProfileSpec] {
        &self.profiles
    }

    pub fn indicator(&self, id: &str) -> Option<&IndicatorSpec> {
        self.indicators.iter().find(|i| i.id == id)
    }

    /// Indicator ids in profile order, then list order within each profile.
    pub fn ordered_ids(&self) -> Vec<&str> {
        self.profiles
            .iter()
            .flat_map(|p| p.indicator_ids.iter().map(String::as_str))
            .collect()
    }
}

/// The ten-indicator lightness catalog: a software profile (ET, TH, CPI, CMR)
/// and a hardware profile (ET, TH, PD, LUT, LR, PC). Throughputs are the only
/// indicators where higher raw values are better.
pub fn default_li_catalog() -> Catalog {
    use Directionality::*;
    let ind = |id: &str, name: &str, unit: &str, d, profile: &str| IndicatorSpec {
        id: id.into(),
        name: name.into(),
        unit: unit.into(),
        directionality: d,
        profile_id: profile.into(),
    };
    let indicators = vec![
        ind("sw.et", "Software execution time", "s", LowerIsBetter, "sw"),
        ind("sw.th", "Software throughput", "bps", HigherIsBetter, "sw"),
        ind(
            "sw.cpi",
            "Clock cycles per instruction",
            "cycles/instr",
            LowerIsBetter,
            "sw",
        ),
        ind(
            "sw.cmr",
            "Cache miss ratio",
            "dimensionless",
            LowerIsBetter,
            "sw",
        ),
        ind("hw.et", "Hardware execution time", "s", LowerIsBetter, "hw"),
        ind("hw.th", "Hardware throughput", "bps", HigherIsBetter, "hw"),
        ind("hw.pd", "Propagation delay", "ns", LowerIsBetter, "hw"),
        ind("hw.lut", "Lookup tables", "count", LowerIsBetter, "hw"),
        ind("hw.lr", "Logic registers", "count", LowerIsBetter, "hw"),
        ind("hw.pc", "Power consumption", "W", LowerIsBetter, "hw"),
    ];
    let ids = |p: &str| {
        indicators
            .iter()
            .filter(|i| i.profile_id == p)
            .map(|i| i.id.clone())
            .collect::<Vec<_>>()
    };
    let profiles = vec![
        ProfileSpec {
            id: "sw".into(),
            name: "Software profile".into(),
            indicator_ids: ids("sw"),
        },
        ProfileSpec {
            id: "hw".into(),
            name: "Hardware profile".into(),
            indicator_ids: ids("hw"),
        },
    ];
    Catalog::new(indicators, profiles).expect("built-in catalog is valid")
}
