//! Catalog record types: resource kinds, service categories, KPI identifiers
//! and the per-service specification mirrored by the RDF catalog graph.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::KbError;
use crate::rdf::Term;
use crate::vocab;

/// Default GBR reservation when a spec does not state one: 1 Mbit/s.
pub const DEFAULT_GBR_RATE_BPS: f64 = 1_000_000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ResourceKind {
    #[serde(rename = "GBR")]
    Gbr,
    #[serde(rename = "NGBR")]
    Ngbr,
}

impl ResourceKind {
    pub fn iri(&self) -> Term {
        match self {
            ResourceKind::Gbr => vocab::target_resource::gbr(),
            ResourceKind::Ngbr => vocab::target_resource::ngbr(),
        }
    }

    pub fn from_iri(term: &Term) -> Option<ResourceKind> {
        if term == &vocab::target_resource::gbr() {
            Some(ResourceKind::Gbr)
        } else if term == &vocab::target_resource::ngbr() {
            Some(ResourceKind::Ngbr)
        } else {
            None
        }
    }
}

impl fmt::Display for ResourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResourceKind::Gbr => write!(f, "GBR"),
            ResourceKind::Ngbr => write!(f, "NGBR"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ServiceCategory {
    MissionCritical,
    NonMissionCritical,
}

impl fmt::Display for ServiceCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ServiceCategory::MissionCritical => write!(f, "MC"),
            ServiceCategory::NonMissionCritical => write!(f, "NMC"),
        }
    }
}

/// Service class IRI for a (category, resource) pair.
pub fn service_class(category: ServiceCategory, resource: ResourceKind) -> Term {
    let local = match (category, resource) {
        (ServiceCategory::MissionCritical, ResourceKind::Gbr) => "McpttGBRService",
        (ServiceCategory::MissionCritical, ResourceKind::Ngbr) => "McpttNGBRService",
        (ServiceCategory::NonMissionCritical, ResourceKind::Gbr) => "NonMcpttGBRService",
        (ServiceCategory::NonMissionCritical, ResourceKind::Ngbr) => "NonMcpttNGBRService",
    };
    vocab::iri(vocab::SERVICE, local)
}

pub fn category_of_class(term: &Term) -> Option<(ServiceCategory, ResourceKind)> {
    let local = term.local_name(vocab::SERVICE)?;
    match local {
        "McpttGBRService" => Some((ServiceCategory::MissionCritical, ResourceKind::Gbr)),
        "McpttNGBRService" => Some((ServiceCategory::MissionCritical, ResourceKind::Ngbr)),
        "NonMcpttGBRService" => Some((ServiceCategory::NonMissionCritical, ResourceKind::Gbr)),
        "NonMcpttNGBRService" => Some((ServiceCategory::NonMissionCritical, ResourceKind::Ngbr)),
        _ => None,
    }
}

/// The service KPIs modeled in the knowledge base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kpi {
    #[serde(rename = "latency")]
    Latency,
    #[serde(rename = "packeterrorrate")]
    PacketErrorRate,
    #[serde(rename = "priority")]
    Priority,
    #[serde(rename = "qi5G")]
    Qi5g,
}

impl Kpi {
    pub const ALL: [Kpi; 4] = [Kpi::Latency, Kpi::PacketErrorRate, Kpi::Priority, Kpi::Qi5g];

    /// The KPIs carried by intent reports.
    pub const REPORTED: [Kpi; 2] = [Kpi::Latency, Kpi::PacketErrorRate];

    pub fn name(&self) -> &'static str {
        match self {
            Kpi::Latency => "latency",
            Kpi::PacketErrorRate => "packeterrorrate",
            Kpi::Priority => "priority",
            Kpi::Qi5g => "qi5G",
        }
    }

    pub fn from_name(name: &str) -> Option<Kpi> {
        match name {
            "latency" => Some(Kpi::Latency),
            "packeterrorrate" | "per" => Some(Kpi::PacketErrorRate),
            "priority" => Some(Kpi::Priority),
            "qi5G" | "qi5g" | "5qi" => Some(Kpi::Qi5g),
            _ => None,
        }
    }

    pub fn iri(&self) -> Term {
        match self {
            Kpi::Latency => vocab::iri(vocab::KPI, "latency"),
            Kpi::PacketErrorRate => vocab::iri(vocab::KPI, "packeterrorrate"),
            Kpi::Priority => vocab::iri(vocab::MET, "priority"),
            Kpi::Qi5g => vocab::iri(vocab::MET, "qi5G"),
        }
    }

    pub fn from_iri(term: &Term) -> Option<Kpi> {
        Kpi::ALL.into_iter().find(|k| &k.iri() == term)
    }

    /// Unit suffix used when printing values of this KPI ("" for unitless).
    pub fn unit(&self) -> &'static str {
        match self {
            Kpi::Latency => "ms",
            _ => "",
        }
    }

    /// Datatype IRI of this KPI's literals in the knowledge base.
    pub fn datatype(&self) -> String {
        match self {
            Kpi::Latency => vocab::dt_milliseconds(),
            Kpi::PacketErrorRate => vocab::xsd_decimal(),
            Kpi::Priority | Kpi::Qi5g => vocab::xsd_integer(),
        }
    }
}

impl fmt::Display for Kpi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One catalog entry. `gbr_rate_bps` must be present exactly for GBR specs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ServiceSpec {
    pub name: String,
    pub category: ServiceCategory,
    pub resource: ResourceKind,
    #[serde(rename = "qi5G")]
    pub qi5g: u32,
    pub priority: u32,
    pub pdb_ms: f64,
    pub per: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gbr_rate_bps: Option<f64>,
}

impl ServiceSpec {
    pub fn validate(&self) -> Result<(), KbError> {
        let invalid = |field: &str, reason: &str| KbError::InvalidSpec {
            field: field.to_string(),
            reason: reason.to_string(),
        };
        if self.name.is_empty() {
            return Err(invalid("name", "must not be empty"));
        }
        let mut chars = self.name.chars();
        let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
        let tail_ok = self
            .name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
        if !head_ok || !tail_ok {
            return Err(invalid(
                "name",
                "must start with a letter and use only letters, digits, '_' or '-'",
            ));
        }
        if self.qi5g == 0 {
            return Err(invalid("qi5G", "must be positive"));
        }
        if self.priority == 0 {
            return Err(invalid("priority", "must be positive"));
        }
        if !(self.pdb_ms.is_finite() && self.pdb_ms > 0.0) {
            return Err(invalid("pdb_ms", "must be a positive number"));
        }
        if !(self.per.is_finite() && (0.0..=1.0).contains(&self.per)) {
            return Err(invalid("per", "must lie in [0, 1]"));
        }
        match (self.resource, self.gbr_rate_bps) {
            (ResourceKind::Gbr, None) => {
                Err(invalid("gbr_rate_bps", "required for GBR services"))
            }
            (ResourceKind::Ngbr, Some(_)) => {
                Err(invalid("gbr_rate_bps", "only allowed for GBR services"))
            }
            (ResourceKind::Gbr, Some(rate)) if !(rate.is_finite() && rate > 0.0) => {
                Err(invalid("gbr_rate_bps", "must be a positive number"))
            }
            _ => Ok(()),
        }
    }

    /// Numeric value of a KPI field.
    pub fn kpi_value(&self, kpi: Kpi) -> f64 {
        match kpi {
            Kpi::Latency => self.pdb_ms,
            Kpi::PacketErrorRate => self.per,
            Kpi::Priority => f64::from(self.priority),
            Kpi::Qi5g => f64::from(self.qi5g),
        }
    }

    /// Lexical form of a KPI value as stored in the catalog graph.
    pub fn kpi_lexical(&self, kpi: Kpi) -> String {
        match kpi {
            Kpi::Priority => self.priority.to_string(),
            Kpi::Qi5g => self.qi5g.to_string(),
            Kpi::Latency => format_number(self.pdb_ms),
            Kpi::PacketErrorRate => format_number(self.per),
        }
    }
}

/// Minimal decimal rendering that round-trips through `str::parse::<f64>`.
pub fn format_number(value: f64) -> String {
    format!("{value}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gbr_spec() -> ServiceSpec {
        ServiceSpec {
            name: "Example".into(),
            category: ServiceCategory::NonMissionCritical,
            resource: ResourceKind::Gbr,
            qi5g: 2,
            priority: 40,
            pdb_ms: 150.0,
            per: 0.001,
            gbr_rate_bps: Some(1_000_000.0),
        }
    }

    #[test]
    fn valid_spec_passes() {
        assert!(gbr_spec().validate().is_ok());
    }

    #[test]
    fn gbr_without_rate_is_invalid() {
        let mut s = gbr_spec();
        s.gbr_rate_bps = None;
        let err = s.validate().unwrap_err();
        assert!(matches!(err, KbError::InvalidSpec { field, .. } if field == "gbr_rate_bps"));
    }

    #[test]
    fn ngbr_with_rate_is_invalid() {
        let mut s = gbr_spec();
        s.resource = ResourceKind::Ngbr;
        assert!(s.validate().is_err());
    }

    #[test]
    fn per_outside_unit_interval_is_invalid() {
        let mut s = gbr_spec();
        s.per = 1.5;
        assert!(s.validate().is_err());
    }

    #[test]
    fn kpi_names_round_trip() {
        for kpi in Kpi::ALL {
            assert_eq!(Kpi::from_name(kpi.name()), Some(kpi));
            assert_eq!(Kpi::from_iri(&kpi.iri()), Some(kpi));
        }
    }

    #[test]
    fn number_formatting_is_minimal() {
        assert_eq!(format_number(150.0), "150");
        assert_eq!(format_number(0.001), "0.001");
        assert_eq!(format_number(0.000001), "0.000001");
    }
}
