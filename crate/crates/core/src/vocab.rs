//! IRI vocabulary: the TM Forum Intent Common Model terms plus the service,
//! resource, KPI and reporting extension namespaces used by the knowledge base.

use crate::rdf::Term;

/// TM Forum Intent Common Model namespace.
pub const ICM: &str = "http://tio.models.tmforum.org/tio/v2.0.0/IntentCommonModel/";
/// TM Forum Intent Management Ontology namespace (lifecycle report events).
pub const IMO: &str = "http://tio.models.tmforum.org/tio/v2.0.0/IntentManagementOntology/";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

/// Extension-model namespaces. These mirror the published service/KPI models.
pub const KPI: &str = "http://intent-forge.example.org/kpi/";
pub const MET: &str = "http://intent-forge.example.org/metric/";
pub const SERVICE: &str = "http://intent-forge.example.org/service/";
pub const CATALOG: &str = "http://intent-forge.example.org/catalog/";
pub const TARGET_RESOURCE: &str = "http://intent-forge.example.org/targetResource/";
pub const REP: &str = "http://intent-forge.example.org/report/";
pub const EX_INTENT: &str = "http://intent-forge.example.org/intent/";

pub fn iri(ns: &str, local: &str) -> Term {
    Term::iri_unchecked(format!("{ns}{local}"))
}

pub fn rdf_type() -> Term {
    iri(RDF, "type")
}

pub fn rdfs_subclass_of() -> Term {
    iri(RDFS, "subClassOf")
}

pub fn xsd_string() -> String {
    format!("{XSD}string")
}

pub fn xsd_integer() -> String {
    format!("{XSD}integer")
}

pub fn xsd_decimal() -> String {
    format!("{XSD}decimal")
}

pub fn rdf_lang_string() -> String {
    format!("{RDF}langString")
}

/// Project-local datatype for millisecond-valued literals.
pub fn dt_milliseconds() -> String {
    format!("{MET}milliseconds")
}

/// Project-local datatype for bit-per-second-valued literals.
pub fn dt_bits_per_second() -> String {
    format!("{MET}bitsPerSecond")
}

/// Standard prefix bindings for graphs this crate generates.
pub fn standard_prefixes() -> Vec<(&'static str, &'static str)> {
    vec![
        ("icm", ICM),
        ("imo", IMO),
        ("rdf", RDF),
        ("rdfs", RDFS),
        ("xsd", XSD),
        ("kpi", KPI),
        ("met", MET),
        ("service", SERVICE),
        ("catalog", CATALOG),
        ("targetResource", TARGET_RESOURCE),
        ("rep", REP),
        ("exI", EX_INTENT),
    ]
}

pub mod icm {
    use super::{iri, Term, ICM};

    pub fn intent() -> Term {
        iri(ICM, "Intent")
    }
    pub fn target() -> Term {
        iri(ICM, "Target")
    }
    pub fn expectation() -> Term {
        iri(ICM, "Expectation")
    }
    pub fn delivery_expectation() -> Term {
        iri(ICM, "DeliveryExpectation")
    }
    pub fn property_expectation() -> Term {
        iri(ICM, "PropertyExpectation")
    }
    pub fn parameter() -> Term {
        iri(ICM, "Parameter")
    }
    pub fn property_parameter() -> Term {
        iri(ICM, "PropertyParameter")
    }
    pub fn reporting_parameter() -> Term {
        iri(ICM, "ReportingParameter")
    }
    pub fn requirement_reporter() -> Term {
        iri(ICM, "RequirementReporter")
    }
    pub fn intent_report() -> Term {
        iri(ICM, "IntentReport")
    }
    pub fn expectation_report() -> Term {
        iri(ICM, "ExpectationReport")
    }
    pub fn has_expectation() -> Term {
        iri(ICM, "hasExpectation")
    }
    pub fn has_parameter() -> Term {
        iri(ICM, "hasParameter")
    }
    pub fn has_target() -> Term {
        iri(ICM, "hasTarget")
    }
    pub fn has_state() -> Term {
        iri(ICM, "hasState")
    }
    pub fn has_event() -> Term {
        iri(ICM, "hasEvent")
    }
    pub fn has_expectation_report() -> Term {
        iri(ICM, "hasExpectationReport")
    }
    pub fn expectation_class() -> Term {
        iri(ICM, "expectationClass")
    }
    pub fn value_by() -> Term {
        iri(ICM, "valueBy")
    }
    pub fn target_resource_prop() -> Term {
        iri(ICM, "targetResource")
    }
    pub fn has_condition() -> Term {
        iri(ICM, "hasCondition")
    }
    pub fn reports_about() -> Term {
        iri(ICM, "reportsAbout")
    }
    pub fn reporting_parameter_prop() -> Term {
        iri(ICM, "reportingParameter")
    }
    pub fn intent_owner() -> Term {
        iri(ICM, "intentOwner")
    }
    pub fn timestamp() -> Term {
        iri(ICM, "timestamp")
    }
    pub fn compliant() -> Term {
        iri(ICM, "compliant")
    }
    pub fn degraded() -> Term {
        iri(ICM, "degraded")
    }
    pub fn reason() -> Term {
        iri(ICM, "reason")
    }
    pub fn reason_meets_requirement() -> Term {
        iri(ICM, "ReasonMeetsRequirement")
    }
    pub fn reason_not_compliant() -> Term {
        iri(ICM, "ReasonNotCompliant")
    }
    pub fn intent_state_received() -> Term {
        iri(ICM, "IntentStateReceived")
    }
    pub fn intent_state_compliant() -> Term {
        iri(ICM, "IntentStateCompliant")
    }
    pub fn state_degraded() -> Term {
        iri(ICM, "StateDegraded")
    }
    pub fn state_updated() -> Term {
        iri(ICM, "StateUpdated")
    }
    pub fn state_finalized() -> Term {
        iri(ICM, "StateFinalized")
    }
}

pub mod imo {
    use super::{iri, Term, IMO};

    pub fn state_complies() -> Term {
        iri(IMO, "StateComplies")
    }
    pub fn state_degrades() -> Term {
        iri(IMO, "StateDegrades")
    }
}

pub mod target_resource {
    use super::{iri, Term, TARGET_RESOURCE};

    pub fn gbr() -> Term {
        iri(TARGET_RESOURCE, "GBR")
    }
    pub fn ngbr() -> Term {
        iri(TARGET_RESOURCE, "NGBR")
    }
}

pub mod met {
    use super::{iri, Term, MET};

    pub fn gbr_rate() -> Term {
        iri(MET, "gbrRate")
    }
}
