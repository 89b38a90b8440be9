//! Service- and network-intent construction.
//!
//! A service intent instantiates the ICM template as a graph (one
//! `icm:Intent` node with a delivery and a property expectation filled from
//! catalog SLOs). A network intent is the flat deployable record: thresholds
//! resolved through knowledge-base queries, plus resource class, priority
//! and 5QI.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::lifecycle::IntentState;
use super::{PipelineError, UserIntent};
use crate::kb::{Catalog, Kpi, ResourceKind};
use crate::rdf::{Graph, Term, Triple};
use crate::vocab;

/// Issues `I-<service>-<n>` identifiers; one generator per engine instance.
#[derive(Debug, Default)]
pub struct IntentIdGen {
    counter: u64,
}

impl IntentIdGen {
    pub fn new() -> IntentIdGen {
        IntentIdGen::default()
    }

    pub fn next(&mut self, service: &str) -> String {
        self.counter += 1;
        format!("I-{service}-{}", self.counter)
    }
}

#[derive(Debug, Clone)]
pub struct ServiceIntent {
    pub intent_id: String,
    pub graph: Graph,
    pub service: String,
    pub reporting_params: Vec<Kpi>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub value: f64,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkIntent {
    pub intent_id: String,
    pub service: String,
    pub resource: ResourceKind,
    pub thresholds: BTreeMap<Kpi, Threshold>,
    pub priority: u32,
    #[serde(rename = "qi5G")]
    pub qi5g: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gbr_rate_bps: Option<f64>,
    pub state: IntentState,
}

/// Expectation node IRI within an intent graph.
fn expectation_node(local: &str) -> Term {
    vocab::iri(vocab::EX_INTENT, local)
}

/// Parameter node IRI for a KPI; the numbering mirrors the report shape.
pub fn parameter_node(kpi: Kpi) -> Term {
    let local = match kpi {
        Kpi::Priority => "Par1_priority",
        Kpi::Latency => "Par2_latency",
        Kpi::PacketErrorRate => "Par3_per",
        Kpi::Qi5g => "Par4_qi5G",
    };
    vocab::iri(vocab::EX_INTENT, local)
}

pub fn kpi_of_parameter_node(term: &Term) -> Option<Kpi> {
    [Kpi::Priority, Kpi::Latency, Kpi::PacketErrorRate, Kpi::Qi5g]
        .into_iter()
        .find(|k| &parameter_node(*k) == term)
}

/// Unit suffix implied by a literal datatype.
pub fn unit_of_datatype(datatype: &str) -> &'static str {
    if datatype == vocab::dt_milliseconds() {
        "ms"
    } else if datatype == vocab::dt_bits_per_second() {
        "bps"
    } else {
        ""
    }
}

/// Builds the ICM service-intent graph for a recognized user intent.
pub fn build_service_intent(
    user_intent: &UserIntent,
    catalog: &Catalog,
    ids: &mut IntentIdGen,
) -> Result<ServiceIntent, PipelineError> {
    let service = &user_intent.recognized_service;
    if catalog.get(service).is_none() {
        return Err(PipelineError::UnknownService(service.clone()));
    }
    let intent_id = ids.next(service);
    let resource = catalog.resource_of(service)?;

    let mut graph = Graph::new();
    for (label, ns) in vocab::standard_prefixes() {
        graph.add_prefix(label, ns);
    }
    let mut add = |s: Term, p: Term, o: Term| {
        graph.insert(Triple::new(s, p, o).expect("well-formed by construction"));
    };

    let rdf_type = vocab::rdf_type();
    let intent_node = vocab::iri(vocab::EX_INTENT, &intent_id);
    let delivery = expectation_node("Exp2_delivery");
    let property = expectation_node("Exp1_property");

    add(intent_node.clone(), rdf_type.clone(), vocab::icm::intent());
    add(
        intent_node.clone(),
        vocab::icm::intent_owner(),
        Term::string_literal(&user_intent.requester),
    );
    add(
        intent_node.clone(),
        vocab::icm::has_target(),
        Catalog::service_iri(service),
    );
    add(
        intent_node.clone(),
        vocab::icm::has_expectation(),
        delivery.clone(),
    );
    add(intent_node, vocab::icm::has_expectation(), property.clone());

    add(
        delivery.clone(),
        rdf_type.clone(),
        vocab::icm::delivery_expectation(),
    );
    add(delivery, vocab::icm::has_target(), resource.iri());

    add(
        property.clone(),
        rdf_type.clone(),
        vocab::icm::property_expectation(),
    );
    let reporting_params: Vec<Kpi> = Kpi::REPORTED.to_vec();
    for kpi in &reporting_params {
        let value_term = catalog.kpi_of(service, *kpi)?;
        let param = parameter_node(*kpi);
        let value_node = Term::blank(format!("vb-{}", kpi.name()));
        add(property.clone(), vocab::icm::has_parameter(), param.clone());
        add(param.clone(), rdf_type.clone(), vocab::icm::property_parameter());
        add(param, vocab::icm::value_by(), value_node.clone());
        add(value_node, kpi.iri(), value_term);
    }

    Ok(ServiceIntent {
        intent_id,
        graph,
        service: service.clone(),
        reporting_params,
    })
}

fn literal_number(term: &Term) -> Result<(f64, String), PipelineError> {
    let literal = term.as_literal().ok_or_else(|| {
        PipelineError::Malformed(format!("expected literal KPI value, found {term}"))
    })?;
    let value: f64 = literal.lexical.parse().map_err(|_| {
        PipelineError::Malformed(format!("KPI value '{}' is not numeric", literal.lexical))
    })?;
    Ok((value, unit_of_datatype(&literal.datatype).to_string()))
}

/// Resolves a service intent to a deployable network intent via KPI queries.
pub fn build_network_intent(
    service_intent: &ServiceIntent,
    catalog: &Catalog,
) -> Result<NetworkIntent, PipelineError> {
    let service = &service_intent.service;
    let spec = catalog
        .get(service)
        .ok_or_else(|| PipelineError::UnknownService(service.clone()))?;

    let mut thresholds = BTreeMap::new();
    for kpi in &service_intent.reporting_params {
        let term = catalog.kpi_of(service, *kpi)?;
        let (value, unit) = literal_number(&term)?;
        thresholds.insert(*kpi, Threshold { value, unit });
    }
    let (priority, _) = literal_number(&catalog.kpi_of(service, Kpi::Priority)?)?;
    let (qi5g, _) = literal_number(&catalog.kpi_of(service, Kpi::Qi5g)?)?;

    Ok(NetworkIntent {
        intent_id: service_intent.intent_id.clone(),
        service: service.clone(),
        resource: catalog.resource_of(service)?,
        thresholds,
        priority: priority as u32,
        qi5g: qi5g as u32,
        gbr_rate_bps: spec.gbr_rate_bps,
        state: IntentState::Received,
    })
}

impl NetworkIntent {
    /// Turtle form of the network intent.
    pub fn to_graph(&self) -> Graph {
        let mut graph = Graph::new();
        for (label, ns) in vocab::standard_prefixes() {
            graph.add_prefix(label, ns);
        }
        let mut add = |s: Term, p: Term, o: Term| {
            graph.insert(Triple::new(s, p, o).expect("well-formed by construction"));
        };
        let rdf_type = vocab::rdf_type();
        let node = vocab::iri(vocab::EX_INTENT, &self.intent_id);
        add(node.clone(), rdf_type.clone(), vocab::icm::intent());
        add(node.clone(), vocab::icm::has_state(), self.state.iri());
        add(
            node.clone(),
            vocab::icm::has_target(),
            Catalog::service_iri(&self.service),
        );
        add(
            node.clone(),
            vocab::icm::target_resource_prop(),
            self.resource.iri(),
        );
        add(
            node.clone(),
            Kpi::Priority.iri(),
            Term::literal(self.priority.to_string(), Kpi::Priority.datatype()),
        );
        add(
            node.clone(),
            Kpi::Qi5g.iri(),
            Term::literal(self.qi5g.to_string(), Kpi::Qi5g.datatype()),
        );
        for (kpi, threshold) in &self.thresholds {
            let condition = Term::blank(format!("cond-{}", kpi.name()));
            add(node.clone(), vocab::icm::has_condition(), condition.clone());
            add(
                condition,
                kpi.iri(),
                Term::literal(crate::kb::format_number(threshold.value), kpi.datatype()),
            );
        }
        graph
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("network intent serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::recognize;
    use crate::rdf::{isomorphic, parse_turtle, serialize_turtle};

    fn intent_for(text: &str) -> (ServiceIntent, Catalog) {
        let catalog = Catalog::load_builtin();
        let user = recognize(text, &catalog).unwrap();
        let mut ids = IntentIdGen::new();
        let si = build_service_intent(&user, &catalog, &mut ids).unwrap();
        (si, catalog)
    }

    #[test]
    fn service_intent_has_one_intent_node_and_both_expectations() {
        let (si, _) = intent_for("Mission Critical Voice");
        let rdf_type = vocab::rdf_type();
        let intents = si
            .graph
            .match_pattern(None, Some(&rdf_type), Some(&vocab::icm::intent()));
        assert_eq!(intents.len(), 1);
        let deliveries = si.graph.match_pattern(
            None,
            Some(&rdf_type),
            Some(&vocab::icm::delivery_expectation()),
        );
        let properties = si.graph.match_pattern(
            None,
            Some(&rdf_type),
            Some(&vocab::icm::property_expectation()),
        );
        assert_eq!(deliveries.len(), 1);
        assert_eq!(properties.len(), 1);
    }

    #[test]
    fn reporting_params_cover_latency_and_per() {
        let (si, _) = intent_for("deploy VideoBuffered");
        assert!(si.reporting_params.contains(&Kpi::Latency));
        assert!(si.reporting_params.contains(&Kpi::PacketErrorRate));
    }

    #[test]
    fn intent_graph_round_trips_isomorphically() {
        let (si, _) = intent_for("ConvVideo");
        let text = serialize_turtle(&si.graph);
        let reparsed = parse_turtle(&text).unwrap();
        assert!(isomorphic(&si.graph, &reparsed));
    }

    #[test]
    fn intent_id_format_is_stable() {
        let mut ids = IntentIdGen::new();
        assert_eq!(ids.next("ConvVideo"), "I-ConvVideo-1");
        assert_eq!(ids.next("McpttData"), "I-McpttData-2");
    }

    #[test]
    fn network_intent_resolves_thresholds_from_catalog() {
        let (si, catalog) = intent_for("ConvVideo");
        let ni = build_network_intent(&si, &catalog).unwrap();
        assert_eq!(ni.resource, ResourceKind::Gbr);
        assert_eq!(ni.state, IntentState::Received);
        let latency = &ni.thresholds[&Kpi::Latency];
        assert_eq!(latency.value, 150.0);
        assert_eq!(latency.unit, "ms");
        assert_eq!(ni.thresholds[&Kpi::PacketErrorRate].value, 0.001);
        assert_eq!(ni.priority, 40);
        assert_eq!(ni.qi5g, 2);
    }

    #[test]
    fn process_monitor_threshold_is_its_budget() {
        let (si, catalog) = intent_for("ProcessMonitor");
        let ni = build_network_intent(&si, &catalog).unwrap();
        assert_eq!(ni.thresholds[&Kpi::Latency].value, 50.0);
    }

    #[test]
    fn thresholds_equal_kpi_query_results_for_every_service() {
        let catalog = Catalog::load_builtin();
        let mut ids = IntentIdGen::new();
        for name in catalog.specs().keys() {
            let user = recognize(name, &catalog).unwrap();
            let si = build_service_intent(&user, &catalog, &mut ids).unwrap();
            let ni = build_network_intent(&si, &catalog).unwrap();
            for (kpi, threshold) in &ni.thresholds {
                let term = catalog.kpi_of(name, *kpi).unwrap();
                let lex = &term.as_literal().unwrap().lexical;
                assert_eq!(threshold.value, lex.parse::<f64>().unwrap(), "{name}/{kpi}");
            }
        }
    }
}
