//! The queryable service catalog: an RDF knowledge graph plus a record
//! mirror, kept coherent by deriving the records from the graph via the
//! shipped KPI query template.

use std::collections::BTreeMap;

use super::spec::{
    category_of_class, format_number, service_class, Kpi, ResourceKind, ServiceCategory,
    ServiceSpec, DEFAULT_GBR_RATE_BPS,
};
use super::KbError;
use crate::rdf::{parse_turtle, serialize_turtle, Graph, Term, Triple};
use crate::sparql::{evaluate, parse_query, substitute};
use crate::vocab;

const ICM_CORE_TTL: &str = include_str!("../../resources/models/icm-core.ttl");
const KPIS_TTL: &str = include_str!("../../resources/models/kpis.ttl");
const SERVICES_TTL: &str = include_str!("../../resources/models/services.ttl");

/// The KPI retrieval query template (`param`/`serv` placeholders).
pub const SERVICE_KPI_TEMPLATE: &str = include_str!("../../resources/queries/service-kpi.rq");

#[derive(Debug, Clone)]
pub struct Catalog {
    graph: Graph,
    specs: BTreeMap<String, ServiceSpec>,
}

impl Catalog {
    /// Loads the built-in knowledge base: ICM skeleton, KPI extension model
    /// and the eleven-service catalog.
    pub fn load_builtin() -> Catalog {
        let mut graph = Graph::new();
        for text in [ICM_CORE_TTL, KPIS_TTL, SERVICES_TTL] {
            let part = parse_turtle(text).expect("built-in model must parse");
            graph.merge(&part);
        }
        Catalog::from_graph(graph).expect("built-in model must be coherent")
    }

    /// Reconstructs the record mirror from a catalog graph.
    pub fn from_graph(graph: Graph) -> Result<Catalog, KbError> {
        let rdf_type = vocab::rdf_type();
        let mut specs = BTreeMap::new();
        for kind in [ResourceKind::Gbr, ResourceKind::Ngbr] {
            for triple in graph.match_pattern(None, Some(&rdf_type), Some(&kind.iri())) {
                let node = triple.subject().clone();
                let Some(name) = node.local_name(vocab::CATALOG).map(str::to_string) else {
                    // typed resource nodes outside the catalog namespace are
                    // class-level declarations, not services
                    continue;
                };
                let spec = derive_spec(&graph, &node, &name, kind)?;
                if specs.insert(name.clone(), spec).is_some() {
                    return Err(KbError::MalformedCatalog(format!(
                        "service '{name}' has two resource kinds"
                    )));
                }
            }
        }
        let catalog = Catalog { graph, specs };
        for spec in catalog.specs.values() {
            spec.validate()?;
        }
        Ok(catalog)
    }

    pub fn from_turtle(text: &str) -> Result<Catalog, KbError> {
        Ok(Catalog::from_graph(parse_turtle(text)?)?)
    }

    pub fn to_turtle(&self) -> String {
        serialize_turtle(&self.graph)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn specs(&self) -> &BTreeMap<String, ServiceSpec> {
        &self.specs
    }

    pub fn get(&self, service: &str) -> Option<&ServiceSpec> {
        self.specs.get(service)
    }

    pub fn service_iri(name: &str) -> Term {
        vocab::iri(vocab::CATALOG, name)
    }

    /// Retrieves one KPI literal through the shipped query template.
    pub fn kpi_of(&self, service: &str, kpi: Kpi) -> Result<Term, KbError> {
        if !self.specs.contains_key(service) {
            return Err(KbError::UnknownService(service.to_string()));
        }
        kpi_from_graph(&self.graph, &Catalog::service_iri(service), kpi)
            .and_then(|opt| {
                opt.ok_or_else(|| {
                    KbError::MalformedCatalog(format!(
                        "no {kpi} value reachable for service '{service}'"
                    ))
                })
            })
    }

    /// Like [`Catalog::kpi_of`], resolving the KPI from its string name.
    pub fn kpi_of_named(&self, service: &str, kpi: &str) -> Result<Term, KbError> {
        let kpi = Kpi::from_name(kpi).ok_or_else(|| KbError::UnknownKpi(kpi.to_string()))?;
        self.kpi_of(service, kpi)
    }

    /// Resource kind of a service, read from its `icm:Target` subclass link
    /// in the graph.
    pub fn resource_of(&self, service: &str) -> Result<ResourceKind, KbError> {
        if !self.specs.contains_key(service) {
            return Err(KbError::UnknownService(service.to_string()));
        }
        let node = Catalog::service_iri(service);
        let rdf_type = vocab::rdf_type();
        for triple in self.graph.match_pattern(Some(&node), Some(&rdf_type), None) {
            if let Some(kind) = ResourceKind::from_iri(triple.object()) {
                return Ok(kind);
            }
        }
        Err(KbError::MalformedCatalog(format!(
            "service '{service}' has no target resource type"
        )))
    }

    /// Registers a new service following the four-step extension procedure:
    /// resource subclass, KPI parameter classes, the service node with its
    /// KPI literals, and the reporting subclasses. Returns a new catalog;
    /// existing queries keep their solutions.
    pub fn register_service(&self, spec: ServiceSpec) -> Result<Catalog, KbError> {
        spec.validate()?;
        if self.specs.contains_key(&spec.name) {
            return Err(KbError::DuplicateService(spec.name));
        }
        let mut graph = self.graph.clone();
        for triple in service_triples(&spec) {
            graph.insert(triple);
        }
        let mut specs = self.specs.clone();
        specs.insert(spec.name.clone(), spec);
        Ok(Catalog { graph, specs })
    }
}

/// Runs the KPI template against an arbitrary graph; `Ok(None)` when the
/// service/KPI pair has no reachable value.
pub fn kpi_from_graph(graph: &Graph, service: &Term, kpi: Kpi) -> Result<Option<Term>, KbError> {
    let mut bindings = BTreeMap::new();
    bindings.insert("param".to_string(), kpi.iri());
    bindings.insert("serv".to_string(), service.clone());
    let text = substitute(SERVICE_KPI_TEMPLATE, &bindings)?;
    let query = parse_query(&text)?;
    let solutions = evaluate(&query, graph);
    match solutions.as_slice() {
        [] => Ok(None),
        [single] => Ok(single.get("value").cloned()),
        _ => Err(KbError::AmbiguousResult {
            service: service.to_string(),
            kpi: kpi.name().to_string(),
        }),
    }
}

fn derive_spec(
    graph: &Graph,
    node: &Term,
    name: &str,
    kind: ResourceKind,
) -> Result<ServiceSpec, KbError> {
    let malformed =
        |msg: String| -> KbError { KbError::MalformedCatalog(format!("service '{name}': {msg}")) };

    let rdf_type = vocab::rdf_type();
    let mut category: Option<ServiceCategory> = None;
    for triple in graph.match_pattern(Some(node), Some(&rdf_type), None) {
        if let Some((cat, res)) = category_of_class(triple.object()) {
            if res != kind {
                return Err(malformed(format!(
                    "service class {} contradicts resource kind {kind}",
                    triple.object()
                )));
            }
            category = Some(cat);
        }
    }
    let category = category.ok_or_else(|| malformed("no service category class".into()))?;

    let mut values = BTreeMap::new();
    for kpi in Kpi::ALL {
        let term = kpi_from_graph(graph, node, kpi)?
            .ok_or_else(|| malformed(format!("missing {kpi} value")))?;
        let literal = term
            .as_literal()
            .ok_or_else(|| malformed(format!("{kpi} value is not a literal")))?;
        let number: f64 = literal
            .lexical
            .parse()
            .map_err(|_| malformed(format!("{kpi} value '{}' is not numeric", literal.lexical)))?;
        values.insert(kpi, number);
    }

    let gbr_rate_bps = match kind {
        ResourceKind::Ngbr => None,
        ResourceKind::Gbr => {
            let rate = graph
                .object_of(node, &vocab::met::gbr_rate())
                .and_then(|t| t.as_literal())
                .map(|l| l.lexical.parse::<f64>())
                .transpose()
                .map_err(|_| malformed("gbrRate is not numeric".into()))?;
            Some(rate.unwrap_or(DEFAULT_GBR_RATE_BPS))
        }
    };

    let as_u32 = |kpi: Kpi| -> Result<u32, KbError> {
        let v = values[&kpi];
        if v.fract() == 0.0 && v >= 0.0 && v <= f64::from(u32::MAX) {
            Ok(v as u32)
        } else {
            Err(malformed(format!("{kpi} value {v} is not a small integer")))
        }
    };

    Ok(ServiceSpec {
        name: name.to_string(),
        category,
        resource: kind,
        qi5g: as_u32(Kpi::Qi5g)?,
        priority: as_u32(Kpi::Priority)?,
        pdb_ms: values[&Kpi::Latency],
        per: values[&Kpi::PacketErrorRate],
        gbr_rate_bps,
    })
}

/// The graph footprint of one service, mirroring the built-in model shape.
fn service_triples(spec: &ServiceSpec) -> Vec<Triple> {
    let t = |s: Term, p: Term, o: Term| Triple::new(s, p, o).expect("well-formed by construction");
    let rdf_type = vocab::rdf_type();
    let node = Catalog::service_iri(&spec.name);
    let mut triples = Vec::new();

    // step 1: resource kind as a subclass of icm:Target
    triples.push(t(
        spec.resource.iri(),
        vocab::rdfs_subclass_of(),
        vocab::icm::target(),
    ));

    // step 2: KPI parameter classes tied to the property expectation
    for kpi in Kpi::ALL {
        triples.push(t(
            kpi.iri(),
            vocab::rdfs_subclass_of(),
            vocab::icm::property_parameter(),
        ));
        triples.push(t(
            kpi.iri(),
            vocab::icm::expectation_class(),
            vocab::icm::property_expectation(),
        ));
    }

    // step 3: the service node, its resource target and its KPI literals
    triples.push(t(node.clone(), rdf_type.clone(), spec.resource.iri()));
    triples.push(t(
        node.clone(),
        rdf_type.clone(),
        service_class(spec.category, spec.resource),
    ));
    if let Some(rate) = spec.gbr_rate_bps {
        triples.push(t(
            node.clone(),
            vocab::met::gbr_rate(),
            Term::literal(format_number(rate), vocab::dt_bits_per_second()),
        ));
    }
    for kpi in Kpi::ALL {
        let param = Term::blank(format!("{}-{}-p", spec.name, kpi.name()));
        let value = Term::blank(format!("{}-{}-v", spec.name, kpi.name()));
        triples.push(t(node.clone(), vocab::icm::has_parameter(), param.clone()));
        triples.push(t(
            param.clone(),
            rdf_type.clone(),
            vocab::icm::property_parameter(),
        ));
        triples.push(t(param, vocab::icm::value_by(), value.clone()));
        triples.push(t(
            value,
            kpi.iri(),
            Term::literal(spec.kpi_lexical(kpi), kpi.datatype()),
        ));
    }

    // step 4: reporting subclasses referencing the parameters
    let reporter = vocab::iri(vocab::CATALOG, &format!("{}Reporter", spec.name));
    triples.push(t(
        reporter.clone(),
        rdf_type,
        vocab::icm::requirement_reporter(),
    ));
    triples.push(t(reporter.clone(), vocab::icm::reports_about(), node));
    for kpi in Kpi::REPORTED {
        triples.push(t(
            reporter.clone(),
            vocab::icm::reporting_parameter_prop(),
            kpi.iri(),
        ));
    }
    triples
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_has_eleven_services() {
        let catalog = Catalog::load_builtin();
        assert_eq!(catalog.specs().len(), 11);
        for name in [
            "ConvVoice",
            "ConvVideo",
            "RealTimeGaming",
            "NonConvVideo",
            "ProcessMonitor",
            "ImsSignalling",
            "TcpInteractive",
            "VideoBuffered",
            "McpttVoice",
            "McpttSignalling",
            "McpttData",
        ] {
            assert!(catalog.get(name).is_some(), "missing {name}");
        }
    }

    #[test]
    fn latency_budgets_of_named_services() {
        let catalog = Catalog::load_builtin();
        assert_eq!(catalog.get("ConvVideo").unwrap().pdb_ms, 150.0);
        assert_eq!(catalog.get("ProcessMonitor").unwrap().pdb_ms, 50.0);
    }

    #[test]
    fn mcptt_data_matches_its_standardized_row() {
        let catalog = Catalog::load_builtin();
        let spec = catalog.get("McpttData").unwrap();
        assert_eq!(spec.resource, ResourceKind::Ngbr);
        assert_eq!(spec.category, ServiceCategory::MissionCritical);
        assert_eq!(spec.qi5g, 70);
        assert_eq!(spec.priority, 55);
        assert_eq!(spec.pdb_ms, 200.0);
        assert_eq!(spec.per, 0.000001);
        assert_eq!(spec.gbr_rate_bps, None);
    }

    #[test]
    fn kpi_of_returns_latency_literal() {
        let catalog = Catalog::load_builtin();
        let term = catalog.kpi_of("ConvVideo", Kpi::Latency).unwrap();
        let lit = term.as_literal().unwrap();
        assert_eq!(lit.lexical, "150");
        assert_eq!(lit.datatype, vocab::dt_milliseconds());
    }

    #[test]
    fn kpi_of_per_matches_record_field() {
        let catalog = Catalog::load_builtin();
        let term = catalog.kpi_of("ConvVideo", Kpi::PacketErrorRate).unwrap();
        let value: f64 = term.as_literal().unwrap().lexical.parse().unwrap();
        assert_eq!(value, catalog.get("ConvVideo").unwrap().per);
    }

    #[test]
    fn unknown_service_and_kpi_are_rejected() {
        let catalog = Catalog::load_builtin();
        assert!(matches!(
            catalog.kpi_of("NoSuchService", Kpi::Latency),
            Err(KbError::UnknownService(_))
        ));
        assert!(matches!(
            catalog.kpi_of_named("ConvVideo", "throughput"),
            Err(KbError::UnknownKpi(_))
        ));
    }

    #[test]
    fn record_graph_coherence_over_whole_catalog() {
        let catalog = Catalog::load_builtin();
        for (name, spec) in catalog.specs() {
            for kpi in Kpi::ALL {
                let term = catalog.kpi_of(name, kpi).unwrap();
                let value: f64 = term.as_literal().unwrap().lexical.parse().unwrap();
                assert_eq!(value, spec.kpi_value(kpi), "{name}/{kpi}");
            }
        }
    }

    #[test]
    fn resource_of_examples() {
        let catalog = Catalog::load_builtin();
        assert_eq!(catalog.resource_of("ConvVideo").unwrap(), ResourceKind::Gbr);
        assert_eq!(catalog.resource_of("McpttData").unwrap(), ResourceKind::Ngbr);
        assert!(matches!(
            catalog.resource_of("Nope"),
            Err(KbError::UnknownService(_))
        ));
    }

    fn delay_critical_spec() -> ServiceSpec {
        // delay-critical GBR row: 5QI 82
        ServiceSpec {
            name: "DiscreteAutomation".into(),
            category: ServiceCategory::NonMissionCritical,
            resource: ResourceKind::Gbr,
            qi5g: 82,
            priority: 19,
            pdb_ms: 10.0,
            per: 0.0001,
            gbr_rate_bps: Some(1_000_000.0),
        }
    }

    #[test]
    fn register_service_is_immediately_queryable() {
        let catalog = Catalog::load_builtin().register_service(delay_critical_spec()).unwrap();
        let term = catalog.kpi_of("DiscreteAutomation", Kpi::Latency).unwrap();
        assert_eq!(term.as_literal().unwrap().lexical, "10");
        assert_eq!(
            catalog.resource_of("DiscreteAutomation").unwrap(),
            ResourceKind::Gbr
        );
    }

    #[test]
    fn register_duplicate_name_is_rejected() {
        let catalog = Catalog::load_builtin();
        let mut spec = delay_critical_spec();
        spec.name = "ConvVideo".into();
        assert!(matches!(
            catalog.register_service(spec),
            Err(KbError::DuplicateService(_))
        ));
    }

    #[test]
    fn register_does_not_disturb_existing_answers() {
        let before = Catalog::load_builtin();
        let after = before.register_service(delay_critical_spec()).unwrap();
        for (name, _) in before.specs() {
            for kpi in Kpi::ALL {
                assert_eq!(
                    before.kpi_of(name, kpi).unwrap(),
                    after.kpi_of(name, kpi).unwrap()
                );
            }
        }
    }

    #[test]
    fn catalog_round_trips_through_turtle() {
        let catalog = Catalog::load_builtin();
        let text = catalog.to_turtle();
        let reloaded = Catalog::from_turtle(&text).unwrap();
        assert_eq!(catalog.specs(), reloaded.specs());
    }
}
