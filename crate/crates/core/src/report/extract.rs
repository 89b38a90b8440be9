//! Inverse extraction: reading verdicts and lifecycle events back out of
//! report graphs. Used by the report-summary command and as the round-trip
//! oracle for report generation.

use super::graphs::StateEvent;
use super::verdict::{parse_observed, ComplianceStatus, ComplianceVerdict, Reason};
use super::ReportError;
use crate::kb::Kpi;
use crate::pipeline::{kpi_of_parameter_node, NetworkIntent};
use crate::rdf::{Graph, Term};
use crate::vocab;

#[derive(Debug, Clone, PartialEq)]
pub struct ExtractedVerdict {
    pub kpi: Kpi,
    pub raw_value: String,
    pub status: ComplianceStatus,
    pub reason: Reason,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtractedReport {
    pub intent_id: String,
    pub service: String,
    pub state_event: StateEvent,
    pub timestamp: String,
    pub verdicts: Vec<ExtractedVerdict>,
}

fn single_subject(graph: &Graph, class: &Term, what: &str) -> Result<Term, ReportError> {
    let rdf_type = vocab::rdf_type();
    let nodes = graph.match_pattern(None, Some(&rdf_type), Some(class));
    match nodes.as_slice() {
        [t] => Ok(t.subject().clone()),
        [] => Err(ReportError::Malformed(format!("no {what} node"))),
        _ => Err(ReportError::Malformed(format!("multiple {what} nodes"))),
    }
}

/// Extracts the verdict branches of the expectation report in `graph`,
/// ordered by KPI.
pub fn extract_branches(graph: &Graph) -> Result<(Term, Vec<ExtractedVerdict>), ReportError> {
    let er = single_subject(graph, &vocab::icm::expectation_report(), "expectation report")?;
    let mut verdicts = Vec::new();
    for (edge, status) in [
        (vocab::icm::compliant(), ComplianceStatus::Compliant),
        (vocab::icm::degraded(), ComplianceStatus::Degraded),
    ] {
        for triple in graph.match_pattern(Some(&er), Some(&edge), None) {
            let branch = triple.object();
            let reason_term = graph
                .object_of(branch, &vocab::icm::reason())
                .ok_or_else(|| ReportError::Malformed("branch without reason".into()))?;
            let reason = Reason::from_iri(reason_term)
                .ok_or_else(|| ReportError::Malformed(format!("unknown reason {reason_term}")))?;
            let about = graph
                .object_of(branch, &vocab::icm::reports_about())
                .ok_or_else(|| ReportError::Malformed("branch without reportsAbout".into()))?;
            let kpi = kpi_of_parameter_node(about)
                .ok_or_else(|| ReportError::Malformed(format!("unknown parameter {about}")))?;
            let value_node = graph
                .object_of(branch, &vocab::icm::value_by())
                .ok_or_else(|| ReportError::Malformed("branch without valueBy".into()))?;
            let value = graph
                .match_pattern(Some(value_node), Some(&kpi.iri()), None)
                .first()
                .and_then(|t| t.object().as_literal().cloned())
                .ok_or_else(|| {
                    ReportError::Malformed(format!("no {kpi} literal on value node"))
                })?;
            verdicts.push(ExtractedVerdict {
                kpi,
                raw_value: value.lexical,
                status,
                reason,
            });
        }
    }
    verdicts.sort_by_key(|v| v.kpi);
    Ok((er, verdicts))
}

/// Extracts the full intent report: id, lifecycle event, timestamp, target
/// service and per-KPI verdicts.
pub fn extract_report(graph: &Graph) -> Result<ExtractedReport, ReportError> {
    let ir = single_subject(graph, &vocab::icm::intent_report(), "intent report")?;
    let about = graph
        .object_of(&ir, &vocab::icm::reports_about())
        .ok_or_else(|| ReportError::Malformed("intent report without reportsAbout".into()))?;
    let intent_id = about
        .local_name(vocab::EX_INTENT)
        .ok_or_else(|| ReportError::Malformed(format!("unexpected intent node {about}")))?
        .to_string();
    let event_term = graph
        .object_of(&ir, &vocab::icm::has_event())
        .ok_or_else(|| ReportError::Malformed("intent report without event".into()))?;
    let state_event = StateEvent::from_iri(event_term)
        .ok_or_else(|| ReportError::Malformed(format!("unknown state event {event_term}")))?;
    let timestamp = graph
        .object_of(&ir, &vocab::icm::timestamp())
        .and_then(|t| t.as_literal())
        .map(|l| l.lexical.clone())
        .unwrap_or_default();

    let (er, verdicts) = extract_branches(graph)?;
    let service = graph
        .object_of(&er, &vocab::icm::has_target())
        .and_then(|t| t.local_name(vocab::CATALOG))
        .ok_or_else(|| ReportError::Malformed("expectation report without target".into()))?
        .to_string();

    Ok(ExtractedReport {
        intent_id,
        service,
        state_event,
        timestamp,
        verdicts,
    })
}

/// Reconstructs full compliance verdicts from a report graph, taking the
/// thresholds from the network intent. Inverse of report generation.
pub fn extract_verdicts(
    graph: &Graph,
    intent: &NetworkIntent,
) -> Result<Vec<ComplianceVerdict>, ReportError> {
    let (_, extracted) = extract_branches(graph)?;
    extracted
        .into_iter()
        .map(|v| {
            let threshold = intent
                .thresholds
                .get(&v.kpi)
                .ok_or_else(|| ReportError::MissingThreshold(v.kpi.name().to_string()))?
                .clone();
            let observed = parse_observed(v.kpi, &v.raw_value)?;
            let rebuilt = ComplianceVerdict::new(v.kpi, observed, threshold);
            if rebuilt.status != v.status || rebuilt.reason != v.reason {
                return Err(ReportError::Malformed(format!(
                    "report {} branch disagrees with recomputed verdict",
                    v.kpi
                )));
            }
            Ok(rebuilt)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::ResourceKind;
    use crate::netsim::KpiMeasurement;
    use crate::pipeline::{IntentState, Threshold};
    use crate::report::{expectation_report, intent_report, judge};
    use std::collections::BTreeMap;

    fn intent() -> NetworkIntent {
        let mut thresholds = BTreeMap::new();
        thresholds.insert(Kpi::Latency, Threshold { value: 150.0, unit: "ms".into() });
        thresholds.insert(Kpi::PacketErrorRate, Threshold { value: 0.001, unit: "".into() });
        NetworkIntent {
            intent_id: "I-ConvVideo-1".into(),
            service: "ConvVideo".into(),
            resource: ResourceKind::Gbr,
            thresholds,
            priority: 40,
            qi5g: 2,
            gbr_rate_bps: Some(1_000_000.0),
            state: IntentState::Received,
        }
    }

    fn measurement(latency: f64, per: f64) -> KpiMeasurement {
        KpiMeasurement {
            intent_id: "I-ConvVideo-1".into(),
            latency_ms: Some(latency),
            jitter_ms: Some(0.5),
            per_observed: per,
            samples: 400,
        }
    }

    #[test]
    fn generated_report_extracts_to_original_verdicts() {
        let intent = intent();
        let verdicts = judge(&measurement(493.1097, 0.0), &intent).unwrap();
        let er = expectation_report(&verdicts, &intent).unwrap();
        let report = intent_report(&intent, vec![er], "5").unwrap();
        let graph = report.to_graph();
        let extracted = extract_verdicts(&graph, &intent).unwrap();
        assert_eq!(extracted, verdicts);
    }

    #[test]
    fn extract_report_reads_id_event_and_service() {
        let intent = intent();
        let verdicts = judge(&measurement(493.1097, 0.0), &intent).unwrap();
        let er = expectation_report(&verdicts, &intent).unwrap();
        let report = intent_report(&intent, vec![er], "5").unwrap();
        let extracted = extract_report(&report.to_graph()).unwrap();
        assert_eq!(extracted.intent_id, "I-ConvVideo-1");
        assert_eq!(extracted.service, "ConvVideo");
        assert_eq!(extracted.state_event, StateEvent::StateDegrades);
        assert_eq!(extracted.timestamp, "5");
        assert_eq!(extracted.verdicts.len(), 2);
        assert_eq!(extracted.verdicts[0].kpi, Kpi::Latency);
        assert_eq!(extracted.verdicts[0].raw_value, "493.1097 ms");
    }

    #[test]
    fn graph_without_report_node_is_malformed() {
        let graph = Graph::new();
        assert!(matches!(
            extract_report(&graph),
            Err(ReportError::Malformed(_))
        ));
    }
}
