//! ICM report graphs.
//!
//! An expectation report is one `icm:ExpectationReport` node with a blank
//! branch per verdict, attached through `icm:compliant` or `icm:degraded`;
//! each branch is typed `icm:PropertyParameter` and carries the reason, the
//! reported parameter and an `icm:valueBy` value node. The intent report
//! wraps the expectation reports and the lifecycle event.

use std::fmt;

use super::verdict::{ComplianceStatus, ComplianceVerdict};
use super::ReportError;
use crate::kb::Catalog;
use crate::pipeline::{parameter_node, LifecycleEvent, NetworkIntent};
use crate::rdf::{Graph, Term, Triple};
use crate::vocab;

/// Fixed local name of the service-property expectation report node.
pub const EXPECTATION_REPORT_NODE: &str = "ER2_ServiceProperty";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateEvent {
    StateComplies,
    StateDegrades,
}

impl StateEvent {
    pub fn iri(&self) -> Term {
        match self {
            StateEvent::StateComplies => vocab::imo::state_complies(),
            StateEvent::StateDegrades => vocab::imo::state_degrades(),
        }
    }

    pub fn from_iri(term: &Term) -> Option<StateEvent> {
        if term == &vocab::imo::state_complies() {
            Some(StateEvent::StateComplies)
        } else if term == &vocab::imo::state_degrades() {
            Some(StateEvent::StateDegrades)
        } else {
            None
        }
    }
}

impl fmt::Display for StateEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateEvent::StateComplies => write!(f, "StateComplies"),
            StateEvent::StateDegrades => write!(f, "StateDegrades"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct IntentReport {
    pub intent_id: String,
    pub expectation_reports: Vec<Graph>,
    pub state_event: StateEvent,
    pub timestamp: String,
}

/// Builds the expectation-report graph for one set of verdicts.
pub fn expectation_report(
    verdicts: &[ComplianceVerdict],
    intent: &NetworkIntent,
) -> Result<Graph, ReportError> {
    if verdicts.is_empty() {
        return Err(ReportError::EmptyVerdicts);
    }
    let mut graph = Graph::new();
    for (label, ns) in vocab::standard_prefixes() {
        graph.add_prefix(label, ns);
    }
    let mut add = |s: Term, p: Term, o: Term| {
        graph.insert(Triple::new(s, p, o).expect("well-formed by construction"));
    };
    let rdf_type = vocab::rdf_type();
    let report = vocab::iri(vocab::REP, EXPECTATION_REPORT_NODE);

    add(report.clone(), rdf_type.clone(), vocab::icm::expectation_report());
    add(
        report.clone(),
        vocab::icm::has_target(),
        Catalog::service_iri(&intent.service),
    );
    add(
        report.clone(),
        vocab::icm::reports_about(),
        vocab::iri(vocab::EX_INTENT, "Exp1_property"),
    );

    for (i, verdict) in verdicts.iter().enumerate() {
        let edge = match verdict.status {
            ComplianceStatus::Compliant => vocab::icm::compliant(),
            ComplianceStatus::Degraded => vocab::icm::degraded(),
        };
        let branch = Term::blank(format!("v{i}"));
        let value_node = Term::blank(format!("v{i}-value"));
        add(report.clone(), edge, branch.clone());
        add(branch.clone(), rdf_type.clone(), vocab::icm::property_parameter());
        add(branch.clone(), vocab::icm::reason(), verdict.reason.iri());
        add(
            branch.clone(),
            vocab::icm::reports_about(),
            parameter_node(verdict.kpi),
        );
        add(branch, vocab::icm::value_by(), value_node.clone());
        add(
            value_node,
            verdict.kpi.iri(),
            Term::string_literal(verdict.observed_text()),
        );
    }
    Ok(graph)
}

/// Wraps expectation reports into an intent report. The state event is
/// `StateComplies` exactly when no expectation report carries a degraded
/// branch.
pub fn intent_report(
    intent: &NetworkIntent,
    expectation_reports: Vec<Graph>,
    timestamp: impl Into<String>,
) -> Result<IntentReport, ReportError> {
    if expectation_reports.is_empty() {
        return Err(ReportError::EmptyReports);
    }
    let degraded_edge = vocab::icm::degraded();
    let any_degraded = expectation_reports
        .iter()
        .any(|g| !g.match_pattern(None, Some(&degraded_edge), None).is_empty());
    let state_event = if any_degraded {
        StateEvent::StateDegrades
    } else {
        StateEvent::StateComplies
    };
    Ok(IntentReport {
        intent_id: intent.intent_id.clone(),
        expectation_reports,
        state_event,
        timestamp: timestamp.into(),
    })
}

impl IntentReport {
    /// The full report graph: the `icm:IntentReport` node plus all embedded
    /// expectation reports.
    pub fn to_graph(&self) -> Graph {
        let mut graph = Graph::new();
        for (label, ns) in vocab::standard_prefixes() {
            graph.add_prefix(label, ns);
        }
        let rdf_type = vocab::rdf_type();
        let node = vocab::iri(vocab::REP, &format!("IR_{}", self.intent_id));
        let mut add = |s: Term, p: Term, o: Term| {
            graph.insert(Triple::new(s, p, o).expect("well-formed by construction"));
        };
        add(node.clone(), rdf_type, vocab::icm::intent_report());
        add(
            node.clone(),
            vocab::icm::reports_about(),
            vocab::iri(vocab::EX_INTENT, &self.intent_id),
        );
        add(node.clone(), vocab::icm::has_event(), self.state_event.iri());
        add(
            node.clone(),
            vocab::icm::timestamp(),
            Term::string_literal(&self.timestamp),
        );
        add(
            node,
            vocab::icm::has_expectation_report(),
            vocab::iri(vocab::REP, EXPECTATION_REPORT_NODE),
        );
        for er in &self.expectation_reports {
            graph.merge(er);
        }
        graph
    }
}

/// Maps a report's state event onto the lifecycle event it triggers.
pub fn feedback(report: &IntentReport) -> LifecycleEvent {
    match report.state_event {
        StateEvent::StateComplies => LifecycleEvent::ReportCompliant,
        StateEvent::StateDegrades => LifecycleEvent::ReportDegraded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::{Kpi, ResourceKind};
    use crate::pipeline::{IntentState, Threshold};
    use crate::report::verdict::{ComplianceVerdict, Observed};
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

    fn verdict(kpi: Kpi, value: f64, threshold: f64) -> ComplianceVerdict {
        ComplianceVerdict::new(
            kpi,
            Observed::Value(value),
            Threshold {
                value: threshold,
                unit: kpi.unit().into(),
            },
        )
    }

    #[test]
    fn branches_match_verdict_statuses() {
        let verdicts = vec![
            verdict(Kpi::Latency, 493.1097, 150.0),
            verdict(Kpi::PacketErrorRate, 0.0, 0.001),
        ];
        let graph = expectation_report(&verdicts, &intent()).unwrap();
        let compliant = graph.match_pattern(None, Some(&vocab::icm::compliant()), None);
        let degraded = graph.match_pattern(None, Some(&vocab::icm::degraded()), None);
        assert_eq!(compliant.len(), 1);
        assert_eq!(degraded.len(), 1);
    }

    #[test]
    fn all_compliant_report_has_no_degraded_edge() {
        let verdicts = vec![
            verdict(Kpi::Latency, 17.6459, 200.0),
            verdict(Kpi::PacketErrorRate, 0.0, 0.000001),
        ];
        let graph = expectation_report(&verdicts, &intent()).unwrap();
        assert_eq!(
            graph.match_pattern(None, Some(&vocab::icm::compliant()), None).len(),
            2
        );
        assert!(graph.match_pattern(None, Some(&vocab::icm::degraded()), None).is_empty());
    }

    #[test]
    fn empty_verdicts_are_rejected() {
        assert!(matches!(
            expectation_report(&[], &intent()),
            Err(ReportError::EmptyVerdicts)
        ));
    }

    #[test]
    fn state_event_biconditional() {
        let all_good = expectation_report(
            &[verdict(Kpi::Latency, 10.0, 150.0)],
            &intent(),
        )
        .unwrap();
        let report = intent_report(&intent(), vec![all_good], "5").unwrap();
        assert_eq!(report.state_event, StateEvent::StateComplies);
        assert_eq!(feedback(&report), LifecycleEvent::ReportCompliant);

        let one_bad = expectation_report(
            &[
                verdict(Kpi::Latency, 493.1097, 150.0),
                verdict(Kpi::PacketErrorRate, 0.0, 0.001),
            ],
            &intent(),
        )
        .unwrap();
        let report = intent_report(&intent(), vec![one_bad], "5").unwrap();
        assert_eq!(report.state_event, StateEvent::StateDegrades);
        assert_eq!(feedback(&report), LifecycleEvent::ReportDegraded);
    }

    #[test]
    fn empty_reports_are_rejected() {
        assert!(matches!(
            intent_report(&intent(), vec![], "5"),
            Err(ReportError::EmptyReports)
        ));
    }
}
