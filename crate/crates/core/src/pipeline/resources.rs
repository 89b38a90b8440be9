//! Resource-state bookkeeping and intent validation (admission control).

use std::collections::BTreeSet;

use super::intent::NetworkIntent;
use crate::kb::{ResourceKind, DEFAULT_GBR_RATE_BPS};

/// Link capacity and the GBR bandwidth committed to deployed intents.
/// The committed sum never exceeds the capacity.
#[derive(Debug, Clone)]
pub struct ResourceState {
    link_capacity_bps: f64,
    committed_gbr_bps: f64,
    deployed: BTreeSet<String>,
}

impl ResourceState {
    pub fn new(link_capacity_bps: f64) -> ResourceState {
        assert!(
            link_capacity_bps > 0.0 && link_capacity_bps.is_finite(),
            "link capacity must be positive"
        );
        ResourceState {
            link_capacity_bps,
            committed_gbr_bps: 0.0,
            deployed: BTreeSet::new(),
        }
    }

    pub fn link_capacity_bps(&self) -> f64 {
        self.link_capacity_bps
    }

    pub fn committed_gbr_bps(&self) -> f64 {
        self.committed_gbr_bps
    }

    pub fn deployed(&self) -> &BTreeSet<String> {
        &self.deployed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationOutcome {
    Admitted,
    Conflict(String),
}

/// Validates a network intent against the resource state. GBR intents are
/// admitted iff their reservation still fits the link; NGBR intents are
/// always admitted and commit nothing.
pub fn validate(intent: &NetworkIntent, state: &mut ResourceState) -> ValidationOutcome {
    match intent.resource {
        ResourceKind::Ngbr => {
            state.deployed.insert(intent.intent_id.clone());
            ValidationOutcome::Admitted
        }
        ResourceKind::Gbr => {
            let rate = intent.gbr_rate_bps.unwrap_or(DEFAULT_GBR_RATE_BPS);
            if state.committed_gbr_bps + rate <= state.link_capacity_bps {
                state.committed_gbr_bps += rate;
                state.deployed.insert(intent.intent_id.clone());
                ValidationOutcome::Admitted
            } else {
                ValidationOutcome::Conflict(format!(
                    "insufficient GBR capacity for {}: committed {} bit/s + requested {} bit/s exceeds link {} bit/s",
                    intent.intent_id, state.committed_gbr_bps, rate, state.link_capacity_bps
                ))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::Kpi;
    use crate::pipeline::{IntentState, Threshold};
    use std::collections::BTreeMap;

    fn intent(id: &str, resource: ResourceKind, rate: Option<f64>) -> NetworkIntent {
        let mut thresholds = BTreeMap::new();
        thresholds.insert(
            Kpi::Latency,
            Threshold {
                value: 100.0,
                unit: "ms".into(),
            },
        );
        thresholds.insert(
            Kpi::PacketErrorRate,
            Threshold {
                value: 0.01,
                unit: "".into(),
            },
        );
        NetworkIntent {
            intent_id: id.into(),
            service: "ConvVoice".into(),
            resource,
            thresholds,
            priority: 20,
            qi5g: 1,
            gbr_rate_bps: rate,
            state: IntentState::Received,
        }
    }

    #[test]
    fn gbr_intent_is_admitted_and_commits_bandwidth() {
        let mut state = ResourceState::new(100_000_000.0);
        let outcome = validate(&intent("I-a-1", ResourceKind::Gbr, Some(1_000_000.0)), &mut state);
        assert_eq!(outcome, ValidationOutcome::Admitted);
        assert_eq!(state.committed_gbr_bps(), 1_000_000.0);
        assert!(state.deployed().contains("I-a-1"));
    }

    #[test]
    fn gbr_intent_conflicts_at_full_capacity() {
        let mut state = ResourceState::new(1_000_000.0);
        assert_eq!(
            validate(&intent("I-a-1", ResourceKind::Gbr, Some(1_000_000.0)), &mut state),
            ValidationOutcome::Admitted
        );
        let outcome = validate(&intent("I-a-2", ResourceKind::Gbr, Some(1_000_000.0)), &mut state);
        assert!(matches!(outcome, ValidationOutcome::Conflict(reason) if reason.contains("insufficient GBR capacity")));
        assert_eq!(state.committed_gbr_bps(), 1_000_000.0);
    }

    #[test]
    fn ngbr_intent_never_commits() {
        let mut state = ResourceState::new(1_000_000.0);
        validate(&intent("I-g-1", ResourceKind::Gbr, Some(1_000_000.0)), &mut state);
        let outcome = validate(&intent("I-n-1", ResourceKind::Ngbr, None), &mut state);
        assert_eq!(outcome, ValidationOutcome::Admitted);
        assert_eq!(state.committed_gbr_bps(), 1_000_000.0);
    }
}
