//! Intent lifecycle state machine.
//!
//! States follow the ICM event vocabulary; Finalized is terminal and absorbs
//! further Finalize events.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::rdf::Term;
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IntentState {
    Received,
    Compliant,
    Degraded,
    Updated,
    Finalized,
}

impl IntentState {
    pub const ALL: [IntentState; 5] = [
        IntentState::Received,
        IntentState::Compliant,
        IntentState::Degraded,
        IntentState::Updated,
        IntentState::Finalized,
    ];

    /// The ICM state-event IRI for this state.
    pub fn iri(&self) -> Term {
        match self {
            IntentState::Received => vocab::icm::intent_state_received(),
            IntentState::Compliant => vocab::icm::intent_state_compliant(),
            IntentState::Degraded => vocab::icm::state_degraded(),
            IntentState::Updated => vocab::icm::state_updated(),
            IntentState::Finalized => vocab::icm::state_finalized(),
        }
    }
}

impl fmt::Display for IntentState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            IntentState::Received => "Received",
            IntentState::Compliant => "Compliant",
            IntentState::Degraded => "Degraded",
            IntentState::Updated => "Updated",
            IntentState::Finalized => "Finalized",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LifecycleEvent {
    ReportCompliant,
    ReportDegraded,
    Update,
    Finalize,
}

impl LifecycleEvent {
    pub const ALL: [LifecycleEvent; 4] = [
        LifecycleEvent::ReportCompliant,
        LifecycleEvent::ReportDegraded,
        LifecycleEvent::Update,
        LifecycleEvent::Finalize,
    ];
}

impl fmt::Display for LifecycleEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LifecycleEvent::ReportCompliant => "ReportCompliant",
            LifecycleEvent::ReportDegraded => "ReportDegraded",
            LifecycleEvent::Update => "Update",
            LifecycleEvent::Finalize => "Finalize",
        };
        f.write_str(name)
    }
}

/// Applies a lifecycle event. Compliance reports move between Compliant and
/// Degraded, Update parks the intent until the next report, Finalize is
/// terminal (and idempotent); anything else after Finalized is illegal.
pub fn advance_state(
    state: IntentState,
    event: LifecycleEvent,
) -> Result<IntentState, PipelineError> {
    use IntentState::*;
    use LifecycleEvent::*;
    match (state, event) {
        (_, Finalize) => Ok(Finalized),
        (Finalized, _) => Err(PipelineError::IllegalTransition {
            state: state.to_string(),
            event: event.to_string(),
        }),
        (_, Update) => Ok(Updated),
        (_, ReportCompliant) => Ok(Compliant),
        (_, ReportDegraded) => Ok(Degraded),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn received_moves_on_first_report() {
        assert_eq!(
            advance_state(IntentState::Received, LifecycleEvent::ReportCompliant).unwrap(),
            IntentState::Compliant
        );
        assert_eq!(
            advance_state(IntentState::Received, LifecycleEvent::ReportDegraded).unwrap(),
            IntentState::Degraded
        );
    }

    #[test]
    fn compliance_flips_on_opposite_report() {
        assert_eq!(
            advance_state(IntentState::Compliant, LifecycleEvent::ReportDegraded).unwrap(),
            IntentState::Degraded
        );
        assert_eq!(
            advance_state(IntentState::Degraded, LifecycleEvent::ReportCompliant).unwrap(),
            IntentState::Compliant
        );
    }

    #[test]
    fn update_parks_until_next_report() {
        assert_eq!(
            advance_state(IntentState::Compliant, LifecycleEvent::Update).unwrap(),
            IntentState::Updated
        );
        assert_eq!(
            advance_state(IntentState::Updated, LifecycleEvent::ReportDegraded).unwrap(),
            IntentState::Degraded
        );
    }

    #[test]
    fn finalized_absorbs_finalize_and_rejects_the_rest() {
        assert_eq!(
            advance_state(IntentState::Finalized, LifecycleEvent::Finalize).unwrap(),
            IntentState::Finalized
        );
        for event in [
            LifecycleEvent::ReportCompliant,
            LifecycleEvent::ReportDegraded,
            LifecycleEvent::Update,
        ] {
            assert!(matches!(
                advance_state(IntentState::Finalized, event),
                Err(PipelineError::IllegalTransition { .. })
            ));
        }
    }

    #[test]
    fn no_event_sequence_escapes_the_state_set() {
        fn explore(state: IntentState, depth: usize) {
            assert!(IntentState::ALL.contains(&state));
            if depth == 0 {
                return;
            }
            for event in LifecycleEvent::ALL {
                if let Ok(next) = advance_state(state, event) {
                    explore(next, depth - 1);
                }
            }
        }
        for state in IntentState::ALL {
            explore(state, 5);
        }
    }
}
