//! Intent processing chain: keyword recognition, service-intent modeling,
//! network-intent translation, resource validation and the lifecycle
//! state machine.

mod intent;
mod lifecycle;
mod recognize;
mod resources;

pub use intent::{
    build_network_intent, build_service_intent, kpi_of_parameter_node, parameter_node,
    unit_of_datatype, IntentIdGen, NetworkIntent, ServiceIntent, Threshold,
};
pub use lifecycle::{advance_state, IntentState, LifecycleEvent};
pub use recognize::recognize;
pub use resources::{validate, ResourceState, ValidationOutcome};

use thiserror::Error;

use crate::kb::KbError;

/// A recognized user request.
#[derive(Debug, Clone)]
pub struct UserIntent {
    pub raw_text: String,
    pub recognized_service: String,
    pub requester: String,
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("no service recognized in '{0}'")]
    NoServiceRecognized(String),
    #[error("ambiguous intent, candidates: {0:?}")]
    AmbiguousIntent(Vec<String>),
    #[error("unknown service '{0}'")]
    UnknownService(String),
    #[error("illegal lifecycle transition: {event} in state {state}")]
    IllegalTransition { state: String, event: String },
    #[error("malformed intent data: {0}")]
    Malformed(String),
    #[error(transparent)]
    Kb(#[from] KbError),
}
