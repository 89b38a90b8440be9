//! Deterministic discrete-event simulator for QoS flows over a single
//! bottleneck link, with per-intent latency/jitter/loss measurement.

mod config;
mod export;
mod measure;
mod sim;

pub use config::{scenario, SimConfig, TrafficProfile, CONGESTED_FACTOR_DEFAULT};
pub use export::{flow_record_csv, measurements_csv};
pub use measure::{measure, KpiMeasurement};
pub use sim::{run, FlowRecord, PacketOutcome, PacketRecord};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error("flow record for {0} has no packets")]
    EmptyRecord(String),
    #[error("unknown scenario '{0}'")]
    UnknownScenario(String),
}
