//! KPI measurement over flow records: mean one-way latency, mean absolute
//! consecutive-delay jitter and observed packet error rate.

use serde::{Deserialize, Serialize};

use super::sim::FlowRecord;
use super::SimError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KpiMeasurement {
    pub intent_id: String,
    /// Mean one-way delay of delivered packets; None when nothing arrived.
    pub latency_ms: Option<f64>,
    /// Mean |d[i+1] - d[i]| over consecutive delivered packets; None when
    /// nothing arrived, 0 for a single delivery.
    pub jitter_ms: Option<f64>,
    pub per_observed: f64,
    /// Packets sent.
    pub samples: u64,
}

pub fn measure(record: &FlowRecord) -> Result<KpiMeasurement, SimError> {
    let sent = record.sent();
    if sent == 0 {
        return Err(SimError::EmptyRecord(record.intent_id.clone()));
    }
    let delays = record.delays_ms();
    let per_observed = record.dropped() as f64 / sent as f64;
    let (latency_ms, jitter_ms) = if delays.is_empty() {
        (None, None)
    } else {
        let latency = delays.iter().sum::<f64>() / delays.len() as f64;
        let jitter = if delays.len() < 2 {
            0.0
        } else {
            let sum: f64 = delays.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
            sum / (delays.len() - 1) as f64
        };
        (Some(latency), Some(jitter))
    };
    Ok(KpiMeasurement {
        intent_id: record.intent_id.clone(),
        latency_ms,
        jitter_ms,
        per_observed,
        samples: sent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::ResourceKind;
    use crate::netsim::{PacketOutcome, PacketRecord};

    fn record(delays: &[f64], drops: u64) -> FlowRecord {
        let mut packets: Vec<PacketRecord> = delays
            .iter()
            .enumerate()
            .map(|(i, d)| PacketRecord {
                send_time_ms: i as f64,
                outcome: PacketOutcome::Delivered {
                    deliver_time_ms: i as f64 + d,
                },
            })
            .collect();
        for i in 0..drops {
            packets.push(PacketRecord {
                send_time_ms: delays.len() as f64 + i as f64,
                outcome: PacketOutcome::Dropped,
            });
        }
        FlowRecord {
            intent_id: "I-x-1".into(),
            service: "X".into(),
            priority: 10,
            resource: ResourceKind::Ngbr,
            packets,
        }
    }

    #[test]
    fn constant_delays_have_zero_jitter() {
        let m = measure(&record(&[10.0, 10.0, 10.0], 0)).unwrap();
        assert_eq!(m.latency_ms, Some(10.0));
        assert_eq!(m.jitter_ms, Some(0.0));
        assert_eq!(m.per_observed, 0.0);
        assert_eq!(m.samples, 3);
    }

    #[test]
    fn two_packet_arithmetic() {
        let m = measure(&record(&[10.0, 20.0], 0)).unwrap();
        assert_eq!(m.latency_ms, Some(15.0));
        assert_eq!(m.jitter_ms, Some(10.0));
        assert_eq!(m.per_observed, 0.0);
    }

    #[test]
    fn all_dropped_is_unobservable_with_total_loss() {
        let m = measure(&record(&[], 4)).unwrap();
        assert_eq!(m.latency_ms, None);
        assert_eq!(m.jitter_ms, None);
        assert_eq!(m.per_observed, 1.0);
        assert_eq!(m.samples, 4);
    }

    #[test]
    fn empty_record_is_an_error() {
        let err = measure(&record(&[], 0)).unwrap_err();
        assert!(matches!(err, SimError::EmptyRecord(_)));
    }
}
