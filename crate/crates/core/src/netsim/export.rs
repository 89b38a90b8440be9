//! CSV export of flow records and measurements for plotting.

use super::measure::KpiMeasurement;
use super::sim::{FlowRecord, PacketOutcome};

/// One row per packet: sequence, send time, status and delay.
pub fn flow_record_csv(record: &FlowRecord) -> String {
    let mut out = String::from("seq,send_ms,status,deliver_ms,delay_ms\n");
    for (i, p) in record.packets.iter().enumerate() {
        match p.outcome {
            PacketOutcome::Delivered { deliver_time_ms } => {
                out.push_str(&format!(
                    "{i},{},delivered,{},{}\n",
                    p.send_time_ms,
                    deliver_time_ms,
                    deliver_time_ms - p.send_time_ms
                ));
            }
            PacketOutcome::Dropped => {
                out.push_str(&format!("{i},{},dropped,,\n", p.send_time_ms));
            }
        }
    }
    out
}

/// One row per flow with its headline KPIs.
pub fn measurements_csv(measurements: &[(&FlowRecord, &KpiMeasurement)]) -> String {
    let mut out =
        String::from("intent_id,service,sent,delivered,dropped,latency_ms,jitter_ms,per\n");
    for (record, m) in measurements {
        let fmt_opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            record.intent_id,
            record.service,
            record.sent(),
            record.delivered(),
            record.dropped(),
            fmt_opt(m.latency_ms),
            fmt_opt(m.jitter_ms),
            m.per_observed
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::ResourceKind;
    use crate::netsim::PacketRecord;

    #[test]
    fn packet_rows_cover_delivered_and_dropped() {
        let record = FlowRecord {
            intent_id: "I-x-1".into(),
            service: "X".into(),
            priority: 1,
            resource: ResourceKind::Ngbr,
            packets: vec![
                PacketRecord {
                    send_time_ms: 0.0,
                    outcome: PacketOutcome::Delivered { deliver_time_ms: 6.0 },
                },
                PacketRecord {
                    send_time_ms: 10.0,
                    outcome: PacketOutcome::Dropped,
                },
            ],
        };
        let csv = flow_record_csv(&record);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "0,0,delivered,6,6");
        assert_eq!(lines[2], "1,10,dropped,,");
    }
}
