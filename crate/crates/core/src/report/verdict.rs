//! Per-KPI compliance judgment.
//!
//! A measurement value at or below its threshold is compliant; above it, or
//! unobservable, degraded. Status and reason are coupled by construction.
//! Latency observations are quantized to the reported precision (4 decimal
//! digits) before judgment, so the verdict always matches the published
//! value.

use std::fmt;

use super::ReportError;
use crate::kb::{format_number, Kpi};
use crate::netsim::KpiMeasurement;
use crate::pipeline::{NetworkIntent, Threshold};
use crate::rdf::Term;
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplianceStatus {
    Compliant,
    Degraded,
}

impl fmt::Display for ComplianceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplianceStatus::Compliant => write!(f, "Compliant"),
            ComplianceStatus::Degraded => write!(f, "Degraded"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    MeetsRequirement,
    NotCompliant,
}

impl Reason {
    pub fn iri(&self) -> Term {
        match self {
            Reason::MeetsRequirement => vocab::icm::reason_meets_requirement(),
            Reason::NotCompliant => vocab::icm::reason_not_compliant(),
        }
    }

    pub fn from_iri(term: &Term) -> Option<Reason> {
        if term == &vocab::icm::reason_meets_requirement() {
            Some(Reason::MeetsRequirement)
        } else if term == &vocab::icm::reason_not_compliant() {
            Some(Reason::NotCompliant)
        } else {
            None
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::MeetsRequirement => write!(f, "ReasonMeetsRequirement"),
            Reason::NotCompliant => write!(f, "ReasonNotCompliant"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Observed {
    Value(f64),
    Unobservable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplianceVerdict {
    pub kpi: Kpi,
    pub observed: Observed,
    pub threshold: Threshold,
    pub status: ComplianceStatus,
    pub reason: Reason,
}

impl ComplianceVerdict {
    /// Couples status and reason from the comparison; equality with the
    /// threshold counts as compliant.
    pub fn new(kpi: Kpi, observed: Observed, threshold: Threshold) -> ComplianceVerdict {
        let compliant = matches!(observed, Observed::Value(v) if v <= threshold.value);
        let (status, reason) = if compliant {
            (ComplianceStatus::Compliant, Reason::MeetsRequirement)
        } else {
            (ComplianceStatus::Degraded, Reason::NotCompliant)
        };
        ComplianceVerdict {
            kpi,
            observed,
            threshold,
            status,
            reason,
        }
    }

    /// Report value string, e.g. `493.1097 ms` or `0`.
    pub fn observed_text(&self) -> String {
        format_observed(self.kpi, self.observed)
    }

    /// Threshold string in the same style, e.g. `150 ms`.
    pub fn threshold_text(&self) -> String {
        if self.threshold.unit.is_empty() {
            format_number(self.threshold.value)
        } else {
            format!("{} {}", format_number(self.threshold.value), self.threshold.unit)
        }
    }
}

/// Quantizes to the 4 fractional digits the reports carry.
pub fn round4(value: f64) -> f64 {
    (value * 10_000.0).round() / 10_000.0
}

/// Formats an observation the way reports publish it: unit-carrying KPIs use
/// four fractional digits plus the unit suffix, unitless KPIs the minimal
/// decimal form.
pub fn format_observed(kpi: Kpi, observed: Observed) -> String {
    match observed {
        Observed::Unobservable => "unobservable".to_string(),
        Observed::Value(v) => {
            if kpi.unit().is_empty() {
                format_number(v)
            } else {
                format!("{:.4} {}", v, kpi.unit())
            }
        }
    }
}

/// Parses a report value string back into an observation.
pub fn parse_observed(kpi: Kpi, text: &str) -> Result<Observed, ReportError> {
    if text == "unobservable" {
        return Ok(Observed::Unobservable);
    }
    let numeric = match text.strip_suffix(kpi.unit()) {
        Some(stripped) if !kpi.unit().is_empty() => stripped.trim_end(),
        _ => text,
    };
    numeric
        .parse::<f64>()
        .map(Observed::Value)
        .map_err(|_| ReportError::Malformed(format!("unparseable {kpi} value '{text}'")))
}

/// Judges the reported KPIs of one measurement against the intent's
/// thresholds, in KPI order (latency, then packet error rate).
pub fn judge(
    measurement: &KpiMeasurement,
    intent: &NetworkIntent,
) -> Result<Vec<ComplianceVerdict>, ReportError> {
    let mut verdicts = Vec::new();
    for kpi in Kpi::REPORTED {
        let threshold = intent
            .thresholds
            .get(&kpi)
            .ok_or_else(|| ReportError::MissingThreshold(kpi.name().to_string()))?;
        if threshold.unit != kpi.unit() {
            return Err(ReportError::UnitMismatch(kpi.name().to_string()));
        }
        let observed = match kpi {
            Kpi::Latency => measurement
                .latency_ms
                .map(|v| Observed::Value(round4(v)))
                .unwrap_or(Observed::Unobservable),
            Kpi::PacketErrorRate => Observed::Value(measurement.per_observed),
            _ => unreachable!("only reported KPIs are judged"),
        };
        verdicts.push(ComplianceVerdict::new(kpi, observed, threshold.clone()));
    }
    Ok(verdicts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::ResourceKind;
    use crate::pipeline::IntentState;
    use std::collections::BTreeMap;

    fn intent(latency_ms: f64, per: f64) -> NetworkIntent {
        let mut thresholds = BTreeMap::new();
        thresholds.insert(Kpi::Latency, Threshold { value: latency_ms, unit: "ms".into() });
        thresholds.insert(Kpi::PacketErrorRate, Threshold { value: per, unit: "".into() });
        NetworkIntent {
            intent_id: "I-x-1".into(),
            service: "X".into(),
            resource: ResourceKind::Ngbr,
            thresholds,
            priority: 10,
            qi5g: 5,
            gbr_rate_bps: None,
            state: IntentState::Received,
        }
    }

    fn measurement(latency_ms: Option<f64>, per: f64) -> KpiMeasurement {
        KpiMeasurement {
            intent_id: "I-x-1".into(),
            latency_ms,
            jitter_ms: latency_ms.map(|_| 0.0),
            per_observed: per,
            samples: 100,
        }
    }

    #[test]
    fn latency_over_budget_is_degraded() {
        let verdicts = judge(&measurement(Some(493.1097), 0.0), &intent(150.0, 0.001)).unwrap();
        let latency = &verdicts[0];
        assert_eq!(latency.kpi, Kpi::Latency);
        assert_eq!(latency.status, ComplianceStatus::Degraded);
        assert_eq!(latency.reason, Reason::NotCompliant);
        assert_eq!(latency.observed_text(), "493.1097 ms");
    }

    #[test]
    fn latency_within_budget_is_compliant() {
        let verdicts = judge(&measurement(Some(17.6459), 0.0), &intent(200.0, 0.000001)).unwrap();
        assert_eq!(verdicts[0].status, ComplianceStatus::Compliant);
        assert_eq!(verdicts[0].reason, Reason::MeetsRequirement);
        assert_eq!(verdicts[0].observed_text(), "17.6459 ms");
    }

    #[test]
    fn zero_per_is_compliant_and_prints_bare_zero() {
        let verdicts = judge(&measurement(Some(10.0), 0.0), &intent(150.0, 0.0)).unwrap();
        let per = &verdicts[1];
        assert_eq!(per.kpi, Kpi::PacketErrorRate);
        assert_eq!(per.status, ComplianceStatus::Compliant);
        assert_eq!(per.observed_text(), "0");
    }

    #[test]
    fn equality_counts_as_compliant() {
        let verdicts = judge(&measurement(Some(150.0), 0.001), &intent(150.0, 0.001)).unwrap();
        assert_eq!(verdicts[0].status, ComplianceStatus::Compliant);
        assert_eq!(verdicts[1].status, ComplianceStatus::Compliant);
    }

    #[test]
    fn smallest_representable_excess_is_degraded() {
        // latency: one quantum of the 4-digit value model over the threshold
        let verdicts = judge(&measurement(Some(150.0001), 0.0), &intent(150.0, 0.001)).unwrap();
        assert_eq!(verdicts[0].status, ComplianceStatus::Degraded);
        // per: smallest representable increment over the threshold
        let next_up = f64::from_bits(0.001_f64.to_bits() + 1);
        let verdicts = judge(&measurement(Some(10.0), next_up), &intent(150.0, 0.001)).unwrap();
        assert_eq!(verdicts[1].status, ComplianceStatus::Degraded);
    }

    #[test]
    fn unobservable_latency_is_degraded() {
        let verdicts = judge(&measurement(None, 1.0), &intent(150.0, 0.001)).unwrap();
        assert_eq!(verdicts[0].observed, Observed::Unobservable);
        assert_eq!(verdicts[0].status, ComplianceStatus::Degraded);
        assert_eq!(verdicts[1].status, ComplianceStatus::Degraded);
    }

    #[test]
    fn missing_threshold_and_unit_mismatch_are_errors() {
        let mut without = intent(150.0, 0.001);
        without.thresholds.remove(&Kpi::PacketErrorRate);
        assert!(matches!(
            judge(&measurement(Some(10.0), 0.0), &without),
            Err(ReportError::MissingThreshold(k)) if k == "packeterrorrate"
        ));
        let mut wrong_unit = intent(150.0, 0.001);
        wrong_unit.thresholds.get_mut(&Kpi::Latency).unwrap().unit = "s".into();
        assert!(matches!(
            judge(&measurement(Some(10.0), 0.0), &wrong_unit),
            Err(ReportError::UnitMismatch(k)) if k == "latency"
        ));
    }

    #[test]
    fn observed_text_round_trips() {
        for (kpi, observed) in [
            (Kpi::Latency, Observed::Value(493.1097)),
            (Kpi::Latency, Observed::Unobservable),
            (Kpi::PacketErrorRate, Observed::Value(0.0)),
            (Kpi::PacketErrorRate, Observed::Value(0.25)),
        ] {
            let text = format_observed(kpi, observed);
            assert_eq!(parse_observed(kpi, &text).unwrap(), observed);
        }
    }
}
