//! Simulation configuration and scenario presets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SimError;

/// Congestion multiplier applied by the congested scenario preset.
pub const CONGESTED_FACTOR_DEFAULT: f64 = 12.0;

/// Per-service packet source parameters. Services without a profile fall
/// back to the base packet size and interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrafficProfile {
    pub packet_bytes: u32,
    pub interval_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SimConfig {
    /// Bottleneck link rate in bits per second.
    pub link_capacity_bps: f64,
    /// Traffic generation window in seconds; flows drain fully afterwards.
    pub duration_s: f64,
    pub seed: u64,
    pub base_packet_bytes: u32,
    pub packet_interval_ms: f64,
    /// Multiplies every packet size; 1 is the non-congested scenario.
    pub congestion_factor: f64,
    /// Per-flow queue limit, counting waiting packets.
    pub queue_limit_pkts: usize,
    pub prop_delay_ms: f64,
    /// Per-packet drop probability applied on the wire, in [0, 1).
    pub loss_model: f64,
    /// Shipped traffic calibration per service.
    pub profiles: BTreeMap<String, TrafficProfile>,
}

fn default_profiles() -> BTreeMap<String, TrafficProfile> {
    let profile = |bytes, ms| TrafficProfile {
        packet_bytes: bytes,
        interval_ms: ms,
    };
    BTreeMap::from([
        ("ConvVoice".to_string(), profile(160, 20.0)),
        ("ConvVideo".to_string(), profile(150, 12.0)),
        ("RealTimeGaming".to_string(), profile(200, 20.0)),
        ("NonConvVideo".to_string(), profile(150, 15.0)),
        ("ProcessMonitor".to_string(), profile(120, 10.0)),
        ("ImsSignalling".to_string(), profile(300, 50.0)),
        ("TcpInteractive".to_string(), profile(800, 20.0)),
        ("VideoBuffered".to_string(), profile(1000, 10.0)),
        ("McpttVoice".to_string(), profile(160, 20.0)),
        ("McpttSignalling".to_string(), profile(200, 40.0)),
        ("McpttData".to_string(), profile(500, 20.0)),
    ])
}

impl Default for SimConfig {
    fn default() -> SimConfig {
        SimConfig {
            link_capacity_bps: 100_000_000.0,
            duration_s: 5.0,
            seed: 42,
            base_packet_bytes: 500,
            packet_interval_ms: 10.0,
            congestion_factor: 1.0,
            queue_limit_pkts: 100,
            prop_delay_ms: 5.0,
            loss_model: 0.0,
            profiles: default_profiles(),
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        let invalid = |field: &str| SimError::InvalidConfig(field.to_string());
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.link_capacity_bps) {
            return Err(invalid("link_capacity_bps"));
        }
        if !positive(self.duration_s) {
            return Err(invalid("duration_s"));
        }
        if self.base_packet_bytes == 0 {
            return Err(invalid("base_packet_bytes"));
        }
        if !positive(self.packet_interval_ms) {
            return Err(invalid("packet_interval_ms"));
        }
        if !(self.congestion_factor.is_finite() && self.congestion_factor >= 1.0) {
            return Err(invalid("congestion_factor"));
        }
        if self.queue_limit_pkts == 0 {
            return Err(invalid("queue_limit_pkts"));
        }
        if !(self.prop_delay_ms.is_finite() && self.prop_delay_ms >= 0.0) {
            return Err(invalid("prop_delay_ms"));
        }
        if !(self.loss_model.is_finite() && (0.0..1.0).contains(&self.loss_model)) {
            return Err(invalid("loss_model"));
        }
        for (service, profile) in &self.profiles {
            if profile.packet_bytes == 0 || !positive(profile.interval_ms) {
                return Err(SimError::InvalidConfig(format!("profiles.{service}")));
            }
        }
        Ok(())
    }

    /// Packet source parameters for one service.
    pub fn profile_for(&self, service: &str) -> TrafficProfile {
        self.profiles.get(service).copied().unwrap_or(TrafficProfile {
            packet_bytes: self.base_packet_bytes,
            interval_ms: self.packet_interval_ms,
        })
    }

    pub fn from_json(text: &str) -> Result<SimConfig, SimError> {
        let config: SimConfig =
            serde_json::from_str(text).map_err(|e| SimError::InvalidConfig(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// Applies a named scenario preset to a base configuration.
pub fn scenario(name: &str, base: &SimConfig) -> Result<SimConfig, SimError> {
    let mut config = base.clone();
    match name {
        "normal" => config.congestion_factor = 1.0,
        "congested" => config.congestion_factor = CONGESTED_FACTOR_DEFAULT,
        other => return Err(SimError::UnknownScenario(other.to_string())),
    }
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_scenario_resets_congestion() {
        let mut base = SimConfig::default();
        base.congestion_factor = 7.0;
        assert_eq!(scenario("normal", &base).unwrap().congestion_factor, 1.0);
    }

    #[test]
    fn congested_scenario_raises_packet_sizes() {
        let base = SimConfig::default();
        assert!(scenario("congested", &base).unwrap().congestion_factor > 1.0);
    }

    #[test]
    fn unknown_scenario_is_rejected() {
        assert!(matches!(
            scenario("peak", &SimConfig::default()),
            Err(SimError::UnknownScenario(name)) if name == "peak"
        ));
    }

    #[test]
    fn default_config_is_valid() {
        SimConfig::default().validate().unwrap();
    }

    #[test]
    fn invalid_fields_are_named() {
        let mut config = SimConfig::default();
        config.loss_model = 1.0;
        assert!(matches!(
            config.validate(),
            Err(SimError::InvalidConfig(f)) if f == "loss_model"
        ));
    }

    #[test]
    fn partial_json_overrides_defaults() {
        let config = SimConfig::from_json(r#"{"duration_s": 2.5, "seed": 7}"#).unwrap();
        assert_eq!(config.duration_s, 2.5);
        assert_eq!(config.seed, 7);
        assert_eq!(config.link_capacity_bps, 100_000_000.0);
    }
}
