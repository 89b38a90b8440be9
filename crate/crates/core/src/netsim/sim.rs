//! Event-driven single-bottleneck flow simulator.
//!
//! Each admitted intent is a constant-interval packet source feeding a
//! per-flow FIFO queue. One server transmits packets at the link rate.
//! GBR flows get strict precedence while within their reserved rate
//! (token-spaced eligibility); NGBR flows share the residual capacity in
//! priority order (lower number first). Queue overflow and wire loss are
//! recorded as drops. Traffic stops at the configured duration and queues
//! drain fully, so every sent packet is either delivered or dropped.
//!
//! The run is a pure function of (config, intents): the only randomness is
//! the wire-loss draw, taken from a seeded stream in transmission order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, VecDeque};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::SimConfig;
use super::SimError;
use crate::kb::{ResourceKind, DEFAULT_GBR_RATE_BPS};
use crate::pipeline::NetworkIntent;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PacketOutcome {
    Delivered { deliver_time_ms: f64 },
    Dropped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PacketRecord {
    pub send_time_ms: f64,
    pub outcome: PacketOutcome,
}

/// Per-intent packet trace, time-ordered by send time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowRecord {
    pub intent_id: String,
    pub service: String,
    pub priority: u32,
    pub resource: ResourceKind,
    pub packets: Vec<PacketRecord>,
}

impl FlowRecord {
    pub fn sent(&self) -> u64 {
        self.packets.len() as u64
    }

    pub fn delivered(&self) -> u64 {
        self.packets
            .iter()
            .filter(|p| matches!(p.outcome, PacketOutcome::Delivered { .. }))
            .count() as u64
    }

    pub fn dropped(&self) -> u64 {
        self.sent() - self.delivered()
    }

    /// One-way delays of delivered packets, in send order.
    pub fn delays_ms(&self) -> Vec<f64> {
        self.packets
            .iter()
            .filter_map(|p| match p.outcome {
                PacketOutcome::Delivered { deliver_time_ms } => {
                    Some(deliver_time_ms - p.send_time_ms)
                }
                PacketOutcome::Dropped => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum EventKind {
    Arrival { flow: usize },
    Departure { flow: usize, packet: usize, lost: bool },
    GbrWake,
}

#[derive(Debug, Clone, Copy)]
struct Event {
    time_ms: f64,
    seq: u64,
    kind: EventKind,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.time_ms == other.time_ms && self.seq == other.seq
    }
}

impl Eq for Event {}

impl Ord for Event {
    // reversed: BinaryHeap is a max-heap, we want earliest (time, seq) first
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .time_ms
            .total_cmp(&self.time_ms)
            .then(other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Flow {
    intent_id: String,
    service: String,
    priority: u32,
    resource: ResourceKind,
    packet_bits: f64,
    interval_ms: f64,
    reserved_bps: f64,
    next_packet: u64,
    queue: VecDeque<(usize, f64)>, // (packet index, arrival time)
    // GBR token bucket: sustained rate = reservation, burst sized to cover
    // one worst-case non-preemptive blocking period so reserved traffic is
    // never starved by large lower-class packets.
    tokens_bits: f64,
    burst_bits: f64,
    last_refill_ms: f64,
    records: Vec<PacketRecord>,
}

impl Flow {
    fn refill(&mut self, now: f64) {
        let accrued = self.reserved_bps / 1000.0 * (now - self.last_refill_ms);
        self.tokens_bits = (self.tokens_bits + accrued).min(self.burst_bits);
        self.last_refill_ms = now;
    }

    fn eligible(&mut self, now: f64) -> bool {
        self.refill(now);
        self.tokens_bits >= self.packet_bits - 1e-9
    }

    /// Time at which the head packet becomes eligible, assuming no cap hit.
    fn eligible_at(&mut self, now: f64) -> f64 {
        self.refill(now);
        let missing = (self.packet_bits - self.tokens_bits).max(0.0);
        now + missing / (self.reserved_bps / 1000.0)
    }
}

struct Sim<'a> {
    config: &'a SimConfig,
    flows: Vec<Flow>,
    events: BinaryHeap<Event>,
    seq: u64,
    server_busy: bool,
    wake_at: Option<f64>,
    rng: ChaCha8Rng,
}

impl<'a> Sim<'a> {
    fn push(&mut self, time_ms: f64, kind: EventKind) {
        let seq = self.seq;
        self.seq += 1;
        self.events.push(Event { time_ms, seq, kind });
    }

    fn schedule_arrival(&mut self, flow: usize) {
        let f = &self.flows[flow];
        let t = f.next_packet as f64 * f.interval_ms;
        if t < self.config.duration_s * 1000.0 {
            self.push(t, EventKind::Arrival { flow });
        }
    }

    fn on_arrival(&mut self, now: f64, flow: usize) {
        let queue_limit = self.config.queue_limit_pkts;
        let f = &mut self.flows[flow];
        let packet = f.records.len();
        f.next_packet += 1;
        if f.queue.len() >= queue_limit {
            f.records.push(PacketRecord {
                send_time_ms: now,
                outcome: PacketOutcome::Dropped,
            });
        } else {
            f.records.push(PacketRecord {
                send_time_ms: now,
                outcome: PacketOutcome::Dropped, // placeholder until departure
            });
            f.queue.push_back((packet, now));
        }
        self.schedule_arrival(flow);
        self.try_dispatch(now);
    }

    fn on_departure(&mut self, now: f64, flow: usize, packet: usize, lost: bool) {
        let prop = self.config.prop_delay_ms;
        let record = &mut self.flows[flow].records[packet];
        record.outcome = if lost {
            PacketOutcome::Dropped
        } else {
            PacketOutcome::Delivered {
                deliver_time_ms: now + prop,
            }
        };
        self.server_busy = false;
        self.try_dispatch(now);
    }

    /// Picks the next packet when the server is idle: eligible GBR head
    /// packets first (earliest arrival, then flow order), otherwise NGBR by
    /// (priority, arrival, flow order). If only not-yet-eligible GBR traffic
    /// remains, a wake-up is scheduled at the earliest eligibility instant.
    fn try_dispatch(&mut self, now: f64) {
        if self.server_busy {
            return;
        }
        let mut pick: Option<(f64, usize)> = None; // GBR: (head arrival, flow)
        for i in 0..self.flows.len() {
            let f = &mut self.flows[i];
            if f.resource != ResourceKind::Gbr || f.queue.is_empty() {
                continue;
            }
            if f.eligible(now) {
                let arrival = f.queue.front().expect("non-empty").1;
                if pick.is_none_or(|(best, _)| arrival < best) {
                    pick = Some((arrival, i));
                }
            }
        }
        let chosen = match pick {
            Some((_, flow)) => Some(flow),
            None => {
                let mut best: Option<(u32, f64, usize)> = None;
                for (i, f) in self.flows.iter().enumerate() {
                    if f.resource != ResourceKind::Ngbr || f.queue.is_empty() {
                        continue;
                    }
                    let arrival = f.queue.front().expect("non-empty").1;
                    let key = (f.priority, arrival, i);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
                best.map(|(_, _, flow)| flow)
            }
        };

        let Some(flow) = chosen else {
            // idle; wake up when the earliest pending GBR packet becomes eligible
            let next_eligible = self
                .flows
                .iter_mut()
                .filter(|f| f.resource == ResourceKind::Gbr && !f.queue.is_empty())
                .map(|f| f.eligible_at(now))
                .min_by(f64::total_cmp);
            if let Some(te) = next_eligible {
                if self.wake_at.is_none_or(|w| te < w) {
                    self.wake_at = Some(te);
                    self.push(te, EventKind::GbrWake);
                }
            }
            return;
        };

        let lost = self.config.loss_model > 0.0 && {
            let draw: f64 = self.rng.random();
            draw < self.config.loss_model
        };
        let f = &mut self.flows[flow];
        let (packet, _) = f.queue.pop_front().expect("non-empty");
        let tx_ms = f.packet_bits * 1000.0 / self.config.link_capacity_bps;
        if f.resource == ResourceKind::Gbr {
            f.refill(now);
            f.tokens_bits = (f.tokens_bits - f.packet_bits).max(0.0);
        }
        self.server_busy = true;
        self.push(now + tx_ms, EventKind::Departure { flow, packet, lost });
    }
}

/// Runs the simulation for the given intents; returns per-intent flow
/// records keyed by intent id. Identical inputs produce identical results.
pub fn run(
    config: &SimConfig,
    intents: &[NetworkIntent],
) -> Result<BTreeMap<String, FlowRecord>, SimError> {
    config.validate()?;

    let packet_bits = |intent: &NetworkIntent| {
        f64::from(config.profile_for(&intent.service).packet_bytes) * config.congestion_factor * 8.0
    };
    let max_tx_ms = intents
        .iter()
        .map(|i| packet_bits(i) * 1000.0 / config.link_capacity_bps)
        .fold(0.0_f64, f64::max);

    let flows = intents
        .iter()
        .map(|intent| {
            let profile = config.profile_for(&intent.service);
            let bits = packet_bits(intent);
            let reserved_bps = intent.gbr_rate_bps.unwrap_or(DEFAULT_GBR_RATE_BPS);
            let burst_bits = 2.0 * bits + reserved_bps / 1000.0 * max_tx_ms;
            Flow {
                intent_id: intent.intent_id.clone(),
                service: intent.service.clone(),
                priority: intent.priority,
                resource: intent.resource,
                packet_bits: bits,
                interval_ms: profile.interval_ms,
                reserved_bps,
                next_packet: 0,
                queue: VecDeque::new(),
                tokens_bits: burst_bits,
                burst_bits,
                last_refill_ms: 0.0,
                records: Vec::new(),
            }
        })
        .collect();

    let mut sim = Sim {
        config,
        flows,
        events: BinaryHeap::new(),
        seq: 0,
        server_busy: false,
        wake_at: None,
        rng: ChaCha8Rng::seed_from_u64(config.seed),
    };
    for flow in 0..sim.flows.len() {
        sim.schedule_arrival(flow);
    }

    while let Some(event) = sim.events.pop() {
        match event.kind {
            EventKind::Arrival { flow } => sim.on_arrival(event.time_ms, flow),
            EventKind::Departure { flow, packet, lost } => {
                sim.on_departure(event.time_ms, flow, packet, lost)
            }
            EventKind::GbrWake => {
                if sim.wake_at == Some(event.time_ms) {
                    sim.wake_at = None;
                }
                sim.try_dispatch(event.time_ms);
            }
        }
    }

    Ok(sim
        .flows
        .into_iter()
        .map(|f| {
            (
                f.intent_id.clone(),
                FlowRecord {
                    intent_id: f.intent_id,
                    service: f.service,
                    priority: f.priority,
                    resource: f.resource,
                    packets: f.records,
                },
            )
        })
        .collect())
}
