//! Discrete-event simulation of inter-provider QoS sessions: admission at the
//! customer edge, bandwidth reservation along the service path, SLA checks at
//! session end, and settlement between the parties involved.

mod admission;
mod billing;
mod engine;
mod sla;
mod topology;
mod workload;

use thiserror::Error;

pub use admission::{admit, AdmissionDecision, AdmissionMode, NetworkState, Reservation, ReservationState};
pub use billing::{bill, BillingCycle, BillingPolicy, BillingRecord};
pub use engine::{
    compare_architectures, run, run_traced, run_with_arrivals, ArchitectureComparison, LinkStats,
    PartyTotals, SimConfig, SimReport, TraceKind, TraceRecord,
};
pub use sla::{verify_sla, DegradationModel, SlaVerdict, SlaViolation};
pub use topology::{
    build_topology, Architecture, ExplicitTopology, Link, LinkId, LinkSpec, NodeId, NodeSpec,
    ProviderNode, Role, ServicePath, Topology, TopologyError, TopologySpec, UniformTopology,
};
pub use workload::{generate_arrivals, DurationModel, SessionRequest, Workload};

/// Simulation clock unit.
pub type Minutes = i64;

/// Bandwidth in whole kilobits per second, so reservations add up exactly.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Kbps(pub u64);

impl Kbps {
    pub fn from_mbps(mbps: f64) -> Self {
        if mbps.is_finite() && mbps > 0.0 {
            Kbps((mbps * 1000.0).round() as u64)
        } else {
            Kbps(0)
        }
    }

    pub fn as_mbps(self) -> f64 {
        self.0 as f64 / 1000.0
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("simulation config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Sla(#[from] crate::media::MediaError),
}
