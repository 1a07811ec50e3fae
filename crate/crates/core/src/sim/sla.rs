use crate::media::SlaSpec;

use super::admission::{NetworkState, Reservation};
use super::topology::Topology;

/// Loss and jitter of a best-effort path as a function of its peak
/// utilization `u`:
///
/// loss% = max(0, (u - knee) / span * loss_at_full), jitter = base + coeff * u²
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegradationModel {
    pub knee: f64,
    pub span: f64,
    /// Percent
    pub loss_at_full: f64,
    /// Milliseconds
    pub jitter_base: f64,
    /// Milliseconds
    pub jitter_coeff: f64,
}

impl Default for DegradationModel {
    fn default() -> Self {
        DegradationModel {
            knee: 0.7,
            span: 0.3,
            loss_at_full: 2.0,
            jitter_base: 5.0,
            jitter_coeff: 50.0,
        }
    }
}

impl DegradationModel {
    pub fn loss(&self, u: f64) -> f64 {
        ((u - self.knee) / self.span * self.loss_at_full).max(0.0)
    }

    pub fn jitter(&self, u: f64) -> f64 {
        self.jitter_base + self.jitter_coeff * u * u
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SlaViolation {
    Loss { measured: f64, limit: f64 },
    Jitter { measured: f64, limit: f64 },
    Delay { measured: f64, limit: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum SlaVerdict {
    Pass,
    Violated(Vec<SlaViolation>),
}

impl SlaVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, SlaVerdict::Pass)
    }

    pub fn violated_delay(&self) -> bool {
        matches!(self, SlaVerdict::Violated(v) if v.iter().any(|x| matches!(x, SlaViolation::Delay { .. })))
    }

    pub fn violated_loss(&self) -> bool {
        matches!(self, SlaVerdict::Violated(v) if v.iter().any(|x| matches!(x, SlaViolation::Loss { .. })))
    }
}

/// Checks a reservation against the SLA. Delay is the path round trip.
/// Guaranteed sessions see no loss or jitter; best-effort ones are judged on
/// the degradation model at the higher of the session's recorded peak and
/// the path's current utilization.
pub fn verify_sla(
    resv: &Reservation,
    topo: &Topology,
    state: &NetworkState,
    sla: &SlaSpec,
    model: &DegradationModel,
) -> SlaVerdict {
    let delay = topo.round_trip_delay(&resv.path);
    let (loss, jitter) = if resv.guaranteed {
        (0.0, 0.0)
    } else {
        let u = resv.peak_utilization.max(state.path_utilization(&resv.path));
        (model.loss(u), model.jitter(u))
    };
    let mut violations = Vec::new();
    if loss > sla.max_loss {
        violations.push(SlaViolation::Loss { measured: loss, limit: sla.max_loss });
    }
    if jitter > sla.max_jitter {
        violations.push(SlaViolation::Jitter { measured: jitter, limit: sla.max_jitter });
    }
    if delay > sla.max_delay {
        violations.push(SlaViolation::Delay { measured: delay, limit: sla.max_delay });
    }
    if violations.is_empty() {
        SlaVerdict::Pass
    } else {
        SlaVerdict::Violated(violations)
    }
}
