use super::topology::{LinkId, Topology};
use super::workload::SessionRequest;
use super::{Kbps, Minutes};

/// How much capacity a session has to find free before it is let in.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdmissionMode {
    pub guaranteed: bool,
    /// Best-effort only: multiple of the nominal rate that must be free.
    pub overprovision: f64,
}

impl AdmissionMode {
    pub fn guaranteed() -> Self {
        AdmissionMode {
            guaranteed: true,
            overprovision: 1.0,
        }
    }

    pub fn best_effort(overprovision: f64) -> Self {
        AdmissionMode {
            guaranteed: false,
            overprovision,
        }
    }

    pub fn effective(&self, demand: Kbps) -> Kbps {
        if self.guaranteed {
            demand
        } else {
            Kbps((demand.0 as f64 * self.overprovision).round() as u64)
        }
    }
}

/// Reserved bandwidth per link.
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkState {
    reserved: Vec<Kbps>,
    capacity: Vec<Kbps>,
}

impl NetworkState {
    pub fn new(topo: &Topology) -> Self {
        NetworkState {
            reserved: vec![Kbps(0); topo.links.len()],
            capacity: topo.links.iter().map(|l| l.capacity).collect(),
        }
    }

    pub fn reserved(&self, link: LinkId) -> Kbps {
        self.reserved[link.0]
    }

    pub fn capacity(&self, link: LinkId) -> Kbps {
        self.capacity[link.0]
    }

    pub fn free(&self, link: LinkId) -> Kbps {
        Kbps(self.capacity[link.0].0.saturating_sub(self.reserved[link.0].0))
    }

    pub fn utilization(&self, link: LinkId) -> f64 {
        self.reserved[link.0].0 as f64 / self.capacity[link.0].0 as f64
    }

    /// Utilization of the busiest link on a path.
    pub fn path_utilization(&self, path: &[LinkId]) -> f64 {
        path.iter()
            .map(|&l| self.utilization(l))
            .fold(0.0, f64::max)
    }

    pub fn utilizations(&self) -> Vec<f64> {
        (0..self.reserved.len()).map(|i| self.utilization(LinkId(i))).collect()
    }

    pub fn reserved_all(&self) -> &[Kbps] {
        &self.reserved
    }

    pub fn capacities(&self) -> &[Kbps] {
        &self.capacity
    }

    /// Panics if the reservation does not fit; callers admit first.
    pub fn reserve(&mut self, path: &[LinkId], amount: Kbps) {
        for &l in path {
            let next = self.reserved[l.0].0 + amount.0;
            assert!(next <= self.capacity[l.0].0, "over-reserved link {}", l.0);
            self.reserved[l.0] = Kbps(next);
        }
    }

    pub fn release(&mut self, path: &[LinkId], amount: Kbps) {
        for &l in path {
            self.reserved[l.0] = Kbps(self.reserved[l.0].0 - amount.0);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReservationState {
    Active,
    Completed,
    Rejected,
    SlaViolated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reservation {
    pub session: u64,
    /// Index into `Topology::paths`.
    pub isp: usize,
    pub path: Vec<LinkId>,
    pub demand: Kbps,
    /// Counted against every link on `path` while active.
    pub reserved: Kbps,
    pub guaranteed: bool,
    pub start: Minutes,
    pub end: Minutes,
    /// Highest path utilization seen while the session was up.
    pub peak_utilization: f64,
    pub state: ReservationState,
    /// Cut short at the end of the simulated horizon.
    pub truncated: bool,
}

impl Reservation {
    pub fn duration(&self) -> Minutes {
        self.end - self.start
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AdmissionDecision {
    Accepted(Reservation),
    Rejected {
        session: u64,
        bottleneck: LinkId,
        needed: Kbps,
        free: Kbps,
    },
}

/// Single admission check at the customer edge: the ISP accepts only if every
/// link on the path to the service has room for the effective demand.
pub fn admit(
    req: &SessionRequest,
    topo: &Topology,
    state: &NetworkState,
    mode: AdmissionMode,
) -> AdmissionDecision {
    let isp = req.user as usize % topo.isp_count();
    let path = &topo.paths[isp].links;
    let demand = Kbps::from_mbps(req.demand);
    let needed = mode.effective(demand);
    if let Some(&bottleneck) = path.iter().find(|&&l| state.free(l) < needed) {
        return AdmissionDecision::Rejected {
            session: req.id,
            bottleneck,
            needed,
            free: state.free(bottleneck),
        };
    }
    let after = path
        .iter()
        .map(|&l| (state.reserved(l).0 + needed.0) as f64 / state.capacity(l).0 as f64)
        .fold(0.0, f64::max);
    AdmissionDecision::Accepted(Reservation {
        session: req.id,
        isp,
        path: path.clone(),
        demand,
        reserved: needed,
        guaranteed: mode.guaranteed,
        start: req.arrival,
        end: req.arrival + req.duration,
        peak_utilization: after,
        state: ReservationState::Active,
        truncated: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::media::MediaClass;
    use crate::sim::topology::{build_topology, Architecture, TopologySpec, UniformTopology};

    fn single_link(capacity: f64) -> Topology {
        build_topology(&TopologySpec::Uniform(UniformTopology {
            architecture: Architecture::CdnBased,
            isps: 1,
            capacity,
            ..UniformTopology::default()
        }))
        .unwrap()
    }

    fn request(id: u64, demand: f64) -> SessionRequest {
        SessionRequest {
            id,
            user: 0,
            media: MediaClass::Telepresence,
            demand,
            arrival: 0,
            duration: 10,
        }
    }

    fn fill(topo: &Topology, mode: AdmissionMode, demand: f64) -> usize {
        let mut state = NetworkState::new(topo);
        let mut admitted = 0;
        for id in 0..1000 {
            match admit(&request(id, demand), topo, &state, mode) {
                AdmissionDecision::Accepted(r) => {
                    state.reserve(&r.path, r.reserved);
                    admitted += 1;
                }
                AdmissionDecision::Rejected { .. } => break,
            }
        }
        admitted
    }

    #[test]
    fn full_link_rejects_the_next_session() {
        let topo = single_link(100.0);
        assert_eq!(fill(&topo, AdmissionMode::guaranteed(), 10.0), 10);
    }

    #[test]
    fn guaranteed_versus_best_effort_concurrency() {
        let topo = single_link(100.0);
        assert_eq!(fill(&topo, AdmissionMode::guaranteed(), 4.0), 25);
        assert_eq!(fill(&topo, AdmissionMode::best_effort(4.0), 4.0), 6);
    }

    #[test]
    fn zero_demand_always_fits() {
        let topo = single_link(1.0);
        let mut state = NetworkState::new(&topo);
        state.reserve(&topo.paths[0].links, Kbps(1000));
        assert!(matches!(
            admit(&request(0, 0.0), &topo, &state, AdmissionMode::best_effort(5.0)),
            AdmissionDecision::Accepted(_)
        ));
    }

    #[test]
    fn rejection_names_the_bottleneck() {
        let topo = single_link(1.0);
        match admit(&request(3, 2.0), &topo, &NetworkState::new(&topo), AdmissionMode::guaranteed()) {
            AdmissionDecision::Rejected { session, bottleneck, needed, free } => {
                assert_eq!(session, 3);
                assert_eq!(bottleneck, LinkId(0));
                assert_eq!((needed, free), (Kbps(2000), Kbps(1000)));
            }
            other => panic!("{other:?}"),
        }
    }
}
