//! The event loop. One instance is single-threaded and a pure function of its
//! config: departures are processed before arrivals at the same minute, and
//! ties within a kind go by session id.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::fmt::Write as _;

use crate::media::SlaSpec;
use crate::money::Cents;

use super::admission::{admit, AdmissionDecision, AdmissionMode, NetworkState, Reservation, ReservationState};
use super::billing::{bill, BillingCycle, BillingPolicy, BillingRecord};
use super::sla::{verify_sla, DegradationModel, SlaVerdict};
use super::topology::{build_topology, Architecture, LinkId, Topology, TopologySpec, UniformTopology};
use super::workload::{generate_arrivals, SessionRequest, Workload};
use super::{Kbps, Minutes, SimError};

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub topology: TopologySpec,
    pub workload: Workload,
    /// Reserve the nominal rate (true) or admit best-effort sessions against
    /// `overprovision` times the rate (false).
    pub guaranteed: bool,
    pub overprovision: f64,
    pub sla: SlaSpec,
    pub degradation: DegradationModel,
    pub billing: BillingPolicy,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            topology: TopologySpec::Uniform(UniformTopology::default()),
            workload: Workload::default(),
            guaranteed: true,
            overprovision: 5.0,
            sla: SlaSpec::default(),
            degradation: DegradationModel::default(),
            billing: BillingPolicy::default(),
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        self.workload.validate()?;
        self.sla.validate()?;
        if !(self.overprovision.is_finite() && self.overprovision >= 1.0) {
            return Err(SimError::InvalidConfig("overprovision must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.billing.sla_rebate) {
            return Err(SimError::InvalidConfig("sla rebate must be in [0, 1]".into()));
        }
        let d = &self.degradation;
        if !(d.span.is_finite() && d.span > 0.0) || [d.knee, d.loss_at_full, d.jitter_base, d.jitter_coeff].iter().any(|v| !v.is_finite()) {
            return Err(SimError::InvalidConfig("degradation model needs span > 0 and finite constants".into()));
        }
        Ok(())
    }

    fn admission_mode(&self) -> AdmissionMode {
        if self.guaranteed {
            AdmissionMode::guaranteed()
        } else {
            AdmissionMode::best_effort(self.overprovision)
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PartyTotals {
    pub revenue: Cents,
    pub expense: Cents,
}

impl PartyTotals {
    pub fn net(&self) -> Cents {
        self.revenue - self.expense
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinkStats {
    pub name: String,
    pub peak_utilization: f64,
    /// Time-weighted over the horizon.
    pub mean_utilization: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimReport {
    pub architecture: Architecture,
    pub offered: u64,
    pub admitted: u64,
    pub rejected: u64,
    pub completed: u64,
    pub sla_violated: u64,
    /// Admitted sessions still running at the horizon, closed there.
    pub force_completed: u64,
    pub acceptance_ratio: f64,
    /// Share of admitted sessions that missed the SLA.
    pub sla_violation_rate: f64,
    pub parties: BTreeMap<String, PartyTotals>,
    pub links: Vec<LinkStats>,
    pub ledger: Vec<BillingRecord>,
}

impl SimReport {
    /// Long-format CSV: `section,name,field,value`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut row = |section: &str, name: &str, field: &str, value: String| {
            w.write_record([section, name, field, value.as_str()]).expect("in-memory write");
        };
        row("section", "name", "field", "value".into());
        row("summary", "", "architecture", self.architecture.to_string());
        for (field, value) in [
            ("offered", self.offered),
            ("admitted", self.admitted),
            ("rejected", self.rejected),
            ("completed", self.completed),
            ("sla_violated", self.sla_violated),
            ("force_completed", self.force_completed),
        ] {
            row("summary", "", field, value.to_string());
        }
        row("summary", "", "acceptance_ratio", self.acceptance_ratio.to_string());
        row("summary", "", "sla_violation_rate", self.sla_violation_rate.to_string());
        for (party, totals) in &self.parties {
            row("party", party, "revenue", totals.revenue.to_string());
            row("party", party, "expense", totals.expense.to_string());
            row("party", party, "net", totals.net().to_string());
        }
        for link in &self.links {
            row("link", &link.name, "peak_utilization", link.peak_utilization.to_string());
            row("link", &link.name, "mean_utilization", link.mean_utilization.to_string());
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }

    pub fn ledger_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["session", "cycle", "payer", "payee", "amount", "sla_violated"])
            .expect("in-memory write");
        for r in &self.ledger {
            w.write_record([
                r.session.to_string(),
                r.cycle.to_string(),
                r.payer.clone(),
                r.payee.clone(),
                r.amount.to_string(),
                r.sla_violated.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }

    pub fn total_for_cycle(&self, cycle: BillingCycle) -> Cents {
        self.ledger.iter().filter(|r| r.cycle == cycle).map(|r| r.amount).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceKind {
    Admit,
    Reject,
    Complete,
    Violate,
}

impl TraceKind {
    fn name(self) -> &'static str {
        match self {
            TraceKind::Admit => "admit",
            TraceKind::Reject => "reject",
            TraceKind::Complete => "complete",
            TraceKind::Violate => "sla_violated",
        }
    }
}

/// Link state right after an event.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRecord {
    pub time: Minutes,
    pub kind: TraceKind,
    pub session: u64,
    pub reserved: Vec<Kbps>,
    pub capacity: Vec<Kbps>,
}

impl TraceRecord {
    /// `time,kind,session,u0;u1;...` with utilizations to six places.
    pub fn to_line(&self) -> String {
        let mut line = format!("{},{},{},", self.time, self.kind.name(), self.session);
        for (i, (r, c)) in self.reserved.iter().zip(&self.capacity).enumerate() {
            if i > 0 {
                line.push(';');
            }
            let _ = write!(line, "{:.6}", r.0 as f64 / c.0 as f64);
        }
        line
    }
}

pub fn run(config: &SimConfig) -> Result<SimReport, SimError> {
    let arrivals = generate_arrivals(&config.workload)?;
    run_with_arrivals(config, &arrivals, None)
}

pub fn run_traced(config: &SimConfig) -> Result<(SimReport, Vec<TraceRecord>), SimError> {
    let arrivals = generate_arrivals(&config.workload)?;
    let mut trace = Vec::new();
    let report = run_with_arrivals(config, &arrivals, Some(&mut trace))?;
    Ok((report, trace))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum EventKind {
    Departure,
    Arrival,
}

/// Runs a prepared arrival stream; `config.workload` still supplies the
/// horizon. Arrivals at or past the horizon are ignored.
pub fn run_with_arrivals(
    config: &SimConfig,
    arrivals: &[SessionRequest],
    mut trace: Option<&mut Vec<TraceRecord>>,
) -> Result<SimReport, SimError> {
    config.validate()?;
    let topo = build_topology(&config.topology)?;
    let horizon = config.workload.horizon;
    let mode = config.admission_mode();

    let mut state = NetworkState::new(&topo);
    let mut active: BTreeMap<u64, Reservation> = BTreeMap::new();
    let mut on_link: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); topo.links.len()];
    let mut queue: BinaryHeap<Reverse<(Minutes, EventKind, u64)>> = arrivals
        .iter()
        .enumerate()
        .filter(|(_, r)| r.arrival < horizon)
        .map(|(i, r)| Reverse((r.arrival, EventKind::Arrival, i as u64)))
        .collect();

    let mut report = SimReport {
        architecture: topo.architecture,
        offered: 0,
        admitted: 0,
        rejected: 0,
        completed: 0,
        sla_violated: 0,
        force_completed: 0,
        acceptance_ratio: 1.0,
        sla_violation_rate: 0.0,
        parties: topo.nodes.iter().map(|n| (n.id.clone(), PartyTotals::default())).collect(),
        links: Vec::new(),
        ledger: Vec::new(),
    };
    let mut usage = LinkUsage::new(topo.links.len());

    while let Some(Reverse((now, kind, key))) = queue.pop() {
        usage.advance(&state, now);
        let (trace_kind, session) = match kind {
            EventKind::Arrival => {
                let req = &arrivals[key as usize];
                report.offered += 1;
                match admit(req, &topo, &state, mode) {
                    AdmissionDecision::Accepted(mut resv) => {
                        report.admitted += 1;
                        if resv.end > horizon {
                            resv.end = horizon;
                            resv.truncated = true;
                        }
                        state.reserve(&resv.path, resv.reserved);
                        for &l in &resv.path {
                            on_link[l.0].insert(resv.session);
                        }
                        refresh_peaks(&resv.path, &state, &on_link, &mut active);
                        queue.push(Reverse((resv.end, EventKind::Departure, resv.session)));
                        active.insert(resv.session, resv);
                        (TraceKind::Admit, req.id)
                    }
                    AdmissionDecision::Rejected { session, .. } => {
                        report.rejected += 1;
                        (TraceKind::Reject, session)
                    }
                }
            }
            EventKind::Departure => {
                let mut resv = active.remove(&key).expect("departure for an active session");
                let verdict = verify_sla(&resv, &topo, &state, &config.sla, &config.degradation);
                resv.state = match verdict {
                    SlaVerdict::Pass => ReservationState::Completed,
                    SlaVerdict::Violated(_) => ReservationState::SlaViolated,
                };
                if resv.truncated {
                    report.force_completed += 1;
                }
                let kind = if resv.state == ReservationState::Completed {
                    report.completed += 1;
                    TraceKind::Complete
                } else {
                    report.sla_violated += 1;
                    TraceKind::Violate
                };
                for record in bill(&resv, &topo, &config.billing) {
                    post(&mut report.parties, &record);
                    report.ledger.push(record);
                }
                state.release(&resv.path, resv.reserved);
                for &l in &resv.path {
                    on_link[l.0].remove(&resv.session);
                }
                (kind, resv.session)
            }
        };
        usage.observe(&state);
        if let Some(t) = trace.as_deref_mut() {
            t.push(TraceRecord {
                time: now,
                kind: trace_kind,
                session,
                reserved: state.reserved_all().to_vec(),
                capacity: state.capacities().to_vec(),
            });
        }
    }
    usage.advance(&state, horizon);

    if report.offered > 0 {
        report.acceptance_ratio = report.admitted as f64 / report.offered as f64;
    }
    if report.admitted > 0 {
        report.sla_violation_rate = report.sla_violated as f64 / report.admitted as f64;
    }
    report.links = usage.finish(&topo, horizon);
    Ok(report)
}

fn post(parties: &mut BTreeMap<String, PartyTotals>, record: &BillingRecord) {
    parties.entry(record.payee.clone()).or_default().revenue += record.amount;
    parties.entry(record.payer.clone()).or_default().expense += record.amount;
}

/// Raises the recorded peak of every session sharing a link with `path`.
fn refresh_peaks(
    path: &[LinkId],
    state: &NetworkState,
    on_link: &[BTreeSet<u64>],
    active: &mut BTreeMap<u64, Reservation>,
) {
    let touched: BTreeSet<u64> = path.iter().flat_map(|l| on_link[l.0].iter().copied()).collect();
    for id in touched {
        if let Some(r) = active.get_mut(&id) {
            r.peak_utilization = r.peak_utilization.max(state.path_utilization(&r.path));
        }
    }
}

struct LinkUsage {
    peak: Vec<f64>,
    /// Reserved kbps integrated over minutes.
    area: Vec<u128>,
    last: Minutes,
}

impl LinkUsage {
    fn new(links: usize) -> Self {
        LinkUsage {
            peak: vec![0.0; links],
            area: vec![0; links],
            last: 0,
        }
    }

    fn advance(&mut self, state: &NetworkState, now: Minutes) {
        let dt = (now - self.last).max(0) as u128;
        for (a, r) in self.area.iter_mut().zip(state.reserved_all()) {
            *a += r.0 as u128 * dt;
        }
        self.last = self.last.max(now);
    }

    fn observe(&mut self, state: &NetworkState) {
        for (p, u) in self.peak.iter_mut().zip(state.utilizations()) {
            *p = p.max(u);
        }
    }

    fn finish(self, topo: &Topology, horizon: Minutes) -> Vec<LinkStats> {
        topo.links
            .iter()
            .enumerate()
            .map(|(i, link)| LinkStats {
                name: topo.link_name(LinkId(i)),
                peak_utilization: self.peak[i],
                mean_utilization: self.area[i] as f64 / (link.capacity.0 as f64 * horizon as f64),
            })
            .collect()
    }
}

/// The same workload served by a CDN and by per-ISP walled gardens.
#[derive(Clone, Debug, PartialEq)]
pub struct ArchitectureComparison {
    pub cdn: SimReport,
    pub walled_garden: SimReport,
    pub cdn_platforms: usize,
    pub walled_garden_platforms: usize,
    /// The shared arrival stream both runs consumed.
    pub arrivals: Vec<SessionRequest>,
}

impl ArchitectureComparison {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["metric", "cdn", "walled_garden"]).expect("in-memory write");
        let mut row = |metric: &str, a: String, b: String| {
            w.write_record([metric, a.as_str(), b.as_str()]).expect("in-memory write");
        };
        let (c, g) = (&self.cdn, &self.walled_garden);
        row("platforms", self.cdn_platforms.to_string(), self.walled_garden_platforms.to_string());
        row("offered", c.offered.to_string(), g.offered.to_string());
        row("admitted", c.admitted.to_string(), g.admitted.to_string());
        row("acceptance_ratio", c.acceptance_ratio.to_string(), g.acceptance_ratio.to_string());
        row("sla_violation_rate", c.sla_violation_rate.to_string(), g.sla_violation_rate.to_string());
        row("billing_cycles_per_session", "2".into(), "1".into());
        let parties: BTreeSet<&String> = c.parties.keys().chain(g.parties.keys()).collect();
        for party in parties {
            let net = |r: &SimReport| r.parties.get(party).map(|t| t.net().to_string()).unwrap_or_default();
            row(&format!("net:{party}"), net(c), net(g));
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }
}

/// Runs both architectures on one arrival stream. Needs a uniform topology
/// so the same ISP set can be laid out both ways.
pub fn compare_architectures(config: &SimConfig) -> Result<ArchitectureComparison, SimError> {
    let TopologySpec::Uniform(base) = &config.topology else {
        return Err(SimError::InvalidConfig(
            "architecture comparison needs a uniform topology".into(),
        ));
    };
    let arrivals = generate_arrivals(&config.workload)?;
    let with = |architecture| SimConfig {
        topology: TopologySpec::Uniform(base.with_architecture(architecture)),
        ..config.clone()
    };
    let cdn_config = with(Architecture::CdnBased);
    let garden_config = with(Architecture::WalledGarden);
    let cdn_platforms = build_topology(&cdn_config.topology)?.platform_count();
    let walled_garden_platforms = build_topology(&garden_config.topology)?.platform_count();
    Ok(ArchitectureComparison {
        cdn: run_with_arrivals(&cdn_config, &arrivals, None)?,
        walled_garden: run_with_arrivals(&garden_config, &arrivals, None)?,
        cdn_platforms,
        walled_garden_platforms,
        arrivals,
    })
}
