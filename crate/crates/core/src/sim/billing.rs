use std::fmt;

use crate::money::Cents;

use super::admission::{Reservation, ReservationState};
use super::topology::{Architecture, Topology};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BillingCycle {
    /// The ISP charges the CDN for carrying the session.
    IspToCdn,
    /// The CDN resells the transport to the corporation with its margin.
    CdnToCorp,
    /// The ISP charges the corporation directly.
    IspToCorp,
}

impl fmt::Display for BillingCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BillingCycle::IspToCdn => "isp_to_cdn",
            BillingCycle::CdnToCorp => "cdn_to_corp",
            BillingCycle::IspToCorp => "isp_to_corp",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BillingRecord {
    pub session: u64,
    pub payer: String,
    pub payee: String,
    pub amount: Cents,
    pub cycle: BillingCycle,
    pub sla_violated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BillingPolicy {
    /// Share of the charge refunded when the SLA is missed; 1 bills nothing.
    pub sla_rebate: f64,
}

impl Default for BillingPolicy {
    fn default() -> Self {
        BillingPolicy { sla_rebate: 1.0 }
    }
}

/// Settlement records for a finished session. Active or rejected
/// reservations produce none.
pub fn bill(resv: &Reservation, topo: &Topology, policy: &BillingPolicy) -> Vec<BillingRecord> {
    let violated = match resv.state {
        ReservationState::Completed => false,
        ReservationState::SlaViolated => true,
        ReservationState::Active | ReservationState::Rejected => return Vec::new(),
    };
    let path = &topo.paths[resv.isp];
    let isp = topo.node(path.isp);
    let endpoint = topo.node(path.endpoint);
    let corp = topo.node(topo.corporation);
    let charged = if violated { 1.0 - policy.sla_rebate } else { 1.0 };
    let usage = resv.reserved.as_mbps() * resv.duration() as f64 * charged;
    let record = |payer: &str, payee: &str, amount, cycle| BillingRecord {
        session: resv.session,
        payer: payer.to_string(),
        payee: payee.to_string(),
        amount,
        cycle,
        sla_violated: violated,
    };
    match topo.architecture {
        Architecture::CdnBased => {
            let transit = Cents::from_dollars(usage * isp.transit_price);
            let resale = transit + transit.scale(endpoint.margin);
            vec![
                record(&endpoint.id, &isp.id, transit, BillingCycle::IspToCdn),
                record(&corp.id, &endpoint.id, resale, BillingCycle::CdnToCorp),
            ]
        }
        Architecture::WalledGarden => {
            let transit = Cents::from_dollars(usage * isp.transit_price);
            let amount = transit + transit.scale(endpoint.margin);
            vec![record(&corp.id, &isp.id, amount, BillingCycle::IspToCorp)]
        }
        Architecture::GeneralChain => {
            let price: f64 = path.carriers.iter().map(|&n| topo.node(n).transit_price).sum();
            let amount = Cents::from_dollars(usage * price);
            vec![record(&corp.id, &isp.id, amount, BillingCycle::IspToCorp)]
        }
    }
}
