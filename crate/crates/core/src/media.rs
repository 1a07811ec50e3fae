//! Media classes, their bandwidth and QoS needs, what they cost by proximity,
//! and which of them a given access line can carry.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::money::Cents;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MediaError {
    #[error("over-provisioning factor must be at least 1, got {0}")]
    FactorBelowOne(f64),
    #[error("connection: {0}")]
    InvalidConnection(String),
    #[error("SLA: {0}")]
    InvalidSla(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MediaClass {
    Message,
    Verbal,
    Visual,
    Telepresence,
    RichMultimodal,
}

impl MediaClass {
    pub const ALL: [MediaClass; 5] = [
        MediaClass::Message,
        MediaClass::Verbal,
        MediaClass::Visual,
        MediaClass::Telepresence,
        MediaClass::RichMultimodal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MediaClass::Message => "message",
            MediaClass::Verbal => "verbal",
            MediaClass::Visual => "visual",
            MediaClass::Telepresence => "telepresence",
            MediaClass::RichMultimodal => "rich_multimodal",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        MediaClass::ALL.into_iter().find(|m| m.name() == name)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for MediaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum QosTier {
    Low,
    Medium,
    High,
    VeryHigh,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Reliability {
    Low,
    Medium,
    High,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BandwidthBound {
    LowEnd,
    HighEnd,
}

/// Minimum sustained rate in Mbps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BandwidthRange {
    pub low: f64,
    pub high: f64,
}

impl BandwidthRange {
    pub fn at(self, bound: BandwidthBound) -> f64 {
        match bound {
            BandwidthBound::LowEnd => self.low,
            BandwidthBound::HighEnd => self.high,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MediaProfile {
    pub class: MediaClass,
    pub min_bandwidth: BandwidthRange,
    /// Message payload size; only set for `Message`.
    pub payload_bytes: Option<u32>,
    pub qos_tier: QosTier,
    pub reliability: Reliability,
}

/// Sustained rate a 160-byte message stream is treated as needing.
pub const MESSAGE_RATE_MBPS: f64 = 0.002;

pub fn profile(media: MediaClass) -> MediaProfile {
    let range = |low, high| BandwidthRange { low, high };
    let (min_bandwidth, payload_bytes, qos_tier, reliability) = match media {
        MediaClass::Message => (
            range(MESSAGE_RATE_MBPS, MESSAGE_RATE_MBPS),
            Some(160),
            QosTier::Low,
            Reliability::Medium,
        ),
        MediaClass::Verbal => (range(0.009, 0.009), None, QosTier::High, Reliability::High),
        MediaClass::Visual => (range(0.2, 2.0), None, QosTier::Medium, Reliability::Low),
        MediaClass::Telepresence => (range(2.0, 4.0), None, QosTier::High, Reliability::High),
        MediaClass::RichMultimodal => {
            (range(5.0, 20.0), None, QosTier::VeryHigh, Reliability::High)
        }
    };
    MediaProfile {
        class: media,
        min_bandwidth,
        payload_bytes,
        qos_tier,
        reliability,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProximityTier {
    LocalLan,
    MetroDsl,
    NationalMobile,
    InternationalMobile,
}

impl ProximityTier {
    pub const ALL: [ProximityTier; 4] = [
        ProximityTier::LocalLan,
        ProximityTier::MetroDsl,
        ProximityTier::NationalMobile,
        ProximityTier::InternationalMobile,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProximityTier::LocalLan => "local_lan",
            ProximityTier::MetroDsl => "metro_dsl",
            ProximityTier::NationalMobile => "national_mobile",
            ProximityTier::InternationalMobile => "international_mobile",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        ProximityTier::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn is_mobile(self) -> bool {
        matches!(self, ProximityTier::NationalMobile | ProximityTier::InternationalMobile)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for ProximityTier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pricing {
    Free,
    PerMessage(Cents),
    PerMinute(Cents),
    NotSupported,
}

impl fmt::Display for Pricing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pricing::Free => f.write_str("free"),
            Pricing::PerMessage(c) => write!(f, "per_message {c}"),
            Pricing::PerMinute(c) => write!(f, "per_minute {c}"),
            Pricing::NotSupported => f.write_str("not_supported"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TariffEntry {
    pub media: MediaClass,
    pub proximity: ProximityTier,
    pub pricing: Pricing,
}

/// Prices for every (media, proximity) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TariffTable {
    prices: [[Pricing; 4]; 5],
}

impl Default for TariffTable {
    fn default() -> Self {
        TariffTable::published()
    }
}

impl TariffTable {
    pub fn published() -> Self {
        use Pricing::{Free, NotSupported as Ns, PerMessage, PerMinute};
        let c = Cents;
        TariffTable {
            // local_lan, metro_dsl, national_mobile, international_mobile
            prices: [
                [Free, Free, PerMessage(c(10)), PerMessage(c(50))],
                [Free, Free, PerMinute(c(25)), PerMinute(c(400))],
                [Free, Free, PerMinute(c(5)), PerMinute(c(1000))],
                [Free, PerMinute(c(50)), Ns, Ns],
                [Free, PerMinute(c(1000)), Ns, Ns],
            ],
        }
    }

    pub fn get(&self, media: MediaClass, proximity: ProximityTier) -> TariffEntry {
        TariffEntry {
            media,
            proximity,
            pricing: self.prices[media.index()][proximity.index()],
        }
    }

    pub fn set(&mut self, media: MediaClass, proximity: ProximityTier, pricing: Pricing) {
        self.prices[media.index()][proximity.index()] = pricing;
    }

    pub fn entries(&self) -> impl Iterator<Item = TariffEntry> + '_ {
        MediaClass::ALL.into_iter().flat_map(move |m| {
            ProximityTier::ALL.into_iter().map(move |p| self.get(m, p))
        })
    }
}

/// Published tariff for a pair.
pub fn tariff(media: MediaClass, proximity: ProximityTier) -> TariffEntry {
    TariffTable::published().get(media, proximity)
}

/// Access rate needed to carry `media` at the given bound once the
/// over-provisioning factor is applied.
pub fn required_access(
    media: MediaClass,
    overprovision: f64,
    bound: BandwidthBound,
) -> Result<f64, MediaError> {
    if !(overprovision.is_finite() && overprovision >= 1.0) {
        return Err(MediaError::FactorBelowOne(overprovision));
    }
    Ok(profile(media).min_bandwidth.at(bound) * overprovision)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DelayKind {
    #[default]
    OneWay,
    RoundTrip,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConnectionProfile {
    /// Mbps
    pub down: f64,
    /// Mbps
    pub up: f64,
    /// Percent
    pub loss: f64,
    /// Milliseconds
    pub jitter: f64,
    /// Milliseconds, one-way or round trip per `delay_kind`.
    pub delay: f64,
    pub delay_kind: DelayKind,
    pub price_per_mbps: Cents,
}

impl Default for ConnectionProfile {
    fn default() -> Self {
        ConnectionProfile {
            down: 15.0,
            up: 1.0,
            loss: 0.1,
            jitter: 5.0,
            delay: 40.0,
            delay_kind: DelayKind::OneWay,
            price_per_mbps: Cents(200),
        }
    }
}

impl ConnectionProfile {
    pub fn validate(&self) -> Result<(), MediaError> {
        let fields = [
            ("down", self.down),
            ("up", self.up),
            ("loss", self.loss),
            ("jitter", self.jitter),
            ("delay", self.delay),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v >= 0.0) {
                return Err(MediaError::InvalidConnection(format!("{name} must be >= 0")));
            }
        }
        if self.loss > 100.0 {
            return Err(MediaError::InvalidConnection("loss must be <= 100%".into()));
        }
        if self.price_per_mbps < Cents::ZERO {
            return Err(MediaError::InvalidConnection("price_per_mbps must be >= 0".into()));
        }
        Ok(())
    }

    pub fn round_trip_delay(&self) -> f64 {
        match self.delay_kind {
            DelayKind::OneWay => 2.0 * self.delay,
            DelayKind::RoundTrip => self.delay,
        }
    }

    pub fn monthly_access_cost(&self) -> Cents {
        self.price_per_mbps.scale(self.down)
    }
}

/// Loss, jitter and round-trip delay limits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlaSpec {
    /// Percent
    pub max_loss: f64,
    /// Milliseconds
    pub max_jitter: f64,
    /// Milliseconds, round trip.
    pub max_delay: f64,
}

impl Default for SlaSpec {
    fn default() -> Self {
        SlaSpec {
            max_loss: 0.2,
            max_jitter: 10.0,
            max_delay: 200.0,
        }
    }
}

impl SlaSpec {
    pub fn validate(&self) -> Result<(), MediaError> {
        for (name, v) in [
            ("max_loss", self.max_loss),
            ("max_jitter", self.max_jitter),
            ("max_delay", self.max_delay),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(MediaError::InvalidSla(format!("{name} must be > 0")));
            }
        }
        Ok(())
    }
}

/// Extra thresholds for the tiers the SLA does not pin down.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QosThresholds {
    /// Percent loss tolerated by `Medium`.
    pub medium_max_loss: f64,
    /// Jitter ceiling in ms for `VeryHigh`, on top of the SLA.
    pub very_high_max_jitter: f64,
}

impl Default for QosThresholds {
    fn default() -> Self {
        QosThresholds {
            medium_max_loss: 1.0,
            very_high_max_jitter: 5.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct MediaPolicy {
    pub thresholds: QosThresholds,
    /// Drop `Message` from a zero-rate link instead of treating it as free.
    pub strict_message: bool,
}

/// Highest QoS tier a best-effort line meets.
pub fn satisfied_tier(conn: &ConnectionProfile, sla: &SlaSpec, thresholds: &QosThresholds) -> QosTier {
    let meets_sla = conn.loss <= sla.max_loss
        && conn.jitter <= sla.max_jitter
        && conn.round_trip_delay() <= sla.max_delay;
    if meets_sla && conn.jitter <= thresholds.very_high_max_jitter {
        QosTier::VeryHigh
    } else if meets_sla {
        QosTier::High
    } else if conn.loss <= thresholds.medium_max_loss {
        QosTier::Medium
    } else {
        QosTier::Low
    }
}

/// Media classes the connection can carry. A guaranteed line needs only the
/// nominal rate; a best-effort line needs `overprovision` times the rate and
/// must also meet the class's QoS tier.
pub fn feasible_media(
    conn: &ConnectionProfile,
    overprovision: f64,
    sla: &SlaSpec,
    guaranteed: bool,
    policy: &MediaPolicy,
) -> Result<BTreeSet<MediaClass>, MediaError> {
    conn.validate()?;
    let factor = if guaranteed { 1.0 } else { overprovision };
    let tier = satisfied_tier(conn, sla, &policy.thresholds);
    let mut out = BTreeSet::new();
    for media in MediaClass::ALL {
        let needed = required_access(media, factor, BandwidthBound::HighEnd)?;
        let rate_ok = if media == MediaClass::Message {
            conn.down > 0.0 || !policy.strict_message
        } else {
            conn.down >= needed
        };
        let qos_ok = guaranteed || profile(media).qos_tier <= tier;
        if rate_ok && qos_ok {
            out.insert(media);
        }
    }
    Ok(out)
}

/// One line of a monthly usage mix: minutes for streams, count for messages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Usage {
    pub media: MediaClass,
    pub proximity: ProximityTier,
    pub amount: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MediaCost {
    pub total: Cents,
    /// Pairs in the mix that the tariff does not offer at all.
    pub unsupported: Vec<(MediaClass, ProximityTier)>,
}

impl MediaCost {
    pub fn is_feasible(&self) -> bool {
        self.unsupported.is_empty()
    }
}

pub fn monthly_media_cost(mix: &[Usage], table: &TariffTable) -> MediaCost {
    let mut cost = MediaCost::default();
    for usage in mix {
        match table.get(usage.media, usage.proximity).pricing {
            Pricing::Free => {}
            Pricing::PerMessage(p) | Pricing::PerMinute(p) => {
                cost.total += Cents(p.0 * usage.amount as i64)
            }
            Pricing::NotSupported => cost.unsupported.push((usage.media, usage.proximity)),
        }
    }
    cost
}
