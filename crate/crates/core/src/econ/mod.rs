//! Housing-plus-commute cost model for workers who split their tasks between
//! the office and the network.
//!
//! The net-centric factor (NCF) is the share of a worker's tasks that can be
//! done online. Everything else in this module is a pure function of a
//! [`ResidenceOption`], an NCF and a set of [`CostParams`].

mod carbon;
mod cost;
mod settlement;

use std::fmt;

use thiserror::Error;

use crate::money::Cents;

pub use carbon::{carbon_compare, EmissionFactors};
pub use cost::{
    commute_days, effective_trip_cost, feasible, gain_in_place, gain_with_relocation,
    in_place_baseline, monthly_cost, telecom_budget, trip_cost,
};
pub use settlement::{
    baseline_cost, feasible_set, gain_curve, optimize_settlement, Baseline, Settlement,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EconError {
    #[error("NCF is undefined when a job has no tasks")]
    NoTasks,
    #[error("NCF {0} is outside [0, 1]")]
    NcfOutOfRange(f64),
    #[error("residence `{label}`: {reason}")]
    InvalidOption { label: String, reason: String },
    #[error("cost parameters: {0}")]
    InvalidParams(String),
    #[error("jet emission factor must be positive, got {0}")]
    NonPositiveEmission(f64),
}

/// Net-centric factor: online tasks / (offline tasks + online tasks).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct NcfValue(f64);

impl NcfValue {
    pub const ZERO: NcfValue = NcfValue(0.0);
    pub const ONE: NcfValue = NcfValue(1.0);

    pub fn new(value: f64) -> Result<Self, EconError> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(NcfValue(value))
        } else {
            Err(EconError::NcfOutOfRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Share of tasks that still need physical presence.
    pub fn offline_share(self) -> f64 {
        1.0 - self.0
    }
}

impl fmt::Display for NcfValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Computes the NCF of a job from its task counts.
pub fn compute_ncf(online_tasks: u64, offline_tasks: u64) -> Result<NcfValue, EconError> {
    let total = online_tasks
        .checked_add(offline_tasks)
        .ok_or(EconError::NoTasks)?;
    if total == 0 {
        return Err(EconError::NoTasks);
    }
    NcfValue::new(online_tasks as f64 / total as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CommuteMode {
    Walk,
    TramBus,
    Car,
    /// Regional train or short-haul flight; priced at the short-haul fare.
    TrainAir,
    ShortHaulAir,
    MidHaulAir,
    LongHaulAir,
}

/// How the out-of-pocket part of a roundtrip is priced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FareRule {
    Free,
    PerRoundtrip(Cents),
    PerMile(Cents),
}

impl CommuteMode {
    pub const ALL: [CommuteMode; 7] = [
        CommuteMode::Walk,
        CommuteMode::TramBus,
        CommuteMode::Car,
        CommuteMode::TrainAir,
        CommuteMode::ShortHaulAir,
        CommuteMode::MidHaulAir,
        CommuteMode::LongHaulAir,
    ];

    pub fn is_air(self) -> bool {
        matches!(
            self,
            CommuteMode::TrainAir
                | CommuteMode::ShortHaulAir
                | CommuteMode::MidHaulAir
                | CommuteMode::LongHaulAir
        )
    }

    /// Walking is priced at zero including time.
    pub fn charges_time(self) -> bool {
        self != CommuteMode::Walk
    }

    pub fn fare_rule(self, params: &CostParams) -> FareRule {
        match self {
            CommuteMode::Walk => FareRule::Free,
            CommuteMode::TramBus => FareRule::PerRoundtrip(params.transit_fare),
            CommuteMode::Car => FareRule::PerMile(params.car_rate),
            CommuteMode::TrainAir | CommuteMode::ShortHaulAir => {
                FareRule::PerRoundtrip(params.air_short)
            }
            CommuteMode::MidHaulAir => FareRule::PerRoundtrip(params.air_mid),
            CommuteMode::LongHaulAir => FareRule::PerRoundtrip(params.air_long),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CommuteMode::Walk => "walk",
            CommuteMode::TramBus => "tram_bus",
            CommuteMode::Car => "car",
            CommuteMode::TrainAir => "train_air",
            CommuteMode::ShortHaulAir => "short_haul_air",
            CommuteMode::MidHaulAir => "mid_haul_air",
            CommuteMode::LongHaulAir => "long_haul_air",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        CommuteMode::ALL.into_iter().find(|m| m.name() == name)
    }
}

impl fmt::Display for CommuteMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One candidate place to live.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidenceOption {
    pub label: String,
    /// Miles from work.
    pub distance: f64,
    /// One-way commute time in minutes.
    pub one_way_time: f64,
    /// Monthly housing cost.
    pub housing: Cents,
    pub mode: CommuteMode,
    /// Commute days are spent in a hotel near work and trips are batched.
    pub hotel: bool,
    /// Below this NCF the option is not a realistic commute at all.
    pub min_ncf: Option<NcfValue>,
    /// Listed roundtrip cost that overrides the formula when set.
    pub listed_trip_cost: Option<Cents>,
}

impl ResidenceOption {
    pub fn new(
        label: impl Into<String>,
        distance: f64,
        one_way_time: f64,
        housing: Cents,
        mode: CommuteMode,
    ) -> Self {
        ResidenceOption {
            label: label.into(),
            distance,
            one_way_time,
            housing,
            mode,
            hotel: false,
            min_ncf: None,
            listed_trip_cost: None,
        }
    }

    pub fn with_hotel(mut self) -> Self {
        self.hotel = true;
        self
    }

    pub fn with_min_ncf(mut self, ncf: NcfValue) -> Self {
        self.min_ncf = Some(ncf);
        self
    }

    pub fn with_listed_trip_cost(mut self, cost: Cents) -> Self {
        self.listed_trip_cost = Some(cost);
        self
    }

    pub fn is_available_at(&self, ncf: NcfValue) -> bool {
        self.min_ncf.is_none_or(|min| ncf >= min)
    }

    pub fn validate(&self) -> Result<(), EconError> {
        let fail = |reason: &str| {
            Err(EconError::InvalidOption {
                label: self.label.clone(),
                reason: reason.to_string(),
            })
        };
        if !(self.distance.is_finite() && self.distance >= 0.0) {
            return fail("distance must be a non-negative number of miles");
        }
        if !(self.one_way_time.is_finite() && self.one_way_time >= 0.0) {
            return fail("commute time must be a non-negative number of minutes");
        }
        if self.housing <= Cents::ZERO {
            return fail("housing cost must be positive");
        }
        if self.hotel && !self.mode.is_air() {
            return fail("hotel stays are only modelled for air commutes");
        }
        if matches!(self.listed_trip_cost, Some(c) if c < Cents::ZERO) {
            return fail("listed trip cost must be non-negative");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CostParams {
    /// Value of commute time per minute.
    pub time_value: Cents,
    /// Car cost per mile driven.
    pub car_rate: Cents,
    /// Transit fare per roundtrip, on top of time.
    pub transit_fare: Cents,
    pub air_short: Cents,
    pub air_mid: Cents,
    pub air_long: Cents,
    /// Hotel cost per night spent near work.
    pub hotel_rate: Cents,
    pub working_days: u32,
    /// Commute days covered by one trip when staying in a hotel.
    pub hotel_batch: f64,
}

impl Default for CostParams {
    fn default() -> Self {
        CostParams {
            time_value: Cents(50),
            car_rate: Cents(50),
            transit_fare: Cents(500),
            air_short: Cents::whole_dollars(200),
            air_mid: Cents::whole_dollars(600),
            air_long: Cents::whole_dollars(1500),
            hotel_rate: Cents::whole_dollars(200),
            working_days: 20,
            hotel_batch: 4.0,
        }
    }
}

impl CostParams {
    pub fn validate(&self) -> Result<(), EconError> {
        let money = [
            ("time_value", self.time_value),
            ("car_rate", self.car_rate),
            ("transit_fare", self.transit_fare),
            ("air_short", self.air_short),
            ("air_mid", self.air_mid),
            ("air_long", self.air_long),
            ("hotel_rate", self.hotel_rate),
        ];
        for (name, value) in money {
            if value <= Cents::ZERO {
                return Err(EconError::InvalidParams(format!("{name} must be positive")));
            }
        }
        if !(1..=31).contains(&self.working_days) {
            return Err(EconError::InvalidParams(
                "working_days must be in [1, 31]".into(),
            ));
        }
        if !(self.hotel_batch.is_finite() && self.hotel_batch > 0.0) {
            return Err(EconError::InvalidParams("hotel_batch must be positive".into()));
        }
        Ok(())
    }
}

/// Monthly housing plus transport for one residence at one NCF.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonthlyCost {
    pub housing: Cents,
    pub commute: Cents,
    pub hotel: Cents,
    pub total: Cents,
    /// False when the NCF is below the option's floor.
    pub feasible: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GainPoint {
    pub option: ResidenceOption,
    pub ncf: NcfValue,
    /// Monthly saving against the same residence at `reference_ncf`.
    pub gain: Cents,
    /// NCF the saving is measured from; the option's floor when it has one.
    pub reference_ncf: NcfValue,
    /// False when the option is unavailable at `ncf`; `gain` is then zero.
    pub feasible: bool,
    /// Saving against the cheapest no-telecommute residence anywhere.
    pub value_of_remote_work: Option<Cents>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ncf_from_task_counts() {
        assert_eq!(compute_ncf(2, 3).unwrap().value(), 0.4);
        assert_eq!(compute_ncf(0, 5).unwrap().value(), 0.0);
        assert_eq!(compute_ncf(7, 0).unwrap().value(), 1.0);
        assert_eq!(compute_ncf(0, 0), Err(EconError::NoTasks));
    }

    #[test]
    fn ncf_rejects_out_of_range() {
        assert!(NcfValue::new(1.01).is_err());
        assert!(NcfValue::new(-0.0001).is_err());
        assert!(NcfValue::new(f64::NAN).is_err());
    }

    #[test]
    fn each_mode_has_one_fare_rule() {
        let p = CostParams::default();
        assert_eq!(CommuteMode::Car.fare_rule(&p), FareRule::PerMile(Cents(50)));
        assert_eq!(CommuteMode::Walk.fare_rule(&p), FareRule::Free);
        for mode in CommuteMode::ALL.into_iter().filter(|m| m.is_air()) {
            assert!(matches!(mode.fare_rule(&p), FareRule::PerRoundtrip(_)));
        }
        for mode in CommuteMode::ALL {
            assert_eq!(CommuteMode::from_name(mode.name()), Some(mode));
        }
    }

    #[test]
    fn option_validation() {
        let ok = ResidenceOption::new("x", 10.0, 30.0, Cents(100), CommuteMode::Car);
        assert!(ok.validate().is_ok());
        assert!(ok.clone().with_hotel().validate().is_err());
        let mut bad = ok.clone();
        bad.housing = Cents::ZERO;
        assert!(bad.validate().is_err());
        let mut bad = ok;
        bad.distance = -1.0;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn params_validation() {
        assert!(CostParams::default().validate().is_ok());
        let p = CostParams {
            working_days: 32,
            ..CostParams::default()
        };
        assert!(p.validate().is_err());
        let p = CostParams {
            hotel_rate: Cents::ZERO,
            ..CostParams::default()
        };
        assert!(p.validate().is_err());
    }
}
