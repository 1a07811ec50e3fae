use crate::money::Cents;

use super::{CostParams, FareRule, GainPoint, MonthlyCost, NcfValue, ResidenceOption};

/// Office days per month left after telecommuting. Fractional on purpose.
pub fn commute_days(ncf: NcfValue, params: &CostParams) -> f64 {
    params.working_days as f64 * ncf.offline_share()
}

/// Roundtrip cost from the formula: time at `time_value` plus the fare.
pub fn trip_cost(option: &ResidenceOption, params: &CostParams) -> Cents {
    if !option.mode.charges_time() {
        return Cents::ZERO;
    }
    let time = 2.0 * option.one_way_time * params.time_value.0 as f64;
    let fare = match option.mode.fare_rule(params) {
        FareRule::Free => 0.0,
        FareRule::PerRoundtrip(c) => c.0 as f64,
        FareRule::PerMile(c) => 2.0 * option.distance * c.0 as f64,
    };
    Cents((time + fare).round() as i64)
}

/// The listed trip cost when the option carries one, otherwise the formula.
pub fn effective_trip_cost(option: &ResidenceOption, params: &CostParams) -> Cents {
    option
        .listed_trip_cost
        .unwrap_or_else(|| trip_cost(option, params))
}

pub fn monthly_cost(option: &ResidenceOption, ncf: NcfValue, params: &CostParams) -> MonthlyCost {
    let days = commute_days(ncf, params);
    let trip = effective_trip_cost(option, params).0 as f64;
    let (commute, hotel) = if option.hotel {
        let trips = days / params.hotel_batch;
        (
            Cents((trips * trip).round() as i64),
            Cents((days * params.hotel_rate.0 as f64).round() as i64),
        )
    } else {
        (Cents((days * trip).round() as i64), Cents::ZERO)
    };
    MonthlyCost {
        housing: option.housing,
        commute,
        hotel,
        total: option.housing + commute + hotel,
        feasible: option.is_available_at(ncf),
    }
}

/// The comparison point for an option on its own: itself at NCF 0, or at its
/// NCF floor when it is not reachable without telecommuting.
pub fn in_place_baseline(option: &ResidenceOption, params: &CostParams) -> MonthlyCost {
    monthly_cost(option, reference_ncf(option), params)
}

fn reference_ncf(option: &ResidenceOption) -> NcfValue {
    option.min_ncf.unwrap_or(NcfValue::ZERO)
}

/// Whether the housing-plus-transport saving against `baseline` exceeds the
/// monthly telecom spend.
pub fn feasible(
    option: &ResidenceOption,
    ncf: NcfValue,
    telecom_cost: Cents,
    baseline: &MonthlyCost,
    params: &CostParams,
) -> bool {
    let cost = monthly_cost(option, ncf, params);
    if !cost.feasible || !baseline.feasible {
        return false;
    }
    baseline.total - cost.total > telecom_cost
}

/// Largest monthly telecom spend that still leaves the move worthwhile.
pub fn telecom_budget(
    option: &ResidenceOption,
    ncf: NcfValue,
    params: &CostParams,
    baseline: &MonthlyCost,
) -> Cents {
    let cost = monthly_cost(option, ncf, params);
    if !cost.feasible || !baseline.feasible {
        return Cents::ZERO;
    }
    (baseline.total - cost.total).max(Cents::ZERO)
}

pub fn gain_in_place(option: &ResidenceOption, ncf: NcfValue, params: &CostParams) -> GainPoint {
    let reference = reference_ncf(option);
    let cost = monthly_cost(option, ncf, params);
    let gain = if cost.feasible {
        (in_place_baseline(option, params).total - cost.total).max(Cents::ZERO)
    } else {
        Cents::ZERO
    };
    GainPoint {
        option: option.clone(),
        ncf,
        gain,
        reference_ncf: reference,
        feasible: cost.feasible,
        value_of_remote_work: None,
    }
}

/// In-place gain plus the saving against the best no-telecommute residence,
/// `best_at_zero`, which is what a relocating worker compares against.
pub fn gain_with_relocation(
    option: &ResidenceOption,
    ncf: NcfValue,
    params: &CostParams,
    best_at_zero: &MonthlyCost,
) -> GainPoint {
    let mut point = gain_in_place(option, ncf, params);
    if point.feasible {
        point.value_of_remote_work =
            Some(best_at_zero.total - monthly_cost(option, ncf, params).total);
    }
    point
}
