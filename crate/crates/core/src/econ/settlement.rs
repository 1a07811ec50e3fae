use std::cmp::Ordering;

use crate::money::Cents;

use super::cost::{gain_in_place, in_place_baseline, monthly_cost};
use super::{CostParams, GainPoint, MonthlyCost, NcfValue, ResidenceOption};

/// What a residence is compared against when valuing remote work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Baseline {
    /// The same residence without telecommuting.
    InPlace,
    /// The cheapest residence anywhere without telecommuting.
    Relocation,
}

/// The cheapest residence at a given NCF.
#[derive(Clone, Debug, PartialEq)]
pub struct Settlement<'a> {
    pub index: usize,
    pub option: &'a ResidenceOption,
    pub cost: MonthlyCost,
}

/// Feasible option with the lowest monthly total; ties go to the shorter
/// distance, then to the earlier option.
pub fn optimize_settlement<'a>(
    options: &'a [ResidenceOption],
    ncf: NcfValue,
    params: &CostParams,
) -> Option<Settlement<'a>> {
    options
        .iter()
        .enumerate()
        .map(|(index, option)| Settlement {
            index,
            option,
            cost: monthly_cost(option, ncf, params),
        })
        .filter(|s| s.cost.feasible)
        .min_by(|a, b| {
            a.cost
                .total
                .cmp(&b.cost.total)
                .then(
                    a.option
                        .distance
                        .partial_cmp(&b.option.distance)
                        .unwrap_or(Ordering::Equal),
                )
                .then(a.index.cmp(&b.index))
        })
}

pub fn baseline_cost(
    kind: Baseline,
    options: &[ResidenceOption],
    option: &ResidenceOption,
    params: &CostParams,
) -> Option<MonthlyCost> {
    match kind {
        Baseline::InPlace => Some(in_place_baseline(option, params)),
        Baseline::Relocation => {
            optimize_settlement(options, NcfValue::ZERO, params).map(|s| s.cost)
        }
    }
}

/// Options available at `ncf` whose monthly total does not exceed `budget`.
/// `None` means no budget limit.
pub fn feasible_set<'a>(
    options: &'a [ResidenceOption],
    ncf: NcfValue,
    budget: Option<Cents>,
    params: &CostParams,
) -> Vec<&'a ResidenceOption> {
    options
        .iter()
        .filter(|option| {
            let cost = monthly_cost(option, ncf, params);
            cost.feasible && budget.is_none_or(|b| cost.total <= b)
        })
        .collect()
}

/// In-place gains for every option and NCF, ordered by distance then by NCF.
pub fn gain_curve(
    options: &[ResidenceOption],
    ncf_list: &[NcfValue],
    params: &CostParams,
) -> Vec<GainPoint> {
    let mut order: Vec<&ResidenceOption> = options.iter().collect();
    order.sort_by(|a, b| a.distance.partial_cmp(&b.distance).unwrap_or(Ordering::Equal));
    let mut ncfs = ncf_list.to_vec();
    ncfs.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    order
        .into_iter()
        .flat_map(|option| ncfs.iter().map(move |&ncf| gain_in_place(option, ncf, params)))
        .collect()
}
