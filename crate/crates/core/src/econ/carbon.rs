use super::EconError;

/// Emission factors for the car-versus-jet comparison.
///
/// The defaults put 15,000 car miles at roughly 50 passenger-hours of jet
/// travel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmissionFactors {
    /// Grams of CO2 per car mile.
    pub car_grams_per_mile: f64,
    /// Grams of CO2 per passenger-hour on a commuter jet.
    pub jet_grams_per_hour: f64,
}

impl Default for EmissionFactors {
    fn default() -> Self {
        EmissionFactors {
            car_grams_per_mile: 400.0,
            jet_grams_per_hour: 120_000.0,
        }
    }
}

/// Jet passenger-hours per year with the same footprint as the given driving.
pub fn carbon_compare(annual_car_miles: f64, factors: EmissionFactors) -> Result<f64, EconError> {
    if !(factors.jet_grams_per_hour.is_finite() && factors.jet_grams_per_hour > 0.0) {
        return Err(EconError::NonPositiveEmission(factors.jet_grams_per_hour));
    }
    Ok(annual_car_miles * factors.car_grams_per_mile / factors.jet_grams_per_hour)
}
