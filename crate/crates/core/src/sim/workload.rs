//! Seeded session arrivals.
//!
//! The stream is drawn from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`. Each session consumes exactly four uniforms in
//! `[0, 1)`, in this order:
//!
//! 1. inter-arrival gap: `-ln(1 - u) / rate`, accumulated in continuous
//!    minutes and floored to the minute;
//! 2. media class: first class whose cumulative normalised weight exceeds `u`;
//! 3. duration: fixed, or `max(1, ceil(-ln(1 - u) * mean))` minutes;
//! 4. user: `floor(u * users)`.
//!
//! Because gaps are unit-rate exponentials divided by the rate, two runs
//! that differ only in arrival rate see the same sessions in the same
//! order, just compressed or stretched in time.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::media::{profile, MediaClass};

use super::{Minutes, SimError};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DurationModel {
    Fixed(Minutes),
    /// Mean in minutes.
    Exponential(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Workload {
    /// Sessions per hour.
    pub arrival_rate: f64,
    pub duration: DurationModel,
    /// Relative weights; need not sum to one.
    pub mix: Vec<(MediaClass, f64)>,
    /// Distinct users, spread over the ISPs round-robin.
    pub users: u32,
    /// Minutes simulated; arrivals fall in `[0, horizon)`.
    pub horizon: Minutes,
    pub seed: u64,
}

impl Default for Workload {
    fn default() -> Self {
        Workload {
            arrival_rate: 60.0,
            duration: DurationModel::Exponential(30.0),
            mix: vec![
                (MediaClass::Verbal, 1.0),
                (MediaClass::Visual, 2.0),
                (MediaClass::Telepresence, 1.0),
            ],
            users: 300,
            horizon: 24 * 60,
            seed: 42,
        }
    }
}

impl Workload {
    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |msg: &str| Err(SimError::InvalidConfig(msg.to_string()));
        if !(self.arrival_rate.is_finite() && self.arrival_rate >= 0.0) {
            return bad("arrival_rate must be >= 0");
        }
        if self.horizon <= 0 {
            return bad("horizon must be > 0");
        }
        if self.users == 0 {
            return bad("users must be >= 1");
        }
        match self.duration {
            DurationModel::Fixed(m) if m <= 0 => return bad("fixed duration must be > 0"),
            DurationModel::Exponential(mean) if !(mean.is_finite() && mean > 0.0) => {
                return bad("mean duration must be > 0")
            }
            _ => {}
        }
        if self.mix.iter().any(|(_, w)| !(w.is_finite() && *w >= 0.0)) {
            return bad("mix weights must be >= 0");
        }
        let total: f64 = self.mix.iter().map(|(_, w)| w).sum();
        if !(total.is_finite() && total > 0.0) {
            return bad("mix needs at least one positive weight");
        }
        Ok(())
    }
}

/// A user's request for one interactive session.
#[derive(Clone, Debug, PartialEq)]
pub struct SessionRequest {
    pub id: u64,
    pub user: u32,
    pub media: MediaClass,
    /// Mbps, the high end of the class's floor.
    pub demand: f64,
    pub arrival: Minutes,
    pub duration: Minutes,
}

pub fn generate_arrivals(workload: &Workload) -> Result<Vec<SessionRequest>, SimError> {
    workload.validate()?;
    if workload.arrival_rate == 0.0 {
        return Ok(Vec::new());
    }
    let per_minute = workload.arrival_rate / 60.0;
    let total_weight: f64 = workload.mix.iter().map(|(_, w)| w).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(workload.seed);
    let mut clock = 0.0_f64;
    let mut out = Vec::new();
    loop {
        let gap: f64 = rng.random();
        let pick: f64 = rng.random();
        let span: f64 = rng.random();
        let who: f64 = rng.random();

        clock += unit_exponential(gap) / per_minute;
        if clock >= workload.horizon as f64 {
            break;
        }
        let media = pick_media(&workload.mix, total_weight, pick);
        let duration = match workload.duration {
            DurationModel::Fixed(m) => m,
            DurationModel::Exponential(mean) => ((unit_exponential(span) * mean).ceil() as Minutes).max(1),
        };
        out.push(SessionRequest {
            id: out.len() as u64,
            user: ((who * workload.users as f64) as u32).min(workload.users - 1),
            media,
            demand: profile(media).min_bandwidth.high,
            arrival: clock.floor() as Minutes,
            duration,
        });
    }
    Ok(out)
}

fn unit_exponential(u: f64) -> f64 {
    -(1.0 - u).ln()
}

fn pick_media(mix: &[(MediaClass, f64)], total: f64, u: f64) -> MediaClass {
    let target = u * total;
    let mut acc = 0.0;
    for &(media, w) in mix {
        acc += w;
        if target < acc {
            return media;
        }
    }
    // u * total can round up to total; fall back to the last weighted class.
    mix.iter()
        .rev()
        .find(|(_, w)| *w > 0.0)
        .map(|(m, _)| *m)
        .expect("validated mix")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let w = Workload::default();
        assert_eq!(generate_arrivals(&w).unwrap(), generate_arrivals(&w).unwrap());
        let other = Workload { seed: 7, ..w.clone() };
        assert_ne!(generate_arrivals(&w).unwrap(), generate_arrivals(&other).unwrap());
    }

    #[test]
    fn zero_rate_is_empty() {
        let w = Workload {
            arrival_rate: 0.0,
            ..Workload::default()
        };
        assert!(generate_arrivals(&w).unwrap().is_empty());
    }

    #[test]
    fn arrivals_are_sorted_and_in_horizon() {
        let w = Workload::default();
        let s = generate_arrivals(&w).unwrap();
        assert!(s.windows(2).all(|p| p[0].arrival <= p[1].arrival));
        assert!(s.iter().all(|r| r.arrival < w.horizon && r.duration >= 1 && r.user < w.users));
        // Roughly rate x horizon sessions.
        let expected = w.arrival_rate * w.horizon as f64 / 60.0;
        assert!((s.len() as f64 - expected).abs() < 4.0 * expected.sqrt());
    }

    #[test]
    fn rate_only_rescales_time() {
        let slow = Workload::default();
        let fast = Workload {
            arrival_rate: 2.0 * slow.arrival_rate,
            ..slow.clone()
        };
        let a = generate_arrivals(&slow).unwrap();
        let b = generate_arrivals(&fast).unwrap();
        assert!(b.len() > a.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!((x.media, x.duration, x.user), (y.media, y.duration, y.user));
            assert!(y.arrival <= x.arrival);
        }
    }

    #[test]
    fn single_class_mix_and_zero_weights() {
        let w = Workload {
            mix: vec![(MediaClass::Message, 0.0), (MediaClass::Visual, 1.0)],
            duration: DurationModel::Fixed(15),
            ..Workload::default()
        };
        let s = generate_arrivals(&w).unwrap();
        assert!(s.iter().all(|r| r.media == MediaClass::Visual && r.duration == 15 && r.demand == 2.0));
    }

    #[test]
    fn validation() {
        let bad = [
            Workload { arrival_rate: -1.0, ..Workload::default() },
            Workload { horizon: 0, ..Workload::default() },
            Workload { users: 0, ..Workload::default() },
            Workload { mix: vec![], ..Workload::default() },
            Workload { duration: DurationModel::Fixed(0), ..Workload::default() },
        ];
        for w in bad {
            assert!(w.validate().is_err(), "{w:?}");
        }
    }
}
