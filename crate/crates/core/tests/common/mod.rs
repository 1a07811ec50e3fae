//! Independent recomputation of the cost grid in plain f64 dollars, written
//! against the row data directly rather than through the library.

#![allow(dead_code)]

use std::path::PathBuf;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub const NCFS: [f64; 7] = [0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 0.95];

pub struct Row {
    pub label: &'static str,
    pub miles: f64,
    pub minutes: f64,
    pub housing: f64,
    /// Out-of-pocket part of a roundtrip: per-mile car cost, transit fare or air fare.
    pub fare: f64,
    pub hotel: bool,
    pub floor: f64,
    /// Printed roundtrip used instead of time plus fare.
    pub listed: Option<f64>,
}

impl Row {
    pub fn roundtrip(&self) -> f64 {
        self.listed.unwrap_or(2.0 * self.minutes * 0.5 + self.fare)
    }

    pub fn total(&self, ncf: f64) -> Option<f64> {
        if ncf + 1e-12 < self.floor {
            return None;
        }
        let days = 20.0 * (1.0 - ncf);
        Some(if self.hotel {
            self.housing + days / 4.0 * self.roundtrip() + days * 200.0
        } else {
            self.housing + days * self.roundtrip()
        })
    }
}

const fn row(
    label: &'static str,
    miles: f64,
    minutes: f64,
    housing: f64,
    fare: f64,
    hotel: bool,
    floor: f64,
) -> Row {
    Row { label, miles, minutes, housing, fare, hotel, floor, listed: None }
}

pub fn rows() -> Vec<Row> {
    vec![
        // Walking time is not charged, so the first row has no roundtrip cost.
        Row { listed: Some(0.0), ..row("0mi", 0.0, 5.0, 5000.0, 0.0, false, 0.0) },
        row("5mi", 5.0, 20.0, 3500.0, 5.0, false, 0.0),
        row("10mi", 10.0, 30.0, 2500.0, 2.0 * 10.0 * 0.5, false, 0.0),
        Row { listed: Some(71.0), ..row("25mi", 25.0, 45.0, 1500.0, 2.0 * 25.0 * 0.5, false, 0.0) },
        row("40mi", 40.0, 60.0, 1200.0, 2.0 * 40.0 * 0.5, false, 0.0),
        row("100mi", 100.0, 120.0, 1100.0, 2.0 * 100.0 * 0.5, false, 0.0),
        row("1000mi", 1000.0, 180.0, 900.0, 200.0, false, 0.2),
        row("2500mi", 2500.0, 300.0, 1100.0, 600.0, false, 0.4),
        row("2500mi-hotel", 2500.0, 300.0, 1200.0, 600.0, true, 0.4),
        row("6000mi", 6000.0, 840.0, 1300.0, 1500.0, true, 0.6),
    ]
}
