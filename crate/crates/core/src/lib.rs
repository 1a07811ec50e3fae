//! Telecommuting economics and an inter-provider QoS session simulator.
//!
//! - [`econ`]: network-centric fraction (NCF), monthly cost of housing and
//!   commuting, settlement optimisation, telecom budgets, carbon.
//! - [`media`]: media classes, tariffs and what an access line can carry.
//! - [`sim`]: seeded discrete-event simulation of admission, SLA checks and
//!   billing for CDN, walled-garden and chained deployments.
//! - [`report`], [`scenario`], [`cli`]: files in, CSV and SVG out.

pub mod cli;
pub mod econ;
pub mod media;
pub mod money;
pub mod reference;
pub mod report;
pub mod scenario;
pub mod sim;
