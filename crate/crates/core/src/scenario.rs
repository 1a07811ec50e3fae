//! Scenario files: `[section]` headers, `key = value` lines and `#` comments.
//!
//! `[residence]`, `[tariff]`, `[node]` and `[link]` may repeat and keep file
//! order; every other section appears at most once. Money is written in
//! dollars. A scenario needs at least one `[residence]`, a `[connection]`, or
//! one of the simulation sections (`[topology]`, `[workload]`,
//! `[simulation]`, `[degradation]`).

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::econ::{CommuteMode, CostParams, NcfValue, ResidenceOption};
use crate::media::{
    ConnectionProfile, DelayKind, MediaClass, MediaPolicy, Pricing, ProximityTier, SlaSpec, TariffTable,
};
use crate::money::Cents;
use crate::reference::TABLE3_NCF_GRID;
use crate::sim::{
    build_topology, Architecture, DurationModel, ExplicitTopology, LinkSpec, NodeSpec, Role, SimConfig,
    TopologySpec, UniformTopology, Workload,
};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: unknown section [{name}]")]
    UnknownSection { line: usize, column: usize, name: String },
    #[error("line {line}, column {column}: unknown key `{key}` in [{section}]")]
    UnknownKey { line: usize, column: usize, section: String, key: String },
    #[error("line {line}: [{section}] is missing `{key}`")]
    MissingKey { line: usize, section: String, key: String },
    #[error("line {line}: {field}: {message}")]
    Constraint { line: usize, field: String, message: String },
    #[error("missing section: {0}")]
    MissingSection(String),
}

impl ScenarioError {
    pub fn is_io(&self) -> bool {
        matches!(self, ScenarioError::Io { .. })
    }
}

/// The access line `media` reports on, and how it is provisioned.
#[derive(Clone, Debug, PartialEq)]
pub struct MediaSettings {
    pub connection: ConnectionProfile,
    pub overprovision: f64,
    pub guaranteed: bool,
    pub policy: MediaPolicy,
}

impl Default for MediaSettings {
    fn default() -> Self {
        MediaSettings {
            connection: ConnectionProfile::default(),
            overprovision: 4.0,
            guaranteed: false,
            policy: MediaPolicy::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub cost_params: CostParams,
    pub residences: Vec<ResidenceOption>,
    /// Strictly increasing; the published grid when `[grid]` is absent.
    pub ncf_grid: Vec<NcfValue>,
    pub tariffs: TariffTable,
    pub media: MediaSettings,
    pub sla: SlaSpec,
    pub sim: Option<SimConfig>,
}

pub fn parse_scenario(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_str(&text)
}

struct Entry {
    key: String,
    value: String,
    line: usize,
    key_col: usize,
    value_col: usize,
}

struct Section {
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

const REPEATABLE: [&str; 4] = ["residence", "tariff", "node", "link"];
const SINGLE: [&str; 9] = [
    "costs", "grid", "connection", "sla", "degradation", "topology", "workload", "simulation", "media",
];
const SIM_SECTIONS: [&str; 6] = ["topology", "node", "link", "workload", "simulation", "degradation"];

fn split_sections(text: &str) -> Result<Vec<Section>, ScenarioError> {
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let col = |byte: usize| content[..byte].chars().count() + 1;
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(ScenarioError::Syntax {
                    line,
                    column: col(indent),
                    message: "section header needs a closing `]`".into(),
                });
            };
            let name = name.trim();
            if !REPEATABLE.contains(&name) && !SINGLE.contains(&name) {
                return Err(ScenarioError::UnknownSection {
                    line,
                    column: col(indent),
                    name: name.to_string(),
                });
            }
            if SINGLE.contains(&name) && sections.iter().any(|s| s.name == name) {
                return Err(ScenarioError::Syntax {
                    line,
                    column: col(indent),
                    message: format!("[{name}] appears more than once"),
                });
            }
            sections.push(Section {
                name: name.to_string(),
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let Some(eq) = content.find('=') else {
            return Err(ScenarioError::Syntax {
                line,
                column: col(indent),
                message: "expected `key = value` or `[section]`".into(),
            });
        };
        let key = content[..eq].trim();
        let value = content[eq + 1..].trim();
        let value_start = eq + 1 + (content[eq + 1..].len() - content[eq + 1..].trim_start().len());
        if key.is_empty() {
            return Err(ScenarioError::Syntax {
                line,
                column: col(indent),
                message: "empty key".into(),
            });
        }
        if value.is_empty() {
            return Err(ScenarioError::Syntax {
                line,
                column: col(eq) + 1,
                message: format!("`{key}` has no value"),
            });
        }
        let Some(section) = sections.last_mut() else {
            return Err(ScenarioError::Syntax {
                line,
                column: col(indent),
                message: "key outside of any section".into(),
            });
        };
        if section.entries.iter().any(|e| e.key == key) {
            return Err(ScenarioError::Syntax {
                line,
                column: col(indent),
                message: format!("`{key}` set twice in [{}]", section.name),
            });
        }
        section.entries.push(Entry {
            key: key.to_string(),
            value: value.to_string(),
            line,
            key_col: col(indent),
            value_col: col(value_start),
        });
    }
    Ok(sections)
}

/// Pulls typed values out of one section; whatever is left over is unknown.
struct Fields<'a> {
    section: &'a Section,
    pending: BTreeMap<&'a str, &'a Entry>,
}

impl<'a> Fields<'a> {
    fn new(section: &'a Section) -> Self {
        Fields {
            section,
            pending: section.entries.iter().map(|e| (e.key.as_str(), e)).collect(),
        }
    }

    fn syntax(entry: &Entry, message: String) -> ScenarioError {
        ScenarioError::Syntax {
            line: entry.line,
            column: entry.value_col,
            message,
        }
    }

    fn opt_with<T>(
        &mut self,
        key: &str,
        parse: impl FnOnce(&str) -> Result<T, String>,
    ) -> Result<Option<T>, ScenarioError> {
        match self.pending.remove(key) {
            None => Ok(None),
            Some(entry) => parse(&entry.value)
                .map(Some)
                .map_err(|msg| Self::syntax(entry, format!("{key}: {msg}"))),
        }
    }

    fn req_with<T>(&mut self, key: &str, parse: impl FnOnce(&str) -> Result<T, String>) -> Result<T, ScenarioError> {
        self.opt_with(key, parse)?.ok_or_else(|| ScenarioError::MissingKey {
            line: self.section.line,
            section: self.section.name.clone(),
            key: key.to_string(),
        })
    }

    fn f64(&mut self, key: &str) -> Result<Option<f64>, ScenarioError> {
        self.opt_with(key, number)
    }

    fn dollars(&mut self, key: &str) -> Result<Option<Cents>, ScenarioError> {
        self.opt_with(key, |v| number(v).map(Cents::from_dollars))
    }

    fn set_f64(&mut self, key: &str, target: &mut f64) -> Result<(), ScenarioError> {
        if let Some(v) = self.f64(key)? {
            *target = v;
        }
        Ok(())
    }

    fn set_dollars(&mut self, key: &str, target: &mut Cents) -> Result<(), ScenarioError> {
        if let Some(v) = self.dollars(key)? {
            *target = v;
        }
        Ok(())
    }

    fn set_parsed<T: std::str::FromStr>(&mut self, key: &str, target: &mut T) -> Result<(), ScenarioError> {
        if let Some(v) = self.opt_with(key, integer)? {
            *target = v;
        }
        Ok(())
    }

    fn set_bool(&mut self, key: &str, target: &mut bool) -> Result<(), ScenarioError> {
        if let Some(v) = self.opt_with(key, boolean)? {
            *target = v;
        }
        Ok(())
    }

    fn finish(self) -> Result<(), ScenarioError> {
        match self.pending.values().min_by_key(|e| e.line) {
            None => Ok(()),
            Some(e) => Err(ScenarioError::UnknownKey {
                line: e.line,
                column: e.key_col,
                section: self.section.name.clone(),
                key: e.key.clone(),
            }),
        }
    }
}

fn number(v: &str) -> Result<f64, String> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(format!("`{v}` is not a number")),
    }
}

fn integer<T: std::str::FromStr>(v: &str) -> Result<T, String> {
    v.parse::<T>().map_err(|_| format!("`{v}` is not a whole number in range"))
}

fn boolean(v: &str) -> Result<bool, String> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(format!("`{v}` is not true or false")),
    }
}

fn named<T>(v: &str, what: &str, lookup: impl Fn(&str) -> Option<T>) -> Result<T, String> {
    lookup(v).ok_or_else(|| format!("unknown {what} `{v}`"))
}

fn pricing(v: &str) -> Result<Pricing, String> {
    let mut parts = v.split_whitespace();
    let kind = parts.next().unwrap_or("");
    let amount = parts.next();
    if parts.next().is_some() {
        return Err(format!("`{v}` is not a price"));
    }
    let price = || -> Result<Cents, String> {
        let dollars = number(amount.ok_or("price needs an amount in dollars")?)?;
        if dollars < 0.0 {
            return Err("price must be >= 0".into());
        }
        Ok(Cents::from_dollars(dollars))
    };
    match (kind, amount) {
        ("free", None) => Ok(Pricing::Free),
        ("not_supported", None) => Ok(Pricing::NotSupported),
        ("per_message", _) => Ok(Pricing::PerMessage(price()?)),
        ("per_minute", _) => Ok(Pricing::PerMinute(price()?)),
        _ => Err(format!(
            "`{v}` is not one of free, not_supported, per_message <usd>, per_minute <usd>"
        )),
    }
}

fn duration(v: &str) -> Result<DurationModel, String> {
    match v.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["fixed", m] => Ok(DurationModel::Fixed(integer(m)?)),
        ["exponential", mean] => Ok(DurationModel::Exponential(number(mean)?)),
        _ => Err(format!("`{v}` is not `fixed <minutes>` or `exponential <mean minutes>`")),
    }
}

fn mix(v: &str) -> Result<Vec<(MediaClass, f64)>, String> {
    v.split(',')
        .map(|part| {
            let (name, weight) = part
                .split_once(':')
                .ok_or_else(|| format!("`{}` is not `media:weight`", part.trim()))?;
            Ok((named(name.trim(), "media class", MediaClass::from_name)?, number(weight.trim())?))
        })
        .collect()
}

fn delay_kind(v: &str) -> Result<DelayKind, String> {
    match v {
        "one_way" => Ok(DelayKind::OneWay),
        "round_trip" => Ok(DelayKind::RoundTrip),
        _ => Err(format!("`{v}` is not one_way or round_trip")),
    }
}

fn ncf_list(v: &str) -> Result<Vec<f64>, String> {
    v.split(',').map(|p| number(p.trim())).collect()
}

fn constraint(line: usize, field: &str, message: impl ToString) -> ScenarioError {
    ScenarioError::Constraint {
        line,
        field: field.to_string(),
        message: message.to_string(),
    }
}

fn ncf_at(line: usize, field: &str, v: f64) -> Result<NcfValue, ScenarioError> {
    NcfValue::new(v).map_err(|e| constraint(line, field, e))
}

pub fn parse_str(text: &str) -> Result<Scenario, ScenarioError> {
    let sections = split_sections(text)?;
    let find = |name: &str| sections.iter().find(|s| s.name == name);
    let all = |name: &'static str| sections.iter().filter(move |s| s.name == name);

    let has_sim = sections.iter().any(|s| SIM_SECTIONS.contains(&s.name.as_str()));
    if all("residence").next().is_none() && find("connection").is_none() && !has_sim {
        return Err(ScenarioError::MissingSection(
            "need at least one [residence], a [connection] or a simulation section".into(),
        ));
    }

    let mut cost_params = CostParams::default();
    if let Some(s) = find("costs") {
        let mut f = Fields::new(s);
        let p = &mut cost_params;
        f.set_dollars("time_value", &mut p.time_value)?;
        f.set_dollars("car_rate", &mut p.car_rate)?;
        f.set_dollars("transit_fare", &mut p.transit_fare)?;
        f.set_dollars("air_short", &mut p.air_short)?;
        f.set_dollars("air_mid", &mut p.air_mid)?;
        f.set_dollars("air_long", &mut p.air_long)?;
        f.set_dollars("hotel_rate", &mut p.hotel_rate)?;
        f.set_parsed("working_days", &mut p.working_days)?;
        f.set_f64("hotel_batch", &mut p.hotel_batch)?;
        f.finish()?;
        cost_params.validate().map_err(|e| constraint(s.line, "costs", e))?;
    }

    let ncf_grid = match find("grid") {
        None => TABLE3_NCF_GRID.iter().map(|&v| NcfValue::new(v).expect("published grid")).collect(),
        Some(s) => {
            let mut f = Fields::new(s);
            let values = f.req_with("ncf", ncf_list)?;
            let line = f_line(s, "ncf");
            f.finish()?;
            let grid = values
                .iter()
                .map(|&v| ncf_at(line, "ncf", v))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(w) = grid.windows(2).find(|w| w[0] >= w[1]) {
                return Err(constraint(
                    line,
                    "ncf",
                    format!("values must be strictly increasing; {} is followed by {}", w[0].value(), w[1].value()),
                ));
            }
            grid
        }
    };

    let mut residences = Vec::new();
    for s in all("residence") {
        let mut f = Fields::new(s);
        let label = f.req_with("label", |v| Ok(v.to_string()))?;
        let distance = f.req_with("distance", number)?;
        let time = f.req_with("time", number)?;
        let housing = f.req_with("housing", |v| number(v).map(Cents::from_dollars))?;
        let mode = f.req_with("mode", |v| named(v, "commute mode", CommuteMode::from_name))?;
        let mut option = ResidenceOption::new(label, distance, time, housing, mode);
        f.set_bool("hotel", &mut option.hotel)?;
        if let Some(v) = f.f64("min_ncf")? {
            option.min_ncf = Some(ncf_at(f_line(s, "min_ncf"), "min_ncf", v)?);
        }
        option.listed_trip_cost = f.dollars("trip_cost")?;
        f.finish()?;
        option.validate().map_err(|e| constraint(s.line, "residence", e))?;
        if residences.iter().any(|r: &ResidenceOption| r.label == option.label) {
            return Err(constraint(s.line, "label", format!("`{}` is used twice", option.label)));
        }
        residences.push(option);
    }

    let mut tariffs = TariffTable::published();
    for s in all("tariff") {
        let mut f = Fields::new(s);
        let media = f.req_with("media", |v| named(v, "media class", MediaClass::from_name))?;
        let proximity = f.req_with("proximity", |v| named(v, "proximity tier", ProximityTier::from_name))?;
        let price = f.req_with("pricing", pricing)?;
        f.finish()?;
        tariffs.set(media, proximity, price);
    }

    let mut media = MediaSettings::default();
    if let Some(s) = find("connection") {
        let mut f = Fields::new(s);
        let c = &mut media.connection;
        f.set_f64("down", &mut c.down)?;
        f.set_f64("up", &mut c.up)?;
        f.set_f64("loss", &mut c.loss)?;
        f.set_f64("jitter", &mut c.jitter)?;
        f.set_f64("delay", &mut c.delay)?;
        if let Some(k) = f.opt_with("delay_kind", delay_kind)? {
            c.delay_kind = k;
        }
        f.set_dollars("price_per_mbps", &mut c.price_per_mbps)?;
        f.set_f64("overprovision", &mut media.overprovision)?;
        f.set_bool("guaranteed", &mut media.guaranteed)?;
        f.set_bool("strict_message", &mut media.policy.strict_message)?;
        f.finish()?;
        media.connection.validate().map_err(|e| constraint(s.line, "connection", e))?;
        if media.overprovision < 1.0 {
            return Err(constraint(f_line(s, "overprovision"), "overprovision", "must be >= 1"));
        }
    }
    if let Some(s) = find("media") {
        let mut f = Fields::new(s);
        let th = &mut media.policy.thresholds;
        f.set_f64("medium_max_loss", &mut th.medium_max_loss)?;
        f.set_f64("very_high_max_jitter", &mut th.very_high_max_jitter)?;
        f.finish()?;
    }

    let mut sla = SlaSpec::default();
    if let Some(s) = find("sla") {
        let mut f = Fields::new(s);
        f.set_f64("max_loss", &mut sla.max_loss)?;
        f.set_f64("max_jitter", &mut sla.max_jitter)?;
        f.set_f64("max_delay", &mut sla.max_delay)?;
        f.finish()?;
        sla.validate().map_err(|e| constraint(s.line, "sla", e))?;
    }

    let sim = if has_sim { Some(parse_sim(&sections, sla)?) } else { None };

    Ok(Scenario {
        cost_params,
        residences,
        ncf_grid,
        tariffs,
        media,
        sla,
        sim,
    })
}

/// Line of `key` if it was given, else the section header line.
fn f_line(section: &Section, key: &str) -> usize {
    section
        .entries
        .iter()
        .find(|e| e.key == key)
        .map_or(section.line, |e| e.line)
}

fn parse_sim(sections: &[Section], sla: SlaSpec) -> Result<SimConfig, ScenarioError> {
    let find = |name: &str| sections.iter().find(|s| s.name == name);
    let mut config = SimConfig {
        sla,
        ..SimConfig::default()
    };

    let nodes: Vec<&Section> = sections.iter().filter(|s| s.name == "node").collect();
    let links: Vec<&Section> = sections.iter().filter(|s| s.name == "link").collect();
    let topo_section = find("topology");
    let explicit = !nodes.is_empty() || !links.is_empty();
    let mut architecture = Architecture::CdnBased;
    let mut f = topo_section.map(Fields::new);
    if let Some(f) = f.as_mut() {
        if let Some(a) = f.opt_with("architecture", |v| named(v, "architecture", Architecture::from_name))? {
            architecture = a;
        }
    }
    config.topology = if explicit {
        let mut spec = ExplicitTopology {
            architecture,
            nodes: Vec::new(),
            links: Vec::new(),
            platform_capacity: 100.0,
            platform_latency: 10.0,
            platform_margin: 0.0,
        };
        if let Some(mut f) = f {
            f.set_f64("platform_capacity", &mut spec.platform_capacity)?;
            f.set_f64("platform_latency", &mut spec.platform_latency)?;
            f.set_f64("platform_margin", &mut spec.platform_margin)?;
            f.finish()?;
        }
        for s in nodes {
            let mut f = Fields::new(s);
            let id = f.req_with("id", |v| Ok(v.to_string()))?;
            let role = f.req_with("role", |v| named(v, "role", Role::from_name))?;
            let mut node = NodeSpec::new(id, role);
            f.set_f64("transit_price", &mut node.transit_price)?;
            f.set_f64("margin", &mut node.margin)?;
            f.finish()?;
            spec.nodes.push(node);
        }
        for s in links {
            let mut f = Fields::new(s);
            let a = f.req_with("a", |v| Ok(v.to_string()))?;
            let b = f.req_with("b", |v| Ok(v.to_string()))?;
            let capacity = f.req_with("capacity", number)?;
            let latency = f.req_with("latency", number)?;
            f.finish()?;
            spec.links.push(LinkSpec { a, b, capacity, latency });
        }
        TopologySpec::Explicit(spec)
    } else {
        let mut spec = UniformTopology {
            architecture,
            ..UniformTopology::default()
        };
        if let Some(mut f) = f {
            f.set_parsed("isps", &mut spec.isps)?;
            f.set_f64("capacity", &mut spec.capacity)?;
            f.set_f64("latency", &mut spec.latency)?;
            f.set_parsed("transit_hops", &mut spec.transit_hops)?;
            f.set_f64("transit_price", &mut spec.transit_price)?;
            f.set_f64("margin", &mut spec.margin)?;
            f.finish()?;
        }
        TopologySpec::Uniform(spec)
    };
    let topo_line = topo_section.map_or(1, |s| s.line);
    build_topology(&config.topology).map_err(|e| constraint(topo_line, "topology", e))?;

    if let Some(s) = find("workload") {
        let mut f = Fields::new(s);
        let w: &mut Workload = &mut config.workload;
        f.set_f64("arrival_rate", &mut w.arrival_rate)?;
        if let Some(d) = f.opt_with("duration", duration)? {
            w.duration = d;
        }
        if let Some(m) = f.opt_with("mix", mix)? {
            w.mix = m;
        }
        f.set_parsed("users", &mut w.users)?;
        f.set_parsed("horizon", &mut w.horizon)?;
        f.set_parsed("seed", &mut w.seed)?;
        f.finish()?;
    }
    if let Some(s) = find("simulation") {
        let mut f = Fields::new(s);
        f.set_bool("guaranteed", &mut config.guaranteed)?;
        f.set_f64("overprovision", &mut config.overprovision)?;
        f.set_f64("sla_rebate", &mut config.billing.sla_rebate)?;
        f.finish()?;
    }
    if let Some(s) = find("degradation") {
        let mut f = Fields::new(s);
        let d = &mut config.degradation;
        f.set_f64("knee", &mut d.knee)?;
        f.set_f64("span", &mut d.span)?;
        f.set_f64("loss_at_full", &mut d.loss_at_full)?;
        f.set_f64("jitter_base", &mut d.jitter_base)?;
        f.set_f64("jitter_coeff", &mut d.jitter_coeff)?;
        f.finish()?;
    }
    let line = ["workload", "simulation", "degradation", "topology"]
        .iter()
        .find_map(|n| find(n))
        .map_or(1, |s| s.line);
    config.validate().map_err(|e| constraint(line, "simulation", e))?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> ScenarioError {
        parse_str(text).unwrap_err()
    }

    const TWO_ROWS: &str = "\
[grid]
ncf = 0, 0.5

[residence]
label = near
distance = 5
time = 20
housing = 3500
mode = tram_bus

[residence]   # second
label = far
distance = 2500
time = 300
housing = 1000
mode = mid_haul_air
hotel = true
min_ncf = 0.4
";

    #[test]
    fn residences_keep_file_order() {
        let s = parse_str(TWO_ROWS).unwrap();
        assert_eq!(s.residences.len(), 2);
        assert_eq!(s.residences[0].label, "near");
        assert_eq!(s.residences[1].mode, CommuteMode::MidHaulAir);
        assert!(s.residences[1].hotel);
        assert_eq!(s.residences[1].min_ncf, Some(NcfValue::new(0.4).unwrap()));
        assert_eq!(s.ncf_grid.len(), 2);
        assert!(s.sim.is_none());
    }

    #[test]
    fn empty_file_is_missing_a_section() {
        assert!(matches!(err(""), ScenarioError::MissingSection(_)));
        assert!(matches!(err("# only a comment\n"), ScenarioError::MissingSection(_)));
    }

    #[test]
    fn decreasing_grid_is_rejected() {
        let text = TWO_ROWS.replace("ncf = 0, 0.5", "ncf = 0.4, 0.2");
        match err(&text) {
            ScenarioError::Constraint { line, field, .. } => assert_eq!((line, field.as_str()), (2, "ncf")),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn unknown_key_has_position() {
        let text = TWO_ROWS.replace("hotel = true", "  hotle = true");
        match err(&text) {
            ScenarioError::UnknownKey { line, column, key, .. } => {
                assert_eq!((line, column, key.as_str()), (17, 3, "hotle"))
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn bad_number_points_at_the_value() {
        let text = TWO_ROWS.replace("distance = 5\n", "distance = five\n");
        match err(&text) {
            ScenarioError::Syntax { line, column, .. } => assert_eq!((line, column), (6, 12)),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(err("[bogus]\n"), ScenarioError::UnknownSection { line: 1, .. }));
        assert!(matches!(err("x = 1\n"), ScenarioError::Syntax { line: 1, .. }));
        assert!(matches!(err("[costs\n"), ScenarioError::Syntax { line: 1, .. }));
        assert!(matches!(err("[residence]\nlabel\n"), ScenarioError::Syntax { line: 2, .. }));
        assert!(matches!(
            err("[residence]\nlabel = a\n"),
            ScenarioError::MissingKey { line: 1, .. }
        ));
        assert!(matches!(err("[sla]\n[sla]\n"), ScenarioError::Syntax { line: 2, .. }));
    }

    #[test]
    fn constraint_names_the_field() {
        let text = TWO_ROWS.replace("housing = 3500", "housing = -1");
        let e = err(&text);
        assert!(matches!(e, ScenarioError::Constraint { line: 4, .. }), "{e}");
        assert!(e.to_string().contains("housing"), "{e}");
    }

    #[test]
    fn tariff_and_connection_overrides() {
        let text = "\
[connection]
down = 100
guaranteed = true
delay_kind = round_trip

[tariff]
media = telepresence
proximity = national_mobile
pricing = per_minute 1.5
";
        let s = parse_str(text).unwrap();
        assert_eq!(s.media.connection.down, 100.0);
        assert!(s.media.guaranteed);
        assert_eq!(s.media.connection.delay_kind, DelayKind::RoundTrip);
        assert_eq!(
            s.tariffs.get(MediaClass::Telepresence, ProximityTier::NationalMobile).pricing,
            Pricing::PerMinute(Cents(150))
        );
        assert!(s.residences.is_empty());
    }

    #[test]
    fn simulation_sections() {
        let text = "\
[topology]
architecture = walled_garden
isps = 4
capacity = 50

[workload]
arrival_rate = 120
duration = fixed 15
mix = verbal:1, telepresence:3
seed = 7

[simulation]
guaranteed = false
overprovision = 5
";
        let s = parse_str(text).unwrap();
        let c = s.sim.unwrap();
        match &c.topology {
            TopologySpec::Uniform(u) => {
                assert_eq!((u.architecture, u.isps, u.capacity), (Architecture::WalledGarden, 4, 50.0))
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(c.workload.duration, DurationModel::Fixed(15));
        assert_eq!(c.workload.mix, vec![(MediaClass::Verbal, 1.0), (MediaClass::Telepresence, 3.0)]);
        assert_eq!(c.workload.seed, 7);
        assert!(!c.guaranteed);
    }

    #[test]
    fn explicit_topology() {
        let text = "\
[node]
id = a
role = last_mile_isp
transit_price = 0.002

[node]
id = edge
role = cdn_operator
margin = 0.1

[node]
id = hq
role = corporation

[link]
a = a
b = edge
capacity = 40
latency = 5
";
        let c = parse_str(text).unwrap().sim.unwrap();
        let TopologySpec::Explicit(e) = &c.topology else { panic!() };
        assert_eq!(e.nodes.len(), 3);
        assert_eq!(e.links[0].capacity, 40.0);
        let bad = text.replace("b = edge", "b = nowhere");
        assert!(matches!(err(&bad), ScenarioError::Constraint { .. }));
    }

    #[test]
    fn uniform_only_keys_rejected_for_explicit_topology() {
        let text = "[topology]\nisps = 2\n[node]\nid = hq\nrole = corporation\n";
        assert!(matches!(err(text), ScenarioError::UnknownKey { line: 2, .. }));
    }
}
