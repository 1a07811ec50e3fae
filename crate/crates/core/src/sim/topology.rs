//! Provider graphs for the two session architectures (plus a general transit
//! chain) and the path each last-mile ISP's users take to the service.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use super::Kbps;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TopologyError {
    #[error("duplicate node id `{0}`")]
    DuplicateId(String),
    #[error("link refers to unknown node `{0}`")]
    UnknownNode(String),
    #[error("{architecture} topology needs {expected} {role} node(s), found {found}")]
    RoleCount {
        architecture: Architecture,
        role: Role,
        expected: &'static str,
        found: usize,
    },
    #[error("content platforms are created per ISP in a walled garden; remove node `{0}`")]
    ExplicitPlatform(String),
    #[error("no path from `{from}` to `{to}`")]
    Disconnected { from: String, to: String },
    #[error("link {a}-{b}: {reason}")]
    InvalidLink { a: String, b: String, reason: String },
    #[error("node `{id}`: {reason}")]
    InvalidNode { id: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Architecture {
    /// Corporate content hosted on a CDN that peers with every ISP.
    CdnBased,
    /// One content platform inside each last-mile ISP.
    WalledGarden,
    /// ISP to corporation across any number of transit providers.
    GeneralChain,
}

impl Architecture {
    pub fn name(self) -> &'static str {
        match self {
            Architecture::CdnBased => "cdn",
            Architecture::WalledGarden => "walled_garden",
            Architecture::GeneralChain => "chain",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Architecture::CdnBased, Architecture::WalledGarden, Architecture::GeneralChain]
            .into_iter()
            .find(|a| a.name() == name)
    }
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    LastMileIsp,
    TransitIsp,
    CdnOperator,
    ContentPlatform,
    Corporation,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::LastMileIsp => "last_mile_isp",
            Role::TransitIsp => "transit_isp",
            Role::CdnOperator => "cdn_operator",
            Role::ContentPlatform => "content_platform",
            Role::Corporation => "corporation",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            Role::LastMileIsp,
            Role::TransitIsp,
            Role::CdnOperator,
            Role::ContentPlatform,
            Role::Corporation,
        ]
        .into_iter()
        .find(|r| r.name() == name)
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkId(pub usize);

#[derive(Clone, Debug, PartialEq)]
pub struct ProviderNode {
    pub id: String,
    pub role: Role,
    /// USD per Mbps-minute charged for carrying traffic.
    pub transit_price: f64,
    /// Mark-up on resold transit, in [0, 1).
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Link {
    pub a: NodeId,
    pub b: NodeId,
    pub capacity: Kbps,
    /// One-way, milliseconds.
    pub base_latency: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodeSpec {
    pub id: String,
    pub role: Role,
    pub transit_price: f64,
    pub margin: f64,
}

impl NodeSpec {
    pub fn new(id: impl Into<String>, role: Role) -> Self {
        NodeSpec {
            id: id.into(),
            role,
            transit_price: 0.0,
            margin: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinkSpec {
    pub a: String,
    pub b: String,
    /// Mbps
    pub capacity: f64,
    /// One-way, milliseconds.
    pub latency: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitTopology {
    pub architecture: Architecture,
    pub nodes: Vec<NodeSpec>,
    pub links: Vec<LinkSpec>,
    /// Walled garden only: ISP-to-platform link capacity in Mbps.
    pub platform_capacity: f64,
    /// Walled garden only: ISP-to-platform one-way latency in ms.
    pub platform_latency: f64,
    /// Walled garden only: platform mark-up.
    pub platform_margin: f64,
}

/// `isps` identical last-mile providers, each with one link of `capacity`
/// towards the service.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformTopology {
    pub architecture: Architecture,
    pub isps: usize,
    /// Mbps, every link.
    pub capacity: f64,
    /// One-way ms, every link.
    pub latency: f64,
    /// Transit providers in series; general chain only.
    pub transit_hops: usize,
    /// USD per Mbps-minute, every carrier.
    pub transit_price: f64,
    pub margin: f64,
}

impl Default for UniformTopology {
    fn default() -> Self {
        UniformTopology {
            architecture: Architecture::CdnBased,
            isps: 3,
            capacity: 100.0,
            latency: 10.0,
            transit_hops: 0,
            transit_price: 0.001,
            margin: 0.2,
        }
    }
}

impl UniformTopology {
    pub fn with_architecture(&self, architecture: Architecture) -> Self {
        UniformTopology {
            architecture,
            ..self.clone()
        }
    }

    pub fn expand(&self) -> ExplicitTopology {
        let isp = |i: usize| format!("isp{}", i + 1);
        let carrier = |id: String, role| NodeSpec {
            id,
            role,
            transit_price: self.transit_price,
            margin: 0.0,
        };
        let link = |a: String, b: String| LinkSpec {
            a,
            b,
            capacity: self.capacity,
            latency: self.latency,
        };
        let mut nodes: Vec<NodeSpec> = (0..self.isps)
            .map(|i| carrier(isp(i), Role::LastMileIsp))
            .collect();
        let mut links = Vec::new();
        match self.architecture {
            Architecture::CdnBased => {
                nodes.push(NodeSpec {
                    margin: self.margin,
                    ..NodeSpec::new("cdn", Role::CdnOperator)
                });
                nodes.push(NodeSpec::new("corp", Role::Corporation));
                links.extend((0..self.isps).map(|i| link(isp(i), "cdn".into())));
            }
            Architecture::WalledGarden => {
                nodes.push(NodeSpec::new("corp", Role::Corporation));
            }
            Architecture::GeneralChain => {
                let transit = |j: usize| format!("transit{}", j + 1);
                nodes.extend((0..self.transit_hops).map(|j| carrier(transit(j), Role::TransitIsp)));
                nodes.push(NodeSpec::new("corp", Role::Corporation));
                let first = if self.transit_hops == 0 { "corp".to_string() } else { transit(0) };
                links.extend((0..self.isps).map(|i| link(isp(i), first.clone())));
                for j in 1..self.transit_hops {
                    links.push(link(transit(j - 1), transit(j)));
                }
                if self.transit_hops > 0 {
                    links.push(link(transit(self.transit_hops - 1), "corp".into()));
                }
            }
        }
        ExplicitTopology {
            architecture: self.architecture,
            nodes,
            links,
            platform_capacity: self.capacity,
            platform_latency: self.latency,
            platform_margin: self.margin,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TopologySpec {
    Uniform(UniformTopology),
    Explicit(ExplicitTopology),
}

impl TopologySpec {
    pub fn architecture(&self) -> Architecture {
        match self {
            TopologySpec::Uniform(u) => u.architecture,
            TopologySpec::Explicit(e) => e.architecture,
        }
    }
}

/// Where an ISP's users are served and how they get there.
#[derive(Clone, Debug, PartialEq)]
pub struct ServicePath {
    pub isp: NodeId,
    /// CDN, the ISP's own platform, or the corporation.
    pub endpoint: NodeId,
    /// Links from the ISP to the endpoint, in order.
    pub links: Vec<LinkId>,
    /// Carrier nodes on the way, starting with the ISP; excludes the endpoint.
    pub carriers: Vec<NodeId>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Topology {
    pub architecture: Architecture,
    pub nodes: Vec<ProviderNode>,
    pub links: Vec<Link>,
    /// One per last-mile ISP, in node order.
    pub paths: Vec<ServicePath>,
    pub corporation: NodeId,
}

impl Topology {
    pub fn node(&self, id: NodeId) -> &ProviderNode {
        &self.nodes[id.0]
    }

    pub fn link(&self, id: LinkId) -> &Link {
        &self.links[id.0]
    }

    pub fn isp_count(&self) -> usize {
        self.paths.len()
    }

    pub fn count(&self, role: Role) -> usize {
        self.nodes.iter().filter(|n| n.role == role).count()
    }

    /// Content-hosting platforms the corporation has to run.
    pub fn platform_count(&self) -> usize {
        self.count(Role::CdnOperator) + self.count(Role::ContentPlatform)
    }

    /// Round-trip delay of a path: twice the sum of one-way link latencies.
    pub fn round_trip_delay(&self, links: &[LinkId]) -> f64 {
        2.0 * links.iter().map(|&l| self.link(l).base_latency).sum::<f64>()
    }

    pub fn link_name(&self, id: LinkId) -> String {
        let link = self.link(id);
        format!("{}-{}", self.node(link.a).id, self.node(link.b).id)
    }
}

pub fn build_topology(spec: &TopologySpec) -> Result<Topology, TopologyError> {
    match spec {
        TopologySpec::Uniform(u) => build_explicit(&u.expand()),
        TopologySpec::Explicit(e) => build_explicit(e),
    }
}

fn build_explicit(spec: &ExplicitTopology) -> Result<Topology, TopologyError> {
    let arch = spec.architecture;
    let mut nodes: Vec<ProviderNode> = Vec::with_capacity(spec.nodes.len());
    let mut index: HashMap<String, NodeId> = HashMap::new();
    for n in &spec.nodes {
        if arch == Architecture::WalledGarden && n.role == Role::ContentPlatform {
            return Err(TopologyError::ExplicitPlatform(n.id.clone()));
        }
        add_node(&mut nodes, &mut index, n.id.clone(), n.role, n.transit_price, n.margin)?;
    }

    let mut links = Vec::with_capacity(spec.links.len());
    for l in &spec.links {
        links.push(make_link(&index, &l.a, &l.b, l.capacity, l.latency)?);
    }

    let isps: Vec<NodeId> = role_nodes(&nodes, Role::LastMileIsp);
    if isps.is_empty() {
        return Err(role_error(arch, Role::LastMileIsp, "at least 1", 0));
    }
    let corps = role_nodes(&nodes, Role::Corporation);
    if corps.len() != 1 {
        return Err(role_error(arch, Role::Corporation, "exactly 1", corps.len()));
    }
    let corporation = corps[0];

    let mut endpoints = Vec::with_capacity(isps.len());
    match arch {
        Architecture::CdnBased => {
            let cdns = role_nodes(&nodes, Role::CdnOperator);
            if cdns.len() != 1 {
                return Err(role_error(arch, Role::CdnOperator, "exactly 1", cdns.len()));
            }
            endpoints.resize(isps.len(), cdns[0]);
        }
        Architecture::WalledGarden => {
            for &isp in &isps {
                let isp_id = nodes[isp.0].id.clone();
                let platform_id = format!("{isp_id}-platform");
                let platform = add_node(
                    &mut nodes,
                    &mut index,
                    platform_id.clone(),
                    Role::ContentPlatform,
                    0.0,
                    spec.platform_margin,
                )?;
                links.push(make_link(
                    &index,
                    &isp_id,
                    &platform_id,
                    spec.platform_capacity,
                    spec.platform_latency,
                )?);
                endpoints.push(platform);
            }
        }
        Architecture::GeneralChain => endpoints.resize(isps.len(), corporation),
    }

    let mut paths = Vec::with_capacity(isps.len());
    for (&isp, &endpoint) in isps.iter().zip(&endpoints) {
        let links_on_path = shortest_path(nodes.len(), &links, isp, endpoint).ok_or_else(|| {
            TopologyError::Disconnected {
                from: nodes[isp.0].id.clone(),
                to: nodes[endpoint.0].id.clone(),
            }
        })?;
        let mut carriers = vec![isp];
        let mut at = isp;
        for &l in &links_on_path {
            let link = &links[l.0];
            at = if link.a == at { link.b } else { link.a };
            if at != endpoint {
                carriers.push(at);
            }
        }
        paths.push(ServicePath {
            isp,
            endpoint,
            links: links_on_path,
            carriers,
        });
    }

    Ok(Topology {
        architecture: arch,
        nodes,
        links,
        paths,
        corporation,
    })
}

fn add_node(
    nodes: &mut Vec<ProviderNode>,
    index: &mut HashMap<String, NodeId>,
    id: String,
    role: Role,
    transit_price: f64,
    margin: f64,
) -> Result<NodeId, TopologyError> {
    if index.contains_key(&id) {
        return Err(TopologyError::DuplicateId(id));
    }
    let invalid = |reason: &str| TopologyError::InvalidNode {
        id: id.clone(),
        reason: reason.to_string(),
    };
    if !(transit_price.is_finite() && transit_price >= 0.0) {
        return Err(invalid("transit price must be >= 0"));
    }
    if !(0.0..1.0).contains(&margin) {
        return Err(invalid("margin must be in [0, 1)"));
    }
    if margin > 0.0 && !matches!(role, Role::CdnOperator | Role::ContentPlatform) {
        return Err(invalid("only CDN operators and content platforms carry a margin"));
    }
    let node_id = NodeId(nodes.len());
    index.insert(id.clone(), node_id);
    nodes.push(ProviderNode {
        id,
        role,
        transit_price,
        margin,
    });
    Ok(node_id)
}

fn make_link(
    index: &HashMap<String, NodeId>,
    a: &str,
    b: &str,
    capacity: f64,
    latency: f64,
) -> Result<Link, TopologyError> {
    let lookup = |id: &str| {
        index
            .get(id)
            .copied()
            .ok_or_else(|| TopologyError::UnknownNode(id.to_string()))
    };
    let invalid = |reason: &str| TopologyError::InvalidLink {
        a: a.to_string(),
        b: b.to_string(),
        reason: reason.to_string(),
    };
    let (na, nb) = (lookup(a)?, lookup(b)?);
    if na == nb {
        return Err(invalid("a link needs two distinct endpoints"));
    }
    let capacity = Kbps::from_mbps(capacity);
    if capacity.0 == 0 {
        return Err(invalid("capacity must be > 0"));
    }
    if !(latency.is_finite() && latency >= 0.0) {
        return Err(invalid("latency must be >= 0"));
    }
    Ok(Link {
        a: na,
        b: nb,
        capacity,
        base_latency: latency,
    })
}

fn role_nodes(nodes: &[ProviderNode], role: Role) -> Vec<NodeId> {
    nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| n.role == role)
        .map(|(i, _)| NodeId(i))
        .collect()
}

fn role_error(architecture: Architecture, role: Role, expected: &'static str, found: usize) -> TopologyError {
    TopologyError::RoleCount {
        architecture,
        role,
        expected,
        found,
    }
}

/// Breadth-first search over links in declaration order.
fn shortest_path(node_count: usize, links: &[Link], from: NodeId, to: NodeId) -> Option<Vec<LinkId>> {
    let mut adjacency: Vec<Vec<(NodeId, LinkId)>> = vec![Vec::new(); node_count];
    for (i, l) in links.iter().enumerate() {
        adjacency[l.a.0].push((l.b, LinkId(i)));
        adjacency[l.b.0].push((l.a, LinkId(i)));
    }
    let mut via: Vec<Option<(NodeId, LinkId)>> = vec![None; node_count];
    let mut seen = vec![false; node_count];
    let mut queue = VecDeque::from([from]);
    seen[from.0] = true;
    while let Some(at) = queue.pop_front() {
        if at == to {
            let mut path = Vec::new();
            let mut cur = to;
            while let Some((prev, link)) = via[cur.0] {
                path.push(link);
                cur = prev;
            }
            path.reverse();
            return Some(path);
        }
        for &(next, link) in &adjacency[at.0] {
            if !seen[next.0] {
                seen[next.0] = true;
                via[next.0] = Some((at, link));
                queue.push_back(next);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(architecture: Architecture, isps: usize) -> TopologySpec {
        TopologySpec::Uniform(UniformTopology {
            architecture,
            isps,
            ..UniformTopology::default()
        })
    }

    #[test]
    fn cdn_with_three_isps() {
        let t = build_topology(&uniform(Architecture::CdnBased, 3)).unwrap();
        assert_eq!(t.count(Role::CdnOperator), 1);
        assert_eq!(t.count(Role::LastMileIsp), 3);
        assert_eq!(t.links.len(), 3);
        for p in &t.paths {
            assert_eq!(p.links.len(), 1, "direct peering");
            assert_eq!(t.node(p.endpoint).role, Role::CdnOperator);
        }
        assert_eq!(t.platform_count(), 1);
    }

    #[test]
    fn walled_garden_gets_a_platform_per_isp() {
        let t = build_topology(&uniform(Architecture::WalledGarden, 3)).unwrap();
        assert_eq!(t.count(Role::ContentPlatform), 3);
        assert_eq!(t.platform_count(), 3);
        let endpoints: Vec<_> = t.paths.iter().map(|p| p.endpoint).collect();
        assert_eq!(endpoints.len(), 3);
        assert!(endpoints.windows(2).all(|w| w[0] != w[1]));
    }

    #[test]
    fn minimal_chain_is_two_nodes() {
        let t = build_topology(&uniform(Architecture::GeneralChain, 1)).unwrap();
        assert_eq!(t.nodes.len(), 2);
        assert_eq!(t.links.len(), 1);
        assert_eq!(t.paths[0].endpoint, t.corporation);
    }

    #[test]
    fn chain_with_transit_hops() {
        let spec = TopologySpec::Uniform(UniformTopology {
            architecture: Architecture::GeneralChain,
            isps: 2,
            transit_hops: 3,
            ..UniformTopology::default()
        });
        let t = build_topology(&spec).unwrap();
        for p in &t.paths {
            assert_eq!(p.links.len(), 4);
            assert_eq!(p.carriers.len(), 4);
            assert_eq!(t.round_trip_delay(&p.links), 80.0);
        }
    }

    fn explicit(nodes: Vec<NodeSpec>, links: Vec<LinkSpec>) -> TopologySpec {
        TopologySpec::Explicit(ExplicitTopology {
            architecture: Architecture::CdnBased,
            nodes,
            links,
            platform_capacity: 100.0,
            platform_latency: 5.0,
            platform_margin: 0.0,
        })
    }

    fn link(a: &str, b: &str) -> LinkSpec {
        LinkSpec {
            a: a.into(),
            b: b.into(),
            capacity: 10.0,
            latency: 1.0,
        }
    }

    #[test]
    fn rejects_bad_explicit_specs() {
        let base = || {
            vec![
                NodeSpec::new("isp", Role::LastMileIsp),
                NodeSpec::new("cdn", Role::CdnOperator),
                NodeSpec::new("corp", Role::Corporation),
            ]
        };
        assert!(build_topology(&explicit(base(), vec![link("isp", "cdn")])).is_ok());

        let mut dup = base();
        dup.push(NodeSpec::new("isp", Role::TransitIsp));
        assert_eq!(
            build_topology(&explicit(dup, vec![])),
            Err(TopologyError::DuplicateId("isp".into()))
        );

        let no_cdn = vec![NodeSpec::new("isp", Role::LastMileIsp), NodeSpec::new("corp", Role::Corporation)];
        assert!(matches!(
            build_topology(&explicit(no_cdn, vec![])),
            Err(TopologyError::RoleCount { role: Role::CdnOperator, .. })
        ));

        assert!(matches!(
            build_topology(&explicit(base(), vec![])),
            Err(TopologyError::Disconnected { .. })
        ));

        assert_eq!(
            build_topology(&explicit(base(), vec![link("isp", "nowhere")])),
            Err(TopologyError::UnknownNode("nowhere".into()))
        );

        let mut zero = link("isp", "cdn");
        zero.capacity = 0.0;
        assert!(matches!(
            build_topology(&explicit(base(), vec![zero])),
            Err(TopologyError::InvalidLink { .. })
        ));

        let mut greedy = base();
        greedy[1].margin = 1.0;
        assert!(matches!(
            build_topology(&explicit(greedy, vec![link("isp", "cdn")])),
            Err(TopologyError::InvalidNode { .. })
        ));
    }

    #[test]
    fn walled_garden_rejects_explicit_platforms() {
        let spec = TopologySpec::Explicit(ExplicitTopology {
            architecture: Architecture::WalledGarden,
            nodes: vec![
                NodeSpec::new("isp", Role::LastMileIsp),
                NodeSpec::new("p", Role::ContentPlatform),
                NodeSpec::new("corp", Role::Corporation),
            ],
            links: vec![],
            platform_capacity: 10.0,
            platform_latency: 1.0,
            platform_margin: 0.1,
        });
        assert_eq!(build_topology(&spec), Err(TopologyError::ExplicitPlatform("p".into())));
    }
}
