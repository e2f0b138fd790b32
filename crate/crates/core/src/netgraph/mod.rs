//! Acyclic multicast networks.
//!
//! A [`Network`] is a single-source directed acyclic multigraph with unit
//! capacity channels. Parsing fixes a canonical channel order: nodes are
//! topologically sorted by Kahn's method (ties broken by node id) and the
//! outgoing channels of each node keep their declaration order. Every other
//! module indexes channels by their position in this order.
//!
//! The flow-based quantities live here too: min-cut capacities, the set of
//! channels that can reach a sink, the rank of an error pattern, and the
//! channel-disjoint path families used by the code construction.

mod flow;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use flow::FlowGraph;

/// Position of a channel in the canonical order.
pub type ChannelIdx = usize;
/// Position of a node in the network's declaration order.
pub type NodeIdx = usize;

#[derive(Debug, Error)]
pub enum NetworkError {
    #[error("malformed network document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("network contains a directed cycle")]
    CyclicGraph,
    #[error("channel `{channel}` references unknown node `{node}`")]
    DanglingEndpoint { channel: String, node: String },
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),
    #[error("source `{0}` has incoming channels")]
    SourceHasInputs(String),
    #[error("sink `{0}` has outgoing channels")]
    SinkHasOutputs(String),
    #[error("duplicate channel id `{0}`")]
    DuplicateChannelId(String),
    #[error("channel id `{0}` is reserved (ids may not end with a prime)")]
    ReservedChannelId(String),
    #[error("network has no sinks")]
    NoSinks,
    #[error("source `{0}` is also listed as a sink")]
    SourceIsSink(String),
    #[error("unknown channel `{0}`")]
    UnknownChannel(String),
    #[error("node `{0}` is not a sink")]
    NotASink(String),
    #[error("only {achieved} of {required} channel-disjoint paths exist")]
    InsufficientFlow { required: usize, achieved: usize },
}

/// One `{id, tail, head}` entry of a network file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelDocument {
    pub id: String,
    pub tail: String,
    pub head: String,
}

/// The on-disk JSON form of a network.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkDocument {
    pub nodes: Vec<String>,
    pub source: String,
    pub sinks: Vec<String>,
    pub channels: Vec<ChannelDocument>,
}

impl NetworkDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("network documents always serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Channel {
    pub id: String,
    pub tail: NodeIdx,
    pub head: NodeIdx,
}

#[derive(Debug, Clone)]
pub struct Network {
    doc: NetworkDocument,
    nodes: Vec<String>,
    node_index: HashMap<String, NodeIdx>,
    source: NodeIdx,
    sinks: Vec<NodeIdx>,
    channels: Vec<Channel>,
    channel_index: HashMap<String, ChannelIdx>,
    node_order: Vec<NodeIdx>,
    ins: Vec<Vec<ChannelIdx>>,
    outs: Vec<Vec<ChannelIdx>>,
}

/// Parses and validates a network file.
pub fn parse_network(document: &str) -> Result<Network, NetworkError> {
    let doc: NetworkDocument = serde_json::from_str(document)?;
    Network::from_document(doc)
}

impl Network {
    pub fn from_document(doc: NetworkDocument) -> Result<Network, NetworkError> {
        let mut node_index = HashMap::new();
        for (i, n) in doc.nodes.iter().enumerate() {
            if node_index.insert(n.clone(), i).is_some() {
                return Err(NetworkError::DuplicateNode(n.clone()));
            }
        }
        let lookup = |n: &str| {
            node_index
                .get(n)
                .copied()
                .ok_or_else(|| NetworkError::UnknownNode(n.to_string()))
        };
        let source = lookup(&doc.source)?;
        if doc.sinks.is_empty() {
            return Err(NetworkError::NoSinks);
        }
        let mut sinks = Vec::new();
        for t in &doc.sinks {
            let ti = lookup(t)?;
            if ti == source {
                return Err(NetworkError::SourceIsSink(t.clone()));
            }
            if sinks.contains(&ti) {
                return Err(NetworkError::DuplicateNode(t.clone()));
            }
            sinks.push(ti);
        }

        let mut seen_ids = BTreeSet::new();
        let mut declared = Vec::with_capacity(doc.channels.len());
        for c in &doc.channels {
            if c.id.ends_with('\'') || c.id.is_empty() {
                return Err(NetworkError::ReservedChannelId(c.id.clone()));
            }
            if !seen_ids.insert(c.id.as_str()) {
                return Err(NetworkError::DuplicateChannelId(c.id.clone()));
            }
            let endpoint = |n: &str| {
                node_index
                    .get(n)
                    .copied()
                    .ok_or_else(|| NetworkError::DanglingEndpoint {
                        channel: c.id.clone(),
                        node: n.to_string(),
                    })
            };
            let (tail, head) = (endpoint(&c.tail)?, endpoint(&c.head)?);
            if tail == head {
                return Err(NetworkError::CyclicGraph);
            }
            declared.push((tail, head));
        }
        for (c, &(tail, head)) in doc.channels.iter().zip(&declared) {
            if head == source {
                let _ = c;
                return Err(NetworkError::SourceHasInputs(doc.source.clone()));
            }
            if sinks.contains(&tail) {
                return Err(NetworkError::SinkHasOutputs(doc.nodes[tail].clone()));
            }
        }

        // Kahn's method, smallest node id first.
        let n = doc.nodes.len();
        let mut indeg = vec![0usize; n];
        let mut declared_outs = vec![Vec::new(); n];
        for (k, &(tail, head)) in declared.iter().enumerate() {
            indeg[head] += 1;
            declared_outs[tail].push(k);
        }
        let mut ready: BTreeSet<(&str, NodeIdx)> = (0..n)
            .filter(|&i| indeg[i] == 0)
            .map(|i| (doc.nodes[i].as_str(), i))
            .collect();
        let mut node_order = Vec::with_capacity(n);
        while let Some(first) = ready.pop_first() {
            let u = first.1;
            node_order.push(u);
            for &k in &declared_outs[u] {
                let h = declared[k].1;
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    ready.insert((doc.nodes[h].as_str(), h));
                }
            }
        }
        if node_order.len() != n {
            return Err(NetworkError::CyclicGraph);
        }

        let mut channels = Vec::with_capacity(declared.len());
        let mut channel_index = HashMap::new();
        let mut ins = vec![Vec::new(); n];
        let mut outs = vec![Vec::new(); n];
        for &u in &node_order {
            for &k in &declared_outs[u] {
                let idx = channels.len();
                let (tail, head) = declared[k];
                channels.push(Channel {
                    id: doc.channels[k].id.clone(),
                    tail,
                    head,
                });
                channel_index.insert(doc.channels[k].id.clone(), idx);
                outs[tail].push(idx);
                ins[head].push(idx);
            }
        }

        Ok(Network {
            nodes: doc.nodes.clone(),
            doc,
            node_index,
            source,
            sinks,
            channels,
            channel_index,
            node_order,
            ins,
            outs,
        })
    }

    /// The document this network was built from, unchanged.
    pub fn document(&self) -> &NetworkDocument {
        &self.doc
    }

    pub fn to_json(&self) -> String {
        self.doc.to_json()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_name(&self, v: NodeIdx) -> &str {
        &self.nodes[v]
    }

    pub fn node(&self, name: &str) -> Result<NodeIdx, NetworkError> {
        self.node_index
            .get(name)
            .copied()
            .ok_or_else(|| NetworkError::UnknownNode(name.to_string()))
    }

    pub fn source(&self) -> NodeIdx {
        self.source
    }

    pub fn sinks(&self) -> &[NodeIdx] {
        &self.sinks
    }

    pub fn sink(&self, name: &str) -> Result<NodeIdx, NetworkError> {
        let v = self.node(name)?;
        if self.sinks.contains(&v) {
            Ok(v)
        } else {
            Err(NetworkError::NotASink(name.to_string()))
        }
    }

    pub fn is_sink(&self, v: NodeIdx) -> bool {
        self.sinks.contains(&v)
    }

    /// Nodes that are neither the source nor a sink.
    pub fn internal_node_count(&self) -> usize {
        self.nodes.len() - 1 - self.sinks.len()
    }

    /// Nodes in canonical topological order.
    pub fn topological_nodes(&self) -> &[NodeIdx] {
        &self.node_order
    }

    pub fn channel_count(&self) -> usize {
        self.channels.len()
    }

    /// Channels in canonical order.
    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    pub fn channel(&self, e: ChannelIdx) -> &Channel {
        &self.channels[e]
    }

    pub fn channel_by_id(&self, id: &str) -> Result<ChannelIdx, NetworkError> {
        self.channel_index
            .get(id)
            .copied()
            .ok_or_else(|| NetworkError::UnknownChannel(id.to_string()))
    }

    pub fn in_channels(&self, v: NodeIdx) -> &[ChannelIdx] {
        &self.ins[v]
    }

    pub fn out_channels(&self, v: NodeIdx) -> &[ChannelIdx] {
        &self.outs[v]
    }

    /// Builds an error pattern from channel ids.
    pub fn pattern<S: AsRef<str>>(&self, ids: &[S]) -> Result<ErrorPattern, NetworkError> {
        ids.iter()
            .map(|id| self.channel_by_id(id.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(ErrorPattern::new)
    }

    /// Comma-free display of a pattern, e.g. `{e1,e3}`.
    pub fn pattern_label(&self, rho: &ErrorPattern) -> String {
        let ids: Vec<&str> = rho.iter().map(|e| self.channels[e].id.as_str()).collect();
        format!("{{{}}}", ids.join(","))
    }

    fn channel_flow_graph(&self, extra_nodes: usize) -> FlowGraph {
        FlowGraph::new(self.nodes.len() + extra_nodes)
    }

    /// Minimum cut capacity between two nodes.
    ///
    /// ```
    /// use lnec::generators;
    /// let g1 = generators::g1();
    /// let (s, t) = (g1.source(), g1.sinks()[0]);
    /// assert_eq!(g1.min_cut_capacity(s, t), 2);
    /// ```
    pub fn min_cut_capacity(&self, from: NodeIdx, to: NodeIdx) -> usize {
        let mut g = self.channel_flow_graph(0);
        for (e, c) in self.channels.iter().enumerate() {
            g.add_arc(c.tail, c.head, 1, e);
        }
        g.max_flow(from, to, u32::MAX) as usize
    }

    /// One minimum cut between `from` and `to`, in canonical (upstream to
    /// downstream) order.
    pub fn min_cut(&self, from: NodeIdx, to: NodeIdx) -> Vec<ChannelIdx> {
        let mut g = self.channel_flow_graph(0);
        for (e, c) in self.channels.iter().enumerate() {
            g.add_arc(c.tail, c.head, 1, e);
        }
        g.max_flow(from, to, u32::MAX);
        g.min_cut_labels(from)
    }

    /// `min_cut_capacity(source, t)`.
    pub fn sink_capacity(&self, t: NodeIdx) -> usize {
        self.min_cut_capacity(self.source, t)
    }

    /// Channels from which a directed path reaches `t`.
    pub fn connective_set(&self, t: NodeIdx) -> BTreeSet<ChannelIdx> {
        let mut reaches = vec![false; self.nodes.len()];
        reaches[t] = true;
        let mut set = BTreeSet::new();
        for &v in self.node_order.iter().rev() {
            for &e in &self.outs[v] {
                if reaches[self.channels[e].head] {
                    reaches[v] = true;
                    set.insert(e);
                }
            }
        }
        set
    }

    /// Rank of an error pattern at sink `t`: the min-cut capacity from an
    /// auxiliary source that replaces every channel of the pattern.
    pub fn pattern_rank(&self, rho: &ErrorPattern, t: NodeIdx) -> usize {
        if rho.is_empty() {
            return 0;
        }
        let aux = self.nodes.len();
        let mut g = self.channel_flow_graph(1);
        for (e, c) in self.channels.iter().enumerate() {
            if rho.contains(e) {
                g.add_arc(aux, c.head, 1, e);
            } else {
                g.add_arc(c.tail, c.head, 1, e);
            }
        }
        g.max_flow(aux, t, u32::MAX) as usize
    }

    /// `w + |rho|` channel-disjoint paths to `t`: `w` from the imaginary
    /// message channels and one per channel of `rho`, each of the latter
    /// starting on that channel's imaginary error channel and continuing
    /// through the channel itself.
    ///
    /// ```
    /// use lnec::generators;
    /// let g1 = generators::g1();
    /// let t = g1.sinks()[0];
    /// let rho = g1.pattern(&["e1"]).unwrap();
    /// let family = g1.disjoint_paths(t, &rho, 1).unwrap();
    /// let mut shown: Vec<String> = family.paths.iter().map(|p| p.display(&g1)).collect();
    /// shown.sort();
    /// assert_eq!(shown, ["(d'1,e2)", "(e1',e1,e3)"]);
    /// ```
    pub fn disjoint_paths(
        &self,
        t: NodeIdx,
        rho: &ErrorPattern,
        w: usize,
    ) -> Result<PathFamily, NetworkError> {
        let n = self.nodes.len();
        let super_source = n;
        // Label |E| marks the super-source -> s arc; channel labels sort first
        // so decomposition at s follows canonical order.
        let message_label = self.channels.len();
        let mut g = self.channel_flow_graph(1);
        g.add_arc(super_source, self.source, w as u32, message_label);
        for (e, c) in self.channels.iter().enumerate() {
            if rho.contains(e) {
                g.add_arc(super_source, c.head, 1, e);
            } else {
                g.add_arc(c.tail, c.head, 1, e);
            }
        }
        let required = w + rho.len();
        let achieved = g.max_flow(super_source, t, u32::MAX) as usize;
        if achieved < required {
            return Err(NetworkError::InsufficientFlow { required, achieved });
        }
        let mut paths = Vec::with_capacity(required);
        let mut next_message = 0;
        for walk in g.decompose(super_source, t) {
            let (start, channels) = if walk[0] == message_label {
                next_message += 1;
                (PathStart::Message(next_message - 1), walk[1..].to_vec())
            } else {
                (PathStart::Error(walk[0]), walk)
            };
            paths.push(Path { start, channels });
        }
        paths.sort_by_key(|p| p.start);
        Ok(PathFamily { paths })
    }
}

/// A set of channels on which errors may occur, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ErrorPattern(Vec<ChannelIdx>);

impl ErrorPattern {
    pub fn new(mut channels: Vec<ChannelIdx>) -> Self {
        channels.sort_unstable();
        channels.dedup();
        ErrorPattern(channels)
    }

    pub fn empty() -> Self {
        ErrorPattern(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: ChannelIdx) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = ChannelIdx> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[ChannelIdx] {
        &self.0
    }

    pub fn intersect(&self, other: &BTreeSet<ChannelIdx>) -> ErrorPattern {
        ErrorPattern(
            self.0
                .iter()
                .copied()
                .filter(|e| other.contains(e))
                .collect(),
        )
    }

    pub fn is_subset_of(&self, other: &ErrorPattern) -> bool {
        self.0.iter().all(|&e| other.contains(e))
    }
}

impl FromIterator<ChannelIdx> for ErrorPattern {
    fn from_iter<I: IntoIterator<Item = ChannelIdx>>(iter: I) -> Self {
        ErrorPattern::new(iter.into_iter().collect())
    }
}

/// Where a path of a disjoint family enters the network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathStart {
    /// The imaginary message channel `d'_{k+1}`.
    Message(usize),
    /// The imaginary error channel of the given real channel.
    Error(ChannelIdx),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub start: PathStart,
    /// Real channels in traversal order. For an error path the first entry is
    /// the channel whose imaginary error channel starts the path.
    pub channels: Vec<ChannelIdx>,
}

impl Path {
    pub fn display(&self, net: &Network) -> String {
        let mut parts = vec![match self.start {
            PathStart::Message(k) => message_channel_name(k),
            PathStart::Error(e) => format!("{}'", net.channel(e).id),
        }];
        parts.extend(self.channels.iter().map(|&e| net.channel(e).id.clone()));
        format!("({})", parts.join(","))
    }
}

/// Channel-disjoint paths for one `(sink, pattern)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFamily {
    pub paths: Vec<Path>,
}

impl PathFamily {
    /// Every real channel used by some path.
    pub fn channel_set(&self) -> BTreeSet<ChannelIdx> {
        self.paths
            .iter()
            .flat_map(|p| p.channels.iter().copied())
            .collect()
    }
}

/// Display name of the imaginary message channel with zero-based index `k`.
pub fn message_channel_name(k: usize) -> String {
    format!("d'{}", k + 1)
}

impl fmt::Display for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "network: {} nodes, {} channels, source {}, {} sink(s)",
            self.nodes.len(),
            self.channels.len(),
            self.nodes[self.source],
            self.sinks.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    const G1: &str = r#"{
        "nodes": ["s", "i", "t"], "source": "s", "sinks": ["t"],
        "channels": [
            {"id": "e1", "tail": "s", "head": "i"},
            {"id": "e2", "tail": "s", "head": "t"},
            {"id": "e3", "tail": "i", "head": "t"}
        ]}"#;

    fn ids(net: &Network, set: impl IntoIterator<Item = ChannelIdx>) -> Vec<String> {
        set.into_iter().map(|e| net.channel(e).id.clone()).collect()
    }

    #[test]
    fn parses_g1_in_canonical_order() {
        let net = parse_network(G1).unwrap();
        assert_eq!(ids(&net, 0..3), ["e1", "e2", "e3"]);
        assert_eq!(net.internal_node_count(), 1);
        let t = net.sink("t").unwrap();
        assert_eq!(net.in_channels(t), &[1, 2]);
    }

    #[test]
    fn canonical_order_is_topological() {
        // declared out of order: the i -> t channel comes first
        let doc = r#"{"nodes": ["t", "s", "i"], "source": "s", "sinks": ["t"],
            "channels": [{"id": "c", "tail": "i", "head": "t"},
                         {"id": "a", "tail": "s", "head": "i"},
                         {"id": "b", "tail": "s", "head": "i"}]}"#;
        let net = parse_network(doc).unwrap();
        assert_eq!(ids(&net, 0..3), ["a", "b", "c"]);
        for (e, c) in net.channels().iter().enumerate() {
            for &d in net.in_channels(c.tail) {
                assert!(d < e);
            }
        }
    }

    #[test]
    fn single_channel() {
        let doc = r#"{"nodes": ["s", "t"], "source": "s", "sinks": ["t"],
            "channels": [{"id": "e", "tail": "s", "head": "t"}]}"#;
        let net = parse_network(doc).unwrap();
        assert_eq!(net.channel_count(), 1);
        assert_eq!(net.sink_capacity(1), 1);
    }

    #[test]
    fn rejects_invalid_documents() {
        let with = |extra: &str| {
            G1.replace(
                r#"{"id": "e3", "tail": "i", "head": "t"}"#,
                &format!(r#"{{"id": "e3", "tail": "i", "head": "t"}}, {extra}"#),
            )
        };
        assert!(matches!(
            parse_network(&with(r#"{"id": "e4", "tail": "t", "head": "s"}"#)),
            Err(NetworkError::SourceHasInputs(_)
                | NetworkError::SinkHasOutputs(_)
                | NetworkError::CyclicGraph)
        ));
        assert!(matches!(
            parse_network(&with(r#"{"id": "e4", "tail": "t", "head": "i"}"#)),
            Err(NetworkError::SinkHasOutputs(_))
        ));
        assert!(matches!(
            parse_network(&with(r#"{"id": "e4", "tail": "i", "head": "x"}"#)),
            Err(NetworkError::DanglingEndpoint { .. })
        ));
        assert!(matches!(
            parse_network(&with(r#"{"id": "e1", "tail": "s", "head": "i"}"#)),
            Err(NetworkError::DuplicateChannelId(_))
        ));
        assert!(matches!(
            parse_network(&with(r#"{"id": "e9'", "tail": "s", "head": "i"}"#)),
            Err(NetworkError::ReservedChannelId(_))
        ));
        let cyclic = r#"{"nodes": ["s", "a", "b", "t"], "source": "s", "sinks": ["t"],
            "channels": [{"id": "x", "tail": "s", "head": "a"},
                         {"id": "y", "tail": "a", "head": "b"},
                         {"id": "z", "tail": "b", "head": "a"},
                         {"id": "u", "tail": "b", "head": "t"}]}"#;
        assert!(matches!(
            parse_network(cyclic),
            Err(NetworkError::CyclicGraph)
        ));
        assert!(matches!(
            parse_network("{"),
            Err(NetworkError::Malformed(_))
        ));
    }

    #[test]
    fn min_cut_examples() {
        let g1 = parse_network(G1).unwrap();
        assert_eq!(g1.min_cut_capacity(0, 2), 2);
        let comb = generators::combination(6, 4).unwrap();
        for &t in comb.sinks() {
            assert_eq!(comb.sink_capacity(t), 4);
        }
        // two sinks are never connected to each other
        let (a, b) = (comb.sinks()[0], comb.sinks()[1]);
        assert_eq!(comb.min_cut_capacity(a, b), 0);
    }

    #[test]
    fn connective_sets() {
        let g1 = parse_network(G1).unwrap();
        assert_eq!(
            g1.connective_set(2).into_iter().collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        let comb = generators::combination(6, 4).unwrap();
        for &t in comb.sinks() {
            let et = comb.connective_set(t);
            assert_eq!(et.len(), 8);
            assert!(comb.in_channels(t).iter().all(|e| et.contains(e)));
        }
        let two = r#"{"nodes": ["s", "i", "t", "u"], "source": "s", "sinks": ["t", "u"],
            "channels": [{"id": "a", "tail": "s", "head": "i"},
                         {"id": "b", "tail": "i", "head": "t"},
                         {"id": "c", "tail": "i", "head": "u"}]}"#;
        let net = parse_network(two).unwrap();
        let et = net.connective_set(net.sink("t").unwrap());
        assert_eq!(ids(&net, et), ["a", "b"]);
    }

    #[test]
    fn pattern_rank_examples() {
        let g1 = parse_network(G1).unwrap();
        let t = 2;
        assert_eq!(g1.pattern_rank(&g1.pattern(&["e1", "e2"]).unwrap(), t), 2);
        assert_eq!(g1.pattern_rank(&ErrorPattern::empty(), t), 0);
        assert_eq!(g1.pattern_rank(&g1.pattern(&["e1", "e3"]).unwrap(), t), 1);
        assert_eq!(
            g1.pattern_rank(&g1.pattern(&["e1", "e2", "e3"]).unwrap(), t),
            2
        );
    }

    #[test]
    fn g1_path_families() {
        let g1 = parse_network(G1).unwrap();
        let shown = |ids: &[&str]| {
            let rho = g1.pattern(ids).unwrap();
            let mut v: Vec<String> = g1
                .disjoint_paths(2, &rho, 1)
                .unwrap()
                .paths
                .iter()
                .map(|p| p.display(&g1))
                .collect();
            v.sort();
            v
        };
        assert_eq!(shown(&["e1"]), ["(d'1,e2)", "(e1',e1,e3)"]);
        assert_eq!(shown(&["e2"]), ["(d'1,e1,e3)", "(e2',e2)"]);
        assert_eq!(shown(&["e3"]), ["(d'1,e2)", "(e3',e3)"]);
        assert!(matches!(
            g1.disjoint_paths(2, &g1.pattern(&["e1", "e3"]).unwrap(), 1),
            Err(NetworkError::InsufficientFlow { required: 3, .. })
        ));
    }

    #[test]
    fn plain_menger_family() {
        for net in [
            generators::g2(),
            generators::g3(),
            generators::combination(4, 2).unwrap(),
        ] {
            for &t in net.sinks() {
                let c = net.sink_capacity(t);
                let fam = net.disjoint_paths(t, &ErrorPattern::empty(), c).unwrap();
                assert_eq!(fam.paths.len(), c);
                assert!(fam
                    .paths
                    .iter()
                    .all(|p| matches!(p.start, PathStart::Message(_))));
                assert!(net
                    .disjoint_paths(t, &ErrorPattern::empty(), c + 1)
                    .is_err());
            }
        }
    }

    #[test]
    fn min_cut_is_a_cut() {
        let net = generators::g3();
        let t = net.sinks()[0];
        let cut = net.min_cut(net.source(), t);
        assert_eq!(cut.len(), 4);
        // removing the cut disconnects s from t: every cut channel is needed
        let rho = ErrorPattern::new(cut.clone());
        assert_eq!(net.pattern_rank(&rho, t), 4);
    }
}
