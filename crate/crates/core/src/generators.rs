//! Standard test networks.
//!
//! All generators are deterministic; sinks of a combination network follow
//! the lexicographic order of their `k`-subsets.

use itertools::Itertools;
use thiserror::Error;

use crate::netgraph::{ChannelDocument, Network, NetworkDocument};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("bad generator parameters: {0}")]
    BadParams(String),
}

fn channel(
    id: impl Into<String>,
    tail: impl Into<String>,
    head: impl Into<String>,
) -> ChannelDocument {
    ChannelDocument {
        id: id.into(),
        tail: tail.into(),
        head: head.into(),
    }
}

fn build(doc: NetworkDocument) -> Network {
    Network::from_document(doc).expect("generated networks are valid")
}

/// The combination network document: source `s`, relays `i1..iN`, and one
/// sink per `k`-subset of relays, fed by one channel from each relay in the
/// subset.
pub fn combination_document(n: usize, k: usize) -> Result<NetworkDocument, GenError> {
    if k == 0 || n < k {
        return Err(GenError::BadParams(format!(
            "combination needs N >= k >= 1, got N={n}, k={k}"
        )));
    }
    let relays: Vec<String> = (1..=n).map(|i| format!("i{i}")).collect();
    let subsets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let sinks: Vec<String> = (1..=subsets.len()).map(|j| format!("t{j}")).collect();
    let mut channels: Vec<ChannelDocument> = relays
        .iter()
        .map(|r| channel(format!("s-{r}"), "s", r.clone()))
        .collect();
    for (subset, t) in subsets.iter().zip(&sinks) {
        for &i in subset {
            channels.push(channel(
                format!("{}-{t}", relays[i]),
                relays[i].clone(),
                t.clone(),
            ));
        }
    }
    let nodes = std::iter::once("s".to_string())
        .chain(relays)
        .chain(sinks.iter().cloned())
        .collect();
    Ok(NetworkDocument {
        nodes,
        source: "s".into(),
        sinks,
        channels,
    })
}

/// ```
/// let net = lnec::generators::combination(6, 4).unwrap();
/// assert_eq!((net.internal_node_count(), net.sinks().len(), net.channel_count()), (6, 15, 66));
/// ```
pub fn combination(n: usize, k: usize) -> Result<Network, GenError> {
    combination_document(n, k).map(build)
}

/// `s -> i` (e1), `s -> t` (e2), `i -> t` (e3).
pub fn g1_document() -> NetworkDocument {
    NetworkDocument {
        nodes: vec!["s".into(), "i".into(), "t".into()],
        source: "s".into(),
        sinks: vec!["t".into()],
        channels: vec![
            channel("e1", "s", "i"),
            channel("e2", "s", "t"),
            channel("e3", "i", "t"),
        ],
    }
}

pub fn g1() -> Network {
    build(g1_document())
}

/// Four parallel channels `s -> i` (e1..e4) and four `i -> t` (e5..e8).
pub fn g2_document() -> NetworkDocument {
    let mut channels: Vec<ChannelDocument> = (1..=4)
        .map(|j| channel(format!("e{j}"), "s", "i"))
        .collect();
    channels.extend((5..=8).map(|j| channel(format!("e{j}"), "i", "t")));
    NetworkDocument {
        nodes: vec!["s".into(), "i".into(), "t".into()],
        source: "s".into(),
        sinks: vec!["t".into()],
        channels,
    }
}

pub fn g2() -> Network {
    build(g2_document())
}

/// Four disjoint two-relay routes `s -> ik -> jk -> t`.
pub fn g3_document() -> NetworkDocument {
    let mut nodes = vec!["s".to_string()];
    nodes.extend((1..=4).map(|k| format!("i{k}")));
    nodes.extend((1..=4).map(|k| format!("j{k}")));
    nodes.push("t".into());
    let mut channels = Vec::new();
    for k in 1..=4 {
        channels.push(channel(format!("a{k}"), "s", format!("i{k}")));
    }
    for k in 1..=4 {
        channels.push(channel(format!("b{k}"), format!("i{k}"), format!("j{k}")));
    }
    for k in 1..=4 {
        channels.push(channel(format!("c{k}"), format!("j{k}"), "t"));
    }
    NetworkDocument {
        nodes,
        source: "s".into(),
        sinks: vec!["t".into()],
        channels,
    }
}

pub fn g3() -> Network {
    build(g3_document())
}
