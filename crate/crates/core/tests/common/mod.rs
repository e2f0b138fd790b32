#![allow(dead_code)]

use lnec::galois::Field;
use lnec::kernels::LocalKernels;
use lnec::netgraph::{ChannelDocument, Network, NetworkDocument};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random single-source DAG with at least one sink reachable from the
/// source. Nodes are declared in shuffled order so that parsing has to sort
/// them.
pub fn random_network<R: Rng>(rng: &mut R) -> Network {
    loop {
        let n = rng.random_range(3..=8);
        let sink_count = rng.random_range(1..=2.min(n - 2));
        let first_sink = n - sink_count;
        let mut channels = Vec::new();
        for u in 0..first_sink {
            for v in u + 1..n {
                if rng.random_bool(0.45) {
                    for _ in 0..rng.random_range(1..=2) {
                        channels.push((u, v));
                    }
                }
            }
        }
        channels.shuffle(rng);
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut declared = names.clone();
        declared.shuffle(rng);
        let doc = NetworkDocument {
            nodes: declared,
            source: names[0].clone(),
            sinks: names[first_sink..].to_vec(),
            channels: channels
                .iter()
                .enumerate()
                .map(|(j, &(u, v))| ChannelDocument {
                    id: format!("c{j}"),
                    tail: names[u].clone(),
                    head: names[v].clone(),
                })
                .collect(),
        };
        let net = Network::from_document(doc).expect("forward channels only");
        if net.sinks().iter().all(|&t| net.sink_capacity(t) >= 1) {
            return net;
        }
    }
}

pub fn random_kernels<R: Rng>(rng: &mut R, net: &Network, w: usize, field: Field) -> LocalKernels {
    let mut lk = LocalKernels::zero(net, w, field);
    for e in 0..net.channel_count() {
        let len = lk.coefficients(e).len();
        lk.set_coefficients(
            e,
            (0..len)
                .map(|_| field.elem(rng.random_range(0..field.modulus())))
                .collect(),
        );
    }
    lk
}

pub fn min_capacity(net: &Network) -> usize {
    net.sinks()
        .iter()
        .map(|&t| net.sink_capacity(t))
        .min()
        .unwrap_or(0)
}
