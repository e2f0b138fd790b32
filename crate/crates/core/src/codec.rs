//! Encoding, error injection and minimum-radius decoding.
//!
//! A sink receives `(X, Z) F_t`. The decoder looks for the smallest `k` such
//! that the received word is explained by a message and an error supported on
//! `k` channels of the connective set. Every pattern of rank `r` has its error
//! space inside that of some pattern of `r` channels, so this `k` equals the
//! smallest pattern rank that explains the word.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::analysis::min_distance;
use crate::construct::Code;
use crate::galois::{Scalar, Vector};
use crate::kernels::{kernel_inputs, KernelInput};
use crate::linalg::solve_left;
use crate::netgraph::{ErrorPattern, NodeIdx};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("expected {expected} symbols, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("code is not regular at sink `{0}`")]
    NotRegular(String),
    #[error("several messages explain the received word at radius {radius}")]
    Ambiguous { radius: usize },
    #[error("no message explains the received word within radius {cap}")]
    Undecodable { cap: usize },
}

fn check_len(expected: usize, got: usize) -> Result<(), CodecError> {
    if expected == got {
        Ok(())
    } else {
        Err(CodecError::DimensionMismatch { expected, got })
    }
}

/// The `w` source symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MessageVector(pub Vector);

/// One error symbol per channel, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorVector(pub Vector);

impl ErrorVector {
    pub fn zero(code: &Code) -> Self {
        ErrorVector(code.field.zero_vector(code.network.channel_count()))
    }

    /// The channels carrying a nonzero error.
    pub fn support(&self) -> ErrorPattern {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(e, _)| e)
            .collect()
    }
}

fn check_inputs(code: &Code, x: &MessageVector, z: &ErrorVector) -> Result<(), CodecError> {
    check_len(code.rate, x.0.len())?;
    check_len(code.network.channel_count(), z.0.len())
}

/// Channel outputs `U_e = (X, Z) f_e`, in canonical order.
///
/// ```
/// use lnec::{codec, construct, galois::Field, generators};
/// let g1 = generators::g1();
/// let f3 = Field::new(3).unwrap();
/// let code = construct::construct_code(&g1, 1, &[1], f3).unwrap();
/// let x = codec::MessageVector(vec![f3.elem(1)]);
/// let out = codec::encode(&code, &x, &codec::ErrorVector::zero(&code)).unwrap();
/// assert!(out.iter().all(|u| u.value() == 1));
/// ```
pub fn encode(code: &Code, x: &MessageVector, z: &ErrorVector) -> Result<Vec<Scalar>, CodecError> {
    check_inputs(code, x, z)?;
    let xz: Vector = x.0.iter().chain(&z.0).copied().collect();
    Ok(code
        .extended
        .iter()
        .map(|f| code.field.dot(&xz, f))
        .collect())
}

/// Channel outputs by simulating every node's local encoding and adding the
/// channel error.
pub fn encode_local(
    code: &Code,
    x: &MessageVector,
    z: &ErrorVector,
) -> Result<Vec<Scalar>, CodecError> {
    check_inputs(code, x, z)?;
    let field = code.field;
    let mut out: Vec<Scalar> = Vec::with_capacity(code.network.channel_count());
    for e in 0..code.network.channel_count() {
        let mut u = z.0[e];
        for (input, &k) in kernel_inputs(&code.network, code.rate, e)
            .iter()
            .zip(code.local.coefficients(e))
        {
            let v = match *input {
                KernelInput::Message(i) => x.0[i],
                KernelInput::Channel(d) => out[d],
            };
            u = field.mul_add(u, k, v);
        }
        out.push(u);
    }
    Ok(out)
}

/// The part of the channel outputs seen by sink `t`.
pub fn received(code: &Code, t: NodeIdx, outputs: &[Scalar]) -> Vector {
    code.network
        .in_channels(t)
        .iter()
        .map(|&e| outputs[e])
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decoded {
    pub message: Vector,
    /// Smallest number of erroneous channels explaining the received word.
    pub radius: usize,
}

/// Decodes the word received at `t`, searching radii up to `delta_t + 1`.
pub fn decode(code: &Code, t: NodeIdx, word: &[Scalar]) -> Result<Decoded, CodecError> {
    let net = &code.network;
    check_len(net.in_channels(t).len(), word.len())?;
    let rows = code.decoding_rows(t);
    let w = code.rate;
    if crate::kernels::rank_of(code.field, &rows[..w]) < w {
        return Err(CodecError::NotRegular(net.node_name(t).to_string()));
    }
    let et: Vec<usize> = net.connective_set(t).into_iter().collect();
    let cap = (net.sink_capacity(t) - w + 1).min(et.len());
    for k in 0..=cap {
        let mut messages: BTreeSet<Vector> = BTreeSet::new();
        let mut ambiguous = false;
        for subset in et.iter().copied().combinations(k) {
            let m: Vec<Vector> = rows[..w]
                .iter()
                .cloned()
                .chain(subset.iter().map(|&e| rows[w + e].clone()))
                .collect();
            let Some(sol) = solve_left(code.field, &m, word) else {
                continue;
            };
            if sol
                .nullspace
                .iter()
                .any(|v| v[..w].iter().any(|x| !x.is_zero()))
            {
                ambiguous = true;
                break;
            }
            messages.insert(sol.particular[..w].to_vec());
            if messages.len() > 1 {
                ambiguous = true;
                break;
            }
        }
        if ambiguous {
            return Err(CodecError::Ambiguous { radius: k });
        }
        if let Some(message) = messages.pop_first() {
            return Ok(Decoded { message, radius: k });
        }
    }
    Err(CodecError::Undecodable { cap })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Decoded,
    /// A unique message was found but it is not the one sent.
    Miscorrected,
    Ambiguous,
    Undecodable,
    NotRegular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SinkVerdict {
    pub sink: String,
    pub outcome: Outcome,
    pub decoded: Option<Vec<u32>>,
    pub radius: Option<usize>,
    /// Rank of the injected error pattern at this sink.
    pub error_rank: usize,
    pub d_min: Option<usize>,
    /// Whether the error rank is within half the minimum distance.
    pub guaranteed: bool,
}

/// Encodes `x`, adds `z`, and decodes at every sink.
pub fn simulate(
    code: &Code,
    x: &MessageVector,
    z: &ErrorVector,
) -> Result<Vec<SinkVerdict>, CodecError> {
    let outputs = encode(code, x, z)?;
    let support = z.support();
    Ok(code
        .network
        .sinks()
        .iter()
        .map(|&t| {
            let d_min = min_distance(code, t).ok();
            let error_rank = code.network.pattern_rank(&support, t);
            let guaranteed = d_min.is_some_and(|d| error_rank <= (d - 1) / 2);
            let (outcome, decoded, radius) = match decode(code, t, &received(code, t, &outputs)) {
                Ok(dec) => {
                    let outcome = if dec.message == x.0 {
                        Outcome::Decoded
                    } else {
                        Outcome::Miscorrected
                    };
                    (
                        outcome,
                        Some(dec.message.iter().map(|s| s.value()).collect()),
                        Some(dec.radius),
                    )
                }
                Err(CodecError::Ambiguous { radius }) => (Outcome::Ambiguous, None, Some(radius)),
                Err(CodecError::NotRegular(_)) => (Outcome::NotRegular, None, None),
                Err(_) => (Outcome::Undecodable, None, None),
            };
            SinkVerdict {
                sink: code.network.node_name(t).to_string(),
                outcome,
                decoded,
                radius,
                error_rank,
                d_min,
                guaranteed,
            }
        })
        .collect())
}

/// Draws uniform nonzero errors on `pattern` and runs [`simulate`].
pub fn roundtrip(
    code: &Code,
    x: &MessageVector,
    pattern: &ErrorPattern,
    seed: u64,
) -> Result<Vec<SinkVerdict>, CodecError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = code.field.modulus();
    let mut z = ErrorVector::zero(code);
    for e in pattern.iter() {
        z.0[e] = code.field.elem(rng.random_range(1..q));
    }
    simulate(code, x, &z)
}
