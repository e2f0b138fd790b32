//! Message and error spaces, minimum distance and per-sink verdicts.
//!
//! All spaces here live in the row space of the decoding matrix at a sink:
//! coordinate `i` of the extended kernels gives the row
//! `(f_e(i) : e in In(t))`.

use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::construct::Code;
use crate::kernels::Subspace;
use crate::netgraph::{ErrorPattern, NodeIdx};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("code is not regular at sink `{0}`")]
    NotRegular(String),
}

fn rows_space(code: &Code, t: NodeIdx, coords: impl Iterator<Item = usize>) -> Subspace {
    let rows = code.decoding_rows(t);
    let picked: Vec<_> = coords.map(|i| rows[i].clone()).collect();
    Subspace::span(code.field, code.network.in_channels(t).len(), &picked)
}

/// Span of the message rows of the decoding matrix.
pub fn message_space(code: &Code, t: NodeIdx) -> Subspace {
    rows_space(code, t, 0..code.rate)
}

/// Span of the rows of the decoding matrix belonging to `rho`.
pub fn error_space(code: &Code, t: NodeIdx, rho: &ErrorPattern) -> Subspace {
    rows_space(code, t, rho.iter().map(|e| code.rate + e))
}

/// Whether the error space of `rho1` lies inside that of `rho2` for this code.
pub fn dominates(code: &Code, t: NodeIdx, rho1: &ErrorPattern, rho2: &ErrorPattern) -> bool {
    error_space(code, t, rho1).is_subspace_of(&error_space(code, t, rho2))
}

pub fn is_regular(code: &Code, t: NodeIdx) -> bool {
    message_space(code, t).dim() == code.rate
}

fn require_regular(code: &Code, t: NodeIdx) -> Result<Subspace, AnalysisError> {
    let phi = message_space(code, t);
    if phi.dim() == code.rate {
        Ok(phi)
    } else {
        Err(AnalysisError::NotRegular(
            code.network.node_name(t).to_string(),
        ))
    }
}

/// Smallest `|rho|` whose error space meets the message space, searching
/// subsets of the connective set by increasing size.
///
/// ```
/// use lnec::{analysis, construct, galois::Field, generators};
/// let net = generators::combination(3, 2).unwrap();
/// let code = construct::construct_code(&net, 1, &[1, 1, 1], Field::new(7).unwrap()).unwrap();
/// for &t in net.sinks() {
///     assert_eq!(analysis::min_distance(&code, t).unwrap(), 2);
/// }
/// ```
pub fn min_distance(code: &Code, t: NodeIdx) -> Result<usize, AnalysisError> {
    let phi = require_regular(code, t)?;
    let et: Vec<usize> = code.network.connective_set(t).into_iter().collect();
    for k in 1..=et.len() {
        for subset in et.iter().copied().combinations(k) {
            let delta = error_space(code, t, &ErrorPattern::new(subset));
            if phi.meets_nontrivially(&delta) {
                return Ok(k);
            }
        }
    }
    unreachable!("the inputs of a sink always span its whole row space")
}

/// The three minimizations over patterns whose error space meets the
/// message space: by pattern rank, by size, and by error-space dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Prop2Minima {
    pub by_rank: Option<usize>,
    pub by_cardinality: Option<usize>,
    pub by_dimension: Option<usize>,
}

impl Prop2Minima {
    pub fn agree(&self) -> bool {
        self.by_rank == self.by_cardinality
            && self.by_cardinality == self.by_dimension
            && self.by_rank.is_some()
    }
}

/// Evaluates all three minima over patterns of size at most `delta_t + 1`
/// inside the connective set.
pub fn prop2_minima(code: &Code, t: NodeIdx) -> Result<Prop2Minima, AnalysisError> {
    let phi = require_regular(code, t)?;
    let net = &code.network;
    let cap = net.sink_capacity(t) - code.rate + 1;
    let et: Vec<usize> = net.connective_set(t).into_iter().collect();
    let mut m = Prop2Minima {
        by_rank: None,
        by_cardinality: None,
        by_dimension: None,
    };
    let lower = |slot: &mut Option<usize>, v: usize| {
        if slot.is_none_or(|s| v < s) {
            *slot = Some(v);
        }
    };
    for k in 1..=cap.min(et.len()) {
        for subset in et.iter().copied().combinations(k) {
            let rho = ErrorPattern::new(subset);
            let delta = error_space(code, t, &rho);
            if phi.meets_nontrivially(&delta) {
                lower(&mut m.by_cardinality, k);
                lower(&mut m.by_dimension, delta.dim());
                lower(&mut m.by_rank, net.pattern_rank(&rho, t));
            }
        }
    }
    Ok(m)
}

pub fn prop2_consistency(code: &Code, t: NodeIdx) -> Result<bool, AnalysisError> {
    prop2_minima(code, t).map(|m| m.agree())
}

/// For a minimum cut `e_1 < ... < e_C` between source and `t`, whether the
/// pattern `{e_w, ..., e_C}` has an error space meeting the message space.
pub fn lemma1_witness(code: &Code, t: NodeIdx) -> Result<bool, AnalysisError> {
    let phi = require_regular(code, t)?;
    let cut = code.network.min_cut(code.network.source(), t);
    let rho = ErrorPattern::new(cut[code.rate - 1..].to_vec());
    Ok(phi.meets_nontrivially(&error_space(code, t, &rho)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SinkReport {
    pub sink: String,
    pub capacity: usize,
    pub redundancy: usize,
    pub regular: bool,
    pub d_min: Option<usize>,
    /// `redundancy + 1 - d_min`, the degradation.
    pub singleton_slack: Option<usize>,
    pub is_mds: bool,
}

/// Capacity, redundancy, regularity, minimum distance and MDS verdict at `t`.
///
/// # Panics
///
/// If a regular code exceeds the refined Singleton bound, which would mean a
/// bug in the distance computation.
pub fn sink_report(code: &Code, t: NodeIdx) -> SinkReport {
    let capacity = code.network.sink_capacity(t);
    let redundancy = capacity.saturating_sub(code.rate);
    let d_min = min_distance(code, t).ok();
    if let Some(d) = d_min {
        assert!(
            d <= redundancy + 1,
            "minimum distance {d} above the Singleton bound {}",
            redundancy + 1
        );
    }
    let singleton_slack = d_min.map(|d| redundancy + 1 - d);
    SinkReport {
        sink: code.network.node_name(t).to_string(),
        capacity,
        redundancy,
        regular: d_min.is_some(),
        d_min,
        singleton_slack,
        is_mds: singleton_slack == Some(0),
    }
}

pub fn code_report(code: &Code) -> Vec<SinkReport> {
    code.network
        .sinks()
        .iter()
        .map(|&t| sink_report(code, t))
        .collect()
}

/// Aligned text table of sink reports.
pub fn render_reports(reports: &[SinkReport]) -> String {
    let width = reports
        .iter()
        .map(|r| r.sink.len())
        .max()
        .unwrap_or(4)
        .max(4);
    let dash = |o: Option<usize>| o.map_or("-".to_string(), |v| v.to_string());
    let mut out = format!(
        "{:<width$}  {:>3}  {:>5}  {:>7}  {:>5}  {:>5}  {:>3}\n",
        "sink", "C_t", "delta", "regular", "d_min", "slack", "mds"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:<width$}  {:>3}  {:>5}  {:>7}  {:>5}  {:>5}  {:>3}",
            r.sink,
            r.capacity,
            r.redundancy,
            if r.regular { "yes" } else { "no" },
            dash(r.d_min),
            dash(r.singleton_slack),
            if r.is_mds { "yes" } else { "no" },
        );
    }
    out
}
