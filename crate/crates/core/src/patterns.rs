//! Families of full-rank error patterns and the counts behind field-size
//! bounds.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::galois::next_prime;
use crate::netgraph::{ErrorPattern, Network, NodeIdx};

/// Default refusal threshold for `C(|E_t|, beta)`.
pub const DEFAULT_CEILING: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("refusing to enumerate C({n}, {k}) = {count} patterns (ceiling {ceiling})")]
    EnumerationTooLarge {
        n: usize,
        k: usize,
        count: u64,
        ceiling: u64,
    },
    #[error("beta {beta} exceeds the min-cut capacity {capacity} of sink `{sink}`")]
    BetaTooLarge {
        sink: String,
        beta: usize,
        capacity: usize,
    },
}

/// `C(a, b)`, zero when `a < b`, saturating at `u64::MAX`.
pub fn binomial(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// The patterns `rho` with `|rho| = rank_t(rho) = beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternFamily {
    pub sink: NodeIdx,
    pub beta: usize,
    pub members: Vec<ErrorPattern>,
}

impl PatternFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Enumerates `R_t(beta)` over subsets of the connective set of `t`, in
/// lexicographic order of canonical channel indices.
///
/// ```
/// use lnec::{generators, patterns};
/// let g1 = generators::g1();
/// let t = g1.sinks()[0];
/// let family = patterns::enumerate_r(&g1, t, 1).unwrap();
/// let labels: Vec<String> = family.members.iter().map(|p| g1.pattern_label(p)).collect();
/// assert_eq!(labels, ["{e1}", "{e2}", "{e3}"]);
/// ```
pub fn enumerate_r(net: &Network, t: NodeIdx, beta: usize) -> Result<PatternFamily, PatternError> {
    enumerate_r_with_ceiling(net, t, beta, DEFAULT_CEILING)
}

pub fn enumerate_r_with_ceiling(
    net: &Network,
    t: NodeIdx,
    beta: usize,
    ceiling: u64,
) -> Result<PatternFamily, PatternError> {
    let capacity = net.sink_capacity(t);
    if beta > capacity {
        return Err(PatternError::BetaTooLarge {
            sink: net.node_name(t).to_string(),
            beta,
            capacity,
        });
    }
    let et: Vec<usize> = net.connective_set(t).into_iter().collect();
    let count = binomial(et.len() as u64, beta as u64);
    if count > ceiling {
        return Err(PatternError::EnumerationTooLarge {
            n: et.len(),
            k: beta,
            count,
            ceiling,
        });
    }
    let members = et
        .into_iter()
        .combinations(beta)
        .map(ErrorPattern::new)
        .filter(|rho| net.pattern_rank(rho, t) == beta)
        .collect();
    Ok(PatternFamily {
        sink: t,
        beta,
        members,
    })
}

/// `R_t(beta_t)` for every sink, in sink order.
pub fn enumerate_all(net: &Network, betas: &[usize]) -> Result<Vec<PatternFamily>, PatternError> {
    net.sinks()
        .par_iter()
        .zip(betas.par_iter())
        .map(|(&t, &b)| enumerate_r(net, t, b))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SinkFamilyRow {
    pub sink: String,
    pub beta: usize,
    /// `|R_t(beta)|`
    pub full_rank: u64,
    /// `C(|E_t|, beta)`
    pub connective: u64,
    /// `C(|E|, beta)`
    pub all_channels: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilySizes {
    pub rate: usize,
    pub sinks: Vec<SinkFamilyRow>,
    pub sum_full_rank: u64,
    pub sum_connective: u64,
    pub sum_all_channels: u64,
    /// Smallest prime at least `sum_full_rank`.
    pub field_bound: u64,
}

/// Pattern counts per sink and summed over sinks.
///
/// ```
/// use lnec::{generators, patterns};
/// let comb = generators::combination(6, 4).unwrap();
/// let betas = vec![2; comb.sinks().len()];
/// let sizes = patterns::family_sizes(&comb, 2, &betas).unwrap();
/// assert_eq!(sizes.sinks[0].full_rank, 24);
/// assert_eq!((sizes.sum_full_rank, sizes.sum_connective, sizes.sum_all_channels), (360, 420, 32175));
/// ```
pub fn family_sizes(net: &Network, w: usize, betas: &[usize]) -> Result<FamilySizes, PatternError> {
    let families = enumerate_all(net, betas)?;
    let e = net.channel_count() as u64;
    let sinks: Vec<SinkFamilyRow> = families
        .iter()
        .map(|f| SinkFamilyRow {
            sink: net.node_name(f.sink).to_string(),
            beta: f.beta,
            full_rank: f.len() as u64,
            connective: binomial(net.connective_set(f.sink).len() as u64, f.beta as u64),
            all_channels: binomial(e, f.beta as u64),
        })
        .collect();
    let sum = |g: fn(&SinkFamilyRow) -> u64| sinks.iter().map(g).fold(0u64, u64::saturating_add);
    let sum_full_rank = sum(|r| r.full_rank);
    Ok(FamilySizes {
        rate: w,
        sum_connective: sum(|r| r.connective),
        sum_all_channels: sum(|r| r.all_channels),
        field_bound: next_prime(sum_full_rank),
        sum_full_rank,
        sinks,
    })
}

impl fmt::Display for FamilySizes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .sinks
            .iter()
            .map(|r| r.sink.len())
            .max()
            .unwrap_or(4)
            .max(4);
        writeln!(
            f,
            "{:<width$}  {:>4}  {:>10}  {:>12}  {:>12}",
            "sink", "beta", "|R_t|", "C(|E_t|,b)", "C(|E|,b)"
        )?;
        for r in &self.sinks {
            writeln!(
                f,
                "{:<width$}  {:>4}  {:>10}  {:>12}  {:>12}",
                r.sink, r.beta, r.full_rank, r.connective, r.all_channels
            )?;
        }
        writeln!(
            f,
            "{:<width$}  {:>4}  {:>10}  {:>12}  {:>12}",
            "sum", "", self.sum_full_rank, self.sum_connective, self.sum_all_channels
        )?;
        write!(f, "field bound: {}", self.field_bound)
    }
}
