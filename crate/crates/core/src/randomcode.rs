//! Random linear network error-correction coding.
//!
//! Every local coefficient is drawn uniformly from the field. Trial `i` of a
//! run with seed `s` draws from the ChaCha8 stream `(s, i)`, so trials can run
//! in parallel and a report depends only on its configuration.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::analysis::min_distance;
use crate::construct::{redundancies, Code, ConstructError};
use crate::galois::{next_prime, Field, Vector};
use crate::kernels::{rank_of, LocalKernels};
use crate::netgraph::Network;
use crate::patterns::{binomial, enumerate_r, PatternError};

#[derive(Debug, Error)]
pub enum RandomError {
    #[error(transparent)]
    Patterns(#[from] PatternError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error("invalid parameters: {0}")]
    BadParams(String),
}

fn rng_for(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Code for trial `trial` of a run seeded with `seed`.
pub fn random_code_for_trial(net: &Network, w: usize, field: Field, seed: u64, trial: u64) -> Code {
    let mut rng = rng_for(seed, trial);
    let q = field.modulus();
    let mut lk = LocalKernels::zero(net, w, field);
    for e in 0..net.channel_count() {
        let n = lk.coefficients(e).len();
        lk.set_coefficients(
            e,
            (0..n).map(|_| field.elem(rng.random_range(0..q))).collect(),
        );
    }
    Code::from_local(net.clone(), lk).expect("kernels cover every adjacent pair")
}

/// A code with i.i.d. uniform local coefficients.
///
/// ```
/// use lnec::{galois::Field, generators, randomcode};
/// let g1 = generators::g1();
/// let f17 = Field::new(17).unwrap();
/// let a = randomcode::random_code(&g1, 1, f17, 9);
/// let b = randomcode::random_code(&g1, 1, f17, 9);
/// assert_eq!(a.extended, b.extended);
/// ```
pub fn random_code(net: &Network, w: usize, field: Field, seed: u64) -> Code {
    random_code_for_trial(net, w, field, seed, 0)
}

#[derive(Debug, Clone)]
pub struct TrialConfig {
    pub network: Network,
    pub rate: usize,
    pub field: Field,
    /// One per sink, in sink order.
    pub betas: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
}

/// One row of the minimum-distance tail table at a sink.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailRow {
    pub d: usize,
    /// `Pr(D < delta + 1 - d)`, counting non-regular codes as distance 0.
    pub empirical: f64,
    /// The same probability among regular codes only.
    pub conditioned: Option<f64>,
    pub bound: f64,
    pub bound_raw: f64,
    pub vacuous: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SinkFailure {
    pub sink: String,
    pub redundancy: usize,
    pub beta: usize,
    pub nonregular: u64,
    /// Not MDS at this sink (non-regular or `d_min < delta + 1`).
    pub mds_failures: u64,
    pub mds_rate: f64,
    pub mds_bound: f64,
    /// Non-regular or `d_min < beta + 1`.
    pub beta_failures: u64,
    pub beta_rate: f64,
    pub beta_bound: f64,
    /// Counts of the minimum distance `0..=delta + 1`; slot 0 holds the
    /// non-regular outcomes.
    pub dmin_counts: Vec<u64>,
    pub dmin_pmf: Vec<f64>,
    pub tails: Vec<TailRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureReport {
    pub rate: usize,
    pub field: u64,
    pub trials: u64,
    pub seed: u64,
    pub internal_nodes: usize,
    pub sinks: Vec<SinkFailure>,
    pub mds_failures: u64,
    pub mds_rate: f64,
    pub mds_bound: f64,
    pub beta_failures: u64,
    pub beta_rate: f64,
    pub beta_bound: f64,
}

impl FailureReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// Standard deviation of a Bernoulli frequency over `n` trials.
pub fn binomial_sigma(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Whether an observed frequency is consistent with an upper bound at three
/// standard deviations.
pub fn within_bound(empirical: f64, bound: f64, trials: u64) -> bool {
    empirical <= bound + 3.0 * binomial_sigma(bound.min(1.0), trials)
}

/// `1 - (1 - r / (q - 1))^(j + 1)`, clamped to `[0, 1]`.
pub fn mds_failure_bound(r: u64, q: u64, j: usize) -> f64 {
    let x = r as f64 / (q - 1) as f64;
    if x >= 1.0 {
        1.0
    } else {
        1.0 - (1.0 - x).powi(j as i32 + 1)
    }
}

/// `r C(gap + j + 1, j) / (q - 1)^(gap + 1)` without clamping, where `gap`
/// is `delta - beta`.
pub fn tail_bound(r: u64, gap: usize, q: u64, j: usize) -> f64 {
    r as f64 * binomial((gap + j + 1) as u64, j as u64) as f64
        / ((q - 1) as f64).powi(gap as i32 + 1)
}

/// Runs `cfg.trials` random codes and compares the observed failure
/// frequencies with their closed-form bounds.
pub fn estimate_failures(cfg: &TrialConfig) -> Result<FailureReport, RandomError> {
    let net = &cfg.network;
    let w = cfg.rate;
    if cfg.trials == 0 {
        return Err(RandomError::BadParams("need at least one trial".into()));
    }
    let deltas = redundancies(net, w)?;
    if cfg.betas.len() != deltas.len() || cfg.betas.iter().zip(&deltas).any(|(b, d)| b > d) {
        return Err(RandomError::BadParams(
            "betas must satisfy beta_t <= C_t - w".into(),
        ));
    }
    let q = cfg.field.modulus();
    let j = net.internal_node_count();
    let sinks = net.sinks();
    let r_sizes = |beta_of: &dyn Fn(usize) -> usize| -> Result<Vec<u64>, PatternError> {
        sinks
            .iter()
            .enumerate()
            .map(|(k, &t)| enumerate_r(net, t, beta_of(k)).map(|f| f.len() as u64))
            .collect()
    };
    let r_delta = r_sizes(&|k| deltas[k])?;
    let r_beta = r_sizes(&|k| cfg.betas[k])?;

    let outcomes: Vec<Vec<usize>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let code = random_code_for_trial(net, w, cfg.field, cfg.seed, trial);
            sinks
                .iter()
                .map(|&t| min_distance(&code, t).unwrap_or(0))
                .collect()
        })
        .collect();

    let n = cfg.trials as f64;
    let mut sink_rows = Vec::with_capacity(sinks.len());
    for (k, &t) in sinks.iter().enumerate() {
        let (delta, beta) = (deltas[k], cfg.betas[k]);
        let mut counts = vec![0u64; delta + 2];
        for o in &outcomes {
            counts[o[k]] += 1;
        }
        let nonregular = counts[0];
        let regular = cfg.trials - nonregular;
        let mds_failures = cfg.trials - counts[delta + 1];
        let beta_failures: u64 = counts[..=beta].iter().sum();
        let mut tails = Vec::with_capacity(delta + 1);
        for d in 0..=delta {
            let below: u64 = counts[..delta + 1 - d].iter().sum();
            let r = enumerate_r(net, t, delta - d)?.len() as u64;
            let raw = tail_bound(r, d, q, j);
            tails.push(TailRow {
                d,
                empirical: below as f64 / n,
                conditioned: (regular > 0).then(|| (below - nonregular) as f64 / regular as f64),
                bound: raw.min(1.0),
                bound_raw: raw,
                vacuous: raw >= 1.0,
            });
        }
        sink_rows.push(SinkFailure {
            sink: net.node_name(t).to_string(),
            redundancy: delta,
            beta,
            nonregular,
            mds_failures,
            mds_rate: mds_failures as f64 / n,
            mds_bound: mds_failure_bound(r_delta[k], q, j),
            beta_failures,
            beta_rate: beta_failures as f64 / n,
            beta_bound: tail_bound(r_beta[k], delta - beta, q, j).min(1.0),
            dmin_pmf: counts.iter().map(|&c| c as f64 / n).collect(),
            dmin_counts: counts,
            tails,
        });
    }

    let any = |fail: &dyn Fn(usize, usize) -> bool| {
        outcomes
            .iter()
            .filter(|o| o.iter().enumerate().any(|(k, &d)| fail(k, d)))
            .count() as u64
    };
    let mds_failures = any(&|k, d| d < deltas[k] + 1);
    let beta_failures = any(&|k, d| d < cfg.betas[k] + 1);
    let beta_bound: f64 = (0..sinks.len())
        .map(|k| tail_bound(r_beta[k], deltas[k] - cfg.betas[k], q, j))
        .sum();
    Ok(FailureReport {
        rate: w,
        field: q,
        trials: cfg.trials,
        seed: cfg.seed,
        internal_nodes: j,
        sinks: sink_rows,
        mds_failures,
        mds_rate: mds_failures as f64 / n,
        mds_bound: mds_failure_bound(r_delta.iter().sum(), q, j),
        beta_failures,
        beta_rate: beta_failures as f64 / n,
        beta_bound: beta_bound.min(1.0),
    })
}

impl fmt::Display for FailureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} trials over F_{} at rate {}, seed {}",
            self.trials, self.field, self.rate, self.seed
        )?;
        let row = |f: &mut fmt::Formatter<'_>, label: &str, emp: f64, bound: f64| {
            writeln!(
                f,
                "  {label:<28} {emp:>9.5}  {bound:>9.5}  {:>9.5}",
                bound - emp
            )
        };
        writeln!(
            f,
            "  {:<28} {:>9}  {:>9}  {:>9}",
            "event", "empirical", "bound", "margin"
        )?;
        for s in &self.sinks {
            row(f, &format!("{}: not MDS", s.sink), s.mds_rate, s.mds_bound)?;
            row(
                f,
                &format!("{}: d_min < {}", s.sink, s.beta + 1),
                s.beta_rate,
                s.beta_bound,
            )?;
            for tail in &s.tails {
                let label = format!("{}: D < {}", s.sink, s.redundancy + 1 - tail.d);
                row(f, &label, tail.empirical, tail.bound)?;
            }
        }
        row(f, "network: not MDS", self.mds_rate, self.mds_bound)?;
        row(f, "network: below beta", self.beta_rate, self.beta_bound)?;
        for s in &self.sinks {
            let pmf: Vec<String> = s.dmin_pmf.iter().map(|p| format!("{p:.4}")).collect();
            writeln!(
                f,
                "  {} d_min pmf (0 = non-regular): [{}]",
                s.sink,
                pmf.join(", ")
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldRecommendation {
    pub degradation: usize,
    /// `sum_t |R_t(delta_t - d)|`
    pub pattern_sum: u64,
    /// `C(d + |J| + 1, |J|)`
    pub binomial: u64,
    pub first_branch: f64,
    pub second_branch: f64,
    pub minimum: f64,
    /// Smallest prime at least `minimum`.
    pub prime: u64,
}

/// Field size sufficient for a regular code with degradation at most `d` at
/// every sink.
///
/// ```
/// use lnec::{generators, randomcode};
/// let rec = randomcode::field_size_recommendation(&generators::g2(), 2, 1).unwrap();
/// assert_eq!(rec.pattern_sum, 8);
/// assert!(rec.second_branch < 7.0);
/// assert_eq!(rec.prime, 7);
/// ```
pub fn field_size_recommendation(
    net: &Network,
    w: usize,
    d: usize,
) -> Result<FieldRecommendation, RandomError> {
    let deltas = redundancies(net, w)?;
    if deltas.iter().any(|&delta| d > delta) {
        return Err(RandomError::BadParams(format!(
            "degradation {d} exceeds some sink redundancy"
        )));
    }
    let mut pattern_sum = 0u64;
    for (&t, &delta) in net.sinks().iter().zip(&deltas) {
        pattern_sum += enumerate_r(net, t, delta - d)?.len() as u64;
    }
    let j = net.internal_node_count();
    let binom = binomial((d + j + 1) as u64, j as u64);
    let first = pattern_sum as f64;
    let second = 2.0 + (pattern_sum as f64 * binom as f64).powf(1.0 / (d + 1) as f64);
    let minimum = first.min(second);
    Ok(FieldRecommendation {
        degradation: d,
        pattern_sum,
        binomial: binom,
        first_branch: first,
        second_branch: second,
        minimum,
        prime: next_prime(minimum.ceil() as u64),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma4Report {
    pub n: usize,
    pub k0: usize,
    pub k1: usize,
    pub q: u64,
    pub m: usize,
    pub trials: u64,
    pub successes: u64,
    pub empirical: f64,
    pub exact: f64,
    pub sigma: f64,
}

fn lemma4_params(n: usize, k0: usize, k1: usize, q: u64) -> Result<Field, RandomError> {
    if k0 > n || k1 > n || k0 + k1 < n {
        return Err(RandomError::BadParams(format!(
            "need k0, k1 <= n and k0 + k1 >= n, got n={n}, k0={k0}, k1={k1}"
        )));
    }
    Field::new(q).map_err(|e| RandomError::BadParams(e.to_string()))
}

/// `prod_{i=1..m} (1 - q^-i)`.
pub fn lemma4_exact(m: usize, q: u64) -> f64 {
    (1..=m)
        .map(|i| 1.0 - (q as f64).powi(-(i as i32)))
        .product()
}

/// `L0` spans the first `k0` coordinates and `L1` the last `k1`. Draws
/// `m = n - k0` uniform vectors from `L1` and checks whether they complete
/// `L0` to the whole space.
fn lemma4_spans(field: Field, n: usize, k0: usize, vectors: &[Vector]) -> bool {
    let mut rows: Vec<Vector> = (0..k0).map(|i| field.unit_vector(n, i)).collect();
    rows.extend(vectors.iter().cloned());
    rank_of(field, &rows) == n
}

/// Monte Carlo estimate of the full-span probability next to its exact value.
pub fn lemma4_check(
    n: usize,
    k0: usize,
    k1: usize,
    q: u64,
    trials: u64,
    seed: u64,
) -> Result<Lemma4Report, RandomError> {
    let field = lemma4_params(n, k0, k1, q)?;
    if trials == 0 {
        return Err(RandomError::BadParams("need at least one trial".into()));
    }
    let m = n - k0;
    let successes = (0..trials)
        .into_par_iter()
        .filter(|&trial| {
            let mut rng = rng_for(seed, trial);
            let vectors: Vec<Vector> = (0..m)
                .map(|_| {
                    (0..n)
                        .map(|i| {
                            if i < n - k1 {
                                field.elem(0)
                            } else {
                                field.elem(rng.random_range(0..q))
                            }
                        })
                        .collect()
                })
                .collect();
            lemma4_spans(field, n, k0, &vectors)
        })
        .count() as u64;
    let exact = lemma4_exact(m, q);
    Ok(Lemma4Report {
        n,
        k0,
        k1,
        q,
        m,
        trials,
        successes,
        empirical: successes as f64 / trials as f64,
        exact,
        sigma: binomial_sigma(exact, trials),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma4Exhaustive {
    pub spanning: u128,
    pub total: u128,
    /// `spanning * q^(m(m+1)/2) == prod (q^i - 1) * q^(k1 m)`.
    pub matches_formula: bool,
}

/// Counts spanning choices over every `m`-tuple of vectors in `L1`.
pub fn lemma4_exhaustive(
    n: usize,
    k0: usize,
    k1: usize,
    q: u64,
) -> Result<Lemma4Exhaustive, RandomError> {
    let field = lemma4_params(n, k0, k1, q)?;
    let m = n - k0;
    let free = k1 * m;
    let total = (q as u128).pow(free as u32);
    if total > 1 << 24 {
        return Err(RandomError::BadParams(format!(
            "{total} tuples is too many to enumerate"
        )));
    }
    let mut spanning = 0u128;
    for code in 0..total {
        let mut c = code;
        let vectors: Vec<Vector> = (0..m)
            .map(|_| {
                (0..n)
                    .map(|i| {
                        if i < n - k1 {
                            field.elem(0)
                        } else {
                            let digit = (c % q as u128) as u64;
                            c /= q as u128;
                            field.elem(digit)
                        }
                    })
                    .collect()
            })
            .collect();
        if lemma4_spans(field, n, k0, &vectors) {
            spanning += 1;
        }
    }
    let q = q as u128;
    let lhs = spanning * q.pow((m * (m + 1) / 2) as u32);
    let rhs = (1..=m as u32).map(|i| q.pow(i) - 1).product::<u128>() * total;
    Ok(Lemma4Exhaustive {
        spanning,
        total,
        matches_formula: lhs == rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::is_regular;
    use crate::generators;

    #[test]
    fn all_binary_g1_codes() {
        // three coefficients over F_2: regular iff the sink sees the message
        let g1 = generators::g1();
        let f2 = Field::new(2).unwrap();
        let mut regular = 0;
        for bits in 0..8u32 {
            let mut lk = LocalKernels::zero(&g1, 1, f2);
            for e in 0..3 {
                lk.set_coefficients(e, vec![f2.elem((bits >> e & 1) as u64)]);
            }
            let code = Code::from_local(g1.clone(), lk).unwrap();
            if is_regular(&code, 2) {
                regular += 1;
            }
        }
        assert_eq!(regular, 5);
        let kinds: std::collections::BTreeSet<bool> = (0..64)
            .map(|s| is_regular(&random_code(&g1, 1, f2, s), 2))
            .collect();
        assert_eq!(kinds.len(), 2);
    }

    #[test]
    fn bound_formulas() {
        assert!((mds_failure_bound(3, 16, 1) - 0.36).abs() < 1e-12);
        assert!((mds_failure_bound(3, 17, 1) - (1.0 - (13.0f64 / 16.0).powi(2))).abs() < 1e-12);
        assert_eq!(mds_failure_bound(5, 3, 1), 1.0);
        assert!((tail_bound(1, 1, 16, 1) - 3.0 / 225.0).abs() < 1e-12);
    }

    #[test]
    fn example_recommendations() {
        let g3 = generators::g3();
        let rec = field_size_recommendation(&g3, 2, 1).unwrap();
        assert_eq!((rec.pattern_sum, rec.binomial), (12, 45));
        assert!(rec.second_branch >= 20.0);
        assert_eq!(rec.minimum, 12.0);
        assert_eq!(rec.prime, 13);
        for net in [generators::g1(), generators::g2(), g3] {
            let rec = field_size_recommendation(&net, 1, 0).unwrap();
            assert!(rec.first_branch < rec.second_branch);
        }
        assert!(field_size_recommendation(&generators::g1(), 1, 2).is_err());
    }

    #[test]
    fn report_is_reproducible_and_consistent() {
        let cfg = TrialConfig {
            network: generators::g1(),
            rate: 1,
            field: Field::new(5).unwrap(),
            betas: vec![1],
            trials: 400,
            seed: 3,
        };
        let a = estimate_failures(&cfg).unwrap();
        let b = estimate_failures(&cfg).unwrap();
        assert_eq!(a, b);
        let s = &a.sinks[0];
        assert_eq!(s.dmin_counts.iter().sum::<u64>(), 400);
        assert!((s.dmin_pmf.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert_eq!(s.mds_failures, s.dmin_counts[0] + s.dmin_counts[1]);
        assert_eq!(a.mds_failures, s.mds_failures);
        assert!(a.to_string().contains("not MDS"));
    }

    #[test]
    fn beta_zero_is_nonregularity() {
        let cfg = TrialConfig {
            network: generators::g1(),
            rate: 1,
            field: Field::new(3).unwrap(),
            betas: vec![0],
            trials: 2000,
            seed: 11,
        };
        let r = estimate_failures(&cfg).unwrap();
        let s = &r.sinks[0];
        assert_eq!(s.beta_failures, s.nonregular);
        assert!(within_bound(s.beta_rate, s.beta_bound, cfg.trials));
    }

    #[test]
    fn lemma4_small_cases() {
        assert_eq!(lemma4_exact(0, 7), 1.0);
        assert!((lemma4_exact(1, 2) - 0.5).abs() < 1e-12);
        assert!((lemma4_exact(2, 3) - 16.0 / 27.0).abs() < 1e-12);
        let ex = lemma4_exhaustive(2, 1, 2, 2).unwrap();
        assert_eq!((ex.spanning, ex.total), (2, 4));
        assert!(ex.matches_formula);
        assert!(lemma4_exhaustive(3, 1, 3, 3).unwrap().matches_formula);
        let r = lemma4_check(3, 1, 3, 3, 5000, 1).unwrap();
        assert!((r.empirical - r.exact).abs() <= 3.0 * r.sigma);
        assert!(lemma4_check(3, 1, 1, 3, 10, 1).is_err());
    }
}
