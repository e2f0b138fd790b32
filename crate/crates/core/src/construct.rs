//! Deterministic construction of error-correcting network codes.
//!
//! For every sink `t` and every pattern `rho` in `R_t(beta_t)` the builder
//! keeps a cut of `w + beta_t` channels lying on a fixed family of
//! channel-disjoint paths. Channels are processed in canonical order; each
//! kernel is chosen so that every cut it joins stays of full rank when
//! restricted to `rho`. When all channels are done the cuts sit on the sink
//! inputs, which gives minimum distance at least `beta_t + 1`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois::{next_prime, Field, GaloisError, Scalar, Vector};
use crate::kernels::{
    index_legend, kernel_inputs, pick_avoiding_combination, propagate, rank_of, restrict,
    ExtendedKernel, KernelError, KernelInput, LocalKernels, RestrictMode, Subspace,
};
use crate::netgraph::{
    ChannelIdx, ErrorPattern, Network, NetworkDocument, NetworkError, NodeIdx, PathStart,
};
use crate::patterns::{enumerate_all, PatternError, PatternFamily};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("rate {rate} exceeds the smallest sink capacity {capacity}")]
    RateTooHigh { rate: usize, capacity: usize },
    #[error("invalid beta: {0}")]
    BadBeta(String),
    #[error("field F_{q} is too small: no admissible kernel for channel `{channel}`")]
    FieldTooSmall { channel: String, q: u64 },
    #[error(transparent)]
    Patterns(#[from] PatternError),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Field(#[from] GaloisError),
}

/// A linear network code: local kernels together with the extended global
/// kernels they induce.
#[derive(Debug, Clone)]
pub struct Code {
    pub field: Field,
    pub rate: usize,
    pub network: Network,
    pub local: LocalKernels,
    pub extended: Vec<ExtendedKernel>,
}

impl Code {
    /// Builds a code from local kernels, deriving the extended kernels.
    pub fn from_local(network: Network, local: LocalKernels) -> Result<Code, KernelError> {
        let rate = local.rate();
        let extended = propagate(&network, rate, &local)?;
        Ok(Code {
            field: local.field(),
            rate,
            network,
            local,
            extended,
        })
    }

    /// Length of every extended kernel, `w + |E|`.
    pub fn kernel_len(&self) -> usize {
        self.rate + self.network.channel_count()
    }

    /// The decoding matrix at `t` in row form: row `i` holds coordinate `i`
    /// of `f_e` for each `e` in `In(t)`.
    pub fn decoding_rows(&self, t: NodeIdx) -> Vec<Vector> {
        let ins = self.network.in_channels(t);
        (0..self.kernel_len())
            .map(|i| ins.iter().map(|&e| self.extended[e][i]).collect())
            .collect()
    }

    pub fn index_legend(&self) -> Vec<String> {
        index_legend(&self.network, self.rate)
    }

    pub fn to_document(&self) -> CodeDocument {
        let net = &self.network;
        let mut local: IndexMap<String, IndexMap<String, IndexMap<String, u32>>> = IndexMap::new();
        for &v in net.topological_nodes() {
            let outs = net.out_channels(v);
            if outs.is_empty() {
                continue;
            }
            let node = local.entry(net.node_name(v).to_string()).or_default();
            for &e in outs {
                for (input, &c) in kernel_inputs(net, self.rate, e)
                    .iter()
                    .zip(self.local.coefficients(e))
                {
                    node.entry(input.name(net))
                        .or_default()
                        .insert(net.channel(e).id.clone(), c.value());
                }
            }
        }
        let extended = net
            .channels()
            .iter()
            .zip(&self.extended)
            .map(|(c, k)| (c.id.clone(), k.iter().map(|x| x.value()).collect()))
            .collect();
        CodeDocument {
            field: self.field,
            rate: self.rate,
            network: net.document().clone(),
            local_kernels: local,
            extended_kernels: extended,
            index_legend: self.index_legend(),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_document().to_json()
    }

    pub fn from_json(text: &str) -> Result<Code, CodeFileError> {
        let doc: CodeDocument = serde_json::from_str(text)?;
        doc.into_code()
    }
}

#[derive(Debug, Error)]
pub enum CodeFileError {
    #[error("malformed code document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("local kernels of node `{node}` mention `{input}`, which is not an input there")]
    UnknownInput { node: String, input: String },
    #[error("residue {value} is not a canonical element of F_{q}")]
    BadResidue { value: u32, q: u64 },
    #[error("stored {0} do not match the local kernels")]
    Mismatch(&'static str),
}

/// The on-disk JSON form of a [`Code`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDocument {
    pub field: Field,
    pub rate: usize,
    pub network: NetworkDocument,
    /// node -> input channel -> output channel -> coefficient
    pub local_kernels: IndexMap<String, IndexMap<String, IndexMap<String, u32>>>,
    pub extended_kernels: IndexMap<String, Vec<u32>>,
    pub index_legend: Vec<String>,
}

impl CodeDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("code documents always serialize")
    }

    pub fn into_code(self) -> Result<Code, CodeFileError> {
        let net = Network::from_document(self.network.clone())?;
        let w = self.rate;
        let field = self.field;
        let mut entries = Vec::new();
        for (node, inputs) in &self.local_kernels {
            let v = net.node(node)?;
            for (input_name, outs) in inputs {
                for (out, &value) in outs {
                    let e = net.channel_by_id(out)?;
                    let input = kernel_inputs(&net, w, e)
                        .into_iter()
                        .find(|i| &i.name(&net) == input_name)
                        .filter(|_| net.channel(e).tail == v)
                        .ok_or_else(|| CodeFileError::UnknownInput {
                            node: node.clone(),
                            input: input_name.clone(),
                        })?;
                    let c = field
                        .checked_elem(value as u64)
                        .ok_or(CodeFileError::BadResidue {
                            value,
                            q: field.modulus(),
                        })?;
                    entries.push((input, e, c));
                }
            }
        }
        let local = LocalKernels::from_entries(&net, w, field, entries)?;
        let code = Code::from_local(net, local)?;
        if self.index_legend != code.index_legend() {
            return Err(CodeFileError::Mismatch("index legend"));
        }
        if self.extended_kernels != code.to_document().extended_kernels {
            return Err(CodeFileError::Mismatch("extended kernels"));
        }
        Ok(code)
    }
}

/// How redundancy is spent at each sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BetaSpec {
    Uniform(usize),
    /// `beta_t = C_t - w` everywhere.
    Max,
    PerSink(Vec<(String, usize)>),
}

impl BetaSpec {
    /// Parses `2`, `max` or `t1=2,t2=1`.
    pub fn parse(s: &str) -> Result<BetaSpec, ConstructError> {
        let s = s.trim();
        if s == "max" {
            return Ok(BetaSpec::Max);
        }
        if let Ok(b) = s.parse() {
            return Ok(BetaSpec::Uniform(b));
        }
        s.split(',')
            .map(|part| {
                let (t, b) = part
                    .split_once('=')
                    .ok_or_else(|| ConstructError::BadBeta(format!("cannot parse `{part}`")))?;
                let b = b
                    .trim()
                    .parse()
                    .map_err(|_| ConstructError::BadBeta(format!("cannot parse `{part}`")))?;
                Ok((t.trim().to_string(), b))
            })
            .collect::<Result<_, _>>()
            .map(BetaSpec::PerSink)
    }

    /// One beta per sink, in sink order, each checked against `C_t - w`.
    pub fn resolve(&self, net: &Network, w: usize) -> Result<Vec<usize>, ConstructError> {
        let deltas = redundancies(net, w)?;
        let betas = match self {
            BetaSpec::Uniform(b) => vec![*b; net.sinks().len()],
            BetaSpec::Max => deltas.clone(),
            BetaSpec::PerSink(pairs) => {
                let mut out = vec![None; net.sinks().len()];
                for (name, b) in pairs {
                    let t = net.sink(name)?;
                    let j = net.sinks().iter().position(|&x| x == t).expect("sink");
                    if out[j].replace(*b).is_some() {
                        return Err(ConstructError::BadBeta(format!(
                            "sink `{name}` given twice"
                        )));
                    }
                }
                out.into_iter()
                    .enumerate()
                    .map(|(j, b)| {
                        b.ok_or_else(|| {
                            ConstructError::BadBeta(format!(
                                "no beta for sink `{}`",
                                net.node_name(net.sinks()[j])
                            ))
                        })
                    })
                    .collect::<Result<_, _>>()?
            }
        };
        check_betas(net, w, &betas)?;
        Ok(betas)
    }
}

/// `C_t - w` per sink; fails if some sink cannot carry rate `w`.
pub fn redundancies(net: &Network, w: usize) -> Result<Vec<usize>, ConstructError> {
    net.sinks()
        .iter()
        .map(|&t| {
            let c = net.sink_capacity(t);
            c.checked_sub(w).ok_or(ConstructError::RateTooHigh {
                rate: w,
                capacity: c,
            })
        })
        .collect()
}

fn check_betas(net: &Network, w: usize, betas: &[usize]) -> Result<(), ConstructError> {
    if w == 0 {
        return Err(ConstructError::BadBeta("rate must be positive".into()));
    }
    let deltas = redundancies(net, w)?;
    if betas.len() != deltas.len() {
        return Err(ConstructError::BadBeta(format!(
            "{} betas for {} sinks",
            betas.len(),
            deltas.len()
        )));
    }
    for ((&b, &d), &t) in betas.iter().zip(&deltas).zip(net.sinks()) {
        if b > d {
            return Err(ConstructError::BadBeta(format!(
                "beta {b} at sink `{}` exceeds its redundancy {d}",
                net.node_name(t)
            )));
        }
    }
    Ok(())
}

/// The smallest prime at least `sum_t |R_t(beta_t)|`.
pub fn auto_field(net: &Network, betas: &[usize]) -> Result<Field, ConstructError> {
    let sum: usize = enumerate_all(net, betas)?
        .iter()
        .map(PatternFamily::len)
        .sum();
    Ok(Field::new(next_prime(sum as u64))?)
}

/// A member of a dynamic cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChannelRef {
    /// Imaginary message channel `d'_{k+1}`.
    Message(usize),
    /// Imaginary error channel of a real channel.
    Error(ChannelIdx),
    Real(ChannelIdx),
}

impl ChannelRef {
    pub fn name(self, net: &Network) -> String {
        match self {
            ChannelRef::Message(k) => crate::netgraph::message_channel_name(k),
            ChannelRef::Error(e) => format!("{}'", net.channel(e).id),
            ChannelRef::Real(e) => net.channel(e).id.clone(),
        }
    }
}

/// Bookkeeping for one `(sink, pattern)` pair.
#[derive(Debug, Clone)]
pub struct CutEntry {
    pub sink: NodeIdx,
    pub beta: usize,
    pub pattern: ErrorPattern,
    pub cut: Vec<ChannelRef>,
    /// Real channels on the path family.
    pub path_channels: BTreeSet<ChannelIdx>,
    /// The channel preceding each path channel on its path.
    pub predecessor: HashMap<ChannelIdx, ChannelRef>,
}

#[derive(Debug, Clone)]
pub struct CutState {
    pub entries: Vec<CutEntry>,
}

impl CutState {
    fn new(
        net: &Network,
        w: usize,
        families: &[PatternFamily],
    ) -> Result<CutState, ConstructError> {
        let mut entries = Vec::new();
        for fam in families {
            for rho in &fam.members {
                let family = net.disjoint_paths(fam.sink, rho, w)?;
                let mut cut = Vec::with_capacity(family.paths.len());
                let mut predecessor = HashMap::new();
                for path in &family.paths {
                    let mut prev = match path.start {
                        PathStart::Message(k) => ChannelRef::Message(k),
                        PathStart::Error(e) => ChannelRef::Error(e),
                    };
                    cut.push(prev);
                    for &c in &path.channels {
                        predecessor.insert(c, prev);
                        prev = ChannelRef::Real(c);
                    }
                }
                entries.push(CutEntry {
                    sink: fam.sink,
                    beta: fam.beta,
                    pattern: rho.clone(),
                    cut,
                    path_channels: family.channel_set(),
                    predecessor,
                });
            }
        }
        Ok(CutState { entries })
    }
}

/// Step-by-step construction, exposing the cut state between channels.
pub struct CodeBuilder {
    net: Network,
    w: usize,
    field: Field,
    state: CutState,
    local: LocalKernels,
    extended: Vec<Option<ExtendedKernel>>,
    next: ChannelIdx,
}

impl CodeBuilder {
    pub fn new(
        net: &Network,
        w: usize,
        betas: &[usize],
        field: Field,
    ) -> Result<CodeBuilder, ConstructError> {
        check_betas(net, w, betas)?;
        let families = enumerate_all(net, betas)?;
        let state = CutState::new(net, w, &families)?;
        Ok(CodeBuilder {
            net: net.clone(),
            w,
            field,
            state,
            local: LocalKernels::zero(net, w, field),
            extended: vec![None; net.channel_count()],
            next: 0,
        })
    }

    pub fn cut_state(&self) -> &CutState {
        &self.state
    }

    pub fn is_done(&self) -> bool {
        self.next == self.net.channel_count()
    }

    fn len(&self) -> usize {
        self.w + self.net.channel_count()
    }

    fn kernel_of(&self, c: ChannelRef) -> Vector {
        match c {
            ChannelRef::Message(k) => self.field.unit_vector(self.len(), k),
            ChannelRef::Error(e) => self.field.unit_vector(self.len(), self.w + e),
            ChannelRef::Real(e) => self.extended[e]
                .clone()
                .expect("cut channels are processed"),
        }
    }

    /// Overwrites an already processed kernel. Only meant for exercising
    /// [`CodeBuilder::verify_cut_invariant`].
    pub fn force_kernel(&mut self, e: ChannelIdx, kernel: Vector) {
        assert!(e < self.next, "channel not processed yet");
        self.extended[e] = Some(kernel);
    }

    /// Whether every cut still has rank `w + beta_t` restricted to its pattern.
    pub fn verify_cut_invariant(&self) -> bool {
        self.state.entries.iter().all(|entry| {
            let rows: Vec<Vector> = entry
                .cut
                .iter()
                .map(|&c| {
                    restrict(
                        &self.kernel_of(c),
                        self.w,
                        &entry.pattern,
                        RestrictMode::Compact,
                    )
                })
                .collect();
            rank_of(self.field, &rows) == self.w + entry.beta
        })
    }

    /// Chooses the kernel of the next channel in canonical order and returns
    /// that channel, or `None` when every channel is done.
    pub fn step(&mut self) -> Result<Option<ChannelIdx>, ConstructError> {
        if self.is_done() {
            return Ok(None);
        }
        let e = self.next;
        let len = self.len();
        let field = self.field;
        let inputs = kernel_inputs(&self.net, self.w, e);
        let affected: Vec<usize> = (0..self.state.entries.len())
            .filter(|&j| self.state.entries[j].path_channels.contains(&e))
            .collect();
        if affected.is_empty() {
            self.extended[e] = Some(field.unit_vector(len, self.w + e));
            self.next += 1;
            return Ok(Some(e));
        }

        let mut generators: Vec<Vector> = inputs
            .iter()
            .map(|&i| match i {
                KernelInput::Message(k) => field.unit_vector(len, k),
                KernelInput::Channel(d) => {
                    self.extended[d].clone().expect("inputs precede outputs")
                }
            })
            .collect();
        generators.push(field.unit_vector(len, self.w + e));

        let forbidden: Vec<Subspace> = affected
            .iter()
            .map(|&j| {
                let entry = &self.state.entries[j];
                let skip = entry.predecessor[&e];
                let rows: Vec<Vector> = entry
                    .cut
                    .iter()
                    .filter(|&&c| c != skip)
                    .map(|&c| {
                        restrict(
                            &self.kernel_of(c),
                            self.w,
                            &entry.pattern,
                            RestrictMode::Zeroed,
                        )
                    })
                    .chain(
                        generators
                            .iter()
                            .map(|g| restrict(g, self.w, &entry.pattern, RestrictMode::Complement)),
                    )
                    .collect();
                Subspace::span(field, len, &rows)
            })
            .collect();

        let (coeffs, g) = match pick_avoiding_combination(field, len, &generators, &forbidden) {
            Ok(found) => found,
            Err(KernelError::Exhausted) => {
                return Err(ConstructError::FieldTooSmall {
                    channel: self.net.channel(e).id.clone(),
                    q: field.modulus(),
                })
            }
            Err(other) => return Err(other.into()),
        };
        let n = inputs.len();
        let c_err = coeffs[n];
        let (kernel, local) = if c_err.is_zero() {
            let mut k = g;
            k[self.w + e] = field.add(k[self.w + e], Scalar::ONE);
            (k, coeffs[..n].to_vec())
        } else {
            let inv = field.inv(c_err).expect("nonzero");
            (
                field.scale(inv, &g),
                coeffs[..n].iter().map(|&c| field.mul(c, inv)).collect(),
            )
        };
        self.local.set_coefficients(e, local);
        self.extended[e] = Some(kernel);
        for j in affected {
            let entry = &mut self.state.entries[j];
            let skip = entry.predecessor[&e];
            let slot = entry
                .cut
                .iter()
                .position(|&c| c == skip)
                .expect("predecessor is in the cut");
            entry.cut[slot] = ChannelRef::Real(e);
        }
        self.next += 1;
        Ok(Some(e))
    }

    pub fn finish(mut self) -> Result<Code, ConstructError> {
        while self.step()?.is_some() {}
        let code = Code::from_local(self.net, self.local)?;
        debug_assert!(code
            .extended
            .iter()
            .zip(&self.extended)
            .all(|(a, b)| Some(a) == b.as_ref()));
        Ok(code)
    }
}

/// Builds a code with minimum distance at least `betas[t] + 1` at every sink.
///
/// ```
/// use lnec::{analysis, construct, galois::Field, generators};
/// let g1 = generators::g1();
/// let code = construct::construct_code(&g1, 1, &[1], Field::new(3).unwrap()).unwrap();
/// let t = g1.sinks()[0];
/// assert_eq!(analysis::min_distance(&code, t).unwrap(), 2);
/// ```
pub fn construct_code(
    net: &Network,
    w: usize,
    betas: &[usize],
    field: Field,
) -> Result<Code, ConstructError> {
    CodeBuilder::new(net, w, betas, field)?.finish()
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "code over {} at rate {}", self.field, self.rate)?;
        writeln!(f, "legend: ({})", self.index_legend().join(","))?;
        for (c, k) in self.network.channels().iter().zip(&self.extended) {
            let coords: Vec<String> = k.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}: ({})", c.id, coords.join(","))?;
        }
        Ok(())
    }
}
