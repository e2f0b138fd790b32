//! Local and extended global encoding kernels.
//!
//! Extended kernels are vectors of length `w + |E|`. Coordinate `k < w` is the
//! imaginary message channel `d'_{k+1}`; coordinate `w + e` is the real
//! channel with canonical index `e` (equivalently its imaginary error channel).
//! [`index_legend`] gives the names in that order.

use thiserror::Error;

use crate::galois::{Field, Scalar, Vector};
use crate::linalg;
use crate::netgraph::{message_channel_name, ChannelIdx, ErrorPattern, Network};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("local kernels are incomplete: {0}")]
    IncompleteKernels(String),
    #[error("channel `{input}` does not feed channel `{output}`")]
    NotAdjacent { input: String, output: String },
    #[error("every candidate vector lies in a forbidden subspace")]
    Exhausted,
}

/// An extended global encoding kernel, in legend order.
pub type ExtendedKernel = Vector;

/// An input of a local kernel: one of the `w` imaginary message channels (for
/// channels leaving the source) or a real channel entering the tail node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KernelInput {
    Message(usize),
    Channel(ChannelIdx),
}

impl KernelInput {
    /// Coordinate of this input in an extended kernel.
    pub fn coordinate(self, w: usize) -> usize {
        match self {
            KernelInput::Message(k) => k,
            KernelInput::Channel(d) => w + d,
        }
    }

    pub fn name(self, net: &Network) -> String {
        match self {
            KernelInput::Message(k) => message_channel_name(k),
            KernelInput::Channel(d) => net.channel(d).id.clone(),
        }
    }
}

/// Inputs feeding channel `e`, in canonical order.
pub fn kernel_inputs(net: &Network, w: usize, e: ChannelIdx) -> Vec<KernelInput> {
    let tail = net.channel(e).tail;
    if tail == net.source() {
        (0..w).map(KernelInput::Message).collect()
    } else {
        net.in_channels(tail)
            .iter()
            .map(|&d| KernelInput::Channel(d))
            .collect()
    }
}

/// Coordinate names: `d'1..d'w` followed by channel ids in canonical order.
pub fn index_legend(net: &Network, w: usize) -> Vec<String> {
    (0..w)
        .map(message_channel_name)
        .chain(net.channels().iter().map(|c| c.id.clone()))
        .collect()
}

/// The coefficients `k_{d,e}` of every node, stored per output channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalKernels {
    field: Field,
    rate: usize,
    /// `coeffs[e][j]` multiplies the `j`-th entry of `kernel_inputs(e)`.
    coeffs: Vec<Vec<Scalar>>,
}

impl LocalKernels {
    /// All coefficients zero.
    pub fn zero(net: &Network, w: usize, field: Field) -> Self {
        let coeffs = (0..net.channel_count())
            .map(|e| vec![Scalar::ZERO; kernel_inputs(net, w, e).len()])
            .collect();
        LocalKernels {
            field,
            rate: w,
            coeffs,
        }
    }

    /// Builds kernels from `(input, output, value)` triples, which must cover
    /// every adjacent pair exactly once.
    pub fn from_entries(
        net: &Network,
        w: usize,
        field: Field,
        entries: impl IntoIterator<Item = (KernelInput, ChannelIdx, Scalar)>,
    ) -> Result<Self, KernelError> {
        let mut slots: Vec<Vec<Option<Scalar>>> = (0..net.channel_count())
            .map(|e| vec![None; kernel_inputs(net, w, e).len()])
            .collect();
        for (input, e, value) in entries {
            let j = kernel_inputs(net, w, e)
                .iter()
                .position(|&x| x == input)
                .ok_or_else(|| KernelError::NotAdjacent {
                    input: input.name(net),
                    output: net.channel(e).id.clone(),
                })?;
            if slots[e][j].replace(value).is_some() {
                return Err(KernelError::IncompleteKernels(format!(
                    "coefficient ({}, {}) given twice",
                    input.name(net),
                    net.channel(e).id
                )));
            }
        }
        let mut coeffs = Vec::with_capacity(slots.len());
        for (e, row) in slots.into_iter().enumerate() {
            let inputs = kernel_inputs(net, w, e);
            let row = row
                .into_iter()
                .zip(&inputs)
                .map(|(v, input)| {
                    v.ok_or_else(|| {
                        KernelError::IncompleteKernels(format!(
                            "missing coefficient ({}, {})",
                            input.name(net),
                            net.channel(e).id
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            coeffs.push(row);
        }
        Ok(LocalKernels {
            field,
            rate: w,
            coeffs,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rate(&self) -> usize {
        self.rate
    }

    /// Coefficients into channel `e`, aligned with `kernel_inputs(net, w, e)`.
    pub fn coefficients(&self, e: ChannelIdx) -> &[Scalar] {
        &self.coeffs[e]
    }

    pub fn set_coefficients(&mut self, e: ChannelIdx, values: Vec<Scalar>) {
        assert_eq!(values.len(), self.coeffs[e].len(), "coefficient count");
        self.coeffs[e] = values;
    }

    pub fn get(&self, net: &Network, input: KernelInput, e: ChannelIdx) -> Option<Scalar> {
        let j = kernel_inputs(net, self.rate, e)
            .iter()
            .position(|&x| x == input)?;
        Some(self.coeffs[e][j])
    }

    /// Every `(input, output, value)` triple, outputs in canonical order.
    pub fn entries<'a>(
        &'a self,
        net: &'a Network,
    ) -> impl Iterator<Item = (KernelInput, ChannelIdx, Scalar)> + 'a {
        self.coeffs.iter().enumerate().flat_map(move |(e, row)| {
            kernel_inputs(net, self.rate, e)
                .into_iter()
                .zip(row.iter().copied())
                .map(move |(input, v)| (input, e, v))
        })
    }

    fn check_shape(&self, net: &Network, w: usize) -> Result<(), KernelError> {
        if w != self.rate {
            return Err(KernelError::IncompleteKernels(format!(
                "kernels were built for rate {}, not {w}",
                self.rate
            )));
        }
        if self.coeffs.len() != net.channel_count() {
            return Err(KernelError::IncompleteKernels(format!(
                "{} channels in network, {} in kernels",
                net.channel_count(),
                self.coeffs.len()
            )));
        }
        for (e, row) in self.coeffs.iter().enumerate() {
            if row.len() != kernel_inputs(net, w, e).len() {
                return Err(KernelError::IncompleteKernels(format!(
                    "wrong coefficient count for channel `{}`",
                    net.channel(e).id
                )));
            }
        }
        Ok(())
    }
}

/// Extended kernels by the recursion
/// `f_e = sum_{d in In(tail e)} k_{d,e} f_d + 1_e`.
///
/// ```
/// use lnec::galois::Field;
/// use lnec::generators;
/// use lnec::kernels::{propagate, KernelInput, LocalKernels};
///
/// let g1 = generators::g1();
/// let f3 = Field::new(3).unwrap();
/// let one = f3.elem(1);
/// let (e1, e2, e3) = (0, 1, 2);
/// let lk = LocalKernels::from_entries(&g1, 1, f3, [
///     (KernelInput::Message(0), e1, one),
///     (KernelInput::Message(0), e2, one),
///     (KernelInput::Channel(e1), e3, one),
/// ]).unwrap();
/// let f = propagate(&g1, 1, &lk).unwrap();
/// let show = |v: &[lnec::galois::Scalar]| v.iter().map(|x| x.value()).collect::<Vec<_>>();
/// assert_eq!(show(&f[e3]), [1, 1, 0, 1]);
/// ```
pub fn propagate(
    net: &Network,
    w: usize,
    lk: &LocalKernels,
) -> Result<Vec<ExtendedKernel>, KernelError> {
    lk.check_shape(net, w)?;
    let field = lk.field;
    let len = w + net.channel_count();
    let mut out: Vec<ExtendedKernel> = Vec::with_capacity(net.channel_count());
    for e in 0..net.channel_count() {
        let mut f = field.unit_vector(len, w + e);
        for (input, &c) in kernel_inputs(net, w, e).iter().zip(lk.coefficients(e)) {
            if c.is_zero() {
                continue;
            }
            match *input {
                KernelInput::Message(k) => f[k] = field.add(f[k], c),
                KernelInput::Channel(d) => field.axpy(&mut f, c, &out[d]),
            }
        }
        out.push(f);
    }
    Ok(out)
}

/// Extended kernels as the columns of `(B over I)(I - F)^{-1}`.
pub fn transfer_matrix_kernels(
    net: &Network,
    w: usize,
    lk: &LocalKernels,
) -> Result<Vec<ExtendedKernel>, KernelError> {
    lk.check_shape(net, w)?;
    let field = lk.field;
    let n = net.channel_count();
    let mut b = vec![vec![Scalar::ZERO; n]; w];
    // I - F
    let mut m = linalg::identity(n);
    for (input, e, c) in lk.entries(net) {
        match input {
            KernelInput::Message(k) => b[k][e] = c,
            KernelInput::Channel(d) => m[d][e] = field.neg(c),
        }
    }
    let inv = linalg::invert(field, &m).expect("I - F is unitriangular in canonical order");
    let top = linalg::mat_mul(field, &b, &inv);
    let full: Vec<Vector> = top.into_iter().chain(inv).collect();
    Ok(linalg::transpose(&full, n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestrictMode {
    /// Keep only the message and pattern coordinates (length `w + |rho|`).
    Compact,
    /// Zero every coordinate outside the message and pattern coordinates.
    Zeroed,
    /// Zero the message and pattern coordinates.
    Complement,
}

/// Restriction of an extended kernel to an error pattern.
pub fn restrict(k: &[Scalar], w: usize, rho: &ErrorPattern, mode: RestrictMode) -> Vector {
    let inside = |i: usize| i < w || rho.contains(i - w);
    match mode {
        RestrictMode::Compact => (0..w)
            .map(|i| k[i])
            .chain(rho.iter().map(|e| k[w + e]))
            .collect(),
        RestrictMode::Zeroed => k
            .iter()
            .enumerate()
            .map(|(i, &x)| if inside(i) { x } else { Scalar::ZERO })
            .collect(),
        RestrictMode::Complement => k
            .iter()
            .enumerate()
            .map(|(i, &x)| if inside(i) { Scalar::ZERO } else { x })
            .collect(),
    }
}

/// Dimension of the span of `vectors`.
pub fn rank_of(field: Field, vectors: &[Vector]) -> usize {
    linalg::rank(field, vectors)
}

/// A subspace of `F_q^len`, held as a reduced row echelon basis so that equal
/// subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    len: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, len: usize) -> Self {
        Subspace {
            field,
            len,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn span(field: Field, len: usize, vectors: &[Vector]) -> Self {
        let mut basis: Vec<Vector> = vectors.to_vec();
        debug_assert!(basis.iter().all(|v| v.len() == len));
        let pivots = linalg::rref(field, &mut basis);
        Subspace {
            field,
            len,
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v` lies
    /// in the subspace.
    fn residue(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let c = self.field.neg(r[p]);
                self.field.axpy(&mut r, c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.residue(v).iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let all: Vec<Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.field, self.len, &all)
    }

    /// `dim(self ∩ other) > 0`, by comparing `dim(self + other)` with
    /// `dim self + dim other`.
    pub fn meets_nontrivially(&self, other: &Subspace) -> bool {
        self.sum(other).dim() < self.dim() + other.dim()
    }

    /// Every vector of the subspace, in lexicographic order of basis
    /// coefficients. Intended for small fields only.
    pub fn vectors(&self) -> impl Iterator<Item = Vector> + '_ {
        CoefficientTuples::new(self.field, self.basis.len(), true)
            .map(move |c| combine(self.field, self.len, &c, &self.basis))
    }
}

fn combine(field: Field, len: usize, coeffs: &[Scalar], generators: &[Vector]) -> Vector {
    let mut v = field.zero_vector(len);
    for (&c, g) in coeffs.iter().zip(generators) {
        if !c.is_zero() {
            field.axpy(&mut v, c, g);
        }
    }
    v
}

/// Coefficient tuples in lexicographic order with the last position varying
/// fastest, optionally including the all-zero tuple first.
struct CoefficientTuples {
    q: u32,
    current: Option<Vec<u32>>,
}

impl CoefficientTuples {
    fn new(field: Field, n: usize, include_zero: bool) -> Self {
        let q = field.modulus() as u32;
        let mut start = vec![0u32; n];
        let current = if include_zero {
            Some(start)
        } else if n == 0 {
            None
        } else {
            start[n - 1] = 1;
            if q > 1 {
                Some(start)
            } else {
                None
            }
        };
        CoefficientTuples { q, current }
    }
}

impl Iterator for CoefficientTuples {
    type Item = Vec<Scalar>;

    fn next(&mut self) -> Option<Vec<Scalar>> {
        let cur = self.current.take()?;
        let item = cur.iter().map(|&x| Scalar::from_residue(x)).collect();
        let mut nxt = cur;
        let mut i = nxt.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            nxt[i] += 1;
            if nxt[i] < self.q {
                self.current = Some(nxt);
                break;
            }
            nxt[i] = 0;
        }
        Some(item)
    }
}

/// The first combination of `generators` (coefficient tuples in lexicographic
/// order starting at `(0, ..., 0, 1)`) that lies outside every forbidden
/// subspace. Returns the coefficients and the vector.
pub fn pick_avoiding_combination(
    field: Field,
    len: usize,
    generators: &[Vector],
    forbidden: &[Subspace],
) -> Result<(Vec<Scalar>, Vector), KernelError> {
    // `c · G` lies in a subspace exactly when `c` lies in the left kernel of
    // the generators' residues, so the search runs in coefficient space.
    let n = generators.len();
    let coefficient_kernel = |residues: Vec<Vector>| {
        let zero = field.zero_vector(len);
        let sol = linalg::solve_left(field, &residues, &zero).expect("homogeneous system");
        Subspace::span(field, n, &sol.nullspace)
    };
    let mut kernels: Vec<Subspace> = Vec::with_capacity(forbidden.len() + 1);
    kernels.push(coefficient_kernel(generators.to_vec()));
    for f in forbidden {
        kernels.push(coefficient_kernel(
            generators.iter().map(|g| f.residue(g)).collect(),
        ));
    }
    kernels.sort_by_key(|k| std::cmp::Reverse(k.dim()));
    let mut union: Vec<Subspace> = Vec::new();
    for k in kernels {
        if k.dim() == n {
            return Err(KernelError::Exhausted);
        }
        if !union.iter().any(|u| k.is_subspace_of(u)) {
            union.push(k);
        }
    }
    // Depth-first in lexicographic order; a block sharing a prefix is skipped
    // whole when one kernel holds the prefix and every later unit vector.
    let unit = |i: usize| {
        let mut u = field.zero_vector(n);
        u[i] = Scalar::ONE;
        u
    };
    let tails: Vec<Vec<bool>> = union
        .iter()
        .map(|k| {
            let mut t = vec![true; n + 1];
            for j in (0..n).rev() {
                t[j] = t[j + 1] && k.contains(&unit(j));
            }
            t
        })
        .collect();
    let covered = |prefix: &[Scalar], depth: usize| {
        union
            .iter()
            .zip(&tails)
            .any(|(k, t)| t[depth] && k.contains(prefix))
    };
    let q = field.modulus() as u32;
    let mut coeffs = field.zero_vector(n);
    let mut depth = 0;
    loop {
        if !covered(&coeffs, depth) {
            if depth == n {
                let v = combine(field, len, &coeffs, generators);
                return Ok((coeffs, v));
            }
            depth += 1;
            continue;
        }
        // Advance to the next block at this depth, backtracking when exhausted.
        loop {
            if depth == 0 {
                return Err(KernelError::Exhausted);
            }
            let i = depth - 1;
            let next = coeffs[i].value() + 1;
            if next < q {
                coeffs[i] = Scalar::from_residue(next);
                break;
            }
            coeffs[i] = Scalar::ZERO;
            depth -= 1;
        }
    }
}

/// A vector of `ambient` outside every forbidden subspace, searching basis
/// combinations lexicographically.
///
/// ```
/// use lnec::galois::Field;
/// use lnec::kernels::{pick_avoiding, Subspace};
/// let f3 = Field::new(3).unwrap();
/// let v = |a, b| vec![f3.elem(a), f3.elem(b)];
/// let plane = Subspace::span(f3, 2, &[v(1, 0), v(0, 1)]);
/// let line = Subspace::span(f3, 2, &[v(1, 0)]);
/// assert_eq!(pick_avoiding(&plane, &[line]).unwrap(), v(0, 1));
/// ```
pub fn pick_avoiding(ambient: &Subspace, forbidden: &[Subspace]) -> Result<Vector, KernelError> {
    pick_avoiding_combination(ambient.field, ambient.len, &ambient.basis, forbidden).map(|(_, v)| v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn vals(v: &[Scalar]) -> Vec<u32> {
        v.iter().map(|x| x.value()).collect()
    }

    fn g1_reference(f: Field) -> (Network, LocalKernels) {
        let g1 = generators::g1();
        let one = f.elem(1);
        let lk = LocalKernels::from_entries(
            &g1,
            1,
            f,
            [
                (KernelInput::Message(0), 0, one),
                (KernelInput::Message(0), 1, one),
                (KernelInput::Channel(0), 2, one),
            ],
        )
        .unwrap();
        (g1, lk)
    }

    fn random_kernels(net: &Network, w: usize, f: Field, seed: u64) -> LocalKernels {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut lk = LocalKernels::zero(net, w, f);
        for e in 0..net.channel_count() {
            let n = lk.coefficients(e).len();
            lk.set_coefficients(
                e,
                (0..n)
                    .map(|_| f.elem(rng.random_range(0..f.modulus())))
                    .collect(),
            );
        }
        lk
    }

    #[test]
    fn g1_example_kernels() {
        let f3 = Field::new(3).unwrap();
        let (g1, lk) = g1_reference(f3);
        for f in [
            propagate(&g1, 1, &lk).unwrap(),
            transfer_matrix_kernels(&g1, 1, &lk).unwrap(),
        ] {
            assert_eq!(vals(&f[0]), [1, 1, 0, 0]);
            assert_eq!(vals(&f[1]), [1, 0, 1, 0]);
            assert_eq!(vals(&f[2]), [1, 1, 0, 1]);
        }
        assert_eq!(index_legend(&g1, 1), ["d'1", "e1", "e2", "e3"]);
    }

    #[test]
    fn zero_kernels_give_indicators() {
        let f5 = Field::new(5).unwrap();
        let net = generators::g3();
        let lk = LocalKernels::zero(&net, 2, f5);
        let f = propagate(&net, 2, &lk).unwrap();
        for (e, k) in f.iter().enumerate() {
            assert_eq!(k, &f5.unit_vector(2 + net.channel_count(), 2 + e));
        }
    }

    #[test]
    fn single_channel_kernel() {
        let f7 = Field::new(7).unwrap();
        let net = crate::netgraph::parse_network(
            r#"{"nodes":["s","t"],"source":"s","sinks":["t"],"channels":[{"id":"e","tail":"s","head":"t"}]}"#,
        )
        .unwrap();
        let lk =
            LocalKernels::from_entries(&net, 1, f7, [(KernelInput::Message(0), 0, f7.elem(4))])
                .unwrap();
        assert_eq!(vals(&propagate(&net, 1, &lk).unwrap()[0]), [4, 1]);
    }

    #[test]
    fn incomplete_and_non_adjacent_entries() {
        let f3 = Field::new(3).unwrap();
        let g1 = generators::g1();
        let one = f3.elem(1);
        assert!(matches!(
            LocalKernels::from_entries(&g1, 1, f3, [(KernelInput::Message(0), 0, one)]),
            Err(KernelError::IncompleteKernels(_))
        ));
        assert!(matches!(
            LocalKernels::from_entries(&g1, 1, f3, [(KernelInput::Channel(1), 2, one)]),
            Err(KernelError::NotAdjacent { .. })
        ));
        let (_, lk) = g1_reference(f3);
        assert!(matches!(
            propagate(&g1, 2, &lk),
            Err(KernelError::IncompleteKernels(_))
        ));
    }

    #[test]
    fn g2_random_cross_check() {
        let f11 = Field::new(11).unwrap();
        let net = generators::g2();
        for seed in 0..20 {
            let lk = random_kernels(&net, 2, f11, seed);
            assert_eq!(
                propagate(&net, 2, &lk).unwrap(),
                transfer_matrix_kernels(&net, 2, &lk).unwrap()
            );
        }
    }

    #[test]
    fn restrict_examples() {
        let f3 = Field::new(3).unwrap();
        let (g1, lk) = g1_reference(f3);
        let f = propagate(&g1, 1, &lk).unwrap();
        let e3 = ErrorPattern::new(vec![2]);
        assert_eq!(
            vals(&restrict(&f[2], 1, &e3, RestrictMode::Compact)),
            [1, 1]
        );
        assert_eq!(
            vals(&restrict(
                &f[2],
                1,
                &ErrorPattern::empty(),
                RestrictMode::Compact
            )),
            [1]
        );
        let all = ErrorPattern::new(vec![0, 1, 2]);
        assert_eq!(restrict(&f[2], 1, &all, RestrictMode::Zeroed), f[2]);
    }

    #[test]
    fn rank_examples() {
        let f3 = Field::new(3).unwrap();
        assert_eq!(rank_of(f3, &[]), 0);
        let v = vec![f3.elem(1), f3.elem(2)];
        assert_eq!(rank_of(f3, &[v.clone(), f3.scale(f3.elem(2), &v)]), 1);
        // identity rows for message plus pattern coordinates
        let w = 2;
        let rho = ErrorPattern::new(vec![1, 3]);
        let len = w + 5;
        let rows: Vec<Vector> = (0..w)
            .chain(rho.iter().map(|e| w + e))
            .map(|i| f3.unit_vector(len, i))
            .collect();
        assert_eq!(rank_of(f3, &rows), w + rho.len());
    }

    #[test]
    fn pick_avoiding_examples() {
        let f3 = Field::new(3).unwrap();
        let v = |a, b| vec![f3.elem(a), f3.elem(b)];
        let line = Subspace::span(f3, 2, &[v(1, 1)]);
        assert_eq!(
            pick_avoiding(&line, std::slice::from_ref(&line)),
            Err(KernelError::Exhausted)
        );
        let plane = Subspace::span(f3, 2, &[v(1, 0), v(0, 1)]);
        let forbidden = [
            Subspace::span(f3, 2, &[v(1, 0)]),
            Subspace::span(f3, 2, &[v(0, 1)]),
            Subspace::span(f3, 2, &[v(1, 1)]),
        ];
        let got = pick_avoiding(&plane, &forbidden).unwrap();
        assert!(forbidden.iter().all(|f| !f.contains(&got)));
        assert_eq!(got, v(1, 2));
        // all four lines of F_3^2 cover the plane
        let mut all = forbidden.to_vec();
        all.push(Subspace::span(f3, 2, &[v(1, 2)]));
        assert_eq!(pick_avoiding(&plane, &all), Err(KernelError::Exhausted));
    }

    #[test]
    fn subspace_canonical_form() {
        let f5 = Field::new(5).unwrap();
        let v = |a, b, c| vec![f5.elem(a), f5.elem(b), f5.elem(c)];
        let a = Subspace::span(f5, 3, &[v(1, 2, 3), v(0, 1, 1)]);
        let b = Subspace::span(f5, 3, &[v(1, 3, 4), v(2, 4, 1), v(1, 2, 3)]);
        assert_eq!(a, b);
        assert_eq!(a.vectors().count(), 25);
        assert!(a.contains(&v(1, 3, 4)));
        assert!(!a.contains(&v(0, 0, 1)));
        let line = Subspace::span(f5, 3, &[v(0, 0, 1)]);
        assert!(!a.meets_nontrivially(&line));
        assert!(a.meets_nontrivially(&Subspace::span(f5, 3, &[v(0, 2, 2)])));
    }

    proptest! {
        #[test]
        fn restrict_parts_sum_to_kernel(seed in any::<u64>(), mask in any::<u16>()) {
            let f7 = Field::new(7).unwrap();
            let net = generators::g3();
            let lk = random_kernels(&net, 2, f7, seed);
            let f = propagate(&net, 2, &lk).unwrap();
            let rho: ErrorPattern = (0..net.channel_count()).filter(|e| mask >> e & 1 == 1).collect();
            for k in &f {
                let z = restrict(k, 2, &rho, RestrictMode::Zeroed);
                let c = restrict(k, 2, &rho, RestrictMode::Complement);
                prop_assert_eq!(&f7.vec_add(&z, &c), k);
                prop_assert_eq!(restrict(k, 2, &rho, RestrictMode::Compact).len(), 2 + rho.len());
            }
        }

        #[test]
        fn two_kernel_formulas_agree(seed in any::<u64>(), q in prop::sample::select(vec![2u64, 3, 5, 13])) {
            let f = Field::new(q).unwrap();
            for net in [generators::g1(), generators::combination(4, 2).unwrap()] {
                let lk = random_kernels(&net, 1, f, seed);
                prop_assert_eq!(propagate(&net, 1, &lk).unwrap(), transfer_matrix_kernels(&net, 1, &lk).unwrap());
            }
        }

        #[test]
        fn kernels_are_causal(seed in any::<u64>()) {
            let f5 = Field::new(5).unwrap();
            let net = generators::g3();
            let w = 2;
            let lk = random_kernels(&net, w, f5, seed);
            let f = propagate(&net, w, &lk).unwrap();
            for (e, k) in f.iter().enumerate() {
                prop_assert_eq!(k[w + e], Scalar::ONE);
                for d in e + 1..net.channel_count() {
                    prop_assert!(k[w + d].is_zero());
                }
            }
        }

        #[test]
        fn pick_avoiding_postcondition(seed in any::<u64>()) {
            let f3 = Field::new(3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rand_vec = |n: usize| -> Vector { (0..n).map(|_| f3.elem(rng.random_range(0..3))).collect() };
            let ambient = Subspace::span(f3, 4, &[rand_vec(4), rand_vec(4), rand_vec(4)]);
            let forbidden: Vec<Subspace> = (0..3).map(|_| Subspace::span(f3, 4, &[rand_vec(4)])).collect();
            match pick_avoiding(&ambient, &forbidden) {
                Ok(v) => {
                    prop_assert!(ambient.contains(&v));
                    prop_assert!(forbidden.iter().all(|f| !f.contains(&v)));
                }
                Err(_) => {
                    prop_assert!(ambient.vectors().all(|v| forbidden.iter().any(|f| f.contains(&v))));
                }
            }
        }
    }
}
