use std::collections::HashMap;

use num_complex::Complex;
use num_traits::Zero;

use crate::algebra::SymbolGroup;
use crate::error::{Error, Result};
use crate::scalar::{complex_is_zero, Scalar};

/// Pure state on `n` parties of dimension `d`, stored as
/// `(1/√norm_sq) Σ a_x |x⟩` with basis strings packed into integers
/// (party 0 most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct SparseState<S> {
    d: usize,
    n: usize,
    terms: Vec<(u64, Complex<S>)>,
    norm_sq: S,
}

pub(crate) fn basis_capacity(d: usize, n: usize) -> Result<u64> {
    (d as u64)
        .checked_pow(n as u32)
        .filter(|&c| c < 1 << 62)
        .ok_or_else(|| Error::ResourceGuard(format!("{d}^{n} basis states do not fit an index")))
}

pub(crate) fn pack(d: usize, symbols: &[u8]) -> u64 {
    symbols.iter().fold(0u64, |acc, &s| acc * d as u64 + s as u64)
}

pub(crate) fn unpack(d: usize, n: usize, mut idx: u64, out: &mut [u8]) {
    for slot in out[..n].iter_mut().rev() {
        *slot = (idx % d as u64) as u8;
        idx /= d as u64;
    }
}

impl<S: Scalar> SparseState<S> {
    /// Builds a state from `(basis index, amplitude numerator)` pairs.
    /// Zero amplitudes are dropped; repeated indices are an error.
    pub fn from_indexed(d: usize, n: usize, mut terms: Vec<(u64, Complex<S>)>) -> Result<Self> {
        let cap = basis_capacity(d, n)?;
        terms.retain(|(_, a)| !complex_is_zero(a));
        terms.sort_by_key(|(i, _)| *i);
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::invalid("repeated basis string in state"));
        }
        if let Some((i, _)) = terms.iter().find(|(i, _)| *i >= cap) {
            return Err(Error::invalid(format!("basis index {i} out of range")));
        }
        let norm_sq = terms.iter().fold(S::zero(), |acc, (_, a)| acc + a.norm_sqr());
        if norm_sq.approx_eq(&S::zero()) {
            return Err(Error::invalid("zero state"));
        }
        Ok(SparseState { d, n, terms, norm_sq })
    }

    /// Equal superposition of the given basis strings.
    pub fn uniform<'a>(d: usize, n: usize, rows: impl IntoIterator<Item = &'a [u8]>) -> Result<Self> {
        let terms = rows
            .into_iter()
            .map(|r| {
                if r.len() != n || r.iter().any(|&s| s as usize >= d) {
                    return Err(Error::invalid("basis string does not match (d, N)"));
                }
                Ok((pack(d, r), Complex::new(S::one(), S::zero())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indexed(d, n, terms)
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn parties(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &Complex<S>)> {
        self.terms.iter().map(|(i, a)| (i, a))
    }

    /// Squared norm of the unnormalized amplitude vector.
    pub fn norm_sq(&self) -> &S {
        &self.norm_sq
    }

    pub fn amplitude(&self, basis: &[u8]) -> Option<&Complex<S>> {
        let idx = pack(self.d, basis);
        self.terms
            .binary_search_by_key(&idx, |(i, _)| *i)
            .ok()
            .map(|p| &self.terms[p].1)
    }

    pub fn basis_string(&self, idx: u64) -> Vec<u8> {
        let mut out = vec![0u8; self.n];
        unpack(self.d, self.n, idx, &mut out);
        out
    }

    /// `⟨self|other⟩` without normalization, i.e. `Σ conj(a_x) b_x`.
    pub fn raw_overlap(&self, other: &Self) -> Complex<S> {
        let (mut i, mut j) = (0, 0);
        let mut acc = Complex::zero();
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc = acc + a.1.conj() * b.1.clone();
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// `|⟨self|other⟩|²` for the normalized states.
    pub fn overlap_sq(&self, other: &Self) -> S {
        self.raw_overlap(other).norm_sqr() / (self.norm_sq.clone() * other.norm_sq.clone())
    }

    /// Same state up to a global phase.
    pub fn same_ray(&self, other: &Self) -> bool {
        self.d == other.d && self.n == other.n && self.overlap_sq(other).approx_eq(&S::one())
    }

    /// Applies `s ↦ s + shift` on one party.
    pub fn shift_party(&self, party: usize, shift: u8, group: &SymbolGroup) -> Result<Self> {
        if party >= self.n {
            return Err(Error::invalid(format!("party {party} out of range")));
        }
        let mut buf = vec![0u8; self.n];
        let terms = self
            .terms
            .iter()
            .map(|(i, a)| {
                unpack(self.d, self.n, *i, &mut buf);
                buf[party] = group.add(buf[party], shift);
                (pack(self.d, &buf), a.clone())
            })
            .collect();
        Self::from_indexed(self.d, self.n, terms)
    }
}

/// One block of array rows read as an equal superposition.
pub fn block_to_state<'a, S: Scalar>(
    d: usize,
    n: usize,
    rows: impl IntoIterator<Item = &'a [u8]>,
) -> Result<SparseState<S>> {
    SparseState::uniform(d, n, rows)
}

/// Uniform mixture `(1/m) Σ |φ_i⟩⟨φ_i|`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState<S> {
    d: usize,
    n: usize,
    components: Vec<SparseState<S>>,
}

impl<S: Scalar> MixedState<S> {
    pub fn new(components: Vec<SparseState<S>>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::invalid("mixture needs at least one component"))?;
        let (d, n) = (first.d, first.n);
        if components.iter().any(|c| c.d != d || c.n != n) {
            return Err(Error::Dimension("mixture components disagree on (d, N)".into()));
        }
        Ok(MixedState { d, n, components })
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn parties(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[SparseState<S>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Gram matrix entries `Σ_x conj(a_ix) a_jx` for every pair of
    /// components sharing a basis string, keyed `(i, j)` with `i ≤ j`.
    fn raw_gram(&self) -> HashMap<(u32, u32), Complex<S>> {
        let mut by_basis: HashMap<u64, Vec<(u32, &Complex<S>)>> = HashMap::new();
        for (ci, c) in self.components.iter().enumerate() {
            for (x, a) in c.terms() {
                by_basis.entry(*x).or_default().push((ci as u32, a));
            }
        }
        let mut gram: HashMap<(u32, u32), Complex<S>> = HashMap::new();
        for list in by_basis.values() {
            for (p, (i, a)) in list.iter().enumerate() {
                for (j, b) in &list[p..] {
                    let key = if i <= j { (*i, *j) } else { (*j, *i) };
                    let v = if i <= j {
                        a.conj() * (*b).clone()
                    } else {
                        b.conj() * (*a).clone()
                    };
                    let cell = gram.entry(key).or_insert_with(Complex::zero);
                    *cell = cell.clone() + v;
                }
            }
        }
        gram
    }

    /// First pair of distinct components with nonzero overlap.
    pub fn first_overlap(&self) -> Option<(usize, usize)> {
        let mut hits: Vec<(u32, u32)> = self
            .raw_gram()
            .into_iter()
            .filter(|((i, j), v)| i != j && !complex_is_zero(v))
            .map(|(k, _)| k)
            .collect();
        hits.sort_unstable();
        hits.first().map(|&(i, j)| (i as usize, j as usize))
    }
}

impl<S: Scalar> From<SparseState<S>> for MixedState<S> {
    fn from(s: SparseState<S>) -> Self {
        MixedState {
            d: s.d,
            n: s.n,
            components: vec![s],
        }
    }
}

/// `Tr ρ² = (1/m²) Σ_{i,j} |⟨φ_i|φ_j⟩|²`, summed over the Gram matrix.
pub fn mixture_purity<S: Scalar>(mix: &MixedState<S>) -> S {
    let m = mix.components.len() as i64;
    let mut acc = S::zero();
    for ((i, j), g) in mix.raw_gram() {
        let (ci, cj) = (&mix.components[i as usize], &mix.components[j as usize]);
        let term = g.norm_sqr() / (ci.norm_sq.clone() * cj.norm_sq.clone());
        acc = acc + if i == j { term } else { term.clone() + term };
    }
    acc / S::from_int(m * m)
}

/// Result of appending party-shifted copies to a mixture.
#[derive(Debug, Clone)]
pub struct LoweredMixture<S> {
    pub mixture: MixedState<S>,
    /// First pair of components found to overlap, if any.
    pub overlap: Option<(usize, usize)>,
    pub purity: S,
}

/// Appends a copy of every component with one party's symbol shifted by
/// `shift` (for qubits this is `I ⊗ … ⊗ σ_x` on that party).
pub fn lower_purity<S: Scalar>(
    mix: &MixedState<S>,
    party: usize,
    shift: u8,
    group: &SymbolGroup,
) -> Result<LoweredMixture<S>> {
    if shift == 0 || shift as usize >= mix.d {
        return Err(Error::invalid(format!("shift {shift} outside 1..{}", mix.d)));
    }
    let mut components = mix.components.clone();
    for c in &mix.components {
        components.push(c.shift_party(party, shift, group)?);
    }
    let mixture = MixedState::new(components)?;
    let overlap = mixture.first_overlap();
    let purity = mixture_purity(&mixture);
    Ok(LoweredMixture {
        mixture,
        overlap,
        purity,
    })
}
