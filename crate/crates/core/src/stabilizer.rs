//! Qubit states from GF(4) generator matrices.
//!
//! Each row of an `m × N` matrix over GF(4) is read as an N-qubit Pauli word
//! `G_i`. When the rows commute, are independent and every nonzero subset sum
//! has weight at least `k + 1`, the operator `ρ = 2^-N ∏(I + G_i)` is a
//! k-uniform state with purity `2^(m-N)`.

use std::collections::HashSet;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::algebra::{word_product, words_commute, Gf4, PauliWord};
use crate::error::{Error, Result};
use crate::quantum::{MixedState, SparseState};
use crate::scalar::{complex_is_zero, i_pow, Scalar};

/// Largest qubit count accepted by the dense routines.
pub const DENSE_QUBIT_LIMIT: usize = 12;
const SUBSET_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    qubits: usize,
    rows: Vec<Vec<Gf4>>,
}

impl GeneratorMatrix {
    pub fn new(qubits: usize, rows: Vec<Vec<Gf4>>) -> Result<Self> {
        if qubits == 0 {
            return Err(Error::invalid("generator matrix needs at least one qubit"));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != qubits) {
            return Err(Error::Dimension(format!(
                "row of length {} in {}-qubit matrix",
                r.len(),
                qubits
            )));
        }
        Ok(GeneratorMatrix { qubits, rows })
    }

    /// Builds a matrix from digit strings such as `["0011111", "0102222"]`.
    pub fn from_rows(rows: &[&str]) -> Result<Self> {
        let words = rows
            .iter()
            .map(|r| PauliWord::from_digits(r).map(|w| w.labels().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let n = words.first().map(Vec::len).unwrap_or(0);
        Self::new(n, words)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn generators(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Gf4>] {
        &self.rows
    }

    pub fn word(&self, i: usize) -> PauliWord {
        PauliWord::new(self.rows[i].clone(), 0)
    }

    pub fn words(&self) -> Vec<PauliWord> {
        (0..self.rows.len()).map(|i| self.word(i)).collect()
    }

    fn subset_guard(&self) -> Result<()> {
        if self.rows.len() > SUBSET_LIMIT {
            return Err(Error::ResourceGuard(format!(
                "{} generators exceed the subset enumeration limit {SUBSET_LIMIT}",
                self.rows.len()
            )));
        }
        Ok(())
    }

    /// Calls `f` with every nonempty subset sum of the rows, in Gray-code
    /// order, so each step is a single row update.
    fn for_each_subset_sum(&self, mut f: impl FnMut(&[Gf4])) {
        let m = self.rows.len();
        let mut acc = vec![Gf4::ZERO; self.qubits];
        for i in 1usize..(1 << m) {
            let bit = i.trailing_zeros() as usize;
            for (a, &g) in acc.iter_mut().zip(&self.rows[bit]) {
                *a = *a + g;
            }
            f(&acc);
        }
    }

    /// Every pair of rows anticommutes on an even number of positions.
    pub fn check_commuting(&self) -> bool {
        let words = self.words();
        words.iter().enumerate().all(|(i, a)| {
            words[i + 1..]
                .iter()
                .all(|b| words_commute(a, b).expect("rows share a length"))
        })
    }

    /// Only the empty subset of rows sums to the zero row.
    pub fn check_independence(&self) -> Result<bool> {
        self.subset_guard()?;
        let mut independent = true;
        self.for_each_subset_sum(|s| {
            if s.iter().all(|x| x.is_zero()) {
                independent = false;
            }
        });
        Ok(independent)
    }

    /// Minimum GF(4) weight over nonempty subset sums (`None` when `m = 0`).
    pub fn min_subset_weight(&self) -> Result<Option<usize>> {
        self.subset_guard()?;
        let mut best: Option<usize> = None;
        self.for_each_subset_sum(|s| {
            let w = s.iter().filter(|x| !x.is_zero()).count();
            best = Some(best.map_or(w, |b| b.min(w)));
        });
        Ok(best)
    }

    /// Every nonempty subset sum has at most `N - k - 1` zero entries.
    pub fn check_uniformity(&self, k: usize) -> Result<bool> {
        if k == 0 || k >= self.qubits {
            return Err(Error::invalid(format!("uniformity k={k} outside 1..{}", self.qubits)));
        }
        Ok(self.min_subset_weight()?.is_none_or(|w| w > k))
    }

    /// Largest k for which the uniformity condition holds.
    pub fn max_k(&self) -> Result<usize> {
        if !self.check_independence()? {
            return Err(Error::Verification("generator rows are not independent".into()));
        }
        Ok(match self.min_subset_weight()? {
            Some(w) => (w - 1).min(self.qubits - 1),
            None => self.qubits - 1,
        })
    }

    /// Commuting, independent and at least 1-uniform.
    pub fn validate(&self) -> Result<()> {
        if !self.check_commuting() {
            return Err(Error::Verification("generators do not commute".into()));
        }
        if self.max_k()? < 1 {
            return Err(Error::Verification("generators give no uniformity".into()));
        }
        Ok(())
    }

    /// The `2^m` elements of the generated group, with phases, as
    /// products `G_1^{j_1} ⋯ G_m^{j_m}`.
    pub fn group_elements(&self) -> Result<Vec<PauliWord>> {
        self.subset_guard()?;
        let m = self.rows.len();
        let mut out = Vec::with_capacity(1 << m);
        let mut acc = PauliWord::identity(self.qubits);
        out.push(acc.clone());
        for i in 1usize..(1 << m) {
            let bit = i.trailing_zeros() as usize;
            // Generators commute and square to I, so right-multiplying toggles
            // membership without disturbing the phase of the other factors.
            acc = word_product(&acc, &self.word(bit))?;
            out.push(acc.clone());
        }
        Ok(out)
    }

    fn dense_guard(&self) -> Result<()> {
        if self.qubits > DENSE_QUBIT_LIMIT {
            return Err(Error::ResourceGuard(format!(
                "{} qubits exceed the dense limit {DENSE_QUBIT_LIMIT}",
                self.qubits
            )));
        }
        Ok(())
    }

    /// `ρ = 2^-N Σ_{subsets} G_1^{j_1} ⋯ G_m^{j_m}`, assembled word by word.
    pub fn synthesize_density<S: Scalar>(&self) -> Result<DenseOperator<S>> {
        self.dense_guard()?;
        self.validate()?;
        let dim = 1usize << self.qubits;
        let scale = Complex::new(S::from_ratio(1, dim as i64), S::zero());
        let mut rho = DenseOperator::zeros(2, self.qubits);
        for w in self.group_elements()? {
            for x in 0..dim {
                let (e, y) = w.apply_to_basis(x);
                let v = i_pow::<S>(e) * scale.clone();
                let cell = rho.entry_mut(y, x);
                *cell = cell.clone() + v;
            }
        }
        Ok(rho)
    }

    /// Pure-state decomposition: `∏(I + G_i)` applied to basis vectors,
    /// one state per orbit, each scaled so its first nonzero amplitude is 1.
    pub fn pure_decomposition<S: Scalar>(&self) -> Result<Vec<SparseState<S>>> {
        self.dense_guard()?;
        self.validate()?;
        let dim = 1usize << self.qubits;
        let group = self.group_elements()?;
        let mut covered = vec![false; dim];
        let mut states = Vec::new();
        for x in 0..dim {
            if covered[x] {
                continue;
            }
            let mut amps: Vec<Complex<S>> = vec![Complex::zero(); dim];
            let mut support = Vec::new();
            for w in &group {
                let (e, y) = w.apply_to_basis(x);
                if complex_is_zero(&amps[y]) {
                    support.push(y);
                }
                amps[y] = amps[y].clone() + i_pow::<S>(e);
            }
            support.sort_unstable();
            support.retain(|&y| !complex_is_zero(&amps[y]));
            let Some(&lead) = support.first() else {
                continue;
            };
            for &y in &support {
                covered[y] = true;
            }
            let lead_amp = amps[lead].clone();
            let terms: Vec<(u64, Complex<S>)> = support
                .iter()
                .map(|&y| (y as u64, amps[y].clone() / lead_amp.clone()))
                .collect();
            states.push(SparseState::from_indexed(2, self.qubits, terms)?);
        }
        let expected = 1usize << (self.qubits - self.rows.len());
        if states.len() != expected {
            return Err(Error::Verification(format!(
                "decomposition produced {} states, expected {expected}",
                states.len()
            )));
        }
        Ok(states)
    }

    /// Uniform mixture of the pure decomposition.
    pub fn mixture<S: Scalar>(&self) -> Result<MixedState<S>> {
        MixedState::new(self.pure_decomposition()?)
    }

    /// `2^(m - N)` as the purity the construction predicts.
    pub fn predicted_purity(&self) -> (u64, u64) {
        (1, 1u64 << self.qubits.saturating_sub(self.rows.len()))
    }
}

/// Square operator on `n` qudits of dimension `d`, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator<S> {
    d: usize,
    qudits: usize,
    dim: usize,
    entries: Vec<Complex<S>>,
}

impl<S: Scalar> DenseOperator<S> {
    pub fn zeros(d: usize, qudits: usize) -> Self {
        let dim = d.pow(qudits as u32);
        DenseOperator {
            d,
            qudits,
            dim,
            entries: vec![Complex::zero(); dim * dim],
        }
    }

    pub fn identity(d: usize, qudits: usize) -> Self {
        let mut op = Self::zeros(d, qudits);
        for i in 0..op.dim {
            *op.entry_mut(i, i) = Complex::one();
        }
        op
    }

    /// `I / d^n`.
    pub fn maximally_mixed(d: usize, qudits: usize) -> Self {
        let mut op = Self::zeros(d, qudits);
        let v = Complex::new(S::from_ratio(1, op.dim as i64), S::zero());
        for i in 0..op.dim {
            *op.entry_mut(i, i) = v.clone();
        }
        op
    }

    pub fn from_entries(d: usize, qudits: usize, entries: Vec<Complex<S>>) -> Result<Self> {
        let dim = d.pow(qudits as u32);
        if entries.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "{} entries for a {dim}x{dim} operator",
                entries.len()
            )));
        }
        Ok(DenseOperator {
            d,
            qudits,
            dim,
            entries,
        })
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn qudits(&self) -> usize {
        self.qudits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> &Complex<S> {
        &self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn entry_mut(&mut self, row: usize, col: usize) -> &mut Complex<S> {
        &mut self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> Complex<S> {
        (0..self.dim).fold(Complex::zero(), |acc, i| acc + self.entry(i, i).clone())
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.dim).all(|i| {
            (i..self.dim).all(|j| {
                let a = self.entry(i, j);
                let b = self.entry(j, i).conj();
                a.re.approx_eq(&b.re) && a.im.approx_eq(&b.im)
            })
        })
    }

    /// Product skipping zero entries; stabilizer operators are sparse.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("{} vs {}", self.dim, other.dim)));
        }
        let n = self.dim;
        let rows_nz: Vec<Vec<usize>> = (0..n)
            .map(|k| (0..n).filter(|&j| !complex_is_zero(other.entry(k, j))).collect())
            .collect();
        let mut out = Self::zeros(self.d, self.qudits);
        for i in 0..n {
            for (k, nz) in rows_nz.iter().enumerate() {
                let a = self.entry(i, k);
                if complex_is_zero(a) {
                    continue;
                }
                for &j in nz {
                    let cell = out.entry_mut(i, j);
                    *cell = cell.clone() + a.clone() * other.entry(k, j).clone();
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, s: &S) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.clone() * s.clone();
        }
        out
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.re.approx_eq(&b.re) && a.im.approx_eq(&b.im))
    }

    /// `Tr(ρ²)`; the imaginary part must vanish.
    pub fn purity(&self) -> Result<S> {
        let n = self.dim;
        let mut acc: Complex<S> = Complex::zero();
        for i in 0..n {
            for j in 0..n {
                let a = self.entry(i, j);
                if complex_is_zero(a) {
                    continue;
                }
                acc = acc + a.clone() * self.entry(j, i).clone();
            }
        }
        if !acc.im.approx_eq(&S::zero()) {
            return Err(Error::Verification("Tr(ρ²) has an imaginary part".into()));
        }
        Ok(acc.re)
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !complex_is_zero(e)).count()
    }

    /// `|ψ⟩⟨ψ|`-weighted sum of sparse states: `Σ w |ψ_i⟩⟨ψ_i| / ⟨ψ_i|ψ_i⟩`.
    pub fn from_mixture(mix: &MixedState<S>) -> Result<Self> {
        let d = mix.local_dim();
        let n = mix.parties();
        let dim = d
            .checked_pow(n as u32)
            .filter(|&x| x <= 1 << DENSE_QUBIT_LIMIT)
            .ok_or_else(|| Error::ResourceGuard(format!("{d}^{n} is too large for a dense operator")))?;
        let mut op = Self::zeros(d, n);
        let weight = S::from_ratio(1, mix.components().len() as i64);
        for c in mix.components() {
            let w = weight.clone() / c.norm_sq().clone();
            for (u, a) in c.terms() {
                for (v, b) in c.terms() {
                    let cell = op.entry_mut(*u as usize, *v as usize);
                    *cell = cell.clone() + a.clone() * b.conj() * w.clone();
                }
            }
        }
        debug_assert_eq!(op.dim, dim);
        Ok(op)
    }
}

/// All rows pairwise distinct as words (duplicate generators break independence).
pub fn has_duplicate_rows(g: &GeneratorMatrix) -> bool {
    let mut seen = HashSet::new();
    g.rows().iter().any(|r| !seen.insert(r.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn example_seven_qubit() -> GeneratorMatrix {
        GeneratorMatrix::from_rows(&["0011111", "0102222", "1020233", "2201213"]).unwrap()
    }

    #[test]
    fn seven_qubit_checks() {
        let g = example_seven_qubit();
        assert!(g.check_commuting());
        assert!(g.check_independence().unwrap());
        assert!(g.check_uniformity(4).unwrap());
        assert!(!g.check_uniformity(6).unwrap());
        assert_eq!(g.max_k().unwrap(), 4);
    }

    #[test]
    fn min_weight_by_brute_force() {
        // Enumerate subsets directly, without the Gray-code walk.
        let g = example_seven_qubit();
        let mut best = usize::MAX;
        for mask in 1u32..16 {
            let mut acc = [Gf4::ZERO; 7];
            for (i, row) in g.rows().iter().enumerate() {
                if mask & (1 << i) != 0 {
                    for (a, &x) in acc.iter_mut().zip(row) {
                        *a = *a + x;
                    }
                }
            }
            best = best.min(acc.iter().filter(|x| !x.is_zero()).count());
        }
        assert_eq!(best, 5);
        assert_eq!(g.min_subset_weight().unwrap(), Some(5));
    }

    #[test]
    fn noncommuting_rows() {
        let g = GeneratorMatrix::from_rows(&["10", "20"]).unwrap();
        assert!(!g.check_commuting());
        let single = GeneratorMatrix::from_rows(&["123"]).unwrap();
        assert!(single.check_commuting());
    }

    #[test]
    fn dependent_rows() {
        let dup = GeneratorMatrix::from_rows(&["0111", "0111"]).unwrap();
        assert!(!dup.check_independence().unwrap());
        assert!(has_duplicate_rows(&dup));
        let three = GeneratorMatrix::from_rows(&["11", "22", "33"]).unwrap();
        assert!(!three.check_independence().unwrap());
        assert!(three.max_k().is_err());
    }

    #[test]
    fn single_full_weight_row() {
        let g = GeneratorMatrix::from_rows(&["1111"]).unwrap();
        assert_eq!(g.max_k().unwrap(), 3);
    }

    #[test]
    fn empty_generator_set_is_maximally_mixed() {
        let g = GeneratorMatrix::new(3, vec![]).unwrap();
        let rho: DenseOperator<Rational> = g.synthesize_density().unwrap();
        assert_eq!(rho, DenseOperator::maximally_mixed(2, 3));
        assert_eq!(rho.purity().unwrap(), Rational::new(1, 8));
    }

    #[test]
    fn full_stabilizer_is_pure() {
        // Bell-type state on two qubits: XX, ZZ.
        let g = GeneratorMatrix::from_rows(&["11", "33"]).unwrap();
        let rho: DenseOperator<Rational> = g.synthesize_density().unwrap();
        assert_eq!(rho.purity().unwrap(), Rational::one());
        let states = g.pure_decomposition::<Rational>().unwrap();
        assert_eq!(states.len(), 1);
        assert_eq!(states[0].len(), 2);
    }

    #[test]
    fn trace_is_one_and_projector_relation_holds() {
        let g = example_seven_qubit();
        let rho: DenseOperator<Rational> = g.synthesize_density().unwrap();
        assert_eq!(rho.trace(), Complex::one());
        assert!(rho.is_hermitian());
        let sq = rho.matmul(&rho).unwrap();
        assert_eq!(sq, rho.scaled(&Rational::new(1, 8)));
    }

    #[test]
    fn float_instantiation_agrees() {
        let g = example_seven_qubit();
        let rho: DenseOperator<f64> = g.synthesize_density().unwrap();
        assert!((rho.purity().unwrap() - 0.125).abs() < 1e-12);
    }

    #[test]
    fn guards() {
        let g = GeneratorMatrix::new(13, vec![vec![Gf4::ONE; 13]]).unwrap();
        assert!(matches!(
            g.synthesize_density::<Rational>(),
            Err(Error::ResourceGuard(_))
        ));
        assert!(GeneratorMatrix::new(0, vec![]).is_err());
        assert!(GeneratorMatrix::new(2, vec![vec![Gf4::ONE; 3]]).is_err());
    }
}
