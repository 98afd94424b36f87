use std::fmt;

use super::Gf4;
use crate::error::{Error, Result};

// PHASE[a][b] = e such that σ_a σ_b = i^e σ_{a+b}, labels 0=I 1=X 2=Y 3=Z.
const PHASE: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 0, 1, 3], [0, 3, 0, 1], [0, 1, 3, 0]];

/// Single-qubit Pauli product: `σ_a σ_b = i^e σ_{a+b}`.
#[inline]
pub fn pauli_product(a: Gf4, b: Gf4) -> (u8, Gf4) {
    (PHASE[a.value() as usize][b.value() as usize], a + b)
}

/// Whether `σ_a` and `σ_b` anticommute.
#[inline]
pub fn anticommutes(a: Gf4, b: Gf4) -> bool {
    !a.is_zero() && !b.is_zero() && a != b
}

/// An N-qubit Pauli operator `i^phase σ_{l_1} ⊗ … ⊗ σ_{l_N}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliWord {
    labels: Vec<Gf4>,
    phase: u8,
}

impl PauliWord {
    pub fn new(labels: Vec<Gf4>, phase: u8) -> Self {
        PauliWord {
            labels,
            phase: phase % 4,
        }
    }

    pub fn identity(n: usize) -> Self {
        PauliWord::new(vec![Gf4::ZERO; n], 0)
    }

    /// Parses digits such as `"12302"`.
    pub fn from_digits(s: &str) -> Result<Self> {
        let labels = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                c.to_digit(10)
                    .and_then(|v| Gf4::new(v as u8))
                    .ok_or_else(|| Error::invalid(format!("bad Pauli label {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliWord::new(labels, 0))
    }

    pub fn labels(&self) -> &[Gf4] {
        &self.labels
    }

    /// Exponent `e` of the global phase `i^e`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.labels.iter().filter(|l| !l.is_zero()).count()
    }

    /// Action on a computational basis state: `W|x⟩ = i^e |y⟩`.
    ///
    /// Qubit 0 is the most significant bit of `x`.
    pub fn apply_to_basis(&self, x: usize) -> (u8, usize) {
        let n = self.labels.len();
        let mut e = self.phase as u32;
        let mut y = x;
        for (q, l) in self.labels.iter().enumerate() {
            let bit = (x >> (n - 1 - q)) & 1;
            match l.value() {
                1 => y ^= 1 << (n - 1 - q),
                2 => {
                    y ^= 1 << (n - 1 - q);
                    e += if bit == 0 { 1 } else { 3 };
                }
                3 if bit == 1 => {
                    e += 2;
                }
                _ => {}
            }
        }
        ((e % 4) as u8, y)
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = ["+", "+i", "-", "-i"][self.phase as usize];
        write!(f, "{sign}(")?;
        for l in &self.labels {
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

fn check_lengths(a: &PauliWord, b: &PauliWord) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "Pauli words of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// Operator product of two words, phases included.
pub fn word_product(a: &PauliWord, b: &PauliWord) -> Result<PauliWord> {
    check_lengths(a, b)?;
    let mut phase = a.phase as u32 + b.phase as u32;
    let labels = a
        .labels
        .iter()
        .zip(&b.labels)
        .map(|(&x, &y)| {
            let (e, l) = pauli_product(x, y);
            phase += e as u32;
            l
        })
        .collect();
    Ok(PauliWord::new(labels, (phase % 4) as u8))
}

/// Two words commute iff they anticommute on an even number of positions.
pub fn words_commute(a: &PauliWord, b: &PauliWord) -> Result<bool> {
    check_lengths(a, b)?;
    let odd = a
        .labels
        .iter()
        .zip(&b.labels)
        .filter(|(&x, &y)| anticommutes(x, y))
        .count();
    Ok(odd % 2 == 0)
}
