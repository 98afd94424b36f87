use std::fmt;

use crate::algebra::GaloisField;
use crate::error::{Error, Result};
use crate::oa::{max_strength, min_hamming_distance, MinDistance, OrthogonalArray, SymbolArray};

/// Strength and distance a code fixture claims for its codeword array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeClaims {
    pub strength: usize,
    pub distance: usize,
}

/// Generator matrix of a linear `[n, κ]_q` code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCodeSpec {
    pub q: usize,
    pub n: usize,
    pub generator: Vec<Vec<u8>>,
    pub claims: Option<CodeClaims>,
    pub provenance: String,
}

impl fmt::Display for LinearCodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]_{} ({})", self.n, self.dimension(), self.q, self.provenance)
    }
}

// Codeword enumeration guard.
const MAX_CODEWORDS: usize = 1 << 20;

impl LinearCodeSpec {
    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    /// Rank of the generator matrix over GF(q).
    pub fn rank(&self) -> Result<usize> {
        let f = GaloisField::new(self.q)?;
        let mut m = self.generator.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
                continue;
            };
            m.swap(rank, p);
            let inv = f.inv(m[rank][col]);
            let pivot: Vec<u8> = m[rank].iter().map(|&x| f.mul(x, inv)).collect();
            for (i, row) in m.iter_mut().enumerate() {
                if i != rank && row[col] != 0 {
                    let c = row[col];
                    for (x, &p) in row.iter_mut().zip(&pivot) {
                        *x = f.sub(*x, f.mul(c, p));
                    }
                }
            }
            m[rank] = pivot;
            rank += 1;
        }
        Ok(rank)
    }
}

/// Enumerates all `q^κ` codewords (messages in lexicographic order) and
/// measures strength and minimal distance. Fails if the generator is rank
/// deficient or a claim disagrees with the measurement.
pub fn code_to_oa(spec: &LinearCodeSpec) -> Result<OrthogonalArray> {
    let (q, n, kappa) = (spec.q, spec.n, spec.dimension());
    if spec
        .generator
        .iter()
        .any(|r| r.len() != n || r.iter().any(|&x| x as usize >= q))
    {
        return Err(Error::invalid(format!(
            "generator rows of {spec} do not match length {n} over GF({q})"
        )));
    }
    let total = q
        .checked_pow(kappa as u32)
        .filter(|&t| t <= MAX_CODEWORDS)
        .ok_or_else(|| Error::ResourceGuard(format!("{q}^{kappa} codewords exceed the enumeration guard")))?;
    if spec.rank()? != kappa {
        return Err(Error::invalid(format!("generator of {spec} is rank deficient")));
    }
    let f = GaloisField::new(q)?;
    let mut data = Vec::with_capacity(total * n);
    let mut msg = vec![0u8; kappa];
    for idx in 0..total {
        let mut v = idx;
        for slot in msg.iter_mut().rev() {
            *slot = (v % q) as u8;
            v /= q;
        }
        for col in 0..n {
            data.push(
                msg.iter()
                    .zip(&spec.generator)
                    .fold(0u8, |acc, (&m, g)| f.add(acc, f.mul(m, g[col]))),
            );
        }
    }
    let array = SymbolArray::from_flat(q, n, data)?;
    let strength = max_strength(&array);
    if let Some(c) = spec.claims {
        let md = min_hamming_distance(&array);
        if strength != c.strength || md != MinDistance::Finite(c.distance) {
            return Err(Error::Verification(format!(
                "{spec} claims strength {} and distance {}, measured {strength} and {md}",
                c.strength, c.distance
            )));
        }
    }
    OrthogonalArray::new(array, strength)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oa::construct_strength1;

    #[test]
    fn repetition_code_matches_constant_rows() {
        let spec = LinearCodeSpec {
            q: 3,
            n: 5,
            generator: vec![vec![1; 5]],
            claims: Some(CodeClaims {
                strength: 1,
                distance: 5,
            }),
            provenance: "repetition".into(),
        };
        let oa = code_to_oa(&spec).unwrap();
        assert_eq!(oa, construct_strength1(5, 3).unwrap());
    }

    #[test]
    fn wrong_claims_fail() {
        let spec = LinearCodeSpec {
            q: 2,
            n: 3,
            generator: vec![vec![1, 1, 1]],
            claims: Some(CodeClaims {
                strength: 1,
                distance: 2,
            }),
            provenance: "repetition".into(),
        };
        assert!(matches!(code_to_oa(&spec), Err(Error::Verification(_))));
    }

    #[test]
    fn rank_deficiency_detected() {
        let spec = LinearCodeSpec {
            q: 4,
            n: 3,
            generator: vec![vec![1, 2, 3], vec![2, 3, 1]],
            claims: None,
            provenance: "dependent rows".into(),
        };
        // Row two is x·(row one) over GF(4).
        assert_eq!(spec.rank().unwrap(), 1);
        assert!(code_to_oa(&spec).is_err());
    }
}
