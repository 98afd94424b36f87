//! Small Galois fields GF(q), q a prime power ≤ 16, as lookup tables.
//!
//! An element is stored as the integer `Σ c_i p^i` of its coefficient vector
//! in the polynomial basis. Extension fields use these fixed irreducible
//! (Conway) polynomials, coefficients listed from the constant term up:
//!
//! | q  | polynomial        |
//! |----|-------------------|
//! | 4  | x^2 + x + 1       |
//! | 8  | x^3 + x + 1       |
//! | 9  | x^2 + 2x + 2      |
//! | 16 | x^4 + x + 1       |
//!
//! For q = 4 this reproduces the labelling `0, 1, x, x+1 ↦ 0, 1, 2, 3`.

use crate::error::{Error, Result};

pub const SUPPORTED_ORDERS: [usize; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

fn prime_power(q: usize) -> Option<(usize, u32)> {
    let p = (2..=q).find(|p| q.is_multiple_of(*p))?;
    let mut e = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn modulus(q: usize) -> &'static [usize] {
    match q {
        4 => &[1, 1, 1],
        8 => &[1, 1, 0, 1],
        9 => &[2, 2, 1],
        16 => &[1, 1, 0, 0, 1],
        _ => &[],
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    q: usize,
    p: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl GaloisField {
    /// Builds the addition and multiplication tables for GF(q) and checks
    /// the field axioms exhaustively.
    pub fn new(q: usize) -> Result<Self> {
        if !SUPPORTED_ORDERS.contains(&q) {
            return Err(Error::UnsupportedField(q));
        }
        let (p, e) = prime_power(q).ok_or(Error::UnsupportedField(q))?;
        let digits = |mut v: usize| -> Vec<usize> {
            (0..e)
                .map(|_| {
                    let c = v % p;
                    v /= p;
                    c
                })
                .collect()
        };
        let pack = |c: &[usize]| -> usize { c.iter().rev().fold(0, |acc, &x| acc * p + x) };

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = pack(&sum) as u8;

                let product = if e == 1 {
                    (a * b) % p
                } else {
                    let mut prod = vec![0usize; 2 * e as usize - 1];
                    for (i, x) in da.iter().enumerate() {
                        for (j, y) in db.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    let m = modulus(q);
                    let deg = e as usize;
                    for top in (deg..prod.len()).rev() {
                        let c = prod[top];
                        if c != 0 {
                            for (i, mc) in m.iter().enumerate().take(deg) {
                                let idx = top - deg + i;
                                prod[idx] = (prod[idx] + (p - c) * mc % p) % p;
                            }
                            prod[top] = 0;
                        }
                    }
                    prod.truncate(deg);
                    pack(&prod)
                };
                mul[a * q + b] = product as u8;
            }
        }

        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap_or(0) as u8)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as u8
                }
            })
            .collect();

        let field = GaloisField {
            q,
            p,
            add,
            mul,
            neg,
            inv,
        };
        field.check_axioms()?;
        Ok(field)
    }

    fn check_axioms(&self) -> Result<()> {
        let q = self.q as u8;
        let fail = |what: &str| Err(Error::Invalid(format!("GF({}) table violates {what}", self.q)));
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return fail("identity");
            }
            if self.add(a, self.neg(a)) != 0 {
                return fail("additive inverse");
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return fail("multiplicative inverse");
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity");
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                    {
                        return fail("associativity");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn is_square(&self, a: u8) -> bool {
        (0..self.q as u8).any(|x| self.mul(x, x) == a)
    }
}

/// The abelian group structure put on the symbols `0..d` of an array.
///
/// For a prime power `d ≤ 16` this is the additive group of GF(d) (for a
/// prime it is the integers mod `d`; for `d = 4` it is xor). Other orders
/// fall back to the cyclic group Z_d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolGroup {
    d: usize,
    add: Vec<u8>,
    neg: Vec<u8>,
}

impl SymbolGroup {
    pub fn new(d: usize) -> Result<Self> {
        if !(1..=64).contains(&d) {
            return Err(Error::invalid(format!("symbol count {d} out of range 1..=64")));
        }
        if SUPPORTED_ORDERS.contains(&d) {
            let f = GaloisField::new(d)?;
            return Ok(SymbolGroup {
                d,
                add: f.add.clone(),
                neg: f.neg.clone(),
            });
        }
        Ok(Self::cyclic(d))
    }

    pub fn cyclic(d: usize) -> Self {
        let mut add = vec![0u8; d * d];
        for a in 0..d {
            for b in 0..d {
                add[a * d + b] = ((a + b) % d) as u8;
            }
        }
        let neg = (0..d).map(|a| ((d - a) % d) as u8).collect();
        SymbolGroup { d, add, neg }
    }

    pub fn order(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.d + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }
}
