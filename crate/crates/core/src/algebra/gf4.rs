use std::fmt;
use std::ops::Add;

/// Element of GF(4) with the labelling `0, 1, 2, 3` for `0, 1, x, x+1`.
///
/// Addition is bitwise xor of the 2-bit labels. Through the Pauli
/// correspondence `0 ↔ I, 1 ↔ σx, 2 ↔ σy, 3 ↔ σz` it tracks operator
/// products up to phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf4(u8);

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const X: Gf4 = Gf4(2);
    pub const X_PLUS_ONE: Gf4 = Gf4(3);

    pub fn new(value: u8) -> Option<Self> {
        (value < 4).then_some(Gf4(value))
    }

    #[inline]
    pub fn value(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn all() -> [Gf4; 4] {
        [Gf4(0), Gf4(1), Gf4(2), Gf4(3)]
    }
}

impl Add for Gf4 {
    type Output = Gf4;

    // Characteristic 2: addition is XOR of the labels.
    #[allow(clippy::suspicious_arithmetic_impl)]
    #[inline]
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
