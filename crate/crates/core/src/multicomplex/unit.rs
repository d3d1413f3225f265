use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// One of the eight real basis units of the tricomplex algebra.
///
/// The discriminant is the generator-exponent vector `(e1, e2, e3)` packed as
/// `e1 + 2*e2 + 4*e3`, so `i1 = 0b001`, `i2 = 0b010`, `i3 = 0b100` and every
/// other unit is a product of those. This also happens to be the coefficient
/// order `1, i1, i2, j1, i3, j2, j3, i4` used by [`Tricomplex`](super::Tricomplex).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum BasisUnit {
    One = 0,
    I1 = 1,
    I2 = 2,
    J1 = 3,
    I3 = 4,
    J2 = 5,
    J3 = 6,
    I4 = 7,
}

impl BasisUnit {
    pub const ALL: [BasisUnit; 8] = [
        BasisUnit::One,
        BasisUnit::I1,
        BasisUnit::I2,
        BasisUnit::J1,
        BasisUnit::I3,
        BasisUnit::J2,
        BasisUnit::J3,
        BasisUnit::I4,
    ];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub const fn from_index(index: usize) -> BasisUnit {
        BasisUnit::ALL[index & 7]
    }

    pub const fn name(self) -> &'static str {
        match self {
            BasisUnit::One => "1",
            BasisUnit::I1 => "i1",
            BasisUnit::I2 => "i2",
            BasisUnit::J1 => "j1",
            BasisUnit::I3 => "i3",
            BasisUnit::J2 => "j2",
            BasisUnit::J3 => "j3",
            BasisUnit::I4 => "i4",
        }
    }

    /// Square of the unit: `-1` for the imaginary units, `+1` for `1` and the
    /// hyperbolic units.
    pub const fn square_sign(self) -> f64 {
        let (_, sign) = raw_mul(self as u8, self as u8);
        sign
    }
}

impl fmt::Display for BasisUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisUnit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BasisUnit::ALL
            .iter()
            .copied()
            .find(|u| u.name() == s)
            .ok_or_else(|| format!("unknown basis unit `{s}`"))
    }
}

/// A basis unit with a sign; the set of these is closed under multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedUnit {
    pub negative: bool,
    pub unit: BasisUnit,
}

impl SignedUnit {
    pub const fn positive(unit: BasisUnit) -> Self {
        SignedUnit {
            negative: false,
            unit,
        }
    }

    pub const fn sign(self) -> f64 {
        if self.negative {
            -1.0
        } else {
            1.0
        }
    }
}

impl fmt::Display for SignedUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-{}", self.unit)
        } else {
            write!(f, "+{}", self.unit)
        }
    }
}

// Generators commute, so the product exponent is the XOR of the exponents and
// every generator present in both factors contributes one i^2 = -1.
const fn raw_mul(a: u8, b: u8) -> (u8, f64) {
    let shared = (a & b).count_ones();
    let sign = if shared.is_multiple_of(2) { 1.0 } else { -1.0 };
    (a ^ b, sign)
}

const fn build_table() -> [[(u8, f64); 8]; 8] {
    let mut table = [[(0u8, 1.0f64); 8]; 8];
    let mut a = 0;
    while a < 8 {
        let mut b = 0;
        while b < 8 {
            table[a][b] = raw_mul(a as u8, b as u8);
            b += 1;
        }
        a += 1;
    }
    table
}

/// `UNIT_TABLE[a][b] = (index of a*b, sign)`.
pub(crate) const UNIT_TABLE: [[(u8, f64); 8]; 8] = build_table();

/// Product of two basis units.
pub fn unit_mul(u: BasisUnit, v: BasisUnit) -> SignedUnit {
    let (idx, sign) = UNIT_TABLE[u.index()][v.index()];
    SignedUnit {
        negative: sign < 0.0,
        unit: BasisUnit::from_index(idx as usize),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BasisUnit::*;

    fn su(negative: bool, unit: BasisUnit) -> SignedUnit {
        SignedUnit { negative, unit }
    }

    #[test]
    fn table_examples() {
        assert_eq!(unit_mul(I1, I2), su(false, J1));
        assert_eq!(unit_mul(J1, J1), su(false, One));
        assert_eq!(unit_mul(I4, J3), su(false, I1));
        assert_eq!(unit_mul(J1, J2), su(true, J3));
    }

    #[test]
    fn squares() {
        for u in [I1, I2, I3, I4] {
            assert_eq!(unit_mul(u, u), su(true, One), "{u}");
            assert_eq!(u.square_sign(), -1.0);
        }
        for u in [One, J1, J2, J3] {
            assert_eq!(unit_mul(u, u), su(false, One), "{u}");
        }
    }

    #[test]
    fn defining_products() {
        assert_eq!(unit_mul(I2, I3), su(false, J3));
        assert_eq!(unit_mul(I1, I3), su(false, J2));
        assert_eq!(unit_mul(J1, I3), su(false, I4));
    }

    // Oracle: multiply written-out generator words i1^a i2^b i3^c by
    // concatenation and reduction, independent of the XOR/popcount shortcut.
    fn word_product(u: BasisUnit, v: BasisUnit) -> SignedUnit {
        let gens = |x: BasisUnit| -> Vec<u8> {
            (0..3)
                .filter(|g| (x.index() >> g) & 1 == 1)
                .map(|g| g as u8)
                .collect()
        };
        let mut word = gens(u);
        word.extend(gens(v));
        // bubble sort, commuting generators never changes sign
        word.sort_unstable();
        let mut negative = false;
        let mut out = Vec::new();
        let mut i = 0;
        while i < word.len() {
            if i + 1 < word.len() && word[i] == word[i + 1] {
                negative = !negative;
                i += 2;
            } else {
                out.push(word[i]);
                i += 1;
            }
        }
        let idx: usize = out.iter().map(|g| 1usize << g).sum();
        su(negative, BasisUnit::from_index(idx))
    }

    #[test]
    fn table_matches_word_reduction() {
        for u in BasisUnit::ALL {
            for v in BasisUnit::ALL {
                assert_eq!(unit_mul(u, v), word_product(u, v), "{u}*{v}");
                assert_eq!(unit_mul(u, v), unit_mul(v, u));
            }
        }
    }

    #[test]
    fn names_roundtrip() {
        for u in BasisUnit::ALL {
            assert_eq!(u.name().parse::<BasisUnit>().unwrap(), u);
        }
        assert!("k1".parse::<BasisUnit>().is_err());
    }
}
