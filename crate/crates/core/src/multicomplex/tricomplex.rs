use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::unit::{BasisUnit, UNIT_TABLE};
use super::AlgebraError;

/// `C(i1)`; the imaginary part is the coefficient of `i1`.
pub type Complex = Complex64;

/// Multiply a complex number by `i1`.
#[inline]
pub(crate) fn times_i1(z: Complex) -> Complex {
    Complex::new(-z.im, z.re)
}

/// A bicomplex number `x1 + x2 i1 + x3 i2 + x4 j1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Bicomplex(pub [f64; 4]);

impl Bicomplex {
    pub const fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Bicomplex([x1, x2, x3, x4])
    }

    /// Build `z1 + z2 i2` from its two complex parts.
    pub fn from_parts(z1: Complex, z2: Complex) -> Self {
        Bicomplex([z1.re, z1.im, z2.re, z2.im])
    }

    pub fn parts(self) -> (Complex, Complex) {
        let [x1, x2, x3, x4] = self.0;
        (Complex::new(x1, x2), Complex::new(x3, x4))
    }

    pub fn to_tricomplex(self) -> Tricomplex {
        let [x1, x2, x3, x4] = self.0;
        Tricomplex([x1, x2, x3, x4, 0.0, 0.0, 0.0, 0.0])
    }
}

impl From<Bicomplex> for Tricomplex {
    fn from(b: Bicomplex) -> Self {
        b.to_tricomplex()
    }
}

/// A tricomplex number with coefficients on `1, i1, i2, j1, i3, j2, j3, i4`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Tricomplex(pub [f64; 8]);

impl Tricomplex {
    pub const ZERO: Tricomplex = Tricomplex([0.0; 8]);
    pub const ONE: Tricomplex = Tricomplex([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

    pub const fn new(coefficients: [f64; 8]) -> Self {
        Tricomplex(coefficients)
    }

    pub const fn real(x: f64) -> Self {
        Tricomplex([x, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    pub fn unit(u: BasisUnit) -> Self {
        Self::scaled_unit(1.0, u)
    }

    pub fn scaled_unit(coef: f64, u: BasisUnit) -> Self {
        let mut x = [0.0; 8];
        x[u.index()] = coef;
        Tricomplex(x)
    }

    pub fn from_complex(z: Complex) -> Self {
        Tricomplex([z.re, z.im, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    pub fn coefficients(&self) -> &[f64; 8] {
        &self.0
    }

    pub fn coef(&self, u: BasisUnit) -> f64 {
        self.0[u.index()]
    }

    /// The complex parts in `z1 + z2 i2 + z3 i3 + z4 j3`.
    pub fn complex_parts(&self) -> [Complex; 4] {
        let x = &self.0;
        [
            Complex::new(x[0], x[1]),
            Complex::new(x[2], x[3]),
            Complex::new(x[4], x[5]),
            Complex::new(x[6], x[7]),
        ]
    }

    pub fn from_complex_parts(z: [Complex; 4]) -> Self {
        Tricomplex([
            z[0].re, z[0].im, z[1].re, z[1].im, z[2].re, z[2].im, z[3].re, z[3].im,
        ])
    }

    /// The bicomplex parts in `eta1 + eta2 i3`.
    pub fn bicomplex_parts(&self) -> (Bicomplex, Bicomplex) {
        let x = &self.0;
        (
            Bicomplex([x[0], x[1], x[2], x[3]]),
            Bicomplex([x[4], x[5], x[6], x[7]]),
        )
    }

    pub fn from_bicomplex_parts(eta1: Bicomplex, eta2: Bicomplex) -> Self {
        let mut x = [0.0; 8];
        x[..4].copy_from_slice(&eta1.0);
        x[4..].copy_from_slice(&eta2.0);
        Tricomplex(x)
    }

    pub fn scale(self, s: f64) -> Self {
        Tricomplex(self.0.map(|x| x * s))
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// Member of the biduplex subring spanned by `1, j1, j2, j3`.
    pub fn is_biduplex(&self) -> bool {
        [BasisUnit::I1, BasisUnit::I2, BasisUnit::I3, BasisUnit::I4]
            .iter()
            .all(|&u| self.coef(u) == 0.0)
    }

    /// Tricomplex conjugate `‡k`, `k` in `1..=7`, in the conventional order:
    ///
    /// | k | z1 | z2 i2 | z3 i3 | z4 j3 |
    /// |---|----|-------|-------|-------|
    /// | 1 | z1 | +z2 | -z3 | -z4 |
    /// | 2 | z̄1 | +z̄2 | +z̄3 | +z̄4 |
    /// | 3 | z1 | -z2 | +z3 | -z4 |
    /// | 4 | z̄1 | -z̄2 | +z̄3 | -z̄4 |
    /// | 5 | z̄1 | +z̄2 | -z̄3 | -z̄4 |
    /// | 6 | z1 | -z2 | -z3 | +z4 |
    /// | 7 | z̄1 | -z̄2 | -z̄3 | +z̄4 |
    pub fn conjugate(self, k: u8) -> Result<Self, AlgebraError> {
        let (bar, signs): (bool, [f64; 3]) = match k {
            1 => (false, [1.0, -1.0, -1.0]),
            2 => (true, [1.0, 1.0, 1.0]),
            3 => (false, [-1.0, 1.0, -1.0]),
            4 => (true, [-1.0, 1.0, -1.0]),
            5 => (true, [1.0, -1.0, -1.0]),
            6 => (false, [-1.0, -1.0, 1.0]),
            7 => (true, [-1.0, -1.0, 1.0]),
            _ => return Err(AlgebraError::InvalidConjugate(k)),
        };
        let z = self.complex_parts();
        let c = |w: Complex| if bar { w.conj() } else { w };
        Ok(Tricomplex::from_complex_parts([
            c(z[0]),
            c(z[1]) * signs[0],
            c(z[2]) * signs[1],
            c(z[3]) * signs[2],
        ]))
    }

    /// Product of the seven conjugates `‡1 … ‡7`.
    pub fn conjugates_product(self) -> Tricomplex {
        (1..=7).fold(Tricomplex::ONE, |acc, k| {
            acc * self.conjugate(k).expect("k in range")
        })
    }

    /// `self` times its seven conjugates, kept as a full tricomplex value so
    /// callers can inspect the (vanishing) non-real residue.
    pub fn conj_product_full(self) -> Tricomplex {
        self * self.conjugates_product()
    }

    /// Real part of `self` times its seven conjugates, a non-negative real.
    pub fn conj_product(self) -> f64 {
        self.conj_product_full().0[0]
    }

    /// Scale-relative threshold below which a conjugate product is treated
    /// as zero.
    pub fn invertibility_threshold(&self) -> f64 {
        1e-12 * (1.0 + self.norm().powi(8))
    }

    /// Inverse as the product of the seven conjugates over the conjugate
    /// product.
    pub fn inverse(self) -> Result<Self, AlgebraError> {
        let conjugates = self.conjugates_product();
        let det = (self * conjugates).0[0];
        if !(det.abs() > self.invertibility_threshold()) {
            return Err(AlgebraError::NonInvertible { conj_product: det });
        }
        Ok(conjugates.scale(1.0 / det))
    }
}

impl From<f64> for Tricomplex {
    fn from(x: f64) -> Self {
        Tricomplex::real(x)
    }
}

impl From<BasisUnit> for Tricomplex {
    fn from(u: BasisUnit) -> Self {
        Tricomplex::unit(u)
    }
}

impl Index<BasisUnit> for Tricomplex {
    type Output = f64;
    fn index(&self, u: BasisUnit) -> &f64 {
        &self.0[u.index()]
    }
}

impl IndexMut<BasisUnit> for Tricomplex {
    fn index_mut(&mut self, u: BasisUnit) -> &mut f64 {
        &mut self.0[u.index()]
    }
}

impl Add for Tricomplex {
    type Output = Tricomplex;
    fn add(self, rhs: Tricomplex) -> Tricomplex {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        Tricomplex(out)
    }
}

impl AddAssign for Tricomplex {
    fn add_assign(&mut self, rhs: Tricomplex) {
        *self = *self + rhs;
    }
}

impl Sub for Tricomplex {
    type Output = Tricomplex;
    fn sub(self, rhs: Tricomplex) -> Tricomplex {
        self + (-rhs)
    }
}

impl Neg for Tricomplex {
    type Output = Tricomplex;
    fn neg(self) -> Tricomplex {
        Tricomplex(self.0.map(|x| -x))
    }
}

impl Mul for Tricomplex {
    type Output = Tricomplex;
    fn mul(self, rhs: Tricomplex) -> Tricomplex {
        let mut out = [0.0; 8];
        for (a, &x) in self.0.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (b, &y) in rhs.0.iter().enumerate() {
                let (idx, sign) = UNIT_TABLE[a][b];
                out[idx as usize] += sign * x * y;
            }
        }
        Tricomplex(out)
    }
}

impl Mul<f64> for Tricomplex {
    type Output = Tricomplex;
    fn mul(self, rhs: f64) -> Tricomplex {
        self.scale(rhs)
    }
}

impl Mul<Tricomplex> for f64 {
    type Output = Tricomplex;
    fn mul(self, rhs: Tricomplex) -> Tricomplex {
        rhs.scale(self)
    }
}

impl Mul for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, rhs: Bicomplex) -> Bicomplex {
        // (z1 + z2 i2)(w1 + w2 i2)
        let (z1, z2) = self.parts();
        let (w1, w2) = rhs.parts();
        Bicomplex::from_parts(z1 * w1 - z2 * w2, z1 * w2 + z2 * w1)
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, rhs: Bicomplex) -> Bicomplex {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        Bicomplex(out)
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, rhs: Bicomplex) -> Bicomplex {
        self + (-rhs)
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Bicomplex {
        Bicomplex(self.0.map(|x| -x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicomplex::parse_tc;
    use BasisUnit::*;

    fn tc(s: &str) -> Tricomplex {
        parse_tc(s).unwrap()
    }

    fn gamma3() -> Tricomplex {
        tc("0.5 + 0.5j3")
    }

    fn gamma3_bar() -> Tricomplex {
        tc("0.5 - 0.5j3")
    }

    #[test]
    fn add_examples() {
        assert_eq!(tc("1+i1") + tc("2-i1"), Tricomplex::real(3.0));
        let a = tc("1 - 2i1 + 0.25j3");
        assert_eq!(a + Tricomplex::ZERO, a);
        assert_eq!(gamma3() + gamma3_bar(), Tricomplex::ONE);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(gamma3() * gamma3_bar(), Tricomplex::ZERO);
        assert_eq!(tc("j1") * tc("j2"), tc("-j3"));
        let g1g3 = tc("0.25 + 0.25j1 - 0.25j2 + 0.25j3");
        assert_eq!(g1g3 * g1g3, g1g3);
    }

    #[test]
    fn bicomplex_embeds() {
        let a = Bicomplex::new(1.0, 2.0, -3.0, 0.5);
        let b = Bicomplex::new(-0.5, 1.5, 2.0, 4.0);
        assert_eq!(
            (a * b).to_tricomplex(),
            a.to_tricomplex() * b.to_tricomplex()
        );
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(tc("i2").conjugate(3).unwrap(), tc("-i2"));
        // j2 = i1 i3 has z3 = i1, and row 5 maps z3 to -conj(z3) = i1
        assert_eq!(tc("j2").conjugate(5).unwrap(), tc("j2"));
        assert_eq!(tc("j2").conjugate(1).unwrap(), tc("-j2"));
        for k in 1..=7 {
            assert_eq!(
                Tricomplex::real(5.0).conjugate(k).unwrap(),
                Tricomplex::real(5.0)
            );
        }
        assert_eq!(
            Tricomplex::ONE.conjugate(0),
            Err(AlgebraError::InvalidConjugate(0))
        );
        assert_eq!(
            Tricomplex::ONE.conjugate(8),
            Err(AlgebraError::InvalidConjugate(8))
        );
    }

    #[test]
    fn conj_product_examples() {
        assert_eq!(Tricomplex::real(2.0).conj_product(), 256.0);
        assert_eq!(tc("i1").conj_product(), 1.0);
        assert_eq!(gamma3().conj_product(), 0.0);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            Tricomplex::real(2.0).inverse().unwrap(),
            Tricomplex::real(0.5)
        );
        assert_eq!(tc("i1").inverse().unwrap(), tc("-i1"));
        let g1g3 = tc("0.25 + 0.25j1 - 0.25j2 + 0.25j3");
        match g1g3.inverse() {
            Err(AlgebraError::NonInvertible { conj_product }) => assert_eq!(conj_product, 0.0),
            other => panic!("expected zero divisor, got {other:?}"),
        }
        assert!(gamma3().inverse().is_err());
    }

    #[test]
    fn conjugation_is_diagonal_sign_flip() {
        for k in 1..=7 {
            for u in BasisUnit::ALL {
                let c = Tricomplex::unit(u).conjugate(k).unwrap();
                let s = c.coef(u);
                assert!(s == 1.0 || s == -1.0);
                assert_eq!(c, Tricomplex::scaled_unit(s, u));
            }
        }
    }

    #[test]
    fn unit_index_matches_coefficients() {
        let x = tc("1 + 2i1 + 3i2 + 4j1 + 5i3 + 6j2 + 7j3 + 8i4");
        for (n, u) in BasisUnit::ALL.iter().enumerate() {
            assert_eq!(x[*u], (n + 1) as f64);
        }
        assert_eq!(x.coef(I4), 8.0);
    }
}
