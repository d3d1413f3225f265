//! Idempotent elements and the idempotent representations of a tricomplex
//! number.
//!
//! In the four-component representation a tricomplex number becomes four
//! independent complex numbers, one per primitive idempotent
//! `γ1γ3, γ̄1γ3, γ1γ̄3, γ̄1γ̄3`, and multiplication acts component-wise.

use serde::{Deserialize, Serialize};

use super::tricomplex::{times_i1, Bicomplex, Complex, Tricomplex};

/// Components of a tricomplex number along `γ1γ3, γ̄1γ3, γ1γ̄3, γ̄1γ̄3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Idem4(pub [Complex; 4]);

impl Idem4 {
    pub fn new(e1: Complex, e2: Complex, e3: Complex, e4: Complex) -> Self {
        Idem4([e1, e2, e3, e4])
    }

    pub fn from_reals(r: [f64; 4]) -> Self {
        Idem4(r.map(|x| Complex::new(x, 0.0)))
    }

    pub fn components(&self) -> &[Complex; 4] {
        &self.0
    }

    pub fn mul(&self, other: &Idem4) -> Idem4 {
        Idem4(std::array::from_fn(|k| self.0[k] * other.0[k]))
    }
}

/// Four-component idempotent decomposition.
///
/// With `η = z1 + z2 i2 + (z3 + z4 i2) i3`:
///
/// ```text
/// η_{γ1γ3}  = (z1 + z4) - (z2 - z3) i1
/// η_{γ̄1γ3}  = (z1 + z4) + (z2 - z3) i1
/// η_{γ1γ̄3}  = (z1 - z4) - (z2 + z3) i1
/// η_{γ̄1γ̄3}  = (z1 - z4) + (z2 + z3) i1
/// ```
pub fn idem4_decompose(a: &Tricomplex) -> Idem4 {
    let [z1, z2, z3, z4] = a.complex_parts();
    let plus = z1 + z4;
    let minus = z1 - z4;
    let d = times_i1(z2 - z3);
    let s = times_i1(z2 + z3);
    Idem4([plus - d, plus + d, minus - s, minus + s])
}

/// Inverse of [`idem4_decompose`].
pub fn idem4_compose(e: &Idem4) -> Tricomplex {
    let [e1, e2, e3, e4] = e.0;
    let plus = (e1 + e2) * 0.5;
    let minus = (e3 + e4) * 0.5;
    // (e2 - e1)/2 = (z2 - z3) i1, so z2 - z3 = -i1 (e2 - e1)/2
    let diff = -times_i1((e2 - e1) * 0.5);
    let sum = -times_i1((e4 - e3) * 0.5);
    let z1 = (plus + minus) * 0.5;
    let z4 = (plus - minus) * 0.5;
    let z2 = (sum + diff) * 0.5;
    let z3 = (sum - diff) * 0.5;
    Tricomplex::from_complex_parts([z1, z2, z3, z4])
}

/// `γ3` representation: returns `(η1 - η2 i2, η1 + η2 i2)`.
pub fn gamma3_decompose(a: &Tricomplex) -> (Bicomplex, Bicomplex) {
    let (eta1, eta2) = a.bicomplex_parts();
    let i2 = Bicomplex::new(0.0, 0.0, 1.0, 0.0);
    let t = eta2 * i2;
    (eta1 - t, eta1 + t)
}

/// `γ2` representation: returns `(η1 - η2 i1, η1 + η2 i1)`.
pub fn gamma2_decompose(a: &Tricomplex) -> (Bicomplex, Bicomplex) {
    let (eta1, eta2) = a.bicomplex_parts();
    let i1 = Bicomplex::new(0.0, 1.0, 0.0, 0.0);
    let t = eta2 * i1;
    (eta1 - t, eta1 + t)
}

/// `γ1 = (1 + j1)/2` and friends.
pub fn gamma(k: u8) -> Tricomplex {
    let mut x = [0.0; 8];
    x[0] = 0.5;
    x[jk_index(k)] = 0.5;
    Tricomplex(x)
}

/// `γ̄k = (1 - jk)/2`.
pub fn gamma_bar(k: u8) -> Tricomplex {
    let mut x = [0.0; 8];
    x[0] = 0.5;
    x[jk_index(k)] = -0.5;
    Tricomplex(x)
}

fn jk_index(k: u8) -> usize {
    match k {
        1 => 3,
        2 => 5,
        3 => 6,
        _ => panic!("no hyperbolic unit j{k}"),
    }
}

/// The primitive idempotents `γ1γ3, γ̄1γ3, γ1γ̄3, γ̄1γ̄3`, in component order.
pub fn primitive_idempotents() -> [Tricomplex; 4] {
    [
        gamma(1) * gamma(3),
        gamma_bar(1) * gamma(3),
        gamma(1) * gamma_bar(3),
        gamma_bar(1) * gamma_bar(3),
    ]
}

/// The sixteen idempotent elements of the tricomplex algebra:
/// `0, 1, γk, γ̄k (k = 1,2,3)`, the four primitive products and their
/// complements `1 - γ1γ3` etc.
pub fn idempotent_elements() -> Vec<Tricomplex> {
    let mut out = vec![Tricomplex::ZERO, Tricomplex::ONE];
    for k in 1..=3 {
        out.push(gamma(k));
        out.push(gamma_bar(k));
    }
    let prim = primitive_idempotents();
    out.extend(prim);
    out.extend(prim.iter().map(|p| Tricomplex::ONE - *p));
    out
}
