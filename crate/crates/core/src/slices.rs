//! Three-dimensional slices of the tricomplex Mandelbrot set and the 2D
//! sets they are built from.
//!
//! Every membership test here has two routes. The iterative route embeds
//! the point into the tricomplex numbers and runs [`tc_escape`]; the
//! characterization route evaluates the slice's reduction to a few complex
//! (or real) orbits, or a closed-form polyhedral predicate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::{complex_escape, joint_escape, tc_escape, EscapeResult, IterationConfig};
use crate::multicomplex::{primitive_idempotents, BasisUnit, Complex, Tricomplex};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error("slice units must be pairwise distinct")]
    RepeatedUnit,
    #[error("unknown slice `{0}`")]
    UnknownSlice(String),
    #[error("unknown slice unit `{0}`")]
    UnknownUnit(String),
    #[error("cannot mix basis units and idempotent elements in one slice")]
    MixedKinds,
}

/// Coordinates along the three axes of a slice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl Point3 {
    pub const fn new(u: f64, v: f64, w: f64) -> Self {
        Point3 { u, v, w }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.u, self.v, self.w]
    }
}

impl From<[f64; 3]> for Point3 {
    fn from([u, v, w]: [f64; 3]) -> Self {
        Point3 { u, v, w }
    }
}

/// One of the eight real basis vectors of the idempotent basis:
/// `γ1γ3, γ̄1γ3, γ1γ̄3, γ̄1γ̄3` and their `i1` multiples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdemBasis {
    /// Index of the primitive idempotent, `0..4`.
    pub component: u8,
    /// Multiply by `i1`.
    pub imaginary: bool,
}

impl IdemBasis {
    pub fn new(component: u8, imaginary: bool) -> Self {
        assert!(component < 4, "idempotent component index out of range");
        IdemBasis {
            component,
            imaginary,
        }
    }

    pub fn value(self) -> Tricomplex {
        let p = primitive_idempotents()[self.component as usize];
        if self.imaginary {
            Tricomplex::unit(BasisUnit::I1) * p
        } else {
            p
        }
    }

    /// Text names: `p1..p4` for the primitive idempotents in component order
    /// and `i1p1..i1p4` for their `i1` multiples.
    pub fn name(self) -> String {
        let prefix = if self.imaginary { "i1" } else { "" };
        format!("{prefix}p{}", self.component + 1)
    }
}

impl FromStr for IdemBasis {
    type Err = SliceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (imaginary, rest) = match s.strip_prefix("i1") {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        match rest {
            "p1" => Ok(IdemBasis::new(0, imaginary)),
            "p2" => Ok(IdemBasis::new(1, imaginary)),
            "p3" => Ok(IdemBasis::new(2, imaginary)),
            "p4" => Ok(IdemBasis::new(3, imaginary)),
            _ => Err(SliceError::UnknownUnit(s.to_string())),
        }
    }
}

/// A 3D real subspace spanned by three distinct basis elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SliceSpec {
    Principal([BasisUnit; 3]),
    Idempotent([IdemBasis; 3]),
}

fn distinct<T: PartialEq>(a: &[T; 3]) -> bool {
    a[0] != a[1] && a[0] != a[2] && a[1] != a[2]
}

impl SliceSpec {
    pub fn principal(units: [BasisUnit; 3]) -> Result<Self, SliceError> {
        if !distinct(&units) {
            return Err(SliceError::RepeatedUnit);
        }
        Ok(SliceSpec::Principal(units))
    }

    pub fn idempotent(units: [IdemBasis; 3]) -> Result<Self, SliceError> {
        if !distinct(&units) {
            return Err(SliceError::RepeatedUnit);
        }
        Ok(SliceSpec::Idempotent(units))
    }

    /// The Earthbrot subspace `span{γ1γ3, γ̄1γ3, γ1γ̄3}`.
    pub fn earthbrot() -> Self {
        SliceSpec::Idempotent([
            IdemBasis::new(0, false),
            IdemBasis::new(1, false),
            IdemBasis::new(2, false),
        ])
    }

    pub fn is_idempotent(&self) -> bool {
        matches!(self, SliceSpec::Idempotent(_))
    }

    /// Parse three comma-separated unit names, e.g. `j1,j2,j3` or `p1,p2,p3`.
    pub fn parse_units(text: &str) -> Result<Self, SliceError> {
        let names: Vec<&str> = text.split(',').map(str::trim).collect();
        if names.len() != 3 {
            return Err(SliceError::UnknownUnit(text.to_string()));
        }
        let basis: Result<Vec<BasisUnit>, _> =
            names.iter().map(|n| n.parse::<BasisUnit>()).collect();
        if let Ok(b) = basis {
            return SliceSpec::principal([b[0], b[1], b[2]]);
        }
        let idem: Result<Vec<IdemBasis>, _> =
            names.iter().map(|n| n.parse::<IdemBasis>()).collect();
        match idem {
            Ok(e) => SliceSpec::idempotent([e[0], e[1], e[2]]),
            Err(_) => {
                let any_basis = names.iter().any(|n| n.parse::<BasisUnit>().is_ok());
                let any_idem = names.iter().any(|n| n.parse::<IdemBasis>().is_ok());
                if any_basis && any_idem {
                    Err(SliceError::MixedKinds)
                } else {
                    let bad = names
                        .iter()
                        .find(|n| {
                            n.parse::<BasisUnit>().is_err() && n.parse::<IdemBasis>().is_err()
                        })
                        .unwrap_or(&names[0]);
                    Err(SliceError::UnknownUnit(bad.to_string()))
                }
            }
        }
    }

    pub fn unit_names(&self) -> [String; 3] {
        match self {
            SliceSpec::Principal(u) => u.map(|x| x.name().to_string()),
            SliceSpec::Idempotent(e) => e.map(|x| x.name()),
        }
    }
}

/// The eight principal 3D slices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrincipalSlice {
    Tetrabrot,
    Arrowheadbrot,
    Mousebrot,
    Turtlebrot,
    Hourglassbrot,
    Metabrot,
    Airbrot,
    Firebrot,
}

impl PrincipalSlice {
    pub const ALL: [PrincipalSlice; 8] = [
        PrincipalSlice::Tetrabrot,
        PrincipalSlice::Arrowheadbrot,
        PrincipalSlice::Mousebrot,
        PrincipalSlice::Turtlebrot,
        PrincipalSlice::Hourglassbrot,
        PrincipalSlice::Metabrot,
        PrincipalSlice::Airbrot,
        PrincipalSlice::Firebrot,
    ];

    /// The six fractal slices that reduce to complex orbits.
    pub const CHARACTERIZED: [PrincipalSlice; 6] = [
        PrincipalSlice::Tetrabrot,
        PrincipalSlice::Arrowheadbrot,
        PrincipalSlice::Mousebrot,
        PrincipalSlice::Metabrot,
        PrincipalSlice::Turtlebrot,
        PrincipalSlice::Hourglassbrot,
    ];

    pub fn units(self) -> [BasisUnit; 3] {
        use BasisUnit::*;
        match self {
            PrincipalSlice::Tetrabrot => [One, I1, I2],
            PrincipalSlice::Arrowheadbrot => [One, I1, J1],
            PrincipalSlice::Mousebrot => [I1, I2, J1],
            PrincipalSlice::Turtlebrot => [I1, I2, J2],
            PrincipalSlice::Hourglassbrot => [I1, J1, J2],
            PrincipalSlice::Metabrot => [I1, I2, I3],
            PrincipalSlice::Airbrot => [One, J1, J2],
            PrincipalSlice::Firebrot => [J1, J2, J3],
        }
    }

    pub fn spec(self) -> SliceSpec {
        SliceSpec::Principal(self.units())
    }

    pub fn name(self) -> &'static str {
        match self {
            PrincipalSlice::Tetrabrot => "tetrabrot",
            PrincipalSlice::Arrowheadbrot => "arrowheadbrot",
            PrincipalSlice::Mousebrot => "mousebrot",
            PrincipalSlice::Turtlebrot => "turtlebrot",
            PrincipalSlice::Hourglassbrot => "hourglassbrot",
            PrincipalSlice::Metabrot => "metabrot",
            PrincipalSlice::Airbrot => "airbrot",
            PrincipalSlice::Firebrot => "firebrot",
        }
    }
}

impl fmt::Display for PrincipalSlice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PrincipalSlice {
    type Err = SliceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PrincipalSlice::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| SliceError::UnknownSlice(s.to_string()))
    }
}

/// `u·ik + v·il + w·im` for the slice's three axes.
pub fn embed(spec: &SliceSpec, p: Point3) -> Tricomplex {
    match spec {
        SliceSpec::Principal(units) => {
            let mut x = Tricomplex::ZERO;
            for (u, c) in units.iter().zip(p.to_array()) {
                x[*u] += c;
            }
            x
        }
        SliceSpec::Idempotent(axes) => axes
            .iter()
            .zip(p.to_array())
            .fold(Tricomplex::ZERO, |acc, (e, c)| acc + e.value().scale(c)),
    }
}

/// Escape-time membership of the embedded point.
pub fn slice_membership(spec: &SliceSpec, p: Point3, cfg: &IterationConfig) -> EscapeResult {
    tc_escape(&embed(spec, p), cfg)
}

/// Escape-time membership in an idempotent slice; same as
/// [`slice_membership`], kept separate for callers that only accept the
/// idempotent kind.
pub fn idem_slice_membership(spec: &SliceSpec, p: Point3, cfg: &IterationConfig) -> EscapeResult {
    debug_assert!(spec.is_idempotent());
    slice_membership(spec, p, cfg)
}

/// Hyperbolic Mandelbrot set `|a + 7/8| + |b| ≤ 9/8`.
pub fn hyperbrot_closed(a: f64, b: f64) -> bool {
    (a + 0.875).abs() + b.abs() <= 1.125
}

/// Escape test for `a + b j1`, iterated as the two real orbits of `a ± b`.
pub fn hyperbrot_escape(a: f64, b: f64, cfg: &IterationConfig) -> EscapeResult {
    joint_escape(&[Complex::new(a + b, 0.0), Complex::new(a - b, 0.0)], cfg)
}

/// Escape test for `a2 i1 + a3 i2` via the orbits of `(a2 ± a3) i1`.
pub fn set_a_escape(a2: f64, a3: f64, cfg: &IterationConfig) -> EscapeResult {
    joint_escape(
        &[Complex::new(0.0, a2 + a3), Complex::new(0.0, a2 - a3)],
        cfg,
    )
}

pub fn set_a_membership(a2: f64, a3: f64, cfg: &IterationConfig) -> bool {
    in_m1(Complex::new(0.0, a2 + a3), cfg) && in_m1(Complex::new(0.0, a2 - a3), cfg)
}

fn in_m1(c: Complex, cfg: &IterationConfig) -> bool {
    complex_escape(c, cfg).bounded()
}

// Each 2D reduction below is written so that the complex parameters are the
// same floating-point values the idempotent decomposition produces.

fn tetrabrot_char(c1: f64, c2: f64, c3: f64, cfg: &IterationConfig) -> bool {
    in_m1(Complex::new(c1, c2 - c3), cfg) && in_m1(Complex::new(c1, c2 + c3), cfg)
}

fn arrowheadbrot_char(c1: f64, c2: f64, c4: f64, cfg: &IterationConfig) -> bool {
    in_m1(Complex::new(c1 + c4, c2), cfg) && in_m1(Complex::new(c1 - c4, c2), cfg)
}

fn mousebrot_char(c2: f64, c3: f64, c4: f64, cfg: &IterationConfig) -> bool {
    in_m1(Complex::new(c4, c2 - c3), cfg) && in_m1(Complex::new(-c4, c2 + c3), cfg)
}

fn metabrot_char(c2: f64, c3: f64, c5: f64, cfg: &IterationConfig) -> bool {
    set_a_membership(c2, c3 - c5, cfg) && set_a_membership(c2, c3 + c5, cfg)
}

// T(i1,i2,j2) = T*(i1,i2,-j1) ∩ T*(i1,i2,j1): two relabelled Mousebrots.
fn turtlebrot_char(c2: f64, c3: f64, c6: f64, cfg: &IterationConfig) -> bool {
    mousebrot_char(c2, c3, c6, cfg) && mousebrot_char(c2, c3, -c6, cfg)
}

// T(i1,j1,j2) = T*(1,i1,j1) ∩ T*(-1,i1,j1): two relabelled Arrowheadbrots.
fn hourglassbrot_char(c2: f64, c4: f64, c6: f64, cfg: &IterationConfig) -> bool {
    arrowheadbrot_char(c6, c2, c4, cfg) && arrowheadbrot_char(-c6, c2, c4, cfg)
}

/// Membership through the slice's characterization: reduction to complex
/// orbits for the six fractal slices, closed forms for the Airbrot and the
/// Firebrot.
pub fn char_membership(slice: PrincipalSlice, p: Point3, cfg: &IterationConfig) -> bool {
    let Point3 { u, v, w } = p;
    match slice {
        PrincipalSlice::Tetrabrot => tetrabrot_char(u, v, w, cfg),
        PrincipalSlice::Arrowheadbrot => arrowheadbrot_char(u, v, w, cfg),
        PrincipalSlice::Mousebrot => mousebrot_char(u, v, w, cfg),
        PrincipalSlice::Turtlebrot => turtlebrot_char(u, v, w, cfg),
        PrincipalSlice::Hourglassbrot => hourglassbrot_char(u, v, w, cfg),
        PrincipalSlice::Metabrot => metabrot_char(u, v, w, cfg),
        PrincipalSlice::Airbrot => airbrot_closed(u, v, w),
        PrincipalSlice::Firebrot => firebrot_closed(u, v, w),
    }
}

/// The four real idempotent components of `c4 j1 + c6 j2 + c7 j3`.
pub fn firebrot_components(c4: f64, c6: f64, c7: f64) -> [f64; 4] {
    let d = c4 - c6;
    let s = c4 + c6;
    [c7 + d, c7 - d, s - c7, -c7 - s]
}

/// The regular tetrahedron: every idempotent component at most `1/4`.
pub fn firebrot_closed(c4: f64, c6: f64, c7: f64) -> bool {
    firebrot_components(c4, c6, c7).iter().all(|&a| a <= 0.25)
}

/// The regular octahedron `|c1 + 7/8| + |c4| + |c6| ≤ 9/8`.
pub fn airbrot_closed(c1: f64, c4: f64, c6: f64) -> bool {
    (c1 + 0.875).abs() + c4.abs() + c6.abs() <= 1.125
}

/// The cube `[-2, 1/4]³`.
pub fn earthbrot_closed(x1: f64, x2: f64, x3: f64) -> bool {
    [x1, x2, x3].iter().all(|x| (-2.0..=0.25).contains(x))
}

/// `-(c‡5)`; on `span{j1,j2,j3}` this is the reflection `c6 ↦ -c6`.
pub fn star_dual(c: &Tricomplex) -> Tricomplex {
    -c.conjugate(5).expect("conjugate 5 exists")
}

/// Union of the Firebrot and its reflection through the `j2 = 0` plane
/// (a stellated octahedron), in `(j1, j2, j3)` coordinates.
pub fn starbrot_membership(p: Point3) -> bool {
    firebrot_closed(p.u, p.v, p.w) || firebrot_closed(p.u, -p.v, p.w)
}

/// Escape-time version of [`starbrot_membership`]: bounded if the point or
/// its dual image is bounded, otherwise the later of the two escapes.
pub fn starbrot_escape(p: Point3, cfg: &IterationConfig) -> EscapeResult {
    let c = embed(&PrincipalSlice::Firebrot.spec(), p);
    tc_escape(&c, cfg).union(tc_escape(&star_dual(&c), cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicomplex::{idem4_decompose, parse_tc, Idem4};
    use proptest::prelude::*;

    fn cfg() -> IterationConfig {
        IterationConfig::default()
    }

    fn p(u: f64, v: f64, w: f64) -> Point3 {
        Point3::new(u, v, w)
    }

    #[test]
    fn embed_examples() {
        let fire = PrincipalSlice::Firebrot.spec();
        assert_eq!(
            embed(&fire, p(1.0, 2.0, 3.0)),
            parse_tc("j1 + 2j2 + 3j3").unwrap()
        );
        let earth = SliceSpec::earthbrot();
        let prim = primitive_idempotents();
        let e = embed(&earth, p(1.0, 1.0, 1.0));
        assert_eq!(e, prim[0] + prim[1] + prim[2]);
        assert_eq!(e, Tricomplex::ONE - prim[3]);
        for spec in [fire, earth, PrincipalSlice::Metabrot.spec()] {
            assert_eq!(embed(&spec, p(0.0, 0.0, 0.0)), Tricomplex::ZERO);
        }
    }

    #[test]
    fn spec_validation() {
        use BasisUnit::*;
        assert_eq!(
            SliceSpec::principal([J1, J1, J2]),
            Err(SliceError::RepeatedUnit)
        );
        assert!(SliceSpec::principal([J1, J2, J3]).is_ok());
        assert_eq!(
            SliceSpec::parse_units("j1,j1,j2"),
            Err(SliceError::RepeatedUnit)
        );
        assert_eq!(
            SliceSpec::parse_units("j1,j2,j3").unwrap(),
            PrincipalSlice::Firebrot.spec()
        );
        assert_eq!(
            SliceSpec::parse_units("p1,p2,p3").unwrap(),
            SliceSpec::earthbrot()
        );
        assert_eq!(
            SliceSpec::parse_units("p1,i1p1,p3").unwrap().unit_names()[1],
            "i1p1"
        );
        assert_eq!(
            SliceSpec::parse_units("j1,p2,p3"),
            Err(SliceError::MixedKinds)
        );
        assert_eq!(
            SliceSpec::parse_units("j1,k2,j3"),
            Err(SliceError::UnknownUnit("k2".into()))
        );
        assert!(SliceSpec::parse_units("j1,j2").is_err());
    }

    #[test]
    fn idem_basis_values() {
        let i1p1 = IdemBasis::new(0, true).value();
        let mut e = [Complex::new(0.0, 0.0); 4];
        e[0] = Complex::new(0.0, 1.0);
        assert_eq!(idem4_decompose(&i1p1), Idem4(e));
    }

    #[test]
    fn slice_membership_examples() {
        let airbrot = PrincipalSlice::Airbrot.spec();
        assert!(slice_membership(&airbrot, p(0.0, 0.0, 0.0), &cfg()).bounded());
        let tetra = PrincipalSlice::Tetrabrot.spec();
        assert!(!slice_membership(&tetra, p(0.3, 0.0, 0.0), &cfg()).bounded());
        let fire = PrincipalSlice::Firebrot.spec();
        assert!(slice_membership(&fire, p(0.25, 0.25, 0.25), &cfg()).bounded());
    }

    #[test]
    fn hyperbrot_examples() {
        assert!(hyperbrot_closed(0.25, 0.0));
        assert!(hyperbrot_closed(-0.875, 1.125));
        assert!(!hyperbrot_closed(-0.875, 1.2));
        assert!(hyperbrot_closed(0.0, 0.0));

        assert!(hyperbrot_escape(0.0, 0.0, &cfg()).bounded());
        assert!(hyperbrot_escape(0.25, 0.0, &cfg()).bounded());
        assert!(!hyperbrot_escape(0.3, 0.0, &cfg()).bounded());
    }

    #[test]
    fn set_a_examples() {
        assert!(set_a_membership(0.0, 0.0, &cfg()));
        assert!(set_a_membership(0.5, 0.5, &cfg()));
        assert!(!set_a_membership(1.5, 0.0, &cfg()));
        assert_eq!(
            set_a_escape(1.5, 0.0, &cfg()).bounded(),
            set_a_membership(1.5, 0.0, &cfg())
        );
    }

    #[test]
    fn arrowheadbrot_edge_cases() {
        let slice = PrincipalSlice::Arrowheadbrot;
        assert!(!char_membership(slice, p(0.0, 0.0, 1.125), &cfg()));
        assert!(char_membership(slice, p(-0.875, 0.0, 1.125), &cfg()));
        assert!(slice_membership(&slice.spec(), p(-0.875, 0.0, 1.125), &cfg()).bounded());
    }

    #[test]
    fn tetrabrot_flat_section_is_m1() {
        for &(a, b) in &[
            (-0.5, 0.3),
            (0.3, 0.0),
            (-1.0, 0.2),
            (-0.1, 0.9),
            (0.4, 0.4),
        ] {
            assert_eq!(
                char_membership(PrincipalSlice::Tetrabrot, p(a, b, 0.0), &cfg()),
                complex_escape(Complex::new(a, b), &cfg()).bounded()
            );
        }
    }

    #[test]
    fn closed_form_examples() {
        assert!(firebrot_closed(0.0, 0.0, 0.0));
        assert!(firebrot_closed(0.25, 0.25, 0.25));
        assert!(!firebrot_closed(0.3, 0.0, 0.0));

        assert!(airbrot_closed(0.25, 0.0, 0.0));
        assert!(airbrot_closed(0.0, 0.0, 0.0));
        assert!(airbrot_closed(-0.875, 0.5625, 0.5625));
        assert!(!airbrot_closed(-0.875, 0.5625, 0.6));

        assert!(earthbrot_closed(0.0, 0.0, 0.0));
        assert!(earthbrot_closed(0.25, -2.0, -1.0));
        assert!(!earthbrot_closed(0.3, 0.0, 0.0));
    }

    #[test]
    fn firebrot_components_match_decomposition() {
        let (c4, c6, c7) = (0.1, -0.3, 0.7);
        let e = idem4_decompose(&embed(&PrincipalSlice::Firebrot.spec(), p(c4, c6, c7)));
        let re: Vec<f64> = e.components().iter().map(|z| z.re).collect();
        assert_eq!(re, firebrot_components(c4, c6, c7).to_vec());
    }

    #[test]
    fn star_dual_examples() {
        assert_eq!(
            star_dual(&parse_tc("j2").unwrap()),
            parse_tc("-j2").unwrap()
        );
        assert_eq!(
            star_dual(&parse_tc("j1 + j3").unwrap()),
            parse_tc("j1 + j3").unwrap()
        );
        let c = parse_tc("0.5 - i1 + 2j2 - 0.25i4").unwrap();
        assert_eq!(star_dual(&star_dual(&c)), c);
    }

    #[test]
    fn starbrot_examples() {
        assert!(starbrot_membership(p(0.25, 0.25, 0.25)));
        assert!(starbrot_membership(p(0.25, -0.25, 0.25)));
        assert!(!starbrot_membership(p(0.3, 0.3, 0.3)));
        assert!(!firebrot_closed(0.25, -0.25, 0.25));
        assert!(starbrot_escape(p(0.25, -0.25, 0.25), &cfg()).bounded());
        assert!(!starbrot_escape(p(0.3, 0.3, 0.3), &cfg()).bounded());
    }

    #[test]
    fn earthbrot_idempotent_slice() {
        let earth = SliceSpec::earthbrot();
        assert!(idem_slice_membership(&earth, p(0.0, 0.0, 0.0), &cfg()).bounded());
        assert!(idem_slice_membership(&earth, p(0.25, 0.25, 0.25), &cfg()).bounded());
        assert!(!idem_slice_membership(&earth, p(0.3, 0.0, 0.0), &cfg()).bounded());
    }

    // Alternative Airbrot evaluation: c1 + c4 j1 must lie in both Hyperbrots
    // shifted by ∓c6 j1.
    fn airbrot_union_form(c1: f64, c4: f64, c6: f64) -> bool {
        hyperbrot_closed(c1, c4 + c6) && hyperbrot_closed(c1, c4 - c6)
    }

    // Sections of the Firebrot at fixed c6 = y are rectangles in the rotated
    // coordinates s = c4 + c7, t = c4 - c7.
    #[test]
    fn firebrot_sections_are_rectangles() {
        let cfg = IterationConfig::with_max_iter(400);
        let fire = PrincipalSlice::Firebrot.spec();
        for k in -4..=4 {
            let y = k as f64 / 17.0;
            let (a, b) = (0.25 + y, 0.25 - y);
            let n = 40;
            for i in 0..n {
                for j in 0..n {
                    let s = -0.6 + 1.2 * (i as f64 + 0.5) / n as f64;
                    let t = -0.6 + 1.2 * (j as f64 + 0.5) / n as f64;
                    let (c4, c7) = ((s + t) / 2.0, (s - t) / 2.0);
                    let margin = 0.02;
                    let inside = s.abs() <= a - margin && t.abs() <= b - margin;
                    let outside = s.abs() > a + margin || t.abs() > b + margin;
                    let got = slice_membership(&fire, p(c4, y, c7), &cfg).bounded();
                    if inside {
                        assert!(got, "y={y} s={s} t={t}");
                    }
                    if outside {
                        assert!(!got, "y={y} s={s} t={t}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn airbrot_forms_agree(c1 in -2.3f64..0.6, c4 in -1.3f64..1.3, c6 in -1.3f64..1.3) {
            prop_assert_eq!(airbrot_closed(c1, c4, c6), airbrot_union_form(c1, c4, c6));
        }

        #[test]
        fn firebrot_symmetries(u in -0.8f64..0.8, v in -0.8f64..0.8, w in -0.8f64..0.8) {
            let base = firebrot_closed(u, v, w);
            prop_assert_eq!(firebrot_closed(-u, -v, w), base);
            prop_assert_eq!(firebrot_closed(u, -v, -w), base);
            prop_assert_eq!(firebrot_closed(-u, v, -w), base);
        }

        #[test]
        fn airbrot_symmetries(c1 in -2.3f64..0.6, c4 in -1.3f64..1.3, c6 in -1.3f64..1.3) {
            let base = airbrot_closed(c1, c4, c6);
            prop_assert_eq!(airbrot_closed(c1, -c4, c6), base);
            prop_assert_eq!(airbrot_closed(c1, c4, -c6), base);
            prop_assert_eq!(airbrot_closed(c1, -c4, -c6), base);
        }

        #[test]
        fn airbrot_reflection(k in -64i32..=28, c4 in -1.3f64..1.3, c6 in -1.3f64..1.3) {
            // dyadic c1 so that -7/4 - c1 is exact
            let c1 = k as f64 / 32.0;
            prop_assert_eq!(airbrot_closed(-1.75 - c1, c4, c6), airbrot_closed(c1, c4, c6));
        }

        #[test]
        fn starbrot_reflection_invariant(u in -0.8f64..0.8, v in -0.8f64..0.8, w in -0.8f64..0.8) {
            prop_assert_eq!(starbrot_membership(p(u, v, w)), starbrot_membership(p(u, -v, w)));
        }

        #[test]
        fn closed_forms_are_sound(u in -2.3f64..0.6, v in -1.3f64..1.3, w in -1.3f64..1.3) {
            let cfg = IterationConfig::with_max_iter(300);
            if airbrot_closed(u, v, w) {
                prop_assert!(slice_membership(&PrincipalSlice::Airbrot.spec(), p(u, v, w), &cfg).bounded());
            }
            let (a, b, c) = (v * 0.6, w * 0.6, u * 0.3);
            if firebrot_closed(a, b, c) {
                prop_assert!(slice_membership(&PrincipalSlice::Firebrot.spec(), p(a, b, c), &cfg).bounded());
            }
            let (x, y, z) = (u, v * 1.7 - 0.9, w * 1.7 - 0.9);
            if earthbrot_closed(x, y, z) {
                prop_assert!(idem_slice_membership(&SliceSpec::earthbrot(), p(x, y, z), &cfg).bounded());
            }
            if hyperbrot_closed(u, v) {
                prop_assert!(hyperbrot_escape(u, v, &cfg).bounded());
            }
        }

        #[test]
        fn characterizations_match_iteration(
            idx in 0usize..6,
            u in -2.2f64..0.7,
            v in -1.3f64..1.3,
            w in -1.3f64..1.3,
        ) {
            let slice = [
                PrincipalSlice::Tetrabrot,
                PrincipalSlice::Arrowheadbrot,
                PrincipalSlice::Mousebrot,
                PrincipalSlice::Turtlebrot,
                PrincipalSlice::Hourglassbrot,
                PrincipalSlice::Metabrot,
            ][idx];
            let cfg = IterationConfig::with_max_iter(200);
            let pt = p(u, v, w);
            prop_assert_eq!(
                char_membership(slice, pt, &cfg),
                slice_membership(&slice.spec(), pt, &cfg).bounded()
            );
        }
    }
}
