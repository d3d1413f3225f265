//! Text form of tricomplex numbers.
//!
//! Grammar: a sum of signed terms `[coef][unit]`, where `unit` is one of
//! `i1 i2 i3 i4 j1 j2 j3` and `coef` is a decimal literal (default 1).
//! At least one of `coef` and `unit` must be present; repeated units add up.

use std::fmt::Write;

use thiserror::Error;

use super::tricomplex::Tricomplex;
use super::unit::BasisUnit;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("unknown unit")]
    UnknownUnit,
    #[error("malformed number")]
    MalformedNumber,
    #[error("expected `+` or `-`")]
    ExpectedOperator,
    #[error("expected a term")]
    ExpectedTerm,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            offset: self.pos,
            kind,
        }
    }

    fn number(&mut self) -> Result<Option<f64>, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9' | b'.')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(None);
        }
        // exponent only when followed by a digit or sign+digit
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mut look = self.pos + 1;
            if matches!(self.src.get(look), Some(b'+' | b'-')) {
                look += 1;
            }
            if matches!(self.src.get(look), Some(b'0'..=b'9')) {
                self.pos = look;
                while matches!(self.peek(), Some(b'0'..=b'9')) {
                    self.pos += 1;
                }
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Some(v)),
            _ => Err(ParseError {
                offset: start,
                kind: ParseErrorKind::MalformedNumber,
            }),
        }
    }

    fn unit(&mut self) -> Result<Option<BasisUnit>, ParseError> {
        match self.peek() {
            Some(b) if b.is_ascii_alphabetic() => {}
            _ => return Ok(None),
        }
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match text.parse::<BasisUnit>() {
            Ok(BasisUnit::One) | Err(_) => Err(ParseError {
                offset: start,
                kind: ParseErrorKind::UnknownUnit,
            }),
            Ok(u) => Ok(Some(u)),
        }
    }
}

/// Parse the text form of a tricomplex number.
pub fn parse_tc(text: &str) -> Result<Tricomplex, ParseError> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.err(ParseErrorKind::Empty));
    }
    let mut out = Tricomplex::ZERO;
    let mut first = true;
    loop {
        cur.skip_ws();
        let mut sign = 1.0;
        match cur.peek() {
            Some(b'+') => cur.pos += 1,
            Some(b'-') => {
                sign = -1.0;
                cur.pos += 1;
            }
            Some(_) if first => {}
            Some(_) => return Err(cur.err(ParseErrorKind::ExpectedOperator)),
            None => break,
        }
        cur.skip_ws();
        let term_start = cur.pos;
        let coef = cur.number()?;
        let unit = cur.unit()?;
        if coef.is_none() && unit.is_none() {
            return Err(ParseError {
                offset: term_start,
                kind: ParseErrorKind::ExpectedTerm,
            });
        }
        out[unit.unwrap_or(BasisUnit::One)] += sign * coef.unwrap_or(1.0);
        first = false;
    }
    Ok(out)
}

/// Canonical text form: terms in basis order, zero terms omitted, `0` for
/// zero. Coefficients use the shortest decimal that reads back exactly.
pub fn format_tc(a: &Tricomplex) -> String {
    let mut out = String::new();
    for u in BasisUnit::ALL {
        let x = a[u];
        if x == 0.0 {
            continue;
        }
        let mag = x.abs();
        if out.is_empty() {
            if x < 0.0 {
                out.push('-');
            }
        } else {
            out.push_str(if x < 0.0 { " - " } else { " + " });
        }
        match u {
            BasisUnit::One => write!(out, "{mag}").unwrap(),
            _ if mag == 1.0 => out.push_str(u.name()),
            _ => write!(out, "{mag}{}", u.name()).unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_tc("1 - 2i1 + 0.25j3").unwrap(),
            Tricomplex::new([1.0, -2.0, 0.0, 0.0, 0.0, 0.0, 0.25, 0.0])
        );
        assert_eq!(
            parse_tc("j1+j1").unwrap(),
            Tricomplex::new([0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0])
        );
        assert_eq!(
            parse_tc("-i4").unwrap(),
            Tricomplex::scaled_unit(-1.0, BasisUnit::I4)
        );
        assert_eq!(parse_tc("  3 ").unwrap(), Tricomplex::real(3.0));
        assert_eq!(
            parse_tc("1.5e-3j2").unwrap(),
            Tricomplex::scaled_unit(1.5e-3, BasisUnit::J2)
        );
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_tc("2k1"),
            Err(ParseError {
                offset: 1,
                kind: ParseErrorKind::UnknownUnit
            })
        );
        assert_eq!(
            parse_tc(""),
            Err(ParseError {
                offset: 0,
                kind: ParseErrorKind::Empty
            })
        );
        assert_eq!(parse_tc("   ").unwrap_err().kind, ParseErrorKind::Empty);
        assert_eq!(
            parse_tc("1.2.3"),
            Err(ParseError {
                offset: 0,
                kind: ParseErrorKind::MalformedNumber
            })
        );
        assert_eq!(
            parse_tc("1 +").unwrap_err().kind,
            ParseErrorKind::ExpectedTerm
        );
        assert_eq!(
            parse_tc("1 2").unwrap_err().kind,
            ParseErrorKind::ExpectedOperator
        );
        assert_eq!(
            parse_tc("i5").unwrap_err().kind,
            ParseErrorKind::UnknownUnit
        );
        assert_eq!(parse_tc("31").unwrap(), Tricomplex::real(31.0));
    }

    #[test]
    fn format_examples() {
        let a = Tricomplex::new([0.0, 0.0, 0.0, 1.0, 0.0, -1.0, 0.0, 0.0]);
        assert_eq!(format_tc(&a), "j1 - j2");
        assert_eq!(format_tc(&Tricomplex::ZERO), "0");
        assert_eq!(format_tc(&Tricomplex::real(0.5)), "0.5");
        assert_eq!(
            format_tc(&Tricomplex::scaled_unit(-1.0, BasisUnit::J3)),
            "-j3"
        );
        assert_eq!(format_tc(&parse_tc("-2 + 0.25i1").unwrap()), "-2 + 0.25i1");
    }

    proptest! {
        #[test]
        fn format_parse_roundtrip(x in proptest::array::uniform8(-1e6f64..1e6)) {
            let a = Tricomplex::new(x);
            prop_assert_eq!(parse_tc(&format_tc(&a)).unwrap(), a);
        }

        #[test]
        fn roundtrip_tiny_and_huge(m in -1.0f64..1.0, e in -300i32..300) {
            let a = Tricomplex::scaled_unit(m * 10f64.powi(e), BasisUnit::I3);
            prop_assert_eq!(parse_tc(&format_tc(&a)).unwrap(), a);
        }
    }
}
