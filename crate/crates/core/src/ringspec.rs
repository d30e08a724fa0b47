//! Textual ring expressions.
//!
//! ```text
//! expr := term { "x" term }
//! term := "Zn" "(" nat ")" | "poly" "(" expr "," poly ")" | "(" expr ")"
//! poly := mono { "+" mono }
//! mono := nat | [nat "*"] "x" [ "^" nat ]
//! nat  := digit { digit }
//! ```
//!
//! Whitespace is ignored and `x` between terms is a left-associative direct
//! product. Polynomial coefficients are listed constant-first, reduced mod
//! the base modulus, and must end in a leading 1.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::Error;
use crate::ring::{
    format_poly, make_modular_ring_capped, make_poly_quotient_ring, make_product_ring, FiniteRing,
};

/// Polynomial degrees above this are rejected while parsing.
const MAX_DEGREE: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingExpr {
    Modular(u64),
    Product(Box<RingExpr>, Box<RingExpr>),
    PolyQuotient { base: Box<RingExpr>, modulus: Vec<u64> },
}

impl RingExpr {
    pub fn product(a: RingExpr, b: RingExpr) -> RingExpr {
        RingExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn poly(base: RingExpr, modulus: Vec<u64>) -> RingExpr {
        RingExpr::PolyQuotient { base: Box::new(base), modulus }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("parse error at offset {offset}: expected {expected}, found {found}")]
    Parse {
        offset: usize,
        expected: String,
        found: String,
    },
    #[error("invalid ring spec at offset {offset}: {message}")]
    Semantic { offset: usize, message: String },
}

impl SpecError {
    pub fn offset(&self) -> usize {
        match self {
            SpecError::Parse { offset, .. } | SpecError::Semantic { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Zn,
    Poly,
    X,
    LParen,
    RParen,
    Comma,
    Plus,
    Star,
    Caret,
    Nat(Option<u64>),
    Other(char),
    Eof,
}

impl Tok {
    fn describe(self) -> String {
        match self {
            Tok::Zn => "\"Zn\"".into(),
            Tok::Poly => "\"poly\"".into(),
            Tok::X => "\"x\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::Comma => "\",\"".into(),
            Tok::Plus => "\"+\"".into(),
            Tok::Star => "\"*\"".into(),
            Tok::Caret => "\"^\"".into(),
            Tok::Nat(_) => "number".into(),
            Tok::Other(c) => format!("{c:?}"),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Next token and its byte span, without consuming it.
    fn peek(&mut self) -> (Tok, usize, usize) {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return (Tok::Eof, start, start);
        };
        for (kw, tok) in [("Zn", Tok::Zn), ("poly", Tok::Poly), ("x", Tok::X)] {
            if rest.starts_with(kw) {
                return (tok, start, start + kw.len());
            }
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(t) = single {
            return (t, start, start + 1);
        }
        if c.is_ascii_digit() {
            let len = rest.bytes().take_while(u8::is_ascii_digit).count();
            let value = rest[..len].parse::<u64>().ok();
            return (Tok::Nat(value), start, start + len);
        }
        (Tok::Other(c), start, start + c.len_utf8())
    }

    fn bump(&mut self) -> (Tok, usize) {
        let (t, start, end) = self.peek();
        self.pos = end;
        (t, start)
    }

    fn error(&self, expected: &str, found: Tok, offset: usize) -> SpecError {
        SpecError::Parse {
            offset,
            expected: expected.to_string(),
            found: found.describe(),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<usize, SpecError> {
        let (t, start, _) = self.peek();
        if t == want {
            self.bump();
            Ok(start)
        } else {
            Err(self.error(&want.describe(), t, start))
        }
    }

    fn nat(&mut self) -> Result<(u64, usize), SpecError> {
        match self.peek() {
            (Tok::Nat(Some(n)), start, _) => {
                self.bump();
                Ok((n, start))
            }
            (Tok::Nat(None), start, _) => Err(SpecError::Semantic {
                offset: start,
                message: "number does not fit in 64 bits".into(),
            }),
            (t, start, _) => Err(self.error("number", t, start)),
        }
    }

    fn expr(&mut self) -> Result<RingExpr, SpecError> {
        let mut lhs = self.term()?;
        while self.peek().0 == Tok::X {
            self.bump();
            let rhs = self.term()?;
            lhs = RingExpr::product(lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<RingExpr, SpecError> {
        let (t, start) = self.bump();
        match t {
            Tok::Zn => {
                self.expect(Tok::LParen)?;
                let (n, at) = self.nat()?;
                self.expect(Tok::RParen)?;
                if n < 2 {
                    return Err(SpecError::Semantic {
                        offset: at,
                        message: format!("Zn({n}) is not a nonzero ring; need n >= 2"),
                    });
                }
                Ok(RingExpr::Modular(n))
            }
            Tok::Poly => {
                self.expect(Tok::LParen)?;
                let (_, base_at, _) = self.peek();
                let base = self.expr()?;
                self.expect(Tok::Comma)?;
                let (_, poly_at, _) = self.peek();
                let terms = self.poly()?;
                self.expect(Tok::RParen)?;
                let RingExpr::Modular(m) = base else {
                    return Err(SpecError::Semantic {
                        offset: base_at,
                        message: "polynomial base must be Zn(m)".into(),
                    });
                };
                let degree = terms.iter().map(|&(_, k)| k).max().unwrap_or(0) as usize;
                let mut modulus = vec![0u64; degree + 1];
                for (c, k) in terms {
                    let slot = &mut modulus[k as usize];
                    *slot = ((*slot as u128 + c as u128) % m as u128) as u64;
                }
                if degree == 0 || modulus[degree] != 1 {
                    return Err(SpecError::Semantic {
                        offset: poly_at,
                        message: format!(
                            "modulus {} is not monic of degree >= 1 over Zn({m})",
                            format_poly(&modulus)
                        ),
                    });
                }
                Ok(RingExpr::poly(base, modulus))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => {
                // Report where the offending token starts, not past it.
                self.pos = start;
                Err(self.error("\"Zn\", \"poly\" or \"(\"", other, start))
            }
        }
    }

    /// Monomials as (coefficient, exponent) pairs.
    fn poly(&mut self) -> Result<Vec<(u64, u64)>, SpecError> {
        let mut terms = vec![self.mono()?];
        while self.peek().0 == Tok::Plus {
            self.bump();
            terms.push(self.mono()?);
        }
        Ok(terms)
    }

    fn mono(&mut self) -> Result<(u64, u64), SpecError> {
        let coeff = match self.peek().0 {
            Tok::Nat(_) => {
                let (c, _) = self.nat()?;
                if self.peek().0 != Tok::Star {
                    return Ok((c, 0));
                }
                self.bump();
                c
            }
            _ => 1,
        };
        self.expect(Tok::X)?;
        let mut exp = 1;
        if self.peek().0 == Tok::Caret {
            self.bump();
            let (k, at) = self.nat()?;
            if k > MAX_DEGREE {
                return Err(SpecError::Semantic {
                    offset: at,
                    message: format!("exponent {k} exceeds {MAX_DEGREE}"),
                });
            }
            exp = k;
        }
        Ok((coeff, exp))
    }
}

pub fn parse_ring_spec(text: &str) -> Result<RingExpr, SpecError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    let (t, start, _) = p.peek();
    if t != Tok::Eof {
        return Err(p.error("\"x\" or end of input", t, start));
    }
    Ok(e)
}

/// Canonical rendering; `parse_ring_spec(&format_ring_expr(e)) == Ok(e)`.
pub fn format_ring_expr(e: &RingExpr) -> String {
    match e {
        RingExpr::Modular(n) => format!("Zn({n})"),
        RingExpr::Product(a, b) => match **b {
            RingExpr::Product(..) => format!("{} x ({})", format_ring_expr(a), format_ring_expr(b)),
            _ => format!("{} x {}", format_ring_expr(a), format_ring_expr(b)),
        },
        RingExpr::PolyQuotient { base, modulus } => {
            format!("poly({}, {})", format_ring_expr(base), format_poly(modulus))
        }
    }
}

/// Builds the ring an expression denotes, refusing anything above `cap`
/// elements (including intermediate factors).
pub fn eval_ring_expr(e: &RingExpr, cap: usize) -> Result<FiniteRing, Error> {
    let mut ring = match e {
        RingExpr::Modular(n) => make_modular_ring_capped(*n, cap)?,
        RingExpr::Product(a, b) => {
            let a = eval_ring_expr(a, cap)?;
            let b = eval_ring_expr(b, cap)?;
            make_product_ring(&a, &b, cap)?
        }
        RingExpr::PolyQuotient { base, modulus } => {
            let base = eval_ring_expr(base, cap)?;
            make_poly_quotient_ring(&base, modulus, cap)?
        }
    };
    ring.set_label(format_ring_expr(e));
    Ok(ring)
}

/// Parses and evaluates in one step.
pub fn build_ring(text: &str, cap: usize) -> Result<FiniteRing, Error> {
    eval_ring_expr(&parse_ring_spec(text)?, cap)
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ring_expr(self))
    }
}

impl FromStr for RingExpr {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ring_spec(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::DEFAULT_ORDER_CAP;
    use RingExpr::*;

    fn parse(s: &str) -> RingExpr {
        parse_ring_spec(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn basic_forms() {
        assert_eq!(parse("Zn(6)"), Modular(6));
        assert_eq!(parse("Zn(2) x Zn(2)"), RingExpr::product(Modular(2), Modular(2)));
        assert_eq!(parse("poly(Zn(2), x^2+x+1)"), RingExpr::poly(Modular(2), vec![1, 1, 1]));
    }

    #[test]
    fn product_is_left_associative() {
        let e = parse("Zn(2) x Zn(3) x Zn(5)");
        assert_eq!(
            e,
            RingExpr::product(RingExpr::product(Modular(2), Modular(3)), Modular(5))
        );
        let r = parse("Zn(2) x (Zn(3) x Zn(5))");
        assert_eq!(format_ring_expr(&r), "Zn(2) x (Zn(3) x Zn(5))");
    }

    #[test]
    fn whitespace_and_adjacent_x() {
        assert_eq!(parse("  Zn ( 2 )xZn(3) "), RingExpr::product(Modular(2), Modular(3)));
        assert_eq!(parse("poly(Zn(3),x^3+2*x+1)"), parse("poly( Zn(3) , 1 + 2 * x + x ^ 3 )"));
    }

    #[test]
    fn coefficients_reduced_and_summed() {
        assert_eq!(parse("poly(Zn(3), 4*x^2 + x + x + 5)"), RingExpr::poly(Modular(3), vec![2, 2, 1]));
        assert_eq!(parse("poly((Zn(2)), x^2 + 3)"), RingExpr::poly(Modular(2), vec![1, 0, 1]));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_ring_expr(&Modular(6)), "Zn(6)");
        assert_eq!(format_ring_expr(&RingExpr::product(Modular(2), Modular(3))), "Zn(2) x Zn(3)");
        assert_eq!(format_ring_expr(&RingExpr::poly(Modular(2), vec![0, 0, 1])), "poly(Zn(2), x^2)");
        assert_eq!(format_ring_expr(&RingExpr::poly(Modular(5), vec![3, 0, 2, 1])), "poly(Zn(5), x^3+2*x^2+3)");
    }

    #[test]
    fn parse_errors() {
        let e = parse_ring_spec("Zn(").unwrap_err();
        assert_eq!(e.offset(), 3);
        assert!(matches!(e, SpecError::Parse { .. }));
        assert_eq!(parse_ring_spec("").unwrap_err().offset(), 0);
        assert_eq!(parse_ring_spec("Zn(x)").unwrap_err().offset(), 3);
        assert_eq!(parse_ring_spec("Zn(2) Zn(3)").unwrap_err().offset(), 6);
        assert_eq!(parse_ring_spec("Zn(2) x").unwrap_err().offset(), 7);
        assert_eq!(parse_ring_spec("poly(Zn(2) x^2)").unwrap_err().offset(), 12);
        assert_eq!(parse_ring_spec("Zq(2)").unwrap_err().offset(), 0);
    }

    #[test]
    fn semantic_errors() {
        assert!(matches!(parse_ring_spec("Zn(1)"), Err(SpecError::Semantic { offset: 3, .. })));
        assert!(matches!(parse_ring_spec("Zn(0)"), Err(SpecError::Semantic { .. })));
        assert!(matches!(parse_ring_spec("poly(Zn(2), 2*x^2+1)"), Err(SpecError::Semantic { offset: 12, .. })));
        assert!(matches!(parse_ring_spec("poly(Zn(2), 1)"), Err(SpecError::Semantic { .. })));
        assert!(matches!(
            parse_ring_spec("poly(Zn(2) x Zn(2), x+1)"),
            Err(SpecError::Semantic { offset: 5, .. })
        ));
        assert!(matches!(parse_ring_spec("Zn(99999999999999999999)"), Err(SpecError::Semantic { .. })));
        assert!(matches!(parse_ring_spec("poly(Zn(2), x^65)"), Err(SpecError::Semantic { .. })));
    }

    #[test]
    fn evaluation() {
        let r = eval_ring_expr(&Modular(5), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(r.order(), 5);
        let r = eval_ring_expr(&RingExpr::product(Modular(2), Modular(3)), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(r.order(), 6);
        assert_eq!(r.label(), "Zn(2) x Zn(3)");
        let r = eval_ring_expr(&RingExpr::poly(Modular(2), vec![1, 1, 1]), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.label(), "poly(Zn(2), x^2+x+1)");
    }

    #[test]
    fn evaluation_respects_cap() {
        assert!(matches!(build_ring("Zn(16) x Zn(64)", 512), Err(Error::OrderCapExceeded { order: 1024, .. })));
        assert!(matches!(build_ring("Zn(600)", 512), Err(Error::OrderCapExceeded { .. })));
        assert!(build_ring("Zn(600)", 600).is_ok());
    }
}
