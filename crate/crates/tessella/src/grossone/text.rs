//! Text form of grossone numerals.
//!
//! Canonical output lists terms by decreasing exponent, e.g.
//! `3*G^2 + 2*G + 5 + 7*G^-1`.  The parser accepts the superset of full
//! expressions over `+ - * / ^ ( )`, integer literals, and `G`, so sums,
//! products, and monomial divisions all round-trip: `(G+1)*(G-1)` parses to
//! `G^2 - 1`, and `G - G` to `0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{GrossNumber, GrossoneError};

impl std::fmt::Display for GrossNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exponent, coefficient)) in self.terms().enumerate() {
            if i == 0 {
                if coefficient.is_negative() {
                    write!(f, "-")?;
                }
            } else if coefficient.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_term(f, &coefficient.abs(), exponent)?;
        }
        Ok(())
    }
}

fn write_term(
    f: &mut std::fmt::Formatter<'_>,
    coefficient: &BigRational,
    exponent: &BigRational,
) -> std::fmt::Result {
    if exponent.is_zero() {
        return write!(f, "{coefficient}");
    }
    if !coefficient.is_one() {
        write!(f, "{coefficient}*")?;
    }
    if exponent.is_one() {
        write!(f, "G")
    } else if exponent.is_integer() {
        write!(f, "G^{exponent}")
    } else {
        write!(f, "G^({exponent})")
    }
}

impl std::str::FromStr for GrossNumber {
    type Err = GrossoneError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Parses an expression over grossone numerals.
pub fn parse(text: &str) -> Result<GrossNumber, GrossoneError> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let value = parser.expression()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> GrossoneError {
        GrossoneError::Parse {
            at: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expression(&mut self) -> Result<GrossNumber, GrossoneError> {
        let mut value = self.term()?;
        loop {
            if self.eat(b'+') {
                value = value.add(&self.term()?);
            } else if self.eat(b'-') {
                value = value.sub(&self.term()?);
            } else {
                return Ok(value);
            }
        }
    }

    fn term(&mut self) -> Result<GrossNumber, GrossoneError> {
        let mut value = self.factor()?;
        loop {
            if self.eat(b'*') {
                value = value.mul(&self.factor()?);
            } else if self.eat(b'/') {
                value = value.div(&self.factor()?)?;
            } else {
                return Ok(value);
            }
        }
    }

    fn factor(&mut self) -> Result<GrossNumber, GrossoneError> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        if self.eat(b'+') {
            return self.factor();
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<GrossNumber, GrossoneError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let value = self.expression()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(value)
            }
            Some(b'G') => {
                self.pos += 1;
                if self.eat(b'^') {
                    let exponent = self.exponent()?;
                    Ok(GrossNumber::grossone_pow(exponent))
                } else {
                    Ok(GrossNumber::grossone())
                }
            }
            Some(b) if b.is_ascii_digit() => {
                let digits = self.digits()?;
                Ok(GrossNumber::from_integer(digits))
            }
            _ => Err(self.error("expected a number, 'G', or '('")),
        }
    }

    /// Exponent of `G`: a signed integer, or a parenthesized signed rational
    /// such as `(1/2)`.
    fn exponent(&mut self) -> Result<BigRational, GrossoneError> {
        if self.eat(b'(') {
            let value = self.signed_rational()?;
            if !self.eat(b')') {
                return Err(self.error("expected ')' after exponent"));
            }
            Ok(value)
        } else {
            let negative = self.eat(b'-');
            let digits = self.digits()?;
            let value = BigRational::from_integer(digits);
            Ok(if negative { -value } else { value })
        }
    }

    fn signed_rational(&mut self) -> Result<BigRational, GrossoneError> {
        let negative = self.eat(b'-');
        let numerator = self.digits()?;
        let value = if self.eat(b'/') {
            let denominator = self.digits()?;
            if denominator.is_zero() {
                return Err(GrossoneError::DivisionByZero);
            }
            BigRational::new(numerator, denominator)
        } else {
            BigRational::from_integer(numerator)
        };
        Ok(if negative { -value } else { value })
    }

    fn digits(&mut self) -> Result<BigInt, GrossoneError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit string"))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{compare, GrossNumber, GrossoneError};
    use super::parse;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use std::cmp::Ordering;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonical_display_orders_by_falling_exponent() {
        let x = GrossNumber::term(rat(3, 1), rat(2, 1))
            .add(&GrossNumber::term(rat(2, 1), rat(1, 1)))
            .add(&GrossNumber::from_integer(5))
            .add(&GrossNumber::term(rat(7, 1), rat(-1, 1)));
        assert_eq!(x.to_string(), "3*G^2 + 2*G + 5 + 7*G^-1");
    }

    #[test]
    fn display_edge_cases() {
        assert_eq!(GrossNumber::zero().to_string(), "0");
        assert_eq!(GrossNumber::one().to_string(), "1");
        assert_eq!(GrossNumber::grossone().to_string(), "G");
        assert_eq!(GrossNumber::grossone().neg().to_string(), "-G");
        assert_eq!(GrossNumber::grossone_pow(rat(1, 2)).to_string(), "G^(1/2)");
        assert_eq!(GrossNumber::term(rat(-2, 3), rat(-1, 2)).to_string(), "-2/3*G^(-1/2)");
        let x = GrossNumber::grossone().sub(&GrossNumber::one());
        assert_eq!(x.to_string(), "G - 1");
    }

    #[test]
    fn parse_accepts_expressions() {
        assert_eq!(parse("G - G").unwrap(), GrossNumber::zero());
        assert_eq!(parse("G/G").unwrap(), GrossNumber::one());
        assert_eq!(
            parse("(G+1)*(G-1)").unwrap(),
            GrossNumber::grossone_pow(rat(2, 1)).sub(&GrossNumber::one())
        );
        assert_eq!(parse("1/G").unwrap(), GrossNumber::grossone_pow(rat(-1, 1)));
        assert_eq!(parse("2/3").unwrap(), GrossNumber::from_rational(rat(2, 3)));
        assert_eq!(
            parse("  3*G^2+2*G+5+7*G^-1 ").unwrap().to_string(),
            "3*G^2 + 2*G + 5 + 7*G^-1"
        );
        assert_eq!(parse("-G^(1/2)").unwrap(), GrossNumber::grossone_pow(rat(1, 2)).neg());
        assert_eq!(
            compare(&parse("G^(1/2)").unwrap(), &parse("1000000").unwrap()),
            Ordering::Greater
        );
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(matches!(parse(""), Err(GrossoneError::Parse { .. })));
        assert!(matches!(parse("G +"), Err(GrossoneError::Parse { .. })));
        assert!(matches!(parse("(G"), Err(GrossoneError::Parse { .. })));
        assert!(matches!(parse("G^"), Err(GrossoneError::Parse { .. })));
        assert!(matches!(parse("x + 1"), Err(GrossoneError::Parse { .. })));
        assert!(matches!(parse("3..5"), Err(GrossoneError::Parse { .. })));
        assert!(matches!(parse("1/0"), Err(GrossoneError::DivisionByZero)));
        assert!(matches!(
            parse("1/(G+1)"),
            Err(GrossoneError::NonMonomialDivisor(_))
        ));
    }
}
