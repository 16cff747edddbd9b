//! Text form of `Q(w)` elements.
//!
//! ```text
//! element  := "inf" | signed_term ( ("+" | "-") term )*
//! signed_term := ("+" | "-")? term
//! term     := rational ( "*"? "w" )? | "w"
//! rational := integer ( "/" nonzero-unsigned-integer )?
//! ```
//!
//! Whitespace is ignored. At most one constant term and one `w` term.
//! Output is canonical: `p/q` parts in lowest terms, unit `w` coefficients
//! printed as `w` / `-w`, zero parts omitted, `0` for zero and `inf` for infinity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{EisRat, ExtRat};
use crate::error::{Error, Result};

pub fn parse_eisrat(text: &str) -> Result<ExtRat> {
    Parser::new(text).element()
}

pub fn format_eisrat(x: &ExtRat) -> String {
    let x = match x {
        ExtRat::Infinity => return "inf".to_string(),
        ExtRat::Finite(x) => x,
    };
    let (c0, c1) = x.coords();
    let mut out = String::new();
    if !c0.is_zero() {
        out.push_str(&fmt_rational(&c0));
    }
    if !c1.is_zero() {
        if c1.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c1.abs();
        if !mag.is_one() {
            out.push_str(&fmt_rational(&mag));
            out.push('*');
        }
        out.push('w');
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
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

    fn element(&mut self) -> Result<ExtRat> {
        if self.peek() == Some(b'i') {
            let start = self.pos;
            if self.bytes[start..].starts_with(b"inf") {
                self.pos += 3;
                self.expect_end()?;
                return Ok(ExtRat::Infinity);
            }
            return Err(Error::parse(start, "expected \"inf\""));
        }
        if self.peek().is_none() {
            return Err(Error::parse(self.pos, "empty literal"));
        }

        let mut constant: Option<BigRational> = None;
        let mut linear: Option<BigRational> = None;
        let mut first = true;
        loop {
            let start = self.peek().map(|_| self.pos);
            let negative = match self.peek() {
                None if !first => break,
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                Some(_) => return Err(Error::parse(self.pos, "expected '+' or '-'")),
                None => unreachable!(),
            };
            let term_start = start.unwrap_or(self.pos);
            let (mut coeff, is_w) = self.term()?;
            if negative {
                coeff = -coeff;
            }
            let slot = if is_w { &mut linear } else { &mut constant };
            if slot.is_some() {
                let what = if is_w { "w term" } else { "constant term" };
                return Err(Error::parse(term_start, format!("duplicate {what}")));
            }
            *slot = Some(coeff);
            first = false;
        }
        let zero = BigRational::zero();
        Ok(ExtRat::Finite(EisRat::from_coords(
            constant.as_ref().unwrap_or(&zero),
            linear.as_ref().unwrap_or(&zero),
        )))
    }

    /// Returns the coefficient and whether the term carries `w`.
    fn term(&mut self) -> Result<(BigRational, bool)> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                Ok((BigRational::one(), true))
            }
            Some(c) if c.is_ascii_digit() => {
                let q = self.rational()?;
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        if self.peek() != Some(b'w') {
                            return Err(Error::parse(self.pos, "expected 'w' after '*'"));
                        }
                        self.pos += 1;
                        Ok((q, true))
                    }
                    Some(b'w') => {
                        self.pos += 1;
                        Ok((q, true))
                    }
                    _ => Ok((q, false)),
                }
            }
            Some(_) => Err(Error::parse(self.pos, "expected a number or 'w'")),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.unsigned()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(Error::parse(self.pos, "expected denominator"));
            }
            let den = self.unsigned()?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }

    fn unsigned(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected digits"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(Error::parse(self.pos, "trailing input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::EisInt;

    fn parse(s: &str) -> EisRat {
        match parse_eisrat(s).unwrap() {
            ExtRat::Finite(x) => x,
            ExtRat::Infinity => panic!("unexpected infinity"),
        }
    }

    #[test]
    fn literals() {
        assert_eq!(parse("1"), EisRat::one());
        assert_eq!(parse("2-1*w"), EisInt::new(2, -1).into());
        assert_eq!(parse("2 - w"), EisInt::new(2, -1).into());
        assert_eq!(parse("-w"), EisInt::new(0, -1).into());
        assert_eq!(parse("3w+1"), EisInt::new(1, 3).into());
        assert_eq!(parse_eisrat("inf").unwrap(), ExtRat::Infinity);
        assert_eq!(parse_eisrat(" inf ").unwrap(), ExtRat::Infinity);

        let x = parse("-1/3+2/3*w");
        assert_eq!(&x * &EisRat::from_int(3), EisInt::new(-1, 2).into());
        assert!(x.num().gcd(x.den()).unwrap().is_unit());
        assert_eq!(format_eisrat(&x.clone().into()), "-1/3+2/3*w");
    }

    #[test]
    fn formatting() {
        let f = |s: &str| format_eisrat(&parse_eisrat(s).unwrap());
        assert_eq!(f("0"), "0");
        assert_eq!(f("0*w + 0"), "0");
        assert_eq!(f("w"), "w");
        assert_eq!(f("-1-w"), "-1-w");
        assert_eq!(f("4/6w"), "2/3*w");
        assert_eq!(f("-5/10"), "-1/2");
    }

    #[test]
    fn errors_carry_offsets() {
        let off = |s: &str| match parse_eisrat(s) {
            Err(Error::Parse { offset, .. }) => offset,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(off(""), 0);
        assert_eq!(off("1+"), 2);
        assert_eq!(off("1+2"), 1);
        assert_eq!(off("w+w"), 1);
        assert_eq!(off("1x"), 1);
        assert_eq!(off("1*"), 2);
        assert_eq!(off("infinity"), 3);
        assert_eq!(off("--1"), 1);
        assert_eq!(parse_eisrat("1/0"), Err(Error::DivisionByZero));
    }
}
