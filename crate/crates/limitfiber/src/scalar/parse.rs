use super::element::ScalarK;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse scalar `{input}`: {reason}")]
pub struct ParseScalarError {
    pub input: String,
    pub reason: String,
}

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt, String> {
        self.skip_ws();
        let st = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if st == self.i {
            return Err(format!("expected digits at offset {st}"));
        }
        let txt = std::str::from_utf8(&self.s[st..self.i]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn signed_int(&mut self) -> Result<i64, String> {
        let neg = self.eat(b'-');
        let v = self.int()?;
        let v: i64 = v.try_into().map_err(|_| "exponent out of range".to_string())?;
        Ok(if neg { -v } else { v })
    }

    /// z [ ^ k ]
    fn zpow(&mut self) -> Result<i64, String> {
        if !self.eat(b'z') {
            return Err(format!("expected `z` at offset {}", self.i));
        }
        if self.eat(b'^') {
            self.signed_int()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(i64, BigRational), String> {
        match self.peek() {
            Some(b'z') => Ok((self.zpow()?, BigRational::one())),
            Some(c) if c.is_ascii_digit() => {
                let a = self.int()?;
                let mut c = BigRational::from_integer(a);
                if self.eat(b'/') {
                    let b = self.int()?;
                    if b.is_zero() {
                        return Err("zero denominator".into());
                    }
                    c /= BigRational::from_integer(b);
                }
                if self.eat(b'*') {
                    Ok((self.zpow()?, c))
                } else {
                    Ok((0, c))
                }
            }
            other => Err(format!("unexpected {:?} at offset {}", other.map(char::from), self.i)),
        }
    }

    fn sum(&mut self) -> Result<ScalarK, String> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') {
                false
            } else if first {
                false
            } else {
                break;
            };
            first = false;
            let (e, c) = self.term()?;
            terms.push((e, if neg { -c } else { c }));
        }
        Ok(ScalarK::from_terms(&terms))
    }

    fn paren_sum(&mut self) -> Result<ScalarK, String> {
        if !self.eat(b'(') {
            return Err(format!("expected `(` at offset {}", self.i));
        }
        let v = self.sum()?;
        if !self.eat(b')') {
            return Err(format!("expected `)` at offset {}", self.i));
        }
        Ok(v)
    }

    fn scalar(&mut self) -> Result<ScalarK, String> {
        let v = if self.peek() == Some(b'(') {
            let n = self.paren_sum()?;
            if self.eat(b'/') {
                let d = self.paren_sum()?;
                if d.is_zero() {
                    return Err("zero denominator".into());
                }
                n / d
            } else {
                n
            }
        } else {
            self.sum()?
        };
        if self.peek().is_some() {
            return Err(format!("trailing input at offset {}", self.i));
        }
        Ok(v)
    }
}

impl FromStr for ScalarK {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor { s: s.as_bytes(), i: 0 };
        c.scalar().map_err(|reason| ParseScalarError { input: s.to_string(), reason })
    }
}
