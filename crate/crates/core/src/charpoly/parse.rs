//! Recursive-descent parser for character polynomial text such as
//! `"X[1,1]^2 - 1/2*X[1,2] + (X[2,1] - 1)*3"`.

use num_bigint::BigInt;

use super::CharPolynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Parses `text`. When `m` is given, any `X[k,j]` with `k > m` is rejected
/// and the result is declared to have `m` columns.
pub fn parse_charpoly(text: &str, m: Option<usize>) -> Result<CharPolynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        m,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(match m {
        Some(m) => out.with_columns(m),
        None => out,
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    m: Option<usize>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<CharPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CharPolynomial> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<CharPolynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<CharPolynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CharPolynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'X') => {
                self.pos += 1;
                self.expect(b'[')?;
                self.skip_ws();
                let start = self.pos;
                let k = self.integer()?;
                self.expect(b',')?;
                self.skip_ws();
                let j = self.integer()?;
                self.expect(b']')?;
                if k == 0 || j == 0 {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: "variable indices are 1-based".into(),
                    });
                }
                let k = usize::try_from(k).map_err(|_| self.err("index too large"))?;
                let j = u32::try_from(j).map_err(|_| self.err("index too large"))?;
                if let Some(m) = self.m {
                    if k > m {
                        return Err(Error::ColumnOutOfRange { k, m });
                    }
                }
                Ok(CharPolynomial::var(k, j))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                // `a/b` is a rational literal; division is not otherwise supported.
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.integer()?;
                    if den == 0 {
                        return Err(Error::DivisionByZero);
                    }
                    return Ok(CharPolynomial::constant(Rational::new(
                        BigInt::from(num),
                        BigInt::from(den),
                    )));
                }
                Ok(CharPolynomial::constant(Rational::from_integer(num.into())))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "integer too large".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn parses_basic_forms() {
        let p = parse_charpoly("X[1,1]^2 - X[1,2]", None).unwrap();
        assert_eq!(p.to_string(), "X[1,1]^2 - X[1,2]");
        let q = parse_charpoly("(X[1,1] - 1)*(X[1,1] + 1)", None).unwrap();
        assert_eq!(q.to_string(), "X[1,1]^2 - 1");
        let r = parse_charpoly(" 3/6 * X[2, 1] ", None).unwrap();
        assert_eq!(r.to_string(), "1/2*X[2,1]");
        assert_eq!(r.m(), 2);
        assert!(parse_charpoly("1", None).unwrap().is_one());
        assert!(parse_charpoly("-(-1)", None).unwrap().is_one());
    }

    #[test]
    fn round_trips_display() {
        for text in [
            "X[1,1]*X[2,1] - 2",
            "-1/3*X[1,3]^2 + X[1,1] + 7",
            "X[2,2]",
            "0",
        ] {
            let p = parse_charpoly(text, None).unwrap();
            assert_eq!(parse_charpoly(&p.to_string(), None).unwrap(), p, "{text}");
        }
    }

    #[test]
    fn reports_positions() {
        match parse_charpoly("X[1,1] + * 2", None) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("{other:?}"),
        }
        match parse_charpoly("X[1,1", None) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_charpoly("X[0,1]", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_charpoly("1 2", None), Err(Error::Syntax { .. })));
    }

    #[test]
    fn checks_declared_columns() {
        assert!(matches!(
            parse_charpoly("X[3,1]", Some(2)),
            Err(Error::ColumnOutOfRange { k: 3, m: 2 })
        ));
        assert_eq!(parse_charpoly("X[1,1]", Some(3)).unwrap().m(), 3);
    }

    #[test]
    fn rational_literals() {
        let p = parse_charpoly("1/2 + 1/3", None).unwrap();
        let c: Rational = p.terms().next().map(|(_, c)| c.clone()).unwrap();
        assert_eq!(c, ratio(5, 6));
        assert!(matches!(parse_charpoly("1/0", None), Err(Error::DivisionByZero)));
        assert_eq!(parse_charpoly("2^3", None).unwrap(), CharPolynomial::constant(int(8)));
    }
}
