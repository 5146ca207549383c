//! Polynomials in one variable `q` with rational coefficients, used for
//! point counts as functions of the field size.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};

/// Coefficients in ascending degree, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly(Vec<Rational>);

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    /// Coefficient of `q^i`, zero past the end.
    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.denom().is_one())
    }

    pub fn eval(&self, q: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_int(&self, q: u64) -> Rational {
        self.eval(&Rational::from_integer(BigInt::from(q)))
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::new(self.0.iter().map(|x| x * c).collect())
    }
}

impl fmt::Display for QPoly {
    /// Descending powers, e.g. `q^3 - 3*q^2 + 2*q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            let var = match i {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{i}"),
            };
            if var.is_empty() {
                f.write_str(&rational::to_text(&mag))?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{}*{var}", rational::to_text(&mag))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct QPolyRepr {
    text: String,
    #[serde(with = "rational::vec_as_text")]
    coefficients: Vec<Rational>,
}

/// `{"text": "q^2 - q", "coefficients": ["0", "-1", "1"]}`, ascending.
impl Serialize for QPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QPolyRepr {
            text: self.to_string(),
            coefficients: self.0.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(QPoly::new(QPolyRepr::deserialize(d)?.coefficients))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn display_and_eval() {
        let p = QPoly::from_ints(&[0, 2, -3, 1]);
        assert_eq!(p.to_string(), "q^3 - 3*q^2 + 2*q");
        assert_eq!(p.eval_int(3), int(6));
        assert_eq!(p.eval_int(5), int(60));
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(QPoly::new(vec![ratio(-1, 2)]).to_string(), "-1/2");
        assert_eq!(p.degree(), Some(3));
    }

    #[test]
    fn arithmetic() {
        let a = QPoly::from_ints(&[-1, 1]);
        let b = QPoly::from_ints(&[1, 1]);
        assert_eq!(a.mul(&b), QPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(a.add(&b), QPoly::from_ints(&[0, 2]));
        assert!(a.add(&a.scale(&int(-1))).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let p = QPoly::new(vec![ratio(1, 2), int(0), int(-1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"text":"-q^2 + 1/2","coefficients":["1/2","0","-1"]}"#);
        assert_eq!(serde_json::from_str::<QPoly>(&s).unwrap(), p);
    }
}
