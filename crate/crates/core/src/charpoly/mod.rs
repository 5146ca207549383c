//! Character polynomials: rational polynomials in the class functions
//! `X[k,j]` = number of `j`-cycles in the `k`-th symmetric-group factor.
//!
//! A single character polynomial defines a class function on every
//! `S_{d_1} x .. x S_{d_m}` at once, which is what lets statistics be
//! compared across degree vectors.

mod characters;
mod parse;
mod partition;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub use characters::{
    CharacterTable, irreducible_dimension,
    character_table, decompose_into_irreducibles, free_module_character, inner_product,
    irreducible_character_value, pad_partition, stable_inner_product,
};
pub use parse::parse_charpoly;
pub use partition::{cycle_types, partitions_of, CycleType, DegreeVector, Partition};

/// The variable `X[col,len]`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub col: usize,
    pub len: u32,
}

/// A product of variables with positive exponents, sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<Var, u32> = self.0.iter().copied().collect();
        for &(v, e) in &other.0 {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().collect())
    }

    fn eval(&self, c: &CycleType) -> Rational {
        let mut acc = Rational::one();
        for &(v, e) in &self.0 {
            let count = c.count(v.col, v.len);
            if count == 0 {
                return Rational::zero();
            }
            acc *= Rational::from_integer(count.into()).pow(e as i32);
        }
        acc
    }
}

// Degree first, so printing in descending order puts the constant last.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "X[{},{}]", v.col, v.len)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPolynomial {
    m: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl CharPolynomial {
    pub fn zero() -> Self {
        CharPolynomial {
            m: 1,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(col: usize, len: u32) -> Self {
        assert!(col >= 1 && len >= 1, "variables are 1-based");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(Var { col, len }), Rational::one());
        CharPolynomial { m: col, terms }
    }

    /// Column count: at least 1 and at least every column index in use.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Raises the declared column count.
    pub fn with_columns(mut self, m: usize) -> Self {
        self.m = self.m.max(m);
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|c| c.is_one())
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Largest cycle length `j` among the variables, 0 for constants.
    pub fn max_cycle_length(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.len))
            .max()
            .unwrap_or(0)
    }

    /// Largest column index actually used, 0 for constants.
    pub fn max_column(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.col))
            .max()
            .unwrap_or(0)
    }

    fn from_terms(m: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map = BTreeMap::new();
        for (mono, c) in terms {
            let slot = map.entry(mono).or_insert_with(Rational::zero);
            *slot += c;
        }
        map.retain(|_, c: &mut Rational| !c.is_zero());
        CharPolynomial { m: m.max(1), terms: map }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.m, self.terms.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one().with_columns(self.m), |acc, _| &acc * self)
    }

    /// Substitutes `X[k,j]` := number of `j`-cycles in column `k` of `c`.
    pub fn evaluate(&self, c: &CycleType) -> Result<Rational> {
        let used = self.max_column();
        if used > c.columns().len() {
            return Err(Error::SizeMismatch(format!(
                "polynomial uses column {used} but the cycle type has {} columns",
                c.columns().len()
            )));
        }
        Ok(self.terms.iter().map(|(mono, coef)| coef * mono.eval(c)).sum())
    }
}

impl Add for &CharPolynomial {
    type Output = CharPolynomial;
    fn add(self, rhs: &CharPolynomial) -> CharPolynomial {
        CharPolynomial::from_terms(
            self.m.max(rhs.m),
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(k, v)| (k.clone(), v.clone())),
        )
    }
}

impl Neg for &CharPolynomial {
    type Output = CharPolynomial;
    fn neg(self) -> CharPolynomial {
        CharPolynomial::from_terms(self.m, self.terms.iter().map(|(k, v)| (k.clone(), -v)))
    }
}

impl Sub for &CharPolynomial {
    type Output = CharPolynomial;
    fn sub(self, rhs: &CharPolynomial) -> CharPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &CharPolynomial {
    type Output = CharPolynomial;
    fn mul(self, rhs: &CharPolynomial) -> CharPolynomial {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.push((a.mul(b), ca * cb));
            }
        }
        CharPolynomial::from_terms(self.m.max(rhs.m), out)
    }
}

impl fmt::Display for CharPolynomial {
    /// Canonical form, e.g. `X[1,1]^2 - X[1,2] + 3/2`; parses back to itself.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mono, coef)) in self.terms.iter().rev().enumerate() {
            let negative = coef.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = coef.abs();
            if mono.0.is_empty() {
                f.write_str(&rational::to_text(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", rational::to_text(&mag))?;
            }
        }
        Ok(())
    }
}

/// `{monomial: rational}` with both sides as strings, in canonical term order.
impl Serialize for CharPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (mono, coef) in self.terms.iter().rev() {
            map.serialize_entry(&mono.to_string(), &rational::to_text(coef))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for CharPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        let mut acc = CharPolynomial::zero();
        for (mono, coef) in raw {
            let m = parse_charpoly(&mono, None).map_err(serde::de::Error::custom)?;
            let c = rational::parse(&coef).map_err(serde::de::Error::custom)?;
            acc = &acc + &m.scale(&c);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ct(cols: &[&[u32]]) -> CycleType {
        CycleType(cols.iter().map(|c| Partition::new(c.to_vec())).collect())
    }

    #[test]
    fn evaluate_examples() {
        let x11 = CharPolynomial::var(1, 1);
        assert_eq!(x11.evaluate(&ct(&[&[1, 1, 1]])).unwrap(), int(3));
        let x12 = CharPolynomial::var(1, 2);
        assert_eq!(x12.evaluate(&ct(&[&[2, 1, 1]])).unwrap(), int(1));
        let p = &x11.pow(2) - &x12;
        assert_eq!(p.evaluate(&ct(&[&[2, 1, 1]])).unwrap(), int(3));
        // cycle lengths beyond the degree evaluate to zero
        assert_eq!(CharPolynomial::var(1, 5).evaluate(&ct(&[&[2, 1]])).unwrap(), int(0));
    }

    #[test]
    fn evaluate_needs_columns() {
        let p = CharPolynomial::var(2, 1);
        assert!(p.evaluate(&ct(&[&[1]])).is_err());
    }

    #[test]
    fn display_is_canonical() {
        let p = &(&CharPolynomial::var(1, 1) * &CharPolynomial::var(2, 1)) - &CharPolynomial::constant(int(2));
        assert_eq!(p.to_string(), "X[1,1]*X[2,1] - 2");
        let q = &CharPolynomial::var(1, 1).pow(2) - &CharPolynomial::var(1, 2);
        assert_eq!(q.to_string(), "X[1,1]^2 - X[1,2]");
        assert_eq!(CharPolynomial::zero().to_string(), "0");
        assert_eq!((-&CharPolynomial::one()).to_string(), "-1");
    }

    #[test]
    fn json_form() {
        let p = parse_charpoly("X[1,1]^2 - 1/2*X[1,2] + 3", None).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"X[1,1]^2":"1","X[1,2]":"-1/2","1":"3"}"#);
        let back: CharPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn is_one() {
        assert!(CharPolynomial::one().is_one());
        assert!(!CharPolynomial::var(1, 1).is_one());
        assert!(parse_charpoly("X[1,1] - X[1,1] + 1", None).unwrap().is_one());
    }
}
