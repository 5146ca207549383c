//! Finite fields `F_q`, `q = p^e`, as dense residue vectors in the power basis
//! of a canonical irreducible modulus.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on `q` accepted by [`FieldSpec::new`].
pub const DEFAULT_FIELD_LIMIT: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Splits a prime power into `(p, e)`, or `None` when `q` is not one.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    e: usize,
    q: u64,
    /// Monic modulus, low-to-high, length `e + 1`.
    modulus: Vec<u32>,
}

/// An element of some `F_q`; coordinates in the power basis `1, t, .., t^(e-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow(u64),
}

impl FieldSpec {
    pub fn new(p: u64, e: usize) -> Result<Self> {
        Self::with_limit(p, e, DEFAULT_FIELD_LIMIT)
    }

    pub fn with_limit(p: u64, e: usize, limit: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::Invalid("extension degree must be at least 1".into()));
        }
        let q = (0..e)
            .try_fold(1u64, |acc, _| acc.checked_mul(p))
            .filter(|&q| q <= limit)
            .ok_or(Error::FieldTooLarge { p, e, limit })?;
        let modulus = canonical_modulus(p as u32, e);
        Ok(FieldSpec {
            p: p as u32,
            e,
            q,
            modulus,
        })
    }

    /// Parses `"p"`, `"q"` (a prime power) or `"p^e"`.
    pub fn parse(text: &str, limit: u64) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::Invalid(format!("field size {text:?}"));
        if let Some((p, e)) = text.split_once('^') {
            let p = p.trim().parse::<u64>().map_err(|_| bad())?;
            let e = e.trim().parse::<usize>().map_err(|_| bad())?;
            return Self::with_limit(p, e, limit);
        }
        let q = text.parse::<u64>().map_err(|_| bad())?;
        match prime_power(q) {
            Some((p, e)) => Self::with_limit(p, e, limit),
            None => Err(Error::NotPrime(q)),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.e],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, k: u64) -> FieldElement {
        let mut coeffs = vec![0; self.e];
        coeffs[0] = (k % self.p as u64) as u32;
        FieldElement { coeffs }
    }

    /// The power-basis generator `t`, the class of `x` modulo the modulus.
    /// For prime fields the modulus is `x` itself, so `t = 0`.
    pub fn generator(&self) -> FieldElement {
        if self.e == 1 {
            // x mod (x + c) = -c
            let c = self.modulus[0];
            return FieldElement {
                coeffs: vec![(self.p - c) % self.p],
            };
        }
        let mut coeffs = vec![0; self.e];
        coeffs[1] = 1;
        FieldElement { coeffs }
    }

    pub fn element(&self, coeffs: Vec<u32>) -> Result<FieldElement> {
        if coeffs.len() != self.e {
            return Err(Error::InvalidElement(format!(
                "expected {} residues, got {}",
                self.e,
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::InvalidElement(format!("residue {c} is not below {}", self.p)));
        }
        Ok(FieldElement { coeffs })
    }

    /// Accepts the comma-joined residue form, e.g. `"2,1"` for `2 + t`.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let coeffs = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidElement(text.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.element(coeffs)
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        a.coeffs.len() == self.e && a.coeffs.iter().all(|&c| c < self.p)
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::MixedFields(format!(
                "element {a} does not belong to F_{}",
                self.q
            )))
        }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + y) % p)
                .collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + p - y) % p)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement {
            coeffs: a.coeffs.iter().map(|&x| (p - x) % p).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p as u64;
        if self.e == 1 {
            return FieldElement {
                coeffs: vec![((a.coeffs[0] as u64 * b.coeffs[0] as u64) % p) as u32],
            };
        }
        let e = self.e;
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce modulo the monic modulus, top degree first
        for k in (e..2 * e - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                let m = self.modulus[i] as u64;
                prod[k - e + i] = (prod[k - e + i] + (p - m) * c) % p;
            }
        }
        FieldElement {
            coeffs: prod[..e].iter().map(|&c| c as u32).collect(),
        }
    }

    /// Scalar multiple by an element of the prime field.
    pub fn scale(&self, a: &FieldElement, k: u32) -> FieldElement {
        let p = self.p as u64;
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .map(|&x| ((x as u64 * k as u64) % p) as u32)
                .collect(),
        }
    }

    /// Square-and-multiply.
    pub fn pow(&self, a: &FieldElement, mut k: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// Checked entry point over the four basic operations; `b` is ignored by
    /// the unary ones.
    pub fn arith(&self, a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
        self.check(a)?;
        match op {
            FieldOp::Inv => self.inv(a),
            FieldOp::Pow(k) => Ok(self.pow(a, k)),
            FieldOp::Add | FieldOp::Sub | FieldOp::Mul => {
                self.check(b)?;
                Ok(match op {
                    FieldOp::Add => self.add(a, b),
                    FieldOp::Sub => self.sub(a, b),
                    _ => self.mul(a, b),
                })
            }
        }
    }

    /// Position of `a` in [`FieldSpec::elements`] order.
    pub fn index_of(&self, a: &FieldElement) -> u64 {
        a.coeffs
            .iter()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    pub fn element_at(&self, mut index: u64) -> FieldElement {
        let p = self.p as u64;
        let mut coeffs = vec![0; self.e];
        for slot in coeffs.iter_mut().rev() {
            *slot = (index % p) as u32;
            index /= p;
        }
        FieldElement { coeffs }
    }

    /// All `q` elements, lexicographic on the residue vector, starting at 0.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| self.element_at(i))
    }

    /// Whether `a` lies in the prime subfield.
    pub fn in_prime_field(&self, a: &FieldElement) -> bool {
        a.coeffs[1..].iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.e)
        }
    }
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        FieldSpec::parse(&text, DEFAULT_FIELD_LIMIT).map_err(serde::de::Error::custom)
    }
}

/// Remainder of `a` modulo the monic `b` over `F_p`; both low-to-high.
fn rem_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    while r.len() > db {
        let c = r.pop().unwrap();
        if c != 0 {
            let off = r.len() - db;
            for i in 0..db {
                r[off + i] = (r[off + i] + (p - b[i] as u64) * c) % p;
            }
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `index`, most significant digit in the constant term.
fn monic_from_index(index: u64, deg: usize, p: u32) -> Vec<u32> {
    let mut coeffs = vec![0u32; deg + 1];
    coeffs[deg] = 1;
    let mut rest = index;
    for i in (0..deg).rev() {
        coeffs[i] = (rest % p as u64) as u32;
        rest /= p as u64;
    }
    coeffs
}

/// Irreducibility over `F_p` by trial division by every monic polynomial of
/// degree at most `deg / 2`.
fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for k in 1..=deg / 2 {
        let count = (p as u64).pow(k as u32);
        for i in 0..count {
            let g = monic_from_index(i, k, p);
            if rem_mod_p(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Least monic irreducible of degree `e`, comparing coefficients from the
/// constant term upward.
fn canonical_modulus(p: u32, e: usize) -> Vec<u32> {
    let count = (p as u64).pow(e as u32);
    (0..count)
        .map(|i| monic_from_index(i, e, p))
        .find(|f| is_irreducible_mod_p(f, p))
        .expect("an irreducible of every degree exists")
}
