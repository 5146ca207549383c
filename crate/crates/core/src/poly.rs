//! Univariate polynomials over `F_q`: gcd, squarefree decomposition,
//! factorization into irreducibles and Frobenius cycle types.
//!
//! A monic polynomial of degree `d` is the same thing as an `F_q`-point of
//! `Sym^d(A^1)`; its factorization records how Frobenius permutes the roots.

use std::fmt;
use std::hash::Hasher;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charpoly::Partition;
use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FieldSpec};

/// A polynomial with arbitrary leading coefficient. Coefficients are stored
/// low-to-high without trailing zeros; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Arc<FieldSpec>,
    coeffs: Vec<FieldElement>,
}

/// A monic polynomial. Only the coefficients below the leading 1 are stored,
/// so the degree is `coeffs.len()` and the constant polynomial 1 is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonicPoly {
    field: Arc<FieldSpec>,
    coeffs: Vec<FieldElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Distinct irreducible factors with multiplicities, ordered by degree
    /// then by coefficients.
    pub factors: Vec<(MonicPoly, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Mul,
    Rem,
    Gcd,
}

// ---------------------------------------------------------------------------
// dense helpers on full coefficient vectors

fn trim(field: &FieldSpec, v: &mut Vec<FieldElement>) {
    while v.last().is_some_and(|c| field.is_zero(c)) {
        v.pop();
    }
}

fn add_vec(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let n = a.len().max(b.len());
    let zero = field.zero();
    let mut out: Vec<_> = (0..n)
        .map(|i| field.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(field, &mut out);
    out
}

fn sub_vec(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let n = a.len().max(b.len());
    let zero = field.zero();
    let mut out: Vec<_> = (0..n)
        .map(|i| field.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(field, &mut out);
    out
}

fn mul_vec(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    trim(field, &mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
fn divrem_vec(
    field: &FieldSpec,
    a: &[FieldElement],
    b: &[FieldElement],
) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let db = b.len() - 1;
    let lead_inv = field.inv(&b[db]).expect("divisor is nonzero");
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quot = vec![field.zero(); r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = field.mul(&r[top], &lead_inv);
        let shift = top - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = field.sub(&r[shift + i], &field.mul(&c, bc));
        }
        quot[shift] = c;
        r.pop();
        trim(field, &mut r);
    }
    (quot, r)
}

fn rem_vec(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    divrem_vec(field, a, b).1
}

fn make_monic_vec(field: &FieldSpec, a: &[FieldElement]) -> Vec<FieldElement> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = field.inv(lead).expect("nonzero leading coefficient");
            a.iter().map(|c| field.mul(c, &inv)).collect()
        }
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
fn gcd_vec(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = rem_vec(field, &a, &b);
        a = std::mem::replace(&mut b, r);
    }
    make_monic_vec(field, &a)
}

fn derivative_vec(field: &FieldSpec, a: &[FieldElement]) -> Vec<FieldElement> {
    let p = field.characteristic();
    let mut out: Vec<_> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.scale(c, (i as u64 % p) as u32))
        .collect();
    trim(field, &mut out);
    out
}

fn mulmod_vec(
    field: &FieldSpec,
    a: &[FieldElement],
    b: &[FieldElement],
    m: &[FieldElement],
) -> Vec<FieldElement> {
    rem_vec(field, &mul_vec(field, a, b), m)
}

fn powmod_vec(field: &FieldSpec, a: &[FieldElement], mut k: u64, m: &[FieldElement]) -> Vec<FieldElement> {
    let mut base = rem_vec(field, a, m);
    let mut acc = rem_vec(field, &[field.one()], m);
    while k > 0 {
        if k & 1 == 1 {
            acc = mulmod_vec(field, &acc, &base, m);
        }
        k >>= 1;
        if k > 0 {
            base = mulmod_vec(field, &base, &base, m);
        }
    }
    acc
}

fn x_vec(field: &FieldSpec) -> Vec<FieldElement> {
    vec![field.zero(), field.one()]
}

// ---------------------------------------------------------------------------

impl Poly {
    pub fn new(field: Arc<FieldSpec>, mut coeffs: Vec<FieldElement>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| !field.contains(c)) {
            return Err(Error::MixedFields(format!("coefficient {c} not in F_{}", field.order())));
        }
        trim(&field, &mut coeffs);
        Ok(Poly { field, coeffs })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Scales to a monic polynomial; `None` for zero.
    pub fn to_monic(&self) -> Option<MonicPoly> {
        if self.is_zero() {
            return None;
        }
        let mut v = make_monic_vec(&self.field, &self.coeffs);
        v.pop();
        Some(MonicPoly {
            field: self.field.clone(),
            coeffs: v,
        })
    }
}

impl MonicPoly {
    pub fn new(field: Arc<FieldSpec>, lower: Vec<FieldElement>) -> Result<Self> {
        if let Some(c) = lower.iter().find(|c| !field.contains(c)) {
            return Err(Error::MixedFields(format!("coefficient {c} not in F_{}", field.order())));
        }
        Ok(MonicPoly { field, coeffs: lower })
    }

    pub fn one(field: Arc<FieldSpec>) -> Self {
        MonicPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    /// `x - root`.
    pub fn linear(field: Arc<FieldSpec>, root: &FieldElement) -> Self {
        let c = field.neg(root);
        MonicPoly {
            field,
            coeffs: vec![c],
        }
    }

    /// Builds from prime-field integer coefficients, low-to-high, leading 1
    /// implied. Convenient for tests and fixtures.
    pub fn from_ints(field: Arc<FieldSpec>, lower: &[i64]) -> Self {
        let p = field.characteristic() as i64;
        let coeffs = lower
            .iter()
            .map(|&c| field.from_int(c.rem_euclid(p) as u64))
            .collect();
        MonicPoly { field, coeffs }
    }

    /// The `index`-th monic polynomial of degree `deg` in odometer order
    /// (constant term varies fastest), `0 <= index < q^deg`.
    pub fn from_index(field: Arc<FieldSpec>, deg: usize, mut index: u64) -> Self {
        let q = field.order();
        let coeffs = (0..deg)
            .map(|_| {
                let c = field.element_at(index % q);
                index /= q;
                c
            })
            .collect();
        MonicPoly { field, coeffs }
    }

    /// All monic polynomials of degree `deg`, in [`MonicPoly::from_index`] order.
    pub fn all_of_degree(field: Arc<FieldSpec>, deg: usize) -> impl Iterator<Item = MonicPoly> {
        let count = field.order().pow(deg as u32);
        (0..count).map(move |i| MonicPoly::from_index(field.clone(), deg, i))
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients below the leading 1, low-to-high.
    pub fn lower_coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_poly(&self) -> Poly {
        Poly {
            field: self.field.clone(),
            coeffs: self.full(),
        }
    }

    fn full(&self) -> Vec<FieldElement> {
        let mut v = self.coeffs.clone();
        v.push(self.field.one());
        v
    }

    fn from_full(field: &Arc<FieldSpec>, mut v: Vec<FieldElement>) -> Self {
        debug_assert!(v.last().is_some_and(|c| *c == field.one()));
        v.pop();
        MonicPoly {
            field: field.clone(),
            coeffs: v,
        }
    }

    fn same_field(&self, other: &MonicPoly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields(format!(
                "F_{} and F_{}",
                self.field.order(),
                other.field.order()
            )))
        }
    }

    pub fn mul(&self, other: &MonicPoly) -> Result<MonicPoly> {
        self.same_field(other)?;
        Ok(Self::from_full(&self.field, mul_vec(&self.field, &self.full(), &other.full())))
    }

    /// Remainder on division by `other`; dividing by the constant 1 gives 0.
    pub fn rem(&self, other: &MonicPoly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(Poly {
            field: self.field.clone(),
            coeffs: rem_vec(&self.field, &self.full(), &other.full()),
        })
    }

    /// Exact quotient when `other` divides `self`, otherwise `None`.
    pub fn div_exact(&self, other: &MonicPoly) -> Result<Option<MonicPoly>> {
        self.same_field(other)?;
        let (q, r) = divrem_vec(&self.field, &self.full(), &other.full());
        Ok(r.is_empty().then(|| Self::from_full(&self.field, q)))
    }

    pub fn gcd(&self, other: &MonicPoly) -> Result<MonicPoly> {
        self.same_field(other)?;
        Ok(Self::from_full(&self.field, gcd_vec(&self.field, &self.full(), &other.full())))
    }

    pub fn pow(&self, k: usize) -> MonicPoly {
        let mut acc = MonicPoly::one(self.field.clone());
        for _ in 0..k {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly {
            field: self.field.clone(),
            coeffs: derivative_vec(&self.field, &self.full()),
        }
    }

    pub fn divides(&self, other: &MonicPoly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Parses the canonical text form, e.g. `"x^2+2*x+1"`. Coefficients are
    /// integers (read in the prime field) or parenthesized residue vectors
    /// such as `(2,1)` for `2 + t` in an extension field.
    pub fn parse(field: Arc<FieldSpec>, text: &str) -> Result<MonicPoly> {
        let poly = parse_poly(&field, text)?;
        match poly.coeffs.last() {
            Some(lead) if *lead == field.one() => Ok(poly.to_monic().expect("nonzero")),
            _ => Err(Error::InvalidPolynomial(format!("{text:?} is not monic"))),
        }
    }

    /// Seed for the randomized splitting step, derived from the coefficients
    /// only (FNV-1a), so factorizations are reproducible across runs.
    fn seed(&self) -> u64 {
        let mut h = Fnv1a::default();
        h.write_u64(self.field.order());
        for c in &self.coeffs {
            for &r in c.coeffs() {
                h.write_u32(r);
            }
        }
        h.finish()
    }
}

#[derive(Clone, Copy)]
struct Fnv1a(u64);

impl Default for Fnv1a {
    fn default() -> Self {
        Fnv1a(0xcbf2_9ce4_8422_2325)
    }
}

impl Hasher for Fnv1a {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }
}

pub fn poly_arith(f: &MonicPoly, g: &MonicPoly, op: PolyOp) -> Result<Poly> {
    match op {
        PolyOp::Mul => f.mul(g).map(|h| h.to_poly()),
        PolyOp::Rem => f.rem(g),
        PolyOp::Gcd => f.gcd(g).map(|h| h.to_poly()),
    }
}

// ---------------------------------------------------------------------------
// factorization

/// `f = prod g_i^{m_i}` with the `g_i` squarefree and pairwise coprime,
/// sorted by multiplicity. Characteristic-`p` derivative collapse is handled
/// by taking `p`-th roots.
pub fn squarefree_decomposition(f: &MonicPoly) -> Vec<(MonicPoly, usize)> {
    let mut out = Vec::new();
    sfd_into(f, 1, &mut out);
    out.sort_by_key(|(_, m)| *m);
    out
}

fn sfd_into(f: &MonicPoly, scale: usize, out: &mut Vec<(MonicPoly, usize)>) {
    if f.is_one() {
        return;
    }
    let field = f.field.clone();
    let full = f.full();
    let deriv = derivative_vec(&field, &full);
    let mut c = gcd_vec(&field, &full, &deriv);
    let mut w = divrem_vec(&field, &full, &c).0;
    let mut i = 1;
    while w.len() > 1 {
        let y = gcd_vec(&field, &w, &c);
        let fac = divrem_vec(&field, &w, &y).0;
        if fac.len() > 1 {
            out.push((MonicPoly::from_full(&field, fac), i * scale));
        }
        c = divrem_vec(&field, &c, &y).0;
        w = y;
        i += 1;
    }
    if c.len() > 1 {
        // c is a p-th power: c(x) = sum a_{pk} x^{pk}
        let p = field.characteristic() as usize;
        let root_exp = field.order() / field.characteristic();
        let root: Vec<_> = c
            .iter()
            .step_by(p)
            .map(|a| field.pow(a, root_exp))
            .collect();
        sfd_into(&MonicPoly::from_full(&field, root), scale * p, out);
    }
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree: `(degree, product)`.
fn distinct_degree(f: &[FieldElement], field: &FieldSpec) -> Vec<(usize, Vec<FieldElement>)> {
    let q = field.order();
    let x = x_vec(field);
    let mut rest = f.to_vec();
    let mut h = rem_vec(field, &x, &rest);
    let mut out = Vec::new();
    let mut k = 1;
    while rest.len() > 2 * k {
        h = powmod_vec(field, &h, q, &rest);
        let g = gcd_vec(field, &rest, &sub_vec(field, &h, &x));
        if g.len() > 1 {
            rest = divrem_vec(field, &rest, &g).0;
            h = rem_vec(field, &h, &rest);
            out.push((k, g));
        }
        k += 1;
    }
    if rest.len() > 1 {
        out.push((rest.len() - 1, rest));
    }
    out
}

/// Cantor-Zassenhaus splitting of a squarefree product of irreducibles of
/// degree `k`.
fn equal_degree(
    f: Vec<FieldElement>,
    k: usize,
    field: &FieldSpec,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Vec<FieldElement>>,
) {
    let n = f.len() - 1;
    if n == k {
        out.push(f);
        return;
    }
    let q = field.order();
    let one = vec![field.one()];
    loop {
        let a: Vec<_> = (0..n).map(|_| field.element_at(rng.gen_range(0..q))).collect();
        let mut a = a;
        trim(field, &mut a);
        if a.len() < 2 {
            continue;
        }
        let b = if q % 2 == 1 {
            // a^((q^k - 1)/2) = (a * a^q * .. * a^(q^(k-1)))^((q-1)/2)
            let mut norm = a.clone();
            let mut conj = a.clone();
            for _ in 1..k {
                conj = powmod_vec(field, &conj, q, &f);
                norm = mulmod_vec(field, &norm, &conj, &f);
            }
            sub_vec(field, &powmod_vec(field, &norm, (q - 1) / 2, &f), &one)
        } else {
            // absolute trace to F_2
            let steps = field.degree() * k;
            let mut term = a.clone();
            let mut trace = a.clone();
            for _ in 1..steps {
                term = mulmod_vec(field, &term, &term, &f);
                trace = add_vec(field, &trace, &term);
            }
            trace
        };
        let g = gcd_vec(field, &f, &b);
        if g.len() > 1 && g.len() < f.len() {
            let h = divrem_vec(field, &f, &g).0;
            equal_degree(g, k, field, rng, out);
            equal_degree(h, k, field, rng, out);
            return;
        }
    }
}

fn compare_polys(a: &MonicPoly, b: &MonicPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs.cmp(&b.coeffs))
}

/// Squarefree decomposition, then distinct-degree, then equal-degree
/// splitting seeded from the coefficients of `f`.
pub fn factorize(f: &MonicPoly) -> Factorization {
    let field = f.field.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(f.seed());
    let mut factors = Vec::new();
    for (g, mult) in squarefree_decomposition(f) {
        for (k, part) in distinct_degree(&g.full(), &field) {
            let mut irreducibles = Vec::new();
            equal_degree(part, k, &field, &mut rng, &mut irreducibles);
            factors.extend(
                irreducibles
                    .into_iter()
                    .map(|v| (MonicPoly::from_full(&field, v), mult)),
            );
        }
    }
    factors.sort_by(|a, b| compare_polys(&a.0, &b.0));
    Factorization { factors }
}

pub fn is_irreducible(f: &MonicPoly) -> bool {
    let fact = factorize(f);
    fact.factors.len() == 1 && fact.factors[0].1 == 1
}

/// Product of the irreducible factors occurring with multiplicity at least
/// `n`. Read off the squarefree decomposition, so no splitting is needed.
pub fn radical_n(f: &MonicPoly, n: usize) -> MonicPoly {
    let n = n.max(1);
    squarefree_decomposition(f)
        .into_iter()
        .filter(|(_, m)| *m >= n)
        .fold(MonicPoly::one(f.field.clone()), |acc, (g, _)| {
            acc.mul(&g).expect("same field")
        })
}

impl Factorization {
    /// Multiplies the factors back out.
    pub fn expand(&self, field: Arc<FieldSpec>) -> MonicPoly {
        self.factors
            .iter()
            .fold(MonicPoly::one(field), |acc, (g, m)| {
                acc.mul(&g.pow(*m)).expect("same field")
            })
    }

    /// `(degree, multiplicity)` of every irreducible factor, sorted. This is
    /// all the Frobenius data a point of `Sym^d` carries.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        let mut s: Vec<_> = self.factors.iter().map(|(g, m)| (g.degree(), *m)).collect();
        s.sort_unstable();
        s
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(g, m)| g.degree() * m).sum()
    }
}

/// Cycle type with the multiplicity convention: an irreducible of degree `j`
/// occurring `e` times contributes `e` parts equal to `j`.
pub fn cycle_type_of(fact: &Factorization) -> Partition {
    Partition::new(
        fact.factors
            .iter()
            .flat_map(|(g, m)| std::iter::repeat_n(g.degree() as u32, *m))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// text form

fn fmt_coeff(field: &FieldSpec, c: &FieldElement) -> String {
    if field.in_prime_field(c) {
        c.coeffs()[0].to_string()
    } else {
        format!("({c})")
    }
}

fn fmt_full(field: &FieldSpec, coeffs: &[FieldElement], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let one = field.one();
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if field.is_zero(c) {
            continue;
        }
        if !first {
            f.write_str("+")?;
        }
        first = false;
        let mono = match k {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        if k == 0 {
            f.write_str(&fmt_coeff(field, c))?;
        } else if *c == one {
            f.write_str(&mono)?;
        } else {
            write!(f, "{}*{}", fmt_coeff(field, c), mono)?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_full(&self.field, &self.full(), f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_full(&self.field, &self.coeffs, f)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (g, m)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "({g})")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

fn parse_poly(field: &Arc<FieldSpec>, text: &str) -> Result<Poly> {
    let err = |msg: &str| Error::InvalidPolynomial(format!("{text:?}: {msg}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty"));
    }
    // split into signed terms, ignoring signs inside parentheses
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if !cur.is_empty() {
                    terms.push((neg, std::mem::take(&mut cur)));
                } else if !terms.is_empty() || neg {
                    return Err(err("dangling sign"));
                }
                neg = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    if cur.is_empty() {
        return Err(err("trailing sign"));
    }
    terms.push((neg, cur));

    let mut coeffs: Vec<FieldElement> = Vec::new();
    for (neg, term) in terms {
        let (coef_text, mono) = match term.find('x') {
            None => (term.as_str(), None),
            Some(pos) => {
                let coef = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
                (coef, Some(&term[pos + 1..]))
            }
        };
        let mut coef = if coef_text.is_empty() {
            if mono.is_none() {
                return Err(err("empty term"));
            }
            field.one()
        } else if let Some(inner) = coef_text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            field.parse_element(inner)?
        } else {
            let k: i64 = coef_text.parse().map_err(|_| err("bad coefficient"))?;
            field.from_int(k.rem_euclid(field.characteristic() as i64) as u64)
        };
        if neg {
            coef = field.neg(&coef);
        }
        let exp = match mono {
            None => 0,
            Some("") => 1,
            Some(rest) => rest
                .strip_prefix('^')
                .and_then(|e| e.parse::<usize>().ok())
                .ok_or_else(|| err("bad exponent"))?,
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, field.zero());
        }
        coeffs[exp] = field.add(&coeffs[exp], &coef);
    }
    Poly::new(field.clone(), coeffs)
}
