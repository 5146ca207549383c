//! Irreducible characters of symmetric groups and pairings of class functions.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::partition::{cycle_types, partitions_of, DegreeVector, Partition};
use super::CharPolynomial;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

// keyed by (beta-set, remaining cycle lengths)
type Memo = HashMap<(Vec<u32>, Vec<u32>), i64>;

/// Murnaghan–Nakayama on beta-sets: strip a border strip of length `mu[idx]`
/// by lowering one bead, signed by the number of beads it jumps over.
fn mn(beta: &[u32], mu: &[u32], idx: usize, memo: &mut Memo) -> i64 {
    if idx == mu.len() {
        return 1;
    }
    let key = (beta.to_vec(), mu[idx..].to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = mu[idx];
    let mut total = 0i64;
    for (pos, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.to_vec();
        next[pos] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let v = mn(&next, mu, idx + 1, memo);
        total += if jumped % 2 == 0 { v } else { -v };
    }
    memo.insert(key, total);
    total
}

fn beta_set(lambda: &Partition) -> Vec<u32> {
    let len = lambda.len() as u32;
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i as u32)
        .collect()
}

/// `chi_lambda(mu)`.
pub fn irreducible_character_value(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(format!(
            "partitions {lambda} and {mu} have different sizes"
        )));
    }
    Ok(mn(&beta_set(lambda), mu.parts(), 0, &mut Memo::new()))
}

/// Character table of `S_d`. Rows are irreducibles, columns are classes,
/// both indexed by `partitions` (as returned by [`partitions_of`]).
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub partitions: Vec<Partition>,
    #[serde(skip)]
    pub z: Vec<BigUint>,
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn row(&self, lambda: &Partition) -> Option<&[i64]> {
        self.index(lambda).map(|i| self.values[i].as_slice())
    }

    pub fn index(&self, p: &Partition) -> Option<usize> {
        self.partitions.iter().position(|x| x == p)
    }
}

pub fn character_table(d: u32) -> CharacterTable {
    let parts = partitions_of(d);
    let partitions: Vec<Partition> = parts.iter().map(|(p, _)| p.clone()).collect();
    let z = parts.into_iter().map(|(_, z)| z).collect();
    let mut memo = Memo::new();
    let values = partitions
        .iter()
        .map(|lambda| {
            let beta = beta_set(lambda);
            partitions
                .iter()
                .map(|mu| mn(&beta, mu.parts(), 0, &mut memo))
                .collect()
        })
        .collect();
    CharacterTable {
        partitions,
        z,
        values,
    }
}

/// `<P, Q>` over `S_{d_1} x .. x S_{d_m}`, summed over classes with `1/z` weights.
pub fn inner_product(p: &CharPolynomial, q: &CharPolynomial, d: &DegreeVector) -> Result<Rational> {
    let used = p.max_column().max(q.max_column());
    if used > d.m() {
        return Err(Error::SizeMismatch(format!(
            "polynomial uses column {used} but the degree vector has {} entries",
            d.m()
        )));
    }
    let classes = cycle_types(d);
    let terms: Vec<Rational> = classes
        .par_iter()
        .map(|c| -> Result<Rational> {
            let pv = p.evaluate(c)?;
            if pv.is_zero() {
                return Ok(Rational::zero());
            }
            Ok(c.class_weight() * pv * q.evaluate(c)?)
        })
        .collect::<Result<_>>()?;
    Ok(terms.into_iter().sum())
}

/// Limit of `<P, Q>_d` as every `d_k` grows, with the first `d` on the
/// diagonal `(t, .., t)` from which the value is observed to be constant.
///
/// At diagonal step `t` the value must agree with the next diagonal point and
/// with every single-coordinate increment of size `1..=m`. The diagonal is
/// capped at `4 * max(1, J * (deg P + deg Q))`, `J` the largest cycle length.
pub fn stable_inner_product(
    p: &CharPolynomial,
    q: &CharPolynomial,
) -> Result<(Rational, DegreeVector)> {
    let m = p.m().max(q.m()).max(p.max_column()).max(q.max_column()).max(1);
    let maxj = p.max_cycle_length().max(q.max_cycle_length()) as usize;
    let cap = 4 * (maxj * (p.degree() + q.degree()) as usize).max(1);
    let at = |v: Vec<u32>| inner_product(p, q, &DegreeVector::new(v));
    let mut trace = Vec::new();
    for t in 0..=cap as u32 {
        let base = at(vec![t; m])?;
        trace.push(format!("{}:{}", t, rational::to_text(&base)));
        if at(vec![t + 1; m])? != base {
            continue;
        }
        let mut stable = true;
        'probe: for k in 0..m {
            for s in 1..=m as u32 {
                let mut v = vec![t; m];
                v[k] += s;
                if at(v)? != base {
                    stable = false;
                    break 'probe;
                }
            }
        }
        if stable {
            return Ok((base, DegreeVector::new(vec![t; m])));
        }
    }
    Err(Error::CapExceeded { cap, trace })
}

/// Character of the free module `M(a)`: pointwise-fixed injections, i.e.
/// `prod_k X[k,1] (X[k,1] - 1) .. (X[k,1] - a_k + 1)`.
pub fn free_module_character(a: &DegreeVector) -> CharPolynomial {
    let mut acc = CharPolynomial::one().with_columns(a.m());
    for (k, &ak) in a.entries().iter().enumerate() {
        let x = CharPolynomial::var(k + 1, 1);
        for i in 0..ak {
            let shifted = &x - &CharPolynomial::constant(Rational::from_integer(i.into()));
            acc = &acc * &shifted;
        }
    }
    acc
}

/// `lambda[c] = (c - |lambda|, lambda_1, lambda_2, ..)`.
pub fn pad_partition(lambda: &Partition, c: u32) -> Result<Partition> {
    let need = lambda.size() + lambda.largest();
    if c < need {
        return Err(Error::PaddingViolated(format!(
            "padding {lambda} to {c} needs at least {need}"
        )));
    }
    let mut parts = vec![c - lambda.size()];
    parts.extend_from_slice(lambda.parts());
    Ok(Partition::new(parts))
}

/// Multiplicity of each irreducible of `S_{d_1} x .. x S_{d_m}` in `P`, keyed
/// by one partition per column. Zero multiplicities are omitted.
pub fn decompose_into_irreducibles(
    p: &CharPolynomial,
    d: &DegreeVector,
) -> Result<BTreeMap<Vec<Partition>, Rational>> {
    if p.max_column() > d.m() {
        return Err(Error::SizeMismatch(format!(
            "polynomial uses column {} but the degree vector has {} entries",
            p.max_column(),
            d.m()
        )));
    }
    let tables: Vec<CharacterTable> = d.entries().iter().map(|&k| character_table(k)).collect();
    let classes = cycle_types(d);
    let weighted: Vec<(Vec<usize>, Rational)> = classes
        .iter()
        .map(|c| -> Result<_> {
            let idx = c
                .columns()
                .iter()
                .zip(&tables)
                .map(|(col, t)| t.index(col).expect("class of the right size"))
                .collect();
            Ok((idx, c.class_weight() * p.evaluate(c)?))
        })
        .filter(|r| r.as_ref().map_or(true, |(_, v)| !v.is_zero()))
        .collect::<Result<_>>()?;

    let irreps: Vec<Vec<usize>> = cycle_types(d)
        .iter()
        .map(|c| {
            c.columns()
                .iter()
                .zip(&tables)
                .map(|(col, t)| t.index(col).expect("partition of the right size"))
                .collect()
        })
        .collect();
    let out: Vec<(Vec<Partition>, Rational)> = irreps
        .par_iter()
        .filter_map(|lam| {
            let mut acc = Rational::zero();
            for (cls, w) in &weighted {
                let chi: i64 = lam
                    .iter()
                    .zip(cls)
                    .zip(&tables)
                    .map(|((&l, &c), t)| t.values[l][c])
                    .product();
                if chi != 0 {
                    acc += w * Rational::from_integer(chi.into());
                }
            }
            (!acc.is_zero()).then(|| {
                let key = lam
                    .iter()
                    .zip(&tables)
                    .map(|(&l, t)| t.partitions[l].clone())
                    .collect();
                (key, acc)
            })
        })
        .collect();
    Ok(out.into_iter().collect())
}

/// Dimension of an irreducible: its character at the identity.
pub fn irreducible_dimension(lambda: &Partition) -> i64 {
    mn(&beta_set(lambda), Partition::ones(lambda.size()).parts(), 0, &mut Memo::new())
}
