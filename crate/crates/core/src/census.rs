//! Exhaustive point counts of 0-cycle spaces on `A^1` over `F_q`, weighted
//! by character polynomials.
//!
//! A point of the unordered space is an `m`-tuple of monic polynomials
//! `(f_1, .., f_m)` of degrees `d`; it is excluded when some geometric point
//! is a root of multiplicity at least `n` of every `f_k`. The ordered space
//! replaces each `f_k` by its `d_k` roots in `F_q`, listed in order.
//!
//! Weights: Frobenius permutes the roots of `f_k`, but a root of
//! multiplicity `e` is `e` indistinguishable labels, so the permutation is
//! only defined up to the stabilizer. A statistic `P` is averaged over that
//! coset. For an irreducible factor of degree `r` and multiplicity `e` the
//! average picks `mu` of `e` with probability `1/z_mu` and contributes parts
//! `r * mu_i`, independently over factors and columns. The Burnside count
//! computes the same sum from twisted fixed points without this reduction.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::Instant;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charpoly::{cycle_types, partitions_of, CharPolynomial, CycleType, DegreeVector, Partition};
use crate::error::{Error, Result};
use crate::ffield::{FieldSpec, DEFAULT_FIELD_LIMIT};
use crate::poly::{cycle_type_of, factorize, radical_n, MonicPoly};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Ordered,
    Unordered,
    Burnside,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ordered" => Ok(Mode::Ordered),
            "unordered" => Ok(Mode::Unordered),
            "burnside" => Ok(Mode::Burnside),
            _ => Err(Error::Invalid(format!("unknown mode {s:?}"))),
        }
    }
}

/// How a statistic is evaluated at a tuple with repeated roots.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Weighting {
    /// Average over the Frobenius coset (agrees with the Burnside count).
    #[default]
    Coset,
    /// Evaluate at the cycle type where a factor of degree `r` and
    /// multiplicity `e` counts as `e` cycles of length `r`.
    Multiplicity,
}

impl std::str::FromStr for Weighting {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coset" => Ok(Weighting::Coset),
            "multiplicity" => Ok(Weighting::Multiplicity),
            _ => Err(Error::Invalid(format!("unknown weighting {s:?}"))),
        }
    }
}

/// Work bounds. Exceeding any of them is an error unless raised.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Tuples visited by a single enumeration.
    pub enumeration: u64,
    /// Largest `|d|` for the sum over conjugacy classes.
    pub burnside_degree: u32,
    /// Largest extension field built for twisted fixed points.
    pub field: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            enumeration: 100_000_000,
            burnside_degree: 8,
            field: DEFAULT_FIELD_LIMIT,
        }
    }
}

impl Guards {
    /// Bounds for deliberate large runs.
    pub fn relaxed() -> Self {
        Guards {
            enumeration: u64::MAX,
            burnside_degree: 16,
            field: 1 << 26,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusSpec {
    pub d: DegreeVector,
    pub n: u32,
    pub field: Arc<FieldSpec>,
    pub poly: CharPolynomial,
    pub mode: Mode,
    pub weighting: Weighting,
}

impl CensusSpec {
    pub fn new(d: DegreeVector, n: u32, field: Arc<FieldSpec>, poly: CharPolynomial, mode: Mode) -> Result<Self> {
        let spec = CensusSpec {
            d,
            n,
            field,
            poly,
            mode,
            weighting: Weighting::Coset,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_weighting(mut self, weighting: Weighting) -> Self {
        self.weighting = weighting;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.d.m() == 0 {
            return Err(Error::Invalid("degree vector must have at least one entry".into()));
        }
        if self.n == 0 {
            return Err(Error::Invalid("threshold n must be at least 1".into()));
        }
        let used = self.poly.max_column();
        if used > self.d.m() {
            return Err(Error::ColumnOutOfRange { k: used, m: self.d.m() });
        }
        if self.mode == Mode::Ordered && !self.poly.is_one() {
            return Err(Error::OrderedWeighted);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedCensus {
    pub d: DegreeVector,
    pub n: u32,
    pub q: String,
    pub poly: String,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weighting: Option<Weighting>,
    pub method: String,
    #[serde(with = "rational::as_text")]
    pub total: Rational,
    pub point_count: u64,
    /// Wall time; left out of JSON unless requested so that output is
    /// reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl WeightedCensus {
    /// `d,n,q,poly,mode,weighting,method,total,point_count`.
    pub fn csv_header() -> &'static str {
        "d,n,q,poly,mode,weighting,method,total,point_count"
    }

    pub fn csv_row(&self) -> String {
        let weighting = match self.weighting {
            Some(Weighting::Coset) => "coset",
            Some(Weighting::Multiplicity) => "multiplicity",
            None => "",
        };
        let mode = match self.mode {
            Mode::Ordered => "ordered",
            Mode::Unordered => "unordered",
            Mode::Burnside => "burnside",
        };
        let d: Vec<String> = self.d.entries().iter().map(u32::to_string).collect();
        format!(
            "\"{}\",{},{},\"{}\",{},{},{},{},{}",
            d.join(","),
            self.n,
            self.q,
            self.poly,
            mode,
            weighting,
            self.method,
            rational::to_text(&self.total),
            self.point_count
        )
    }
}

/// Runs the census named by `spec.mode`.
pub fn run_census(spec: &CensusSpec, guards: &Guards) -> Result<WeightedCensus> {
    match spec.mode {
        Mode::Ordered => enumerate_ordered(spec, guards),
        Mode::Unordered => enumerate_unordered(spec, guards),
        Mode::Burnside => burnside_count(spec, guards),
    }
}

fn finish(spec: &CensusSpec, method: &str, total: Rational, point_count: u64, started: Instant) -> WeightedCensus {
    WeightedCensus {
        d: spec.d.clone(),
        n: spec.n,
        q: spec.field.to_string(),
        poly: spec.poly.to_string(),
        mode: spec.mode,
        weighting: (spec.mode == Mode::Unordered).then_some(spec.weighting),
        method: method.to_string(),
        total,
        point_count,
        elapsed_ms: Some(started.elapsed().as_millis() as u64),
    }
}

fn checked_power(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

fn enumeration_guard(q: u64, total: u32, limit: u64, hint: &str) -> Result<u64> {
    match checked_power(q, total) {
        Some(n) if n <= limit => Ok(n),
        n => Err(Error::guard(
            "enumeration size",
            n.map_or(format!("{q}^{total}"), |n| n.to_string()),
            limit,
            hint,
        )),
    }
}

// ---------------------------------------------------------------------------
// membership

/// Whether no geometric point is a root of multiplicity at least `n` of
/// every coordinate: the gcd of the `n`-radicals is 1.
pub fn is_member(v: &[MonicPoly], n: u32) -> Result<bool> {
    let mut acc: Option<MonicPoly> = None;
    for f in v {
        let r = radical_n(f, n as usize);
        if r.is_one() {
            return Ok(true);
        }
        acc = Some(match acc {
            None => r,
            Some(g) => g.gcd(&r)?,
        });
        if acc.as_ref().is_some_and(MonicPoly::is_one) {
            return Ok(true);
        }
    }
    Ok(acc.is_none_or(|g| g.is_one()))
}

/// Same test on explicit root lists `(point, column)`.
fn roots_are_member(roots: &mut [(u32, u32)], m: usize, n: u32) -> bool {
    roots.sort_unstable();
    let mut counts = vec![0u32; m];
    let mut i = 0;
    while i < roots.len() {
        let point = roots[i].0;
        counts.iter_mut().for_each(|c| *c = 0);
        while i < roots.len() && roots[i].0 == point {
            counts[roots[i].1 as usize] += 1;
            i += 1;
        }
        if counts.iter().all(|&c| c >= n) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// ordered

/// Counts `F_q`-points of the ordered space by listing root tuples.
pub fn enumerate_ordered(spec: &CensusSpec, guards: &Guards) -> Result<WeightedCensus> {
    spec.validate()?;
    let started = Instant::now();
    let count = ordered_count(&spec.d, spec.n, spec.field.order(), guards)?;
    Ok(finish(spec, "ordered enumeration", Rational::from_integer(count.into()), count, started))
}

pub fn ordered_count(d: &DegreeVector, n: u32, q: u64, guards: &Guards) -> Result<u64> {
    let total = d.total();
    let size = enumeration_guard(q, total, guards.enumeration, "")?;
    let cols: Vec<u32> = d
        .entries()
        .iter()
        .enumerate()
        .flat_map(|(k, &dk)| std::iter::repeat_n(k as u32, dk as usize))
        .collect();
    let m = d.m();
    Ok((0..size)
        .into_par_iter()
        .filter(|&idx| {
            let mut x = idx;
            let mut roots: Vec<(u32, u32)> = cols
                .iter()
                .map(|&k| {
                    let v = (x % q) as u32;
                    x /= q;
                    (v, k)
                })
                .collect();
            roots_are_member(&mut roots, m, n)
        })
        .count() as u64)
}

// ---------------------------------------------------------------------------
// unordered

/// Distribution of the coset-averaged cycle type of one coordinate, given
/// the `(degree, multiplicity)` shape of its factorization.
pub fn coset_distribution(shape: &[(usize, usize)]) -> Vec<(Partition, Rational)> {
    let mut dist: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    dist.insert(Vec::new(), Rational::one());
    for &(r, e) in shape {
        let choices: Vec<(Vec<u32>, Rational)> = partitions_of(e as u32)
            .into_iter()
            .map(|(mu, z)| {
                let parts = mu.parts().iter().map(|&p| p * r as u32).collect();
                (parts, Rational::new(1.into(), z.into()))
            })
            .collect();
        let mut next = BTreeMap::new();
        for (parts, w) in &dist {
            for (extra, wz) in &choices {
                let mut merged = parts.clone();
                merged.extend_from_slice(extra);
                merged.sort_unstable_by(|a, b| b.cmp(a));
                *next.entry(merged).or_insert_with(Rational::zero) += w * wz;
            }
        }
        dist = next;
    }
    dist.into_iter().map(|(p, w)| (Partition::new(p), w)).collect()
}

struct Column {
    radicals: Vec<MonicPoly>,
    class_of: Vec<usize>,
    classes: Vec<Vec<(Partition, Rational)>>,
}

fn build_column(field: &Arc<FieldSpec>, deg: u32, n: u32, weighting: Weighting) -> Column {
    let polys: Vec<MonicPoly> = MonicPoly::all_of_degree(field.clone(), deg as usize).collect();
    let data: Vec<(MonicPoly, Vec<u32>)> = polys
        .par_iter()
        .map(|f| {
            let fact = factorize(f);
            let key = match weighting {
                Weighting::Coset => fact
                    .shape()
                    .into_iter()
                    .flat_map(|(r, e)| [r as u32, e as u32])
                    .collect(),
                Weighting::Multiplicity => cycle_type_of(&fact).parts().to_vec(),
            };
            (radical_n(f, n as usize), key)
        })
        .collect();
    let mut keys: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut classes = Vec::new();
    let mut class_of = Vec::with_capacity(data.len());
    let mut radicals = Vec::with_capacity(data.len());
    for (rad, key) in data {
        let next = keys.len();
        let id = *keys.entry(key.clone()).or_insert_with(|| {
            classes.push(match weighting {
                Weighting::Coset => {
                    let shape: Vec<(usize, usize)> =
                        key.chunks(2).map(|c| (c[0] as usize, c[1] as usize)).collect();
                    coset_distribution(&shape)
                }
                Weighting::Multiplicity => vec![(Partition::new(key.clone()), Rational::one())],
            });
            next
        });
        class_of.push(id);
        radicals.push(rad);
    }
    Column {
        radicals,
        class_of,
        classes,
    }
}

/// Member counts of the unordered space grouped by the weight class of each
/// coordinate, plus the class distributions needed to weight them.
pub struct UnorderedTally {
    counts: BTreeMap<Vec<usize>, u64>,
    columns: Vec<Vec<Vec<(Partition, Rational)>>>,
}

impl UnorderedTally {
    pub fn point_count(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `sum_y P(y)` for any statistic on the same columns.
    pub fn total(&self, poly: &CharPolynomial) -> Result<Rational> {
        let mut total = Rational::zero();
        for (classes, &count) in &self.counts {
            let mut expect = Rational::zero();
            let dists: Vec<&Vec<(Partition, Rational)>> = classes
                .iter()
                .zip(&self.columns)
                .map(|(&c, col)| &col[c])
                .collect();
            let mut idx = vec![0usize; dists.len()];
            'outer: loop {
                let mut w = Rational::one();
                let mut parts = Vec::with_capacity(dists.len());
                for (k, dist) in dists.iter().enumerate() {
                    let (p, pw) = &dist[idx[k]];
                    w *= pw;
                    parts.push(p.clone());
                }
                expect += w * poly.evaluate(&CycleType(parts))?;
                for k in 0..idx.len() {
                    idx[k] += 1;
                    if idx[k] < dists[k].len() {
                        continue 'outer;
                    }
                    idx[k] = 0;
                }
                break;
            }
            total += expect * Rational::from_integer(count.into());
        }
        Ok(total)
    }
}

/// Visits every tuple of monic polynomials of degrees `d` once.
pub fn unordered_tally(
    d: &DegreeVector,
    n: u32,
    field: &Arc<FieldSpec>,
    weighting: Weighting,
    guards: &Guards,
) -> Result<UnorderedTally> {
    let q = field.order();
    let size = enumeration_guard(q, d.total(), guards.enumeration, "try --mode burnside")?;
    let columns: Vec<Column> = d
        .entries()
        .iter()
        .map(|&dk| build_column(field, dk, n, weighting))
        .collect();
    let sizes: Vec<u64> = d.entries().iter().map(|&dk| q.pow(dk)).collect();
    let counts = (0..size)
        .into_par_iter()
        .fold(
            || Ok(HashMap::<Vec<usize>, u64>::new()),
            |acc: Result<HashMap<Vec<usize>, u64>>, idx| {
                let mut acc = acc?;
                let mut x = idx;
                let picks: Vec<usize> = sizes
                    .iter()
                    .map(|&s| {
                        let i = (x % s) as usize;
                        x /= s;
                        i
                    })
                    .collect();
                if tuple_is_member(&columns, &picks)? {
                    let key = picks.iter().zip(&columns).map(|(&i, c)| c.class_of[i]).collect();
                    *acc.entry(key).or_insert(0) += 1;
                }
                Ok(acc)
            },
        )
        .reduce(
            || Ok(HashMap::new()),
            |a, b| {
                let (mut a, b) = (a?, b?);
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                Ok(a)
            },
        )?;
    Ok(UnorderedTally {
        counts: counts.into_iter().collect(),
        columns: columns.into_iter().map(|c| c.classes).collect(),
    })
}

fn tuple_is_member(columns: &[Column], picks: &[usize]) -> Result<bool> {
    let mut acc: Option<MonicPoly> = None;
    for (col, &i) in columns.iter().zip(picks) {
        let r = &col.radicals[i];
        if r.is_one() {
            return Ok(true);
        }
        acc = Some(match acc {
            None => r.clone(),
            Some(g) => {
                let g = g.gcd(r)?;
                if g.is_one() {
                    return Ok(true);
                }
                g
            }
        });
    }
    Ok(acc.is_none_or(|g| g.is_one()))
}

/// `sum_y P(y)` over the unordered space by listing monic tuples.
pub fn enumerate_unordered(spec: &CensusSpec, guards: &Guards) -> Result<WeightedCensus> {
    spec.validate()?;
    let started = Instant::now();
    let tally = unordered_tally(&spec.d, spec.n, &spec.field, spec.weighting, guards)?;
    let total = tally.total(&spec.poly)?;
    Ok(finish(spec, "unordered enumeration", total, tally.point_count(), started))
}

// ---------------------------------------------------------------------------
// Burnside

/// Twisted fixed-point counts `#{x : Frob(x) = sigma x}` of the ordered space,
/// one per conjugacy class of `S_d`.
pub struct BurnsideTally {
    pub classes: Vec<(CycleType, u64)>,
}

impl BurnsideTally {
    /// `sum_c P(c) #Fix(c) / z_c`.
    pub fn total(&self, poly: &CharPolynomial) -> Result<Rational> {
        let mut total = Rational::zero();
        for (c, fix) in &self.classes {
            if *fix == 0 {
                continue;
            }
            total += c.class_weight() * poly.evaluate(c)? * Rational::from_integer((*fix).into());
        }
        Ok(total)
    }

    pub fn point_count(&self) -> Result<u64> {
        let total = self.total(&CharPolynomial::one())?;
        if !total.is_integer() {
            return Err(Error::Invalid(format!(
                "Burnside point count {} is not an integer",
                rational::to_text(&total)
            )));
        }
        total
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::Invalid("Burnside point count out of range".into()))
    }
}

pub fn burnside_tally(d: &DegreeVector, n: u32, field: &FieldSpec, guards: &Guards) -> Result<BurnsideTally> {
    let total = d.total();
    if total > guards.burnside_degree {
        return Err(Error::guard("Burnside degree |d|", total, guards.burnside_degree, ""));
    }
    let q = field.order();
    let classes = cycle_types(d);
    let estimate = checked_power(q, total).and_then(|x| x.checked_mul(classes.len() as u64));
    if estimate.is_none_or(|e| e > guards.enumeration) {
        return Err(Error::guard(
            "Burnside enumeration size",
            estimate.map_or(format!("{} * {q}^{total}", classes.len()), |e| e.to_string()),
            guards.enumeration,
            "",
        ));
    }
    // per class, one field containing F_{q^j} for every cycle length j of
    // that class; classes sharing the lcm share the field
    let mut fields: HashMap<u64, ExtensionTables> = HashMap::new();
    let mut out = Vec::with_capacity(classes.len());
    for c in classes {
        let mut cycles: Vec<(u32, u32)> = Vec::new();
        for (k, p) in c.columns().iter().enumerate() {
            cycles.extend(p.parts().iter().map(|&j| (j, k as u32)));
        }
        let lcm = cycles.iter().fold(1u64, |acc, &(j, _)| acc.lcm(&(j as u64)));
        if let Entry::Vacant(slot) = fields.entry(lcm) {
            let ext = FieldSpec::with_limit(field.characteristic(), field.degree() * lcm as usize, guards.field)?;
            let frob: Vec<u32> = (0..ext.order())
                .into_par_iter()
                .map(|i| ext.index_of(&ext.pow(&ext.element_at(i), q)) as u32)
                .collect();
            slot.insert((frob, HashMap::new()));
        }
        let (frob, subfields) = fields.get_mut(&lcm).expect("inserted above");
        for &(j, _) in &cycles {
            subfields.entry(j).or_insert_with(|| subfield(frob, j));
        }
        let fix = twisted_fixed_points(&cycles, subfields, frob, d.m(), n);
        out.push((c, fix));
    }
    Ok(BurnsideTally { classes: out })
}

/// Frobenius as an index table on an extension field, and the subfields
/// `F_{q^j}` found so far, as element indices.
type ExtensionTables = (Vec<u32>, HashMap<u32, Vec<u32>>);

/// Elements of `F_{q^j}` inside the extension: fixed by `Frob^j`.
fn subfield(frob: &[u32], j: u32) -> Vec<u32> {
    (0..frob.len() as u32)
        .filter(|&a| {
            let mut x = a;
            for _ in 0..j {
                x = frob[x as usize];
            }
            x == a
        })
        .collect()
}

/// A point fixed by `sigma o Frob` is determined by one value per cycle of
/// `sigma`, taken in `F_{q^j}` for a `j`-cycle; the cycle's other points are
/// its Frobenius conjugates.
fn twisted_fixed_points(
    cycles: &[(u32, u32)],
    subfields: &HashMap<u32, Vec<u32>>,
    frob: &[u32],
    m: usize,
    n: u32,
) -> u64 {
    let choices: Vec<&Vec<u32>> = cycles.iter().map(|(j, _)| &subfields[j]).collect();
    let size: u64 = choices.iter().map(|c| c.len() as u64).product();
    (0..size)
        .into_par_iter()
        .filter(|&idx| {
            let mut x = idx;
            let mut roots = Vec::new();
            for ((j, k), opts) in cycles.iter().zip(&choices) {
                let s = opts.len() as u64;
                let mut a = opts[(x % s) as usize];
                x /= s;
                for _ in 0..*j {
                    roots.push((a, *k));
                    a = frob[a as usize];
                }
            }
            roots_are_member(&mut roots, m, n)
        })
        .count() as u64
}

/// `sum_y P(y)` as an average of twisted fixed-point counts over `S_d`.
pub fn burnside_count(spec: &CensusSpec, guards: &Guards) -> Result<WeightedCensus> {
    spec.validate()?;
    let started = Instant::now();
    let tally = burnside_tally(&spec.d, spec.n, &spec.field, guards)?;
    let total = tally.total(&spec.poly)?;
    Ok(finish(spec, "burnside", total, tally.point_count()?, started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::parse_charpoly;
    use crate::rational::{int, ratio};

    fn field(q: u64) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::parse(&q.to_string(), DEFAULT_FIELD_LIMIT).unwrap())
    }

    fn spec(d: &[u32], n: u32, q: u64, p: &str, mode: Mode) -> CensusSpec {
        CensusSpec::new(DegreeVector::new(d.to_vec()), n, field(q), parse_charpoly(p, None).unwrap(), mode).unwrap()
    }

    fn total(d: &[u32], n: u32, q: u64, p: &str, mode: Mode) -> Rational {
        run_census(&spec(d, n, q, p, mode), &Guards::default()).unwrap().total
    }

    #[test]
    fn membership_examples() {
        let f2 = field(2);
        let f3 = field(3);
        let a = MonicPoly::from_ints(f2.clone(), &[1, 0]); // x^2 + 1 = (x+1)^2 over F_2
        let b = MonicPoly::from_ints(f2.clone(), &[0, 1]); // x^2 + x
        assert!(!is_member(&[a.clone(), b.clone()], 1).unwrap());
        assert!(is_member(&[a, b], 2).unwrap());
        let c = MonicPoly::from_ints(f3.clone(), &[1, 0]);
        let e = MonicPoly::from_ints(f3, &[2]);
        assert!(is_member(&[c, e], 1).unwrap());
    }

    #[test]
    fn census_examples() {
        assert_eq!(total(&[2], 2, 3, "1", Mode::Unordered), int(6));
        assert_eq!(total(&[1, 1], 1, 2, "1", Mode::Unordered), int(2));
        assert_eq!(total(&[2], 2, 3, "X[1,1]", Mode::Unordered), int(6));
        assert_eq!(total(&[1, 1], 1, 3, "1", Mode::Ordered), int(6));
        assert_eq!(total(&[2], 2, 3, "1", Mode::Ordered), int(6));
        assert_eq!(total(&[2], 2, 3, "1", Mode::Burnside), int(6));
        assert_eq!(total(&[1, 1], 1, 2, "1", Mode::Burnside), int(2));
        assert_eq!(total(&[2], 2, 3, "X[1,2]", Mode::Burnside), int(3));
        assert_eq!(total(&[2], 2, 3, "X[1,2]", Mode::Unordered), int(3));
    }

    #[test]
    fn ordered_rejects_weights() {
        let err = CensusSpec::new(
            DegreeVector::new(vec![2]),
            2,
            field(3),
            CharPolynomial::var(1, 1),
            Mode::Ordered,
        )
        .unwrap_err();
        assert_eq!(err, Error::OrderedWeighted);
        assert_eq!(err.to_string(), "ordered census is unweighted");
    }

    #[test]
    fn coset_average_matches_burnside_on_repeated_roots() {
        // every quadratic over F_2 is allowed at n = 3; x^2 and (x+1)^2 each
        // have an average of one fixed root
        assert_eq!(total(&[2], 3, 2, "X[1,1]", Mode::Burnside), int(4));
        assert_eq!(total(&[2], 3, 2, "X[1,1]", Mode::Unordered), int(4));
        let multiplicity = enumerate_unordered(
            &spec(&[2], 3, 2, "X[1,1]", Mode::Unordered).with_weighting(Weighting::Multiplicity),
            &Guards::default(),
        )
        .unwrap();
        assert_eq!(multiplicity.total, int(6));
    }

    #[test]
    fn coset_distributions() {
        let d = coset_distribution(&[(1, 2)]);
        assert_eq!(d, vec![(Partition::new(vec![1, 1]), ratio(1, 2)), (Partition::new(vec![2]), ratio(1, 2))]);
        let d = coset_distribution(&[(2, 1), (1, 1)]);
        assert_eq!(d, vec![(Partition::new(vec![2, 1]), int(1))]);
        let total: Rational = coset_distribution(&[(1, 3), (2, 2)]).iter().map(|(_, w)| w.clone()).sum();
        assert_eq!(total, int(1));
    }

    #[test]
    fn extension_fields() {
        // squarefree monic quadratics over F_4: 16 - 4
        assert_eq!(total(&[2], 2, 4, "1", Mode::Unordered), int(12));
        assert_eq!(total(&[2], 2, 4, "1", Mode::Burnside), int(12));
        assert_eq!(total(&[2], 2, 4, "1", Mode::Ordered), int(12));
    }

    #[test]
    fn guards_trip() {
        let g = Guards { enumeration: 100, ..Guards::default() };
        let err = run_census(&spec(&[5], 2, 3, "1", Mode::Unordered), &g).unwrap_err();
        assert!(err.is_guard_or_inconsistency());
        assert!(err.to_string().contains("burnside"));
        let g = Guards { burnside_degree: 3, ..Guards::default() };
        assert!(run_census(&spec(&[4], 2, 2, "1", Mode::Burnside), &g).is_err());
    }

    #[test]
    fn json_is_stable() {
        let mut c = run_census(&spec(&[2], 2, 3, "X[1,1]", Mode::Unordered), &Guards::default()).unwrap();
        c.elapsed_ms = None;
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(
            json,
            r#"{"d":[2],"n":2,"q":"3","poly":"X[1,1]","mode":"unordered","weighting":"coset","method":"unordered enumeration","total":"6","point_count":6}"#
        );
    }
}
