//! From exact censuses to stabilization verdicts: interpolation in `q`,
//! normalized coefficients, detection of eventual constancy in `d`, and the
//! assembled comparison of normalized counts with alternating series.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::census::{unordered_tally, Guards, Weighting};
use crate::charpoly::{parse_charpoly, CharPolynomial, DegreeVector};
use crate::error::{Error, Result};
use crate::ffield::{prime_power, FieldSpec};
use crate::homology::{alternating_betti_sum, complement_betti};
use crate::lattice::{build_lattice, point_count_polynomial};
use crate::qpoly::QPoly;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub q: u64,
    #[serde(with = "rational::as_text")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterpolatedPolynomial {
    pub polynomial: QPoly,
    pub samples: Vec<Sample>,
}

impl InterpolatedPolynomial {
    pub fn degree(&self) -> Option<usize> {
        self.polynomial.degree()
    }
}

/// Lagrange interpolation through `(q_i, v_i)`.
///
/// With `expected_degree = Some(D)` the polynomial is fitted through the
/// first `D + 1` samples and every further sample must lie on it; otherwise
/// the fit uses all samples.
pub fn interpolate_in_q(samples: &[(u64, Rational)], expected_degree: Option<usize>) -> Result<InterpolatedPolynomial> {
    if samples.len() < 2 {
        return Err(Error::Invalid("interpolation needs at least two samples".into()));
    }
    for (i, (q, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(p, _)| p == q) {
            return Err(Error::DuplicateSample(*q));
        }
    }
    let fit_len = expected_degree.map_or(samples.len(), |d| (d + 1).min(samples.len()));
    let polynomial = lagrange(&samples[..fit_len]);
    if let Some(d) = expected_degree {
        let off_curve = samples[fit_len..]
            .iter()
            .any(|(q, v)| &polynomial.eval_int(*q) != v);
        if off_curve {
            return Err(Error::NotPolynomial(d));
        }
    }
    Ok(InterpolatedPolynomial {
        polynomial,
        samples: samples
            .iter()
            .map(|(q, v)| Sample { q: *q, value: v.clone() })
            .collect(),
    })
}

fn lagrange(points: &[(u64, Rational)]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, (qi, vi)) in points.iter().enumerate() {
        let qi = Rational::from_integer(BigInt::from(*qi));
        let mut basis = QPoly::new(vec![Rational::one()]);
        let mut denom = Rational::one();
        for (j, (qj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let qj = Rational::from_integer(BigInt::from(*qj));
            basis = basis.mul(&QPoly::new(vec![-qj.clone(), Rational::one()]));
            denom *= &qi - qj;
        }
        acc = acc.add(&basis.scale(&(vi / denom)));
    }
    acc
}

/// `(c_0, .., c_topdim)` with `f(q) / q^topdim = sum_i c_i q^-i`.
pub fn normalized_coefficients(f: &QPoly, topdim: usize) -> Result<Vec<Rational>> {
    if let Some(deg) = f.degree() {
        if deg > topdim {
            return Err(Error::DimensionBound { degree: deg, topdim });
        }
    }
    Ok((0..=topdim).map(|i| f.coeff(topdim - i)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizationVerdict {
    /// First sweep index from which positions `0..depth` no longer change;
    /// `None` if some position within the depth never settles.
    pub onset: Option<usize>,
    pub depth: usize,
    /// Per coefficient position, the first sweep index from which the value
    /// stays constant to the end of the sweep.
    pub stable_from: Vec<usize>,
    /// Positions whose value changes at the last step, so the sweep shows
    /// no constancy at all.
    pub unstable: Vec<usize>,
}

/// Compares coefficient vectors along a sweep. Shorter vectors are padded
/// with zeros (a normalized count has no terms past its dimension).
/// `depth` defaults to the shortest vector's length.
pub fn detect_stabilization(vectors: &[Vec<Rational>], depth: Option<usize>) -> Result<StabilizationVerdict> {
    if vectors.len() < 2 {
        return Err(Error::Invalid("stabilization needs at least two vectors".into()));
    }
    let width = vectors.iter().map(Vec::len).max().unwrap_or(0);
    let depth = depth
        .unwrap_or_else(|| vectors.iter().map(Vec::len).min().unwrap_or(0))
        .min(width);
    let zero = Rational::zero();
    let at = |t: usize, i: usize| vectors[t].get(i).unwrap_or(&zero);
    let last = vectors.len() - 1;
    let stable_from: Vec<usize> = (0..width)
        .map(|i| {
            let mut s = last;
            while s > 0 && at(s - 1, i) == at(last, i) {
                s -= 1;
            }
            s
        })
        .collect();
    let unstable: Vec<usize> = (0..width).filter(|&i| stable_from[i] == last).collect();
    let onset = if unstable.iter().any(|&i| i < depth) {
        None
    } else {
        Some(stable_from[..depth].iter().copied().max().unwrap_or(0))
    };
    Ok(StabilizationVerdict {
        onset,
        depth,
        stable_from,
        unstable,
    })
}

// ---------------------------------------------------------------------------
// sweep report

/// An entry of `d_list`: either a full degree vector or a single degree
/// repeated in every column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DegreeEntry {
    Diagonal(u32),
    Vector(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub m: usize,
    pub n: u32,
    pub d_list: Vec<DegreeEntry>,
    /// Field sizes to sample; defaults to the first `max |d| + 2` prime powers.
    #[serde(default)]
    pub q_list: Vec<u64>,
    #[serde(default = "default_polys")]
    pub polys: Vec<String>,
    /// Number of series terms; defaults to each count's degree.
    #[serde(default)]
    pub truncation: Option<usize>,
}

fn default_polys() -> Vec<String> {
    vec!["1".to_string()]
}

impl SweepConfig {
    pub fn degree_vectors(&self) -> Result<Vec<DegreeVector>> {
        self.d_list
            .iter()
            .map(|e| match e {
                DegreeEntry::Diagonal(k) => Ok(DegreeVector::new(vec![*k; self.m])),
                DegreeEntry::Vector(v) if v.len() == self.m => Ok(DegreeVector::new(v.clone())),
                DegreeEntry::Vector(v) => Err(Error::SizeMismatch(format!(
                    "degree vector {v:?} does not have {} entries",
                    self.m
                ))),
            })
            .collect()
    }
}

/// The first `count` prime powers, starting at 2.
pub fn first_prime_powers(count: usize) -> Vec<u64> {
    (2u64..).filter(|&q| prime_power(q).is_some()).take(count).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesPoint {
    pub q: u64,
    #[serde(with = "rational::as_text")]
    pub lhs: Rational,
    #[serde(with = "rational::as_text")]
    pub rhs: Rational,
    #[serde(with = "rational::as_text")]
    pub residual: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SeriesSide {
    NotComputed {
        reason: String,
    },
    Computed {
        provenance: String,
        truncation: usize,
        #[serde(with = "rational::vec_as_text")]
        coefficients: Vec<Rational>,
        points: Vec<SeriesPoint>,
    },
}

/// `q^-|d| #Z~(F_q)` against `sum_i (-1)^i b_i q^-i` with Betti numbers of
/// the complex arrangement complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiCheck {
    pub betti: Vec<usize>,
    pub ordered_count: QPoly,
    pub points: Vec<SeriesPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub d: DegreeVector,
    pub topdim: usize,
    pub samples: Vec<Sample>,
    pub interpolated: QPoly,
    #[serde(with = "rational::vec_as_text")]
    pub normalized: Vec<Rational>,
    pub rhs: SeriesSide,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti_check: Option<BettiCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyReport {
    pub poly: String,
    pub degrees: Vec<DegreeReport>,
    pub stabilization: Option<StabilizationVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub m: usize,
    pub n: u32,
    pub q_list: Vec<u64>,
    pub polys: Vec<PolyReport>,
    pub tail_caveat: String,
}

pub const TAIL_CAVEAT: &str = "series terms past the truncation are not bounded numerically; \
convergence in d assumes the stable coefficients grow subexponentially in i";

impl StabilityReport {
    /// One row per (poly, d): `poly,d,c_0,c_1,..`.
    pub fn coefficients_csv(&self) -> String {
        let mut out = String::from("poly,d,normalized_coefficients\n");
        for p in &self.polys {
            for d in &p.degrees {
                let entries: Vec<String> = d.d.entries().iter().map(u32::to_string).collect();
                let coeffs: Vec<String> = d.normalized.iter().map(rational::to_text).collect();
                out.push_str(&format!("\"{}\",\"{}\",{}\n", p.poly, entries.join(","), coeffs.join(",")));
            }
        }
        out
    }
}

/// Runs the sweep: unordered weighted censuses at every `q`, interpolation,
/// normalization, and stabilization across `d`. The alternating series is
/// assembled only for `n = 1, m = 2`, from the coefficients of the last
/// degree in the sweep.
pub fn lefschetz_report(config: &SweepConfig, guards: &Guards) -> Result<StabilityReport> {
    if config.m == 0 {
        return Err(Error::Invalid("m must be at least 1".into()));
    }
    if config.n == 0 {
        return Err(Error::Invalid("threshold n must be at least 1".into()));
    }
    let degrees = config.degree_vectors()?;
    if degrees.is_empty() {
        return Err(Error::Invalid("empty d_list".into()));
    }
    let max_total = degrees.iter().map(DegreeVector::total).max().unwrap_or(0) as usize;
    let q_list = if config.q_list.is_empty() {
        first_prime_powers(max_total + 2)
    } else {
        config.q_list.clone()
    };
    let polys: Vec<CharPolynomial> = config
        .polys
        .iter()
        .map(|t| parse_charpoly(t, Some(config.m)))
        .collect::<Result<_>>()?;
    let fields: Vec<Arc<FieldSpec>> = q_list
        .iter()
        .map(|&q| FieldSpec::parse(&q.to_string(), guards.field).map(Arc::new))
        .collect::<Result<_>>()?;

    // totals[d][poly][q]
    let mut totals: Vec<Vec<Vec<Rational>>> = Vec::new();
    for d in &degrees {
        let mut per_poly = vec![Vec::with_capacity(fields.len()); polys.len()];
        for field in &fields {
            let tally = unordered_tally(d, config.n, field, Weighting::Coset, guards)?;
            for (slot, p) in per_poly.iter_mut().zip(&polys) {
                slot.push(tally.total(p)?);
            }
        }
        totals.push(per_poly);
    }

    let mut reports = Vec::new();
    for (pi, poly) in polys.iter().enumerate() {
        let mut rows = Vec::new();
        for (di, d) in degrees.iter().enumerate() {
            let topdim = d.total() as usize;
            let samples: Vec<(u64, Rational)> = q_list.iter().copied().zip(totals[di][pi].iter().cloned()).collect();
            let fit = interpolate_in_q(&samples, Some(topdim))?;
            let normalized = normalized_coefficients(&fit.polynomial, topdim)?;
            rows.push((d.clone(), topdim, fit, normalized));
        }
        let stabilization = if rows.len() >= 2 {
            let vectors: Vec<Vec<Rational>> = rows.iter().map(|r| r.3.clone()).collect();
            Some(detect_stabilization(&vectors, None)?)
        } else {
            None
        };
        let stable = rows.last().map(|r| r.3.clone()).unwrap_or_default();
        let mut degree_reports = Vec::new();
        for (d, topdim, fit, normalized) in rows {
            let rhs = if config.n != 1 {
                SeriesSide::NotComputed { reason: "not computed (n≠1)".into() }
            } else if config.m != 2 {
                SeriesSide::NotComputed { reason: "not computed (m≠2)".into() }
            } else {
                let t = config.truncation.unwrap_or(topdim);
                let coefficients: Vec<Rational> = (0..=t)
                    .map(|i| stable.get(i).cloned().unwrap_or_else(Rational::zero))
                    .collect();
                let points = fit
                    .samples
                    .iter()
                    .map(|s| {
                        let q = Rational::from_integer(BigInt::from(s.q));
                        let lhs = &s.value / q.pow(topdim as i32);
                        let rhs = series(&coefficients, &q);
                        SeriesPoint { q: s.q, residual: &lhs - &rhs, lhs, rhs }
                    })
                    .collect();
                SeriesSide::Computed {
                    provenance: "interpolated".into(),
                    truncation: t,
                    coefficients,
                    points,
                }
            };
            let betti_check = if config.n == 1 && config.m == 2 && poly.is_one() {
                Some(betti_check(&d, &q_list)?)
            } else {
                None
            };
            degree_reports.push(DegreeReport {
                d,
                topdim,
                samples: fit.samples.clone(),
                interpolated: fit.polynomial,
                normalized,
                rhs,
                betti_check,
            });
        }
        reports.push(PolyReport {
            poly: poly.to_string(),
            degrees: degree_reports,
            stabilization,
        });
    }
    Ok(StabilityReport {
        m: config.m,
        n: config.n,
        q_list,
        polys: reports,
        tail_caveat: TAIL_CAVEAT.to_string(),
    })
}

/// `sum_i c_i q^-i`.
fn series(coefficients: &[Rational], q: &Rational) -> Rational {
    let inv = q.recip();
    let mut pow = Rational::one();
    let mut acc = Rational::zero();
    for c in coefficients {
        acc += c * &pow;
        pow *= &inv;
    }
    acc
}

/// Ordered counts from the lattice against the Betti series of the
/// complement, at each sampled `q`.
pub fn betti_check(d: &DegreeVector, q_list: &[u64]) -> Result<BettiCheck> {
    let lattice = build_lattice(d, 1)?;
    let betti = complement_betti(&lattice, 1)?.betti;
    let ordered = point_count_polynomial(&lattice, 1);
    let topdim = d.total() as i32;
    let points = q_list
        .iter()
        .map(|&q| {
            let qr = Rational::from_integer(BigInt::from(q));
            let lhs = ordered.eval(&qr) / qr.pow(topdim);
            let rhs = alternating_betti_sum(&betti, &qr);
            SeriesPoint { q, residual: &lhs - &rhs, lhs, rhs }
        })
        .collect();
    Ok(BettiCheck {
        betti: betti.ranks,
        ordered_count: ordered,
        points,
    })
}
