//! The oracle triangle over a grid of small cases: ordered enumeration
//! against the lattice point-count polynomial, and unordered enumeration
//! against the Burnside count for several statistics.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::census::{burnside_tally, ordered_count, unordered_tally, Guards, Weighting};
use crate::charpoly::{parse_charpoly, DegreeVector};
use crate::error::Result;
use crate::ffield::FieldSpec;
use crate::lattice::{build_lattice, point_count_polynomial};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyGrid {
    pub max_m: usize,
    pub max_total: u32,
    pub ns: Vec<u32>,
    pub qs: Vec<u64>,
}

impl Default for VerifyGrid {
    fn default() -> Self {
        VerifyGrid {
            max_m: 2,
            max_total: 6,
            ns: vec![1, 2, 3],
            qs: vec![2, 3, 5],
        }
    }
}

impl VerifyGrid {
    /// Every degree vector with `1 <= m <= max_m` and `|d| <= max_total`.
    pub fn degree_vectors(&self) -> Vec<DegreeVector> {
        fn extend(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<DegreeVector>) {
            if left == 0 {
                out.push(DegreeVector::new(prefix.clone()));
                return;
            }
            for k in 0..=budget {
                prefix.push(k);
                extend(prefix, left - 1, budget - k, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        for m in 1..=self.max_m {
            extend(&mut Vec::new(), m, self.max_total, &mut out);
        }
        out.sort_by(|a, b| a.m().cmp(&b.m()).then_with(|| a.total().cmp(&b.total())).then_with(|| a.cmp(b)));
        out
    }

    /// Statistics checked for `m` columns.
    pub fn polys(m: usize) -> Vec<&'static str> {
        let mut v = vec!["1", "X[1,1]", "X[1,2]"];
        if m >= 2 {
            v.push("X[1,1]*X[2,1]");
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedCheck {
    pub poly: String,
    #[serde(with = "rational::as_text")]
    pub unordered: Rational,
    #[serde(with = "rational::as_text")]
    pub burnside: Rational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyCase {
    pub d: DegreeVector,
    pub n: u32,
    pub q: u64,
    pub ordered: u64,
    #[serde(with = "rational::as_text")]
    pub lattice: Rational,
    pub ordered_pass: bool,
    pub weighted: Vec<WeightedCheck>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub cases: Vec<VerifyCase>,
    pub passed: usize,
    pub failed: usize,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Plain-text table, one line per case.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<10} {:>2} {:>2}  {:>8} {:>8}  {:<40} result", "d", "n", "q", "ordered", "lattice", "unordered = burnside");
        for c in &self.cases {
            let weighted: Vec<String> = c
                .weighted
                .iter()
                .map(|w| format!("{}:{}", w.poly, rational::to_text(&w.unordered)))
                .collect();
            let _ = writeln!(
                out,
                "{:<10} {:>2} {:>2}  {:>8} {:>8}  {:<40} {}",
                c.d.to_string(),
                c.n,
                c.q,
                c.ordered,
                rational::to_text(&c.lattice),
                weighted.join(" "),
                if c.pass { "PASS" } else { "FAIL" }
            );
        }
        let _ = writeln!(out, "{} passed, {} failed", self.passed, self.failed);
        out
    }
}

pub fn verify_case(d: &DegreeVector, n: u32, q: u64, guards: &Guards) -> Result<VerifyCase> {
    let field = Arc::new(FieldSpec::parse(&q.to_string(), guards.field)?);
    let ordered = ordered_count(d, n, q, guards)?;
    let lattice = point_count_polynomial(&build_lattice(d, n)?, 1).eval(&Rational::from_integer(BigInt::from(q)));
    let ordered_pass = lattice == Rational::from_integer(ordered.into());
    let tally = unordered_tally(d, n, &field, Weighting::Coset, guards)?;
    let burnside = burnside_tally(d, n, &field, guards)?;
    let weighted = VerifyGrid::polys(d.m())
        .into_iter()
        .map(|text| {
            let p = parse_charpoly(text, Some(d.m()))?;
            let u = tally.total(&p)?;
            let b = burnside.total(&p)?;
            Ok(WeightedCheck {
                poly: p.to_string(),
                pass: u == b,
                unordered: u,
                burnside: b,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = ordered_pass && weighted.iter().all(|w| w.pass);
    Ok(VerifyCase {
        d: d.clone(),
        n,
        q,
        ordered,
        lattice,
        ordered_pass,
        weighted,
        pass,
    })
}

pub fn verify_grid(grid: &VerifyGrid, guards: &Guards) -> Result<VerifyReport> {
    let mut jobs = Vec::new();
    for d in grid.degree_vectors() {
        for &n in &grid.ns {
            for &q in &grid.qs {
                jobs.push((d.clone(), n, q));
            }
        }
    }
    let cases = jobs
        .par_iter()
        .map(|(d, n, q)| verify_case(d, *n, *q, guards))
        .collect::<Result<Vec<_>>>()?;
    let passed = cases.iter().filter(|c| c.pass).count();
    Ok(VerifyReport {
        failed: cases.len() - passed,
        passed,
        cases,
    })
}
