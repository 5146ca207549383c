//! Rational homology of order complexes of lattice intervals, and the Betti
//! numbers of arrangement complements assembled from them.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{format_element, lower_interval, NEqualsLattice, Poset};
use crate::rational::Rational;

pub const DEFAULT_FACE_LIMIT: usize = 100_000;

/// A simplicial complex given by its facets (vertex lists, ascending).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Every nonempty face, grouped by dimension, each list sorted.
    pub fn faces(&self, limit: usize) -> Result<Vec<Vec<Vec<usize>>>> {
        let mut by_dim: Vec<std::collections::BTreeSet<Vec<usize>>> = Vec::new();
        let mut count = 0usize;
        for facet in &self.facets {
            let k = facet.len();
            if k > 63 {
                return Err(Error::guard("facet dimension", k, 63, ""));
            }
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| facet[i]).collect();
                let dim = face.len() - 1;
                if by_dim.len() <= dim {
                    by_dim.resize_with(dim + 1, Default::default);
                }
                if by_dim[dim].insert(face) {
                    count += 1;
                    if count > limit {
                        return Err(face_guard(count, limit));
                    }
                }
            }
        }
        Ok(by_dim.into_iter().map(|s| s.into_iter().collect()).collect())
    }
}

fn face_guard(count: usize, limit: usize) -> Error {
    Error::guard(
        "simplicial complex faces",
        format!("more than {}", count - 1),
        limit,
        "raise the face limit to proceed",
    )
}

/// Ranks of (reduced) homology indexed from `offset`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    pub offset: i64,
    pub ranks: Vec<usize>,
}

impl BettiVector {
    pub fn new(offset: i64, mut ranks: Vec<usize>) -> Self {
        while ranks.last() == Some(&0) {
            ranks.pop();
        }
        BettiVector { offset, ranks }
    }

    pub fn get(&self, degree: i64) -> usize {
        usize::try_from(degree - self.offset)
            .ok()
            .and_then(|i| self.ranks.get(i).copied())
            .unwrap_or(0)
    }

    /// `(degree, rank)` for every nonzero rank.
    pub fn nonzero(&self) -> Vec<(i64, usize)> {
        self.ranks
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(i, &r)| (i as i64 + self.offset, r))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }
}

/// Vertices are the poset elements, faces are its chains.
pub fn order_complex(poset: &Poset) -> SimplicialComplex {
    let n = poset.len();
    let below: Vec<bool> = {
        let mut has_below = vec![false; n];
        for ups in &poset.above {
            for &b in ups {
                has_below[b] = true;
            }
        }
        has_below
    };
    // b covers a when nothing sits strictly between them
    let covers: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            poset.above[a]
                .iter()
                .copied()
                .filter(|&b| !poset.above[a].iter().any(|&c| poset.above[c].contains(&b)))
                .collect()
        })
        .collect();
    let mut facets = Vec::new();
    let mut chain = Vec::new();
    for start in (0..n).filter(|&a| !below[a]) {
        chain.push(start);
        maximal_chains(&covers, &mut chain, &mut facets);
        chain.pop();
    }
    for f in &mut facets {
        f.sort_unstable();
    }
    facets.sort();
    SimplicialComplex { vertices: n, facets }
}

fn maximal_chains(covers: &[Vec<usize>], chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let top = *chain.last().expect("chain is nonempty");
    if covers[top].is_empty() {
        out.push(chain.clone());
        return;
    }
    for &next in &covers[top] {
        chain.push(next);
        maximal_chains(covers, chain, out);
        chain.pop();
    }
}

pub fn reduced_homology_ranks(complex: &SimplicialComplex) -> Result<BettiVector> {
    reduced_homology_ranks_with_limit(complex, DEFAULT_FACE_LIMIT)
}

/// Reduced homology over the rationals, from exact boundary ranks. The empty
/// face sits in degree -1, so the empty complex has one class there.
pub fn reduced_homology_ranks_with_limit(complex: &SimplicialComplex, limit: usize) -> Result<BettiVector> {
    let faces = complex.faces(limit)?;
    // boundary_rank[k] = rank of the map from k-faces to (k-1)-faces, k >= 0
    let boundary_rank: Vec<usize> = (0..faces.len())
        .map(|k| {
            if k == 0 {
                return usize::from(!faces[0].is_empty());
            }
            let index: HashMap<&[usize], usize> =
                faces[k - 1].iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
            let rows = faces[k].iter().map(|f| {
                let mut row: Vec<(usize, i64)> = (0..f.len())
                    .map(|drop| {
                        let mut sub = f.clone();
                        sub.remove(drop);
                        let sign = if drop % 2 == 0 { 1 } else { -1 };
                        (index[sub.as_slice()], sign)
                    })
                    .collect();
                row.sort_unstable();
                row
            });
            sparse_rank(rows)
        })
        .collect();
    let mut ranks = Vec::with_capacity(faces.len() + 1);
    // degree -1: the empty face
    ranks.push(1 - boundary_rank.first().copied().unwrap_or(0));
    for k in 0..faces.len() {
        let outgoing = boundary_rank[k];
        let incoming = boundary_rank.get(k + 1).copied().unwrap_or(0);
        ranks.push(faces[k].len() - outgoing - incoming);
    }
    Ok(BettiVector::new(-1, ranks))
}

/// Rank over the rationals of a sparse matrix given row by row.
/// Each pivot row is keyed by its last column; incoming rows are reduced
/// against existing pivots from the right.
fn sparse_rank(rows: impl Iterator<Item = Vec<(usize, i64)>>) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
    for row in rows {
        let mut v: Vec<(usize, Rational)> = row
            .into_iter()
            .map(|(c, x)| (c, Rational::from_integer(x.into())))
            .collect();
        while let Some((lead, coef)) = v.last().cloned() {
            match pivots.get(&lead) {
                None => {
                    let inv = coef.recip();
                    for e in &mut v {
                        e.1 = &e.1 * &inv;
                    }
                    pivots.insert(lead, v);
                    break;
                }
                Some(p) => v = axpy(&v, &coef, p),
            }
        }
    }
    pivots.len()
}

/// `v - c * p` where `p` is normalized to 1 at its last column.
fn axpy(v: &[(usize, Rational)], c: &Rational, p: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let take_v = j == p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i == v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(c * &p[j].1)));
            j += 1;
        } else {
            let x = &v[i].1 - c * &p[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced homology of the order complex of the open interval `(0, I)`.
pub fn interval_homology(lattice: &NEqualsLattice, i: usize) -> Result<BettiVector> {
    if i == lattice.bottom() {
        return Err(Error::BottomElement);
    }
    reduced_homology_ranks(&order_complex(&lower_interval(lattice, i)?))
}

/// Real codimension of the stratum `X_I` in `X^d` for `X` complex affine
/// space of dimension `dim_x`.
pub fn real_codimension(lattice: &NEqualsLattice, i: usize, dim_x: u32) -> usize {
    2 * dim_x as usize * (lattice.degrees().total() as usize - lattice.element(i).block_count())
}

/// One lattice element's share of the complement Betti numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalContribution {
    pub element: usize,
    pub blocks: String,
    pub codimension: usize,
    pub interval_homology: BettiVector,
    /// `(i, rank)` added to `b_i`.
    pub contributes: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementBetti {
    pub betti: BettiVector,
    pub contributions: Vec<IntervalContribution>,
}

/// Betti numbers of the complement in `(C^dim_x)^d` of the strata `X_I`:
/// `b_i = [i = 0] + sum_{I > 0} rank H~_{cd(I) - i - 2}(0, I)`.
///
/// Intervals below elements of the same shape are isomorphic, so each
/// shape's homology is computed once.
pub fn complement_betti(lattice: &NEqualsLattice, dim_x: u32) -> Result<ComplementBetti> {
    if lattice.is_degenerate() {
        return Ok(ComplementBetti {
            betti: BettiVector::new(0, Vec::new()),
            contributions: Vec::new(),
        });
    }
    let mut reps: BTreeMap<Vec<Vec<u32>>, usize> = BTreeMap::new();
    for i in 1..lattice.len() {
        reps.entry(lattice.shape(i)).or_insert(i);
    }
    let computed: Vec<(Vec<Vec<u32>>, BettiVector)> = reps
        .into_par_iter()
        .map(|(shape, i)| interval_homology(lattice, i).map(|h| (shape, h)))
        .collect::<Result<_>>()?;
    let by_shape: HashMap<_, _> = computed.into_iter().collect();

    let top_degree = 2 * dim_x as usize * lattice.degrees().total() as usize;
    let mut betti = vec![0usize; top_degree + 1];
    betti[0] = 1;
    let mut contributions = Vec::new();
    for i in 1..lattice.len() {
        let h = &by_shape[&lattice.shape(i)];
        let cd = real_codimension(lattice, i, dim_x) as i64;
        let mut contributes = Vec::new();
        for (deg, rank) in h.nonzero() {
            let b = cd - 2 - deg;
            if b < 0 || b as usize > top_degree {
                return Err(Error::Invalid(format!(
                    "interval homology in degree {deg} lands outside the complement's range"
                )));
            }
            betti[b as usize] += rank;
            contributes.push((b as usize, rank));
        }
        contributions.push(IntervalContribution {
            element: i,
            blocks: format_element(lattice, i),
            codimension: cd as usize,
            interval_homology: h.clone(),
            contributes,
        });
    }
    Ok(ComplementBetti {
        betti: BettiVector::new(0, betti),
        contributions,
    })
}

/// `sum_i (-1)^i b_i q^(-i)` at a given `q`.
pub fn alternating_betti_sum(betti: &BettiVector, q: &Rational) -> Rational {
    let inv = q.recip();
    let mut acc = Rational::zero();
    let mut pow = Rational::one();
    for i in 0..(betti.ranks.len() as i64 + betti.offset).max(0) {
        let b = Rational::from_integer(betti.get(i).into());
        if i % 2 == 0 {
            acc += &b * &pow;
        } else {
            acc -= &b * &pow;
        }
        pow *= &inv;
    }
    acc
}
