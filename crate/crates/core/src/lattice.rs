//! The n-equals partition lattice on a column-tagged ground set.
//!
//! Points are `(k, i)` with `k` the column and `i` in `1..=d_k`. A block is
//! admissible when it is a singleton or holds at least `n` points from every
//! column. Elements are set partitions into admissible blocks, ordered by
//! refinement; they index the strata `X_I` that are removed from `X^d`.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::charpoly::DegreeVector;
use crate::error::{Error, Result};
use crate::qpoly::QPoly;

pub const DEFAULT_LATTICE_LIMIT: u32 = 10;

/// Blocks as bitmasks over the ground set, sorted by lowest point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePartition {
    blocks: Vec<u64>,
}

impl LatticePartition {
    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    fn normalized(mut blocks: Vec<u64>) -> Self {
        blocks.sort_unstable_by_key(|b| b.trailing_zeros());
        LatticePartition { blocks }
    }
}

/// A finite poset given by its strict order relation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poset {
    /// Lattice indices of the elements, for reporting.
    pub labels: Vec<usize>,
    /// `above[a]` lists every `b` with `a < b`.
    pub above: Vec<Vec<usize>>,
}

impl Poset {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_antichain(&self) -> bool {
        self.above.iter().all(Vec::is_empty)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeType {
    /// Singletons only merge into a new block.
    BlockCreation,
    /// One singleton joins an existing block.
    SingletonAdding,
    /// Two non-singleton blocks merge.
    BlockMerging,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EdgeCounts {
    pub block_creation: usize,
    pub singleton_adding: usize,
    pub block_merging: usize,
}

impl EdgeCounts {
    pub fn total(&self) -> usize {
        self.block_creation + self.singleton_adding + self.block_merging
    }
}

#[derive(Clone, Debug)]
pub struct NEqualsLattice {
    d: DegreeVector,
    n: u32,
    col_masks: Vec<u64>,
    elements: Vec<LatticePartition>,
    index: HashMap<LatticePartition, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

pub fn build_lattice(d: &DegreeVector, n: u32) -> Result<NEqualsLattice> {
    build_lattice_with_limit(d, n, DEFAULT_LATTICE_LIMIT)
}

/// As [`build_lattice`] with an explicit bound on `|d|` (at most 63).
pub fn build_lattice_with_limit(d: &DegreeVector, n: u32, limit: u32) -> Result<NEqualsLattice> {
    if d.m() == 0 {
        return Err(Error::Invalid("degree vector must have at least one entry".into()));
    }
    if n == 0 {
        return Err(Error::Invalid("threshold n must be at least 1".into()));
    }
    let total = d.total();
    if total > limit.min(63) {
        return Err(Error::guard(
            "lattice ground set",
            format!("|d| = {total} (up to Bell({total}) = {} elements)", bell(total)),
            format!("|d| = {}", limit.min(63)),
            "raise the lattice limit to proceed",
        ));
    }
    let mut col_masks = Vec::with_capacity(d.m());
    let mut offset = 0u32;
    for &dk in d.entries() {
        let mask = if dk == 0 { 0 } else { ((1u64 << dk) - 1) << offset };
        col_masks.push(mask);
        offset += dk;
    }
    let mut lattice = NEqualsLattice {
        d: d.clone(),
        n,
        col_masks,
        elements: Vec::new(),
        index: HashMap::new(),
        up: Vec::new(),
        down: Vec::new(),
    };
    let full = if total == 0 { 0 } else { (1u64 << total) - 1 };
    let mut out = Vec::new();
    lattice.generate(full, &mut Vec::new(), &mut out);
    out.sort_by(|a: &LatticePartition, b| {
        b.block_count()
            .cmp(&a.block_count())
            .then_with(|| a.blocks.cmp(&b.blocks))
    });
    lattice.index = out.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    lattice.elements = out;
    lattice.compute_covers();
    Ok(lattice)
}

fn bell(n: u32) -> BigInt {
    // Bell triangle
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![row.last().cloned().expect("nonempty row")];
        for x in &row {
            let v = next.last().expect("nonempty row") + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

impl NEqualsLattice {
    pub fn degrees(&self) -> &DegreeVector {
        &self.d
    }

    pub fn threshold(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn element(&self, i: usize) -> &LatticePartition {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[LatticePartition] {
        &self.elements
    }

    pub fn index_of(&self, p: &LatticePartition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Elements covering `i`.
    pub fn covers_of(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    /// Elements covered by `i`.
    pub fn covered_by(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    /// All cover pairs `(lower, upper)` in index order.
    pub fn cover_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(i, ups)| ups.iter().map(move |&j| (i, j)))
    }

    /// When `m = 1` and `n = 1` a single point already meets the threshold,
    /// so every configuration is excluded and the space is empty.
    pub fn is_degenerate(&self) -> bool {
        self.d.m() == 1 && self.n == 1 && self.d.total() > 0
    }

    /// Column `k` (1-based) and position `i` (1-based) of a ground point.
    pub fn point_label(&self, point: u32) -> (usize, u32) {
        let mut offset = 0;
        for (k, &dk) in self.d.entries().iter().enumerate() {
            if point < offset + dk {
                return (k + 1, point - offset + 1);
            }
            offset += dk;
        }
        panic!("point {point} outside the ground set")
    }

    pub fn column_counts(&self, block: u64) -> Vec<u32> {
        self.col_masks
            .iter()
            .map(|m| (block & m).count_ones())
            .collect()
    }

    pub fn is_admissible(&self, block: u64) -> bool {
        block.count_ones() == 1 || self.col_masks.iter().all(|m| (block & m).count_ones() >= self.n)
    }

    /// Column-count vectors of the non-singleton blocks, sorted. Two
    /// elements with the same shape have isomorphic lower intervals.
    pub fn shape(&self, i: usize) -> Vec<Vec<u32>> {
        let mut s: Vec<Vec<u32>> = self.elements[i]
            .blocks
            .iter()
            .filter(|b| b.count_ones() > 1)
            .map(|&b| self.column_counts(b))
            .collect();
        s.sort();
        s
    }

    /// Looks up the partition with the given blocks of `(column, position)`
    /// labels; unlisted points are singletons.
    pub fn find(&self, blocks: &[Vec<(usize, u32)>]) -> Result<usize> {
        let mut seen = 0u64;
        let mut masks = Vec::new();
        for block in blocks {
            let mut mask = 0u64;
            for &(k, i) in block {
                if k == 0 || k > self.d.m() || i == 0 || i > self.d.entries()[k - 1] {
                    return Err(Error::NotInLattice);
                }
                let offset: u32 = self.d.entries()[..k - 1].iter().sum();
                mask |= 1u64 << (offset + i - 1);
            }
            if mask & seen != 0 || mask == 0 {
                return Err(Error::NotInLattice);
            }
            seen |= mask;
            masks.push(mask);
        }
        for p in 0..self.d.total() {
            if seen & (1 << p) == 0 {
                masks.push(1 << p);
            }
        }
        self.index_of(&LatticePartition::normalized(masks))
            .ok_or(Error::NotInLattice)
    }

    /// Refinement order: every block of `i` lies inside a block of `j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        let big = &self.elements[j].blocks;
        self.elements[i]
            .blocks
            .iter()
            .all(|&b| big.iter().any(|&c| b & c == b))
    }

    fn generate(&self, remaining: u64, blocks: &mut Vec<u64>, out: &mut Vec<LatticePartition>) {
        if remaining == 0 {
            out.push(LatticePartition {
                blocks: blocks.clone(),
            });
            return;
        }
        let x = remaining & remaining.wrapping_neg();
        let rest = remaining & !x;
        blocks.push(x);
        self.generate(rest, blocks, out);
        blocks.pop();
        let mut sub = rest;
        while sub != 0 {
            let block = x | sub;
            if self.is_admissible(block) {
                blocks.push(block);
                self.generate(rest & !sub, blocks, out);
                blocks.pop();
            }
            sub = (sub - 1) & rest;
        }
    }

    /// Covers of `I` merge one group `S` of its blocks whose union is
    /// admissible while no smaller group inside `S` is. Admissibility only
    /// grows under unions, so checking the subgroups `S - {x}` suffices.
    fn compute_covers(&mut self) {
        let n = self.elements.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for (i, el) in self.elements.iter().enumerate() {
            let r = el.blocks.len();
            for s in 1u32..(1u32 << r) {
                if s.count_ones() < 2 {
                    continue;
                }
                let union = (0..r)
                    .filter(|&t| s & (1 << t) != 0)
                    .fold(0u64, |acc, t| acc | el.blocks[t]);
                if !self.is_admissible(union) {
                    continue;
                }
                let minimal = s.count_ones() == 2
                    || (0..r)
                        .filter(|&t| s & (1 << t) != 0)
                        .all(|t| !self.is_admissible(union & !el.blocks[t]));
                if !minimal {
                    continue;
                }
                let mut blocks: Vec<u64> = (0..r)
                    .filter(|&t| s & (1 << t) == 0)
                    .map(|t| el.blocks[t])
                    .collect();
                blocks.push(union);
                let j = self.index[&LatticePartition::normalized(blocks)];
                up[i].push(j);
                down[j].push(i);
            }
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
        }
        self.up = up;
        self.down = down;
    }
}

/// `mu(0, I)` for every element, indexed like the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MobiusTable {
    pub from_bottom: Vec<i64>,
}

impl MobiusTable {
    pub fn get(&self, i: usize) -> i64 {
        self.from_bottom[i]
    }
}

/// Lower intervals split as products over the blocks of `I`, so
/// `mu(0, I)` is the product of `mu(0, top)` of the lattice on each block,
/// which depends only on the block's column counts.
pub fn mobius(lattice: &NEqualsLattice) -> MobiusTable {
    let mut solver = MobiusSolver {
        n: lattice.n,
        f: HashMap::new(),
        g: HashMap::new(),
    };
    let from_bottom = lattice
        .elements
        .iter()
        .map(|el| {
            el.blocks
                .iter()
                .filter(|b| b.count_ones() > 1)
                .map(|&b| solver.top_mobius(&lattice.column_counts(b)))
                .product()
        })
        .collect();
    MobiusTable { from_bottom }
}

struct MobiusSolver {
    n: u32,
    f: HashMap<Vec<u32>, i64>,
    g: HashMap<Vec<u32>, i64>,
}

impl MobiusSolver {
    fn admissible(&self, c: &[u32]) -> bool {
        c.iter().sum::<u32>() == 1 || c.iter().all(|&x| x >= self.n)
    }

    /// `mu(0, top)` on a single admissible block with counts `c`.
    fn top_mobius(&mut self, c: &[u32]) -> i64 {
        if c.iter().sum::<u32>() <= 1 {
            return 1;
        }
        if let Some(&v) = self.f.get(c) {
            return v;
        }
        let v = -self.partition_sum(c, false);
        self.f.insert(c.to_vec(), v);
        v
    }

    /// Sum of `mu(0, K)` over all partitions `K` of a ground set with
    /// counts `c`, optionally leaving out the one-block partition.
    fn partition_sum(&mut self, c: &[u32], include_whole: bool) -> i64 {
        if c.iter().all(|&x| x == 0) {
            return 1;
        }
        if include_whole {
            if let Some(&v) = self.g.get(c) {
                return v;
            }
        }
        // the block containing the first point of the first nonempty column
        let k0 = c.iter().position(|&x| x > 0).expect("nonzero counts");
        let mut total = 0i64;
        let mut b = vec![0u32; c.len()];
        b[k0] = 1;
        loop {
            let whole = b.as_slice() == c;
            if self.admissible(&b) && (include_whole || !whole) {
                let mut ways = binomial(c[k0] - 1, b[k0] - 1);
                for k in 0..c.len() {
                    if k != k0 {
                        ways *= binomial(c[k], b[k]);
                    }
                }
                let rest: Vec<u32> = c.iter().zip(&b).map(|(x, y)| x - y).collect();
                total += ways * self.top_mobius(&b) * self.partition_sum(&rest, true);
            }
            // odometer over b <= c with b[k0] >= 1
            let mut k = 0;
            loop {
                if k == c.len() {
                    if include_whole {
                        self.g.insert(c.to_vec(), total);
                    }
                    return total;
                }
                let lo = u32::from(k == k0);
                if b[k] < c[k] {
                    b[k] += 1;
                    break;
                }
                b[k] = lo;
                k += 1;
            }
        }
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `mu(I, J)` by recursion over the closed interval.
pub fn mobius_between(lattice: &NEqualsLattice, i: usize, j: usize) -> Result<i64> {
    if i >= lattice.len() || j >= lattice.len() {
        return Err(Error::NotInLattice);
    }
    if !lattice.leq(i, j) {
        return Ok(0);
    }
    // index order is a linear extension: fewer blocks come later
    let interval: Vec<usize> = (i..=j)
        .filter(|&k| lattice.leq(i, k) && lattice.leq(k, j))
        .collect();
    let mut mu: Vec<i64> = Vec::with_capacity(interval.len());
    for (a, &k) in interval.iter().enumerate() {
        let v = if a == 0 {
            1
        } else {
            -(0..a)
                .filter(|&b| lattice.leq(interval[b], k))
                .map(|b| mu[b])
                .sum::<i64>()
        };
        mu.push(v);
    }
    Ok(*mu.last().expect("interval contains i"))
}

pub fn classify_edge(lattice: &NEqualsLattice, i: usize, j: usize) -> Result<EdgeType> {
    let lower = &lattice.elements[i].blocks;
    let upper = &lattice.elements[j].blocks;
    let merged: Vec<u64> = lower.iter().copied().filter(|b| !upper.contains(b)).collect();
    let created: Vec<u64> = upper.iter().copied().filter(|b| !lower.contains(b)).collect();
    let union = merged.iter().fold(0u64, |a, b| a | b);
    let describe = || format!("{} -> {}", format_element(lattice, i), format_element(lattice, j));
    if created.len() != 1 || created[0] != union || merged.len() < 2 {
        return Err(Error::UnclassifiableEdge(describe()));
    }
    let singles = merged.iter().filter(|b| b.count_ones() == 1).count();
    let blocks = merged.len() - singles;
    match (blocks, singles) {
        (0, _) => Ok(EdgeType::BlockCreation),
        (1, 1) => Ok(EdgeType::SingletonAdding),
        (2, 0) => Ok(EdgeType::BlockMerging),
        _ => Err(Error::UnclassifiableEdge(describe())),
    }
}

pub fn classify_edges(lattice: &NEqualsLattice) -> Result<EdgeCounts> {
    let mut counts = EdgeCounts::default();
    for (i, j) in lattice.cover_edges() {
        match classify_edge(lattice, i, j)? {
            EdgeType::BlockCreation => counts.block_creation += 1,
            EdgeType::SingletonAdding => counts.singleton_adding += 1,
            EdgeType::BlockMerging => counts.block_merging += 1,
        }
    }
    Ok(counts)
}

/// `N(q) = sum_I mu(0, I) q^(dimX * #blocks(I))`, the number of points of
/// the ordered space over `F_q`.
pub fn point_count_polynomial(lattice: &NEqualsLattice, dim_x: u32) -> QPoly {
    if lattice.is_degenerate() {
        return QPoly::zero();
    }
    let mu = mobius(lattice);
    let mut coeffs = vec![0i64; dim_x as usize * lattice.d.total() as usize + 1];
    for (el, &m) in lattice.elements.iter().zip(&mu.from_bottom) {
        coeffs[dim_x as usize * el.block_count()] += m;
    }
    QPoly::from_ints(&coeffs)
}

/// The open interval `(0, I)` with its induced order.
pub fn lower_interval(lattice: &NEqualsLattice, i: usize) -> Result<Poset> {
    if i >= lattice.len() {
        return Err(Error::NotInLattice);
    }
    let labels: Vec<usize> = (1..i).filter(|&k| lattice.leq(k, i)).collect();
    let above = labels
        .iter()
        .map(|&a| {
            labels
                .iter()
                .enumerate()
                .filter(|&(_, &b)| b != a && lattice.leq(a, b))
                .map(|(idx, _)| idx)
                .collect()
        })
        .collect();
    Ok(Poset { labels, above })
}

/// Blocks of an element written with `(column, position)` labels, e.g.
/// `{1.1,1.2}{1.3}`.
pub fn format_element(lattice: &NEqualsLattice, i: usize) -> String {
    lattice.elements[i]
        .blocks
        .iter()
        .map(|&b| {
            let pts: Vec<String> = block_points(b)
                .map(|p| {
                    let (k, pos) = lattice.point_label(p);
                    format!("{k}.{pos}")
                })
                .collect();
            format!("{{{}}}", pts.join(","))
        })
        .collect()
}

fn block_points(mut b: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        (b != 0).then(|| {
            let p = b.trailing_zeros();
            b &= b - 1;
            p
        })
    })
}

/// Serializable snapshot: elements as lists of blocks of `[column, position]`
/// points, covers as index pairs, and `mu(0, I)`.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeExport {
    pub d: Vec<u32>,
    pub n: u32,
    pub size: usize,
    pub elements: Vec<Vec<Vec<[u32; 2]>>>,
    pub covers: Vec<[usize; 2]>,
    pub mobius: Vec<i64>,
    /// `mu(0, top)`.
    pub top_mobius: i64,
    pub edge_counts: EdgeCounts,
    pub point_count: QPoly,
}

impl LatticeExport {
    pub fn new(lattice: &NEqualsLattice, dim_x: u32) -> Result<Self> {
        let elements = lattice
            .elements
            .iter()
            .map(|el| {
                el.blocks
                    .iter()
                    .map(|&b| {
                        block_points(b)
                            .map(|p| {
                                let (k, pos) = lattice.point_label(p);
                                [k as u32, pos]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mu = mobius(lattice).from_bottom;
        Ok(LatticeExport {
            d: lattice.d.entries().to_vec(),
            n: lattice.n,
            size: lattice.len(),
            elements,
            covers: lattice.cover_edges().map(|(a, b)| [a, b]).collect(),
            top_mobius: mu[lattice.top()],
            mobius: mu,
            edge_counts: classify_edges(lattice)?,
            point_count: point_count_polynomial(lattice, dim_x),
        })
    }
}
