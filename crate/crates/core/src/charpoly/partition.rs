use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// An integer partition, parts weakly decreasing and positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts and drops zero parts.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(1^d)`, the class of the identity.
    pub fn ones(d: u32) -> Self {
        Partition(vec![1; d as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Number of parts equal to `j`.
    pub fn multiplicity(&self, j: u32) -> u32 {
        self.0.iter().filter(|&&p| p == j).count() as u32
    }

    /// Centralizer order `z = prod_j j^{a_j} a_j!`.
    pub fn z(&self) -> BigUint {
        let mut z = BigUint::one();
        let mut i = 0;
        while i < self.0.len() {
            let j = self.0[i];
            let mut a = 0u32;
            while i < self.0.len() && self.0[i] == j {
                a += 1;
                i += 1;
                z *= BigUint::from(j) * BigUint::from(a);
            }
        }
        z
    }
}

impl From<Vec<u32>> for Partition {
    fn from(parts: Vec<u32>) -> Self {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// One partition per symmetric-group factor: a conjugacy class of
/// `S_{d_1} x .. x S_{d_m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(pub Vec<Partition>);

impl CycleType {
    pub fn columns(&self) -> &[Partition] {
        &self.0
    }

    pub fn degrees(&self) -> DegreeVector {
        DegreeVector(self.0.iter().map(Partition::size).collect())
    }

    pub fn identity(d: &DegreeVector) -> Self {
        CycleType(d.0.iter().map(|&k| Partition::ones(k)).collect())
    }

    /// Number of `j`-cycles in column `k` (1-based); 0 past the last column.
    pub fn count(&self, k: usize, j: u32) -> u32 {
        self.0.get(k - 1).map_or(0, |p| p.multiplicity(j))
    }

    /// `1 / prod_k z_{lambda_k}`: the share of the group in this class.
    pub fn class_weight(&self) -> Rational {
        let z: BigUint = self.0.iter().map(Partition::z).product();
        Rational::new(1.into(), z.into())
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeVector(pub Vec<u32>);

impl DegreeVector {
    pub fn new(d: Vec<u32>) -> Self {
        DegreeVector(d)
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Parses a comma list such as `"2,2"`.
    pub fn parse(text: &str) -> crate::Result<Self> {
        let d = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| crate::Error::Invalid(format!("degree vector {text:?}")))
            })
            .collect::<crate::Result<Vec<_>>>()?;
        Ok(DegreeVector(d))
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// All partitions of `d` in decreasing lexicographic order, each with its
/// centralizer order.
pub fn partitions_of(d: u32) -> Vec<(Partition, BigUint)> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    gen_partitions(d, d, &mut cur, &mut out);
    out.into_iter()
        .map(|p| {
            let p = Partition(p);
            let z = p.z();
            (p, z)
        })
        .collect()
}

fn gen_partitions(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for part in (1..=rest.min(max)).rev() {
        cur.push(part);
        gen_partitions(rest - part, part, cur, out);
        cur.pop();
    }
}

/// Every conjugacy class of `S_d`, as the product of the per-column
/// partition lists (first column varies slowest).
pub fn cycle_types(d: &DegreeVector) -> Vec<CycleType> {
    let per_col: Vec<Vec<Partition>> = d
        .0
        .iter()
        .map(|&k| partitions_of(k).into_iter().map(|(p, _)| p).collect())
        .collect();
    let mut out = vec![Vec::new()];
    for col in &per_col {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                col.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(CycleType).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn partitions_of_three() {
        let ps = partitions_of(3);
        let got: Vec<_> = ps.iter().map(|(p, z)| (p.parts().to_vec(), z.to_u64().unwrap())).collect();
        assert_eq!(got, vec![(vec![3], 3), (vec![2, 1], 2), (vec![1, 1, 1], 6)]);
    }

    #[test]
    fn partitions_of_zero() {
        let ps = partitions_of(0);
        assert_eq!(ps.len(), 1);
        assert!(ps[0].0.is_empty());
        assert_eq!(ps[0].1, BigUint::one());
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        let mut fact = BigUint::one();
        for d in 0..=9u32 {
            if d > 0 {
                fact *= BigUint::from(d);
            }
            let total: BigUint = partitions_of(d).iter().map(|(_, z)| &fact / z).sum();
            assert_eq!(total, fact, "d = {d}");
        }
        assert_eq!(partitions_of(4).len(), 5);
    }

    #[test]
    fn partition_normalizes() {
        assert_eq!(Partition::new(vec![1, 0, 3, 1]).parts(), &[3, 1, 1]);
        assert_eq!(Partition::new(vec![2, 1, 1]).to_string(), "(2,1,1)");
    }

    #[test]
    fn class_measure_is_one() {
        let d = DegreeVector::new(vec![3, 2]);
        let total: Rational = cycle_types(&d).iter().map(CycleType::class_weight).sum();
        assert_eq!(total, Rational::one());
    }
}
