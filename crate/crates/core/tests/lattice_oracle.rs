//! The n-equals lattice against a brute-force construction: every set
//! partition of the ground set, filtered by admissibility, ordered by
//! refinement.

use std::collections::{BTreeSet, HashMap};

use zcc::charpoly::DegreeVector;
use zcc::lattice::{build_lattice, classify_edges, mobius, mobius_between, point_count_polynomial, NEqualsLattice};

type Blocks = Vec<u64>;

fn set_partitions(points: u32) -> Vec<Blocks> {
    fn go(rest: u64, blocks: &mut Vec<u64>, out: &mut Vec<Blocks>) {
        if rest == 0 {
            let mut b = blocks.clone();
            b.sort_unstable();
            out.push(b);
            return;
        }
        let x = rest & rest.wrapping_neg();
        let others = rest & !x;
        let mut sub = others;
        loop {
            blocks.push(x | sub);
            go(others & !sub, blocks, out);
            blocks.pop();
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }
    let mut out = Vec::new();
    go((1u64 << points) - 1, &mut Vec::new(), &mut out);
    out
}

fn refines(a: &Blocks, b: &Blocks) -> bool {
    a.iter().all(|&x| b.iter().any(|&y| x & y == x))
}

struct Brute {
    elements: Vec<Blocks>,
    covers: BTreeSet<(Blocks, Blocks)>,
    mobius: HashMap<Blocks, i64>,
}

fn brute(lattice: &NEqualsLattice) -> Brute {
    let d = lattice.degrees();
    let total = d.total();
    let n = lattice.threshold();
    let column = |p: u32| lattice.point_label(p).0 - 1;
    let admissible = |b: u64| {
        if b.count_ones() == 1 {
            return true;
        }
        let mut counts = vec![0u32; d.m()];
        for p in 0..total {
            if b & (1 << p) != 0 {
                counts[column(p)] += 1;
            }
        }
        counts.iter().all(|&c| c >= n)
    };
    let mut elements: Vec<Blocks> = set_partitions(total)
        .into_iter()
        .filter(|p| p.iter().all(|&b| admissible(b)))
        .collect();
    elements.sort_by_key(|p| std::cmp::Reverse(p.len()));
    let lt = |a: &Blocks, b: &Blocks| a != b && refines(a, b);
    let mut covers = BTreeSet::new();
    for a in &elements {
        for b in &elements {
            if lt(a, b) && !elements.iter().any(|c| lt(a, c) && lt(c, b)) {
                covers.insert((a.clone(), b.clone()));
            }
        }
    }
    let bottom = elements[0].clone();
    let mut mu: HashMap<Blocks, i64> = HashMap::new();
    // block counts strictly decrease up the order, so this is a linear extension
    for b in &elements {
        let v = if *b == bottom {
            1
        } else {
            -elements.iter().filter(|a| lt(a, b)).map(|a| mu[a]).sum::<i64>()
        };
        mu.insert(b.clone(), v);
    }
    Brute { elements, covers, mobius: mu }
}

fn sorted(lattice: &NEqualsLattice, i: usize) -> Blocks {
    let mut b = lattice.element(i).blocks().to_vec();
    b.sort_unstable();
    b
}

fn degree_vectors(max_total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for t in 1..=max_total {
        out.push(vec![t]);
        for a in 1..t {
            out.push(vec![a, t - a]);
        }
    }
    out.extend([vec![1, 1, 1], vec![2, 1, 1], vec![2, 2, 1], vec![1, 1, 1, 1]]);
    out
}

#[test]
fn matches_brute_force_construction() {
    for d in degree_vectors(6) {
        for n in 1..=3 {
            let dv = DegreeVector::new(d.clone());
            let lattice = build_lattice(&dv, n).unwrap();
            let b = brute(&lattice);
            let ours: BTreeSet<Blocks> = (0..lattice.len()).map(|i| sorted(&lattice, i)).collect();
            let theirs: BTreeSet<Blocks> = b.elements.iter().cloned().collect();
            assert_eq!(ours, theirs, "elements of d={d:?} n={n}");
            assert_eq!(lattice.len(), b.elements.len());
            let covers: BTreeSet<(Blocks, Blocks)> = lattice
                .cover_edges()
                .map(|(i, j)| (sorted(&lattice, i), sorted(&lattice, j)))
                .collect();
            assert_eq!(covers, b.covers, "covers of d={d:?} n={n}");
            if lattice.is_degenerate() {
                continue;
            }
            let mu = mobius(&lattice);
            for i in 0..lattice.len() {
                assert_eq!(mu.get(i), b.mobius[&sorted(&lattice, i)], "mu of d={d:?} n={n} at {i}");
            }
        }
    }
}

#[test]
fn mobius_sums_vanish_and_edges_classify() {
    for d in degree_vectors(6) {
        for n in 1..=3 {
            let lattice = build_lattice(&DegreeVector::new(d.clone()), n).unwrap();
            if lattice.is_degenerate() {
                continue;
            }
            let counts = classify_edges(&lattice).unwrap();
            assert_eq!(counts.total(), lattice.cover_edges().count());
            let mu = mobius(&lattice);
            for j in 1..lattice.len() {
                let sum: i64 = (0..lattice.len()).filter(|&i| lattice.leq(i, j)).map(|i| mu.get(i)).sum();
                assert_eq!(sum, 0, "d={d:?} n={n} element {j}");
            }
        }
    }
}

#[test]
fn interval_mobius_agrees_with_bottom_table() {
    let lattice = build_lattice(&DegreeVector::new(vec![3, 2]), 1).unwrap();
    let mu = mobius(&lattice);
    for i in 0..lattice.len() {
        assert_eq!(mobius_between(&lattice, lattice.bottom(), i).unwrap(), mu.get(i));
    }
}

#[test]
fn braid_arrangement_point_counts() {
    // n = 2, one column: the complement of the big diagonals is Conf_d,
    // whose ordered count is the falling factorial q(q-1)...(q-d+1)
    for d in 1..=6u32 {
        let lattice = build_lattice(&DegreeVector::new(vec![d]), 2).unwrap();
        let poly = point_count_polynomial(&lattice, 1);
        for q in 2..=9u64 {
            let expected: i64 = (0..d as i64).map(|i| q as i64 - i).product();
            assert_eq!(poly.eval_int(q), zcc::rational::int(expected), "d={d} q={q}");
        }
    }
}
