//! Census cross-checks against closed forms and against each other.

use std::sync::Arc;

use zcc::census::{
    burnside_tally, is_member, ordered_count, run_census, unordered_tally, CensusSpec, Guards, Mode, Weighting,
};
use zcc::charpoly::{parse_charpoly, CharPolynomial, DegreeVector};
use zcc::ffield::FieldSpec;
use zcc::poly::MonicPoly;
use zcc::rational::{int, Rational};
use zcc::Error;

fn field(q: u64) -> Arc<FieldSpec> {
    Arc::new(FieldSpec::parse(&q.to_string(), 1 << 20).unwrap())
}

fn dv(d: &[u32]) -> DegreeVector {
    DegreeVector::new(d.to_vec())
}

fn total(d: &[u32], n: u32, q: u64, poly: &str, mode: Mode) -> Rational {
    let p = parse_charpoly(poly, Some(d.len())).unwrap();
    let spec = CensusSpec::new(dv(d), n, field(q), p, mode).unwrap();
    run_census(&spec, &Guards::default()).unwrap().total
}

#[test]
fn squarefree_counts() {
    for d in 2..=4u32 {
        for q in [2u64, 3, 5] {
            let expected = int((q.pow(d) - q.pow(d - 1)) as i64);
            for mode in [Mode::Unordered, Mode::Burnside] {
                assert_eq!(total(&[d], 2, q, "1", mode), expected, "d={d} q={q} {mode:?}");
            }
        }
    }
}

#[test]
fn membership_by_direct_scan() {
    // count squarefree cubics over F_3 one polynomial at a time
    let f = field(3);
    let count = MonicPoly::all_of_degree(f, 3)
        .filter(|p| is_member(std::slice::from_ref(p), 2).unwrap())
        .count();
    assert_eq!(count, 27 - 9);
}

#[test]
fn coprime_pairs() {
    // pairs of monic polynomials of positive degrees a, b with no common root
    for (a, b) in [(1u32, 1u32), (2, 1), (2, 2), (3, 1)] {
        for q in [2u64, 3] {
            let expected = int((q.pow(a + b) - q.pow(a + b - 1)) as i64);
            assert_eq!(total(&[a, b], 1, q, "1", Mode::Unordered), expected, "({a},{b}) q={q}");
            assert_eq!(total(&[a, b], 1, q, "1", Mode::Burnside), expected, "({a},{b}) q={q}");
        }
    }
}

#[test]
fn ordered_counts_over_extension_fields() {
    // Conf_2 ordered: q(q - 1)
    for q in [4u64, 8, 9] {
        assert_eq!(ordered_count(&dv(&[2]), 2, q, &Guards::default()).unwrap(), q * (q - 1));
    }
}

#[test]
fn distinct_roots_average_one() {
    // with n above every degree all polynomials are members; coset weighting
    // makes X[1,1] count distinct F_q-roots, whose total is q^d
    for (d, q) in [(2u32, 3u64), (3, 2), (3, 3), (4, 2)] {
        for mode in [Mode::Unordered, Mode::Burnside] {
            assert_eq!(total(&[d], d + 1, q, "X[1,1]", mode), int(q.pow(d) as i64), "d={d} q={q}");
        }
    }
}

#[test]
fn multiplicity_weighting_counts_roots_with_multiplicity() {
    // sum over monic f of degree d of roots with multiplicity: q * sum_{k=1..d} q^(d-k)
    for (d, q) in [(2u32, 3u64), (3, 3), (3, 2)] {
        let expected: u64 = q * (1..=d).map(|k| q.pow(d - k)).sum::<u64>();
        let spec = CensusSpec::new(dv(&[d]), d + 1, field(q), CharPolynomial::var(1, 1), Mode::Unordered)
            .unwrap()
            .with_weighting(Weighting::Multiplicity);
        let got = run_census(&spec, &Guards::default()).unwrap().total;
        assert_eq!(got, int(expected as i64), "d={d} q={q}");
    }
}

#[test]
fn enumeration_and_burnside_agree_over_f4() {
    let f = field(4);
    let g = Guards::default();
    for (d, n) in [(vec![2u32], 2u32), (vec![3], 2), (vec![1, 2], 1), (vec![2, 2], 2)] {
        let d = dv(&d);
        let u = unordered_tally(&d, n, &f, Weighting::Coset, &g).unwrap();
        let b = burnside_tally(&d, n, &f, &g).unwrap();
        for p in ["1", "X[1,1]", "X[1,2]", "X[1,1]^2 - 2*X[1,2]", "1/2*X[1,1] + 3"] {
            let p = parse_charpoly(p, Some(d.m())).unwrap();
            assert_eq!(u.total(&p).unwrap(), b.total(&p).unwrap(), "{d} n={n} {p}");
        }
        assert_eq!(u.point_count(), b.point_count().unwrap());
    }
}

#[test]
fn ordered_mode_is_unweighted() {
    let err = CensusSpec::new(dv(&[2]), 2, field(2), CharPolynomial::var(1, 1), Mode::Ordered).unwrap_err();
    assert_eq!(err, Error::OrderedWeighted);
}

#[test]
fn guards_trip_before_work() {
    let spec = CensusSpec::new(dv(&[12]), 2, field(7), CharPolynomial::one(), Mode::Unordered).unwrap();
    let err = run_census(&spec, &Guards::default()).unwrap_err();
    assert!(err.is_guard_or_inconsistency(), "{err}");
    let spec = CensusSpec::new(dv(&[9]), 2, field(2), CharPolynomial::one(), Mode::Burnside).unwrap();
    assert!(run_census(&spec, &Guards::default()).unwrap_err().is_guard_or_inconsistency());
}

#[test]
fn censuses_are_deterministic() {
    let p = parse_charpoly("X[1,1]*X[2,1] + X[2,2]", Some(2)).unwrap();
    let spec = CensusSpec::new(dv(&[2, 3]), 1, field(3), p, Mode::Unordered).unwrap();
    let mut a = run_census(&spec, &Guards::default()).unwrap();
    let mut b = run_census(&spec, &Guards::default()).unwrap();
    a.elapsed_ms = None;
    b.elapsed_ms = None;
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
