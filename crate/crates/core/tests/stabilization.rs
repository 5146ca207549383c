//! Interpolated censuses against the lattice, and stabilization of the
//! normalized coefficients along diagonal sweeps.

use zcc::census::{ordered_count, Guards};
use zcc::charpoly::DegreeVector;
use zcc::lattice::{build_lattice, point_count_polynomial};
use zcc::rational::{int, Rational};
use zcc::stabkit::{
    betti_check, detect_stabilization, first_prime_powers, interpolate_in_q, lefschetz_report, normalized_coefficients,
    DegreeEntry, SeriesSide, SweepConfig,
};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

#[test]
fn ordered_interpolation_matches_lattice() {
    for d in [vec![1u32, 1], vec![2, 1], vec![2, 2], vec![3, 1]] {
        let d = DegreeVector::new(d);
        let qs = first_prime_powers(d.total() as usize + 2);
        let samples: Vec<(u64, Rational)> = qs
            .iter()
            .map(|&q| (q, int(ordered_count(&d, 1, q, &Guards::default()).unwrap() as i64)))
            .collect();
        let fit = interpolate_in_q(&samples, Some(d.total() as usize)).unwrap();
        assert_eq!(fit.polynomial, point_count_polynomial(&build_lattice(&d, 1).unwrap(), 1), "{d}");
    }
}

#[test]
fn rational_maps_stabilize_at_once() {
    let config = SweepConfig {
        m: 2,
        n: 1,
        d_list: (1..=3).map(DegreeEntry::Diagonal).collect(),
        q_list: Vec::new(),
        polys: vec!["1".into(), "X[1,1]".into()],
        truncation: None,
    };
    let report = lefschetz_report(&config, &Guards::default()).unwrap();
    let ones = &report.polys[0];
    for d in &ones.degrees {
        assert_eq!(&d.normalized[..2], &ints(&[1, -1])[..]);
        assert!(d.normalized[2..].iter().all(|c| *c == int(0)));
    }
    assert_eq!(ones.stabilization.as_ref().unwrap().onset, Some(0));
    let roots = &report.polys[1];
    assert_eq!(&roots.degrees[1].normalized[..3], &ints(&[1, -2, 2])[..]);
    assert_eq!(&roots.degrees[2].normalized[..3], &ints(&[1, -2, 2])[..]);
    for d in &ones.degrees {
        match &d.rhs {
            SeriesSide::Computed { points, .. } => assert!(points.iter().all(|p| p.residual == int(0))),
            other => panic!("series not computed: {other:?}"),
        }
        let check = d.betti_check.as_ref().expect("betti check for n = 1, m = 2");
        assert!(check.points.iter().all(|p| p.residual == int(0)));
    }
}

#[test]
fn lefschetz_identity_is_exact() {
    for d in [vec![1u32, 1], vec![2, 2]] {
        let check = betti_check(&DegreeVector::new(d), &[2, 3, 5]).unwrap();
        for p in &check.points {
            assert_eq!(p.residual, int(0), "q={}", p.q);
        }
    }
    assert_eq!(betti_check(&DegreeVector::new(vec![1, 1]), &[2]).unwrap().betti, vec![1, 1]);
}

#[test]
fn other_thresholds_leave_the_series_uncomputed() {
    let config = SweepConfig {
        m: 1,
        n: 2,
        d_list: vec![DegreeEntry::Diagonal(2), DegreeEntry::Diagonal(3)],
        q_list: Vec::new(),
        polys: vec!["1".into()],
        truncation: None,
    };
    let report = lefschetz_report(&config, &Guards::default()).unwrap();
    for d in &report.polys[0].degrees {
        assert!(matches!(d.rhs, SeriesSide::NotComputed { .. }));
        assert!(d.betti_check.is_none());
        assert_eq!(&d.normalized[..2], &ints(&[1, -1])[..]);
    }
}

#[test]
fn stabilization_verdicts() {
    let v = detect_stabilization(&[ints(&[1, 0, 5]), ints(&[1, -1, 2]), ints(&[1, -1, 3])], Some(2)).unwrap();
    assert_eq!(v.onset, Some(1));
    assert_eq!(v.stable_from, vec![0, 1, 2]);
    assert_eq!(v.unstable, vec![2]);
    let v = detect_stabilization(&[ints(&[1, 0]), ints(&[1, 1])], None).unwrap();
    assert_eq!(v.onset, None);
}

#[test]
fn normalization_respects_dimension() {
    let f = zcc::qpoly::QPoly::from_ints(&[0, -1, 1]);
    assert_eq!(normalized_coefficients(&f, 2).unwrap(), ints(&[1, -1, 0]));
    assert!(normalized_coefficients(&f, 1).is_err());
}
