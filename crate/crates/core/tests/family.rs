mod common;

use common::{q, stacked_line_u};
use lamiq::exactnum::{QVector, Rational};
use lamiq::family::*;
use lamiq::lattice::{GeneratorMatrix, LaminatedFamily};
use lamiq::symmetry::{GroupSpec, SignedPerm};
use proptest::prelude::*;

fn stacked_line() -> (LaminatedFamily, GroupSpec) {
    let fam = LaminatedFamily::new(&GeneratorMatrix::identity(1), QVector(vec![q(1, 2)])).unwrap();
    let group = GroupSpec::new(vec![SignedPerm::negation(2, &[0]), SignedPerm::negation(2, &[1])], Some(4)).unwrap();
    (fam, group)
}

#[test]
fn stacked_line_recursion_matches_hand_integral() {
    let (fam, group) = stacked_line();
    for a in [q(1, 3), q(1, 2), q(2, 3), q(5, 4), q(7, 3)] {
        let sk = Skeleton::build(&fam, &group, &a, &Default::default()).unwrap();
        let model = PhaseModel::build(sk, 1000).unwrap();
        let s = model.summary_at(&a, 128).unwrap();
        assert_eq!(s.second_moment, stacked_line_u(&a), "a = {a}");
        assert_eq!(s.volume, a);
    }
}

#[test]
fn stacked_line_phases_and_optimum() {
    let (fam, group) = stacked_line();
    let report = analyze_family(&fam, &group, &q(1, 20), &Rational::from_int(3), &[], &FamilyConfig::default()).unwrap();
    assert_eq!(report.scan.boundaries.len(), 1);
    let b = &report.scan.boundaries[0];
    assert!(b.nu_lo <= q(1, 4) && q(1, 4) <= b.nu_hi);
    assert_eq!(simplest_rational(&b.nu_lo, &b.nu_hi), q(1, 4));
    let upper = &report.fits[1];
    let a = q(3, 2);
    assert_eq!(upper.u.eval(&a.square()), &stacked_line_u(&a) * &a.pow(3));
    let best = report.optimum.best.as_ref().unwrap();
    assert!(best.root.lo <= q(3, 4) && q(3, 4) <= best.root.hi);
    // The lower phase has its own hexagonal extremum at ν = 1/12.
    let lower = &report.optimum.phases[0].candidates;
    assert!(lower.iter().any(|c| c.root.lo <= q(1, 12) && q(1, 12) <= c.root.hi));
    // Hexagonal lattice: G = 5/(36√3).
    let hex = 5.0 / (36.0 * 3f64.sqrt());
    assert!((best.g.to_f64() - hex).abs() < 1e-12);
    // The difference vanishes to some order at the boundary.
    assert!(report.differences.iter().all(|d| d.multiplicity >= 1));
}

#[test]
fn spec_interval_scans() {
    let (fam, group) = stacked_line();
    let (scan, skeletons) = detect_phase_boundaries(&fam, &group, &q(1, 2), &q(3, 2), &ScanConfig::default()).unwrap();
    assert!(scan.boundaries.is_empty());
    assert_eq!(skeletons.len(), 1);
    assert!(detect_phase_boundaries(&fam, &group, &q(3, 2), &q(1, 2), &ScanConfig::default()).is_err());
}

fn arb_poly() -> impl Strategy<Value = PolyNu> {
    prop::collection::vec(-20i64..20, 1..6).prop_map(|c| PolyNu::from_ints(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interpolation_recovers_polynomial(p in arb_poly()) {
        let xs: Vec<Rational> = (1..=6).map(|k| q(k, 3)).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| p.eval(x)).collect();
        prop_assert_eq!(PolyNu::interpolate(&xs, &ys).unwrap(), p);
    }

    #[test]
    fn root_intervals_contain_sign_changes(roots in prop::collection::btree_set(-8i64..8, 1..5)) {
        let mut p = PolyNu::constant(Rational::from_int(1));
        for &r in &roots {
            p = p.mul(&PolyNu::from_ints(&[-r, 3]));
        }
        let ivs = isolate_roots(&p).unwrap();
        prop_assert_eq!(ivs.len(), roots.len());
        for (iv, &r) in ivs.iter().zip(&roots) {
            let root = q(r, 3);
            prop_assert!(iv.lo < root && root <= iv.hi);
            let fine = refine_root(&p, iv, &q(1, 1_000_000));
            // An exact hit collapses the interval to the root itself.
            prop_assert!(fine.lo <= root && root <= fine.hi);
            prop_assert!(&fine.hi - &fine.lo <= q(1, 1_000_000));
        }
    }

    #[test]
    fn multiplicity_of_powers(k in 0u32..6, r in -5i64..5) {
        let p = PolyNu::from_ints(&[-r, 1]).pow(k).mul(&PolyNu::from_ints(&[1, 0, 1]));
        prop_assert_eq!(p.root_multiplicity(&Rational::from_int(r)), k as usize);
    }

    #[test]
    fn simplest_rational_lies_inside(a in 1i64..1000, b in 1i64..1000, d in 1i64..50) {
        let (lo, hi) = if a <= b { (q(a, d), q(b, d)) } else { (q(b, d), q(a, d)) };
        let s = simplest_rational(&lo, &hi);
        prop_assert!(lo <= s && s <= hi);
        prop_assert!(s.denom() <= lo.denom().clone().max(hi.denom().clone()));
    }
}
