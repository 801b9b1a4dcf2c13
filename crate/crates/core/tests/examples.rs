use flatres::gauss::{g, GaussianRational as G};
use flatres::graphs::{find_connection_graph_for, find_stable_config, ConnectionGraph, SearchBudget, Side};
use flatres::surfaces::{CertificateBase, RotationClaim};
use flatres::*;

fn s0(zeros: Vec<u32>, poles: Vec<u32>, s: u32) -> StratumSignature {
    StratumSignature::new(0, zeros, poles, s)
}

fn ints(v: &[i64]) -> ResidueTuple {
    ResidueTuple::from_ints(v)
}

fn witness(sig: &StratumSignature, r: &ResidueTuple) -> ConstructionCertificate {
    let cert = build_witness(sig, r).unwrap_or_else(|e| panic!("{sig:?} {r:?}: {e}"));
    assert!(verify_certificate(&cert).unwrap().matches(sig, r));
    cert
}

#[test]
fn verdicts() {
    let cases: [(StratumSignature, ResidueTuple, bool, Reason); 6] = [
        (s0(vec![2], vec![], 4), ints(&[1, 1, -1, -1]), false, Reason::ExcludedPrimitiveRay),
        (s0(vec![2], vec![2, 2], 0), ints(&[0, 0]), false, Reason::ZeroVectorExcludedByLargeZero),
        (s0(vec![1, 1], vec![2, 2], 0), ints(&[0, 0]), true, Reason::ZeroVectorAllowed),
        (s0(vec![5], vec![], 7), ints(&[3, 1, 1, 1, -2, -2, -2]), true, Reason::CollinearSumExceedsMaxZero),
        (StratumSignature::new(1, vec![6], vec![3, 3], 0), ints(&[0, 0]), true, Reason::GenusPositiveSurjective),
        (s0(vec![2], vec![], 4), ResidueTuple::new(vec![g(1, 0), g(0, 1), g(-1, 0), g(0, -1)]), true, Reason::NonCollinear),
    ];
    for (sig, r, realizable, reason) in cases {
        let v = decide_realizable(&sig, &r).unwrap();
        assert_eq!((v.realizable, v.reason), (realizable, reason), "{sig:?} {r:?}");
    }
}

#[test]
fn validation_errors_propagate() {
    assert!(decide_realizable(&s0(vec![3], vec![], 4), &ints(&[1, 1, -1, -1])).is_err());
    assert!(decide_realizable(&s0(vec![2], vec![], 4), &ints(&[1, 1, -1, 0])).is_err());
    assert!(decide_realizable(&s0(vec![2], vec![], 4), &ints(&[1, 1, -1, -2])).is_err());
}

#[test]
fn graph_examples() {
    assert!(find_connection_graph_for(&[3, 1, 1, 1, -2, -2, -2]).is_some());
    assert!(find_connection_graph_for(&[1, 1, -1, -1]).is_none());
    let star = find_connection_graph_for(&[2, 1, -3]).unwrap();
    assert_eq!(star.degree(2), 2);

    // center 3 joined to the three 2's, each 2 joined to one 1
    let sides = [Side::Plus, Side::Plus, Side::Plus, Side::Plus, Side::Minus, Side::Minus, Side::Minus];
    let g7 = ConnectionGraph::new(
        sides.to_vec(),
        vec![3, 1, 1, 1, 2, 2, 2],
        vec![(0, 4), (0, 5), (0, 6), (4, 1), (5, 2), (6, 3)],
        (0..7).collect(),
    )
    .unwrap();
    assert!(g7.is_connection_graph());
}

#[test]
fn stable_examples() {
    let r = ints(&[2, 1, 1, -1, -1, -2]);
    for zeros in [vec![2, 2], vec![3, 1]] {
        let sig = s0(zeros, vec![], 6);
        assert!(find_stable_config(&sig, &r, SearchBudget::default()).unwrap().is_found());
        assert!(!decide_realizable(&s0(vec![4], vec![], 6), &r).unwrap().realizable);
        witness(&sig, &r);
    }
}

#[test]
fn residues_of_pieces() {
    let p = Piece::polar(3, 1, vec![g(1, 0), g(1, -1)], vec![], 0);
    assert_eq!(residue_of_piece(&p), Some(g(2, -1)));
    let trivial = Piece::polar(4, 2, vec![g(2, 1)], vec![g(2, 1)], 0);
    assert_eq!(residue_of_piece(&trivial), Some(G::zero()));
    let simple = Piece::simple(vec![g(1, 0), g(1, 1)], 0);
    assert_eq!(residue_of_piece(&simple), Some(g(2, 1)));
    assert_eq!(residue_of_piece(&Piece::polygon(vec![g(1, 0), g(0, 1), g(-1, -1)])), None);
}

#[test]
fn witnesses() {
    let cases = [
        (s0(vec![2], vec![], 4), ResidueTuple::new(vec![g(1, 0), g(0, 1), g(-1, 0), g(0, -1)])),
        (s0(vec![3, 3, 3], vec![3, 2, 2, 2, 2], 0), ResidueTuple::zeros(5)),
        (s0(vec![4, 1], vec![4, 3], 0), ResidueTuple::zeros(2)),
        (s0(vec![5], vec![], 7), ints(&[3, 1, 1, 1, -2, -2, -2])),
        (StratumSignature::new(1, vec![4], vec![], 4), ints(&[1, 1, -1, -1])),
        (StratumSignature::new(2, vec![6], vec![2, 2], 0), ints(&[1, -1])),
        // zero order 6 is forced by the degree identity for these poles
        (s0(vec![6], vec![3, 2, 2], 1), ResidueTuple::new(vec![g(-1, -1), G::zero(), g(0, 1), g(1, 0)])),
    ];
    for (sig, r) in cases {
        witness(&sig, &r);
    }
    let cert = witness(&StratumSignature::new(2, vec![6], vec![2, 2], 0), &ints(&[1, -1]));
    assert!(matches!(cert.base, CertificateBase::Surface(_)));
}

#[test]
fn not_realizable_is_consistent() {
    let sig = s0(vec![2], vec![], 4);
    let r = ints(&[1, 1, -1, -1]);
    assert_eq!(build_witness(&sig, &r), Err(WitnessError::NotRealizable(Reason::ExcludedPrimitiveRay)));
}

#[test]
fn surgery_examples() {
    let base = witness(&StratumSignature::new(1, vec![4], vec![2, 2], 0), &ResidueTuple::zeros(2));
    let split = blow_up_zero(&base, 0, vec![2, 2]).unwrap();
    let prof = verify_certificate(&split).unwrap();
    assert!(prof.matches(&StratumSignature::new(1, vec![2, 2], vec![2, 2], 0), &ResidueTuple::zeros(2)));
    assert!(blow_up_zero(&base, 0, vec![4]).is_err());
    assert!(blow_up_zero(&base, 0, vec![3, 2]).is_err());

    let square = ResidueTuple::new(vec![g(1, 0), g(0, 1), g(-1, 0), g(0, -1)]);
    let base = witness(&s0(vec![2], vec![], 4), &square);
    let prof = verify_certificate(&blow_up_zero(&base, 0, vec![1, 1]).unwrap()).unwrap();
    assert!(prof.matches(&s0(vec![1, 1], vec![], 4), &square));

    let r = ints(&[1, -1]);
    let base = witness(&s0(vec![2], vec![2, 2], 0), &r);
    let once = sew_handle(&base, 0).unwrap();
    assert!(verify_certificate(&once).unwrap().matches(&StratumSignature::new(1, vec![4], vec![2, 2], 0), &r));
    let twice = sew_handle(&once, 0).unwrap();
    assert!(verify_certificate(&twice).unwrap().matches(&StratumSignature::new(2, vec![6], vec![2, 2], 0), &r));
    assert!(sew_handle(&base, 1).is_err());

    let r = ints(&[3, 1, 1, -2, -2, -1]);
    let base = witness(&s0(vec![4], vec![], 6), &r);
    let up = sew_handle(&base, 0).unwrap();
    assert!(verify_certificate(&up).unwrap().matches(&StratumSignature::new(1, vec![6], vec![], 6), &r));
}

#[test]
fn certificate_violations() {
    let sig = StratumSignature::new(1, vec![6], vec![3, 3], 0);
    let r = ResidueTuple::zeros(2);
    let cert = build_witness_with_rotation(&sig, &r, 3).unwrap();
    let mut bad = cert.clone();
    bad.rotation = Some(RotationClaim { rotation: 5, ..cert.rotation.unwrap() });
    assert!(verify_certificate(&bad).is_err());

    let base = witness(&s0(vec![2], vec![2, 2], 0), &ints(&[1, -1]));
    let mut flipped = base.clone();
    for p in &mut flipped.claimed.poles {
        p.residue = -&p.residue;
    }
    assert!(verify_certificate(&flipped).is_err());
}
