//! Certification on the shipped l = 11 data.

use galrep::arith::{discriminant, ZPoly};
use galrep::certify::{self, Status};
use galrep::data::RepData;
use galrep::gl2::QuotientGroup;
use galrep::resolvent::{build_table, BuildOptions};
use num_traits::Zero;

fn l11() -> RepData {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/data/l11_delta.galrep");
    RepData::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn level_one_traces_down_to_the_projective_line() {
    let data = l11();
    let (tab, _) = build_table(&data, &BuildOptions::default()).unwrap();
    let g = QuotientGroup::level(11, 1).unwrap();
    let idx = tab.indexation(&g).unwrap();
    let f0 = certify::trace_down(&data.poly, 11, 1, &idx, tab.p).unwrap();
    assert_eq!(f0.degree(), Some(12));
    assert!(f0.is_monic());
    assert!(!discriminant(&f0).unwrap().is_zero());

    let a3 = certify::check_a3(&f0, &data.poly, 1_000_000).unwrap();
    assert_eq!(a3.status, Status::Pass, "{a3}");
    let v: u64 = a3.witnesses[0].parse().unwrap();
    assert_eq!(v, 48953);
    assert!(certify::verify_a3_witness(&f0, &data.poly, v).unwrap());

    // a shuffled root assignment does not descend to Z
    let mut bad = idx.clone();
    bad.root_of_point.swap(0, 1);
    bad.root_of_point.swap(2, 7);
    assert!(certify::trace_down(&data.poly, 11, 1, &bad, tab.p).is_err());
}

#[test]
fn checklist_passes_and_rejects_a_perturbation() {
    let data = l11();
    let rep = certify::checklist(&data, 1_000_000);
    assert!(rep.ok(), "{rep}");
    let mut c = data.poly.coeffs().to_vec();
    c[3] += 1;
    let bad = RepData { poly: ZPoly::from_bigints(c), ..data };
    assert!(!certify::checklist(&bad, 1_000_000).ok());
}
