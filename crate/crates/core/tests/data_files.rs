use std::path::PathBuf;

use posetrep::classify::{analyze, replay_reduction, Answer, Certificate, ClassifyConfig};
use posetrep::grothendieck::{negative_cone_samples, verify_notgtame};
use posetrep::poset::Poset;
use posetrep::quiver::{graph_type, is_hyperbolic, Quiver};

fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn two_by_five_reduces_onto_a_frame() {
    let p = Poset::parse(&data("2x5.poset")).unwrap();
    assert_eq!(p.len(), 10);
    let a = analyze(&p, &ClassifyConfig::default()).unwrap();
    assert_eq!(a.rep_finite.answer, Answer::No);
    let Certificate::Reduction { steps, frame, .. } = &a.rep_finite.certificate else { panic!("no reduction") };
    assert!(replay_reduction(&p, steps, frame).unwrap());
    assert_eq!(a.simply_connected.answer, Answer::Yes);
}

#[test]
fn seven_element_poset_stays_undecided() {
    let p = Poset::parse(&data("seven.poset")).unwrap();
    let a = analyze(&p, &ClassifyConfig::default()).unwrap();
    assert_eq!(a.simply_connected.answer, Answer::No);
    assert_eq!(a.gldim_le_2.answer, Answer::Yes);
    assert_eq!(a.g_tame.answer, Answer::Unknown);
    assert!(a.any_unknown());
}

#[test]
fn generalized_kronecker_passes_the_not_g_tame_checks() {
    let q = Quiver::parse(&data("k3.quiver")).unwrap();
    assert!(graph_type(&q).unwrap().is_wild());
    assert!(is_hyperbolic(&q).unwrap());
    let samples = negative_cone_samples(&q, 4, 6);
    let report = verify_notgtame(&q, &[(0, 0), (1, 0)], &samples, 4, 64).unwrap();
    assert!(report.passed, "{report:?}");
}
