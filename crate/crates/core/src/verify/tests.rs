use super::*;
use crate::groups::DEFAULT_GROUP_CAP;
use crate::reductive::Family;

fn group(text: &str) -> Group {
    Group::parse(text, DEFAULT_GROUP_CAP).unwrap()
}

fn assert_pass(r: &VerificationReport) {
    let bad: Vec<&Check> = r.failures().collect();
    assert!(r.pass && bad.is_empty(), "{}", r.to_text());
}

const C2XS3: &str = "kind=product,factors=(kind=cyclic,n=2);(kind=symmetric,n=3)";

#[test]
fn registry_parses_and_rejects_bad_entries() {
    let all = registry();
    assert!(all.iter().any(|i| i.tag == Tag::Stretch));
    assert!(find_instance("C2xS3").unwrap().centric_control.contains(&2));
    let bad = r#"
[[instance]]
name = "SL2(3)"
group = "kind=SL,n=2,q=3"
ell = [3]
tasks = ["defining"]
"#;
    assert!(parse_registry(bad).is_err());
    let wrong_prime = bad.replace("q=3", "q=4").replace("[3]", "[4]");
    assert!(parse_registry(&wrong_prime).is_err());
    let fine = bad.replace("q=3", "q=4").replace("[3]", "[2]");
    assert_eq!(parse_registry(&fine).unwrap().len(), 1);
}

#[test]
fn task_names_round_trip() {
    for t in Task::ALL {
        assert_eq!(t.name().parse::<Task>().unwrap(), t);
    }
    assert!("theorem-b".parse::<Task>().is_err());
    assert_eq!(
        "principal".parse::<BlockSelector>().unwrap(),
        BlockSelector::Principal
    );
    assert_eq!(
        "3".parse::<BlockSelector>().unwrap(),
        BlockSelector::Index(3)
    );
    assert!("x".parse::<BlockSelector>().is_err());
}

#[test]
fn c2xs3_axioms_and_defect() {
    let r = verify_block_axioms(&group(C2XS3), 2, 7).unwrap();
    assert_pass(&r);
    assert_eq!(r.counts["blocks"], 2);
    assert_eq!(r.counts["defect-B0"], 4);
    assert_eq!(r.counts["defect-B1"], 2);
}

#[test]
fn c2xs3_centric_control_fails_as_expected() {
    let r = verify_prop_almost_centric(&group(C2XS3), 2, BlockSelector::Principal, true).unwrap();
    assert_pass(&r);
    assert_eq!(r.counts["B0/vertices-centric"], 3);
    let h = &r.homology["B0/centric"];
    assert_eq!(h.betti, vec![3]);
    let full = &r.homology["B0/full"];
    assert_eq!(full.betti[0], 1);
    assert!(full.betti[1..].iter().all(|&b| b == 0));
}

#[test]
fn a5_lemma_abelian_components() {
    let r =
        verify_lemma_abelian(&group("kind=alternating,n=5"), 2, BlockSelector::Principal).unwrap();
    assert_pass(&r);
    // five Sylow 2-subgroups, no inclusions between their pairs: five points
    for k in ["B0/full", "B0/abelian", "B0/elementary-abelian"] {
        let h = &r.homology[k];
        assert_eq!(h.betti[0], 5, "{k}");
        assert!(h.betti[1..].iter().all(|&b| b == 0), "{k}");
    }
}

#[test]
fn s4_harnesses_pass() {
    let g = group("kind=symmetric,n=4");
    for ell in [2, 3] {
        assert_pass(&verify_block_axioms(&g, ell, 1).unwrap());
        assert_pass(&verify_lemma_abelian(&g, ell, BlockSelector::AllPositiveDefect).unwrap());
        assert_pass(
            &verify_prop_almost_centric(&g, ell, BlockSelector::AllPositiveDefect, false).unwrap(),
        );
    }
}

#[test]
fn defect_zero_block_is_a_precondition_error() {
    // S3 at ell = 3 has one block; at ell = 2 the sign-twisted block of
    // the 2-dimensional character has defect zero
    let g = group("kind=symmetric,n=3");
    let err = verify_lemma_abelian(&g, 2, BlockSelector::Index(1)).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
    assert!(matches!(
        verify_lemma_abelian(&g, 2, BlockSelector::Index(9)),
        Err(Error::Usage(_))
    ));
}

#[test]
fn sl25_defining() {
    let r = verify_thm_defining(&ReductiveSpec::new(Family::SL, 2, 5).unwrap()).unwrap();
    assert_pass(&r);
    assert_eq!(r.counts["positive-defect-blocks"], 2);
    assert_eq!(r.homology["tits-building"].betti, vec![6]);
    assert!(verify_thm_defining(&ReductiveSpec::new(Family::SL, 2, 3).unwrap()).is_err());
}

#[test]
fn theorem_a_and_brown_on_gl24() {
    let spec = ReductiveSpec::new(Family::GL, 2, 4).unwrap();
    let r = verify_theorem_a(&spec, 5).unwrap();
    assert_pass(&r);
    assert_eq!(r.counts["levis"], 6);
    assert_eq!(r.counts["e"], 2);
    let b = verify_brown_corollary(&spec, 5).unwrap();
    assert_pass(&b);
    let err = verify_theorem_a(&spec, 3).unwrap_err().to_string();
    assert!(err.contains("ell divides |Z(G)^F| = 3"), "{err}");
}

#[test]
fn reports_are_deterministic() {
    let inst = find_instance("D8").unwrap();
    let a = run_instance(&inst, Task::Axioms, 2, 11)
        .unwrap()
        .to_json()
        .unwrap();
    let b = run_instance(&inst, Task::Axioms, 2, 11)
        .unwrap()
        .to_json()
        .unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"pass\": true"));
}

#[test]
fn expected_counts_are_enforced() {
    let mut inst = find_instance("C2xS3").unwrap();
    assert_pass(&run_instance(&inst, Task::Axioms, 2, 0).unwrap());
    inst.expect.entry(2).or_default().insert("blocks".into(), 3);
    let r = run_instance(&inst, Task::Axioms, 2, 0).unwrap();
    assert!(!r.pass);
    assert_eq!(r.failures().next().unwrap().name, "expected-blocks");
}
