use super::*;

fn fano_incidence() -> Poset {
    // points 0..7, lines i+1, i+2, i+4 mod 7
    let lines: Vec<[usize; 3]> = (0..7).map(|i| [i, (i + 1) % 7, (i + 3) % 7]).collect();
    let labels: Vec<String> = (0..7)
        .map(|i| format!("p{i}"))
        .chain((0..7).map(|i| format!("L{i}")))
        .collect();
    Poset::from_relation(labels, |a, b| a < 7 && b >= 7 && lines[b - 7].contains(&a))
}

#[test]
fn chain_gives_full_simplex() {
    let c = order_complex(&Poset::chain(3));
    assert_eq!((c.count(0), c.count(1), c.count(2)), (3, 3, 1));
    c.check_closed().unwrap();
    assert!(poset_homology(&Poset::chain(3)).unwrap().is_zero());
}

#[test]
fn antichain_gives_points() {
    let c = order_complex(&Poset::antichain(4));
    assert_eq!(c.dim(), Some(0));
    assert_eq!(c.count(0), 4);
    let h = homology(&c, true).unwrap();
    assert_eq!(h.betti(0), 3);
}

#[test]
fn fano_graph_homology() {
    let p = fano_incidence();
    p.check_axioms().unwrap();
    let c = order_complex(&p);
    assert_eq!((c.count(0), c.count(1)), (14, 21));
    // connected graph: reduced H1 has rank edges - vertices + 1
    let mut seen = [false; 14];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for e in &c.simplices[1] {
            for (a, b) in [(e[0], e[1]), (e[1], e[0])] {
                if a as usize == v && !seen[b as usize] {
                    seen[b as usize] = true;
                    stack.push(b as usize);
                }
            }
        }
    }
    assert!(seen.iter().all(|&s| s));
    let h = homology(&c, true).unwrap();
    assert_eq!(h.betti(0), 0);
    assert_eq!(h.betti(1), 21 - 14 + 1);
    assert_eq!(c.euler_characteristic(), -7);
}

#[test]
fn simplex_boundaries_are_spheres() {
    for n in 1..=6 {
        let h = homology(&SimplicialComplex::simplex_boundary(n), true).unwrap();
        for g in &h.groups {
            let expect = usize::from(g.degree == n as i64 - 1);
            assert_eq!(g.betti, expect, "n = {n}, degree {}", g.degree);
            assert!(g.torsion.is_empty());
        }
    }
}

#[test]
fn opposite_is_an_involution() {
    let p = fano_incidence();
    let op = p.opposite();
    assert_eq!(op.opposite(), p);
    assert_eq!(order_complex(&p), order_complex(&op));
    assert_eq!(poset_homology(&p).unwrap(), poset_homology(&op).unwrap());
    let c = Poset::chain(4).opposite();
    assert_eq!(c.minimum(), Some(3));
}

#[test]
fn certificates() {
    let p = Poset::chain(3);
    assert_eq!(
        find_certificate(&p, None).unwrap().kind,
        CertificateKind::Minimum
    );
    // two minimal elements below a common top: a maximum
    let v = Poset::from_relation(vec!["a".into(), "b".into(), "t".into()], |i, j| {
        j == 2 || i == j
    });
    assert_eq!(
        find_certificate(&v, None).unwrap().kind,
        CertificateKind::Maximum
    );
    // a, b < c, d plus e above c and d; j sends everything to e
    let labels: Vec<String> = ["a", "b", "c", "d", "e"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let rel = |i: usize, j: usize| i == j || (i < 2 && j >= 2) || (j == 4 && i < 4);
    let q = Poset::from_relation(labels, rel);
    q.check_axioms().unwrap();
    let j = vec![4; 5];
    assert!(conical_certificate(&q, 4, &j).is_ok());
    // a broken map reports a witness
    let bad = vec![0, 1, 2, 3, 4];
    let err = conical_certificate(&q, 4, &bad).unwrap_err();
    assert_eq!(err.element, 0);
    assert!(check_certificate(
        &q,
        &Certificate {
            kind: CertificateKind::Minimum,
            witness: 0,
            map: None
        }
    )
    .is_err());
}

#[test]
fn conical_without_extremes() {
    // crown-free poset: x0 = c; j(a) = j(c) = ... contracts through c
    // elements: a, b (minimal), c above both, d above a only
    let labels: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    let p = Poset::from_relation(labels, |i, j| {
        i == j || (j == 2 && i < 2) || (j == 3 && i == 0)
    });
    assert!(p.minimum().is_none() && p.maximum().is_none());
    // j: a -> c, b -> c, c -> c, d -> d fails x0 <= j(d)
    assert!(conical_certificate(&p, 2, &[2, 2, 2, 3]).is_err());
    assert!(poset_homology(&p).unwrap().is_zero());
}

#[test]
fn quillen_identity_and_constant() {
    let p = fano_incidence();
    let id: Vec<usize> = (0..p.len()).collect();
    let r = quillen_fiber_check(&p, &p, &id, FiberMode::Over, None).unwrap();
    assert!(r.pass);
    assert!(r
        .fibers
        .iter()
        .all(|f| f.certificate.as_ref().unwrap().witness == f.target));
    let point = Poset::chain(1);
    let constant = vec![0; p.len()];
    let r = quillen_fiber_check(&p, &point, &constant, FiberMode::Over, None).unwrap();
    assert!(!r.pass);
    assert_eq!(r.fibers[0].members.len(), 14);
}

#[test]
fn quillen_rejects_non_monotone() {
    let p = Poset::chain(2);
    assert!(quillen_fiber_check(&p, &p, &[1, 0], FiberMode::Over, None).is_err());
}

#[test]
fn equivariance() {
    // cyclic rotation of the Fano plane
    let rot: Vec<u32> = (0..7)
        .map(|i| (i + 1) % 7)
        .chain((0..7).map(|i| 7 + (i + 1) % 7))
        .collect();
    let p = fano_incidence().with_action(vec![rot]);
    p.check_axioms().unwrap();
    let id: Vec<usize> = (0..14).collect();
    assert!(equivariance_check(&p, &p, &id).is_ok());
    let mut shifted = id.clone();
    shifted.swap(0, 1);
    assert!(equivariance_check(&p, &p, &shifted).is_err());
    let r = quillen_fiber_check(&p, &p, &id, FiberMode::Under, None).unwrap();
    assert!(r.pass);
    assert_eq!(r.equivariant, Some(true));
    assert_eq!(
        r.fibers
            .iter()
            .filter(|f| f.stabilizer_invariant.is_some())
            .count(),
        2
    );
}
