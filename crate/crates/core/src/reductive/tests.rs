use super::*;
use crate::groups::DEFAULT_GROUP_CAP;
use crate::topo::homology;

fn gl(n: usize, q: u32) -> (ReductiveSpec, Group) {
    let s = ReductiveSpec::new(Family::GL, n, q).unwrap();
    let g = build_reductive(&s, DEFAULT_GROUP_CAP).unwrap();
    (s, g)
}

fn sl(n: usize, q: u32) -> (ReductiveSpec, Group) {
    let s = ReductiveSpec::new(Family::SL, n, q).unwrap();
    let g = build_reductive(&s, DEFAULT_GROUP_CAP).unwrap();
    (s, g)
}

#[test]
fn orders_and_centres() {
    assert_eq!(gl(2, 4).1.order(), 180);
    assert_eq!(sl(3, 2).1.order(), 168);
    assert_eq!(gl(4, 2).1.order(), 20160);
    assert_eq!(sl(2, 5).0.center_order(), 2);
    assert!(ReductiveSpec::new(Family::GL, 2, 6).is_err());
}

#[test]
fn prime_contexts() {
    let (s, _) = gl(2, 4);
    let c = prime_context(&s, 5).unwrap();
    assert!(c.in_pi() && c.theorem_a_applies());
    assert_eq!(c.e, 2);
    let c2 = prime_context(&s, 3).unwrap();
    assert!(!c2.theorem_a_applies());
    assert!(!prime_context(&s, 2).is_ok());
    let odd = prime_context(&ReductiveSpec::new(Family::GL, 2, 5).unwrap(), 2).unwrap();
    assert!(!odd.in_pi_prime());
    let c3 = prime_context(&ReductiveSpec::new(Family::GL, 3, 4).unwrap(), 3).unwrap();
    assert!(!c3.coprime_to_sc_center && !c3.in_pi());
    for (n, q, ell) in [(2, 4, 5), (3, 2, 3), (2, 5, 3), (4, 2, 3), (3, 2, 7)] {
        let c = prime_context(&ReductiveSpec::new(Family::GL, n, q).unwrap(), ell).unwrap();
        assert!(!c.in_pi() || c.in_pi_prime());
    }
}

#[test]
fn rank_one_buildings_are_points() {
    for (s, g) in [sl(2, 5), gl(2, 4), sl(2, 4)] {
        let c = tits_building(&g).unwrap();
        assert_eq!(c.dim(), Some(0));
        assert_eq!(c.count(0), s.q as usize + 1);
    }
}

#[test]
fn fano_building() {
    let (_, g) = sl(3, 2);
    let (p, ps) = parabolic_poset(&g).unwrap();
    p.check_axioms().unwrap();
    assert_eq!(ps.iter().filter(|x| x.flag.len() == 1).count(), 14);
    assert_eq!(ps.iter().filter(|x| x.flag.len() == 2).count(), 21);
    assert!(ps
        .iter()
        .filter(|x| x.flag.len() == 2)
        .all(|x| x.subgroup.order() == 8));
    let c = tits_building(&g).unwrap();
    let h = homology(&c, true).unwrap();
    assert_eq!(h.betti(0), 0);
    assert_eq!(h.betti(1), 8);
}

#[test]
fn subspace_counts() {
    let f = crate::gf::make_field(2, 1).unwrap();
    let dims: Vec<usize> = subspaces(&f, 4).iter().map(Subspace::dim).collect();
    for (k, expect) in [1, 15, 35, 15, 1].into_iter().enumerate() {
        assert_eq!(dims.iter().filter(|&&d| d == k).count(), expect);
    }
}

#[test]
fn unipotent_radical_centralizer() {
    for ((_, g), order) in [(sl(2, 5), 5), (sl(3, 2), 8), (gl(2, 4), 4)] {
        let (u, ok) = defining_char_data(&g).unwrap();
        assert_eq!(u.order(), order);
        assert!(ok);
    }
}

fn type_counts(n: usize, q: u32, ell: u64) -> Vec<(String, usize, usize)> {
    let (s, g) = gl(n, q);
    let c = prime_context(&s, ell).unwrap();
    let levis = enumerate_esplit_levis(&g, &s, &c).unwrap();
    let mut out: Vec<(String, usize, usize)> = Vec::new();
    for l in &levis {
        let key = l.levi_type.to_string();
        match out.iter_mut().find(|x| x.0 == key) {
            Some(x) => x.2 += 1,
            None => out.push((key, l.subgroup.order(), 1)),
        }
    }
    out
}

#[test]
fn coxeter_tori() {
    assert_eq!(type_counts(2, 4, 5), vec![("(0,[1])".to_string(), 15, 6)]);
    assert_eq!(type_counts(2, 5, 3), vec![("(0,[1])".to_string(), 24, 10)]);
    assert_eq!(type_counts(3, 2, 3), vec![("(1,[1])".to_string(), 3, 28)]);
}

#[test]
fn gl42_levis() {
    let mut got = type_counts(4, 2, 3);
    got.sort();
    assert_eq!(
        got,
        vec![
            ("(0,[1, 1])".to_string(), 9, 280),
            ("(0,[2])".to_string(), 180, 56),
            ("(2,[1])".to_string(), 18, 560),
        ]
    );
}

#[test]
fn split_tori_for_e_one() {
    // q = 4 = 1 mod 3: the diagonal torus type only
    let got = type_counts(2, 4, 3);
    assert_eq!(got, vec![("(0,[1, 1])".to_string(), 9, 10)]);
}

#[test]
fn minimal_containing() {
    let (s, g) = gl(2, 4);
    let c = prime_context(&s, 5).unwrap();
    let levis = enumerate_esplit_levis(&g, &s, &c).unwrap();
    let t = &levis[2].subgroup;
    assert_eq!(
        minimal_esplit_containing(&levis, t).unwrap(),
        LeviContainment::Levi(2)
    );
    // the centre lies in every torus: six minimal candidates
    let z = g.center(&g.whole());
    assert!(minimal_esplit_containing(&levis, &z).is_err());
    assert_eq!(
        minimal_esplit_containing(&levis, &g.whole()).unwrap(),
        LeviContainment::FullGroup
    );
    for l in &levis {
        assert_eq!(l.center_ell.order(), 5);
        assert_eq!(&g.centralizer_of(&g.whole(), &l.center_ell), &l.subgroup);
    }
}
