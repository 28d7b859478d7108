use super::*;
use crate::algebra::splitting_context;
use crate::groups::{Group, DEFAULT_GROUP_CAP};
use crate::topo::{order_complex, poset_homology};

const C2XS3: &str = "kind=product,factors=(kind=cyclic,n=2);(kind=symmetric,n=3)";

fn context(g: &Group, ell: u64) -> BrauerContext<'_> {
    let s = splitting_context(g, ell).unwrap();
    BrauerContext::new(g, &g.whole(), &s).unwrap()
}

fn principal(ctx: &BrauerContext) -> usize {
    let cb = ctx.ambient_blocks().unwrap();
    (0..cb.num_blocks()).find(|&b| cb.is_principal(b)).unwrap()
}

fn principal_pair(ctx: &BrauerContext, q: usize) -> PairId {
    let cb = ctx.blocks(q).unwrap();
    let b = (0..cb.num_blocks()).find(|&b| cb.is_principal(b)).unwrap();
    PairId {
        subgroup: q,
        block: b,
    }
}

#[test]
fn c2xs3_principal_block() {
    let g = Group::parse(C2XS3, DEFAULT_GROUP_CAP).unwrap();
    let ctx = context(&g, 2);
    let b0 = principal(&ctx);
    let full = build_brauer_poset(&ctx, b0, Flavor::Full).unwrap();
    full.to_poset().check_axioms().unwrap();
    let (max, d) = maximal_pairs_and_defect(&ctx, &full).unwrap();
    assert_eq!(d.unwrap().order(), 4);
    assert_eq!(max.len(), 3);
    assert!(poset_homology(&full.to_poset()).unwrap().is_zero());

    let centric = build_brauer_poset(&ctx, b0, Flavor::Centric).unwrap();
    let cx = order_complex(&centric.to_poset());
    assert_eq!(cx.count(0), 3);
    assert_eq!(cx.dim(), Some(0));

    // the centre: almost-centric, not centric
    let z = g.center(&g.whole());
    let zi = ctx.index_of(&z).unwrap();
    let zp = principal_pair(&ctx, zi);
    assert!(ctx.is_almost_centric(zi).unwrap());
    assert!(!ctx.is_centric(zp).unwrap());
    // descending a Sylow pair to the centre gives that pair
    let top = max[0];
    assert_eq!(ctx.descend(top, zi).unwrap(), zp);
    assert!(ctx.normal_containment(zp, top).unwrap());
    assert!(ctx.is_centric(top).unwrap());
    // stabilizer of a Sylow pair: N_G(P) = P here
    assert_eq!(ctx.pair_stabilizer(top).unwrap().order(), 4);
}

#[test]
fn normal_containment_basics() {
    let g = Group::parse(C2XS3, DEFAULT_GROUP_CAP).unwrap();
    let ctx = context(&g, 2);
    let p = principal_pair(&ctx, 1);
    assert!(ctx.normal_containment(p, p).unwrap());
    // two distinct subgroups of order 2 are incomparable
    let twos: Vec<usize> = (1..ctx.subgroups().len())
        .filter(|&i| ctx.subgroup(i).order() == 2)
        .collect();
    let (a, b) = (principal_pair(&ctx, twos[0]), principal_pair(&ctx, twos[1]));
    assert!(!ctx.normal_containment(a, b).unwrap());
    assert!(!ctx.pair_le(a, b).unwrap());
}

#[test]
fn defect_zero_block_has_empty_poset() {
    let g = Group::parse("kind=symmetric,n=3", DEFAULT_GROUP_CAP).unwrap();
    let ctx = context(&g, 2);
    assert_eq!(ctx.num_blocks(0).unwrap(), 2);
    let other = 1 - principal(&ctx);
    let poset = build_brauer_poset(&ctx, other, Flavor::Full).unwrap();
    assert!(poset.is_empty());
    assert_eq!(maximal_pairs_and_defect(&ctx, &poset).unwrap().0, vec![]);
}

/// `Q -> (Q, principal block of C(Q))` is an order isomorphism onto the
/// principal-block poset.
fn check_principal_isomorphism(spec: &str, ell: u64, expected: usize) {
    let g = Group::parse(spec, DEFAULT_GROUP_CAP).unwrap();
    let ctx = context(&g, ell);
    let poset = build_brauer_poset(&ctx, principal(&ctx), Flavor::Full).unwrap();
    assert_eq!(poset.len(), expected);
    let n = ctx.subgroups().len() - 1;
    assert_eq!(poset.len(), n);
    let f: Vec<usize> = (1..=n)
        .map(|q| poset.position(principal_pair(&ctx, q)).unwrap())
        .collect();
    for a in 1..=n {
        for b in 1..=n {
            let incl = ctx.subgroup(a).is_subgroup_of(ctx.subgroup(b));
            assert_eq!(incl, poset.le(f[a - 1], f[b - 1]));
        }
    }
    let (_, d) = maximal_pairs_and_defect(&ctx, &poset).unwrap();
    let d = d.unwrap();
    assert_eq!(
        d.order(),
        crate::groups::sylow_subgroup(&g, &g.whole(), ell).order()
    );
}

#[test]
fn principal_isomorphism_small_groups() {
    check_principal_isomorphism("kind=alternating,n=5", 2, 20);
    check_principal_isomorphism("kind=symmetric,n=4", 3, 4);
}

#[test]
fn a5_descend_to_involutions() {
    let g = Group::parse("kind=alternating,n=5", DEFAULT_GROUP_CAP).unwrap();
    let ctx = context(&g, 2);
    let sylow = (1..ctx.subgroups().len())
        .find(|&i| ctx.subgroup(i).order() == 4)
        .unwrap();
    let top = principal_pair(&ctx, sylow);
    for q in 1..ctx.subgroups().len() {
        if ctx.subgroup(q).order() == 2 && ctx.subgroup(q).is_subgroup_of(ctx.subgroup(sylow)) {
            assert_eq!(ctx.descend(top, q).unwrap(), principal_pair(&ctx, q));
            assert_eq!(
                ctx.descend_by_index_ell_steps(top, q).unwrap(),
                principal_pair(&ctx, q)
            );
        }
    }
}

#[test]
fn flavors_nest() {
    let g = Group::parse("kind=symmetric,n=4", DEFAULT_GROUP_CAP).unwrap();
    let ctx = context(&g, 2);
    let b0 = principal(&ctx);
    let get = |f| build_brauer_poset(&ctx, b0, f).unwrap().vertices;
    let full = get(Flavor::Full);
    let ab = get(Flavor::Abelian);
    let el = get(Flavor::ElementaryAbelian);
    let ac = get(Flavor::AlmostCentric);
    let ce = get(Flavor::Centric);
    let abac = get(Flavor::AbelianAlmostCentric);
    let sub = |a: &[PairId], b: &[PairId]| a.iter().all(|x| b.contains(x));
    assert!(sub(&ab, &full) && sub(&el, &ab) && sub(&abac, &ab) && sub(&abac, &ac));
    assert!(sub(&ce, &ac));
    assert!(ac.len() < full.len());
    for f in Flavor::ALL {
        assert_eq!(f.name().parse::<Flavor>().unwrap(), f);
    }
}
