use super::*;
use crate::algebra::splitting_context;
use crate::groups::{Group, DEFAULT_GROUP_CAP};
use crate::pairs::build_brauer_poset;
use crate::reductive::{build_reductive, enumerate_esplit_levis, prime_context, Family};
use crate::topo::FiberMinimum;
use crate::topo::{order_complex, poset_homology};

struct Instance {
    spec: ReductiveSpec,
    pc: PrimeContext,
    group: Group,
}

fn instance(n: usize, q: u32, ell: u64) -> Instance {
    let spec = ReductiveSpec::new(Family::GL, n, q).unwrap();
    let group = build_reductive(&spec, DEFAULT_GROUP_CAP).unwrap();
    let pc = prime_context(&spec, ell).unwrap();
    Instance { spec, pc, group }
}

fn with_context<T>(inst: &Instance, f: impl FnOnce(&BrauerContext, &[EmbeddedLevi]) -> T) -> T {
    let g = &inst.group;
    let s = splitting_context(g, inst.pc.ell).unwrap();
    let ctx = BrauerContext::new(g, &g.whole(), &s).unwrap();
    let levis = enumerate_esplit_levis(g, &inst.spec, &inst.pc).unwrap();
    f(&ctx, &levis)
}

fn positive_defect_blocks(ctx: &BrauerContext) -> Vec<usize> {
    (0..ctx.num_blocks(0).unwrap())
        .filter(|&b| {
            ctx.defect_order(PairId {
                subgroup: 0,
                block: b,
            })
            .unwrap()
                > 1
        })
        .collect()
}

#[test]
fn induction_from_a_levi_to_itself_is_the_identity() {
    let inst = instance(2, 4, 5);
    with_context(&inst, |ctx, levis| {
        for l in levis {
            let zi = levi_center_index(ctx, l).unwrap();
            for b in 0..ctx.num_blocks(zi).unwrap() {
                assert_eq!(twisted_induction_between(ctx, l, b, l).unwrap(), b);
            }
        }
    });
}

#[test]
fn coxeter_torus_blocks_of_gl24() {
    let inst = instance(2, 4, 5);
    with_context(&inst, |ctx, levis| {
        assert_eq!(levis.len(), 6);
        let positive = positive_defect_blocks(ctx);
        let cb = ctx.ambient_blocks().unwrap();
        let principal = (0..cb.num_blocks()).find(|&b| cb.is_principal(b)).unwrap();
        let zi = levi_center_index(ctx, &levis[0]).unwrap();
        let tb = ctx.blocks(zi).unwrap();
        // C15 at ell = 5: one block per character of C3
        assert_eq!(tb.num_blocks(), 3);
        let mut images = Vec::new();
        for b in 0..tb.num_blocks() {
            let r = twisted_induction(ctx, &levis[0], b).unwrap();
            assert!(positive.contains(&r));
            if tb.is_principal(b) {
                assert_eq!(r, principal);
            }
            images.push(r);
        }
        images.sort_unstable();
        images.dedup();
        assert_eq!(images, positive);
    });
}

#[test]
fn induction_is_constant_on_orbits() {
    let inst = instance(2, 4, 5);
    with_context(&inst, |ctx, levis| {
        let g = ctx.group();
        for (i, l) in levis.iter().enumerate() {
            let zi = levi_center_index(ctx, l).unwrap();
            for b in 0..ctx.num_blocks(zi).unwrap() {
                let r = twisted_induction(ctx, l, b).unwrap();
                for &s in g.generators() {
                    let img = ctx
                        .conjugate_pair(
                            PairId {
                                subgroup: zi,
                                block: b,
                            },
                            s,
                        )
                        .unwrap();
                    let h = g.conjugate(&l.subgroup, s);
                    let j = levis.iter().position(|m| m.subgroup == h).unwrap();
                    assert_eq!(
                        twisted_induction(ctx, &levis[j], img.block).unwrap(),
                        r,
                        "Levi {i}"
                    );
                }
            }
        }
    });
}

#[test]
fn gl24_posets_and_phi() {
    let inst = instance(2, 4, 5);
    with_context(&inst, |ctx, levis| {
        let zi = levi_center_index(ctx, &levis[0]).unwrap();
        for b in 0..ctx.num_blocks(0).unwrap() {
            let t = build_esplit_poset(ctx, &inst.spec, &inst.pc, levis, b).unwrap();
            let per_torus = (0..ctx.num_blocks(zi).unwrap())
                .filter(|&c| twisted_induction(ctx, &levis[0], c).unwrap() == b)
                .count();
            assert_eq!(t.len(), 6 * per_torus);
            let defect = ctx
                .defect_order(PairId {
                    subgroup: 0,
                    block: b,
                })
                .unwrap();
            assert_eq!(t.is_empty(), defect == 1);
            let cx = order_complex(&t.to_poset());
            assert!(cx.dim().is_none_or(|d| d == 0));
            let s = build_brauer_poset(ctx, b, Flavor::AbelianAlmostCentric).unwrap();
            let m = phi(ctx, levis, &s, &t).unwrap();
            // Sylow subgroups are the central 5-parts of the tori: fixed points
            for r in &m.records {
                assert_eq!(r.center_pair, Some(r.source));
            }
            let rep = fiber_minimum_certificates(&s, &t, &m).unwrap();
            assert!(rep.pass);
            let full = build_brauer_poset(ctx, b, Flavor::Full).unwrap();
            assert!(poset_homology(&full.to_poset())
                .unwrap()
                .same_groups(&poset_homology(&t.to_poset()).unwrap()));
        }
    });
}

#[test]
fn dropping_the_minimum_is_detected() {
    let inst = instance(3, 2, 3);
    with_context(&inst, |ctx, levis| {
        let cb = ctx.ambient_blocks().unwrap();
        let b0 = (0..cb.num_blocks()).find(|&b| cb.is_principal(b)).unwrap();
        let t = build_esplit_poset(ctx, &inst.spec, &inst.pc, levis, b0).unwrap();
        let s = build_brauer_poset(ctx, b0, Flavor::AbelianAlmostCentric).unwrap();
        let m = phi(ctx, levis, &s, &t).unwrap();
        assert!(fiber_minimum_certificates(&s, &t, &m).unwrap().pass);

        let victim = s.position(t.vertices[0].brauer_pair()).unwrap();
        let keep: Vec<usize> = (0..s.len()).filter(|&i| i != victim).collect();
        let sp = s.to_poset().subposet(&keep);
        let f: Vec<usize> = keep.iter().map(|&i| m.images[i]).collect();
        let predicted: Vec<Option<usize>> = t
            .vertices
            .iter()
            .map(|v| {
                s.position(v.brauer_pair())
                    .and_then(|p| keep.binary_search(&p).ok())
            })
            .collect();
        let rep = check_fiber_minima(&sp, &t.to_poset().opposite(), &f, &predicted).unwrap();
        assert!(!rep.pass);
        let bad: Vec<&FiberMinimum> = rep.failures().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].target, 0);
        assert!(bad[0].message.is_some());
    });
}

#[test]
fn central_prime_is_rejected() {
    let inst = instance(2, 4, 3);
    assert!(!inst.pc.theorem_a_applies());
    let g = &inst.group;
    let s = splitting_context(g, 3).unwrap();
    let ctx = BrauerContext::new(g, &g.whole(), &s).unwrap();
    let err = build_esplit_poset(&ctx, &inst.spec, &inst.pc, &[], 0).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
}

#[test]
fn gl42_nested_levis() {
    let inst = instance(4, 2, 3);
    with_context(&inst, |ctx, levis| {
        let cb = ctx.ambient_blocks().unwrap();
        let b0 = (0..cb.num_blocks()).find(|&b| cb.is_principal(b)).unwrap();
        let t = build_esplit_poset(ctx, &inst.spec, &inst.pc, levis, b0).unwrap();
        // L -> (L, principal block) is a bijection for the principal block
        assert_eq!(t.len(), levis.len());
        let cx = order_complex(&t.to_poset());
        assert_eq!(cx.dim(), Some(1));
        // transitivity of induction along L <= K <= G
        for v in &t.vertices {
            for w in &t.vertices {
                let (l, k) = (&levis[v.levi], &levis[w.levi]);
                if v.levi != w.levi && l.subgroup.is_subgroup_of(&k.subgroup) {
                    let mid = twisted_induction_between(ctx, l, v.block, k).unwrap();
                    assert_eq!(
                        twisted_induction(ctx, k, mid).unwrap(),
                        twisted_induction(ctx, l, v.block).unwrap()
                    );
                }
            }
        }
    });
}
