//! Twisted block induction for `e`-split Levi subgroups, the poset of
//! `e`-split pairs of a block, the comparison map from almost-centric
//! abelian Brauer pairs, and fiber-minimum certificates.

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::gf::Fe;
use crate::groups::Subgroup;
use crate::pairs::{BrauerContext, BrauerPoset, CentralizerBlocks, Flavor, PairId};
use crate::reductive::{
    minimal_esplit_containing, EmbeddedLevi, LeviContainment, PrimeContext, ReductiveSpec,
};
use crate::topo::{check_fiber_minima, equivariance_check, FiberMinimumReport, Poset};

/// `(L, b_L)`: an index into the Levi list and a block of `k L`. The block
/// is indexed among the blocks of `C_G(Z(L)_ell) = L` in the Brauer
/// context, whose subgroup list holds `Z(L)_ell` at `center`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EsplitPair {
    pub levi: usize,
    pub center: usize,
    pub block: usize,
}

impl EsplitPair {
    /// The Brauer pair `(Z(L)_ell, b_L)`.
    pub fn brauer_pair(&self) -> PairId {
        PairId {
            subgroup: self.center,
            block: self.block,
        }
    }
}

/// Index of `Z(L)_ell` in the context, after checking that it is
/// nontrivial and that its centralizer is exactly `L`.
pub fn levi_center_index(ctx: &BrauerContext, levi: &EmbeddedLevi) -> Result<usize> {
    if levi.center_ell.is_trivial() {
        return Err(Error::Precondition(format!(
            "Levi of type {} has trivial central ell-part",
            levi.levi_type
        )));
    }
    let zi = ctx.index_of(&levi.center_ell).ok_or_else(|| {
        Error::contract("central ell-part of a Levi missing from the subgroup list")
    })?;
    if ctx.blocks(zi)?.centralizer() != &levi.subgroup {
        return Err(Error::Precondition(format!(
            "Levi of type {} is not the centralizer of its central ell-part",
            levi.levi_type
        )));
    }
    Ok(zi)
}

/// The unique block `c` of `upper` (blocks of a group `K`) with
/// `Br_Z(e_c) e_b != 0`, where `lower` holds the blocks of `C_K(Z) = L`.
fn induce(lower: &CentralizerBlocks, b: usize, upper: &CentralizerBlocks) -> Result<usize> {
    let mut found = None;
    for c in 0..upper.num_blocks() {
        let v = lower.omega_of(b, |x| upper.coeff(c, x));
        if v == Fe::ONE {
            if found.is_some() {
                return Err(Error::contract(
                    "twisted induction has two candidate blocks",
                ));
            }
            found = Some(c);
        } else if v != Fe::ZERO {
            return Err(Error::contract(
                "Brauer image of a block idempotent is not idempotent",
            ));
        }
    }
    found.ok_or_else(|| Error::contract("twisted induction has no candidate block"))
}

/// `R_L^G(b_L)` as a block index of the ambient group.
pub fn twisted_induction(ctx: &BrauerContext, levi: &EmbeddedLevi, block: usize) -> Result<usize> {
    let zi = levi_center_index(ctx, levi)?;
    induce(ctx.blocks(zi)?, block, ctx.ambient_blocks()?)
}

/// `R_L^K(b_L)` for Levis `L <= K`, as a block of `k K` indexed like
/// `EsplitPair::block` for `K`. The condition `L = C_K(Z(L)_ell)` is
/// rechecked inside `K`.
pub fn twisted_induction_between(
    ctx: &BrauerContext,
    lower: &EmbeddedLevi,
    block: usize,
    upper: &EmbeddedLevi,
) -> Result<usize> {
    let g = ctx.group();
    if !lower.subgroup.is_subgroup_of(&upper.subgroup) {
        return Err(Error::Precondition("twisted induction needs L <= K".into()));
    }
    let zl = levi_center_index(ctx, lower)?;
    let zk = levi_center_index(ctx, upper)?;
    if g.centralizer_of(&upper.subgroup, &lower.center_ell) != lower.subgroup {
        return Err(Error::Precondition(
            "L is not the centralizer in K of its central ell-part".into(),
        ));
    }
    induce(ctx.blocks(zl)?, block, ctx.blocks(zk)?)
}

/// The poset `L*_e(B)` with the conjugation action of the ambient
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EsplitPoset {
    pub spec: ReductiveSpec,
    pub context: PrimeContext,
    /// Target block of the ambient group.
    pub block: usize,
    pub vertices: Vec<EsplitPair>,
    /// `leq[i]` holds `j` iff `vertices[i] <= vertices[j]`.
    pub leq: Vec<BitSet>,
    pub generators: Vec<u32>,
    pub action: Vec<Vec<u32>>,
    pub labels: Vec<String>,
}

impl EsplitPoset {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i].contains(j)
    }

    pub fn position(&self, v: EsplitPair) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn to_poset(&self) -> Poset {
        Poset::new(self.labels.clone(), self.leq.clone()).with_action(self.action.clone())
    }
}

pub fn esplit_label(levis: &[EmbeddedLevi], v: EsplitPair) -> String {
    let l = &levis[v.levi];
    format!(
        "L{}|{}|{}|b{}",
        v.levi,
        l.levi_type,
        l.subgroup.order(),
        v.block
    )
}

fn check_applicable(pc: &PrimeContext) -> Result<()> {
    if !pc.in_pi() {
        return Err(Error::Precondition(format!(
            "ell = {} is not admissible for the group",
            pc.ell
        )));
    }
    if !pc.coprime_to_center {
        return Err(Error::Precondition(format!(
            "ell = {} divides the order of the centre",
            pc.ell
        )));
    }
    Ok(())
}

/// Builds `L*_e(B)` over the given Levis. Vertices are sorted by Levi
/// index and block.
pub fn build_esplit_poset(
    ctx: &BrauerContext,
    spec: &ReductiveSpec,
    pc: &PrimeContext,
    levis: &[EmbeddedLevi],
    block: usize,
) -> Result<EsplitPoset> {
    check_applicable(pc)?;
    if block >= ctx.num_blocks(0)? {
        return Err(Error::Usage(format!("block index {block} out of range")));
    }
    let per_levi: Vec<Vec<EsplitPair>> = levis
        .par_iter()
        .enumerate()
        .map(|(i, l)| {
            let zi = levi_center_index(ctx, l)?;
            let mut out = Vec::new();
            for b in 0..ctx.num_blocks(zi)? {
                if induce(ctx.blocks(zi)?, b, ctx.ambient_blocks()?)? == block {
                    out.push(EsplitPair {
                        levi: i,
                        center: zi,
                        block: b,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let vertices: Vec<EsplitPair> = per_levi.into_iter().flatten().collect();
    let n = vertices.len();
    let leq: Vec<BitSet> = (0..n)
        .into_par_iter()
        .map(|i| {
            let v = vertices[i];
            let l = &levis[v.levi];
            let mut row = BitSet::new(n);
            let mut memo: FxHashMap<usize, usize> = FxHashMap::default();
            for (j, w) in vertices.iter().enumerate() {
                let k = &levis[w.levi];
                if !k.subgroup.order().is_multiple_of(l.subgroup.order())
                    || !l.subgroup.is_subgroup_of(&k.subgroup)
                {
                    continue;
                }
                let img = match memo.get(&w.levi) {
                    Some(&c) => c,
                    None => {
                        let c = twisted_induction_between(ctx, l, v.block, k)?;
                        memo.insert(w.levi, c);
                        c
                    }
                };
                if img == w.block {
                    row.insert(j);
                }
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let g = ctx.group();
    let generators = crate::groups::ambient_generators(g, ctx.ambient());
    let levi_index: FxHashMap<&Subgroup, usize> = levis
        .iter()
        .enumerate()
        .map(|(i, l)| (&l.subgroup, i))
        .collect();
    let mut action = Vec::with_capacity(generators.len());
    for &s in &generators {
        let mut perm = Vec::with_capacity(n);
        for v in &vertices {
            let li = *levi_index
                .get(&g.conjugate(&levis[v.levi].subgroup, s))
                .ok_or_else(|| Error::contract("conjugate Levi missing from the list"))?;
            let img = ctx.conjugate_pair(v.brauer_pair(), s)?;
            let w = EsplitPair {
                levi: li,
                center: img.subgroup,
                block: img.block,
            };
            if w.center != levi_center_index(ctx, &levis[li])? {
                return Err(Error::contract(
                    "conjugation does not respect central ell-parts",
                ));
            }
            let p = vertices.binary_search(&w).map_err(|_| {
                Error::contract("conjugation does not preserve the e-split pairs of the block")
            })?;
            perm.push(p as u32);
        }
        action.push(perm);
    }
    let labels = vertices.iter().map(|&v| esplit_label(levis, v)).collect();
    let out = EsplitPoset {
        spec: *spec,
        context: *pc,
        block,
        vertices,
        leq,
        generators,
        action,
        labels,
    };
    out.to_poset().check_axioms()?;
    Ok(out)
}

/// One line of the comparison-map transcript.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiRecord {
    pub source: usize,
    pub source_label: String,
    pub levi: usize,
    /// Position of `(Z(L)_ell, b_L)` in the source poset.
    pub center_pair: Option<usize>,
    pub target: usize,
    pub target_label: String,
}

/// `phi: Ab^ac(B) -> L*_e(B)^op` as an index map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiMap {
    pub images: Vec<usize>,
    pub records: Vec<PhiRecord>,
}

/// Sends `(Q, b_Q)` to `(L, b_L)` with `L` the smallest enumerated Levi
/// containing `C_G(Q)` and `(Z(L)_ell, b_L) <= (Q, b_Q)`. Checks that the
/// image lies in `target`, and that the map is order-reversing and
/// equivariant.
pub fn phi(
    ctx: &BrauerContext,
    levis: &[EmbeddedLevi],
    source: &BrauerPoset,
    target: &EsplitPoset,
) -> Result<PhiMap> {
    if source.flavor != Flavor::AbelianAlmostCentric {
        return Err(Error::Precondition(
            "the comparison map starts at almost-centric abelian pairs".into(),
        ));
    }
    if source.block != target.block {
        return Err(Error::Precondition(
            "source and target belong to different blocks".into(),
        ));
    }
    let records: Vec<PhiRecord> = source
        .vertices
        .par_iter()
        .enumerate()
        .map(|(i, &pair)| {
            let c = ctx.blocks(pair.subgroup)?.centralizer();
            let li = match minimal_esplit_containing(levis, c)? {
                LeviContainment::Levi(li) => li,
                LeviContainment::FullGroup => {
                    return Err(Error::contract(format!(
                        "no proper e-split Levi contains the centralizer of {}",
                        source.labels[i]
                    )))
                }
            };
            let zi = levi_center_index(ctx, &levis[li])?;
            if !ctx.subgroup(zi).is_subgroup_of(ctx.subgroup(pair.subgroup)) {
                return Err(Error::contract(format!(
                    "central ell-part of the Levi is not inside the subgroup of {}",
                    source.labels[i]
                )));
            }
            let below = ctx.descend(pair, zi)?;
            let v = EsplitPair {
                levi: li,
                center: zi,
                block: below.block,
            };
            let t = target.position(v).ok_or_else(|| {
                Error::contract(format!(
                    "image of {} is not an e-split pair of the block",
                    source.labels[i]
                ))
            })?;
            Ok(PhiRecord {
                source: i,
                source_label: source.labels[i].clone(),
                levi: li,
                center_pair: source.position(below),
                target: t,
                target_label: target.labels[t].clone(),
            })
        })
        .collect::<Result<_>>()?;
    let images: Vec<usize> = records.iter().map(|r| r.target).collect();
    let sp = source.to_poset();
    let tp = target.to_poset().opposite();
    if let Some((a, b)) = sp.monotone_violation(&tp, &images) {
        return Err(Error::contract(format!(
            "comparison map is not order-reversing on {} <= {}",
            sp.label(a),
            sp.label(b)
        )));
    }
    if let Err((s, x)) = equivariance_check(&sp, &tp, &images) {
        return Err(Error::contract(format!(
            "comparison map is not equivariant: generator {s} at {}",
            sp.label(x)
        )));
    }
    Ok(PhiMap { images, records })
}

/// The minimum check for `phi`: the fiber over `(L, b_L)` must have
/// minimum `(Z(L)_ell, b_L)`, fixed by the stabilizer of `(L, b_L)`.
pub fn fiber_minimum_certificates(
    source: &BrauerPoset,
    target: &EsplitPoset,
    map: &PhiMap,
) -> Result<FiberMinimumReport> {
    let predicted: Vec<Option<usize>> = target
        .vertices
        .iter()
        .map(|v| source.position(v.brauer_pair()))
        .collect();
    check_fiber_minima(
        &source.to_poset(),
        &target.to_poset().opposite(),
        &map.images,
        &predicted,
    )
}

#[cfg(test)]
mod tests;
