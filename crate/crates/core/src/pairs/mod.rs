//! Brauer pairs `(Q, b_Q)` and the posets of `B`-Brauer pairs with their
//! abelian, elementary abelian, almost-centric and centric subposets.

mod context;

pub use context::{BrauerContext, CentralizerBlocks, PairId};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::groups::Subgroup;
use crate::topo::Poset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Full,
    Abelian,
    ElementaryAbelian,
    AlmostCentric,
    Centric,
    AbelianAlmostCentric,
}

impl Flavor {
    pub const ALL: [Flavor; 6] = [
        Flavor::Full,
        Flavor::Abelian,
        Flavor::ElementaryAbelian,
        Flavor::AlmostCentric,
        Flavor::Centric,
        Flavor::AbelianAlmostCentric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Full => "full",
            Flavor::Abelian => "abelian",
            Flavor::ElementaryAbelian => "elementary-abelian",
            Flavor::AlmostCentric => "almost-centric",
            Flavor::Centric => "centric",
            Flavor::AbelianAlmostCentric => "abelian-almost-centric",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Flavor> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown flavor {s:?}")))
    }
}

/// The poset of nontrivial `B`-Brauer pairs of one flavor, with the
/// conjugation action of the ambient generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrauerPoset {
    pub ell: u64,
    /// Block of the ambient group, as a local block index.
    pub block: usize,
    pub flavor: Flavor,
    pub vertices: Vec<PairId>,
    /// `leq[i]` holds `j` iff `vertices[i] <= vertices[j]`.
    pub leq: Vec<BitSet>,
    /// Acting elements and, for each, the induced vertex permutation.
    pub generators: Vec<u32>,
    pub action: Vec<Vec<u32>>,
    pub labels: Vec<String>,
}

fn is_elementary_abelian(ctx: &BrauerContext, q: &Subgroup) -> bool {
    let g = ctx.group();
    g.is_abelian(q)
        && q.elements()
            .iter()
            .all(|&x| x == 0 || g.elem_order(x) as u64 == ctx.ell())
}

fn keep(ctx: &BrauerContext, pair: PairId, flavor: Flavor) -> Result<bool> {
    let q = ctx.subgroup(pair.subgroup);
    let g = ctx.group();
    Ok(match flavor {
        Flavor::Full => true,
        Flavor::Abelian => g.is_abelian(q),
        Flavor::ElementaryAbelian => is_elementary_abelian(ctx, q),
        Flavor::AlmostCentric => ctx.is_almost_centric(pair.subgroup)?,
        Flavor::Centric => ctx.is_centric(pair)?,
        Flavor::AbelianAlmostCentric => g.is_abelian(q) && ctx.is_almost_centric(pair.subgroup)?,
    })
}

/// A short vertex label: subgroup list index, order and block index.
pub fn pair_label(ctx: &BrauerContext, pair: PairId) -> String {
    format!(
        "Q{}|{}|b{}",
        pair.subgroup,
        ctx.subgroup(pair.subgroup).order(),
        pair.block
    )
}

/// All pairs `(Q, b)` with `Q` nontrivial and `(1, B) <= (Q, b)`, in
/// canonical order.
pub fn block_pairs(ctx: &BrauerContext, block: usize) -> Result<Vec<PairId>> {
    let mut out = Vec::new();
    for q in 1..ctx.subgroups().len() {
        for b in 0..ctx.num_blocks(q)? {
            let pair = PairId {
                subgroup: q,
                block: b,
            };
            if ctx.below_block(block, pair)? {
                out.push(pair);
            }
        }
    }
    Ok(out)
}

pub fn build_brauer_poset(
    ctx: &BrauerContext,
    block: usize,
    flavor: Flavor,
) -> Result<BrauerPoset> {
    if block >= ctx.num_blocks(0)? {
        return Err(Error::Usage(format!("block index {block} out of range")));
    }
    let mut vertices = Vec::new();
    for pair in block_pairs(ctx, block)? {
        if keep(ctx, pair, flavor)? {
            vertices.push(pair);
        }
    }
    let pos: rustc_hash::FxHashMap<PairId, usize> =
        vertices.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let n = vertices.len();
    let mut leq: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    let by_subgroup: rustc_hash::FxHashMap<usize, Vec<usize>> =
        vertices
            .iter()
            .enumerate()
            .fold(Default::default(), |mut m, (i, p)| {
                m.entry(p.subgroup).or_insert_with(Vec::new).push(i);
                m
            });
    let g = ctx.group();
    for (j, &upper) in vertices.iter().enumerate() {
        let p = ctx.subgroup(upper.subgroup);
        for (&qi, members) in &by_subgroup {
            let q = ctx.subgroup(qi);
            if q.order() > p.order() || !g.generators_of(q).iter().all(|&x| p.contains(x)) {
                continue;
            }
            let below = ctx.descend(upper, qi)?;
            if let Some(&i) = pos.get(&below) {
                debug_assert!(members.contains(&i));
                leq[i].insert(j);
            } else if flavor == Flavor::Full {
                return Err(Error::contract(
                    "a pair below a B-Brauer pair is not a B-Brauer pair",
                ));
            }
        }
    }
    let generators = crate::groups::ambient_generators(g, ctx.ambient());
    let mut action = Vec::with_capacity(generators.len());
    for &s in &generators {
        let mut perm = Vec::with_capacity(n);
        for &v in &vertices {
            let img = ctx.conjugate_pair(v, s)?;
            let i = *pos
                .get(&img)
                .ok_or_else(|| Error::contract("conjugation does not preserve the vertex set"))?;
            perm.push(i as u32);
        }
        action.push(perm);
    }
    let labels = vertices.iter().map(|&v| pair_label(ctx, v)).collect();
    Ok(BrauerPoset {
        ell: ctx.ell(),
        block,
        flavor,
        vertices,
        leq,
        generators,
        action,
        labels,
    })
}

impl BrauerPoset {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i].contains(j)
    }

    pub fn position(&self, p: PairId) -> Option<usize> {
        self.vertices.iter().position(|&v| v == p)
    }

    pub fn to_poset(&self) -> Poset {
        Poset::new(self.labels.clone(), self.leq.clone()).with_action(self.action.clone())
    }

    /// Induced subposet on the vertices satisfying `pred`.
    pub fn restrict(&self, flavor: Flavor, pred: impl Fn(PairId) -> bool) -> BrauerPoset {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| pred(self.vertices[i]))
            .collect();
        let mut newpos = vec![usize::MAX; self.len()];
        for (k, &i) in keep.iter().enumerate() {
            newpos[i] = k;
        }
        let m = keep.len();
        let leq = keep
            .iter()
            .map(|&i| {
                BitSet::from_indices(
                    m,
                    self.leq[i]
                        .iter()
                        .filter(|&j| newpos[j] != usize::MAX)
                        .map(|j| newpos[j]),
                )
            })
            .collect();
        let action = self
            .action
            .iter()
            .map(|perm| {
                keep.iter()
                    .map(|&i| newpos[perm[i] as usize] as u32)
                    .collect()
            })
            .collect();
        BrauerPoset {
            ell: self.ell,
            block: self.block,
            flavor,
            vertices: keep.iter().map(|&i| self.vertices[i]).collect(),
            leq,
            generators: self.generators.clone(),
            action,
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
        }
    }
}

/// Maximal pairs of a full poset and a defect group (the subgroup of the
/// first maximal pair). Fails if the group does not act transitively on
/// the maximal pairs.
pub fn maximal_pairs_and_defect(
    ctx: &BrauerContext,
    poset: &BrauerPoset,
) -> Result<(Vec<PairId>, Option<Subgroup>)> {
    if poset.flavor != Flavor::Full {
        return Err(Error::Precondition(
            "maximal pairs need the full poset".into(),
        ));
    }
    let maximal: Vec<usize> = (0..poset.len())
        .filter(|&i| poset.leq[i].iter().all(|j| j == i))
        .collect();
    if maximal.is_empty() {
        return Ok((Vec::new(), None));
    }
    // orbit of the first maximal pair under the action
    let mut seen = BitSet::new(poset.len());
    seen.insert(maximal[0]);
    let mut stack = vec![maximal[0]];
    while let Some(i) = stack.pop() {
        for perm in &poset.action {
            let j = perm[i] as usize;
            if seen.insert(j) {
                stack.push(j);
            }
        }
    }
    if maximal.iter().any(|&i| !seen.contains(i)) {
        return Err(Error::contract(
            "maximal Brauer pairs are not all conjugate",
        ));
    }
    let d = ctx.subgroup(poset.vertices[maximal[0]].subgroup).clone();
    Ok((
        maximal.iter().map(|&i| poset.vertices[i]).collect(),
        Some(d),
    ))
}

#[cfg(test)]
mod tests;
