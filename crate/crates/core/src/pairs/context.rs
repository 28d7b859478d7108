use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::algebra::{ClassAlgebra, SplittingContext};
use crate::error::{Error, Result};
use crate::gf::Fe;
use crate::groups::{ell_subgroup_classes, Group, Subgroup};

/// A Brauer pair `(Q, b_Q)`: an index into the context's subgroup list and
/// a block index of `k C(Q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairId {
    pub subgroup: usize,
    pub block: usize,
}

/// Blocks of `k C(Q)` for one `ell`-subgroup `Q`, transported from the
/// representative of its conjugacy class.
pub struct CentralizerBlocks {
    centralizer: Subgroup,
    algebra: Arc<ClassAlgebra>,
    /// Algebra class of each centralizer element (parallel to elements).
    local_class: Vec<u32>,
    /// Transported class representatives, one per algebra class.
    reps: Vec<u32>,
    /// Local block index to algebra block index.
    order: Vec<usize>,
}

impl CentralizerBlocks {
    fn new(
        g: &Group,
        centralizer: Subgroup,
        algebra: Arc<ClassAlgebra>,
        conj: u32,
    ) -> CentralizerBlocks {
        let back = g.inv(conj);
        let local_class: Vec<u32> = centralizer
            .elements()
            .iter()
            .map(|&x| {
                algebra
                    .class_of(g.conj(x, back))
                    .expect("transported element lies in the algebra") as u32
            })
            .collect();
        let reps: Vec<u32> = algebra
            .class_reps()
            .iter()
            .map(|&r| g.conj(r, conj))
            .collect();
        let mut order: Vec<usize> = (0..algebra.blocks().len()).collect();
        order.sort_by(|&a, &b| {
            let (ba, bb) = (algebra.block(a), algebra.block(b));
            bb.is_principal().cmp(&ba.is_principal()).then_with(|| {
                local_class
                    .iter()
                    .map(|&c| ba.coeffs[c as usize])
                    .cmp(local_class.iter().map(|&c| bb.coeffs[c as usize]))
            })
        });
        CentralizerBlocks {
            centralizer,
            algebra,
            local_class,
            reps,
            order,
        }
    }

    pub fn centralizer(&self) -> &Subgroup {
        &self.centralizer
    }

    pub fn algebra(&self) -> &Arc<ClassAlgebra> {
        &self.algebra
    }

    pub fn num_blocks(&self) -> usize {
        self.order.len()
    }

    /// Index of a local block within the representative's algebra.
    pub fn algebra_block(&self, b: usize) -> usize {
        self.order[b]
    }

    pub fn is_principal(&self, b: usize) -> bool {
        self.algebra.block(self.order[b]).is_principal()
    }

    /// Coefficient of `e_b` at `x`, zero off the centralizer.
    pub fn coeff(&self, b: usize, x: u32) -> Fe {
        match self.centralizer.elements().binary_search(&x) {
            Ok(p) => self.algebra.block(self.order[b]).coeffs[self.local_class[p] as usize],
            Err(_) => Fe::ZERO,
        }
    }

    /// Class representatives of the centralizer (transported).
    pub fn class_reps(&self) -> &[u32] {
        &self.reps
    }

    /// `omega_b(z)` for a class-constant element `z` given by its
    /// coefficient function on the centralizer.
    pub fn omega_of(&self, b: usize, coeff: impl Fn(u32) -> Fe) -> Fe {
        let f = self.algebra.field();
        let chi = &self.algebra.block(self.order[b]).character;
        f.sum(self.reps.iter().zip(chi).map(|(&r, &c)| f.mul(coeff(r), c)))
    }

    /// Dense coefficient vector of `e_b` over the centralizer elements.
    pub fn dense(&self, b: usize) -> Vec<Fe> {
        let coeffs = &self.algebra.block(self.order[b]).coeffs;
        self.local_class
            .iter()
            .map(|&c| coeffs[c as usize])
            .collect()
    }
}

/// All `ell`-subgroups of an ambient subgroup `A` with the blocks of their
/// centralizers in `A`. Index 0 is the trivial subgroup.
pub struct BrauerContext<'g> {
    group: &'g Group,
    ambient: Subgroup,
    splitting: SplittingContext,
    subgroups: Vec<Subgroup>,
    index: FxHashMap<Subgroup, usize>,
    class_rep: Vec<usize>,
    conjugator: Vec<u32>,
    algebras: Vec<OnceLock<Arc<ClassAlgebra>>>,
    centralizers: Vec<OnceLock<CentralizerBlocks>>,
    descend_memo: Mutex<FxHashMap<(usize, usize, usize), usize>>,
}

impl<'g> BrauerContext<'g> {
    pub fn new(
        group: &'g Group,
        ambient: &Subgroup,
        splitting: &SplittingContext,
    ) -> Result<BrauerContext<'g>> {
        if !splitting.covers(group, ambient) {
            return Err(Error::Precondition(
                "splitting field does not cover the ambient group".into(),
            ));
        }
        let ell = splitting.ell;
        let mut subgroups = vec![group.trivial()];
        let mut class_rep = vec![0];
        let mut conjugator = vec![0];
        let classes = ell_subgroup_classes(group, ambient, ell);
        let mut flat: Vec<(Subgroup, usize, u32)> = Vec::new();
        for (ci, class) in classes.iter().enumerate() {
            for (h, c) in &class.members {
                flat.push((h.clone(), ci, *c));
            }
        }
        flat.sort_by(|a, b| a.0.cmp(&b.0));
        let mut rep_pos = vec![usize::MAX; classes.len()];
        for (i, (h, ci, _)) in flat.iter().enumerate() {
            if h == classes[*ci].rep() {
                rep_pos[*ci] = i + 1;
            }
        }
        for (h, ci, c) in flat {
            subgroups.push(h);
            class_rep.push(rep_pos[ci]);
            conjugator.push(c);
        }
        let index = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.clone(), i))
            .collect();
        let n = subgroups.len();
        Ok(BrauerContext {
            group,
            ambient: ambient.clone(),
            splitting: splitting.clone(),
            subgroups,
            index,
            class_rep,
            conjugator,
            algebras: (0..n).map(|_| OnceLock::new()).collect(),
            centralizers: (0..n).map(|_| OnceLock::new()).collect(),
            descend_memo: Mutex::new(FxHashMap::default()),
        })
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn ambient(&self) -> &Subgroup {
        &self.ambient
    }

    pub fn splitting(&self) -> &SplittingContext {
        &self.splitting
    }

    pub fn ell(&self) -> u64 {
        self.splitting.ell
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h).copied()
    }

    /// Index of the class representative and `x` with `rep^x = Q_i`.
    pub fn class_of_subgroup(&self, i: usize) -> (usize, u32) {
        (self.class_rep[i], self.conjugator[i])
    }

    fn rep_algebra(&self, rep: usize) -> Result<Arc<ClassAlgebra>> {
        if let Some(a) = self.algebras[rep].get() {
            return Ok(a.clone());
        }
        let c = self
            .group
            .centralizer_of(&self.ambient, &self.subgroups[rep]);
        let a = Arc::new(ClassAlgebra::new(self.group, &c, &self.splitting)?);
        Ok(self.algebras[rep].get_or_init(|| a).clone())
    }

    pub fn blocks(&self, i: usize) -> Result<&CentralizerBlocks> {
        if let Some(cb) = self.centralizers[i].get() {
            return Ok(cb);
        }
        let (rep, x) = (self.class_rep[i], self.conjugator[i]);
        let alg = self.rep_algebra(rep)?;
        let centralizer = self.group.conjugate(alg.subgroup(), x);
        let cb = CentralizerBlocks::new(self.group, centralizer, alg, x);
        Ok(self.centralizers[i].get_or_init(|| cb))
    }

    /// Computes every centralizer algebra, in parallel over classes.
    pub fn precompute(&self) -> Result<()> {
        let mut reps: Vec<usize> = self.class_rep.clone();
        reps.sort_unstable();
        reps.dedup();
        reps.par_iter()
            .try_for_each(|&r| self.rep_algebra(r).map(|_| ()))?;
        (0..self.subgroups.len())
            .into_par_iter()
            .try_for_each(|i| self.blocks(i).map(|_| ()))
    }

    /// Blocks of the ambient group.
    pub fn ambient_blocks(&self) -> Result<&CentralizerBlocks> {
        self.blocks(0)
    }

    pub fn num_blocks(&self, i: usize) -> Result<usize> {
        Ok(self.blocks(i)?.num_blocks())
    }

    /// Whether `e_b` (a block of `C(Q_i)`) is fixed by conjugation by `x`,
    /// which must normalize `Q_i`.
    pub fn block_fixed_by(&self, pair: PairId, x: u32) -> Result<bool> {
        let cb = self.blocks(pair.subgroup)?;
        let xi = self.group.inv(x);
        Ok(cb
            .class_reps()
            .iter()
            .all(|&r| cb.coeff(pair.block, self.group.conj(r, xi)) == cb.coeff(pair.block, r)))
    }

    pub fn block_stable_under(&self, pair: PairId, h: &Subgroup) -> Result<bool> {
        for &s in self.group.generators_of(h) {
            if !self.block_fixed_by(pair, s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(Q, b)^x` for `x` in the ambient group.
    pub fn conjugate_pair(&self, pair: PairId, x: u32) -> Result<PairId> {
        let q = self.group.conjugate(&self.subgroups[pair.subgroup], x);
        let qi = self
            .index_of(&q)
            .ok_or_else(|| Error::contract("conjugate subgroup missing from the list"))?;
        let src = self.blocks(pair.subgroup)?;
        let dst = self.blocks(qi)?;
        let xi = self.group.inv(x);
        let mut found = None;
        for b in 0..dst.num_blocks() {
            let same = dst
                .class_reps()
                .iter()
                .all(|&r| dst.coeff(b, r) == src.coeff(pair.block, self.group.conj(r, xi)));
            if same {
                if found.is_some() {
                    return Err(Error::contract("conjugated block matches two blocks"));
                }
                found = Some(b);
            }
        }
        found
            .map(|b| PairId {
                subgroup: qi,
                block: b,
            })
            .ok_or_else(|| Error::contract("conjugated block matches no block"))
    }

    /// `omega_{b_R}(Br_R(e_c))` for a pair `(S, c)` with `S <= R` and `e_c`
    /// stable under `R`; always 0 or 1.
    pub fn br_omega(&self, lower: PairId, upper: PairId) -> Result<Fe> {
        let lo = self.blocks(lower.subgroup)?;
        let up = self.blocks(upper.subgroup)?;
        let v = up.omega_of(upper.block, |x| lo.coeff(lower.block, x));
        if v != Fe::ZERO && v != Fe::ONE {
            return Err(Error::contract(
                "Brauer image of a block idempotent is not idempotent",
            ));
        }
        Ok(v)
    }

    /// `(1, B) <= (Q, b)`, tested as `Br_Q(e_B) e_b != 0`.
    pub fn below_block(&self, ambient_block: usize, pair: PairId) -> Result<bool> {
        Ok(self.br_omega(
            PairId {
                subgroup: 0,
                block: ambient_block,
            },
            pair,
        )? == Fe::ONE)
    }

    /// The normal containment `(S, c) ⊴ (R, b)`.
    pub fn normal_containment(&self, lower: PairId, upper: PairId) -> Result<bool> {
        let (s, r) = (
            &self.subgroups[lower.subgroup],
            &self.subgroups[upper.subgroup],
        );
        if !self.group.is_normal_in(s, r) {
            return Ok(false);
        }
        if !self.block_stable_under(lower, r)? {
            return Ok(false);
        }
        Ok(self.br_omega(lower, upper)? == Fe::ONE)
    }

    /// The unique `(S, c) ⊴ (R, b)` for `S` normal in `R`.
    fn normal_step(&self, upper: PairId, s: usize) -> Result<PairId> {
        let mut found = None;
        for c in 0..self.num_blocks(s)? {
            let cand = PairId {
                subgroup: s,
                block: c,
            };
            if self.block_stable_under(cand, &self.subgroups[upper.subgroup])?
                && self.br_omega(cand, upper)? == Fe::ONE
            {
                if found.is_some() {
                    return Err(Error::contract(format!(
                        "two blocks below a pair over subgroup #{} at a normal step",
                        upper.subgroup
                    )));
                }
                found = Some(cand);
            }
        }
        found.ok_or_else(|| Error::contract("no block below a pair at a normal step"))
    }

    fn lookup(&self, h: &Subgroup) -> Result<usize> {
        self.index_of(h)
            .ok_or_else(|| Error::contract("subgroup of an ell-subgroup missing from the list"))
    }

    /// The unique pair over `Q_q` below `pair`, by walking the normalizer
    /// chain `Q ⊴ N_P(Q) ⊴ ... ⊴ P` from the top.
    pub fn descend(&self, pair: PairId, q: usize) -> Result<PairId> {
        let p = &self.subgroups[pair.subgroup];
        let qs = &self.subgroups[q];
        if !qs.is_subgroup_of(p) {
            return Err(Error::Precondition(
                "descend target is not contained in the pair's subgroup".into(),
            ));
        }
        if q == pair.subgroup {
            return Ok(pair);
        }
        let key = (pair.subgroup, pair.block, q);
        if let Some(&b) = self.descend_memo.lock().unwrap().get(&key) {
            return Ok(PairId {
                subgroup: q,
                block: b,
            });
        }
        // N_P(Q) is the next link above Q; descend to it first, then step
        let n = self.group.normalizer_in(p, qs);
        let ni = self.lookup(&n)?;
        let above = self.descend(pair, ni)?;
        let res = self.normal_step(above, q)?;
        self.descend_memo.lock().unwrap().insert(key, res.block);
        if cfg!(debug_assertions) {
            let alt = self.descend_by_index_ell_steps(pair, q)?;
            if alt != res {
                return Err(Error::contract(
                    "descend depends on the chosen subnormal chain",
                ));
            }
        }
        Ok(res)
    }

    /// `descend` along a chain whose steps all have index `ell`.
    pub fn descend_by_index_ell_steps(&self, pair: PairId, q: usize) -> Result<PairId> {
        let g = self.group;
        let p = self.subgroups[pair.subgroup].clone();
        let ell = self.ell();
        let mut chain = vec![self.subgroups[q].clone()];
        while chain.last().unwrap() != &p {
            let m = chain.last().unwrap().clone();
            let n = g.normalizer_in(&p, &m);
            // an element of order ell modulo m
            let mut x = *n
                .elements()
                .iter()
                .find(|&&y| !m.contains(y))
                .expect("normalizer grows");
            while !m.contains(g.pow(x, ell as i64)) {
                x = g.pow(x, ell as i64);
            }
            let mut gens = g.generators_of(&m).to_vec();
            gens.push(x);
            chain.push(g.closure(&gens));
        }
        let mut cur = pair;
        for s in chain.iter().rev().skip(1) {
            cur = self.normal_step(cur, self.lookup(s)?)?;
        }
        Ok(cur)
    }

    /// Whether `a <= b` in the Brauer-pair order.
    pub fn pair_le(&self, a: PairId, b: PairId) -> Result<bool> {
        let (qa, qb) = (&self.subgroups[a.subgroup], &self.subgroups[b.subgroup]);
        if !qa.is_subgroup_of(qb) {
            return Ok(false);
        }
        if a.subgroup == 0 {
            return self.below_block(a.block, b);
        }
        Ok(self.descend(b, a.subgroup)? == a)
    }

    /// `N_A(Q, b_Q)`.
    pub fn pair_stabilizer(&self, pair: PairId) -> Result<Subgroup> {
        let g = self.group;
        let n = g.normalizer_in(&self.ambient, &self.subgroups[pair.subgroup]);
        let mut keep = Vec::new();
        for &x in n.elements() {
            if self.block_fixed_by(pair, x)? {
                keep.push(x);
            }
        }
        Ok(g.subgroup_from_sorted_unchecked(keep))
    }

    /// Order of a defect group of the block of `C(Q)` in `pair`.
    pub fn defect_order(&self, pair: PairId) -> Result<usize> {
        let cb = self.blocks(pair.subgroup)?;
        let alg = cb.algebra();
        Ok(alg
            .defect_group(self.group, cb.algebra_block(pair.block))
            .order())
    }

    /// `Z(Q) = O_ell(Z(C_A(Q)))`.
    pub fn is_almost_centric(&self, q: usize) -> Result<bool> {
        let g = self.group;
        let qs = &self.subgroups[q];
        let zq = g.center(qs);
        let c = self.blocks(q)?.centralizer().clone();
        let (_, zl) = g.center_and_ell_part(&c, self.ell());
        Ok(zq == zl)
    }

    /// `b_Q` has defect group `Z(Q)`.
    pub fn is_centric(&self, pair: PairId) -> Result<bool> {
        let zq = self.group.center(&self.subgroups[pair.subgroup]);
        Ok(self.defect_order(pair)? == zq.order())
    }
}
