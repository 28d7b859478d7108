use std::cmp::Ordering;
use std::sync::Arc;

use super::{AlgebraElement, SplittingContext};
use crate::error::{Error, Result};
use crate::gf::{factor_poly, Echelon, Fe, Field, Poly};
use crate::groups::{Group, Subgroup};

/// A central primitive idempotent of `kH`, in the class-sum basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockIdempotent {
    pub index: usize,
    /// Coefficient of each class sum.
    pub coeffs: Vec<Fe>,
    /// Central character: the scalar by which each class sum acts on the
    /// block modulo the radical.
    pub character: Vec<Fe>,
    pub augmentation: Fe,
}

impl BlockIdempotent {
    pub fn is_principal(&self) -> bool {
        self.augmentation == Fe::ONE
    }
}

/// The center `Z(kH)` with basis the class sums of `H`, together with its
/// block idempotents.
pub struct ClassAlgebra {
    subgroup: Subgroup,
    field: Arc<Field>,
    ell: u64,
    /// Class index of each element, parallel to `subgroup.elements()`.
    class_of: Vec<u32>,
    reps: Vec<u32>,
    members: Vec<Vec<u32>>,
    /// For each ordered pair `(i, j)`, the nonzero `(k, a_ijk)` with
    /// `K_i K_j = sum_k a_ijk K_k`.
    products: Vec<Vec<(u32, Fe)>>,
    radical_dim: usize,
    blocks: Vec<BlockIdempotent>,
}

impl std::fmt::Debug for ClassAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ClassAlgebra(order {}, {} classes, {} blocks over {:?})",
            self.subgroup.order(),
            self.reps.len(),
            self.blocks.len(),
            self.field
        )
    }
}

impl ClassAlgebra {
    pub fn new(g: &Group, h: &Subgroup, ctx: &SplittingContext) -> Result<ClassAlgebra> {
        debug_assert!(
            ctx.covers(g, h),
            "splitting context built for a different group"
        );
        let field = ctx.field.clone();
        let elems = h.elements();
        let gens = g.generators_of(h).to_vec();
        let pos = |x: u32| {
            elems
                .binary_search(&x)
                .expect("conjugate stays in subgroup")
        };

        let mut class_of = vec![u32::MAX; elems.len()];
        let mut reps = Vec::new();
        let mut members = Vec::new();
        for (i, &x) in elems.iter().enumerate() {
            if class_of[i] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            class_of[i] = c;
            let mut orbit = vec![x];
            let mut k = 0;
            while k < orbit.len() {
                for &s in &gens {
                    let y = g.conj(orbit[k], s);
                    let p = pos(y);
                    if class_of[p] == u32::MAX {
                        class_of[p] = c;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            members.push(orbit);
        }

        let n = reps.len();
        let mut counts = vec![0u32; n * n * n];
        for (k, &z) in reps.iter().enumerate() {
            for (i, &x) in elems.iter().enumerate() {
                let y = g.mul(g.inv(x), z);
                let (ci, cj) = (class_of[i] as usize, class_of[pos(y)] as usize);
                counts[(ci * n + cj) * n + k] += 1;
            }
        }
        let products = (0..n * n)
            .map(|ij| {
                (0..n)
                    .filter_map(|k| {
                        let c = field.from_int((counts[ij * n + k] as u64 % ctx.ell) as i64);
                        (!c.is_zero()).then_some((k as u32, c))
                    })
                    .collect()
            })
            .collect();

        let mut alg = ClassAlgebra {
            subgroup: h.clone(),
            field,
            ell: ctx.ell,
            class_of,
            reps,
            members,
            products,
            radical_dim: 0,
            blocks: Vec::new(),
        };
        alg.compute_blocks()?;
        Ok(alg)
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    /// Least element of each class; classes are numbered by representative.
    pub fn class_reps(&self) -> &[u32] {
        &self.reps
    }

    pub fn class_members(&self, i: usize) -> &[u32] {
        &self.members[i]
    }

    pub fn class_of(&self, x: u32) -> Option<usize> {
        let p = self.subgroup.elements().binary_search(&x).ok()?;
        Some(self.class_of[p] as usize)
    }

    pub fn radical_dim(&self) -> usize {
        self.radical_dim
    }

    pub fn blocks(&self) -> &[BlockIdempotent] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &BlockIdempotent {
        &self.blocks[i]
    }

    /// The unique block with augmentation one.
    pub fn principal_block(&self) -> Result<&BlockIdempotent> {
        let mut it = self.blocks.iter().filter(|b| b.is_principal());
        match (it.next(), it.next()) {
            (Some(b), None) => Ok(b),
            _ => Err(Error::contract(
                "expected exactly one block with augmentation one",
            )),
        }
    }

    pub fn unit(&self) -> Vec<Fe> {
        let mut u = vec![Fe::ZERO; self.num_classes()];
        u[0] = Fe::ONE;
        u
    }

    pub fn mul(&self, u: &[Fe], v: &[Fe]) -> Vec<Fe> {
        let n = self.num_classes();
        let f = &self.field;
        let mut out = vec![Fe::ZERO; n];
        for (i, &a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in &self.products[i * n + j] {
                    out[k as usize] = f.add(out[k as usize], f.mul(ab, c));
                }
            }
        }
        out
    }

    fn lin(&self, terms: &[(Fe, &[Fe])]) -> Vec<Fe> {
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.num_classes()];
        for &(c, v) in terms {
            for (o, &x) in out.iter_mut().zip(v) {
                *o = f.add(*o, f.mul(c, x));
            }
        }
        out
    }

    /// Augmentation `sum_i c_i |C_i|`.
    pub fn augmentation(&self, z: &[Fe]) -> Fe {
        let f = &self.field;
        f.sum(
            z.iter()
                .zip(&self.members)
                .map(|(&c, m)| f.mul(c, f.from_int(m.len() as i64))),
        )
    }

    /// Value of a block's central character on a central element.
    pub fn omega(&self, block: usize, z: &[Fe]) -> Fe {
        let f = &self.field;
        f.sum(
            z.iter()
                .zip(&self.blocks[block].character)
                .map(|(&a, &b)| f.mul(a, b)),
        )
    }

    fn power(&self, x: &[Fe], mut e: u64) -> Vec<Fe> {
        let mut result = self.unit();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    fn compute_blocks(&mut self) -> Result<()> {
        let n = self.num_classes();
        let f = self.field.clone();
        let ell = self.ell;

        // nilradical: kernel of z -> z^(ell^t) for ell^t >= n, which is
        // semilinear with respect to c -> c^(ell^t)
        let mut t = 0u32;
        let mut lt = 1u64;
        while lt < n as u64 {
            lt *= ell;
            t += 1;
        }
        let basis = |i: usize| {
            let mut v = vec![Fe::ZERO; n];
            v[i] = Fe::ONE;
            v
        };
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let mut w = basis(i);
            for _ in 0..t {
                w = self.power(&w, ell);
            }
            cols.push(w);
        }
        let w = crate::gf::Matrix::from_rows(&cols).transpose();
        let kernel = w.kernel(&f);
        let radical: Vec<Vec<Fe>> = kernel
            .into_iter()
            .map(|d| {
                d.into_iter()
                    .map(|c| (0..t).fold(c, |acc, _| f.frobenius_inverse(acc)))
                    .collect()
            })
            .collect();
        let (rr, pivots) = if radical.is_empty() {
            (crate::gf::Matrix::zero(0, n), Vec::new())
        } else {
            crate::gf::Matrix::from_rows(&radical).rref(&f)
        };
        let jrows: Vec<(usize, Vec<Fe>)> = pivots
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, rr.row(i).to_vec()))
            .collect();
        self.radical_dim = jrows.len();
        let r = n - jrows.len();
        let reduce = |v: &[Fe]| -> Vec<Fe> {
            let mut v = v.to_vec();
            for (p, row) in &jrows {
                let c = v[*p];
                if !c.is_zero() {
                    for (x, &y) in v.iter_mut().zip(row) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
            v
        };
        let is_zero = |v: &[Fe]| v.iter().all(|x| x.is_zero());

        // split Z/J by the minimal polynomials of the class sums
        let mut idem: Vec<Vec<Fe>> = vec![self.unit()];
        for i in 0..n {
            if idem.len() == r {
                break;
            }
            let b = reduce(&basis(i));
            let mut ech = Echelon::new(n);
            let mut powers = vec![reduce(&self.unit())];
            let mu = loop {
                let cur = powers.last().unwrap().clone();
                if let Some(c) = ech.insert(&f, &cur) {
                    let mut coeffs: Vec<Fe> = c.into_iter().map(|x| f.neg(x)).collect();
                    coeffs.push(Fe::ONE);
                    break Poly::new(coeffs);
                }
                powers.push(reduce(&self.mul(&cur, &b)));
            };
            let factors = factor_poly(&f, &mu)?;
            if factors.len() < 2 {
                continue;
            }
            let eval = |p: &Poly| -> Vec<Fe> {
                let mut acc = vec![Fe::ZERO; n];
                for (k, &c) in p.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        acc = self.lin(&[(Fe::ONE, &acc), (c, &powers[k])]);
                    }
                }
                acc
            };
            let crt: Vec<Vec<Fe>> = factors
                .iter()
                .map(|(fac, m)| {
                    let mut gj = Poly::one();
                    for _ in 0..*m {
                        gj = gj.mul(&f, fac);
                    }
                    let hj = mu.div_rem(&f, &gj).0;
                    let (_, s, _) = hj.xgcd(&f, &gj);
                    eval(&s.mul(&f, &hj).rem(&f, &mu))
                })
                .collect();
            let mut next = Vec::new();
            for e in &idem {
                for c in &crt {
                    let p = reduce(&self.mul(e, c));
                    if !is_zero(&p) {
                        next.push(p);
                    }
                }
            }
            idem = next;
        }
        if idem.len() != r {
            return Err(Error::contract(format!(
                "center modulo radical did not split into {r} idempotents (got {}); field too small",
                idem.len()
            )));
        }

        // lift through the radical
        let three = f.from_int(3);
        let two = f.from_int(2);
        let mut lifted = Vec::with_capacity(r);
        for e0 in idem {
            let mut e = e0;
            let mut steps = 0;
            loop {
                let e2 = self.mul(&e, &e);
                if e2 == e {
                    break;
                }
                let e3 = self.mul(&e2, &e);
                e = self.lin(&[(three, &e2), (f.neg(two), &e3)]);
                steps += 1;
                if steps > 64 {
                    return Err(Error::contract("idempotent lifting did not stabilize"));
                }
            }
            lifted.push(e);
        }

        // axioms: orthogonal, summing to one
        let mut sum = vec![Fe::ZERO; n];
        for (a, ea) in lifted.iter().enumerate() {
            sum = self.lin(&[(Fe::ONE, &sum), (Fe::ONE, ea)]);
            for eb in lifted.iter().skip(a + 1) {
                if !is_zero(&self.mul(ea, eb)) {
                    return Err(Error::contract("block idempotents are not orthogonal"));
                }
            }
        }
        if sum != self.unit() {
            return Err(Error::contract("block idempotents do not sum to one"));
        }

        let mut blocks: Vec<BlockIdempotent> = lifted
            .into_iter()
            .map(|e| {
                let eb = reduce(&e);
                let p = eb
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("nonzero modulo radical");
                let character = (0..n)
                    .map(|i| {
                        let v = reduce(&self.mul(&basis(i), &e));
                        let lambda = f.div(v[p], eb[p]);
                        let expect: Vec<Fe> = eb.iter().map(|&x| f.mul(lambda, x)).collect();
                        if v != expect {
                            return Err(Error::contract(
                                "class sum does not act by a scalar on a block",
                            ));
                        }
                        Ok(lambda)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let augmentation = self.augmentation(&e);
                Ok(BlockIdempotent {
                    index: 0,
                    coeffs: e,
                    character,
                    augmentation,
                })
            })
            .collect::<Result<_>>()?;
        if blocks.iter().filter(|b| b.is_principal()).count() != 1
            || blocks
                .iter()
                .any(|b| !b.is_principal() && !b.augmentation.is_zero())
        {
            return Err(Error::contract("augmentation dichotomy failed"));
        }
        blocks.sort_by(|a, b| self.canonical_cmp(a, b));
        for (i, b) in blocks.iter_mut().enumerate() {
            b.index = i;
        }
        self.blocks = blocks;
        Ok(())
    }

    fn canonical_cmp(&self, a: &BlockIdempotent, b: &BlockIdempotent) -> Ordering {
        b.is_principal().cmp(&a.is_principal()).then_with(|| {
            self.class_of
                .iter()
                .map(|&c| a.coeffs[c as usize])
                .cmp(self.class_of.iter().map(|&c| b.coeffs[c as usize]))
        })
    }

    /// Dense coefficient vector of an element given in the class basis,
    /// indexed by the element table of `g`.
    pub fn to_dense(&self, g: &Group, z: &[Fe]) -> AlgebraElement {
        let mut coeffs = vec![Fe::ZERO; g.order()];
        for (&x, &c) in self.subgroup.elements().iter().zip(&self.class_of) {
            coeffs[x as usize] = z[c as usize];
        }
        AlgebraElement::from_coeffs(coeffs)
    }

    /// Coefficient of element `x` in a class-basis element, zero outside
    /// the subgroup.
    pub fn coefficient(&self, z: &[Fe], x: u32) -> Fe {
        self.class_of(x).map_or(Fe::ZERO, |c| z[c])
    }

    /// Class-basis coordinates of a class-constant element of `kH` given by
    /// its coefficient function.
    pub fn from_function(&self, coeff: impl Fn(u32) -> Fe) -> Vec<Fe> {
        self.reps.iter().map(|&r| coeff(r)).collect()
    }

    /// The scalars `lambda_z` with `z e = lambda_z e` for `z` in a central
    /// subgroup.
    pub fn central_character(
        &self,
        g: &Group,
        block: usize,
        z: &Subgroup,
    ) -> Result<Vec<(u32, Fe)>> {
        let f = &self.field;
        let e = &self.blocks[block].coeffs;
        let mut out = Vec::with_capacity(z.order());
        for &x in z.elements() {
            let c = self.class_of(x).ok_or_else(|| {
                Error::Precondition("central subgroup not inside the algebra's group".into())
            })?;
            if self.members[c].len() != 1 {
                return Err(Error::Precondition(format!(
                    "{} is not central",
                    g.describe(x)
                )));
            }
            let mut k = vec![Fe::ZERO; self.num_classes()];
            k[c] = Fe::ONE;
            let ze = self.mul(&k, e);
            let p = e
                .iter()
                .position(|v| !v.is_zero())
                .expect("nonzero idempotent");
            let lambda = f.div(ze[p], e[p]);
            if ze.iter().zip(e).any(|(&a, &b)| a != f.mul(lambda, b)) {
                return Err(Error::contract(
                    "central element does not act by a scalar on the block",
                ));
            }
            out.push((x, lambda));
        }
        Ok(out)
    }

    /// Order of a defect group of `block`: the largest `ell`-subgroup `D`
    /// of `H` with `Br_D(e) != 0`, together with such a `D`.
    pub fn defect_group(&self, g: &Group, block: usize) -> Subgroup {
        let e = &self.blocks[block].coeffs;
        let mut best = g.trivial();
        for class in crate::groups::ell_subgroup_classes(g, &self.subgroup, self.ell) {
            let d = class.rep();
            if d.order() <= best.order() {
                continue;
            }
            let hit = self
                .subgroup
                .elements()
                .iter()
                .zip(&self.class_of)
                .any(|(&x, &c)| !e[c as usize].is_zero() && g.centralizes(d, x));
            if hit {
                best = d.clone();
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::splitting_context;
    use crate::groups::DEFAULT_GROUP_CAP;

    fn setup(text: &str, ell: u64) -> (Group, ClassAlgebra) {
        let g = Group::parse(text, DEFAULT_GROUP_CAP).unwrap();
        let ctx = splitting_context(&g, ell).unwrap();
        let a = ClassAlgebra::new(&g, &g.whole(), &ctx).unwrap();
        (g, a)
    }

    #[test]
    fn block_counts() {
        assert_eq!(setup("kind=symmetric,n=3", 3).1.blocks().len(), 1);
        assert_eq!(setup("kind=symmetric,n=3", 2).1.blocks().len(), 2);
        assert_eq!(
            setup(
                "kind=product,factors=(kind=cyclic,n=2);(kind=symmetric,n=3)",
                2
            )
            .1
            .blocks()
            .len(),
            2
        );
        assert_eq!(setup("kind=cyclic,n=15", 5).1.blocks().len(), 3);
        assert_eq!(setup("kind=alternating,n=5", 2).1.blocks().len(), 2);
        assert_eq!(setup("kind=SL,n=2,q=5", 5).1.blocks().len(), 3);
    }

    #[test]
    fn dense_idempotent_axioms() {
        for (text, ell) in [
            ("kind=symmetric,n=4", 3u64),
            ("kind=alternating,n=5", 5),
            ("kind=cyclic,n=15", 5),
        ] {
            let (g, a) = setup(text, ell);
            let f = a.field().clone();
            let dense: Vec<_> = a
                .blocks()
                .iter()
                .map(|b| a.to_dense(&g, &b.coeffs))
                .collect();
            let mut total = AlgebraElement::zero(&g);
            for (i, x) in dense.iter().enumerate() {
                assert_eq!(x.mul(&g, &f, x), *x);
                for y in dense.iter().skip(i + 1) {
                    assert!(x.mul(&g, &f, y).is_zero());
                }
                for s in g.generators() {
                    let s = AlgebraElement::basis(&g, *s);
                    assert_eq!(x.mul(&g, &f, &s), s.mul(&g, &f, x));
                }
                total = total.add(&f, x);
            }
            assert_eq!(total, AlgebraElement::basis(&g, 0));
        }
    }

    #[test]
    fn idempotents_vanish_off_ell_regular_classes() {
        let (g, a) = setup("kind=SL,n=2,q=5", 5);
        for b in a.blocks() {
            for (c, &r) in a.class_reps().iter().enumerate() {
                if g.elem_order(r) % 5 == 0 {
                    assert!(b.coeffs[c].is_zero());
                }
            }
        }
    }

    #[test]
    fn principal_and_defects() {
        let (g, a) = setup(
            "kind=product,factors=(kind=cyclic,n=2);(kind=symmetric,n=3)",
            2,
        );
        let p = a.principal_block().unwrap();
        assert_eq!(p.index, 0);
        assert_eq!(a.defect_group(&g, 0).order(), 4);
        assert_eq!(a.defect_group(&g, 1).order(), 2);
        assert!(a.blocks()[1].augmentation.is_zero());
    }

    #[test]
    fn sl25_central_characters() {
        let (g, a) = setup("kind=SL,n=2,q=5", 5);
        let z = g.center(&g.whole());
        assert_eq!(z.order(), 2);
        let f = a.field().clone();
        let minus_one = f.from_int(-1);
        let nontrivial = (0..a.blocks().len())
            .filter(|&b| {
                a.central_character(&g, b, &z)
                    .unwrap()
                    .iter()
                    .any(|&(_, l)| l == minus_one)
            })
            .count();
        // one positive-defect block with each central character plus one
        // defect-zero block (the Steinberg module, central character trivial)
        assert_eq!(nontrivial, 1);
        let t = g.trivial();
        assert_eq!(a.central_character(&g, 0, &t).unwrap(), vec![(0, Fe::ONE)]);
    }
}
