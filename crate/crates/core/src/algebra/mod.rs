//! Group algebras over a finite splitting field of characteristic `ell`:
//! centers in the class-sum basis, block idempotents, the Brauer map and
//! central characters.

mod center;
mod element;

pub use center::{BlockIdempotent, ClassAlgebra};
pub use element::{make_epsilon_zeta, AlgebraElement};

use std::sync::Arc;

use crate::error::Result;
use crate::gf::{make_field, multiplicative_order, Field};
use crate::groups::{check_prime, Group, Subgroup};

/// The coefficient field chosen once for an ambient group: `GF(ell^m)` with
/// `m` the order of `ell` modulo the `ell'`-part of the exponent.
#[derive(Clone, Debug)]
pub struct SplittingContext {
    pub ell: u64,
    pub field: Arc<Field>,
    /// `ell'`-part of the exponent of the ambient group.
    pub exponent_ell_prime: u64,
}

pub fn splitting_context(g: &Group, ell: u64) -> Result<SplittingContext> {
    check_prime(ell)?;
    let mut e = g.exponent();
    while e.is_multiple_of(ell) {
        e /= ell;
    }
    let m = multiplicative_order(ell, e).expect("ell' part is coprime to ell");
    let field = make_field(ell as u32, m as u32)?;
    Ok(SplittingContext {
        ell,
        field,
        exponent_ell_prime: e,
    })
}

impl SplittingContext {
    /// Whether this context is valid for `h`: its exponent divides ours.
    pub fn covers(&self, g: &Group, h: &Subgroup) -> bool {
        h.elements().iter().all(|&x| {
            let mut o = g.elem_order(x) as u64;
            while o.is_multiple_of(self.ell) {
                o /= self.ell;
            }
            self.exponent_ell_prime.is_multiple_of(o)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Fe, Poly};
    use crate::groups::DEFAULT_GROUP_CAP;

    #[test]
    fn field_degrees() {
        let s3 = Group::parse("kind=symmetric,n=3", DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(splitting_context(&s3, 3).unwrap().field.degree(), 1);
        let c15 = Group::parse("kind=cyclic,n=15", DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(splitting_context(&c15, 5).unwrap().field.degree(), 2);
        let gl = Group::parse("kind=GL,n=2,q=4", DEFAULT_GROUP_CAP).unwrap();
        // exponent 30, 5'-part 6, order of 5 mod 6 is 2
        let ctx = splitting_context(&gl, 5).unwrap();
        assert_eq!(ctx.exponent_ell_prime, 6);
        assert_eq!(ctx.field.size(), 25);
        assert!(splitting_context(&gl, 4).is_err());
    }

    /// Maps `GF(p^m)` into a larger field of the same characteristic by
    /// sending the generator to a root of its modulus there.
    fn embedding(small: &Arc<Field>, big: &Arc<Field>) -> impl Fn(Fe) -> Fe {
        let modulus = Poly::new(small.modulus().iter().map(|&c| Fe(c)).collect());
        let root = big
            .elements()
            .find(|&r| modulus.eval(big, r).is_zero())
            .expect("subfield");
        let (small, big) = (small.clone(), big.clone());
        move |a| {
            let mut acc = Fe(0);
            let mut pw = Fe::ONE;
            for c in small.coeffs(a) {
                acc = big.add(acc, big.mul(big.from_int(c as i64), pw));
                pw = big.mul(pw, root);
            }
            acc
        }
    }

    #[test]
    fn blocks_are_stable_under_field_extension() {
        for (spec, ell) in [
            ("kind=symmetric,n=3", 2),
            ("kind=symmetric,n=4", 3),
            ("kind=alternating,n=5", 2),
            (
                "kind=product,factors=(kind=cyclic,n=2);(kind=symmetric,n=3)",
                3,
            ),
        ] {
            let g = Group::parse(spec, DEFAULT_GROUP_CAP).unwrap();
            let h = g.whole();
            let ctx = splitting_context(&g, ell).unwrap();
            let m = ctx.field.degree();
            let wide = SplittingContext {
                field: make_field(ell as u32, 2 * m).unwrap(),
                ..ctx.clone()
            };
            let a = ClassAlgebra::new(&g, &h, &ctx).unwrap();
            let b = ClassAlgebra::new(&g, &h, &wide).unwrap();
            let embed = embedding(&ctx.field, &wide.field);
            let mut lifted: Vec<Vec<Fe>> = a
                .blocks()
                .iter()
                .map(|e| e.coeffs.iter().map(|&c| embed(c)).collect())
                .collect();
            let mut direct: Vec<Vec<Fe>> = b.blocks().iter().map(|e| e.coeffs.clone()).collect();
            lifted.sort();
            direct.sort();
            assert_eq!(lifted, direct, "{spec} ell={ell}");
            let defects = |c: &ClassAlgebra| {
                let mut d: Vec<usize> = c
                    .blocks()
                    .iter()
                    .map(|e| c.defect_group(&g, e.index).order())
                    .collect();
                d.sort();
                d
            };
            assert_eq!(defects(&a), defects(&b));
        }
    }
}
