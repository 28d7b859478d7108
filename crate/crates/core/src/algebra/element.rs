use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::groups::{Group, Subgroup};

/// A dense element of the group algebra `kG`, indexed by the element table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    coeffs: Vec<Fe>,
}

impl AlgebraElement {
    pub fn zero(g: &Group) -> AlgebraElement {
        AlgebraElement {
            coeffs: vec![Fe::ZERO; g.order()],
        }
    }

    pub fn basis(g: &Group, x: u32) -> AlgebraElement {
        let mut e = AlgebraElement::zero(g);
        e.coeffs[x as usize] = Fe::ONE;
        e
    }

    pub fn from_coeffs(coeffs: Vec<Fe>) -> AlgebraElement {
        AlgebraElement { coeffs }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, x: u32) -> Fe {
        self.coeffs[x as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero `(element, coefficient)` pairs in element order.
    pub fn support(&self) -> Vec<(u32, Fe)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i as u32, c))
            .collect()
    }

    pub fn add(&self, f: &Field, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Field, c: Fe) -> AlgebraElement {
        AlgebraElement {
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, g: &Group, f: &Field, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(g);
        let rhs = other.support();
        for (a, ca) in self.support() {
            for &(b, cb) in &rhs {
                let ab = g.mul(a, b) as usize;
                out.coeffs[ab] = f.add(out.coeffs[ab], f.mul(ca, cb));
            }
        }
        out
    }

    pub fn augmentation(&self, f: &Field) -> Fe {
        f.sum(self.coeffs.iter().copied())
    }

    /// `x^g`: coefficient of `y^g` is the coefficient of `y`.
    pub fn conjugate(&self, g: &Group, by: u32) -> AlgebraElement {
        let mut out = AlgebraElement::zero(g);
        for (x, c) in self.support() {
            out.coeffs[g.conj(x, by) as usize] = c;
        }
        out
    }

    pub fn is_fixed_by(&self, g: &Group, q: &Subgroup) -> bool {
        g.generators_of(q)
            .iter()
            .all(|&s| self.conjugate(g, s) == *self)
    }

    /// `Br_Q`: truncation of a `Q`-fixed element to `C_G(Q)`.
    pub fn brauer_map(&self, g: &Group, q: &Subgroup) -> Result<AlgebraElement> {
        if !self.is_fixed_by(g, q) {
            return Err(Error::NotFixed(
                "Brauer map needs a Q-stable element".into(),
            ));
        }
        let mut out = AlgebraElement::zero(g);
        for (x, c) in self.support() {
            if g.centralizes(q, x) {
                out.coeffs[x as usize] = c;
            }
        }
        Ok(out)
    }
}

/// `|Z|^-1 sum_z zeta(z) z^-1` for a character `zeta` of a central
/// subgroup, given as `(element, value)` pairs covering `Z`.
pub fn make_epsilon_zeta(
    g: &Group,
    f: &Field,
    z: &Subgroup,
    zeta: &[(u32, Fe)],
) -> Result<AlgebraElement> {
    let n = f.from_int(z.order() as i64);
    if n.is_zero() {
        return Err(Error::Precondition(
            "|Z| is not invertible in the field".into(),
        ));
    }
    let value = |x: u32| zeta.iter().find(|p| p.0 == x).map(|p| p.1);
    for &x in z.elements() {
        for &y in z.elements() {
            let (Some(a), Some(b), Some(ab)) = (value(x), value(y), value(g.mul(x, y))) else {
                return Err(Error::Precondition("character does not cover Z".into()));
            };
            if f.mul(a, b) != ab {
                return Err(Error::Precondition("zeta is not multiplicative".into()));
            }
        }
    }
    let inv_n = f.inv(n);
    let mut e = AlgebraElement::zero(g);
    for &x in z.elements() {
        e.coeffs[g.inv(x) as usize] = f.mul(inv_n, value(x).unwrap());
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{splitting_context, ClassAlgebra};
    use crate::groups::DEFAULT_GROUP_CAP;

    #[test]
    fn brauer_map_basics() {
        let g = Group::parse("kind=symmetric,n=3", DEFAULT_GROUP_CAP).unwrap();
        let ctx = splitting_context(&g, 3).unwrap();
        let f = ctx.field.clone();
        let a = ClassAlgebra::new(&g, &g.whole(), &ctx).unwrap();
        let e = a.to_dense(&g, &a.blocks()[0].coeffs);
        assert_eq!(e.brauer_map(&g, &g.trivial()).unwrap(), e);
        let p = crate::groups::enumerate_ell_subgroups(&g, 3).pop().unwrap();
        assert!(!e.brauer_map(&g, &p).unwrap().is_zero());
        // class sum of transpositions truncated to C(A3) = A3 is zero
        let t = g.elements().find(|&x| g.elem_order(x) == 2).unwrap();
        let c = a.class_of(t).unwrap();
        let mut k = vec![Fe::ZERO; a.num_classes()];
        k[c] = Fe::ONE;
        assert!(a.to_dense(&g, &k).brauer_map(&g, &p).unwrap().is_zero());
        let single = AlgebraElement::basis(&g, t);
        assert!(single.brauer_map(&g, &p).is_err());
        assert_eq!(single.augmentation(&f), Fe::ONE);
    }

    #[test]
    fn epsilon_zeta() {
        let g = Group::parse("kind=cyclic,n=2", DEFAULT_GROUP_CAP).unwrap();
        let f = crate::gf::make_field(5, 1).unwrap();
        let z = g.whole();
        let triv = make_epsilon_zeta(&g, &f, &z, &[(0, Fe::ONE), (1, Fe::ONE)]).unwrap();
        assert_eq!(triv.augmentation(&f), Fe::ONE);
        let sign = make_epsilon_zeta(&g, &f, &z, &[(0, Fe::ONE), (1, f.from_int(-1))]).unwrap();
        let half = f.inv(f.from_int(2));
        assert_eq!(sign.coeffs(), &[half, f.neg(half)]);
        assert_eq!(sign.mul(&g, &f, &sign), sign);
        assert!(make_epsilon_zeta(&g, &f, &z, &[(0, Fe::ONE), (1, f.from_int(2))]).is_err());
        let f2 = crate::gf::make_field(2, 1).unwrap();
        assert!(make_epsilon_zeta(&g, &f2, &z, &[(0, Fe::ONE), (1, Fe::ONE)]).is_err());
    }
}
