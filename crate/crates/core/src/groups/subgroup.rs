use std::cmp::Ordering;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use super::Group;
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A subgroup of a [`Group`], stored as its ascending element indices.
///
/// Equality, hashing and ordering use `(order, element indices)`, which is
/// also the canonical serialization.
#[derive(Clone)]
pub struct Subgroup(Arc<Inner>);

struct Inner {
    elems: Vec<u32>,
    mask: BitSet,
    gens: OnceLock<Vec<u32>>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.order() <= 16 {
            write!(f, "Subgroup{:?}", self.0.elems)
        } else {
            write!(f, "Subgroup(order {})", self.order())
        }
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.elems == other.0.elems
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.elems.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.order(), &self.0.elems).cmp(&(other.order(), &other.0.elems))
    }
}

impl Subgroup {
    fn from_sorted(group_order: usize, elems: Vec<u32>) -> Subgroup {
        let mask = BitSet::from_indices(group_order, elems.iter().map(|&x| x as usize));
        Subgroup(Arc::new(Inner {
            elems,
            mask,
            gens: OnceLock::new(),
        }))
    }

    pub fn order(&self) -> usize {
        self.0.elems.len()
    }

    /// Ascending element indices.
    pub fn elements(&self) -> &[u32] {
        &self.0.elems
    }

    #[inline]
    pub fn contains(&self, g: u32) -> bool {
        self.0.mask.contains(g as usize)
    }

    pub fn mask(&self) -> &BitSet {
        &self.0.mask
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.0.mask.is_subset(&other.0.mask)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Whether the order is a power of `ell` (the trivial group counts).
    pub fn is_ell_group(&self, ell: u64) -> bool {
        let mut n = self.order() as u64;
        while n.is_multiple_of(ell) {
            n /= ell;
        }
        n == 1
    }
}

impl Group {
    pub fn whole(&self) -> Subgroup {
        self.whole
            .get_or_init(|| Subgroup::from_sorted(self.order(), self.elements().collect()))
            .clone()
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted(self.order(), vec![0])
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Subgroup {
        let gens: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut seen = BitSet::new(self.order());
        seen.insert(0);
        let mut list = vec![0u32];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in &gens {
                let y = self.mul(x, s);
                if seen.insert(y as usize) {
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        let sub = Subgroup(Arc::new(Inner {
            elems: list,
            mask: seen,
            gens: OnceLock::new(),
        }));
        debug_assert_eq!(self.order() % sub.order(), 0, "Lagrange");
        sub
    }

    /// Validates that `elems` is a subgroup.
    pub fn subgroup(&self, elems: &[u32]) -> Result<Subgroup> {
        if elems.iter().any(|&e| e as usize >= self.order()) {
            return Err(Error::NotInGroup);
        }
        let mut v = elems.to_vec();
        v.sort_unstable();
        v.dedup();
        let closed = self.closure(&v);
        if closed.elements() != v.as_slice() {
            return Err(Error::NotSubgroup(format!(
                "{} elements do not form a subgroup",
                v.len()
            )));
        }
        if !self.order().is_multiple_of(closed.order()) {
            return Err(Error::contract(
                "subgroup order does not divide group order",
            ));
        }
        Ok(closed)
    }

    /// A small generating set, chosen greedily and cached per subgroup.
    pub fn generators_of<'a>(&self, h: &'a Subgroup) -> &'a [u32] {
        h.0.gens.get_or_init(|| {
            let mut by_order: Vec<u32> = h.elements().iter().copied().filter(|&x| x != 0).collect();
            by_order.sort_by_key(|&x| (std::cmp::Reverse(self.elem_order(x)), x));
            let mut gens = Vec::new();
            let mut cur = self.trivial();
            for x in by_order {
                if cur.order() == h.order() {
                    break;
                }
                if !cur.contains(x) {
                    gens.push(x);
                    cur = self.closure(&gens);
                }
            }
            gens
        })
    }

    pub fn conjugate(&self, h: &Subgroup, g: u32) -> Subgroup {
        if g == 0 {
            return h.clone();
        }
        let mut v: Vec<u32> = h.elements().iter().map(|&x| self.conj(x, g)).collect();
        v.sort_unstable();
        let sub = Subgroup::from_sorted(self.order(), v);
        if let Some(gens) = h.0.gens.get() {
            let _ = sub
                .0
                .gens
                .set(gens.iter().map(|&x| self.conj(x, g)).collect());
        }
        sub
    }

    pub fn subgroup_from_sorted_unchecked(&self, elems: Vec<u32>) -> Subgroup {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        Subgroup::from_sorted(self.order(), elems)
    }

    fn filter(&self, ambient: &Subgroup, pred: impl Fn(u32) -> bool) -> Subgroup {
        let v: Vec<u32> = ambient
            .elements()
            .iter()
            .copied()
            .filter(|&g| pred(g))
            .collect();
        Subgroup::from_sorted(self.order(), v)
    }

    /// Elements of `ambient` commuting with every element of `set`.
    pub fn centralizer_in(&self, ambient: &Subgroup, set: &[u32]) -> Result<Subgroup> {
        if set.iter().any(|&s| s as usize >= self.order()) {
            return Err(Error::NotInGroup);
        }
        Ok(self.filter(ambient, |g| set.iter().all(|&s| self.commutes(g, s))))
    }

    pub fn centralizer(&self, set: &[u32]) -> Result<Subgroup> {
        self.centralizer_in(&self.whole(), set)
    }

    /// `C_ambient(H)` computed from a generating set of `H`.
    pub fn centralizer_of(&self, ambient: &Subgroup, h: &Subgroup) -> Subgroup {
        let gens = self.generators_of(h).to_vec();
        self.filter(ambient, |g| gens.iter().all(|&s| self.commutes(g, s)))
    }

    pub fn normalizer_in(&self, ambient: &Subgroup, h: &Subgroup) -> Subgroup {
        let gens = self.generators_of(h).to_vec();
        self.filter(ambient, |g| {
            gens.iter().all(|&s| h.contains(self.conj(s, g)))
        })
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        self.normalizer_in(&self.whole(), h)
    }

    pub fn center(&self, h: &Subgroup) -> Subgroup {
        self.centralizer_of(h, h)
    }

    /// Elements of `ell`-power order in an abelian subgroup.
    pub fn ell_part(&self, abelian: &Subgroup, ell: u64) -> Subgroup {
        self.filter(abelian, |g| {
            let mut o = self.elem_order(g) as u64;
            while o.is_multiple_of(ell) {
                o /= ell;
            }
            o == 1
        })
    }

    /// `(Z(H), O_ell(Z(H)))`.
    pub fn center_and_ell_part(&self, h: &Subgroup, ell: u64) -> (Subgroup, Subgroup) {
        let z = self.center(h);
        let zl = self.ell_part(&z, ell);
        (z, zl)
    }

    /// `Omega_1` of an abelian `ell`-group: elements of order dividing `ell`.
    pub fn omega_one(&self, abelian: &Subgroup, ell: u64) -> Subgroup {
        self.filter(abelian, |g| {
            self.elem_order(g) as u64 == 1 || self.elem_order(g) as u64 == ell
        })
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let (small, big) = if a.order() <= b.order() {
            (a, b)
        } else {
            (b, a)
        };
        self.filter(small, |g| big.contains(g))
    }

    /// Subgroup generated by `a` and `b`.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = self.generators_of(a).to_vec();
        gens.extend_from_slice(self.generators_of(b));
        self.closure(&gens)
    }

    pub fn is_normal_in(&self, h: &Subgroup, k: &Subgroup) -> bool {
        h.is_subgroup_of(k)
            && self.generators_of(k).iter().all(|&g| {
                self.generators_of(h)
                    .iter()
                    .all(|&s| h.contains(self.conj(s, g)))
            })
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        let gens = self.generators_of(h);
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.commutes(a, b)))
    }

    /// Whether every element of `h` fixes `x` under conjugation.
    pub fn centralizes(&self, h: &Subgroup, x: u32) -> bool {
        self.generators_of(h).iter().all(|&s| self.commutes(s, x))
    }
}

#[cfg(test)]
mod tests {
    use crate::groups::{Group, DEFAULT_GROUP_CAP};

    fn g(text: &str) -> Group {
        Group::parse(text, DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn centralizers() {
        let c2s3 = g("kind=product,factors=(kind=cyclic,n=2);(kind=symmetric,n=3)");
        let z = c2s3.center(&c2s3.whole());
        assert_eq!(z.order(), 2);
        assert_eq!(c2s3.centralizer_of(&c2s3.whole(), &z).order(), 12);

        let a5 = g("kind=alternating,n=5");
        let dt = a5.elements().find(|&x| a5.elem_order(x) == 2).unwrap();
        assert_eq!(a5.centralizer(&[dt]).unwrap().order(), 4);

        let gl = g("kind=GL,n=2,q=4");
        let x = gl.elements().find(|&x| gl.elem_order(x) == 5).unwrap();
        let c = gl.centralizer(&[x]).unwrap();
        assert_eq!(c.order(), 15);
        assert!(gl.is_abelian(&c));
        assert_eq!(gl.normalizer(&c).order(), 30);
    }

    #[test]
    fn normalizer_in_s3() {
        let s3 = g("kind=symmetric,n=3");
        assert_eq!(s3.normalizer(&s3.whole()).order(), 6);
        let t = s3.elements().find(|&x| s3.elem_order(x) == 2).unwrap();
        let h = s3.closure(&[t]);
        assert_eq!(s3.normalizer(&h).order(), 2);
    }

    #[test]
    fn centers_and_ell_parts() {
        let c15 = g("kind=cyclic,n=15");
        let (z, zl) = c15.center_and_ell_part(&c15.whole(), 5);
        assert_eq!((z.order(), zl.order()), (15, 5));
        let s3 = g("kind=symmetric,n=3");
        let (z, zl) = s3.center_and_ell_part(&s3.whole(), 3);
        assert_eq!((z.order(), zl.order()), (1, 1));
        let c2s3 = g("kind=product,factors=(kind=cyclic,n=2);(kind=symmetric,n=3)");
        let (z, zl) = c2s3.center_and_ell_part(&c2s3.whole(), 2);
        assert_eq!((z.order(), zl.order()), (2, 2));
    }

    #[test]
    fn subgroup_validation() {
        let s3 = g("kind=symmetric,n=3");
        let inv = s3.elements().find(|&x| s3.elem_order(x) == 2).unwrap();
        assert_eq!(s3.subgroup(&[inv, 0]).unwrap().order(), 2);
        let t = s3.elements().find(|&x| s3.elem_order(x) == 3).unwrap();
        assert!(s3.subgroup(&[0, t]).is_err());
        assert!(s3.subgroup(&[0, t, s3.inv(t)]).is_ok());
        assert!(s3.subgroup(&[0, 99]).is_err());
    }
}
