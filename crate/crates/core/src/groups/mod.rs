//! Fully enumerated finite groups given by permutation or matrix
//! generators.
//!
//! Elements are stored as flat `u16` words (permutation images or matrix
//! entry codes) and referred to by their index in the element table; the
//! identity is index 0. Products compose left to right: for permutations
//! `(a * b)(i) = b(a(i))`, and matrices act on row vectors. Conjugation is
//! the right action `x^g = g^-1 x g`.

mod spec;
mod subgroup;
mod sylow;

pub(crate) use spec::check_prime;
pub use spec::{prime_power, GroupSpec};
pub use subgroup::Subgroup;
pub(crate) use sylow::{ambient_generators, conjugacy_orbit};
pub use sylow::{
    ell_subgroup_classes, enumerate_ell_subgroups, subgroup_conjugacy, sylow_subgroup,
    SubgroupClass,
};

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::gf::{make_field, Fe, Field, Matrix};

/// Default cap on enumerated group orders.
pub const DEFAULT_GROUP_CAP: usize = 25_000;

#[derive(Clone, Debug)]
pub enum Repr {
    Perm { degree: usize },
    Matrix { n: usize, field: Arc<Field> },
}

pub struct Group {
    repr: Repr,
    spec: Option<GroupSpec>,
    width: usize,
    words: Vec<u16>,
    index: FxHashMap<Box<[u16]>, u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    generators: Vec<u32>,
    whole: std::sync::OnceLock<Subgroup>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.spec {
            Some(s) => write!(f, "Group({s}, order {})", self.order()),
            None => write!(f, "Group(order {})", self.order()),
        }
    }
}

fn perm_gens_of(spec: &GroupSpec, cap: usize) -> Result<(usize, Vec<Vec<usize>>)> {
    let cycle = |n: usize| (0..n).map(|i| (i + 1) % n).collect::<Vec<_>>();
    let swap = |n: usize, a: usize, b: usize| {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a, b);
        v
    };
    Ok(match spec {
        GroupSpec::Symmetric(n) => {
            let n = *n;
            let mut g = Vec::new();
            if n >= 2 {
                g.push(swap(n, 0, 1));
            }
            if n >= 3 {
                g.push(cycle(n));
            }
            (n, g)
        }
        GroupSpec::Alternating(n) => {
            let n = *n;
            let g = (2..n)
                .map(|i| {
                    let mut v: Vec<usize> = (0..n).collect();
                    v[0] = 1;
                    v[1] = i;
                    v[i] = 0;
                    v
                })
                .collect();
            (n, g)
        }
        GroupSpec::Cyclic(n) => (*n, if *n > 1 { vec![cycle(*n)] } else { vec![] }),
        GroupSpec::Dihedral(n) => {
            let n = *n;
            let refl = (0..n).map(|i| (n - i) % n).collect();
            (n, vec![cycle(n), refl])
        }
        GroupSpec::Perm { degree, gens } => (*degree, gens.clone()),
        GroupSpec::Matrix { .. } | GroupSpec::GL { .. } | GroupSpec::SL { .. } => {
            // faithful action on nonzero row vectors
            let (n, q) = spec.matrix_field().unwrap();
            let (field, mats) = matrix_gens_of(spec, cap)?;
            let points = (q as usize).pow(n as u32) - 1;
            if points > u16::MAX as usize {
                return Err(Error::MalformedSpec(
                    "matrix factor too large for a permutation product".into(),
                ));
            }
            let to_vec = |mut c: usize| {
                (0..n)
                    .map(|_| {
                        let d = c % q as usize;
                        c /= q as usize;
                        Fe(d as u32)
                    })
                    .collect::<Vec<_>>()
            };
            let to_code = |v: &[Fe]| {
                v.iter()
                    .rev()
                    .fold(0usize, |acc, x| acc * q as usize + x.0 as usize)
            };
            let gens = mats
                .iter()
                .map(|m| {
                    let mt = m.transpose();
                    (1..=points)
                        .map(|c| to_code(&mt.apply(&field, &to_vec(c))) - 1)
                        .collect()
                })
                .collect();
            (points, gens)
        }
        GroupSpec::Product(parts) => {
            let mut degree = 0;
            let mut gens = Vec::new();
            let factors = parts
                .iter()
                .map(|p| perm_gens_of(p, cap))
                .collect::<Result<Vec<_>>>()?;
            let total: usize = factors.iter().map(|f| f.0).sum();
            for (d, fg) in factors {
                for g in fg {
                    let mut img: Vec<usize> = (0..total).collect();
                    for (i, &x) in g.iter().enumerate() {
                        img[degree + i] = degree + x;
                    }
                    gens.push(img);
                }
                degree += d;
            }
            (degree, gens)
        }
    })
}

fn gl_order(n: usize, q: u64) -> u128 {
    let qn = (q as u128).pow(n as u32);
    (0..n).map(|i| qn - (q as u128).pow(i as u32)).product()
}

fn matrix_gens_of(spec: &GroupSpec, cap: usize) -> Result<(Arc<Field>, Vec<Matrix>)> {
    let (n, q) = spec.matrix_field().expect("matrix spec");
    let (p, f) = prime_power(q)
        .ok_or_else(|| Error::MalformedSpec(format!("q={q} is not a prime power")))?;
    let field = make_field(p, f)?;
    let mats = match spec {
        GroupSpec::Matrix { gens, .. } => gens
            .iter()
            .map(|g| {
                let rows: Vec<Vec<Fe>> = g
                    .chunks(n)
                    .map(|r| r.iter().map(|&c| Fe(c)).collect())
                    .collect();
                Matrix::from_rows(&rows)
            })
            .collect(),
        GroupSpec::GL { .. } | GroupSpec::SL { .. } => {
            let is_sl = matches!(spec, GroupSpec::SL { .. });
            let predicted = gl_order(n, q as u64) / if is_sl { q as u128 - 1 } else { 1 };
            if predicted > cap as u128 {
                return Err(Error::GroupTooLarge(cap));
            }
            let w = field.primitive_element();
            let mut gens = Vec::new();
            if !is_sl && q > 2 {
                let mut d = vec![Fe::ONE; n];
                d[0] = w;
                gens.push(Matrix::diagonal(&d));
            }
            for i in 0..n.saturating_sub(1) {
                for j in 0..f {
                    let c = field.pow(w, j as u64);
                    let mut up = Matrix::identity(n);
                    up.set(i, i + 1, c);
                    gens.push(up);
                    let mut down = Matrix::identity(n);
                    down.set(i + 1, i, c);
                    gens.push(down);
                }
            }
            gens
        }
        _ => unreachable!(),
    };
    Ok((field, mats))
}

impl Group {
    /// Builds and fully enumerates the group described by `spec`.
    pub fn from_spec(spec: &GroupSpec, cap: usize) -> Result<Group> {
        let mut g = match spec {
            GroupSpec::Matrix { .. } | GroupSpec::GL { .. } | GroupSpec::SL { .. } => {
                let (field, mats) = matrix_gens_of(spec, cap)?;
                let n = spec.matrix_field().unwrap().0;
                Group::from_matrices(n, field, &mats, cap)?
            }
            _ => {
                let (degree, gens) = perm_gens_of(spec, cap)?;
                Group::from_permutations(degree, &gens, cap)?
            }
        };
        g.spec = Some(spec.clone());
        Ok(g)
    }

    pub fn parse(text: &str, cap: usize) -> Result<Group> {
        Group::from_spec(&GroupSpec::parse(text)?, cap)
    }

    /// Closure of 0-based permutation generators on `degree` points.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>], cap: usize) -> Result<Group> {
        if degree > u16::MAX as usize {
            return Err(Error::MalformedSpec("permutation degree too large".into()));
        }
        let words: Vec<Vec<u16>> = gens
            .iter()
            .map(|g| {
                if g.len() != degree {
                    return Err(Error::MalformedSpec("generator has wrong degree".into()));
                }
                let mut seen = vec![false; degree];
                for &x in g {
                    if x >= degree || std::mem::replace(&mut seen[x], true) {
                        return Err(Error::MalformedSpec(format!("{g:?} is not a permutation")));
                    }
                }
                Ok(g.iter().map(|&x| x as u16).collect())
            })
            .collect::<Result<_>>()?;
        let identity: Vec<u16> = (0..degree as u16).collect();
        Group::enumerate(Repr::Perm { degree }, identity, words, cap)
    }

    /// Closure of invertible `n x n` matrix generators over `field`.
    pub fn from_matrices(
        n: usize,
        field: Arc<Field>,
        gens: &[Matrix],
        cap: usize,
    ) -> Result<Group> {
        if field.size() > u16::MAX as u32 {
            return Err(Error::MalformedSpec("matrix field too large".into()));
        }
        let mut words = Vec::new();
        for m in gens {
            if m.rows() != n || m.cols() != n {
                return Err(Error::MalformedSpec("generator has wrong shape".into()));
            }
            if m.rank(&field) < n {
                return Err(Error::SingularGenerator);
            }
            words.push(m.data().iter().map(|x| x.0 as u16).collect());
        }
        let identity = Matrix::identity(n)
            .data()
            .iter()
            .map(|x| x.0 as u16)
            .collect();
        Group::enumerate(Repr::Matrix { n, field }, identity, words, cap)
    }

    fn enumerate(repr: Repr, identity: Vec<u16>, gens: Vec<Vec<u16>>, cap: usize) -> Result<Group> {
        let width = identity.len();
        let mut g = Group {
            repr,
            spec: None,
            width,
            words: identity.clone(),
            index: FxHashMap::default(),
            inverse: Vec::new(),
            orders: Vec::new(),
            generators: Vec::new(),
            whole: std::sync::OnceLock::new(),
        };
        g.index.insert(identity.into_boxed_slice(), 0);
        let mut gen_idx = Vec::new();
        for w in &gens {
            let i = g.intern(w);
            if i != 0 && !gen_idx.contains(&i) {
                gen_idx.push(i);
            }
        }
        let mut buf = vec![0u16; width];
        let mut next = 0;
        while next < g.len() {
            for &s in &gen_idx {
                g.mul_words(next as u32, s, &mut buf);
                if !g.index.contains_key(buf.as_slice()) {
                    if g.len() >= cap {
                        return Err(Error::GroupTooLarge(cap));
                    }
                    g.intern(&buf);
                }
            }
            next += 1;
        }
        g.generators = gen_idx;
        g.fill_orders();
        Ok(g)
    }

    fn intern(&mut self, w: &[u16]) -> u32 {
        if let Some(&i) = self.index.get(w) {
            return i;
        }
        let i = self.len() as u32;
        self.words.extend_from_slice(w);
        self.index.insert(w.into(), i);
        i
    }

    fn len(&self) -> usize {
        self.words.len() / self.width
    }

    fn fill_orders(&mut self) {
        let n = self.len();
        let mut orders = vec![0u32; n];
        let mut inverse = vec![0u32; n];
        orders[0] = 1;
        for a in 1..n as u32 {
            let mut p = a;
            let mut k = 1;
            loop {
                let next = self.mul(p, a);
                if next == 0 {
                    inverse[a as usize] = p;
                    orders[a as usize] = k + 1;
                    break;
                }
                p = next;
                k += 1;
            }
        }
        self.orders = orders;
        self.inverse = inverse;
    }

    pub fn order(&self) -> usize {
        self.len()
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    /// Canonical description used in reports and cache keys.
    pub fn label(&self) -> String {
        match &self.spec {
            Some(s) => s.to_string(),
            None => format!("anonymous group of order {}", self.order()),
        }
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn words(&self, a: u32) -> &[u16] {
        let s = a as usize * self.width;
        &self.words[s..s + self.width]
    }

    pub fn index_of(&self, w: &[u16]) -> Option<u32> {
        self.index.get(w).copied()
    }

    fn mul_words(&self, a: u32, b: u32, out: &mut [u16]) {
        let (wa, wb) = (self.words(a), self.words(b));
        match &self.repr {
            Repr::Perm { .. } => {
                for (o, &x) in out.iter_mut().zip(wa) {
                    *o = wb[x as usize];
                }
            }
            Repr::Matrix { n, field } => {
                let n = *n;
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = Fe::ZERO;
                        for k in 0..n {
                            let x = wa[i * n + k];
                            let y = wb[k * n + j];
                            if x != 0 && y != 0 {
                                acc = field.add(acc, field.mul(Fe(x as u32), Fe(y as u32)));
                            }
                        }
                        out[i * n + j] = acc.0 as u16;
                    }
                }
            }
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let mut stack = [0u16; 64];
        let mut heap;
        let buf: &mut [u16] = if self.width <= 64 {
            &mut stack[..self.width]
        } else {
            heap = vec![0u16; self.width];
            &mut heap
        };
        self.mul_words(a, b, buf);
        self.index[&*buf]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    #[inline]
    pub fn elem_order(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        let o = self.elem_order(a) as i64;
        let mut e = e.rem_euclid(o);
        let mut result = 0;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// `x^g = g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    #[inline]
    pub fn commutes(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &o| crate::gf::lcm(acc, o as u64))
    }

    pub fn field(&self) -> Option<&Arc<Field>> {
        match &self.repr {
            Repr::Matrix { field, .. } => Some(field),
            Repr::Perm { .. } => None,
        }
    }

    pub fn matrix_dim(&self) -> Option<usize> {
        match &self.repr {
            Repr::Matrix { n, .. } => Some(*n),
            Repr::Perm { .. } => None,
        }
    }

    /// The element as a matrix, for matrix groups.
    pub fn matrix(&self, a: u32) -> Option<Matrix> {
        let n = self.matrix_dim()?;
        let rows: Vec<Vec<Fe>> = self
            .words(a)
            .chunks(n)
            .map(|r| r.iter().map(|&c| Fe(c as u32)).collect())
            .collect();
        Some(Matrix::from_rows(&rows))
    }

    pub fn index_of_matrix(&self, m: &Matrix) -> Option<u32> {
        let w: Vec<u16> = m.data().iter().map(|x| x.0 as u16).collect();
        if w.len() != self.width || self.matrix_dim().is_none() {
            return None;
        }
        self.index_of(&w)
    }

    /// Human-readable element: cycle notation (1-based) or matrix rows.
    pub fn describe(&self, a: u32) -> String {
        match &self.repr {
            Repr::Perm { degree } => {
                let w = self.words(a);
                let mut seen = vec![false; *degree];
                let mut out = String::new();
                for s in 0..*degree {
                    if seen[s] || w[s] as usize == s {
                        continue;
                    }
                    out.push('(');
                    let mut x = s;
                    let mut first = true;
                    while !seen[x] {
                        seen[x] = true;
                        if !first {
                            out.push(' ');
                        }
                        out.push_str(&(x + 1).to_string());
                        first = false;
                        x = w[x] as usize;
                    }
                    out.push(')');
                }
                if out.is_empty() {
                    "()".into()
                } else {
                    out
                }
            }
            Repr::Matrix { n, .. } => {
                let rows: Vec<String> = self
                    .words(a)
                    .chunks(*n)
                    .map(|r| {
                        format!(
                            "[{}]",
                            r.iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(",")
                        )
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
        }
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order() as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> Group {
        Group::parse(text, DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn standard_orders() {
        assert_eq!(g("kind=symmetric,n=3").order(), 6);
        assert_eq!(g("kind=symmetric,n=4").order(), 24);
        assert_eq!(g("kind=alternating,n=5").order(), 60);
        assert_eq!(g("kind=dihedral,n=4").order(), 8);
        assert_eq!(g("kind=cyclic,n=15").order(), 15);
        assert_eq!(
            g("kind=product,factors=(kind=cyclic,n=2);(kind=symmetric,n=3)").order(),
            12
        );
        assert_eq!(g("kind=GL,n=2,q=4").order(), 180);
        assert_eq!(g("kind=SL,n=2,q=5").order(), 120);
        assert_eq!(g("kind=SL,n=3,q=2").order(), 168);
        assert_eq!(g("kind=SL,n=2,q=3").order(), 24);
        assert_eq!(g("kind=GL,n=2,q=5").order(), 480);
    }

    #[test]
    fn matrix_generators_of_sl2_5() {
        // [[1,1],[0,1]] and [[0,4],[1,0]] generate SL_2(5)
        let s = g("kind=matrix,n=2,q=5,gens=[1,1,0,1];[0,4,1,0]");
        assert_eq!(s.order(), 120);
    }

    #[test]
    fn product_with_matrix_factor() {
        let p = g("kind=product,factors=(kind=cyclic,n=2);(kind=GL,n=2,q=2)");
        assert_eq!(p.order(), 12);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            Group::parse("kind=symmetric,n=9", 1000),
            Err(Error::GroupTooLarge(1000))
        ));
        assert!(matches!(
            Group::parse("kind=GL,n=4,q=3", 25_000),
            Err(Error::GroupTooLarge(_))
        ));
        assert!(matches!(
            Group::parse("kind=matrix,n=2,q=5,gens=[1,2,2,4]", 1000),
            Err(Error::SingularGenerator)
        ));
    }

    #[test]
    fn inverses_and_orders() {
        let a5 = g("kind=alternating,n=5");
        for a in a5.elements() {
            assert_eq!(a5.mul(a, a5.inv(a)), 0);
            assert_eq!(a5.pow(a, a5.elem_order(a) as i64), 0);
        }
        assert_eq!(a5.exponent(), 30);
        assert_eq!(a5.describe(0), "()");
    }
}
