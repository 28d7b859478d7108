use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Family, PrimeContext, ReductiveSpec};
use crate::error::{Error, Result};
use crate::gf::{is_irreducible, make_field, Fe, Field, Matrix, Poly};
use crate::groups::{conjugacy_orbit, Group, Subgroup};

/// `GL_m(q) x prod GL_{a_i}(q^e)` with `m + e * sum(a) = n`; `a` is sorted
/// descending. For `e = 1` all blocks are kept in `a` and `m = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeviType {
    pub e: u64,
    pub m: usize,
    pub a: Vec<usize>,
}

impl fmt::Display for LeviType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{:?})", self.m, self.a)
    }
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn gl_order(n: usize, q: u128) -> u128 {
    let qn = q.pow(n as u32);
    (0..n).map(|i| qn - q.pow(i as u32)).product()
}

impl LeviType {
    /// All proper types for `GL_n` and a given `e`, sorted.
    pub fn proper_types(n: usize, e: u64) -> Vec<LeviType> {
        let mut out = Vec::new();
        if e == 1 {
            for a in partitions(n, n) {
                if a.len() >= 2 {
                    out.push(LeviType { e, m: 0, a });
                }
            }
        } else {
            let e = e as usize;
            for m in 0..n {
                if (n - m).is_multiple_of(e) {
                    for a in partitions((n - m) / e, (n - m) / e) {
                        out.push(LeviType { e: e as u64, m, a });
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn order(&self, q: u32) -> u128 {
        let q = q as u128;
        let qe = q.pow(self.e as u32);
        gl_order(self.m, q) * self.a.iter().map(|&ai| gl_order(ai, qe)).product::<u128>()
    }
}

/// One `e`-split Levi subgroup of the ambient group.
#[derive(Clone, Debug)]
pub struct EmbeddedLevi {
    pub levi_type: LeviType,
    pub subgroup: Subgroup,
    /// `Z(L)`.
    pub center: Subgroup,
    /// `O_ell(Z(L))`.
    pub center_ell: Subgroup,
    /// `x` with `standard^x = subgroup`.
    pub conjugator: u32,
}

/// Lexicographically least monic irreducible of degree `e` over `f`.
fn least_irreducible_over(f: &Field, e: usize) -> Poly {
    let q = f.size() as u64;
    for code in 0..q.pow(e as u32) {
        let mut c = code;
        let mut coeffs: Vec<Fe> = (0..e)
            .map(|_| {
                let d = c % q;
                c /= q;
                Fe(d as u32)
            })
            .collect();
        coeffs.push(Fe::ONE);
        let p = Poly::new(coeffs);
        if is_irreducible(f, &p) {
            return p;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn companion(f: &Field, p: &Poly) -> Matrix {
    let e = p.degree().unwrap();
    let mut c = Matrix::zero(e, e);
    for i in 0..e.saturating_sub(1) {
        c.set(i, i + 1, Fe::ONE);
    }
    for j in 0..e {
        c.set(e - 1, j, f.neg(p.coeff(j)));
    }
    c
}

/// The field `F_q[C]` of `e x e` matrices, with a multiplicative generator
/// and an additive generating set.
struct MatrixField {
    generator: Matrix,
    additive: Vec<Matrix>,
}

fn matrix_field(f: &Field, e: usize) -> MatrixField {
    let c = companion(f, &least_irreducible_over(f, e));
    let mut powers = vec![Matrix::identity(e)];
    for _ in 1..e {
        let next = powers.last().unwrap().mul(f, &c);
        powers.push(next);
    }
    let q = f.size() as u64;
    let size = q.pow(e as u32);
    let element = |code: u64| {
        let mut m = Matrix::zero(e, e);
        let mut rest = code;
        for p in &powers {
            let k = Fe((rest % q) as u32);
            rest /= q;
            for i in 0..e {
                for j in 0..e {
                    m.set(i, j, f.add(m.get(i, j), f.mul(k, p.get(i, j))));
                }
            }
        }
        m
    };
    let ident = Matrix::identity(e);
    let mult_order = |m: &Matrix| {
        let mut x = m.clone();
        let mut k = 1u64;
        while x != ident {
            x = x.mul(f, m);
            k += 1;
        }
        k
    };
    let generator = (1..size)
        .map(element)
        .find(|m| mult_order(m) == size - 1)
        .expect("finite fields have primitive elements");
    let w = f.primitive_element();
    let mut additive = Vec::new();
    for s in 0..f.degree() {
        let scalar = f.pow(w, s as u64);
        for p in &powers {
            let mut m = Matrix::zero(e, e);
            for i in 0..e {
                for j in 0..e {
                    m.set(i, j, f.mul(scalar, p.get(i, j)));
                }
            }
            additive.push(m);
        }
    }
    MatrixField {
        generator,
        additive,
    }
}

/// Identity of size `n` with `e x e` blocks placed at block positions
/// `(i, j)` of a diagonal block starting at `offset`.
fn embed(n: usize, offset: usize, e: usize, blocks: &[(usize, usize, &Matrix)]) -> Matrix {
    let mut m = Matrix::identity(n);
    for &(bi, bj, x) in blocks {
        for r in 0..e {
            for c in 0..e {
                m.set(offset + bi * e + r, offset + bj * e + c, x.get(r, c));
            }
        }
    }
    m
}

fn standard_generators(f: &Field, n: usize, t: &LeviType) -> Vec<Matrix> {
    let mut gens = Vec::new();
    // untwisted GL_m(q) block at the top left
    if t.m > 0 {
        let mf = matrix_field(f, 1);
        gens.extend(block_generators(n, 0, 1, t.m, &mf));
    }
    let e = t.e as usize;
    let mf = matrix_field(f, e);
    let mut offset = t.m;
    for &ai in &t.a {
        gens.extend(block_generators(n, offset, e, ai, &mf));
        offset += ai * e;
    }
    gens
}

/// Generators of `GL_a(F_q[C])` placed at `offset`.
fn block_generators(n: usize, offset: usize, e: usize, a: usize, mf: &MatrixField) -> Vec<Matrix> {
    let mut gens = Vec::new();
    if mf.generator != Matrix::identity(e) {
        gens.push(embed(n, offset, e, &[(0, 0, &mf.generator)]));
    }
    for i in 0..a.saturating_sub(1) {
        for x in &mf.additive {
            gens.push(embed(n, offset, e, &[(i, i + 1, x)]));
            gens.push(embed(n, offset, e, &[(i + 1, i, x)]));
        }
    }
    gens
}

/// All proper `e`-split Levi subgroups of `GL_n(q)` (`e = ctx.e`), as
/// conjugates of the standard block-diagonal embeddings, sorted by type and
/// then by subgroup. Checks the order formula and, when the prime is
/// admissible, that `L = C_G(O_ell(Z(L)))`.
pub fn enumerate_esplit_levis(
    g: &Group,
    spec: &ReductiveSpec,
    ctx: &PrimeContext,
) -> Result<Vec<EmbeddedLevi>> {
    if spec.family != Family::GL {
        return Err(Error::Precondition(
            "e-split Levi enumeration is implemented for GL only".into(),
        ));
    }
    let (p, fdeg) = crate::groups::prime_power(spec.q).unwrap();
    let f = make_field(p, fdeg)?;
    let n = spec.n;
    let mut out = Vec::new();
    for t in LeviType::proper_types(n, ctx.e) {
        let gens: Vec<u32> = standard_generators(&f, n, &t)
            .iter()
            .map(|m| g.index_of_matrix(m).ok_or(Error::NotInGroup))
            .collect::<Result<_>>()?;
        let l = g.closure(&gens);
        if l.order() as u128 != t.order(spec.q) {
            return Err(Error::contract(format!(
                "Levi of type {t} has order {}",
                l.order()
            )));
        }
        let (z, zl) = g.center_and_ell_part(&l, ctx.ell);
        if ctx.in_pi() && !zl.is_trivial() && g.centralizer_of(&g.whole(), &zl) != l {
            return Err(Error::contract(format!(
                "Levi of type {t} is not the centralizer of its central ell-part"
            )));
        }
        let mut members = conjugacy_orbit(g, &l, g.generators());
        members.sort_by(|a, b| a.0.cmp(&b.0));
        for (h, x) in members {
            out.push(EmbeddedLevi {
                levi_type: t.clone(),
                center: g.conjugate(&z, x),
                center_ell: g.conjugate(&zl, x),
                subgroup: h,
                conjugator: x,
            });
        }
    }
    Ok(out)
}

/// Result of a containment scan: an enumerated Levi or the whole group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LeviContainment {
    Levi(usize),
    FullGroup,
}

/// The inclusion-minimal Levi of the list containing `h`; fails if that
/// minimum is not unique.
pub fn minimal_esplit_containing(levis: &[EmbeddedLevi], h: &Subgroup) -> Result<LeviContainment> {
    let containing: Vec<usize> = (0..levis.len())
        .filter(|&i| {
            levis[i].subgroup.order().is_multiple_of(h.order())
                && h.is_subgroup_of(&levis[i].subgroup)
        })
        .collect();
    if containing.is_empty() {
        return Ok(LeviContainment::FullGroup);
    }
    let minimal: Vec<usize> = containing
        .iter()
        .copied()
        .filter(|&i| {
            containing
                .iter()
                .all(|&j| j == i || !levis[j].subgroup.is_subgroup_of(&levis[i].subgroup))
        })
        .collect();
    if minimal.len() != 1 {
        return Err(Error::contract(format!(
            "{} inclusion-minimal Levi subgroups contain the subgroup",
            minimal.len()
        )));
    }
    let m = minimal[0];
    if cfg!(debug_assertions)
        && !containing
            .iter()
            .all(|&j| levis[m].subgroup.is_subgroup_of(&levis[j].subgroup))
    {
        return Err(Error::contract(
            "minimal Levi is not below every containing Levi",
        ));
    }
    Ok(LeviContainment::Levi(m))
}
