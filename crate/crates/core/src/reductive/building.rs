use rustc_hash::FxHashMap;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::gf::{Fe, Field, Matrix};
use crate::groups::{Group, Subgroup};
use crate::topo::{order_complex, Poset, SimplicialComplex};

/// A subspace of the row space `F_q^n`, kept as its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    pub basis: Vec<Vec<Fe>>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn vec_code(v: &[Fe], q: u32) -> usize {
    v.iter()
        .rev()
        .fold(0usize, |acc, x| acc * q as usize + x.0 as usize)
}

fn code_vec(mut c: usize, n: usize, q: u32) -> Vec<Fe> {
    (0..n)
        .map(|_| {
            let d = c % q as usize;
            c /= q as usize;
            Fe(d as u32)
        })
        .collect()
}

fn span(f: &Field, rows: &[Vec<Fe>], n: usize) -> Subspace {
    if rows.is_empty() {
        return Subspace { basis: Vec::new() };
    }
    let (r, pivots) = Matrix::from_rows(rows).rref(f);
    let basis = (0..pivots.len())
        .map(|i| (0..n).map(|j| r.get(i, j)).collect())
        .collect();
    Subspace { basis }
}

fn row_times(f: &Field, v: &[Fe], m: &Matrix) -> Vec<Fe> {
    (0..m.cols())
        .map(|j| f.sum(v.iter().enumerate().map(|(i, &x)| f.mul(x, m.get(i, j)))))
        .collect()
}

/// All subspaces of `F_q^n`, sorted by dimension then basis.
pub fn subspaces(f: &Field, n: usize) -> Vec<Subspace> {
    let q = f.size();
    let total = (q as usize).pow(n as u32);
    let mut seen: FxHashMap<Subspace, ()> = FxHashMap::default();
    let mut list = vec![Subspace { basis: Vec::new() }];
    seen.insert(list[0].clone(), ());
    let mut i = 0;
    while i < list.len() {
        let s = list[i].clone();
        let members = members_of(f, &s, n);
        for c in 1..total {
            if members.contains(c) {
                continue;
            }
            let mut rows = s.basis.clone();
            rows.push(code_vec(c, n, q));
            let t = span(f, &rows, n);
            if seen.insert(t.clone(), ()).is_none() {
                list.push(t);
            }
        }
        i += 1;
    }
    list.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    list
}

fn members_of(f: &Field, s: &Subspace, n: usize) -> BitSet {
    let q = f.size();
    let total = (q as usize).pow(n as u32);
    let mut out = BitSet::new(total);
    out.insert(0);
    let k = s.dim();
    let combos = (q as usize).pow(k as u32);
    for c in 1..combos {
        let coeffs = code_vec(c, k, q);
        let v: Vec<Fe> = (0..n)
            .map(|j| {
                f.sum(
                    coeffs
                        .iter()
                        .zip(&s.basis)
                        .map(|(&a, row)| f.mul(a, row[j])),
                )
            })
            .collect();
        out.insert(vec_code(&v, q));
    }
    out
}

/// A nonempty flag of proper nonzero subspaces and its stabilizer.
#[derive(Clone, Debug)]
pub struct FlagParabolic {
    /// Indices into the subspace list, strictly increasing dimension.
    pub flag: Vec<usize>,
    pub subgroup: Subgroup,
}

/// Stabilizers of all nonempty flags, in flag order (shorter flags and
/// lower indices first).
pub fn parabolics(g: &Group) -> Result<(Vec<Subspace>, Vec<FlagParabolic>)> {
    let (n, f) = match (g.matrix_dim(), g.field()) {
        (Some(n), Some(f)) => (n, f.clone()),
        _ => return Err(Error::Precondition("parabolics need a matrix group".into())),
    };
    let q = f.size();
    let all = subspaces(&f, n);
    let proper: Vec<usize> = (0..all.len())
        .filter(|&i| all[i].dim() > 0 && all[i].dim() < n)
        .collect();
    let members: Vec<BitSet> = proper.iter().map(|&i| members_of(&f, &all[i], n)).collect();
    let mats: Vec<Matrix> = g.elements().map(|a| g.matrix(a).unwrap()).collect();
    let stabilizers: Vec<BitSet> = proper
        .iter()
        .zip(&members)
        .map(|(&i, mem)| {
            BitSet::from_indices(
                g.order(),
                (0..g.order()).filter(|&a| {
                    all[i]
                        .basis
                        .iter()
                        .all(|v| mem.contains(vec_code(&row_times(&f, v, &mats[a]), q)))
                }),
            )
        })
        .collect();
    // chains of proper subspaces by inclusion
    let contains = |a: usize, b: usize| members[a].is_subset(&members[b]) && a != b;
    let mut flags: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..proper.len()).rev().map(|i| vec![i]).collect();
    while let Some(c) = stack.pop() {
        let top = *c.last().unwrap();
        for b in (0..proper.len()).rev() {
            if contains(top, b) {
                let mut next = c.clone();
                next.push(b);
                stack.push(next);
            }
        }
        flags.push(c);
    }
    flags.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let out = flags
        .into_iter()
        .map(|flag| {
            let mut mask = stabilizers[flag[0]].clone();
            for &i in &flag[1..] {
                mask.intersect_with(&stabilizers[i]);
            }
            let elems: Vec<u32> = mask.iter().map(|a| a as u32).collect();
            FlagParabolic {
                flag: flag.iter().map(|&i| proper[i]).collect(),
                subgroup: g.subgroup_from_sorted_unchecked(elems),
            }
        })
        .collect();
    Ok((all, out))
}

/// Proper parabolic subgroups ordered by inclusion, with the conjugation
/// action of the group generators.
pub fn parabolic_poset(g: &Group) -> Result<(Poset, Vec<FlagParabolic>)> {
    let (_, ps) = parabolics(g)?;
    let index: FxHashMap<&Subgroup, usize> = ps
        .iter()
        .enumerate()
        .map(|(i, p)| (&p.subgroup, i))
        .collect();
    if index.len() != ps.len() {
        return Err(Error::contract("two flags have the same stabilizer"));
    }
    let labels = ps
        .iter()
        .map(|p| format!("P{:?}|{}", p.flag, p.subgroup.order()))
        .collect();
    let poset = Poset::from_relation(labels, |i, j| {
        ps[i].subgroup.is_subgroup_of(&ps[j].subgroup)
    });
    let action = g
        .generators()
        .iter()
        .map(|&s| {
            ps.iter()
                .map(|p| {
                    let c = g.conjugate(&p.subgroup, s);
                    index
                        .get(&c)
                        .map(|&i| i as u32)
                        .ok_or_else(|| Error::contract("conjugate parabolic missing"))
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((poset.with_action(action), ps))
}

/// Barycentric subdivision of the Tits building: the order complex of the
/// opposite parabolic poset.
pub fn tits_building(g: &Group) -> Result<SimplicialComplex> {
    let (p, _) = parabolic_poset(g)?;
    Ok(order_complex(&p.opposite()))
}
