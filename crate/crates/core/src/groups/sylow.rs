use std::collections::VecDeque;

use rustc_hash::{FxHashMap, FxHashSet};

use super::{Group, Subgroup};

/// One conjugacy class of subgroups under an ambient subgroup.
///
/// `members[0]` is the representative (the least member in canonical order)
/// and every entry `(h, g)` satisfies `rep^g = h`. Members are sorted.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub members: Vec<(Subgroup, u32)>,
}

impl SubgroupClass {
    pub fn rep(&self) -> &Subgroup {
        &self.members[0].0
    }
}

pub(crate) fn ambient_generators(g: &Group, ambient: &Subgroup) -> Vec<u32> {
    if ambient.order() == g.order() {
        g.generators().to_vec()
    } else {
        g.generators_of(ambient).to_vec()
    }
}

/// Orbit of `h` under conjugation by the group generated by `gens`, with
/// a conjugator for each member.
pub(crate) fn conjugacy_orbit(g: &Group, h: &Subgroup, gens: &[u32]) -> Vec<(Subgroup, u32)> {
    let mut seen: FxHashSet<Subgroup> = FxHashSet::default();
    seen.insert(h.clone());
    let mut out = vec![(h.clone(), 0u32)];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (cur, c) = out[i].clone();
        for &s in gens {
            let next = g.conjugate(&cur, s);
            if seen.insert(next.clone()) {
                out.push((next, g.mul(c, s)));
                queue.push_back(out.len() - 1);
            }
        }
    }
    out
}

fn ell_power(mut n: u64, ell: u64) -> u64 {
    let mut p = 1;
    while n.is_multiple_of(ell) {
        n /= ell;
        p *= ell;
    }
    p
}

/// A Sylow `ell`-subgroup of `ambient`, grown from the trivial group by
/// adjoining `ell`-elements of the normalizer.
pub fn sylow_subgroup(g: &Group, ambient: &Subgroup, ell: u64) -> Subgroup {
    let target = ell_power(ambient.order() as u64, ell) as usize;
    let mut p = g.trivial();
    while p.order() < target {
        let n = g.normalizer_in(ambient, &p);
        let x = n
            .elements()
            .iter()
            .copied()
            .filter(|&x| !p.contains(x))
            .map(|x| {
                // ell-part of x
                let o = g.elem_order(x) as u64;
                g.pow(x, (o / ell_power(o, ell)) as i64)
            })
            .find(|&y| y != 0 && !p.contains(y))
            .expect("a non-Sylow ell-subgroup has ell-elements in its normalizer quotient");
        let mut gens = g.generators_of(&p).to_vec();
        gens.push(x);
        p = g.closure(&gens);
    }
    p
}

/// All subgroups of the `ell`-group `p`, trivial group included.
fn subgroups_of_ell_group(g: &Group, p: &Subgroup) -> Vec<Subgroup> {
    let mut seen: FxHashSet<Subgroup> = FxHashSet::default();
    let mut list = vec![g.trivial()];
    seen.insert(list[0].clone());
    let mut i = 0;
    while i < list.len() {
        let h = list[i].clone();
        let n = g.normalizer_in(p, &h);
        for &x in n.elements() {
            if h.contains(x) {
                continue;
            }
            let mut gens = g.generators_of(&h).to_vec();
            gens.push(x);
            let k = g.closure(&gens);
            if seen.insert(k.clone()) {
                list.push(k);
            }
        }
        i += 1;
    }
    list
}

/// Conjugacy classes (under `ambient`) of the nontrivial `ell`-subgroups of
/// `ambient`, sorted by representative.
pub fn ell_subgroup_classes(g: &Group, ambient: &Subgroup, ell: u64) -> Vec<SubgroupClass> {
    if !(ambient.order() as u64).is_multiple_of(ell) {
        return Vec::new();
    }
    let p = sylow_subgroup(g, ambient, ell);
    let mut local = subgroups_of_ell_group(g, &p);
    local.sort();
    let gens = ambient_generators(g, ambient);
    let mut covered: FxHashSet<Subgroup> = FxHashSet::default();
    let mut classes = Vec::new();
    for h in local.into_iter().filter(|h| !h.is_trivial()) {
        if covered.contains(&h) {
            continue;
        }
        let orbit = conjugacy_orbit(g, &h, &gens);
        // re-root at the least member
        let (ri, _) = orbit
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .0.cmp(&b.1 .0))
            .unwrap();
        let back = g.inv(orbit[ri].1);
        let mut members: Vec<(Subgroup, u32)> = orbit
            .iter()
            .map(|(k, c)| (k.clone(), g.mul(back, *c)))
            .collect();
        members.sort_by(|a, b| a.0.cmp(&b.0));
        for (k, _) in &members {
            covered.insert(k.clone());
        }
        classes.push(SubgroupClass { members });
    }
    classes.sort_by(|a, b| a.rep().cmp(b.rep()));
    classes
}

/// All nontrivial `ell`-subgroups of `g`, each once, in canonical order.
pub fn enumerate_ell_subgroups(g: &Group, ell: u64) -> Vec<Subgroup> {
    let mut all: Vec<Subgroup> = ell_subgroup_classes(g, &g.whole(), ell)
        .into_iter()
        .flat_map(|c| c.members.into_iter().map(|m| m.0))
        .collect();
    all.sort();
    all
}

/// Some `x` in `ambient` with `h1^x = h2`.
pub fn subgroup_conjugacy(
    g: &Group,
    ambient: &Subgroup,
    h1: &Subgroup,
    h2: &Subgroup,
) -> Option<u32> {
    if h1.order() != h2.order() {
        return None;
    }
    if h1 == h2 {
        return Some(0);
    }
    let gens = ambient_generators(g, ambient);
    let mut seen: FxHashMap<Subgroup, u32> = FxHashMap::default();
    seen.insert(h1.clone(), 0);
    let mut queue = VecDeque::from([h1.clone()]);
    while let Some(cur) = queue.pop_front() {
        let c = seen[&cur];
        for &s in &gens {
            let next = g.conjugate(&cur, s);
            if !seen.contains_key(&next) {
                let cn = g.mul(c, s);
                if &next == h2 {
                    return Some(cn);
                }
                seen.insert(next.clone(), cn);
                queue.push_back(next);
            }
        }
    }
    None
}
