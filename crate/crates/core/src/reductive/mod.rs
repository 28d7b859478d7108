//! Finite general and special linear groups: flags, parabolic subgroups and
//! the Tits building, defining-characteristic data, the admissible-prime
//! predicate and `e`-split Levi subgroups.

mod building;
mod levi;

pub use building::{
    parabolic_poset, parabolics, subspaces, tits_building, FlagParabolic, Subspace,
};
pub use levi::{
    enumerate_esplit_levis, minimal_esplit_containing, EmbeddedLevi, LeviContainment, LeviType,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{gcd, multiplicative_order, Fe};
use crate::groups::{prime_power, Group, GroupSpec, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    GL,
    SL,
}

/// `GL_n(q)` or `SL_n(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReductiveSpec {
    pub family: Family,
    pub n: usize,
    pub q: u32,
}

impl fmt::Display for ReductiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}_{}({})", self.family, self.n, self.q)
    }
}

impl ReductiveSpec {
    pub fn new(family: Family, n: usize, q: u32) -> Result<ReductiveSpec> {
        if prime_power(q).is_none() {
            return Err(Error::MalformedSpec(format!("q={q} is not a prime power")));
        }
        if n == 0 {
            return Err(Error::MalformedSpec("rank must be positive".into()));
        }
        Ok(ReductiveSpec { family, n, q })
    }

    pub fn from_group_spec(spec: &GroupSpec) -> Option<ReductiveSpec> {
        match *spec {
            GroupSpec::GL { n, q } => ReductiveSpec::new(Family::GL, n, q).ok(),
            GroupSpec::SL { n, q } => ReductiveSpec::new(Family::SL, n, q).ok(),
            _ => None,
        }
    }

    pub fn group_spec(&self) -> GroupSpec {
        match self.family {
            Family::GL => GroupSpec::GL {
                n: self.n,
                q: self.q,
            },
            Family::SL => GroupSpec::SL {
                n: self.n,
                q: self.q,
            },
        }
    }

    pub fn characteristic(&self) -> u32 {
        prime_power(self.q).unwrap().0
    }

    pub fn order(&self) -> u128 {
        let q = self.q as u128;
        let qn = q.pow(self.n as u32);
        let gl: u128 = (0..self.n).map(|i| qn - q.pow(i as u32)).product();
        match self.family {
            Family::GL => gl,
            Family::SL => gl / (q - 1),
        }
    }

    /// `|Z(G^F)|`.
    pub fn center_order(&self) -> u64 {
        match self.family {
            Family::GL => self.q as u64 - 1,
            Family::SL => gcd(self.n as u64, self.q as u64 - 1),
        }
    }

    /// `|Z(G_sc)^F|`, the centre of `SL_n(q)` in both families.
    pub fn sc_center_order(&self) -> u64 {
        gcd(self.n as u64, self.q as u64 - 1)
    }

    /// `|Z(G)^F : Z°(G)^F|`: trivial for `GL` (connected centre), the whole
    /// finite centre for `SL`.
    pub fn center_component_index(&self) -> u64 {
        match self.family {
            Family::GL => 1,
            Family::SL => gcd(self.n as u64, self.q as u64 - 1),
        }
    }

    /// The same index for the dual group: `GL` is self-dual and the dual of
    /// `SL` is `PGL`, whose centre is trivial.
    pub fn dual_center_component_index(&self) -> u64 {
        1
    }
}

/// Builds the group and checks its order and centre against the formulas.
pub fn build_reductive(spec: &ReductiveSpec, cap: usize) -> Result<Group> {
    let g = Group::from_spec(&spec.group_spec(), cap)?;
    if g.order() as u128 != spec.order() {
        return Err(Error::contract(format!(
            "{spec} has order {} not {}",
            g.order(),
            spec.order()
        )));
    }
    let z = g.center(&g.whole());
    if z.order() as u64 != spec.center_order() {
        return Err(Error::contract(format!(
            "{spec} has centre of order {}",
            z.order()
        )));
    }
    Ok(g)
}

/// Flags deciding whether `ell` is admissible for the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeContext {
    pub ell: u64,
    /// Multiplicative order of `q` modulo `ell`.
    pub e: u64,
    pub good: bool,
    pub odd: bool,
    pub coprime_to_q: bool,
    pub coprime_to_sc_center: bool,
    /// No triality component; always true in type A.
    pub no_triality: bool,
    pub coprime_to_center_index: bool,
    pub coprime_to_dual_center_index: bool,
    pub coprime_to_center: bool,
}

impl PrimeContext {
    pub fn in_pi_prime(&self) -> bool {
        self.good && self.odd && self.coprime_to_q && self.coprime_to_sc_center && self.no_triality
    }

    pub fn in_pi(&self) -> bool {
        self.in_pi_prime() && self.coprime_to_center_index && self.coprime_to_dual_center_index
    }

    /// Admissible and prime to `|Z(G^F)|`.
    pub fn theorem_a_applies(&self) -> bool {
        self.in_pi() && self.coprime_to_center
    }
}

pub fn prime_context(spec: &ReductiveSpec, ell: u64) -> Result<PrimeContext> {
    crate::groups::check_prime(ell)?;
    if ell == spec.characteristic() as u64 {
        return Err(Error::Precondition(format!(
            "ell = {ell} is the defining characteristic"
        )));
    }
    let e = multiplicative_order(spec.q as u64 % ell, ell).expect("q is prime to ell");
    Ok(PrimeContext {
        ell,
        e,
        good: true,
        odd: ell != 2,
        coprime_to_q: !(spec.q as u64).is_multiple_of(ell),
        coprime_to_sc_center: !spec.sc_center_order().is_multiple_of(ell),
        no_triality: true,
        coprime_to_center_index: !spec.center_component_index().is_multiple_of(ell),
        coprime_to_dual_center_index: !spec.dual_center_component_index().is_multiple_of(ell),
        coprime_to_center: !spec.center_order().is_multiple_of(ell),
    })
}

/// Upper unitriangular matrices of a matrix group.
pub fn unitriangular(g: &Group) -> Result<Subgroup> {
    let n = g
        .matrix_dim()
        .ok_or_else(|| Error::Precondition("not a matrix group".into()))?;
    let elems: Vec<u32> = g
        .elements()
        .filter(|&a| {
            let m = g.matrix(a).unwrap();
            (0..n).all(|i| m.get(i, i) == Fe::ONE && (0..i).all(|j| m.get(i, j).is_zero()))
        })
        .collect();
    g.subgroup(&elems)
}

/// The unitriangular Sylow `p`-subgroup `U` and whether
/// `C_G(U) = Z(G) Z(U)` holds exactly.
pub fn defining_char_data(g: &Group) -> Result<(Subgroup, bool)> {
    let u = unitriangular(g)?;
    let c = g.centralizer_of(&g.whole(), &u);
    let zg = g.center(&g.whole());
    let zu = g.center(&u);
    Ok((u.clone(), c == g.join(&zg, &zu)))
}

#[cfg(test)]
mod tests;
