use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A finite poset given by its order matrix, optionally with a group
/// action as one vertex permutation per acting generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poset {
    labels: Vec<String>,
    /// `leq[i]` holds `j` iff `i <= j`.
    leq: Vec<BitSet>,
    action: Option<Vec<Vec<u32>>>,
}

impl Poset {
    pub fn new(labels: Vec<String>, leq: Vec<BitSet>) -> Poset {
        assert_eq!(labels.len(), leq.len());
        Poset {
            labels,
            leq,
            action: None,
        }
    }

    /// Builds the order matrix from a relation; reflexivity is added.
    pub fn from_relation(labels: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Poset {
        let n = labels.len();
        let leq = (0..n)
            .map(|i| BitSet::from_indices(n, (0..n).filter(|&j| i == j || le(i, j))))
            .collect();
        Poset::new(labels, leq)
    }

    /// A chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Poset {
        Poset::from_relation((0..n).map(|i| i.to_string()).collect(), |i, j| i <= j)
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_relation((0..n).map(|i| i.to_string()).collect(), |i, j| i == j)
    }

    pub fn with_action(mut self, action: Vec<Vec<u32>>) -> Poset {
        self.action = Some(action);
        self
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i].contains(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    pub fn up_set(&self, i: usize) -> &BitSet {
        &self.leq[i]
    }

    pub fn down_set(&self, i: usize) -> BitSet {
        BitSet::from_indices(self.len(), (0..self.len()).filter(|&j| self.le(j, i)))
    }

    pub fn action(&self) -> Option<&[Vec<u32>]> {
        self.action.as_deref()
    }

    /// Checks the partial-order axioms and that the action is by order
    /// automorphisms.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.le(i, i) {
                return Err(Error::contract(format!(
                    "not reflexive at {}",
                    self.labels[i]
                )));
            }
            for j in self.leq[i].iter() {
                if j != i && self.le(j, i) {
                    return Err(Error::contract(format!(
                        "not antisymmetric: {} and {}",
                        self.labels[i], self.labels[j]
                    )));
                }
                if !self.leq[j].is_subset(&self.leq[i]) {
                    return Err(Error::contract(format!(
                        "not transitive through {}",
                        self.labels[j]
                    )));
                }
            }
        }
        if let Some(action) = &self.action {
            for perm in action {
                if perm.len() != n {
                    return Err(Error::contract("action permutation has the wrong length"));
                }
                let mut seen = BitSet::new(n);
                for &p in perm {
                    if p as usize >= n || !seen.insert(p as usize) {
                        return Err(Error::contract("action map is not a permutation"));
                    }
                }
                for i in 0..n {
                    for j in self.leq[i].iter() {
                        if !self.le(perm[i] as usize, perm[j] as usize) {
                            return Err(Error::contract(format!(
                                "action does not preserve {} <= {}",
                                self.labels[i], self.labels[j]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Same elements, reversed order, same action.
    pub fn opposite(&self) -> Poset {
        let n = self.len();
        let mut leq: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for (i, row) in self.leq.iter().enumerate() {
            for j in row.iter() {
                leq[j].insert(i);
            }
        }
        Poset {
            labels: self.labels.clone(),
            leq,
            action: self.action.clone(),
        }
    }

    /// Induced subposet on `keep` (in the given order), without action.
    pub fn subposet(&self, keep: &[usize]) -> Poset {
        let m = keep.len();
        let leq = keep
            .iter()
            .map(|&i| BitSet::from_indices(m, (0..m).filter(|&b| self.le(i, keep[b]))))
            .collect();
        Poset {
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            leq,
            action: None,
        }
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.leq[i].count() == self.len())
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.le(j, i)))
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.leq[i].count() == 1)
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| j == i || !self.le(j, i)))
            .collect()
    }

    /// Whether `f: self -> other` preserves order; returns a violating pair.
    pub fn monotone_violation(&self, other: &Poset, f: &[usize]) -> Option<(usize, usize)> {
        for i in 0..self.len() {
            for j in self.leq[i].iter() {
                if !other.le(f[i], f[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Whether `f` is an order isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &Poset, f: &[usize]) -> bool {
        if self.len() != other.len() || f.len() != self.len() {
            return false;
        }
        let mut seen = BitSet::new(other.len());
        if !f.iter().all(|&y| y < other.len() && seen.insert(y)) {
            return false;
        }
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.le(i, j) == other.le(f[i], f[j])))
    }
}

/// Checks `f(g.x) = g.f(x)` for every acting generator; returns the first
/// violation as `(generator, x)`.
pub fn equivariance_check(
    source: &Poset,
    target: &Poset,
    f: &[usize],
) -> std::result::Result<(), (usize, usize)> {
    let (Some(a), Some(b)) = (source.action(), target.action()) else {
        return Ok(());
    };
    assert_eq!(a.len(), b.len(), "actions use different generator lists");
    for (g, (pa, pb)) in a.iter().zip(b).enumerate() {
        for x in 0..source.len() {
            if f[pa[x] as usize] != pb[f[x]] as usize {
                return Err((g, x));
            }
        }
    }
    Ok(())
}
