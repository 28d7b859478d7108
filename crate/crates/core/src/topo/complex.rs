use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use super::Poset;
use crate::error::{Error, Result};

/// A finite abstract simplicial complex. `simplices[k]` lists the
/// `k`-simplices as sorted vertex tuples, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub num_vertices: usize,
    pub simplices: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    /// The complex generated by `facets` (all their faces are added).
    pub fn from_facets(num_vertices: usize, facets: &[Vec<u32>]) -> SimplicialComplex {
        let mut all: FxHashSet<Vec<u32>> = FxHashSet::default();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                all.insert(
                    (0..k)
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| f[i])
                        .collect(),
                );
            }
        }
        SimplicialComplex::from_simplices(num_vertices, all)
    }

    fn from_simplices(
        num_vertices: usize,
        all: impl IntoIterator<Item = Vec<u32>>,
    ) -> SimplicialComplex {
        let mut simplices: Vec<Vec<Vec<u32>>> = Vec::new();
        for s in all {
            let d = s.len() - 1;
            if simplices.len() <= d {
                simplices.resize(d + 1, Vec::new());
            }
            simplices[d].push(s);
        }
        for level in &mut simplices {
            level.sort_unstable();
        }
        SimplicialComplex {
            num_vertices,
            simplices,
        }
    }

    /// Boundary of the standard `n`-simplex on `n + 1` vertices.
    pub fn simplex_boundary(n: usize) -> SimplicialComplex {
        let facets: Vec<Vec<u32>> = (0..=n as u32)
            .map(|skip| (0..=n as u32).filter(|&v| v != skip).collect())
            .collect();
        SimplicialComplex::from_facets(n + 1, &facets)
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn total(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, s)| {
                if k % 2 == 0 {
                    s.len() as i64
                } else {
                    -(s.len() as i64)
                }
            })
            .sum()
    }

    /// Checks that every face of a simplex is present.
    pub fn check_closed(&self) -> Result<()> {
        for k in 1..self.simplices.len() {
            let below: FxHashSet<&[u32]> =
                self.simplices[k - 1].iter().map(Vec::as_slice).collect();
            for s in &self.simplices[k] {
                for skip in 0..s.len() {
                    let face: Vec<u32> = s
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    if !below.contains(face.as_slice()) {
                        return Err(Error::contract(format!(
                            "face {face:?} of {s:?} is missing"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The order complex: `k`-simplices are chains of `k + 1` elements.
pub fn order_complex(p: &Poset) -> SimplicialComplex {
    order_complex_bounded(p, usize::MAX).expect("unbounded")
}

/// The order complex, or `None` once more than `max_simplices` chains
/// have been found.
pub fn order_complex_bounded(p: &Poset, max_simplices: usize) -> Option<SimplicialComplex> {
    let n = p.len();
    let above: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            p.up_set(i)
                .iter()
                .filter(|&j| j != i)
                .map(|j| j as u32)
                .collect()
        })
        .collect();
    let mut chains: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<Vec<u32>> = (0..n as u32).rev().map(|v| vec![v]).collect();
    while let Some(c) = stack.pop() {
        let top = *c.last().unwrap() as usize;
        for &w in above[top].iter().rev() {
            let mut next = c.clone();
            next.push(w);
            stack.push(next);
        }
        chains.push(c);
        if chains.len() > max_simplices {
            return None;
        }
    }
    for c in &mut chains {
        c.sort_unstable();
    }
    Some(SimplicialComplex::from_simplices(n, chains))
}
