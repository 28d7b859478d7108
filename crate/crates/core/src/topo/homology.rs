use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::snf::{smith_decomposition, IntMatrix};
use super::SimplicialComplex;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: i64,
    pub betti: usize,
    /// Invariant factors greater than 1.
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Integral homology, one entry per degree from `-1` (reduced) or `0` up
/// to the dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Homology {
    pub reduced: bool,
    pub groups: Vec<HomologyGroup>,
}

impl Homology {
    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    pub fn degree(&self, k: i64) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| g.degree == k)
    }

    pub fn betti(&self, k: i64) -> usize {
        self.degree(k).map_or(0, |g| g.betti)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    /// Nonzero groups only, so complexes of different dimension with the
    /// same homology compare equal.
    pub fn nonzero(&self) -> Vec<&HomologyGroup> {
        self.groups.iter().filter(|g| !g.is_zero()).collect()
    }

    pub fn same_groups(&self, other: &Homology) -> bool {
        self.reduced == other.reduced && self.nonzero() == other.nonzero()
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = if self.reduced { "H~" } else { "H" };
        let parts: Vec<String> = self
            .nonzero()
            .into_iter()
            .map(|g| {
                let mut terms = Vec::new();
                match g.betti {
                    0 => {}
                    1 => terms.push("Z".to_string()),
                    b => terms.push(format!("Z^{b}")),
                }
                terms.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
                format!("{h}{} = {}", g.degree, terms.join(" + "))
            })
            .collect();
        if parts.is_empty() {
            write!(f, "{h}* = 0")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

type SparseColumns = Vec<Vec<(usize, i64)>>;

/// Boundary map from `k`-simplices to `(k-1)`-simplices as sparse columns;
/// `k = 0` gives the augmentation.
fn boundary(c: &SimplicialComplex, k: usize) -> SparseColumns {
    if k == 0 {
        return (0..c.count(0)).map(|_| vec![(0, 1)]).collect();
    }
    let index: FxHashMap<&[u32], usize> = c.simplices[k - 1]
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    c.simplices[k]
        .iter()
        .map(|s| {
            let mut face = Vec::with_capacity(s.len() - 1);
            (0..s.len())
                .map(|skip| {
                    face.clear();
                    face.extend(
                        s.iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &v)| v),
                    );
                    let sign = if skip % 2 == 0 { 1 } else { -1 };
                    (index[face.as_slice()], sign)
                })
                .collect()
        })
        .collect()
}

fn dense(cols: &SparseColumns, rows: usize) -> IntMatrix {
    let mut m = IntMatrix::zero(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for &(i, x) in col {
            m.set(i, j, x);
        }
    }
    m
}

fn compose_is_zero(lower: &SparseColumns, upper: &SparseColumns) -> bool {
    upper.iter().all(|col| {
        let mut acc: FxHashMap<usize, i64> = FxHashMap::default();
        for &(mid, x) in col {
            for &(r, y) in &lower[mid] {
                *acc.entry(r).or_default() += x * y;
            }
        }
        acc.values().all(|&v| v == 0)
    })
}

/// Integral (reduced) homology through Smith normal forms of the boundary
/// matrices. Checks `d d = 0`, every decomposition, and the Euler
/// characteristic.
pub fn homology(c: &SimplicialComplex, reduced: bool) -> Result<Homology> {
    let top = c.simplices.len();
    let lo: i64 = if reduced { -1 } else { 0 };
    // maps d_k for k = lo+1 ..= top-1, keyed by source degree k
    let first = if reduced { 0 } else { 1 };
    let maps: Vec<(usize, SparseColumns)> = (first..top).map(|k| (k, boundary(c, k))).collect();
    for w in maps.windows(2) {
        if !compose_is_zero(&w[0].1, &w[1].1) {
            return Err(Error::contract(format!(
                "boundary of boundary is nonzero in degree {}",
                w[1].0
            )));
        }
    }
    let count = |k: i64| -> usize {
        if k < 0 {
            1
        } else {
            c.count(k as usize)
        }
    };
    let forms: Vec<(usize, Vec<u64>)> = maps
        .par_iter()
        .map(|(k, cols)| {
            let rows = count(*k as i64 - 1);
            let d = smith_decomposition(&dense(cols, rows))?;
            Ok((d.rank(), d.invariant_factors()))
        })
        .collect::<Result<_>>()?;
    // rank and factors of d_k, indexed by k - lo
    let span = (top as i64 - lo) as usize;
    let mut rank = vec![0usize; span + 1];
    let mut factors: Vec<Vec<u64>> = vec![Vec::new(); span + 1];
    for ((k, _), (r, f)) in maps.iter().zip(forms) {
        let idx = (*k as i64 - lo) as usize;
        rank[idx] = r;
        factors[idx] = f;
    }
    let mut groups = Vec::new();
    if top == 0 && !reduced {
        return Ok(Homology { reduced, groups });
    }
    for k in lo..top as i64 {
        let idx = (k - lo) as usize;
        let betti = count(k) - rank[idx] - rank[idx + 1];
        let torsion = factors[idx + 1]
            .iter()
            .copied()
            .filter(|&t| t > 1)
            .collect();
        groups.push(HomologyGroup {
            degree: k,
            betti,
            torsion,
        });
    }
    let chi_chains: i64 = (lo..top as i64)
        .map(|k| {
            if k.rem_euclid(2) == 0 {
                count(k) as i64
            } else {
                -(count(k) as i64)
            }
        })
        .sum();
    let chi_betti: i64 = groups
        .iter()
        .map(|g| {
            if g.degree.rem_euclid(2) == 0 {
                g.betti as i64
            } else {
                -(g.betti as i64)
            }
        })
        .sum();
    if chi_chains != chi_betti {
        return Err(Error::contract("Euler characteristic mismatch"));
    }
    Ok(Homology { reduced, groups })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_and_disk() {
        let circle = SimplicialComplex::simplex_boundary(2);
        let h = homology(&circle, true).unwrap();
        assert_eq!(h.betti_numbers(), vec![0, 0, 1]);
        let disk = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]);
        assert!(homology(&disk, true).unwrap().is_zero());
        let unreduced = homology(&disk, false).unwrap();
        assert_eq!(unreduced.betti_numbers(), vec![1, 0, 0]);
    }

    #[test]
    fn empty_complex() {
        let empty = SimplicialComplex::from_facets(0, &[]);
        let h = homology(&empty, true).unwrap();
        assert_eq!(h.betti_numbers(), vec![1]);
        assert!(homology(&empty, false).unwrap().groups.is_empty());
    }

    #[test]
    fn projective_plane_has_torsion() {
        // six-vertex triangulation of the real projective plane
        let facets: Vec<Vec<u32>> = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ]
        .iter()
        .map(|f| f.to_vec())
        .collect();
        let rp2 = SimplicialComplex::from_facets(6, &facets);
        let h = homology(&rp2, false).unwrap();
        assert_eq!(h.betti_numbers(), vec![1, 0, 0]);
        assert_eq!(h.degree(1).unwrap().torsion, vec![2]);
        assert_eq!(h.to_string(), "H0 = Z, H1 = Z/2");
    }
}
