use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{homology, order_complex_bounded, Poset};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Fibers with at most this many simplices get their homology recomputed
/// as a cross-check of the certificate.
pub const HOMOLOGY_CHECK_LIMIT: usize = 200;

static CHECK_LIMIT: AtomicUsize = AtomicUsize::new(HOMOLOGY_CHECK_LIMIT);

/// Overrides [`HOMOLOGY_CHECK_LIMIT`] for the rest of the process.
pub fn set_homology_check_limit(n: usize) {
    CHECK_LIMIT.store(n, Ordering::Relaxed);
}

pub fn homology_check_limit() -> usize {
    CHECK_LIMIT.load(Ordering::Relaxed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Minimum,
    Maximum,
    Conical,
}

/// Contraction data for a poset: a minimum, a maximum, or an element `x0`
/// with a monotone `j` satisfying `x <= j(x) >= x0` for all `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub witness: usize,
    pub map: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub element: usize,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn violation(p: &Poset, x: usize, what: &str) -> Violation {
    Violation {
        element: x,
        message: format!("{what} at {}", p.label(x)),
    }
}

pub fn minimum_certificate(p: &Poset, x0: usize) -> std::result::Result<Certificate, Violation> {
    if let Some(x) = (0..p.len()).find(|&x| !p.le(x0, x)) {
        return Err(violation(p, x, "not above the proposed minimum"));
    }
    Ok(Certificate {
        kind: CertificateKind::Minimum,
        witness: x0,
        map: None,
    })
}

pub fn maximum_certificate(p: &Poset, x0: usize) -> std::result::Result<Certificate, Violation> {
    if let Some(x) = (0..p.len()).find(|&x| !p.le(x, x0)) {
        return Err(violation(p, x, "not below the proposed maximum"));
    }
    Ok(Certificate {
        kind: CertificateKind::Maximum,
        witness: x0,
        map: None,
    })
}

/// Checks `j` monotone with `x <= j(x) >= x0`; when the poset carries an
/// action, also that `x0` is fixed and `j` commutes with it.
pub fn conical_certificate(
    p: &Poset,
    x0: usize,
    j: &[usize],
) -> std::result::Result<Certificate, Violation> {
    let n = p.len();
    if j.len() != n || x0 >= n {
        return Err(Violation {
            element: x0,
            message: "conical data has the wrong size".into(),
        });
    }
    for x in 0..n {
        if j[x] >= n {
            return Err(violation(p, x, "map leaves the poset"));
        }
        if !p.le(x, j[x]) {
            return Err(violation(p, x, "x <= j(x) fails"));
        }
        if !p.le(x0, j[x]) {
            return Err(violation(p, x, "x0 <= j(x) fails"));
        }
        for y in p.up_set(x).iter() {
            if !p.le(j[x], j[y]) {
                return Err(violation(p, x, "j is not monotone"));
            }
        }
    }
    if let Some(action) = p.action() {
        for perm in action {
            if perm[x0] as usize != x0 {
                return Err(violation(p, x0, "x0 is not fixed by the action"));
            }
            if let Some(x) = (0..n).find(|&x| j[perm[x] as usize] != perm[j[x]] as usize) {
                return Err(violation(p, x, "j does not commute with the action"));
            }
        }
    }
    Ok(Certificate {
        kind: CertificateKind::Conical,
        witness: x0,
        map: Some(j.to_vec()),
    })
}

pub fn check_certificate(p: &Poset, c: &Certificate) -> std::result::Result<(), Violation> {
    match c.kind {
        CertificateKind::Minimum => minimum_certificate(p, c.witness).map(|_| ()),
        CertificateKind::Maximum => maximum_certificate(p, c.witness).map(|_| ()),
        CertificateKind::Conical => {
            let j = c.map.as_deref().unwrap_or(&[]);
            conical_certificate(p, c.witness, j).map(|_| ())
        }
    }
}

/// Tries a minimum, then a maximum, then the supplied conical data.
pub fn find_certificate(p: &Poset, conical: Option<(usize, &[usize])>) -> Option<Certificate> {
    if let Some(m) = p.minimum() {
        return Some(Certificate {
            kind: CertificateKind::Minimum,
            witness: m,
            map: None,
        });
    }
    if let Some(m) = p.maximum() {
        return Some(Certificate {
            kind: CertificateKind::Maximum,
            witness: m,
            map: None,
        });
    }
    conical.and_then(|(x0, j)| conical_certificate(p, x0, j).ok())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FiberMode {
    /// Fiber over `y` is `f^-1(T_{>=y})`.
    Over,
    /// Fiber over `y` is `f^-1(T_{<=y})`.
    Under,
}

/// A certificate recorded against source indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCertificate {
    pub kind: CertificateKind,
    pub witness: usize,
    pub witness_label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberEntry {
    pub target: usize,
    pub target_label: String,
    /// Source indices of the fiber, ascending.
    pub members: Vec<usize>,
    pub certificate: Option<FiberCertificate>,
    /// Whether reduced homology was recomputed (and found zero).
    pub homology_checked: bool,
    /// Set on orbit representatives when an action is present.
    pub stabilizer_invariant: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub mode: FiberMode,
    pub fibers: Vec<FiberEntry>,
    pub equivariant: Option<bool>,
    pub pass: bool,
}

impl FiberReport {
    pub fn failures(&self) -> impl Iterator<Item = &FiberEntry> {
        self.fibers
            .iter()
            .filter(|f| f.certificate.is_none() || f.stabilizer_invariant == Some(false))
    }
}

/// Conical data for a fiber: given the target and the fiber's source
/// indices, returns `x0` and `j` as source indices (`j[i]` is the image of
/// `members[i]`).
pub type ConicalProvider<'a> = dyn Fn(usize, &[usize]) -> Option<(usize, Vec<usize>)> + Sync + 'a;

fn compose(outer: &[u32], inner: &[u32]) -> Vec<u32> {
    inner.iter().map(|&x| outer[x as usize]).collect()
}

fn invert(p: &[u32]) -> Vec<u32> {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

/// Schreier generators of the stabilizer of `y`, as pairs of permutations
/// (source, target), together with the orbit of `y`.
fn stabilizer_generators(
    source_action: &[Vec<u32>],
    target_action: &[Vec<u32>],
    y: usize,
) -> (Vec<usize>, Vec<Vec<u32>>) {
    let ns = source_action.first().map_or(0, Vec::len);
    let nt = target_action.first().map_or(0, Vec::len);
    let ident = |n: usize| (0..n as u32).collect::<Vec<u32>>();
    let mut transversal: Vec<Option<(Vec<u32>, Vec<u32>)>> = vec![None; nt];
    transversal[y] = Some((ident(ns), ident(nt)));
    let mut orbit = vec![y];
    let mut i = 0;
    while i < orbit.len() {
        let z = orbit[i];
        let (ts, tt) = transversal[z].clone().unwrap();
        for (gs, gt) in source_action.iter().zip(target_action) {
            let w = gt[z] as usize;
            if transversal[w].is_none() {
                transversal[w] = Some((compose(gs, &ts), compose(gt, &tt)));
                orbit.push(w);
            }
        }
        i += 1;
    }
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut seen = rustc_hash::FxHashSet::default();
    for &z in &orbit {
        let (ts, _) = transversal[z].as_ref().unwrap();
        for (gs, gt) in source_action.iter().zip(target_action) {
            let w = gt[z] as usize;
            let (ws, _) = transversal[w].as_ref().unwrap();
            let s = compose(&invert(ws), &compose(gs, ts));
            if s.iter().enumerate().any(|(i, &x)| i as u32 != x) && seen.insert(s.clone()) {
                gens.push(s);
            }
        }
    }
    (orbit, gens)
}

/// Quillen fiber check for a monotone `f: source -> target`.
pub fn quillen_fiber_check(
    source: &Poset,
    target: &Poset,
    f: &[usize],
    mode: FiberMode,
    conical: Option<&ConicalProvider<'_>>,
) -> Result<FiberReport> {
    if f.len() != source.len() || f.iter().any(|&y| y >= target.len()) {
        return Err(Error::Precondition(
            "map does not land in the target poset".into(),
        ));
    }
    if let Some((a, b)) = source.monotone_violation(target, f) {
        return Err(Error::Precondition(format!(
            "map is not monotone: {} <= {} but {} and {} are not in order",
            source.label(a),
            source.label(b),
            target.label(f[a]),
            target.label(f[b])
        )));
    }
    let equivariant = match (source.action(), target.action()) {
        (Some(_), Some(_)) => Some(super::equivariance_check(source, target, f).is_ok()),
        _ => None,
    };
    // orbit representatives get the stabilizer check
    let mut stab: Vec<Option<Vec<Vec<u32>>>> = vec![None; target.len()];
    if let (Some(sa), Some(ta), Some(true)) = (source.action(), target.action(), equivariant) {
        let mut covered = BitSet::new(target.len());
        for y in 0..target.len() {
            if covered.contains(y) {
                continue;
            }
            let (orbit, gens) = stabilizer_generators(sa, ta, y);
            for z in orbit {
                covered.insert(z);
            }
            stab[y] = Some(gens);
        }
    }
    let fibers: Vec<FiberEntry> = (0..target.len())
        .into_par_iter()
        .map(|y| {
            let members: Vec<usize> = (0..source.len())
                .filter(|&x| match mode {
                    FiberMode::Over => target.le(y, f[x]),
                    FiberMode::Under => target.le(f[x], y),
                })
                .collect();
            let fiber = source.subposet(&members);
            let pos = |x: usize| members.binary_search(&x).ok();
            let data = conical.and_then(|c| c(y, &members)).and_then(|(x0, j)| {
                let x0 = pos(x0)?;
                let j: Option<Vec<usize>> = j.iter().map(|&x| pos(x)).collect();
                Some((x0, j?))
            });
            let cert = find_certificate(&fiber, data.as_ref().map(|(x0, j)| (*x0, j.as_slice())));
            let mut homology_checked = false;
            if cert.is_some() {
                if let Some(cx) = order_complex_bounded(&fiber, homology_check_limit()) {
                    if !homology(&cx, true)?.is_zero() {
                        return Err(Error::contract(format!(
                            "certified fiber over {} has nonzero homology",
                            target.label(y)
                        )));
                    }
                    homology_checked = true;
                }
            }
            let stabilizer_invariant = stab[y].as_ref().map(|gens| {
                let inside = BitSet::from_indices(source.len(), members.iter().copied());
                gens.iter().all(|s| {
                    let stable = members.iter().all(|&x| inside.contains(s[x] as usize));
                    let fixed = match &cert {
                        Some(c) => {
                            let w = members[c.witness];
                            let mut ok = s[w] as usize == w;
                            if let Some(j) = &c.map {
                                ok &= (0..members.len()).all(|i| {
                                    let si = pos(s[members[i]] as usize).unwrap();
                                    members[j[si]] == s[members[j[i]]] as usize
                                });
                            }
                            ok
                        }
                        None => true,
                    };
                    stable && fixed
                })
            });
            let certificate = cert.map(|c| FiberCertificate {
                kind: c.kind,
                witness: members[c.witness],
                witness_label: source.label(members[c.witness]).to_string(),
            });
            Ok(FiberEntry {
                target: y,
                target_label: target.label(y).to_string(),
                members,
                certificate,
                homology_checked,
                stabilizer_invariant,
            })
        })
        .collect::<Result<_>>()?;
    let pass = equivariant != Some(false)
        && fibers
            .iter()
            .all(|e| e.certificate.is_some() && e.stabilizer_invariant != Some(false));
    Ok(FiberReport {
        mode,
        fibers,
        equivariant,
        pass,
    })
}

/// Outcome of the minimum check over one target vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberMinimum {
    pub target: usize,
    pub target_label: String,
    pub predicted: Option<usize>,
    pub certified: bool,
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberMinimumReport {
    pub minima: Vec<FiberMinimum>,
    pub fibers: FiberReport,
    pub pass: bool,
}

impl FiberMinimumReport {
    pub fn failures(&self) -> impl Iterator<Item = &FiberMinimum> {
        self.minima.iter().filter(|m| !m.certified)
    }
}

/// Runs the fiber check of `f: source -> target` with fibers over
/// `target_{>= y}` and requires each fiber's certificate to be a minimum at
/// the predicted source vertex.
pub fn check_fiber_minima(
    source: &Poset,
    target: &Poset,
    f: &[usize],
    predicted: &[Option<usize>],
) -> Result<FiberMinimumReport> {
    let fibers = quillen_fiber_check(source, target, f, FiberMode::Over, None)?;
    let minima: Vec<FiberMinimum> = fibers
        .fibers
        .iter()
        .map(|e| {
            let y = e.target;
            let message = match (predicted[y], &e.certificate) {
                (None, _) => Some("predicted minimum is not in the source poset".to_string()),
                (Some(p), _) if e.members.binary_search(&p).is_err() => Some(format!(
                    "predicted minimum {} is not in the fiber",
                    source.label(p)
                )),
                (Some(p), Some(c)) if c.kind == CertificateKind::Minimum && c.witness == p => None,
                (Some(p), Some(c)) => Some(format!(
                    "fiber certified by {:?} at {} instead of a minimum at {}",
                    c.kind,
                    c.witness_label,
                    source.label(p)
                )),
                (Some(p), None) => Some(format!(
                    "fiber has no minimum; {} is not below all members",
                    source.label(p)
                )),
            };
            let message = match (message, e.stabilizer_invariant) {
                (None, Some(false)) => Some("minimum is not fixed by the stabilizer".to_string()),
                (m, _) => m,
            };
            FiberMinimum {
                target: y,
                target_label: e.target_label.clone(),
                predicted: predicted[y],
                certified: message.is_none(),
                message,
            }
        })
        .collect();
    let pass = fibers.pass && minima.iter().all(|m| m.certified);
    Ok(FiberMinimumReport {
        minima,
        fibers,
        pass,
    })
}
