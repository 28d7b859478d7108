use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{is_prime, prime_divisors};

/// Textual group description, e.g. `kind=GL,n=2,q=4` or
/// `kind=product,factors=(kind=cyclic,n=2);(kind=symmetric,n=3)`.
///
/// Entries are separated by commas or newlines; `#` starts a comment.
/// Permutation generators are 1-based image lists (`[2,1,3]`), matrix
/// generators are row-major lists of field element codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    /// Symmetries of a regular polygon with `n` vertices (order `2n`).
    Dihedral(usize),
    /// Generators as 0-based image lists.
    Perm {
        degree: usize,
        gens: Vec<Vec<usize>>,
    },
    Matrix {
        n: usize,
        q: u32,
        gens: Vec<Vec<u32>>,
    },
    GL {
        n: usize,
        q: u32,
    },
    SL {
        n: usize,
        q: u32,
    },
    Product(Vec<GroupSpec>),
}

/// `(p, f)` with `q = p^f`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let ps = prime_divisors(q as u64);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0] as u32;
    let mut f = 0;
    let mut x = q;
    while x > 1 {
        x /= p;
        f += 1;
    }
    Some((p, f))
}

fn split_top(s: &str, seps: &[char]) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::MalformedSpec(format!(
                "unbalanced brackets in {s:?}"
            )));
        }
        if depth == 0 && seps.contains(&ch) {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(Error::MalformedSpec(format!(
            "unbalanced brackets in {s:?}"
        )));
    }
    out.push(cur);
    Ok(out
        .into_iter()
        .map(|x| x.trim().to_string())
        .filter(|x| !x.is_empty())
        .collect())
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.trim()
        .parse()
        .map_err(|_| Error::MalformedSpec(format!("{key}={v} is not a non-negative integer")))
}

fn parse_list(v: &str) -> Result<Vec<usize>> {
    let v = v.trim();
    let inner = v
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::MalformedSpec(format!("expected [..] list, got {v:?}")))?;
    inner.split(',').map(|x| parse_usize("entry", x)).collect()
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let cleaned: String = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join("\n");
        let mut kind = None;
        let mut n = None;
        let mut q = None;
        let mut gens = None;
        let mut factors = None;
        for entry in split_top(&cleaned, &[',', '\n'])? {
            let (k, v) = entry.split_once('=').ok_or_else(|| {
                Error::MalformedSpec(format!("expected key=value, got {entry:?}"))
            })?;
            let (k, v) = (k.trim().to_ascii_lowercase(), v.trim().to_string());
            let slot = match k.as_str() {
                "kind" => &mut kind,
                "n" => &mut n,
                "q" => &mut q,
                "gens" => &mut gens,
                "factors" => &mut factors,
                _ => return Err(Error::MalformedSpec(format!("unknown key {k:?}"))),
            };
            if slot.replace(v).is_some() {
                return Err(Error::MalformedSpec(format!("duplicate key {k:?}")));
            }
        }
        let kind = kind.ok_or_else(|| Error::MalformedSpec("missing kind".into()))?;
        let need_n = || -> Result<usize> {
            let n = parse_usize(
                "n",
                n.as_deref()
                    .ok_or_else(|| Error::MalformedSpec("missing n".into()))?,
            )?;
            if n == 0 {
                return Err(Error::MalformedSpec("n must be positive".into()));
            }
            Ok(n)
        };
        let need_q = || -> Result<u32> {
            let raw = q
                .as_deref()
                .ok_or_else(|| Error::MalformedSpec("missing q".into()))?;
            let q = parse_usize("q", raw)? as u32;
            if prime_power(q).is_none() {
                return Err(Error::MalformedSpec(format!("q={q} is not a prime power")));
            }
            Ok(q)
        };
        let spec = match kind.to_ascii_lowercase().as_str() {
            "symmetric" => GroupSpec::Symmetric(need_n()?),
            "alternating" => GroupSpec::Alternating(need_n()?),
            "cyclic" => GroupSpec::Cyclic(need_n()?),
            "dihedral" => {
                let n = need_n()?;
                if n < 3 {
                    return Err(Error::MalformedSpec("dihedral needs n >= 3".into()));
                }
                GroupSpec::Dihedral(n)
            }
            "gl" => GroupSpec::GL {
                n: need_n()?,
                q: need_q()?,
            },
            "sl" => GroupSpec::SL {
                n: need_n()?,
                q: need_q()?,
            },
            "perm" => {
                let raw = gens.ok_or_else(|| Error::MalformedSpec("perm needs gens".into()))?;
                let lists = split_top(&raw, &[';'])?
                    .iter()
                    .map(|g| parse_list(g))
                    .collect::<Result<Vec<_>>>()?;
                let degree = match n {
                    Some(_) => need_n()?,
                    None => lists.iter().map(|l| l.len()).max().unwrap_or(1),
                };
                let mut out = Vec::new();
                for l in lists {
                    if l.len() > degree {
                        return Err(Error::MalformedSpec(format!(
                            "generator longer than degree {degree}"
                        )));
                    }
                    let mut img: Vec<usize> = Vec::with_capacity(degree);
                    for &x in &l {
                        if x == 0 || x > degree {
                            return Err(Error::MalformedSpec(format!(
                                "image {x} out of range 1..={degree}"
                            )));
                        }
                        img.push(x - 1);
                    }
                    img.extend(l.len()..degree);
                    let mut seen = vec![false; degree];
                    for &x in &img {
                        if std::mem::replace(&mut seen[x], true) {
                            return Err(Error::MalformedSpec(format!(
                                "{l:?} is not a permutation"
                            )));
                        }
                    }
                    out.push(img);
                }
                GroupSpec::Perm { degree, gens: out }
            }
            "matrix" => {
                let n = need_n()?;
                let q = need_q()?;
                let raw = gens.ok_or_else(|| Error::MalformedSpec("matrix needs gens".into()))?;
                let mut out = Vec::new();
                for g in split_top(&raw, &[';'])? {
                    let entries = parse_list(&g)?;
                    if entries.len() != n * n {
                        return Err(Error::MalformedSpec(format!(
                            "matrix generator needs {} entries",
                            n * n
                        )));
                    }
                    if entries.iter().any(|&e| e >= q as usize) {
                        return Err(Error::MalformedSpec(format!(
                            "entry out of range for GF({q})"
                        )));
                    }
                    out.push(entries.into_iter().map(|e| e as u32).collect());
                }
                GroupSpec::Matrix { n, q, gens: out }
            }
            "product" => {
                let raw =
                    factors.ok_or_else(|| Error::MalformedSpec("product needs factors".into()))?;
                let parts = split_top(&raw, &[';'])?
                    .iter()
                    .map(|f| {
                        let inner = f
                            .strip_prefix('(')
                            .and_then(|x| x.strip_suffix(')'))
                            .ok_or_else(|| {
                                Error::MalformedSpec(format!("factor {f:?} must be parenthesized"))
                            })?;
                        GroupSpec::parse(inner)
                    })
                    .collect::<Result<Vec<_>>>()?;
                if parts.is_empty() {
                    return Err(Error::MalformedSpec(
                        "product needs at least one factor".into(),
                    ));
                }
                GroupSpec::Product(parts)
            }
            other => return Err(Error::MalformedSpec(format!("unknown kind {other:?}"))),
        };
        Ok(spec)
    }

    /// Characteristic and size of the matrix field, for matrix kinds.
    pub fn matrix_field(&self) -> Option<(usize, u32)> {
        match *self {
            GroupSpec::Matrix { n, q, .. } | GroupSpec::GL { n, q } | GroupSpec::SL { n, q } => {
                Some((n, q))
            }
            _ => None,
        }
    }
}

impl fmt::Display for GroupSpec {
    /// Canonical single-line form; parsing it yields the same spec.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            GroupSpec::Symmetric(n) => write!(f, "kind=symmetric,n={n}"),
            GroupSpec::Alternating(n) => write!(f, "kind=alternating,n={n}"),
            GroupSpec::Cyclic(n) => write!(f, "kind=cyclic,n={n}"),
            GroupSpec::Dihedral(n) => write!(f, "kind=dihedral,n={n}"),
            GroupSpec::GL { n, q } => write!(f, "kind=GL,n={n},q={q}"),
            GroupSpec::SL { n, q } => write!(f, "kind=SL,n={n},q={q}"),
            GroupSpec::Perm { degree, gens } => {
                let g: Vec<String> = gens
                    .iter()
                    .map(|g| format!("[{}]", list(&g.iter().map(|x| x + 1).collect::<Vec<_>>())))
                    .collect();
                write!(f, "kind=perm,n={degree},gens={}", g.join(";"))
            }
            GroupSpec::Matrix { n, q, gens } => {
                let g: Vec<String> = gens
                    .iter()
                    .map(|g| {
                        format!(
                            "[{}]",
                            list(&g.iter().map(|&x| x as usize).collect::<Vec<_>>())
                        )
                    })
                    .collect();
                write!(f, "kind=matrix,n={n},q={q},gens={}", g.join(";"))
            }
            GroupSpec::Product(parts) => {
                let p: Vec<String> = parts.iter().map(|x| format!("({x})")).collect();
                write!(f, "kind=product,factors={}", p.join(";"))
            }
        }
    }
}

pub(crate) fn check_prime(ell: u64) -> Result<()> {
    if is_prime(ell) {
        Ok(())
    } else {
        Err(Error::NotPrime(ell))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(
            GroupSpec::parse("kind=GL,n=2,q=4").unwrap(),
            GroupSpec::GL { n: 2, q: 4 }
        );
        let p = GroupSpec::parse("kind = perm\ngens = [2,1,3];[2,3,1] # S3").unwrap();
        assert_eq!(
            p,
            GroupSpec::Perm {
                degree: 3,
                gens: vec![vec![1, 0, 2], vec![1, 2, 0]]
            }
        );
        let prod = GroupSpec::parse("kind=product,factors=(kind=cyclic,n=2);(kind=symmetric,n=3)")
            .unwrap();
        assert_eq!(
            prod,
            GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Symmetric(3)])
        );
    }

    #[test]
    fn display_roundtrips() {
        for text in [
            "kind=product,factors=(kind=cyclic,n=2);(kind=symmetric,n=3)",
            "kind=matrix,n=2,q=5,gens=[1,1,0,1];[0,4,1,0]",
            "kind=perm,n=4,gens=[2,1];[1,3,4,2]",
            "kind=SL,n=3,q=2",
        ] {
            let s = GroupSpec::parse(text).unwrap();
            assert_eq!(GroupSpec::parse(&s.to_string()).unwrap(), s);
        }
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "n=3",
            "kind=symmetric",
            "kind=GL,n=2,q=6",
            "kind=perm,gens=[1,1]",
            "kind=perm,gens=[2,1",
            "kind=matrix,n=2,q=5,gens=[1,2,3]",
            "kind=wat,n=2",
            "kind=cyclic,n=2,n=3",
        ] {
            assert!(
                matches!(GroupSpec::parse(bad), Err(Error::MalformedSpec(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(5), Some((5, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
