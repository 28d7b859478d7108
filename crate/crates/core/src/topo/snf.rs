use num_bigint::BigInt;
use num_traits::{Euclid, One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = checked_fma(out.get(i, j), a, b)?;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

fn overflow() -> Error {
    Error::contract("integer overflow in Smith normal form")
}

#[inline]
fn checked_fma(acc: i64, a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b)
        .and_then(|p| acc.checked_add(p))
        .ok_or_else(overflow)
}

/// Integers the elimination runs over: machine words that report overflow,
/// or arbitrary precision.
trait Entry: Clone + PartialEq + Send + Sync {
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    /// `acc + a * b`, or `None` on overflow.
    fn fma(&self, a: &Self, b: &Self) -> Option<Self>;
    /// `x / p` rounded to the nearest integer, so remainders are at most
    /// `|p| / 2` in absolute value.
    fn nearest_quotient(&self, p: &Self) -> Self;
    fn neg(&self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn from_i64(x: i64) -> i64 {
        x
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        self.unsigned_abs() == 1
    }
    fn abs_lt(&self, other: &i64) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn fma(&self, a: &i64, b: &i64) -> Option<i64> {
        a.checked_mul(*b).and_then(|p| self.checked_add(p))
    }
    fn nearest_quotient(&self, p: &i64) -> i64 {
        let q = i64::div_euclid(*self, *p);
        let r = self - q * p;
        if 2 * r > p.abs() {
            q + p.signum()
        } else {
            q
        }
    }
    fn neg(&self) -> i64 {
        -self
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn from_i64(x: i64) -> BigInt {
        BigInt::from(x)
    }
    fn is_zero(&self) -> bool {
        self.sign() == num_bigint::Sign::NoSign
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn abs_lt(&self, other: &BigInt) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn fma(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(self + a * b)
    }
    fn nearest_quotient(&self, p: &BigInt) -> BigInt {
        let q = Euclid::div_euclid(self, p);
        let r: BigInt = self - &q * p;
        if r * 2 > p.abs() {
            q + p.signum()
        } else {
            q
        }
    }
    fn neg(&self) -> BigInt {
        -self
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Dense row-major working matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Dense<T> {
    cols: usize,
    data: Vec<T>,
}

impl<T: Entry> Dense<T> {
    fn zero(rows: usize, cols: usize) -> Dense<T> {
        Dense {
            cols,
            data: vec![T::from_i64(0); rows * cols],
        }
    }

    fn identity(n: usize) -> Dense<T> {
        let mut m = Dense::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::from_i64(1);
        }
        m
    }

    fn of(a: &IntMatrix) -> Dense<T> {
        Dense {
            cols: a.cols,
            data: a.data.iter().map(|&x| T::from_i64(x)).collect(),
        }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }
}

/// Unimodular transform, kept in machine words when they suffice.
#[derive(Clone, Debug)]
enum Transform {
    Word(Dense<i64>),
    Big(Dense<BigInt>),
}

impl Transform {
    fn get(&self, i: usize, j: usize) -> BigInt {
        match self {
            Transform::Word(m) => BigInt::from(*m.get(i, j)),
            Transform::Big(m) => m.get(i, j).clone(),
        }
    }
}

/// `A = U D V` with `U`, `V` unimodular and `D` having at most one nonzero
/// entry per row and column, listed in `pivots` as `(row, col, value)`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    u: Transform,
    v: Transform,
    pub pivots: Vec<(usize, usize, i64)>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Entry `(i, j)` of `U`.
    pub fn u(&self, i: usize, j: usize) -> BigInt {
        self.u.get(i, j)
    }

    /// Entry `(i, j)` of `V`.
    pub fn v(&self, i: usize, j: usize) -> BigInt {
        self.v.get(i, j)
    }

    /// Whether the transforms needed more than 64-bit entries.
    pub fn is_wide(&self) -> bool {
        matches!(self.u, Transform::Big(_)) || matches!(self.v, Transform::Big(_))
    }

    /// Invariant factors `d_1 | d_2 | ...` of the nonzero part.
    pub fn invariant_factors(&self) -> Vec<u64> {
        invariant_factors(self.pivots.iter().map(|p| p.2.unsigned_abs()))
    }

    /// Recomputes `U D V` exactly and compares it with `a`.
    pub fn verify(&self, a: &IntMatrix) -> Result<()> {
        let (m, n) = (a.rows(), a.cols());
        let mut acc: Dense<BigInt> = Dense::zero(m, n);
        for &(i, j, d) in &self.pivots {
            let vrow: Vec<(usize, BigInt)> = (0..n)
                .map(|c| (c, self.v(j, c)))
                .filter(|p| !p.1.is_zero())
                .collect();
            for r in 0..m {
                let ur = self.u(r, i);
                if ur.is_zero() {
                    continue;
                }
                let s = ur * d;
                for (c, vc) in &vrow {
                    let k = r * n + c;
                    acc.data[k] += &s * vc;
                }
            }
        }
        if acc
            .data
            .iter()
            .zip(&a.data)
            .any(|(x, &y)| *x != BigInt::from(y))
        {
            return Err(Error::contract(
                "Smith decomposition does not multiply back",
            ));
        }
        Ok(())
    }
}

/// Combines the elementary divisors of the given nonzero values into
/// invariant factors `d_1 | d_2 | ...`, one per input value.
pub fn invariant_factors(values: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut powers: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    let mut count = 0usize;
    for v in values {
        count += 1;
        assert!(v != 0, "zero is not a diagonal pivot");
        for (p, e) in factorize(v) {
            powers.entry(p).or_default().push(p.pow(e));
        }
    }
    let mut out = vec![1u64; count];
    for list in powers.values_mut() {
        list.sort_unstable_by(|a, b| b.cmp(a));
        for (k, &q) in list.iter().enumerate() {
            out[count - 1 - k] *= q;
        }
    }
    out
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

type Eliminated<T> = (Dense<T>, Dense<T>, Vec<(usize, usize, T)>);

/// Row and column elimination pivoting on entries of least absolute value.
/// `None` when a word-sized entry overflows.
fn eliminate<T: Entry>(a: &IntMatrix) -> Option<Eliminated<T>> {
    let (m, n) = (a.rows(), a.cols());
    let mut w: Dense<T> = Dense::of(a);
    let mut u: Dense<T> = Dense::identity(m);
    let mut v: Dense<T> = Dense::identity(n);
    let mut row_active = vec![true; m];
    let mut col_active = vec![true; n];
    let mut live_rows: Vec<usize> = (0..m).collect();
    let mut pivots = Vec::new();

    loop {
        // first unit entry, else the least nonzero entry
        let mut best: Option<(usize, usize)> = None;
        let mut unit = false;
        let mut keep = Vec::with_capacity(live_rows.len());
        for &r in &live_rows {
            let mut nonzero = false;
            for c in (0..n).filter(|&c| col_active[c]) {
                let x = w.get(r, c);
                if !x.is_zero() {
                    nonzero = true;
                    if best.is_none_or(|(br, bc)| x.abs_lt(w.get(br, bc))) {
                        best = Some((r, c));
                    }
                    if x.is_unit() {
                        unit = true;
                        break;
                    }
                }
            }
            if nonzero {
                keep.push(r);
            }
            if unit {
                break;
            }
        }
        if unit {
            // rows after the break point were not scanned; keep them
            let b = best.expect("unit pivot").0;
            let pos = live_rows.iter().position(|&r| r == b).unwrap();
            keep.extend_from_slice(&live_rows[pos + 1..]);
        }
        live_rows = keep;
        let Some((mut pi, mut pj)) = best else { break };

        'reduce: loop {
            let p = w.get(pi, pj).clone();
            // clear column pj with row operations
            let row_nz: Vec<(usize, T)> = (0..n)
                .filter(|&c| col_active[c])
                .map(|c| (c, w.get(pi, c).clone()))
                .filter(|x| !x.1.is_zero())
                .collect();
            for l in 0..m {
                if l == pi || !row_active[l] || w.get(l, pj).is_zero() {
                    continue;
                }
                let q = w.get(l, pj).nearest_quotient(&p);
                let nq = q.neg();
                // row_l -= q * row_pi
                for (c, y) in &row_nz {
                    let val = w.get(l, *c).fma(&nq, y)?;
                    w.set(l, *c, val);
                }
                // col_pi(U) += q * col_l(U)
                for r in 0..m {
                    if !u.get(r, l).is_zero() {
                        let val = u.get(r, pi).fma(&q, u.get(r, l))?;
                        u.set(r, pi, val);
                    }
                }
                if !w.get(l, pj).is_zero() {
                    pi = l;
                    continue 'reduce;
                }
            }
            // clear row pi with column operations
            let col_nz: Vec<(usize, T)> = (0..m)
                .filter(|&r| row_active[r])
                .map(|r| (r, w.get(r, pj).clone()))
                .filter(|x| !x.1.is_zero())
                .collect();
            for k in 0..n {
                if k == pj || !col_active[k] || w.get(pi, k).is_zero() {
                    continue;
                }
                let q = w.get(pi, k).nearest_quotient(&p);
                let nq = q.neg();
                // col_k -= q * col_pj
                for (r, y) in &col_nz {
                    let val = w.get(*r, k).fma(&nq, y)?;
                    w.set(*r, k, val);
                }
                // row_pj(V) += q * row_k(V)
                for c in 0..n {
                    if !v.get(k, c).is_zero() {
                        let val = v.get(pj, c).fma(&q, v.get(k, c))?;
                        v.set(pj, c, val);
                    }
                }
                if !w.get(pi, k).is_zero() {
                    pj = k;
                    continue 'reduce;
                }
            }
            break;
        }
        pivots.push((pi, pj, w.get(pi, pj).clone()));
        row_active[pi] = false;
        col_active[pj] = false;
        live_rows.retain(|&r| r != pi);
    }
    Some((u, v, pivots))
}

/// Diagonalizes `a` by unimodular row and column operations, pivoting on
/// entries of least absolute value, and checks `U D V = A`. Runs in 64-bit
/// arithmetic and repeats in arbitrary precision if that overflows.
pub fn smith_decomposition(a: &IntMatrix) -> Result<SmithDecomposition> {
    let (u, v, pivots) = match eliminate::<i64>(a) {
        Some((u, v, p)) => (
            Transform::Word(u),
            Transform::Word(v),
            p.into_iter().map(|(i, j, x)| (i, j, x.to_big())).collect(),
        ),
        None => {
            let (u, v, p) = eliminate::<BigInt>(a).expect("arbitrary precision does not overflow");
            (Transform::Big(u), Transform::Big(v), p)
        }
    };
    let pivots = pivots
        .into_iter()
        .map(|(i, j, x): (usize, usize, BigInt)| Ok((i, j, x.to_i64().ok_or_else(overflow)?)))
        .collect::<Result<Vec<_>>>()?;
    let d = SmithDecomposition { u, v, pivots };
    d.verify(a)?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrices() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let d = smith_decomposition(&a).unwrap();
        assert_eq!(d.invariant_factors(), vec![2, 6, 12]);
        let z = IntMatrix::zero(3, 2);
        assert_eq!(smith_decomposition(&z).unwrap().rank(), 0);
        let b = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(
            smith_decomposition(&b).unwrap().invariant_factors(),
            vec![1, 6]
        );
    }

    #[test]
    fn wide_transforms_stay_exact() {
        let a = IntMatrix::from_rows(&[
            vec![3, 1, -5, 3, 6, 6, 1],
            vec![1, -1, -4, -3, 4, 3, -6],
            vec![-5, 0, -4, -2, 6, -5, -6],
            vec![2, -6, 5, -3, 4, 6, -6],
            vec![6, -3, 6, 4, 4, 3, 2],
            vec![4, 5, 5, -2, 0, 1, 4],
            vec![2, -6, 2, 1, 4, 2, -5],
        ]);
        let d = smith_decomposition(&a).unwrap();
        assert!(d.is_wide());
        assert_eq!(d.rank(), 7);
        let f = d.invariant_factors();
        assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
    }

    #[test]
    fn factors_combine() {
        assert_eq!(invariant_factors([4, 6, 1]), vec![1, 2, 12]);
        assert_eq!(invariant_factors([2, 2]), vec![2, 2]);
    }

    #[test]
    fn verify_rejects_wrong_decomposition() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let mut d = smith_decomposition(&a).unwrap();
        d.pivots[0].2 *= 2;
        assert!(d.verify(&a).is_err());
    }
}
