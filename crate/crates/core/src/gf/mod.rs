//! Finite fields GF(p^m) with table arithmetic, dense univariate
//! polynomials and their factorization, and small dense linear algebra.
//!
//! Elements are stored as [`Fe`] codes: the residue polynomial
//! `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` is encoded as the integer
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. Zero is code 0 and one is code 1
//! in every field.

mod linalg;
mod poly;

pub use linalg::{min_poly_of_operator, Echelon, Matrix};
pub use poly::{factor_poly, is_irreducible, Poly};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Default bound on `p^m` for constructed fields.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

/// An element code of some [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

const NO_LOG: u32 = u32::MAX;

/// The finite field GF(p^m), with the lexicographically least monic
/// irreducible polynomial of degree `m` over GF(p) as modulus.
pub struct Field {
    characteristic: u32,
    degree: u32,
    size: u32,
    modulus: Vec<u32>,
    primitive: Fe,
    /// `exp[k] = g^k` for `k < 2(q-1)`, doubled so products need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, or `NO_LOG` when `1 + g^k = 0`.
    zech: Vec<u32>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{})", self.characteristic, self.degree)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.characteristic == other.characteristic && self.degree == other.degree
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Least `e >= 1` with `a^e = 1 mod n`; `None` when `gcd(a, n) != 1`.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if gcd(a % n, n) != 1 {
        return None;
    }
    let base = a % n;
    let mut x = base;
    let mut e = 1;
    while x != 1 {
        x = x * base % n;
        e += 1;
    }
    Some(e)
}

/// The multiplicative order of `q` modulo the prime `ell`.
pub fn mult_order(q: u64, ell: u64) -> Result<u64> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    multiplicative_order(q, ell).ok_or(Error::NotCoprime { q, ell })
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), Arc<Field>>> {
    static FIELDS: OnceLock<Mutex<HashMap<(u32, u32), Arc<Field>>>> = OnceLock::new();
    FIELDS.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The canonical GF(characteristic^degree) within [`DEFAULT_FIELD_BOUND`].
pub fn make_field(characteristic: u32, degree: u32) -> Result<Arc<Field>> {
    make_field_bounded(characteristic, degree, DEFAULT_FIELD_BOUND)
}

/// Like [`make_field`] with an explicit bound on the field size. Fields are
/// memoized, so repeated calls share one table set.
pub fn make_field_bounded(characteristic: u32, degree: u32, bound: u64) -> Result<Arc<Field>> {
    if !is_prime(characteristic as u64) {
        return Err(Error::NotPrime(characteristic as u64));
    }
    if degree == 0 {
        return Err(Error::Precondition("field degree must be positive".into()));
    }
    let size = (characteristic as u64).checked_pow(degree);
    match size {
        Some(s) if s <= bound && s <= u32::MAX as u64 / 2 => {}
        _ => return Err(Error::FieldTooLarge(characteristic as u64, degree, bound)),
    }
    if let Some(f) = registry().lock().unwrap().get(&(characteristic, degree)) {
        return Ok(f.clone());
    }
    let field = Arc::new(Field::build(characteristic, degree));
    let mut reg = registry().lock().unwrap();
    Ok(reg.entry((characteristic, degree)).or_insert(field).clone())
}

/// Polynomial arithmetic on digit vectors over GF(p), used only while the
/// tables are being built.
struct Digits<'a> {
    p: u32,
    modulus: &'a [u32],
}

impl Digits<'_> {
    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let m = self.modulus.len() - 1;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * m];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (m..2 * m).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &mj) in self.modulus[..m].iter().enumerate() {
                let sub = c * mj as u64 % p;
                prod[k - m + j] = (prod[k - m + j] + p - sub) % p;
            }
        }
        prod[..m].iter().map(|&x| x as u32).collect()
    }

    fn pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let m = self.modulus.len() - 1;
        let mut result = vec![0u32; m];
        result[0] = 1;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }
}

fn to_digits(code: u32, p: u32, m: u32) -> Vec<u32> {
    let mut c = code;
    (0..m)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

impl Field {
    fn build(p: u32, m: u32) -> Field {
        let size = p.pow(m);
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, m)
        };
        let n = (size - 1) as u64;
        let digits = Digits {
            p,
            modulus: &modulus,
        };
        let divisors = prime_divisors(n);
        let is_primitive = |d: &[u32]| {
            let one = {
                let mut v = vec![0u32; m as usize];
                v[0] = 1;
                v
            };
            digits.pow(d, n) == one && divisors.iter().all(|&r| digits.pow(d, n / r) != one)
        };
        let primitive = if size == 2 {
            1
        } else {
            (2..size)
                .find(|&c| is_primitive(&to_digits(c, p, m)))
                .expect("multiplicative group of a finite field is cyclic")
        };

        // multiplication by g as an m x m matrix acting on digit vectors
        let g = to_digits(primitive, p, m);
        let basis_images: Vec<Vec<u32>> = (0..m as usize)
            .map(|i| {
                let mut e = vec![0u32; m as usize];
                e[i] = 1;
                digits.mul(&e, &g)
            })
            .collect();
        let mut exp = Vec::with_capacity(2 * n as usize);
        let mut log = vec![NO_LOG; size as usize];
        let mut cur = vec![0u32; m as usize];
        cur[0] = 1;
        for k in 0..n as u32 {
            let code = from_digits(&cur, p);
            exp.push(code);
            log[code as usize] = k;
            let mut next = vec![0u64; m as usize];
            for (i, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (j, &b) in basis_images[i].iter().enumerate() {
                    next[j] = (next[j] + c as u64 * b as u64) % p as u64;
                }
            }
            cur = next.into_iter().map(|x| x as u32).collect();
        }
        for k in 0..n as usize {
            exp.push(exp[k]);
        }
        let zech = (0..n as usize)
            .map(|k| {
                let code = exp[k];
                // adding one only touches the constant digit
                let c0 = code % p;
                let bumped = code - c0 + (c0 + 1) % p;
                if bumped == 0 {
                    NO_LOG
                } else {
                    log[bumped as usize]
                }
            })
            .collect();
        Field {
            characteristic: p,
            degree: m,
            size,
            modulus,
            primitive: Fe(primitive),
            exp,
            log,
            zech,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Monic modulus, coefficients in ascending degree.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The least-coded generator of the multiplicative group.
    pub fn primitive_element(&self) -> Fe {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.size).map(Fe)
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, x: i64) -> Fe {
        Fe(x.rem_euclid(self.characteristic as i64) as u32)
    }

    /// Residue-polynomial coefficients of `a`, ascending degree.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        to_digits(a.0, self.characteristic, self.degree)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.degree as usize || coeffs.iter().any(|&c| c >= self.characteristic) {
            return Err(Error::Precondition(format!(
                "{coeffs:?} is not a residue in {self:?}"
            )));
        }
        Ok(Fe(from_digits(coeffs, self.characteristic)))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.degree == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= self.characteristic {
                s - self.characteristic
            } else {
                s
            });
        }
        if self.characteristic == 2 {
            return Fe(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n = self.size - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            Fe::ZERO
        } else {
            Fe(self.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 || self.characteristic == 2 {
            return a;
        }
        if self.degree == 1 {
            return Fe(self.characteristic - a.0);
        }
        let half = (self.size - 1) / 2;
        Fe(self.exp[(self.log[a.0 as usize] + half) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Fe {
        assert!(!a.is_zero(), "inverse of zero");
        let n = self.size - 1;
        let l = self.log[a.0 as usize];
        Fe(self.exp[((n - l) % n) as usize])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let n = (self.size - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Fe(self.exp[((l * (e % n)) % n) as usize])
    }

    /// `a^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.characteristic as u64)
    }

    /// The unique `b` with `b^p = a`.
    pub fn frobenius_inverse(&self, a: Fe) -> Fe {
        self.pow(a, (self.characteristic as u64).pow(self.degree - 1))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fe) -> u64 {
        assert!(!a.is_zero());
        let n = (self.size - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        n / gcd(l, n)
    }

    /// Sum of a sequence of elements.
    pub fn sum(&self, it: impl IntoIterator<Item = Fe>) -> Fe {
        it.into_iter().fold(Fe::ZERO, |acc, x| self.add(acc, x))
    }

    /// Elements whose `n`-th power is one.
    pub fn roots_of_unity(&self, n: u64) -> Vec<Fe> {
        self.elements()
            .skip(1)
            .filter(|&a| self.pow(a, n) == Fe::ONE)
            .collect()
    }
}

/// Lexicographically least monic irreducible of degree `m` over GF(p),
/// ordering by coefficients from `x^(m-1)` down to the constant term.
fn least_irreducible(p: u32, m: u32) -> Vec<u32> {
    let prime = make_field(p, 1).expect("prime field");
    let count = (p as u64).pow(m);
    for code in 0..count {
        let mut coeffs = to_digits(code as u32, p, m);
        coeffs.push(1);
        let f = Poly::new(coeffs.iter().map(|&c| Fe(c)).collect());
        if is_irreducible(&prime, &f) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
