use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{prime_divisors, Fe, Field};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients in ascending degree with no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly {
            coeffs: vec![Fe::ONE],
        }
    }

    pub fn x() -> Poly {
        Poly {
            coeffs: vec![Fe::ZERO, Fe::ONE],
        }
    }

    pub fn constant(c: Fe) -> Poly {
        Poly::new(vec![c])
    }

    /// `x - a`.
    pub fn linear(f: &Field, a: Fe) -> Poly {
        Poly::new(vec![f.neg(a), Fe::ONE])
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Fe::ONE]
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn add(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, f: &Field, c: Fe) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f, f.inv(self.leading()))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, f: &Field, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let Some(n) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if n < d {
            return (Poly::zero(), self.clone());
        }
        let inv_lead = f.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fe::ZERO; n - d + 1];
        for k in (0..=n - d).rev() {
            let c = f.mul(rem[k + d], inv_lead);
            if c.is_zero() {
                continue;
            }
            quot[k] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(c, b));
            }
        }
        rem.truncate(d);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, f: &Field, divisor: &Poly) -> Poly {
        self.div_rem(f, divisor).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &Field, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, f: &Field, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(f, &r1);
            let s = s0.sub(f, &q.mul(f, &s1));
            let t = t0.sub(f, &q.mul(f, &t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = f.inv(r0.leading());
        (r0.scale(f, c), s0.scale(f, c), t0.scale(f, c))
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn mul_mod(&self, f: &Field, other: &Poly, modulus: &Poly) -> Poly {
        self.mul(f, other).rem(f, modulus)
    }

    pub fn pow_mod(&self, f: &Field, mut e: u64, modulus: &Poly) -> Poly {
        let mut result = Poly::one().rem(f, modulus);
        let mut base = self.rem(f, modulus);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_mod(f, &base, modulus);
            }
            base = base.mul_mod(f, &base, modulus);
            e >>= 1;
        }
        result
    }

    pub fn eval(&self, f: &Field, x: Fe) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^(|F|) mod modulus`.
    fn frobenius_mod(&self, f: &Field, modulus: &Poly) -> Poly {
        self.pow_mod(f, f.size() as u64, modulus)
    }
}

/// Rabin's test: `f` of degree `n` is irreducible iff `x^(q^n) = x mod f`
/// and `gcd(x^(q^(n/r)) - x, f) = 1` for every prime `r | n`.
pub fn is_irreducible(field: &Field, f: &Poly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = f.monic(field);
    let x = Poly::x();
    let mut powers = vec![x.rem(field, &f)];
    for _ in 0..n {
        let next = powers.last().unwrap().frobenius_mod(field, &f);
        powers.push(next);
    }
    if powers[n] != x.rem(field, &f) {
        return false;
    }
    prime_divisors(n as u64).into_iter().all(|r| {
        let h = powers[n / r as usize].sub(field, &x);
        h.gcd(field, &f).is_one()
    })
}

/// Factors a nonzero polynomial into monic irreducibles with
/// multiplicities. The leading coefficient is dropped; the output is
/// sorted by `(degree, coefficients)` and therefore reproducible.
pub fn factor_poly(field: &Field, f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.monic(field);
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (part, mult) in squarefree(field, &f) {
        for (g, d) in distinct_degree(field, &part) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed_of(&g));
            for factor in equal_degree(field, &g, d, &mut rng) {
                out.push((factor, mult));
            }
        }
    }
    out.sort_by(|a, b| (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs)));
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (p, m) in out {
        match merged.last_mut() {
            Some(last) if last.0 == p => last.1 += m,
            _ => merged.push((p, m)),
        }
    }
    Ok(merged)
}

fn seed_of(f: &Poly) -> u64 {
    // FNV-1a over the coefficient codes
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for c in &f.coeffs {
        for b in c.0.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, i)` with
/// `f = prod g^i` and each `g` squarefree.
fn squarefree(field: &Field, f: &Poly) -> Vec<(Poly, u32)> {
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return out;
    }
    let mut c = f.gcd(field, &f.derivative(field));
    let mut w = f.div_rem(field, &c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(field, &c);
        let fac = w.div_rem(field, &y).0;
        if !fac.is_one() {
            out.push((fac.monic(field), i));
        }
        w = y;
        c = c.div_rem(field, &w).0;
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power
        let deg = c.degree().unwrap();
        let root = Poly::new(
            (0..=deg / p)
                .map(|k| field.frobenius_inverse(c.coeff(k * p)))
                .collect(),
        );
        for (g, m) in squarefree(field, &root.monic(field)) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree: pairs `(g, d)` where every irreducible factor of `g` has
/// degree `d`.
fn distinct_degree(field: &Field, f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = Poly::x();
    let mut h = x.rem(field, &rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.frobenius_mod(field, &rest);
        let g = h.sub(field, &x).gcd(field, &rest);
        if !g.is_one() {
            rest = rest.div_rem(field, &g).0;
            h = h.rem(field, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((rest.monic(field), deg));
        }
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of
/// degree `d`.
fn equal_degree(field: &Field, f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.monic(field)];
    }
    let q = field.size() as u64;
    loop {
        let a = Poly::new(
            (0..n)
                .map(|_| Fe(rng.random_range(0..field.size())))
                .collect(),
        );
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = a.gcd(field, f);
        let candidate = if !g.is_one() {
            g
        } else if field.characteristic() == 2 {
            // absolute trace to GF(2): a + a^2 + ... + a^(2^(km - 1))
            let steps = d as u32 * field.degree();
            let mut t = a.rem(field, f);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = t.mul_mod(field, &t, f);
                acc = acc.add(field, &t);
            }
            acc.gcd(field, f)
        } else {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
            let mut t = a.rem(field, f);
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.frobenius_mod(field, f);
                norm = norm.mul_mod(field, &t, f);
            }
            let b = norm.pow_mod(field, (q - 1) / 2, f).sub(field, &Poly::one());
            b.gcd(field, f)
        };
        let cd = candidate.degree().unwrap_or(0);
        if cd > 0 && cd < n {
            let other = f.div_rem(field, &candidate).0;
            let mut out = equal_degree(field, &candidate, d, rng);
            out.extend(equal_degree(field, &other.monic(field), d, rng));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn p(field: &Field, c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| field.from_int(x)).collect())
    }

    #[test]
    fn difference_of_squares_over_gf5() {
        let f = make_field(5, 1).unwrap();
        let got = factor_poly(&f, &p(&f, &[-1, 0, 1])).unwrap();
        // sorted by coefficient codes: x + 1 before x + 4
        assert_eq!(got, vec![(p(&f, &[1, 1]), 1), (p(&f, &[-1, 1]), 1)]);
    }

    #[test]
    fn x2_plus_1_irreducible_over_gf3() {
        let f = make_field(3, 1).unwrap();
        let g = p(&f, &[1, 0, 1]);
        assert_eq!(factor_poly(&f, &g).unwrap(), vec![(g, 1)]);
    }

    #[test]
    fn x9_minus_x_is_product_of_small_irreducibles() {
        let f = make_field(3, 1).unwrap();
        let mut c = vec![0i64; 10];
        c[9] = 1;
        c[1] = -1;
        let got = factor_poly(&f, &p(&f, &c)).unwrap();
        // oracle: exhaustive scan of monic polynomials of degree 1 and 2,
        // irreducible iff no root in GF(3)
        let mut expected = Vec::new();
        for a in 0..3 {
            expected.push((p(&f, &[a, 1]), 1));
        }
        for c1 in 0..3 {
            for c0 in 0..3 {
                if (0..3).all(|x| (x * x + c1 * x + c0) % 3 != 0) {
                    expected.push((p(&f, &[c0, c1, 1]), 1));
                }
            }
        }
        expected.sort_by(|a, b| (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs())));
        assert_eq!(got, expected);
    }

    #[test]
    fn repeated_factors_and_pth_powers() {
        let f = make_field(2, 1).unwrap();
        // (x+1)^4 * x^2 * (x^2+x+1)
        let a = p(&f, &[1, 1]);
        let x = Poly::x();
        let b = p(&f, &[1, 1, 1]);
        let g = a
            .mul(&f, &a)
            .mul(&f, &a)
            .mul(&f, &a)
            .mul(&f, &x)
            .mul(&f, &x)
            .mul(&f, &b);
        let got = factor_poly(&f, &g).unwrap();
        assert_eq!(got, vec![(x, 2), (a, 4), (b, 1)]);
    }

    #[test]
    fn factors_over_extension_field() {
        let f = make_field(5, 2).unwrap();
        // x^3 - 1 splits completely over GF(25) since 3 | 24
        let got = factor_poly(&f, &p(&f, &[-1, 0, 0, 1])).unwrap();
        assert_eq!(got.len(), 3);
        assert!(got.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        let f = make_field(3, 1).unwrap();
        assert!(matches!(
            factor_poly(&f, &Poly::zero()),
            Err(Error::ZeroPolynomial)
        ));
    }
}
