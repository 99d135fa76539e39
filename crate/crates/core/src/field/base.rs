use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{PolyRing, UniPoly};

/// Largest field order for which log/antilog tables are built.
const MAX_TABLE_ORDER: u64 = 1 << 22;

/// Element of `F_q`, stored as the integer `sum c_i p^i` of its coordinates
/// `c_i` in the power basis of the generator of `F_q / F_p`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    /// Canonical integer encoding.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq({})", self.0)
    }
}

struct Inner {
    p: u32,
    e: usize,
    q: u32,
    /// Monic modulus over `F_p`, ascending, length `e + 1`; empty when `e == 1`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The field `F_q = F_p[y]/(g)`, `q = p^e`.
#[derive(Clone)]
pub struct BaseField {
    inner: Arc<Inner>,
}

impl PartialEq for BaseField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.e == other.inner.e
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for BaseField {}

impl fmt::Debug for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.inner.q)?;
        if self.inner.e > 1 {
            write!(f, " mod {:?}", self.inner.modulus)?;
        }
        Ok(())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power `q` into `(p, e)`.
pub fn prime_power(q: u64) -> Result<(u64, usize)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, e))
}

impl BaseField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > u32::MAX as u64 / 2 {
            return Err(Error::FieldTooLarge(p));
        }
        Ok(Self {
            inner: Arc::new(Inner {
                p: p as u32,
                e: 1,
                q: p as u32,
                modulus: Vec::new(),
                exp: Vec::new(),
                log: Vec::new(),
            }),
        })
    }

    /// `F_p[y]/(modulus)` for a monic irreducible `modulus` given as ascending
    /// `F_p` coefficients. A degree-1 modulus yields the prime field.
    pub fn extension(p: u64, modulus: &[u32]) -> Result<Self> {
        let fp = Self::prime(p)?;
        let e = modulus.len().saturating_sub(1);
        if e == 0 {
            return Err(Error::DegreeTooSmall(
                "F_q modulus must have degree >= 1".into(),
            ));
        }
        if modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::Parse(format!(
                "F_q modulus coefficient out of range for p = {p}"
            )));
        }
        if modulus[e] != 1 {
            return Err(Error::NotMonic(format!("{modulus:?}")));
        }
        if e == 1 {
            return Ok(fp);
        }
        let ring = PolyRing::new(fp.clone());
        let poly = UniPoly::new(modulus.iter().map(|&c| Fq(c)).collect());
        if !ring.is_irreducible(&poly)? {
            return Err(Error::Reducible(format!("F_q modulus {modulus:?}")));
        }
        let q = p
            .checked_pow(e as u32)
            .filter(|&q| q <= MAX_TABLE_ORDER)
            .ok_or(Error::FieldTooLarge(p.saturating_pow(e as u32)))?;
        let mut inner = Inner {
            p: p as u32,
            e,
            q: q as u32,
            modulus: modulus.to_vec(),
            exp: Vec::new(),
            log: Vec::new(),
        };
        build_tables(&mut inner);
        Ok(Self {
            inner: Arc::new(inner),
        })
    }

    /// `F_q` for a prime power `q`, using the first monic irreducible of
    /// degree `e` over `F_p` (constant coefficient varying fastest) as modulus.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        if e == 1 {
            return Self::prime(p);
        }
        let modulus = Self::default_modulus(p, e)?;
        Self::extension(p, &modulus)
    }

    pub fn default_modulus(p: u64, e: usize) -> Result<Vec<u32>> {
        let fp = Self::prime(p)?;
        let ring = PolyRing::new(fp);
        let total = (p as u128).pow(e as u32);
        for idx in 0..total {
            let f = ring.monic_from_index(e, idx);
            if ring.is_irreducible(&f)? {
                return Ok(f.coeffs().iter().map(|c| c.0).collect());
            }
        }
        Err(Error::Reducible(format!(
            "no irreducible of degree {e} over F_{p}"
        )))
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> usize {
        self.inner.e
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Modulus of `F_q / F_p` (ascending), `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        if self.inner.e == 1 {
            None
        } else {
            Some(&self.inner.modulus)
        }
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        Fq::ONE
    }

    /// Generator `y` of `F_q / F_p` (equals `0` in a prime field, where it is unused).
    pub fn generator(&self) -> Fq {
        if self.inner.e == 1 {
            Fq::ZERO
        } else {
            Fq(self.inner.p)
        }
    }

    pub fn from_index(&self, idx: u64) -> Result<Fq> {
        if idx >= self.inner.q as u64 {
            return Err(Error::TowerMismatch(format!(
                "index {idx} outside F_{}",
                self.inner.q
            )));
        }
        Ok(Fq(idx as u32))
    }

    pub fn contains(&self, x: Fq) -> bool {
        x.0 < self.inner.q
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.inner.p as i64) as u32)
    }

    /// Coordinates over `F_p`, ascending, length `e`.
    pub fn digits(&self, x: Fq) -> Vec<u32> {
        let p = self.inner.p;
        let mut v = x.0;
        (0..self.inner.e)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Fq> {
        if digits.len() != self.inner.e {
            return Err(Error::TowerMismatch(format!(
                "F_q element needs {} coordinates, got {}",
                self.inner.e,
                digits.len()
            )));
        }
        let p = self.inner.p;
        let mut acc = 0u32;
        for &d in digits.iter().rev() {
            if d >= p {
                return Err(Error::TowerMismatch(format!(
                    "coordinate {d} outside F_{p}"
                )));
            }
            acc = acc * p + d;
        }
        Ok(Fq(acc))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.inner.q).map(Fq)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq(rng.gen_range(0..self.inner.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq(rng.gen_range(1..self.inner.q))
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let inner = &*self.inner;
        if inner.e == 1 {
            let s = a.0 + b.0;
            return Fq(if s >= inner.p { s - inner.p } else { s });
        }
        if inner.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        let p = inner.p;
        let (mut x, mut y, mut acc, mut w) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            acc += d * w;
            w *= p;
            x /= p;
            y /= p;
        }
        Fq(acc)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let inner = &*self.inner;
        if a.0 == 0 || inner.p == 2 {
            return a;
        }
        if inner.e == 1 {
            return Fq(inner.p - a.0);
        }
        let p = inner.p;
        let (mut x, mut acc, mut w) = (a.0, 0u32, 1u32);
        while x > 0 {
            let d = x % p;
            acc += ((p - d) % p) * w;
            w *= p;
            x /= p;
        }
        Fq(acc)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let inner = &*self.inner;
        if inner.e == 1 {
            return Fq(((a.0 as u64 * b.0 as u64) % inner.p as u64) as u32);
        }
        let n = inner.q as usize - 1;
        let s = inner.log[a.0 as usize] as usize + inner.log[b.0 as usize] as usize;
        Fq(inner.exp[if s >= n { s - n } else { s }])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.inner;
        if inner.e == 1 {
            return Ok(self.pow(a, inner.p as u64 - 2));
        }
        let n = inner.q as usize - 1;
        let l = inner.log[a.0 as usize] as usize;
        Ok(Fq(inner.exp[(n - l) % n]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, mut n: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// `true` when `x` lies in the prime subfield.
    pub fn in_prime_field(&self, x: Fq) -> bool {
        x.0 < self.inner.p
    }
}

fn mul_digits(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * e - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] += x as u64 * y as u64;
        }
    }
    let p64 = p as u64;
    for k in (e..prod.len()).rev() {
        let c = prod[k] % p64;
        if c != 0 {
            for (t, &mc) in modulus.iter().enumerate().take(e) {
                prod[k - e + t] += c * (p64 - mc as u64);
            }
        }
        prod[k] = 0;
    }
    prod.iter().take(e).map(|&c| (c % p64) as u32).collect()
}

fn build_tables(inner: &mut Inner) {
    let (p, e, q) = (inner.p, inner.e, inner.q as usize);
    let to_digits = |mut v: u32| -> Vec<u32> {
        (0..e)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    };
    let from_digits = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);
    for cand in 2..q as u32 {
        let g = to_digits(cand);
        let mut exp = Vec::with_capacity(q - 1);
        let mut cur = to_digits(1);
        loop {
            exp.push(from_digits(&cur));
            cur = mul_digits(&cur, &g, &inner.modulus, p);
            if from_digits(&cur) == 1 || exp.len() >= q {
                break;
            }
        }
        if exp.len() == q - 1 {
            let mut log = vec![0u32; q];
            for (k, &v) in exp.iter().enumerate() {
                log[v as usize] = k as u32;
            }
            inner.exp = exp;
            inner.log = log;
            return;
        }
    }
    unreachable!("a finite field has a primitive element");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f3_arithmetic() {
        let f = BaseField::prime(3).unwrap();
        let two = f.from_int(2);
        assert_eq!(f.add(two, two), f.one());
        assert_eq!(f.mul(two, two), f.one());
        assert_eq!(f.inv(two).unwrap(), two);
        assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn f9_generator_squares_to_minus_one() {
        let f = BaseField::extension(3, &[1, 0, 1]).unwrap();
        let y = f.generator();
        assert_eq!(f.digits(y), vec![0, 1]);
        assert_eq!(f.mul(y, y), f.from_int(2));
    }

    #[test]
    fn f8_default_modulus() {
        let f = BaseField::with_order(8).unwrap();
        assert_eq!(f.modulus().unwrap(), &[1, 1, 0, 1]);
        let a = f.generator();
        // a^3 = a + 1
        assert_eq!(f.pow(a, 3), f.add(a, f.one()));
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(matches!(
            BaseField::extension(3, &[2, 0, 1]),
            Err(Error::Reducible(_))
        ));
        assert!(matches!(BaseField::prime(9), Err(Error::NotPrime(9))));
        assert!(matches!(prime_power(12), Err(Error::NotPrimePower(12))));
        assert_eq!(prime_power(125).unwrap(), (5, 3));
    }

    #[test]
    fn table_field_axioms_exhaustive_f27() {
        let f = BaseField::with_order(27).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            for b in f.elements().step_by(5) {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                let digits: Vec<u32> = f
                    .digits(a)
                    .iter()
                    .zip(f.digits(b))
                    .map(|(x, y)| (x + y) % 3)
                    .collect();
                assert_eq!(f.digits(f.add(a, b)), digits);
            }
        }
    }
}
