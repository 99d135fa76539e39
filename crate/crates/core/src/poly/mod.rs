//! Univariate polynomials over `F_q`: ring operations, irreducibility,
//! counting, the totient `Φ(h)` and the valuation `v_P` on `F_q(T)`.

mod rational;
mod text;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{BaseField, Fq};

pub use rational::{RationalFunction, Valuation};
pub use text::{format_fq, format_poly};

/// Dense polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<Fq>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Fq::ONE)
    }

    pub fn constant(c: Fq) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `T`.
    pub fn x() -> Self {
        Self::monomial(Fq::ONE, 1)
    }

    pub fn monomial(c: Fq, k: usize) -> Self {
        let mut v = vec![Fq::ZERO; k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fq::ONE
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<u32> = self.coeffs.iter().map(|c| c.index()).collect();
        write!(f, "UniPoly{v:?}")
    }
}

/// `F_q[T]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: BaseField,
}

impl PolyRing {
    pub fn new(field: BaseField) -> Self {
        Self { field }
    }

    pub fn field(&self) -> &BaseField {
        &self.field
    }

    /// Checked construction: every coefficient must belong to `F_q`.
    pub fn poly(&self, coeffs: Vec<Fq>) -> Result<UniPoly> {
        if let Some(c) = coeffs.iter().find(|&&c| !self.field.contains(c)) {
            return Err(Error::TowerMismatch(format!(
                "coefficient {} outside F_{}",
                c.index(),
                self.field.order()
            )));
        }
        Ok(UniPoly::new(coeffs))
    }

    /// Polynomial from integer coefficients embedded in the prime field.
    pub fn from_ints(&self, coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| self.field.from_int(c)).collect())
    }

    pub fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| self.field.add(a.coeff(i), b.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, a: &UniPoly) -> UniPoly {
        UniPoly::new(a.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| self.field.sub(a.coeff(i), b.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: Fq, a: &UniPoly) -> UniPoly {
        UniPoly::new(a.coeffs.iter().map(|&x| self.field.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        if a.is_zero() || b.is_zero() {
            return UniPoly::zero();
        }
        let f = &self.field;
        let mut out = vec![Fq::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, a: &UniPoly, k: usize) -> UniPoly {
        (0..k).fold(UniPoly::one(), |acc, _| self.mul(&acc, a))
    }

    /// `a / lead(a)`; zero stays zero.
    pub fn monic(&self, a: &UniPoly) -> UniPoly {
        if a.is_zero() {
            return UniPoly::zero();
        }
        let inv = self
            .field
            .inv(a.lead())
            .expect("leading coefficient is nonzero");
        self.scale(inv, a)
    }

    /// Euclidean division: `a = q b + r` with `deg r < deg b`.
    pub fn div_rem(&self, a: &UniPoly, b: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let Some(db) = b.degree() else {
            return Err(Error::DivisionByZero);
        };
        let f = &self.field;
        let inv_lead = f.inv(b.lead())?;
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return Ok((UniPoly::zero(), a.clone()));
        }
        let mut q = vec![Fq::ZERO; r.len() - db];
        for k in (db..r.len()).rev() {
            let c = f.mul(r[k], inv_lead);
            if c.is_zero() {
                continue;
            }
            q[k - db] = c;
            for (t, &bc) in b.coeffs.iter().enumerate() {
                r[k - db + t] = f.sub(r[k - db + t], f.mul(c, bc));
            }
        }
        r.truncate(db);
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    pub fn rem(&self, a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
        Ok(self.div_rem(a, b)?.1)
    }

    pub fn divides(&self, d: &UniPoly, a: &UniPoly) -> Result<bool> {
        Ok(self.rem(a, d)?.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y).expect("divisor is nonzero");
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `g = s a + t b` monic.
    pub fn ext_gcd(&self, a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = self.div_rem(&r0, &r1).expect("divisor is nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = self.field.inv(r0.lead()).expect("nonzero");
        (
            self.scale(inv, &r0),
            self.scale(inv, &s0),
            self.scale(inv, &t0),
        )
    }

    /// Inverse of `a` modulo `m`.
    pub fn inv_mod(&self, a: &UniPoly, m: &UniPoly) -> Result<UniPoly> {
        let a = self.rem(a, m)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.ext_gcd(&a, m);
        if g != UniPoly::one() {
            return Err(Error::DivisionByZero);
        }
        self.rem(&s, m)
    }

    pub fn eval(&self, a: &UniPoly, x: Fq) -> Fq {
        a.coeffs.iter().rev().fold(Fq::ZERO, |acc, &c| {
            self.field.add(self.field.mul(acc, x), c)
        })
    }

    pub fn mul_mod(&self, a: &UniPoly, b: &UniPoly, m: &UniPoly) -> Result<UniPoly> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn pow_mod(&self, a: &UniPoly, mut n: u64, m: &UniPoly) -> Result<UniPoly> {
        let mut base = self.rem(a, m)?;
        let mut acc = self.rem(&UniPoly::one(), m)?;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_mod(&acc, &base, m)?;
            }
            base = self.mul_mod(&base, &base, m)?;
            n >>= 1;
        }
        Ok(acc)
    }

    /// `T^{q^k} mod m`.
    pub fn x_pow_q_pow(&self, k: usize, m: &UniPoly) -> Result<UniPoly> {
        let q = self.field.order() as u64;
        let mut acc = self.rem(&UniPoly::x(), m)?;
        for _ in 0..k {
            acc = self.pow_mod(&acc, q, m)?;
        }
        Ok(acc)
    }

    /// Frobenius-power criterion: `T^{q^n} = T mod f` and
    /// `gcd(T^{q^{n/ρ}} - T, f) = 1` for each prime `ρ | n`.
    pub fn is_irreducible(&self, f: &UniPoly) -> Result<bool> {
        let n = match f.degree() {
            Some(n) if n >= 1 => n,
            _ => {
                return Err(Error::DegreeTooSmall(
                    "irreducibility needs degree >= 1".into(),
                ))
            }
        };
        if n == 1 {
            return Ok(true);
        }
        if self.field.elements().any(|c| self.eval(f, c).is_zero()) {
            return Ok(false);
        }
        if n <= 3 {
            return Ok(true);
        }
        let f = self.monic(f);
        let q = self.field.order() as u64;
        // powers[k] = T^{q^k} mod f
        let mut powers = vec![self.rem(&UniPoly::x(), &f)?];
        for k in 1..=n {
            let next = self.pow_mod(&powers[k - 1], q, &f)?;
            powers.push(next);
        }
        let x = self.rem(&UniPoly::x(), &f)?;
        if powers[n] != x {
            return Ok(false);
        }
        for rho in prime_divisors(n) {
            let g = self.gcd(&self.sub(&powers[n / rho], &x), &f);
            if g != UniPoly::one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Number of distinct monic irreducible factors of `f` of each degree
    /// (index = degree), by distinct-degree splitting.
    pub fn distinct_degree_counts(&self, f: &UniPoly) -> Result<Vec<usize>> {
        let Some(deg) = f.degree() else {
            return Err(Error::Precondition(
                "zero polynomial has no factorization".into(),
            ));
        };
        let mut counts = vec![0usize; deg + 1];
        let mut rest = self.monic(f);
        let x = UniPoly::x();
        let mut d = 1;
        while rest.degree().unwrap_or(0) >= d {
            let xp = self.x_pow_q_pow(d, &rest)?;
            let g = self.gcd(&self.sub(&xp, &self.rem(&x, &rest)?), &rest);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 {
                counts[d] = gd / d;
                loop {
                    let c = self.gcd(&rest, &g);
                    if c == UniPoly::one() {
                        break;
                    }
                    rest = self.div_rem(&rest, &c)?.0;
                }
            }
            d += 1;
        }
        if let Some(rd) = rest.degree().filter(|&rd| rd > 0) {
            // remaining part is irreducible of degree rd (all smaller degrees removed)
            counts[rd] += 1;
        }
        Ok(counts)
    }

    /// `Φ(h)`: nonzero polynomials of degree `< deg h` coprime to `h`.
    pub fn totient(&self, h: &UniPoly) -> Result<u128> {
        let deg = match h.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::DegreeTooSmall("totient needs deg h >= 1".into())),
        };
        let q = self.field.order() as u128;
        let overflow = || Error::Overflow(format!("Φ(h) for deg h = {deg}"));
        let mut num = q.checked_pow(deg as u32).ok_or_else(overflow)?;
        for (d, &count) in self.distinct_degree_counts(h)?.iter().enumerate() {
            for _ in 0..count {
                let qd = q.checked_pow(d as u32).ok_or_else(overflow)?;
                num = num / qd * (qd - 1);
            }
        }
        Ok(num)
    }

    /// `#S_m`, the number of monic irreducibles of degree `m` (Möbius formula).
    pub fn count_irreducibles(&self, m: usize) -> Result<u128> {
        if m == 0 {
            return Err(Error::DegreeTooSmall("m must be >= 1".into()));
        }
        let q = self.field.order() as i128;
        let mut sum: i128 = 0;
        for d in 1..=m {
            if !m.is_multiple_of(d) {
                continue;
            }
            let mu = mobius(d);
            if mu == 0 {
                continue;
            }
            let term = q
                .checked_pow((m / d) as u32)
                .ok_or_else(|| Error::Overflow(format!("q^{}", m / d)))?;
            sum += mu as i128 * term;
        }
        Ok((sum / m as i128) as u128)
    }

    /// Polynomial of length `len` whose coefficients are the base-`q` digits of
    /// `idx` (constant coefficient fastest).
    pub fn poly_from_index(&self, len: usize, mut idx: u128) -> UniPoly {
        let q = self.field.order() as u128;
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push(self.field.from_index((idx % q) as u64).expect("digit < q"));
            idx /= q;
        }
        UniPoly::new(v)
    }

    /// Monic polynomial of degree `deg` with lower coefficients given by
    /// `poly_from_index(deg, idx)`.
    pub fn monic_from_index(&self, deg: usize, idx: u128) -> UniPoly {
        let mut v = self.poly_from_index(deg, idx).coeffs;
        v.resize(deg, Fq::ZERO);
        v.push(Fq::ONE);
        UniPoly::new(v)
    }

    pub fn valuation(&self, g: &RationalFunction, prime: &UniPoly) -> Result<Valuation> {
        if prime.degree().unwrap_or(0) == 0 || !self.is_irreducible(prime)? {
            return Err(Error::Reducible(self.display(prime)));
        }
        if g.is_zero() {
            return Ok(Valuation::Infinite);
        }
        let prime = self.monic(prime);
        let n = self.multiplicity(g.numerator(), &prime)? as i64
            - self.multiplicity(g.denominator(), &prime)? as i64;
        Ok(Valuation::Finite(n))
    }

    /// Largest `k` with `p^k | a`, for nonzero `a`.
    pub fn multiplicity(&self, a: &UniPoly, p: &UniPoly) -> Result<usize> {
        if a.is_zero() {
            return Err(Error::Precondition(
                "multiplicity in zero polynomial".into(),
            ));
        }
        let mut k = 0;
        let mut cur = a.clone();
        loop {
            let (quo, r) = self.div_rem(&cur, p)?;
            if !r.is_zero() {
                return Ok(k);
            }
            cur = quo;
            k += 1;
        }
    }

    pub fn display(&self, a: &UniPoly) -> String {
        format_poly(a.coeffs(), "T", &self.field)
    }

    pub fn parse(&self, text: &str) -> Result<UniPoly> {
        text::parse_poly(text, 'T', &self.field)
    }

    /// Like [`Self::display`] with a different variable name.
    pub fn display_in(&self, a: &UniPoly, var: &str) -> String {
        format_poly(a.coeffs(), var, &self.field)
    }

    /// Like [`Self::parse`] with a different variable name.
    pub fn parse_in(&self, text: &str, var: char) -> Result<UniPoly> {
        text::parse_poly(text, var, &self.field)
    }

    /// Parses an element of `F_q` written in the generator `a`.
    pub fn parse_fq(&self, text: &str) -> Result<Fq> {
        text::parse_fq(text, &self.field)
    }
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
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

fn mobius(n: usize) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `T(m)`, the number of positive divisors of `m`.
pub fn divisor_count(m: u64) -> u64 {
    (1..=m).filter(|d| m.is_multiple_of(*d)).count() as u64
}
