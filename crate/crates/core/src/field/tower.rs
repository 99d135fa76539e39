use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::base::{BaseField, Fq};
use super::matrix::MatrixFq;
use crate::error::{Error, Result};
use crate::poly::{PolyRing, UniPoly};

/// Element of `F_{q^m}`: coordinates over `F_q` in the power basis
/// `1, x, ..., x^{m-1}` of the tower modulus, ascending, zero-padded.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fqm(Vec<Fq>);

impl Fqm {
    pub fn coords(&self) -> &[Fq] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// `Some(c)` when the element lies in `F_q`.
    pub fn as_base(&self) -> Option<Fq> {
        if self.0.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.0.first().copied().unwrap_or(Fq::ZERO))
        } else {
            None
        }
    }
}

impl fmt::Debug for Fqm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<u32> = self.0.iter().map(|c| c.index()).collect();
        write!(f, "Fqm{v:?}")
    }
}

struct Inner {
    fq: BaseField,
    ring: PolyRing,
    m: usize,
    modulus: UniPoly,
    prime: UniPoly,
    z: Fqm,
    /// `frob[i]` is the matrix of `x -> x^{q^i}` in the power basis.
    frob: Vec<MatrixFq>,
}

/// The tower `F_p ⊂ F_q ⊂ F_{q^m} = F_q[x]/(f)` with a distinguished root `z`
/// of the prime `P` whose residue field the top level represents.
#[derive(Clone)]
pub struct FieldTower {
    inner: Arc<Inner>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.fq == other.inner.fq
                && self.inner.modulus == other.inner.modulus
                && self.inner.z == other.inner.z)
    }
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldTower({:?}, m = {}, modulus = {:?})",
            self.inner.fq, self.inner.m, self.inner.modulus
        )
    }
}

impl FieldTower {
    /// Default mode: the modulus is `P` itself and `z` is the class of `x`.
    pub fn from_prime(fq: BaseField, prime: &UniPoly) -> Result<Self> {
        let ring = PolyRing::new(fq.clone());
        let Some(m) = prime.degree().filter(|&d| d >= 1) else {
            return Err(Error::DegreeTooSmall("P must have degree >= 1".into()));
        };
        if !prime.is_monic() {
            return Err(Error::NotMonic(ring.display(prime)));
        }
        if !ring.is_irreducible(prime)? {
            return Err(Error::Reducible(ring.display(prime)));
        }
        let x = ring.rem(&UniPoly::x(), prime)?;
        let z = pad(x.coeffs().to_vec(), m);
        Ok(Self::assemble(
            fq,
            ring,
            prime.clone(),
            prime.clone(),
            Fqm(z),
        ))
    }

    /// Explicit mode: `F_{q^m} = F_q[x]/(modulus)` and a caller-chosen root
    /// `z` of `P`; `P(z) = 0` and `deg P = m` are checked.
    pub fn explicit(fq: BaseField, modulus: &UniPoly, prime: &UniPoly, z: Vec<Fq>) -> Result<Self> {
        let ring = PolyRing::new(fq.clone());
        let Some(m) = modulus.degree().filter(|&d| d >= 1) else {
            return Err(Error::DegreeTooSmall(
                "F_{q^m} modulus must have degree >= 1".into(),
            ));
        };
        if !modulus.is_monic() {
            return Err(Error::NotMonic(ring.display(modulus)));
        }
        if !ring.is_irreducible(modulus)? {
            return Err(Error::Reducible(ring.display(modulus)));
        }
        if !prime.is_monic() {
            return Err(Error::NotMonic(ring.display(prime)));
        }
        if prime.degree() != Some(m) {
            return Err(Error::Precondition(format!(
                "deg P = {:?} differs from m = {m}",
                prime.degree()
            )));
        }
        if !ring.is_irreducible(prime)? {
            return Err(Error::Reducible(ring.display(prime)));
        }
        if z.len() != m || z.iter().any(|&c| !fq.contains(c)) {
            return Err(Error::TowerMismatch(
                "z is not an element of F_{q^m}".into(),
            ));
        }
        let tower = Self::assemble(fq, ring, modulus.clone(), prime.clone(), Fqm(z));
        if !tower.eval_poly(prime, tower.z()).is_zero() {
            return Err(Error::NotARoot(format!("{:?}", tower.z())));
        }
        Ok(tower)
    }

    fn assemble(fq: BaseField, ring: PolyRing, modulus: UniPoly, prime: UniPoly, z: Fqm) -> Self {
        let m = modulus.degree().expect("nonzero modulus");
        let mut tower = Self {
            inner: Arc::new(Inner {
                fq,
                ring,
                m,
                modulus,
                prime,
                z,
                frob: Vec::new(),
            }),
        };
        let q = tower.inner.fq.order() as u64;
        let xq = tower.pow(&tower.gen(), q);
        let mut cols = Vec::with_capacity(m);
        let mut cur = tower.one();
        for _ in 0..m {
            cols.push(cur.0.clone());
            cur = tower.mul(&cur, &xq);
        }
        let f1 = MatrixFq::from_columns(m, &cols);
        let mut frob = vec![MatrixFq::identity(m)];
        for i in 1..m {
            let next = f1.mul(&frob[i - 1], &tower.inner.fq);
            frob.push(next);
        }
        Arc::get_mut(&mut tower.inner)
            .expect("freshly built tower is uniquely owned")
            .frob = frob;
        tower
    }

    pub fn base(&self) -> &BaseField {
        &self.inner.fq
    }

    pub fn ring(&self) -> &PolyRing {
        &self.inner.ring
    }

    /// `[F_{q^m} : F_q]`.
    pub fn degree(&self) -> usize {
        self.inner.m
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.inner.modulus
    }

    /// The prime `P` of which `z` is a root.
    pub fn prime(&self) -> &UniPoly {
        &self.inner.prime
    }

    pub fn z(&self) -> &Fqm {
        &self.inner.z
    }

    /// `true` when the tower was built in default mode (modulus = `P`).
    pub fn is_default_mode(&self) -> bool {
        self.inner.modulus == self.inner.prime
    }

    pub fn zero(&self) -> Fqm {
        Fqm(vec![Fq::ZERO; self.inner.m])
    }

    pub fn one(&self) -> Fqm {
        self.embed(Fq::ONE)
    }

    /// The class of `x` (power-basis generator).
    pub fn gen(&self) -> Fqm {
        let m = self.inner.m;
        if m == 1 {
            let c = self.inner.modulus.coeff(0);
            return Fqm(vec![self.inner.fq.neg(c)]);
        }
        let mut v = vec![Fq::ZERO; m];
        v[1] = Fq::ONE;
        Fqm(v)
    }

    pub fn embed(&self, c: Fq) -> Fqm {
        let mut v = vec![Fq::ZERO; self.inner.m];
        v[0] = c;
        Fqm(v)
    }

    /// Checked construction from raw coordinates.
    pub fn element(&self, coords: Vec<Fq>) -> Result<Fqm> {
        let x = Fqm(coords);
        self.check(&x)?;
        Ok(x)
    }

    /// Reduces a polynomial in `x` modulo the tower modulus.
    pub fn from_poly(&self, poly: &UniPoly) -> Fqm {
        let r = self
            .inner
            .ring
            .rem(poly, &self.inner.modulus)
            .expect("modulus is nonzero");
        Fqm(pad(r.coeffs().to_vec(), self.inner.m))
    }

    pub fn to_poly(&self, x: &Fqm) -> UniPoly {
        UniPoly::new(x.0.clone())
    }

    pub fn check(&self, x: &Fqm) -> Result<()> {
        if x.0.len() != self.inner.m {
            return Err(Error::TowerMismatch(format!(
                "element has {} coordinates, tower degree is {}",
                x.0.len(),
                self.inner.m
            )));
        }
        if let Some(c) = x.0.iter().find(|&&c| !self.inner.fq.contains(c)) {
            return Err(Error::TowerMismatch(format!(
                "coordinate {} outside F_{}",
                c.index(),
                self.inner.fq.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &Fqm, b: &Fqm) -> Fqm {
        let f = &self.inner.fq;
        Fqm(a.0.iter().zip(&b.0).map(|(&x, &y)| f.add(x, y)).collect())
    }

    pub fn sub(&self, a: &Fqm, b: &Fqm) -> Fqm {
        let f = &self.inner.fq;
        Fqm(a.0.iter().zip(&b.0).map(|(&x, &y)| f.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &Fqm) -> Fqm {
        let f = &self.inner.fq;
        Fqm(a.0.iter().map(|&x| f.neg(x)).collect())
    }

    /// Multiplication by a scalar of `F_q`.
    pub fn scale(&self, c: Fq, a: &Fqm) -> Fqm {
        let f = &self.inner.fq;
        Fqm(a.0.iter().map(|&x| f.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &Fqm, b: &Fqm) -> Fqm {
        let f = &self.inner.fq;
        let m = self.inner.m;
        let mut prod = vec![Fq::ZERO; 2 * m - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        let md = self.inner.modulus.coeffs();
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c.is_zero() {
                continue;
            }
            for t in 0..m {
                prod[k - m + t] = f.sub(prod[k - m + t], f.mul(c, md[t]));
            }
            prod[k] = Fq::ZERO;
        }
        prod.truncate(m);
        Fqm(prod)
    }

    pub fn square(&self, a: &Fqm) -> Fqm {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Fqm, mut n: u64) -> Fqm {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Fqm) -> Result<Fqm> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ring = &self.inner.ring;
        let inv = ring.inv_mod(&UniPoly::new(a.0.clone()), &self.inner.modulus)?;
        Ok(Fqm(pad(inv.coeffs().to_vec(), self.inner.m)))
    }

    pub fn div(&self, a: &Fqm, b: &Fqm) -> Result<Fqm> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Operand-checked variants for elements of unknown provenance.
    pub fn try_add(&self, a: &Fqm, b: &Fqm) -> Result<Fqm> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn try_sub(&self, a: &Fqm, b: &Fqm) -> Result<Fqm> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub(a, b))
    }

    pub fn try_mul(&self, a: &Fqm, b: &Fqm) -> Result<Fqm> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn try_inv(&self, a: &Fqm) -> Result<Fqm> {
        self.check(a)?;
        self.inv(a)
    }

    /// `x^{q^i}`.
    pub fn frobenius(&self, x: &Fqm, i: usize) -> Fqm {
        let k = i % self.inner.m;
        if k == 0 {
            return x.clone();
        }
        Fqm(self.inner.frob[k].mul_vec(&x.0, &self.inner.fq))
    }

    /// `Nr(x) = prod_{i<m} x^{q^i}`, an element of `F_q`.
    pub fn norm(&self, x: &Fqm) -> Fq {
        let mut acc = self.one();
        for i in 0..self.inner.m {
            acc = self.mul(&acc, &self.frobenius(x, i));
        }
        acc.as_base()
            .expect("the norm is fixed by Frobenius and lies in F_q")
    }

    pub fn eval_poly(&self, poly: &UniPoly, x: &Fqm) -> Fqm {
        let mut acc = self.zero();
        for &c in poly.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, &self.embed(c));
        }
        acc
    }

    /// `m x n` matrix over `F_q` whose column `j` holds the coordinates of `v[j]`.
    pub fn expand_columns(&self, v: &[Fqm]) -> MatrixFq {
        MatrixFq::from_columns(
            self.inner.m,
            &v.iter().map(|x| x.0.clone()).collect::<Vec<_>>(),
        )
    }

    pub fn from_column(&self, col: Vec<Fq>) -> Fqm {
        assert_eq!(col.len(), self.inner.m);
        Fqm(col)
    }

    /// Rank over `F_q` of the span of `v`.
    pub fn fq_rank(&self, v: &[Fqm]) -> usize {
        self.expand_columns(v).rank(&self.inner.fq)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fqm {
        Fqm((0..self.inner.m)
            .map(|_| self.inner.fq.random(rng))
            .collect())
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fqm {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

fn pad(mut v: Vec<Fq>, m: usize) -> Vec<Fq> {
    v.resize(m, Fq::ZERO);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f9_over_f3() -> FieldTower {
        let f3 = BaseField::prime(3).unwrap();
        let ring = PolyRing::new(f3.clone());
        let modulus = ring.parse("T^2+1").unwrap();
        FieldTower::from_prime(f3, &modulus).unwrap()
    }

    #[test]
    fn frobenius_of_generator_in_f9() {
        let t = f9_over_f3();
        let y = t.gen();
        assert_eq!(t.frobenius(&y, 0), y);
        let two_y = t.scale(t.base().from_int(2), &y);
        assert_eq!(t.frobenius(&y, 1), two_y);
        assert_eq!(t.frobenius(&y, 1), t.pow(&y, 3));
        assert_eq!(t.frobenius(&y, 2), y);
    }

    #[test]
    fn norm_examples() {
        let t = f9_over_f3();
        assert_eq!(t.norm(&t.zero()), Fq::ZERO);
        assert_eq!(t.norm(&t.one()), Fq::ONE);
        assert_eq!(t.norm(&t.gen()), Fq::ONE);
        let two = t.base().from_int(2);
        // c^m for c in F_q
        assert_eq!(t.norm(&t.embed(two)), t.base().pow(two, 2));
    }

    #[test]
    fn expand_columns_examples() {
        let t = f9_over_f3();
        assert_eq!(t.expand_columns(&[]).cols(), 0);
        let m = t.expand_columns(&[t.one()]);
        assert_eq!(m.column(0), vec![Fq::ONE, Fq::ZERO]);
        assert!(t.expand_columns(&[t.zero(), t.zero()]).is_zero());
    }

    #[test]
    fn mismatch_and_zero_division() {
        let t = f9_over_f3();
        let bad = Fqm(vec![Fq::ONE; 3]);
        assert!(matches!(
            t.try_mul(&bad, &t.one()),
            Err(Error::TowerMismatch(_))
        ));
        assert!(matches!(t.inv(&t.zero()), Err(Error::DivisionByZero)));
        assert!(t.element(vec![Fq::ONE, Fq::ZERO]).is_ok());
    }

    #[test]
    fn explicit_mode_requires_root() {
        let f3 = BaseField::prime(3).unwrap();
        let ring = PolyRing::new(f3.clone());
        let modulus = ring.parse("T^2+1").unwrap();
        let prime = ring.parse("T^2+T+2").unwrap();
        assert!(matches!(
            FieldTower::explicit(f3.clone(), &modulus, &prime, vec![Fq::ONE, Fq::ZERO]),
            Err(Error::NotARoot(_))
        ));
        let t = f9_over_f3();
        // find a root of T^2+T+2 in F_3[x]/(x^2+1) by scan
        let root = (0..9u32)
            .map(|i| {
                Fqm(vec![
                    f3.from_int((i % 3) as i64),
                    f3.from_int((i / 3) as i64),
                ])
            })
            .find(|x| t.eval_poly(&prime, x).is_zero())
            .unwrap();
        let e = FieldTower::explicit(f3, &modulus, &prime, root.0.clone()).unwrap();
        assert!(!e.is_default_mode());
        assert!(e.eval_poly(&prime, e.z()).is_zero());
    }

    #[test]
    fn degree_one_tower() {
        let f5 = BaseField::prime(5).unwrap();
        let ring = PolyRing::new(f5.clone());
        let t = FieldTower::from_prime(f5.clone(), &ring.parse("T+2").unwrap()).unwrap();
        assert_eq!(t.z().coords(), &[f5.from_int(3)]);
        assert_eq!(t.frobenius(t.z(), 1), *t.z());
    }

    fn tower_f5_4() -> FieldTower {
        let f5 = BaseField::prime(5).unwrap();
        let ring = PolyRing::new(f5.clone());
        // x^4 + 2 is irreducible over F_5
        FieldTower::from_prime(f5, &ring.parse("T^4+2").unwrap()).unwrap()
    }

    fn tower_f4_3() -> FieldTower {
        let f4 = BaseField::with_order(4).unwrap();
        let ring = PolyRing::new(f4.clone());
        let p = (0..64u128)
            .map(|i| ring.monic_from_index(3, i))
            .find(|f| ring.is_irreducible(f).unwrap())
            .unwrap();
        FieldTower::from_prime(f4, &p).unwrap()
    }

    proptest! {
        #[test]
        fn field_axioms(seed in any::<u64>(), which in 0usize..2) {
            use rand::SeedableRng;
            let t = if which == 0 { tower_f5_4() } else { tower_f4_3() };
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let (a, b, c) = (t.random(&mut rng), t.random(&mut rng), t.random(&mut rng));
            prop_assert_eq!(t.mul(&t.mul(&a, &b), &c), t.mul(&a, &t.mul(&b, &c)));
            prop_assert_eq!(t.mul(&a, &t.add(&b, &c)), t.add(&t.mul(&a, &b), &t.mul(&a, &c)));
            prop_assert_eq!(t.mul(&a, &b), t.mul(&b, &a));
            prop_assert_eq!(t.add(&a, &t.zero()), a.clone());
            prop_assert_eq!(t.mul(&a, &t.one()), a.clone());
            if !a.is_zero() {
                prop_assert_eq!(t.mul(&a, &t.inv(&a).unwrap()), t.one());
            }
            let mut x = a.clone();
            for _ in 0..t.degree() { x = t.frobenius(&x, 1); }
            prop_assert_eq!(x, a.clone());
            prop_assert_eq!(t.norm(&t.mul(&a, &b)), t.base().mul(t.norm(&a), t.norm(&b)));
            prop_assert_eq!(t.frobenius(&t.mul(&a, &b), 2), t.mul(&t.frobenius(&a, 2), &t.frobenius(&b, 2)));
            prop_assert_eq!(t.frobenius(&a, 1), t.pow(&a, t.base().order() as u64));
            let (ea, eb) = (t.expand_columns(std::slice::from_ref(&a)), t.expand_columns(std::slice::from_ref(&b)));
            prop_assert_eq!(ea == eb, a == b);
            prop_assert_eq!(ea.rank(t.base()), usize::from(!a.is_zero()));
        }
    }
}
