//! Rank-1 Drinfeld modules `φ_T = T + g τ` reduced modulo a prime `P`,
//! their torsion spaces, and the reciprocity splitting predicate.

use crate::error::{Error, Result};
use crate::field::{FieldTower, Fq, Fqm};
use crate::poly::{PolyRing, RationalFunction, UniPoly, Valuation};
use crate::twisted::TwistedPoly;

/// `φ̄` over the residue field `F_P ≅ F_{q^m}`, with `φ̄_T = z + ḡ τ`.
#[derive(Clone, Debug)]
pub struct ReducedCarlitz {
    tower: FieldTower,
    g_bar: Fqm,
    phi_t: TwistedPoly,
}

/// `φ̄[a]` as an `F_q`-subspace of `F_{q^m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionSpace {
    pub a: UniPoly,
    pub basis: Vec<Fqm>,
    pub dim: usize,
}

impl TorsionSpace {
    /// All `deg a` torsion points are defined over `F_{q^m}`.
    pub fn is_rational(&self) -> bool {
        Some(self.dim) == self.a.degree()
    }
}

/// Good reduction of `φ_T = T + g τ` at `P`: `v_P(g) = 0` and `v_P(T) >= 0`.
pub fn check_good_reduction(
    g: &RationalFunction,
    prime: &UniPoly,
    ring: &PolyRing,
) -> Result<bool> {
    let v_g = ring.valuation(g, prime)?;
    let v_t = ring.valuation(&RationalFunction::from_poly(UniPoly::x()), prime)?;
    Ok(v_g == Valuation::Finite(0) && v_t >= Valuation::Finite(0))
}

impl ReducedCarlitz {
    /// The Carlitz module `φ̄_T = z + τ`.
    pub fn carlitz(tower: &FieldTower) -> Self {
        Self::with_g_bar(tower, tower.one()).expect("1 is nonzero")
    }

    pub fn with_g_bar(tower: &FieldTower, g_bar: Fqm) -> Result<Self> {
        tower.check(&g_bar)?;
        if g_bar.is_zero() {
            return Err(Error::Precondition(
                "reduction of g vanishes (bad reduction)".into(),
            ));
        }
        let phi_t = TwistedPoly::new(vec![tower.z().clone(), g_bar.clone()]);
        Ok(Self {
            tower: tower.clone(),
            g_bar,
            phi_t,
        })
    }

    /// Reduces `φ^{(g)}` at the tower's prime; requires good reduction.
    pub fn from_rational(tower: &FieldTower, g: &RationalFunction) -> Result<Self> {
        let ring = tower.ring();
        if !check_good_reduction(g, tower.prime(), ring)? {
            return Err(Error::Precondition(format!(
                "no good reduction at P: v_P(g) != 0 for g = {}",
                g.display(ring)
            )));
        }
        let g_bar = reduce(g, tower)?;
        Self::with_g_bar(tower, g_bar)
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn g_bar(&self) -> &Fqm {
        &self.g_bar
    }

    pub fn phi_t(&self) -> &TwistedPoly {
        &self.phi_t
    }

    /// `φ̄_a = Σ a_i φ̄_T^i`, by Horner's rule in `F_{q^m}{τ}`.
    pub fn phi_of(&self, a: &UniPoly) -> TwistedPoly {
        let t = &self.tower;
        let mut acc = TwistedPoly::zero();
        for &c in a.coeffs().iter().rev() {
            acc = acc.mul(&self.phi_t, t);
            acc = acc.add(&TwistedPoly::constant(t.embed(c)), t);
        }
        acc
    }

    pub fn torsion_space(&self, a: &UniPoly) -> Result<TorsionSpace> {
        let t = &self.tower;
        if a.is_zero() {
            return Err(Error::ZeroOperator);
        }
        if t.eval_poly(a, t.z()).is_zero() {
            return Err(Error::InseparableDivision);
        }
        let basis = self.phi_of(a).kernel_basis(t)?;
        Ok(TorsionSpace {
            a: a.clone(),
            dim: basis.len(),
            basis,
        })
    }

    /// Concatenated torsion bases of pairwise coprime factors, checked to be
    /// independent and to span `φ̄[∏ factors]`.
    pub fn torsion_direct_sum(&self, factors: &[UniPoly]) -> Result<TorsionSpace> {
        let t = &self.tower;
        let ring = t.ring();
        for (i, a) in factors.iter().enumerate() {
            for b in &factors[i + 1..] {
                if ring.gcd(a, b) != UniPoly::one() {
                    return Err(Error::Precondition(format!(
                        "factors {} and {} are not coprime",
                        ring.display(a),
                        ring.display(b)
                    )));
                }
            }
        }
        let mut basis = Vec::new();
        for a in factors {
            basis.extend(self.torsion_space(a)?.basis);
        }
        let product = factors
            .iter()
            .fold(UniPoly::one(), |acc, a| ring.mul(&acc, a));
        let rank = t.fq_rank(&basis);
        if rank != basis.len() {
            return Err(Error::DirectSumViolated(format!(
                "{} vectors span only dimension {rank}",
                basis.len()
            )));
        }
        let whole = self.torsion_space(&product)?;
        if whole.dim != rank {
            return Err(Error::DirectSumViolated(format!(
                "factor torsion has dimension {rank}, product torsion {}",
                whole.dim
            )));
        }
        let phi = self.phi_of(&product);
        if basis.iter().any(|b| !phi.evaluate(b, t).is_zero()) {
            return Err(Error::DirectSumViolated(
                "factor torsion point outside product torsion".into(),
            ));
        }
        Ok(TorsionSpace {
            a: product,
            dim: rank,
            basis,
        })
    }
}

/// `ḡ = num(z) / den(z)`.
fn reduce(g: &RationalFunction, tower: &FieldTower) -> Result<Fqm> {
    let num = tower.eval_poly(g.numerator(), tower.z());
    let den = tower.eval_poly(g.denominator(), tower.z());
    tower.div(&num, &den)
}

/// `P ≡ Nr(ḡ) (mod h)`, the norm embedded as a constant polynomial.
pub fn reciprocity_predicate(
    prime: &UniPoly,
    h: &UniPoly,
    g: &RationalFunction,
    ring: &PolyRing,
) -> Result<bool> {
    if !prime.is_monic() {
        return Err(Error::NotMonic(ring.display(prime)));
    }
    if g.is_zero() {
        return Err(Error::Precondition("g must be nonzero".into()));
    }
    if ring.valuation(g, prime)? != Valuation::Finite(0) {
        return Err(Error::Precondition("v_P(g) != 0".into()));
    }
    if h.is_zero()
        || ring.valuation(&RationalFunction::from_poly(h.clone()), prime)? != Valuation::Finite(0)
    {
        return Err(Error::Precondition("v_P(h) != 0".into()));
    }
    let tower = FieldTower::from_prime(ring.field().clone(), prime)?;
    let norm: Fq = tower.norm(&reduce(g, &tower)?);
    let residue = ring.rem(prime, h)?;
    Ok(residue == UniPoly::constant(norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BaseField;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn ring(q: u64) -> PolyRing {
        PolyRing::new(BaseField::with_order(q).unwrap())
    }

    #[test]
    fn good_reduction_examples() {
        let r = ring(3);
        let t = UniPoly::x();
        assert!(check_good_reduction(&RationalFunction::one(), &t, &r).unwrap());
        let p = r.parse("T^2+1").unwrap();
        assert!(check_good_reduction(&RationalFunction::one(), &p, &r).unwrap());
        let inv_t = RationalFunction::new(&r, UniPoly::one(), t.clone()).unwrap();
        assert!(!check_good_reduction(&inv_t, &t, &r).unwrap());
        let g = RationalFunction::from_poly(p.clone());
        assert!(!check_good_reduction(&g, &p, &r).unwrap());
    }

    #[test]
    fn phi_of_t_and_t_cubed() {
        let r = ring(5);
        let p = r.parse("T^10+4T^9+4T^7+T^6+T^4+4T^3+4T+2").unwrap();
        let tower = FieldTower::from_prime(r.field().clone(), &p).unwrap();
        let phi = ReducedCarlitz::carlitz(&tower);
        let z = tower.z().clone();
        assert_eq!(
            phi.phi_of(&UniPoly::x()),
            TwistedPoly::new(vec![z.clone(), tower.one()])
        );
        let zq = tower.frobenius(&z, 1);
        let zq2 = tower.frobenius(&z, 2);
        let expected = TwistedPoly::new(vec![
            tower.pow(&z, 3),
            tower.add(
                &tower.add(&tower.mul(&zq, &zq), &tower.mul(&zq, &z)),
                &tower.mul(&z, &z),
            ),
            tower.add(&tower.add(&zq2, &zq), &z),
            tower.one(),
        ]);
        assert_eq!(phi.phi_of(&r.parse("T^3").unwrap()), expected);
        let c = r.field().from_int(3);
        assert_eq!(
            phi.phi_of(&UniPoly::constant(c)),
            TwistedPoly::constant(tower.embed(c))
        );
    }

    #[test]
    fn linear_torsion_matches_kernel_scan() {
        let r = ring(3);
        let tower = FieldTower::from_prime(r.field().clone(), &r.parse("T^2+1").unwrap()).unwrap();
        let phi = ReducedCarlitz::carlitz(&tower);
        for c in 0..3 {
            let a = r.parse(&format!("T+{}", 3 - c)).unwrap(); // T - c
            let ts = phi.torsion_space(&a).unwrap();
            assert!(ts.dim <= 1);
            // scan all of F_9: z x + x^3 - c x = 0
            let op = phi.phi_of(&a);
            let zeros = (0..9u64)
                .filter(|i| {
                    let x = tower
                        .element(vec![
                            r.field().from_index(i % 3).unwrap(),
                            r.field().from_index(i / 3).unwrap(),
                        ])
                        .unwrap();
                    op.evaluate(&x, &tower).is_zero()
                })
                .count();
            assert_eq!(zeros, 3usize.pow(ts.dim as u32));
        }
        // a(z) = 0 is rejected
        assert_eq!(
            phi.torsion_space(&r.parse("T^2+1").unwrap()),
            Err(Error::InseparableDivision)
        );
    }

    #[test]
    fn tiny_direct_sum() {
        let r = ring(3);
        // search a prime P ≡ 1 mod (T^2-1)(T^2-2) of degree 5..
        let h = r.parse("T^4+2").unwrap();
        let report = crate::dirichlet::find_prime(&r, &h, 6, &UniPoly::one()).unwrap();
        let p = report.found.unwrap();
        let tower = FieldTower::from_prime(r.field().clone(), &p).unwrap();
        let phi = ReducedCarlitz::carlitz(&tower);
        let factors = [r.parse("T^2-1").unwrap(), r.parse("T^2-2").unwrap()];
        let ds = phi.torsion_direct_sum(&factors).unwrap();
        assert_eq!(ds.dim, 4);
        let single = phi.torsion_direct_sum(&factors[..1]).unwrap();
        assert_eq!(single, phi.torsion_space(&factors[0]).unwrap());
    }

    #[test]
    fn reciprocity_with_trivial_g() {
        let r = ring(5);
        let p = r.parse("T^10+4T^9+4T^7+T^6+T^4+4T^3+4T+2").unwrap();
        let h = r.parse("T^9+4T^6+T^3+4").unwrap();
        assert!(reciprocity_predicate(&p, &h, &RationalFunction::one(), &r).unwrap());
        let h2 = r.parse("T^2+T+1").unwrap();
        let expect = r.rem(&p, &h2).unwrap() == UniPoly::one();
        assert_eq!(
            reciprocity_predicate(&p, &h2, &RationalFunction::one(), &r).unwrap(),
            expect
        );
        assert!(reciprocity_predicate(&p, &p, &RationalFunction::one(), &r).is_err());
    }

    proptest! {
        #[test]
        fn phi_is_homomorphism(seed in any::<u64>(), da in 0usize..5, db in 0usize..5) {
            let r = ring(3);
            let p = r.parse("T^5+2T+1").unwrap();
            let tower = FieldTower::from_prime(r.field().clone(), &p).unwrap();
            let phi = ReducedCarlitz::carlitz(&tower);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = UniPoly::new((0..=da).map(|_| r.field().random(&mut rng)).collect());
            let b = UniPoly::new((0..=db).map(|_| r.field().random(&mut rng)).collect());
            prop_assert_eq!(phi.phi_of(&r.add(&a, &b)), phi.phi_of(&a).add(&phi.phi_of(&b), &tower));
            prop_assert_eq!(phi.phi_of(&r.mul(&a, &b)), phi.phi_of(&a).mul(&phi.phi_of(&b), &tower));
            let pa = phi.phi_of(&a);
            prop_assert_eq!(pa.coeff(0, &tower), tower.eval_poly(&a, tower.z()));
            prop_assert_eq!(pa.degree(), a.degree());
        }
    }
}
