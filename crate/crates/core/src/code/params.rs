use crate::error::{Error, Result};
use crate::field::{BaseField, Fq};
use crate::poly::{PolyRing, UniPoly};

/// Parameters `(q, r, δ, ℓ, s, a, m, P)` of a code with rank-locality.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeParams {
    pub field: BaseField,
    pub r: usize,
    pub delta: usize,
    pub ell: usize,
    pub s: usize,
    pub a: Vec<Fq>,
    pub m: usize,
    pub prime: Option<UniPoly>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl CodeParams {
    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    /// `R = r + δ - 1`, the size of each locality set.
    pub fn big_r(&self) -> usize {
        self.r + self.delta - 1
    }

    /// Code length `n = ℓR`.
    pub fn n(&self) -> usize {
        self.ell * self.big_r()
    }

    /// `k = (s+1) r`; the code has `F_q`-dimension `m k`.
    pub fn k(&self) -> usize {
        (self.s + 1) * self.r
    }

    pub fn fq_dimension(&self) -> usize {
        self.m * self.k()
    }

    /// `d = ℓR - Rs - r + 1`.
    pub fn designed_distance(&self) -> usize {
        self.n() + 1 - self.big_r() * self.s - self.r
    }

    /// `n - k + 1 - (⌈k/r⌉ - 1)(δ - 1)`, the upper bound on `d` for codes
    /// with rank-locality.
    pub fn locality_bound(&self) -> i64 {
        let k = self.k() as i64;
        let r = self.r as i64;
        let n = self.n() as i64;
        n - k + 1 - ((k + r - 1) / r - 1) * (self.delta as i64 - 1)
    }

    /// `h = ∏ (T^R - a_i)`.
    pub fn h(&self, ring: &PolyRing) -> UniPoly {
        self.factors(ring)
            .iter()
            .fold(UniPoly::one(), |acc, f| ring.mul(&acc, f))
    }

    /// The factors `T^R - a_i`.
    pub fn factors(&self, ring: &PolyRing) -> Vec<UniPoly> {
        let f = &self.field;
        self.a
            .iter()
            .map(|&ai| {
                ring.sub(
                    &UniPoly::monomial(f.one(), self.big_r()),
                    &UniPoly::constant(ai),
                )
            })
            .collect()
    }

    /// Checks `δ >= 2`, the distinct nonzero `a_i`, the four construction
    /// conditions, and `P` when present. `strict` additionally demands
    /// `δ < R`.
    pub fn validate(&self, strict: bool) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        let q = self.q();
        let big_r = self.big_r();
        if self.r == 0 {
            return bad("r must be >= 1".into());
        }
        if self.delta < 2 {
            return bad(format!("delta = {} < 2", self.delta));
        }
        if strict && self.delta >= big_r {
            return bad(format!(
                "strict mode requires delta < R (delta = {}, R = {big_r})",
                self.delta
            ));
        }
        if self.a.len() != self.ell {
            return bad(format!(
                "expected {} values a_i, got {}",
                self.ell,
                self.a.len()
            ));
        }
        for (i, &ai) in self.a.iter().enumerate() {
            if !self.field.contains(ai) {
                return bad(format!("a_{} is not an element of F_{q}", i + 1));
            }
            if ai.is_zero() {
                return bad(format!("a_{} = 0", i + 1));
            }
            if self.a[..i].contains(&ai) {
                return bad(format!("a_{} repeats an earlier value", i + 1));
            }
        }
        if gcd(q, big_r as u64) != 1 {
            return bad(format!("C1: gcd(q, R) = gcd({q}, {big_r}) != 1"));
        }
        if self.k() >= self.n() {
            return bad(format!("C2: (s+1)r = {} >= lR = {}", self.k(), self.n()));
        }
        if self.s + 1 > self.ell || self.ell as u64 >= q {
            return bad(format!(
                "C3: need s+1 <= l < q, got s+1 = {}, l = {}, q = {q}",
                self.s + 1,
                self.ell
            ));
        }
        if self.n() > self.m {
            return bad(format!("C4: lR = {} > m = {}", self.n(), self.m));
        }
        if let Some(p) = &self.prime {
            let ring = PolyRing::new(self.field.clone());
            if !p.is_monic() {
                return bad(format!("P = {} is not monic", ring.display(p)));
            }
            if p.degree() != Some(self.m) {
                return bad(format!("deg P != m = {}", self.m));
            }
            if !ring.is_irreducible(p)? {
                return bad(format!("P = {} is reducible", ring.display(p)));
            }
            if ring.rem(p, &self.h(&ring))? != UniPoly::one() {
                return bad("P is not congruent to 1 mod h".into());
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tiny() -> CodeParams {
        let f = BaseField::prime(3).unwrap();
        CodeParams {
            a: vec![f.from_int(1), f.from_int(2)],
            field: f,
            r: 1,
            delta: 2,
            ell: 2,
            s: 1,
            m: 6,
            prime: None,
        }
    }

    #[test]
    fn formulas() {
        let f = BaseField::prime(5).unwrap();
        let p = CodeParams {
            a: vec![f.from_int(1), f.from_int(2), f.from_int(3)],
            field: f,
            r: 2,
            delta: 2,
            ell: 3,
            s: 2,
            m: 10,
            prime: None,
        };
        assert_eq!(p.big_r(), 3);
        assert_eq!(p.n(), 9);
        assert_eq!(p.designed_distance(), 2);
        assert_eq!(p.locality_bound(), 2);
        assert_eq!(p.fq_dimension(), 60);
        let ring = PolyRing::new(p.field.clone());
        assert_eq!(ring.display(&p.h(&ring)), "T^9+4T^6+T^3+4");
        p.validate(true).unwrap();
    }

    #[test]
    fn rejections() {
        let t = tiny();
        t.validate(false).unwrap();
        assert!(t.validate(true).is_err(), "delta = R = 2");
        let ring = PolyRing::new(t.field.clone());
        assert_eq!(ring.display(&t.h(&ring)), "T^4+2");

        let mut c3 = tiny();
        c3.ell = 3;
        c3.a.push(c3.field.from_int(0));
        assert!(
            matches!(c3.validate(false), Err(Error::InvalidParams(s)) if s.contains("C3") || s.contains("a_3"))
        );

        let mut c1 = tiny();
        c1.delta = 3; // R = 3 = q
        assert!(matches!(c1.validate(false), Err(Error::InvalidParams(s)) if s.contains("C1")));

        let mut c4 = tiny();
        c4.m = 3;
        assert!(matches!(c4.validate(false), Err(Error::InvalidParams(s)) if s.contains("C4")));

        let mut dup = tiny();
        dup.a[1] = dup.a[0];
        assert!(dup.validate(false).is_err());

        let mut d1 = tiny();
        d1.delta = 1;
        assert!(d1.validate(false).is_err());

        let mut bad_p = tiny();
        bad_p.prime = Some(ring.parse("T^6+1").unwrap());
        assert!(bad_p.validate(false).is_err());
    }
}
