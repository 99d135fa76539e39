//! Irreducibles in arithmetic progressions `P ≡ a (mod h)`: admissibility of
//! the existence guarantee, deterministic search, exhaustive counting, and
//! the explicit error bounds on `#S_m(a, h)` and `#S_m`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{divisor_count, PolyRing, UniPoly};

/// Largest candidate space `count_progression` will enumerate.
pub const COUNT_GUARD: u128 = 10_000_000;

/// Margin subtracted from the right-hand side before the strict comparison.
const ADMISSIBLE_MARGIN: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// `m/2 - log m / log q - log 5 / log q`.
    pub rhs: f64,
}

/// Whether `ℓR < m/2 - log(m)/log(q) - log(5)/log(q)` for `m >= 4`.
pub fn admissible(q: u64, m: usize, lr: usize) -> Result<Admissibility> {
    if m < 4 {
        return Err(Error::BelowAdmissibleRange(m));
    }
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let lq = (q as f64).ln();
    let rhs = m as f64 / 2.0 - (m as f64).ln() / lq - 5f64.ln() / lq;
    Ok(Admissibility {
        admissible: (lr as f64) < rhs - ADMISSIBLE_MARGIN,
        rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub found: Option<UniPoly>,
    /// Cofactor with `found = u h + a`.
    pub u: Option<UniPoly>,
    pub tested: u128,
    pub admissible: bool,
}

fn check_progression(ring: &PolyRing, h: &UniPoly, a: &UniPoly) -> Result<usize> {
    let dh = match h.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::Precondition("h must have positive degree".into())),
    };
    if a.degree().is_some_and(|d| d >= dh) {
        return Err(Error::Precondition("deg a must be < deg h".into()));
    }
    if ring.gcd(a, h) != UniPoly::one() {
        return Err(Error::Precondition(format!(
            "a = {} is not a unit modulo h = {}",
            ring.display(a),
            ring.display(h)
        )));
    }
    Ok(dh)
}

/// `P = u h + a` for the `idx`-th monic `u` of degree `m - deg h`.
fn candidate(
    ring: &PolyRing,
    h: &UniPoly,
    a: &UniPoly,
    du: usize,
    idx: u128,
) -> (UniPoly, UniPoly) {
    let u = ring.monic_from_index(du, idx);
    let p = ring.add(&ring.mul(&u, h), a);
    (u, p)
}

/// First monic irreducible `P = u h + a` of degree `m`, scanning monic `u`
/// in ascending coefficient order (constant coefficient fastest).
pub fn find_prime(ring: &PolyRing, h: &UniPoly, m: usize, a: &UniPoly) -> Result<SearchReport> {
    let dh = check_progression(ring, h, a)?;
    if m < dh {
        return Err(Error::Precondition(format!("m = {m} < deg h = {dh}")));
    }
    let h = ring.monic(h);
    let q = ring.field().order() as u64;
    let adm = if m >= 4 {
        admissible(q, m, dh)?.admissible
    } else {
        false
    };
    let du = m - dh;
    let total = (q as u128)
        .checked_pow(du as u32)
        .ok_or_else(|| Error::Overflow(format!("q^{du}")))?;
    let mut tested = 0u128;
    for idx in 0..total {
        let (u, p) = candidate(ring, &h, a, du, idx);
        tested += 1;
        if ring.is_irreducible(&p)? {
            return Ok(SearchReport {
                found: Some(p),
                u: Some(u),
                tested,
                admissible: adm,
            });
        }
    }
    Ok(SearchReport {
        found: None,
        u: None,
        tested,
        admissible: adm,
    })
}

/// `#S_m(a, h)` by exhaustive enumeration. For `m < deg h` the class holds at
/// most the single polynomial `a` itself.
pub fn count_progression(ring: &PolyRing, h: &UniPoly, m: usize, a: &UniPoly) -> Result<u128> {
    let dh = check_progression(ring, h, a)?;
    if m == 0 {
        return Err(Error::DegreeTooSmall("m must be >= 1".into()));
    }
    let h = ring.monic(h);
    if m < dh {
        let hit = a.degree() == Some(m) && a.is_monic() && ring.is_irreducible(a)?;
        return Ok(u128::from(hit));
    }
    let du = m - dh;
    let q = ring.field().order() as u128;
    let total = q.checked_pow(du as u32).unwrap_or(u128::MAX);
    if total > COUNT_GUARD {
        return Err(Error::GuardExceeded {
            needed: total,
            guard: COUNT_GUARD,
        });
    }
    let mut count = 0;
    for idx in 0..total {
        let (_, p) = candidate(ring, &h, a, du, idx);
        if ring.is_irreducible(&p)? {
            count += 1;
        }
    }
    Ok(count)
}

/// One side-by-side inequality `|lhs| <= rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub count: u128,
    pub main_term: f64,
    pub deviation: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub q: u64,
    pub m: usize,
    pub deg_h: usize,
    pub totient: u128,
    pub divisors: u64,
    /// `|#S_m(a,h) - q^m/(mΦ(h))| <= (3T(m) + 2 deg h) q^{m/2} / m`.
    pub progression: BoundCheck,
    /// `|#S_m - q^m/m| <= 2 q^{m/2} / m`.
    pub irreducibles: BoundCheck,
}

impl BoundsReport {
    pub fn pass(&self) -> bool {
        self.progression.pass && self.irreducibles.pass
    }
}

/// `|x·d - q^m| <= c·d'·q^{m/2}` decided exactly by squaring, all terms
/// integers (with `d' = d` for the progression bound).
fn exact_le(lhs: u128, q: u128, m: usize, c: u128, scale: u128) -> Option<bool> {
    let qm = q.checked_pow(m as u32)?;
    let diff = lhs.abs_diff(qm);
    let l = diff.checked_mul(diff)?;
    let r = c
        .checked_mul(c)?
        .checked_mul(scale)?
        .checked_mul(scale)?
        .checked_mul(qm)?;
    Some(l <= r)
}

pub fn check_bounds(ring: &PolyRing, h: &UniPoly, m: usize, a: &UniPoly) -> Result<BoundsReport> {
    let count = count_progression(ring, h, m, a)?;
    let dh = h.degree().expect("checked by count_progression");
    let q = ring.field().order() as u64;
    let totient = ring.totient(h)?;
    let tm = divisor_count(m as u64);
    let (qf, mf) = (q as f64, m as f64);
    let sqrt_qm = qf.powf(mf / 2.0);

    let main = qf.powf(mf) / (mf * totient as f64);
    let c = 3 * tm as u128 + 2 * dh as u128;
    let bound = c as f64 * sqrt_qm / mf;
    // |m Φ count - q^m| <= c Φ q^{m/2}
    let lhs = (m as u128)
        .checked_mul(totient)
        .and_then(|x| x.checked_mul(count))
        .ok_or_else(|| Error::Overflow("m Φ(h) #S_m(a,h)".into()))?;
    let pass = exact_le(lhs, q as u128, m, c, totient)
        .ok_or_else(|| Error::Overflow("progression bound".into()))?;
    let progression = BoundCheck {
        count,
        main_term: main,
        deviation: (count as f64 - main).abs(),
        bound,
        pass,
    };

    let n = ring.count_irreducibles(m)?;
    let main2 = qf.powf(mf) / mf;
    let lhs2 = (m as u128)
        .checked_mul(n)
        .ok_or_else(|| Error::Overflow("m #S_m".into()))?;
    let pass2 = exact_le(lhs2, q as u128, m, 2, 1)
        .ok_or_else(|| Error::Overflow("irreducible count bound".into()))?;
    let irreducibles = BoundCheck {
        count: n,
        main_term: main2,
        deviation: (n as f64 - main2).abs(),
        bound: 2.0 * sqrt_qm / mf,
        pass: pass2,
    };
    Ok(BoundsReport {
        q,
        m,
        deg_h: dh,
        totient,
        divisors: tm,
        progression,
        irreducibles,
    })
}

/// Residues `a` with `deg a < deg h` and `gcd(a, h) = 1`, in index order.
pub fn unit_classes(ring: &PolyRing, h: &UniPoly) -> Vec<UniPoly> {
    let dh = h.degree().unwrap_or(0);
    let q = ring.field().order() as u128;
    (1..q.pow(dh as u32))
        .map(|i| ring.poly_from_index(dh, i))
        .filter(|a| ring.gcd(a, h) == UniPoly::one())
        .collect()
}
