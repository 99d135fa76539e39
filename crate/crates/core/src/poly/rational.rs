use std::fmt;
use std::ops::Add;

use super::{PolyRing, UniPoly};
use crate::error::{Error, Result};

/// Value of `v_P`: an integer, or `∞` at zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(n) => write!(f, "{n}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Element of `F_q(T)` in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    pub fn new(ring: &PolyRing, num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = ring.gcd(&num, &den);
        let num = ring.div_rem(&num, &g)?.0;
        let den = ring.div_rem(&den, &g)?.0;
        let inv = ring.field().inv(den.lead())?;
        Ok(Self {
            num: ring.scale(inv, &num),
            den: ring.scale(inv, &den),
        })
    }

    pub fn zero() -> Self {
        Self {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn from_poly(num: UniPoly) -> Self {
        Self {
            num,
            den: UniPoly::one(),
        }
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &Self, ring: &PolyRing) -> Self {
        Self::new(
            ring,
            ring.mul(&self.num, &other.num),
            ring.mul(&self.den, &other.den),
        )
        .expect("product of nonzero denominators")
    }

    pub fn display(&self, ring: &PolyRing) -> String {
        if self.den == UniPoly::one() {
            ring.display(&self.num)
        } else {
            format!(
                "({})/({})",
                ring.display(&self.num),
                ring.display(&self.den)
            )
        }
    }

    /// Parses `num` or `num/den`, each side a polynomial in `T`.
    pub fn parse(text: &str, ring: &PolyRing) -> Result<Self> {
        match split_top_level_slash(text) {
            Some((n, d)) => Self::new(
                ring,
                ring.parse(strip_parens(n))?,
                ring.parse(strip_parens(d))?,
            ),
            None => Ok(Self::from_poly(ring.parse(text)?)),
        }
    }
}

fn split_top_level_slash(text: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some((&text[..i], &text[i + 1..])),
            _ => {}
        }
    }
    None
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') {
        let inner = &t[1..t.len() - 1];
        // only strip when the parentheses enclose the whole expression
        let mut depth = 0i32;
        for ch in inner.chars() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth < 0 {
                        return t;
                    }
                }
                _ => {}
            }
        }
        inner
    } else {
        t
    }
}
