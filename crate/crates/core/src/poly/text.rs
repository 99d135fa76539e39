//! Text form of polynomials: `T^9+4T^6+T^3+4`, `(a+1)T^3+a`, `2x^9+x^8+4x`.
//! The generator of a non-prime `F_q` is written `a` (or `alpha`, `α`).

use super::UniPoly;
use crate::error::{Error, Result};
use crate::field::{BaseField, Fq};

pub fn format_fq(c: Fq, field: &BaseField) -> String {
    if field.degree() == 1 {
        return c.index().to_string();
    }
    let digits = field.digits(c);
    let terms = monomials(&digits, "a");
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn monomials(digits: &[u32], var: &str) -> Vec<String> {
    digits
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &d)| d != 0)
        .map(|(k, &d)| {
            let coef = if d == 1 && k > 0 {
                String::new()
            } else {
                d.to_string()
            };
            match k {
                0 => coef,
                1 => format!("{coef}{var}"),
                _ => format!("{coef}{var}^{k}"),
            }
        })
        .collect()
}

/// Descending-degree text form of an ascending coefficient list.
pub fn format_poly(coeffs: &[Fq], var: &str, field: &BaseField) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = format_fq(c, field);
        let simple = field.degree() == 1 || field.in_prime_field(c) || !cs.contains('+');
        let coef = if k > 0 && c == Fq::ONE {
            String::new()
        } else if simple || k == 0 {
            cs
        } else {
            format!("({cs})")
        };
        terms.push(match k {
            0 => coef,
            1 => format!("{coef}{var}"),
            _ => format!("{coef}{var}^{k}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        if self.chars[self.pos..].iter().take(n).copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in {:?}", self.pos, self.src))
    }

    fn integer(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .ok()
    }

    fn exponent(&mut self) -> Result<usize> {
        if self.eat('^') {
            let braced = self.eat('{');
            let k = self
                .integer()
                .ok_or_else(|| self.err("expected exponent"))? as usize;
            if braced && !self.eat('}') {
                return Err(self.err("expected '}'"));
            }
            Ok(k)
        } else {
            Ok(1)
        }
    }

    fn generator(&mut self) -> bool {
        self.eat_str("alpha") || self.eat('a') || self.eat('α')
    }
}

fn int_in_field(n: u64, field: &BaseField) -> Fq {
    field.from_int((n % field.characteristic() as u64) as i64)
}

/// `[int] [*] [a[^k]]`, at least one part present.
fn fq_term(cur: &mut Cursor, field: &BaseField) -> Result<Option<Fq>> {
    let n = cur.integer();
    let had_star = n.is_some() && cur.eat('*');
    let gen = if cur.generator() {
        if field.degree() == 1 {
            return Err(cur.err("generator 'a' used over a prime field"));
        }
        let k = cur.exponent()?;
        Some(field.pow(field.generator(), k as u64))
    } else {
        if had_star {
            cur.pos -= 1;
        }
        None
    };
    Ok(match (n, gen) {
        (None, None) => None,
        (Some(n), None) => Some(int_in_field(n, field)),
        (None, Some(g)) => Some(g),
        (Some(n), Some(g)) => Some(field.mul(int_in_field(n, field), g)),
    })
}

/// `fq-term {(+|-) fq-term}` up to the closing parenthesis.
fn fq_sum(cur: &mut Cursor, field: &BaseField) -> Result<Fq> {
    let mut acc = Fq::ZERO;
    let mut negate = cur.eat('-');
    if !negate {
        cur.eat('+');
    }
    loop {
        let t = fq_term(cur, field)?.ok_or_else(|| cur.err("expected F_q term"))?;
        acc = if negate {
            field.sub(acc, t)
        } else {
            field.add(acc, t)
        };
        if cur.eat('+') {
            negate = false;
        } else if cur.eat('-') {
            negate = true;
        } else {
            return Ok(acc);
        }
    }
}

pub(crate) fn parse_fq(text: &str, field: &BaseField) -> Result<Fq> {
    let mut cur = Cursor::new(text);
    let v = fq_sum(&mut cur, field)?;
    if cur.peek().is_some() {
        return Err(cur.err("trailing input"));
    }
    Ok(v)
}

pub(crate) fn parse_poly(text: &str, var: char, field: &BaseField) -> Result<UniPoly> {
    let mut cur = Cursor::new(text);
    if cur.chars.is_empty() {
        return Err(cur.err("empty polynomial"));
    }
    let mut coeffs: Vec<Fq> = Vec::new();
    let mut negate = cur.eat('-');
    if !negate {
        cur.eat('+');
    }
    loop {
        let coef = if cur.eat('(') {
            let v = fq_sum(&mut cur, field)?;
            if !cur.eat(')') {
                return Err(cur.err("expected ')'"));
            }
            Some(v)
        } else {
            fq_term(&mut cur, field)?
        };
        if coef.is_some() {
            cur.eat('*');
        }
        let power = if cur.eat(var) {
            Some(cur.exponent()?)
        } else {
            None
        };
        let (c, k) = match (coef, power) {
            (None, None) => return Err(cur.err("expected term")),
            (Some(c), None) => (c, 0),
            (None, Some(k)) => (Fq::ONE, k),
            (Some(c), Some(k)) => (c, k),
        };
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Fq::ZERO);
        }
        coeffs[k] = if negate {
            field.sub(coeffs[k], c)
        } else {
            field.add(coeffs[k], c)
        };
        if cur.eat('+') {
            negate = false;
        } else if cur.eat('-') {
            negate = true;
        } else {
            break;
        }
    }
    if cur.peek().is_some() {
        return Err(cur.err("trailing input"));
    }
    Ok(UniPoly::new(coeffs))
}
