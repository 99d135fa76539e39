//! Embedded reference data: the worked `q = 5, m = 10` example and the table
//! of primes `P = u h + 1`, plus the checks that replay them.
//!
//! Elements of `F_{q^m}` are written as polynomials in `x`, the class of `x`
//! modulo the tower modulus.

use serde::Serialize;

use crate::code::{build_code, CodeInstance, CodeParams, Codeword, Explicit, Message};
use crate::error::Result;
use crate::field::{BaseField, FieldTower, Fqm};
use crate::poly::{PolyRing, UniPoly};
use crate::twisted::{LinearizedPoly, TwistedPoly};

pub mod example {
    pub const Q: u64 = 5;
    pub const R: usize = 2;
    pub const DELTA: usize = 2;
    pub const ELL: usize = 3;
    pub const S: usize = 2;
    pub const M: usize = 10;
    pub const A: [i64; 3] = [1, 2, 3];
    pub const H: &str = "T^9+4T^6+T^3+4";
    pub const P: &str = "T^10+4T^9+4T^7+T^6+T^4+4T^3+4T+2";
    pub const U: &str = "T+4";
    pub const MODULUS: &str = "x^10+3x^5+3x^4+2x^3+4x^2+x+2";
    pub const Z: &str = "3x^8+2x^7+x^5+4x^4+3x^3+2x^2+3x+2";
    /// `BASES[i][j]` is `β_{j+1}^{i+1}`.
    pub const BASES: [[&str; 3]; 3] = [
        [
            "4x^8+2x^7+2x^5+2x^4+3x^2+1",
            "x^9+3x^8+4x^7+2x^6+2x^5+2x^4+4x^2+x",
            "4x^9+3x^8+4x^7+2x^5+x^3",
        ],
        [
            "2x^9+3x^8+4x^7+x^6+3x^5+x^4+3x^3+1",
            "4x^8+x^7+4x^6+2x^5+4x^4+x^3+x",
            "4x^8+3x^7+x^6+4x^3+x^2",
        ],
        [
            "4x^7+3x^6+x^5+2x^4+2x^3+1",
            "4x^9+x^8+4x^7+4x^6+2x^4+x",
            "x^9+3x^7+2x^6+2x^5+x^4+2x^3+x^2",
        ],
    ];
    /// Linearized coefficients (of `x`, `x^5`) of `g_0, g_1, g_2`.
    pub const MESSAGE: [[&str; 2]; 3] = [["1", "x"], ["0", "x+1"], ["x^2+x", "0"]];
    pub const ENCODING: [&str; 9] = [
        "2x^9+x^8+2x^7+x^6+3x^3+3x^2+4x",
        "4x^9+2x^8+2x^6+4x^5+2x^4+3x^3+3x^2+3x+1",
        "3x^9+3x^8+x^7+3x^6+2x^5+3x^4+3x^2+1",
        "3x^9+x^8+2x^6+x^5+x^4+2x^2+3x+1",
        "3x^7+3x^6+3x^5+2x^4+4x^2+4x+2",
        "3x^9+4x^8+3x^7+3x^6+3x^5+4x^4+1",
        "4x^8+2x^7+2x^6+3x^2+x+3",
        "2x^8+3x^7+2x^6+2x^4+x^3+2x^2+3",
        "2x^9+2x^8+2x^7+2x^6+4x^5+x^4+4x^3+x^2+x+1",
    ];
    /// `f|_{W_2}` as coefficients of `x`, `x^5`.
    pub const RECOVERY: [&str; 2] = ["4x^2+4x+1", "3x+2"];
    /// 0-based column erased in the example (`f_5`).
    pub const ERASED: usize = 4;
}

/// One row of the table of primes `P = u h + 1`.
#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub q: u64,
    pub big_r: usize,
    pub ell: usize,
    pub a: &'static [&'static str],
    pub h: &'static str,
    pub m: usize,
    pub u: &'static str,
    pub p: &'static str,
}

const A5: &[&str] = &["1", "2", "3"];
const A7: &[&str] = &["1", "2"];
const A8: &[&str] = &["1", "a"];
const H5: &str = "T^9+4T^6+T^3+4";
const H7: &str = "T^6+4T^3+2";
const H8: &str = "T^6+(a+1)T^3+a";

macro_rules! row {
    ($q:expr, $ell:expr, $a:expr, $h:expr, $m:expr, $u:expr, $p:expr) => {
        TableRow {
            q: $q,
            big_r: 3,
            ell: $ell,
            a: $a,
            h: $h,
            m: $m,
            u: $u,
            p: $p,
        }
    };
}

pub const TABLE: [TableRow; 18] = [
    row!(5, 3, A5, H5, 10, "T+2", "T^10+2T^9+4T^7+3T^6+T^4+2T^3+4T+4"),
    row!(
        5,
        3,
        A5,
        H5,
        11,
        "T^2+T",
        "T^11+T^10+4T^8+4T^7+T^5+T^4+4T^2+4T+1"
    ),
    row!(5, 3, A5, H5, 12, "T^3+2", "T^12+T^9+4T^6+T^3+4"),
    row!(
        5,
        3,
        A5,
        H5,
        13,
        "T^4+2T+4",
        "T^13+T^10+4T^9+4T^7+T^6+T^4+4T^3+3T+2"
    ),
    row!(
        5,
        3,
        A5,
        H5,
        14,
        "T^5+4T",
        "T^14+4T^11+4T^10+T^8+T^7+4T^5+4T^4+T+1"
    ),
    row!(
        5,
        3,
        A5,
        H5,
        15,
        "T^6+T+2",
        "T^15+4T^12+T^10+3T^9+4T^7+2T^6+T^4+2T^3+4T+4"
    ),
    row!(
        5,
        3,
        A5,
        H5,
        16,
        "T^7+3",
        "T^16+4T^13+T^10+3T^9+4T^7+2T^6+3T^3+3"
    ),
    row!(5, 3, A5, H5, 17, "T^8", "T^17+4T^14+T^11+4T^8+1"),
    row!(7, 2, A7, H7, 7, "T", "T^7+4T^4+2T+1"),
    row!(7, 2, A7, H7, 8, "T^2+1", "T^8+T^6+4T^5+4T^3+2T^2+3"),
    row!(7, 2, A7, H7, 9, "T^3+1", "T^9+5T^6+6T^3+3"),
    row!(7, 2, A7, H7, 10, "T^4+T+5", "T^10+5T^7+5T^6+6T^4+6T^3+2T+4"),
    row!(7, 2, A7, H7, 11, "T^5+6", "T^11+4T^8+6T^6+2T^5+3T^3+6"),
    row!(
        8,
        2,
        A8,
        H8,
        7,
        "T+a^2+a",
        "T^7+(a^2+a)T^6+(a+1)T^4+T^3+aT+a^2+a"
    ),
    row!(8, 2, A8, H8, 8, "T^2", "T^8+(a+1)T^5+aT^2+1"),
    row!(
        8,
        2,
        A8,
        H8,
        9,
        "T^3+aT",
        "T^9+aT^7+(a+1)T^6+(a^2+a)T^4+aT^3+a^2T+1"
    ),
    row!(8, 2, A8, H8, 10, "T^4", "T^10+(a+1)T^7+aT^4+1"),
    row!(8, 2, A8, H8, 11, "T^5", "T^11+(a+1)T^8+aT^5+1"),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub q: u64,
    pub m: usize,
    pub p: String,
    /// `h = ∏ (T^R - a_i)`.
    pub h_matches: bool,
    pub p_is_uh_plus_1: bool,
    pub monic_degree_m: bool,
    pub irreducible: bool,
    pub congruent_1_mod_h: bool,
}

impl RowCheck {
    pub fn pass(&self) -> bool {
        self.h_matches
            && self.p_is_uh_plus_1
            && self.monic_degree_m
            && self.irreducible
            && self.congruent_1_mod_h
    }
}

pub fn check_row(row: &TableRow) -> Result<RowCheck> {
    let ring = PolyRing::new(BaseField::with_order(row.q)?);
    let h = ring.parse(row.h)?;
    let u = ring.parse(row.u)?;
    let p = ring.parse(row.p)?;
    let mut prod = UniPoly::one();
    for a in row.a {
        let ai = ring.parse_fq(a)?;
        let factor = ring.sub(
            &UniPoly::monomial(ring.field().one(), row.big_r),
            &UniPoly::constant(ai),
        );
        prod = ring.mul(&prod, &factor);
    }
    let one = UniPoly::one();
    Ok(RowCheck {
        q: row.q,
        m: row.m,
        p: ring.display(&p),
        h_matches: prod == h && row.a.len() == row.ell,
        p_is_uh_plus_1: ring.add(&ring.mul(&u, &h), &one) == p,
        monic_degree_m: p.is_monic() && p.degree() == Some(row.m),
        irreducible: ring.is_irreducible(&p)?,
        congruent_1_mod_h: ring.rem(&p, &h)? == one,
    })
}

pub fn check_table() -> Result<Vec<RowCheck>> {
    TABLE.iter().map(check_row).collect()
}

fn fqm(ring: &PolyRing, tower: &FieldTower, text: &str) -> Result<Fqm> {
    Ok(tower.from_poly(&ring.parse_in(text, 'x')?))
}

/// Formats an element of `F_{q^m}` as a polynomial in `x`.
pub fn format_fqm(tower: &FieldTower, x: &Fqm) -> String {
    tower.ring().display_in(&tower.to_poly(x), "x")
}

pub fn example_params() -> Result<CodeParams> {
    use example::*;
    let field = BaseField::with_order(Q)?;
    let ring = PolyRing::new(field.clone());
    Ok(CodeParams {
        a: A.iter().map(|&v| field.from_int(v)).collect(),
        field,
        r: R,
        delta: DELTA,
        ell: ELL,
        s: S,
        m: M,
        prime: Some(ring.parse(P)?),
    })
}

pub fn example_explicit() -> Result<Explicit> {
    use example::*;
    let ring = PolyRing::new(BaseField::with_order(Q)?);
    let modulus = ring.parse_in(MODULUS, 'x')?;
    let pad = |t: &str| -> Result<Vec<_>> {
        let p = ring.parse_in(t, 'x')?;
        Ok((0..M).map(|i| p.coeff(i)).collect())
    };
    Ok(Explicit {
        modulus: Some((modulus, pad(Z)?)),
        bases: Some(
            BASES
                .iter()
                .map(|row| row.iter().map(|b| pad(b)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        ),
    })
}

pub fn example_code() -> Result<CodeInstance> {
    build_code(&example_params()?, &example_explicit()?)
}

pub fn example_message(code: &CodeInstance) -> Result<Message> {
    let ring = code.tower.ring();
    let blocks = example::MESSAGE
        .iter()
        .map(|g| {
            Ok(TwistedPoly::new(
                g.iter()
                    .map(|c| fqm(ring, &code.tower, c))
                    .collect::<Result<_>>()?,
            ))
        })
        .collect::<Result<_>>()?;
    Ok(Message { blocks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    Match,
    /// The computed value is the additive inverse of the reference value.
    Negated,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    /// `φ̄_{T^3} = z^3 + (z^2+z^6+z^10) τ + (z+z^5+z^25) τ^2 + τ^3`.
    pub phi_t3_matches: bool,
    pub encodings: Vec<String>,
    pub status: Vec<EntryStatus>,
    pub encodings_matched: usize,
    /// Interpolated from the computed `f_4`, `f_6`.
    pub recovery_polynomial: String,
    pub recovery_matches: bool,
    pub recovered_f5: String,
    pub recovered_f5_matches: bool,
    /// The reference recovery polynomial evaluated at the reference `β_2^2`
    /// equals the reference `f_5`.
    pub reference_recovery_consistent: bool,
    /// Encodings matched when the points of groups 2 and 3 are negated.
    pub negated_points_matched: usize,
}

impl ExampleReport {
    pub fn pass(&self) -> bool {
        self.phi_t3_matches
            && self.encodings_matched == 9
            && self.recovery_matches
            && self.recovered_f5_matches
    }
}

fn statuses(tower: &FieldTower, values: &[Fqm], reference: &[Fqm]) -> Vec<EntryStatus> {
    values
        .iter()
        .zip(reference)
        .map(|(v, e)| {
            if v == e {
                EntryStatus::Match
            } else if *v == tower.neg(e) {
                EntryStatus::Negated
            } else {
                EntryStatus::Mismatch
            }
        })
        .collect()
}

/// Builds the example code from its reference constants, encodes the reference
/// message, erases `f_5` and recovers it from `f_4`, `f_6`.
pub fn run_example() -> Result<ExampleReport> {
    let code = example_code()?;
    let t = &code.tower;
    let ring = t.ring();
    let z = t.z();
    let zp = |k: u64| t.pow(z, k);
    let sum = |ks: &[u64]| ks.iter().fold(t.zero(), |acc, &k| t.add(&acc, &zp(k)));
    let expected_phi = TwistedPoly::new(vec![zp(3), sum(&[2, 6, 10]), sum(&[1, 5, 25]), t.one()]);
    let phi_t3_matches = code.phi_tr() == &expected_phi;

    let reference: Vec<Fqm> = example::ENCODING
        .iter()
        .map(|e| fqm(ring, t, e))
        .collect::<Result<_>>()?;
    let msg = example_message(&code)?;
    let word = code.encode(&msg)?;
    let values = word.values()?;
    let status = statuses(t, &values, &reference);

    let erased = word.erase(&[example::ERASED])?;
    let poly = code.recovery_polynomial(&erased, &[3, 5])?;
    let reference_poly = LinearizedPoly::new(
        example::RECOVERY
            .iter()
            .map(|c| fqm(ring, t, c))
            .collect::<Result<_>>()?,
    );
    let recovered: Codeword = code.recover(&erased)?;
    let f5 = recovered.entries[example::ERASED]
        .clone()
        .expect("recovered");

    let mut explicit = example_explicit()?;
    if let Some(rows) = explicit.bases.as_mut() {
        for row in rows.iter_mut().skip(1) {
            for b in row.iter_mut() {
                let v = t.neg(&t.element(b.clone())?);
                *b = v.coords().to_vec();
            }
        }
    }
    let flipped = build_code(&example_params()?, &explicit)?;
    let flipped_values = flipped.encode(&msg)?.values()?;
    let negated_points_matched = statuses(t, &flipped_values, &reference)
        .iter()
        .filter(|s| **s == EntryStatus::Match)
        .count();

    Ok(ExampleReport {
        phi_t3_matches,
        encodings: values.iter().map(|v| format_fqm(t, v)).collect(),
        encodings_matched: status.iter().filter(|s| **s == EntryStatus::Match).count(),
        status,
        recovery_polynomial: format_linearized(t, &poly),
        recovery_matches: poly == reference_poly,
        recovered_f5: format_fqm(t, &f5),
        recovered_f5_matches: f5 == reference[example::ERASED],
        reference_recovery_consistent: reference_poly.evaluate(&code.bases[1][1], t)
            == reference[example::ERASED],
        negated_points_matched,
    })
}

/// `(c_1)x^q + (c_0)x` style, highest term first.
pub fn format_linearized(tower: &FieldTower, l: &LinearizedPoly) -> String {
    let q = tower.base().order() as u64;
    let terms: Vec<String> = l
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let var = match i {
                0 => "y".to_string(),
                _ => format!("y^{}", q.pow(i as u32)),
            };
            let cs = format_fqm(tower, c);
            if cs == "1" {
                var
            } else if cs.contains('+') {
                format!("({cs}){var}")
            } else {
                format!("{cs}{var}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}
