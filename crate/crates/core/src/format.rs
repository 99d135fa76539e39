//! JSON documents for parameters, built codes, messages and words.
//!
//! An `F_q` element is an ascending array of `e` integers in `0..p` (a bare
//! integer is also accepted when `e = 1`). An `F_{q^m}` element is an array of
//! `m` such `F_q` elements. Polynomials over `F_q` are written as ascending
//! coefficient arrays; text such as `"T^5+2T+1"` is accepted on input.

use serde::{Deserialize, Serialize};

use crate::code::{build_code, CodeInstance, CodeParams, Codeword, Explicit, Message};
use crate::error::{Error, Result};
use crate::field::{BaseField, FieldTower, Fq, Fqm};
use crate::poly::{PolyRing, UniPoly};
use crate::twisted::TwistedPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FqJson {
    Int(u32),
    Digits(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyJson {
    Text(String),
    Coeffs(Vec<FqJson>),
}

pub type FqmJson = Vec<FqJson>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub p: u64,
    pub e: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fq_modulus: Option<Vec<u32>>,
    pub r: usize,
    pub delta: usize,
    pub ell: usize,
    pub s: usize,
    pub a: Vec<FqJson>,
    pub m: usize,
    #[serde(rename = "P", default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<PolyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fqm_modulus: Option<PolyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<FqmJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<Vec<FqmJson>>>,
}

/// A built code: the parameters with every optional field resolved, plus the
/// 1-based locality sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    #[serde(flatten)]
    pub params: ParamsFile,
    pub locality_sets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MessageFile {
    pub p: u64,
    pub e: usize,
    pub m: usize,
    /// `blocks[k][j]` is the coefficient of `τ^j` in `g_k`.
    pub blocks: Vec<Vec<FqmJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordFile {
    pub code_ref: String,
    pub p: u64,
    pub e: usize,
    pub m: usize,
    pub entries: Vec<Option<FqmJson>>,
}

fn fmt_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| fmt_err(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

/// 64-bit FNV-1a of the canonical code document, used as `code_ref`.
pub fn fingerprint(code: &CodeFile) -> String {
    let text = serde_json::to_string(code).expect("documents serialize");
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("fnv1a64:{h:016x}")
}

pub fn fq_to_json(f: &BaseField, c: Fq) -> FqJson {
    FqJson::Digits(f.digits(c))
}

pub fn fq_from_json(f: &BaseField, v: &FqJson, field: &str) -> Result<Fq> {
    let digits = match v {
        FqJson::Int(n) if f.degree() == 1 => vec![*n],
        FqJson::Int(_) => {
            return Err(fmt_err(format!(
                "{field}: expected an array of {} digits",
                f.degree()
            )))
        }
        FqJson::Digits(d) => d.clone(),
    };
    if digits.len() != f.degree() {
        return Err(fmt_err(format!(
            "{field}: expected {} digits, got {}",
            f.degree(),
            digits.len()
        )));
    }
    f.from_digits(&digits)
        .map_err(|e| fmt_err(format!("{field}: {e}")))
}

pub fn fqm_to_json(t: &FieldTower, x: &Fqm) -> FqmJson {
    x.coords()
        .iter()
        .map(|&c| fq_to_json(t.base(), c))
        .collect()
}

fn coords_from_json(f: &BaseField, m: usize, v: &FqmJson, field: &str) -> Result<Vec<Fq>> {
    if v.len() != m {
        return Err(fmt_err(format!(
            "{field}: expected {m} coordinates, got {}",
            v.len()
        )));
    }
    v.iter()
        .enumerate()
        .map(|(i, c)| fq_from_json(f, c, &format!("{field}[{i}]")))
        .collect()
}

pub fn fqm_from_json(t: &FieldTower, v: &FqmJson, field: &str) -> Result<Fqm> {
    t.element(coords_from_json(t.base(), t.degree(), v, field)?)
}

pub fn poly_to_json(f: &BaseField, p: &UniPoly) -> PolyJson {
    PolyJson::Coeffs(p.coeffs().iter().map(|&c| fq_to_json(f, c)).collect())
}

pub fn poly_from_json(ring: &PolyRing, v: &PolyJson, field: &str, var: char) -> Result<UniPoly> {
    match v {
        PolyJson::Text(s) => ring
            .parse_in(s, var)
            .map_err(|e| fmt_err(format!("{field}: {e}"))),
        PolyJson::Coeffs(cs) => Ok(UniPoly::new(
            cs.iter()
                .enumerate()
                .map(|(i, c)| fq_from_json(ring.field(), c, &format!("{field}[{i}]")))
                .collect::<Result<_>>()?,
        )),
    }
}

impl ParamsFile {
    pub fn field(&self) -> Result<BaseField> {
        let f = match &self.fq_modulus {
            Some(m) => BaseField::extension(self.p, m)?,
            None => BaseField::with_order(
                self.p
                    .checked_pow(self.e as u32)
                    .ok_or_else(|| fmt_err("p^e overflows"))?,
            )?,
        };
        if f.characteristic() as u64 != self.p || f.degree() != self.e {
            return Err(fmt_err(format!(
                "fq_modulus has degree {} but e = {}",
                f.degree(),
                self.e
            )));
        }
        Ok(f)
    }

    pub fn to_params(&self) -> Result<(CodeParams, Explicit)> {
        let field = self.field()?;
        let ring = PolyRing::new(field.clone());
        let a = self
            .a
            .iter()
            .enumerate()
            .map(|(i, v)| fq_from_json(&field, v, &format!("a[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let prime = self
            .prime
            .as_ref()
            .map(|p| poly_from_json(&ring, p, "P", 'T'))
            .transpose()?;
        let modulus = match (&self.fqm_modulus, &self.z) {
            (Some(md), Some(z)) => Some((
                poly_from_json(&ring, md, "fqm_modulus", 'x')?,
                coords_from_json(&field, self.m, z, "z")?,
            )),
            (None, None) => None,
            _ => return Err(fmt_err("fqm_modulus and z must be given together")),
        };
        let bases = self
            .bases
            .as_ref()
            .map(|rows| {
                rows.iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, b)| {
                                coords_from_json(&field, self.m, b, &format!("bases[{i}][{j}]"))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        let params = CodeParams {
            field,
            r: self.r,
            delta: self.delta,
            ell: self.ell,
            s: self.s,
            a,
            m: self.m,
            prime,
        };
        Ok((params, Explicit { modulus, bases }))
    }

    pub fn build(&self) -> Result<CodeInstance> {
        let (params, explicit) = self.to_params()?;
        build_code(&params, &explicit)
    }
}

impl CodeFile {
    pub fn from_instance(code: &CodeInstance) -> Self {
        let p = &code.params;
        let f = &p.field;
        let t = &code.tower;
        CodeFile {
            params: ParamsFile {
                p: f.characteristic() as u64,
                e: f.degree(),
                fq_modulus: f.modulus().map(<[u32]>::to_vec),
                r: p.r,
                delta: p.delta,
                ell: p.ell,
                s: p.s,
                a: p.a.iter().map(|&c| fq_to_json(f, c)).collect(),
                m: p.m,
                prime: Some(poly_to_json(f, &code.prime)),
                fqm_modulus: Some(poly_to_json(f, t.modulus())),
                z: Some(fqm_to_json(t, t.z())),
                bases: Some(
                    code.bases
                        .iter()
                        .map(|row| row.iter().map(|b| fqm_to_json(t, b)).collect())
                        .collect(),
                ),
            },
            locality_sets: code
                .locality_sets
                .iter()
                .map(|s| s.iter().map(|c| c + 1).collect())
                .collect(),
        }
    }

    /// Rebuilds and revalidates the code, checking the locality sets.
    pub fn to_instance(&self) -> Result<CodeInstance> {
        let code = self.params.build()?;
        if CodeFile::from_instance(&code).locality_sets != self.locality_sets {
            return Err(fmt_err("locality_sets do not match the group-major layout"));
        }
        Ok(code)
    }
}

impl MessageFile {
    pub fn from_message(code: &CodeInstance, msg: &Message) -> Self {
        let t = &code.tower;
        let f = t.base();
        MessageFile {
            p: f.characteristic() as u64,
            e: f.degree(),
            m: t.degree(),
            blocks: msg
                .blocks
                .iter()
                .map(|g| g.coeffs().iter().map(|c| fqm_to_json(t, c)).collect())
                .collect(),
        }
    }

    pub fn to_message(&self, code: &CodeInstance) -> Result<Message> {
        let t = &code.tower;
        check_shape(t, self.p, self.e, self.m)?;
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(k, g)| {
                Ok(TwistedPoly::new(
                    g.iter()
                        .enumerate()
                        .map(|(j, c)| fqm_from_json(t, c, &format!("blocks[{k}][{j}]")))
                        .collect::<Result<_>>()?,
                ))
            })
            .collect::<Result<_>>()?;
        Ok(Message { blocks })
    }
}

fn check_shape(t: &FieldTower, p: u64, e: usize, m: usize) -> Result<()> {
    let f = t.base();
    if p != f.characteristic() as u64 || e != f.degree() || m != t.degree() {
        return Err(fmt_err(format!(
            "document is over p = {p}, e = {e}, m = {m}; code has p = {}, e = {}, m = {}",
            f.characteristic(),
            f.degree(),
            t.degree()
        )));
    }
    Ok(())
}

impl WordFile {
    pub fn from_codeword(code: &CodeInstance, code_ref: &str, word: &Codeword) -> Self {
        let t = &code.tower;
        let f = t.base();
        WordFile {
            code_ref: code_ref.to_string(),
            p: f.characteristic() as u64,
            e: f.degree(),
            m: t.degree(),
            entries: word
                .entries
                .iter()
                .map(|x| x.as_ref().map(|v| fqm_to_json(t, v)))
                .collect(),
        }
    }

    pub fn to_codeword(&self, code: &CodeInstance) -> Result<Codeword> {
        let t = &code.tower;
        check_shape(t, self.p, self.e, self.m)?;
        if self.entries.len() != code.n() {
            return Err(fmt_err(format!(
                "entries: expected {} entries, got {}",
                code.n(),
                self.entries.len()
            )));
        }
        Ok(Codeword {
            entries: self
                .entries
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    x.as_ref()
                        .map(|v| fqm_from_json(t, v, &format!("entries[{i}]")))
                        .transpose()
                })
                .collect::<Result<_>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{verify_code, VerifyMode};
    use crate::repro;
    use rand::SeedableRng;

    #[test]
    fn code_round_trip() {
        let code = repro::example_code().unwrap();
        let file = CodeFile::from_instance(&code);
        let text = to_json(&file);
        let back: CodeFile = from_json(&text).unwrap();
        assert_eq!(back, file);
        let rebuilt = back.to_instance().unwrap();
        assert_eq!(rebuilt.bases, code.bases);
        assert_eq!(CodeFile::from_instance(&rebuilt), file);
        assert_eq!(fingerprint(&back), fingerprint(&file));
        let mode = VerifyMode::Sampled {
            samples: 20,
            seed: 3,
        };
        assert_eq!(
            verify_code(&rebuilt, mode, false).unwrap(),
            verify_code(&code, mode, false).unwrap()
        );
        assert_eq!(file.locality_sets[1], vec![4, 5, 6]);
    }

    #[test]
    fn params_text_and_defaults() {
        let text = r#"{"p":3,"e":1,"r":1,"delta":2,"ell":2,"s":1,"a":[1,[2]],"m":5}"#;
        let pf: ParamsFile = from_json(text).unwrap();
        let code = pf.build().unwrap();
        assert_eq!(code.tower.ring().display(&code.prime), "T^5+2T+1");
        let with_p =
            r#"{"p":3,"e":1,"r":1,"delta":2,"ell":2,"s":1,"a":[1,2],"m":5,"P":"T^5+2T+1"}"#;
        assert_eq!(
            from_json::<ParamsFile>(with_p)
                .unwrap()
                .build()
                .unwrap()
                .bases,
            code.bases
        );
    }

    #[test]
    fn diagnostics() {
        let bad = r#"{"p":3,"e":1,"r":1,"delta":2,"ell":2,"s":1,"a":[1,2],"m":5,"bogus":1}"#;
        assert!(
            matches!(from_json::<ParamsFile>(bad), Err(Error::Format(s)) if s.contains("bogus"))
        );
        let digits = r#"{"p":4,"e":1,"r":1,"delta":2,"ell":2,"s":1,"a":[1,2],"m":5}"#;
        assert!(from_json::<ParamsFile>(digits).unwrap().build().is_err());
        let f8 = BaseField::with_order(8).unwrap();
        assert!(fq_from_json(&f8, &FqJson::Int(3), "a[0]").is_err());
        assert_eq!(
            fq_from_json(&f8, &FqJson::Digits(vec![0, 1, 0]), "a[0]").unwrap(),
            f8.generator()
        );
    }

    #[test]
    fn word_and_message_round_trip() {
        let code = repro::example_code().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let msg = code.random_message(&mut rng);
        let mf = MessageFile::from_message(&code, &msg);
        let back: MessageFile = from_json(&to_json(&mf)).unwrap();
        assert_eq!(back.to_message(&code).unwrap(), msg);
        let w = code.encode(&msg).unwrap().erase(&[2, 7]).unwrap();
        let wf = WordFile::from_codeword(&code, "x", &w);
        let text = to_json(&wf);
        assert!(text.contains("null"));
        let back: WordFile = from_json(&text).unwrap();
        assert_eq!(back.to_codeword(&code).unwrap(), w);
    }
}
