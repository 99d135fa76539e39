//! Rank-metric codes with `(r, δ)` rank-locality: codewords are the values of
//! `f = Σ g_k φ̄_{T^R}^k` on bases of the torsion spaces `φ̄[T^R - a_i]`.

mod params;
mod verify;

pub use params::CodeParams;
pub use verify::{verify_code, VerifyMode, VerifyReport, GLOBAL_GUARD, LOCAL_GUARD};

use crate::carlitz::ReducedCarlitz;
use crate::dirichlet::find_prime;
use crate::error::{Error, Result};
use crate::field::{FieldTower, Fq, Fqm, MatrixFq};
use crate::poly::{PolyRing, UniPoly};
use crate::twisted::{LinearizedPoly, TwistedPoly};

/// A message: `s + 1` blocks `g_k` of τ-degree at most `r - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Message {
    pub blocks: Vec<TwistedPoly>,
}

/// Entries in group-major column order; `None` marks an erasure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    pub entries: Vec<Option<Fqm>>,
}

impl Codeword {
    pub fn from_values(values: Vec<Fqm>) -> Self {
        Self {
            entries: values.into_iter().map(Some).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn has_erasures(&self) -> bool {
        self.entries.iter().any(Option::is_none)
    }

    pub fn values(&self) -> Result<Vec<Fqm>> {
        self.entries
            .iter()
            .map(|e| e.clone().ok_or(Error::ErasuresPresent))
            .collect()
    }

    /// The `m x n` matrix over `F_q` whose columns expand the entries.
    pub fn matrix(&self, tower: &FieldTower) -> Result<MatrixFq> {
        Ok(tower.expand_columns(&self.values()?))
    }

    /// Copy with the given 0-based columns erased.
    pub fn erase(&self, columns: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        for &c in columns {
            let slot = out.entries.get_mut(c).ok_or_else(|| {
                Error::Precondition(format!("column {} out of range 1..={}", c + 1, self.len()))
            })?;
            *slot = None;
        }
        Ok(out)
    }
}

/// An instantiated code. Immutable once built.
#[derive(Clone, Debug)]
pub struct CodeInstance {
    pub params: CodeParams,
    pub prime: UniPoly,
    pub tower: FieldTower,
    pub module: ReducedCarlitz,
    /// `bases[i][j]` is `β_{j+1}^{(i+1)}`.
    pub bases: Vec<Vec<Fqm>>,
    /// 0-based columns of each locality set.
    pub locality_sets: Vec<Vec<usize>>,
    phi_tr: TwistedPoly,
}

/// Caller-supplied tower data: an `F_{q^m}` modulus with a root `z` of `P`,
/// and optionally the torsion bases.
#[derive(Clone, Debug, Default)]
pub struct Explicit {
    pub modulus: Option<(UniPoly, Vec<Fq>)>,
    pub bases: Option<Vec<Vec<Vec<Fq>>>>,
}

pub fn build_code(params: &CodeParams, explicit: &Explicit) -> Result<CodeInstance> {
    params.validate(false)?;
    let ring = PolyRing::new(params.field.clone());
    let h = params.h(&ring);
    let prime = match &params.prime {
        Some(p) => p.clone(),
        None => find_prime(&ring, &h, params.m, &UniPoly::one())?
            .found
            .ok_or(Error::NoPrimeFound)?,
    };
    let tower = match &explicit.modulus {
        Some((modulus, z)) => {
            FieldTower::explicit(params.field.clone(), modulus, &prime, z.clone())?
        }
        None => FieldTower::from_prime(params.field.clone(), &prime)?,
    };
    let module = ReducedCarlitz::carlitz(&tower);
    let factors = params.factors(&ring);
    let big_r = params.big_r();

    let bases = match &explicit.bases {
        None => factors
            .iter()
            .map(|f| {
                let w = module.torsion_space(f)?;
                if w.dim != big_r {
                    return Err(Error::ConstructionBroken(format!(
                        "dim φ̄[{}] = {} != R = {big_r}",
                        ring.display(f),
                        w.dim
                    )));
                }
                Ok(w.basis)
            })
            .collect::<Result<Vec<_>>>()?,
        Some(rows) => {
            if rows.len() != params.ell || rows.iter().any(|r| r.len() != big_r) {
                return Err(Error::InvalidBasis(format!(
                    "expected {} rows of {big_r} elements",
                    params.ell
                )));
            }
            let mut out = Vec::new();
            for (i, (row, f)) in rows.iter().zip(&factors).enumerate() {
                let row = row
                    .iter()
                    .map(|c| tower.element(c.clone()))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| Error::InvalidBasis(format!("group {}: {e}", i + 1)))?;
                let phi = module.phi_of(f);
                if let Some(j) = row.iter().position(|b| !phi.evaluate(b, &tower).is_zero()) {
                    return Err(Error::InvalidBasis(format!(
                        "β_{}^{} is not in the kernel of φ̄_{}",
                        j + 1,
                        i + 1,
                        ring.display(f)
                    )));
                }
                if tower.fq_rank(&row) != big_r {
                    return Err(Error::InvalidBasis(format!(
                        "group {} basis is F_q-dependent",
                        i + 1
                    )));
                }
                out.push(row);
            }
            out
        }
    };
    let all: Vec<Fqm> = bases.iter().flatten().cloned().collect();
    if tower.fq_rank(&all) != params.n() {
        return Err(Error::ConstructionBroken(
            "torsion spaces do not form a direct sum".into(),
        ));
    }
    let locality_sets = (0..params.ell)
        .map(|i| (i * big_r..(i + 1) * big_r).collect())
        .collect();
    let tr = UniPoly::monomial(params.field.one(), big_r);
    let phi_tr = module.phi_of(&tr);
    Ok(CodeInstance {
        params: params.clone(),
        prime,
        tower,
        module,
        bases,
        locality_sets,
        phi_tr,
    })
}

impl CodeInstance {
    pub fn n(&self) -> usize {
        self.params.n()
    }

    /// `φ̄_{T^R}`.
    pub fn phi_tr(&self) -> &TwistedPoly {
        &self.phi_tr
    }

    /// Evaluation points in column order.
    pub fn points(&self) -> Vec<Fqm> {
        self.bases.iter().flatten().cloned().collect()
    }

    /// 0-based group of 0-based column `t`.
    pub fn group_of(&self, t: usize) -> usize {
        t / self.params.big_r()
    }

    pub fn check_message(&self, msg: &Message) -> Result<()> {
        let p = &self.params;
        if msg.blocks.len() != p.s + 1 {
            return Err(Error::Precondition(format!(
                "message has {} blocks, expected s+1 = {}",
                msg.blocks.len(),
                p.s + 1
            )));
        }
        for (k, g) in msg.blocks.iter().enumerate() {
            g.check(&self.tower)?;
            if let Some(d) = g.degree().filter(|&d| d >= p.r) {
                return Err(Error::BlockDegreeOverflow {
                    block: k,
                    degree: d,
                    max: p.r - 1,
                });
            }
        }
        Ok(())
    }

    /// `f = Σ_k g_k φ̄_{T^R}^k`.
    pub fn message_poly(&self, msg: &Message) -> Result<TwistedPoly> {
        self.check_message(msg)?;
        let t = &self.tower;
        let mut f = TwistedPoly::zero();
        for g in msg.blocks.iter().rev() {
            f = f.mul(&self.phi_tr, t).add(g, t);
        }
        Ok(f)
    }

    pub fn encode(&self, msg: &Message) -> Result<Codeword> {
        let f = self.message_poly(msg)?;
        Ok(Codeword::from_values(
            self.points()
                .iter()
                .map(|b| f.evaluate(b, &self.tower))
                .collect(),
        ))
    }

    /// `f|_{W_i} = Σ_k a_i^k g_k` for 0-based group `i`.
    pub fn restriction(&self, msg: &Message, i: usize) -> Result<LinearizedPoly> {
        self.check_message(msg)?;
        let t = &self.tower;
        let f = t.base();
        let ai = *self
            .params
            .a
            .get(i)
            .ok_or_else(|| Error::Precondition(format!("group {} out of range", i + 1)))?;
        let mut acc = TwistedPoly::zero();
        let mut pow = f.one();
        for g in &msg.blocks {
            acc = acc.add(&g.scale_left(&t.embed(pow), t), t);
            pow = f.mul(pow, ai);
        }
        Ok(acc.to_linearized())
    }

    /// Interpolates group `i` from the listed 0-based surviving columns.
    pub fn recovery_polynomial(
        &self,
        word: &Codeword,
        survivors: &[usize],
    ) -> Result<LinearizedPoly> {
        let points = self.points();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for &c in survivors {
            let v = word
                .entries
                .get(c)
                .ok_or_else(|| Error::Precondition(format!("column {} out of range", c + 1)))?
                .clone()
                .ok_or(Error::ErasuresPresent)?;
            xs.push(points[c].clone());
            ys.push(v);
        }
        interpolate_linearized(&xs, &ys, self.params.r, &self.tower)
    }

    /// Fills every erased entry from the `r` lowest-indexed survivors of its
    /// locality set.
    pub fn recover(&self, word: &Codeword) -> Result<Codeword> {
        if word.len() != self.n() {
            return Err(Error::Precondition(format!(
                "word has {} entries, code length is {}",
                word.len(),
                self.n()
            )));
        }
        let points = self.points();
        let r = self.params.r;
        let mut out = word.clone();
        for (i, set) in self.locality_sets.iter().enumerate() {
            let erased: Vec<usize> = set
                .iter()
                .copied()
                .filter(|&c| word.entries[c].is_none())
                .collect();
            if erased.is_empty() {
                continue;
            }
            let survivors: Vec<usize> = set
                .iter()
                .copied()
                .filter(|&c| word.entries[c].is_some())
                .collect();
            if survivors.len() < r {
                return Err(Error::InsufficientSurvivors {
                    group: i + 1,
                    survivors: survivors.len(),
                    needed: r,
                });
            }
            let poly = self.recovery_polynomial(word, &survivors[..r])?;
            for c in erased {
                out.entries[c] = Some(poly.evaluate(&points[c], &self.tower));
            }
        }
        Ok(out)
    }

    pub fn rank_weight(&self, word: &Codeword) -> Result<usize> {
        Ok(word.matrix(&self.tower)?.rank(self.tower.base()))
    }

    pub fn rank_distance(&self, a: &Codeword, b: &Codeword) -> Result<usize> {
        if a.len() != b.len() {
            return Err(Error::Precondition("codeword lengths differ".into()));
        }
        let t = &self.tower;
        let (va, vb) = (a.values()?, b.values()?);
        let diff: Vec<Fqm> = va.iter().zip(&vb).map(|(x, y)| t.sub(x, y)).collect();
        Ok(t.fq_rank(&diff))
    }

    pub fn zero_message(&self) -> Message {
        Message {
            blocks: vec![TwistedPoly::zero(); self.params.s + 1],
        }
    }

    pub fn random_message<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Message {
        let t = &self.tower;
        Message {
            blocks: (0..=self.params.s)
                .map(|_| TwistedPoly::new((0..self.params.r).map(|_| t.random(rng)).collect()))
                .collect(),
        }
    }

    /// The `m (s+1) r` messages `x^u τ^j` in block `k`, an `F_q`-basis of
    /// the message space.
    pub fn basis_messages(&self) -> Vec<Message> {
        let p = &self.params;
        let t = &self.tower;
        let mut out = Vec::with_capacity(p.fq_dimension());
        for k in 0..=p.s {
            for j in 0..p.r {
                let mut x = t.one();
                for _ in 0..p.m {
                    let mut msg = self.zero_message();
                    msg.blocks[k] = TwistedPoly::monomial(x.clone(), j, t);
                    out.push(msg);
                    x = t.mul(&x, &t.gen());
                }
            }
        }
        out
    }
}

/// The unique linearized polynomial of q-degree below `r` with
/// `L(points[i]) = values[i]`, by solving the Moore system over `F_{q^m}`.
pub fn interpolate_linearized(
    points: &[Fqm],
    values: &[Fqm],
    r: usize,
    tower: &FieldTower,
) -> Result<LinearizedPoly> {
    if points.len() != r || values.len() != r {
        return Err(Error::Precondition(format!(
            "need exactly r = {r} points and values, got {} and {}",
            points.len(),
            values.len()
        )));
    }
    for x in points.iter().chain(values) {
        tower.check(x)?;
    }
    // rows: [p_i, p_i^q, ..., p_i^{q^{r-1}} | v_i]
    let mut rows: Vec<Vec<Fqm>> = points
        .iter()
        .zip(values)
        .map(|(p, v)| {
            let mut row: Vec<Fqm> = (0..r).map(|j| tower.frobenius(p, j)).collect();
            row.push(v.clone());
            row
        })
        .collect();
    for col in 0..r {
        let piv = (col..r)
            .find(|&i| !rows[i][col].is_zero())
            .ok_or(Error::MooreSingular)?;
        rows.swap(col, piv);
        let inv = tower.inv(&rows[col][col])?;
        rows[col] = rows[col].iter().map(|x| tower.mul(x, &inv)).collect();
        for i in 0..r {
            if i != col && !rows[i][col].is_zero() {
                let c = rows[i][col].clone();
                let pivot_row = rows[col].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = tower.sub(x, &tower.mul(&c, y));
                }
            }
        }
    }
    Ok(LinearizedPoly::new(
        rows.into_iter().map(|mut row| row.pop().unwrap()).collect(),
    ))
}
