//! The twisted polynomial ring `F_{q^m}{τ}` and q-linearized polynomials.
//!
//! `(a τ^i)(b τ^j) = a b^{q^i} τ^{i+j}`; the map `ι: a_i τ^i -> a_i x^{q^i}`
//! turns products into compositions.

use crate::error::{Error, Result};
use crate::field::{column_echelon, FieldTower, Fqm, MatrixFq};

/// `Σ c_i τ^i`, ascending, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TwistedPoly {
    coeffs: Vec<Fqm>,
}

/// `Σ c_i x^{q^i}`, ascending, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinearizedPoly {
    coeffs: Vec<Fqm>,
}

fn trim(mut coeffs: Vec<Fqm>) -> Vec<Fqm> {
    while coeffs.last().is_some_and(Fqm::is_zero) {
        coeffs.pop();
    }
    coeffs
}

impl TwistedPoly {
    pub fn new(coeffs: Vec<Fqm>) -> Self {
        Self {
            coeffs: trim(coeffs),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Fqm) -> Self {
        Self::new(vec![c])
    }

    pub fn one(tower: &FieldTower) -> Self {
        Self::constant(tower.one())
    }

    /// `c τ^k`.
    pub fn monomial(c: Fqm, k: usize, tower: &FieldTower) -> Self {
        let mut v = vec![tower.zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn tau(tower: &FieldTower) -> Self {
        Self::monomial(tower.one(), 1, tower)
    }

    pub fn coeffs(&self) -> &[Fqm] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, tower: &FieldTower) -> Fqm {
        self.coeffs.get(i).cloned().unwrap_or_else(|| tower.zero())
    }

    /// τ-degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn check(&self, tower: &FieldTower) -> Result<()> {
        self.coeffs.iter().try_for_each(|c| tower.check(c))
    }

    pub fn add(&self, other: &Self, tower: &FieldTower) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| tower.add(&self.coeff(i, tower), &other.coeff(i, tower)))
                .collect(),
        )
    }

    pub fn neg(&self, tower: &FieldTower) -> Self {
        Self::new(self.coeffs.iter().map(|c| tower.neg(c)).collect())
    }

    pub fn sub(&self, other: &Self, tower: &FieldTower) -> Self {
        self.add(&other.neg(tower), tower)
    }

    /// Left multiplication by a scalar: `c · f`.
    pub fn scale_left(&self, c: &Fqm, tower: &FieldTower) -> Self {
        Self::new(self.coeffs.iter().map(|x| tower.mul(c, x)).collect())
    }

    /// Twisted product, bilinear extension of `(a τ^i)(b τ^j) = a b^{q^i} τ^{i+j}`.
    pub fn mul(&self, other: &Self, tower: &FieldTower) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![tower.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = tower.mul(a, &tower.frobenius(b, i));
                out[i + j] = tower.add(&out[i + j], &term);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize, tower: &FieldTower) -> Self {
        (0..k).fold(Self::one(tower), |acc, _| acc.mul(self, tower))
    }

    /// `Σ c_i x^{q^i}` evaluated at `x`.
    pub fn evaluate(&self, x: &Fqm, tower: &FieldTower) -> Fqm {
        let mut acc = tower.zero();
        let mut xi = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xi = tower.frobenius(&xi, 1);
            }
            if !c.is_zero() {
                acc = tower.add(&acc, &tower.mul(c, &xi));
            }
        }
        acc
    }

    /// Matrix over `F_q` of `x -> f(x)` in the power basis.
    pub fn matrix(&self, tower: &FieldTower) -> MatrixFq {
        let m = tower.degree();
        let mut basis = tower.one();
        let gen = tower.gen();
        let mut cols = Vec::with_capacity(m);
        for _ in 0..m {
            cols.push(self.evaluate(&basis, tower));
            basis = tower.mul(&basis, &gen);
        }
        tower.expand_columns(&cols)
    }

    /// F_q-basis of `{x in F_{q^m} : f(x) = 0}` from the null space of
    /// [`Self::matrix`], in reduced column-echelon form.
    pub fn kernel_basis(&self, tower: &FieldTower) -> Result<Vec<Fqm>> {
        if self.is_zero() {
            return Err(Error::ZeroOperator);
        }
        let ns = self.matrix(tower).null_space(tower.base());
        Ok(ns.into_iter().map(|v| tower.from_column(v)).collect())
    }
}

impl LinearizedPoly {
    pub fn new(coeffs: Vec<Fqm>) -> Self {
        Self {
            coeffs: trim(coeffs),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &[Fqm] {
        &self.coeffs
    }

    /// q-degree; `None` for zero.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn evaluate(&self, x: &Fqm, tower: &FieldTower) -> Fqm {
        self.to_twisted().evaluate(x, tower)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self, tower: &FieldTower) -> Self {
        self.to_twisted()
            .mul(&other.to_twisted(), tower)
            .to_linearized()
    }

    /// `ι⁻¹`.
    pub fn to_twisted(&self) -> TwistedPoly {
        TwistedPoly {
            coeffs: self.coeffs.clone(),
        }
    }
}

impl TwistedPoly {
    /// `ι`.
    pub fn to_linearized(&self) -> LinearizedPoly {
        LinearizedPoly {
            coeffs: self.coeffs.clone(),
        }
    }
}

impl From<TwistedPoly> for LinearizedPoly {
    fn from(f: TwistedPoly) -> Self {
        LinearizedPoly { coeffs: f.coeffs }
    }
}

impl From<LinearizedPoly> for TwistedPoly {
    fn from(f: LinearizedPoly) -> Self {
        TwistedPoly { coeffs: f.coeffs }
    }
}

/// Puts a list of independent elements into reduced column-echelon form.
pub fn echelon_basis(elems: &[Fqm], tower: &FieldTower) -> Vec<Fqm> {
    column_echelon(
        elems.iter().map(|e| e.coords().to_vec()).collect(),
        tower.base(),
    )
    .into_iter()
    .map(|v| tower.from_column(v))
    .collect()
}
