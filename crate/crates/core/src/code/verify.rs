use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::CodeInstance;
use crate::error::Result;
use crate::field::{BaseField, MatrixFq};
use crate::twisted::{LinearizedPoly, TwistedPoly};

/// Largest message space enumerated exhaustively.
pub const GLOBAL_GUARD: u128 = 10_000_000;
/// Largest local code enumerated exhaustively.
pub const LOCAL_GUARD: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub mode: String,
    /// Set when exhaustive mode was requested above the guard.
    pub fallback: bool,
    pub samples: usize,
    pub n: usize,
    pub m: usize,
    pub dimension_expected: usize,
    pub dimension: usize,
    pub dimension_ok: bool,
    pub designed_distance: usize,
    /// Exact minimum rank weight (exhaustive) or smallest weight seen.
    pub min_rank_weight: usize,
    pub distance_ok: bool,
    pub local_mode: String,
    pub local_distances: Vec<usize>,
    pub local_ok: bool,
    pub singleton_ok: bool,
    pub locality_bound: i64,
    pub optimal: bool,
    pub strict: Option<bool>,
    pub pass: bool,
}

/// Scales each generator by `α^v`, `v < e`, giving an `F_p`-basis.
fn fp_basis(gens: &[MatrixFq], f: &BaseField) -> Vec<MatrixFq> {
    let mut out = Vec::with_capacity(gens.len() * f.degree());
    for g in gens {
        let mut c = f.one();
        for _ in 0..f.degree() {
            out.push(g.scale(c, f));
            c = f.mul(c, f.generator());
        }
    }
    out
}

/// Minimum rank over all nonzero `F_p`-combinations of `basis`. The top
/// digits are split across threads; the rest are walked odometer-style, one
/// matrix addition per step.
fn min_rank(basis: &[MatrixFq], f: &BaseField) -> usize {
    let p = f.characteristic() as usize;
    let d = basis.len();
    if d == 0 {
        return usize::MAX;
    }
    let mut top = 0;
    while top < d && p.pow(top as u32) < 256 {
        top += 1;
    }
    let low = d - top;
    let chunks = p.pow(top as u32);
    let (rows, cols) = (basis[0].rows(), basis[0].cols());
    (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut cur = MatrixFq::zeros(rows, cols);
            let mut c = chunk;
            for b in &basis[low..] {
                for _ in 0..c % p {
                    cur.add_assign(b, f);
                }
                c /= p;
            }
            let mut best = usize::MAX;
            if chunk != 0 {
                best = cur.rank(f);
            }
            let mut digits = vec![0usize; low];
            'walk: loop {
                let mut j = 0;
                loop {
                    if j == low {
                        break 'walk;
                    }
                    cur.add_assign(&basis[j], f);
                    digits[j] += 1;
                    if digits[j] == p {
                        digits[j] = 0;
                        j += 1;
                    } else {
                        break;
                    }
                }
                best = best.min(cur.rank(f));
                if best == 0 {
                    break;
                }
            }
            best
        })
        .min()
        .unwrap_or(usize::MAX)
}

fn flatten(mats: &[MatrixFq]) -> MatrixFq {
    MatrixFq::from_rows(mats.iter().map(|m| m.as_slice().to_vec()).collect())
}

/// Local code of group `i`: values of `x^u τ^j` (`j < r`) on its `R` points.
fn local_generators(code: &CodeInstance, i: usize) -> Vec<MatrixFq> {
    let t = &code.tower;
    let pts = &code.bases[i];
    let mut out = Vec::new();
    for j in 0..code.params.r {
        let mut x = t.one();
        for _ in 0..code.params.m {
            let l = TwistedPoly::monomial(x.clone(), j, t);
            let vals: Vec<_> = pts.iter().map(|b| l.evaluate(b, t)).collect();
            out.push(t.expand_columns(&vals));
            x = t.mul(&x, &t.gen());
        }
    }
    out
}

pub fn verify_code(code: &CodeInstance, mode: VerifyMode, strict: bool) -> Result<VerifyReport> {
    let p = &code.params;
    let t = &code.tower;
    let f = t.base();
    let q = p.q() as u128;
    let n = p.n();
    let big_r = p.big_r();

    let gens: Vec<MatrixFq> = code
        .basis_messages()
        .iter()
        .map(|msg| code.encode(msg)?.matrix(t))
        .collect::<Result<_>>()?;
    let dimension = flatten(&gens).rank(f);
    let dimension_expected = p.fq_dimension();

    let space = q.checked_pow(dimension_expected as u32);
    let (mut exhaustive, mut samples, mut seed) = match mode {
        VerifyMode::Exhaustive => (true, 0, 0),
        VerifyMode::Sampled { samples, seed } => (false, samples, seed),
    };
    let fallback = exhaustive && space.is_none_or(|s| s > GLOBAL_GUARD);
    if fallback {
        exhaustive = false;
        samples = 1000;
        seed = 0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let designed = p.designed_distance();

    let (min_w, distance_ok) = if exhaustive {
        let w = min_rank(&fp_basis(&gens, f), f);
        (w, w == designed)
    } else {
        let mut best = usize::MAX;
        let mut ok = true;
        for _ in 0..samples {
            let msg = code.random_message(&mut rng);
            if msg.blocks.iter().all(TwistedPoly::is_zero) {
                continue;
            }
            let w = code.rank_weight(&code.encode(&msg)?)?;
            ok &= w >= designed && w <= n;
            best = best.min(w);
        }
        (best, ok)
    };

    let local_space = q.checked_pow((p.m * p.r) as u32);
    let local_exhaustive = local_space.is_some_and(|s| s <= LOCAL_GUARD);
    let mut local_distances = Vec::new();
    let mut local_ok = true;
    for i in 0..p.ell {
        if local_exhaustive {
            let d = min_rank(&fp_basis(&local_generators(code, i), f), f);
            local_ok &= d == p.delta;
            local_distances.push(d);
        } else {
            let local_samples = samples.max(100);
            let mut best = usize::MAX;
            for _ in 0..local_samples {
                let l = LinearizedPoly::new((0..p.r).map(|_| t.random(&mut rng)).collect());
                if l.is_zero() {
                    continue;
                }
                let vals: Vec<_> = code.bases[i].iter().map(|b| l.evaluate(b, t)).collect();
                let w = t.fq_rank(&vals);
                local_ok &= w >= p.delta;
                best = best.min(w);
            }
            local_distances.push(best);
        }
    }
    // each column lies in a set of size R
    local_ok &= code.locality_sets.iter().all(|s| s.len() == big_r);

    let d_check = if exhaustive { min_w } else { designed };
    let singleton_ok =
        d_check <= n.min(p.m) && p.m * p.k() <= p.m.max(n) * (n.min(p.m) + 1 - d_check);
    let bound = p.locality_bound();
    let optimal = designed as i64 == bound && (!exhaustive || min_w as i64 == bound);
    let strict = strict.then_some(p.delta < big_r);
    let dimension_ok = dimension == dimension_expected;
    let pass =
        dimension_ok && distance_ok && local_ok && singleton_ok && optimal && strict != Some(false);
    Ok(VerifyReport {
        mode: if exhaustive { "exhaustive" } else { "sampled" }.into(),
        fallback,
        samples: if exhaustive { 0 } else { samples },
        n,
        m: p.m,
        dimension_expected,
        dimension,
        dimension_ok,
        designed_distance: designed,
        min_rank_weight: min_w,
        distance_ok,
        local_mode: if local_exhaustive {
            "exhaustive"
        } else {
            "sampled"
        }
        .into(),
        local_distances,
        local_ok,
        singleton_ok,
        locality_bound: bound,
        optimal,
        strict,
        pass,
    })
}

#[cfg(test)]
pub(crate) fn min_rank_of(gens: &[MatrixFq], f: &BaseField) -> usize {
    min_rank(&fp_basis(gens, f), f)
}
