//! Brute-force reference implementations.
//!
//! Nothing here calls into the optimized paths of `algebra` or `rectangle`:
//! membership is recomputed with a plain table, Apéry exponents are found by
//! testing every coefficient, and rectangles are found without pruning. The
//! only input taken from an [`AlgebraPair`] is its two integer generator lists.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraPair;
use crate::error::{Error, Result};

/// Largest Apéry set [`rectangle_by_exhaustion`] accepts.
pub const MAX_EXHAUSTIVE_APERY: usize = 100_000;

/// `table[x]` iff `x` is a non-negative combination of `gens`.
fn member_table(gens: &[i64], bound: i64) -> Vec<bool> {
    let mut table = vec![false; bound as usize + 1];
    table[0] = true;
    for x in 1..=bound {
        table[x as usize] = gens.iter().any(|&g| g <= x && table[(x - g) as usize]);
    }
    table
}

/// Frobenius-style scan: smallest `c` with every multiple of the gcd from `c`
/// up to `c + max(gens)` present.
fn naive_conductor(gens: &[i64]) -> i64 {
    let g = gens.iter().fold(0, |a, &b| num_integer::gcd(a, b));
    let max = *gens.iter().max().unwrap();
    let mut bound = 4 * max;
    loop {
        let table = member_table(gens, bound);
        let last_gap = (0..=bound).rev().find(|&x| x % g == 0 && !table[x as usize]);
        let c = last_gap.map_or(0, |x| x + g);
        if c + max <= bound {
            return c;
        }
        bound *= 2;
    }
}

struct Model {
    c_table: Vec<bool>,
    e_table: Vec<bool>,
    bound: i64,
}

impl Model {
    fn new(pair: &AlgebraPair, bound: i64) -> Self {
        Model {
            c_table: member_table(pair.coeff_model().generators(), bound),
            e_table: member_table(pair.ext_model().generators(), bound),
            bound,
        }
    }

    fn in_c(&self, x: i64) -> bool {
        x >= 0 && x <= self.bound && self.c_table[x as usize]
    }

    fn in_e(&self, x: i64) -> bool {
        x >= 0 && x <= self.bound && self.e_table[x as usize]
    }

    /// Apéry exponents up to `self.bound`, checking every nonzero `m ∈ C`.
    fn apery(&self) -> Vec<i64> {
        (0..=self.bound)
            .filter(|&s| self.in_e(s) && !(1..=s).any(|m| self.in_c(m) && self.in_e(s - m)))
            .collect()
    }

    fn minimal_monomials(&self, apery: &[i64]) -> Vec<i64> {
        apery
            .iter()
            .copied()
            .filter(|&s| s > 0 && !(1..s).any(|x| self.in_e(x) && self.in_e(s - x)))
            .collect()
    }
}

/// Smallest bound guaranteed to contain every Apéry exponent.
pub fn required_bound(pair: &AlgebraPair) -> i64 {
    naive_conductor(pair.ext_model().generators()) + pair.coeff_model().generators()[0]
}

/// Apéry exponents by the definition: `s ∈ E` with `s - m ∉ E` for every
/// nonzero `m ∈ C`.
pub fn apery_by_definition(pair: &AlgebraPair, bound: i64) -> Result<Vec<i64>> {
    let required = required_bound(pair);
    if bound < required {
        return Err(Error::BoundTooSmall {
            given: bound,
            required,
        });
    }
    Ok(Model::new(pair, bound).apery())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Factorization {
    pub coefficient: i64,
    pub exponents: Vec<i64>,
}

/// Minimal monomials recomputed from scratch.
pub fn minimal_monomials_by_definition(pair: &AlgebraPair) -> Vec<i64> {
    let model = Model::new(pair, required_bound(pair));
    let apery = model.apery();
    model.minimal_monomials(&apery)
}

/// Every `s = s0 + Σ a_i s_i` with `s0 ∈ C` over the minimal monomials `s_i`.
pub fn all_factorizations(pair: &AlgebraPair, s: i64) -> Result<Vec<Factorization>> {
    let bound = required_bound(pair).max(s);
    let model = Model::new(pair, bound);
    if !model.in_e(s) {
        return Err(Error::NotMember { value: s });
    }
    let monomials = model.minimal_monomials(&model.apery());
    let mut out = Vec::new();
    let mut exps = vec![0i64; monomials.len()];
    enumerate_factorizations(&model, &monomials, 0, s, &mut exps, &mut out);
    out.sort();
    Ok(out)
}

fn enumerate_factorizations(
    model: &Model,
    monomials: &[i64],
    i: usize,
    rest: i64,
    exps: &mut Vec<i64>,
    out: &mut Vec<Factorization>,
) {
    if i == monomials.len() {
        if model.in_c(rest) {
            out.push(Factorization {
                coefficient: rest,
                exponents: exps.clone(),
            });
        }
        return;
    }
    for a in 0..=rest / monomials[i] {
        exps[i] = a;
        enumerate_factorizations(model, monomials, i + 1, rest - a * monomials[i], exps, out);
    }
    exps[i] = 0;
}

/// Smallest exponent with two or more representations, scanning up to
/// `conductor(C) + max Apéry`. `None` exactly when the pair is flat.
pub fn unique_representation_scan(pair: &AlgebraPair) -> Option<i64> {
    let apery = Model::new(pair, required_bound(pair)).apery();
    let limit = naive_conductor(pair.coeff_model().generators()) + apery.last().copied().unwrap_or(0);
    let model = Model::new(pair, limit);
    (0..=limit).find(|&s| {
        model.in_e(s) && apery.iter().filter(|&&w| w <= s && model.in_c(s - w)).count() >= 2
    })
}

/// Every ordered size vector (entries ≥ 2, product `|A|`) whose box is the
/// Apéry set, without pruning.
pub fn rectangle_by_exhaustion(pair: &AlgebraPair) -> Result<Vec<Vec<usize>>> {
    let model = Model::new(pair, required_bound(pair));
    let apery = model.apery();
    if apery.len() > MAX_EXHAUSTIVE_APERY {
        return Err(Error::TooLarge(format!("{} Apéry exponents", apery.len())));
    }
    let monomials = model.minimal_monomials(&apery);
    let target: HashSet<i64> = apery.iter().copied().collect();
    let mut out = Vec::new();
    for sizes in ordered_factorizations(apery.len(), monomials.len()) {
        let mut sums = vec![0i64];
        for (&s, &b) in monomials.iter().zip(&sizes) {
            sums = sums
                .iter()
                .flat_map(|&x| (0..b as i64).map(move |l| x + l * s))
                .collect();
        }
        let distinct: HashSet<i64> = sums.iter().copied().collect();
        if distinct.len() == sums.len() && distinct == target {
            out.push(sizes);
        }
    }
    out.sort();
    Ok(out)
}

/// Ordered tuples of length `len` with entries ≥ 2 and product `total`.
fn ordered_factorizations(total: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return if total == 1 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 2..=total {
        if total.is_multiple_of(first) {
            for mut rest in ordered_factorizations(total / first, len - 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
    }
    out
}

/// Brute-force topological check: the first permutation (lexicographic)
/// making the matrix upper triangular.
pub fn triangular_by_exhaustion(rows: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = rows.len();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let upper = (0..n).all(|a| (0..a).all(|b| rows[perm[a]][perm[b]] == 0));
        if upper {
            return Some(perm);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// A random pair `(coefficient generators, extension generators)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusPair {
    pub coefficient: Vec<i64>,
    pub extension: Vec<i64>,
}

/// Deterministic corpus: 1–4 extension generators in `2..=40`, and 1–4
/// coefficient generators each a sum of 1–3 extension generators, so `C ⊆ E`.
pub fn random_corpus(seed: u64, count: usize) -> Vec<CorpusPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=4);
            let extension: Vec<i64> = (0..k).map(|_| rng.gen_range(2..=40)).collect();
            let j = rng.gen_range(1..=4);
            let coefficient = (0..j)
                .map(|_| {
                    let terms = rng.gen_range(1..=3);
                    (0..terms).map(|_| *extension.choose(&mut rng).unwrap()).sum()
                })
                .collect();
            CorpusPair {
                coefficient,
                extension,
            }
        })
        .collect()
}

impl CorpusPair {
    pub fn to_pair(&self) -> Result<AlgebraPair> {
        AlgebraPair::from_integers(&self.coefficient, &self.extension)
    }
}
