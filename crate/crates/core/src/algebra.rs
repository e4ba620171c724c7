//! Relative algebras `R'/R` of numerical semigroup rings.
//!
//! Both semigroups are moved onto one integer scale: `C` is the integer model
//! of `t·S` (the coefficients) and `E` the integer model of `S'` (the
//! extension), with `C ⊆ E`. Everything below works on exponents of that
//! common scale.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rat::{lcm_of_denominators, Rat};
use crate::semigroup::NumericalSemigroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPair {
    coefficient: NumericalSemigroup,
    extension: NumericalSemigroup,
    scale_t: Rat,
    common_scale: i64,
    coeff_model: NumericalSemigroup,
    ext_model: NumericalSemigroup,
    apery: AperySet,
}

/// Apéry exponents of a pair, on the extension's integer scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperySet {
    pub exponents: Vec<i64>,
    /// Exclusive enumeration bound: `conductor(E) + multiplicity(C)`.
    pub bound_used: i64,
}

impl AperySet {
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn contains(&self, w: i64) -> bool {
        self.exponents.binary_search(&w).is_ok()
    }

    pub fn max(&self) -> i64 {
        *self.exponents.last().expect("0 is always an Apéry exponent")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSet {
    pub differences: BTreeSet<i64>,
}

/// A coefficient exponent paired with an Apéry exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Representation {
    pub coefficient: i64,
    pub apery: i64,
}

impl Representation {
    pub fn exponent(&self) -> i64 {
        self.coefficient + self.apery
    }
}

/// Two distinct representations of one exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlatnessWitness {
    pub exponent: i64,
    pub first: Representation,
    pub second: Representation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatnessVerdict {
    pub is_flat: bool,
    pub apery_count: i64,
    /// `d / d'`.
    pub expected_count: i64,
    pub witness: Option<FlatnessWitness>,
}

impl AlgebraPair {
    /// Builds the algebra with coefficient semigroup `coeff_gens`, extension
    /// `ext_gens` and `u = v^t`.
    pub fn new(coeff_gens: &[Rat], ext_gens: &[Rat], scale_t: Rat) -> Result<Self> {
        let coefficient = NumericalSemigroup::normalize(coeff_gens)?;
        let extension = NumericalSemigroup::normalize(ext_gens)?;
        let scale_t = scale_t.positive()?;

        let scaled: Vec<Rat> = coeff_gens.iter().map(|&g| g * scale_t).collect();
        let common_scale = lcm_of_denominators(&scaled).lcm(&lcm_of_denominators(ext_gens));
        let coeff_model = NumericalSemigroup::with_scale(&scaled, Rat::integer(common_scale))?;
        let ext_model = NumericalSemigroup::with_scale(ext_gens, Rat::integer(common_scale))?;

        if let Some(&g) = coeff_model
            .minimal_generators()
            .iter()
            .find(|&&g| !ext_model.contains_int(g))
        {
            return Err(Error::NotSubalgebra { generator: g });
        }
        let apery = compute_apery(&coeff_model, &ext_model);
        Ok(AlgebraPair {
            coefficient,
            extension,
            scale_t,
            common_scale,
            coeff_model,
            ext_model,
            apery,
        })
    }

    /// Pair already on a common integer scale (`t = 1`).
    pub fn from_integers(coeff: &[i64], ext: &[i64]) -> Result<Self> {
        let c: Vec<Rat> = coeff.iter().map(|&g| Rat::integer(g)).collect();
        let e: Vec<Rat> = ext.iter().map(|&g| Rat::integer(g)).collect();
        Self::new(&c, &e, Rat::one())
    }

    /// The coefficient semigroup `S` as given.
    pub fn coefficient(&self) -> &NumericalSemigroup {
        &self.coefficient
    }

    /// The extension semigroup `S'` as given.
    pub fn extension(&self) -> &NumericalSemigroup {
        &self.extension
    }

    pub fn scale_t(&self) -> Rat {
        self.scale_t
    }

    /// Factor turning an extension exponent into a common-scale integer.
    pub fn common_scale(&self) -> i64 {
        self.common_scale
    }

    /// Integer model `C` of `t·S`.
    pub fn coeff_model(&self) -> &NumericalSemigroup {
        &self.coeff_model
    }

    /// Integer model `E` of `S'`.
    pub fn ext_model(&self) -> &NumericalSemigroup {
        &self.ext_model
    }

    pub fn d(&self) -> i64 {
        self.coeff_model.content()
    }

    pub fn d_prime(&self) -> i64 {
        self.ext_model.content()
    }

    pub fn apery_set(&self) -> &AperySet {
        &self.apery
    }

    /// Nonzero Apéry exponents that are not a sum of two nonzero elements of `E`.
    pub fn minimal_monomials(&self) -> Vec<i64> {
        let e = &self.ext_model;
        self.apery
            .exponents
            .iter()
            .copied()
            .filter(|&s| s > 0 && !(1..=s / 2).any(|x| e.contains_int(x) && e.contains_int(s - x)))
            .collect()
    }

    /// Every way to write `s = s0 + w` with `s0 ∈ C` and `w` Apéry, ordered by `s0`.
    pub fn representations(&self, s: i64) -> Result<Vec<Representation>> {
        if !self.ext_model.contains_int(s) {
            return Err(Error::NotMember { value: s });
        }
        let mut reps: Vec<Representation> = self
            .apery
            .exponents
            .iter()
            .filter(|&&w| w <= s && self.coeff_model.contains_int(s - w))
            .map(|&w| Representation {
                coefficient: s - w,
                apery: w,
            })
            .collect();
        reps.sort();
        Ok(reps)
    }

    pub fn delta_set(&self) -> DeltaSet {
        let a = &self.apery.exponents;
        let differences = a
            .iter()
            .enumerate()
            .flat_map(|(i, &hi)| a[..=i].iter().map(move |&lo| hi - lo))
            .collect();
        DeltaSet { differences }
    }

    /// Flatness by counting Apéry exponents against `d/d'`. A non-flat verdict
    /// carries two representations of a single exponent.
    pub fn is_flat(&self) -> FlatnessVerdict {
        let expected_count = self.d() / self.d_prime();
        let apery_count = self.apery.len() as i64;
        let is_flat = apery_count == expected_count;
        debug_assert_eq!(is_flat, self.delta_criterion());
        let witness = (!is_flat).then(|| self.witness());
        FlatnessVerdict {
            is_flat,
            apery_count,
            expected_count,
            witness,
        }
    }

    /// `Δ ∩ dℤ ⊆ C`: every Apéry difference divisible by `d` is a coefficient.
    pub fn delta_criterion(&self) -> bool {
        let d = self.d();
        self.delta_set()
            .differences
            .iter()
            .filter(|&&x| x % d == 0)
            .all(|&x| self.coeff_model.contains_int(x))
    }

    /// Takes the congruent pair `w2 < w1` (mod `d`) with the smallest `w1`, then
    /// the smallest `s1 ∈ C` with `s1 + (w1 - w2) ∈ C`.
    fn witness(&self) -> FlatnessWitness {
        let d = self.d();
        let a = &self.apery.exponents;
        let (w2, w1) = a
            .iter()
            .enumerate()
            .find_map(|(i, &hi)| {
                a[..i]
                    .iter()
                    .find(|&&lo| (hi - lo) % d == 0)
                    .map(|&lo| (lo, hi))
            })
            .expect("more than d/d' Apéry exponents force a congruent pair");
        let gap = w1 - w2;
        let c = &self.coeff_model;
        let s1 = (0..)
            .map(|k| k * d)
            .find(|&x| c.contains_int(x) && c.contains_int(x + gap))
            .expect("C contains every large multiple of d");
        FlatnessWitness {
            exponent: s1 + w1,
            first: Representation {
                coefficient: s1,
                apery: w1,
            },
            second: Representation {
                coefficient: s1 + gap,
                apery: w2,
            },
        }
    }

    /// Whether `C = E ∩ dℤ`; necessary for flatness.
    pub fn check_flat_intersection(&self) -> bool {
        let d = self.d();
        let c = &self.coeff_model;
        let e = &self.ext_model;
        let limit = c.conductor().max(e.conductor()) + d;
        (0..=limit / d)
            .map(|k| k * d)
            .all(|x| c.contains_int(x) == e.contains_int(x))
    }

    /// Whether any two minimal generators of `C` lying in `T`, the semigroup of
    /// the minimal monomials, share only the trivial divisor in `T`.
    pub fn common_divisor_condition(&self) -> bool {
        let monomials = self.minimal_monomials();
        if monomials.is_empty() {
            return true;
        }
        let t = NumericalSemigroup::from_integers(&monomials)
            .expect("minimal monomials are positive integers");
        let in_t: Vec<i64> = self
            .coeff_model
            .minimal_generators()
            .iter()
            .copied()
            .filter(|&g| t.contains_int(g))
            .collect();
        for (i, &a) in in_t.iter().enumerate() {
            let da = t.divisors_in(a).expect("a lies in T");
            for &b in &in_t[i + 1..] {
                let db = t.divisors_in(b).expect("b lies in T");
                if da.iter().any(|x| *x != 0 && db.binary_search(x).is_ok()) {
                    return false;
                }
            }
        }
        true
    }
}

fn compute_apery(c: &NumericalSemigroup, e: &NumericalSemigroup) -> AperySet {
    // s ∈ E is non-Apéry iff s - m ∈ E for some nonzero m ∈ C. Writing
    // m = g + m' with g a generator of C and m' ∈ C ⊆ E, that happens iff
    // s - g ∈ E for some generator g, so generators suffice.
    let bound = e.conductor() + c.multiplicity();
    let exponents = (0..bound)
        .filter(|&s| {
            e.contains_int(s)
                && c
                    .minimal_generators()
                    .iter()
                    .all(|&g| !e.contains_int(s - g))
        })
        .collect();
    AperySet {
        exponents,
        bound_used: bound,
    }
}

/// The pair `R[[u^{s/m}]] / R` on the common scale `m`.
pub fn flat_root_pair(r: &NumericalSemigroup, s: i64, m: i64) -> Result<AlgebraPair> {
    let coeff = r.given_generators().to_vec();
    let mut ext = coeff.clone();
    ext.push(Rat::new(s, m)?.positive()?);
    AlgebraPair::new(&coeff, &ext, Rat::one())
}

/// Adjoining one root `u^{s/m}` to `R` with `gcd(log R) = 1` and
/// `gcd(s, m) = 1` is flat iff `s ∈ log R`.
pub fn check_flat_root(r: &NumericalSemigroup, s: i64, m: i64) -> Result<bool> {
    if r.scale() != Rat::one() || r.content() != 1 {
        return Err(Error::PreconditionFailed(
            "log R must be integral with gcd 1".into(),
        ));
    }
    if s <= 0 || m <= 0 || s.gcd(&m) != 1 {
        return Err(Error::PreconditionFailed(format!(
            "s = {s} and m = {m} must be coprime positive integers"
        )));
    }
    Ok(r.contains_int(s))
}

/// The pair `R[[u^{s1}, u^{s2}]] / R`.
pub fn two_gen_pair(r_gens: &[i64], s1: i64, s2: i64) -> Result<AlgebraPair> {
    let mut ext = r_gens.to_vec();
    ext.extend([s1, s2]);
    AlgebraPair::from_integers(r_gens, &ext)
}

/// Flatness of `R[[u^{s1}, u^{s2}]]` when `log R ⊆ ⟨s1, s2⟩` and
/// `gcd(s1, s2) = 1`: `log R` must be principal or equal `⟨a1·s1, a2·s2⟩`
/// with `a1 | s2` and `a2 | s1`.
pub fn check_flat_two_gen(r_gens: &[i64], s1: i64, s2: i64) -> Result<bool> {
    if s1 <= 0 || s2 <= 0 || s1.gcd(&s2) != 1 {
        return Err(Error::PreconditionFailed(format!(
            "s1 = {s1} and s2 = {s2} must be coprime positive integers"
        )));
    }
    let r = NumericalSemigroup::from_integers(r_gens)?;
    let target = NumericalSemigroup::from_integers(&[s1, s2])?;
    if let Some(g) = r.generators().iter().find(|&&g| !target.contains_int(g)) {
        return Err(Error::PreconditionFailed(format!(
            "{g} lies in log R but not in <{s1}, {s2}>"
        )));
    }
    let minimal = r.minimal_generators();
    let matches = |x: i64, y: i64| {
        x % s1 == 0 && y % s2 == 0 && s2 % (x / s1) == 0 && s1 % (y / s2) == 0
    };
    Ok(match *minimal {
        [_] => true,
        [x, y] => matches(x, y) || matches(y, x),
        _ => false,
    })
}
