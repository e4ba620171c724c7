//! Numerical semigroups generated by positive rationals.
//!
//! A semigroup is stored through an integer model: the given generators are
//! multiplied by a scale factor so that all of them become integers. The model
//! keeps its content (the gcd of the integer generators) instead of dividing it
//! out, because the content of coefficient and extension semigroups matters for
//! flatness. Membership is answered from a table built once at construction
//! time, covering everything below the conductor.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rat::{lcm_of_denominators, Rat};

/// Upper limit on the size of a membership table.
const MAX_TABLE: i64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    given: Vec<Rat>,
    scale: Rat,
    generators: Vec<i64>,
    content: i64,
    minimal: Vec<i64>,
    conductor: i64,
    /// Membership of `content * k` for `0 <= k < conductor / content`.
    table: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlueMode {
    /// All side conditions of a gluing: `q ∈ S`, `p ∈ T`, coprime, and neither
    /// `p` nor `q` a minimal generator.
    Strict,
    /// Plain sum `pS + qT`; drops the minimal-generator conditions.
    Relaxed,
}

/// Output of [`free_exponents`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeExponents {
    pub phi: Vec<i64>,
    pub is_free: bool,
}

impl NumericalSemigroup {
    /// Builds the integer model of the semigroup generated by `generators`,
    /// scaling by the lcm of their denominators.
    pub fn normalize(generators: &[Rat]) -> Result<Self> {
        validate(generators)?;
        let scale = Rat::integer(lcm_of_denominators(generators));
        Self::with_scale(generators, scale)
    }

    /// Semigroup generated by positive integers (scale 1).
    pub fn from_integers(generators: &[i64]) -> Result<Self> {
        let given: Vec<Rat> = generators.iter().map(|&g| Rat::integer(g)).collect();
        validate(&given)?;
        Self::with_scale(&given, Rat::one())
    }

    /// Integer model of `generators` under an explicit scale; every scaled
    /// generator must be integral.
    pub(crate) fn with_scale(generators: &[Rat], scale: Rat) -> Result<Self> {
        validate(generators)?;
        let scale = scale.positive()?;
        let mut ints = Vec::with_capacity(generators.len());
        for &g in generators {
            let scaled = g * scale;
            let v = scaled.to_integer().ok_or_else(|| {
                Error::PreconditionFailed(format!("{g} times scale {scale} is not an integer"))
            })?;
            ints.push(v);
        }
        ints.sort_unstable();
        ints.dedup();

        let content = ints.iter().fold(0i64, |acc, g| acc.gcd(g));
        let reduced: Vec<i64> = ints.iter().map(|g| g / content).collect();
        let (table, reduced_conductor) = membership_table(&reduced)?;
        let mut semigroup = NumericalSemigroup {
            given: generators.to_vec(),
            scale,
            generators: ints,
            content,
            minimal: Vec::new(),
            conductor: reduced_conductor * content,
            table,
        };
        semigroup.minimal = semigroup
            .generators
            .iter()
            .copied()
            .filter(|&g| !semigroup.is_sum_of_two_nonzero(g))
            .collect();
        Ok(semigroup)
    }

    pub fn given_generators(&self) -> &[Rat] {
        &self.given
    }

    pub fn scale(&self) -> Rat {
        self.scale
    }

    /// Sorted, deduplicated integer generators.
    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn content(&self) -> i64 {
        self.content
    }

    /// Smallest `c` such that every multiple of the content that is `>= c`
    /// lies in the integer model.
    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    /// Ascending minimal generators of the integer model.
    pub fn minimal_generators(&self) -> &[i64] {
        &self.minimal
    }

    /// Smallest nonzero element.
    pub fn multiplicity(&self) -> i64 {
        self.generators[0]
    }

    /// Membership of a rational exponent (scaled by the semigroup's scale).
    pub fn contains(&self, x: Rat) -> bool {
        (x * self.scale)
            .to_integer()
            .is_some_and(|v| self.contains_int(v))
    }

    /// Membership in the integer model.
    pub fn contains_int(&self, x: i64) -> bool {
        if x < 0 || x % self.content != 0 {
            return false;
        }
        if x >= self.conductor {
            return true;
        }
        self.table[(x / self.content) as usize]
    }

    fn is_sum_of_two_nonzero(&self, g: i64) -> bool {
        (1..=g / 2).any(|x| self.contains_int(x) && self.contains_int(g - x))
    }

    /// All `t` in the model with `s - t` in the model. Always holds `0` and `s`.
    pub fn divisors_in(&self, s: i64) -> Result<Vec<i64>> {
        if !self.contains_int(s) {
            return Err(Error::NotMember { value: s });
        }
        Ok((0..=s)
            .filter(|&t| self.contains_int(t) && self.contains_int(s - t))
            .collect())
    }

    /// Symmetry of the content-reduced semigroup: for `0 <= x <= F` exactly one
    /// of `x`, `F - x` is a member, `F` being the Frobenius number.
    pub fn is_symmetric(&self) -> bool {
        let reduced_conductor = self.conductor / self.content;
        let frobenius = reduced_conductor - 1;
        (0..=frobenius).all(|x| {
            self.contains_int(x * self.content) != self.contains_int((frobenius - x) * self.content)
        })
    }

    /// The semigroup `pS + qT`.
    pub fn glue(s: &Self, t: &Self, p: i64, q: i64, mode: GlueMode) -> Result<Self> {
        if s.scale != Rat::one() || t.scale != Rat::one() {
            return Err(Error::GluingInvalid(
                "both semigroups must be generated by integers".into(),
            ));
        }
        if p <= 0 || q <= 0 {
            return Err(Error::GluingInvalid(format!("p = {p} and q = {q} must be positive")));
        }
        if !s.contains_int(q) {
            return Err(Error::GluingInvalid(format!("q = {q} is not in S")));
        }
        if !t.contains_int(p) {
            return Err(Error::GluingInvalid(format!("p = {p} is not in T")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::GluingInvalid(format!("gcd(p, q) = {} != 1", p.gcd(&q))));
        }
        if mode == GlueMode::Strict {
            if t.minimal.contains(&p) {
                return Err(Error::GluingInvalid(format!(
                    "p = {p} is a minimal generator of T"
                )));
            }
            if s.minimal.contains(&q) {
                return Err(Error::GluingInvalid(format!(
                    "q = {q} is a minimal generator of S"
                )));
            }
        }
        let gens: Vec<i64> = s
            .generators
            .iter()
            .map(|g| p * g)
            .chain(t.generators.iter().map(|g| q * g))
            .collect();
        Self::from_integers(&gens)
    }
}

fn validate(generators: &[Rat]) -> Result<()> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    for g in generators {
        g.positive()?;
    }
    Ok(())
}

/// Membership table of a semigroup whose generators have gcd 1. Returns the
/// table below the conductor and the conductor itself. The scan stops once
/// `multiplicity` consecutive members appear.
fn membership_table(generators: &[i64]) -> Result<(Vec<bool>, i64)> {
    let m = generators[0];
    let largest = *generators.last().unwrap_or(&m);
    // Schur's bound on the Frobenius number keeps the scan finite and sized.
    let bound = (m - 1).saturating_mul(largest - 1).saturating_add(m);
    if bound > MAX_TABLE {
        return Err(Error::TooLarge(format!(
            "membership table for generators {generators:?} would exceed {MAX_TABLE} entries"
        )));
    }
    let mut table = vec![true];
    let mut run = 1i64;
    let mut x = 0i64;
    while run < m {
        x += 1;
        let member = generators
            .iter()
            .any(|&g| g <= x && table[(x - g) as usize]);
        table.push(member);
        run = if member { run + 1 } else { 0 };
    }
    let conductor = x + 1 - run;
    table.truncate(conductor as usize);
    Ok((table, conductor))
}

/// `φ_i = min{h ≥ 1 : h·s_i ∈ ⟨s_0, …, s_{i-1}⟩}` for `i ≥ 1`, and whether the
/// Apéry count of the whole semigroup with respect to `s_0` equals `∏ φ_i`.
pub fn free_exponents(ordered: &[i64]) -> Result<FreeExponents> {
    let all = NumericalSemigroup::from_integers(ordered)?;
    let mut phi = Vec::with_capacity(ordered.len().saturating_sub(1));
    for i in 1..ordered.len() {
        let prefix = NumericalSemigroup::from_integers(&ordered[..i])?;
        let h = (1..)
            .find(|h| prefix.contains_int(h * ordered[i]))
            .expect("a multiple of s_i eventually lies in the prefix semigroup");
        phi.push(h);
    }
    let s0 = ordered[0];
    let limit = all.conductor() + s0;
    let apery_count = (0..limit)
        .filter(|&x| all.contains_int(x) && !all.contains_int(x - s0))
        .count() as i64;
    let product = phi.iter().try_fold(1i64, |acc, &h| acc.checked_mul(h));
    Ok(FreeExponents {
        is_free: product == Some(apery_count),
        phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::parse_list;

    fn ns(gens: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::from_integers(gens).unwrap()
    }

    #[test]
    fn normalize_integral_input() {
        let s = NumericalSemigroup::normalize(&parse_list("2,3").unwrap()).unwrap();
        assert_eq!(s.generators(), &[2, 3]);
        assert_eq!(s.scale(), Rat::one());
        assert_eq!(s.content(), 1);
        assert_eq!(s.conductor(), 2);
    }

    #[test]
    fn normalize_clears_denominators() {
        let s = NumericalSemigroup::normalize(&parse_list("3/2,2").unwrap()).unwrap();
        assert_eq!(s.scale(), Rat::integer(2));
        assert_eq!(s.generators(), &[3, 4]);
        assert_eq!(s.content(), 1);
        assert!(s.contains(Rat::new(3, 2).unwrap()));
        assert!(!s.contains(Rat::new(1, 2).unwrap()));
        assert!(!s.contains(Rat::new(1, 3).unwrap()));
    }

    #[test]
    fn normalize_rejects_bad_input() {
        assert_eq!(NumericalSemigroup::normalize(&[]), Err(Error::EmptyGenerators));
        assert!(matches!(
            NumericalSemigroup::normalize(&parse_list("2,0").unwrap()),
            Err(Error::NonPositive(_))
        ));
        assert!(matches!(
            NumericalSemigroup::normalize(&parse_list("-1/2").unwrap()),
            Err(Error::NonPositive(_))
        ));
    }

    #[test]
    fn minimal_generators_drop_sums() {
        assert_eq!(ns(&[4, 6, 9, 10]).minimal_generators(), &[4, 6, 9]);
        assert_eq!(ns(&[2, 3]).minimal_generators(), &[2, 3]);
        assert_eq!(ns(&[14, 21, 15, 20]).minimal_generators(), &[14, 15, 20, 21]);
        assert_eq!(ns(&[4, 6, 10]).minimal_generators(), &[4, 6]);
    }

    #[test]
    fn membership() {
        assert!(!ns(&[2, 3]).contains_int(1));
        assert!(ns(&[5, 8, 9]).contains_int(23));
        assert!(!ns(&[9, 15, 21]).contains_int(23));
        assert!(!ns(&[2, 3]).contains_int(-2));
        assert!(ns(&[4, 6]).contains_int(10));
        assert!(!ns(&[4, 6]).contains_int(7));
        assert!(!ns(&[4, 6]).contains_int(2));
    }

    #[test]
    fn conductors() {
        assert_eq!(ns(&[1]).conductor(), 0);
        assert_eq!(ns(&[2, 3]).conductor(), 2);
        assert_eq!(ns(&[3, 5]).conductor(), 8);
        // content 2: gaps among even numbers are {2}
        assert_eq!(ns(&[4, 6]).conductor(), 4);
        assert_eq!(ns(&[6]).conductor(), 0);
    }

    #[test]
    fn divisors() {
        assert_eq!(ns(&[2, 3]).divisors_in(2).unwrap(), vec![0, 2]);
        assert_eq!(ns(&[2, 3]).divisors_in(7).unwrap(), vec![0, 2, 3, 4, 5, 7]);
        assert_eq!(ns(&[21, 33]).divisors_in(54).unwrap(), vec![0, 21, 33, 54]);
        assert_eq!(ns(&[2, 3]).divisors_in(1), Err(Error::NotMember { value: 1 }));
    }

    #[test]
    fn symmetry() {
        assert!(ns(&[2, 3]).is_symmetric());
        assert!(!ns(&[3, 4, 5]).is_symmetric());
        assert!(ns(&[3, 5]).is_symmetric());
        assert!(ns(&[6, 10]).is_symmetric());
        assert!(ns(&[1]).is_symmetric());
    }

    #[test]
    fn gluing() {
        let s = ns(&[2, 3]);
        let t = ns(&[3, 4]);
        let g = NumericalSemigroup::glue(&s, &t, 7, 5, GlueMode::Strict).unwrap();
        assert_eq!(g.generators(), &[14, 15, 20, 21]);

        let g = NumericalSemigroup::glue(&ns(&[3]), &ns(&[4]), 4, 3, GlueMode::Relaxed).unwrap();
        assert_eq!(g.generators(), &[12]);
        assert!(matches!(
            NumericalSemigroup::glue(&ns(&[3]), &ns(&[4]), 4, 3, GlueMode::Strict),
            Err(Error::GluingInvalid(_))
        ));

        let err = NumericalSemigroup::glue(&s, &t, 3, 2, GlueMode::Strict).unwrap_err();
        assert!(matches!(err, Error::GluingInvalid(ref m) if m.contains("minimal generator of T")));
        assert!(matches!(
            NumericalSemigroup::glue(&s, &t, 8, 4, GlueMode::Relaxed),
            Err(Error::GluingInvalid(_))
        ));
    }

    #[test]
    fn free_exponent_examples() {
        // Arranged so each φ_i is reached by the earlier generators.
        let f = free_exponents(&[8, 12, 10, 9]).unwrap();
        assert_eq!(f.phi, vec![2, 2, 2]);
        assert!(f.is_free);
        // Ascending order of the same generators is not a free arrangement.
        let f = free_exponents(&[8, 9, 10, 12]).unwrap();
        assert_eq!(f.phi, vec![8, 4, 2]);
        assert!(!f.is_free);

        let f = free_exponents(&[6, 5, 9]).unwrap();
        assert_eq!(f.phi, vec![6, 2]);
        assert!(!f.is_free);

        let f = free_exponents(&[4, 6]).unwrap();
        assert_eq!(f.phi, vec![2]);
        assert!(f.is_free);
    }

    #[test]
    fn oversized_tables_are_rejected() {
        assert!(matches!(
            NumericalSemigroup::from_integers(&[100_003, 100_019]),
            Err(Error::TooLarge(_))
        ));
    }
}
