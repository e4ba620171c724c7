//! Complete-intersection classification of numerical semigroup algebras.
//!
//! The verdict is produced by a fixed chain of rules. Each rule that fires is
//! recorded in the report under a stable identifier so callers can see which
//! criterion decided the outcome:
//!
//! | rule            | meaning                                                        |
//! |-----------------|----------------------------------------------------------------|
//! | `NOT_FLAT`      | more than `d/d'` Apéry exponents; flatness is part of CI       |
//! | `FLAT_COUNT`    | exactly `d/d'` Apéry exponents                                 |
//! | `NO_RECTANGLE`  | flat, but the Apéry set admits no rectangle                    |
//! | `RECTANGULAR`   | at least one rectangle exists                                  |
//! | `THM_MAIN`      | flat with a nonsingular rectangle                              |
//! | `N_LE_1`        | flat rectangular with at most one minimal monomial             |
//! | `N2_TRIANGULAR` | flat rectangular with two minimal monomials (triangular matrix)|
//! | `THM_3MIN`      | flat rectangular with three minimal monomials                  |
//! | `N4_PRINCIPAL`  | four minimal monomials over `k[[u^s]]`, `s` in their semigroup |
//! | `ALL_SINGULAR`  | flat rectangular, no rule certifies CI                         |

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPair, AperySet, FlatnessVerdict};
use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::rectangle::{beta_matrix, find_rectangles, BetaMatrix, Rectangle};
use crate::semigroup::{GlueMode, NumericalSemigroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CiVerdict {
    Ci,
    NotCi,
    Unknown,
}

impl fmt::Display for CiVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CiVerdict::Ci => "ci",
            CiVerdict::NotCi => "not_ci",
            CiVerdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rule {
    NotFlat,
    FlatCount,
    NoRectangle,
    Rectangular,
    ThmMain,
    #[serde(rename = "N_LE_1")]
    NLe1,
    N2Triangular,
    #[serde(rename = "THM_3MIN")]
    Thm3min,
    N4Principal,
    AllSingular,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::NotFlat => "NOT_FLAT",
            Rule::FlatCount => "FLAT_COUNT",
            Rule::NoRectangle => "NO_RECTANGLE",
            Rule::Rectangular => "RECTANGULAR",
            Rule::ThmMain => "THM_MAIN",
            Rule::NLe1 => "N_LE_1",
            Rule::N2Triangular => "N2_TRIANGULAR",
            Rule::Thm3min => "THM_3MIN",
            Rule::N4Principal => "N4_PRINCIPAL",
            Rule::AllSingular => "ALL_SINGULAR",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Rule::NotFlat => "more Apéry monomials than d/d'; not flat, hence not a complete intersection",
            Rule::FlatCount => "exactly d/d' Apéry monomials; flat",
            Rule::NoRectangle => "the Apéry monomials form no rectangle",
            Rule::Rectangular => "the Apéry monomials form a rectangle",
            Rule::ThmMain => "flat with a non-singular rectangle; complete intersection",
            Rule::NLe1 => "flat rectangular with at most one minimal monomial",
            Rule::N2Triangular => "flat rectangular with two minimal monomials; the log matrix is triangular",
            Rule::Thm3min => "flat rectangular with three minimal monomials; triangular after permutation",
            Rule::N4Principal => "rectangular, four minimal monomials, principal coefficients inside their semigroup",
            Rule::AllSingular => "flat rectangular but no criterion applies",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A rectangle together with its matrix analysis (flat pairs only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectangleAnalysis {
    pub rectangle: Rectangle,
    pub matrix: Option<BetaMatrix>,
    pub triangular_permutation: Option<Vec<usize>>,
}

impl RectangleAnalysis {
    pub fn nonsingular(&self) -> Option<bool> {
        self.matrix.as_ref().map(BetaMatrix::is_nonsingular)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub coefficient: Vec<Rat>,
    pub extension: Vec<Rat>,
    pub scale: Rat,
    pub common_scale: i64,
    pub d: i64,
    pub d_prime: i64,
    pub apery: AperySet,
    pub minimal_monomials: Vec<i64>,
    pub flat: FlatnessVerdict,
    pub rectangles: Vec<RectangleAnalysis>,
    pub gorenstein_indicator: bool,
    pub ci: CiVerdict,
    pub justification: Vec<Rule>,
    pub unknown_reason: Option<String>,
}

impl ClassificationReport {
    pub fn is_rectangular(&self) -> bool {
        !self.rectangles.is_empty()
    }

    pub fn fired(&self, rule: Rule) -> bool {
        self.justification.contains(&rule)
    }

    /// Verifies the report's internal invariants; an error here means a bug
    /// or a counterexample to one of the small-rank theorems.
    pub fn check_consistency(&self) -> std::result::Result<(), String> {
        let flat = self.flat.is_flat;
        match self.ci {
            CiVerdict::NotCi if flat => return Err("NOT_CI verdict on a flat pair".into()),
            CiVerdict::Ci if !flat => return Err("CI verdict on a non-flat pair".into()),
            CiVerdict::Ci
                if !self.fired(Rule::ThmMain)
                    && !self.fired(Rule::N4Principal)
                    && !self.fired(Rule::NLe1)
                    && !self.fired(Rule::N2Triangular)
                    && !self.fired(Rule::Thm3min) =>
            {
                return Err("CI verdict without a certifying rule".into())
            }
            CiVerdict::Unknown if self.unknown_reason.is_none() => {
                return Err("UNKNOWN verdict without a reason".into())
            }
            _ => {}
        }
        let small_rank = self.fired(Rule::NLe1) || self.fired(Rule::N2Triangular) || self.fired(Rule::Thm3min);
        if small_rank && !self.fired(Rule::ThmMain) {
            return Err(format!(
                "flat rectangular with {} minimal monomials but every rectangle is singular",
                self.minimal_monomials.len()
            ));
        }
        if small_rank {
            let triangular = self
                .rectangles
                .iter()
                .any(|r| r.triangular_permutation.is_some());
            if !triangular {
                return Err("small-rank flat rectangle without a triangular matrix".into());
            }
        }
        if flat && self.is_rectangular() && !self.gorenstein_indicator {
            return Err("flat rectangular pair without a unique maximal Apéry monomial".into());
        }
        Ok(())
    }

    /// Flat, rectangular, at least four minimal monomials, and no rectangle
    /// certified nonsingular.
    pub fn is_flat_rectangular_all_singular(&self) -> bool {
        self.flat.is_flat
            && self.is_rectangular()
            && self.minimal_monomials.len() >= 4
            && self.rectangles.iter().all(|r| r.nonsingular() == Some(false))
    }
}

pub fn classify(pair: &AlgebraPair) -> ClassificationReport {
    let flat = pair.is_flat();
    let minimal_monomials = pair.minimal_monomials();
    let n = minimal_monomials.len();
    let rectangles: Vec<RectangleAnalysis> = find_rectangles(pair)
        .into_iter()
        .map(|rectangle| {
            let matrix = flat
                .is_flat
                .then(|| beta_matrix(pair, &rectangle))
                .transpose()
                .expect("matrix construction cannot fail on a flat rectangle");
            let triangular_permutation = matrix.as_ref().and_then(BetaMatrix::triangularizable);
            RectangleAnalysis {
                rectangle,
                matrix,
                triangular_permutation,
            }
        })
        .collect();

    let mut justification = Vec::new();
    let mut unknown_reason = None;
    let ci = if !flat.is_flat {
        justification.push(Rule::NotFlat);
        CiVerdict::NotCi
    } else {
        justification.push(Rule::FlatCount);
        if rectangles.is_empty() {
            justification.push(Rule::NoRectangle);
            unknown_reason = Some("flat but not rectangular".to_string());
            CiVerdict::Unknown
        } else {
            justification.push(Rule::Rectangular);
            let mut certified = false;
            if rectangles.iter().any(|r| r.nonsingular() == Some(true)) {
                justification.push(Rule::ThmMain);
                certified = true;
            }
            let small_rank = match n {
                0 | 1 => Some(Rule::NLe1),
                2 => Some(Rule::N2Triangular),
                3 => Some(Rule::Thm3min),
                _ => None,
            };
            if let Some(rule) = small_rank {
                justification.push(rule);
                certified = true;
            }
            if n == 4 && principal_inside(pair, &minimal_monomials) {
                justification.push(Rule::N4Principal);
                certified = true;
            }
            if certified {
                CiVerdict::Ci
            } else {
                justification.push(Rule::AllSingular);
                unknown_reason = Some(format!(
                    "every rectangle is singular with {n} minimal monomials and no side criterion applies"
                ));
                CiVerdict::Unknown
            }
        }
    };

    ClassificationReport {
        coefficient: pair.coefficient().given_generators().to_vec(),
        extension: pair.extension().given_generators().to_vec(),
        scale: pair.scale_t(),
        common_scale: pair.common_scale(),
        d: pair.d(),
        d_prime: pair.d_prime(),
        apery: pair.apery_set().clone(),
        minimal_monomials,
        flat,
        rectangles,
        gorenstein_indicator: gorenstein_indicator(pair),
        ci,
        justification,
        unknown_reason,
    }
}

/// Coefficients `k[[u^s]]` with `s` in the semigroup of the minimal monomials.
fn principal_inside(pair: &AlgebraPair, monomials: &[i64]) -> bool {
    match pair.coeff_model().minimal_generators() {
        [s] => NumericalSemigroup::from_integers(monomials)
            .map(|t| t.contains_int(*s))
            .unwrap_or(false),
        _ => false,
    }
}

/// Whether the Apéry set has a unique maximal element under division
/// (`w ≤ w'` iff `w' - w ∈ E`).
pub fn gorenstein_indicator(pair: &AlgebraPair) -> bool {
    let a = &pair.apery_set().exponents;
    let e = pair.ext_model();
    let maximal = a
        .iter()
        .filter(|&&w| !a.iter().any(|&x| x > w && e.contains_int(x - w)))
        .count();
    maximal == 1
}

/// A balanced relation `α_a s_a + α_b s_b = α_c s_c + α_d s_d` with
/// `0 < α_i < c_i`; `alpha` is indexed like the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BresinskyRelation {
    pub pairing: ([usize; 2], [usize; 2]),
    pub alpha: [i64; 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BresinskyData {
    pub c: [i64; 4],
    pub relation: Option<BresinskyRelation>,
    pub symmetric: bool,
    pub warnings: Vec<String>,
}

/// `c_i = min{n ≥ 1 : n·s_i ∈ ⟨s_j : j ≠ i⟩}`.
pub fn bresinsky_c(gens: [i64; 4]) -> Result<[i64; 4]> {
    let mut c = [0i64; 4];
    for i in 0..4 {
        let others: Vec<i64> = (0..4).filter(|&j| j != i).map(|j| gens[j]).collect();
        let sub = NumericalSemigroup::from_integers(&others)?;
        if gens[i] <= 0 {
            return Err(Error::NonPositive(gens[i].to_string()));
        }
        c[i] = (1..)
            .find(|n| sub.contains_int(n * gens[i]))
            .expect("some multiple lies in the complementary semigroup");
    }
    Ok(c)
}

const PAIRINGS: [([usize; 2], [usize; 2]); 3] = [([0, 2], [1, 3]), ([0, 1], [2, 3]), ([0, 3], [1, 2])];

/// Exhaustive search of the `c`-box over all three pairings of four generators.
pub fn bresinsky_relation_search(gens: [i64; 4]) -> Result<BresinskyData> {
    let c = bresinsky_c(gens)?;
    let semigroup = NumericalSemigroup::from_integers(&gens)?;
    let symmetric = semigroup.is_symmetric();
    let mut warnings = Vec::new();
    if !symmetric {
        warnings.push(format!("<{gens:?}> is not symmetric"));
    }
    if c.contains(&1) {
        warnings.push("some generator lies in the semigroup of the others; the box is empty".into());
    }
    let relation = PAIRINGS.iter().find_map(|&(left, right)| {
        for a0 in 1..c[left[0]] {
            for a1 in 1..c[left[1]] {
                let lhs = a0 * gens[left[0]] + a1 * gens[left[1]];
                for b0 in 1..c[right[0]] {
                    let rest = lhs - b0 * gens[right[0]];
                    if rest <= 0 {
                        break;
                    }
                    let g = gens[right[1]];
                    if rest % g == 0 && rest / g < c[right[1]] {
                        let mut alpha = [0i64; 4];
                        alpha[left[0]] = a0;
                        alpha[left[1]] = a1;
                        alpha[right[0]] = b0;
                        alpha[right[1]] = rest / g;
                        return Some(BresinskyRelation {
                            pairing: (left, right),
                            alpha,
                        });
                    }
                }
            }
        }
        None
    });
    Ok(BresinskyData {
        c,
        relation,
        symmetric,
        warnings,
    })
}

/// Compares the Apéry set of `pS + qT` over `⟨pq⟩` with
/// `{p·w1 + q·w2}` for `w1` Apéry in `S` over `⟨q⟩` and `w2` in `T` over `⟨p⟩`.
pub fn gluing_apery_product_check(
    s: &NumericalSemigroup,
    t: &NumericalSemigroup,
    p: i64,
    q: i64,
) -> Result<bool> {
    let glued = NumericalSemigroup::glue(s, t, p, q, GlueMode::Strict)?;
    let whole = AlgebraPair::from_integers(&[p * q], glued.generators())?;
    let left = AlgebraPair::from_integers(&[q], s.generators())?;
    let right = AlgebraPair::from_integers(&[p], t.generators())?;
    let mut product: Vec<i64> = left
        .apery_set()
        .exponents
        .iter()
        .flat_map(|&w1| right.apery_set().exponents.iter().map(move |&w2| p * w1 + q * w2))
        .collect();
    product.sort_unstable();
    product.dedup();
    Ok(product == whole.apery_set().exponents)
}
