//! Embedded worked examples, run by the `fixtures` subcommand and the
//! acceptance suite. Each fixture recomputes its values from scratch and
//! compares them exactly.

use serde::Serialize;

use crate::algebra::{check_flat_root, check_flat_two_gen, AlgebraPair};
use crate::classify::{bresinsky_relation_search, classify, CiVerdict, Rule};
use crate::matrix::IntMatrix;
use crate::rat::{parse_list, Rat};
use crate::rectangle::{beta_matrix, find_rectangles, lemma_matrix_check};
use crate::semigroup::{free_exponents, GlueMode, NumericalSemigroup};

type Check = std::result::Result<(), String>;

pub struct Fixture {
    pub label: &'static str,
    run: fn() -> Check,
}

impl Fixture {
    pub fn run(&self) -> FixtureOutcome {
        let result = (self.run)();
        FixtureOutcome {
            label: self.label.to_string(),
            passed: result.is_ok(),
            detail: result.err(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureOutcome {
    pub label: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    ensure(got == want, || format!("{what}: got {got:?}, want {want:?}"))
}

fn pair(c: &[i64], e: &[i64]) -> std::result::Result<AlgebraPair, String> {
    AlgebraPair::from_integers(c, e).map_err(|e| e.to_string())
}

fn scaled_pair(c: &str, e: &str, t: i64) -> std::result::Result<AlgebraPair, String> {
    let c = parse_list(c).map_err(|e| e.to_string())?;
    let e = parse_list(e).map_err(|e| e.to_string())?;
    AlgebraPair::new(&c, &e, Rat::integer(t)).map_err(|e| e.to_string())
}

fn semigroup(g: &[i64]) -> std::result::Result<NumericalSemigroup, String> {
    NumericalSemigroup::from_integers(g).map_err(|e| e.to_string())
}

fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("square literal")
}

fn sizes(p: &AlgebraPair) -> Vec<Vec<usize>> {
    find_rectangles(p).into_iter().map(|r| r.sizes).collect()
}

fn apery(c: &[i64], e: &[i64], want: &[i64]) -> Check {
    eq("Apéry set", pair(c, e)?.apery_set().exponents.clone(), want.to_vec())
}

fn flat(p: &AlgebraPair, want: bool) -> Check {
    let v = p.is_flat();
    eq("flat", v.is_flat, want)?;
    eq("flat (Δ criterion)", p.delta_criterion(), want)
}

fn witness(p: &AlgebraPair, want: i64) -> Check {
    let w = p.is_flat().witness.ok_or("no witness on a non-flat pair")?;
    eq("witness exponent", w.exponent, want)
}

fn has_reps(p: &AlgebraPair, s: i64, want: &[(i64, i64)]) -> Check {
    let reps = p.representations(s).map_err(|e| e.to_string())?;
    for &(c, w) in want {
        ensure(reps.iter().any(|r| r.coefficient == c && r.apery == w), || {
            format!("{s} lacks representation {c} + {w}; found {reps:?}")
        })?;
    }
    Ok(())
}

pub fn all() -> Vec<Fixture> {
    vec![
        Fixture {
            label: "membership/5-8-9 contains 23",
            run: || {
                eq("23 ∈ ⟨5,8,9⟩", semigroup(&[5, 8, 9])?.contains_int(23), true)?;
                eq("23 ∈ ⟨9,15,21⟩", semigroup(&[9, 15, 21])?.contains_int(23), false)
            },
        },
        Fixture {
            label: "generators/7S+5T minimal",
            run: || eq("minimal", semigroup(&[14, 21, 15, 20])?.minimal_generators().to_vec(), vec![14, 15, 20, 21]),
        },
        Fixture {
            label: "glue/7S+5T",
            run: || {
                let s = semigroup(&[2, 3])?;
                let t = semigroup(&[3, 4])?;
                let g = NumericalSemigroup::glue(&s, &t, 7, 5, GlueMode::Strict).map_err(|e| e.to_string())?;
                eq("7S+5T", g.minimal_generators().to_vec(), vec![14, 15, 20, 21])
            },
        },
        Fixture {
            label: "free/2^n family n=3 a=1",
            run: || {
                let f = free_exponents(&[8, 12, 10, 9]).map_err(|e| e.to_string())?;
                eq("φ", f.phi, vec![2, 2, 2])?;
                eq("free", f.is_free, true)
            },
        },
        Fixture {
            label: "algebra/scaled v^6 models",
            run: || {
                let p = scaled_pair("2,3", "4,9", 6)?;
                eq("C", p.coeff_model().minimal_generators().to_vec(), vec![12, 18])?;
                eq("E", p.ext_model().minimal_generators().to_vec(), vec![4, 9])?;
                eq("(d, d')", (p.d(), p.d_prime()), (6, 1))
            },
        },
        Fixture {
            label: "apery/3-5 over 6",
            run: || apery(&[6], &[3, 5], &[0, 3, 5, 8, 10, 13]),
        },
        Fixture {
            label: "apery/3-5 over 6-8",
            run: || apery(&[6, 8], &[3, 5], &[0, 3, 5, 10]),
        },
        Fixture {
            label: "minimal/14-21-22-33 over 14-22",
            run: || eq("minimal monomials", pair(&[14, 22], &[14, 21, 22, 33])?.minimal_monomials(), vec![21, 33]),
        },
        Fixture {
            label: "representations/N over 2-3 at 3",
            run: || {
                let p = pair(&[2, 3], &[1])?;
                eq("representations", p.representations(3).map_err(|e| e.to_string())?.len(), 2)?;
                has_reps(&p, 3, &[(2, 1), (3, 0)])
            },
        },
        Fixture {
            label: "representations/5-8-9 over 9-15-21 at 23",
            run: || has_reps(&pair(&[9, 15, 21], &[5, 8, 9])?, 23, &[(18, 5), (15, 8)]),
        },
        Fixture {
            label: "flat/2-3 over 2",
            run: || {
                let p = pair(&[2], &[2, 3])?;
                flat(&p, true)?;
                eq("Apéry count", p.apery_set().len(), 2)?;
                eq("intersection", p.check_flat_intersection(), true)
            },
        },
        Fixture {
            label: "flat/12-14-16-35 over 12-16",
            run: || {
                let p = pair(&[12, 16], &[12, 14, 16, 35])?;
                flat(&p, true)?;
                eq("Apéry set", p.apery_set().exponents.clone(), vec![0, 14, 35, 49])
            },
        },
        Fixture {
            label: "flat/4-9 over v^6 2-3",
            run: || {
                let p = scaled_pair("2,3", "4,9", 6)?;
                flat(&p, true)?;
                eq("Apéry set", p.apery_set().exponents.clone(), vec![0, 4, 8, 9, 13, 17])
            },
        },
        Fixture {
            label: "flat/root 3/2 over 2-3",
            run: || {
                let r = semigroup(&[2, 3])?;
                eq("check_flat_root", check_flat_root(&r, 3, 2).map_err(|e| e.to_string())?, true)
            },
        },
        Fixture {
            label: "not-flat/two-gen 9-12 over 3-4",
            run: || {
                eq("check_flat_two_gen", check_flat_two_gen(&[9, 12], 3, 4).map_err(|e| e.to_string())?, false)?;
                flat(&pair(&[9, 12], &[3, 4])?, false)
            },
        },
        Fixture {
            label: "not-flat/N over 2-3",
            run: || {
                let p = pair(&[2, 3], &[1])?;
                flat(&p, false)?;
                witness(&p, 3)?;
                eq("intersection", p.check_flat_intersection(), false)
            },
        },
        Fixture {
            label: "not-flat/5-8-9 over 9-15-21",
            run: || {
                let p = pair(&[9, 15, 21], &[5, 8, 9])?;
                flat(&p, false)?;
                witness(&p, 23)?;
                eq("intersection", p.check_flat_intersection(), true)
            },
        },
        Fixture {
            label: "not-flat/3-4 over 9-12",
            run: || {
                let p = pair(&[9, 12], &[3, 4])?;
                flat(&p, false)?;
                eq("Apéry set", p.apery_set().exponents.clone(), vec![0, 3, 4, 6, 7, 8, 10, 11, 14])?;
                eq("d/d'", p.d() / p.d_prime(), 3)
            },
        },
        Fixture {
            label: "not-flat/14-21-22-33 over 14-22",
            run: || {
                let p = pair(&[14, 22], &[14, 21, 22, 33])?;
                flat(&p, false)?;
                has_reps(&p, 231, &[(210, 21), (198, 33)])
            },
        },
        Fixture {
            label: "rectangle/2-3 over 12",
            run: || eq("sizes", sizes(&pair(&[12], &[2, 3])?), vec![vec![3, 4], vec![6, 2]]),
        },
        Fixture {
            label: "rectangle/14-21-22-33 over 22",
            run: || {
                let p = pair(&[22], &[14, 21, 22, 33])?;
                flat(&p, true)?;
                eq("rectangles", sizes(&p).len(), 0)
            },
        },
        Fixture {
            label: "rectangle/5-6-9 over 6",
            run: || {
                let rects = find_rectangles(&pair(&[6], &[5, 6, 9])?);
                eq("rectangles", rects.len(), 1)?;
                eq("sides", rects[0].sides(), vec![vec![0, 5, 10], vec![0, 9]])
            },
        },
        Fixture {
            label: "rectangle/3-5-7 over 17-19",
            run: || {
                let p = pair(&[17, 19], &[3, 5, 7])?;
                flat(&p, false)?;
                eq("sizes", sizes(&p), vec![vec![4, 2, 2]])
            },
        },
        Fixture {
            label: "rectangle/2-3 over 5",
            run: || eq("rectangles", sizes(&pair(&[5], &[2, 3])?).len(), 0),
        },
        Fixture {
            label: "rectangle/2-3 over 3",
            run: || eq("sizes", sizes(&pair(&[3], &[2, 3])?), vec![vec![3]]),
        },
        Fixture {
            label: "rectangle/7S+5T over every r",
            run: || {
                let e = semigroup(&[14, 15, 20, 21])?;
                let top = e.conductor() + 420;
                for r in (1..=top).filter(|&r| e.contains_int(r)) {
                    let p = pair(&[r], &[14, 15, 20, 21])?;
                    ensure(find_rectangles(&p).is_empty(), || format!("rectangular over ⟨{r}⟩"))?;
                }
                Ok(())
            },
        },
        Fixture {
            label: "matrix/16-box over 32-48",
            run: || {
                let p = pair(&[32, 48], &[32, 35, 38, 44, 48, 56])?;
                let rects = find_rectangles(&p);
                eq("sizes", rects.iter().map(|r| r.sizes.clone()).collect(), vec![vec![2, 2, 2, 2]])?;
                let b = beta_matrix(&p, &rects[0]).map_err(|e| e.to_string())?;
                eq("matrix", b.matrix, mat(&[&[2, -1, 0, 0], &[0, 2, -1, 0], &[0, 0, 2, -1], &[0, 0, 0, 2]]))?;
                eq("t", b.t, vec![32, 32, 32, 112])
            },
        },
        Fixture {
            label: "matrix/triangular 2x2x2 over 16-24",
            run: || {
                let p = pair(&[16, 24], &[16, 24, 31, 46, 44])?;
                let rects = find_rectangles(&p);
                eq("rectangles", rects.len(), 1)?;
                let b = beta_matrix(&p, &rects[0]).map_err(|e| e.to_string())?;
                // listed order (31, 46, 44) against ascending (31, 44, 46)
                let (m, t) = b.permuted(&[0, 2, 1]);
                eq("matrix", m.clone(), mat(&[&[2, -1, 0], &[0, 2, -1], &[0, 0, 2]]))?;
                eq("triangular", m.is_upper_triangular(), true)?;
                eq("t", t, vec![16, 48, 88])?;
                eq("det", b.det, 8)?;
                eq("sign lemma", lemma_matrix_check(&m, &[31, 46, 44]).map_err(|e| e.to_string())?, true)?;
                let r = classify(&p);
                eq("verdict", r.ci, CiVerdict::Ci)?;
                eq("THM_MAIN", r.fired(Rule::ThmMain), true)
            },
        },
        Fixture {
            label: "matrix/singular relation",
            run: || {
                let m = mat(&[&[4, -1, -1], &[-1, 2, -1], &[-3, -1, 2]]);
                eq("det", m.determinant(), 0)?;
                eq("M·s", m.mul_vec(&[3, 5, 7]), vec![0, 0, 0])?;
                eq("triangular order", crate::matrix::triangularizing_order(&m), None)?;
                eq("sign lemma", lemma_matrix_check(&m, &[3, 5, 7]).map_err(|e| e.to_string())?, true)
            },
        },
        Fixture {
            label: "classify/2^n family n=3 a=1",
            run: || {
                let p = pair(&[8], &[8, 9, 10, 12])?;
                let r = classify(&p);
                eq("verdict", r.ci, CiVerdict::Ci)?;
                let m = r
                    .rectangles
                    .iter()
                    .find_map(|a| a.matrix.clone().filter(|b| b.t == vec![8, 8, 24]))
                    .ok_or("no rectangle with t = (8, 8, 24)")?;
                eq("matrix", m.matrix, mat(&[&[2, -1, 0], &[0, 2, -1], &[0, 0, 2]]))
            },
        },
        Fixture {
            label: "classify/N over 2-3 not ci",
            run: || {
                let r = classify(&pair(&[2, 3], &[1])?);
                eq("verdict", r.ci, CiVerdict::NotCi)?;
                eq("NOT_FLAT", r.fired(Rule::NotFlat), true)
            },
        },
        Fixture {
            label: "classify/14-21-22-33 over 22 unknown",
            run: || {
                let r = classify(&pair(&[22], &[14, 21, 22, 33])?);
                eq("verdict", r.ci, CiVerdict::Unknown)?;
                eq("flat", r.flat.is_flat, true)?;
                eq("rectangular", r.is_rectangular(), false)
            },
        },
        Fixture {
            label: "classify/scaled 4-9 over v^6 2-3",
            run: || {
                let r = classify(&scaled_pair("2,3", "4,9", 6)?);
                eq("flat", r.flat.is_flat, true)?;
                eq("Apéry count", r.apery.len(), 6)
            },
        },
        Fixture {
            label: "bresinsky/14-21-15-20 relation",
            run: || {
                let b = bresinsky_relation_search([14, 21, 15, 20]).map_err(|e| e.to_string())?;
                eq("c", b.c, [3, 2, 4, 3])?;
                let rel = b.relation.ok_or("no relation found")?;
                eq("α", rel.alpha, [1, 1, 1, 1])
            },
        },
    ]
}

/// Runs every fixture whose label contains `filter`.
pub fn run(filter: Option<&str>) -> Vec<FixtureOutcome> {
    all()
        .iter()
        .filter(|f| filter.is_none_or(|s| f.label.contains(s)))
        .map(Fixture::run)
        .collect()
}
