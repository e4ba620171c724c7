//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p nsalg --test acceptance`.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nsalg::algebra::{check_flat_root, check_flat_two_gen, flat_root_pair, two_gen_pair};
use nsalg::classify::gluing_apery_product_check;
use nsalg::matrix::triangularizing_order;
use nsalg::oracle::{self, random_corpus, CorpusPair};
use nsalg::semigroup::free_exponents;
use nsalg::{
    classify, find_rectangles, fixtures, lemma_matrix_check, AlgebraPair, CiVerdict, ClassificationReport,
    NumericalSemigroup,
};

const SEED: u64 = 0x5EED_2024;
const CORPUS_SIZE: usize = 500;
const FIXTURE_BUDGET: Duration = Duration::from_secs(5);
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
/// Exhaustive rectangle comparison is run up to this Apéry count.
const RECTANGLE_ORACLE_MAX: usize = 200;
const PARITY_MAX: i64 = 60;
const GLUINGS: usize = 50;

struct Suite {
    failed: Vec<String>,
}

impl Suite {
    fn line(&mut self, id: &str, name: &str, problems: &[String], note: String) {
        if problems.is_empty() {
            println!("PASS {id} {name}: {note}");
        } else {
            println!("FAIL {id} {name}: {note}");
            for p in problems.iter().take(10) {
                println!("     - {p}");
            }
            if problems.len() > 10 {
                println!("     … {} more", problems.len() - 10);
            }
            self.failed.push(id.to_string());
        }
    }
}

fn pairs(corpus: &[CorpusPair]) -> Vec<(String, AlgebraPair)> {
    corpus
        .iter()
        .map(|c| {
            let pair = c.to_pair().expect("corpus pairs are valid");
            (format!("{:?}/{:?}", c.extension, c.coefficient), pair)
        })
        .collect()
}

fn fixture_suite(suite: &mut Suite) {
    let start = Instant::now();
    let results = fixtures::run(None);
    let elapsed = start.elapsed();
    let mut problems: Vec<String> = results
        .iter()
        .filter(|o| !o.passed)
        .map(|o| format!("{}: {}", o.label, o.detail.clone().unwrap_or_default()))
        .collect();
    if elapsed > FIXTURE_BUDGET {
        problems.push(format!("took {elapsed:?}"));
    }
    suite.line(
        "1",
        "worked-example fixtures",
        &problems,
        format!("{} fixtures in {:.2?} (budget {:?})", results.len(), elapsed, FIXTURE_BUDGET),
    );
}

fn oracle_suite(suite: &mut Suite, corpus: &[(String, AlgebraPair)]) {
    let start = Instant::now();
    let mut apery = Vec::new();
    let mut scan = Vec::new();
    let mut rect = Vec::new();
    let mut rect_checked = 0;
    for (name, p) in corpus {
        let bound = oracle::required_bound(p);
        match oracle::apery_by_definition(p, bound) {
            Ok(a) if a == p.apery_set().exponents => {}
            Ok(a) => apery.push(format!("{name}: {a:?} vs {:?}", p.apery_set().exponents)),
            Err(e) => apery.push(format!("{name}: {e}")),
        }
        if oracle::minimal_monomials_by_definition(p) != p.minimal_monomials() {
            apery.push(format!("{name}: minimal monomials differ"));
        }
        let flat = p.is_flat();
        let witness = oracle::unique_representation_scan(p);
        if witness.is_none() != flat.is_flat {
            scan.push(format!("{name}: scan {witness:?} vs flat {}", flat.is_flat));
        }
        if let (Some(w), Some(s)) = (flat.witness, witness) {
            if p.representations(w.exponent).map(|r| r.len()).unwrap_or(0) < 2 || s > w.exponent {
                scan.push(format!("{name}: witness {} vs first double {s}", w.exponent));
            }
        }
        if p.apery_set().len() <= RECTANGLE_ORACLE_MAX {
            rect_checked += 1;
            let fast: Vec<Vec<usize>> = find_rectangles(p).into_iter().map(|r| r.sizes).collect();
            match oracle::rectangle_by_exhaustion(p) {
                Ok(slow) if slow == fast => {}
                Ok(slow) => rect.push(format!("{name}: {slow:?} vs {fast:?}")),
                Err(e) => rect.push(format!("{name}: {e}")),
            }
        }
    }
    let (roots, root_problems) = root_criterion(corpus);
    let (two_gen, two_gen_problems) = two_gen_criterion();
    let elapsed = start.elapsed();
    let n = corpus.len();
    suite.line("2a", "Apéry sets match the definition", &apery, format!("{n} pairs"));
    suite.line("2b", "unique-representation scan agrees with flatness", &scan, format!("{n} pairs"));
    suite.line(
        "2c",
        "rectangles match exhaustive search",
        &rect,
        format!("{rect_checked} pairs with |A| ≤ {RECTANGLE_ORACLE_MAX}"),
    );
    suite.line("2d", "root-adjunction criterion agrees with flatness", &root_problems, format!("{roots} cases"));
    suite.line("2e", "two-generator criterion agrees with flatness", &two_gen_problems, format!("{two_gen} cases"));
    let time = if elapsed > ORACLE_BUDGET { vec![format!("took {elapsed:?}")] } else { vec![] };
    suite.line("2f", "oracle suite time", &time, format!("{elapsed:.2?} (budget {ORACLE_BUDGET:?})"));
}

/// `R` is each corpus coefficient semigroup divided by its content, with a
/// seeded root `s/m`.
fn root_criterion(corpus: &[(String, AlgebraPair)]) -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let mut problems = Vec::new();
    let mut count = 0;
    for (_, p) in corpus {
        let c = p.coeff_model();
        let gens: Vec<i64> = c.generators().iter().map(|g| g / c.content()).collect();
        let r = NumericalSemigroup::from_integers(&gens).unwrap();
        let m = rng.gen_range(2..=5);
        let s = rng.gen_range(1..=40);
        if s.gcd(&m) != 1 {
            continue;
        }
        count += 1;
        let claimed = check_flat_root(&r, s, m).unwrap();
        let actual = flat_root_pair(&r, s, m).unwrap().is_flat().is_flat;
        if claimed != actual {
            problems.push(format!("R = {gens:?}, root {s}/{m}: criterion {claimed}, flatness {actual}"));
        }
    }
    (count, problems)
}

fn two_gen_criterion() -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let mut problems = Vec::new();
    let mut count = 0;
    while count < CORPUS_SIZE {
        let s1: i64 = rng.gen_range(2..=15);
        let s2: i64 = rng.gen_range(2..=15);
        if s1.gcd(&s2) != 1 {
            continue;
        }
        let k = rng.gen_range(1..=2);
        let r: Vec<i64> = (0..k)
            .map(|_| loop {
                let x = rng.gen_range(0..=6) * s1 + rng.gen_range(0..=6) * s2;
                if x > 0 {
                    break x;
                }
            })
            .collect();
        count += 1;
        let claimed = check_flat_two_gen(&r, s1, s2).unwrap();
        let actual = two_gen_pair(&r, s1, s2).unwrap().is_flat().is_flat;
        if claimed != actual {
            problems.push(format!("R = {r:?}, ({s1}, {s2}): criterion {claimed}, flatness {actual}"));
        }
    }
    (count, problems)
}

fn invariant_suite(suite: &mut Suite, reports: &[(String, &AlgebraPair, ClassificationReport)]) {
    let mut matrices = Vec::new();
    let mut triangular = Vec::new();
    let mut gorenstein = Vec::new();
    let mut built = 0;
    let mut small_rank = 0;
    let mut flat_rectangular = 0;
    for (name, p, r) in reports {
        for a in &r.rectangles {
            let Some(b) = &a.matrix else { continue };
            built += 1;
            let s = &a.rectangle.minimal_monomials;
            if b.matrix.mul_vec(s) != b.t {
                matrices.push(format!("{name}: M·s ≠ t"));
            }
            if b.t.iter().any(|&t| !p.coeff_model().contains_int(t)) {
                matrices.push(format!("{name}: t ⊄ C"));
            }
            if (0..b.n).any(|i| b.matrix.get(i, i) != a.rectangle.sizes[i] as i64) {
                matrices.push(format!("{name}: diagonal is not the box sizes"));
            }
            if b.det < 0 || b.adjugate.rows().iter().flatten().any(|&v| v < 0) {
                matrices.push(format!("{name}: negative det or adjugate entry"));
            }
            if lemma_matrix_check(&b.matrix, s) != Ok(true) {
                matrices.push(format!("{name}: sign lemma check failed"));
            }
            if triangularizing_order(&b.matrix) != oracle::triangular_by_exhaustion(&b.matrix.rows()) {
                triangular.push(format!("{name}: triangular order differs from exhaustive search"));
            }
        }
        if r.flat.is_flat && r.is_rectangular() {
            flat_rectangular += 1;
            if r.minimal_monomials.len() <= 3 {
                small_rank += 1;
                if !r.rectangles.iter().any(|a| a.triangular_permutation.is_some()) {
                    triangular.push(format!("{name}: no triangular matrix with n ≤ 3"));
                }
            }
            if !r.gorenstein_indicator {
                gorenstein.push(format!("{name}: no unique maximal Apéry exponent"));
            }
        }
    }
    suite.line(
        "3a",
        "log matrices: M·s = t, t ⊆ C, zero diagonal exponents, det ≥ 0, adjugate ≥ 0",
        &matrices,
        format!("{built} matrices"),
    );
    suite.line(
        "3b",
        "flat rectangular pairs with n ≤ 3 are triangularizable",
        &triangular,
        format!("{small_rank} pairs"),
    );
    suite.line("3c", "flat rectangular ⇒ unique maximal Apéry exponent", &gorenstein, format!("{flat_rectangular} pairs"));
    free_arrangements(suite);
    parity(suite);
    gluings(suite);
    power_family(suite);
}

fn free_arrangements(suite: &mut Suite) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let mut problems = Vec::new();
    let mut found = 0;
    let mut tries = 0;
    while found < 100 && tries < 200_000 {
        tries += 1;
        let k = rng.gen_range(2..=4);
        let gens: Vec<i64> = (0..k).map(|_| rng.gen_range(2..=60)).collect();
        let Ok(sg) = NumericalSemigroup::from_integers(&gens) else { continue };
        if sg.content() != 1 || sg.minimal_generators().len() != k {
            continue;
        }
        let f = free_exponents(&gens).unwrap();
        if !f.is_free {
            continue;
        }
        found += 1;
        let p = AlgebraPair::from_integers(&[gens[0]], &gens).unwrap();
        let rects = find_rectangles(&p);
        let ok = rects.iter().any(|r| {
            gens[1..].iter().zip(&f.phi).all(|(g, &phi)| {
                r.minimal_monomials
                    .iter()
                    .position(|m| m == g)
                    .is_some_and(|i| r.sizes[i] as i64 == phi)
            })
        });
        if !ok {
            problems.push(format!("{gens:?}: φ = {:?}, rectangles {:?}", f.phi, rects));
        }
    }
    if found == 0 {
        problems.push("no free arrangement generated".into());
    }
    suite.line("3d", "free arrangements are rectangular with sizes φ", &problems, format!("{found} arrangements"));
}

fn parity(suite: &mut Suite) {
    let mut problems = Vec::new();
    let mut count = 0;
    for a in 1..=PARITY_MAX {
        for b in a + 1..=PARITY_MAX {
            let gens = [4, a, b];
            let sg = NumericalSemigroup::from_integers(&gens).unwrap();
            if sg.content() != 1 || sg.minimal_generators().len() != 3 {
                continue;
            }
            count += 1;
            let p = AlgebraPair::from_integers(&[4], &gens).unwrap();
            let rectangular = !find_rectangles(&p).is_empty();
            if rectangular != (a % 2 == 0 || b % 2 == 0) {
                problems.push(format!("⟨4,{a},{b}⟩: rectangular = {rectangular}"));
            }
        }
    }
    suite.line(
        "3e",
        "⟨4,a,b⟩ over ⟨4⟩ rectangular iff a or b even",
        &problems,
        format!("{count} pairs with a < b ≤ {PARITY_MAX}"),
    );
}

fn gluings(suite: &mut Suite) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut problems = Vec::new();
    let mut done = 0;
    let random_semigroup = |rng: &mut ChaCha8Rng| loop {
        let k = rng.gen_range(1..=3);
        let gens: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=12)).collect();
        let sg = NumericalSemigroup::from_integers(&gens).unwrap();
        if sg.content() == 1 {
            break sg;
        }
    };
    // a non-generator element: a sum of two or three generators
    let element = |rng: &mut ChaCha8Rng, sg: &NumericalSemigroup| -> i64 {
        let g = sg.minimal_generators();
        (0..rng.gen_range(2..=3)).map(|_| g[rng.gen_range(0..g.len())]).sum()
    };
    while done < GLUINGS {
        let s = random_semigroup(&mut rng);
        let t = random_semigroup(&mut rng);
        let q = element(&mut rng, &s);
        let p = element(&mut rng, &t);
        if p.gcd(&q) != 1 || s.minimal_generators().contains(&q) || t.minimal_generators().contains(&p) {
            continue;
        }
        done += 1;
        match gluing_apery_product_check(&s, &t, p, q) {
            Ok(true) => {}
            other => problems.push(format!(
                "{p}·{:?} + {q}·{:?}: {other:?}",
                s.minimal_generators(),
                t.minimal_generators()
            )),
        }
    }
    suite.line("3f", "gluing Apéry product formula", &problems, format!("{done} gluings"));
}

fn power_family(suite: &mut Suite) {
    let mut problems = Vec::new();
    for n in 2..=4u32 {
        for a in [1i64, 3, 5] {
            let base = 1i64 << n;
            let mut gens = vec![base];
            gens.extend((0..n).map(|k| base + (1 << k) * a));
            let r = classify(&AlgebraPair::from_integers(&[base], &gens).unwrap());
            if r.ci != CiVerdict::Ci {
                problems.push(format!("{gens:?}: verdict {}", r.ci));
            }
            let bidiagonal = r.rectangles.iter().any(|x| {
                let (Some(b), Some(order)) = (&x.matrix, &x.triangular_permutation) else { return false };
                let (m, _) = b.permuted(order);
                (0..b.n).all(|i| {
                    (0..b.n).all(|j| match j {
                        _ if j == i => m.get(i, j) == 2,
                        _ if j == i + 1 => true,
                        _ => m.get(i, j) == 0,
                    })
                })
            });
            if !bidiagonal {
                problems.push(format!("{gens:?}: no bidiagonal matrix with diagonal 2"));
            }
        }
    }
    suite.line("3g", "power-of-two family is CI with a bidiagonal matrix", &problems, "n = 2,3,4; a = 1,3,5".into());
}

fn corpus_suite(suite: &mut Suite, reports: &[(String, &AlgebraPair, ClassificationReport)]) {
    let mut problems = Vec::new();
    let mut verdicts: BTreeMap<String, usize> = BTreeMap::new();
    let mut all_singular = Vec::new();
    for (name, _, r) in reports {
        *verdicts.entry(r.ci.to_string()).or_default() += 1;
        if let Err(e) = r.check_consistency() {
            problems.push(format!("{name}: {e}"));
        }
        if r.is_flat_rectangular_all_singular() {
            if r.ci != CiVerdict::Unknown && !r.fired(nsalg::Rule::N4Principal) {
                problems.push(format!("{name}: all-singular pair not reported as unknown"));
            }
            all_singular.push(name.clone());
        }
    }
    suite.line(
        "4",
        "corpus verdicts are consistent",
        &problems,
        format!("{verdicts:?}; flat rectangular all-singular with n ≥ 4: {}", all_singular.len()),
    );
    for name in &all_singular {
        println!("     all-singular: {name}");
    }
}

fn main() -> ExitCode {
    let mut suite = Suite { failed: Vec::new() };
    fixture_suite(&mut suite);

    let corpus = pairs(&random_corpus(SEED, CORPUS_SIZE));
    oracle_suite(&mut suite, &corpus);

    let reports: Vec<_> = corpus.iter().map(|(n, p)| (n.clone(), p, classify(p))).collect();
    invariant_suite(&mut suite, &reports);
    corpus_suite(&mut suite, &reports);

    if suite.failed.is_empty() {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {}", suite.failed.join(", "));
        ExitCode::FAILURE
    }
}
