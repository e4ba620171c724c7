//! Rectangles of Apéry exponents and the log matrix of a flat rectangle.

use std::collections::{HashMap, HashSet};

use crate::algebra::AlgebraPair;
use crate::error::{Error, Result};
use crate::matrix::{det_and_adjugate, triangularizing_order, IntMatrix};

/// A box `{Σ ℓ_i s_i : 0 ≤ ℓ_i < β_i}` over the ascending minimal monomials
/// `s_i` that coincides with the Apéry set, each exponent hit exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rectangle {
    pub minimal_monomials: Vec<i64>,
    pub sizes: Vec<usize>,
}

impl Rectangle {
    /// Number of box points, `∏ β_i`.
    pub fn volume(&self) -> usize {
        self.sizes.iter().product()
    }

    /// Every box point with its exponent, in mixed-radix order (first index
    /// fastest).
    pub fn box_points(&self) -> Vec<(Vec<usize>, i64)> {
        let n = self.sizes.len();
        let mut out = Vec::with_capacity(self.volume());
        let mut ell = vec![0usize; n];
        loop {
            let value = ell
                .iter()
                .zip(&self.minimal_monomials)
                .map(|(&l, &s)| l as i64 * s)
                .sum();
            out.push((ell.clone(), value));
            let mut k = 0;
            loop {
                if k == n {
                    return out;
                }
                ell[k] += 1;
                if ell[k] < self.sizes[k] {
                    break;
                }
                ell[k] = 0;
                k += 1;
            }
        }
    }

    /// Exponent vector of an Apéry exponent.
    pub fn decompose(&self, w: i64) -> Option<Vec<usize>> {
        self.box_points()
            .into_iter()
            .find(|(_, v)| *v == w)
            .map(|(ell, _)| ell)
    }

    /// The sides as exponent lists, e.g. `{0, 9} × {0, 5, 10}`.
    pub fn sides(&self) -> Vec<Vec<i64>> {
        self.minimal_monomials
            .iter()
            .zip(&self.sizes)
            .map(|(&s, &b)| (0..b as i64).map(|l| l * s).collect())
            .collect()
    }
}

/// The log matrix `M` of a flat rectangle with `M·s = t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaMatrix {
    pub n: usize,
    pub matrix: IntMatrix,
    pub t: Vec<i64>,
    pub det: i64,
    pub adjugate: IntMatrix,
}

impl BetaMatrix {
    pub fn is_nonsingular(&self) -> bool {
        self.det != 0
    }

    pub fn triangularizable(&self) -> Option<Vec<usize>> {
        triangularizing_order(&self.matrix)
    }

    /// The matrix and `t` re-indexed so that position `k` holds original index
    /// `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> (IntMatrix, Vec<i64>) {
        (
            self.matrix.permuted(order),
            order.iter().map(|&i| self.t[i]).collect(),
        )
    }
}

/// Box checks for one candidate size vector: every point Apéry and all points
/// distinct. With `∏ β_i = |A|` that makes the box equal to the Apéry set.
fn is_rectangle(rect: &Rectangle, apery: &HashSet<i64>) -> bool {
    let mut seen = HashSet::with_capacity(rect.volume());
    rect.box_points()
        .into_iter()
        .all(|(_, v)| apery.contains(&v) && seen.insert(v))
}

/// All rectangles of the pair's Apéry set, sizes listed in lexicographic order.
pub fn find_rectangles(pair: &AlgebraPair) -> Vec<Rectangle> {
    let apery = pair.apery_set();
    let monomials = pair.minimal_monomials();
    let total = apery.len();
    if monomials.is_empty() {
        return vec![Rectangle {
            minimal_monomials: Vec::new(),
            sizes: Vec::new(),
        }];
    }
    // β_i cannot exceed the run of Apéry multiples 0, s_i, 2s_i, …
    let caps: Vec<usize> = monomials
        .iter()
        .map(|&s| (0..).take_while(|&l| apery.contains(l * s)).count())
        .collect();
    let apery_set: HashSet<i64> = apery.exponents.iter().copied().collect();
    let mut found = Vec::new();
    let mut sizes = Vec::with_capacity(monomials.len());
    search_sizes(&caps, total, &mut sizes, &mut |sizes| {
        let rect = Rectangle {
            minimal_monomials: monomials.clone(),
            sizes: sizes.to_vec(),
        };
        if is_rectangle(&rect, &apery_set) {
            found.push(rect);
        }
    });
    found
}

fn search_sizes(caps: &[usize], remaining: usize, sizes: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    let i = sizes.len();
    if i == caps.len() {
        if remaining == 1 {
            emit(sizes);
        }
        return;
    }
    for beta in 2..=caps[i].min(remaining) {
        if remaining.is_multiple_of(beta) {
            sizes.push(beta);
            search_sizes(caps, remaining / beta, sizes, emit);
            sizes.pop();
        }
    }
}

/// Builds the log matrix of a flat rectangle from the unique representation
/// of each `β_i · s_i`.
pub fn beta_matrix(pair: &AlgebraPair, rect: &Rectangle) -> Result<BetaMatrix> {
    if !pair.is_flat().is_flat {
        return Err(Error::NotFlat);
    }
    let n = rect.sizes.len();
    let index: HashMap<i64, Vec<usize>> = rect
        .box_points()
        .into_iter()
        .map(|(ell, v)| (v, ell))
        .collect();
    let mut matrix = IntMatrix::zeros(n);
    let mut t = Vec::with_capacity(n);
    for i in 0..n {
        let beta = rect.sizes[i];
        let x = beta as i64 * rect.minimal_monomials[i];
        let reps = pair.representations(x)?;
        let [rep] = reps.as_slice() else {
            return Err(Error::InternalInconsistency(format!(
                "{x} has {} representations in a flat algebra",
                reps.len()
            )));
        };
        let ell = index.get(&rep.apery).ok_or_else(|| {
            Error::InternalInconsistency(format!("Apéry exponent {} is outside the box", rep.apery))
        })?;
        if ell[i] != 0 {
            return Err(Error::InternalInconsistency(format!(
                "diagonal exponent β_{i}{i} = {} is nonzero",
                ell[i]
            )));
        }
        if !pair.coeff_model().contains_int(rep.coefficient) {
            return Err(Error::InternalInconsistency(format!(
                "t_{i} = {} is not a coefficient",
                rep.coefficient
            )));
        }
        for (j, &l) in ell.iter().enumerate() {
            matrix.set(i, j, if i == j { beta as i64 } else { -(l as i64) });
        }
        t.push(rep.coefficient);
    }
    let (det, adjugate) = det_and_adjugate(&matrix);
    Ok(BetaMatrix {
        n,
        matrix,
        t,
        det,
        adjugate,
    })
}

/// Checks the hypotheses of the sign lemma (positive diagonal, off-diagonal
/// `-β_ij` with `0 ≤ β_ij < β_j`, `M·s ≥ 0` for positive `s`) and returns
/// whether its conclusion holds: `det ≥ 0` and a non-negative adjugate.
pub fn lemma_matrix_check(m: &IntMatrix, s: &[i64]) -> Result<bool> {
    let n = m.dim();
    if s.len() != n || s.iter().any(|&x| x <= 0) {
        return Err(Error::PreconditionFailed(
            "s must hold one positive entry per row".into(),
        ));
    }
    for i in 0..n {
        if m.get(i, i) <= 0 {
            return Err(Error::PreconditionFailed(format!("diagonal entry {i} is not positive")));
        }
        for j in 0..n {
            if i != j && (m.get(i, j) > 0 || -m.get(i, j) >= m.get(j, j)) {
                return Err(Error::PreconditionFailed(format!(
                    "entry ({i}, {j}) = {} is outside (-{}, 0]",
                    m.get(i, j),
                    m.get(j, j)
                )));
            }
        }
    }
    if let Some(row) = m.mul_vec(s).iter().position(|&v| v < 0) {
        return Err(Error::PreconditionFailed(format!("row {row} of M·s is negative")));
    }
    let (det, adj) = det_and_adjugate(m);
    Ok(det >= 0 && adj.rows().iter().flatten().all(|&v| v >= 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(c: &[i64], e: &[i64]) -> AlgebraPair {
        AlgebraPair::from_integers(c, e).unwrap()
    }

    fn sizes(p: &AlgebraPair) -> Vec<Vec<usize>> {
        find_rectangles(p).into_iter().map(|r| r.sizes).collect()
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn two_shapes_over_twelve() {
        let p = pair(&[12], &[2, 3]);
        let rects = find_rectangles(&p);
        assert_eq!(sizes(&p), vec![vec![3, 4], vec![6, 2]]);
        assert_eq!(rects[0].sides(), vec![vec![0, 2, 4], vec![0, 3, 6, 9]]);
        assert_eq!(rects[1].sides(), vec![vec![0, 2, 4, 6, 8, 10], vec![0, 3]]);
    }

    #[test]
    fn non_rectangular_examples() {
        assert!(find_rectangles(&pair(&[22], &[14, 21, 22, 33])).is_empty());
        assert!(find_rectangles(&pair(&[5], &[2, 3])).is_empty());
    }

    #[test]
    fn single_rectangle_examples() {
        let p = pair(&[6], &[5, 6, 9]);
        let rects = find_rectangles(&p);
        assert_eq!(rects.len(), 1);
        assert_eq!(rects[0].sides(), vec![vec![0, 5, 10], vec![0, 9]]);

        assert_eq!(sizes(&pair(&[17, 19], &[3, 5, 7])), vec![vec![4, 2, 2]]);
        assert_eq!(sizes(&pair(&[3], &[2, 3])), vec![vec![3]]);
        assert_eq!(sizes(&pair(&[3, 5], &[3, 5])), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn matrix_of_the_sixteen_box() {
        let p = pair(&[32, 48], &[32, 35, 38, 44, 48, 56]);
        let rects = find_rectangles(&p);
        assert_eq!(rects.len(), 1);
        let b = beta_matrix(&p, &rects[0]).unwrap();
        assert_eq!(
            b.matrix,
            mat(&[&[2, -1, 0, 0], &[0, 2, -1, 0], &[0, 0, 2, -1], &[0, 0, 0, 2]])
        );
        assert_eq!(b.t, vec![32, 32, 32, 112]);
        assert_eq!(b.det, 16);
    }

    #[test]
    fn matrix_reindexed_to_listed_order() {
        let p = pair(&[16, 24], &[16, 24, 31, 46, 44]);
        let rects = find_rectangles(&p);
        assert_eq!(rects.len(), 1);
        assert_eq!(rects[0].minimal_monomials, vec![31, 44, 46]);
        let b = beta_matrix(&p, &rects[0]).unwrap();
        // Order (31, 46, 44) is position order [0, 2, 1].
        let (m, t) = b.permuted(&[0, 2, 1]);
        assert_eq!(m, mat(&[&[2, -1, 0], &[0, 2, -1], &[0, 0, 2]]));
        assert_eq!(t, vec![16, 48, 88]);
        assert_eq!(b.det, 8);
        assert_eq!(b.triangularizable(), Some(vec![0, 2, 1]));
    }

    #[test]
    fn one_generator_matrix() {
        let p = pair(&[3], &[2, 3]);
        let rects = find_rectangles(&p);
        let b = beta_matrix(&p, &rects[0]).unwrap();
        assert_eq!(b.matrix, mat(&[&[3]]));
        assert_eq!(b.t, vec![6]);
        assert!(b.is_nonsingular());
    }

    #[test]
    fn non_flat_pairs_have_no_matrix() {
        let p = pair(&[17, 19], &[3, 5, 7]);
        let rects = find_rectangles(&p);
        assert_eq!(beta_matrix(&p, &rects[0]), Err(Error::NotFlat));
    }

    #[test]
    fn sign_lemma_harness() {
        assert!(lemma_matrix_check(&mat(&[&[2, -1], &[-1, 2]]), &[1, 1]).unwrap());
        assert!(matches!(
            lemma_matrix_check(&mat(&[&[2, -1], &[0, 2]]), &[1, 3]),
            Err(Error::PreconditionFailed(_))
        ));
        assert!(matches!(
            lemma_matrix_check(&mat(&[&[2, -2], &[0, 2]]), &[1, 1]),
            Err(Error::PreconditionFailed(_))
        ));
        let p = pair(&[16, 24], &[16, 24, 31, 46, 44]);
        let b = beta_matrix(&p, &find_rectangles(&p)[0]).unwrap();
        assert!(lemma_matrix_check(&b.matrix, &[31, 44, 46]).unwrap());
    }
}
