//! Small square integer matrices with exact determinants and adjugates.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::PreconditionFailed("matrix must be square".into()));
        }
        Ok(IntMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum());
            }
        }
        out
    }

    /// Simultaneous row and column permutation: position `k` of the result
    /// holds original index `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> IntMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for a in 0..n {
            for b in 0..n {
                out.set(a, b, self.get(order[a], order[b]));
            }
        }
        out
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == 0))
    }

    fn minor(&self, row: usize, col: usize) -> IntMatrix {
        let rows = (0..self.n)
            .filter(|&i| i != row)
            .map(|i| {
                (0..self.n)
                    .filter(|&j| j != col)
                    .map(|j| self.get(i, j))
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(rows).expect("minor of a square matrix is square")
    }

    /// Fraction-free (Bareiss) elimination; exact for integer input.
    pub fn determinant(&self) -> i64 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(i128::from).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).expect("determinant fits in i64")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Determinant and adjugate, with `M · adj(M) = det(M) · I` checked.
pub fn det_and_adjugate(m: &IntMatrix) -> (i64, IntMatrix) {
    let n = m.dim();
    let det = m.determinant();
    let mut adj = IntMatrix::zeros(n);
    if n == 1 {
        adj.set(0, 0, 1);
    } else {
        for i in 0..n {
            for j in 0..n {
                let cofactor = m.minor(i, j).determinant();
                let signed = if (i + j) % 2 == 0 { cofactor } else { -cofactor };
                adj.set(j, i, signed);
            }
        }
    }
    let mut scaled_identity = IntMatrix::identity(n);
    for i in 0..n {
        scaled_identity.set(i, i, det);
    }
    assert_eq!(m.mul(&adj), scaled_identity, "adjugate identity failed for\n{m}");
    (det, adj)
}

/// A simultaneous row/column permutation making `m` upper triangular, or
/// `None`. Nonzero off-diagonal `m[i][j]` forces `i` before `j`, so such an
/// order is a topological order of that graph; among all of them the
/// lexicographically smallest is returned.
pub fn triangularizing_order(m: &IntMatrix) -> Option<Vec<usize>> {
    let n = m.dim();
    let mut indegree = vec![0usize; n];
    for i in 0..n {
        for (j, deg) in indegree.iter_mut().enumerate() {
            if i != j && m.get(i, j) != 0 {
                *deg += 1;
            }
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&j| indegree[j] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(i)) = ready.pop() {
        order.push(i);
        for (j, deg) in indegree.iter_mut().enumerate() {
            if i != j && m.get(i, j) != 0 {
                *deg -= 1;
                if *deg == 0 {
                    ready.push(Reverse(j));
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}
