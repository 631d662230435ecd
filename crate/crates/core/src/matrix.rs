//! Dense exact linear algebra: fraction-free (Bareiss) elimination over the
//! integers with exact divisions, wrapped for rational matrices.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{exact_div, Int, Rat};

/// Dense square matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    dim: usize,
    rows: Vec<Vec<Rat>>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let dim = rows.len();
        assert!(dim > 0, "empty matrix");
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Self { dim, rows }
    }

    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.dim, other.dim);
        let rows = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let mut acc = Rat::zero();
                        for k in 0..self.dim {
                            acc += &self.rows[i][k] * &other.rows[k][j];
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        RationalMatrix::from_rows(rows)
    }

    /// Solves `self · x = rhs` exactly. Pivots are taken in natural order and
    /// asserted nonzero; no row exchanges are performed.
    pub fn solve(&self, rhs: &[Rat]) -> Vec<Rat> {
        assert_eq!(rhs.len(), self.dim);
        let cols = vec![rhs.to_vec()];
        self.solve_columns(&cols).pop().unwrap()
    }

    /// Inverse matrix, obtained by solving against the identity columns in a
    /// single elimination pass. Panics on a zero pivot.
    pub fn invert(&self) -> RationalMatrix {
        let cols: Vec<Vec<Rat>> = (0..self.dim)
            .map(|j| {
                (0..self.dim)
                    .map(|i| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        let sols = self.solve_columns(&cols);
        // solution column j is column j of the inverse
        let rows = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| sols[j][i].clone()).collect())
            .collect();
        RationalMatrix::from_rows(rows)
    }

    /// Clears denominators row-wise, then runs fraction-free elimination with
    /// back substitution once for all augmented columns.
    fn solve_columns(&self, cols: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        let width = cols.len();
        let aug: Vec<Vec<Int>> = (0..self.dim)
            .map(|i| {
                let entries = self.rows[i].iter().chain(cols.iter().map(|c| &c[i]));
                let mut scale = Int::one();
                for e in entries.clone() {
                    scale = scale.lcm(e.denom());
                }
                entries
                    .map(|e| e.numer() * exact_div(&scale, e.denom()))
                    .collect()
            })
            .collect();
        bareiss_solve(aug, self.dim, width)
    }
}

/// Fraction-free forward elimination on an integer matrix with `width`
/// augmented columns, followed by exact rational back substitution. Returns
/// one solution vector per augmented column.
fn bareiss_solve(mut m: Vec<Vec<Int>>, dim: usize, width: usize) -> Vec<Vec<Rat>> {
    let mut prev = Int::one();
    for k in 0..dim {
        assert!(!m[k][k].is_zero(), "zero pivot at elimination step {k}");
        for i in k + 1..dim {
            for j in k + 1..dim + width {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = exact_div(&t, &prev);
            }
            m[i][k] = Int::zero();
        }
        prev = m[k][k].clone();
    }
    (0..width)
        .map(|w| {
            let mut x = vec![Rat::zero(); dim];
            for i in (0..dim).rev() {
                let mut s = Rat::from(m[i][dim + w].clone());
                for j in i + 1..dim {
                    s -= Rat::from(m[i][j].clone()) * &x[j];
                }
                x[i] = s / Rat::from(m[i][i].clone());
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn solve_small_system() {
        // 2x + y = 5, x - y = 1  =>  x = 2, y = 1
        let m = RationalMatrix::from_rows(vec![
            vec![rat(2, 1), rat(1, 1)],
            vec![rat(1, 1), rat(-1, 1)],
        ]);
        let x = m.solve(&[rat(5, 1), rat(1, 1)]);
        assert_eq!(x, vec![rat(2, 1), rat(1, 1)]);
    }

    #[test]
    fn solve_with_rational_entries() {
        let m =
            RationalMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 1)]]);
        let rhs = [rat(7, 6), rat(9, 4)];
        let x = m.solve(&rhs);
        assert_eq!(x, vec![rat(1, 1), rat(2, 1)]);
    }

    #[test]
    fn invert_times_self_is_identity() {
        let m = RationalMatrix::from_rows(vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            vec![rat(2, 1), rat(5, 1), rat(3, 1)],
            vec![rat(1, 1), rat(0, 1), rat(8, 1)],
        ]);
        let inv = m.invert();
        assert_eq!(m.mul(&inv), RationalMatrix::identity(3));
        assert_eq!(inv.mul(&m), RationalMatrix::identity(3));
    }

    #[test]
    #[should_panic(expected = "zero pivot")]
    fn zero_leading_minor_panics() {
        let m =
            RationalMatrix::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]]);
        m.solve(&[rat(1, 1), rat(1, 1)]);
    }

    proptest! {
        // Lower-triangular matrices with nonzero diagonal have all leading
        // minors nonzero, so the natural pivot order always applies.
        #[test]
        fn triangular_inverse_roundtrip(
            diag in proptest::collection::vec(1i64..9, 4),
            below in proptest::collection::vec(-9i64..9, 6),
        ) {
            let mut rows = vec![vec![Rat::from(int(0)); 4]; 4];
            let mut it = below.into_iter();
            for i in 0..4 {
                for entry in rows[i].iter_mut().take(i) {
                    *entry = Rat::from(int(it.next().unwrap()));
                }
                rows[i][i] = Rat::from(int(diag[i]));
            }
            let m = RationalMatrix::from_rows(rows);
            let inv = m.invert();
            prop_assert_eq!(m.mul(&inv), RationalMatrix::identity(4));
        }
    }
}
