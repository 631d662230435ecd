//! Exact Lagrange interpolation over the rationals.

use num_traits::{One, Zero};

use crate::exact::Rat;

/// Coefficients (ascending powers) of the unique polynomial of degree less
/// than `points.len()` through the given points. Panics on duplicate
/// abscissae.
pub fn lagrange(points: &[(Rat, Rat)]) -> Vec<Rat> {
    assert!(!points.is_empty(), "interpolation needs at least one point");
    let n = points.len();
    let mut coeffs = vec![Rat::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![Rat::one()];
        let mut denom = Rat::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            // basis ← basis · (x − xj)
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d] -= c * xj;
                next[d + 1] += c;
            }
            basis = next;
            let diff = xi - xj;
            assert!(!diff.is_zero(), "duplicate interpolation abscissa {xi}");
            denom *= diff;
        }
        let scale = yi / &denom;
        for (d, c) in basis.iter().enumerate() {
            coeffs[d] += c * &scale;
        }
    }
    coeffs
}

/// Horner evaluation of an ascending coefficient list.
pub fn eval(coeffs: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Index of the highest nonzero coefficient, i.e. the degree.
pub fn degree(coeffs: &[Rat]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn recovers_known_polynomial() {
        // p(x) = x²/2 − 3x + 7/3
        let p = |x: i64| rat(x * x, 2) - rat(3 * x, 1) + rat(7, 3);
        let pts: Vec<(Rat, Rat)> = (0..3).map(|x| (rat(x, 1), p(x))).collect();
        let coeffs = lagrange(&pts);
        assert_eq!(coeffs, vec![rat(7, 3), rat(-3, 1), rat(1, 2)]);
        for x in -5..10 {
            assert_eq!(eval(&coeffs, &rat(x, 1)), p(x));
        }
    }

    #[test]
    fn reproduces_sample_points_exactly() {
        let pts = vec![
            (rat(1, 1), rat(5, 7)),
            (rat(2, 1), rat(-3, 11)),
            (rat(5, 2), rat(0, 1)),
            (rat(4, 1), rat(13, 3)),
        ];
        let coeffs = lagrange(&pts);
        for (x, y) in &pts {
            assert_eq!(&eval(&coeffs, x), y);
        }
    }

    #[test]
    fn degree_skips_trailing_zeros() {
        let coeffs = vec![rat(1, 1), rat(0, 1), rat(2, 1), rat(0, 1)];
        assert_eq!(degree(&coeffs), Some(2));
        assert_eq!(degree(&[rat(0, 1)]), None);
    }
}
