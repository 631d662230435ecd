//! The basis polynomials ψ_m(n) and their iterated sums ψ_m^(a)(n).
//!
//! ψ_m(n) = n + (m−1)(n−1)·B_{m−1,n−1}, and the a-th order series is defined
//! by ψ_m^(a)(n) = Σ_{i=1}^n ψ_m^(a−1)(i). The closed form evaluated here is
//! ψ_m^(a)(n) = B_{a+1,n−1} + m(m−1)/(m+a) · (n−1) · B_{m+a−1,n−1}; the
//! literal iterated summation is kept alongside as a test oracle.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{binomial_c, rat_to_int, Int, Rat};

fn check_args(m: u32, n: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::Domain(format!("psi requires m >= 2, got m = {m}")));
    }
    if n < 1 {
        return Err(Error::Domain(format!("psi requires n >= 1, got n = {n}")));
    }
    Ok(())
}

fn to_i64(n: u64) -> i64 {
    i64::try_from(n).expect("argument exceeds the supported range")
}

/// ψ_m(n) = n + (m−1)(n−1)·B_{m−1,n−1}, where B_{a,b} = C(a+b, a).
pub fn psi(m: u32, n: u64) -> Result<Int> {
    check_args(m, n)?;
    let b = binomial_c(to_i64(n) + i64::from(m) - 2, m - 1);
    Ok(Int::from(n) + Int::from(m - 1) * Int::from(n - 1) * b)
}

/// Closed form of the a-th order series,
/// ψ_m^(a)(n) = B_{a+1,n−1} + m(m−1)/(m+a) · (n−1) · B_{m+a−1,n−1}.
/// The rational factor always cancels; integrality is asserted.
pub fn psi_closed(m: u32, a: u32, n: u64) -> Result<Int> {
    check_args(m, n)?;
    let n_i = to_i64(n);
    let lead = binomial_c(n_i + i64::from(a), a + 1);
    let tail = binomial_c(n_i + i64::from(m) + i64::from(a) - 2, m + a - 1);
    let factor = Rat::new(Int::from(m) * Int::from(m - 1), Int::from(m + a));
    let total = Rat::from(lead) + factor * Rat::from(Int::from(n - 1) * tail);
    Ok(rat_to_int(&total))
}

/// Literal iterated summation from ψ_m(n): the defining recursion, evaluated
/// by repeated prefix sums. Kept simple to be obviously correct; used as the
/// oracle for [`psi_closed`].
pub fn psi_recursive_oracle(m: u32, a: u32, n: u64) -> Result<Int> {
    check_args(m, n)?;
    let mut vals = (1..=n).map(|i| psi(m, i)).collect::<Result<Vec<_>>>()?;
    for _ in 0..a {
        let mut acc = Int::zero();
        for v in vals.iter_mut() {
            acc += &*v;
            *v = acc.clone();
        }
    }
    Ok(vals.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{binomial_b, int};

    #[test]
    fn psi_at_one_is_one() {
        for m in 2..=12 {
            assert_eq!(psi(m, 1).unwrap(), int(1));
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(2, 3).unwrap(), int(9));
        assert_eq!(psi(4, 3).unwrap(), int(63));
    }

    #[test]
    fn psi_alternative_form() {
        // ψ_m(n) = B_{1,n−1} + m(m−1)·B_{m,n−2}, with the second term vanishing at n = 1
        for m in 2..=10u32 {
            for n in 1..=12u64 {
                let alt = binomial_b(1, n as u32 - 1)
                    + Int::from(m) * Int::from(m - 1) * binomial_c(n as i64 + i64::from(m) - 2, m);
                assert_eq!(psi(m, n).unwrap(), alt, "(m, n) = ({m}, {n})");
            }
        }
    }

    #[test]
    fn psi_domain_errors() {
        assert!(psi(1, 1).is_err());
        assert!(psi(0, 4).is_err());
        assert!(psi(2, 0).is_err());
        assert!(psi_closed(1, 2, 3).is_err());
        assert!(psi_recursive_oracle(2, 1, 0).is_err());
    }

    #[test]
    fn psi_closed_at_one_is_one() {
        for m in 2..=10 {
            for a in 0..=6 {
                assert_eq!(psi_closed(m, a, 1).unwrap(), int(1));
            }
        }
    }

    #[test]
    fn psi_closed_examples() {
        assert_eq!(psi_closed(2, 1, 3).unwrap(), int(14));
        for m in 2..=8 {
            for n in 1..=8 {
                assert_eq!(psi_closed(m, 0, n).unwrap(), psi(m, n).unwrap());
            }
        }
    }

    #[test]
    fn recursive_oracle_examples() {
        assert_eq!(psi_recursive_oracle(2, 1, 3).unwrap(), int(14));
        assert_eq!(psi_recursive_oracle(3, 2, 2).unwrap(), int(10));
        for m in 2..=8 {
            for n in 1..=8 {
                assert_eq!(psi_recursive_oracle(m, 0, n).unwrap(), psi(m, n).unwrap());
            }
        }
    }

    #[test]
    fn closed_form_matches_recursive_oracle() {
        for m in 2..=10 {
            for a in 0..=4 {
                for n in 1..=12 {
                    assert_eq!(
                        psi_closed(m, a, n).unwrap(),
                        psi_recursive_oracle(m, a, n).unwrap(),
                        "(m, a, n) = ({m}, {a}, {n})"
                    );
                }
            }
        }
    }

    #[test]
    fn summation_telescopes() {
        for m in 2..=10 {
            for a in 1..=4 {
                for n in 2..=12 {
                    let diff = psi_closed(m, a, n).unwrap() - psi_closed(m, a, n - 1).unwrap();
                    assert_eq!(diff, psi_closed(m, a - 1, n).unwrap());
                }
            }
        }
    }
}
