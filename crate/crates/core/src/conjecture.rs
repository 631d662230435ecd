//! Machine checks on the structure of the antidiagonals c_{m,m−k}.
//!
//! After dividing out an explicit factorial/binomial normalization, each
//! offset k is conjectured to follow a fixed polynomial bracket in m of
//! degree 2k:
//!
//! * even offsets:  c_{m,m−2k} = (m−(2k+2))! · C(m, 2k) · Σ_j Γ_j m^j,
//! * odd offsets:   c_{m,m−(2k+1)} = (m−(2k+3))! · (2k+3−m) · C(m, 2k+1) · Σ_j Υ_j m^j,
//!
//! with leading coefficients 1/2^{2k} and 1/2^{2k+1}, alternating signs on
//! the nonzero bracket coefficients, a positive bracket value at every
//! integer m in range, and entry signs fixed by the parity. The checker fits
//! the bracket by exact Lagrange interpolation on the smallest admissible
//! sample window, validates it on held-out rows, and then tests every
//! sub-claim pointwise; any mismatch is reported as a falsification, not an
//! error.
//!
//! The brackets are treated as depending on (k, j) only, not on m; an
//! m-dependence would surface as a validation failure of the fit.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::coeffs::CoeffTable;
use crate::error::{Error, Result};
use crate::exact::{binomial_c, factorial, int, int_pow, rat, Int, Rat};
use crate::interp;

/// Number of held-out rows used to validate each fitted bracket.
const VALIDATION_POINTS: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// Offsets 2k: positive entries.
    Even,
    /// Offsets 2k+1: zero at m = 2k+3, negative beyond.
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A fitted (or fixed) normalized bracket polynomial: coefficients of m^j
/// for j = 0..=2k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjecturePolynomial {
    pub k: u32,
    pub parity: Parity,
    pub coeffs: Vec<Rat>,
}

impl ConjecturePolynomial {
    pub fn new(k: u32, parity: Parity, coeffs: Vec<Rat>) -> Self {
        assert_eq!(
            coeffs.len() as u32,
            2 * k + 1,
            "bracket must have 2k+1 coefficients"
        );
        Self { k, parity, coeffs }
    }

    /// Offset of the column this pattern describes: c_{m, m−offset}.
    pub fn offset(&self) -> u32 {
        offset_of(self.k, self.parity)
    }

    /// Smallest m the pattern claims to cover.
    pub fn first_m(&self) -> u32 {
        first_m_of(self.k, self.parity)
    }

    pub fn leading(&self) -> &Rat {
        self.coeffs.last().unwrap()
    }

    pub fn eval(&self, m: u32) -> Rat {
        interp::eval(&self.coeffs, &Rat::from(int(i64::from(m))))
    }

    /// The full normalization factor at row m (an integer, possibly zero or
    /// negative for odd offsets).
    pub fn normalization(&self, m: u32) -> Int {
        normalization_of(self.k, self.parity, m)
    }

    /// Entry the pattern predicts at row m.
    pub fn predicted_entry(&self, m: u32) -> Rat {
        Rat::from(self.normalization(m)) * self.eval(m)
    }
}

fn offset_of(k: u32, parity: Parity) -> u32 {
    match parity {
        Parity::Even => 2 * k,
        Parity::Odd => 2 * k + 1,
    }
}

fn first_m_of(k: u32, parity: Parity) -> u32 {
    match parity {
        Parity::Even => 2 * k + 2,
        Parity::Odd => 2 * k + 3,
    }
}

fn normalization_of(k: u32, parity: Parity, m: u32) -> Int {
    match parity {
        Parity::Even => factorial(m - (2 * k + 2)) * binomial_c(i64::from(m), 2 * k),
        Parity::Odd => {
            factorial(m - (2 * k + 3))
                * (int(i64::from(2 * k + 3)) - int(i64::from(m)))
                * binomial_c(i64::from(m), 2 * k + 1)
        }
    }
}

/// A concrete counterexample to one of the pattern's sub-claims.
#[derive(Debug, Clone, Serialize)]
pub struct Falsification {
    pub k: u32,
    pub parity: Parity,
    pub claim: String,
    pub m: u32,
    pub detail: String,
}

/// Why a fit could not be produced.
#[derive(Debug, Clone)]
pub enum FitError {
    /// The table does not reach the sample and validation window.
    InsufficientTable { needed: u32, max_m: u32 },
    /// The held-out rows contradict the interpolated bracket.
    Falsified(Falsification),
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::InsufficientTable { needed, max_m } => write!(
                f,
                "table too small for the fit: need max_m >= {needed}, have {max_m}"
            ),
            FitError::Falsified(fal) => write!(
                f,
                "pattern falsified at (k, parity, m) = ({}, {}, {}): {}",
                fal.k, fal.parity, fal.m, fal.detail
            ),
        }
    }
}

/// Table value divided by the normalization factor. For odd parity the
/// factor vanishes at m = 2k+3, so callers start at m = 2k+4.
fn normalized(k: u32, parity: Parity, m: u32, table: &CoeffTable) -> Rat {
    let scale = normalization_of(k, parity, m);
    assert!(!scale.is_zero(), "normalization vanishes at m = {m}");
    Rat::new(table.get(m, m - offset_of(k, parity)).clone(), scale)
}

/// Interpolates the normalized bracket for offset index k through the 2k+1
/// smallest admissible consecutive rows, then validates it against the next
/// five rows. Odd-parity sampling starts at m = 2k+4 because the
/// normalization vanishes at m = 2k+3.
pub fn fit_pattern(
    k: u32,
    parity: Parity,
    table: &CoeffTable,
) -> std::result::Result<ConjecturePolynomial, FitError> {
    let sample_start = match parity {
        Parity::Even => 2 * k + 2,
        Parity::Odd => 2 * k + 4,
    };
    let samples = 2 * k + 1;
    let needed = sample_start + samples + VALIDATION_POINTS - 1;
    if table.max_m() < needed {
        return Err(FitError::InsufficientTable {
            needed,
            max_m: table.max_m(),
        });
    }
    let points: Vec<(Rat, Rat)> = (sample_start..sample_start + samples)
        .map(|m| {
            (
                Rat::from(int(i64::from(m))),
                normalized(k, parity, m, table),
            )
        })
        .collect();
    let coeffs = interp::lagrange(&points);
    for (x, y) in &points {
        assert_eq!(
            &interp::eval(&coeffs, x),
            y,
            "interpolation failed to reproduce its own samples"
        );
    }
    let poly = ConjecturePolynomial::new(k, parity, coeffs);
    for m in sample_start + samples..=needed {
        let expect = normalized(k, parity, m, table);
        let got = poly.eval(m);
        if got != expect {
            return Err(FitError::Falsified(Falsification {
                k,
                parity,
                claim: "fixed-bracket-fit".into(),
                m,
                detail: format!("fitted bracket gives {got}, table normalizes to {expect}"),
            }));
        }
    }
    Ok(poly)
}

/// One verified sub-claim for one (k, parity) pattern.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimRecord {
    pub k: u32,
    pub parity: Parity,
    pub claim: String,
    pub points: u64,
    pub pass: bool,
    pub detail: Option<String>,
}

impl ClaimRecord {
    fn scan(
        k: u32,
        parity: Parity,
        claim: &str,
        points: u64,
        failure: Option<String>,
    ) -> ClaimRecord {
        ClaimRecord {
            k,
            parity,
            claim: claim.to_string(),
            points,
            pass: failure.is_none(),
            detail: failure,
        }
    }
}

/// Full outcome of [`check_conjecture`].
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub k_max: u32,
    pub m_max: u32,
    pub claims: Vec<ClaimRecord>,
}

impl ConjectureReport {
    pub fn pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.claims.iter().filter(|c| !c.pass)
    }
}

/// Checks every sub-claim of the diagonal pattern for k = 0..=k_max and both
/// parities, scanning rows up to m_max:
///
/// * the fitted bracket reproduces every table entry in range,
/// * leading coefficient 1/2^{2k} (even) or 1/2^{2k+1} (odd),
/// * strict sign alternation of the nonzero bracket coefficients, positive
///   leading,
/// * positive bracket value at every integer m in range,
/// * entry signs: positive integers (even), zero at m = 2k+3 then negative
///   integers (odd),
/// * first-column boundary values c_{2k+2,2} = 1 and c_{2k+3,2} = 0.
///
/// The table must reach m_max and the fit windows; all claim failures are
/// data in the report, not errors.
pub fn check_conjecture(k_max: u32, m_max: u32, table: &CoeffTable) -> Result<ConjectureReport> {
    if table.max_m() < m_max {
        return Err(Error::InsufficientTable {
            needed: m_max,
            max_m: table.max_m(),
        });
    }
    let mut claims = Vec::new();
    for k in 0..=k_max {
        for parity in [Parity::Even, Parity::Odd] {
            let poly = match fit_pattern(k, parity, table) {
                Ok(poly) => {
                    claims.push(ClaimRecord::scan(
                        k,
                        parity,
                        "fixed-bracket-fit",
                        u64::from(2 * k + 1 + VALIDATION_POINTS),
                        None,
                    ));
                    poly
                }
                Err(FitError::InsufficientTable { needed, max_m }) => {
                    return Err(Error::InsufficientTable { needed, max_m });
                }
                Err(FitError::Falsified(f)) => {
                    claims.push(ClaimRecord::scan(
                        k,
                        parity,
                        "fixed-bracket-fit",
                        u64::from(2 * k + 1 + VALIDATION_POINTS),
                        Some(format!("m = {}: {}", f.m, f.detail)),
                    ));
                    continue;
                }
            };

            let expect_leading = match parity {
                Parity::Even => Rat::new(Int::one(), int_pow(&int(2), 2 * k)),
                Parity::Odd => Rat::new(Int::one(), int_pow(&int(2), 2 * k + 1)),
            };
            claims.push(ClaimRecord::scan(
                k,
                parity,
                "leading-coefficient",
                1,
                (poly.leading() != &expect_leading).then(|| {
                    format!(
                        "leading coefficient {}, expected {expect_leading}",
                        poly.leading()
                    )
                }),
            ));

            let nonzero: Vec<&Rat> = poly.coeffs.iter().rev().filter(|c| !c.is_zero()).collect();
            let mut alt_failure = None;
            if nonzero.is_empty() || nonzero[0].is_negative() {
                alt_failure = Some("leading nonzero coefficient is not positive".to_string());
            } else {
                for pair in nonzero.windows(2) {
                    if (pair[0].is_positive()) == (pair[1].is_positive()) {
                        alt_failure = Some(format!(
                            "adjacent nonzero coefficients {} and {} share a sign",
                            pair[0], pair[1]
                        ));
                        break;
                    }
                }
            }
            claims.push(ClaimRecord::scan(
                k,
                parity,
                "alternating-signs",
                nonzero.len() as u64,
                alt_failure,
            ));

            let first_m = poly.first_m();
            let mut positive_failure = None;
            let mut positive_points = 0;
            for m in first_m..=m_max {
                positive_points += 1;
                let v = poly.eval(m);
                if !v.is_positive() && positive_failure.is_none() {
                    positive_failure =
                        Some(format!("bracket value {v} at m = {m} is not positive"));
                }
            }
            claims.push(ClaimRecord::scan(
                k,
                parity,
                "bracket-positive",
                positive_points,
                positive_failure,
            ));

            let offset = poly.offset();
            let mut reproduce_failure = None;
            let mut sign_failure = None;
            let mut entry_points = 0;
            for m in first_m..=m_max {
                entry_points += 1;
                let entry = table.get(m, m - offset);
                let predicted = poly.predicted_entry(m);
                if Rat::from(entry.clone()) != predicted && reproduce_failure.is_none() {
                    reproduce_failure = Some(format!(
                        "m = {m}: entry {entry}, pattern predicts {predicted}"
                    ));
                }
                let sign_ok = match parity {
                    Parity::Even => entry.is_positive(),
                    Parity::Odd if m == 2 * k + 3 => entry.is_zero(),
                    Parity::Odd => entry.is_negative(),
                };
                if !sign_ok && sign_failure.is_none() {
                    sign_failure = Some(format!("m = {m}: entry {entry} has the wrong sign"));
                }
            }
            claims.push(ClaimRecord::scan(
                k,
                parity,
                "reproduces-entries",
                entry_points,
                reproduce_failure,
            ));
            claims.push(ClaimRecord::scan(
                k,
                parity,
                "entry-signs",
                entry_points,
                sign_failure,
            ));

            let boundary_m = first_m;
            let boundary_failure = if boundary_m <= m_max {
                let entry = table.get(boundary_m, 2);
                let expect = match parity {
                    Parity::Even => Int::one(),
                    Parity::Odd => Int::zero(),
                };
                (*entry != expect)
                    .then(|| format!("c_({boundary_m},2) = {entry}, expected {expect}"))
            } else {
                None
            };
            claims.push(ClaimRecord::scan(
                k,
                parity,
                "first-column-boundary",
                u64::from(boundary_m <= m_max),
                boundary_failure,
            ));
        }
    }
    Ok(ConjectureReport {
        k_max,
        m_max,
        claims,
    })
}

/// The eight exactly-known brackets for offsets 0..=7 of c_{m,m−offset}, in
/// offset order: constants for offsets 0 and 1, then degree-2k polynomials.
pub fn closed_form_fixtures() -> Vec<ConjecturePolynomial> {
    vec![
        ConjecturePolynomial::new(0, Parity::Even, vec![rat(1, 1)]),
        ConjecturePolynomial::new(0, Parity::Odd, vec![rat(1, 2)]),
        ConjecturePolynomial::new(1, Parity::Even, vec![rat(46, 12), rat(-23, 12), rat(1, 4)]),
        ConjecturePolynomial::new(1, Parity::Odd, vec![rat(11, 4), rat(-9, 8), rat(1, 8)]),
        ConjecturePolynomial::new(
            2,
            Parity::Even,
            vec![
                rat(1901, 30),
                rat(-1747, 40),
                rat(553, 48),
                rat(-11, 8),
                rat(1, 16),
            ],
        ),
        ConjecturePolynomial::new(
            2,
            Parity::Odd,
            vec![
                rat(611, 12),
                rat(-1489, 48),
                rat(697, 96),
                rat(-37, 48),
                rat(1, 32),
            ],
        ),
        ConjecturePolynomial::new(
            3,
            Parity::Even,
            vec![
                rat(198721, 84),
                rat(-1916141, 1008),
                rat(1930, 3),
                rat(-67513, 576),
                rat(775, 64),
                rat(-43, 64),
                rat(1, 64),
            ],
        ),
        ConjecturePolynomial::new(
            3,
            Parity::Odd,
            vec![
                rat(16083, 8),
                rat(-425993, 288),
                rat(14669, 32),
                rat(-88093, 1152),
                rat(2777, 384),
                rat(-47, 128),
                rat(1, 128),
            ],
        ),
    ]
}
