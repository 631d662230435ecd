//! The two coefficient triangles of the ψ-basis expansion.
//!
//! `a_ml` are the monomial coefficients of ψ_m(n) = Σ_l a_ml n^l (rationals,
//! expressible through unsigned Stirling numbers of the first kind), and
//! `c_mk` are the dual coefficients of n^m = Σ_k c_mk ψ_k(n) (integers). The
//! c-triangle is built by three independent routes that must agree:
//!
//! * the triangular recurrence c_mm = (m−2)!, c_mk = −(m−2)! Σ_l a_ml c_lk,
//! * forward substitution inverting the lower-triangular a-table, and
//! * for each row, a dense binomial linear system solved by fraction-free
//!   elimination.
//!
//! Both triangles are indexed by (m, k) with both indices starting at 2.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    binomial_c, exact_div, factorial, harmonic, int, int_pow, rat_to_int, stirling1, Int, Rat,
};
use crate::matrix::RationalMatrix;
use crate::report::IdentityCheck;

/// The three closed forms for a_ml; they must agree everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AFormula {
    /// ([m−1, l−1] − [m−1, l]) / (m−2)!
    StirlingDiff,
    /// ([m, l] − m·[m−1, l]) / (m−2)!
    StirlingRow,
    /// Σ_{j=l}^m (−1)^{j−l} C(j, l) [m, j] / (m−2)!
    BinomialAlternating,
}

impl AFormula {
    pub const ALL: [AFormula; 3] = [
        AFormula::StirlingDiff,
        AFormula::StirlingRow,
        AFormula::BinomialAlternating,
    ];
}

fn triangle_args(m: u32, l: u32) -> Result<()> {
    if m < 2 || l < 2 || l > m {
        return Err(Error::Domain(format!(
            "triangle index out of range: need 2 <= l <= m, got (m, l) = ({m}, {l})"
        )));
    }
    Ok(())
}

fn table_args(max_m: u32) -> Result<()> {
    if max_m < 2 {
        return Err(Error::Domain(format!(
            "table needs max_m >= 2, got {max_m}"
        )));
    }
    Ok(())
}

/// Coefficient a_ml of n^l in ψ_m(n), by the chosen formula.
pub fn a_coeff(m: u32, l: u32, formula: AFormula) -> Result<Rat> {
    triangle_args(m, l)?;
    let num = match formula {
        AFormula::StirlingDiff => stirling1(m - 1, l - 1) - stirling1(m - 1, l),
        AFormula::StirlingRow => stirling1(m, l) - Int::from(m) * stirling1(m - 1, l),
        AFormula::BinomialAlternating => {
            let mut acc = Int::zero();
            for j in l..=m {
                let term = binomial_c(i64::from(j), l) * stirling1(m, j);
                if (j - l).is_multiple_of(2) {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    };
    Ok(Rat::new(num, factorial(m - 2)))
}

/// Lower-triangular table of a_ml for 2 ≤ l ≤ m ≤ max_m.
///
/// The diagonal is 1/(m−2)! and the first column is 1 − H_{m−2}; the
/// vanishing coefficients a_{m,0} = a_{m,1} = 0 are implicit in the l ≥ 2
/// bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ATable {
    max_m: u32,
    rows: Vec<Vec<Rat>>,
}

impl ATable {
    /// Builds the triangle from the Stirling-difference form, cross-checking
    /// the other two formulas on every entry. A disagreement is an
    /// implementation bug and panics.
    pub fn build(max_m: u32) -> Result<ATable> {
        table_args(max_m)?;
        let mut rows = Vec::with_capacity((max_m - 1) as usize);
        for m in 2..=max_m {
            let mut row = Vec::with_capacity((m - 1) as usize);
            for l in 2..=m {
                let v = a_coeff(m, l, AFormula::StirlingDiff)?;
                for alt in [AFormula::StirlingRow, AFormula::BinomialAlternating] {
                    assert_eq!(
                        v,
                        a_coeff(m, l, alt)?,
                        "a-coefficient formulas disagree at (m, l) = ({m}, {l})"
                    );
                }
                row.push(v);
            }
            rows.push(row);
        }
        Ok(ATable { max_m, rows })
    }

    pub fn max_m(&self) -> u32 {
        self.max_m
    }

    /// a_ml. Panics outside 2 ≤ l ≤ m ≤ max_m.
    pub fn get(&self, m: u32, l: u32) -> &Rat {
        assert!(
            2 <= l && l <= m && m <= self.max_m,
            "ATable::get({m}, {l}) outside triangle with max_m = {}",
            self.max_m
        );
        &self.rows[(m - 2) as usize][(l - 2) as usize]
    }

    /// Row m over l = 2..=m.
    pub fn row(&self, m: u32) -> &[Rat] {
        assert!(2 <= m && m <= self.max_m);
        &self.rows[(m - 2) as usize]
    }
}

/// Which construction produced a [`CoeffTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Recurrence,
    InvertA,
    BinomialSystem,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Recurrence, Route::InvertA, Route::BinomialSystem];

    pub fn name(self) -> &'static str {
        match self {
            Route::Recurrence => "recurrence",
            Route::InvertA => "invert-a",
            Route::BinomialSystem => "binomial-system",
        }
    }
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Lower-triangular integer table of c_mk for 2 ≤ k ≤ m ≤ max_m, tagged with
/// the route that produced it. Every route computes in exact rationals and
/// asserts integrality at the boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    max_m: u32,
    rows: Vec<Vec<Int>>,
    route: Route,
}

impl CoeffTable {
    pub fn build(max_m: u32, route: Route) -> Result<CoeffTable> {
        match route {
            Route::Recurrence => Self::build_recurrence(max_m),
            Route::InvertA => Self::build_invert_a(max_m),
            Route::BinomialSystem => Self::build_binomial_system(max_m),
        }
    }

    /// Triangular recurrence: c_mm = (m−2)! and, for 2 ≤ k < m,
    /// c_mk = −(m−2)! Σ_{l=k}^{m−1} a_ml c_lk.
    pub fn build_recurrence(max_m: u32) -> Result<CoeffTable> {
        let atable = ATable::build(max_m)?;
        let mut rows: Vec<Vec<Int>> = Vec::with_capacity((max_m - 1) as usize);
        for m in 2..=max_m {
            let fac = factorial(m - 2);
            let mut row = Vec::with_capacity((m - 1) as usize);
            for k in 2..m {
                let mut s = Rat::zero();
                for l in k..m {
                    let c_lk = &rows[(l - 2) as usize][(k - 2) as usize];
                    s += atable.get(m, l) * Rat::from(c_lk.clone());
                }
                row.push(rat_to_int(&(-Rat::from(fac.clone()) * s)));
            }
            row.push(fac);
            rows.push(row);
        }
        Ok(CoeffTable {
            max_m,
            rows,
            route: Route::Recurrence,
        })
    }

    /// Inverts the lower-triangular a-table by forward substitution, one
    /// column of A·C = I at a time, and double-checks the dual-basis relation
    /// Σ_i a_mi c_ij = δ_mj on the result.
    pub fn build_invert_a(max_m: u32) -> Result<CoeffTable> {
        let atable = ATable::build(max_m)?;
        let mut rows: Vec<Vec<Int>> = (2..=max_m)
            .map(|m| vec![Int::zero(); (m - 1) as usize])
            .collect();
        for k in 2..=max_m {
            // column k of the inverse: a_kk c_kk = 1, then descend
            let mut col = vec![Rat::one() / atable.get(k, k)];
            for m in k + 1..=max_m {
                let mut s = Rat::zero();
                for i in k..m {
                    s += atable.get(m, i) * &col[(i - k) as usize];
                }
                col.push(-s / atable.get(m, m));
            }
            for m in k..=max_m {
                rows[(m - 2) as usize][(k - 2) as usize] = rat_to_int(&col[(m - k) as usize]);
            }
        }
        let table = CoeffTable {
            max_m,
            rows,
            route: Route::InvertA,
        };
        table.assert_dual_basis(&atable);
        Ok(table)
    }

    /// Builds every row independently through the dense binomial system of
    /// [`c_row_binomial`].
    pub fn build_binomial_system(max_m: u32) -> Result<CoeffTable> {
        table_args(max_m)?;
        let rows = (2..=max_m)
            .map(c_row_binomial)
            .collect::<Result<Vec<_>>>()?;
        Ok(CoeffTable {
            max_m,
            rows,
            route: Route::BinomialSystem,
        })
    }

    fn assert_dual_basis(&self, atable: &ATable) {
        for m in 2..=self.max_m {
            for j in 2..=m {
                let mut s = Rat::zero();
                for i in j..=m {
                    s += atable.get(m, i) * Rat::from(self.get(i, j).clone());
                }
                let expect = if m == j { Rat::one() } else { Rat::zero() };
                assert_eq!(
                    s, expect,
                    "dual-basis relation broken at (m, j) = ({m}, {j})"
                );
            }
        }
    }

    pub fn max_m(&self) -> u32 {
        self.max_m
    }

    pub fn route(&self) -> Route {
        self.route
    }

    /// c_mk. Panics outside 2 ≤ k ≤ m ≤ max_m.
    pub fn get(&self, m: u32, k: u32) -> &Int {
        assert!(
            2 <= k && k <= m && m <= self.max_m,
            "CoeffTable::get({m}, {k}) outside triangle with max_m = {}",
            self.max_m
        );
        &self.rows[(m - 2) as usize][(k - 2) as usize]
    }

    /// Row m over k = 2..=m.
    pub fn row(&self, m: u32) -> &[Int] {
        assert!(2 <= m && m <= self.max_m);
        &self.rows[(m - 2) as usize]
    }

    /// Entries in row-major order (m = 2 first, k ascending), for export.
    pub fn linearized(&self) -> impl Iterator<Item = &Int> {
        self.rows.iter().flatten()
    }

    #[cfg(test)]
    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<Int>>, route: Route) -> CoeffTable {
        let max_m = rows.len() as u32 + 1;
        CoeffTable { max_m, rows, route }
    }
}

/// The dense system determining row m of the c-triangle: coefficient matrix
/// entry (row n, column k) = C(n+k−2, n) and right-hand side
/// (n^{m−1} − 1)/(n − 1), both over n, k ∈ {2, …, m}.
pub fn binomial_system(m: u32) -> (RationalMatrix, Vec<Rat>) {
    let rows = (2..=m)
        .map(|n| {
            (2..=m)
                .map(|k| Rat::from(binomial_c(i64::from(n) + i64::from(k) - 2, n)))
                .collect()
        })
        .collect();
    let rhs = (2..=m)
        .map(|n| {
            let num = int_pow(&Int::from(n), m - 1) - 1;
            Rat::from(exact_div(&num, &Int::from(n - 1)))
        })
        .collect();
    (RationalMatrix::from_rows(rows), rhs)
}

/// Solves the binomial system for the single row c_{m,2..m} by fraction-free
/// elimination, asserting the solution is integral.
pub fn c_row_binomial(m: u32) -> Result<Vec<Int>> {
    table_args(m)?;
    let (matrix, rhs) = binomial_system(m);
    let sol = matrix.solve(&rhs);
    Ok(sol.iter().map(rat_to_int).collect())
}

/// Row moment T_m^α = Σ_{k=2}^m c_mk k^α.
pub fn t_moment(m: u32, alpha: u32, table: &CoeffTable) -> Result<Int> {
    if m < 2 {
        return Err(Error::Domain(format!("t_moment requires m >= 2, got {m}")));
    }
    if m > table.max_m {
        return Err(Error::InsufficientTable {
            needed: m,
            max_m: table.max_m,
        });
    }
    let mut acc = Int::zero();
    for k in 2..=m {
        acc += table.get(m, k) * int_pow(&Int::from(k), alpha);
    }
    Ok(acc)
}

/// Σ_k c_mk = 1 for every row.
pub fn check_row_sums(table: &CoeffTable) -> IdentityCheck {
    let mut first = None;
    for m in 2..=table.max_m {
        let sum: Int = table.row(m).iter().sum();
        if !sum.is_one() && first.is_none() {
            first = Some(format!("m = {m}: row sum = {sum}, expected 1"));
        }
    }
    IdentityCheck::from_scan("row-sum", u64::from(table.max_m) - 1, first)
}

/// c_mm = (m−2)! on the diagonal.
pub fn check_diagonal(table: &CoeffTable) -> IdentityCheck {
    let mut first = None;
    for m in 2..=table.max_m {
        let expect = factorial(m - 2);
        let got = table.get(m, m);
        if *got != expect && first.is_none() {
            first = Some(format!("m = {m}: diagonal = {got}, expected {expect}"));
        }
    }
    IdentityCheck::from_scan("diagonal-factorial", u64::from(table.max_m) - 1, first)
}

/// First column of the a-table: a_m2 = 1 − H_{m−2}.
pub fn check_harmonic_column(atable: &ATable) -> IdentityCheck {
    let mut first = None;
    for m in 2..=atable.max_m {
        let expect = Rat::one() - harmonic(m - 2);
        let got = atable.get(m, 2);
        if *got != expect && first.is_none() {
            first = Some(format!("m = {m}: a_m2 = {got}, expected {expect}"));
        }
    }
    IdentityCheck::from_scan("harmonic-column", u64::from(atable.max_m) - 1, first)
}

/// First row moment: T_m^1 = m.
pub fn check_t_moment_linear(table: &CoeffTable) -> IdentityCheck {
    let mut first = None;
    for m in 2..=table.max_m {
        let got = t_moment(m, 1, table).expect("within table");
        if got != int(i64::from(m)) && first.is_none() {
            first = Some(format!("m = {m}: T_m^1 = {got}, expected {m}"));
        }
    }
    IdentityCheck::from_scan("moment-linear", u64::from(table.max_m) - 1, first)
}

/// Signs along the antidiagonals: c_{m,m−k} is positive for even k and
/// negative for odd k, except that the odd entry at k = m−2 (the first
/// column) is zero when m is odd.
pub fn check_sign_pattern(table: &CoeffTable) -> IdentityCheck {
    let mut points = 0;
    let mut first = None;
    for m in 2..=table.max_m {
        for k in 0..=(m - 2) {
            points += 1;
            let entry = table.get(m, m - k);
            let ok = if k % 2 == 0 {
                entry.is_positive()
            } else if m % 2 == 1 && k == m - 2 {
                entry.is_zero()
            } else {
                entry.is_negative()
            };
            if !ok && first.is_none() {
                first = Some(format!(
                    "c_({m},{}) = {entry} breaks the sign pattern",
                    m - k
                ));
            }
        }
    }
    IdentityCheck::from_scan("sign-pattern", points, first)
}

/// Alternating binomial sums of first-kind Stirling rows collapse to a
/// difference of adjacent entries of the previous row:
/// Σ_{j=l}^m (−1)^{j−l} C(j, l) [m, j] = [m−1, l−1] − [m−1, l].
pub fn check_stirling_identity(max_m: u32) -> Result<IdentityCheck> {
    table_args(max_m)?;
    let mut points = 0;
    let mut first = None;
    for m in 2..=max_m {
        for l in 2..=m {
            points += 1;
            let mut lhs = Int::zero();
            for j in l..=m {
                let term = binomial_c(i64::from(j), l) * stirling1(m, j);
                if (j - l).is_multiple_of(2) {
                    lhs += term;
                } else {
                    lhs -= term;
                }
            }
            let rhs = stirling1(m - 1, l - 1) - stirling1(m - 1, l);
            if lhs != rhs && first.is_none() {
                first = Some(format!("(m, l) = ({m}, {l}): {lhs} != {rhs}"));
            }
        }
    }
    Ok(IdentityCheck::from_scan(
        "stirling-alternating-sum",
        points,
        first,
    ))
}

/// Builds the c-triangle by all three routes and compares every entry.
pub fn check_route_agreement(max_m: u32) -> Result<IdentityCheck> {
    let tables = Route::ALL
        .iter()
        .map(|&r| CoeffTable::build(max_m, r))
        .collect::<Result<Vec<_>>>()?;
    let mut points = 0;
    let mut first = None;
    for m in 2..=max_m {
        for k in 2..=m {
            points += 1;
            let base = tables[0].get(m, k);
            for t in &tables[1..] {
                if t.get(m, k) != base && first.is_none() {
                    first = Some(format!(
                        "(m, k) = ({m}, {k}): {} gives {}, {} gives {}",
                        tables[0].route(),
                        base,
                        t.route(),
                        t.get(m, k)
                    ));
                }
            }
        }
    }
    Ok(IdentityCheck::from_scan("route-agreement", points, first))
}
