//! Hyper-sum evaluation: S_m^(a)(n) is the a-fold iterated summation of n^m,
//! with S_m^(0)(n) = n^m.
//!
//! Four closed formulas are implemented next to the definitional oracle:
//! the ψ-basis expansion Σ_k c_mk ψ_k^(a)(n), a factored form with the
//! leading binomial split off, the second-kind Stirling representation, and a
//! recurrence descending in m. The module also verifies, over finite grids,
//! the identities that tie the coefficient triangles to the hyper-sums.

use serde::Serialize;

use crate::coeffs::{t_moment, ATable, CoeffTable};
use crate::error::{Error, Result};
use crate::exact::{binomial_c, exact_div, factorial, int_pow, rat_to_int, stirling2, Int, Rat};
use crate::psi::psi_closed;
use crate::report::IdentityCheck;

use num_traits::{One, Zero};

fn to_i64(n: u64) -> i64 {
    i64::try_from(n).expect("argument exceeds the supported range")
}

fn check_n(n: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::Domain(format!("hyper-sums require n >= 1, got {n}")));
    }
    Ok(())
}

fn check_m2(m: u32, what: &str) -> Result<()> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "{what} requires m >= 2, got m = {m}"
        )));
    }
    Ok(())
}

fn check_table(m: u32, max_m: u32) -> Result<()> {
    if m > max_m {
        return Err(Error::InsufficientTable { needed: m, max_m });
    }
    Ok(())
}

/// Ground truth: the a-fold iterated summation of i^m, evaluated literally by
/// repeated prefix sums. Total on m ≥ 0, a ≥ 0, n ≥ 1.
pub fn hypersum_oracle(m: u32, a: u32, n: u64) -> Result<Int> {
    check_n(n)?;
    let mut vals: Vec<Int> = (1..=n).map(|i| int_pow(&Int::from(i), m)).collect();
    for _ in 0..a {
        let mut acc = Int::zero();
        for v in vals.iter_mut() {
            acc += &*v;
            *v = acc.clone();
        }
    }
    Ok(vals.pop().unwrap())
}

/// ψ-basis expansion S_m^(a)(n) = Σ_{k=2}^m c_mk ψ_k^(a)(n).
pub fn hypersum_psi(m: u32, a: u32, n: u64, table: &CoeffTable) -> Result<Int> {
    check_m2(m, "the psi expansion")?;
    check_n(n)?;
    check_table(m, table.max_m())?;
    let mut acc = Int::zero();
    for k in 2..=m {
        acc += table.get(m, k) * psi_closed(k, a, n)?;
    }
    Ok(acc)
}

/// Factored form: the leading binomial C(n+a, a+1) times the bracket
/// 1 + (n−1)(a+1) Σ_{k=2}^m c_mk C(a+k, k)⁻¹ C(n+a+k−2, k−2).
/// The bracket is rational; the product must be an integer and is asserted so.
pub fn hypersum_factored(m: u32, a: u32, n: u64, table: &CoeffTable) -> Result<Int> {
    check_m2(m, "the factored form")?;
    check_n(n)?;
    check_table(m, table.max_m())?;
    let n_i = to_i64(n);
    let mut sum = Rat::zero();
    for k in 2..=m {
        let numer = table.get(m, k) * binomial_c(n_i + i64::from(a) + i64::from(k) - 2, k - 2);
        sum += Rat::new(numer, binomial_c(i64::from(a) + i64::from(k), k));
    }
    let bracket = Rat::one() + Rat::from(Int::from(n - 1) * Int::from(a + 1)) * sum;
    let lead = binomial_c(n_i + i64::from(a), a + 1);
    Ok(rat_to_int(&(Rat::from(lead) * bracket)))
}

/// Second-kind Stirling representation
/// S_m^(a)(n) = Σ_{k=1}^m k! {m, k} C(n+a, a+k), valid for m ≥ 1.
pub fn hypersum_stirling2(m: u32, a: u32, n: u64) -> Result<Int> {
    if m < 1 {
        return Err(Error::Domain(format!(
            "the Stirling representation requires m >= 1, got m = {m}"
        )));
    }
    check_n(n)?;
    let n_i = to_i64(n);
    let mut acc = Int::zero();
    for k in 1..=m {
        acc += factorial(k) * stirling2(m, k) * binomial_c(n_i + i64::from(a), a + k);
    }
    Ok(acc)
}

/// Recurrence in m: S_m^(a)(n) = (m−2)!·[ψ_m^(a)(n) − Σ_{i=2}^{m−1} a_mi S_i^(a)(n)],
/// with base S_2^(a)(n) = ψ_2^(a)(n) (the sum is empty at m = 2).
pub fn hypersum_psi_recurrence(m: u32, a: u32, n: u64, atable: &ATable) -> Result<Int> {
    check_m2(m, "the psi recurrence")?;
    check_n(n)?;
    check_table(m, atable.max_m())?;
    let mut sums: Vec<Int> = Vec::with_capacity((m - 1) as usize);
    for mm in 2..=m {
        let psi_v = psi_closed(mm, a, n)?;
        let v = if mm == 2 {
            psi_v
        } else {
            let mut s = Rat::zero();
            for i in 2..mm {
                s += atable.get(mm, i) * Rat::from(sums[(i - 2) as usize].clone());
            }
            rat_to_int(&(Rat::from(factorial(mm - 2)) * (Rat::from(psi_v) - s)))
        };
        sums.push(v);
    }
    Ok(sums.pop().unwrap())
}

/// The evaluation strategies exposed by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Oracle,
    Psi,
    Factored,
    Stirling2,
    PsiRecurrence,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Oracle,
        Method::Psi,
        Method::Factored,
        Method::Stirling2,
        Method::PsiRecurrence,
    ];

    /// Whether the method is defined for this power index: the oracle is
    /// total, the Stirling form needs m ≥ 1, the ψ-based forms need m ≥ 2.
    pub fn supports(self, m: u32) -> bool {
        match self {
            Method::Oracle => true,
            Method::Stirling2 => m >= 1,
            Method::Psi | Method::Factored | Method::PsiRecurrence => m >= 2,
        }
    }

    pub fn applicable(m: u32) -> Vec<Method> {
        Method::ALL
            .into_iter()
            .filter(|me| me.supports(m))
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Psi => "psi",
            Method::Factored => "factored",
            Method::Stirling2 => "stirling2",
            Method::PsiRecurrence => "psi-recurrence",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluates S_m^(a)(n) by the chosen method against prebuilt tables.
pub fn evaluate(
    method: Method,
    m: u32,
    a: u32,
    n: u64,
    ctable: &CoeffTable,
    atable: &ATable,
) -> Result<Int> {
    match method {
        Method::Oracle => hypersum_oracle(m, a, n),
        Method::Psi => hypersum_psi(m, a, n, ctable),
        Method::Factored => hypersum_factored(m, a, n, ctable),
        Method::Stirling2 => hypersum_stirling2(m, a, n),
        Method::PsiRecurrence => hypersum_psi_recurrence(m, a, n, atable),
    }
}

/// Runs `per_m` for every m in order, fanning out over `jobs` threads when
/// asked; results are merged back in grid order so reports stay
/// deterministic.
fn scan_rows<R: Send>(ms: &[u32], jobs: usize, per_m: &(impl Fn(u32) -> R + Sync)) -> Vec<R> {
    let jobs = jobs.clamp(1, ms.len().max(1));
    if jobs == 1 {
        return ms.iter().map(|&m| per_m(m)).collect();
    }
    let indexed: Vec<(usize, u32)> = ms.iter().copied().enumerate().collect();
    let mut out: Vec<Option<R>> = Vec::new();
    out.resize_with(ms.len(), || None);
    std::thread::scope(|scope| {
        let handles: Vec<_> = indexed
            .chunks(ms.len().div_ceil(jobs))
            .map(|chunk| {
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|&(i, m)| (i, per_m(m)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            for (i, r) in handle.join().expect("verification worker panicked") {
                out[i] = Some(r);
            }
        }
    });
    out.into_iter().map(|o| o.unwrap()).collect()
}

fn merge_scans(name: &str, scans: Vec<(u64, Option<String>)>) -> IdentityCheck {
    let mut points = 0;
    let mut first = None;
    for (p, cex) in scans {
        points += p;
        if first.is_none() {
            first = cex;
        }
    }
    IdentityCheck::from_scan(name, points, first)
}

/// Verifies, over the full grid, the three identities linking the triangles
/// to the hyper-sums:
///
/// * `binomial-sum`: Σ_k c_mk C(n+k−2, n) = (n^{m−1} − 1)/(n − 1) for m, n ≥ 2;
/// * `stirling2-bracket`: the a-general form equating the c-bracket with the
///   second-kind Stirling representation, for a ≥ 0 and m, n ≥ 2;
/// * `moment-relation`: n^m − n = −T_m^1 + Σ_{l=2}^n a_nl T_m^l for n ≥ 2.
///
/// Failures are recorded as data with the first counterexample.
pub fn verify_identities(
    max_m: u32,
    max_a: u32,
    max_n: u64,
    jobs: usize,
) -> Result<Vec<IdentityCheck>> {
    if max_m < 2 || max_n < 2 {
        return Err(Error::Domain(format!(
            "verification grid needs max_m >= 2 and max_n >= 2, got ({max_m}, {max_n})"
        )));
    }
    let max_n_u32 = u32::try_from(max_n)
        .map_err(|_| Error::Domain(format!("max_n = {max_n} is too large for a grid scan")))?;
    let ctable = CoeffTable::build_recurrence(max_m)?;
    let atable = ATable::build(max_n_u32.max(2))?;
    let ms: Vec<u32> = (2..=max_m).collect();

    let binomial_sum = merge_scans(
        "binomial-sum",
        scan_rows(&ms, jobs, &|m| {
            let mut points = 0;
            let mut first = None;
            for n in 2..=max_n {
                points += 1;
                let n_i = to_i64(n);
                let lhs: Int = (2..=m)
                    .map(|k| ctable.get(m, k) * binomial_c(n_i + i64::from(k) - 2, n as u32))
                    .sum();
                let rhs = exact_div(&(int_pow(&Int::from(n), m - 1) - 1), &Int::from(n - 1));
                if lhs != rhs && first.is_none() {
                    first = Some(format!("(m, n) = ({m}, {n}): {lhs} != {rhs}"));
                }
            }
            (points, first)
        }),
    );

    let stirling_bracket = merge_scans(
        "stirling2-bracket",
        scan_rows(&ms, jobs, &|m| {
            let mut points = 0;
            let mut first = None;
            for a in 0..=max_a {
                for n in 2..=max_n {
                    points += 1;
                    let n_i = to_i64(n);
                    let mut lhs = Rat::zero();
                    for k in 2..=m {
                        let numer = ctable.get(m, k)
                            * binomial_c(n_i + i64::from(a) + i64::from(k) - 2, k - 2);
                        lhs += Rat::new(numer, binomial_c(i64::from(a) + i64::from(k), k));
                    }
                    let mut sum = Int::zero();
                    for k in 2..=m {
                        sum +=
                            factorial(k) * stirling2(m, k) * binomial_c(n_i + i64::from(a), a + k);
                    }
                    let denom = Int::from(n) * Int::from(n - 1) * binomial_c(n_i + i64::from(a), a);
                    let rhs = Rat::new(sum, denom);
                    if lhs != rhs && first.is_none() {
                        first = Some(format!("(a, m, n) = ({a}, {m}, {n}): {lhs} != {rhs}"));
                    }
                }
            }
            (points, first)
        }),
    );

    let moment_relation = merge_scans(
        "moment-relation",
        scan_rows(&ms, jobs, &|m| {
            let mut points = 0;
            let mut first = None;
            for n in 2..=max_n_u32 {
                points += 1;
                let lhs = int_pow(&Int::from(n), m) - Int::from(n);
                let mut rhs = -Rat::from(t_moment(m, 1, &ctable).expect("within table"));
                for l in 2..=n {
                    rhs += atable.get(n, l)
                        * Rat::from(t_moment(m, l, &ctable).expect("within table"));
                }
                if Rat::from(lhs.clone()) != rhs && first.is_none() {
                    first = Some(format!("(m, n) = ({m}, {n}): {lhs} != {rhs}"));
                }
            }
            (points, first)
        }),
    );

    Ok(vec![binomial_sum, stirling_bracket, moment_relation])
}
