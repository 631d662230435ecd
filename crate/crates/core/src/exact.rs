//! Arbitrary-precision integers and rationals plus the combinatorial
//! primitives every other module consumes: binomial coefficients, Stirling
//! triangles, harmonic numbers and rising factorials.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact signed integer of arbitrary precision.
pub type Int = BigInt;

/// Exact rational number; always in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// Small integer constant.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Small rational constant.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(int(numer), int(denom))
}

/// Exact integer division; panics if `d` does not divide `n`.
pub fn exact_div(n: &Int, d: &Int) -> Int {
    let (q, r) = n.div_rem(d);
    assert!(r.is_zero(), "inexact division: {n} / {d}");
    q
}

/// Converts a rational that must be an integer; panics otherwise.
pub fn rat_to_int(r: &Rat) -> Int {
    assert!(r.is_integer(), "expected an integer value, got {r}");
    r.to_integer()
}

/// `base` raised to `exp` by repeated squaring.
pub fn int_pow(base: &Int, exp: u32) -> Int {
    let mut acc = Int::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// n!
pub fn factorial(n: u32) -> Int {
    let mut acc = Int::one();
    for i in 2..=i64::from(n) {
        acc *= i;
    }
    acc
}

/// C(n, r) = n(n−1)⋯(n−r+1)/r!; in particular 0 when 0 ≤ n < r.
pub fn binomial_c(n: i64, r: u32) -> Int {
    let mut num = Int::one();
    for i in 0..i64::from(r) {
        num *= n - i;
    }
    // A product of r consecutive integers is divisible by r!.
    exact_div(&num, &factorial(r))
}

/// The symmetric binomial B_{a,b} = C(a+b, a) = C(a+b, b).
pub fn binomial_b(a: u32, b: u32) -> Int {
    binomial_c(i64::from(a) + i64::from(b), a.min(b))
}

/// Harmonic number H_m = Σ_{i=1}^m 1/i, with H_0 = 0.
pub fn harmonic(m: u32) -> Rat {
    let mut acc = Rat::zero();
    for i in 1..=i64::from(m) {
        acc += rat(1, i);
    }
    acc
}

/// Rising factorial x(x+1)⋯(x+n−1); the empty product is 1.
pub fn rising_factorial(x: &Int, n: u32) -> Int {
    let mut acc = Int::one();
    for i in 0..n {
        acc *= x + int(i64::from(i));
    }
    acc
}

/// Which triangle a [`StirlingTriangle`] caches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StirlingKind {
    /// Unsigned Stirling numbers of the first kind `[m, l]`: coefficients of
    /// the rising factorial x(x+1)⋯(x+m−1).
    FirstUnsigned,
    /// Stirling numbers of the second kind `{m, k}`: set-partition counts.
    Second,
}

/// Row-cached Stirling triangle. Rows are built in order and grown on
/// demand; lookups take a shared lock so built rows can be read concurrently,
/// and extension happens under the write lock.
#[derive(Debug)]
pub struct StirlingTriangle {
    kind: StirlingKind,
    rows: RwLock<Vec<Vec<Int>>>,
}

impl StirlingTriangle {
    pub fn new(kind: StirlingKind) -> Self {
        Self {
            kind,
            rows: RwLock::new(vec![vec![Int::one()]]),
        }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    /// Entry (m, l); zero when l > m.
    pub fn entry(&self, m: u32, l: u32) -> Int {
        if l > m {
            return Int::zero();
        }
        let (m, l) = (m as usize, l as usize);
        {
            let rows = self.rows.read().unwrap();
            if m < rows.len() {
                return rows[m][l].clone();
            }
        }
        let mut rows = self.rows.write().unwrap();
        while rows.len() <= m {
            let r = rows.len();
            let prev = &rows[r - 1];
            let mut row = vec![Int::zero(); r + 1];
            for j in 1..=r {
                let up_left = prev[j - 1].clone();
                let up = if j < r { prev[j].clone() } else { Int::zero() };
                row[j] = match self.kind {
                    StirlingKind::FirstUnsigned => up_left + up * (r as i64 - 1),
                    StirlingKind::Second => up_left + up * j as i64,
                };
            }
            rows.push(row);
        }
        rows[m][l].clone()
    }
}

fn stirling1_cache() -> &'static StirlingTriangle {
    static CACHE: OnceLock<StirlingTriangle> = OnceLock::new();
    CACHE.get_or_init(|| StirlingTriangle::new(StirlingKind::FirstUnsigned))
}

fn stirling2_cache() -> &'static StirlingTriangle {
    static CACHE: OnceLock<StirlingTriangle> = OnceLock::new();
    CACHE.get_or_init(|| StirlingTriangle::new(StirlingKind::Second))
}

/// Unsigned Stirling number of the first kind `[m, l]` (process-wide cache).
pub fn stirling1(m: u32, l: u32) -> Int {
    stirling1_cache().entry(m, l)
}

/// Stirling number of the second kind `{m, k}` (process-wide cache).
pub fn stirling2(m: u32, k: u32) -> Int {
    stirling2_cache().entry(m, k)
}
