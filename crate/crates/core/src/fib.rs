//! Exact Fibonacci and Lucas arithmetic with the indexing convention
//! `F(0) = 0, F(1) = 1` and `L(0) = 2, L(1) = 1`.
//!
//! Everything exact runs on [`num_bigint::BigInt`] so indices are limited by
//! patience, not word size. The floating-point helpers (`binet_real`,
//! `successive_ratio`) are capped or guarded where double precision gives out.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The golden ratio (1 + sqrt 5) / 2, correctly rounded to f64.
pub const PHI: f64 = 1.618033988749894848204586834365638118;
/// The conjugate root (1 - sqrt 5) / 2 = 1 - PHI = -1/PHI.
pub const PSI: f64 = 1.0 - PHI;
/// sqrt 5 = PHI - PSI, correctly rounded to f64.
pub const SQRT5: f64 = 2.236067977499789696409173668731276235;

/// The two roots of x^2 = x + 1 bundled for reporting.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GoldenConstants {
    pub phi: f64,
    pub psi: f64,
    pub sqrt5: f64,
}

impl Default for GoldenConstants {
    fn default() -> Self {
        GoldenConstants {
            phi: PHI,
            psi: PSI,
            sqrt5: SQRT5,
        }
    }
}

/// `(F(n), F(n+1))` by the fast-doubling recurrences
/// `F(2k) = F(k) (2 F(k+1) - F(k))` and `F(2k+1) = F(k)^2 + F(k+1)^2`.
pub fn fib_pair(n: u64) -> (BigInt, BigInt) {
    let mut a = BigInt::zero(); // F(k)
    let mut b = BigInt::one(); // F(k+1)
    if n == 0 {
        return (a, b);
    }
    let bits = 64 - n.leading_zeros() as u64;
    for i in (0..bits).rev() {
        let c = &a * ((&b << 1) - &a);
        let d = &a * &a + &b * &b;
        if (n >> i) & 1 == 1 {
            b = &c + &d;
            a = d;
        } else {
            a = c;
            b = d;
        }
    }
    (a, b)
}

/// `F(n)`, exactly.
pub fn fib_exact(n: u64) -> BigInt {
    fib_pair(n).0
}

/// `L(n)`, exactly, via `L(n) = 2 F(n-1) + F(n)` (and `L(0) = 2`).
pub fn lucas_exact(n: u64) -> BigInt {
    if n == 0 {
        return BigInt::from(2);
    }
    let (f_prev, f_n) = fib_pair(n - 1);
    (&f_prev << 1) + f_n
}

/// Binet's formula `(PHI^n - PSI^n) / sqrt 5` in plain f64.
///
/// Rounds to the exact integer only while `F(n)` stays well inside the 53-bit
/// mantissa; beyond `n = 70` the error can exceed 1/2, so that is the cap.
pub fn binet_real(n: u64) -> Result<f64> {
    if n > 70 {
        return Err(Error::Precision(format!(
            "binet_real is only faithful for n <= 70, got {n}"
        )));
    }
    Ok((PHI.powi(n as i32) - PSI.powi(n as i32)) / SQRT5)
}

/// `F(n+1) / F(n)` for `n >= 2`.
///
/// For indices where `F(n)` overflows f64 the quotient is formed from both
/// numbers shifted down in lockstep, which leaves the ratio intact.
pub fn successive_ratio(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!(
            "successive ratio needs n >= 2, got {n}"
        )));
    }
    let (f_n, f_n1) = fib_pair(n);
    let shift = f_n1.bits().saturating_sub(64);
    let num = (&f_n1 >> shift)
        .to_f64()
        .expect("shifted numerator fits f64");
    let den = (&f_n >> shift)
        .to_f64()
        .expect("shifted denominator fits f64");
    Ok(num / den)
}

/// `F(n) mod k` by fast doubling in modular arithmetic. `k >= 1`.
pub fn fib_mod(n: u64, k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::domain("modulus must be nonzero"));
    }
    fn pair(n: u64, k: u128) -> (u128, u128) {
        if n == 0 {
            return (0, 1 % k);
        }
        let (a, b) = pair(n >> 1, k);
        let two_b_minus_a = ((b << 1) % k + k - a) % k;
        let c = a * two_b_minus_a % k;
        let d = (a * a % k + b * b % k) % k;
        if n & 1 == 1 {
            (d, (c + d) % k)
        } else {
            (c, d)
        }
    }
    Ok(pair(n, k as u128).0 as u64)
}

/// Period of the Fibonacci sequence modulo `k` (the Pisano period), found by
/// scanning for the first recurrence of the state `(0, 1)`. `k >= 2`.
pub fn pisano_period(k: u64) -> Result<u64> {
    if k < 2 {
        return Err(Error::domain(format!(
            "pisano period needs k >= 2, got {k}"
        )));
    }
    let (mut a, mut b) = (0u64, 1u64);
    // The period never exceeds 6k, so anything past that is a logic error.
    for p in 1..=6 * k {
        let next = (a + b) % k;
        a = b;
        b = next;
        if a == 0 && b == 1 {
            return Ok(p);
        }
    }
    Err(Error::Invariant(format!(
        "no Pisano period found for k = {k} within the 6k bound"
    )))
}

/// Entries of `[[1,1],[1,0]]^n` as `[[F(n+1), F(n)], [F(n), F(n-1)]]`,
/// computed by genuine matrix squaring (no Fibonacci shortcuts). `n >= 1`.
pub fn fib_matrix_power(n: u64) -> Result<[[BigInt; 2]; 2]> {
    if n == 0 {
        return Err(Error::domain("matrix power needs n >= 1"));
    }
    fn mul(x: &[[BigInt; 2]; 2], y: &[[BigInt; 2]; 2]) -> [[BigInt; 2]; 2] {
        [
            [
                &x[0][0] * &y[0][0] + &x[0][1] * &y[1][0],
                &x[0][0] * &y[0][1] + &x[0][1] * &y[1][1],
            ],
            [
                &x[1][0] * &y[0][0] + &x[1][1] * &y[1][0],
                &x[1][0] * &y[0][1] + &x[1][1] * &y[1][1],
            ],
        ]
    }
    let q = [
        [BigInt::one(), BigInt::one()],
        [BigInt::one(), BigInt::zero()],
    ];
    let mut result: Option<[[BigInt; 2]; 2]> = None;
    let mut base = q;
    let mut m = n;
    while m > 0 {
        if m & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => mul(&r, &base),
            });
        }
        m >>= 1;
        if m > 0 {
            base = mul(&base, &base);
        }
    }
    Ok(result.expect("n >= 1 sets at least one bit"))
}

/// Number of tilings of a 1 x `m` strip by unit squares and dominoes, counted
/// by exhaustively walking every tiling (one leaf per tiling, no recurrence
/// shortcut). Equals `F(m+1)`. Capped at `m <= 25` to keep the walk honest
/// and fast.
pub fn count_strip_tilings(m: u64) -> Result<BigInt> {
    if m > 25 {
        return Err(Error::SizeLimit(format!(
            "exhaustive strip enumeration is capped at m <= 25, got {m}"
        )));
    }
    fn walk(remaining: u64) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let mut total = walk(remaining - 1); // place a square
        if remaining >= 2 {
            total += walk(remaining - 2); // place a domino
        }
        total
    }
    Ok(BigInt::from(walk(m)))
}

/// Number of binary strings of length `m` with no two adjacent ones, counted
/// by scanning all `2^m` strings. Equals `F(m+2)` — one index above the
/// count for strings of length `m-1`, a distinction worth keeping straight.
/// Capped at `m <= 25`.
pub fn count_no_adjacent_ones(m: u64) -> Result<BigInt> {
    if m > 25 {
        return Err(Error::SizeLimit(format!(
            "exhaustive string scan is capped at m <= 25, got {m}"
        )));
    }
    let mut count: u64 = 0;
    for mask in 0u64..(1u64 << m) {
        if mask & (mask >> 1) == 0 {
            count += 1;
        }
    }
    Ok(BigInt::from(count))
}
