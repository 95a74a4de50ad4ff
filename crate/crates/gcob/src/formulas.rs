//! Number-theoretic helpers and the closed-form rank expressions for
//! cyclic and elementary abelian groups.
//!
//! Everything here is exact integer arithmetic; overflow is reported as an
//! error instead of wrapping.

use crate::error::{Error, Result};

/// Number of divisors of `n`.
pub fn tau(n: u64) -> u64 {
    assert!(n >= 1, "tau is defined for n >= 1");
    (1..=n).filter(|d| n.is_multiple_of(*d)).count() as u64
}

/// Sum of divisors of `n`.
pub fn sigma(n: u64) -> u64 {
    assert!(n >= 1, "sigma is defined for n >= 1");
    (1..=n).filter(|d| n.is_multiple_of(*d)).sum()
}

/// Trial-division primality test. Inputs here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

fn checked_pow(base: u64, exp: u32, what: &'static str) -> Result<u64> {
    base.checked_pow(exp).ok_or(Error::Overflow(what))
}

/// A prime together with a non-negative exponent, the shape parameter of an
/// elementary abelian group of order `p^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    p: u64,
    n: u32,
}

impl PrimePower {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(Self { p, n })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }
}

/// Genus-1 class count of the elementary abelian group of order `p^n`,
/// evaluated as the closed form
/// `(p^(2n-1) + p^(n+1) - p^(n-1) + p^2 - p - 1) / (p^2 - 1)`.
///
/// The division is exact; `n = 0` is the trivial group and yields 1.
pub fn r_elementary_abelian(p: u64, n: u32) -> Result<u64> {
    let pp = PrimePower::new(p, n)?;
    r_of_prime_power(&pp)
}

pub fn r_of_prime_power(pp: &PrimePower) -> Result<u64> {
    let (p, n) = (pp.p, pp.n);
    if n == 0 {
        return Ok(1);
    }
    let pos = checked_pow(p, 2 * n - 1, "r numerator")?
        .checked_add(checked_pow(p, n + 1, "r numerator")?)
        .and_then(|v| v.checked_add(p * p))
        .ok_or(Error::Overflow("r numerator"))?;
    let neg = checked_pow(p, n - 1, "r numerator")? + p + 1;
    let numerator = pos - neg;
    let denom = p * p - 1;
    assert_eq!(numerator % denom, 0, "closed form must divide exactly");
    Ok(numerator / denom)
}

/// The increment `F(n) = r(p, n+1) - r(p, n)`, evaluated as
/// `p^(n-1) * (p^n + p - 1)` for `n >= 1` and `F(0) = 1`.
///
/// Both the recurrence `F(n) = p*F(n-1) + p^(2n-2)*(p-1)` and the telescoping
/// identity against [`r_elementary_abelian`] are asserted on every call.
pub fn f_increment(p: u64, n: u32) -> Result<u64> {
    let pp = PrimePower::new(p, n)?;
    let f = f_value(&pp)?;
    if n >= 1 {
        let prev = f_value(&PrimePower { p, n: n - 1 })?;
        let step = checked_pow(p, 2 * n - 2, "recurrence")?
            .checked_mul(p - 1)
            .ok_or(Error::Overflow("recurrence"))?;
        let rec = p
            .checked_mul(prev)
            .and_then(|v| v.checked_add(step))
            .ok_or(Error::Overflow("recurrence"))?;
        assert_eq!(f, rec, "recurrence must reproduce the closed form");
    }
    let telescoped = r_elementary_abelian(p, n + 1)? - r_elementary_abelian(p, n)?;
    assert_eq!(f, telescoped, "increment must telescope the closed form");
    Ok(f)
}

fn f_value(pp: &PrimePower) -> Result<u64> {
    let (p, n) = (pp.p, pp.n);
    if n == 0 {
        return Ok(1);
    }
    let factor = checked_pow(p, n, "F factor")? + p - 1;
    checked_pow(p, n - 1, "F")?
        .checked_mul(factor)
        .ok_or(Error::Overflow("F"))
}

/// The sequence `2, 5, 15, 51, 187, 715, ...` of genus-1 class counts for
/// elementary abelian 2-groups, evaluated as `(2^n + 1)(2^(n-1) + 1) / 3`.
pub fn z2_sequence(n: u32) -> Result<u64> {
    assert!(n >= 1, "z2_sequence is defined for n >= 1");
    let a = checked_pow(2, n, "z2 sequence")? + 1;
    let b = checked_pow(2, n - 1, "z2 sequence")? + 1;
    let prod = a.checked_mul(b).ok_or(Error::Overflow("z2 sequence"))?;
    assert_eq!(prod % 3, 0, "closed form must divide exactly");
    Ok(prod / 3)
}
