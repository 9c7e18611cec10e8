//! Segmented prime sieving and multiplicative bookkeeping.
//!
//! Interval endpoints are real numbers and membership is `lo <= p < hi`,
//! matching the half-open convention used by the partition scheme.

use crate::sum::Accumulator;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

/// Hard cap for sieve endpoints unless the caller raises it.
pub const DEFAULT_SIEVE_LIMIT: u64 = 1_000_000_000;

/// Length of one sieve segment (odd numbers only are stored).
const SEGMENT: u64 = 1 << 20;

/// Primes in a half-open real interval `[lo, hi)`.
#[derive(Clone, Debug)]
pub struct PrimeRange {
    pub lo: f64,
    pub hi: f64,
    pub primes: Vec<u64>,
}

fn check_range(lo: f64, hi: f64, limit: u64) -> Result<(u64, u64)> {
    if !(lo >= 2.0 && lo < hi && hi.is_finite()) {
        return Err(Error::SieveRange { lo, hi });
    }
    if hi > limit as f64 {
        return Err(Error::SieveCapacity { lo, hi, limit });
    }
    // Integer bounds for lo <= p < hi.
    let first = lo.ceil() as u64;
    let last = if hi.fract() == 0.0 { hi as u64 } else { hi.floor() as u64 + 1 };
    Ok((first, last))
}

/// Odd-only sieve of one segment [seg_lo, seg_hi), seg_lo odd.
fn sieve_segment(seg_lo: u64, seg_hi: u64, base: &[u64], out: &mut Vec<u64>) {
    debug_assert!(seg_lo % 2 == 1);
    let len = (seg_hi - seg_lo).div_ceil(2) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        if p == 2 {
            continue;
        }
        if p * p >= seg_hi {
            break;
        }
        // first odd multiple of p that is >= max(p*p, seg_lo)
        let mut start = p * p;
        if start < seg_lo {
            start = seg_lo + (p - seg_lo % p) % p;
            if start % 2 == 0 {
                start += p;
            }
        }
        let mut m = start;
        while m < seg_hi {
            composite[((m - seg_lo) / 2) as usize] = true;
            m += 2 * p;
        }
    }
    for (i, &c) in composite.iter().enumerate() {
        if !c {
            out.push(seg_lo + 2 * i as u64);
        }
    }
}

/// Simple sieve for the base primes up to `n` inclusive.
fn simple_sieve(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut is_prime = vec![true; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if is_prime[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                is_prime[j] = false;
                j += i;
            }
        }
    }
    primes
}

/// Visit each segment of `[first, last)` in ascending order. Segments are
/// sieved in parallel and the callback receives them in index order.
fn for_each_segment<T, F>(first: u64, last: u64, per_segment: F) -> Vec<T>
where
    T: Send,
    F: Fn(&[u64]) -> T + Sync,
{
    if first >= last {
        return Vec::new();
    }
    let root = (last as f64).sqrt() as u64 + 2;
    let base = simple_sieve(root);
    let n_segments = (last - first).div_ceil(SEGMENT);
    (0..n_segments)
        .into_par_iter()
        .map(|si| {
            let seg_lo = first + si * SEGMENT;
            let seg_hi = (seg_lo + SEGMENT).min(last);
            let mut primes = Vec::new();
            if seg_lo <= 2 && 2 < seg_hi {
                primes.push(2);
            }
            let odd_lo = if seg_lo % 2 == 0 { seg_lo + 1 } else { seg_lo };
            let odd_lo = odd_lo.max(3);
            if odd_lo < seg_hi {
                sieve_segment(odd_lo, seg_hi, &base, &mut primes);
            }
            per_segment(&primes)
        })
        .collect()
}

/// All primes p with `lo <= p < hi`, ascending.
pub fn sieve_primes(lo: f64, hi: f64) -> Result<PrimeRange> {
    sieve_primes_capped(lo, hi, DEFAULT_SIEVE_LIMIT)
}

/// As [`sieve_primes`] with an explicit capacity limit.
pub fn sieve_primes_capped(lo: f64, hi: f64, limit: u64) -> Result<PrimeRange> {
    let (first, last) = check_range(lo, hi, limit)?;
    let chunks = for_each_segment(first, last, |primes| primes.to_vec());
    let mut primes = Vec::with_capacity(chunks.iter().map(Vec::len).sum());
    for c in chunks {
        primes.extend(c);
    }
    Ok(PrimeRange { lo, hi, primes })
}

/// Sum of 1/p over primes in `[lo, hi)`, compensated, without materializing
/// the primes. Segment partials are merged in ascending order.
pub fn reciprocal_prime_sum(lo: f64, hi: f64) -> Result<f64> {
    reciprocal_prime_sum_capped(lo, hi, DEFAULT_SIEVE_LIMIT)
}

pub fn reciprocal_prime_sum_capped(lo: f64, hi: f64, limit: u64) -> Result<f64> {
    let (first, last) = check_range(lo, hi, limit)?;
    let partials = for_each_segment(first, last, |primes| {
        let mut acc = Accumulator::new();
        for &p in primes {
            acc.add(1.0 / p as f64);
        }
        acc
    });
    let mut total = Accumulator::new();
    for p in &partials {
        total.merge(p);
    }
    Ok(total.value())
}

/// Sum of ln(1 + c/p) over primes in `[lo, hi)`: the log of the Euler-type
/// product used as the moment comparator.
pub fn log_one_plus_sum(lo: f64, hi: f64, c: f64) -> Result<f64> {
    let (first, last) = check_range(lo, hi, DEFAULT_SIEVE_LIMIT)?;
    let partials = for_each_segment(first, last, |primes| {
        let mut acc = Accumulator::new();
        for &p in primes {
            acc.add((1.0 + c / p as f64).ln());
        }
        acc
    });
    let mut total = Accumulator::new();
    for p in &partials {
        total.merge(p);
    }
    Ok(total.value())
}

/// Number of prime factors of `n` counted with multiplicity.
pub fn big_omega(n: u128) -> u32 {
    assert!(n >= 1, "big_omega requires n >= 1");
    let mut n = n;
    let mut count = 0;
    while n % 2 == 0 {
        n /= 2;
        count += 1;
    }
    let mut p: u128 = 3;
    while p * p <= n {
        while n % p == 0 {
            n /= p;
            count += 1;
        }
        p += 2;
    }
    if n > 1 {
        count += 1;
    }
    count
}

/// The multiplicative weight taking the value 1/r! on each prime power p^r.
///
/// Returned both as an exact rational (so multiplicativity tests can assert
/// exact equality) and as a double derived from it.
#[derive(Clone, Debug, PartialEq)]
pub struct GValue {
    pub exact: BigRational,
    pub value: f64,
}

fn factorial_big(r: u32) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=r {
        f *= i;
    }
    f
}

fn rational_to_f64(q: &BigRational) -> f64 {
    // Safe for the sizes that occur here: numerator is 1, denominator a
    // product of factorials well inside f64 range after the division.
    let num = q.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let den = q.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    num / den
}

/// g(n) = prod over p^r || n of 1/r!.
pub fn g_value(n: u128) -> GValue {
    assert!(n >= 1, "g_value requires n >= 1");
    let mut n = n;
    let mut exact = BigRational::one();
    let mut push = |r: u32| {
        if r > 0 {
            exact *= BigRational::new(BigInt::one(), factorial_big(r));
        }
    };
    let mut r2 = 0;
    while n % 2 == 0 {
        n /= 2;
        r2 += 1;
    }
    push(r2);
    let mut p: u128 = 3;
    while p * p <= n {
        let mut r = 0;
        while n % p == 0 {
            n /= p;
            r += 1;
        }
        push(r);
        p += 2;
    }
    if n > 1 {
        push(1);
    }
    let value = rational_to_f64(&exact);
    GValue { exact, value }
}
