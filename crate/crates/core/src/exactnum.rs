//! Exact integer and rational arithmetic with perfect-square detection.
//!
//! `Int` and `Rat` are arbitrary precision. `Rat` is always kept in lowest
//! terms with a positive denominator, which every arithmetic operation on
//! [`num_rational::Ratio`] preserves.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Reduced rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn rat_from_int(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// max(|numerator|, denominator) in lowest terms.
pub fn height(q: &Rat) -> Int {
    let num = q.numer().abs();
    let den = q.denom().clone();
    if num > den {
        num
    } else {
        den
    }
}

const FILTER_MODULUS: u64 = 64 * 63 * 65 * 11;

const fn residue_table<const M: usize>() -> [bool; M] {
    let mut table = [false; M];
    let mut i = 0;
    while i < M {
        table[(i * i) % M] = true;
        i += 1;
    }
    table
}

static QR64: [bool; 64] = residue_table::<64>();
static QR63: [bool; 63] = residue_table::<63>();
static QR65: [bool; 65] = residue_table::<65>();
static QR11: [bool; 11] = residue_table::<11>();

#[inline]
fn residues_admit(r: u64) -> bool {
    QR64[(r % 64) as usize]
        && QR63[(r % 63) as usize]
        && QR65[(r % 65) as usize]
        && QR11[(r % 11) as usize]
}

/// Quadratic-residue pre-filter. `false` means `n` is certainly not a square;
/// `true` means it might be.
pub fn could_be_square(n: &Int) -> bool {
    match n.sign() {
        Sign::Minus => false,
        Sign::NoSign => true,
        Sign::Plus => {
            let r = n
                .magnitude()
                .iter_u64_digits()
                .rev()
                .fold(0u128, |acc, d| ((acc << 64) | d as u128) % FILTER_MODULUS as u128);
            residues_admit(r as u64)
        }
    }
}

#[inline]
pub fn could_be_square_u128(n: u128) -> bool {
    residues_admit((n % FILTER_MODULUS as u128) as u64)
}

/// ⌊√n⌋ for machine-sized input.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u128;
    // the float guess can be off by a few ulps either way
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Exact square root of a machine-sized integer, residue filter first.
pub fn square_root_u128(n: u128) -> Option<u128> {
    if !could_be_square_u128(n) {
        return None;
    }
    let r = isqrt_u128(n);
    (r * r == n).then_some(r)
}

/// ⌊√n⌋ by integer Newton iteration started above the root.
pub fn isqrt(n: &Int) -> Result<Int> {
    if n.is_negative() {
        return Err(Error::Domain(format!("isqrt of negative integer {n}")));
    }
    if let Some(small) = n.to_u128() {
        return Ok(Int::from(isqrt_u128(small)));
    }
    let bits = n.bits();
    let mut x: Int = Int::one() << bits.div_ceil(2);
    loop {
        let y: Int = (&x + n / &x) >> 1;
        if y >= x {
            return Ok(x);
        }
        x = y;
    }
}

/// Nonnegative `r` with `r² = n`, if `n` is a perfect square.
pub fn int_square_root_exact(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    if let Some(small) = n.to_u128() {
        return square_root_u128(small).map(Int::from);
    }
    if !could_be_square(n) {
        return None;
    }
    let r = isqrt(n).ok()?;
    (&r * &r == *n).then_some(r)
}

/// Nonnegative rational root; requires both reduced parts to be squares.
pub fn rat_square_root_exact(q: &Rat) -> Option<Rat> {
    let num = int_square_root_exact(q.numer())?;
    let den = int_square_root_exact(q.denom())?;
    Some(Rat::new(num, den))
}

pub fn is_rat_square(q: &Rat) -> bool {
    rat_square_root_exact(q).is_some()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Int {
    values
        .into_iter()
        .fold(Int::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a Int>) -> Int {
    values.into_iter().fold(Int::zero(), |acc, v| acc.gcd(v))
}
