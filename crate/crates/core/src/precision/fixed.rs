//! Integer kernels for binary fixed-point numbers.
//!
//! A value is a `BigInt` mantissa `m` paired with a number of fractional bits
//! `b`, meaning `m / 2^b`. Every kernel takes its inputs and returns its
//! output at the same `b`. Transcendental kernels work internally with extra
//! guard bits and round once at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const GUARD_BITS: u32 = 32;

/// `x / 2^shift`, rounded to nearest (ties toward +inf).
pub(crate) fn round_shr(x: &BigInt, shift: u32) -> BigInt {
    if shift == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (shift - 1);
    (x + half) >> shift
}

/// Re-express a mantissa held at `from` fractional bits at `to` fractional bits.
pub(crate) fn rescale(x: &BigInt, from: u32, to: u32) -> BigInt {
    if to >= from {
        x << (to - from)
    } else {
        round_shr(x, from - to)
    }
}

pub(crate) fn mul(a: &BigInt, b: &BigInt, bits: u32) -> BigInt {
    round_shr(&(a * b), bits)
}

/// Rounded quotient. Panics when `b` is zero.
pub(crate) fn div(a: &BigInt, b: &BigInt, bits: u32) -> BigInt {
    let num: BigInt = a << bits;
    let (q, r) = num.div_rem(b);
    if (&r << 1u32).abs() >= b.abs() {
        if num.is_negative() == b.is_negative() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Square root of a non-negative mantissa.
pub(crate) fn sqrt(a: &BigInt, bits: u32) -> BigInt {
    debug_assert!(!a.is_negative());
    let scaled: BigInt = a << (bits + 2);
    round_shr(&scaled.sqrt(), 1)
}

/// Real cube root; odd in its argument.
pub(crate) fn cbrt(a: &BigInt, bits: u32) -> BigInt {
    let scaled: BigInt = a.abs() << (2 * bits + 3);
    let root = round_shr(&scaled.cbrt(), 1);
    if a.is_negative() {
        -root
    } else {
        root
    }
}

/// `arctan(1/n)` by its alternating series, truncating each term.
fn atan_inv(n: u64, bits: u32) -> BigInt {
    let n_sq = BigInt::from(n * n);
    let mut power = (BigInt::one() << bits) / BigInt::from(n);
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power /= &n_sq;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// pi via Machin's formula.
pub(crate) fn pi(bits: u32) -> BigInt {
    let wb = bits + GUARD_BITS;
    let value = atan_inv(5, wb) * 16 - atan_inv(239, wb) * 4;
    round_shr(&value, GUARD_BITS)
}

pub(crate) fn atan(x: &BigInt, bits: u32) -> BigInt {
    const HALVINGS: u32 = 8;
    let wb = bits + GUARD_BITS;
    let one = BigInt::one() << wb;
    let negative = x.is_negative();
    let mut y: BigInt = x.abs() << GUARD_BITS;
    let inverted = y > one;
    if inverted {
        y = div(&one, &y, wb);
    }
    // tan(t/2) = tan(t) / (1 + sqrt(1 + tan(t)^2))
    for _ in 0..HALVINGS {
        let root = sqrt(&(&one + mul(&y, &y, wb)), wb);
        y = div(&y, &(&one + root), wb);
    }
    let y_sq = mul(&y, &y, wb);
    let mut power = y.clone();
    let mut sum = y;
    let mut k: u64 = 1;
    loop {
        power = -mul(&power, &y_sq, wb);
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        k += 1;
    }
    let mut angle = sum << HALVINGS;
    if inverted {
        angle = (pi(wb) >> 1u32) - angle;
    }
    if negative {
        angle = -angle;
    }
    round_shr(&angle, GUARD_BITS)
}

/// `(sin x, cos x)`.
pub(crate) fn sin_cos(x: &BigInt, bits: u32) -> (BigInt, BigInt) {
    const HALVINGS: u32 = 12;
    let int_bits = (x.bits() as u32).saturating_sub(bits);
    let wb = bits + GUARD_BITS + int_bits;
    let xw: BigInt = x << (wb - bits);
    let two_pi = pi(wb) << 1u32;
    let turns = (&xw + (&two_pi >> 1u32)).div_floor(&two_pi);
    let reduced = xw - turns * &two_pi;

    // The reduced angle at `wb` bits is the halved angle at `wb + HALVINGS` bits.
    let sb = wb + HALVINGS;
    let y = reduced;
    let y_sq = mul(&y, &y, sb);

    let mut sin = y.clone();
    let mut term = y;
    let mut k: u64 = 1;
    loop {
        term = -mul(&term, &y_sq, sb) / BigInt::from((2 * k) * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        sin += &term;
        k += 1;
    }

    let one = BigInt::one() << sb;
    let mut cos = one.clone();
    let mut term = one;
    let mut k: u64 = 1;
    loop {
        term = -mul(&term, &y_sq, sb) / BigInt::from((2 * k - 1) * (2 * k));
        if term.is_zero() {
            break;
        }
        cos += &term;
        k += 1;
    }

    for _ in 0..HALVINGS {
        let s2 = mul(&sin, &cos, sb) << 1u32;
        let c2 = mul(&cos, &cos, sb) - mul(&sin, &sin, sb);
        sin = s2;
        cos = c2;
    }
    (round_shr(&sin, sb - bits), round_shr(&cos, sb - bits))
}
