//! Brute-force reference: forms the exact sum as an unbounded integer and
//! rounds it bit by bit. Shares nothing with the add engine except the
//! rounding decision table.

use std::cmp::Ordering;

use num_bigint::BigUint;

use crate::float::{Context, Float, Limb, Precision, RoundingMode, Sign, LIMB_BITS};
use crate::rounding::{decide_round, Overflow, RoundAction, RoundSticky, Rounded};

const LIMB_BYTES: usize = (LIMB_BITS / 8) as usize;

/// Exact dyadic value `magnitude * 2^exponent`.
///
/// Sums produced by [`exact_add`] use the smallest exponent needed to align
/// both operands; the magnitude is not reduced to an odd number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSum {
    pub magnitude: BigUint,
    pub exponent: i64,
}

impl ExactSum {
    /// Exact value of a float (sign ignored).
    pub fn of(x: &Float) -> ExactSum {
        let bytes: Vec<u8> = x.limbs().iter().flat_map(|l| l.to_be_bytes()).collect();
        let pad = x.limbs().len() as u64 * LIMB_BITS as u64 - x.precision().bits();
        ExactSum {
            magnitude: BigUint::from_bytes_be(&bytes) >> pad,
            exponent: x.exponent() - x.precision().bits() as i64,
        }
    }

    /// Magnitude rescaled to `2^exponent` units. `exponent` must not exceed
    /// `self.exponent`.
    pub fn scaled_to(&self, exponent: i64) -> BigUint {
        assert!(exponent <= self.exponent);
        &self.magnitude << (self.exponent - exponent) as u64
    }

    /// Exponent `e` of the value written as `0.1... * 2^e`; `None` for zero.
    pub fn binary_exponent(&self) -> Option<i64> {
        let len = self.magnitude.bits();
        (len > 0).then(|| self.exponent + len as i64)
    }

    pub fn cmp_value(&self, other: &ExactSum) -> Ordering {
        let e = self.exponent.min(other.exponent);
        self.scaled_to(e).cmp(&other.scaled_to(e))
    }

    /// `|self - other|`.
    pub fn abs_diff(&self, other: &ExactSum) -> ExactSum {
        let e = self.exponent.min(other.exponent);
        let (a, b) = (self.scaled_to(e), other.scaled_to(e));
        let magnitude = if a >= b { a - b } else { b - a };
        ExactSum {
            magnitude,
            exponent: e,
        }
    }

    /// `2^k` as an exact value.
    pub fn power_of_two(k: i64) -> ExactSum {
        ExactSum {
            magnitude: BigUint::from(1u8),
            exponent: k,
        }
    }
}

/// `x + y` exactly. Signs are ignored.
pub fn exact_add(x: &Float, y: &Float) -> ExactSum {
    let (a, b) = (ExactSum::of(x), ExactSum::of(y));
    let e = a.exponent.min(b.exponent);
    ExactSum {
        magnitude: a.scaled_to(e) + b.scaled_to(e),
        exponent: e,
    }
}

/// Rounds a positive exact value to `p` bits.
pub fn exact_round_in(
    ctx: &Context,
    v: &ExactSum,
    p: Precision,
    mode: RoundingMode,
) -> Result<Rounded, Overflow> {
    let len = v.magnitude.bits();
    assert!(len > 0, "cannot round zero");
    let p_bits = p.bits();
    let mut exponent = v.exponent + len as i64;

    let (mut top, rs) = if len <= p_bits {
        (
            &v.magnitude << (p_bits - len),
            RoundSticky::new(false, false),
        )
    } else {
        let drop = len - p_bits;
        let r = v.magnitude.bit(drop - 1);
        // Sticky: any set bit strictly below the rounding bit.
        let s = v.magnitude.trailing_zeros().is_some_and(|tz| tz < drop - 1);
        (&v.magnitude >> drop, RoundSticky::new(r, s))
    };

    let decision = decide_round(mode, rs, top.bit(0));
    if decision.action == RoundAction::Increment {
        top += 1u8;
        if top.bits() > p_bits {
            top >>= 1;
            exponent += 1;
        }
    }
    if exponent > ctx.emax() {
        return Err(Overflow::new(Sign::Pos, mode));
    }
    Ok(Rounded {
        value: float_from_integer(exponent, p, &top),
        ternary: decision.ternary,
    })
}

pub fn exact_round(v: &ExactSum, p: Precision, mode: RoundingMode) -> Result<Rounded, Overflow> {
    exact_round_in(&Context::DEFAULT, v, p, mode)
}

/// Reference for [`crate::add_positive_in`].
pub fn exact_add_round_in(
    ctx: &Context,
    x: &Float,
    y: &Float,
    p: Precision,
    mode: RoundingMode,
) -> Result<Rounded, Overflow> {
    exact_round_in(ctx, &exact_add(x, y), p, mode)
}

/// Reference for [`crate::add_positive`].
pub fn exact_add_round(
    x: &Float,
    y: &Float,
    p: Precision,
    mode: RoundingMode,
) -> Result<Rounded, Overflow> {
    exact_add_round_in(&Context::DEFAULT, x, y, p, mode)
}

/// Float with a `p`-bit integer mantissa `top` (leading bit set).
fn float_from_integer(exponent: i64, p: Precision, top: &BigUint) -> Float {
    let n = p.limbs();
    let aligned = top << (n as u64 * LIMB_BITS as u64 - p.bits());
    let bytes = aligned.to_bytes_be();
    let mut padded = vec![0u8; n * LIMB_BYTES - bytes.len()];
    padded.extend_from_slice(&bytes);
    let limbs = padded
        .chunks_exact(LIMB_BYTES)
        .map(|c| Limb::from_be_bytes(c.try_into().expect("limb-sized chunk")))
        .collect();
    Float::from_parts_unchecked(Sign::Pos, exponent, p, limbs)
}
