//! Rounding of a positive truncated mantissa from its rounding and sticky
//! bits, carry propagation, and rounding a value to a smaller precision.

use std::fmt;

use crate::float::{
    last_limb_mask, Context, Float, Limb, Precision, RoundingMode, Sign, Ternary, LIMB_BITS,
};

/// Rounding bit `r` (weight `2^-(p+1)`) and sticky bit `s` (OR of every
/// lower bit) of an exact mantissa.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RoundSticky {
    pub r: bool,
    pub s: bool,
}

impl RoundSticky {
    pub const fn new(r: bool, s: bool) -> Self {
        RoundSticky { r, s }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RoundAction {
    /// Keep the truncated mantissa.
    Truncate,
    /// Add `2^-p` to the truncated mantissa.
    Increment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RoundDecision {
    pub action: RoundAction,
    pub ternary: Ternary,
}

/// Rounding decision for a positive value from `(r, s)`; `last_bit` is
/// `b_p` and only matters for ties under `NearestEven`.
pub fn decide_round(mode: RoundingMode, rs: RoundSticky, last_bit: bool) -> RoundDecision {
    use RoundAction::*;
    let up = RoundDecision {
        action: Increment,
        ternary: Ternary::Above,
    };
    let down = RoundDecision {
        action: Truncate,
        ternary: Ternary::Below,
    };
    if !rs.r && !rs.s {
        return RoundDecision {
            action: Truncate,
            ternary: Ternary::Exact,
        };
    }
    match mode {
        RoundingMode::Down | RoundingMode::TowardZero => down,
        RoundingMode::Up => up,
        RoundingMode::NearestEven => match (rs.r, rs.s) {
            (false, _) => down,
            (true, true) => up,
            (true, false) if last_bit => up,
            (true, false) => down,
        },
    }
}

/// Result of adding one ulp to a mantissa.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incremented {
    pub exponent: i64,
    /// Set iff the carry pushed the exponent past `emax`.
    pub overflowed: bool,
}

/// Adds `2^-p` to a normalized `p`-bit mantissa in place. A carry out of the
/// top limb leaves `0.100...0` and bumps the exponent.
pub fn apply_increment(
    mantissa: &mut [Limb],
    prec: Precision,
    exponent: i64,
    emax: i64,
) -> Incremented {
    let n = mantissa.len();
    debug_assert_eq!(n, prec.limbs());
    let ulp = !last_limb_mask(prec.bits()) + 1;
    let mut carry = ulp;
    for limb in mantissa.iter_mut().rev() {
        let (sum, c) = limb.overflowing_add(carry);
        *limb = sum;
        if !c {
            carry = 0;
            break;
        }
        carry = 1;
    }
    if carry == 0 {
        return Incremented {
            exponent,
            overflowed: false,
        };
    }
    // Every bit was 1; the limbs are all zero now.
    mantissa[0] = 1 << (LIMB_BITS - 1);
    Incremented {
        exponent: exponent + 1,
        overflowed: exponent + 1 > emax,
    }
}

/// True iff some mantissa bit at 1-based position `pos` or later is set.
pub(crate) fn any_bit_from(limbs: &[Limb], pos: u64) -> bool {
    let idx = ((pos - 1) / LIMB_BITS as u64) as usize;
    if idx >= limbs.len() {
        return false;
    }
    let head = limbs[idx] & (Limb::MAX >> ((pos - 1) % LIMB_BITS as u64));
    head != 0 || limbs[idx + 1..].iter().any(|&l| l != 0)
}

/// A correctly rounded value together with its ternary value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rounded {
    pub value: Float,
    pub ternary: Ternary,
}

/// The rounded result does not fit below `emax`. No infinity is substituted;
/// `ternary` is what a saturating implementation would report (`+1` when
/// rounding away from zero, `-1` otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow {
    pub sign: Sign,
    pub mode: RoundingMode,
    pub ternary: Ternary,
}

impl Overflow {
    pub fn new(sign: Sign, mode: RoundingMode) -> Self {
        let away = match (mode, sign) {
            (RoundingMode::NearestEven, _) => true,
            (RoundingMode::TowardZero, _) => false,
            (RoundingMode::Up, s) => s == Sign::Pos,
            (RoundingMode::Down, s) => s == Sign::Neg,
        };
        let ternary = match (away, sign) {
            (true, Sign::Pos) | (false, Sign::Neg) => Ternary::Above,
            _ => Ternary::Below,
        };
        Overflow {
            sign,
            mode,
            ternary,
        }
    }
}

impl fmt::Display for Overflow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "overflow({})", self.sign.as_char())
    }
}

impl std::error::Error for Overflow {}

/// Rounds a positive `x` to precision `p` in the default context.
pub fn round_to_prec(x: &Float, p: Precision, mode: RoundingMode) -> Result<Rounded, Overflow> {
    round_to_prec_in(&Context::DEFAULT, x, p, mode)
}

/// Rounds a positive `x` to precision `p`.
///
/// Panics if `x` is negative.
pub fn round_to_prec_in(
    ctx: &Context,
    x: &Float,
    p: Precision,
    mode: RoundingMode,
) -> Result<Rounded, Overflow> {
    assert!(x.is_positive(), "round_to_prec expects a positive value");
    let src = x.limbs();
    let pn = p.limbs();
    let mut limbs: Vec<Limb> = (0..pn).map(|i| src.get(i).copied().unwrap_or(0)).collect();

    if p.bits() >= x.precision().bits() {
        return Ok(Rounded {
            value: Float::from_parts_unchecked(Sign::Pos, x.exponent(), p, limbs),
            ternary: Ternary::Exact,
        });
    }

    let mask = last_limb_mask(p.bits());
    let last = pn - 1;
    limbs[last] &= mask;
    let r = x.bit(p.bits() + 1);
    let s = any_bit_from(src, p.bits() + 2);

    let decision = decide_round(
        mode,
        RoundSticky::new(r, s),
        limbs[last] & !(mask << 1) != 0,
    );
    let mut exponent = x.exponent();
    if decision.action == RoundAction::Increment {
        let inc = apply_increment(&mut limbs, p, exponent, ctx.emax());
        if inc.overflowed {
            return Err(Overflow::new(Sign::Pos, mode));
        }
        exponent = inc.exponent;
    }
    Ok(Rounded {
        value: Float::from_parts_unchecked(Sign::Pos, exponent, p, limbs),
        ternary: decision.ternary,
    })
}
