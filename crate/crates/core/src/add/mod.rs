//! Exactly rounded addition of two positive values of arbitrary, independent
//! precisions.
//!
//! The operands are ordered so that `e_x >= e_y` and `y` is read through an
//! aligned view shifted by `d = e_x - e_y` positions. The sum of the top
//! `p + 2` positions forms the main term `t`; the remaining (trailing) bits
//! form the error term `ε`, with `0 <= ε < 2u` where `u` is the weight of bit
//! `p + 2`. Only as many trailing bits are read as needed to place `ε`
//! relative to `0` (following bit `f = 0`) or to `u` (`f = 1`), after which
//! the rounding bit and sticky bit are known and the result is rounded.
//!
//! When the main term carries, it is shifted right by one position and the
//! exponent bumped. The bit pushed out is folded into the classification:
//! with the new following bit `f'` and displaced bit `b`,
//!
//! * `f' = 0`: `ε' > 0` if `b = 1`, otherwise `ε' = ε`;
//! * `f' = 1`: `ε' < u'` if `b = 0`, otherwise `ε'` compares to `u'` as `ε`
//!   compares to the pre-carry `u`,
//!
//! so the trailing scan always starts at pre-carry position `p + 3`.

mod combine;
mod main_term;
mod scan;
mod source;

use thiserror::Error;

pub use combine::{combine_rfe, CaseRow, Combined, InvalidCombination};
pub use main_term::{compute_main_term, Alignment, MainTerm};
pub use scan::{
    classify_error, f0_block_continues, f1_block_continues, ErrorClass, ScanState, ScanStats,
};

use crate::float::{last_limb_mask, Context, Float, Precision, RoundingMode, Sign, Ternary};
use crate::rounding::{apply_increment, decide_round, Overflow, RoundAction};
use source::Source;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddOutcome {
    /// `x + y` rounded to the target precision.
    pub result: Float,
    /// Sign of `result - (x + y)`.
    pub ternary: Ternary,
    pub stats: ScanStats,
    /// Main-term case that decided the rounding.
    pub row: CaseRow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AddError {
    #[error("operands must be positive")]
    NotPositive,
    #[error("{0}")]
    Overflow(Overflow),
    #[error(transparent)]
    Internal(#[from] InvalidCombination),
}

impl From<Overflow> for AddError {
    fn from(o: Overflow) -> Self {
        AddError::Overflow(o)
    }
}

/// `x + y` rounded to `p` bits in the default exponent range.
pub fn add_positive(
    x: &Float,
    y: &Float,
    p: Precision,
    mode: RoundingMode,
) -> Result<AddOutcome, AddError> {
    add_positive_in(&Context::DEFAULT, x, y, p, mode)
}

/// `x + y` rounded to `p` bits; overflow is reported against `ctx.emax()`.
pub fn add_positive_in(
    ctx: &Context,
    x: &Float,
    y: &Float,
    p: Precision,
    mode: RoundingMode,
) -> Result<AddOutcome, AddError> {
    if !x.is_positive() || !y.is_positive() {
        return Err(AddError::NotPositive);
    }
    let (x, y) = if x.exponent() >= y.exponent() {
        (x, y)
    } else {
        (y, x)
    };
    let align = Alignment::between(x, y);
    let mut xs = Source::new(x, 0);
    let mut ys = Source::new(y, align.d);
    let mut stats = ScanStats::default();
    let overflow = || AddError::Overflow(Overflow::new(Sign::Pos, mode));

    let (term, blocks) = main_term::main_term(&mut xs, &mut ys, x.exponent(), p);
    stats.main_blocks = blocks;
    if term.exponent > ctx.emax() {
        return Err(overflow());
    }

    let start = p.bits() + 3;
    let class = match (term.carried, term.f, term.displaced) {
        (false, f, _) => scan::scan(&mut xs, &mut ys, f, start, &mut stats),
        (true, false, true) => ErrorClass::GtZeroLtU,
        (true, false, false) => scan::scan(&mut xs, &mut ys, false, start, &mut stats),
        (true, true, false) => ErrorClass::GtZeroLtU,
        (true, true, true) => scan::scan(&mut xs, &mut ys, true, start, &mut stats),
    };
    stats.x_limbs_read = xs.limbs_read();
    stats.y_limbs_read = ys.limbs_read();

    let row = CaseRow {
        r_t: term.r_t,
        f: term.f,
        class,
    };
    let combined = combine_rfe(term.r_t, term.f, class)?;

    let pn = p.limbs();
    let mut limbs = term.limbs;
    limbs.truncate(pn);
    let mask = last_limb_mask(p.bits());
    limbs[pn - 1] &= mask;
    let mut exponent = term.exponent;

    if combined.carry {
        let inc = apply_increment(&mut limbs, p, exponent, ctx.emax());
        if inc.overflowed {
            return Err(overflow());
        }
        exponent = inc.exponent;
    }

    let last_bit = limbs[pn - 1] & (mask & mask.wrapping_neg()) != 0;
    let decision = decide_round(mode, combined.rs, last_bit);
    if decision.action == RoundAction::Increment {
        let inc = apply_increment(&mut limbs, p, exponent, ctx.emax());
        if inc.overflowed {
            return Err(overflow());
        }
        exponent = inc.exponent;
    }

    Ok(AddOutcome {
        result: Float::from_parts_unchecked(Sign::Pos, exponent, p, limbs),
        ternary: decision.ternary,
        stats,
        row,
    })
}
