//! Trailing-bit scan deciding how the error term `ε` compares to `0` and to
//! `u`, the weight of the following bit.
//!
//! Both questions share one loop over increasing frame positions. Each
//! iteration reads one block that lies entirely inside a single
//! [`ScanState`], so a block never mixes "y not started" and "y overlapping"
//! positions. The exit predicates are [`f0_block_continues`] and
//! [`f1_block_continues`].

use std::fmt;

use crate::float::{Float, Limb, LIMB_BITS};

use super::main_term::Alignment;
use super::source::{top_mask, Source};

/// Relation of the error term `ε` to `0` and `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorClass {
    EqZero,
    /// `ε > 0` when `f = 0`; `ε < u` when `f = 1`.
    GtZeroLtU,
    EqU,
    GtU,
}

impl ErrorClass {
    /// Label in terms of the following bit it was resolved against.
    pub fn label(self, f: bool) -> &'static str {
        match (self, f) {
            (ErrorClass::EqZero, _) => "=0",
            (ErrorClass::GtZeroLtU, false) => ">0",
            (ErrorClass::GtZeroLtU, true) => "<u",
            (ErrorClass::EqU, _) => "=u",
            (ErrorClass::GtU, _) => ">u",
        }
    }
}

/// Reading status of the trailing parts `x''` and `y''` at a position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanState {
    XRemainsYNotStarted,
    Overlap,
    XRemainsYDone,
    XDoneYNotStarted,
    XDoneYRemains,
    BothDone,
}

impl ScanState {
    fn at(pos: u64, x: &Source, y: &Source) -> (ScanState, u64) {
        let x_left = pos <= x.last_pos();
        let y_started = pos >= y.first_pos();
        let y_left = pos <= y.last_pos();
        let state = match (x_left, y_started, y_left) {
            (true, false, _) => ScanState::XRemainsYNotStarted,
            (true, true, true) => ScanState::Overlap,
            (true, true, false) => ScanState::XRemainsYDone,
            (false, false, _) => ScanState::XDoneYNotStarted,
            (false, true, true) => ScanState::XDoneYRemains,
            (false, true, false) => ScanState::BothDone,
        };
        // First position where the state may change.
        let next = [x.last_pos() + 1, y.first_pos(), y.last_pos() + 1]
            .into_iter()
            .filter(|&b| b > pos)
            .min()
            .unwrap_or(u64::MAX);
        (state, next)
    }
}

impl fmt::Display for ScanState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Work counters for one addition.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanStats {
    /// Limbs of the larger-exponent operand read, counted from the top.
    pub x_limbs_read: usize,
    /// Limbs of the smaller-exponent operand read, counted from the top.
    pub y_limbs_read: usize,
    /// Trailing mantissa positions examined up to and including the one that
    /// settled the error term.
    pub trailing_bits_examined: u64,
    /// Frame position of the first trailing position where both operands
    /// carry the same bit, if the scan looked for one and found it.
    pub q_found_at: Option<u64>,
    /// Limb blocks added while forming the main term.
    pub main_blocks: u64,
    /// Limb blocks read by the trailing scan.
    pub scan_blocks: u64,
}

/// `f = 0` continue predicate: the OR of the block's `x` and `y` bits is
/// all zeros.
#[inline]
pub fn f0_block_continues(xb: Limb, yb: Limb) -> bool {
    xb | yb == 0
}

/// `f = 1` continue predicate: `x + y` over the `len`-bit block is all ones
/// without carry, i.e. every position holds exactly one 1.
#[inline]
pub fn f1_block_continues(xb: Limb, yb: Limb, len: u32) -> bool {
    (xb ^ yb) & top_mask(len) == top_mask(len)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Seek {
    /// `f = 0`: looking for any 1.
    AnyOne,
    /// `f = 1`: looking for the first position `q` with equal bits.
    Equal,
    /// `f = 1` and both bits at `q` were 1: `ε >= u`, looking for any 1.
    AnyOneAfterTie,
}

/// Classifies the error term of the aligned sum `x + y` whose trailing part
/// starts at frame position `start` (position `p + 3` for target precision
/// `p`), given the following bit `f`.
pub fn classify_error(
    x: &Float,
    y: &Float,
    align: Alignment,
    f: bool,
    start: u64,
) -> (ErrorClass, ScanStats) {
    let mut xs = Source::new(x, 0);
    let mut ys = Source::new(y, align.d);
    let mut stats = ScanStats::default();
    let class = scan(&mut xs, &mut ys, f, start, &mut stats);
    stats.x_limbs_read = xs.limbs_read();
    stats.y_limbs_read = ys.limbs_read();
    (class, stats)
}

pub(crate) fn scan(
    xs: &mut Source,
    ys: &mut Source,
    f: bool,
    start: u64,
    stats: &mut ScanStats,
) -> ErrorClass {
    // y's leading bit is 1, so if it lies in the trailing part, ε > 0.
    if !f && ys.first_pos() >= start {
        return ErrorClass::GtZeroLtU;
    }

    let mut seek = if f { Seek::Equal } else { Seek::AnyOne };
    let mut pos = start;
    loop {
        let (state, next) = ScanState::at(pos, xs, ys);
        if state == ScanState::BothDone {
            return match seek {
                Seek::AnyOne => ErrorClass::EqZero,
                Seek::Equal => ErrorClass::GtZeroLtU,
                Seek::AnyOneAfterTie => ErrorClass::EqU,
            };
        }
        if seek == Seek::Equal
            && matches!(
                state,
                ScanState::XRemainsYDone | ScanState::XDoneYNotStarted | ScanState::XDoneYRemains
            )
        {
            // Bits from a single mantissa cannot carry up to u.
            return ErrorClass::GtZeroLtU;
        }

        let len = (next - pos).min(LIMB_BITS as u64) as u32;
        let xb = xs.window(pos, len);
        let yb = ys.window(pos, len);
        stats.scan_blocks += 1;

        match seek {
            Seek::AnyOne | Seek::AnyOneAfterTie => {
                if !f0_block_continues(xb, yb) {
                    let offset = (xb | yb).leading_zeros() as u64;
                    stats.trailing_bits_examined += offset + 1;
                    return if seek == Seek::AnyOne {
                        ErrorClass::GtZeroLtU
                    } else {
                        ErrorClass::GtU
                    };
                }
            }
            Seek::Equal => {
                if !f1_block_continues(xb, yb, len) {
                    let offset = (xb ^ yb).leading_ones();
                    let q = pos + offset as u64;
                    stats.trailing_bits_examined += offset as u64 + 1;
                    stats.q_found_at = Some(q);
                    if (xb >> (LIMB_BITS - 1 - offset)) & 1 == 0 {
                        return ErrorClass::GtZeroLtU;
                    }
                    seek = Seek::AnyOneAfterTie;
                    pos = q + 1;
                    continue;
                }
            }
        }
        stats.trailing_bits_examined += len as u64;
        pos += len as u64;
    }
}
