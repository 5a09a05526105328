use crate::float::{limbs_for, Float, Limb, Precision, LIMB_BITS};

use super::source::{top_mask, Source};

/// Exponent difference between the ordered operands, `e_x >= e_y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alignment {
    pub d: u64,
    pub limb_shift: u64,
    pub bit_shift: u32,
}

impl Alignment {
    pub fn new(d: u64) -> Self {
        Alignment {
            d,
            limb_shift: d / LIMB_BITS as u64,
            bit_shift: (d % LIMB_BITS as u64) as u32,
        }
    }

    /// Alignment of `y` under `x`. Panics unless `e_x >= e_y`.
    pub fn between(x: &Float, y: &Float) -> Self {
        assert!(x.exponent() >= y.exponent(), "operands are not ordered");
        Self::new((x.exponent() - y.exponent()) as u64)
    }
}

/// The sum `t` of the top `p + 2` frame positions of both operands, after
/// renormalization.
///
/// `limbs` hold `t` left-aligned: mantissa bits at positions `1..=p`, then
/// the temporary rounding bit `r_t` at `p + 1` and the following bit `f` at
/// `p + 2`. Every other bit is zero. The weight `u` of bit `p + 2` is
/// `2^(exponent - p - 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainTerm {
    pub limbs: Vec<Limb>,
    pub exponent: i64,
    pub r_t: bool,
    pub f: bool,
    /// The raw sum reached 1 and was shifted right by one position.
    pub carried: bool,
    /// Bit shifted out by the renormalization; always false without a carry.
    pub displaced: bool,
}

/// Main term of `x + y`. Only positions `1..=p+2` of `x`'s frame are summed;
/// everything below belongs to the error term.
pub fn compute_main_term(x: &Float, y: &Float, p: Precision, align: Alignment) -> MainTerm {
    let mut xs = Source::new(x, 0);
    let mut ys = Source::new(y, align.d);
    let (term, _) = main_term(&mut xs, &mut ys, x.exponent(), p);
    term
}

/// Returns the main term and the number of limb blocks added.
pub(crate) fn main_term(
    xs: &mut Source,
    ys: &mut Source,
    ex: i64,
    p: Precision,
) -> (MainTerm, u64) {
    let width = p.bits() + 2;
    let n = limbs_for(width);
    let w = LIMB_BITS as u64;
    let mut limbs = vec![0 as Limb; n];

    // Least significant block first so carries propagate upward.
    let mut carry = false;
    for j in (0..n).rev() {
        let pos = j as u64 * w + 1;
        let len = (width - j as u64 * w).min(w) as u32;
        let xb = xs.window(pos, len);
        let yb = ys.window(pos, len);
        let (s1, c1) = xb.overflowing_add(yb);
        let (s2, c2) = s1.overflowing_add(carry as Limb);
        limbs[j] = s2;
        carry = c1 || c2;
    }

    let bit_at = |limbs: &[Limb], pos: u64| -> bool {
        let idx = ((pos - 1) / w) as usize;
        (limbs[idx] >> (LIMB_BITS - 1 - ((pos - 1) % w) as u32)) & 1 == 1
    };

    let mut exponent = ex;
    let mut displaced = false;
    if carry {
        displaced = bit_at(&limbs, width);
        shift_right_one(&mut limbs);
        limbs[0] |= 1 << (LIMB_BITS - 1);
        // Only positions up to p + 2 stay in t.
        let last = n - 1;
        limbs[last] &= top_mask((width - last as u64 * w) as u32);
        exponent += 1;
    }

    let r_t = bit_at(&limbs, width - 1);
    let f = bit_at(&limbs, width);
    (
        MainTerm {
            limbs,
            exponent,
            r_t,
            f,
            carried: carry,
            displaced,
        },
        n as u64,
    )
}

fn shift_right_one(limbs: &mut [Limb]) {
    let mut incoming = 0;
    for limb in limbs.iter_mut() {
        let out = *limb & 1;
        *limb = (*limb >> 1) | (incoming << (LIMB_BITS - 1));
        incoming = out;
    }
}
