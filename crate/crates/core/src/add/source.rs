use crate::float::{DoubleLimb, Float, Limb, LIMB_BITS};

const W: u64 = LIMB_BITS as u64;

/// One operand placed in the frame of the larger-exponent operand: its bit
/// `i` sits at frame position `offset + i`. Reads are limb blocks, with the
/// alignment shift applied on the fly; every limb touched is recorded.
#[derive(Debug)]
pub(crate) struct Source<'a> {
    limbs: &'a [Limb],
    prec: u64,
    offset: u64,
    /// One past the highest limb index read so far.
    read: usize,
}

impl<'a> Source<'a> {
    pub(crate) fn new(x: &'a Float, offset: u64) -> Self {
        Source {
            limbs: x.limbs(),
            prec: x.precision().bits(),
            offset,
            read: 0,
        }
    }

    /// Frame position of the leading bit.
    #[inline]
    pub(crate) fn first_pos(&self) -> u64 {
        self.offset + 1
    }

    /// Frame position of the last significant bit.
    #[inline]
    pub(crate) fn last_pos(&self) -> u64 {
        self.offset + self.prec
    }

    #[inline]
    pub(crate) fn limbs_read(&self) -> usize {
        self.read
    }

    /// Bits at frame positions `[pos, pos + len)`, left-aligned in the
    /// returned limb. Positions outside the mantissa read as 0 and touch no
    /// storage.
    pub(crate) fn window(&mut self, pos: u64, len: u32) -> Limb {
        debug_assert!(pos >= 1 && (1..=LIMB_BITS).contains(&len));
        let lo = pos.max(self.first_pos());
        let hi = (pos + len as u64 - 1).min(self.last_pos());
        if lo > hi {
            return 0;
        }
        let a = lo - self.first_pos();
        let b = hi - self.first_pos();
        let k0 = (a / W) as usize;
        let k1 = (b / W) as usize;
        let high = self.limbs[k0];
        let low = if k1 > k0 { self.limbs[k1] } else { 0 };
        self.read = self.read.max(k1 + 1);

        let word = ((high as DoubleLimb) << LIMB_BITS) | low as DoubleLimb;
        let count = (hi - lo + 1) as u32;
        let bits = ((word << (a % W)) >> (2 * LIMB_BITS - count)) as Limb;
        (bits << (LIMB_BITS - count)) >> (lo - pos)
    }
}

/// Mask of the top `len` bits of a limb.
#[inline]
pub(crate) fn top_mask(len: u32) -> Limb {
    debug_assert!((1..=LIMB_BITS).contains(&len));
    Limb::MAX << (LIMB_BITS - len)
}
