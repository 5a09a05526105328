//! Value representation: sign, normalized limb mantissa, bounded exponent and
//! a per-value precision.
//!
//! A non-zero value is `sign * 0.b1 b2 ... bp * 2^exponent` with `b1 = 1`.
//! The mantissa is stored most-significant limb first; the low
//! `ceil(p / W) * W - p` bits of the last limb are never significant and are
//! always zero.

use std::fmt;

use thiserror::Error;

#[cfg(not(feature = "limb32"))]
mod limb {
    pub type Limb = u64;
    pub(crate) type DoubleLimb = u128;
}

#[cfg(feature = "limb32")]
mod limb {
    pub type Limb = u32;
    pub(crate) type DoubleLimb = u64;
}

pub(crate) use limb::DoubleLimb;
pub use limb::Limb;

/// Number of bits in a limb (`W`).
pub const LIMB_BITS: u32 = Limb::BITS;

pub const DEFAULT_MAX_PRECISION: u32 = 1 << 24;
pub const DEFAULT_EMIN: i64 = 1 - (1 << 30);
pub const DEFAULT_EMAX: i64 = (1 << 30) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FloatError {
    #[error("invalid precision {0}: must be between 2 and {1}")]
    InvalidPrecision(u64, u32),
    #[error("mantissa is not normalized: leading bit must be 1")]
    NotNormalized,
    #[error("exponent {value} outside [{emin}, {emax}]")]
    ExponentOutOfRange { value: i64, emin: i64, emax: i64 },
    #[error("mantissa has {got} bits, precision is {expected}")]
    LengthMismatch { expected: u64, got: u64 },
    #[error("invalid mantissa digit {0:?}")]
    InvalidDigit(char),
    #[error("non-significant mantissa bits must be zero")]
    DirtyTrailingBits,
}

/// Number of limbs needed for `bits` mantissa bits.
#[inline]
pub const fn limbs_for(bits: u64) -> usize {
    bits.div_ceil(LIMB_BITS as u64) as usize
}

/// Mask selecting the significant bits of the last limb of a `prec`-bit
/// mantissa.
#[inline]
pub(crate) fn last_limb_mask(prec: u64) -> Limb {
    let unused = (limbs_for(prec) as u64 * LIMB_BITS as u64 - prec) as u32;
    Limb::MAX << unused
}

/// Mantissa bit count, `p >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    /// Validates against the default cap of `2^24` bits.
    pub fn new(bits: u64) -> Result<Self, FloatError> {
        Context::default().precision(bits)
    }

    #[inline]
    pub const fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0 as u64
    }

    #[inline]
    pub const fn limbs(self) -> usize {
        limbs_for(self.0 as u64)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Binary exponent of a normalized value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(i64);

impl Exponent {
    #[inline]
    pub const fn get(self) -> i64 {
        self.0
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub const fn as_char(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RoundingMode {
    /// Toward minus infinity.
    Down,
    /// Toward plus infinity.
    Up,
    /// Toward zero. Same as `Down` on positive values.
    TowardZero,
    /// To nearest, ties to even mantissa.
    NearestEven,
}

impl RoundingMode {
    pub const ALL: [RoundingMode; 4] = [
        RoundingMode::Down,
        RoundingMode::Up,
        RoundingMode::TowardZero,
        RoundingMode::NearestEven,
    ];

    /// Name used on the command line and in fixture files.
    pub const fn name(self) -> &'static str {
        match self {
            RoundingMode::Down => "down",
            RoundingMode::Up => "up",
            RoundingMode::TowardZero => "zero",
            RoundingMode::NearestEven => "nearest",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == name)
    }
}

impl fmt::Display for RoundingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sign of `rounded - exact`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(i8)]
pub enum Ternary {
    Below = -1,
    Exact = 0,
    Above = 1,
}

impl Ternary {
    #[inline]
    pub const fn as_i8(self) -> i8 {
        self as i8
    }

    pub const fn from_i8(v: i8) -> Option<Self> {
        match v {
            -1 => Some(Ternary::Below),
            0 => Some(Ternary::Exact),
            1 => Some(Ternary::Above),
            _ => None,
        }
    }

    pub const fn negate(self) -> Self {
        match self {
            Ternary::Below => Ternary::Above,
            Ternary::Exact => Ternary::Exact,
            Ternary::Above => Ternary::Below,
        }
    }
}

impl fmt::Display for Ternary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ternary::Below => "-1",
            Ternary::Exact => "0",
            Ternary::Above => "+1",
        })
    }
}

/// Exponent range and precision cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Context {
    emin: i64,
    emax: i64,
    max_precision: u32,
}

impl Default for Context {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl Context {
    pub const DEFAULT: Context = Context {
        emin: DEFAULT_EMIN,
        emax: DEFAULT_EMAX,
        max_precision: DEFAULT_MAX_PRECISION,
    };

    /// Panics if `emin > emax` or `max_precision < 2`.
    pub fn new(emin: i64, emax: i64, max_precision: u32) -> Self {
        assert!(emin <= emax, "empty exponent range");
        assert!(max_precision >= 2, "precision cap below 2");
        Context {
            emin,
            emax,
            max_precision,
        }
    }

    #[inline]
    pub const fn emin(&self) -> i64 {
        self.emin
    }

    #[inline]
    pub const fn emax(&self) -> i64 {
        self.emax
    }

    #[inline]
    pub const fn max_precision(&self) -> u32 {
        self.max_precision
    }

    pub fn precision(&self, bits: u64) -> Result<Precision, FloatError> {
        if bits < 2 || bits > self.max_precision as u64 {
            return Err(FloatError::InvalidPrecision(bits, self.max_precision));
        }
        Ok(Precision(bits as u32))
    }

    pub fn exponent(&self, value: i64) -> Result<Exponent, FloatError> {
        if value < self.emin || value > self.emax {
            return Err(FloatError::ExponentOutOfRange {
                value,
                emin: self.emin,
                emax: self.emax,
            });
        }
        Ok(Exponent(value))
    }

    /// Builds a value from its mantissa digits, e.g. `"101"` for `0.101`.
    pub fn make_float(
        &self,
        sign: Sign,
        exponent: i64,
        precision: u64,
        bits: &str,
    ) -> Result<Float, FloatError> {
        let prec = self.precision(precision)?;
        let got = bits.chars().count() as u64;
        if got != prec.bits() {
            return Err(FloatError::LengthMismatch {
                expected: prec.bits(),
                got,
            });
        }
        let mut limbs = vec![0 as Limb; prec.limbs()];
        for (i, c) in bits.chars().enumerate() {
            let bit = match c {
                '0' => 0,
                '1' => 1,
                other => return Err(FloatError::InvalidDigit(other)),
            };
            let shift = LIMB_BITS - 1 - (i as u32 % LIMB_BITS);
            limbs[i / LIMB_BITS as usize] |= bit << shift;
        }
        self.float_from_limbs(sign, exponent, prec, limbs)
    }

    /// Builds a value from mantissa limbs, most significant first.
    pub fn float_from_limbs(
        &self,
        sign: Sign,
        exponent: i64,
        precision: Precision,
        limbs: Vec<Limb>,
    ) -> Result<Float, FloatError> {
        if limbs.len() != precision.limbs() {
            return Err(FloatError::LengthMismatch {
                expected: precision.limbs() as u64 * LIMB_BITS as u64,
                got: limbs.len() as u64 * LIMB_BITS as u64,
            });
        }
        if limbs[0] >> (LIMB_BITS - 1) != 1 {
            return Err(FloatError::NotNormalized);
        }
        if limbs[limbs.len() - 1] & !last_limb_mask(precision.bits()) != 0 {
            return Err(FloatError::DirtyTrailingBits);
        }
        let exponent = self.exponent(exponent)?;
        Ok(Float {
            sign,
            exponent,
            precision,
            limbs: limbs.into_boxed_slice(),
        })
    }
}

/// Builds a value in the default context. See [`Context::make_float`].
pub fn make_float(
    sign: Sign,
    exponent: i64,
    precision: u64,
    bits: &str,
) -> Result<Float, FloatError> {
    Context::DEFAULT.make_float(sign, exponent, precision, bits)
}

/// True iff `limbs` is a valid `prec`-bit mantissa: leading bit set and
/// non-significant trailing bits clear.
pub fn limbs_normalized(prec: u64, limbs: &[Limb]) -> bool {
    limbs.len() == limbs_for(prec)
        && !limbs.is_empty()
        && limbs[0] >> (LIMB_BITS - 1) == 1
        && limbs[limbs.len() - 1] & !last_limb_mask(prec) == 0
}

/// A non-zero normalized binary floating-point value. Immutable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Float {
    sign: Sign,
    exponent: Exponent,
    precision: Precision,
    limbs: Box<[Limb]>,
}

impl Float {
    /// Skips the range check on the exponent. Callers own the invariants.
    pub(crate) fn from_parts_unchecked(
        sign: Sign,
        exponent: i64,
        precision: Precision,
        limbs: Vec<Limb>,
    ) -> Float {
        debug_assert!(limbs_normalized(precision.bits(), &limbs));
        Float {
            sign,
            exponent: Exponent(exponent),
            precision,
            limbs: limbs.into_boxed_slice(),
        }
    }

    #[inline]
    pub fn sign(&self) -> Sign {
        self.sign
    }

    #[inline]
    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Pos
    }

    #[inline]
    pub fn exponent(&self) -> i64 {
        self.exponent.0
    }

    #[inline]
    pub fn precision(&self) -> Precision {
        self.precision
    }

    #[inline]
    pub fn limbs(&self) -> &[Limb] {
        &self.limbs
    }

    /// Mantissa bit `b_i` (1-based). Bits past the precision read as 0.
    pub fn bit(&self, i: u64) -> bool {
        assert!(i >= 1, "mantissa bits are numbered from 1");
        if i > self.precision.bits() {
            return false;
        }
        let idx = (i - 1) / LIMB_BITS as u64;
        let shift = LIMB_BITS - 1 - ((i - 1) % LIMB_BITS as u64) as u32;
        (self.limbs[idx as usize] >> shift) & 1 == 1
    }

    /// Mantissa digits `b1 .. bp` as a string of `0`/`1`.
    pub fn bit_string(&self) -> String {
        (1..=self.precision.bits())
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }

    /// Checks the representation invariants.
    pub fn is_normalized(&self) -> bool {
        limbs_normalized(self.precision.bits(), &self.limbs)
    }

    /// Same value with the sign flipped.
    pub fn negated(&self) -> Float {
        let mut out = self.clone();
        out.sign = match self.sign {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        };
        out
    }
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Float({self})")
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textio::format_float(self))
    }
}
