//! Randomized differential testing of the add engine against the oracle.
//!
//! Cases come from a ChaCha8 stream seeded with the user's 64-bit seed, so a
//! seed, count and precision bound always reproduce the same cases. Cases are
//! biased toward the inputs that historically break additions: equal
//! exponents, shifts around limb boundaries, holes between the operands,
//! all-ones carry chains, complementary operands and rounding ties.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::add::{add_positive_in, AddError};
use crate::float::{Context, Float, Limb, Precision, RoundingMode, Sign, LIMB_BITS};
use crate::oracle::exact_add_round_in;
use crate::textio::{Expected, FixtureCase};

/// One generated addition, before a rounding mode is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case {
    pub x: Float,
    pub y: Float,
    pub prec: Precision,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pattern {
    Uniform,
    AllOnes,
    SingleOne,
    Sparse,
    /// Random leading bits, zeros past the target precision.
    ZeroTail,
}

/// Deterministic stream of structured cases.
#[derive(Debug, Clone)]
pub struct CaseGenerator {
    rng: ChaCha8Rng,
    max_prec: u64,
    ctx: Context,
}

impl CaseGenerator {
    pub fn new(seed: u64, max_prec: u64) -> Self {
        Self::with_context(seed, max_prec, Context::DEFAULT)
    }

    pub fn with_context(seed: u64, max_prec: u64, ctx: Context) -> Self {
        assert!(max_prec >= 2);
        CaseGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_prec,
            ctx,
        }
    }

    fn precision(&mut self) -> u64 {
        let w = LIMB_BITS as u64;
        let pick = self.rng.gen_range(0..10);
        let p = match pick {
            0..=4 => self.rng.gen_range(2..=self.max_prec),
            5..=6 => self.rng.gen_range(2..=self.max_prec.min(8)),
            _ => {
                let k = self.rng.gen_range(1..=3u64);
                let delta = self.rng.gen_range(-1i64..=1);
                (k * w).saturating_add_signed(delta)
            }
        };
        p.clamp(2, self.max_prec)
    }

    fn pattern(&mut self) -> Pattern {
        match self.rng.gen_range(0..20) {
            0..=9 => Pattern::Uniform,
            10..=12 => Pattern::AllOnes,
            13..=14 => Pattern::SingleOne,
            15..=16 => Pattern::Sparse,
            _ => Pattern::ZeroTail,
        }
    }

    fn bits(&mut self, len: u64, pattern: Pattern, keep: u64) -> Vec<bool> {
        (0..len)
            .map(|i| {
                i == 0
                    || match pattern {
                        Pattern::Uniform => self.rng.gen(),
                        Pattern::AllOnes => true,
                        Pattern::SingleOne => false,
                        Pattern::Sparse => self.rng.gen_ratio(1, 16),
                        Pattern::ZeroTail => i < keep && self.rng.gen(),
                    }
            })
            .collect()
    }

    fn shift(&mut self, m: u64, p: u64) -> u64 {
        let w = LIMB_BITS as u64;
        match self.rng.gen_range(0..20) {
            0..=2 => 0,
            3..=7 => self.rng.gen_range(0..=p + 3),
            8..=11 => {
                let k = self.rng.gen_range(1..=3u64);
                (k * w).saturating_add_signed(self.rng.gen_range(-1i64..=1))
            }
            12..=13 => (p + self.rng.gen_range(0..=3u64)).saturating_sub(1),
            14..=16 => m + self.rng.gen_range(1..=2 * w),
            17..=18 => p + 3 + self.rng.gen_range(0..=2 * self.max_prec),
            _ => self.rng.gen_range(0..=4096),
        }
    }

    pub fn next_case(&mut self) -> Case {
        let m = self.precision();
        let n = self.precision();
        let p = self.precision();
        let d = self.shift(m, p);

        let x_pattern = self.pattern();
        let xb = self.bits(m, x_pattern, p);
        let yb = if self.rng.gen_ratio(3, 20) {
            // Complement of x under y's aligned positions: long runs where
            // the sum is all ones, broken by at most one flipped bit.
            let mut bits: Vec<bool> = (0..n)
                .map(|j| {
                    let i = j + d;
                    !(i < m && xb[i as usize])
                })
                .collect();
            bits[0] = true;
            if self.rng.gen() {
                let k = self.rng.gen_range(1..n) as usize;
                bits[k] = !bits[k];
            }
            bits
        } else {
            let pattern = self.pattern();
            self.bits(n, pattern, p.saturating_sub(d))
        };

        let ex = if self.rng.gen_ratio(1, 50) {
            self.ctx.emax() - self.rng.gen_range(0..=1)
        } else {
            self.rng.gen_range(-1000..=1000)
        };
        let ey = ex - d as i64;
        let x = to_float(&self.ctx, ex, &xb);
        let y = to_float(&self.ctx, ey, &yb);
        let prec = self.ctx.precision(p).expect("generated precision in range");
        if self.rng.gen() {
            Case { x, y, prec }
        } else {
            Case { x: y, y: x, prec }
        }
    }
}

fn to_float(ctx: &Context, exponent: i64, bits: &[bool]) -> Float {
    let p = ctx
        .precision(bits.len() as u64)
        .expect("generated precision in range");
    let mut limbs = vec![0 as Limb; p.limbs()];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            limbs[i / LIMB_BITS as usize] |= 1 << (LIMB_BITS - 1 - (i as u32 % LIMB_BITS));
        }
    }
    ctx.float_from_limbs(Sign::Pos, exponent, p, limbs)
        .expect("generated float is normalized")
}

/// Result of a verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyReport {
    Pass {
        cases: u64,
    },
    Mismatch {
        /// Zero-based index of the failing case.
        index: u64,
        /// The case with the oracle's answer recorded.
        case: FixtureCase,
        /// What the implementation under test returned.
        got: Result<Expected, String>,
    },
}

/// The engine's answer in fixture form.
pub fn engine_expected(
    ctx: &Context,
    x: &Float,
    y: &Float,
    p: Precision,
    mode: RoundingMode,
) -> Result<Expected, String> {
    match add_positive_in(ctx, x, y, p, mode) {
        Ok(out) => Ok(Expected::Value {
            result: out.result,
            ternary: out.ternary,
        }),
        Err(AddError::Overflow(o)) => Ok(Expected::Overflow {
            sign: o.sign,
            ternary: o.ternary,
        }),
        Err(e) => Err(e.to_string()),
    }
}

/// Runs `count` cases in each of `modes` through `adder` and compares with
/// the oracle. Stops at the first mismatch.
pub fn verify_with<F>(
    seed: u64,
    count: u64,
    max_prec: u64,
    modes: &[RoundingMode],
    mut adder: F,
) -> VerifyReport
where
    F: FnMut(&Float, &Float, Precision, RoundingMode) -> Result<Expected, String>,
{
    let ctx = Context::DEFAULT;
    let mut gen = CaseGenerator::new(seed, max_prec);
    for index in 0..count {
        let Case { x, y, prec } = gen.next_case();
        for &mode in modes {
            let expected = Expected::from_outcome(&exact_add_round_in(&ctx, &x, &y, prec, mode));
            let got = adder(&x, &y, prec, mode);
            if got.as_ref() != Ok(&expected) {
                return VerifyReport::Mismatch {
                    index,
                    case: FixtureCase {
                        x,
                        y,
                        prec,
                        mode,
                        expected,
                    },
                    got,
                };
            }
        }
    }
    VerifyReport::Pass { cases: count }
}

/// [`verify_with`] against the real engine.
pub fn verify(seed: u64, count: u64, max_prec: u64, modes: &[RoundingMode]) -> VerifyReport {
    let ctx = Context::DEFAULT;
    verify_with(seed, count, max_prec, modes, |x, y, p, mode| {
        engine_expected(&ctx, x, y, p, mode)
    })
}
