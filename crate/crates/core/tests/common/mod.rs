#![allow(dead_code)]

use std::cmp::Ordering;

use xadd_core::add::{compute_main_term, Alignment, ErrorClass, MainTerm};
use xadd_core::oracle::{exact_add, exact_add_round_in, ExactSum};
use xadd_core::textio::Expected;
use xadd_core::{
    add_positive_in, make_float, AddError, AddOutcome, Context, Float, Limb, Precision,
    RoundingMode, Sign, Ternary, LIMB_BITS,
};

pub fn fl(bits: &str, e: i64) -> Float {
    make_float(Sign::Pos, e, bits.len() as u64, bits).unwrap()
}

pub fn prec(p: u64) -> Precision {
    Precision::new(p).unwrap()
}

/// Float with a `len`-bit mantissa read from the low bits of `bits`
/// (most significant first). The top bit must be set.
pub fn from_int(bits: u64, len: u32, e: i64) -> Float {
    let s: String = (0..len)
        .rev()
        .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
        .collect();
    fl(&s, e)
}

/// Context wide enough to hold any intermediate exponent.
pub fn wide() -> Context {
    Context::new(i64::MIN / 4, i64::MAX / 4, 1 << 24)
}

pub fn expected_of(out: &Result<AddOutcome, AddError>) -> Result<Expected, String> {
    match out {
        Ok(o) => Ok(Expected::Value {
            result: o.result.clone(),
            ternary: o.ternary,
        }),
        Err(AddError::Overflow(o)) => Ok(Expected::Overflow {
            sign: o.sign,
            ternary: o.ternary,
        }),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Engine and oracle disagree.
    Mismatch(String),
    /// Engine and oracle agree but a value invariant fails.
    Invariant(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Mismatch(m) => write!(f, "mismatch: {m}"),
            Failure::Invariant(m) => write!(f, "invariant: {m}"),
        }
    }
}

/// Summary of one checked case across all four modes.
#[derive(Debug, Default, Clone, Copy)]
pub struct Checked {
    pub bits_examined: u64,
    pub overflowed: bool,
}

fn sign_of(o: Ordering) -> Ternary {
    match o {
        Ordering::Less => Ternary::Below,
        Ordering::Equal => Ternary::Exact,
        Ordering::Greater => Ternary::Above,
    }
}

/// Value of a main term as an exact number.
pub fn main_term_value(t: &MainTerm, p: Precision) -> ExactSum {
    let width = prec(p.bits() + 2);
    let f = wide()
        .float_from_limbs(Sign::Pos, t.exponent, width, t.limbs.clone())
        .expect("main term is normalized");
    ExactSum::of(&f)
}

/// Engine/oracle agreement plus the value invariants:
/// ternary consistency, Down <= exact <= Up, TowardZero == Down, nearest
/// error bound, main-term error bound, error-class correctness and the
/// scan bound `bits_examined <= m + n`.
pub fn check_case(ctx: &Context, x: &Float, y: &Float, p: Precision) -> Result<Checked, Failure> {
    let exact = exact_add(x, y);
    let e_exact = exact.binary_exponent().expect("positive sum");
    let m = x.precision().bits();
    let n = y.precision().bits();
    let mut summary = Checked::default();
    let mut values: Vec<Option<Float>> = Vec::new();
    let mut first: Option<AddOutcome> = None;

    for mode in RoundingMode::ALL {
        let ctx_line = || format!("{x} {y} {p} {mode}");
        let got = add_positive_in(ctx, x, y, p, mode);
        let want = Expected::from_outcome(&exact_add_round_in(ctx, x, y, p, mode));
        if expected_of(&got) != Ok(want.clone()) {
            return Err(Failure::Mismatch(format!(
                "{} -> {want}, engine {:?}",
                ctx_line(),
                expected_of(&got)
            )));
        }
        match got {
            Ok(out) => {
                let rel = ExactSum::of(&out.result).cmp_value(&exact);
                if sign_of(rel) != out.ternary {
                    return Err(Failure::Invariant(format!(
                        "{}: ternary {} but result is {rel:?} exact",
                        ctx_line(),
                        out.ternary
                    )));
                }
                if mode == RoundingMode::NearestEven {
                    let err = ExactSum::of(&out.result).abs_diff(&exact);
                    let bound = ExactSum::power_of_two(e_exact - p.bits() as i64 - 1);
                    if err.cmp_value(&bound) == Ordering::Greater {
                        return Err(Failure::Invariant(format!(
                            "{}: nearest error exceeds half ulp",
                            ctx_line()
                        )));
                    }
                }
                if out.stats.trailing_bits_examined > m + n {
                    return Err(Failure::Invariant(format!(
                        "{}: examined {} trailing bits, m + n = {}",
                        ctx_line(),
                        out.stats.trailing_bits_examined,
                        m + n
                    )));
                }
                summary.bits_examined = summary.bits_examined.max(out.stats.trailing_bits_examined);
                values.push(Some(out.result.clone()));
                first.get_or_insert(out);
            }
            Err(_) => {
                summary.overflowed = true;
                values.push(None);
            }
        }
    }

    // ALL is [Down, Up, TowardZero, NearestEven].
    if values[0] != values[2] {
        return Err(Failure::Invariant(format!(
            "{x} {y} {p}: zero and down differ"
        )));
    }
    if let Some(down) = &values[0] {
        if ExactSum::of(down).cmp_value(&exact) == Ordering::Greater {
            return Err(Failure::Invariant(format!(
                "{x} {y} {p}: down result above exact sum"
            )));
        }
    }
    if let Some(up) = &values[1] {
        if ExactSum::of(up).cmp_value(&exact) == Ordering::Less {
            return Err(Failure::Invariant(format!(
                "{x} {y} {p}: up result below exact sum"
            )));
        }
    }

    // Main term and error-term class, independent of the mode.
    let (a, b) = if x.exponent() >= y.exponent() {
        (x, y)
    } else {
        (y, x)
    };
    let term = compute_main_term(a, b, p, Alignment::between(a, b));
    let t = main_term_value(&term, p);
    if exact.cmp_value(&t) == Ordering::Less {
        return Err(Failure::Invariant(format!(
            "{x} {y} {p}: main term exceeds exact sum"
        )));
    }
    let eps = exact.abs_diff(&t);
    let u = ExactSum::power_of_two(term.exponent - p.bits() as i64 - 2);
    let two_u = ExactSum::power_of_two(term.exponent - p.bits() as i64 - 1);
    if eps.cmp_value(&two_u) != Ordering::Less {
        return Err(Failure::Invariant(format!(
            "{x} {y} {p}: error term not below 2u"
        )));
    }
    if let Some(out) = first {
        if (out.row.r_t, out.row.f) != (term.r_t, term.f) {
            return Err(Failure::Invariant(format!(
                "{x} {y} {p}: row {} disagrees with main term",
                out.row
            )));
        }
        let zero = eps.magnitude.bits() == 0;
        let vs_u = eps.cmp_value(&u);
        let ok = match (term.f, out.row.class) {
            (false, ErrorClass::EqZero) => zero,
            (false, ErrorClass::GtZeroLtU) => !zero,
            (true, ErrorClass::GtZeroLtU) => vs_u == Ordering::Less,
            (true, ErrorClass::EqU) => vs_u == Ordering::Equal,
            (true, ErrorClass::GtU) => vs_u == Ordering::Greater,
            _ => false,
        };
        if !ok {
            return Err(Failure::Invariant(format!(
                "{x} {y} {p}: class {} is wrong for exact error",
                out.row
            )));
        }
    }
    Ok(summary)
}

/// Mantissa mask for the last limb of a `prec`-bit value.
pub fn last_mask(prec: u64) -> Limb {
    let used = (prec % LIMB_BITS as u64) as u32;
    if used == 0 {
        Limb::MAX
    } else {
        Limb::MAX << (LIMB_BITS - used)
    }
}

/// `x` with limb `i` replaced by `value`, kept normalized.
pub fn with_limb(x: &Float, i: usize, value: Limb) -> Float {
    let mut limbs = x.limbs().to_vec();
    let mut v = value;
    if i == limbs.len() - 1 {
        v &= last_mask(x.precision().bits());
    }
    if i == 0 {
        v |= 1 << (LIMB_BITS - 1);
    }
    limbs[i] = v;
    wide()
        .float_from_limbs(Sign::Pos, x.exponent(), x.precision(), limbs)
        .unwrap()
}
