//! Correctly rounded addition of positive multiple-precision binary floats.
//!
//! [`add_positive`] returns the rounded sum together with its ternary value
//! (the sign of `result - (x + y)`), reading only as many trailing bits of the
//! operands as the rounding decision needs. [`oracle`] holds a brute-force
//! reference built on arbitrary-size integers.
//!
//! ```
//! use xadd_core::{add_positive, make_float, Precision, RoundingMode, Sign, Ternary};
//!
//! let x = make_float(Sign::Pos, 0, 4, "1011").unwrap();
//! let y = make_float(Sign::Pos, -3, 3, "111").unwrap();
//! let out = add_positive(&x, &y, Precision::new(4).unwrap(), RoundingMode::NearestEven).unwrap();
//! assert_eq!(out.result.to_string(), "0.1101e0");
//! assert_eq!(out.ternary, Ternary::Above);
//! ```

pub mod add;
pub mod cli;
pub mod float;
pub mod oracle;
pub mod rounding;
pub mod textio;

pub use add::{add_positive, add_positive_in, AddError, AddOutcome, ScanStats};
pub use float::{
    make_float, Context, Float, FloatError, Limb, Precision, RoundingMode, Sign, Ternary, LIMB_BITS,
};
pub use rounding::{decide_round, round_to_prec, round_to_prec_in, Overflow, Rounded};
