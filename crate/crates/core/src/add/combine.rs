use std::fmt;

use thiserror::Error;

use crate::rounding::RoundSticky;

use super::scan::ErrorClass;

/// One of the ten reachable `(r_t, f, ε)` combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CaseRow {
    pub r_t: bool,
    pub f: bool,
    pub class: ErrorClass,
}

impl CaseRow {
    /// 1-based row number, ordered by `r_t`, then `f`, then `ε`.
    pub fn index(&self) -> u8 {
        use ErrorClass::*;
        let within = match (self.f, self.class) {
            (false, EqZero) => 1,
            (false, GtZeroLtU) => 2,
            (true, GtZeroLtU) => 3,
            (true, EqU) => 4,
            (true, GtU) => 5,
            _ => 0,
        };
        within + if self.r_t { 5 } else { 0 }
    }
}

impl fmt::Display for CaseRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r_t={} f={} eps{}",
            self.r_t as u8,
            self.f as u8,
            self.class.label(self.f)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("unreachable main-term combination r_t={} f={} eps{}", .0.r_t as u8, .0.f as u8, .0.class.label(.0.f))]
pub struct InvalidCombination(pub CaseRow);

/// Final rounding and sticky bits, plus whether a 1 must first be carried
/// into the `p`-bit mantissa.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Combined {
    pub rs: RoundSticky,
    pub carry: bool,
}

/// Folds the error class into the main term's rounding and following bits.
///
/// With `f = 1` and `ε >= u`, a 1 is added at bit `p + 1`; when `r_t = 1`
/// that addition carries into the mantissa.
pub fn combine_rfe(r_t: bool, f: bool, class: ErrorClass) -> Result<Combined, InvalidCombination> {
    use ErrorClass::*;
    let (r, s, carry) = match (r_t, f, class) {
        (r_t, false, EqZero) => (r_t, false, false),
        (r_t, false, GtZeroLtU) => (r_t, true, false),
        (r_t, true, GtZeroLtU) => (r_t, true, false),
        (false, true, EqU) => (true, false, false),
        (false, true, GtU) => (true, true, false),
        (true, true, EqU) => (false, false, true),
        (true, true, GtU) => (false, true, true),
        _ => return Err(InvalidCombination(CaseRow { r_t, f, class })),
    };
    Ok(Combined {
        rs: RoundSticky::new(r, s),
        carry,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let c = combine_rfe(false, true, ErrorClass::EqU).unwrap();
        assert_eq!((c.rs, c.carry), (RoundSticky::new(true, false), false));
        let c = combine_rfe(true, true, ErrorClass::EqU).unwrap();
        assert_eq!((c.rs, c.carry), (RoundSticky::new(false, false), true));
        let c = combine_rfe(false, false, ErrorClass::EqZero).unwrap();
        assert_eq!((c.rs, c.carry), (RoundSticky::new(false, false), false));
        let c = combine_rfe(true, false, ErrorClass::GtZeroLtU).unwrap();
        assert_eq!((c.rs, c.carry), (RoundSticky::new(true, true), false));
    }

    #[test]
    fn unreachable_rows_are_rejected() {
        for r_t in [false, true] {
            assert!(combine_rfe(r_t, false, ErrorClass::EqU).is_err());
            assert!(combine_rfe(r_t, false, ErrorClass::GtU).is_err());
            assert!(combine_rfe(r_t, true, ErrorClass::EqZero).is_err());
        }
        let err = combine_rfe(true, true, ErrorClass::EqZero).unwrap_err();
        assert_eq!(
            err.to_string(),
            "unreachable main-term combination r_t=1 f=1 eps=0"
        );
    }

    #[test]
    fn row_indices_cover_one_to_ten() {
        use ErrorClass::*;
        let mut seen = Vec::new();
        for r_t in [false, true] {
            for (f, class) in [
                (false, EqZero),
                (false, GtZeroLtU),
                (true, GtZeroLtU),
                (true, EqU),
                (true, GtU),
            ] {
                seen.push(CaseRow { r_t, f, class }.index());
            }
        }
        assert_eq!(seen, (1..=10).collect::<Vec<u8>>());
    }
}
