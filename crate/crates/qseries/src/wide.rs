//! Wide signed integers backing the exact coefficient ring.
//!
//! Exact coefficients are 256-bit signed integers. Quotient series such as
//! 1/f1^4 reach ~234 bits near order 1000, so 128 bits is not enough for the
//! identity checks this crate runs; 256 bits leaves comfortable headroom.
//! Division accumulates dot products in 512 bits so that an in-range quotient
//! is never rejected because of partial-sum growth.

use bnum::cast::As;

pub use bnum::types::I256;
pub(crate) use bnum::types::I512;

/// Shorthand for building an exact coefficient from a machine integer.
pub fn wide(x: i64) -> I256 {
    I256::from(x)
}

/// Saturating conversion for report payloads.
///
/// Residues of the modular ring always fit in an i128; exact coefficients
/// beyond the i128 range are clamped to its endpoints.
pub fn to_i128_saturating(x: I256) -> i128 {
    let lo = I256::from(i128::MIN);
    let hi = I256::from(i128::MAX);
    if x < lo {
        i128::MIN
    } else if x > hi {
        i128::MAX
    } else {
        x.as_()
    }
}

pub(crate) fn widen(x: I256) -> I512 {
    x.as_()
}

/// Narrow a 512-bit accumulator back to a coefficient, or report overflow.
pub(crate) fn narrow(x: I512) -> Option<I256> {
    if x < widen(I256::MIN) || x > widen(I256::MAX) {
        None
    } else {
        Some(x.as_())
    }
}
