//! Exact rational arithmetic helpers.
//!
//! Everything in this crate computes over `Rat = Ratio<BigInt>`; no floating
//! point is used anywhere.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Rat = Ratio<BigInt>;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from numerator/denominator machine integers.
pub fn ratq(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Render a rational as `num/den` (or just `num` when the denominator is 1).
pub fn rat_str(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `num`, `num/den`, or a signed variant thereof.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().ok()?;
        let den: BigInt = d.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Rat::new(num, den))
    } else {
        let num: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(num))
    }
}

/// Nonzero test that reads better at call sites.
pub fn is_nonzero(x: &Rat) -> bool {
    !x.is_zero()
}

/// Sign of a rational: -1, 0 or 1.
pub fn sign(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
