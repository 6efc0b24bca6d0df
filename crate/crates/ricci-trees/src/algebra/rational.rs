use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::AlgebraError;

/// Exact rational scalar.
///
/// `BigRational` keeps every value in lowest terms with a positive
/// denominator, which is exactly the normal form the rest of the crate
/// assumes when comparing values or hashing printed output.
pub type Rational = BigRational;

/// Shorthand for a rational from small integers. Panics on `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `-p`, or `p/q` (ASCII digits, optional leading sign).
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let bad = || AlgebraError::MalformedRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    let (num_str, den_str) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num_str.parse().map_err(|_| bad())?;
    let den: BigInt = den_str.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}
