//! Exact rationals rendered as `p/q` strings.
//!
//! Every rational the crate emits is in lowest terms with a positive
//! denominator; integers are rendered without the `/1` suffix. The same
//! grammar is accepted back on input, so emitted documents round-trip.

use num_traits::{One, Signed, Zero};

use crate::{Error, Int, Rat, Result};

/// Shorthand for a [`Int`] from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand for a [`Rat`] from a machine-integer fraction.
///
/// ```
/// use nck3::rat;
/// assert_eq!(nck3::rat_to_string(&rat(4, -6)), "-2/3");
/// ```
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Renders `r` as `p/q` in lowest terms (`q > 0`), or plain `p` for integers.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the `p/q` grammar produced by [`rat_to_string`].
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let bad = || Error::InvalidRational(s.to_string());
    let mut parts = s.splitn(2, '/');
    let numer: Int = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let denom: Int = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => Int::from(1),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(numer, denom))
}

/// Serde adapter serializing a [`Rat`] through the `p/q` grammar.
pub mod serde_rat {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        rat_from_str(&s).map_err(de::Error::custom)
    }
}

/// Serde adapter for sequences of rationals.
pub mod serde_rat_vec {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rat_to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings.iter().map(|s| rat_from_str(s).map_err(de::Error::custom)).collect()
    }
}

/// Largest integer `t` with `(t + shift)^2 <= bound`, for `bound >= 0`.
///
/// Used by the exact ellipsoid enumeration: the admissible range of a
/// coordinate is an interval with irrational endpoints, and this pins its
/// integer endpoints without leaving the rational field.
pub fn max_int_in_sqrt_interval(shift: &Rat, bound: &Rat) -> Int {
    assert!(!bound.is_negative());
    // initial overestimate of sqrt(bound) via integer sqrt of p*q / q
    let p = bound.numer().clone();
    let q = bound.denom().clone();
    let root = (p * &q).sqrt() + 1;
    let upper = Rat::from(root) / Rat::from(q) - shift;
    let mut t = upper.floor().to_integer();
    loop {
        let val = (Rat::from(t.clone()) + shift) * (Rat::from(t.clone()) + shift);
        if val <= *bound {
            return t;
        }
        t -= 1;
    }
}

/// Smallest integer `t` with `(t + shift)^2 <= bound`, for `bound >= 0`.
pub fn min_int_in_sqrt_interval(shift: &Rat, bound: &Rat) -> Int {
    let neg_shift = -shift.clone();
    -max_int_in_sqrt_interval(&neg_shift, bound)
}
