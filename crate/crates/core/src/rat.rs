//! Exact rational arithmetic helpers.
//!
//! Every rational that leaves the crate (JSON reports, CLI tables) is emitted
//! as a `{num, den}` pair in lowest terms with a positive denominator, never
//! as a float.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Exact rational used throughout the crate.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

/// Ceiling of a rational, as a bigint.
pub fn ceil_big(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

/// Ceiling of a rational that is known to fit in an `i64`.
pub fn ceil_i64(r: &Rat) -> i64 {
    ceil_big(r).to_i64().expect("ceiling out of i64 range")
}

pub fn max_rat(a: Rat, b: Rat) -> Rat {
    if a >= b {
        a
    } else {
        b
    }
}

pub fn min_rat(a: Rat, b: Rat) -> Rat {
    if a <= b {
        a
    } else {
        b
    }
}

/// Sign of a rational as -1, 0, +1.
pub fn signum(r: &Rat) -> i64 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Serialize a rational as `{"num": .., "den": ..}` with `den > 0`.
///
/// Numerator and denominator are emitted as JSON numbers when they fit an
/// `i64` and as decimal strings otherwise, so exactness is never lost.
pub fn serialize_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    JsonRat::from(r).serialize(s)
}

/// As [`serialize_rat`], with `null` for `None`.
pub fn serialize_opt_rat<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => JsonRat::from(r).serialize(s),
        None => s.serialize_none(),
    }
}

/// JSON view of a rational: `{"num": .., "den": ..}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonRat {
    pub num: BigInt,
    pub den: BigInt,
}

impl From<&Rat> for JsonRat {
    fn from(r: &Rat) -> Self {
        JsonRat {
            num: r.numer().clone(),
            den: r.denom().clone(),
        }
    }
}

impl Serialize for JsonRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rat", 2)?;
        serialize_bigint_field(&mut st, "num", &self.num)?;
        serialize_bigint_field(&mut st, "den", &self.den)?;
        st.end()
    }
}

fn serialize_bigint_field<S: SerializeStruct>(
    st: &mut S,
    key: &'static str,
    v: &BigInt,
) -> Result<(), S::Error> {
    if let Some(i) = v.to_i64() {
        st.serialize_field(key, &i)
    } else {
        st.serialize_field(key, &v.to_string())
    }
}

/// Render a rational for table output: integer when integral, else `p/q`.
pub fn display_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(display_rat(&rat(9, 3)), "3");
        assert_eq!(display_rat(&rat(-3, 2)), "-3/2");
    }

    #[test]
    fn ceil_matches_integer_division() {
        assert_eq!(ceil_i64(&rat(9, 2)), 5);
        assert_eq!(ceil_i64(&rat(-9, 2)), -4);
        assert_eq!(ceil_i64(&rat_int(7)), 7);
    }

    #[test]
    fn json_form_is_num_den() {
        let v = serde_json::to_value(JsonRat::from(&rat(-3, 4))).unwrap();
        assert_eq!(v, serde_json::json!({"num": -3, "den": 4}));
    }
}
