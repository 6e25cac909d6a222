//! Exact rational scalars and dyadic helpers.
//!
//! The serialized form of a rational is the plain fraction string, `"3"` or
//! `"-7/2"`, and both forms are accepted on input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use std::cmp::Ordering;

pub type Q = BigRational;
pub type Z = BigInt;

/// Rational from a machine integer.
pub fn qi(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

/// Rational `n/d` from machine integers.
pub fn qq(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

/// Canonical fraction string.
pub fn format_q(x: &Q) -> String {
    x.to_string()
}

/// Parse `"p"` or `"p/q"`.
pub fn parse_q(s: &str) -> Result<Q, String> {
    s.trim()
        .parse::<Q>()
        .map_err(|e| format!("bad rational {s:?}: {e}"))
}

/// Largest integer `<= x`.
pub fn floor_int(x: &Q) -> Z {
    x.floor().to_integer()
}

/// Smallest integer `>= x`.
pub fn ceil_int(x: &Q) -> Z {
    x.ceil().to_integer()
}

/// `2^e` as a rational, for any sign of `e`.
pub fn pow2(e: i64) -> Q {
    if e >= 0 {
        Q::from_integer(Z::one() << e as u64)
    } else {
        Q::new(Z::one(), Z::one() << (-e) as u64)
    }
}

/// Exact `floor(log2 x)` for a positive rational.
pub fn floor_log2(x: &Q) -> i64 {
    assert!(x.is_positive(), "floor_log2 needs a positive argument");
    let p = x.numer();
    let q = x.denom();
    let mut e = p.bits() as i64 - q.bits() as i64;
    while cmp_pow2(e, p, q) == Ordering::Greater {
        e -= 1;
    }
    while cmp_pow2(e + 1, p, q) != Ordering::Greater {
        e += 1;
    }
    e
}

// Sign of 2^e - p/q, with q > 0.
fn cmp_pow2(e: i64, p: &Z, q: &Z) -> Ordering {
    if e >= 0 {
        (q.clone() << e as u64).cmp(p)
    } else {
        q.cmp(&(p.clone() << (-e) as u64))
    }
}

/// Least positive rational that is an integer multiple of both arguments.
pub fn lcm_pos(a: &Q, b: &Q) -> Q {
    assert!(a.is_positive() && b.is_positive());
    Q::new(a.numer().lcm(b.numer()), a.denom().gcd(b.denom()))
}

/// Sign as -1, 0, 1.
pub fn sign_q(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Midpoint of two rationals.
pub fn midpoint(a: &Q, b: &Q) -> Q {
    (a + b) / qi(2)
}

/// Serde adapter: rational as a fraction string.
pub mod qfmt {
    use super::{format_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: optional rational as an optional fraction string.
pub mod qfmt_opt {
    use super::{format_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref().map(format_q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|v| parse_q(&v).map_err(serde::de::Error::custom))
            .transpose()
    }
}
