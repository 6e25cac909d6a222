//! Intervals of the extended line.
//!
//! Endpoints are rationals or infinite; finite endpoints carry an
//! open/closed flag. Infinite ends are always open.

use crate::num::{midpoint, qfmt_opt, qi, Q};
use crate::{invalid, ExactError};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "qfmt_opt")]
    pub lo: Option<Q>,
    pub lo_closed: bool,
    #[serde(with = "qfmt_opt")]
    pub hi: Option<Q>,
    pub hi_closed: bool,
}

impl Interval {
    pub fn whole() -> Self {
        Interval { lo: None, lo_closed: false, hi: None, hi_closed: false }
    }

    /// `(-inf, b]`
    pub fn ray_le(b: Q) -> Self {
        Interval { lo: None, lo_closed: false, hi: Some(b), hi_closed: true }
    }

    /// `(-inf, b)`
    pub fn ray_lt(b: Q) -> Self {
        Interval { lo: None, lo_closed: false, hi: Some(b), hi_closed: false }
    }

    /// `[a, +inf)`
    pub fn ray_ge(a: Q) -> Self {
        Interval { lo: Some(a), lo_closed: true, hi: None, hi_closed: false }
    }

    /// `(a, +inf)`
    pub fn ray_gt(a: Q) -> Self {
        Interval { lo: Some(a), lo_closed: false, hi: None, hi_closed: false }
    }

    /// `[a, b]`
    pub fn closed(a: Q, b: Q) -> Self {
        Interval { lo: Some(a), lo_closed: true, hi: Some(b), hi_closed: true }
    }

    /// `(a, b)`
    pub fn open(a: Q, b: Q) -> Self {
        Interval { lo: Some(a), lo_closed: false, hi: Some(b), hi_closed: false }
    }

    /// `[a, b)`
    pub fn half_open(a: Q, b: Q) -> Self {
        Interval { lo: Some(a), lo_closed: true, hi: Some(b), hi_closed: false }
    }

    /// `(a, b]`
    pub fn half_open_left(a: Q, b: Q) -> Self {
        Interval { lo: Some(a), lo_closed: false, hi: Some(b), hi_closed: true }
    }

    /// The single point `[a, a]`.
    pub fn point(a: Q) -> Self {
        Interval { lo: Some(a.clone()), lo_closed: true, hi: Some(a), hi_closed: true }
    }

    pub fn validate(&self) -> Result<(), ExactError> {
        if self.lo.is_none() && self.lo_closed {
            return Err(invalid("an infinite endpoint cannot be closed"));
        }
        if self.hi.is_none() && self.hi_closed {
            return Err(invalid("an infinite endpoint cannot be closed"));
        }
        if self.is_empty() {
            return Err(invalid("empty interval"));
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some(a), Some(b)) => a > b || (a == b && !(self.lo_closed && self.hi_closed)),
            _ => false,
        }
    }

    pub fn is_point(&self) -> bool {
        matches!((&self.lo, &self.hi), (Some(a), Some(b)) if a == b)
            && self.lo_closed
            && self.hi_closed
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }

    pub fn is_whole(&self) -> bool {
        self.lo.is_none() && self.hi.is_none()
    }

    pub fn contains(&self, x: &Q) -> bool {
        if let Some(a) = &self.lo {
            if x < a || (x == a && !self.lo_closed) {
                return false;
            }
        }
        if let Some(b) = &self.hi {
            if x > b || (x == b && !self.hi_closed) {
                return false;
            }
        }
        true
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match (&self.lo, &other.lo) {
            (None, None) => (None, false),
            (Some(a), None) => (Some(a.clone()), self.lo_closed),
            (None, Some(b)) => (Some(b.clone()), other.lo_closed),
            (Some(a), Some(b)) => {
                if a > b {
                    (Some(a.clone()), self.lo_closed)
                } else if b > a {
                    (Some(b.clone()), other.lo_closed)
                } else {
                    (Some(a.clone()), self.lo_closed && other.lo_closed)
                }
            }
        };
        let (hi, hi_closed) = match (&self.hi, &other.hi) {
            (None, None) => (None, false),
            (Some(a), None) => (Some(a.clone()), self.hi_closed),
            (None, Some(b)) => (Some(b.clone()), other.hi_closed),
            (Some(a), Some(b)) => {
                if a < b {
                    (Some(a.clone()), self.hi_closed)
                } else if b < a {
                    (Some(b.clone()), other.hi_closed)
                } else {
                    (Some(a.clone()), self.hi_closed && other.hi_closed)
                }
            }
        };
        let out = Interval { lo, lo_closed, hi, hi_closed };
        if out.is_empty() {
            None
        } else {
            Some(out)
        }
    }

    /// Length of a bounded interval.
    pub fn length(&self) -> Option<Q> {
        match (&self.lo, &self.hi) {
            (Some(a), Some(b)) => Some(b - a),
            _ => None,
        }
    }

    /// A canonical rational in the interior: midpoint of a bounded interval,
    /// one unit inside a ray, zero on the whole line.
    pub fn canonical_point(&self) -> Q {
        match (&self.lo, &self.hi) {
            (Some(a), Some(b)) => midpoint(a, b),
            (Some(a), None) => a + qi(1),
            (None, Some(b)) => b - qi(1),
            (None, None) => qi(0),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            Some(a) => write!(f, "{}{}", if self.lo_closed { "[" } else { "(" }, a)?,
            None => write!(f, "(-inf")?,
        }
        write!(f, ", ")?;
        match &self.hi {
            Some(b) => write!(f, "{}{}", b, if self.hi_closed { "]" } else { ")" }),
            None => write!(f, "+inf)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qq;

    #[test]
    fn membership_respects_flags() {
        let iv = Interval::half_open(qi(0), qi(1));
        assert!(iv.contains(&qi(0)));
        assert!(iv.contains(&qq(1, 2)));
        assert!(!iv.contains(&qi(1)));
        let ray = Interval::ray_le(qi(3));
        assert!(ray.contains(&qi(3)));
        assert!(ray.contains(&qi(-100)));
        assert!(!ray.contains(&qq(7, 2)));
    }

    #[test]
    fn intersection_picks_tighter_bounds() {
        let a = Interval::ray_le(qi(3));
        let b = Interval::ray_ge(qi(0));
        let c = a.intersect(&b).unwrap();
        assert_eq!(c, Interval::closed(qi(0), qi(3)));
        assert!(Interval::ray_lt(qi(0)).intersect(&Interval::ray_gt(qi(0))).is_none());
        let p = Interval::ray_le(qi(0)).intersect(&Interval::ray_ge(qi(0))).unwrap();
        assert!(p.is_point());
    }

    #[test]
    fn canonical_points_land_inside() {
        for iv in [
            Interval::whole(),
            Interval::ray_le(qi(2)),
            Interval::ray_gt(qi(5)),
            Interval::open(qi(0), qi(1)),
        ] {
            assert!(iv.contains(&iv.canonical_point()));
        }
    }
}
