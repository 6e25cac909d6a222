//! Tail laws: the exact behavior of a piecewise-linear homeomorphism on a
//! ray.
//!
//! A tail law is a globally defined increasing homeomorphism of the line of
//! one of two shapes: affine with positive slope, or periodic, meaning a
//! piecewise-linear graph commuting with translation by a fixed positive
//! rational period. A map adopts its tail laws outside its breakpoint
//! window, so composing and inverting maps reduces on the rays to the small
//! algebra implemented here. Compositions that leave this class (an affine
//! law of slope other than one against a periodic law) are reported as
//! having no piecewise-linear form; callers fall back to evaluation
//! programs.

use crate::num::{floor_int, format_q, lcm_pos, qfmt, Q};
use crate::{invalid, ExactError};
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;

/// A node of a piecewise-linear graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Node {
    pub x: Q,
    pub y: Q,
}

impl Node {
    pub fn new(x: Q, y: Q) -> Self {
        Node { x, y }
    }
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (format_q(&self.x), format_q(&self.y)).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (x, y): (String, String) = Deserialize::deserialize(d)?;
        Ok(Node {
            x: crate::num::parse_q(&x).map_err(D::Error::custom)?,
            y: crate::num::parse_q(&y).map_err(D::Error::custom)?,
        })
    }
}

/// Evaluate a piecewise-linear node list at `x`, which must lie between the
/// first and last node.
pub(crate) fn pl_eval_nodes(nodes: &[Node], x: &Q) -> Q {
    debug_assert!(!nodes.is_empty());
    debug_assert!(*x >= nodes[0].x && *x <= nodes[nodes.len() - 1].x);
    if nodes.len() == 1 {
        return nodes[0].y.clone();
    }
    let idx = nodes.partition_point(|n| n.x <= *x);
    if idx == 0 {
        return nodes[0].y.clone();
    }
    let i = (idx - 1).min(nodes.len() - 2);
    let a = &nodes[i];
    let b = &nodes[i + 1];
    &a.y + (&b.y - &a.y) * (x - &a.x) / (&b.x - &a.x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailLaw {
    Affine {
        #[serde(with = "qfmt")]
        slope: Q,
        #[serde(with = "qfmt")]
        intercept: Q,
    },
    Periodic {
        #[serde(with = "qfmt")]
        anchor: Q,
        #[serde(with = "qfmt")]
        period: Q,
        /// Graph on `[anchor, anchor + period]`; the last node repeats the
        /// first shifted by the period.
        pattern: Vec<Node>,
    },
}

impl TailLaw {
    pub fn identity() -> Self {
        TailLaw::Affine { slope: Q::one(), intercept: Q::from_integer(0.into()) }
    }

    pub fn translation(c: Q) -> Self {
        TailLaw::Affine { slope: Q::one(), intercept: c }
    }

    pub fn affine(slope: Q, intercept: Q) -> Self {
        TailLaw::Affine { slope, intercept }
    }

    pub fn validate(&self) -> Result<(), ExactError> {
        use num_traits::Signed;
        match self {
            TailLaw::Affine { slope, .. } => {
                if !slope.is_positive() {
                    return Err(invalid("affine tail needs positive slope"));
                }
                Ok(())
            }
            TailLaw::Periodic { anchor, period, pattern } => {
                if !period.is_positive() {
                    return Err(invalid("periodic tail needs positive period"));
                }
                if pattern.len() < 2 {
                    return Err(invalid("periodic pattern needs at least two nodes"));
                }
                for w in pattern.windows(2) {
                    if w[0].x >= w[1].x || w[0].y >= w[1].y {
                        return Err(invalid(
                            "periodic pattern must increase strictly in both coordinates",
                        ));
                    }
                }
                let first = &pattern[0];
                let last = &pattern[pattern.len() - 1];
                if first.x != *anchor {
                    return Err(invalid("periodic pattern must start at the anchor"));
                }
                if last.x != anchor + period {
                    return Err(invalid("periodic pattern must span one period"));
                }
                if last.y != &first.y + period {
                    return Err(invalid("periodic pattern must close up: last y = first y + period"));
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, x: &Q) -> Q {
        match self {
            TailLaw::Affine { slope, intercept } => slope * x + intercept,
            TailLaw::Periodic { anchor, period, pattern } => {
                let k = floor_int(&((x - anchor) / period));
                let off = Q::from_integer(k) * period;
                let t = x - &off;
                pl_eval_nodes(pattern, &t) + off
            }
        }
    }

    pub fn inverse(&self) -> TailLaw {
        match self {
            TailLaw::Affine { slope, intercept } => TailLaw::Affine {
                slope: Q::one() / slope,
                intercept: -intercept / slope,
            },
            TailLaw::Periodic { period, pattern, .. } => {
                let flipped: Vec<Node> =
                    pattern.iter().map(|n| Node::new(n.y.clone(), n.x.clone())).collect();
                TailLaw::Periodic {
                    anchor: flipped[0].x.clone(),
                    period: period.clone(),
                    pattern: flipped,
                }
            }
        }
    }

    /// Composition `f . g` (apply `g` first) when the result stays in the
    /// tail-law class, `None` otherwise.
    pub fn compose(f: &TailLaw, g: &TailLaw) -> Option<TailLaw> {
        use TailLaw::*;
        match (f, g) {
            (Affine { slope: a1, intercept: b1 }, Affine { slope: a2, intercept: b2 }) => {
                Some(Affine { slope: a1 * a2, intercept: a1 * b2 + b1 })
            }
            (Affine { slope, intercept }, Periodic { anchor, period, pattern })
                if slope.is_one() =>
            {
                Some(Periodic {
                    anchor: anchor.clone(),
                    period: period.clone(),
                    pattern: pattern
                        .iter()
                        .map(|n| Node::new(n.x.clone(), &n.y + intercept))
                        .collect(),
                })
            }
            (Periodic { anchor, period, pattern }, Affine { slope, intercept })
                if slope.is_one() =>
            {
                Some(Periodic {
                    anchor: anchor - intercept,
                    period: period.clone(),
                    pattern: pattern
                        .iter()
                        .map(|n| Node::new(&n.x - intercept, n.y.clone()))
                        .collect(),
                })
            }
            (Periodic { period: pf, .. }, Periodic { anchor: ag, period: pg, .. }) => {
                let l = lcm_pos(pf, pg);
                let t0 = ag.clone();
                let t1 = &t0 + &l;
                let ginv = g.inverse();
                let mut xs: BTreeSet<Q> = BTreeSet::new();
                for x in g.break_xs_in(&t0, &t1) {
                    xs.insert(x);
                }
                let g0 = g.eval(&t0);
                let g1 = g.eval(&t1);
                for z in f.break_xs_in(&g0, &g1) {
                    xs.insert(ginv.eval(&z));
                }
                let mut pattern = Vec::with_capacity(xs.len() + 2);
                pattern.push(Node::new(t0.clone(), f.eval(&g0)));
                for x in xs {
                    if x > t0 && x < t1 {
                        let y = f.eval(&g.eval(&x));
                        pattern.push(Node::new(x, y));
                    }
                }
                pattern.push(Node::new(t1, f.eval(&g1)));
                Some(Periodic { anchor: t0, period: l, pattern })
            }
            _ => None,
        }
    }

    /// Range of the displacement `law(x) - x` when it is bounded: exact for
    /// translations and periodic laws, `None` for other affine laws.
    pub fn displacement_range(&self) -> Option<(Q, Q)> {
        match self {
            TailLaw::Affine { slope, intercept } if slope.is_one() => {
                Some((intercept.clone(), intercept.clone()))
            }
            TailLaw::Affine { .. } => None,
            TailLaw::Periodic { pattern, .. } => {
                let mut lo = &pattern[0].y - &pattern[0].x;
                let mut hi = lo.clone();
                for n in &pattern[1..] {
                    let d = &n.y - &n.x;
                    if d < lo {
                        lo = d.clone();
                    }
                    if d > hi {
                        hi = d;
                    }
                }
                Some((lo, hi))
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        use num_traits::Zero;
        match self.displacement_range() {
            Some((lo, hi)) => lo.is_zero() && hi.is_zero(),
            None => false,
        }
    }

    pub fn period(&self) -> Option<&Q> {
        match self {
            TailLaw::Periodic { period, .. } => Some(period),
            TailLaw::Affine { .. } => None,
        }
    }

    /// Slope-change abscissas strictly inside `(a, b)`.
    pub fn break_xs_in(&self, a: &Q, b: &Q) -> Vec<Q> {
        match self {
            TailLaw::Affine { .. } => Vec::new(),
            TailLaw::Periodic { period, pattern, .. } => {
                use crate::num::Z;
                let mut xs = BTreeSet::new();
                for n in &pattern[..pattern.len() - 1] {
                    // k with a < n.x + k*period < b
                    let mut k = floor_int(&((a - &n.x) / period)) + Z::one();
                    let k_max = crate::num::ceil_int(&((b - &n.x) / period)) - Z::one();
                    while k <= k_max {
                        xs.insert(&n.x + Q::from_integer(k.clone()) * period);
                        k += Z::one();
                    }
                }
                xs.into_iter().collect()
            }
        }
    }

    /// Slope of the linear piece touching `x` from the given side.
    pub fn slope_at(&self, x: &Q, from_left: bool) -> Q {
        match self {
            TailLaw::Affine { slope, .. } => slope.clone(),
            TailLaw::Periodic { anchor, period, pattern } => {
                let k = floor_int(&((x - anchor) / period));
                let off = Q::from_integer(k) * period;
                let t = x - &off;
                // index of the piece [x_i, x_{i+1}] holding t on the wanted side
                let idx = if from_left {
                    pattern.partition_point(|n| n.x < t)
                } else {
                    pattern.partition_point(|n| n.x <= t)
                };
                let i = if from_left {
                    if idx == 0 {
                        // t == anchor from the left: wrap to the last piece
                        pattern.len() - 1
                    } else {
                        idx
                    }
                } else {
                    idx.min(pattern.len() - 1).max(1)
                };
                let a = &pattern[i - 1];
                let b = &pattern[i];
                (&b.y - &a.y) / (&b.x - &a.x)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{qi, qq};

    fn saw(period: i64) -> TailLaw {
        // slope 1/2 then 3/2 within each period
        let p = qi(period);
        let half = &p / qi(2);
        TailLaw::Periodic {
            anchor: qi(0),
            period: p.clone(),
            pattern: vec![
                Node::new(qi(0), qi(0)),
                Node::new(half.clone(), &half / qi(2)),
                Node::new(p.clone(), p),
            ],
        }
    }

    #[test]
    fn periodic_eval_both_directions() {
        let law = saw(2);
        law.validate().unwrap();
        assert_eq!(law.eval(&qi(0)), qi(0));
        assert_eq!(law.eval(&qq(1, 2)), qq(1, 4));
        assert_eq!(law.eval(&qi(2)), qi(2));
        assert_eq!(law.eval(&qq(5, 2)), qq(9, 4));
        assert_eq!(law.eval(&qq(-3, 2)), qq(-7, 4));
        assert_eq!(law.eval(&qi(-2)), qi(-2));
    }

    #[test]
    fn periodic_inverse_round_trips() {
        let law = saw(2);
        let inv = law.inverse();
        inv.validate().unwrap();
        for x in [qi(-3), qq(-1, 3), qi(0), qq(1, 2), qq(7, 5), qi(9)] {
            assert_eq!(inv.eval(&law.eval(&x)), x);
        }
    }

    #[test]
    fn translation_against_periodic_composes() {
        let law = saw(2);
        let t = TailLaw::translation(qi(3));
        let c = TailLaw::compose(&t, &law).unwrap();
        c.validate().unwrap();
        assert_eq!(c.eval(&qq(1, 2)), qq(13, 4));
        let c2 = TailLaw::compose(&law, &t).unwrap();
        c2.validate().unwrap();
        assert_eq!(c2.eval(&qq(1, 2)), law.eval(&qq(7, 2)));
    }

    #[test]
    fn periodic_pair_composes_on_lcm_period() {
        let a = saw(2);
        let b = saw(3);
        let c = TailLaw::compose(&a, &b).unwrap();
        c.validate().unwrap();
        assert_eq!(c.period(), Some(&qi(6)));
        for x in [qi(0), qq(1, 3), qq(5, 4), qi(2), qq(19, 7), qi(-5)] {
            assert_eq!(c.eval(&x), a.eval(&b.eval(&x)));
        }
    }

    #[test]
    fn affine_slope_against_periodic_has_no_pl_form() {
        let a = TailLaw::affine(qi(2), qi(0));
        assert!(TailLaw::compose(&a, &saw(2)).is_none());
        assert!(TailLaw::compose(&saw(2), &a).is_none());
    }

    #[test]
    fn displacement_ranges() {
        assert_eq!(saw(2).displacement_range(), Some((qq(-1, 2), qi(0))));
        assert_eq!(TailLaw::translation(qi(5)).displacement_range(), Some((qi(5), qi(5))));
        assert_eq!(TailLaw::affine(qi(2), qi(0)).displacement_range(), None);
        assert!(TailLaw::identity().is_identity());
        assert!(!saw(2).is_identity());
    }

    #[test]
    fn break_listing_is_strict_interior() {
        let law = saw(2);
        let xs = law.break_xs_in(&qi(0), &qi(4));
        assert_eq!(xs, vec![qi(1), qi(2), qi(3)]);
        let xs = law.break_xs_in(&qq(-1, 2), &qq(5, 2));
        assert_eq!(xs, vec![qi(0), qi(1), qi(2)]);
    }

    #[test]
    fn side_slopes() {
        let law = saw(2);
        assert_eq!(law.slope_at(&qi(0), false), qq(1, 2));
        assert_eq!(law.slope_at(&qi(0), true), qq(3, 2));
        assert_eq!(law.slope_at(&qi(1), false), qq(3, 2));
        assert_eq!(law.slope_at(&qi(1), true), qq(1, 2));
        assert_eq!(law.slope_at(&qq(1, 2), true), qq(1, 2));
    }
}
