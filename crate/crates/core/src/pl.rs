//! Piecewise-linear homeomorphisms of the line with finitely many
//! breakpoints and tail laws on both rays.
//!
//! The graph is stored as strictly increasing nodes; to the left of the
//! first node and to the right of the last the map follows its tail laws.
//! Everything here is exact: composition, inversion, splicing, and
//! pointwise envelopes all return maps of the same class, except for
//! compositions whose tails clash, which the caller turns into evaluation
//! programs.

use crate::num::{qi, sign_q, Q};
use crate::tail::{pl_eval_nodes, Node, TailLaw};
use crate::{invalid, ExactError};
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlHomeo {
    #[serde(rename = "breakpoints")]
    breaks: Vec<Node>,
    #[serde(rename = "left_tail")]
    left: TailLaw,
    #[serde(rename = "right_tail")]
    right: TailLaw,
}

impl PlHomeo {
    pub fn new(breaks: Vec<Node>, left: TailLaw, right: TailLaw) -> Result<Self, ExactError> {
        let map = PlHomeo { breaks, left, right };
        map.validate()?;
        Ok(map)
    }

    pub fn validate(&self) -> Result<(), ExactError> {
        self.left.validate()?;
        self.right.validate()?;
        if self.breaks.is_empty() {
            if self.left != self.right {
                return Err(invalid("a map without breakpoints needs one tail law, not two"));
            }
            return Ok(());
        }
        for w in self.breaks.windows(2) {
            if w[0].x >= w[1].x || w[0].y >= w[1].y {
                return Err(invalid("breakpoints must increase strictly in both coordinates"));
            }
        }
        let first = &self.breaks[0];
        let last = &self.breaks[self.breaks.len() - 1];
        if self.left.eval(&first.x) != first.y {
            return Err(invalid("left tail law disagrees with the first breakpoint"));
        }
        if self.right.eval(&last.x) != last.y {
            return Err(invalid("right tail law disagrees with the last breakpoint"));
        }
        Ok(())
    }

    pub fn identity() -> Self {
        PlHomeo { breaks: Vec::new(), left: TailLaw::identity(), right: TailLaw::identity() }
    }

    pub fn translation(c: Q) -> Self {
        let law = TailLaw::translation(c);
        PlHomeo { breaks: Vec::new(), left: law.clone(), right: law }
    }

    pub fn affine(slope: Q, intercept: Q) -> Result<Self, ExactError> {
        let law = TailLaw::affine(slope, intercept);
        law.validate()?;
        Ok(PlHomeo { breaks: Vec::new(), left: law.clone(), right: law })
    }

    /// Graph through the given points, tail laws outside.
    pub fn interpolate(points: &[(Q, Q)], left: TailLaw, right: TailLaw) -> Result<Self, ExactError> {
        let breaks = points.iter().map(|(x, y)| Node::new(x.clone(), y.clone())).collect();
        PlHomeo::new(breaks, left, right)
    }

    pub fn breaks(&self) -> &[Node] {
        &self.breaks
    }

    pub fn left_tail(&self) -> &TailLaw {
        &self.left
    }

    pub fn right_tail(&self) -> &TailLaw {
        &self.right
    }

    pub fn first_x(&self) -> Option<&Q> {
        self.breaks.first().map(|n| &n.x)
    }

    pub fn last_x(&self) -> Option<&Q> {
        self.breaks.last().map(|n| &n.x)
    }

    pub fn eval(&self, x: &Q) -> Q {
        if self.breaks.is_empty() {
            return self.left.eval(x);
        }
        let x0 = &self.breaks[0].x;
        let xn = &self.breaks[self.breaks.len() - 1].x;
        if x < x0 {
            self.left.eval(x)
        } else if x > xn {
            self.right.eval(x)
        } else {
            pl_eval_nodes(&self.breaks, x)
        }
    }

    pub fn inverse(&self) -> PlHomeo {
        PlHomeo {
            breaks: self.breaks.iter().map(|n| Node::new(n.y.clone(), n.x.clone())).collect(),
            left: self.left.inverse(),
            right: self.right.inverse(),
        }
    }

    /// Slope-change abscissas strictly inside `(a, b)`, tail regions
    /// included.
    pub fn break_xs_in(&self, a: &Q, b: &Q) -> Vec<Q> {
        let mut xs: BTreeSet<Q> = BTreeSet::new();
        if self.breaks.is_empty() {
            for x in self.left.break_xs_in(a, b) {
                xs.insert(x);
            }
        } else {
            let x0 = self.breaks[0].x.clone();
            let xn = self.breaks[self.breaks.len() - 1].x.clone();
            for n in &self.breaks {
                if n.x > *a && n.x < *b {
                    xs.insert(n.x.clone());
                }
            }
            if *a < x0 {
                let ub = if *b < x0 { b.clone() } else { x0 };
                for x in self.left.break_xs_in(a, &ub) {
                    xs.insert(x);
                }
            }
            if *b > xn {
                let lb = if *a > xn { a.clone() } else { xn };
                for x in self.right.break_xs_in(&lb, b) {
                    xs.insert(x);
                }
            }
        }
        xs.into_iter().collect()
    }

    /// Exact graph nodes on `[a, b]`, endpoints included.
    pub fn nodes_on(&self, a: &Q, b: &Q) -> Vec<Node> {
        assert!(a <= b);
        let mut out = Vec::new();
        out.push(Node::new(a.clone(), self.eval(a)));
        for x in self.break_xs_in(a, b) {
            let y = self.eval(&x);
            out.push(Node::new(x, y));
        }
        if b > a {
            out.push(Node::new(b.clone(), self.eval(b)));
        }
        out
    }

    /// Slope of the linear piece touching `x` from the left.
    pub fn left_slope_at(&self, x: &Q) -> Q {
        self.slope_at(x, true)
    }

    /// Slope of the linear piece touching `x` from the right.
    pub fn right_slope_at(&self, x: &Q) -> Q {
        self.slope_at(x, false)
    }

    fn slope_at(&self, x: &Q, from_left: bool) -> Q {
        if self.breaks.is_empty() {
            return self.left.slope_at(x, from_left);
        }
        let x0 = &self.breaks[0].x;
        let xn = &self.breaks[self.breaks.len() - 1].x;
        if x < x0 || (x == x0 && from_left) {
            return self.left.slope_at(x, from_left);
        }
        if x > xn || (x == xn && !from_left) {
            return self.right.slope_at(x, from_left);
        }
        let idx = if from_left {
            self.breaks.partition_point(|n| n.x < *x)
        } else {
            self.breaks.partition_point(|n| n.x <= *x)
        };
        let i = idx.clamp(1, self.breaks.len() - 1);
        let a = &self.breaks[i - 1];
        let b = &self.breaks[i];
        (&b.y - &a.y) / (&b.x - &a.x)
    }

    /// Drop interior breakpoints that are collinear with their neighbors.
    pub fn normalize(&mut self) {
        if self.breaks.len() < 3 {
            return;
        }
        let mut out: Vec<Node> = vec![self.breaks[0].clone()];
        for i in 1..self.breaks.len() - 1 {
            let a = out.last().unwrap();
            let b = &self.breaks[i];
            let c = &self.breaks[i + 1];
            let lhs = (&c.y - &a.y) * (&b.x - &a.x);
            let rhs = (&b.y - &a.y) * (&c.x - &a.x);
            if lhs != rhs {
                out.push(b.clone());
            }
        }
        out.push(self.breaks.last().unwrap().clone());
        self.breaks = out;
    }

    /// Composition `f . g` (apply `g` first). Fails with `TailClash` when a
    /// tail pair has no piecewise-linear composition.
    pub fn compose(f: &PlHomeo, g: &PlHomeo) -> Result<PlHomeo, ExactError> {
        let left = TailLaw::compose(&f.left, &g.left).ok_or(ExactError::TailClash)?;
        let right = TailLaw::compose(&f.right, &g.right).ok_or(ExactError::TailClash)?;
        let ginv = g.inverse();
        let mut lo_c: Vec<Q> = Vec::new();
        let mut hi_c: Vec<Q> = Vec::new();
        if let Some(x) = g.first_x() {
            lo_c.push(x.clone());
        }
        if let Some(x) = g.last_x() {
            hi_c.push(x.clone());
        }
        if let Some(x) = f.first_x() {
            lo_c.push(ginv.eval(x));
        }
        if let Some(x) = f.last_x() {
            hi_c.push(ginv.eval(x));
        }
        if lo_c.is_empty() {
            return PlHomeo::new(Vec::new(), left, right);
        }
        let lo = lo_c.into_iter().min().unwrap();
        let hi = hi_c.into_iter().max().unwrap();
        let mut xs: BTreeSet<Q> = BTreeSet::new();
        xs.insert(lo.clone());
        xs.insert(hi.clone());
        for x in g.break_xs_in(&lo, &hi) {
            xs.insert(x);
        }
        let glo = g.eval(&lo);
        let ghi = g.eval(&hi);
        for z in f.break_xs_in(&glo, &ghi) {
            xs.insert(ginv.eval(&z));
        }
        let breaks = xs
            .into_iter()
            .map(|x| {
                let y = f.eval(&g.eval(&x));
                Node::new(x, y)
            })
            .collect();
        let mut h = PlHomeo::new(breaks, left, right)?;
        h.normalize();
        Ok(h)
    }

    /// The map equal to `f` on `(-inf, at]` and to `g` on `[at, +inf)`.
    /// Requires `f(at) = g(at)`.
    pub fn splice(f: &PlHomeo, g: &PlHomeo, at: &Q) -> Result<PlHomeo, ExactError> {
        let v = f.eval(at);
        let w = g.eval(at);
        if v != w {
            return Err(ExactError::Disagree(format!(
                "splice point {at} maps to {v} on one side and {w} on the other"
            )));
        }
        let lo = match f.first_x() {
            Some(x) if x < at => x.clone(),
            _ => at.clone(),
        };
        let hi = match g.last_x() {
            Some(x) if x > at => x.clone(),
            _ => at.clone(),
        };
        let mut breaks: Vec<Node> = Vec::new();
        for n in f.nodes_on(&lo, at) {
            if n.x <= *at {
                breaks.push(n);
            }
        }
        for n in g.nodes_on(at, &hi) {
            if n.x > *at {
                breaks.push(n);
            }
        }
        let mut h = PlHomeo::new(breaks, f.left.clone(), g.right.clone())?;
        h.normalize();
        Ok(h)
    }

    /// Pointwise minimum of two maps.
    pub fn envelope_min(f: &PlHomeo, g: &PlHomeo) -> Result<PlHomeo, ExactError> {
        envelope(f, g, true)
    }

    /// Pointwise maximum of two maps.
    pub fn envelope_max(f: &PlHomeo, g: &PlHomeo) -> Result<PlHomeo, ExactError> {
        envelope(f, g, false)
    }

    /// Structural identity test; sound because tails and interior pieces
    /// are compared as functions.
    pub fn is_identity(&self) -> bool {
        self.breaks.iter().all(|n| n.x == n.y)
            && self.left.is_identity()
            && self.right.is_identity()
    }

    /// n-fold composition power; negative n uses the inverse.
    pub fn power(&self, n: i64) -> Result<PlHomeo, ExactError> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = PlHomeo::identity();
        for _ in 0..n.unsigned_abs() {
            out = PlHomeo::compose(&base, &out)?;
        }
        Ok(out)
    }
}

enum Side {
    Left,
    Right,
}

// Envelope law for one side plus the abscissa beyond which it is in force.
fn tail_envelope(
    side: Side,
    a: &TailLaw,
    b: &TailLaw,
    take_min: bool,
) -> (TailLaw, Option<Q>) {
    use TailLaw::*;
    match (a, b) {
        (Affine { slope: s1, intercept: c1 }, Affine { slope: s2, intercept: c2 }) => {
            if s1 == s2 {
                let a_wins = if take_min { c1 <= c2 } else { c1 >= c2 };
                return (if a_wins { a.clone() } else { b.clone() }, None);
            }
            let cross = (c2 - c1) / (s1 - s2);
            // At +inf the smaller slope lies below; at -inf the larger does.
            let a_below = match side {
                Side::Right => s1 < s2,
                Side::Left => s1 > s2,
            };
            let a_wins = a_below == take_min;
            (if a_wins { a.clone() } else { b.clone() }, Some(cross))
        }
        (Affine { slope, .. }, Periodic { .. }) if slope.is_one() => {
            (merge_periodic(b, a, take_min), None)
        }
        (Periodic { .. }, Affine { slope, .. }) if slope.is_one() => {
            (merge_periodic(a, b, take_min), None)
        }
        (Periodic { .. }, Periodic { .. }) => (merge_periodic_pair(a, b, take_min), None),
        (Affine { slope, intercept }, Periodic { .. }) => {
            affine_periodic_envelope(side, slope, intercept, a, b, take_min)
        }
        (Periodic { .. }, Affine { slope, intercept }) => {
            affine_periodic_envelope(side, slope, intercept, b, a, take_min)
        }
    }
}

// Envelope of a periodic law with a translation-compatible law sharing its
// period lattice; always periodic.
fn merge_periodic(periodic: &TailLaw, other: &TailLaw, take_min: bool) -> TailLaw {
    let (anchor, period) = match periodic {
        TailLaw::Periodic { anchor, period, .. } => (anchor.clone(), period.clone()),
        TailLaw::Affine { .. } => unreachable!(),
    };
    merge_laws_on_period(periodic, other, anchor, period, take_min)
}

fn merge_periodic_pair(a: &TailLaw, b: &TailLaw, take_min: bool) -> TailLaw {
    let (anchor, pa) = match a {
        TailLaw::Periodic { anchor, period, .. } => (anchor.clone(), period.clone()),
        TailLaw::Affine { .. } => unreachable!(),
    };
    let pb = match b {
        TailLaw::Periodic { period, .. } => period.clone(),
        TailLaw::Affine { .. } => unreachable!(),
    };
    let l = crate::num::lcm_pos(&pa, &pb);
    merge_laws_on_period(a, b, anchor, l, take_min)
}

fn merge_laws_on_period(a: &TailLaw, b: &TailLaw, anchor: Q, period: Q, take_min: bool) -> TailLaw {
    let t1 = &anchor + &period;
    let mut xs: BTreeSet<Q> = BTreeSet::new();
    xs.insert(anchor.clone());
    xs.insert(t1.clone());
    for x in a.break_xs_in(&anchor, &t1) {
        xs.insert(x);
    }
    for x in b.break_xs_in(&anchor, &t1) {
        xs.insert(x);
    }
    let eval_a = |x: &Q| a.eval(x);
    let eval_b = |x: &Q| b.eval(x);
    for z in crossings_between(&eval_a, &eval_b, &xs) {
        xs.insert(z);
    }
    let pattern = xs
        .into_iter()
        .map(|x| {
            let ya = a.eval(&x);
            let yb = b.eval(&x);
            let y = if (ya <= yb) == take_min { ya } else { yb };
            Node::new(x, y)
        })
        .collect();
    TailLaw::Periodic { anchor, period, pattern }
}

// Envelope of an affine law of slope != 1 against a periodic law: one of
// them is in force beyond an exact threshold.
fn affine_periodic_envelope(
    side: Side,
    slope: &Q,
    intercept: &Q,
    affine: &TailLaw,
    periodic: &TailLaw,
    take_min: bool,
) -> (TailLaw, Option<Q>) {
    let (dmin, dmax) = periodic.displacement_range().unwrap();
    let one = Q::one();
    // Thresholds where the affine law clears the periodic law's displacement
    // band entirely.
    let (affine_below_eventually, t) = match side {
        Side::Right => {
            if *slope > one {
                (false, (&dmax - intercept) / (slope - &one))
            } else {
                (true, (&dmin - intercept) / (slope - &one))
            }
        }
        Side::Left => {
            if *slope > one {
                (true, (&dmin - intercept) / (slope - &one))
            } else {
                (false, (&dmax - intercept) / (slope - &one))
            }
        }
    };
    let affine_wins = affine_below_eventually == take_min;
    (
        if affine_wins { affine.clone() } else { periodic.clone() },
        Some(t),
    )
}

// Strict sign-change abscissas of a - b between consecutive xs, where both
// are linear on each gap.
fn crossings_between<FA: Fn(&Q) -> Q, FB: Fn(&Q) -> Q>(
    a: &FA,
    b: &FB,
    xs: &BTreeSet<Q>,
) -> Vec<Q> {
    let pts: Vec<&Q> = xs.iter().collect();
    let mut out = Vec::new();
    for w in pts.windows(2) {
        let (u, v) = (w[0], w[1]);
        let du = a(u) - b(u);
        let dv = a(v) - b(v);
        if sign_q(&du) * sign_q(&dv) < 0 {
            let z = u + (v - u) * &du / (&du - &dv);
            out.push(z);
        }
    }
    out
}

fn envelope(f: &PlHomeo, g: &PlHomeo, take_min: bool) -> Result<PlHomeo, ExactError> {
    let (llaw, lext) = tail_envelope(Side::Left, &f.left, &g.left, take_min);
    let (rlaw, rext) = tail_envelope(Side::Right, &f.right, &g.right, take_min);
    let mut lo_c: Vec<Q> = Vec::new();
    let mut hi_c: Vec<Q> = Vec::new();
    for m in [f, g] {
        if let Some(x) = m.first_x() {
            lo_c.push(x.clone());
        }
        if let Some(x) = m.last_x() {
            hi_c.push(x.clone());
        }
    }
    if let Some(t) = lext {
        lo_c.push(t - qi(1));
    }
    if let Some(t) = rext {
        hi_c.push(t + qi(1));
    }
    if lo_c.is_empty() && hi_c.is_empty() {
        return PlHomeo::new(Vec::new(), llaw, rlaw);
    }
    let mut lo = lo_c.into_iter().min().unwrap_or_else(|| qi(0));
    let mut hi = hi_c.into_iter().max().unwrap_or_else(|| qi(0));
    if hi < lo {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut xs: BTreeSet<Q> = BTreeSet::new();
    xs.insert(lo.clone());
    xs.insert(hi.clone());
    for x in f.break_xs_in(&lo, &hi) {
        xs.insert(x);
    }
    for x in g.break_xs_in(&lo, &hi) {
        xs.insert(x);
    }
    let ef = |x: &Q| f.eval(x);
    let eg = |x: &Q| g.eval(x);
    for z in crossings_between(&ef, &eg, &xs) {
        xs.insert(z);
    }
    let breaks = xs
        .into_iter()
        .map(|x| {
            let yf = f.eval(&x);
            let yg = g.eval(&x);
            let y = if (yf <= yg) == take_min { yf } else { yg };
            Node::new(x, y)
        })
        .collect();
    let mut h = PlHomeo::new(breaks, llaw, rlaw)?;
    h.normalize();
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qq;

    fn steep_then_flat() -> PlHomeo {
        // doubles [0,1] onto [0,2], translations outside
        PlHomeo::interpolate(
            &[(qi(0), qi(0)), (qi(1), qi(2))],
            TailLaw::identity(),
            TailLaw::translation(qi(1)),
        )
        .unwrap()
    }

    #[test]
    fn eval_hits_segments_and_tails() {
        let f = steep_then_flat();
        assert_eq!(f.eval(&qq(1, 2)), qi(1));
        assert_eq!(f.eval(&qi(-5)), qi(-5));
        assert_eq!(f.eval(&qi(4)), qi(5));
    }

    #[test]
    fn inverse_round_trips() {
        let f = steep_then_flat();
        let g = f.inverse();
        for x in [qi(-3), qq(1, 3), qq(2, 3), qi(1), qi(7)] {
            assert_eq!(g.eval(&f.eval(&x)), x);
        }
    }

    #[test]
    fn compose_doubles_translation_conjugate() {
        let d = PlHomeo::affine(qi(2), qi(0)).unwrap();
        let t = PlHomeo::translation(qi(1));
        // t . d . t^-1 . d^-1 applied right to left is x - 1
        let c = PlHomeo::compose(
            &PlHomeo::compose(&t, &d).unwrap(),
            &PlHomeo::compose(&t.inverse(), &d.inverse()).unwrap(),
        )
        .unwrap();
        for x in [qi(0), qq(5, 3), qi(-9)] {
            assert_eq!(c.eval(&x), &x - qi(1));
        }
        let c2 = PlHomeo::compose(
            &PlHomeo::compose(&d, &t).unwrap(),
            &PlHomeo::compose(&d.inverse(), &t.inverse()).unwrap(),
        )
        .unwrap();
        for x in [qi(0), qq(5, 3), qi(-9)] {
            assert_eq!(c2.eval(&x), &x + qi(1));
        }
    }

    #[test]
    fn compose_crossing_breakpoint_windows() {
        let f = steep_then_flat();
        let g = PlHomeo::interpolate(
            &[(qi(-1), qi(-1)), (qi(0), qi(1))],
            TailLaw::identity(),
            TailLaw::translation(qi(1)),
        )
        .unwrap();
        let h = PlHomeo::compose(&f, &g).unwrap();
        for x in [qi(-2), qq(-1, 2), qi(0), qq(1, 4), qi(3)] {
            assert_eq!(h.eval(&x), f.eval(&g.eval(&x)));
        }
        let hi = PlHomeo::compose(&h.inverse(), &h).unwrap();
        assert!(hi.is_identity());
    }

    #[test]
    fn compose_periodic_tails() {
        let saw = TailLaw::Periodic {
            anchor: qi(0),
            period: qi(2),
            pattern: vec![
                Node::new(qi(0), qi(0)),
                Node::new(qi(1), qq(1, 2)),
                Node::new(qi(2), qi(2)),
            ],
        };
        let f = PlHomeo::interpolate(&[(qi(0), qi(0))], TailLaw::identity(), saw.clone()).unwrap();
        let h = PlHomeo::compose(&f, &f).unwrap();
        for x in [qi(0), qq(1, 2), qi(3), qq(17, 3)] {
            assert_eq!(h.eval(&x), f.eval(&f.eval(&x)));
        }
        // slope-2 map against a periodic tail has no PL composition
        let d = PlHomeo::affine(qi(2), qi(0)).unwrap();
        assert!(matches!(PlHomeo::compose(&d, &f), Err(ExactError::TailClash)));
    }

    #[test]
    fn splice_keeps_both_sides() {
        let f = PlHomeo::translation(qi(2));
        let g = PlHomeo::interpolate(
            &[(qi(0), qi(2)), (qi(1), qi(4))],
            TailLaw::translation(qi(2)),
            TailLaw::translation(qi(3)),
        )
        .unwrap();
        let h = PlHomeo::splice(&f, &g, &qi(0)).unwrap();
        assert_eq!(h.eval(&qi(-4)), qi(-2));
        assert_eq!(h.eval(&qq(1, 2)), qi(3));
        assert_eq!(h.eval(&qi(5)), qi(8));
        assert!(PlHomeo::splice(&f, &g, &qi(50)).is_err());
    }

    #[test]
    fn envelopes_cross_exactly() {
        let f = PlHomeo::translation(qi(1));
        let g = PlHomeo::affine(qi(2), qi(0)).unwrap();
        let lo = PlHomeo::envelope_min(&f, &g).unwrap();
        let hi = PlHomeo::envelope_max(&f, &g).unwrap();
        for x in [qi(-4), qi(0), qq(1, 2), qi(1), qi(2), qi(6)] {
            let (a, b) = (f.eval(&x), g.eval(&x));
            assert_eq!(lo.eval(&x), a.clone().min(b.clone()));
            assert_eq!(hi.eval(&x), a.max(b));
        }
    }

    #[test]
    fn envelope_with_periodic_tail() {
        let saw = TailLaw::Periodic {
            anchor: qi(0),
            period: qi(1),
            pattern: vec![
                Node::new(qi(0), qq(1, 4)),
                Node::new(qq(1, 2), qq(7, 8)),
                Node::new(qi(1), qq(5, 4)),
            ],
        };
        let f = PlHomeo::interpolate(&[(qi(0), qq(1, 4))], TailLaw::translation(qq(1, 4)), saw)
            .unwrap();
        let g = PlHomeo::identity();
        let lo = PlHomeo::envelope_min(&f, &g).unwrap();
        let hi = PlHomeo::envelope_max(&f, &g).unwrap();
        for x in [qi(-3), qq(-1, 2), qi(0), qq(1, 3), qq(3, 4), qi(2), qq(33, 8)] {
            let (a, b) = (f.eval(&x), g.eval(&x));
            assert_eq!(lo.eval(&x), a.clone().min(b.clone()));
            assert_eq!(hi.eval(&x), a.max(b));
        }
    }

    #[test]
    fn power_matches_iteration() {
        let f = steep_then_flat();
        let f3 = f.power(3).unwrap();
        let fm2 = f.power(-2).unwrap();
        for x in [qq(-7, 3), qq(1, 5), qi(2)] {
            assert_eq!(f3.eval(&x), f.eval(&f.eval(&f.eval(&x))));
            assert_eq!(f.eval(&f.eval(&fm2.eval(&x))), x);
        }
    }

    #[test]
    fn serde_round_trip() {
        let f = steep_then_flat();
        let s = serde_json::to_string(&f).unwrap();
        let g: PlHomeo = serde_json::from_str(&s).unwrap();
        g.validate().unwrap();
        assert_eq!(g.eval(&qq(1, 2)), qi(1));
        assert!(s.contains("breakpoints"));
    }
}
