//! Sign profiles: an exact decomposition of the line by the sign of f - g.
//!
//! A profile has finitely many cells tiling a window plus a verdict for
//! each ray. Ray verdicts are exact: identically zero, strictly one sign,
//! or a periodic difference that keeps changing sign or touching zero. The
//! last kind has no finite cell decomposition, and operations that need
//! complete crossing lists refuse it; dispatchers treat it as an answer.

use crate::interval::Interval;
use crate::num::{midpoint, qfmt, qi, sign_q, Q};
use crate::pl::PlHomeo;
use crate::tail::TailLaw;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCell {
    pub iv: Interval,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailSign {
    /// The difference vanishes on the whole ray.
    Zero,
    /// Strictly one sign on the open ray beyond the window edge.
    Constant { sign: i8 },
    /// Periodic difference attaining both signs, or recurring zeros.
    Oscillating {
        #[serde(with = "qfmt")]
        period: Q,
        #[serde(with = "qfmt")]
        min: Q,
        #[serde(with = "qfmt")]
        max: Q,
    },
}

impl TailSign {
    pub fn is_zero(&self) -> bool {
        matches!(self, TailSign::Zero)
    }

    pub fn has_zeros(&self) -> bool {
        match self {
            TailSign::Zero => true,
            TailSign::Constant { .. } => false,
            TailSign::Oscillating { .. } => true,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SignProfile {
    #[serde(with = "qfmt")]
    pub lo: Q,
    #[serde(with = "qfmt")]
    pub hi: Q,
    /// Cells tiling `[lo, hi]`.
    pub cells: Vec<SignCell>,
    /// Verdict on `(-inf, lo)`.
    pub left: TailSign,
    /// Verdict on `(hi, +inf)`.
    pub right: TailSign,
}

impl SignProfile {
    pub fn is_identically_zero(&self) -> bool {
        self.left.is_zero()
            && self.right.is_zero()
            && self.cells.iter().all(|c| c.sign == 0)
    }

    pub fn has_no_zeros(&self) -> bool {
        !self.left.has_zeros()
            && !self.right.has_zeros()
            && self.cells.iter().all(|c| c.sign != 0)
    }

    pub fn zero_cells(&self) -> Vec<Interval> {
        self.cells.iter().filter(|c| c.sign == 0).map(|c| c.iv.clone()).collect()
    }

    /// Sign within the window; `None` outside it.
    pub fn sign_in_window(&self, x: &Q) -> Option<i8> {
        if *x < self.lo || *x > self.hi {
            return None;
        }
        self.cells.iter().find(|c| c.iv.contains(x)).map(|c| c.sign)
    }

    /// Whether the difference vanishes everywhere on `iv`.
    pub fn zero_on(&self, iv: &Interval) -> bool {
        if iv.is_empty() {
            return true;
        }
        for c in &self.cells {
            if c.sign != 0 && c.iv.intersect(iv).is_some() {
                return false;
            }
        }
        let beyond_left = match &iv.lo {
            None => true,
            Some(a) => *a < self.lo,
        };
        if beyond_left && !self.left.is_zero() {
            return false;
        }
        let beyond_right = match &iv.hi {
            None => true,
            Some(b) => *b > self.hi,
        };
        if beyond_right && !self.right.is_zero() {
            return false;
        }
        true
    }

    /// Whether the difference is strictly nonzero everywhere on `iv`.
    pub fn nonzero_on(&self, iv: &Interval) -> bool {
        if iv.is_empty() {
            return true;
        }
        for c in &self.cells {
            if c.sign == 0 && c.iv.intersect(iv).is_some() {
                return false;
            }
        }
        let beyond_left = match &iv.lo {
            None => true,
            Some(a) => *a < self.lo,
        };
        if beyond_left && self.left.has_zeros() {
            return false;
        }
        let beyond_right = match &iv.hi {
            None => true,
            Some(b) => *b > self.hi,
        };
        if beyond_right && self.right.has_zeros() {
            return false;
        }
        true
    }
}

/// Exact sign profile of `f - g`.
pub fn profile_diff(f: &PlHomeo, g: &PlHomeo) -> SignProfile {
    profile_diff_covering(f, g, &[])
}

/// Exact sign profile of `f - g` whose window also covers the given points.
pub fn profile_diff_covering(f: &PlHomeo, g: &PlHomeo, cover: &[Q]) -> SignProfile {
    let (left, lext) = tail_diff_sign(Side::Left, f.left_tail(), g.left_tail());
    let (right, rext) = tail_diff_sign(Side::Right, f.right_tail(), g.right_tail());
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
        lo_c.push(t);
    }
    if let Some(t) = rext {
        hi_c.push(t);
    }
    for p in cover {
        lo_c.push(p.clone());
        hi_c.push(p.clone());
    }
    let mut lo = lo_c.into_iter().min().unwrap_or_else(|| qi(0));
    let mut hi = hi_c.into_iter().max().unwrap_or_else(|| qi(0));
    if hi < lo {
        std::mem::swap(&mut lo, &mut hi);
    }
    let cells = diff_cells(f, g, &lo, &hi);
    SignProfile { lo, hi, cells, left, right }
}

/// Profile of `f` against the identity.
pub fn fix_profile(f: &PlHomeo) -> SignProfile {
    profile_diff(f, &PlHomeo::identity())
}

/// Function equality of two maps.
pub fn fn_eq(f: &PlHomeo, g: &PlHomeo) -> bool {
    profile_diff(f, g).is_identically_zero()
}

/// Exact agreement of `f` and `g` on an interval. The profile window is
/// stretched over the interval's finite endpoints first, so the answer is
/// exact even over oscillating tails.
pub fn agree_on(f: &PlHomeo, g: &PlHomeo, iv: &Interval) -> bool {
    let mut cover = Vec::new();
    if let Some(a) = &iv.lo {
        cover.push(a.clone());
    }
    if let Some(b) = &iv.hi {
        cover.push(b.clone());
    }
    profile_diff_covering(f, g, &cover).zero_on(iv)
}

/// Exact strict disjointness of `f` and `g` on an interval: no point of
/// `iv` is mapped equally by both.
pub fn disjoint_on(f: &PlHomeo, g: &PlHomeo, iv: &Interval) -> bool {
    let mut cover = Vec::new();
    if let Some(a) = &iv.lo {
        cover.push(a.clone());
    }
    if let Some(b) = &iv.hi {
        cover.push(b.clone());
    }
    profile_diff_covering(f, g, &cover).nonzero_on(iv)
}

/// The fixed-point set of a map: maximal cells within the window plus a
/// verdict per ray.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixSet {
    pub cells: Vec<Interval>,
    pub left: TailFix,
    pub right: TailFix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailFix {
    /// No fixed points on the ray.
    Free,
    /// The whole ray is fixed.
    FixedRay,
    /// Fixed points recur all the way to infinity.
    Recurrent,
}

impl FixSet {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
            && matches!(self.left, TailFix::Free)
            && matches!(self.right, TailFix::Free)
    }

    /// Whether every fixed point of this set lies in `other` (both from the
    /// same window makes this exact; otherwise conservative).
    pub fn within(&self, other: &FixSet) -> bool {
        let cells_ok = self.cells.iter().all(|c| {
            other.cells.iter().any(|d| {
                d.intersect(c).map(|i| &i == c).unwrap_or(false)
            })
        });
        let left_ok = match self.left {
            TailFix::Free => true,
            _ => !matches!(other.left, TailFix::Free),
        };
        let right_ok = match self.right {
            TailFix::Free => true,
            _ => !matches!(other.right, TailFix::Free),
        };
        cells_ok && left_ok && right_ok
    }
}

pub fn fix_set(f: &PlHomeo) -> FixSet {
    let p = fix_profile(f);
    let tail = |t: &TailSign| match t {
        TailSign::Zero => TailFix::FixedRay,
        TailSign::Constant { .. } => TailFix::Free,
        TailSign::Oscillating { .. } => TailFix::Recurrent,
    };
    FixSet { cells: p.zero_cells(), left: tail(&p.left), right: tail(&p.right) }
}

/// A canonical point where `f` differs from the identity strictly above
/// `q`, or `None` when `f` fixes `(q, +inf)` pointwise.
pub fn first_moved_above(f: &PlHomeo, q: &Q) -> Option<Q> {
    let p = fix_profile(f);
    for c in &p.cells {
        if c.sign == 0 {
            continue;
        }
        if let Some(iv) = c.iv.intersect(&Interval::ray_gt(q.clone())) {
            return Some(interior_point(&iv));
        }
    }
    match &p.right {
        TailSign::Zero => None,
        TailSign::Constant { .. } => {
            let base = if *q > p.hi { q.clone() } else { p.hi.clone() };
            Some(base + qi(1))
        }
        TailSign::Oscillating { period, .. } => {
            // the difference is periodic beyond the window: scan the nodes
            // of one period past max(q, hi) for a nonzero value
            let base = if *q > p.hi { q.clone() } else { p.hi.clone() };
            let end = &base + period;
            let mut pts = vec![base.clone(), end.clone()];
            pts.extend(f.break_xs_in(&base, &end));
            pts.sort();
            pts.dedup();
            for w in pts.windows(2) {
                for cand in [w[1].clone(), midpoint(&w[0], &w[1])] {
                    if cand > *q && f.eval(&cand) != cand {
                        return Some(cand);
                    }
                }
            }
            None
        }
    }
}

/// Least absolute value of `f - g` over `[a, b]`; zero when they touch.
pub fn min_abs_diff_on(f: &PlHomeo, g: &PlHomeo, a: &Q, b: &Q) -> Q {
    let mut xs: BTreeSet<Q> = BTreeSet::new();
    xs.insert(a.clone());
    xs.insert(b.clone());
    for x in f.break_xs_in(a, b) {
        xs.insert(x);
    }
    for x in g.break_xs_in(a, b) {
        xs.insert(x);
    }
    let pts: Vec<&Q> = xs.iter().collect();
    let mut best: Option<Q> = None;
    for w in pts.windows(2) {
        let du = f.eval(w[0]) - g.eval(w[0]);
        let dv = f.eval(w[1]) - g.eval(w[1]);
        if sign_q(&du) * sign_q(&dv) < 0 {
            return Q::zero();
        }
        for d in [du.abs(), dv.abs()] {
            if best.as_ref().map(|b| d < *b).unwrap_or(true) {
                best = Some(d);
            }
        }
    }
    if pts.len() == 1 {
        let d = (f.eval(pts[0]) - g.eval(pts[0])).abs();
        return d;
    }
    best.unwrap()
}

enum Side {
    Left,
    Right,
}

// Sign verdict for f_law - g_law on a ray, plus an abscissa the window must
// reach so the verdict holds strictly beyond it.
fn tail_diff_sign(side: Side, fl: &TailLaw, gl: &TailLaw) -> (TailSign, Option<Q>) {
    use TailLaw::*;
    match (fl, gl) {
        (Affine { slope: s1, intercept: c1 }, Affine { slope: s2, intercept: c2 }) => {
            if s1 == s2 {
                if c1 == c2 {
                    (TailSign::Zero, None)
                } else {
                    (TailSign::Constant { sign: sign_q(&(c1 - c2)) }, None)
                }
            } else {
                let cross = (c2 - c1) / (s1 - s2);
                let sign = match side {
                    Side::Right => sign_q(&(s1 - s2)),
                    Side::Left => -sign_q(&(s1 - s2)),
                };
                (TailSign::Constant { sign }, Some(cross))
            }
        }
        (Affine { slope, intercept }, Periodic { .. }) if !slope.is_one() => {
            let (sign, t) = affine_vs_periodic(side, slope, intercept, gl);
            (TailSign::Constant { sign }, Some(t))
        }
        (Periodic { .. }, Affine { slope, intercept }) if !slope.is_one() => {
            let (sign, t) = affine_vs_periodic(side, slope, intercept, fl);
            (TailSign::Constant { sign: -sign }, Some(t))
        }
        _ => bounded_pair_tail(fl, gl),
    }
}

// Sign of (affine - periodic) beyond an exact threshold on the given ray.
fn affine_vs_periodic(side: Side, slope: &Q, intercept: &Q, periodic: &TailLaw) -> (i8, Q) {
    let (dmin, dmax) = periodic.displacement_range().unwrap();
    let one = Q::one();
    let denom = slope - &one;
    match side {
        Side::Right => {
            if *slope > one {
                (1, (&dmax - intercept) / &denom)
            } else {
                (-1, (&dmin - intercept) / &denom)
            }
        }
        Side::Left => {
            if *slope > one {
                (-1, (&dmin - intercept) / &denom)
            } else {
                (1, (&dmax - intercept) / &denom)
            }
        }
    }
}

// Both laws have bounded displacement, so the difference is periodic; it is
// classified on one common period.
fn bounded_pair_tail(fl: &TailLaw, gl: &TailLaw) -> (TailSign, Option<Q>) {
    let period = match (fl.period(), gl.period()) {
        (Some(a), Some(b)) => crate::num::lcm_pos(a, b),
        (Some(a), None) => a.clone(),
        (None, Some(b)) => b.clone(),
        (None, None) => unreachable!("two affine laws are handled before this point"),
    };
    let anchor = match fl {
        TailLaw::Periodic { anchor, .. } => anchor.clone(),
        TailLaw::Affine { .. } => match gl {
            TailLaw::Periodic { anchor, .. } => anchor.clone(),
            TailLaw::Affine { .. } => unreachable!(),
        },
    };
    let end = &anchor + &period;
    let mut xs: BTreeSet<Q> = BTreeSet::new();
    xs.insert(anchor.clone());
    xs.insert(end.clone());
    for x in fl.break_xs_in(&anchor, &end) {
        xs.insert(x);
    }
    for x in gl.break_xs_in(&anchor, &end) {
        xs.insert(x);
    }
    let mut dmin: Option<Q> = None;
    let mut dmax: Option<Q> = None;
    for x in &xs {
        let d = fl.eval(x) - gl.eval(x);
        if dmin.as_ref().map(|m| d < *m).unwrap_or(true) {
            dmin = Some(d.clone());
        }
        if dmax.as_ref().map(|m| d > *m).unwrap_or(true) {
            dmax = Some(d);
        }
    }
    let (dmin, dmax) = (dmin.unwrap(), dmax.unwrap());
    if dmin.is_zero() && dmax.is_zero() {
        (TailSign::Zero, None)
    } else if dmin.is_positive() {
        (TailSign::Constant { sign: 1 }, None)
    } else if dmax.is_negative() {
        (TailSign::Constant { sign: -1 }, None)
    } else {
        (TailSign::Oscillating { period, min: dmin, max: dmax }, None)
    }
}

// Cells of f - g over [lo, hi].
fn diff_cells(f: &PlHomeo, g: &PlHomeo, lo: &Q, hi: &Q) -> Vec<SignCell> {
    let d = |x: &Q| f.eval(x) - g.eval(x);
    if lo == hi {
        return vec![SignCell { iv: Interval::point(lo.clone()), sign: sign_q(&d(lo)) }];
    }
    let mut xs: BTreeSet<Q> = BTreeSet::new();
    xs.insert(lo.clone());
    xs.insert(hi.clone());
    for x in f.break_xs_in(lo, hi) {
        xs.insert(x);
    }
    for x in g.break_xs_in(lo, hi) {
        xs.insert(x);
    }
    // refine with exact zero crossings
    let mut extra: Vec<Q> = Vec::new();
    {
        let pts: Vec<&Q> = xs.iter().collect();
        for w in pts.windows(2) {
            let du = d(w[0]);
            let dv = d(w[1]);
            if sign_q(&du) * sign_q(&dv) < 0 {
                extra.push(w[0] + (w[1] - w[0]) * &du / (&du - &dv));
            }
        }
    }
    for z in extra {
        xs.insert(z);
    }
    let pts: Vec<Q> = xs.into_iter().collect();
    // atoms: point signs and open-gap signs, then merge equal neighbors
    let mut atoms: Vec<(Interval, i8)> = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let s = sign_q(&d(p));
        atoms.push((Interval::point(p.clone()), s));
        if i + 1 < pts.len() {
            let q = &pts[i + 1];
            let sp = s;
            let sq = sign_q(&d(q));
            let gap_sign = if sp == 0 && sq == 0 {
                0
            } else if sp != 0 {
                sp
            } else {
                sq
            };
            atoms.push((Interval::open(p.clone(), q.clone()), gap_sign));
        }
    }
    let mut cells: Vec<SignCell> = Vec::new();
    for (iv, s) in atoms {
        match cells.last_mut() {
            Some(last) if last.sign == s => {
                // extend the previous cell
                last.iv.hi = iv.hi.clone();
                last.iv.hi_closed = iv.hi_closed || iv.is_point();
            }
            _ => {
                let mut cell = SignCell { iv: iv.clone(), sign: s };
                if iv.is_point() {
                    cell.iv.lo_closed = true;
                    cell.iv.hi_closed = true;
                }
                cells.push(cell);
            }
        }
    }
    cells
}

fn interior_point(iv: &Interval) -> Q {
    match (&iv.lo, &iv.hi) {
        (Some(a), Some(b)) => {
            if iv.is_point() {
                a.clone()
            } else {
                midpoint(a, b)
            }
        }
        (Some(a), None) => a + qi(1),
        (None, Some(b)) => b - qi(1),
        (None, None) => qi(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qq;
    use crate::tail::Node;

    fn bump() -> PlHomeo {
        // fixes (-inf,0] and [2,+inf), pushes up in between
        PlHomeo::interpolate(
            &[(qi(0), qi(0)), (qi(1), qq(3, 2)), (qi(2), qi(2))],
            TailLaw::identity(),
            TailLaw::identity(),
        )
        .unwrap()
    }

    #[test]
    fn translation_profile_is_constant() {
        let p = fix_profile(&PlHomeo::translation(qi(1)));
        assert!(p.has_no_zeros());
        assert_eq!(p.left, TailSign::Constant { sign: 1 });
        assert_eq!(p.right, TailSign::Constant { sign: 1 });
    }

    #[test]
    fn bump_profile_finds_cells() {
        let p = fix_profile(&bump());
        assert!(p.left.is_zero() && p.right.is_zero());
        let zeros = p.zero_cells();
        assert_eq!(zeros.len(), 2);
        assert_eq!(zeros[0], Interval::closed(qi(0), qi(0)));
        assert_eq!(zeros[1], Interval::closed(qi(2), qi(2)));
        assert_eq!(p.sign_in_window(&qq(1, 2)), Some(1));
        let fx = fix_set(&bump());
        assert_eq!(fx.left, TailFix::FixedRay);
        assert!(!fx.is_empty());
    }

    #[test]
    fn crossing_splits_exactly() {
        // 2x - 1 crosses the identity at 1
        let f = PlHomeo::affine(qi(2), qi(-1)).unwrap();
        let p = fix_profile(&f);
        assert_eq!(p.left, TailSign::Constant { sign: -1 });
        assert_eq!(p.right, TailSign::Constant { sign: 1 });
        assert_eq!(p.sign_in_window(&qi(1)), Some(0));
        assert_eq!(p.zero_cells(), vec![Interval::point(qi(1))]);
    }

    #[test]
    fn periodic_difference_oscillates() {
        let wave = TailLaw::Periodic {
            anchor: qi(0),
            period: qi(2),
            pattern: vec![
                Node::new(qi(0), qq(1, 2)),
                Node::new(qi(1), qq(3, 4)),
                Node::new(qi(2), qq(5, 2)),
            ],
        };
        // wave displacement: +1/2 at 0, -1/4 at 1: both signs
        let f = PlHomeo::interpolate(&[(qi(0), qq(1, 2))], TailLaw::translation(qq(1, 2)), wave)
            .unwrap();
        let p = fix_profile(&f);
        match &p.right {
            TailSign::Oscillating { period, min, max } => {
                assert_eq!(period, &qi(2));
                assert_eq!(min, &qq(-1, 4));
                assert_eq!(max, &qq(1, 2));
            }
            other => panic!("expected oscillation, got {other:?}"),
        }
        assert_eq!(fix_set(&f).right, TailFix::Recurrent);
        let m = first_moved_above(&f, &qi(100)).unwrap();
        assert!(f.eval(&m) != m && m > qi(100));
    }

    #[test]
    fn agreement_and_moved_points() {
        let f = bump();
        assert!(agree_on(&f, &PlHomeo::identity(), &Interval::ray_le(qi(0))));
        assert!(!agree_on(&f, &PlHomeo::identity(), &Interval::ray_le(qq(1, 2))));
        assert_eq!(first_moved_above(&f, &qi(5)), None);
        let m = first_moved_above(&f, &qi(0)).unwrap();
        assert!(m > qi(0) && m < qi(2));
        assert!(fn_eq(&f, &f.clone()));
    }

    #[test]
    fn min_gap_is_exact() {
        let f = PlHomeo::translation(qi(2));
        let g = PlHomeo::identity();
        assert_eq!(min_abs_diff_on(&f, &g, &qi(0), &qi(5)), qi(2));
        let h = PlHomeo::affine(qi(2), qi(0)).unwrap();
        assert_eq!(min_abs_diff_on(&h, &g, &qi(1), &qi(3)), qi(1));
        assert_eq!(min_abs_diff_on(&h, &g, &qi(-1), &qi(1)), qi(0));
    }
}
