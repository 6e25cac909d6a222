//! Monotone surjection bookkeeping: nondecreasing maps of the line with
//! jumps and flats, their exact evaluation, and duality.
//!
//! Values at a jump follow the right-continuous convention. The dual of a
//! map c is c'(y) = sup of all t with c(t) <= y, again right-continuous;
//! jumps and flats trade places under duality, and the class with affine
//! tails of positive slope is closed under it.

use crate::num::{format_q, parse_q, Q};
use crate::tail::TailLaw;
use crate::{invalid, ExactError};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Graph data at one abscissa: the limit from the left and the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneNode {
    pub x: Q,
    pub y_left: Q,
    pub y_right: Q,
}

impl Serialize for MonotoneNode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (format_q(&self.x), format_q(&self.y_left), format_q(&self.y_right)).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonotoneNode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (x, a, b): (String, String, String) = Deserialize::deserialize(d)?;
        Ok(MonotoneNode {
            x: parse_q(&x).map_err(D::Error::custom)?,
            y_left: parse_q(&a).map_err(D::Error::custom)?,
            y_right: parse_q(&b).map_err(D::Error::custom)?,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonotoneMap {
    nodes: Vec<MonotoneNode>,
    #[serde(rename = "left_tail")]
    left: TailLaw,
    #[serde(rename = "right_tail")]
    right: TailLaw,
}

impl MonotoneMap {
    pub fn new(nodes: Vec<MonotoneNode>, left: TailLaw, right: TailLaw) -> Result<Self, ExactError> {
        let map = MonotoneMap { nodes, left, right };
        map.validate()?;
        Ok(map)
    }

    pub fn validate(&self) -> Result<(), ExactError> {
        for law in [&self.left, &self.right] {
            match law {
                TailLaw::Affine { .. } => law.validate()?,
                TailLaw::Periodic { .. } => {
                    return Err(invalid("monotone maps carry affine tails only"));
                }
            }
        }
        if self.nodes.is_empty() {
            if self.left != self.right {
                return Err(invalid("a monotone map without nodes needs one tail law"));
            }
            return Ok(());
        }
        for n in &self.nodes {
            if n.y_left > n.y_right {
                return Err(invalid("downward jump in a monotone map"));
            }
        }
        for w in self.nodes.windows(2) {
            if w[0].x >= w[1].x {
                return Err(invalid("monotone map nodes must increase strictly in x"));
            }
            if w[0].y_right > w[1].y_left {
                return Err(invalid("monotone map values must not decrease"));
            }
        }
        let first = &self.nodes[0];
        let last = &self.nodes[self.nodes.len() - 1];
        if self.left.eval(&first.x) != first.y_left {
            return Err(invalid("left tail disagrees with the first node"));
        }
        if self.right.eval(&last.x) != last.y_right {
            return Err(invalid("right tail disagrees with the last node"));
        }
        Ok(())
    }

    /// Right-continuous step map through the sample pairs, slope-one tails.
    pub fn step_through(pairs: &[(Q, Q)]) -> Result<Self, ExactError> {
        if pairs.is_empty() {
            return Err(invalid("no sample pairs"));
        }
        let mut nodes = Vec::with_capacity(pairs.len());
        for (i, (u, v)) in pairs.iter().enumerate() {
            let y_left = if i == 0 { v.clone() } else { pairs[i - 1].1.clone() };
            nodes.push(MonotoneNode { x: u.clone(), y_left, y_right: v.clone() });
        }
        let (u0, v0) = &pairs[0];
        let (un, vn) = &pairs[pairs.len() - 1];
        MonotoneMap::new(
            nodes,
            TailLaw::translation(v0 - u0),
            TailLaw::translation(vn - un),
        )
    }

    pub fn nodes(&self) -> &[MonotoneNode] {
        &self.nodes
    }

    pub fn is_proper(&self) -> bool {
        // affine tails with positive slope are enforced at validation
        true
    }

    pub fn eval(&self, t: &Q) -> Q {
        if self.nodes.is_empty() {
            return self.left.eval(t);
        }
        let first = &self.nodes[0];
        let last = &self.nodes[self.nodes.len() - 1];
        if t < &first.x {
            return self.left.eval(t);
        }
        if t > &last.x {
            return self.right.eval(t);
        }
        let idx = self.nodes.partition_point(|n| n.x <= *t);
        let i = idx - 1;
        let n = &self.nodes[i];
        if n.x == *t {
            return n.y_right.clone();
        }
        let m = &self.nodes[i + 1];
        &n.y_right + (&m.y_left - &n.y_right) * (t - &n.x) / (&m.x - &n.x)
    }

    /// Whether the map is continuous at `t`.
    pub fn is_continuous_at(&self, t: &Q) -> bool {
        self.nodes
            .iter()
            .all(|n| n.x != *t || n.y_left == n.y_right)
    }

    /// Largest t with c(t) <= y.
    pub fn upper_preimage(&self, y: &Q) -> Q {
        if self.nodes.is_empty() {
            return self.left.inverse().eval(y);
        }
        let k = self.nodes.partition_point(|n| n.y_right <= *y);
        if k == self.nodes.len() {
            return self.right.inverse().eval(y);
        }
        let nk = &self.nodes[k];
        if *y < nk.y_left {
            if k == 0 {
                self.left.inverse().eval(y)
            } else {
                let prev = &self.nodes[k - 1];
                &prev.x
                    + (y - &prev.y_right) * (&nk.x - &prev.x) / (&nk.y_left - &prev.y_right)
            }
        } else {
            nk.x.clone()
        }
    }

    /// Supremum of all t with c(t) < y.
    pub fn strict_upper_preimage(&self, y: &Q) -> Q {
        if self.nodes.is_empty() {
            return self.left.inverse().eval(y);
        }
        let k = self.nodes.partition_point(|n| n.y_right < *y);
        if k == self.nodes.len() {
            return self.right.inverse().eval(y);
        }
        let nk = &self.nodes[k];
        if *y <= nk.y_left {
            if k == 0 {
                self.left.inverse().eval(y)
            } else {
                let prev = &self.nodes[k - 1];
                &prev.x
                    + (y - &prev.y_right) * (&nk.x - &prev.x) / (&nk.y_left - &prev.y_right)
            }
        } else {
            nk.x.clone()
        }
    }

    /// The dual map: jumps become flats and flats become jumps.
    pub fn dual(&self) -> Result<MonotoneMap, ExactError> {
        let mut ys: Vec<Q> = Vec::new();
        for n in &self.nodes {
            ys.push(n.y_left.clone());
            ys.push(n.y_right.clone());
        }
        ys.sort();
        ys.dedup();
        let nodes: Vec<MonotoneNode> = ys
            .into_iter()
            .map(|y| MonotoneNode {
                y_left: self.strict_upper_preimage(&y),
                y_right: self.upper_preimage(&y),
                x: y,
            })
            .collect();
        let mut d = MonotoneMap {
            nodes,
            left: self.left.inverse(),
            right: self.right.inverse(),
        };
        d.normalize();
        d.validate()?;
        Ok(d)
    }

    /// Drop jump-free nodes that are collinear with their neighbors.
    pub fn normalize(&mut self) {
        if self.nodes.len() < 3 {
            return;
        }
        let mut out: Vec<MonotoneNode> = vec![self.nodes[0].clone()];
        for i in 1..self.nodes.len() - 1 {
            let b = &self.nodes[i];
            if b.y_left != b.y_right {
                out.push(b.clone());
                continue;
            }
            let a = out.last().unwrap();
            let c = &self.nodes[i + 1];
            let lhs = (&c.y_left - &a.y_right) * (&b.x - &a.x);
            let rhs = (&b.y_left - &a.y_right) * (&c.x - &a.x);
            if lhs != rhs {
                out.push(b.clone());
            }
        }
        out.push(self.nodes.last().unwrap().clone());
        self.nodes = out;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{qi, qq};

    // floor on [0, 3], straight lines outside
    fn floor_like() -> MonotoneMap {
        let nodes = (0..=3)
            .map(|i| MonotoneNode { x: qi(i), y_left: qi(i - 1), y_right: qi(i) })
            .collect();
        MonotoneMap::new(nodes, TailLaw::translation(qi(-1)), TailLaw::identity()).unwrap()
    }

    #[test]
    fn right_continuous_evaluation() {
        let c = floor_like();
        assert_eq!(c.eval(&qi(1)), qi(1));
        assert_eq!(c.eval(&qq(3, 2)), qi(1));
        assert_eq!(c.eval(&qq(-1, 2)), qq(-3, 2));
        assert!(!c.is_continuous_at(&qi(2)));
        assert!(c.is_continuous_at(&qq(1, 2)));
    }

    #[test]
    fn dual_of_floor_takes_zero_to_one() {
        let c = floor_like();
        assert_eq!(c.upper_preimage(&qi(0)), qi(1));
        let d = c.dual().unwrap();
        assert_eq!(d.eval(&qi(0)), qi(1));
        // jump of c at 2 becomes a flat of d over [1, 2]
        assert_eq!(d.eval(&qq(3, 2)), qi(2));
        assert_eq!(d.eval(&qi(1)), qi(2));
    }

    #[test]
    fn dual_round_trips_on_values() {
        let c = floor_like();
        let dd = c.dual().unwrap().dual().unwrap();
        for t in [qi(-4), qq(-1, 2), qi(0), qq(5, 4), qi(2), qq(10, 3), qi(7)] {
            assert_eq!(dd.eval(&t), c.eval(&t), "at {t}");
        }
    }

    #[test]
    fn galois_identity_at_continuity_points_of_dual_argument() {
        let c = floor_like();
        let d = c.dual().unwrap();
        // c(c'(x)) = x whenever c is continuous at c'(x)
        for x in [qq(-3, 2), qq(-9, 4), qi(4), qq(17, 4)] {
            let t = d.eval(&x);
            assert!(c.is_continuous_at(&t));
            assert_eq!(c.eval(&t), x);
        }
        // at x = 1/2, c'(x) = 1 is a jump point of c, and the identity fails
        let t = d.eval(&qq(1, 2));
        assert_eq!(t, qi(1));
        assert!(!c.is_continuous_at(&t));
        assert_ne!(c.eval(&t), qq(1, 2));
    }

    #[test]
    fn step_map_through_samples() {
        let c = MonotoneMap::step_through(&[
            (qi(0), qi(0)),
            (qi(1), qi(2)),
            (qi(2), qi(2)),
            (qi(3), qi(5)),
        ])
        .unwrap();
        assert_eq!(c.eval(&qq(1, 2)), qi(0));
        assert_eq!(c.eval(&qi(1)), qi(2));
        assert_eq!(c.eval(&qq(5, 2)), qi(2));
        assert_eq!(c.eval(&qi(3)), qi(5));
        let d = c.dual().unwrap();
        assert_eq!(d.eval(&qi(1)), qi(2));
        assert_eq!(d.eval(&qi(4)), qi(3));
    }
}
