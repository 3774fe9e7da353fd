//! The `tau` rule engine: closed formulas for the prototypical patterns,
//! crossing change and twisting bounds, Legendrian invariants of front
//! diagrams, and the small-pattern census built on top of them.
//!
//! `tau` and `epsilon` are axioms here, never computed from a chain complex.
//! The convention is that `epsilon = 0` forces `tau = 0`.

mod census;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use census::{
    census_verdicts, embedded_census, standard_path_fires, Census, CensusRow, Companion, EvidenceDb,
    OrientedFront,
    Rule, SmoothEvidence, TwistRelation, Verdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TauProfile {
    tau: i64,
    epsilon: i8,
}

impl TauProfile {
    pub fn new(tau: i64, epsilon: i8) -> Result<Self> {
        if !(-1..=1).contains(&epsilon) {
            return Err(Error::InvalidTau(format!("epsilon must be -1, 0 or 1, got {epsilon}")));
        }
        if epsilon == 0 && tau != 0 {
            return Err(Error::InvalidTau(format!("epsilon = 0 forces tau = 0, got tau = {tau}")));
        }
        Ok(TauProfile { tau, epsilon })
    }

    pub fn tau(&self) -> i64 {
        self.tau
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    /// Profile of the mirror image (the concordance inverse).
    pub fn mirror(&self) -> Self {
        TauProfile { tau: -self.tau, epsilon: -self.epsilon }
    }
}

/// Patterns whose action on `tau` is known in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardKind {
    Core,
    /// The `(p, q)` cable, `p > 1` strands.
    Cable { p: i64, q: i64 },
    Mazur,
    Whitehead,
}

impl StandardKind {
    pub fn cable_p1(p: i64) -> Self {
        StandardKind::Cable { p, q: 1 }
    }

    pub fn winding_number(&self) -> i64 {
        match self {
            StandardKind::Core | StandardKind::Mazur => 1,
            StandardKind::Cable { p, .. } => *p,
            StandardKind::Whitehead => 0,
        }
    }

    /// Parses `core`, `Mazur`, `Wh`/`Whitehead` and `C<p>,<q>`.
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "core" | "Core" => Some(StandardKind::Core),
            "Mazur" | "mazur" | "M" => Some(StandardKind::Mazur),
            "Wh" | "Whitehead" | "whitehead" => Some(StandardKind::Whitehead),
            t => {
                let rest = t.strip_prefix('C')?;
                let (p, q) = rest.split_once(',')?;
                let (p, q) = (p.trim().parse().ok()?, q.trim().parse().ok()?);
                Some(StandardKind::Cable { p, q })
            }
        }
    }
}

impl fmt::Display for StandardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardKind::Core => write!(f, "core"),
            StandardKind::Cable { p, q } => write!(f, "C{p},{q}"),
            StandardKind::Mazur => write!(f, "Mazur"),
            StandardKind::Whitehead => write!(f, "Wh"),
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `tau(P(K))` for a standard pattern.
///
/// Cables use the general `(p, q)` cabling formula, which specialises to
/// `p tau` or `p tau + p - 1` when `q = 1`.
pub fn tau_standard(kind: StandardKind, k: &TauProfile) -> Result<i64> {
    let (t, e) = (k.tau, k.epsilon);
    Ok(match kind {
        StandardKind::Core => t,
        StandardKind::Cable { p, q } => {
            if p <= 1 {
                return Err(Error::InvalidTau(format!("cable needs p > 1, got {p}")));
            }
            if gcd(p, q) != 1 {
                return Err(Error::InvalidTau(format!("cable parameters {p}, {q} are not coprime")));
            }
            match e {
                1 => p * t + (p - 1) * (q - 1) / 2,
                -1 => p * t + (p - 1) * (q + 1) / 2,
                // tau of the (p, q) torus knot
                _ if q > 0 => (p - 1) * (q - 1) / 2,
                _ => (p - 1) * (q + 1) / 2,
            }
        }
        StandardKind::Mazur => {
            if t <= 0 && (e == 0 || e == 1) {
                t
            } else {
                t + 1
            }
        }
        StandardKind::Whitehead => {
            if t <= 0 {
                0
            } else {
                1
            }
        }
    })
}

/// A closed integer interval, either end possibly unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TauInterval {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl TauInterval {
    pub const UNBOUNDED: TauInterval = TauInterval { lo: None, hi: None };

    pub fn exact(v: i64) -> Self {
        TauInterval { lo: Some(v), hi: Some(v) }
    }

    pub fn new(lo: i64, hi: i64) -> Self {
        TauInterval { lo: Some(lo), hi: Some(hi) }
    }

    pub fn at_least(lo: i64) -> Self {
        TauInterval { lo: Some(lo), hi: None }
    }

    pub fn at_most(hi: i64) -> Self {
        TauInterval { lo: None, hi: Some(hi) }
    }

    pub fn is_unbounded(&self) -> bool {
        self.lo.is_none() && self.hi.is_none()
    }

    pub fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(l), Some(h)) if l > h)
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo.is_none_or(|l| l <= v) && self.hi.is_none_or(|h| v <= h)
    }

    pub fn intersect(&self, o: &TauInterval) -> TauInterval {
        let lo = match (self.lo, o.lo) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let hi = match (self.hi, o.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        TauInterval { lo, hi }
    }

    /// `[lo - down, hi + up]`.
    pub fn widen(&self, down: i64, up: i64) -> TauInterval {
        TauInterval { lo: self.lo.map(|l| l - down), hi: self.hi.map(|h| h + up) }
    }

    pub fn neg(&self) -> TauInterval {
        TauInterval { lo: self.hi.map(|h| -h), hi: self.lo.map(|l| -l) }
    }

    pub fn add(&self, o: &TauInterval) -> TauInterval {
        TauInterval {
            lo: self.lo.zip(o.lo).map(|(a, b)| a + b),
            hi: self.hi.zip(o.hi).map(|(a, b)| a + b),
        }
    }

    pub fn disjoint(&self, o: &TauInterval) -> bool {
        self.intersect(o).is_empty()
    }
}

impl fmt::Display for TauInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lo {
            Some(l) => write!(f, "[{l}, ")?,
            None => write!(f, "(-inf, ")?,
        }
        match self.hi {
            Some(h) => write!(f, "{h}]"),
            None => write!(f, "+inf)"),
        }
    }
}

/// Crossing changes taking a pattern `P` to `reference`: `plus_to_minus`
/// changes of a positive crossing and `minus_to_plus` of a negative one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingPath {
    pub reference: String,
    #[serde(default)]
    pub plus_to_minus: u32,
    #[serde(default)]
    pub minus_to_plus: u32,
    /// Whether the changes are made on `P` or on its reverse `-P`.
    #[serde(default)]
    pub orientation: Orientation,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Forward,
    Reversed,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Reversed,
            Orientation::Reversed => Orientation::Forward,
        }
    }
}

impl CrossingPath {
    pub fn new(reference: &str, plus_to_minus: u32, minus_to_plus: u32) -> Self {
        CrossingPath {
            reference: reference.to_string(),
            plus_to_minus,
            minus_to_plus,
            orientation: Orientation::Forward,
        }
    }

    /// The path `P -> self.reference -> other.reference`.
    pub fn then(&self, other: &CrossingPath) -> CrossingPath {
        CrossingPath {
            reference: other.reference.clone(),
            plus_to_minus: self.plus_to_minus + other.plus_to_minus,
            minus_to_plus: self.minus_to_plus + other.minus_to_plus,
            orientation: self.orientation,
        }
    }

    /// The same changes read backwards, from the reference to `from`.
    pub fn reversed(&self, from: &str) -> CrossingPath {
        CrossingPath {
            reference: from.to_string(),
            plus_to_minus: self.minus_to_plus,
            minus_to_plus: self.plus_to_minus,
            orientation: self.orientation,
        }
    }
}

/// Bounds on `tau(P(K))` given `tau(Q(K))` for the reference `Q`: a
/// positive-to-negative change can lower `tau` by at most one and never
/// raise it.
pub fn path_bounds(path: &CrossingPath, tau_ref_k: i64) -> TauInterval {
    path_bounds_interval(path, &TauInterval::exact(tau_ref_k))
}

pub fn path_bounds_interval(path: &CrossingPath, reference: &TauInterval) -> TauInterval {
    reference.widen(path.minus_to_plus as i64, path.plus_to_minus as i64)
}

/// Bounds from `twists` positive full twists along a linking-number-zero
/// unknot taking `P` to the reference (negative counts mean negative
/// twists). Each positive twist behaves like a positive-to-negative change.
pub fn twist_bounds(twists: i64, reference: &TauInterval) -> TauInterval {
    if twists >= 0 {
        reference.widen(0, twists)
    } else {
        reference.widen(-twists, 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LegendrianFront {
    pub writhe: i64,
    pub right_cusps: u32,
    /// Defaults to `right_cusps`.
    #[serde(default)]
    pub left_cusps: Option<u32>,
    pub up_cusps: u32,
    pub down_cusps: u32,
}

impl LegendrianFront {
    pub fn new(writhe: i64, right_cusps: u32, up_cusps: u32, down_cusps: u32) -> Result<Self> {
        let f = LegendrianFront { writhe, right_cusps, left_cusps: None, up_cusps, down_cusps };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let left = self.left_cusps.unwrap_or(self.right_cusps);
        if self.up_cusps + self.down_cusps != self.right_cusps + left {
            return Err(Error::InvalidFront(format!(
                "{} up and {} down cusps do not match {} right and {} left cusps",
                self.up_cusps, self.down_cusps, self.right_cusps, left
            )));
        }
        if (self.down_cusps as i64 - self.up_cusps as i64) % 2 != 0 {
            return Err(Error::InvalidFront("down - up cusps is odd".into()));
        }
        Ok(())
    }
}

/// `(tb, rot)` of a front: writhe minus right cusps, and half the excess of
/// down cusps over up cusps.
pub fn legendrian_tb_rot(front: &LegendrianFront) -> Result<(i64, i64)> {
    front.validate()?;
    let tb = front.writhe - front.right_cusps as i64;
    let rot = (front.down_cusps as i64 - front.up_cusps as i64) / 2;
    Ok((tb, rot))
}

/// Legendrian satellite of a companion front with `tb = 0`.
pub fn ng_traynor(w: i64, tb_j: i64, rot_j: i64, tb_p: i64, rot_p: i64) -> Result<(i64, i64)> {
    if tb_j != 0 {
        return Err(Error::NonzeroCompanionTb(tb_j));
    }
    Ok((w * w * tb_j + tb_p, w * rot_j + rot_p))
}

/// Smallest `tau` allowed by `tb + |rot| <= 2 tau - 1`.
pub fn plamenevskaya_bound(tb: i64, rot: i64) -> i64 {
    (tb + rot.abs() + 1).div_euclid(2) + (tb + rot.abs() + 1).rem_euclid(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TauHomResult {
    Violates,
    Consistent,
}

/// A homomorphism must send `tau(K)` to `|w| tau(K)`; checks that value
/// against the proven interval for `tau(P(K))`.
pub fn tauhom_test(w: i64, k: &TauProfile, bounds: &TauInterval) -> TauHomResult {
    if bounds.contains(w.abs() * k.tau) {
        TauHomResult::Consistent
    } else {
        TauHomResult::Violates
    }
}
