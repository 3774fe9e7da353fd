//! Verdicts for the small slice patterns, derived only from evidence
//! records: crossing changes and twists to other patterns, Legendrian
//! fronts, amphichirality flags and the standard formulas.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    legendrian_tb_rot, ng_traynor, path_bounds_interval, plamenevskaya_bound, tau_standard,
    tauhom_test, twist_bounds, CrossingPath, LegendrianFront, Orientation, StandardKind,
    TauHomResult, TauInterval, TauProfile,
};
use crate::{Error, Result};

const MAX_DEPTH: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRelation {
    pub reference: String,
    pub twists: i64,
    #[serde(default)]
    pub orientation: Orientation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedFront {
    #[serde(default)]
    pub orientation: Orientation,
    pub front: LegendrianFront,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothEvidence {
    pub pattern: String,
    pub winding_number: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub figure: Option<String>,
    /// `P(U)` is slice.
    #[serde(default)]
    pub slice: bool,
    #[serde(default)]
    pub concordant_to_core: bool,
    /// A standard pattern `P` is isotopic to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<String>,
    /// `P` is isotopic to `-P`.
    #[serde(default)]
    pub amphichiral: bool,
    #[serde(default)]
    pub paths: Vec<CrossingPath>,
    #[serde(default)]
    pub twists: Vec<TwistRelation>,
    #[serde(default)]
    pub fronts: Vec<OrientedFront>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl SmoothEvidence {
    fn validate(&self) -> Result<()> {
        let any = self.concordant_to_core
            || self.identity.is_some()
            || self.amphichiral
            || !self.paths.is_empty()
            || !self.twists.is_empty()
            || !self.fronts.is_empty();
        if !any {
            return Err(Error::InvalidEvidence(format!("{}: no evidence items", self.pattern)));
        }
        if let Some(id) = &self.identity {
            let k = StandardKind::parse(id)
                .ok_or_else(|| Error::InvalidEvidence(format!("{}: unknown identity {id}", self.pattern)))?;
            if k.winding_number() != self.winding_number.abs() {
                return Err(Error::InvalidEvidence(format!(
                    "{}: winding number {} differs from {k}",
                    self.pattern, self.winding_number
                )));
            }
        }
        for f in &self.fronts {
            f.front.validate()?;
        }
        Ok(())
    }

    /// Whether an evidence item stated for `item` applies to orientation `o`.
    fn applies(&self, item: Orientation, o: Orientation) -> bool {
        self.amphichiral || item == o
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Companion {
    pub name: String,
    pub tau: i64,
    pub epsilon: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub front: Option<LegendrianFront>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceDb {
    #[serde(default)]
    pub companions: Vec<Companion>,
    pub patterns: Vec<SmoothEvidence>,
    /// Patterns used only as references.
    #[serde(default)]
    pub auxiliary: Vec<SmoothEvidence>,
}

impl EvidenceDb {
    pub fn from_json(s: &str) -> Result<Self> {
        let db: EvidenceDb = serde_json::from_str(s).map_err(|e| Error::Input(e.to_string()))?;
        db.validate()?;
        Ok(db)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashMap::new();
        for e in self.patterns.iter().chain(&self.auxiliary) {
            e.validate()?;
            if seen.insert(e.pattern.as_str(), ()).is_some() {
                return Err(Error::InvalidEvidence(format!("duplicate record {}", e.pattern)));
            }
        }
        for c in &self.companions {
            TauProfile::new(c.tau, c.epsilon)?;
            if let Some(f) = &c.front {
                f.validate()?;
            }
        }
        Ok(())
    }

    pub fn record(&self, name: &str) -> Option<&SmoothEvidence> {
        self.patterns.iter().chain(&self.auxiliary).find(|e| e.pattern == name)
    }

    pub fn record_mut(&mut self, name: &str) -> Option<&mut SmoothEvidence> {
        self.patterns.iter_mut().chain(self.auxiliary.iter_mut()).find(|e| e.pattern == name)
    }
}

/// The in-repo evidence fixture for the nineteen small slice patterns.
pub fn embedded_census() -> EvidenceDb {
    EvidenceDb::from_json(include_str!("../../fixtures/census.json")).expect("embedded census fixture")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Standard,
    NotPseudoHom,
    PseudoHomNotHom,
    Open,
    InsufficientEvidence,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Standard => "standard",
            Verdict::NotPseudoHom => "not_pseudo_hom",
            Verdict::PseudoHomNotHom => "pseudo_hom_not_hom",
            Verdict::Open => "open",
            Verdict::InsufficientEvidence => "insufficient evidence",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    ConcordantToCore,
    /// Crossing changes to a cable, Mazur or Whitehead pattern with few
    /// negative-to-positive changes.
    CrossingChangesToStandard,
    /// `tau(P(K)) + tau(P(-K)) > 0`.
    TauSum,
    /// `tau(P(K))` and `tau((-P)(K))` lie in disjoint intervals.
    OrientationSplit,
    /// Amphichiral slice pattern, tested against `tau(P(K)) = |w| tau(K)`.
    AmphichiralTauHom,
    None,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::ConcordantToCore => "concordant to core",
            Rule::CrossingChangesToStandard => "crossing changes to standard pattern",
            Rule::TauSum => "tau(P(K)) + tau(P(-K)) > 0",
            Rule::OrientationSplit => "tau(P(K)) != tau((-P)(K))",
            Rule::AmphichiralTauHom => "amphichiral, tau(P(K)) vs |w| tau(K)",
            Rule::None => "none",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub pattern: String,
    pub winding_number: i64,
    pub verdict: Verdict,
    pub rule: Rule,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub rows: Vec<CensusRow>,
}

impl Census {
    pub fn row(&self, pattern: &str) -> Option<&CensusRow> {
        self.rows.iter().find(|r| r.pattern == pattern)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.rows.iter().filter(|r| r.verdict == v).count()
    }

    pub fn to_text(&self) -> String {
        let w = self.rows.iter().map(|r| r.pattern.len()).max().unwrap_or(7).max(7);
        let v = self.rows.iter().map(|r| r.verdict.to_string().len()).max().unwrap_or(7).max(7);
        let mut out = format!("{:<w$}  {:>2}  {:<v$}  rule\n", "pattern", "w", "verdict");
        for r in &self.rows {
            out += &format!(
                "{:<w$}  {:>2}  {:<v$}  {}",
                r.pattern,
                r.winding_number,
                r.verdict.to_string(),
                r.rule
            );
            if !r.detail.is_empty() {
                out += &format!("; {}", r.detail);
            }
            out.push('\n');
        }
        out
    }
}

struct Companions<'a> {
    k: TauProfile,
    front: Option<&'a LegendrianFront>,
}

struct Engine<'a> {
    db: &'a EvidenceDb,
}

impl<'a> Engine<'a> {
    /// Everything the evidence proves about `tau` of `(±P)(K)`, using also
    /// `tau((-P)(K)) = -tau(P(-K))`.
    fn bounds(&self, name: &str, o: Orientation, k: &Companions, depth: usize) -> Result<TauInterval> {
        if depth > MAX_DEPTH {
            return Err(Error::InvalidEvidence(format!("reference cycle through {name}")));
        }
        let mirror = Companions { k: k.k.mirror(), front: None };
        let direct = self.direct(name, o, k, depth)?;
        let other = self.direct(name, o.flip(), &mirror, depth)?.neg();
        Ok(direct.intersect(&other))
    }

    fn direct(&self, name: &str, o: Orientation, k: &Companions, depth: usize) -> Result<TauInterval> {
        if let Some(kind) = StandardKind::parse(name) {
            let t = match o {
                Orientation::Forward => tau_standard(kind, &k.k)?,
                Orientation::Reversed => -tau_standard(kind, &k.k.mirror())?,
            };
            return Ok(TauInterval::exact(t));
        }
        let Some(e) = self.db.record(name) else {
            return Ok(TauInterval::UNBOUNDED);
        };
        let mut iv = TauInterval::UNBOUNDED;
        if e.concordant_to_core {
            iv = iv.intersect(&self.direct("core", o, k, depth + 1)?);
        }
        if let Some(id) = &e.identity {
            iv = iv.intersect(&self.direct(id, o, k, depth + 1)?);
        }
        for p in e.paths.iter().filter(|p| e.applies(p.orientation, o)) {
            let r = self.bounds(&p.reference, Orientation::Forward, k, depth + 1)?;
            iv = iv.intersect(&path_bounds_interval(p, &r));
        }
        for t in e.twists.iter().filter(|t| e.applies(t.orientation, o)) {
            let r = self.bounds(&t.reference, Orientation::Forward, k, depth + 1)?;
            iv = iv.intersect(&twist_bounds(t.twists, &r));
        }
        if let Some(jf) = k.front {
            let (tb_j, rot_j) = legendrian_tb_rot(jf)?;
            for f in e.fronts.iter().filter(|f| e.applies(f.orientation, o)) {
                let (tb_p, rot_p) = legendrian_tb_rot(&f.front)?;
                let w = match f.orientation {
                    Orientation::Forward => e.winding_number,
                    Orientation::Reversed => -e.winding_number,
                };
                let (tb, rot) = ng_traynor(w, tb_j, rot_j, tb_p, rot_p)?;
                iv = iv.intersect(&TauInterval::at_least(plamenevskaya_bound(tb, rot)));
            }
        }
        Ok(iv)
    }
}

/// Whether crossing changes to a cable, Mazur or Whitehead pattern force
/// `tau(P(K)) + tau(P(-K)) > 0` for an `epsilon = 1` knot `K`.
pub fn standard_path_fires(winding_number: i64, path: &CrossingPath) -> bool {
    let p = winding_number.abs();
    let b = path.minus_to_plus as i64;
    if path.orientation != Orientation::Forward {
        return false;
    }
    match StandardKind::parse(&path.reference) {
        Some(StandardKind::Cable { p: cp, q: 1 }) if cp == p && p > 1 => 2 * b < p - 1,
        Some(StandardKind::Mazur) if p == 1 => b == 0,
        Some(StandardKind::Whitehead) if p == 0 => b == 0,
        _ => false,
    }
}

fn evaluate(db: &EvidenceDb, e: &SmoothEvidence) -> Result<CensusRow> {
    let row = |verdict, rule, detail: String| CensusRow {
        pattern: e.pattern.clone(),
        winding_number: e.winding_number,
        verdict,
        rule,
        detail,
    };
    if e.concordant_to_core {
        return Ok(row(Verdict::Standard, Rule::ConcordantToCore, String::new()));
    }
    let identity_path = e.identity.as_ref().map(|id| CrossingPath::new(id, 0, 0));
    let fired = identity_path
        .iter()
        .chain(&e.paths)
        .find(|p| standard_path_fires(e.winding_number, p));
    if let Some(p) = fired {
        return Ok(row(
            Verdict::NotPseudoHom,
            Rule::CrossingChangesToStandard,
            format!(
                "to {} with {} (+)->(-) and {} (-)->(+) changes",
                p.reference, p.plus_to_minus, p.minus_to_plus
            ),
        ));
    }

    let engine = Engine { db };
    let mut amphichiral_detail = None;
    for c in db.companions.iter().filter(|c| c.epsilon == 1) {
        let k = TauProfile::new(c.tau, c.epsilon)?;
        let at_k = Companions { k, front: c.front.as_ref() };
        let at_mk = Companions { k: k.mirror(), front: None };
        let fwd = engine.bounds(&e.pattern, Orientation::Forward, &at_k, 0)?;
        let fwd_m = engine.bounds(&e.pattern, Orientation::Forward, &at_mk, 0)?;
        let sum = fwd.add(&fwd_m);
        if sum.lo.is_some_and(|l| l > 0) {
            return Ok(row(
                Verdict::NotPseudoHom,
                Rule::TauSum,
                format!("K = {}: tau(P(K)) in {fwd}, tau(P(-K)) in {fwd_m}", c.name),
            ));
        }
        let rev = engine.bounds(&e.pattern, Orientation::Reversed, &at_k, 0)?;
        if fwd.disjoint(&rev) {
            return Ok(row(
                Verdict::NotPseudoHom,
                Rule::OrientationSplit,
                format!("K = {}: tau(P(K)) in {fwd}, tau((-P)(K)) in {rev}", c.name),
            ));
        }
        if e.amphichiral && e.slice && !fwd.is_unbounded() && amphichiral_detail.is_none() {
            let test = tauhom_test(e.winding_number, &k, &fwd);
            amphichiral_detail = Some((test, format!(
                "K = {}: tau(P(K)) in {fwd}, |w| tau(K) = {}",
                c.name,
                e.winding_number.abs() * k.tau()
            )));
        }
    }
    Ok(match amphichiral_detail {
        Some((TauHomResult::Violates, d)) => row(Verdict::PseudoHomNotHom, Rule::AmphichiralTauHom, d),
        Some((TauHomResult::Consistent, d)) => {
            let mut d = d;
            for n in &e.notes {
                d += &format!("; {n}");
            }
            row(Verdict::Open, Rule::AmphichiralTauHom, d)
        }
        None => row(Verdict::InsufficientEvidence, Rule::None, String::new()),
    })
}

/// One verdict per pattern record, in record order.
pub fn census_verdicts(db: &EvidenceDb) -> Result<Census> {
    db.validate()?;
    let rows = db.patterns.par_iter().map(|e| evaluate(db, e)).collect::<Result<Vec<_>>>()?;
    Ok(Census { rows })
}
