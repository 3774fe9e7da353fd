//! JSON input schemas. Integers may be given as JSON numbers or as decimal
//! strings, rationals as `"num/den"` strings or integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::abelian::{GroupElement, Subgroup};
use crate::linking::{rational_string, TorsionLinkingForm};
use crate::obstruction::CgPatternProfile;
use crate::signature::SeifertMatrix;
use crate::tau::LegendrianFront;
use crate::{Error, Result};

fn input<E: std::fmt::Display>(e: E) -> Error {
    Error::Input(e.to_string())
}

/// An integer written as a JSON number or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntRepr {
    Number(i64),
    Text(String),
}

impl IntRepr {
    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntRepr::Number(n) => Ok(BigInt::from(*n)),
            IntRepr::Text(s) => s.trim().parse().map_err(|_| input(format!("not an integer: {s:?}"))),
        }
    }
}

impl From<&BigInt> for IntRepr {
    fn from(x: &BigInt) -> Self {
        IntRepr::Text(x.to_string())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || input(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalRepr {
    Number(i64),
    Text(String),
}

impl RationalRepr {
    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            RationalRepr::Number(n) => Ok(BigRational::from_integer(BigInt::from(*n))),
            RationalRepr::Text(s) => parse_rational(s),
        }
    }
}

fn ints(v: &[IntRepr]) -> Result<Vec<BigInt>> {
    v.iter().map(IntRepr::to_bigint).collect()
}

fn matrix(m: &[Vec<IntRepr>]) -> Result<Vec<Vec<BigInt>>> {
    m.iter().map(|r| ints(r)).collect()
}

fn int_strings(v: &[BigInt]) -> Vec<IntRepr> {
    v.iter().map(IntRepr::from).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeckJson {
    /// Column-vector action on the generators.
    pub matrix: Vec<Vec<IntRepr>>,
    pub period: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    pub invariant_factors: Vec<IntRepr>,
    pub gram_num: Vec<Vec<IntRepr>>,
    pub gram_den: IntRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deck_action: Option<DeckJson>,
}

impl FormJson {
    pub fn build(&self) -> Result<TorsionLinkingForm> {
        let deck = match &self.deck_action {
            Some(d) => Some((matrix(&d.matrix)?, d.period)),
            None => None,
        };
        TorsionLinkingForm::from_integers(
            &ints(&self.invariant_factors)?,
            &matrix(&self.gram_num)?,
            &self.gram_den.to_bigint()?,
            deck,
        )
    }

    /// Writes a form over a common denominator.
    pub fn from_form(form: &TorsionLinkingForm) -> Self {
        let den = form
            .gram()
            .iter()
            .flatten()
            .fold(BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        let num = form
            .gram()
            .iter()
            .map(|row| row.iter().map(|x| IntRepr::from(&(x.numer() * &den / x.denom()))).collect())
            .collect();
        FormJson {
            invariant_factors: int_strings(form.group().factors()),
            gram_num: num,
            gram_den: IntRepr::from(&den),
            deck_action: form.group().deck_action().map(|d| DeckJson {
                matrix: d.matrix().iter().map(|r| int_strings(r)).collect(),
                period: d.period(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileJson {
    pub winding_number: i64,
    pub prime: u64,
    pub form: FormJson,
    pub lifts: Vec<Vec<IntRepr>>,
    pub cg_bound: RationalRepr,
    pub character_modulus: IntRepr,
}

impl ProfileJson {
    pub fn build(&self) -> Result<CgPatternProfile> {
        let form = self.form.build()?;
        let lifts = self
            .lifts
            .iter()
            .map(|z| form.group().element(&ints(z)?))
            .collect::<Result<Vec<_>>>()?;
        CgPatternProfile::new(
            self.winding_number,
            self.prime,
            form,
            lifts,
            self.cg_bound.to_rational()?,
            self.character_modulus.to_bigint()?,
        )
    }

    pub fn from_profile(p: &CgPatternProfile) -> Self {
        ProfileJson {
            winding_number: p.winding_number,
            prime: p.prime,
            form: FormJson::from_form(&p.form),
            lifts: p.lifts.iter().map(|z| int_strings(z.coords())).collect(),
            cg_bound: RationalRepr::Text(rational_string(&p.cg_bound)),
            character_modulus: IntRepr::from(&p.character_modulus),
        }
    }
}

fn from_str<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(input)
}

pub fn parse_form(s: &str) -> Result<TorsionLinkingForm> {
    from_str::<FormJson>(s)?.build()
}

/// A profile, either flat or with the form nested under `"form"`.
pub fn parse_profile(s: &str) -> Result<CgPatternProfile> {
    let mut v: Value = from_str(s)?;
    if let Value::Object(map) = &mut v {
        if !map.contains_key("form") {
            let mut form = serde_json::Map::new();
            for k in ["invariant_factors", "gram_num", "gram_den", "deck_action"] {
                if let Some(x) = map.remove(k) {
                    form.insert(k.to_string(), x);
                }
            }
            map.insert("form".into(), Value::Object(form));
        }
    }
    serde_json::from_value::<ProfileJson>(v).map_err(input)?.build()
}

/// An integer matrix, bare or under `"matrix"`.
pub fn parse_matrix(s: &str) -> Result<Vec<Vec<BigInt>>> {
    #[derive(Deserialize)]
    #[serde(untagged, deny_unknown_fields)]
    enum M {
        Bare(Vec<Vec<IntRepr>>),
        Wrapped { matrix: Vec<Vec<IntRepr>> },
    }
    let m = match from_str::<M>(s)? {
        M::Bare(m) | M::Wrapped { matrix: m } => matrix(&m)?,
    };
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(input("matrix rows have different lengths"));
    }
    Ok(m)
}

/// A Seifert matrix, bare or under `"seifert"`.
pub fn parse_seifert(s: &str) -> Result<SeifertMatrix> {
    #[derive(Deserialize)]
    #[serde(untagged, deny_unknown_fields)]
    enum S {
        Bare(Vec<Vec<IntRepr>>),
        Wrapped { seifert: Vec<Vec<IntRepr>> },
    }
    let m = match from_str::<S>(s)? {
        S::Bare(m) | S::Wrapped { seifert: m } => matrix(&m)?,
    };
    SeifertMatrix::new(m)
}

pub fn parse_front(s: &str) -> Result<LegendrianFront> {
    let f: LegendrianFront = from_str(s)?;
    f.validate()?;
    Ok(f)
}

pub fn element_strings(z: &GroupElement) -> Vec<String> {
    z.coords().iter().map(ToString::to_string).collect()
}

/// Canonical matrix and generators of a subgroup as strings.
pub fn subgroup_json(s: &Subgroup) -> Value {
    let canon: Vec<Vec<String>> = s
        .canonical_matrix()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let gens: Vec<Vec<String>> = s.generators().iter().map(element_strings).collect();
    serde_json::json!({
        "order": s.order().to_string(),
        "canonical": canon,
        "generators": gens,
    })
}
