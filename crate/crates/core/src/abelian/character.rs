//! Characters `G -> Z/N` for prime powers `N`, and annihilators of subgroups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::snf::smith_normal_form;
use super::{prime_power, reduce, FinAbGroup, GroupElement, Subgroup};
use crate::error::{Error, Result};

/// A homomorphism to `Z/modulus`, stored by its values on the invariant
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    ambient: FinAbGroup,
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Character {
    /// Checks `d_i * values[i] = 0 (mod modulus)` and reduces the values.
    pub fn new(ambient: &FinAbGroup, modulus: BigInt, values: Vec<BigInt>) -> Result<Self> {
        if prime_power(&modulus).is_none() {
            return Err(Error::NotPrimePower(modulus));
        }
        if values.len() != ambient.rank() {
            return Err(Error::ForeignElement(format!(
                "character needs {} values, got {}",
                ambient.rank(),
                values.len()
            )));
        }
        let values: Vec<BigInt> = values.iter().map(|v| reduce(v, &modulus)).collect();
        for (i, (v, d)) in values.iter().zip(ambient.factors()).enumerate() {
            if !(v * d).is_multiple_of(&modulus) {
                return Err(Error::ForeignElement(format!(
                    "value {v} on generator {i} is not killed by {d} modulo {modulus}"
                )));
            }
        }
        Ok(Character {
            ambient: ambient.clone(),
            modulus,
            values,
        })
    }

    pub fn zero(ambient: &FinAbGroup, modulus: BigInt) -> Result<Self> {
        let r = ambient.rank();
        Self::new(ambient, modulus, vec![BigInt::zero(); r])
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, g: &GroupElement) -> BigInt {
        let s: BigInt = g.coords().iter().zip(&self.values).map(|(c, v)| c * v).sum();
        reduce(&s, &self.modulus)
    }

    pub fn vanishes_on(&self, s: &Subgroup) -> bool {
        s.generators().iter().all(|g| self.eval(g).is_zero())
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}] mod {}", parts.join(","), self.modulus)
    }
}

/// The annihilator as a subgroup of `Hom(G, Z/N)`, written in the
/// coordinates `u_i` with `value_i = (N / g_i) u_i`, `g_i = gcd(d_i, N)`.
struct Annihilator {
    steps: Vec<BigInt>,
    /// `None` when every `g_i` is 1 and only the zero character exists.
    subgroup: Option<Subgroup>,
    offset: usize,
}

fn annihilator(g: &FinAbGroup, s: &Subgroup, modulus: &BigInt) -> Result<Annihilator> {
    if prime_power(modulus).is_none() {
        return Err(Error::NotPrimePower(modulus.clone()));
    }
    if s.ambient().factors() != g.factors() {
        return Err(Error::ForeignElement(format!(
            "subgroup lives in {}, not {g}",
            s.ambient()
        )));
    }
    let gs: Vec<BigInt> = g.factors().iter().map(|d| d.gcd(modulus)).collect();
    let steps: Vec<BigInt> = gs.iter().map(|gi| modulus / gi).collect();
    let offset = gs.iter().take_while(|gi| gi.is_one()).count();
    if offset == gs.len() {
        return Ok(Annihilator {
            steps,
            subgroup: None,
            offset,
        });
    }
    let r = g.rank();
    // row per generator of S: u -> sum_i s_i (N/g_i) u_i (mod N)
    let rows: Vec<Vec<BigInt>> = s
        .generators()
        .iter()
        .map(|x| x.coords().iter().zip(&steps).map(|(c, t)| c * t).collect())
        .collect();
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    if rows.is_empty() {
        for i in 0..r {
            let mut e = vec![BigInt::zero(); r];
            e[i] = BigInt::one();
            gens.push(e);
        }
    } else {
        // u = V t solves B u = 0 (mod N) iff D t = 0 (mod N)
        let smith = smith_normal_form(&rows);
        for k in 0..r {
            let scale = match smith.diag.get(k) {
                Some(dk) if !dk.is_zero() => modulus / dk.gcd(modulus),
                _ => BigInt::one(),
            };
            gens.push((0..r).map(|i| &smith.v[i][k] * &scale).collect());
        }
    }
    let small = FinAbGroup::new(gs[offset..].to_vec())?;
    let elems = gens
        .iter()
        // coordinates with g_i = 1 only ever carry the zero value
        .map(|u| small.element(&u[offset..]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Annihilator {
        steps,
        subgroup: Some(Subgroup::generated_by(&small, &elems)?),
        offset,
    })
}

/// Every character `G -> Z/modulus` vanishing on `s`.
pub fn annihilator_characters(g: &FinAbGroup, s: &Subgroup, modulus: &BigInt) -> Result<Vec<Character>> {
    let ann = annihilator(g, s, modulus)?;
    let Some(sub) = ann.subgroup else {
        return Ok(vec![Character::zero(g, modulus.clone())?]);
    };
    sub.elements()?
        .into_iter()
        .map(|u| {
            let mut values = vec![BigInt::zero(); g.rank()];
            for (k, c) in u.coords().iter().enumerate() {
                values[ann.offset + k] = c * &ann.steps[ann.offset + k];
            }
            Character::new(g, modulus.clone(), values)
        })
        .collect()
}

/// Number of characters `G -> Z/modulus` vanishing on `s`, without listing them.
pub fn character_count(g: &FinAbGroup, s: &Subgroup, modulus: &BigInt) -> Result<BigInt> {
    let ann = annihilator(g, s, modulus)?;
    Ok(ann.subgroup.map_or_else(BigInt::one, |sub| sub.order()))
}
