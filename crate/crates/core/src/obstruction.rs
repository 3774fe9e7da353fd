//! Casson-Gordon style obstructions: the generation test, the exhaustive
//! metabolizer/character search, Litherland's satellite formula and the
//! signature targets used to realize the search's conclusion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::abelian::{
    annihilator_characters, prime_divisors, prime_power, Character, FinAbGroup, GroupElement, Subgroup,
};
use crate::error::{Error, Result};
use crate::linking::{enumerate_metabolizers, TorsionLinkingForm};

/// Everything the obstruction needs to know about a pattern `P` at a prime `p`.
#[derive(Clone, Debug)]
pub struct CgPatternProfile {
    pub winding_number: i64,
    pub prime: u64,
    /// Linking form on `H = H_1` of the `p`-fold branched cover of `P(U)`.
    pub form: TorsionLinkingForm,
    /// Classes of the `p` lifts of the infection curve.
    pub lifts: Vec<GroupElement>,
    /// Upper bound on `|sigma(P(U), chi)|`.
    pub cg_bound: BigRational,
    pub character_modulus: BigInt,
}

impl CgPatternProfile {
    pub fn new(
        winding_number: i64,
        prime: u64,
        form: TorsionLinkingForm,
        lifts: Vec<GroupElement>,
        cg_bound: BigRational,
        character_modulus: BigInt,
    ) -> Result<Self> {
        if prime < 2 || prime_divisors(&BigInt::from(prime)) != vec![BigInt::from(prime)] {
            return Err(Error::InvalidProfile(format!("{prime} is not prime")));
        }
        if lifts.len() as u64 != prime {
            return Err(Error::InvalidProfile(format!(
                "expected {prime} lift classes, got {}",
                lifts.len()
            )));
        }
        for z in &lifts {
            if !form.group().contains(z) {
                return Err(Error::InvalidProfile(format!(
                    "lift {z} is not an element of {}",
                    form.group()
                )));
            }
        }
        if cg_bound.is_negative() {
            return Err(Error::InvalidProfile("Casson-Gordon bound must be non-negative".into()));
        }
        if prime_power(&character_modulus).is_none() {
            return Err(Error::NotPrimePower(character_modulus));
        }
        Ok(CgPatternProfile {
            winding_number,
            prime,
            form,
            lifts,
            cg_bound,
            character_modulus,
        })
    }

    pub fn with_modulus(&self, modulus: BigInt) -> Result<Self> {
        if prime_power(&modulus).is_none() {
            return Err(Error::NotPrimePower(modulus));
        }
        let mut out = self.clone();
        out.character_modulus = modulus;
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremAStatus {
    Obstructed,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremAVerdict {
    pub status: TheoremAStatus,
    pub reason: String,
    /// The submodule generated by the lifts and their deck translates.
    pub generated: Subgroup,
}

/// Smallest deck-invariant subgroup containing `gens`.
pub fn module_closure(gens: &[GroupElement], g: &FinAbGroup) -> Result<Subgroup> {
    let mut sub = Subgroup::generated_by(g, gens)?;
    if g.deck_action().is_none() {
        return Ok(sub);
    }
    loop {
        let mut more: Vec<GroupElement> = sub.generators().to_vec();
        more.extend(sub.generators().iter().filter_map(|x| g.act(x)));
        let next = Subgroup::generated_by(g, &more)?;
        if next == sub {
            return Ok(sub);
        }
        sub = next;
    }
}

/// The quick test: `H` is nontrivial and generated, as a module over the
/// deck group, by the lift classes.
pub fn check_theorem_a(profile: &CgPatternProfile) -> Result<TheoremAVerdict> {
    let p = profile.prime as i64;
    if profile.winding_number % p != 0 {
        return Err(Error::PrimeDoesNotDivide {
            p: profile.prime,
            w: profile.winding_number,
        });
    }
    let g = profile.form.group();
    let generated = module_closure(&profile.lifts, profile.form.group())?;
    let (status, reason) = if g.is_trivial() {
        (TheoremAStatus::NotApplicable, "H is trivial".to_string())
    } else if generated.order() == g.order() {
        let how = if g.deck_action().is_some() {
            "lifts generate H as a module over the deck group"
        } else {
            "lifts generate H"
        };
        (TheoremAStatus::Obstructed, format!("{how} (|H| = {})", g.order()))
    } else {
        (
            TheoremAStatus::NotApplicable,
            format!(
                "lifts generate a submodule of order {} in H of order {}",
                generated.order(),
                g.order()
            ),
        )
    };
    Ok(TheoremAVerdict {
        status,
        reason,
        generated,
    })
}

/// `{+-v}` as a sorted list of representatives `min(v, N - v)`.
pub fn canonical_multiset(values: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = values
        .iter()
        .map(|v| {
            let v = v.mod_floor(modulus);
            let w = modulus - &v;
            v.min(w)
        })
        .collect();
    out.sort();
    out
}

/// A character on `H + H + -H` witnessing the obstruction for one metabolizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionCertificate {
    pub metabolizer: Subgroup,
    pub character: Character,
    /// Values of `chi_k` on the generators of `H`, for `k = 1, 2, 3`.
    pub components: [Vec<BigInt>; 3],
    /// The canonical multisets `{+-chi_k(z_i)}`.
    pub multisets: [Vec<BigInt>; 3],
}

impl ObstructionCertificate {
    /// Re-checks everything independently of the search.
    pub fn validate(&self, profile: &CgPatternProfile) -> Result<()> {
        let (big_form, pos) = profile.form.triple_sum();
        let fail = |msg: &str| Err(Error::InvalidProfile(format!("certificate invalid: {msg}")));
        if !big_form.is_metabolizer(&self.metabolizer) {
            return fail("subgroup is not a metabolizer");
        }
        if self.character.ambient().factors() != big_form.group().factors() {
            return fail("character lives on another group");
        }
        let rebuilt = Character::new(
            big_form.group(),
            self.character.modulus().clone(),
            self.character.values().to_vec(),
        );
        if rebuilt.is_err() {
            return fail("character is not well defined");
        }
        if !self.character.vanishes_on(&self.metabolizer) {
            return fail("character does not vanish on the metabolizer");
        }
        let sets = multisets(&self.character, &profile.lifts, &pos, big_form.group());
        if sets != self.multisets {
            return fail("multisets do not match the character");
        }
        if sets[0] == sets[1] && sets[1] == sets[2] {
            return fail("multisets are identical");
        }
        Ok(())
    }
}

fn multisets(
    chi: &Character,
    lifts: &[GroupElement],
    pos: &[Vec<usize>],
    big_group: &FinAbGroup,
) -> [Vec<BigInt>; 3] {
    let m = chi.modulus();
    let set = |k: usize| {
        let vals: Vec<BigInt> = lifts
            .iter()
            .map(|z| chi.eval(&z.embed(big_group, &pos[k])))
            .collect();
        canonical_multiset(&vals, m)
    };
    [set(0), set(1), set(2)]
}

fn components(chi: &Character, pos: &[Vec<usize>]) -> [Vec<BigInt>; 3] {
    let comp = |k: usize| pos[k].iter().map(|&i| chi.values()[i].clone()).collect();
    [comp(0), comp(1), comp(2)]
}

/// Deterministic preference among witnesses: leave the third summand
/// alone if possible, then use as few summands and coordinates as possible.
fn witness_key(chi: &Character, pos: &[Vec<usize>]) -> (bool, usize, u8, usize, Vec<BigInt>) {
    let comps = components(chi, pos);
    let nonzero: Vec<bool> = comps.iter().map(|c| c.iter().any(|v| !v.is_zero())).collect();
    let mask = nonzero
        .iter()
        .enumerate()
        .fold(0u8, |acc, (k, &nz)| if nz { acc | (1 << k) } else { acc });
    let support = chi.values().iter().filter(|v| !v.is_zero()).count();
    let flat: Vec<BigInt> = comps.into_iter().flatten().collect();
    (
        nonzero[2],
        nonzero.iter().filter(|&&b| b).count(),
        mask,
        support,
        flat,
    )
}

fn find_witness(
    big_form: &TorsionLinkingForm,
    pos: &[Vec<usize>],
    m: &Subgroup,
    profile: &CgPatternProfile,
) -> Result<Option<ObstructionCertificate>> {
    let g = big_form.group();
    let mut chars = annihilator_characters(g, m, &profile.character_modulus)?;
    chars.sort_by_cached_key(|c| witness_key(c, pos));
    for chi in chars {
        let sets = multisets(&chi, &profile.lifts, pos, g);
        if sets[0] != sets[1] || sets[1] != sets[2] {
            return Ok(Some(ObstructionCertificate {
                metabolizer: m.clone(),
                components: components(&chi, pos),
                character: chi,
                multisets: sets,
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongOutcome {
    Obstructed {
        certificates: Vec<ObstructionCertificate>,
    },
    Inconclusive {
        metabolizer: Subgroup,
        metabolizers_checked: usize,
    },
}

impl StrongOutcome {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, StrongOutcome::Obstructed { .. })
    }
}

/// Exhaustive search over all metabolizers of `lambda + lambda + -lambda`.
pub fn check_strong_obstruction(profile: &CgPatternProfile) -> Result<StrongOutcome> {
    check_strong_obstruction_with(profile, false)
}

/// As [`check_strong_obstruction`], optionally restricted to metabolizers
/// preserved by the deck action.
pub fn check_strong_obstruction_with(profile: &CgPatternProfile, invariant_only: bool) -> Result<StrongOutcome> {
    let (big_form, pos) = profile.form.triple_sum();
    let ms: Vec<Subgroup> = enumerate_metabolizers(&big_form, invariant_only)?.collect();
    let found: Vec<Option<ObstructionCertificate>> = ms
        .par_iter()
        .map(|m| find_witness(&big_form, &pos, m, profile))
        .collect::<Result<_>>()?;
    let checked = found.len();
    let mut certificates = Vec::with_capacity(checked);
    for (m, w) in ms.into_iter().zip(found) {
        match w {
            Some(c) => certificates.push(c),
            None => {
                return Ok(StrongOutcome::Inconclusive {
                    metabolizer: m,
                    metabolizers_checked: checked,
                })
            }
        }
    }
    Ok(StrongOutcome::Obstructed { certificates })
}

/// Per-modulus results of a sweep over `q^e`.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub results: Vec<(BigInt, StrongOutcome)>,
}

impl Sweep {
    /// Obstructed when a single modulus handles every metabolizer.
    pub fn is_obstructed(&self) -> bool {
        self.results.iter().any(|(_, o)| o.is_obstructed())
    }

    pub fn first_obstructing(&self) -> Option<&(BigInt, StrongOutcome)> {
        self.results.iter().find(|(_, o)| o.is_obstructed())
    }
}

/// The exponent `6k` of the modulus `q^{6k}`, where `|H| = m^2` and `q^k || m`.
pub fn full_exponent(form: &TorsionLinkingForm, q: &BigInt) -> Result<u32> {
    let order = form.group().order();
    let m = order.sqrt();
    if &m * &m != order {
        return Err(Error::InvalidProfile(format!("|H| = {order} is not a square")));
    }
    let mut k = 0;
    let mut r = m;
    while !r.is_zero() && r.is_multiple_of(q) {
        r /= q;
        k += 1;
    }
    Ok(6 * k)
}

/// Runs the strong check for `q^e`, `e = 1, ..., max_exponent`, with `q`
/// the prime of the profile's modulus, stopping at the first modulus that
/// obstructs.
pub fn sweep_modulus(profile: &CgPatternProfile, max_exponent: u32) -> Result<Sweep> {
    sweep_modulus_with(profile, max_exponent, false)
}

pub fn sweep_modulus_with(profile: &CgPatternProfile, max_exponent: u32, invariant_only: bool) -> Result<Sweep> {
    let (q, _) = prime_power(&profile.character_modulus)
        .ok_or_else(|| Error::NotPrimePower(profile.character_modulus.clone()))?;
    let mut results = Vec::new();
    for e in 1..=max_exponent.max(1) {
        let modulus = q.pow(e);
        let outcome = check_strong_obstruction_with(&profile.with_modulus(modulus.clone())?, invariant_only)?;
        let done = outcome.is_obstructed();
        results.push((modulus, outcome));
        if done {
            break;
        }
    }
    Ok(Sweep { results })
}

/// `base + sum_i sigma_K(omega^{v_i})` with `omega = exp(2 pi i / modulus)`.
pub fn litherland_sigma<F>(base: &BigRational, values: &[BigInt], modulus: &BigInt, sigma_k: F) -> Result<BigRational>
where
    F: Fn(&BigInt, &BigInt) -> Result<BigRational>,
{
    let mut total = base.clone();
    for v in values {
        total += sigma_k(&v.mod_floor(modulus), modulus)?;
    }
    Ok(total)
}

fn smallest_even_above(x: &BigRational) -> BigInt {
    let mut n: BigInt = x.floor().to_integer() + 1;
    if n.is_odd() {
        n += 1;
    }
    if n <= BigInt::zero() {
        n = BigInt::from(2);
    }
    n
}

/// Lexicographically smallest even positive `m_j`, `n_j` (`j <= floor(q/2)`)
/// with `m_1 > 3C`, `m_j > 3C + p m_{j-1}`, `n_1 > 3C + p m_L` and
/// `n_j > 3C + p m_L + p n_{j-1}`, where `L = floor(q/2)`.
pub fn witness_scales(c: &BigRational, p: u64, q: u64) -> (Vec<BigInt>, Vec<BigInt>) {
    let len = (q / 2) as usize;
    let three_c = c * BigRational::from_integer(BigInt::from(3));
    let pr = BigRational::from_integer(BigInt::from(p));
    let mut m: Vec<BigInt> = Vec::with_capacity(len);
    for j in 0..len {
        let floor = match j {
            0 => three_c.clone(),
            _ => &three_c + &pr * BigRational::from_integer(m[j - 1].clone()),
        };
        m.push(smallest_even_above(&floor));
    }
    let top = m.last().cloned().unwrap_or_default();
    let base = &three_c + &pr * BigRational::from_integer(top);
    let mut n: Vec<BigInt> = Vec::with_capacity(len);
    for j in 0..len {
        let floor = match j {
            0 => base.clone(),
            _ => &base + &pr * BigRational::from_integer(n[j - 1].clone()),
        };
        n.push(smallest_even_above(&floor));
    }
    (m, n)
}

/// Re-checks every inequality that [`witness_scales`] promises.
pub fn verify_scales(c: &BigRational, p: u64, q: u64, m: &[BigInt], n: &[BigInt]) -> bool {
    let len = (q / 2) as usize;
    if m.len() != len || n.len() != len {
        return false;
    }
    let three_c = c * BigRational::from_integer(BigInt::from(3));
    let r = |x: &BigInt| BigRational::from_integer(x.clone());
    let pb = BigInt::from(p);
    let even_pos = |x: &BigInt| x.is_even() && x.is_positive();
    if !m.iter().chain(n).all(even_pos) {
        return false;
    }
    for j in 0..len {
        let need = if j == 0 { three_c.clone() } else { &three_c + r(&(&pb * &m[j - 1])) };
        if r(&m[j]) <= need {
            return false;
        }
    }
    let base = &three_c + r(&(&pb * &m[len - 1]));
    for j in 0..len {
        let need = if j == 0 { base.clone() } else { &base + r(&(&pb * &n[j - 1])) };
        if r(&n[j]) <= need {
            return false;
        }
    }
    true
}

/// Number of metabolizers as a plain integer, for summaries.
pub fn certificate_count(outcome: &StrongOutcome) -> usize {
    match outcome {
        StrongOutcome::Obstructed { certificates } => certificates.len(),
        StrongOutcome::Inconclusive { .. } => 0,
    }
}
