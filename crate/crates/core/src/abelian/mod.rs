//! Finite abelian groups in invariant-factor form.
//!
//! A group is `Z/d_1 + ... + Z/d_r` with `d_1 | d_2 | ... | d_r` and every
//! `d_i >= 2`. Elements are coordinate vectors reduced into `[0, d_i)`.
//! An optional deck action is an integer matrix acting on column vectors.

mod character;
mod snf;
mod subgroup;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use character::{annihilator_characters, character_count, Character};
pub use snf::{determinant, from_presentation, smith_normal_form, Presentation, SmithForm};
pub use subgroup::{enumerate_subgroups_of_order, SubgroupStream, Subgroup};
pub(crate) use subgroup::{EnumLimits, IsotropyFilter};

/// Non-negative remainder of `a` modulo a positive `m`.
pub(crate) fn reduce(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

pub(crate) fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Order-`p` automorphism of a [`FinAbGroup`], acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeckAction {
    matrix: Vec<Vec<BigInt>>,
    period: u64,
}

impl DeckAction {
    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    /// The declared `p` whose power of the action is the identity.
    pub fn period(&self) -> u64 {
        self.period
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    factors: Vec<BigInt>,
    deck: Option<DeckAction>,
}

impl FinAbGroup {
    pub fn new(factors: Vec<BigInt>) -> Result<Self> {
        for (i, d) in factors.iter().enumerate() {
            if *d < big(2) {
                return Err(Error::InvalidGroup(format!(
                    "invariant factor {d} at position {i} is below 2"
                )));
            }
            if i > 0 && !d.is_multiple_of(&factors[i - 1]) {
                return Err(Error::InvalidGroup(format!(
                    "divisibility chain broken: {} does not divide {d}",
                    factors[i - 1]
                )));
            }
        }
        Ok(FinAbGroup { factors, deck: None })
    }

    pub fn from_i64(factors: &[i64]) -> Result<Self> {
        Self::new(factors.iter().map(|&d| big(d)).collect())
    }

    pub fn trivial() -> Self {
        FinAbGroup {
            factors: Vec::new(),
            deck: None,
        }
    }

    /// Attaches a deck action `matrix` whose `period`-th power is the identity.
    pub fn with_deck_action(mut self, matrix: Vec<Vec<BigInt>>, period: u64) -> Result<Self> {
        let r = self.rank();
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidGroup(format!(
                "deck action must be {r}x{r}"
            )));
        }
        if period == 0 {
            return Err(Error::InvalidGroup("deck action period must be positive".into()));
        }
        // column j is the image of generator j; it must respect d_j * e_j = 0
        for i in 0..r {
            for j in 0..r {
                if !(&self.factors[j] * &matrix[i][j]).is_multiple_of(&self.factors[i]) {
                    return Err(Error::InvalidGroup(format!(
                        "deck action entry ({i},{j}) is not well defined"
                    )));
                }
            }
        }
        let mut reduced = matrix;
        for (i, row) in reduced.iter_mut().enumerate() {
            for v in row.iter_mut() {
                *v = reduce(v, &self.factors[i]);
            }
        }
        let mut power = identity(r);
        for _ in 0..period {
            power = self.compose(&reduced, &power);
        }
        if power != identity(r) {
            return Err(Error::InvalidGroup(format!(
                "deck action does not have order dividing {period}"
            )));
        }
        self.deck = Some(DeckAction {
            matrix: reduced,
            period,
        });
        Ok(self)
    }

    pub fn without_deck_action(mut self) -> Self {
        self.deck = None;
        self
    }

    fn compose(&self, a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let s: BigInt = (0..r).map(|k| &a[i][k] * &b[k][j]).sum();
                        reduce(&s, &self.factors[i])
                    })
                    .collect()
            })
            .collect()
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn deck_action(&self) -> Option<&DeckAction> {
        self.deck.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of the group (the largest invariant factor).
    pub fn exponent(&self) -> BigInt {
        self.factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.rank()],
        }
    }

    /// The `i`-th invariant-factor generator.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut g = self.zero();
        g.coords[i] = BigInt::one();
        g
    }

    /// Builds an element from arbitrary integer coordinates, reducing them.
    pub fn element(&self, coords: &[BigInt]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::ForeignElement(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.factors)
                .map(|(c, d)| reduce(c, d))
                .collect(),
        })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<GroupElement> {
        self.element(&coords.iter().map(|&c| big(c)).collect::<Vec<_>>())
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.coords.len() == self.rank()
            && g
                .coords
                .iter()
                .zip(&self.factors)
                .all(|(c, d)| !c.is_negative() && c < d)
    }

    pub(crate) fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::ForeignElement(format!("{g} is not reduced in {self}")))
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.factors)
                .map(|((x, y), d)| reduce(&(x + y), d))
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.scale(a, &big(-1))
    }

    pub fn scale(&self, a: &GroupElement, k: &BigInt) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(x, d)| reduce(&(x * k), d))
                .collect(),
        }
    }

    /// Least `k >= 1` with `k * g = 0`.
    pub fn element_order(&self, g: &GroupElement) -> Result<BigInt> {
        self.check(g)?;
        Ok(g
            .coords
            .iter()
            .zip(&self.factors)
            .fold(BigInt::one(), |acc, (c, d)| acc.lcm(&(d / c.gcd(d)))))
    }

    /// Applies the deck action, if any.
    pub fn act(&self, g: &GroupElement) -> Option<GroupElement> {
        let deck = self.deck.as_ref()?;
        let r = self.rank();
        Some(GroupElement {
            coords: (0..r)
                .map(|i| {
                    let s: BigInt = (0..r).map(|j| &deck.matrix[i][j] * &g.coords[j]).sum();
                    reduce(&s, &self.factors[i])
                })
                .collect(),
        })
    }

    /// All elements in lexicographic coordinate order. Only sensible for
    /// small groups; used by brute-force checks.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let order = self
            .order()
            .to_usize()
            .filter(|&n| n <= 5_000_000)
            .ok_or_else(|| Error::TooLarge(format!("cannot list the elements of {self}")))?;
        let dims: Vec<usize> = self.factors.iter().map(|d| d.to_usize().unwrap()).collect();
        let mut out = Vec::with_capacity(order);
        let mut cur = vec![0usize; dims.len()];
        loop {
            out.push(GroupElement {
                coords: cur.iter().map(|&c| BigInt::from(c)).collect(),
            });
            let mut i = dims.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < dims[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Direct sum of `copies` copies of this group, with coordinates
    /// stably sorted by factor so that the divisibility chain survives.
    ///
    /// Returns the group and, for each copy, the coordinate index that each
    /// original coordinate lands on.
    pub fn power(&self, copies: usize) -> (FinAbGroup, Vec<Vec<usize>>) {
        let r = self.rank();
        let mut slots: Vec<(usize, usize)> = (0..copies)
            .flat_map(|c| (0..r).map(move |i| (c, i)))
            .collect();
        // stable: equal factors keep copy-major order
        slots.sort_by(|a, b| self.factors[a.1].cmp(&self.factors[b.1]));
        let mut position = vec![vec![0usize; r]; copies];
        for (pos, &(c, i)) in slots.iter().enumerate() {
            position[c][i] = pos;
        }
        let factors = slots.iter().map(|&(_, i)| self.factors[i].clone()).collect();
        let mut group = FinAbGroup {
            factors,
            deck: None,
        };
        if let Some(deck) = &self.deck {
            let n = r * copies;
            let mut m = vec![vec![BigInt::zero(); n]; n];
            for pos in &position {
                for i in 0..r {
                    for j in 0..r {
                        m[pos[i]][pos[j]] = deck.matrix[i][j].clone();
                    }
                }
            }
            group.deck = Some(DeckAction {
                matrix: m,
                period: deck.period,
            });
        }
        (group, position)
    }

    /// Machine-integer view of the factors, used by enumeration.
    pub(crate) fn small_factors(&self) -> Result<Vec<i64>> {
        let limit = BigInt::from(1i64 << 31);
        if self.order() > BigInt::from(i64::MAX / 4) {
            return Err(Error::TooLarge(format!("order of {self} exceeds enumeration range")));
        }
        self.factors
            .iter()
            .map(|d| {
                if *d >= limit {
                    Err(Error::TooLarge(format!("factor {d} exceeds enumeration range")))
                } else {
                    Ok(d.to_i64().unwrap())
                }
            })
            .collect()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Re-embeds this element into a power of its group at `positions`.
    pub fn embed(&self, target: &FinAbGroup, positions: &[usize]) -> GroupElement {
        let mut g = target.zero();
        for (c, &p) in self.coords.iter().zip(positions) {
            g.coords[p] = c.clone();
        }
        g
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub(crate) fn identity(r: usize) -> Vec<Vec<BigInt>> {
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// `Some((q, e))` when `n = q^e` with `q` prime and `e >= 1`.
pub fn prime_power(n: &BigInt) -> Option<(BigInt, u32)> {
    if *n < big(2) {
        return None;
    }
    let mut q = big(2);
    while &q * &q <= *n {
        if n.is_multiple_of(&q) {
            break;
        }
        q += 1;
    }
    if &q * &q > *n {
        return Some((n.clone(), 1));
    }
    let mut m = n.clone();
    let mut e = 0;
    while m.is_multiple_of(&q) {
        m /= &q;
        e += 1;
    }
    if m.is_one() {
        Some((q, e))
    } else {
        None
    }
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut m = n.abs();
    let mut q = big(2);
    while &q * &q <= m {
        if m.is_multiple_of(&q) {
            out.push(q.clone());
            while m.is_multiple_of(&q) {
                m /= &q;
            }
        }
        q += 1;
    }
    if m > BigInt::one() {
        out.push(m);
    }
    out
}
