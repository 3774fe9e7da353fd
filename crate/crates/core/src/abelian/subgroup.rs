//! Subgroups as full-rank lattices `L` with `diag(d) Z^r <= L <= Z^r`.
//!
//! The canonical form of a subgroup is the row Hermite normal form of its
//! preimage lattice: upper triangular, positive pivots `h_ii | d_i`, and
//! entries above each pivot reduced into `[0, h_jj)`. Two generating sets
//! of the same subgroup therefore give identical matrices, and enumeration
//! walks these matrices directly, one row at a time from the bottom.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{FinAbGroup, GroupElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: FinAbGroup,
    canonical: Vec<Vec<BigInt>>,
    generators: Vec<GroupElement>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient.factors() == other.ambient.factors() && self.canonical == other.canonical
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical.hash(state);
    }
}

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn generated_by(ambient: &FinAbGroup, gens: &[GroupElement]) -> Result<Self> {
        for g in gens {
            ambient.check(g)?;
        }
        let r = ambient.rank();
        let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|g| g.coords().to_vec()).collect();
        for (i, d) in ambient.factors().iter().enumerate() {
            let mut row = vec![BigInt::zero(); r];
            row[i] = d.clone();
            rows.push(row);
        }
        let canonical = hermite(rows, r);
        Ok(Self::from_canonical(ambient.clone(), canonical))
    }

    pub fn trivial(ambient: &FinAbGroup) -> Self {
        Self::generated_by(ambient, &[]).expect("empty generating set")
    }

    pub fn whole(ambient: &FinAbGroup) -> Self {
        let gens: Vec<GroupElement> = (0..ambient.rank()).map(|i| ambient.generator(i)).collect();
        Self::generated_by(ambient, &gens).expect("basis generates")
    }

    fn from_canonical(ambient: FinAbGroup, canonical: Vec<Vec<BigInt>>) -> Self {
        let generators = canonical
            .iter()
            .map(|row| {
                ambient
                    .element(row)
                    .expect("canonical rows have ambient rank")
            })
            .filter(|g| !g.is_zero())
            .collect();
        Subgroup {
            ambient,
            canonical,
            generators,
        }
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    /// Echelonized generator matrix of the preimage lattice; unique per subgroup.
    pub fn canonical_matrix(&self) -> &[Vec<BigInt>] {
        &self.canonical
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn order(&self) -> BigInt {
        let index: BigInt = (0..self.canonical.len())
            .map(|i| self.canonical[i][i].clone())
            .product();
        self.ambient.order() / index
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        if !self.ambient.contains(g) {
            return false;
        }
        let mut w = g.coords().to_vec();
        for (c, row) in self.canonical.iter().enumerate() {
            let h = &row[c];
            if !w[c].is_multiple_of(h) {
                return false;
            }
            let q = &w[c] / h;
            for (x, y) in w.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        true
    }

    /// Whether the deck action maps the subgroup onto itself; `None` when
    /// the ambient group carries no action.
    pub fn is_invariant(&self) -> Option<bool> {
        self.ambient.deck_action()?;
        Some(
            self.generators
                .iter()
                .all(|g| self.contains(&self.ambient.act(g).expect("deck action present"))),
        )
    }

    /// All elements, for small subgroups, as combinations of the canonical
    /// rows with coefficient `c_i` in `[0, d_i / h_ii)`.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let n = self
            .order()
            .to_usize()
            .filter(|&n| n <= 5_000_000)
            .ok_or_else(|| Error::TooLarge(format!("cannot list the elements of {self}")))?;
        let radices: Vec<BigInt> = self
            .ambient
            .factors()
            .iter()
            .enumerate()
            .map(|(i, d)| d / &self.canonical[i][i])
            .collect();
        let mut out = Vec::with_capacity(n);
        let mut cur = vec![BigInt::zero(); radices.len()];
        loop {
            let mut acc = self.ambient.zero();
            for (c, row) in cur.iter().zip(&self.canonical) {
                if !c.is_zero() {
                    let g = self.ambient.element(row).expect("rank matches");
                    acc = self.ambient.add(&acc, &self.ambient.scale(&g, c));
                }
            }
            out.push(acc);
            let mut i = radices.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < radices[i] {
                    break;
                }
                cur[i] = BigInt::zero();
            }
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// Row Hermite normal form of a full-column-rank matrix; returns the
/// leading `r x r` block.
fn hermite(mut rows: Vec<Vec<BigInt>>, r: usize) -> Vec<Vec<BigInt>> {
    for c in 0..r {
        loop {
            let best = (c..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()).then(a.cmp(&b)))
                .expect("lattice has full rank");
            rows.swap(c, best);
            let mut done = true;
            for i in c + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[c][c]);
                let src = rows[c].clone();
                for (x, y) in rows[i].iter_mut().zip(&src) {
                    *x -= &q * y;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[c][c].is_negative() {
            for x in rows[c].iter_mut() {
                *x = -&*x;
            }
        }
        let src = rows[c].clone();
        for i in 0..c {
            let q = rows[i][c].div_floor(&src[c]);
            if q.is_zero() {
                continue;
            }
            for (x, y) in rows[i].iter_mut().zip(&src) {
                *x -= &q * y;
            }
        }
    }
    rows.truncate(r);
    rows
}

/// Vanishing test applied to partial generator sets during enumeration:
/// `lambda(a, b) = a^T num b / den (mod 1)`.
#[derive(Clone, Debug)]
pub(crate) struct IsotropyFilter {
    pub num: Vec<Vec<i64>>,
    pub den: i64,
}

impl IsotropyFilter {
    fn pair(&self, a: &[i64], b: &[i64]) -> bool {
        let den = self.den as i128;
        let mut s: i128 = 0;
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            let mut t: i128 = 0;
            for (j, y) in b.iter().enumerate() {
                t = (t + self.num[i][j] as i128 * *y as i128) % den;
            }
            s = (s + *x as i128 * t) % den;
        }
        s.rem_euclid(den) == 0
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct EnumLimits {
    pub isotropy: Option<IsotropyFilter>,
}

struct Frame {
    level: usize,
    remaining: i64,
    pivots: Vec<i64>,
    pivot_idx: usize,
    counter: Option<Vec<i64>>,
}

/// Lazy, deterministic stream of subgroups of a fixed order.
pub struct SubgroupStream {
    ambient: FinAbGroup,
    d: Vec<i64>,
    prefix: Vec<i128>,
    rows: Vec<Vec<i64>>,
    images: Vec<Vec<i64>>,
    stack: Vec<Frame>,
    limits: EnumLimits,
    pending_trivial: bool,
}

/// Every subgroup of `g` of order `n`, each exactly once.
pub fn enumerate_subgroups_of_order(g: &FinAbGroup, n: &BigInt) -> Result<SubgroupStream> {
    SubgroupStream::new(g, n, EnumLimits::default())
}

impl SubgroupStream {
    pub(crate) fn new(g: &FinAbGroup, n: &BigInt, limits: EnumLimits) -> Result<Self> {
        let order = g.order();
        if !n.is_positive() || !order.is_multiple_of(n) {
            return Err(Error::OrderDoesNotDivide {
                n: n.clone(),
                order,
            });
        }
        let d = g.small_factors()?;
        let r = d.len();
        let index = (order / n).to_i64().expect("index bounded by order");
        let mut prefix = vec![1i128; r + 1];
        for i in 0..r {
            prefix[i + 1] = prefix[i] * d[i] as i128;
        }
        let mut stream = SubgroupStream {
            ambient: g.clone(),
            d,
            prefix,
            rows: vec![Vec::new(); r],
            images: vec![Vec::new(); r],
            stack: Vec::new(),
            limits,
            pending_trivial: r == 0,
        };
        if r > 0 {
            let frame = stream.frame(r - 1, index);
            stream.stack.push(frame);
        }
        Ok(stream)
    }

    fn frame(&self, level: usize, remaining: i64) -> Frame {
        let di = self.d[level];
        let below = self.prefix[level];
        let pivots = (1..=di)
            .filter(|h| di % h == 0 && remaining % h == 0 && below % (remaining / h) as i128 == 0)
            .collect();
        Frame {
            level,
            remaining,
            pivots,
            pivot_idx: 0,
            counter: None,
        }
    }

    /// Advances the top frame to its next admissible row; returns false
    /// when the frame is exhausted.
    fn advance_top(&mut self) -> bool {
        let r = self.d.len();
        let top = self.stack.len() - 1;
        loop {
            let (level, pivot) = {
                let f = &mut self.stack[top];
                if f.pivot_idx >= f.pivots.len() {
                    return false;
                }
                let level = f.level;
                let radices: Vec<i64> = (level + 1..r).map(|j| self.rows[j][j]).collect();
                match &mut f.counter {
                    None => f.counter = Some(vec![0; r - level - 1]),
                    Some(c) => {
                        if !increment(c, &radices) {
                            f.pivot_idx += 1;
                            f.counter = None;
                            continue;
                        }
                    }
                }
                (level, f.pivots[f.pivot_idx])
            };
            let counter = self.stack[top].counter.clone().expect("set above");
            let mut row = vec![0i64; r];
            row[level] = pivot;
            for (k, v) in counter.iter().enumerate() {
                row[level + 1 + k] = *v;
            }
            if !self.contains_relation(level, pivot, &row) {
                continue;
            }
            let image: Vec<i64> = row
                .iter()
                .zip(&self.d)
                .map(|(x, d)| x.rem_euclid(*d))
                .collect();
            if let Some(iso) = &self.limits.isotropy {
                if !iso.pair(&image, &image)
                    || (level + 1..r).any(|k| !iso.pair(&image, &self.images[k]))
                {
                    continue;
                }
            }
            self.rows[level] = row;
            self.images[level] = image;
            return true;
        }
    }

    /// `d_level * e_level` must lie in the lattice spanned by this row and
    /// the rows already fixed below it.
    fn contains_relation(&self, level: usize, pivot: i64, row: &[i64]) -> bool {
        let r = self.d.len();
        let mult = (self.d[level] / pivot) as i128;
        let mut w: Vec<i128> = row.iter().map(|&x| x as i128 * mult).collect();
        w[level] = 0;
        for c in level + 1..r {
            let h = self.rows[c][c] as i128;
            if w[c] % h != 0 {
                return false;
            }
            let q = w[c] / h;
            if q != 0 {
                for (x, y) in w.iter_mut().zip(&self.rows[c]).skip(c) {
                    *x -= q * *y as i128;
                }
            }
        }
        true
    }

    fn emit(&self) -> Subgroup {
        let canonical = self
            .rows
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Subgroup::from_canonical(self.ambient.clone(), canonical)
    }
}

fn increment(c: &mut [i64], radices: &[i64]) -> bool {
    for k in (0..c.len()).rev() {
        c[k] += 1;
        if c[k] < radices[k] {
            return true;
        }
        c[k] = 0;
    }
    false
}

impl Iterator for SubgroupStream {
    type Item = Subgroup;

    fn next(&mut self) -> Option<Subgroup> {
        if self.pending_trivial {
            self.pending_trivial = false;
            return Some(Subgroup::trivial(&self.ambient));
        }
        while !self.stack.is_empty() {
            if !self.advance_top() {
                self.stack.pop();
                continue;
            }
            let top = self.stack.last().expect("non-empty");
            let level = top.level;
            let remaining = top.remaining / top.pivots[top.pivot_idx];
            if level == 0 {
                if remaining == 1 {
                    return Some(self.emit());
                }
                continue;
            }
            let frame = self.frame(level - 1, remaining);
            self.stack.push(frame);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::big;
    use std::collections::HashSet;

    fn count(factors: &[i64], n: i64) -> usize {
        let g = FinAbGroup::from_i64(factors).unwrap();
        enumerate_subgroups_of_order(&g, &big(n)).unwrap().count()
    }

    #[test]
    fn lines_in_plane() {
        // (9 - 1) / (3 - 1) one-dimensional subspaces of F_3^2
        assert_eq!(count(&[3, 3], 3), 4);
    }

    #[test]
    fn trivial_subgroup_only() {
        let g = FinAbGroup::from_i64(&[2, 6]).unwrap();
        let subs: Vec<_> = enumerate_subgroups_of_order(&g, &big(1)).unwrap().collect();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0], Subgroup::trivial(&g));
        assert!(subs[0].generators().is_empty());
    }

    #[test]
    fn rejects_non_divisor() {
        let g = FinAbGroup::from_i64(&[3, 3]).unwrap();
        assert!(matches!(
            enumerate_subgroups_of_order(&g, &big(2)),
            Err(Error::OrderDoesNotDivide { .. })
        ));
    }

    #[test]
    fn trivial_group() {
        let g = FinAbGroup::trivial();
        assert_eq!(enumerate_subgroups_of_order(&g, &big(1)).unwrap().count(), 1);
    }

    #[test]
    fn cyclic_groups_have_one_subgroup_per_divisor() {
        for n in [1, 2, 3, 4, 6, 12] {
            assert_eq!(count(&[12], n), 1);
        }
    }

    #[test]
    fn stream_is_duplicate_free_and_membership_agrees() {
        let g = FinAbGroup::from_i64(&[2, 4]).unwrap();
        let subs: Vec<_> = enumerate_subgroups_of_order(&g, &big(4)).unwrap().collect();
        let set: HashSet<_> = subs.iter().cloned().collect();
        assert_eq!(set.len(), subs.len());
        for s in &subs {
            assert_eq!(s.order(), big(4));
            assert_eq!(s.elements().unwrap().len(), 4);
            let again = Subgroup::generated_by(&g, s.generators()).unwrap();
            assert_eq!(&again, s);
        }
    }

    #[test]
    fn whole_and_trivial_orders() {
        let g = FinAbGroup::from_i64(&[3, 9]).unwrap();
        assert_eq!(Subgroup::whole(&g).order(), big(27));
        assert_eq!(Subgroup::trivial(&g).order(), big(1));
    }
}
