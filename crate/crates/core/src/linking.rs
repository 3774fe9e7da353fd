//! Torsion linking forms `G x G -> Q/Z` and their metabolizers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian::{
    smith_normal_form, EnumLimits, FinAbGroup, GroupElement, IsotropyFilter, Subgroup,
    SubgroupStream,
};
use crate::error::{Error, Result};

/// Fractional part in `[0, 1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - BigRational::from_integer(x.floor().to_integer())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionLinkingForm {
    group: FinAbGroup,
    gram: Vec<Vec<BigRational>>,
}

impl TorsionLinkingForm {
    /// Validates symmetry, well-definedness and nondegeneracy.
    pub fn new(group: FinAbGroup, gram: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = group.rank();
        if gram.len() != r || gram.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidForm(format!("gram matrix must be {r}x{r}")));
        }
        let gram: Vec<Vec<BigRational>> = gram
            .iter()
            .map(|row| row.iter().map(frac).collect())
            .collect();
        for i in 0..r {
            for j in 0..r {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidForm(format!("entry ({i},{j}) breaks symmetry")));
                }
                let scaled = &gram[i][j] * BigRational::from_integer(group.factors()[i].clone());
                if !scaled.is_integer() {
                    return Err(Error::InvalidForm(format!(
                        "entry ({i},{j}) is not killed by {}",
                        group.factors()[i]
                    )));
                }
            }
        }
        let form = TorsionLinkingForm { group, gram };
        if !form.is_nondegenerate() {
            return Err(Error::InvalidForm("form is degenerate".into()));
        }
        Ok(form)
    }

    /// Gram matrix `num / den` (mod 1) over `factors`.
    pub fn from_integers(
        factors: &[BigInt],
        num: &[Vec<BigInt>],
        den: &BigInt,
        deck: Option<(Vec<Vec<BigInt>>, u64)>,
    ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidForm("gram denominator is zero".into()));
        }
        let mut group = FinAbGroup::new(factors.to_vec())?;
        if let Some((m, p)) = deck {
            group = group.with_deck_action(m, p)?;
        }
        let gram = num
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| BigRational::new(x.clone(), den.clone()))
                    .collect()
            })
            .collect();
        Self::new(group, gram)
    }

    pub fn from_i64(factors: &[i64], num: &[&[i64]], den: i64) -> Result<Self> {
        let f: Vec<BigInt> = factors.iter().map(|&x| BigInt::from(x)).collect();
        let n: Vec<Vec<BigInt>> = num
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_integers(&f, &n, &BigInt::from(den), None)
    }

    pub fn trivial() -> Self {
        TorsionLinkingForm {
            group: FinAbGroup::trivial(),
            gram: Vec::new(),
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn gram(&self) -> &[Vec<BigRational>] {
        &self.gram
    }

    /// Replaces the deck action on the underlying group.
    pub fn with_deck_action(mut self, matrix: Vec<Vec<BigInt>>, period: u64) -> Result<Self> {
        self.group = self.group.without_deck_action().with_deck_action(matrix, period)?;
        Ok(self)
    }

    /// Integer numerators over the common denominator `exponent(G)`.
    fn integer_gram(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let e = self.group.exponent();
        let num = self
            .gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x * BigRational::from_integer(e.clone())).to_integer())
                    .collect()
            })
            .collect();
        (num, e)
    }

    /// The adjoint `G -> Hom(G, Q/Z)` is injective iff its image has `|G|` elements.
    fn is_nondegenerate(&self) -> bool {
        let r = self.group.rank();
        if r == 0 {
            return true;
        }
        let (num, e) = self.integer_gram();
        let mut rows = num;
        for i in 0..r {
            let mut row = vec![BigInt::zero(); r];
            row[i] = e.clone();
            rows.push(row);
        }
        let index: BigInt = smith_normal_form(&rows).diag.iter().product();
        let image = e.pow(r as u32) / index;
        image == self.group.order()
    }

    pub fn evaluate(&self, a: &GroupElement, b: &GroupElement) -> Result<BigRational> {
        self.group.check(a)?;
        self.group.check(b)?;
        let mut s = BigRational::zero();
        for (i, x) in a.coords().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords().iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                s += &self.gram[i][j] * BigRational::from_integer(x * y);
            }
        }
        Ok(frac(&s))
    }

    pub fn negate(&self) -> Self {
        TorsionLinkingForm {
            group: self.group.clone(),
            gram: self
                .gram
                .iter()
                .map(|row| row.iter().map(|x| frac(&-x)).collect())
                .collect(),
        }
    }

    /// `lambda + lambda + (-lambda)` on `H + H + H`, with coordinates ordered
    /// as in [`FinAbGroup::power`] and the deck action extended diagonally.
    /// The second return value maps each summand's coordinates into the sum.
    pub fn triple_sum(&self) -> (Self, Vec<Vec<usize>>) {
        let (group, pos) = self.group.power(3);
        let n = group.rank();
        let mut gram = vec![vec![BigRational::zero(); n]; n];
        for (copy, p) in pos.iter().enumerate() {
            for i in 0..self.group.rank() {
                for j in 0..self.group.rank() {
                    let v = &self.gram[i][j];
                    gram[p[i]][p[j]] = if copy == 2 { frac(&-v) } else { v.clone() };
                }
            }
        }
        (TorsionLinkingForm { group, gram }, pos)
    }

    pub fn vanishes_on(&self, m: &Subgroup) -> bool {
        let gens = m.generators();
        gens.iter().enumerate().all(|(i, a)| {
            gens[i..]
                .iter()
                .all(|b| self.evaluate(a, b).map(|v| v.is_zero()).unwrap_or(false))
        })
    }

    pub fn is_metabolizer(&self, m: &Subgroup) -> bool {
        if m.ambient().factors() != self.group.factors() {
            return false;
        }
        let o = m.order();
        &o * &o == self.group.order() && self.vanishes_on(m)
    }

    fn isotropy_filter(&self) -> Result<IsotropyFilter> {
        let (num, den) = self.integer_gram();
        let too_large = || Error::TooLarge("linking form numerators exceed enumeration range".into());
        Ok(IsotropyFilter {
            num: num
                .iter()
                .map(|row| row.iter().map(|x| x.to_i64().ok_or_else(too_large)).collect())
                .collect::<Result<_>>()?,
            den: den.to_i64().ok_or_else(too_large)?,
        })
    }
}

/// Deterministic stream of the metabolizers of a form.
pub struct MetabolizerStream {
    inner: Option<SubgroupStream>,
    invariant_only: bool,
}

impl Iterator for MetabolizerStream {
    type Item = Subgroup;

    fn next(&mut self) -> Option<Subgroup> {
        let inner = self.inner.as_mut()?;
        for m in inner.by_ref() {
            if !self.invariant_only || m.is_invariant() == Some(true) {
                return Some(m);
            }
        }
        None
    }
}

/// Every metabolizer of `form`, optionally only those preserved by the
/// deck action. Partial generating sets are pruned as soon as they fail to
/// be isotropic, so the full subgroup lattice is never materialized.
pub fn enumerate_metabolizers(form: &TorsionLinkingForm, invariant_only: bool) -> Result<MetabolizerStream> {
    if invariant_only && form.group().deck_action().is_none() {
        return Err(Error::MissingDeckAction);
    }
    let order = form.group().order();
    let root = order.sqrt();
    if &root * &root != order {
        return Ok(MetabolizerStream {
            inner: None,
            invariant_only,
        });
    }
    let limits = EnumLimits {
        isotropy: Some(form.isotropy_filter()?),
    };
    Ok(MetabolizerStream {
        inner: Some(SubgroupStream::new(form.group(), &root, limits)?),
        invariant_only,
    })
}

/// Reference implementation: filter all subgroups of order `sqrt|G|`.
pub fn metabolizers_by_filter(form: &TorsionLinkingForm) -> Result<Vec<Subgroup>> {
    let order = form.group().order();
    let root = order.sqrt();
    if &root * &root != order {
        return Ok(Vec::new());
    }
    Ok(crate::abelian::enumerate_subgroups_of_order(form.group(), &root)?
        .filter(|m| form.is_metabolizer(m))
        .collect())
}

/// Exact `num/den` rendering used in reports.
pub fn rational_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else if x.is_negative() {
        format!("-{}/{}", x.numer().abs(), x.denom())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::big;

    fn composite() -> TorsionLinkingForm {
        TorsionLinkingForm::from_i64(&[3, 3], &[&[1, 0], &[0, -1]], 3).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    #[test]
    fn evaluate_examples() {
        let f = composite();
        let g = f.group();
        let x = g.element_i64(&[1, 0]).unwrap();
        let xy = g.element_i64(&[1, 1]).unwrap();
        assert_eq!(f.evaluate(&x, &x).unwrap(), q(1, 3));
        assert_eq!(f.evaluate(&xy, &xy).unwrap(), q(0, 1));
        assert_eq!(f.evaluate(&g.zero(), &x).unwrap(), q(0, 1));
    }

    #[test]
    fn triple_sum_gram() {
        let (t, pos) = composite().triple_sum();
        let expected = [1, -1, 1, -1, -1, 1];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(t.gram()[i][i], frac(&q(*e, 3)));
        }
        assert_eq!(pos, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        let (triv, _) = TorsionLinkingForm::trivial().triple_sum();
        assert!(triv.group().is_trivial());
        let z9 = TorsionLinkingForm::from_i64(&[9], &[&[1]], 9).unwrap();
        let (t9, _) = z9.triple_sum();
        assert_eq!(t9.gram()[2][2], q(8, 9));
        assert_eq!(t9.gram()[0][0], q(1, 9));
    }

    #[test]
    fn rejects_bad_forms() {
        assert!(TorsionLinkingForm::from_i64(&[3], &[&[0]], 3).is_err());
        assert!(TorsionLinkingForm::from_i64(&[3], &[&[1]], 9).is_err());
        assert!(TorsionLinkingForm::from_i64(&[3, 3], &[&[1, 1], &[0, 1]], 3).is_err());
        assert!(TorsionLinkingForm::from_i64(&[9], &[&[3]], 9).is_err());
    }

    #[test]
    fn small_metabolizers() {
        let f = composite();
        let ms: Vec<_> = enumerate_metabolizers(&f, false).unwrap().collect();
        assert_eq!(ms.len(), 2);
        let g = f.group();
        let plus = Subgroup::generated_by(g, &[g.element_i64(&[1, 1]).unwrap()]).unwrap();
        let minus = Subgroup::generated_by(g, &[g.element_i64(&[1, 2]).unwrap()]).unwrap();
        assert!(ms.contains(&plus) && ms.contains(&minus));
        assert_eq!(metabolizers_by_filter(&f).unwrap().len(), 2);
    }

    #[test]
    fn non_square_order_is_empty() {
        let f = TorsionLinkingForm::from_i64(&[3], &[&[1]], 3).unwrap();
        assert_eq!(enumerate_metabolizers(&f, false).unwrap().count(), 0);
    }

    #[test]
    fn trivial_form_has_trivial_metabolizer() {
        let f = TorsionLinkingForm::trivial();
        let ms: Vec<_> = enumerate_metabolizers(&f, false).unwrap().collect();
        assert_eq!(ms.len(), 1);
        assert!(f.is_metabolizer(&ms[0]));
    }

    #[test]
    fn invariant_only_needs_deck_action() {
        assert!(matches!(
            enumerate_metabolizers(&composite(), true),
            Err(Error::MissingDeckAction)
        ));
    }

    #[test]
    fn composite_x_span_is_not_metabolizer() {
        let (t, _) = composite().triple_sum();
        let g = t.group();
        let gens: Vec<_> = [0, 2, 4]
            .iter()
            .map(|&i| g.generator(i))
            .collect();
        let m = Subgroup::generated_by(g, &gens).unwrap();
        assert_eq!(m.order(), big(27));
        assert!(!t.is_metabolizer(&m));
    }
}
