//! Circulant surgery matrices for cyclic branched covers, their cokernels,
//! deck actions, lift classes and the determinant identities for `A(p)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::abelian::{determinant, from_presentation, prime_divisors, FinAbGroup, GroupElement, Presentation};
use crate::error::{Error, Result};
use crate::linking::TorsionLinkingForm;
use crate::obstruction::{module_closure, CgPatternProfile};

/// A symmetric circulant: `f` on the diagonal and `l_d` between lifts at
/// cyclic distance `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantCoverMatrix {
    pub p: usize,
    pub self_framing: BigInt,
    pub offdiag: BTreeMap<usize, BigInt>,
    pub matrix: Vec<Vec<BigInt>>,
    /// Set when `p` is even and the offset `p/2` was counted from both sides.
    pub wraparound_doubled: bool,
}

fn check_offsets(p: usize, offdiag: &BTreeMap<usize, BigInt>) -> Result<()> {
    for &d in offdiag.keys() {
        if d == 0 || d > p / 2 {
            return Err(Error::Input(format!("offset {d} outside 1..={}", p / 2)));
        }
    }
    Ok(())
}

/// Entry `(i, j)`, `i != j`, is `sum_d l_d * #{s in {+d, -d} : j = i + s (mod p)}`,
/// so for `d = p/2` both signs land on the same lift and the entry doubles.
pub fn cover_matrix(p: usize, f: &BigInt, offdiag: &BTreeMap<usize, BigInt>) -> Result<CirculantCoverMatrix> {
    if p < 2 {
        return Err(Error::CoverDegree(p));
    }
    check_offsets(p, offdiag)?;
    let mut matrix = vec![vec![BigInt::zero(); p]; p];
    for (i, row) in matrix.iter_mut().enumerate() {
        row[i] = f.clone();
        for (&d, l) in offdiag {
            row[(i + d) % p] += l;
            row[(i + p - d) % p] += l;
        }
    }
    let wraparound_doubled = p % 2 == 0 && offdiag.get(&(p / 2)).is_some_and(|l| !l.is_zero());
    Ok(CirculantCoverMatrix {
        p,
        self_framing: f.clone(),
        offdiag: offdiag.clone(),
        matrix,
        wraparound_doubled,
    })
}

/// The same band without wraparound.
pub fn banded_matrix(p: usize, f: &BigInt, offdiag: &BTreeMap<usize, BigInt>) -> Result<Vec<Vec<BigInt>>> {
    if p == 0 {
        return Err(Error::CoverDegree(p));
    }
    let mut m = vec![vec![BigInt::zero(); p]; p];
    for i in 0..p {
        m[i][i] = f.clone();
        for (&d, l) in offdiag {
            if d == 0 {
                return Err(Error::Input("band offset must be positive".into()));
            }
            if i + d < p {
                m[i][i + d] += l;
                m[i + d][i] += l;
            }
        }
    }
    Ok(m)
}

fn paper_band() -> BTreeMap<usize, BigInt> {
    BTreeMap::from([(1, BigInt::from(-2))])
}

/// `A(p)`: framing 5, linking -2 between neighbouring lifts.
pub fn matrix_a(p: usize) -> Result<CirculantCoverMatrix> {
    cover_matrix(p, &BigInt::from(5), &paper_band())
}

/// `B(p)`: the tridiagonal truncation of `A(p)`.
pub fn matrix_b(p: usize) -> Result<Vec<Vec<BigInt>>> {
    banded_matrix(p, &BigInt::from(5), &paper_band())
}

/// `b_0 = 1`, `b_1 = 5`, `b_n = 5 b_{n-1} - 4 b_{n-2}`.
fn b_recurrence(n: usize) -> BigInt {
    let (mut prev, mut cur) = (BigInt::one(), BigInt::from(5));
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = BigInt::from(5) * &cur - BigInt::from(4) * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// A value computed independently three ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCheck {
    pub direct: BigInt,
    pub recurrence: BigInt,
    pub closed_form: BigInt,
}

impl TripleCheck {
    fn agreed(self, what: &str) -> Result<BigInt> {
        if self.direct == self.recurrence && self.recurrence == self.closed_form {
            Ok(self.direct)
        } else {
            Err(Error::SelfCheck(format!(
                "{what}: direct {}, recurrence {}, closed form {}",
                self.direct, self.recurrence, self.closed_form
            )))
        }
    }
}

pub fn det_a_methods(p: usize) -> Result<TripleCheck> {
    let a = matrix_a(p)?;
    let direct = determinant(&a.matrix);
    let two_p1 = BigInt::one() << (p + 1);
    let recurrence = BigInt::from(5) * b_recurrence(p - 1) - BigInt::from(8) * b_recurrence(p - 2) - two_p1;
    let m = (BigInt::one() << p) - 1;
    Ok(TripleCheck {
        direct,
        recurrence,
        closed_form: &m * &m,
    })
}

/// `det A(p)`, checked against the cofactor recurrence and `(2^p - 1)^2`.
pub fn det_a(p: usize) -> Result<BigInt> {
    det_a_methods(p)?.agreed(&format!("det A({p})"))
}

pub fn det_b_methods(p: usize) -> Result<TripleCheck> {
    let direct = determinant(&matrix_b(p)?);
    let closed_form = ((BigInt::one() << (2 * p + 2)) - 1) / 3;
    Ok(TripleCheck {
        direct,
        recurrence: b_recurrence(p),
        closed_form,
    })
}

/// `det B(p)`, checked against `b_p = 5 b_{p-1} - 4 b_{p-2}` and `(4^{p+1} - 1)/3`.
pub fn det_b(p: usize) -> Result<BigInt> {
    det_b_methods(p)?.agreed(&format!("det B({p})"))
}

/// Cokernel of a cover matrix with its deck action, lift classes and form.
#[derive(Clone, Debug)]
pub struct CoverHomology {
    pub presentation: Presentation,
    /// The cokernel, carrying the cyclic shift as deck action.
    pub group: FinAbGroup,
    /// Images of the meridians of the `p` surgery curves.
    pub lifts: Vec<GroupElement>,
    pub is_cyclic_module: bool,
    /// `A^{-1} (mod 1)` transported to invariant-factor coordinates.
    pub form: TorsionLinkingForm,
}

fn rational_inverse(a: &[Vec<BigInt>]) -> Result<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !m[i][c].is_zero()).ok_or(Error::Singular)?;
        m.swap(c, piv);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let src = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(&src) {
                    *x -= &f * y;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn homology_and_lifts(m: &CirculantCoverMatrix) -> Result<CoverHomology> {
    let p = m.p;
    if determinant(&m.matrix).is_zero() {
        return Err(Error::Singular);
    }
    let pres = from_presentation(&m.matrix)?;
    let s = &pres.smith;
    let torsion: Vec<usize> = (0..p)
        .filter(|&k| s.diag.get(k).is_some_and(|d| !d.is_one()))
        .collect();
    let r = torsion.len();
    // row-vector action y -> y V^{-1}_T P V_T, transposed for column vectors
    let mut deck = vec![vec![BigInt::zero(); r]; r];
    for (a, &ka) in torsion.iter().enumerate() {
        let lift = &s.v_inv[ka];
        let mut shifted = vec![BigInt::zero(); p];
        for j in 0..p {
            shifted[(j + 1) % p] = lift[j].clone();
        }
        for (b, &kb) in torsion.iter().enumerate() {
            let img: BigInt = (0..p).map(|j| &shifted[j] * &s.v[j][kb]).sum();
            deck[b][a] = img;
        }
    }
    let group = pres.group.clone().with_deck_action(deck, p as u64)?;
    let lifts: Vec<GroupElement> = pres.generator_images.clone();
    let is_cyclic_module = match lifts.first() {
        Some(z) if r > 0 => module_closure(std::slice::from_ref(z), &group)?.order() == group.order(),
        _ => true,
    };
    let inv = rational_inverse(&m.matrix)?;
    let gram: Vec<Vec<BigRational>> = torsion
        .iter()
        .map(|&ka| {
            torsion
                .iter()
                .map(|&kb| {
                    let mut acc = BigRational::zero();
                    for i in 0..p {
                        if s.v_inv[ka][i].is_zero() {
                            continue;
                        }
                        for j in 0..p {
                            acc += &inv[i][j] * BigRational::from_integer(&s.v_inv[ka][i] * &s.v_inv[kb][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let form = TorsionLinkingForm::new(group.clone(), gram)?;
    Ok(CoverHomology {
        presentation: pres,
        group,
        lifts,
        is_cyclic_module,
        form,
    })
}

/// The profile of the pattern `P_n` at a prime `p | n`: cover matrix
/// `A(p)`, lifts the meridians, modulus the smallest prime dividing
/// `sqrt|H|`. The Casson-Gordon bound is an input.
pub fn pn_profile(p: usize, n: i64, cg_bound: BigRational) -> Result<CgPatternProfile> {
    let m = matrix_a(p)?;
    let h = homology_and_lifts(&m)?;
    let root = h.group.order().sqrt();
    let q = prime_divisors(&root)
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvalidProfile("H is trivial".into()))?;
    if cg_bound.is_negative() {
        return Err(Error::InvalidProfile("Casson-Gordon bound must be non-negative".into()));
    }
    CgPatternProfile::new(n, p as u64, h.form, h.lifts, cg_bound, q)
}
