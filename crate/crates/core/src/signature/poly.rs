//! Dense univariate polynomials over `Q`, low degree first, with the root
//! counting tools needed to decide signs at real algebraic points.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<BigRational>);

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.lead().unwrap().clone();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quo = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quo), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn squarefree(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Sign of `p(x)` as -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        sign(&self.eval(x))
    }
}

pub fn sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_default();
                    let b = o.0.get(i).cloned().unwrap_or_default();
                    a + b
                })
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Sturm chain of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    chain: Vec<Poly>,
}

impl Sturm {
    pub fn new(p: &Poly) -> Self {
        let mut chain = vec![p.clone()];
        if p.degree().unwrap_or(0) > 0 {
            chain.push(p.derivative());
            loop {
                let n = chain.len();
                let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(-&r);
            }
        }
        Sturm { chain }
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    fn at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn at_infinity(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| p.lead().map_or(0, sign)))
    }

    /// Distinct roots in `(a, infinity)`.
    pub fn above(&self, a: &BigRational) -> usize {
        self.at(a) - self.at_infinity()
    }

    /// Distinct roots in `(a, b]`.
    pub fn between(&self, a: &BigRational, b: &BigRational) -> usize {
        self.at(a) - self.at(b)
    }
}

/// Dickson polynomials `D_0 = 2`, `D_1 = x`, `D_{j+1} = x D_j - D_{j-1}`,
/// so that `D_j(2 cos t) = 2 cos(j t)`.
pub fn dickson(n: usize) -> Vec<Poly> {
    let mut out = vec![Poly::from_i64(&[2])];
    if n >= 1 {
        out.push(Poly::x());
    }
    for j in 1..n {
        let next = &(&Poly::x() * &out[j]) - &out[j - 1];
        out.push(next);
    }
    out
}

/// An isolating interval `(lo, hi]` for one real root of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

/// Isolates every real root of `p` inside `(-bound, bound]`, in increasing
/// order, by bisection on Sturm counts.
pub fn isolate_roots(p: &Poly, bound: &BigRational) -> Vec<RootInterval> {
    let sf = p.squarefree();
    if sf.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sturm = Sturm::new(&sf);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound.clone())];
    while let Some((lo, hi)) = stack.pop() {
        match sturm.between(&lo, &hi) {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mid = (&lo + &hi) / q(2);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Halves an isolating interval of a root of squarefree `p` until its
/// width is below `width`.
pub fn refine(sturm: &Sturm, iv: &RootInterval, width: &BigRational) -> RootInterval {
    let mut iv = iv.clone();
    while &iv.hi - &iv.lo >= *width {
        let mid = (&iv.lo + &iv.hi) / q(2);
        if sturm.between(&iv.lo, &mid) == 1 {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
    iv
}
