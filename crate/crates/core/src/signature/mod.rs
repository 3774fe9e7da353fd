//! Tristram-Levine signatures `sigma_omega` of Seifert matrices, evaluated
//! exactly at roots of unity, and the integral `rho_0`.
//!
//! At `omega = exp(2 pi i k/N)` the Hermitian matrix
//! `(1 - omega) V + (1 - conj omega) V^T` has entries in `Z[omega]`. Its
//! characteristic polynomial is computed division-free over
//! `Z[x]/(x^N - 1)`; each coefficient is real at `omega` and equals a
//! rational polynomial in `2 cos(2 pi k/N)`, whose sign is decided with
//! Sturm sequences. Descartes' rule on the real-rooted characteristic
//! polynomial then counts positive and negative eigenvalues.

pub mod poly;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian::determinant;
use crate::error::{Error, Result};
use poly::{dickson, isolate_roots, refine, sign, Poly, RootInterval, Sturm};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    v: Vec<Vec<BigInt>>,
}

impl SeifertMatrix {
    /// Requires a square matrix with `det(V - V^T) = +-1`.
    pub fn new(v: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = v.len();
        if v.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSeifert("matrix is not square".into()));
        }
        let skew: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| &v[i][j] - &v[j][i]).collect())
            .collect();
        let d = determinant(&skew);
        if d.abs() != BigInt::one() {
            return Err(Error::InvalidSeifert(format!("det(V - V^T) = {d}, expected +-1")));
        }
        Ok(SeifertMatrix { v })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn unknot() -> Self {
        SeifertMatrix { v: Vec::new() }
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.v
    }

    pub fn size(&self) -> usize {
        self.v.len()
    }

    /// Block sum, a Seifert matrix of the connected sum.
    pub fn block_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let (a, b) = (self.size(), other.size());
        let mut v = vec![vec![BigInt::zero(); a + b]; a + b];
        for i in 0..a {
            for j in 0..a {
                v[i][j] = self.v[i][j].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                v[a + i][a + j] = other.v[i][j].clone();
            }
        }
        SeifertMatrix { v }
    }

    /// `-V^T`, a Seifert matrix of the mirror image.
    pub fn mirror(&self) -> SeifertMatrix {
        let n = self.size();
        SeifertMatrix {
            v: (0..n)
                .map(|i| (0..n).map(|j| -&self.v[j][i]).collect())
                .collect(),
        }
    }

    /// `Delta(t) = det(V - t V^T)`, coefficients low degree first.
    pub fn alexander(&self) -> Vec<BigInt> {
        let n = self.size();
        let samples: Vec<(BigRational, BigRational)> = (0..=n as i64)
            .map(|t| {
                let m: Vec<Vec<BigInt>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| &self.v[i][j] - BigInt::from(t) * &self.v[j][i])
                            .collect()
                    })
                    .collect();
                (q(t), BigRational::from_integer(determinant(&m)))
            })
            .collect();
        let mut acc = Poly::zero();
        for (i, (xi, yi)) in samples.iter().enumerate() {
            let mut basis = Poly::constant(yi.clone());
            for (j, (xj, _)) in samples.iter().enumerate() {
                if i != j {
                    let factor = Poly::new(vec![-xj.clone(), BigRational::one()]);
                    basis = (&basis * &factor).scale(&(xi - xj).recip());
                }
            }
            acc = &acc + &basis;
        }
        let mut out: Vec<BigInt> = acc.coeffs().iter().map(|c| c.to_integer()).collect();
        if out.is_empty() {
            out.push(BigInt::zero());
        }
        out
    }

    /// `R` with `t^{-c} Delta(t) = R(t + 1/t)`, `c` the centre of `Delta`.
    pub fn alexander_in_x(&self) -> Poly {
        let delta = self.alexander();
        let lo = delta.iter().position(|c| !c.is_zero());
        let hi = delta.iter().rposition(|c| !c.is_zero());
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Poly::zero();
        };
        let centre = (lo + hi) / 2;
        let half = hi - centre;
        let d = dickson(half);
        let mut r = Poly::constant(BigRational::from_integer(delta[centre].clone()));
        for (j, dj) in d.iter().enumerate().skip(1) {
            let c = BigRational::from_integer(delta[centre + j].clone());
            r = &r + &dj.scale(&c);
        }
        r
    }
}

/// An element `sum a_j x^j` of `Z[x]/(x^N - 1)`.
type Cyc = Vec<BigInt>;

fn cyc_mul(a: &Cyc, b: &Cyc) -> Cyc {
    let n = a.len();
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[(i + j) % n] += x * y;
            }
        }
    }
    out
}

fn cyc_add(a: &Cyc, b: &Cyc) -> Cyc {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn cyc_neg(a: &Cyc) -> Cyc {
    a.iter().map(|x| -x).collect()
}

/// Division-free characteristic polynomial `det(tI - A)`, highest degree first.
fn berkowitz(a: &[Vec<Cyc>], n_mod: usize) -> Vec<Cyc> {
    let zero = vec![BigInt::zero(); n_mod];
    let mut one = zero.clone();
    one[0] = BigInt::one();
    let mut poly = vec![one.clone()];
    for r in 0..a.len() {
        // column of the Toeplitz matrix: 1, -a_rr, -R C, -R A C, ...
        let mut col = vec![one.clone(), cyc_neg(&a[r][r])];
        let mut vec_c: Vec<Cyc> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let rc = (0..r).fold(zero.clone(), |acc, j| cyc_add(&acc, &cyc_mul(&a[r][j], &vec_c[j])));
            col.push(cyc_neg(&rc));
            vec_c = (0..r)
                .map(|i| (0..r).fold(zero.clone(), |acc, j| cyc_add(&acc, &cyc_mul(&a[i][j], &vec_c[j]))))
                .collect();
        }
        let mut next = vec![zero.clone(); poly.len() + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, p) in poly.iter().enumerate() {
                if i >= j && i - j < col.len() {
                    *slot = cyc_add(slot, &cyc_mul(&col[i - j], p));
                }
            }
        }
        poly = next;
    }
    poly
}

/// Minimal polynomial of `2 cos(2 pi/n)`, from
/// `sqfree(D_n - 2) = prod_{d | n} psi_d`.
fn min_poly(n: usize, cache: &mut HashMap<usize, Poly>) -> Poly {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let d = dickson(n);
    let mut p = (&d[n] - &Poly::from_i64(&[2])).squarefree();
    for m in (1..n).filter(|m| n % m == 0) {
        p = p.div_rem(&min_poly(m, cache)).0;
    }
    let p = p.monic();
    cache.insert(n, p.clone());
    p
}

/// The point `x0 = 2 cos(2 pi/n)` with exact sign evaluation of rational
/// polynomials there.
struct CirclePoint {
    n: usize,
    dickson: Vec<Poly>,
    exact: Option<BigRational>,
    /// Minimal polynomial and an isolating interval with a sign change.
    isolation: Option<(Poly, RootInterval)>,
}

fn circle_points() -> &'static Mutex<(HashMap<usize, Arc<CirclePoint>>, HashMap<usize, Poly>)> {
    static POINTS: OnceLock<Mutex<(HashMap<usize, Arc<CirclePoint>>, HashMap<usize, Poly>)>> = OnceLock::new();
    POINTS.get_or_init(Default::default)
}

impl CirclePoint {
    fn get(n: usize) -> Arc<CirclePoint> {
        let mut guard = circle_points().lock().unwrap_or_else(|e| e.into_inner());
        let (points, polys) = &mut *guard;
        if let Some(p) = points.get(&n) {
            return p.clone();
        }
        let p = Arc::new(Self::new(n, polys));
        points.insert(n, p.clone());
        p
    }

    fn new(n: usize, polys: &mut HashMap<usize, Poly>) -> Self {
        let dickson = dickson(n.max(1));
        let exact = match n {
            1 => Some(q(2)),
            2 => Some(q(-2)),
            3 => Some(q(-1)),
            4 => Some(q(0)),
            6 => Some(q(1)),
            _ => None,
        };
        let isolation = if exact.is_some() {
            None
        } else {
            let m = min_poly(n, polys);
            Some((m.clone(), bracket(&m, n)))
        };
        CirclePoint {
            n,
            dickson,
            exact,
            isolation,
        }
    }

    /// `Re(sum a_j omega^j)` as a polynomial in `x0`.
    fn real_part(&self, a: &Cyc) -> Poly {
        let mut g = Poly::zero();
        for (j, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = &self.dickson[j.min(self.n - j)];
            g = &g + &d.scale(&BigRational::new(c.clone(), BigInt::from(2)));
        }
        g
    }

    fn sign_of(&self, a: &Cyc) -> i32 {
        let g = self.real_part(a);
        if let Some(x) = &self.exact {
            return g.sign_at(x);
        }
        let (m, iv) = self.isolation.as_ref().expect("irrational point is isolated");
        // g(x0) = 0 iff the minimal polynomial divides g
        let r = g.div_rem(m).1;
        if r.degree().unwrap_or(0) == 0 {
            return r.lead().map_or(0, sign);
        }
        let mut iv = iv.clone();
        let lo_sign = m.sign_at(&iv.lo);
        loop {
            let (lo, hi) = interval_eval(&r, &iv.lo, &iv.hi);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            for _ in 0..16 {
                let mid = (&iv.lo + &iv.hi) / q(2);
                if m.sign_at(&mid) == lo_sign {
                    iv.lo = mid;
                } else {
                    iv.hi = mid;
                }
            }
        }
    }
}

/// An interval around `2 cos(2 pi/n)` containing no other root of its
/// minimal polynomial `m`.
fn bracket(m: &Poly, n: usize) -> RootInterval {
    let c = 2.0 * (std::f64::consts::TAU / n as f64).cos();
    let gap = c - 2.0 * (2.0 * std::f64::consts::TAU / n as f64).cos();
    // the nearest conjugate is at least `gap` away; f64 error is far below 1e-12
    let eps = 1e-12;
    if gap > 1e-9 {
        let lo = BigRational::from_float(c - eps).expect("finite");
        let hi = BigRational::from_float(c + eps).expect("finite");
        let (a, b) = (m.sign_at(&lo), m.sign_at(&hi));
        if a != 0 && b != 0 && a != b {
            return RootInterval { lo, hi };
        }
    }
    let roots = isolate_roots(m, &q(3));
    let iv = roots[roots.len() - 1].clone();
    let sturm = Sturm::new(m);
    let mut iv = refine(&sturm, &iv, &q(1));
    while m.sign_at(&iv.hi) == 0 {
        iv = refine(&sturm, &iv, &((&iv.hi - &iv.lo) / q(2)));
    }
    iv
}

/// Enclosure of `p([lo, hi])` by interval Horner evaluation.
fn interval_eval(p: &Poly, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut acc = (BigRational::zero(), BigRational::zero());
    for c in p.coeffs().iter().rev() {
        let cands = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
        let mn = cands.iter().min().unwrap().clone();
        let mx = cands.iter().max().unwrap().clone();
        acc = (mn + c, mx + c);
    }
    acc
}

/// Counts of positive and negative roots of a real-rooted polynomial
/// from the signs of its coefficients (highest degree first).
fn descartes(signs: &[i32]) -> (usize, usize) {
    let variations = |it: &mut dyn Iterator<Item = i32>| {
        let mut last = 0;
        let mut v = 0;
        for s in it.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    };
    let n = signs.len();
    let pos = variations(&mut signs.iter().copied());
    // p(-t): coefficient of t^m picks up (-1)^m
    let neg = variations(&mut signs.iter().enumerate().map(|(i, &s)| {
        let m = n - 1 - i;
        if m % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    (pos, neg)
}

/// Raw evaluation at `exp(2 pi i k/n)`: (signature, nullity).
fn raw_signature(v: &SeifertMatrix, k: u64, n: u64) -> (i64, usize) {
    let size = v.size();
    let g = k.gcd(&n);
    let (k, n) = ((k / g) as usize, (n / g) as usize);
    if k == 0 || size == 0 {
        return (0, size);
    }
    // with x a primitive n-th root, omega = x^k:
    // H_ij = V_ij (1 - x^k) + V_ji (1 - x^{n-k})
    let h: Vec<Vec<Cyc>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let mut e = vec![BigInt::zero(); n];
                    let (a, b) = (&v.v[i][j], &v.v[j][i]);
                    e[0] += a + b;
                    e[k] -= a;
                    e[n - k] -= b;
                    e
                })
                .collect()
        })
        .collect();
    let charpoly = berkowitz(&h, n);
    let point = CirclePoint::get(n);
    let signs: Vec<i32> = charpoly.iter().map(|c| point.sign_of(c)).collect();
    let nullity = signs.iter().rev().take_while(|&&s| s == 0).count();
    let (pos, neg) = descartes(&signs);
    (pos as i64 - neg as i64, nullity)
}

/// Value of the signature function at a root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaValue {
    pub value: i64,
    /// `omega` is a root of the Alexander polynomial; `value` is then the
    /// average of the two one-sided limits.
    pub at_jump: bool,
}

fn check_root(k: u64, n: u64) -> Result<()> {
    if n == 0 || k >= n {
        return Err(Error::InvalidRoot { k, n });
    }
    Ok(())
}

/// `sigma_V(exp(2 pi i k/n))`.
pub fn sigma_at(v: &SeifertMatrix, k: u64, n: u64) -> Result<SigmaValue> {
    check_root(k, n)?;
    let (value, nullity) = raw_signature(v, k, n);
    if nullity == 0 || k == 0 {
        return Ok(SigmaValue { value, at_jump: false });
    }
    let f = signature_function(v)?;
    let g = k.gcd(&n);
    let (kk, nn) = (k / g, n / g);
    let kk = kk.min(nn - kk);
    let angle = BigRational::new(BigInt::from(kk), BigInt::from(nn));
    let idx = f
        .jumps
        .iter()
        .position(|j| j.angle == JumpAngle::Exact(angle.clone()))
        .ok_or_else(|| Error::SelfCheck(format!("singular at {k}/{n} but no jump located there")))?;
    let avg = (f.plateaus[idx] + f.plateaus[idx + 1]) / 2;
    Ok(SigmaValue {
        value: avg,
        at_jump: true,
    })
}

/// As [`sigma_at`], but a jump is an error.
pub fn sigma_at_strict(v: &SeifertMatrix, k: u64, n: u64) -> Result<i64> {
    let s = sigma_at(v, k, n)?;
    if s.at_jump {
        return Err(Error::AtJump { k, n });
    }
    Ok(s.value)
}

/// Where a jump sits, as a fraction of a full turn in `(0, 1/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JumpAngle {
    /// A root of unity `exp(2 pi i a/b)`.
    Exact(BigRational),
    /// Not a root of unity; a certified enclosure.
    Interval { lo: BigRational, hi: BigRational },
}

impl JumpAngle {
    pub fn lo(&self) -> &BigRational {
        match self {
            JumpAngle::Exact(a) => a,
            JumpAngle::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &BigRational {
        match self {
            JumpAngle::Exact(a) => a,
            JumpAngle::Interval { hi, .. } => hi,
        }
    }

    pub fn approx(&self) -> f64 {
        let mid = (self.lo() + self.hi()) / q(2);
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jump {
    pub angle: JumpAngle,
    /// Isolating interval of `2 cos(2 pi angle)` among the roots of `R`.
    pub x_interval: RootInterval,
}

/// Piecewise-constant description on the upper half circle; the lower
/// half is its mirror image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureFunction {
    pub alexander: Vec<BigInt>,
    /// Jumps in increasing angle.
    pub jumps: Vec<Jump>,
    /// `plateaus[i]` is the value between `jumps[i-1]` and `jumps[i]`;
    /// `plateaus[0]` starts at angle 0.
    pub plateaus: Vec<i64>,
}

impl SignatureFunction {
    /// Value at angle `t` (fraction of a turn) away from the jumps.
    pub fn value_at(&self, t: &BigRational) -> Option<i64> {
        let mut t = t - BigRational::from_integer(t.floor().to_integer());
        if t > BigRational::new(1.into(), 2.into()) {
            t = BigRational::one() - t;
        }
        let mut idx = 0;
        for j in &self.jumps {
            if t > *j.angle.hi() {
                idx += 1;
            } else if t >= *j.angle.lo() {
                return None;
            } else {
                break;
            }
        }
        Some(self.plateaus[idx])
    }
}

fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// Angle `acos(x/2) / 2pi` enclosed from an enclosure `[xl, xh]` of `x`.
fn angle_enclosure(xl: &BigRational, xh: &BigRational) -> (BigRational, BigRational) {
    let pad = 1e-15;
    let to = |x: &BigRational, d: f64| (x.to_f64().unwrap() + d).clamp(-2.0, 2.0);
    let tau = std::f64::consts::TAU;
    let lo = (to(xh, pad) / 2.0).acos() / tau - 1e-12;
    let hi = (to(xl, -pad) / 2.0).acos() / tau + 1e-12;
    (rational_from_f64(lo.max(0.0)), rational_from_f64(hi.min(0.5)))
}

fn euler_phi(mut n: usize) -> usize {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Smallest-denominator fraction strictly inside `(lo, hi)`.
fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    let mut b = BigInt::one();
    loop {
        let a = (lo * BigRational::from_integer(b.clone())).floor().to_integer() + 1;
        let cand = BigRational::new(a, b.clone());
        if cand < *hi {
            return cand;
        }
        b += 1;
    }
}

/// Identifies a root of `R` as `2 cos(2 pi a/b)` when it is one.
fn exact_angle(r: &Poly, iv: &RootInterval, max_b: usize, max_phi: usize) -> Option<BigRational> {
    let d = dickson(max_b.max(1));
    for b in 1..=max_b {
        if euler_phi(b) > max_phi {
            continue;
        }
        let s = (&d[b] - &Poly::from_i64(&[2])).squarefree();
        let common = r.gcd(&s);
        if common.degree().unwrap_or(0) == 0 {
            continue;
        }
        let common_sturm = Sturm::new(&common);
        if common_sturm.between(&iv.lo, &iv.hi) == 0 {
            continue;
        }
        // shrink until it separates the roots of S, then rank the root
        let s_sturm = Sturm::new(&s);
        let r_sturm = Sturm::new(&r.squarefree());
        let mut iv = iv.clone();
        while s_sturm.between(&iv.lo, &iv.hi) > 1 {
            let width = (&iv.hi - &iv.lo) / q(2);
            iv = refine(&r_sturm, &iv, &width);
        }
        let a = s_sturm.above(&iv.hi);
        return Some(BigRational::new(BigInt::from(a), BigInt::from(b)));
    }
    None
}

pub fn signature_function(v: &SeifertMatrix) -> Result<SignatureFunction> {
    let alexander = v.alexander();
    let r = v.alexander_in_x();
    let deg = r.degree().unwrap_or(0);
    let mut jumps = Vec::new();
    if deg > 0 {
        let two = q(2);
        let sf = r.squarefree();
        // roots in (-2, 2]; a root at 2 would mean Delta(1) = 0
        let roots: Vec<RootInterval> = isolate_roots(&r, &two)
            .into_iter()
            .filter(|iv| !(iv.hi == two && sf.sign_at(&two) == 0))
            .collect();
        let sturm = Sturm::new(&sf);
        let max_phi = 2 * deg;
        let max_b = 2 * max_phi * max_phi;
        let narrow = BigRational::new(BigInt::one(), BigInt::from(10).pow(30));
        for iv in roots {
            let iv = refine(&sturm, &iv, &narrow);
            let angle = match exact_angle(&r, &iv, max_b, max_phi) {
                Some(a) => JumpAngle::Exact(a),
                None => {
                    let (lo, hi) = angle_enclosure(&iv.lo, &iv.hi);
                    JumpAngle::Interval { lo, hi }
                }
            };
            jumps.push(Jump { angle, x_interval: iv });
        }
    }
    // larger x means smaller angle
    jumps.sort_by(|a, b| b.x_interval.lo.cmp(&a.x_interval.lo));
    let mut plateaus = Vec::with_capacity(jumps.len() + 1);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for i in 0..=jumps.len() {
        let lo = if i == 0 { BigRational::zero() } else { jumps[i - 1].angle.hi().clone() };
        let hi = if i == jumps.len() { half.clone() } else { jumps[i].angle.lo().clone() };
        let t = if i == jumps.len() && lo < half {
            half.clone()
        } else {
            simplest_between(&lo, &hi)
        };
        let (k, n) = (t.numer().to_u64().unwrap(), t.denom().to_u64().unwrap());
        let (value, nullity) = raw_signature(v, k, n);
        if nullity != 0 {
            return Err(Error::SelfCheck(format!("plateau sample {k}/{n} is singular")));
        }
        plateaus.push(value);
    }
    Ok(SignatureFunction {
        alexander,
        jumps,
        plateaus,
    })
}

/// `rho_0 = integral of sigma over the circle` (normalized measure).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rho0 {
    Exact(BigRational),
    /// Some jump is not at a root of unity; a certified enclosure.
    Interval { lo: BigRational, hi: BigRational },
}

impl Rho0 {
    pub fn lo(&self) -> &BigRational {
        match self {
            Rho0::Exact(x) => x,
            Rho0::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &BigRational {
        match self {
            Rho0::Exact(x) => x,
            Rho0::Interval { hi, .. } => hi,
        }
    }
}

/// `2 [ P_m / 2 - sum_r theta_r (P_r - P_{r-1}) ]` over the upper half circle.
pub fn rho0_from(f: &SignatureFunction) -> Rho0 {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let last = q(*f.plateaus.last().unwrap_or(&0));
    let mut lo = &last * &half;
    let mut hi = lo.clone();
    let mut exact = true;
    for (r, j) in f.jumps.iter().enumerate() {
        let step = q(f.plateaus[r + 1] - f.plateaus[r]);
        if matches!(j.angle, JumpAngle::Interval { .. }) {
            exact = false;
        }
        let a = &step * j.angle.lo();
        let b = &step * j.angle.hi();
        let (small, large) = if a <= b { (a, b) } else { (b, a) };
        lo -= large;
        hi -= small;
    }
    let (lo, hi) = (lo * q(2), hi * q(2));
    if exact {
        Rho0::Exact(lo)
    } else {
        Rho0::Interval { lo, hi }
    }
}

pub fn rho0(v: &SeifertMatrix) -> Result<Rho0> {
    Ok(rho0_from(&signature_function(v)?))
}
