//! Smith normal form over the integers and cokernel presentations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{identity, reduce, FinAbGroup, GroupElement};
use crate::error::Result;

/// `u * a * v = diag`, with `u` and `v` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub v_inv: Vec<Vec<BigInt>>,
    /// Diagonal entries, length `min(rows, cols)`, non-negative, each
    /// dividing the next (zeros last).
    pub diag: Vec<BigInt>,
}

/// Computes the Smith normal form of an `m x n` integer matrix.
///
/// Pivot rule: the nonzero entry of smallest absolute value in the active
/// submatrix, ties broken by (row, column).
pub fn smith_normal_form(a: &[Vec<BigInt>]) -> SmithForm {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = a.to_vec();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut v_inv = identity(n);

    let k = m.min(n);
    for t in 0..k {
        loop {
            let Some((pi, pj)) = smallest_entry(&a, t) else {
                break;
            };
            if pi != t {
                a.swap(t, pi);
                u.swap(t, pi);
            }
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
                v_inv.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                sub_row(&mut a, i, t, &q);
                sub_row(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                sub_col(&mut a, j, t, &q);
                sub_col(&mut v, j, t, &q);
                // inverse of the column operation acts on rows of v_inv
                let row_j = v_inv[j].clone();
                for (x, y) in v_inv[t].iter_mut().zip(&row_j) {
                    *x += &q * y;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the active block
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    add_row(&mut a, t, i);
                    add_row(&mut u, t, i);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    let diag = (0..k).map(|t| a[t][t].clone()).collect();
    SmithForm { u, v, v_inv, diag }
}

fn smallest_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn sub_row(a: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    let src = a[t].clone();
    for (x, y) in a[i].iter_mut().zip(&src) {
        *x -= q * y;
    }
}

fn add_row(a: &mut [Vec<BigInt>], t: usize, i: usize) {
    let src = a[i].clone();
    for (x, y) in a[t].iter_mut().zip(&src) {
        *x += y;
    }
}

fn sub_col(a: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let y = row[t].clone();
        row[j] -= q * y;
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// A finite abelian group read off a presentation matrix.
///
/// Columns of the relation matrix index generators and each row is a
/// relation, so the group is `Z^n / rowspace(rel)`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub group: FinAbGroup,
    pub free_rank: usize,
    /// Image of each presentation generator in invariant-factor coordinates.
    pub generator_images: Vec<GroupElement>,
    /// For each invariant-factor generator, an integer combination of the
    /// presentation generators representing it.
    pub basis_lifts: Vec<Vec<BigInt>>,
    pub smith: SmithForm,
}

pub fn from_presentation(rel: &[Vec<BigInt>]) -> Result<Presentation> {
    let n = rel.first().map_or(0, Vec::len);
    if rel.iter().any(|r| r.len() != n) {
        return Err(crate::Error::Input("presentation matrix rows differ in length".into()));
    }
    let smith = smith_normal_form(rel);
    let mut torsion = Vec::new();
    let mut factors = Vec::new();
    let mut free_rank = 0;
    for k in 0..n {
        let d = smith.diag.get(k).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            free_rank += 1;
        } else if !d.is_one() {
            torsion.push(k);
            factors.push(d);
        }
    }
    let group = FinAbGroup::new(factors)?;
    let generator_images = (0..n)
        .map(|j| {
            let coords: Vec<BigInt> = torsion
                .iter()
                .zip(group.factors())
                .map(|(&k, d)| reduce(&smith.v[j][k], d))
                .collect();
            group.element(&coords)
        })
        .collect::<Result<Vec<_>>>()?;
    let basis_lifts = torsion.iter().map(|&k| smith.v_inv[k].clone()).collect();
    Ok(Presentation {
        group,
        free_rank,
        generator_images,
        basis_lifts,
        smith,
    })
}
