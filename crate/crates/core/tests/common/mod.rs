//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use satcheck_core::abelian::{FinAbGroup, Subgroup};
use satcheck_core::linking::TorsionLinkingForm;

pub type Elt = Vec<i64>;

pub fn all_elements(f: &[i64]) -> Vec<Elt> {
    let mut out = vec![vec![]];
    for &d in f {
        out = out
            .into_iter()
            .flat_map(|e| (0..d).map(move |c| [e.clone(), vec![c]].concat()))
            .collect();
    }
    out
}

pub fn add(f: &[i64], a: &Elt, b: &Elt) -> Elt {
    a.iter().zip(b).zip(f).map(|((x, y), d)| (x + y) % d).collect()
}

/// Closure of a set under addition, by saturation.
pub fn close(f: &[i64], gens: &BTreeSet<Elt>) -> BTreeSet<Elt> {
    let mut s: BTreeSet<Elt> = gens.clone();
    s.insert(vec![0; f.len()]);
    loop {
        let mut grew = false;
        let cur: Vec<Elt> = s.iter().cloned().collect();
        for a in &cur {
            for b in &cur {
                grew |= s.insert(add(f, a, b));
            }
        }
        if !grew {
            return s;
        }
    }
}

/// `S + <g>` for a subgroup `S`, as a union of cosets.
pub fn extend(f: &[i64], s: &BTreeSet<Elt>, g: &Elt) -> BTreeSet<Elt> {
    let mut out = s.clone();
    let mut kg = g.clone();
    while !s.contains(&kg) {
        out.extend(s.iter().map(|x| add(f, x, &kg)));
        kg = add(f, &kg, g);
    }
    out
}

/// Every subgroup, found by adjoining single elements starting from zero.
pub fn brute_subgroups(f: &[i64]) -> HashSet<BTreeSet<Elt>> {
    let elems = all_elements(f);
    let start = close(f, &BTreeSet::new());
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = vec![start];
    while let Some(s) = queue.pop() {
        for g in &elems {
            if s.contains(g) {
                continue;
            }
            let t = extend(f, &s, g);
            if seen.insert(t.clone()) {
                queue.push(t);
            }
        }
    }
    seen
}


pub fn as_set(s: &Subgroup) -> BTreeSet<Elt> {
    s.elements()
        .unwrap()
        .iter()
        .map(|e| e.coords().iter().map(|c| c.to_i64().unwrap()).collect())
        .collect()
}


/// A random nondegenerate form with `g_ij = c_ij / gcd(d_i, d_j)`.
pub fn random_form(f: &[i64], rng: &mut ChaCha8Rng) -> (TorsionLinkingForm, Vec<Vec<i64>>) {
    let n = f.len();
    loop {
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let g = f[i].gcd(&f[j]);
                c[i][j] = rng.gen_range(0..g);
                c[j][i] = c[i][j];
            }
        }
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::new(BigInt::from(c[i][j]), BigInt::from(f[i].gcd(&f[j]))))
                    .collect()
            })
            .collect();
        if let Ok(form) = TorsionLinkingForm::new(FinAbGroup::from_i64(f).unwrap(), gram) {
            return (form, c);
        }
    }
}

/// `lambda(a, b) = 0` evaluated over the common denominator.
pub fn pairs_to_zero(f: &[i64], c: &[Vec<i64>], a: &Elt, b: &Elt) -> bool {
    let l = f.iter().fold(1, |acc, d| acc.lcm(d));
    let mut s = 0i64;
    for i in 0..f.len() {
        for j in 0..f.len() {
            s += a[i] * b[j] * c[i][j] * (l / f[i].gcd(&f[j]));
        }
    }
    s.rem_euclid(l) == 0
}

pub fn brute_metabolizers(f: &[i64], c: &[Vec<i64>]) -> HashSet<BTreeSet<Elt>> {
    let order: i64 = f.iter().product();
    brute_subgroups(f)
        .into_iter()
        .filter(|s| (s.len() * s.len()) as i64 == order)
        .filter(|s| s.iter().all(|a| s.iter().all(|b| pairs_to_zero(f, c, a, b))))
        .collect()
}

/// Characters `G -> Z/N` vanishing on `gens`, by exhausting all value vectors.
pub fn brute_annihilator(f: &[i64], gens: &[Vec<i64>], n: i64) -> usize {
    let steps: Vec<i64> = f.iter().map(|&d| n / num_integer::gcd(d, n)).collect();
    let choices: Vec<i64> = f.iter().map(|&d| num_integer::gcd(d, n)).collect();
    all_elements(&choices)
        .into_iter()
        .filter(|u| {
            gens.iter().all(|g| {
                g.iter().zip(u).zip(&steps).map(|((x, c), s)| x * c * s).sum::<i64>().rem_euclid(n) == 0
            })
        })
        .count()
}

