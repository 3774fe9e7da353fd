mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use satcheck_core::abelian::GroupElement;
use satcheck_core::covers::pn_profile;
use satcheck_core::io::parse_profile;
use satcheck_core::obstruction::{
    check_strong_obstruction, check_theorem_a, full_exponent, litherland_sigma, sweep_modulus, verify_scales,
    witness_scales, CgPatternProfile, StrongOutcome, TheoremAStatus,
};

use common::{all_elements, as_set, random_form, Elt};

const COMPOSITE: &str = include_str!("../fixtures/example_composite.json");
const RJ: &str = include_str!("../fixtures/rj_profile.json");

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// `{+-v mod n}` as sorted representatives `min(v, n - v)`, computed
/// without the library.
fn sym_multiset(vals: &[i64], n: i64) -> Vec<i64> {
    let mut out: Vec<i64> = vals
        .iter()
        .map(|v| {
            let v = v.rem_euclid(n);
            v.min(n - v)
        })
        .collect();
    out.sort();
    out
}

/// Value vectors of all characters `G -> Z_n` vanishing on `s`.
fn brute_characters(f: &[i64], s: &[Elt], n: i64) -> Vec<Vec<i64>> {
    let choices: Vec<Vec<i64>> = f
        .iter()
        .map(|&d| (0..n).filter(|v| (v * d) % n == 0).collect())
        .collect();
    let mut out = vec![vec![]];
    for c in &choices {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                c.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out.retain(|chi| s.iter().all(|x| x.iter().zip(chi).map(|(a, b)| a * b).sum::<i64>() % n == 0));
    out
}

/// The lifts of summand `k` of the triple sum, as coordinate vectors.
fn lifted(profile: &CgPatternProfile, pos: &[Vec<usize>], k: usize, rank: usize) -> Vec<Elt> {
    profile
        .lifts
        .iter()
        .map(|z| {
            let mut c = vec![0; rank];
            for (i, &p) in pos[k].iter().enumerate() {
                c[p] = z.coords()[i].to_i64().unwrap();
            }
            c
        })
        .collect()
}

fn eval(chi: &[i64], x: &Elt) -> i64 {
    chi.iter().zip(x).map(|(a, b)| a * b).sum()
}

/// Checks a strong-obstruction outcome against exhaustive search.
fn check_against_brute(profile: &CgPatternProfile, outcome: &StrongOutcome) {
    let (big_form, pos) = profile.form.triple_sum();
    let f: Vec<i64> = big_form.group().factors().iter().map(|d| d.to_i64().unwrap()).collect();
    let n = profile.character_modulus.to_i64().unwrap();
    let sets = |chi: &[i64]| -> Vec<Vec<i64>> {
        (0..3)
            .map(|k| {
                let vals: Vec<i64> = lifted(profile, &pos, k, f.len()).iter().map(|z| eval(chi, z)).collect();
                sym_multiset(&vals, n)
            })
            .collect()
    };
    match outcome {
        StrongOutcome::Obstructed { certificates } => {
            for c in certificates {
                c.validate(profile).unwrap();
                let chi: Vec<i64> = c.character.values().iter().map(|v| v.to_i64().unwrap()).collect();
                let m = as_set(&c.metabolizer);
                assert!(m.iter().all(|x| eval(&chi, x).rem_euclid(n) == 0));
                for (k, &d) in f.iter().enumerate() {
                    assert_eq!((chi[k] * d) % n, 0, "character not well defined");
                }
                let s = sets(&chi);
                assert!(s[0] != s[1] || s[1] != s[2]);
                let want: Vec<Vec<i64>> = c
                    .multisets
                    .iter()
                    .map(|v| v.iter().map(|x| x.to_i64().unwrap()).collect())
                    .collect();
                assert_eq!(s, want);
            }
        }
        StrongOutcome::Inconclusive { metabolizer, .. } => {
            assert!(big_form.is_metabolizer(metabolizer));
            let m: Vec<Elt> = as_set(metabolizer).into_iter().collect();
            for chi in brute_characters(&f, &m, n) {
                let s = sets(&chi);
                assert!(s[0] == s[1] && s[1] == s[2], "missed witness {chi:?}");
            }
        }
    }
}

#[test]
fn composite_and_rj_are_obstructed() {
    for text in [COMPOSITE, RJ] {
        let profile = parse_profile(text).unwrap();
        let outcome = check_strong_obstruction(&profile).unwrap();
        assert!(outcome.is_obstructed());
        check_against_brute(&profile, &outcome);
    }
}

#[test]
fn random_profiles_agree_with_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let shapes: [(&[i64], i64, u64); 3] = [(&[3, 3], 3, 2), (&[2, 2], 2, 2), (&[3, 3], 3, 3)];
    let mut seen = [0usize; 2];
    for _ in 0..40 {
        let (f, q, p) = shapes[rng.gen_range(0..shapes.len())];
        let (form, _) = random_form(f, &mut rng);
        let elems = all_elements(f);
        let lifts: Vec<GroupElement> = (0..p)
            .map(|_| form.group().element_i64(&elems[rng.gen_range(0..elems.len())]).unwrap())
            .collect();
        let w = p as i64 * rng.gen_range(1..3);
        let profile = CgPatternProfile::new(w, p, form, lifts, BigRational::from_integer(big(0)), big(q)).unwrap();
        let outcome = check_strong_obstruction(&profile).unwrap();
        seen[outcome.is_obstructed() as usize] += 1;
        check_against_brute(&profile, &outcome);
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn quick_test_implies_strong_test() {
    for (p, n) in [(2usize, 2i64), (3, 3)] {
        let profile = pn_profile(p, n, BigRational::from_integer(big(5))).unwrap();
        assert_eq!(check_theorem_a(&profile).unwrap().status, TheoremAStatus::Obstructed);
        let e = full_exponent(&profile.form, &profile.character_modulus).unwrap();
        let sweep = sweep_modulus(&profile, e).unwrap();
        assert!(sweep.results.len() <= e as usize);
        assert!(sweep.is_obstructed());
        assert!(sweep.results[..sweep.results.len() - 1].iter().all(|(_, o)| !o.is_obstructed()));
        let (_, first) = sweep.first_obstructing().unwrap();
        if let StrongOutcome::Obstructed { certificates } = first {
            for c in certificates {
                c.validate(&profile.with_modulus(c.character.modulus().clone()).unwrap()).unwrap();
            }
        }
    }
}

#[test]
fn theorem_a_needs_the_prime_to_divide_the_winding_number() {
    let profile = pn_profile(3, 4, BigRational::from_integer(big(0))).unwrap();
    assert!(check_theorem_a(&profile).is_err());
}

#[test]
fn sweep_exponent_for_composite() {
    let profile = parse_profile(COMPOSITE).unwrap();
    // |H| = 9 = 3^2, so k = 1
    assert_eq!(full_exponent(&profile.form, &big(3)).unwrap(), 6);
}

fn sigma_table(v: &BigInt, n: &BigInt) -> satcheck_core::Result<BigRational> {
    // any function of the residue will do
    let x = v.to_i64().unwrap();
    Ok(BigRational::new(big(x * x - 3 * x), n.clone()))
}

proptest! {
    #[test]
    fn litherland_additive_and_symmetric(
        base in -50i64..50,
        extra in -50i64..50,
        vals in prop::collection::vec(-30i64..30, 0..6),
        seed in any::<u64>(),
    ) {
        let n = big(9);
        let values: Vec<BigInt> = vals.iter().map(|&v| big(v)).collect();
        let b = BigRational::from_integer(big(base));
        let e = BigRational::from_integer(big(extra));
        let s = litherland_sigma(&b, &values, &n, sigma_table).unwrap();
        let s2 = litherland_sigma(&(&b + &e), &values, &n, sigma_table).unwrap();
        prop_assert_eq!(&s2 - &s, e);
        let mut shuffled = values.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        prop_assert_eq!(litherland_sigma(&b, &shuffled, &n, sigma_table).unwrap(), s.clone());
        // the values only matter modulo n
        let shifted: Vec<BigInt> = values.iter().map(|v| v + &n * big(3)).collect();
        prop_assert_eq!(litherland_sigma(&b, &shifted, &n, sigma_table).unwrap(), s);
    }

    #[test]
    fn witness_scales_satisfy_the_case_analysis(cn in 0i64..200, cd in 1i64..7, p in 2u64..7, q in 2u64..12) {
        let c = BigRational::new(big(cn), big(cd));
        let (m, n) = witness_scales(&c, p, q);
        prop_assert!(verify_scales(&c, p, q, &m, &n));
        let three_c = &c * BigRational::from_integer(big(3));
        let pb = big(p as i64);
        let r = |x: &BigInt| BigRational::from_integer(x.clone());
        let top = m.last().unwrap().clone();
        for j in 1..m.len() {
            prop_assert!(r(&(&m[j] - &pb * &m[j - 1])) > three_c);
            prop_assert!(r(&(&n[j] - &pb * &n[j - 1])) > &three_c + r(&(&pb * &top)));
        }
        // lexicographically least: lowering any entry by 2 breaks it
        for j in 0..m.len() {
            let mut m2 = m.clone();
            m2[j] -= 2;
            let mut n2 = n.clone();
            n2[j] -= 2;
            prop_assert!(!verify_scales(&c, p, q, &m2, &n));
            prop_assert!(!verify_scales(&c, p, q, &m, &n2));
        }
    }
}
