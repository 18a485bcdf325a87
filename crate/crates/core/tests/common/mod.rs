#![allow(dead_code)]

use std::sync::Arc;

use gorenstein::families::example_catalog;
use gorenstein::polyring::monomials_of_degree;
use gorenstein::{BigInt, BigRational, LinearForm, Polynomial, VarSet};
use num_traits::Zero;
use rand::Rng;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Every degree-`d` monomial in `x1..xn` with a nonzero coefficient in `[-9, 9]`.
pub fn dense_form(rng: &mut impl Rng, n: usize, d: u32) -> Polynomial {
    let vars = VarSet::numbered("x", n);
    let terms = monomials_of_degree(n, d).into_iter().map(|m| {
        let mut c = 0i64;
        while c == 0 {
            c = rng.gen_range(-9..=9);
        }
        (m, q(c))
    });
    Polynomial::from_terms(&vars, terms)
}

/// Sparse integer form: each degree-`d` monomial kept with probability 1/2.
pub fn sparse_form(rng: &mut impl Rng, n: usize, d: u32) -> Polynomial {
    let vars = VarSet::numbered("x", n);
    loop {
        let terms: Vec<_> = monomials_of_degree(n, d)
            .into_iter()
            .filter_map(|m| {
                let c = rng.gen_range(-5..=5);
                (c != 0 && rng.gen_bool(0.5)).then(|| (m, q(c)))
            })
            .collect();
        let f = Polynomial::from_terms(&vars, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Small integer `L` with `f(L^perp) != 0`.
pub fn nonvanishing_form(rng: &mut impl Rng, f: &Polynomial) -> LinearForm {
    let vars: &Arc<VarSet> = f.vars();
    loop {
        let c: Vec<i64> = (0..vars.len()).map(|_| rng.gen_range(-5..=5)).collect();
        let Ok(l) = LinearForm::from_integers(vars, &c) else { continue };
        if !f.eval(l.point()).unwrap().is_zero() {
            return l;
        }
    }
}

/// Catalog polynomials plus a few seeded random forms.
pub fn fixture_corpus() -> Vec<(String, Polynomial)> {
    use rand::SeedableRng;
    let mut out: Vec<(String, Polynomial)> = example_catalog()
        .into_iter()
        .map(|e| (e.id, e.polynomial))
        .collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for i in 0..6 {
        let n = rng.gen_range(2..=4);
        let d = rng.gen_range(2..=4);
        out.push((format!("random-{i}"), sparse_form(&mut rng, n, d)));
    }
    out
}
