//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::time::Instant;

use gorenstein::apolarity::build_algebra;
use gorenstein::complexes::{
    connected_triangle_free_graphs, det_over_vertex_product, random_unicyclic_graph, turan_223_minus_edge,
    turan_complex, turan_hilbert_shifted_formula, turan_noninjectivity_witness, Graph, GraphClass,
};
use gorenstein::families::{
    even_counterexample, odd_counterexample, example_catalog, square_plus_w_squared, times_u,
    verify_times_uv,
};
use gorenstein::hessians::{bigraded_hessian, dual_mixed_hessian, mixed_hessian, random_point, symbolic_det};
use gorenstein::lefschetz::{generalization_check, linear_form, mult_map_matrix, rank_profile, random_linear_form};
use gorenstein::polyring::monomials_of_degree;
use gorenstein::{unimodality_check, wlp_check, slp_check, BigInt, CheckConfig, Mode, Polynomial};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{dense_form, fixture_corpus, nonvanishing_form};

type Outcome = Result<String, String>;

/// Name, time budget in seconds, check.
type Criterion = (&'static str, f64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

const SQUARE_QUADRICS: &str = "u4^2, u2*u4, x2*u4, x1*u4, u3^2, u1*u3, x4*u3, x1*u3, u2^2, x4*u2, x3*u2, \
    x2*u2 - x3*u4, x1*u2 - x4*u4, u1^2, x4*u1 - x3*u3, x3*u1, x2*u1, x1*u1 - x2*u3, x4^2, x3*x4, \
    x2*x4, x1*x4, x3^2, x2*x3, x1*x3, x2^2, x1*x2, x1^2";

fn square_cubic() -> Outcome {
    let f = Graph::cycle(4).dual_generator().map_err(e)?;
    let expected = Polynomial::parse("x1*u1*u2 + x2*u2*u3 + x3*u3*u4 + x4*u4*u1", f.vars()).map_err(e)?;
    ensure(f == expected, format!("unexpected f = {f}"))?;
    let alg = build_algebra(&f).map_err(e)?;
    ensure(alg.hilbert() == [1, 8, 8, 1], format!("hilbert {:?}", alg.hilbert()))?;
    let quadrics = alg.ann_generated_by_quadrics();
    ensure(quadrics.presented, "Ann not generated by quadrics")?;
    ensure(alg.ann_dim(2) == 28, format!("dim Ann_2 = {}", alg.ann_dim(2)))?;
    let gens: Vec<Polynomial> = SQUARE_QUADRICS
        .split(", ")
        .map(|s| Polynomial::parse(s, alg.vars()))
        .collect::<Result<_, _>>()
        .map_err(e)?;
    ensure(gens.len() == 28, "generator list")?;
    ensure(alg.ann_span_equals(2, &gens).map_err(e)?, "listed quadrics do not span Ann_2")?;
    let h = mixed_hessian(&alg, 1, 1).map_err(e)?;
    ensure(h.rows() == 8 && h.cols() == 8, "hess^1 is not 8x8")?;
    ensure(symbolic_det(&h, 12).map_err(e)?.is_zero(), "hess^1 is not identically zero")?;
    let wlp = wlp_check(&alg, &CheckConfig::with_seed(1)).map_err(e)?;
    ensure(!wlp.holds && wlp.mode == Mode::Exact, "WLP verdict")?;
    Ok("h=(1,8,8,1), dim Ann_2=28 spanned by the listed quadrics, det hess^1 == 0, WLP false (exact)".into())
}

fn generalization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e6e);
    let mut pairs = 0;
    for i in 0..50 {
        let n = rng.gen_range(1..=5);
        let d = rng.gen_range(1..=5);
        let f = dense_form(&mut rng, n, d);
        let alg = build_algebra(&f).map_err(e)?;
        let ell = nonvanishing_form(&mut rng, &f);
        for k in 0..d {
            for l in k + 1..=d {
                pairs += 1;
                if !generalization_check(&alg, k, l, &ell).map_err(e)? {
                    return Err(format!("instance {i}: n={n} d={d} k={k} l={l} f={f}"));
                }
            }
        }
    }
    Ok(format!("50/50 instances, {pairs} (k,l) pairs, exact equality"))
}

fn boolean_slp() -> Outcome {
    let cfg = CheckConfig::with_seed(3);
    for n in 1..=6 {
        let alg = build_algebra(&gorenstein::families::boolean_form(n).map_err(e)?).map_err(e)?;
        let v = slp_check(&alg, &cfg).map_err(e)?;
        ensure(v.holds && v.mode == Mode::Exact, format!("n={n}: SLP verdict"))?;
        let ones = vec!["1".to_string(); n];
        ensure(v.witness.as_deref() == Some(&ones[..]), format!("n={n}: witness is not the all-ones point"))?;
        ensure(v.candidates_tried == 1, format!("n={n}: all-ones point was not the first witness"))?;
        let point = vec![common::q(1); n];
        for k in 1..=alg.socle_degree() / 2 {
            let h = mixed_hessian(&alg, k, k).map_err(e)?;
            ensure(!h.evaluate(&point).map_err(e)?.det().is_zero(), format!("n={n}: hess^{k}(1) == 0"))?;
        }
    }
    Ok("n=1..6 SLP true, hess^k(1,..,1) != 0 for all k".into())
}

fn graph_classification() -> Outcome {
    let cfg = CheckConfig::with_seed(4);
    let mut counts = Vec::new();
    let mut checked = 0;
    for n in 1..=7 {
        let graphs = connected_triangle_free_graphs(n);
        counts.push(graphs.len());
        for g in graphs {
            if g.edges().is_empty() {
                continue;
            }
            let class = g.classify();
            let alg = build_algebra(&g.dual_generator().map_err(e)?).map_err(e)?;
            ensure(alg.ann_generated_by_quadrics().presented, format!("{g:?} not presented by quadrics"))?;
            let wlp = wlp_check(&alg, &cfg).map_err(e)?.holds;
            ensure(
                class.expected_wlp() == Some(wlp),
                format!("{g:?}: class {class:?} but wlp_check = {wlp}"),
            )?;
            checked += 1;
        }
    }
    ensure(counts == [1, 1, 1, 3, 6, 19, 59], format!("isomorphism class counts {counts:?}"))?;
    Ok(format!("{checked}/{checked} graphs with edges agree, classes per n = {counts:?}"))
}

fn unicyclic_determinants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ee);
    for i in 0..200 {
        let n = rng.gen_range(3..=10);
        let g = random_unicyclic_graph(&mut rng, n);
        let circuit = g.unique_circuit().ok_or("graph is not unicyclic")?;
        let h = g.incidence_gradient_matrix();
        let det = symbolic_det(&h, 10).map_err(e)?;
        ensure(
            det.is_zero() == (circuit.len() % 2 == 0),
            format!("instance {i}: circuit length {} but det zero = {}", circuit.len(), det.is_zero()),
        )?;
        let class = g.classify();
        ensure(
            matches!(class, GraphClass::UniEvenNoWlp | GraphClass::UniOddWlp | GraphClass::NotPresentedByQuadrics),
            format!("instance {i}: class {class:?}"),
        )?;
    }
    let c3 = symbolic_det(&Graph::cycle(3).incidence_gradient_matrix(), 10).map_err(e)?;
    let ratio = det_over_vertex_product(&c3).ok_or("C3 determinant is not a multiple of u1u2u3")?;
    ensure(ratio == BigInt::from(2) || ratio == BigInt::from(-2), format!("C3 det = {c3}"))?;
    Ok(format!("200/200 det == 0 iff even circuit, det C3 = {c3}"))
}

fn turan_suite() -> Outcome {
    let cfg = CheckConfig::with_seed(6);
    let c = turan_complex(&[2, 2, 2]).map_err(e)?;
    let alg = build_algebra(&c.dual_generator().map_err(e)?).map_err(e)?;
    ensure(alg.codimension() == 14, format!("codim {}", alg.codimension()))?;
    ensure(alg.hilbert() == [1, 14, 24, 14, 1], format!("hilbert {:?}", alg.hilbert()))?;
    let shifted = turan_hilbert_shifted_formula(&[2, 2, 2]);
    ensure(shifted[1] != 14, "shifted face-count formula unexpectedly matches")?;
    ensure(alg.ann_generated_by_quadrics().presented, "not presented by quadrics")?;
    let h = bigraded_hessian(&alg, (1, 0), (0, 2)).map_err(e)?;
    ensure(h.rows() == 8, format!("Hess^((1,0),(0,2)) has {} rows", h.rows()))?;
    let cert = turan_noninjectivity_witness(&[2, 2, 2], &cfg).map_err(e)?;
    ensure(cert.kernel_verified && cert.sampled_rank.rank <= 7, "kernel vector certificate")?;
    let mut rng = cfg.rng(0x11);
    for t in 0..10 {
        let ell = random_linear_form(&alg, &mut rng, cfg.sample_bound);
        let m = mult_map_matrix(&alg, 1, 2, &ell).map_err(e)?;
        ensure(m.rank() < 14, format!("trial {t}: mu_L injective"))?;
    }
    Ok(format!(
        "codim 14, h=(1,14,24,14,1) (shifted formula gives h_1={}), quadrics, exact kernel vector => rank <= 7 < 8, mu_L non-injective 10/10",
        shifted[1]
    ))
}

fn ideal_span_times_u(f: &Polynomial) -> Result<bool, String> {
    let base = build_algebra(f).map_err(e)?;
    let g = times_u(f, "u").map_err(e)?;
    let lifted = build_algebra(&g).map_err(e)?;
    let d = base.socle_degree();
    let big = lifted.vars().clone();
    let u = Polynomial::var_named(&big, "u").map_err(e)?;
    let u2 = u.try_mul(&u).map_err(e)?;
    for k in 0..=d + 1 {
        let prev = if k == 0 { 0 } else { base.h(k - 1) };
        if lifted.h(k) != base.h(k) + prev {
            return Ok(false);
        }
    }
    for k in 1..=d + 2 {
        let mut gens = Vec::new();
        for j in 1..=k {
            let multipliers = monomials_of_degree(big.len(), k - j);
            for a in base.ann_basis(j) {
                let a = a.embed(&big).map_err(e)?;
                for m in &multipliers {
                    gens.push(a.mul_monomial(m));
                }
            }
        }
        if k >= 2 {
            for m in monomials_of_degree(big.len(), k - 2) {
                gens.push(u2.mul_monomial(&m));
            }
        }
        if !lifted.ann_span_equals(k, &gens).map_err(e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn inductive_constructions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x75);
    for i in 0..10 {
        let n = rng.gen_range(1..=4);
        let f = dense_form(&mut rng, n, 3);
        ensure(ideal_span_times_u(&f)?, format!("instance {i}: f = {f}"))?;
    }
    Ok("10/10 dim bookkeeping and Ann(uf) = Ann(f)Q~ + U^2 Q~ in degrees <= d+2".into())
}

fn families() -> Outcome {
    let cfg = CheckConfig::with_seed(8);
    for r in [9, 11] {
        let alg = build_algebra(&square_plus_w_squared(r).map_err(e)?).map_err(e)?;
        ensure(alg.codimension() == r, format!("r={r}: codim {}", alg.codimension()))?;
        ensure(alg.ann_generated_by_quadrics().presented, format!("r={r}: quadrics"))?;
        ensure(!wlp_check(&alg, &cfg).map_err(e)?.holds, format!("r={r}: WLP holds"))?;
    }
    let odd = build_algebra(&odd_counterexample(5, 10).map_err(e)?).map_err(e)?;
    ensure(odd.codimension() == 10, "odd family codim")?;
    ensure(odd.ann_generated_by_quadrics().presented, "odd family quadrics")?;
    let h2 = mixed_hessian(&odd, 2, 2).map_err(e)?;
    let mut rng = cfg.rng(0x0dd);
    for t in 0..20 {
        let p = random_point(&mut rng, odd.vars().len(), cfg.sample_bound);
        ensure(h2.rank_at(&p).map_err(e)? < h2.rows(), format!("odd family: hess^2 full at trial {t}"))?;
    }
    let minus = turan_223_minus_edge();
    let counts = minus.face_counts();
    ensure(
        counts.get(1..4) == Some(&[7, 15, 10][..]),
        format!("TK(2,2,3) minus edge face counts {counts:?}"),
    )?;
    for codim in [14, 17] {
        let alg = build_algebra(&even_counterexample(4, codim).map_err(e)?).map_err(e)?;
        ensure(alg.codimension() == codim, format!("even codim {codim}"))?;
        ensure(alg.ann_generated_by_quadrics().presented, format!("even codim {codim}: quadrics"))?;
        ensure(!wlp_check(&alg, &cfg).map_err(e)?.holds, format!("even codim {codim}: WLP holds"))?;
    }
    let base = turan_complex(&[2, 2, 2]).map_err(e)?.dual_generator().map_err(e)?;
    let prop = verify_times_uv(&base, "p1", "q1", &cfg).map_err(e)?;
    ensure(prop.base_deficient && prop.lifted_deficient, "Hess propagation from d=4 to d=6")?;
    let lift = build_algebra(&even_counterexample(6, 16).map_err(e)?).map_err(e)?;
    let h23 = mixed_hessian(&lift, 2, 3).map_err(e)?;
    let full = h23.rows().min(h23.cols());
    for t in 0..20 {
        let p = random_point(&mut rng, lift.vars().len(), cfg.sample_bound);
        ensure(h23.rank_at(&p).map_err(e)? < full, format!("d=6 lift: Hess^(2,3) full at trial {t}"))?;
    }
    Ok("r=9,11 WLP false; d=5 codim 10 hess^2 deficient 20/20; d=4 codim 14,17 WLP false; d=6 Hess^(2,3) deficient 20/20".into())
}

fn property_suite() -> Outcome {
    let cfg = CheckConfig::with_seed(9);
    let corpus = fixture_corpus();
    let mut rng = cfg.rng(0x99);
    for (id, f) in &corpus {
        let alg = build_algebra(f).map_err(e)?;
        let d = alg.socle_degree();
        let h = alg.hilbert();
        ensure(h.iter().eq(h.iter().rev()), format!("{id}: hilbert not symmetric"))?;
        for l in 0..=d {
            alg.pairing_inverse(l).map_err(|err| format!("{id}: pairing {l}: {err}"))?;
        }
        let p = random_point(&mut rng, alg.vars().len(), cfg.sample_bound);
        if alg.codimension() <= 14 {
            for l in 0..=d {
                for k in 0..=l.min(d - l) {
                    let dual = dual_mixed_hessian(&alg, l, k).map_err(e)?;
                    let plain = mixed_hessian(&alg, d - l, k).map_err(e)?;
                    ensure(
                        dual.rank_at(&p).map_err(e)? == plain.rank_at(&p).map_err(e)?,
                        format!("{id}: dual vs plain rank at l={l}, k={k}"),
                    )?;
                }
            }
        }
        let ell = random_linear_form(&alg, &mut rng, cfg.sample_bound);
        rank_profile(&alg, &ell).map_err(|err| format!("{id}: {err}"))?;
        let ones = linear_form(&alg, &vec![1; alg.vars().len()]).map_err(e)?;
        rank_profile(&alg, &ones).map_err(|err| format!("{id}: {err}"))?;
        if wlp_check(&alg, &cfg).map_err(e)?.holds {
            ensure(unimodality_check(h), format!("{id}: WLP but not unimodal"))?;
        }
    }
    Ok(format!("{} fixtures green", corpus.len()))
}

fn catalog_expectations() -> Result<(), String> {
    let cfg = CheckConfig::with_seed(10);
    for entry in example_catalog() {
        let alg = build_algebra(&entry.polynomial).map_err(e)?;
        if let Some(h) = &entry.expected.hilbert {
            ensure(alg.hilbert() == &h[..], format!("{}: hilbert {:?}", entry.id, alg.hilbert()))?;
        }
        if let Some(c) = entry.expected.codimension {
            ensure(alg.codimension() == c, format!("{}: codim", entry.id))?;
        }
        if let Some(qd) = entry.expected.quadrics {
            ensure(alg.ann_generated_by_quadrics().presented == qd, format!("{}: quadrics", entry.id))?;
        }
        if let Some(w) = entry.expected.wlp {
            ensure(wlp_check(&alg, &cfg).map_err(e)?.holds == w, format!("{}: wlp", entry.id))?;
        }
        if let Some(s) = entry.expected.slp {
            ensure(slp_check(&alg, &cfg).map_err(e)?.holds == s, format!("{}: slp", entry.id))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("square cubic example", 5.0, square_cubic),
        ("multiplication map = scaled dual Hessian", 60.0, generalization),
        ("Boolean SLP", 30.0, boolean_slp),
        ("triangle-free graph classification", 600.0, graph_classification),
        ("unicyclic determinants", 60.0, unicyclic_determinants),
        ("Turan TK(2,2,2)", 60.0, turan_suite),
        ("inductive constructions", 60.0, inductive_constructions),
        ("counterexample families", 600.0, families),
        ("property suite", 600.0, property_suite),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let over = secs > *budget;
        match (&outcome, over) {
            (Ok(detail), false) => println!("PASS {} {name}: {detail} [{secs:.2}s]", i + 1),
            (Ok(detail), true) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} [{secs:.2}s exceeds {budget}s]", i + 1)
            }
            (Err(msg), _) => {
                failed += 1;
                println!("FAIL {} {name}: {msg} [{secs:.2}s]", i + 1)
            }
        }
    }
    match catalog_expectations() {
        Ok(()) => println!("PASS catalog expectations"),
        Err(msg) => {
            failed += 1;
            println!("FAIL catalog expectations: {msg}")
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
