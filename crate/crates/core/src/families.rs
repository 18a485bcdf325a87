//! Explicit families of dual generators and their verification reports.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::apolarity::{build_algebra, QuadricsResult};
use crate::complexes::{
    noninjectivity_certificate, turan_223_minus_edge, turan_complex, Graph, NonInjectivityCertificate,
    SimplicialComplex,
};
use crate::config::CheckConfig;
use crate::error::{Error, Result};
use crate::hessians::{classical_hessian, generic_rank, jacobian, mixed_hessian, symbolic_det, RankCertificate};
use crate::lefschetz::{slp_check, wlp_check, LefschetzVerdict};
use crate::linalg::sparse_rank;
use crate::polyring::{Polynomial, VarSet};

/// `x_1 x_2 ... x_n`.
pub fn boolean_form(n: usize) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::OutOfRange("boolean form needs n >= 1".into()));
    }
    let vars = VarSet::numbered("x", n);
    Ok((0..n).fold(Polynomial::one(&vars), |acc, i| {
        acc.try_mul(&Polynomial::var(&vars, i)).expect("same variables")
    }))
}

/// First `prefix{i}` (i = 1, 2, ...) not already a variable name.
pub fn fresh_name(vars: &VarSet, prefix: &str) -> String {
    (1..)
        .map(|i| format!("{prefix}{i}"))
        .find(|n| vars.index_of(n).is_none())
        .expect("unbounded search")
}

fn extend(f: &Polynomial, names: &[&str]) -> Result<(Polynomial, Arc<VarSet>)> {
    for n in names {
        if f.vars().index_of(n).is_some() {
            return Err(Error::VariableCollision(n.to_string()));
        }
    }
    let vars = f.vars().extended(names.iter().copied())?;
    Ok((f.embed(&vars)?, vars))
}

/// `u * f` for a fresh variable `u`, appended to the u-block when bipartitioned.
pub fn times_u(f: &Polynomial, u: &str) -> Result<Polynomial> {
    let (g, vars) = extend(f, &[u])?;
    g.try_mul(&Polynomial::var_named(&vars, u)?)
}

/// `u * v * f` for fresh variables `u`, `v`.
pub fn times_uv(f: &Polynomial, u: &str, v: &str) -> Result<Polynomial> {
    let (g, vars) = extend(f, &[u, v])?;
    let uv = Polynomial::var_named(&vars, u)?.try_mul(&Polynomial::var_named(&vars, v)?)?;
    g.try_mul(&uv)
}

/// Checks on `u * f` against its base `f`.
#[derive(Clone, Debug, Serialize)]
pub struct TimesUReport {
    pub base_hilbert: Vec<usize>,
    pub hilbert: Vec<usize>,
    /// `h~_k = h_k + h_{k-1}` for every `k`.
    pub bookkeeping: bool,
    pub base_quadrics: bool,
    pub quadrics: bool,
    pub base_slp: bool,
    pub slp: bool,
    /// Each implication base => lift that was checked holds.
    pub inherited: bool,
}

pub fn verify_times_u(f: &Polynomial, u: &str, config: &CheckConfig) -> Result<TimesUReport> {
    let base = build_algebra(f)?;
    let lifted = build_algebra(&times_u(f, u)?)?;
    let (h, ht) = (base.hilbert(), lifted.hilbert());
    let bookkeeping = ht.len() == h.len() + 1
        && (0..ht.len()).all(|k| {
            ht[k] == h.get(k).copied().unwrap_or(0) + k.checked_sub(1).map_or(0, |j| h[j])
        });
    let base_quadrics = base.ann_generated_by_quadrics().presented;
    let quadrics = lifted.ann_generated_by_quadrics().presented;
    let base_slp = slp_check(&base, config)?.holds;
    let slp = slp_check(&lifted, config)?.holds;
    Ok(TimesUReport {
        base_hilbert: h.to_vec(),
        hilbert: ht.to_vec(),
        bookkeeping,
        base_quadrics,
        quadrics,
        base_slp,
        slp,
        inherited: (!base_quadrics || quadrics) && (!base_slp || slp),
    })
}

/// Rank-deficiency propagation from `f` to `u * v * f`.
#[derive(Clone, Debug, Serialize)]
pub struct TimesUvReport {
    /// `"odd"` when `deg f = 2k - 1`, `"even"` when `deg f = 2q`.
    pub case: String,
    pub base_matrix: String,
    pub base: RankCertificate,
    pub lifted_matrix: String,
    pub lifted: RankCertificate,
    pub base_deficient: bool,
    pub lifted_deficient: bool,
    /// `base_deficient => lifted_deficient`.
    pub propagated: bool,
}

pub fn verify_times_uv(f: &Polynomial, u: &str, v: &str, config: &CheckConfig) -> Result<TimesUvReport> {
    let base = build_algebra(f)?;
    let lifted = build_algebra(&times_uv(f, u, v)?)?;
    let d = base.socle_degree();
    let (case, (bk, bl), (lk, ll)) = if d % 2 == 1 {
        let k = d.div_ceil(2);
        ("odd", (k - 1, k - 1), (k, k))
    } else {
        let q = d / 2;
        if q == 0 {
            return Err(Error::InvalidDegree("base form must have positive degree".into()));
        }
        ("even", (q - 1, q), (q, q + 1))
    };
    let bh = mixed_hessian(&base, bk, bl)?;
    let lh = mixed_hessian(&lifted, lk, ll)?;
    let bc = generic_rank(&bh, config);
    let lc = generic_rank(&lh, config);
    let (bd, ld) = (!bc.is_full(), !lc.is_full());
    Ok(TimesUvReport {
        case: case.into(),
        base_matrix: format!("Hess^({bk},{bl})"),
        base: bc,
        lifted_matrix: format!("Hess^({lk},{ll})"),
        lifted: lc,
        base_deficient: bd,
        lifted_deficient: ld,
        propagated: !bd || ld,
    })
}

/// `f = sum_i x_i g_i(u) + h(u)` and its diagnostics.
#[derive(Clone, Debug)]
pub struct PerazzoForm {
    pub polynomial: Polynomial,
    /// Generic rank of the Jacobian of `(g_1..g_s)`; below `s` means
    /// algebraically dependent.
    pub jacobian_rank: RankCertificate,
    pub algebraically_dependent: bool,
    pub hessian_rank: RankCertificate,
    /// Set when `det` of the classical Hessian was expanded symbolically.
    pub hessian_vanishes_exactly: Option<bool>,
    pub warnings: Vec<String>,
}

/// Builds a Perazzo form; `gs` and `h` live on the same u-variables and the
/// x-variables `x1..xs` are prepended.
pub fn perazzo_form(gs: &[Polynomial], h: Option<&Polynomial>, config: &CheckConfig) -> Result<PerazzoForm> {
    let u = gs
        .first()
        .map(|g| g.vars().clone())
        .ok_or_else(|| Error::InvalidArgument("at least one g_i is required".into()))?;
    let s = gs.len();
    let d1 = gs[0].homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    for g in gs {
        if g.vars().names() != u.names() {
            return Err(Error::VarSetMismatch);
        }
        if g.homogeneous_degree() != Some(d1) {
            return Err(Error::NotHomogeneous);
        }
    }
    if let Some(h) = h {
        if h.vars().names() != u.names() {
            return Err(Error::VarSetMismatch);
        }
        if !h.is_zero() && h.homogeneous_degree() != Some(d1 + 1) {
            return Err(Error::NotHomogeneous);
        }
    }
    let mut index = std::collections::HashMap::new();
    let rank = sparse_rank(gs.iter().map(|g| {
        g.terms()
            .map(|(m, c)| {
                let next = index.len();
                (*index.entry(m.clone()).or_insert(next), c.clone())
            })
            .collect()
    }));
    if rank < s {
        return Err(Error::LinearlyDependent);
    }
    let xs: Vec<String> = (1..=s).map(|i| format!("x{i}")).collect();
    for x in &xs {
        if u.index_of(x).is_some() {
            return Err(Error::VariableCollision(x.clone()));
        }
    }
    let vars = VarSet::bipartite(xs.iter().cloned(), u.names().iter().cloned())?;
    let mut f = Polynomial::zero(&vars);
    for (i, g) in gs.iter().enumerate() {
        let t = Polynomial::var(&vars, i).try_mul(&g.embed(&vars)?)?;
        f.add_scaled(&t, &BigRational::one());
    }
    if let Some(h) = h {
        f.add_scaled(&h.embed(&vars)?, &BigRational::one());
    }
    let jac = jacobian(gs)?;
    let jacobian_rank = generic_rank(&jac, config);
    let dependent = jacobian_rank.rank < s;
    let hess = classical_hessian(&f);
    let hessian_rank = generic_rank(&hess, config);
    let exact = symbolic_det(&hess, config.symbolic_cap).ok().map(|p| p.is_zero());
    let mut warnings = Vec::new();
    if !dependent {
        warnings.push("the g_i are algebraically independent; a vanishing Hessian is not expected".into());
    }
    Ok(PerazzoForm {
        polynomial: f,
        jacobian_rank,
        algebraically_dependent: dependent,
        hessian_rank,
        hessian_vanishes_exactly: exact,
        warnings,
    })
}

fn square_graph() -> Graph {
    Graph::cycle(4)
}

fn hexagon_with_diagonal() -> Graph {
    Graph::new(6, (0..6).map(|i| (i, (i + 1) % 6)).chain([(0, 3)]).collect()).expect("valid")
}

/// The square-graph cubic with the extra term `w^2 u_1`, and for codim 11
/// also a leaf `x_5 u_5 u_1`.
pub fn square_plus_w_squared(codim: usize) -> Result<Polynomial> {
    let (xs, us, extra) = match codim {
        9 => (4, 4, ""),
        11 => (5, 5, " + x5*u5*u1"),
        _ => return Err(Error::OutOfRange(format!("defined for codim 9 and 11, got {codim}"))),
    };
    let names: Vec<String> = (1..=xs)
        .map(|i| format!("x{i}"))
        .chain((1..=us).map(|i| format!("u{i}")))
        .chain(["w".to_string()])
        .collect();
    let vars = VarSet::new(names)?;
    Polynomial::parse(
        &format!("x1*u1*u2 + x2*u2*u3 + x3*u3*u4 + x4*u4*u1{extra} + w^2*u1"),
        &vars,
    )
}

/// Cubic of codimension `r >= 8` presented by quadrics and failing the WLP.
pub fn odd_base_cubic(r: usize) -> Result<Polynomial> {
    match r {
        _ if r < 8 => Err(Error::OutOfRange(format!(
            "cubic base needs codimension r >= 8, got {r}"
        ))),
        9 | 11 => square_plus_w_squared(r),
        _ if r.is_multiple_of(2) => square_graph()
            .to_complex()?
            .with_leaf_tail((r - 8) / 2, "w")?
            .dual_generator(),
        _ => hexagon_with_diagonal()
            .to_complex()?
            .with_leaf_tail((r - 13) / 2, "w")?
            .dual_generator(),
    }
}

/// Odd socle degree `d = 2k+1 >= 3` and `codim >= d + 5`: the cubic base of
/// codimension `codim - (d-3)` times `d - 3` fresh variables `t_i`.
pub fn odd_counterexample(d: u32, codim: usize) -> Result<Polynomial> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::OutOfRange(format!("d must be odd and at least 3, got {d}")));
    }
    if codim < d as usize + 5 {
        return Err(Error::OutOfRange(format!(
            "odd family requires codim >= d + 5 = {}, got {codim}",
            d + 5
        )));
    }
    let mut f = odd_base_cubic(codim - (d as usize - 3))?;
    for _ in 0..d - 3 {
        let t = fresh_name(f.vars(), "t");
        f = times_u(&f, &t)?;
    }
    Ok(f)
}

/// Pure 2-dimensional base complex of codimension `b` for the even family.
pub fn even_base_complex(b: usize) -> Result<SimplicialComplex> {
    match b {
        _ if b < 14 => Err(Error::OutOfRange(format!(
            "quartic base needs codimension at least 14, got {b}"
        ))),
        15 => Err(Error::OutOfRange(
            "codimension 15 is not constructible: leaves add 2 to 14 (TK(2,2,2)) or 17 (TK(2,2,3) minus an edge)"
                .into(),
        )),
        _ if b.is_multiple_of(2) => turan_complex(&[2, 2, 2])?.with_leaf_tail((b - 14) / 2, "w"),
        _ => turan_223_minus_edge().with_leaf_tail((b - 17) / 2, "w"),
    }
}

/// Even socle degree `d = 2k >= 4`: a quartic base of codimension
/// `codim - (d-4)` lifted `(d-4)/2` times by `f -> p_i q_i f`.
pub fn even_counterexample(d: u32, codim: usize) -> Result<Polynomial> {
    if d < 4 || d % 2 == 1 {
        return Err(Error::OutOfRange(format!("d must be even and at least 4, got {d}")));
    }
    let b = codim
        .checked_sub(d as usize - 4)
        .ok_or_else(|| Error::OutOfRange("codimension too small".into()))?;
    let mut f = even_base_complex(b)?.dual_generator()?;
    for _ in 0..(d - 4) / 2 {
        let p = fresh_name(f.vars(), "p");
        let q = fresh_name(f.vars(), "q");
        f = times_uv(&f, &p, &q)?;
    }
    Ok(f)
}

/// Verification of one generated family member.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub socle_degree: u32,
    pub codimension: usize,
    pub hilbert: Vec<usize>,
    pub quadrics: QuadricsResult,
    pub wlp: LefschetzVerdict,
    /// `hess^k` for odd `d = 2k+1`, `Hess^{(q-1,q)}` for even `d = 2q`.
    pub criterion_matrix: String,
    pub criterion_rank: RankCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noninjectivity: Option<NonInjectivityCertificate>,
    pub notes: Vec<String>,
}

impl FamilyReport {
    /// Presented by quadrics and failing the WLP.
    pub fn is_counterexample(&self) -> bool {
        self.quadrics.presented && !self.wlp.holds
    }
}

pub fn verify_family(f: &Polynomial, complex: Option<&SimplicialComplex>, config: &CheckConfig) -> Result<FamilyReport> {
    let alg = build_algebra(f)?;
    let d = alg.socle_degree();
    let (label, h) = if d % 2 == 1 {
        let k = d / 2;
        (format!("hess^{k}"), mixed_hessian(&alg, k, k)?)
    } else {
        let q = d / 2;
        (format!("Hess^({},{q})", q - 1), mixed_hessian(&alg, q - 1, q)?)
    };
    let criterion_rank = generic_rank(&h, config);
    let noninjectivity = match complex {
        Some(c) => noninjectivity_certificate(c, config)?,
        None => None,
    };
    let mut notes: Vec<String> = alg.warnings().to_vec();
    if d % 2 == 0 && alg.codimension() < d as usize + 12 {
        notes.push(format!(
            "codimension {} lies below d + 12 = {}; the construction starts from TK(2,2,2) of codimension 14",
            alg.codimension(),
            d + 12
        ));
    }
    Ok(FamilyReport {
        socle_degree: d,
        codimension: alg.codimension(),
        hilbert: alg.hilbert().to_vec(),
        quadrics: alg.ann_generated_by_quadrics(),
        wlp: wlp_check(&alg, config)?,
        criterion_matrix: label,
        criterion_rank,
        noninjectivity,
        notes,
    })
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Stated in the literature for this example.
    Literature,
    /// Obtained by independent computation.
    Computed,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Expected {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrics: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wlp: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slp: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub polynomial: Polynomial,
    pub complex: Option<SimplicialComplex>,
    pub expected: Expected,
    pub provenance: Vec<(String, Provenance)>,
}

fn binomials(n: usize) -> Vec<usize> {
    let mut row = vec![1usize];
    for k in 0..n {
        let next = row[k] * (n - k) / (k + 1);
        row.push(next);
    }
    row
}

/// `det [[x0,x1,x2],[x3,x4,x5],[x6,x7,0]]`.
pub fn determinantal_cubic() -> Polynomial {
    let vars = VarSet::numbered("x", 8);
    let vars = VarSet::new((0..8).map(|i| format!("x{i}"))).unwrap_or(vars);
    Polynomial::parse("-x0*x5*x7 + x1*x5*x6 + x2*x3*x7 - x2*x4*x6", &vars).expect("valid")
}

/// Named fixtures with their expected properties.
pub fn example_catalog() -> Vec<CatalogEntry> {
    use Provenance::{Computed, Literature};
    let tag = |items: &[(&str, Provenance)]| items.iter().map(|(k, p)| (k.to_string(), *p)).collect();
    let mut out = Vec::new();
    let square = square_graph().to_complex().expect("square");
    out.push(CatalogEntry {
        id: "semplicissimo".into(),
        description: "square graph cubic x1u1u2 + x2u2u3 + x3u3u4 + x4u4u1".into(),
        polynomial: square.dual_generator().expect("pure"),
        complex: Some(square),
        expected: Expected {
            hilbert: Some(vec![1, 8, 8, 1]),
            codimension: Some(8),
            quadrics: Some(true),
            wlp: Some(false),
            slp: Some(false),
        },
        provenance: tag(&[("hilbert", Computed), ("codimension", Literature), ("quadrics", Literature), ("wlp", Literature), ("slp", Computed)]),
    });
    out.push(CatalogEntry {
        id: "semplicissimo-det".into(),
        description: "determinantal cubic det[[x0,x1,x2],[x3,x4,x5],[x6,x7,0]]".into(),
        polynomial: determinantal_cubic(),
        complex: None,
        expected: Expected {
            hilbert: Some(vec![1, 8, 8, 1]),
            codimension: Some(8),
            quadrics: Some(true),
            wlp: Some(false),
            slp: None,
        },
        provenance: tag(&[("hilbert", Computed), ("codimension", Literature), ("quadrics", Computed), ("wlp", Literature)]),
    });
    for r in [9, 11] {
        out.push(CatalogEntry {
            id: format!("semplicissimo2-r{r}"),
            description: format!("square graph cubic with w^2 u1, codimension {r}"),
            polynomial: square_plus_w_squared(r).expect("defined"),
            complex: None,
            expected: Expected {
                hilbert: None,
                codimension: Some(r),
                quadrics: Some(true),
                wlp: Some(false),
                slp: None,
            },
            provenance: tag(&[("codimension", Literature), ("quadrics", Literature), ("wlp", Literature)]),
        });
    }
    for n in 1..=6 {
        out.push(CatalogEntry {
            id: format!("boolean-{n}"),
            description: format!("x1*...*x{n}"),
            polynomial: boolean_form(n).expect("n >= 1"),
            complex: None,
            expected: Expected {
                hilbert: Some(binomials(n)),
                codimension: Some(n),
                quadrics: Some(true),
                wlp: Some(true),
                slp: Some(true),
            },
            provenance: tag(&[("hilbert", Literature), ("quadrics", Literature), ("slp", Literature), ("wlp", Literature)]),
        });
    }
    let pentagon = Graph::cycle(5).to_complex().expect("cycle");
    out.push(CatalogEntry {
        id: "pentagon".into(),
        description: "odd 5-cycle cubic".into(),
        polynomial: pentagon.dual_generator().expect("pure"),
        complex: Some(pentagon),
        expected: Expected {
            hilbert: Some(vec![1, 10, 10, 1]),
            codimension: Some(10),
            quadrics: Some(true),
            wlp: Some(true),
            slp: None,
        },
        provenance: tag(&[("hilbert", Computed), ("quadrics", Literature), ("wlp", Literature)]),
    });
    let hex = hexagon_with_diagonal().to_complex().expect("graph");
    out.push(CatalogEntry {
        id: "hexagon-diagonal".into(),
        description: "hexagon with the central diagonal, codimension 13".into(),
        polynomial: hex.dual_generator().expect("pure"),
        complex: Some(hex),
        expected: Expected {
            hilbert: Some(vec![1, 13, 13, 1]),
            codimension: Some(13),
            quadrics: Some(true),
            wlp: Some(false),
            slp: None,
        },
        provenance: tag(&[("hilbert", Computed), ("quadrics", Literature), ("wlp", Literature)]),
    });
    let tk222 = turan_complex(&[2, 2, 2]).expect("valid");
    out.push(CatalogEntry {
        id: "turan-222".into(),
        description: "Turan complex TK(2,2,2)".into(),
        polynomial: tk222.dual_generator().expect("pure"),
        complex: Some(tk222),
        expected: Expected {
            hilbert: Some(vec![1, 14, 24, 14, 1]),
            codimension: Some(14),
            quadrics: Some(true),
            wlp: Some(false),
            slp: None,
        },
        provenance: tag(&[("hilbert", Computed), ("codimension", Literature), ("quadrics", Literature), ("wlp", Literature)]),
    });
    let tk223 = turan_complex(&[2, 2, 3]).expect("valid");
    out.push(CatalogEntry {
        id: "turan-223".into(),
        description: "Turan complex TK(2,2,3)".into(),
        polynomial: tk223.dual_generator().expect("pure"),
        complex: Some(tk223),
        expected: Expected {
            hilbert: Some(vec![1, 19, 32, 19, 1]),
            codimension: Some(19),
            quadrics: Some(true),
            wlp: Some(false),
            slp: None,
        },
        provenance: tag(&[("hilbert", Computed), ("quadrics", Literature), ("wlp", Literature)]),
    });
    let minus = turan_223_minus_edge();
    out.push(CatalogEntry {
        id: "tk223-minus-edge".into(),
        description: "TK(2,2,3) without the facets through one edge: |V|=7, |E|=15, |F|=10".into(),
        polynomial: minus.dual_generator().expect("pure"),
        complex: Some(minus),
        expected: Expected {
            hilbert: Some(vec![1, 17, 30, 17, 1]),
            codimension: Some(17),
            quadrics: Some(true),
            wlp: Some(false),
            slp: None,
        },
        provenance: tag(&[("hilbert", Computed), ("codimension", Literature), ("quadrics", Computed), ("wlp", Literature)]),
    });
    out.push(CatalogEntry {
        id: "odd-d5-codim10".into(),
        description: "square graph cubic times t1*t2".into(),
        polynomial: odd_counterexample(5, 10).expect("in range"),
        complex: None,
        expected: Expected {
            hilbert: Some(vec![1, 10, 25, 25, 10, 1]),
            codimension: Some(10),
            quadrics: Some(true),
            wlp: Some(false),
            slp: None,
        },
        provenance: tag(&[("hilbert", Computed), ("quadrics", Literature), ("wlp", Computed)]),
    });
    out.push(CatalogEntry {
        id: "even-d6-codim16".into(),
        description: "TK(2,2,2) quartic times p1*q1".into(),
        polynomial: even_counterexample(6, 16).expect("in range"),
        complex: None,
        expected: Expected {
            hilbert: Some(vec![1, 16, 53, 76, 53, 16, 1]),
            codimension: Some(16),
            quadrics: Some(true),
            wlp: Some(false),
            slp: None,
        },
        provenance: tag(&[("hilbert", Computed), ("quadrics", Computed), ("wlp", Computed)]),
    });
    out
}

/// Integer coefficient vector as rationals.
pub fn integer_point(values: &[i64]) -> Vec<BigRational> {
    values.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_forms() {
        let f = boolean_form(1).unwrap();
        assert_eq!(build_algebra(&f).unwrap().hilbert(), &[1, 1]);
        let a = build_algebra(&boolean_form(3).unwrap()).unwrap();
        assert_eq!(a.hilbert(), &[1, 3, 3, 1]);
        assert!(boolean_form(0).is_err());
    }

    #[test]
    fn times_u_examples() {
        let v = VarSet::numbered("x", 1);
        let f = Polynomial::parse("x1", &v).unwrap();
        let g = times_u(&f, "u").unwrap();
        assert_eq!(build_algebra(&g).unwrap().hilbert(), &[1, 2, 1]);
        assert_eq!(times_u(&f, "x1"), Err(Error::VariableCollision("x1".into())));
        let r = verify_times_u(&boolean_form(3).unwrap(), "u", &CheckConfig::default()).unwrap();
        assert!(r.bookkeeping && r.inherited && r.slp);
        assert_eq!(r.hilbert, vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn times_uv_on_boolean_stays_full() {
        let r = verify_times_uv(&boolean_form(3).unwrap(), "u", "v", &CheckConfig::default()).unwrap();
        assert_eq!(r.case, "odd");
        assert!(!r.base_deficient && !r.lifted_deficient);
        let five = build_algebra(&times_uv(&boolean_form(3).unwrap(), "u", "v").unwrap()).unwrap();
        assert_eq!(five.hilbert(), &[1, 5, 10, 10, 5, 1]);
    }

    #[test]
    fn base_cubics_have_requested_codimension() {
        for r in 8..=16 {
            let a = build_algebra(&odd_base_cubic(r).unwrap()).unwrap();
            assert_eq!(a.codimension(), r, "r = {r}");
        }
        assert!(odd_base_cubic(7).is_err());
    }

    #[test]
    fn family_ranges() {
        assert!(odd_counterexample(4, 20).is_err());
        assert!(odd_counterexample(5, 9).is_err());
        assert_eq!(
            build_algebra(&odd_counterexample(3, 8).unwrap()).unwrap().hilbert(),
            &[1, 8, 8, 1]
        );
        assert!(even_counterexample(4, 15).is_err());
        assert!(even_counterexample(4, 13).is_err());
        assert!(even_counterexample(5, 20).is_err());
        for b in [14, 16, 17, 18] {
            assert_eq!(even_base_complex(b).unwrap().dual_generator().unwrap().vars().len(), b);
        }
    }

    #[test]
    fn perazzo_examples() {
        let u = VarSet::numbered("u", 2);
        let g: Vec<Polynomial> = ["u1^2", "u1*u2", "u2^2"]
            .iter()
            .map(|s| Polynomial::parse(s, &u).unwrap())
            .collect();
        let p = perazzo_form(&g, None, &CheckConfig::default()).unwrap();
        assert!(p.algebraically_dependent);
        assert_eq!(p.hessian_vanishes_exactly, Some(true));
        assert_eq!(p.polynomial.vars().len(), 5);
        let u3 = VarSet::numbered("u", 3);
        let g: Vec<Polynomial> = ["u1^2", "u2^2", "u3^2"]
            .iter()
            .map(|s| Polynomial::parse(s, &u3).unwrap())
            .collect();
        let p = perazzo_form(&g, None, &CheckConfig::default()).unwrap();
        assert!(!p.algebraically_dependent);
        assert!(!p.warnings.is_empty());
        assert!(p.hessian_rank.is_full());
        let dup = vec![g[0].clone(), g[0].scale(&BigRational::from_integer(2.into()))];
        assert_eq!(perazzo_form(&dup, None, &CheckConfig::default()).unwrap_err(), Error::LinearlyDependent);
    }

    #[test]
    fn perazzo_square_is_the_square_cubic() {
        let u = VarSet::numbered("u", 4);
        let g: Vec<Polynomial> = ["u1*u2", "u2*u3", "u3*u4", "u4*u1"]
            .iter()
            .map(|s| Polynomial::parse(s, &u).unwrap())
            .collect();
        let p = perazzo_form(&g, None, &CheckConfig::default()).unwrap();
        let square = square_graph().dual_generator().unwrap();
        assert_eq!(p.polynomial.to_string(), square.to_string());
        let prod = g[0].try_mul(&g[2]).unwrap();
        assert_eq!(prod, g[1].try_mul(&g[3]).unwrap());
    }

    #[test]
    fn determinantal_form_matches_square() {
        let a = build_algebra(&determinantal_cubic()).unwrap();
        assert_eq!(a.hilbert(), &[1, 8, 8, 1]);
        let h = crate::hessians::classical_hessian(a.f());
        assert!(symbolic_det(&h, 12).unwrap().is_zero());
    }
}
