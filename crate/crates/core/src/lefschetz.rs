//! Multiplication maps and the weak and strong Lefschetz deciders.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::apolarity::GradedAlgebra;
use crate::config::CheckConfig;
use crate::error::{Error, Result};
use crate::hessians::{
    dual_mixed_hessian, generic_rank_salted, mixed_hessian, random_point, schwartz_zippel_bound,
    symbolic_det, symbolic_rank, MixedHessian, Mode, RankCertificate,
};
use crate::linalg::Matrix;
use crate::polyring::{apolar_apply, factorial, LinearForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Property {
    #[serde(rename = "WLP")]
    Wlp,
    #[serde(rename = "SLP")]
    Slp,
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Property::Wlp => "WLP",
            Property::Slp => "SLP",
        })
    }
}

/// Ranks of `mu_L : A_i -> A_{i+1}` for `i = 0..d-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    pub ranks: Vec<usize>,
    /// `min(h_i, h_{i+1})`.
    pub expected: Vec<usize>,
}

impl RankProfile {
    pub fn is_full(&self) -> bool {
        self.ranks == self.expected
    }

    /// Steps `i` where `mu_L : A_i -> A_{i+1}` has less than maximal rank.
    pub fn failing_steps(&self) -> Vec<usize> {
        (0..self.ranks.len())
            .filter(|&i| self.ranks[i] < self.expected[i])
            .collect()
    }
}

/// A labelled rank certificate for one Hessian in a criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub matrix: String,
    pub certificate: RankCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzVerdict {
    pub property: Property,
    pub holds: bool,
    pub mode: Mode,
    /// `L^perp` for the reported element, as `p/q` strings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub evidence: Vec<Evidence>,
    /// Profile at the witness, or at the last candidate tried.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<RankProfile>,
    pub failing_steps: Vec<usize>,
    pub candidates_tried: usize,
    pub trials: usize,
    pub seed: u64,
    pub notes: Vec<String>,
}

fn check_range(alg: &GradedAlgebra, k: u32, l: u32) -> Result<()> {
    if k > l || l > alg.socle_degree() {
        return Err(Error::InvalidDegree(format!(
            "need k <= l <= {}, got k={k}, l={l}",
            alg.socle_degree()
        )));
    }
    Ok(())
}

/// Matrix of `mu_{L^{l-k}} : A_k -> A_l` in the quotient bases.
///
/// Column `j` holds the coordinates of `L^{l-k} alpha_j`, found by pairing
/// `L^{l-k}(alpha_j(f))` against the basis of `A_{d-l}` and applying the
/// inverse pairing matrix. No Hessian is involved.
pub fn mult_map_matrix(alg: &GradedAlgebra, k: u32, l: u32, ell: &LinearForm) -> Result<Matrix<BigRational>> {
    check_range(alg, k, l)?;
    if ell.vars().names() != alg.vars().names() {
        return Err(Error::VarSetMismatch);
    }
    let d = alg.socle_degree();
    let op = ell.as_operator().with_vars(alg.vars())?;
    let duals = alg.quotient_basis(d - l);
    let inv = alg.pairing_inverse(l)?;
    let cols: Vec<Vec<BigRational>> = alg
        .quotient_basis(k)
        .iter()
        .map(|alpha| {
            let mut g = alg.f().apply_monomial(alpha);
            for _ in k..l {
                g = apolar_apply(&op, &g).expect("same variables");
            }
            let v: Vec<BigRational> = duals
                .iter()
                .map(|m| g.apply_monomial(m).as_constant().expect("constant"))
                .collect();
            inv.mul_vec(&v)
        })
        .collect();
    Ok(Matrix::from_fn(alg.h(l), cols.len(), |i, j| cols[j][i].clone()))
}

/// Whether `mult_map_matrix = (l-k)! * Hess^{(l*,k)}(L^perp)` exactly.
pub fn generalization_check(alg: &GradedAlgebra, k: u32, l: u32, ell: &LinearForm) -> Result<bool> {
    check_range(alg, k, l)?;
    let m = mult_map_matrix(alg, k, l, ell)?;
    let h = dual_mixed_hessian(alg, l, k)?;
    let rhs = h
        .evaluate(ell.point())?
        .scale(&BigRational::from_integer(factorial(l - k)));
    Ok(m == rhs)
}

/// Ranks of every one-step multiplication map by `L`.
///
/// Fails with an invariant error if `rk mu_i != rk mu_{d-1-i}`.
pub fn rank_profile(alg: &GradedAlgebra, ell: &LinearForm) -> Result<RankProfile> {
    let d = alg.socle_degree();
    let mut ranks = Vec::with_capacity(d as usize);
    let mut expected = Vec::with_capacity(d as usize);
    for i in 0..d {
        ranks.push(mult_map_matrix(alg, i, i + 1, ell)?.rank());
        expected.push(alg.h(i).min(alg.h(i + 1)));
    }
    for i in 0..ranks.len() {
        if ranks[i] != ranks[ranks.len() - 1 - i] {
            return Err(Error::Invariant(format!(
                "rank of mu_{i} differs from rank of mu_{}",
                ranks.len() - 1 - i
            )));
        }
    }
    Ok(RankProfile { ranks, expected })
}

/// Candidate points `L^perp` with `f(L^perp) != 0`, in the order they are
/// tried: the all-ones point first (if enabled), then seeded random points.
/// Rejected samples count against a budget of `10 * trials` draws.
fn candidates(alg: &GradedAlgebra, config: &CheckConfig, salt: u64) -> Vec<Vec<BigRational>> {
    let n = alg.vars().len();
    let f = alg.f();
    let mut out = Vec::new();
    if config.try_all_ones {
        let ones = vec![BigRational::one(); n];
        if !f.eval(&ones).expect("length").is_zero() {
            out.push(ones);
        }
    }
    let mut rng = config.rng(salt);
    let mut draws = 0;
    while out.len() < config.trials.max(1) && draws < 10 * config.trials.max(1) {
        draws += 1;
        let p = random_point(&mut rng, n, config.sample_bound);
        if p.iter().all(Zero::is_zero) || f.eval(&p).expect("length").is_zero() {
            continue;
        }
        out.push(p);
    }
    out
}

fn label_point(p: &[BigRational]) -> Vec<String> {
    p.iter().map(ToString::to_string).collect()
}

struct Criterion {
    label: String,
    hessian: MixedHessian,
    /// Square matrices test a nonzero determinant, others maximal rank.
    target: usize,
}

impl Criterion {
    fn holds_at(&self, p: &[BigRational]) -> usize {
        self.hessian.rank_at(p).expect("length")
    }
}

fn decide(
    alg: &GradedAlgebra,
    property: Property,
    criteria: Vec<Criterion>,
    config: &CheckConfig,
    salt: u64,
) -> Result<LefschetzVerdict> {
    let points = candidates(alg, config, salt);
    let mut notes = Vec::new();
    if alg.has_linear_annihilator() {
        notes.push("I_1 != 0: the Hessian criteria assume no linear annihilators".into());
    }
    let mut best = vec![0usize; criteria.len()];
    let mut last_profile = None;
    for (t, p) in points.iter().enumerate() {
        let ranks: Vec<usize> = criteria.iter().map(|c| c.holds_at(p)).collect();
        for (b, r) in best.iter_mut().zip(&ranks) {
            *b = (*b).max(*r);
        }
        if ranks.iter().zip(&criteria).all(|(r, c)| *r == c.target) {
            let ell = LinearForm::new(alg.vars(), p.clone())?;
            let profile = rank_profile(alg, &ell)?;
            let evidence = criteria
                .iter()
                .map(|c| Evidence {
                    matrix: c.label.clone(),
                    certificate: RankCertificate {
                        rank: c.target,
                        rows: c.hessian.rows(),
                        cols: c.hessian.cols(),
                        mode: Mode::Exact,
                        trials: t + 1,
                        sample_bound: config.sample_bound,
                        failure_bound: None,
                        method: "evaluation at witness".into(),
                    },
                })
                .collect();
            let full = profile.is_full();
            if !full {
                notes.push("criterion holds at the witness but the rank profile is not full".into());
            }
            return Ok(LefschetzVerdict {
                property,
                holds: full,
                mode: Mode::Exact,
                witness: Some(label_point(p)),
                evidence,
                failing_steps: profile.failing_steps(),
                profile: Some(profile),
                candidates_tried: t + 1,
                trials: config.trials,
                seed: config.seed,
                notes,
            });
        }
        if t + 1 == points.len() {
            let ell = LinearForm::new(alg.vars(), p.clone())?;
            last_profile = Some(rank_profile(alg, &ell)?);
        }
    }

    // No witness found: certify the failing criteria.
    let mut evidence = Vec::new();
    let mut exact = false;
    for (c, &b) in criteria.iter().zip(&best) {
        if b == c.target {
            evidence.push(Evidence {
                matrix: c.label.clone(),
                certificate: RankCertificate {
                    rank: b,
                    rows: c.hessian.rows(),
                    cols: c.hessian.cols(),
                    mode: Mode::Exact,
                    trials: points.len(),
                    sample_bound: config.sample_bound,
                    failure_bound: None,
                    method: "evaluation".into(),
                },
            });
            continue;
        }
        let h = &c.hessian;
        let symbolic = if h.entries.is_square() {
            symbolic_det(h, config.symbolic_cap)
                .ok()
                .map(|det| if det.is_zero() { Some(b) } else { None })
        } else {
            symbolic_rank(h, config.symbolic_cap).map(|r| (r < c.target).then_some(r))
        };
        let cert = match symbolic {
            Some(Some(r)) => {
                exact = true;
                let rank = if h.entries.is_square() {
                    symbolic_rank(h, config.symbolic_cap).unwrap_or(r)
                } else {
                    r
                };
                RankCertificate {
                    rank,
                    rows: h.rows(),
                    cols: h.cols(),
                    mode: Mode::Exact,
                    trials: points.len(),
                    sample_bound: config.sample_bound,
                    failure_bound: None,
                    method: if h.entries.is_square() {
                        "symbolic determinant".into()
                    } else {
                        "symbolic elimination".into()
                    },
                }
            }
            Some(None) => {
                notes.push(format!(
                    "{} is generically of maximal rank but no sampled point realized it",
                    c.label
                ));
                RankCertificate {
                    rank: c.target,
                    rows: h.rows(),
                    cols: h.cols(),
                    mode: Mode::Exact,
                    trials: points.len(),
                    sample_bound: config.sample_bound,
                    failure_bound: None,
                    method: "symbolic".into(),
                }
            }
            None => {
                let deg = (b as u64 + 1) * h.max_entry_degree() as u64;
                RankCertificate {
                    rank: b,
                    rows: h.rows(),
                    cols: h.cols(),
                    mode: Mode::Probabilistic,
                    trials: points.len(),
                    sample_bound: config.sample_bound,
                    failure_bound: Some(
                        schwartz_zippel_bound(deg, config.sample_bound, points.len()).to_string(),
                    ),
                    method: "evaluation".into(),
                }
            }
        };
        evidence.push(Evidence {
            matrix: c.label.clone(),
            certificate: cert,
        });
    }
    let failing_steps = last_profile.as_ref().map_or_else(Vec::new, RankProfile::failing_steps);
    Ok(LefschetzVerdict {
        property,
        holds: false,
        mode: if exact { Mode::Exact } else { Mode::Probabilistic },
        witness: None,
        evidence,
        profile: last_profile,
        failing_steps,
        candidates_tried: points.len(),
        trials: config.trials,
        seed: config.seed,
        notes,
    })
}

/// Strong Lefschetz via `hess^k(a) != 0` for `k = 1..floor(d/2)`.
pub fn slp_check(alg: &GradedAlgebra, config: &CheckConfig) -> Result<LefschetzVerdict> {
    let d = alg.socle_degree();
    let criteria = (1..=d / 2)
        .map(|k| {
            Ok(Criterion {
                label: format!("hess^{k}"),
                hessian: mixed_hessian(alg, k, k)?,
                target: alg.h(k),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    decide(alg, Property::Slp, criteria, config, 0x51)
}

/// Weak Lefschetz: `hess^q(a) != 0` when `d = 2q+1`, maximal rank of
/// `Hess^{(q-1,q)}(a)` when `d = 2q`. A positive verdict also requires the
/// full one-step rank profile at the witness.
pub fn wlp_check(alg: &GradedAlgebra, config: &CheckConfig) -> Result<LefschetzVerdict> {
    let d = alg.socle_degree();
    let q = d / 2;
    let mut criteria = Vec::new();
    if d % 2 == 1 && q >= 1 {
        criteria.push(Criterion {
            label: format!("hess^{q}"),
            hessian: mixed_hessian(alg, q, q)?,
            target: alg.h(q),
        });
    } else if d.is_multiple_of(2) && q >= 1 {
        criteria.push(Criterion {
            label: format!("Hess^({},{q})", q - 1),
            hessian: mixed_hessian(alg, q - 1, q)?,
            target: alg.h(q - 1).min(alg.h(q)),
        });
    }
    decide(alg, Property::Wlp, criteria, config, 0x57)
}

/// `generic_rank` for a labelled Hessian; `salt` keeps call sites independent.
pub fn hessian_rank(h: &MixedHessian, config: &CheckConfig, salt: u64) -> RankCertificate {
    generic_rank_salted(h, config, salt)
}

/// Random linear form with integer coefficients in `[-bound, bound]`.
pub fn random_linear_form(alg: &GradedAlgebra, rng: &mut impl rand::Rng, bound: u64) -> LinearForm {
    loop {
        let p = random_point(rng, alg.vars().len(), bound);
        if let Ok(l) = LinearForm::new(alg.vars(), p) {
            return l;
        }
    }
}

/// `L` from integer coefficients on the algebra's variables.
pub fn linear_form(alg: &GradedAlgebra, coefficients: &[i64]) -> Result<LinearForm> {
    LinearForm::from_integers(alg.vars(), coefficients)
}

impl LefschetzVerdict {
    pub fn witness_form(&self, alg: &GradedAlgebra) -> Option<LinearForm> {
        let w = self.witness.as_ref()?;
        let coeffs = w.iter().map(|s| s.parse().ok()).collect::<Option<Vec<BigRational>>>()?;
        LinearForm::new(alg.vars(), coeffs).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apolarity::build_algebra;
    use crate::polyring::{Polynomial, VarSet};

    fn alg(s: &str, names: &[&str]) -> GradedAlgebra {
        let v = VarSet::new(names.iter().copied()).unwrap();
        build_algebra(&Polynomial::parse(s, &v).unwrap()).unwrap()
    }

    fn square() -> GradedAlgebra {
        alg(
            "x1*u1*u2 + x2*u2*u3 + x3*u3*u4 + x4*u4*u1",
            &["x1", "x2", "x3", "x4", "u1", "u2", "u3", "u4"],
        )
    }

    #[test]
    fn identity_when_k_equals_l() {
        let a = square();
        let l = linear_form(&a, &[1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        for k in 0..=3 {
            assert_eq!(mult_map_matrix(&a, k, k, &l).unwrap(), Matrix::identity(a.h(k)));
            assert!(generalization_check(&a, k, k, &l).unwrap());
        }
    }

    #[test]
    fn boolean_profile() {
        let a = alg("x1*x2*x3", &["x1", "x2", "x3"]);
        let l = linear_form(&a, &[1, 1, 1]).unwrap();
        assert_eq!(mult_map_matrix(&a, 1, 2, &l).unwrap().rank(), 3);
        let p = rank_profile(&a, &l).unwrap();
        assert_eq!(p.ranks, vec![1, 3, 1]);
        assert!(p.is_full());
        let l = linear_form(&a, &[1, 2, 3]).unwrap();
        assert!(generalization_check(&a, 1, 2, &l).unwrap());
        assert!(generalization_check(&a, 0, 3, &l).unwrap());
    }

    #[test]
    fn square_fails_wlp_exactly() {
        let a = square();
        let w = wlp_check(&a, &CheckConfig::default()).unwrap();
        assert!(!w.holds);
        assert_eq!(w.mode, Mode::Exact);
        assert_eq!(w.failing_steps, vec![1]);
        let s = slp_check(&a, &CheckConfig::default()).unwrap();
        assert!(!s.holds);
        assert_eq!(s.mode, Mode::Exact);
    }

    #[test]
    fn simple_positive_verdicts() {
        let a = alg("x1*x2*x3", &["x1", "x2", "x3"]);
        let s = slp_check(&a, &CheckConfig::default()).unwrap();
        assert!(s.holds);
        assert_eq!(s.witness, Some(vec!["1".into(), "1".into(), "1".into()]));
        let c = alg("x1^3", &["x1"]);
        assert!(slp_check(&c, &CheckConfig::default()).unwrap().holds);
        assert!(wlp_check(&c, &CheckConfig::default()).unwrap().holds);
    }

    #[test]
    fn range_errors() {
        let a = square();
        let l = linear_form(&a, &[1; 8]).unwrap();
        assert!(mult_map_matrix(&a, 2, 1, &l).is_err());
        assert!(mult_map_matrix(&a, 1, 4, &l).is_err());
    }
}
