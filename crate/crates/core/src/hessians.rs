//! Mixed Hessians and their rank certificates.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::apolarity::GradedAlgebra;
use crate::config::CheckConfig;
use crate::error::{Error, Result};
use crate::linalg::{bareiss_rank, clear_denominators, Matrix};
use crate::polyring::{Monomial, Polynomial, VarSet};

/// Which construction produced a [`MixedHessian`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HessianKind {
    Plain { k: u32, l: u32 },
    /// Rows are the dual basis of `A_l` inside `A_{d-l}`.
    Dual { l: u32, k: u32 },
    Bigraded { row: (u32, u32), col: (u32, u32) },
    /// Any other polynomial matrix (Jacobians, incidence gradients).
    Other,
}

/// Matrix `[rho_i sigma_j (f)]` for operator lists `rho` and `sigma`.
#[derive(Clone, Debug)]
pub struct MixedHessian {
    pub kind: HessianKind,
    pub row_basis: Vec<Polynomial>,
    pub col_basis: Vec<Polynomial>,
    pub entries: Matrix<Polynomial>,
    vars: Arc<VarSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Probabilistic,
}

/// A rank value with its provenance.
///
/// In probabilistic mode `rank` is a certified lower bound: the true generic
/// rank exceeds it with probability at most `failure_bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub mode: Mode,
    pub trials: usize,
    pub sample_bound: u64,
    /// Exact rational written as `p/q`; absent in exact mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_bound: Option<String>,
    pub method: String,
}

impl RankCertificate {
    pub fn is_full(&self) -> bool {
        self.rank == self.rows.min(self.cols)
    }

    fn exact(rank: usize, rows: usize, cols: usize, trials: usize, bound: u64, method: &str) -> Self {
        RankCertificate {
            rank,
            rows,
            cols,
            mode: Mode::Exact,
            trials,
            sample_bound: bound,
            failure_bound: None,
            method: method.into(),
        }
    }
}

impl MixedHessian {
    /// Wraps an arbitrary polynomial matrix.
    pub fn from_matrix(vars: &Arc<VarSet>, entries: Matrix<Polynomial>) -> Self {
        MixedHessian {
            kind: HessianKind::Other,
            row_basis: Vec::new(),
            col_basis: Vec::new(),
            entries,
            vars: vars.clone(),
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.entries.rows()
    }

    pub fn cols(&self) -> usize {
        self.entries.cols()
    }

    /// Largest total degree among the entries; 0 for constant matrices.
    pub fn max_entry_degree(&self) -> u32 {
        self.entries
            .entries()
            .filter_map(Polynomial::max_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<Matrix<BigRational>> {
        let rows = self
            .entries
            .iter_rows()
            .map(|r| r.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(rows, self.cols()))
    }

    /// Exact rank after substituting `point`.
    pub fn rank_at(&self, point: &[BigRational]) -> Result<usize> {
        Ok(integer_rank(&self.evaluate(point)?))
    }

    pub fn transpose(&self) -> MixedHessian {
        MixedHessian {
            kind: match self.kind {
                HessianKind::Plain { k, l } => HessianKind::Plain { k: l, l: k },
                HessianKind::Bigraded { row, col } => HessianKind::Bigraded { row: col, col: row },
                _ => HessianKind::Other,
            },
            row_basis: self.col_basis.clone(),
            col_basis: self.row_basis.clone(),
            entries: self.entries.transpose(),
            vars: self.vars.clone(),
        }
    }
}

fn integer_rank(m: &Matrix<BigRational>) -> usize {
    bareiss_rank(m.iter_rows().map(|r| clear_denominators(r).0).collect())
}

fn monomial_ops(vars: &Arc<VarSet>, basis: &[Monomial]) -> Vec<Polynomial> {
    basis
        .iter()
        .map(|m| Polynomial::monomial(vars, m.clone()))
        .collect()
}

fn assemble(alg: &GradedAlgebra, rows: &[Monomial], cols: &[Monomial]) -> Matrix<Polynomial> {
    let f = alg.f();
    Matrix::from_fn(rows.len(), cols.len(), |i, j| f.apply_monomial(&rows[i].mul(&cols[j])))
}

fn check_degree(alg: &GradedAlgebra, k: u32) -> Result<()> {
    if k > alg.socle_degree() {
        return Err(Error::InvalidDegree(format!(
            "{k} exceeds the socle degree {}",
            alg.socle_degree()
        )));
    }
    Ok(())
}

/// `Hess^{(k,l)} = [alpha_i beta_j (f)]` over the quotient bases of `A_k`, `A_l`.
pub fn mixed_hessian(alg: &GradedAlgebra, k: u32, l: u32) -> Result<MixedHessian> {
    check_degree(alg, k)?;
    check_degree(alg, l)?;
    let (rows, cols) = (alg.quotient_basis(k), alg.quotient_basis(l));
    Ok(MixedHessian {
        kind: HessianKind::Plain { k, l },
        row_basis: monomial_ops(alg.vars(), rows),
        col_basis: monomial_ops(alg.vars(), cols),
        entries: assemble(alg, rows, cols),
        vars: alg.vars().clone(),
    })
}

/// The basis of `A_{d-l}` dual to the quotient basis `beta` of `A_l`:
/// `((theta/beta_i) beta_j)(f) = delta_ij`.
pub fn dual_basis(alg: &GradedAlgebra, l: u32) -> Result<Vec<Polynomial>> {
    check_degree(alg, l)?;
    let c = alg.pairing_inverse(l)?;
    let gammas = alg.quotient_basis(alg.socle_degree() - l);
    let vars = alg.vars();
    Ok((0..c.rows())
        .map(|i| {
            Polynomial::from_terms(
                vars,
                gammas
                    .iter()
                    .enumerate()
                    .map(|(a, g)| (g.clone(), c[(i, a)].clone())),
            )
        })
        .collect())
}

/// `Hess^{(l*,k)} = [(theta/beta_i) alpha_j (f)]`: entries of degree `l - k`.
pub fn dual_mixed_hessian(alg: &GradedAlgebra, l: u32, k: u32) -> Result<MixedHessian> {
    if k > l {
        return Err(Error::InvalidDegree(format!("dual Hessian needs k <= l, got k={k}, l={l}")));
    }
    check_degree(alg, l)?;
    let d = alg.socle_degree();
    let c = alg.pairing_inverse(l)?;
    let plain = assemble(alg, alg.quotient_basis(d - l), alg.quotient_basis(k));
    let vars = alg.vars();
    let entries = Matrix::from_fn(c.rows(), plain.cols(), |i, j| {
        let mut acc = Polynomial::zero(vars);
        for a in 0..c.cols() {
            acc.add_scaled(&plain[(a, j)], &c[(i, a)]);
        }
        acc
    });
    Ok(MixedHessian {
        kind: HessianKind::Dual { l, k },
        row_basis: dual_basis(alg, l)?,
        col_basis: monomial_ops(vars, alg.quotient_basis(k)),
        entries,
        vars: vars.clone(),
    })
}

/// `Hess^{((k,l),(k',l'))}` over the bidegree pieces of the quotient bases.
pub fn bigraded_hessian(
    alg: &GradedAlgebra,
    row_bidegree: (u32, u32),
    col_bidegree: (u32, u32),
) -> Result<MixedHessian> {
    let b = alg.bigraded_decomposition()?;
    let (rows, cols) = (b.basis(row_bidegree), b.basis(col_bidegree));
    Ok(MixedHessian {
        kind: HessianKind::Bigraded {
            row: row_bidegree,
            col: col_bidegree,
        },
        row_basis: monomial_ops(alg.vars(), rows),
        col_basis: monomial_ops(alg.vars(), cols),
        entries: assemble(alg, rows, cols),
        vars: alg.vars().clone(),
    })
}

/// Matrix of second partial derivatives of `f` in all variables.
pub fn classical_hessian(f: &Polynomial) -> MixedHessian {
    let vars = f.vars().clone();
    let n = vars.len();
    let first: Vec<Polynomial> = (0..n).map(|i| f.derivative(i)).collect();
    let entries = Matrix::from_fn(n, n, |i, j| first[i].derivative(j));
    MixedHessian::from_matrix(&vars, entries)
}

/// Jacobian of `forms` (rows) with respect to every variable (columns).
pub fn jacobian(forms: &[Polynomial]) -> Result<MixedHessian> {
    let vars = forms
        .first()
        .map(|g| g.vars().clone())
        .ok_or_else(|| Error::InvalidArgument("empty list of forms".into()))?;
    if forms.iter().any(|g| g.vars().names() != vars.names()) {
        return Err(Error::VarSetMismatch);
    }
    let entries = Matrix::from_fn(forms.len(), vars.len(), |i, j| forms[i].derivative(j));
    Ok(MixedHessian::from_matrix(&vars, entries))
}

/// Uniform integer point in `[-bound, bound]^n`.
pub fn random_point(rng: &mut impl Rng, n: usize, bound: u64) -> Vec<BigRational> {
    let b = bound.min(i64::MAX as u64) as i64;
    (0..n)
        .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-b..=b))))
        .collect()
}

/// `min(1, (D / (2B+1))^t)` as an exact rational.
pub fn schwartz_zippel_bound(degree: u64, bound: u64, trials: usize) -> BigRational {
    let p = BigRational::new(BigInt::from(degree), BigInt::from(2 * bound as u128 + 1));
    let p = if p > BigRational::one() { BigRational::one() } else { p };
    num_traits::pow(p, trials)
}

/// Generic rank by random evaluation, upgraded to exact when possible.
///
/// The rank is exact when it is full, when the matrix is constant, or when
/// a symbolic elimination within `config.symbolic_cap` confirms it.
pub fn generic_rank(h: &MixedHessian, config: &CheckConfig) -> RankCertificate {
    generic_rank_salted(h, config, 0)
}

pub(crate) fn generic_rank_salted(h: &MixedHessian, config: &CheckConfig, salt: u64) -> RankCertificate {
    let (rows, cols) = (h.rows(), h.cols());
    let full = rows.min(cols);
    let deg = h.max_entry_degree();
    if deg == 0 {
        let m = h.evaluate(&vec![BigRational::zero(); h.vars.len()]).expect("point length");
        return RankCertificate::exact(integer_rank(&m), rows, cols, 0, config.sample_bound, "constant");
    }
    let mut rng = config.rng(0x5eed_0000 ^ salt);
    let mut best = 0;
    let mut used = 0;
    for _ in 0..config.trials.max(1) {
        used += 1;
        let p = random_point(&mut rng, h.vars.len(), config.sample_bound);
        best = best.max(h.rank_at(&p).expect("point length"));
        if best == full {
            return RankCertificate::exact(best, rows, cols, used, config.sample_bound, "evaluation");
        }
    }
    if let Some(r) = symbolic_rank(h, config.symbolic_cap) {
        return RankCertificate::exact(r, rows, cols, used, config.sample_bound, "symbolic elimination");
    }
    let d = (best as u64 + 1) * deg as u64;
    RankCertificate {
        rank: best,
        rows,
        cols,
        mode: Mode::Probabilistic,
        trials: used,
        sample_bound: config.sample_bound,
        failure_bound: Some(schwartz_zippel_bound(d, config.sample_bound, used).to_string()),
        method: "evaluation".into(),
    }
}

/// Term count above which symbolic elimination gives up.
const TERM_BUDGET: usize = 20_000;

/// Rank over the field of rational functions by fraction-free elimination
/// with exact polynomial division. `None` when the matrix exceeds `cap` in
/// either dimension or intermediate entries outgrow the term budget.
pub fn symbolic_rank(h: &MixedHessian, cap: usize) -> Option<usize> {
    if h.rows() > cap || h.cols() > cap {
        return None;
    }
    let mut a: Vec<Vec<Polynomial>> = h.entries.iter_rows().map(|r| r.to_vec()).collect();
    let (n, m) = (h.rows(), h.cols());
    let mut prev = Polynomial::one(&h.vars);
    let mut rank = 0;
    for col in 0..m {
        if rank == n {
            break;
        }
        let Some(piv) = (rank..n)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| a[i][col].num_terms())
        else {
            continue;
        };
        a.swap(rank, piv);
        for i in rank + 1..n {
            for j in col + 1..m {
                let t = a[rank][col]
                    .try_mul(&a[i][j])
                    .ok()?
                    .try_sub(&a[i][col].try_mul(&a[rank][j]).ok()?)
                    .ok()?;
                let q = t.div_exact(&prev)?;
                if q.num_terms() > TERM_BUDGET {
                    return None;
                }
                a[i][j] = q;
            }
            a[i][col] = Polynomial::zero(&h.vars);
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    Some(rank)
}

/// Exact determinant by cofactor expansion, sparsest rows first, with
/// minors memoized by their column set.
pub fn symbolic_det(h: &MixedHessian, cap: usize) -> Result<Polynomial> {
    if !h.entries.is_square() {
        return Err(Error::InvalidArgument(format!(
            "determinant of a {}x{} matrix",
            h.rows(),
            h.cols()
        )));
    }
    let n = h.rows();
    if n > cap || n > 63 {
        return Err(Error::SymbolicCapExceeded { size: n, cap });
    }
    if n == 0 {
        return Ok(Polynomial::one(&h.vars));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| h.entries.row(i).iter().filter(|p| !p.is_zero()).count());
    let sign = permutation_sign(&order);
    let mut memo: HashMap<u64, Polynomial> = HashMap::new();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let det = cofactor(h, &order, full, &mut memo);
    Ok(if sign { det } else { det.neg() })
}

fn cofactor(h: &MixedHessian, order: &[usize], mask: u64, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
    if mask == 0 {
        return Polynomial::one(&h.vars);
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let depth = order.len() - mask.count_ones() as usize;
    let row = h.entries.row(order[depth]);
    let mut acc = Polynomial::zero(&h.vars);
    let mut position = 0;
    for (j, entry) in row.iter().enumerate() {
        if mask & (1 << j) == 0 {
            continue;
        }
        if !entry.is_zero() {
            let minor = cofactor(h, order, mask & !(1 << j), memo);
            if !minor.is_zero() {
                let term = entry.try_mul(&minor).expect("same variables");
                let c = if position % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                acc.add_scaled(&term, &c);
            }
        }
        position += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// True for even permutations.
fn permutation_sign(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut even = true;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            even = !even;
        }
    }
    even
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apolarity::build_algebra;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn boolean3() -> GradedAlgebra {
        let v = VarSet::numbered("x", 3);
        build_algebra(&Polynomial::parse("x1*x2*x3", &v).unwrap()).unwrap()
    }

    fn square() -> GradedAlgebra {
        let v = VarSet::bipartite(["x1", "x2", "x3", "x4"], ["u1", "u2", "u3", "u4"]).unwrap();
        build_algebra(&Polynomial::parse("x1*u1*u2 + x2*u2*u3 + x3*u3*u4 + x4*u4*u1", &v).unwrap())
            .unwrap()
    }

    #[test]
    fn boolean_first_hessian() {
        let a = boolean3();
        let h = mixed_hessian(&a, 1, 1).unwrap();
        let v = a.vars();
        let p = |s: &str| Polynomial::parse(s, v).unwrap();
        let expect = [["0", "x3", "x2"], ["x3", "0", "x1"], ["x2", "x1", "0"]];
        for (i, row) in expect.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(h.entries[(i, j)], p(e));
            }
        }
        assert_eq!(symbolic_det(&h, 12).unwrap(), p("2*x1*x2*x3"));
        assert_eq!(h.rank_at(&[q(1), q(1), q(1)]).unwrap(), 3);
        let c = generic_rank(&h, &CheckConfig::default());
        assert_eq!((c.rank, c.mode), (3, Mode::Exact));
    }

    #[test]
    fn zeroth_hessian_is_f() {
        let a = boolean3();
        let h = mixed_hessian(&a, 0, 0).unwrap();
        assert_eq!(h.entries[(0, 0)], *a.f());
        assert_eq!(symbolic_det(&h, 12).unwrap(), *a.f());
    }

    #[test]
    fn square_hessian_vanishes() {
        let a = square();
        let h = mixed_hessian(&a, 1, 1).unwrap();
        assert_eq!(h.rows(), 8);
        assert!(symbolic_det(&h, 12).unwrap().is_zero());
        let c = generic_rank(&h, &CheckConfig::default());
        assert_eq!((c.rank, c.mode), (7, Mode::Exact));
        let d = dual_mixed_hessian(&a, 2, 1).unwrap();
        assert_eq!(generic_rank(&d, &CheckConfig::default()).rank, 7);
    }

    #[test]
    fn dual_basis_pairs_to_identity() {
        for a in [boolean3(), square()] {
            for l in 0..=3 {
                let duals = dual_basis(&a, l).unwrap();
                for (i, g) in duals.iter().enumerate() {
                    for (j, b) in a.quotient_basis(l).iter().enumerate() {
                        let gb = g.mul_monomial(b);
                        let v = crate::polyring::apolar_apply(&gb, a.f()).unwrap();
                        assert_eq!(v.as_constant().unwrap(), if i == j { q(1) } else { q(0) });
                    }
                }
            }
        }
    }

    #[test]
    fn dual_hessian_constant_case_is_identity() {
        let a = square();
        let h = dual_mixed_hessian(&a, 1, 1).unwrap();
        let m = h.evaluate(&vec![q(0); 8]).unwrap();
        assert_eq!(m, Matrix::identity(8));
        assert!(dual_mixed_hessian(&a, 1, 2).is_err());
    }

    #[test]
    fn bigraded_blocks() {
        let a = square();
        let h = bigraded_hessian(&a, (1, 0), (0, 1)).unwrap();
        assert_eq!((h.rows(), h.cols()), (4, 4));
        assert!(symbolic_det(&h, 12).unwrap().is_zero());
        let s = bigraded_hessian(&a, (0, 0), (1, 2)).unwrap();
        assert_eq!((s.rows(), s.cols()), (1, 1));
        assert!(!s.entries[(0, 0)].is_zero());
    }

    #[test]
    fn cap_is_enforced() {
        let a = square();
        let h = mixed_hessian(&a, 1, 1).unwrap();
        assert_eq!(symbolic_det(&h, 4), Err(Error::SymbolicCapExceeded { size: 8, cap: 4 }));
    }

    #[test]
    fn permutation_signs() {
        assert!(permutation_sign(&[0, 1, 2]));
        assert!(!permutation_sign(&[1, 0, 2]));
        assert!(permutation_sign(&[1, 2, 0]));
    }

    #[test]
    fn sz_bound() {
        assert_eq!(schwartz_zippel_bound(3, 1, 2), BigRational::new(1.into(), 1.into()));
        assert_eq!(schwartz_zippel_bound(2, 1, 2), BigRational::new(4.into(), 9.into()));
    }
}
