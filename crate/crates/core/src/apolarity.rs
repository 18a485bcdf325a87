//! The algebra `A = Q/Ann_Q(f)` built degree by degree from catalecticants.
//!
//! Only operator monomials dividing some term of `f` can act nontrivially,
//! so each degree works on that support set `S_k`; every other monomial of
//! `Q_k` is a monomial annihilator and is never materialized.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{clear_denominators, Matrix, SparseEchelon, SparseVec};
use crate::polyring::{monomial_count, monomials_of_degree, Monomial, Polynomial, VarSet};

#[derive(Clone, Debug)]
struct Piece {
    /// `S_k` in descending graded-lex order.
    support: Vec<Monomial>,
    quotient_basis: Vec<Monomial>,
    /// Kernel of the catalecticant restricted to `S_k`, integer coefficients.
    relations: Vec<Polynomial>,
}

/// `A = Q/Ann_Q(f)` for a nonzero form `f` of degree `d`.
#[derive(Debug)]
pub struct GradedAlgebra {
    f: Polynomial,
    /// Primitive integral multiple of `f`; same annihilator.
    fi: Polynomial,
    d: u32,
    pieces: Vec<Piece>,
    hilbert: Vec<usize>,
    theta_normalizer: BigRational,
    linear_annihilator: bool,
    warnings: Vec<String>,
    pairing_inverses: Vec<OnceLock<Matrix<BigRational>>>,
}

/// Outcome of the presented-by-quadrics test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadricsResult {
    pub presented: bool,
    /// Degrees `k` in `3..=d+1` where `Q_1 * Ann_{k-1}` misses part of `Ann_k`.
    pub failing_degrees: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Quotient bases regrouped by bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedBasis {
    pub socle_bidegree: (u32, u32),
    pub pieces: BTreeMap<(u32, u32), Vec<Monomial>>,
}

impl BigradedBasis {
    pub fn dim(&self, bidegree: (u32, u32)) -> usize {
        self.pieces.get(&bidegree).map_or(0, Vec::len)
    }

    pub fn basis(&self, bidegree: (u32, u32)) -> &[Monomial] {
        self.pieces.get(&bidegree).map_or(&[], Vec::as_slice)
    }
}

/// Matrix of `Q_k -> R_{d-k}`, `op -> op(f)`, in monomial bases: rows are
/// monomials of `R_{d-k}` and columns monomials of `Q_k`, both in descending
/// graded-lex order. Dense; intended for small inputs. For `k > d` the map
/// is zero and an empty-row matrix is returned.
pub fn catalecticant(f: &Polynomial, k: u32) -> Result<Matrix<BigRational>> {
    let d = f.homogeneous_degree().ok_or(if f.is_zero() {
        Error::ZeroPolynomial
    } else {
        Error::NotHomogeneous
    })?;
    let n = f.vars().len();
    let cols = monomials_of_degree(n, k);
    if k > d {
        return Ok(Matrix::zeros(0, cols.len()));
    }
    let rows = monomials_of_degree(n, d - k);
    let index: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (j, op) in cols.iter().enumerate() {
        for (mono, c) in f.apply_monomial(op).terms() {
            m[(index[mono], j)] = c.clone();
        }
    }
    Ok(m)
}

/// Degree-`k` monomials dividing some term of `f`, descending graded-lex.
fn support_set(f: &Polynomial, k: u32) -> Vec<Monomial> {
    let mut out = BTreeSet::new();
    for (t, _) in f.terms() {
        sub_monomials(t.exponents(), k, &mut out);
    }
    out.into_iter().rev().collect()
}

fn sub_monomials(bound: &[u32], k: u32, out: &mut BTreeSet<Monomial>) {
    fn rec(bound: &[u32], pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut BTreeSet<Monomial>) {
        if left == 0 {
            out.insert(Monomial::new(cur.clone()));
            return;
        }
        if pos == bound.len() {
            return;
        }
        let rest: u32 = bound[pos + 1..].iter().sum();
        let lo = left.saturating_sub(rest);
        for e in lo..=bound[pos].min(left) {
            cur[pos] = e;
            rec(bound, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    if bound.iter().sum::<u32>() >= k {
        rec(bound, 0, k, &mut vec![0; bound.len()], out);
    }
}

/// Sparse integer vector of a polynomial with integral coefficients,
/// indexing monomials through `index` (new monomials get fresh indices).
fn to_sparse(p: &Polynomial, index: &mut HashMap<Monomial, usize>, scale_out: bool) -> SparseVec {
    let vals: Vec<BigRational> = p.terms().map(|(_, c)| c.clone()).collect();
    let ints: Vec<BigInt> = if scale_out {
        clear_denominators(&vals).0
    } else {
        vals.iter().map(|c| c.to_integer()).collect()
    };
    let mut v: SparseVec = p
        .terms()
        .zip(ints)
        .map(|((m, _), c)| {
            let next = index.len();
            (*index.entry(m.clone()).or_insert(next), c)
        })
        .collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

fn build_piece(fi: &Polynomial, k: u32) -> Piece {
    let vars = fi.vars();
    let support = support_set(fi, k);
    let mut ech = SparseEchelon::new();
    let mut index = HashMap::new();
    let mut quotient_basis = Vec::new();
    let mut relations = Vec::new();
    for (tag, op) in support.iter().enumerate() {
        let image = fi.apply_monomial(op);
        let v = to_sparse(&image, &mut index, false);
        match ech.insert_tracked(v, tag) {
            Ok(()) => quotient_basis.push(op.clone()),
            Err(combo) => relations.push(Polynomial::from_terms(
                vars,
                combo
                    .into_iter()
                    .map(|(t, c)| (support[t].clone(), BigRational::from_integer(c))),
            )),
        }
    }
    Piece {
        support,
        quotient_basis,
        relations,
    }
}

/// Builds `A = Q/Ann_Q(f)`.
///
/// The quotient basis in each degree consists of the pivot columns of the
/// catalecticant taken in descending graded-lex order. Inputs with linear
/// annihilators are accepted on the full variable set and flagged.
pub fn build_algebra(f: &Polynomial) -> Result<GradedAlgebra> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let (_, fi) = f.integral_primitive();
    let pieces: Vec<Piece> = (0..=d).map(|k| build_piece(&fi, k)).collect();
    let hilbert: Vec<usize> = pieces.iter().map(|p| p.quotient_basis.len()).collect();
    let r = f.vars().len();

    for k in 0..=d as usize {
        if hilbert[k] != hilbert[d as usize - k] {
            return Err(Error::Invariant(format!(
                "Hilbert function is not symmetric: h_{k} = {}, h_{} = {}",
                hilbert[k],
                d as usize - k,
                hilbert[d as usize - k]
            )));
        }
    }
    if hilbert[0] != 1 || hilbert[d as usize] != 1 {
        return Err(Error::Invariant("h_0 and h_d must equal 1".into()));
    }

    let socle = pieces[d as usize].quotient_basis[0].clone();
    let theta_normalizer = f
        .apply_monomial(&socle)
        .as_constant()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::Invariant("socle monomial does not pair with f".into()))?
        .recip();

    let mut warnings = Vec::new();
    let linear_annihilator = d >= 1 && hilbert[1] < r;
    if linear_annihilator {
        let used = f.used_vars().len();
        warnings.push(format!(
            "I_1 != 0: {} of {} variables are linearly essential ({} occur); \
             the algebra is built on the full variable set and codim A = h_1",
            hilbert[1], r, used
        ));
    }

    let alg = GradedAlgebra {
        f: f.clone(),
        fi,
        d,
        pieces,
        hilbert,
        theta_normalizer,
        linear_annihilator,
        warnings,
        pairing_inverses: (0..=d).map(|_| OnceLock::new()).collect(),
    };
    for k in 0..=d {
        alg.try_pairing_inverse(k)?;
    }
    Ok(alg)
}

impl GradedAlgebra {
    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.f.vars()
    }

    pub fn socle_degree(&self) -> u32 {
        self.d
    }

    pub fn hilbert(&self) -> &[usize] {
        &self.hilbert
    }

    /// `dim A_k`, zero outside `0..=d`.
    pub fn h(&self, k: u32) -> usize {
        self.hilbert.get(k as usize).copied().unwrap_or(0)
    }

    /// `h_1`; equals the number of variables exactly when `I_1 = 0`.
    pub fn codimension(&self) -> usize {
        self.h(1)
    }

    pub fn has_linear_annihilator(&self) -> bool {
        self.linear_annihilator
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// The monomial `delta` spanning `A_d`.
    pub fn socle_monomial(&self) -> &Monomial {
        &self.pieces[self.d as usize].quotient_basis[0]
    }

    /// `c` with `c * delta(f) = 1`, so `theta = c * delta` satisfies `theta(f) = 1`.
    pub fn theta_normalizer(&self) -> &BigRational {
        &self.theta_normalizer
    }

    pub fn quotient_basis(&self, k: u32) -> &[Monomial] {
        self.pieces
            .get(k as usize)
            .map_or(&[], |p| p.quotient_basis.as_slice())
    }

    /// Monomials of degree `k` that act nontrivially on `f`.
    pub fn support(&self, k: u32) -> &[Monomial] {
        self.pieces.get(k as usize).map_or(&[], |p| p.support.as_slice())
    }

    /// Annihilating combinations of the support monomials in degree `k`.
    pub fn support_relations(&self, k: u32) -> &[Polynomial] {
        self.pieces
            .get(k as usize)
            .map_or(&[], |p| p.relations.as_slice())
    }

    /// `dim Ann_k = dim Q_k - h_k`.
    pub fn ann_dim(&self, k: u32) -> u128 {
        monomial_count(self.vars().len(), k as usize) - self.h(k) as u128
    }

    /// A full basis of `Ann_k`: the monomials outside the support followed by
    /// the support relations. Materializes all of `Q_k`.
    pub fn ann_basis(&self, k: u32) -> Vec<Polynomial> {
        let vars = self.vars();
        let all = monomials_of_degree(vars.len(), k);
        let support: BTreeSet<&Monomial> = self.support(k).iter().collect();
        let mut out: Vec<Polynomial> = all
            .into_iter()
            .filter(|m| !support.contains(m))
            .map(|m| Polynomial::monomial(vars, m))
            .collect();
        out.extend(self.support_relations(k).iter().cloned());
        out
    }

    /// Whether `op` annihilates `f`.
    pub fn annihilates(&self, op: &Polynomial) -> Result<bool> {
        Ok(crate::polyring::apolar_apply(op, &self.fi)?.is_zero())
    }

    /// Whether the degree-`k` homogeneous operators `gens` span exactly `Ann_k`.
    pub fn ann_span_equals(&self, k: u32, gens: &[Polynomial]) -> Result<bool> {
        for g in gens {
            if !g.is_zero() && g.homogeneous_degree() != Some(k) {
                return Err(Error::InvalidDegree(format!("generator is not of degree {k}")));
            }
            if !self.annihilates(g)? {
                return Ok(false);
            }
        }
        let mut ech = SparseEchelon::new();
        let mut index = HashMap::new();
        for g in gens {
            ech.insert(to_sparse(g, &mut index, true));
        }
        Ok(ech.rank() as u128 == self.ann_dim(k))
    }

    /// `(alpha * beta)(f)` for operators of complementary degree, scaled to
    /// the original `f`.
    pub fn pair(&self, alpha: &Monomial, beta: &Monomial) -> BigRational {
        let m = alpha.mul(beta);
        self.f.coeff(&m) * BigRational::from_integer(m.factorial_weight())
    }

    /// `P[a][j] = (gamma_a * beta_j)(f)` with `gamma` running over the basis
    /// of `A_{d-l}` and `beta` over the basis of `A_l`.
    pub fn pairing_matrix(&self, l: u32) -> Matrix<BigRational> {
        let rows = self.quotient_basis(self.d - l);
        let cols = self.quotient_basis(l);
        Matrix::from_fn(rows.len(), cols.len(), |a, j| self.pair(&rows[a], &cols[j]))
    }

    fn try_pairing_inverse(&self, l: u32) -> Result<&Matrix<BigRational>> {
        if let Some(m) = self.pairing_inverses[l as usize].get() {
            return Ok(m);
        }
        let inv = self
            .pairing_matrix(l)
            .inverse()
            .ok_or_else(|| Error::Invariant(format!("pairing in degree {l} is degenerate")))?;
        Ok(self.pairing_inverses[l as usize].get_or_init(|| inv))
    }

    /// Inverse of [`pairing_matrix`](Self::pairing_matrix); cached.
    pub fn pairing_inverse(&self, l: u32) -> Result<&Matrix<BigRational>> {
        if l > self.d {
            return Err(Error::InvalidDegree(format!("{l} exceeds the socle degree {}", self.d)));
        }
        self.try_pairing_inverse(l)
    }

    /// Coordinates of the class of a degree-`l` operator in the quotient basis.
    pub fn coordinates(&self, op: &Polynomial, l: u32) -> Result<Vec<BigRational>> {
        if l > self.d {
            return Ok(Vec::new());
        }
        let g = crate::polyring::apolar_apply(op, &self.f)?;
        let duals = self.quotient_basis(self.d - l);
        let v: Vec<BigRational> = duals
            .iter()
            .map(|m| {
                g.apply_monomial(m)
                    .as_constant()
                    .expect("degree-0 result")
            })
            .collect();
        Ok(self.pairing_inverse(l)?.mul_vec(&v))
    }

    /// Presented-by-quadrics test: `Ann_k = Q_1 * Ann_{k-1}` for `3 <= k <= d+1`.
    ///
    /// Let `T_k` be the degree-`k` monomials all of whose degree-`(k-1)`
    /// divisors lie in `S_{k-1}`. Monomials outside `T_k` are multiples of
    /// monomial annihilators, and products of variables with support
    /// relations account for the rest; equality holds iff their projection
    /// onto `T_k` has rank `|T_k| - h_k`.
    pub fn ann_generated_by_quadrics(&self) -> QuadricsResult {
        if self.linear_annihilator {
            return QuadricsResult {
                presented: false,
                failing_degrees: Vec::new(),
                reason: Some("linear generator".into()),
            };
        }
        let n = self.vars().len();
        let mut failing = Vec::new();
        for k in 3..=self.d + 1 {
            let prev: BTreeSet<&Monomial> = self.support(k - 1).iter().collect();
            let mut t_index: HashMap<Monomial, usize> = HashMap::new();
            for s in &prev {
                for j in 0..n {
                    let m = s.mul(&Monomial::var(n, j));
                    if t_index.contains_key(&m) {
                        continue;
                    }
                    let all_in = m.support().all(|i| {
                        prev.contains(&m.div(&Monomial::var(n, i)).expect("divides"))
                    });
                    if all_in {
                        let next = t_index.len();
                        t_index.insert(m, next);
                    }
                }
            }
            let target = t_index.len() - self.h(k);
            let mut ech = SparseEchelon::new();
            'outer: for rel in self.support_relations(k - 1) {
                for j in 0..n {
                    if ech.rank() == target {
                        break 'outer;
                    }
                    let x = Monomial::var(n, j);
                    let mut v: SparseVec = rel
                        .terms()
                        .filter_map(|(m, c)| {
                            t_index.get(&m.mul(&x)).map(|&i| (i, c.to_integer()))
                        })
                        .collect();
                    v.sort_by_key(|(i, _)| *i);
                    ech.insert(v);
                }
            }
            if ech.rank() < target {
                failing.push(k);
            }
        }
        QuadricsResult {
            presented: failing.is_empty(),
            failing_degrees: failing,
            reason: None,
        }
    }

    /// Regroups the quotient bases by bidegree.
    pub fn bigraded_decomposition(&self) -> Result<BigradedBasis> {
        let x = self.vars().x_count().ok_or(Error::NotBihomogeneous)?;
        let socle_bidegree = self.f.bidegree().ok_or(Error::NotBihomogeneous)?;
        let mut pieces: BTreeMap<(u32, u32), Vec<Monomial>> = BTreeMap::new();
        for k in 0..=self.d {
            for m in self.quotient_basis(k) {
                pieces.entry(m.bidegree(x)).or_default().push(m.clone());
            }
        }
        for (&(i, j), v) in &pieces {
            let dual = (socle_bidegree.0 - i, socle_bidegree.1 - j);
            if pieces.get(&dual).map_or(0, Vec::len) != v.len() {
                return Err(Error::Invariant(format!(
                    "bigraded duality fails at ({i},{j})"
                )));
            }
        }
        Ok(BigradedBasis {
            socle_bidegree,
            pieces,
        })
    }
}

/// True iff the vector weakly rises to a peak and then weakly falls.
pub fn unimodality_check(hilbert: &[usize]) -> bool {
    let mut falling = false;
    for w in hilbert.windows(2) {
        if w[1] < w[0] {
            falling = true;
        } else if w[1] > w[0] && falling {
            return false;
        }
    }
    true
}

/// `h_k = dim Q_k - rank` computed from the dense catalecticant; used as an
/// independent cross-check of [`build_algebra`].
pub fn dense_hilbert(f: &Polynomial) -> Result<Vec<usize>> {
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    (0..=d).map(|k| Ok(catalecticant(f, k)?.rank())).collect()
}

impl GradedAlgebra {
    /// `theta = c * delta` as an operator.
    pub fn theta(&self) -> Polynomial {
        Polynomial::monomial(self.vars(), self.socle_monomial().clone()).scale(&self.theta_normalizer)
    }

    /// Verifies `theta(f) = 1`.
    pub fn check_theta(&self) -> bool {
        crate::polyring::apolar_apply(&self.theta(), &self.f)
            .ok()
            .and_then(|p| p.as_constant())
            .is_some_and(|c| c.is_one())
    }
}
