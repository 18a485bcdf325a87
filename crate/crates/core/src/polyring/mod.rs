//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! The same [`Polynomial`] type represents forms in `R = K[x_1..x_r]` and
//! differential operators in `Q = K[X_1..X_r]`; [`apolar_apply`] lets the
//! first argument act on the second with `X_i = d/dx_i`.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use parse::{parse_polynomial_file, write_polynomial_file, PolynomialFile};

/// Ordered list of distinct variable names, optionally split into an
/// x-block (the first `x_count` names) and a u-block (the rest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
    x_count: Option<usize>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        Self::build(names.into_iter().map(Into::into).collect(), None)
    }

    pub fn bipartite<S: Into<String>>(
        x_names: impl IntoIterator<Item = S>,
        u_names: impl IntoIterator<Item = S>,
    ) -> Result<Arc<Self>> {
        let mut names: Vec<String> = x_names.into_iter().map(Into::into).collect();
        let n = names.len();
        names.extend(u_names.into_iter().map(Into::into));
        Self::build(names, Some(n))
    }

    /// `prefix1..prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Arc<Self> {
        Self::new((1..=n).map(|i| format!("{prefix}{i}"))).expect("numbered names are distinct")
    }

    fn build(names: Vec<String>, x_count: Option<usize>) -> Result<Arc<Self>> {
        for (i, n) in names.iter().enumerate() {
            if !parse::is_identifier(n) {
                return Err(Error::InvalidArgument(format!("`{n}` is not a variable name")));
            }
            if names[..i].contains(n) {
                return Err(Error::VariableCollision(n.clone()));
            }
        }
        Ok(Arc::new(VarSet { names, x_count }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Size of the x-block when bipartitioned.
    pub fn x_count(&self) -> Option<usize> {
        self.x_count
    }

    pub fn is_bipartite(&self) -> bool {
        self.x_count.is_some()
    }

    /// Appends fresh names; they join the u-block when bipartitioned.
    pub fn extended<S: Into<String>>(&self, extra: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let mut names = self.names.clone();
        names.extend(extra.into_iter().map(Into::into));
        Self::build(names, self.x_count)
    }

    pub fn without_bipartition(&self) -> Arc<Self> {
        Arc::new(VarSet {
            names: self.names.clone(),
            x_count: None,
        })
    }
}

/// Exponent vector aligned with a [`VarSet`].
///
/// Ordered graded-lexicographically: higher total degree is greater, ties
/// broken lexicographically with the first variable largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `(sum over x-block, sum over u-block)`.
    pub fn bidegree(&self, x_count: usize) -> (u32, u32) {
        let x = self.0[..x_count].iter().sum();
        let u = self.0[x_count..].iter().sum();
        (x, u)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `X^self` applied to `x^target`: the falling-factorial coefficient and
    /// the resulting monomial, or `None` when the result is zero.
    pub fn apolar_on(&self, target: &Monomial) -> Option<(BigInt, Monomial)> {
        if !self.divides(target) {
            return None;
        }
        let mut c = BigInt::one();
        for (&a, &b) in self.0.iter().zip(&target.0) {
            for t in 0..a {
                c *= b - t;
            }
        }
        Some((c, Monomial(self.0.iter().zip(&target.0).map(|(a, b)| b - a).collect())))
    }

    /// Factor `prod a_i!` so that `X^a(x^a) = factorial_weight`.
    pub fn factorial_weight(&self) -> BigInt {
        let mut c = BigInt::one();
        for &a in &self.0 {
            for t in 2..=a {
                c *= t;
            }
        }
        c
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::one();
        for (&e, x) in self.0.iter().zip(point) {
            if e > 0 {
                acc *= num_traits::pow(x.clone(), e as usize);
            }
        }
        acc
    }

    /// Remaps exponents onto a new variable order: position `i` moves to
    /// `map[i]` in a vector of length `n`.
    pub fn remap(&self, map: &[usize], n: usize) -> Monomial {
        let mut e = vec![0; n];
        for (i, &x) in self.0.iter().enumerate() {
            e[map[i]] += x;
        }
        Monomial(e)
    }

    /// Variables of `self` (each appearing once per unit exponent).
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

/// All monomials of total degree `k` in `n` variables, in descending
/// graded-lex order (`x_1^k` first).
pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Monomial> {
    fn rec(n: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == n {
            cur[pos] = left;
            out.push(Monomial(cur.clone()));
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(n, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(n, 0, k, &mut vec![0; n], &mut out);
    out
}

/// `C(n + k - 1, k)`: the number of monomials of degree `k` in `n` variables.
pub fn monomial_count(n: usize, k: usize) -> u128 {
    if n == 0 {
        return u128::from(k == 0);
    }
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (n as u128 + i) / (i + 1);
    }
    c
}

/// Sparse polynomial: canonical map from monomials to nonzero rationals.
#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: Arc<VarSet>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_vars(&self.vars, &other.vars)
    }
}

impl Eq for Polynomial {}

fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

impl Polynomial {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: BigRational) -> Self {
        Self::from_terms(vars, [(Monomial::one(vars.len()), c)])
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn var(vars: &Arc<VarSet>, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), i))
    }

    pub fn var_named(vars: &Arc<VarSet>, name: &str) -> Result<Self> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown variable `{name}`")))?;
        Ok(Self::var(vars, i))
    }

    pub fn monomial(vars: &Arc<VarSet>, m: Monomial) -> Self {
        assert_eq!(m.len(), vars.len(), "monomial length does not match the variable set");
        Self::from_terms(vars, [(m, BigRational::one())])
    }

    /// Sums duplicate monomials and drops zeros.
    pub fn from_terms(
        vars: &Arc<VarSet>,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), vars.len(), "monomial length does not match the variable set");
            accumulate(&mut map, m, c);
        }
        Polynomial {
            vars: vars.clone(),
            terms: map,
        }
    }

    pub fn parse(text: &str, vars: &Arc<VarSet>) -> Result<Self> {
        parse::parse_with(text, vars)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// The constant value when the polynomial has degree 0 (or is zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The common degree of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common bidegree of all terms when bipartitioned.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let x = self.vars.x_count()?;
        let mut it = self.terms.keys().map(|m| m.bidegree(x));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    fn check_vars(&self, other: &Polynomial) -> Result<()> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(Error::VarSetMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut out.terms, m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut map = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                accumulate(&mut map, a.mul(b), ca * cb);
            }
        }
        Ok(Polynomial {
            vars: self.vars.clone(),
            terms: map,
        })
    }

    /// `self + c * other` in place.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &BigRational) {
        assert!(same_vars(&self.vars, &other.vars), "variable sets do not match");
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            accumulate(&mut self.terms, m.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-BigRational::one())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.vars);
        for _ in 0..e {
            acc = acc.try_mul(self).expect("same variable set");
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut map = BTreeMap::new();
        let x = Monomial::var(self.vars.len(), i);
        for (m, c) in &self.terms {
            if let Some((k, r)) = x.apolar_on(m) {
                accumulate(&mut map, r, c * BigRational::from_integer(k));
            }
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: map,
        }
    }

    /// `X^op` applied to `self`.
    pub fn apply_monomial(&self, op: &Monomial) -> Polynomial {
        let mut map = BTreeMap::new();
        for (m, c) in &self.terms {
            if let Some((k, r)) = op.apolar_on(m) {
                accumulate(&mut map, r, c * BigRational::from_integer(k));
            }
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: map,
        }
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.vars.len() {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.vars.len()
            )));
        }
        Ok(self
            .terms
            .iter()
            .fold(BigRational::zero(), |acc, (m, c)| acc + c * m.eval(point)))
    }

    /// Moves the polynomial onto `target`, sending variable `i` to `map[i]`.
    pub fn remap(&self, target: &Arc<VarSet>, map: &[usize]) -> Polynomial {
        Polynomial::from_terms(
            target,
            self.terms
                .iter()
                .map(|(m, c)| (m.remap(map, target.len()), c.clone())),
        )
    }

    /// Embeds into a variable set whose first names are this one's.
    pub fn embed(&self, target: &Arc<VarSet>) -> Result<Polynomial> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n).ok_or(Error::VarSetMismatch))
            .collect::<Result<_>>()?;
        Ok(self.remap(target, &map))
    }

    /// Same terms over an equal-length variable set (e.g. adding a bipartition).
    pub fn with_vars(&self, vars: &Arc<VarSet>) -> Result<Polynomial> {
        if vars.len() != self.vars.len() {
            return Err(Error::VarSetMismatch);
        }
        Ok(Polynomial {
            vars: vars.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.leading_term() {
            let q = m.div(lm)?;
            let qc = c / lc;
            for (dm, dc) in &divisor.terms {
                accumulate(&mut rem.terms, dm.mul(&q), -(dc * &qc));
            }
            quot.insert(q, qc);
        }
        Some(Polynomial {
            vars: self.vars.clone(),
            terms: quot,
        })
    }

    /// Scalar `c` and integer polynomial `p` with `self = c * p`, `p` primitive
    /// with positive leading coefficient.
    pub fn integral_primitive(&self) -> (BigRational, Polynomial) {
        if self.is_zero() {
            return (BigRational::one(), self.clone());
        }
        let l = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&l / c.denom()))));
        let mut scale = BigRational::new(g, l);
        if self.leading_term().unwrap().1.is_negative() {
            scale = -scale;
        }
        (scale.clone(), self.scale(&scale.recip()))
    }

    /// Variables that occur in some term.
    pub fn used_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.vars.len()];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, BigRational>, m: Monomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// `op(f)`: every operator term `c X^a` differentiates `f` accordingly.
pub fn apolar_apply(op: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    op.check_vars(f)?;
    let mut map = BTreeMap::new();
    for (a, ca) in &op.terms {
        for (b, cb) in &f.terms {
            if let Some((k, r)) = a.apolar_on(b) {
                accumulate(&mut map, r, ca * cb * BigRational::from_integer(k));
            }
        }
    }
    Ok(Polynomial {
        vars: f.vars.clone(),
        terms: map,
    })
}

/// Nonzero linear form `a_1 X_1 + ... + a_r X_r`; `L^perp = (a_1..a_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    vars: Arc<VarSet>,
    coefficients: Vec<BigRational>,
}

impl LinearForm {
    pub fn new(vars: &Arc<VarSet>, coefficients: Vec<BigRational>) -> Result<Self> {
        if coefficients.len() != vars.len() {
            return Err(Error::InvalidArgument(format!(
                "linear form has {} coefficients, expected {}",
                coefficients.len(),
                vars.len()
            )));
        }
        if coefficients.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("linear form is zero".into()));
        }
        Ok(LinearForm {
            vars: vars.clone(),
            coefficients,
        })
    }

    pub fn from_integers(vars: &Arc<VarSet>, coefficients: &[i64]) -> Result<Self> {
        Self::new(
            vars,
            coefficients
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    /// The point `L^perp`.
    pub fn point(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn as_operator(&self) -> Polynomial {
        let n = self.vars.len();
        Polynomial::from_terms(
            &self.vars,
            self.coefficients
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }
}

/// Checks `L^h(g) = h! g(L^perp)` for a form `g` of degree `h`.
pub fn power_apply_identity_check(l: &LinearForm, g: &Polynomial, h: u32) -> Result<bool> {
    if !g.is_zero() && g.homogeneous_degree() != Some(h) {
        return Err(Error::NotHomogeneous);
    }
    let lhs = apolar_apply(&l.as_operator().pow(h), g)?;
    let value = g.eval(l.point())? * BigRational::from_integer(factorial(h));
    Ok(lhs.as_constant() == Some(value))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn fmt_monomial(m: &Monomial, vars: &VarSet, out: &mut String) {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(vars.name(i));
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            if m.degree() == 0 {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&a.to_string());
                    out.push('*');
                }
                fmt_monomial(m, &self.vars, &mut out);
            }
        }
        f.write_str(&out)
    }
}
