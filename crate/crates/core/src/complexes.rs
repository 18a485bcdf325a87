//! Pure simplicial complexes, graphs and their square-free dual generators.
//!
//! A pure complex with facets `F_1..F_m` on vertices `v_1..v_n` gives the
//! bihomogeneous form `f = sum_i x_i * prod_{v in F_i} u_v` on the variable
//! set `x_1..x_m ; u_1..u_n`, so facet order fixes the x-variables and
//! vertex order fixes the u-variables.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::apolarity::build_algebra;
use crate::config::CheckConfig;
use crate::error::{Error, Result};
use crate::hessians::{bigraded_hessian, generic_rank, MixedHessian, RankCertificate};
use crate::linalg::Matrix;
use crate::polyring::{Monomial, Polynomial, VarSet};

/// Facets are sorted vertex-index lists, pairwise incomparable, and every
/// vertex lies in some facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<serde_json::Value>,
    facets: Vec<Vec<serde_json::Value>>,
}

fn json_label(v: &serde_json::Value) -> Result<String> {
    match v {
        serde_json::Value::String(s) => Ok(s.clone()),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::InvalidComplex(format!("vertex label {other} is neither a string nor a number"))),
    }
}

impl SimplicialComplex {
    pub fn new<S: AsRef<str>>(vertices: &[S], facets: &[Vec<S>]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != names.len() {
            return Err(Error::InvalidComplex("duplicate vertex label".into()));
        }
        let facets = facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|v| {
                        index
                            .get(v.as_ref())
                            .copied()
                            .ok_or_else(|| Error::UnknownVertex(v.as_ref().to_string()))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(names, facets)
    }

    pub fn from_indices(vertices: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let n = vertices.len();
        let mut out = Vec::with_capacity(facets.len());
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != f.len() {
                return Err(Error::InvalidComplex(format!("facet {f:?} repeats a vertex")));
            }
            if s.is_empty() {
                return Err(Error::InvalidComplex("empty facet".into()));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= n) {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
            out.push(s);
        }
        for i in 0..out.len() {
            for j in 0..out.len() {
                if i != j && is_subset(&out[i], &out[j]) {
                    return Err(Error::InvalidComplex(format!(
                        "facet {} is contained in facet {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let mut covered = vec![false; n];
        for f in &out {
            for &v in f {
                covered[v] = true;
            }
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidComplex(format!(
                "vertex `{}` lies in no facet",
                vertices[v]
            )));
        }
        Ok(SimplicialComplex {
            vertices,
            facets: out,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ComplexJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidComplex(e.to_string()))?;
        let vertices = raw.vertices.iter().map(json_label).collect::<Result<Vec<_>>>()?;
        let facets = raw
            .facets
            .iter()
            .map(|f| f.iter().map(json_label).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(&vertices, &facets)
    }

    pub fn to_json(&self) -> String {
        let raw = ComplexJson {
            vertices: self.vertices.iter().map(|v| v.clone().into()).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| f.iter().map(|&v| self.vertices[v].clone().into()).collect())
                .collect(),
        };
        serde_json::to_string(&raw).expect("serializable")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn facet_names(&self, i: usize) -> Vec<&str> {
        self.facets[i].iter().map(|&v| self.vertices[v].as_str()).collect()
    }

    /// Common facet dimension, if pure.
    pub fn pure_dim(&self) -> Option<usize> {
        let s = self.facets.first()?.len();
        self.facets.iter().all(|f| f.len() == s).then(|| s - 1)
    }

    pub fn is_face(&self, face: &[usize]) -> bool {
        let mut s = face.to_vec();
        s.sort_unstable();
        self.facets.iter().any(|f| is_subset(&s, f))
    }

    /// Faces with exactly `k` vertices, sorted.
    pub fn faces(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            for c in combinations(f, k) {
                out.insert(c);
            }
        }
        out.into_iter().collect()
    }

    /// `e_k` for `k = 0..=dim+1`: the number of faces with `k` vertices.
    pub fn face_counts(&self) -> Vec<usize> {
        let top = self.facets.iter().map(Vec::len).max().unwrap_or(0);
        (0..=top).map(|k| self.faces(k).len()).collect()
    }

    /// Graph on the facets, adjacent when they share all but one vertex.
    pub fn is_facet_connected(&self) -> bool {
        let Some(p) = self.pure_dim() else {
            return false;
        };
        let m = self.facets.len();
        let mut seen = vec![false; m];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for (j, g) in self.facets.iter().enumerate() {
                if !seen[j] && intersection_size(&self.facets[i], g) == p {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces(2).into_iter().map(|e| (e[0], e[1])).collect()
    }

    /// Every maximal clique of the 1-skeleton is a face.
    pub fn is_flag(&self) -> bool {
        let n = self.vertices.len();
        let mut adj = vec![BTreeSet::new(); n];
        for (a, b) in self.edges() {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let mut ok = true;
        bron_kerbosch(
            &adj,
            Vec::new(),
            (0..n).collect(),
            BTreeSet::new(),
            &mut |clique| {
                if !self.is_face(clique) {
                    ok = false;
                }
            },
        );
        ok
    }

    /// Pure of dimension at least 1, facet-connected and flag.
    pub fn presented_by_quadrics_combinatorial(&self) -> bool {
        self.pure_dim().is_some_and(|p| p >= 1) && self.is_facet_connected() && self.is_flag()
    }

    /// `f = sum_i x_i * prod_{v in F_i} u_v`, bidegree `(1, dim+1)`.
    pub fn dual_generator(&self) -> Result<Polynomial> {
        let p = self
            .pure_dim()
            .ok_or_else(|| Error::InvalidComplex("complex is not pure".into()))?;
        if p < 1 {
            return Err(Error::InvalidComplex("dimension must be at least 1".into()));
        }
        let m = self.facets.len();
        let n = self.vertices.len();
        let vars = VarSet::bipartite(
            (1..=m).map(|i| format!("x{i}")),
            (1..=n).map(|i| format!("u{i}")),
        )?;
        let terms = self.facets.iter().enumerate().map(|(i, f)| {
            let mut e = vec![0u32; m + n];
            e[i] = 1;
            for &v in f {
                e[m + v] = 1;
            }
            (Monomial::new(e), BigRational::one())
        });
        Ok(Polynomial::from_terms(&vars, terms))
    }

    /// Adds a facet with exactly one new vertex whose other vertices form a
    /// face of codimension one.
    pub fn attach_leaf<S: AsRef<str>>(&self, facet: &[S]) -> Result<Self> {
        let p = self
            .pure_dim()
            .ok_or_else(|| Error::InvalidComplex("complex is not pure".into()))?;
        if facet.len() != p + 1 {
            return Err(Error::InvalidComplex(format!(
                "leaf facet must have {} vertices",
                p + 1
            )));
        }
        let fresh: Vec<&str> = facet
            .iter()
            .map(AsRef::as_ref)
            .filter(|v| !self.vertices.iter().any(|w| w == v))
            .collect();
        if fresh.len() != 1 {
            return Err(Error::InvalidComplex(format!(
                "leaf facet must contain exactly one new vertex, found {}",
                fresh.len()
            )));
        }
        let mut vertices = self.vertices.clone();
        vertices.push(fresh[0].to_string());
        let old: Vec<usize> = facet
            .iter()
            .filter_map(|v| self.vertices.iter().position(|w| w == v.as_ref()))
            .collect();
        if !self.is_face(&old) {
            return Err(Error::InvalidComplex("leaf must be glued along a face".into()));
        }
        let mut new_facet = old;
        new_facet.push(vertices.len() - 1);
        let mut facets = self.facets.clone();
        facets.push(new_facet);
        Self::from_indices(vertices, facets)
    }

    /// The faces not containing `v`.
    pub fn delete_vertex(&self, v: &str) -> Result<Self> {
        let idx = self
            .vertices
            .iter()
            .position(|w| w == v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
        let renum = |u: usize| if u > idx { u - 1 } else { u };
        let mut faces: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| f.iter().filter(|&&u| u != idx).map(|&u| renum(u)).collect::<Vec<_>>())
            .filter(|f| !f.is_empty())
            .collect();
        faces.sort_by_key(|f| std::cmp::Reverse(f.len()));
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for f in faces {
            if !facets.iter().any(|g| is_subset(&f, g)) {
                facets.push(f);
            }
        }
        let order: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| f.iter().filter(|&&u| u != idx).map(|&u| renum(u)).collect())
            .filter(|f: &Vec<usize>| facets.contains(f))
            .collect();
        let mut seen = BTreeSet::new();
        let facets: Vec<Vec<usize>> = order.into_iter().filter(|f| seen.insert(f.clone())).collect();
        let mut vertices = self.vertices.clone();
        vertices.remove(idx);
        Self::from_indices(vertices, facets)
    }

    /// Removes every facet containing both endpoints of an edge.
    pub fn remove_edge(&self, a: &str, b: &str) -> Result<Self> {
        let ia = self.vertices.iter().position(|w| w == a).ok_or_else(|| Error::UnknownVertex(a.into()))?;
        let ib = self.vertices.iter().position(|w| w == b).ok_or_else(|| Error::UnknownVertex(b.into()))?;
        let facets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .filter(|f| !(f.contains(&ia) && f.contains(&ib)))
            .cloned()
            .collect();
        Self::from_indices(self.vertices.clone(), facets)
    }

    /// Chain of leaves: each new facet is a fresh vertex glued to the last
    /// `dim` vertices of the previous facet, the fresh vertex placed last.
    pub fn with_leaf_tail(&self, leaves: usize, prefix: &str) -> Result<Self> {
        let mut c = self.clone();
        let mut prev: Vec<usize> = c.facets.last().cloned().unwrap_or_default();
        for i in 0..leaves {
            let p = c.pure_dim().unwrap_or(0);
            let name = format!("{prefix}{}", i + 1);
            let glue: Vec<String> = prev[prev.len() - p..].iter().map(|&v| c.vertices[v].clone()).collect();
            let mut facet = glue.clone();
            facet.push(name);
            c = c.attach_leaf(&facet)?;
            let last = c.facets.last().expect("leaf").clone();
            let new_v = c.vertices.len() - 1;
            let mut ordered: Vec<usize> = prev[prev.len() - p..].to_vec();
            ordered.push(new_v);
            debug_assert_eq!(ordered.iter().copied().collect::<BTreeSet<_>>(), last.into_iter().collect());
            prev = ordered;
        }
        Ok(c)
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_ok()).count()
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= items.len() {
        rec(items, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    r: Vec<usize>,
    p: BTreeSet<usize>,
    x: BTreeSet<usize>,
    report: &mut impl FnMut(&[usize]),
) {
    if p.is_empty() && x.is_empty() {
        report(&r);
        return;
    }
    let pivot = p.iter().chain(&x).max_by_key(|&&u| adj[u].intersection(&p).count()).copied();
    let candidates: Vec<usize> = match pivot {
        Some(u) => p.difference(&adj[u]).copied().collect(),
        None => p.iter().copied().collect(),
    };
    let (mut p, mut x) = (p, x);
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.intersection(&adj[v]).copied().collect();
        let x2 = x.intersection(&adj[v]).copied().collect();
        bron_kerbosch(adj, r2, p2, x2, report);
        p.remove(&v);
        x.insert(v);
    }
}

/// Elementary symmetric polynomial `s_k(a)`.
pub fn elementary_symmetric(a: &[usize], k: usize) -> u128 {
    let mut e = vec![0u128; a.len() + 1];
    e[0] = 1;
    for &x in a {
        for j in (1..=a.len()).rev() {
            e[j] += e[j - 1] * x as u128;
        }
    }
    e.get(k).copied().unwrap_or(0)
}

/// `TK(a_1..a_{d-1})`: groups of sizes `a_i`, one vertex per group in each facet.
/// Vertex `j` of group `i` is labelled `"i.j"`; facets follow lexicographic order.
pub fn turan_complex(orders: &[usize]) -> Result<SimplicialComplex> {
    if orders.is_empty() {
        return Err(Error::OutOfRange("at least one group is required".into()));
    }
    if let Some(a) = orders.iter().find(|&&a| a < 2) {
        return Err(Error::OutOfRange(format!("group sizes must be at least 2, got {a}")));
    }
    let mut vertices = Vec::new();
    let mut offsets = Vec::new();
    for (i, &a) in orders.iter().enumerate() {
        offsets.push(vertices.len());
        for j in 1..=a {
            vertices.push(format!("{}.{}", i + 1, j));
        }
    }
    let mut facets = vec![Vec::new()];
    for (i, &a) in orders.iter().enumerate() {
        let base = offsets[i];
        facets = facets
            .into_iter()
            .flat_map(|f: Vec<usize>| {
                (0..a).map(move |j| {
                    let mut g = f.clone();
                    g.push(base + j);
                    g
                })
            })
            .collect();
    }
    SimplicialComplex::from_indices(vertices, facets)
}

/// `TK(2,2,3)` with the facets through the edge `1.1 - 3.1` removed:
/// 7 vertices, 15 edges, 10 facets.
pub fn turan_223_minus_edge() -> SimplicialComplex {
    turan_complex(&[2, 2, 3])
        .and_then(|c| c.remove_edge("1.1", "3.1"))
        .expect("valid construction")
}

/// Hilbert vector `h_k = e_k + e_{d-k}` read off the face counts of a pure
/// complex of dimension `d - 2`.
pub fn face_hilbert(c: &SimplicialComplex) -> Vec<usize> {
    let e = c.face_counts();
    let d = e.len();
    (0..=d)
        .map(|k| e.get(k).copied().unwrap_or(0) + e.get(d - k).copied().unwrap_or(0))
        .collect()
}

/// The alternative Turan formula `h_k = s_{k-1} + s_{d-k-1}`, reported for
/// comparison only; it disagrees with the catalecticant by an index shift.
pub fn turan_hilbert_shifted_formula(orders: &[usize]) -> Vec<i128> {
    let d = orders.len() + 1;
    let s = |k: i64| -> i128 {
        if k < 0 {
            0
        } else {
            elementary_symmetric(orders, k as usize) as i128
        }
    };
    (0..=d as i64).map(|k| s(k - 1) + s(d as i64 - k - 1)).collect()
}

/// Exact certificate that `Hess^{((1,0),(0,d-2))}` of `f_Delta` has rank
/// below `e_{d-1}`, so `mu_L : A_1 -> A_2` is never injective.
#[derive(Clone, Debug, Serialize)]
pub struct NonInjectivityCertificate {
    /// Vertex pairs spanning a `TK(2,..,2)` sub-complex of facets.
    pub pairs: Vec<(String, String)>,
    pub rows: usize,
    pub cols: usize,
    /// Left kernel vector over the polynomial ring, one entry per row.
    pub kernel_vector: Vec<String>,
    pub kernel_verified: bool,
    pub sampled_rank: RankCertificate,
}

impl NonInjectivityCertificate {
    /// The rank bound `rank < rows` holds exactly.
    pub fn deficient(&self) -> bool {
        self.kernel_verified && self.sampled_rank.rank < self.rows
    }
}

/// Disjoint vertex pairs `{a_i, b_i}`, one per facet position, such that
/// every transversal is a facet.
pub fn find_cross_polytope(c: &SimplicialComplex) -> Option<Vec<(usize, usize)>> {
    let p = c.pure_dim()? + 1;
    let facets: BTreeSet<&[usize]> = c.facets().iter().map(Vec::as_slice).collect();
    let is_facet = |mut f: Vec<usize>| {
        f.sort_unstable();
        facets.contains(f.as_slice())
    };
    for base in c.facets() {
        let partners: Vec<Vec<usize>> = (0..p)
            .map(|i| {
                (0..c.vertices().len())
                    .filter(|w| !base.contains(w))
                    .filter(|&w| {
                        let mut g = base.clone();
                        g[i] = w;
                        is_facet(g)
                    })
                    .collect()
            })
            .collect();
        if partners.iter().any(Vec::is_empty) {
            continue;
        }
        let mut choice = vec![0usize; p];
        loop {
            let pairs: Vec<(usize, usize)> = (0..p).map(|i| (base[i], partners[i][choice[i]])).collect();
            let distinct: BTreeSet<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            if distinct.len() == 2 * p
                && (0..1u64 << p).all(|bits| {
                    is_facet((0..p).map(|i| if bits >> i & 1 == 0 { pairs[i].0 } else { pairs[i].1 }).collect())
                })
            {
                return Some(pairs);
            }
            let mut i = 0;
            while i < p {
                choice[i] += 1;
                if choice[i] < partners[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == p {
                break;
            }
        }
    }
    None
}

/// Builds the kernel vector on a `TK(2,..,2)` sub-complex: the facet choosing
/// `alpha_i in {0,1}` from pair `i` gets `(-1)^{|alpha|} prod_i u_{pair_i[1 - alpha_i]}`.
/// `None` when the complex has no such sub-complex.
pub fn noninjectivity_certificate(
    c: &SimplicialComplex,
    config: &CheckConfig,
) -> Result<Option<NonInjectivityCertificate>> {
    let Some(pairs) = find_cross_polytope(c) else {
        return Ok(None);
    };
    let f = c.dual_generator()?;
    let alg = build_algebra(&f)?;
    let d = alg.socle_degree();
    let h = bigraded_hessian(&alg, (1, 0), (0, d - 2))?;
    let vars = alg.vars().clone();
    let m = c.facets().len();
    let index_of: HashMap<&[usize], usize> =
        c.facets().iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let mut by_facet = vec![Polynomial::zero(&vars); m];
    for bits in 0..(1u64 << pairs.len()) {
        let pick = |i: usize, flip: bool| {
            let (a, b) = pairs[i];
            if (bits >> i & 1 == 1) != flip { b } else { a }
        };
        let mut facet: Vec<usize> = (0..pairs.len()).map(|i| pick(i, false)).collect();
        facet.sort_unstable();
        let mut e = vec![0u32; vars.len()];
        for i in 0..pairs.len() {
            e[m + pick(i, true)] = 1;
        }
        let sign = if bits.count_ones() % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        by_facet[index_of[facet.as_slice()]] = Polynomial::from_terms(&vars, [(Monomial::new(e), sign)]);
    }
    let row_facet: Vec<usize> = h
        .row_basis
        .iter()
        .map(|op| {
            let (mono, _) = op.leading_term().expect("monomial");
            mono.exponents()[..m].iter().position(|&x| x == 1).expect("x-variable")
        })
        .collect();
    let w: Vec<Polynomial> = row_facet.iter().map(|&i| by_facet[i].clone()).collect();
    let verified = w.iter().any(|p| !p.is_zero())
        && (0..h.cols()).all(|j| {
            let mut s = Polynomial::zero(&vars);
            for (i, wi) in w.iter().enumerate() {
                s = s.try_add(&wi.try_mul(&h.entries[(i, j)]).expect("vars")).expect("vars");
            }
            s.is_zero()
        });
    let names = c.vertices();
    Ok(Some(NonInjectivityCertificate {
        pairs: pairs.iter().map(|&(a, b)| (names[a].clone(), names[b].clone())).collect(),
        rows: h.rows(),
        cols: h.cols(),
        kernel_vector: w.iter().map(ToString::to_string).collect(),
        kernel_verified: verified,
        sampled_rank: generic_rank(&h, config),
    }))
}

/// The certificate for `TK(a)`, which always contains `TK(2,..,2)`.
pub fn turan_noninjectivity_witness(
    orders: &[usize],
    config: &CheckConfig,
) -> Result<NonInjectivityCertificate> {
    if orders.len() < 2 {
        return Err(Error::OutOfRange("socle degree d = groups + 1 must be at least 3".into()));
    }
    noninjectivity_certificate(&turan_complex(orders)?, config)?
        .ok_or_else(|| Error::Invariant("Turan complex without a cross-polytope".into()))
}

/// Simple undirected graph on vertices `0..n`; edge order is significant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Algebraic behaviour of the cubic `f_G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphClass {
    NotPresentedByQuadrics,
    #[serde(rename = "Tree_WLP")]
    TreeWlp,
    #[serde(rename = "UniEven_NoWLP")]
    UniEvenNoWlp,
    #[serde(rename = "UniOdd_WLP")]
    UniOddWlp,
    #[serde(rename = "MultiCycle_NoWLP")]
    MultiCycleNoWlp,
}

impl GraphClass {
    /// WLP verdict for classes presented by quadrics.
    pub fn expected_wlp(self) -> Option<bool> {
        match self {
            GraphClass::NotPresentedByQuadrics => None,
            GraphClass::TreeWlp | GraphClass::UniOddWlp => Some(true),
            GraphClass::UniEvenNoWlp | GraphClass::MultiCycleNoWlp => Some(false),
        }
    }
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidComplex(format!("bad edge ({a},{b})")));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::InvalidComplex(format!("repeated edge ({a},{b})")));
            }
            out.push(e);
        }
        Ok(Graph { n, edges: out })
    }

    pub fn cycle(n: usize) -> Self {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).expect("cycle")
    }

    pub fn from_complex(c: &SimplicialComplex) -> Result<Self> {
        if c.pure_dim() != Some(1) {
            return Err(Error::InvalidComplex("a graph is a pure 1-dimensional complex".into()));
        }
        Graph::new(c.vertices().len(), c.facets().iter().map(|f| (f[0], f[1])).collect())
    }

    /// Vertices `u1..un`. Fails when some vertex is isolated.
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_indices(
            (1..=self.n).map(|i| format!("u{i}")).collect(),
            self.edges.iter().map(|&(a, b)| vec![a, b]).collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn components(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components() == 1
    }

    pub fn is_triangle_free(&self) -> bool {
        let adj = self.adjacency();
        self.edges
            .iter()
            .all(|&(a, b)| !adj[a].iter().any(|w| adj[b].contains(w)))
    }

    /// `|E| - |V| + components`.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.components() - self.n
    }

    /// Vertices left after repeatedly pruning leaves; the circuit when unicyclic.
    pub fn pruned_core(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut alive = vec![true; self.n];
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| deg[v] <= 1).collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &w in &adj[v] {
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        queue.push_back(w);
                    }
                }
            }
        }
        (0..self.n).filter(|&v| alive[v]).collect()
    }

    /// The unique circuit of a connected unicyclic graph.
    pub fn unique_circuit(&self) -> Option<Vec<usize>> {
        (self.is_connected() && self.cycle_rank() == 1).then(|| self.pruned_core())
    }

    /// `|V| x |E|` gradient matrix of the edge monomials `u_a u_b` over `u1..un`.
    pub fn incidence_gradient_matrix(&self) -> MixedHessian {
        let vars = VarSet::numbered("u", self.n);
        let entries = Matrix::from_fn(self.n, self.edges.len(), |k, e| {
            let (a, b) = self.edges[e];
            if k == a {
                Polynomial::var(&vars, b)
            } else if k == b {
                Polynomial::var(&vars, a)
            } else {
                Polynomial::zero(&vars)
            }
        });
        MixedHessian::from_matrix(&vars, entries)
    }

    pub fn dual_generator(&self) -> Result<Polynomial> {
        self.to_complex()?.dual_generator()
    }

    /// Connected and triangle-free gate, then cycle structure.
    pub fn classify(&self) -> GraphClass {
        if self.edges.is_empty() || !self.is_connected() || !self.is_triangle_free() {
            return GraphClass::NotPresentedByQuadrics;
        }
        match self.cycle_rank() {
            0 => GraphClass::TreeWlp,
            1 if self.pruned_core().len().is_multiple_of(2) => GraphClass::UniEvenNoWlp,
            1 => GraphClass::UniOddWlp,
            _ => GraphClass::MultiCycleNoWlp,
        }
    }

    /// Bitmask of the upper triangle, row-major.
    fn code(&self, perm: &[usize]) -> u64 {
        let mut bits = 0u64;
        for &(a, b) in &self.edges {
            let (x, y) = (perm[a].min(perm[b]), perm[a].max(perm[b]));
            bits |= 1 << (y * (y - 1) / 2 + x);
        }
        bits
    }

    /// Minimum code over relabelings that sort vertices by degree; equal for
    /// isomorphic graphs. Supports up to 11 vertices.
    pub fn canonical_code(&self) -> u64 {
        assert!(self.n <= 11, "canonical code supports at most 11 vertices");
        let deg: Vec<usize> = self.adjacency().iter().map(Vec::len).collect();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut by_deg: Vec<usize> = (0..self.n).collect();
        by_deg.sort_by_key(|&v| deg[v]);
        for v in by_deg {
            match classes.last_mut() {
                Some(c) if deg[c[0]] == deg[v] => c.push(v),
                _ => classes.push(vec![v]),
            }
        }
        let orderings: Vec<Vec<Vec<usize>>> = classes.iter().map(|c| permutations(c)).collect();
        let mut best = u64::MAX;
        let mut perm = vec![0; self.n];
        fn rec(g: &Graph, orderings: &[Vec<Vec<usize>>], ci: usize, slot: usize, perm: &mut [usize], best: &mut u64) {
            let Some(options) = orderings.get(ci) else {
                *best = (*best).min(g.code(perm));
                return;
            };
            for order in options {
                for (i, &v) in order.iter().enumerate() {
                    perm[v] = slot + i;
                }
                rec(g, orderings, ci + 1, slot + order.len(), perm, best);
            }
        }
        rec(self, &orderings, 0, 0, &mut perm, &mut best);
        best
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// All connected triangle-free graphs on `n` vertices up to isomorphism.
///
/// Every such graph arises from one on `n - 1` vertices by adding a vertex
/// joined to a nonempty independent set, since some non-cut vertex exists.
pub fn connected_triangle_free_graphs(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::new(1, Vec::new()).expect("single vertex")];
    for m in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            let adj = g.adjacency();
            for mask in 1u32..(1 << (m - 1)) {
                let set: Vec<usize> = (0..m - 1).filter(|&v| mask >> v & 1 == 1).collect();
                let independent = set
                    .iter()
                    .all(|&a| set.iter().all(|&b| a == b || !adj[a].contains(&b)));
                if !independent {
                    continue;
                }
                let mut edges = g.edges.clone();
                edges.extend(set.iter().map(|&v| (v, m - 1)));
                let h = Graph::new(m, edges).expect("valid");
                if seen.insert(h.canonical_code()) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

/// Random connected unicyclic graph on `n >= 3` vertices: a cycle of random
/// length with random trees attached, vertices shuffled.
pub fn random_unicyclic_graph(rng: &mut impl Rng, n: usize) -> Graph {
    assert!(n >= 3);
    let c = rng.gen_range(3..=n);
    let mut edges: Vec<(usize, usize)> = (0..c).map(|i| (i, (i + 1) % c)).collect();
    for v in c..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    Graph::new(n, edges.into_iter().map(|(a, b)| (perm[a], perm[b])).collect()).expect("valid")
}

/// `+-2 u_1...u_n` check helper: the determinant divided by the vertex product.
pub fn det_over_vertex_product(det: &Polynomial) -> Option<BigInt> {
    let n = det.vars().len();
    let prod = Monomial::new(vec![1; n]);
    if det.num_terms() != 1 {
        return None;
    }
    let (m, c) = det.leading_term()?;
    (m == &prod && c.is_integer()).then(|| c.to_integer())
}
