//! Machine-readable analysis reports.

use std::str::FromStr;

use serde::Serialize;

use crate::apolarity::{build_algebra, unimodality_check, GradedAlgebra, QuadricsResult};
use crate::complexes::{
    face_hilbert, noninjectivity_certificate, Graph, GraphClass, NonInjectivityCertificate, SimplicialComplex,
};
use crate::config::CheckConfig;
use crate::error::{Error, Result};
use crate::hessians::{mixed_hessian, RankCertificate};
use crate::lefschetz::{hessian_rank, rank_profile, random_linear_form, slp_check, wlp_check, LefschetzVerdict, RankProfile};
use crate::polyring::Polynomial;

/// Bumped whenever a field changes meaning or disappears.
pub const SCHEMA_VERSION: &str = "1.0.0";

/// Which parts of the analysis to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub hilbert: bool,
    pub quadrics: bool,
    pub wlp: bool,
    pub slp: bool,
    pub hessians: bool,
    pub profile: bool,
}

impl Checks {
    pub fn all() -> Self {
        Checks {
            hilbert: true,
            quadrics: true,
            wlp: true,
            slp: true,
            hessians: true,
            profile: true,
        }
    }

    pub fn none() -> Self {
        Checks {
            hilbert: false,
            quadrics: false,
            wlp: false,
            slp: false,
            hessians: false,
            profile: false,
        }
    }
}

impl Default for Checks {
    fn default() -> Self {
        Self::all()
    }
}

impl FromStr for Checks {
    type Err = Error;

    /// Comma-separated subset of `hilbert,quadrics,wlp,slp,hessians,profile`, or `all`.
    fn from_str(s: &str) -> Result<Self> {
        let mut c = Checks::none();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            match item {
                "all" => c = Checks::all(),
                "hilbert" => c.hilbert = true,
                "quadrics" => c.quadrics = true,
                "wlp" => c.wlp = true,
                "slp" => c.slp = true,
                "hessians" => c.hessians = true,
                "profile" => c.profile = true,
                other => return Err(Error::InvalidArgument(format!("unknown check `{other}`"))),
            }
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDescriptor {
    /// `polynomial`, `complex` or `family`.
    pub kind: String,
    pub source: String,
    pub polynomial: String,
    pub variables: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_block: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HessianRank {
    pub matrix: String,
    pub k: u32,
    pub l: u32,
    pub certificate: RankCertificate,
}

/// Fields derived from a simplicial complex input.
#[derive(Clone, Debug, Serialize)]
pub struct CombinatorialSummary {
    pub vertices: usize,
    pub facets: usize,
    /// `e_k`, the number of faces with `k` vertices.
    pub face_counts: Vec<usize>,
    pub facet_connected: bool,
    pub flag: bool,
    pub presented_by_quadrics_combinatorial: bool,
    /// `h_k = e_k + e_{d-k}`.
    pub face_hilbert: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph_class: Option<GraphClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noninjectivity: Option<NonInjectivityCertificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: String,
    pub config: CheckConfig,
    pub checks: Checks,
    pub input: InputDescriptor,
    pub socle_degree: u32,
    pub codimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unimodal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrics: Option<QuadricsResult>,
    pub hessian_ranks: Vec<HessianRank>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wlp: Option<LefschetzVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slp: Option<LefschetzVerdict>,
    /// One-step rank profile at the WLP witness, else at a seeded random `L`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<RankProfile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combinatorics: Option<CombinatorialSummary>,
    pub warnings: Vec<String>,
}

fn describe(f: &Polynomial, kind: &str, source: &str) -> InputDescriptor {
    InputDescriptor {
        kind: kind.into(),
        source: source.into(),
        polynomial: f.to_string(),
        variables: f.vars().names().to_vec(),
        x_block: f.vars().x_count(),
    }
}

fn analyze_algebra(alg: &GradedAlgebra, input: InputDescriptor, checks: Checks, config: &CheckConfig) -> Result<AnalysisReport> {
    let d = alg.socle_degree();
    let mut warnings: Vec<String> = alg.warnings().to_vec();
    let hilbert = checks.hilbert.then(|| alg.hilbert().to_vec());
    let unimodal = checks.hilbert.then(|| unimodality_check(alg.hilbert()));
    let quadrics = checks.quadrics.then(|| alg.ann_generated_by_quadrics());
    let mut hessian_ranks = Vec::new();
    if checks.hessians {
        let mut salt = 0x4e55;
        for k in 1..=d / 2 {
            for (a, b) in [(k - 1, k), (k, k)] {
                let h = mixed_hessian(alg, a, b)?;
                salt += 1;
                hessian_ranks.push(HessianRank {
                    matrix: format!("Hess^({a},{b})"),
                    k: a,
                    l: b,
                    certificate: hessian_rank(&h, config, salt),
                });
            }
        }
    }
    let wlp = if checks.wlp { Some(wlp_check(alg, config)?) } else { None };
    let slp = if checks.slp { Some(slp_check(alg, config)?) } else { None };
    let profile = if checks.profile {
        let ell = match wlp.as_ref().and_then(|v| v.witness_form(alg)) {
            Some(l) => l,
            None => random_linear_form(alg, &mut config.rng(0x9f), config.sample_bound),
        };
        Some(rank_profile(alg, &ell)?)
    } else {
        None
    };
    for v in wlp.iter().chain(slp.iter()) {
        if !v.holds && v.mode == crate::hessians::Mode::Probabilistic {
            warnings.push(format!(
                "{} failure is probabilistic (trials={}, seed={})",
                v.property, v.candidates_tried, v.seed
            ));
        }
    }
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION.into(),
        config: config.clone(),
        checks,
        input,
        socle_degree: d,
        codimension: alg.codimension(),
        hilbert,
        unimodal,
        quadrics,
        hessian_ranks,
        wlp,
        slp,
        profile,
        combinatorics: None,
        warnings,
    })
}

/// Full analysis of a homogeneous form.
pub fn analyze(f: &Polynomial, source: &str, checks: Checks, config: &CheckConfig) -> Result<AnalysisReport> {
    let alg = build_algebra(f)?;
    analyze_algebra(&alg, describe(f, "polynomial", source), checks, config)
}

/// Analysis of `f_Delta` plus the combinatorial fields of `Delta`.
pub fn analyze_complex(
    c: &SimplicialComplex,
    source: &str,
    checks: Checks,
    config: &CheckConfig,
) -> Result<AnalysisReport> {
    let f = c.dual_generator()?;
    let alg = build_algebra(&f)?;
    let mut report = analyze_algebra(&alg, describe(&f, "complex", source), checks, config)?;
    let graph_class = match c.pure_dim() {
        Some(1) => Some(Graph::from_complex(c)?.classify()),
        _ => None,
    };
    let noninjectivity = match c.pure_dim() {
        Some(p) if p >= 1 => noninjectivity_certificate(c, config)?,
        _ => None,
    };
    let fh = face_hilbert(c);
    if fh != alg.hilbert() {
        report.warnings.push(format!(
            "face-count Hilbert vector {fh:?} differs from the computed {:?}",
            alg.hilbert()
        ));
    }
    if let Some(cert) = &noninjectivity {
        if cert.deficient() {
            report.warnings.push(
                "a TK(2,..,2) sub-complex gives an exact kernel vector: mu_L : A_1 -> A_2 is not injective for any L"
                    .into(),
            );
        }
    }
    report.combinatorics = Some(CombinatorialSummary {
        vertices: c.vertices().len(),
        facets: c.facets().len(),
        face_counts: c.face_counts(),
        facet_connected: c.is_facet_connected(),
        flag: c.is_flag(),
        presented_by_quadrics_combinatorial: c.presented_by_quadrics_combinatorial(),
        face_hilbert: fh,
        graph_class,
        noninjectivity,
    });
    Ok(report)
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Short human-readable summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let line = |out: &mut String, k: &str, v: String| {
            out.push_str(&format!("{k:<14}{v}\n"));
        };
        line(&mut out, "input", self.input.polynomial.clone());
        line(&mut out, "seed", self.config.seed.to_string());
        line(&mut out, "socle degree", self.socle_degree.to_string());
        line(&mut out, "codimension", self.codimension.to_string());
        if let Some(h) = &self.hilbert {
            line(&mut out, "hilbert", format!("{h:?}"));
        }
        if let Some(u) = self.unimodal {
            line(&mut out, "unimodal", u.to_string());
        }
        if let Some(q) = &self.quadrics {
            let mut s = q.presented.to_string();
            if !q.failing_degrees.is_empty() {
                s.push_str(&format!(" (fails in degrees {:?})", q.failing_degrees));
            }
            if let Some(r) = &q.reason {
                s.push_str(&format!(" ({r})"));
            }
            line(&mut out, "quadrics", s);
        }
        for h in &self.hessian_ranks {
            line(
                &mut out,
                &h.matrix,
                format!(
                    "rank {} of {}x{} ({:?}, {})",
                    h.certificate.rank, h.certificate.rows, h.certificate.cols, h.certificate.mode, h.certificate.method
                ),
            );
        }
        for v in self.wlp.iter().chain(self.slp.iter()) {
            line(
                &mut out,
                &v.property.to_string(),
                format!("{} ({:?})", v.holds, v.mode),
            );
        }
        if let Some(p) = &self.profile {
            line(&mut out, "profile", format!("{:?} of {:?}", p.ranks, p.expected));
        }
        if let Some(c) = &self.combinatorics {
            line(&mut out, "faces", format!("{:?}", c.face_counts));
            line(&mut out, "flag", c.flag.to_string());
            line(&mut out, "connected", c.facet_connected.to_string());
            if let Some(g) = c.graph_class {
                let name = serde_json::to_string(&g).expect("serializable");
                line(&mut out, "graph class", name.trim_matches('"').to_string());
            }
        }
        for w in &self.warnings {
            line(&mut out, "warning", w.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::VarSet;

    #[test]
    fn checks_parse() {
        let c: Checks = "hilbert, wlp".parse().unwrap();
        assert!(c.hilbert && c.wlp && !c.slp);
        assert_eq!("all".parse::<Checks>().unwrap(), Checks::all());
        assert!("bogus".parse::<Checks>().is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let v = VarSet::numbered("x", 3);
        let f = Polynomial::parse("x1^3 + x1*x2*x3 - 2*x3^3", &v).unwrap();
        let cfg = CheckConfig::with_seed(7);
        let a = analyze(&f, "inline", Checks::all(), &cfg).unwrap().to_json();
        let b = analyze(&f, "inline", Checks::all(), &cfg).unwrap().to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"schema_version\": \"1.0.0\""));
    }

    #[test]
    fn complex_report_has_combinatorics() {
        let c = Graph::cycle(4).to_complex().unwrap();
        let r = analyze_complex(&c, "square", Checks::all(), &CheckConfig::default()).unwrap();
        let comb = r.combinatorics.as_ref().unwrap();
        assert_eq!(comb.graph_class, Some(GraphClass::UniEvenNoWlp));
        assert!(comb.noninjectivity.as_ref().unwrap().deficient());
        assert_eq!(r.wlp.as_ref().map(|v| v.holds), Some(false));
        assert!(r.to_text().contains("hilbert"));
    }
}
