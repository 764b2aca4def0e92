//! End-to-end decision procedure, oracles and corpus verification.

pub mod corpus;
pub mod screen;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohomology::{coinvariant_cross_check, cohomology_dim_d, dimension_oracle, Total, DEFAULT_COINVARIANT_CAP};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::pair::{build_pair, parse_subgroup_spec, CorankOnePair, PairSummary};
use crate::roots::{parse_group_spec, RootSystem};
use crate::weyl::{component_group_n, longest_word, DEFAULT_WEYL_CAP};

pub use corpus::{load_corpus, parse_corpus, verify_corpus, verify_rows, CorpusReport, CorpusRow, RowOutcome};
pub use screen::{onishchik_screen, DegreeScreenResult, ScreenClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Pi1Infinite,
    DEquals2,
    #[serde(rename = "d-equals-4-N-strict")]
    DEquals4NStrict,
    #[serde(rename = "d-equals-4-N-equal")]
    DEquals4NEqual,
    DAtLeast6,
    Unsupported,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Pi1Infinite => "pi1-infinite",
            Branch::DEquals2 => "d-equals-2",
            Branch::DEquals4NStrict => "d-equals-4-N-strict",
            Branch::DEquals4NEqual => "d-equals-4-N-equal",
            Branch::DAtLeast6 => "d-at-least-6",
            Branch::Unsupported => "unsupported",
        }
    }

    pub fn is_formal(self) -> Option<bool> {
        match self {
            Branch::Pi1Infinite | Branch::DEquals2 | Branch::DEquals4NStrict => Some(true),
            Branch::DEquals4NEqual | Branch::DAtLeast6 => Some(false),
            Branch::Unsupported => None,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InfiniteMarker {
    Infinite,
}

/// A dimension that serializes as a number or the string "infinite".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Dimension {
    Finite(usize),
    Infinite(InfiniteMarker),
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite(_) => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    /// None only for the unsupported branch.
    pub formal: Option<bool>,
    pub branch: Branch,
    /// dim H*(G/H_S); None when not needed (π₁ branch) or not computable.
    pub d: Option<Dimension>,
    #[serde(rename = "N_order")]
    pub n_order: Option<usize>,
    #[serde(rename = "Wv_order")]
    pub wv_order: u64,
    pub w0_negates_v: bool,
    #[serde(rename = "w0s_in_Wvs")]
    pub w0s_in_wvs: Option<bool>,
    pub pair: PairSummary,
    /// Cohomological degrees of the even quotient, as (degree, dimension).
    pub even_dims: Vec<(usize, usize)>,
    pub mn: Option<(usize, usize)>,
    pub trace: Vec<TraceStep>,
}

impl Verdict {
    /// 0 for a decided verdict, 3 when unsupported or a cap was hit.
    pub fn exit_code(&self) -> i32 {
        if self.branch == Branch::Unsupported {
            3
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyConfig {
    pub weyl_cap: usize,
    /// Cohomological degree cap; defaults to 2·Σ(d_i − 1).
    pub degree_cap: Option<usize>,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { weyl_cap: DEFAULT_WEYL_CAP, degree_cap: None }
    }
}

pub fn parse_pair(group: &str, subgroup: &str) -> Result<CorankOnePair> {
    let rs = RootSystem::build(&parse_group_spec(group)?)?;
    build_pair(&rs, &parse_subgroup_spec(subgroup)?)
}

pub fn classify(group: &str, subgroup: &str, config: &ClassifyConfig) -> Result<Verdict> {
    Ok(classify_pair(&parse_pair(group, subgroup)?, config))
}

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

struct Tracer(Vec<TraceStep>);

impl Tracer {
    fn push(&mut self, step: &str, detail: impl Into<String>) {
        self.0.push(TraceStep { step: step.into(), detail: detail.into() });
    }
}

pub fn classify_pair(pair: &CorankOnePair, config: &ClassifyConfig) -> Verdict {
    let rs = &pair.rs;
    let mut tr = Tracer(Vec::new());
    tr.push("group", format!("{} (rank {}, |W| = {}, degrees {:?})", rs.spec.canonical(), rs.rank(), rs.weyl_order(), rs.degrees()));
    tr.push("normal", format!("dominant v = {}, s = v^⊥ of dimension {}", fmt_vec(&pair.v), pair.s_basis.cols()));
    tr.push(
        "H_S",
        format!(
            "Δ_v = {}, type {}, |Φ_HS| = {}, dim G/H_S = {}, H_S = H: {}",
            RootSystem::simple_labels(&pair.delta_v),
            pair.hs_type(),
            pair.phi_hs.len(),
            pair.dim_ghs,
            pair.hs_equals_h()
        ),
    );
    let (w0, _) = longest_word(rs);
    let neg_v: Vec<Rational> = pair.v.iter().map(|x| -x).collect();
    let w0_negates_v = w0.mul_vec(&pair.v) == neg_v;
    tr.push("w0", format!("w0·v = {}; negates v: {}", fmt_vec(&w0.mul_vec(&pair.v)), w0_negates_v));
    tr.push("W_v", format!("|W_v| = {} from the parabolic degrees {:?}", pair.wv_order, pair.wv_degrees()));
    let mut verdict = Verdict {
        formal: None,
        branch: Branch::Unsupported,
        d: None,
        n_order: None,
        wv_order: pair.wv_order as u64,
        w0_negates_v,
        w0s_in_wvs: None,
        pair: pair.summary(),
        even_dims: Vec::new(),
        mn: None,
        trace: Vec::new(),
    };

    tr.push("pi1", format!("rank π₁(G/H_S) = {}", pair.pi1_rank));
    let finish = |mut v: Verdict, tr: Tracer, branch: Branch| {
        v.branch = branch;
        v.formal = branch.is_formal();
        v.trace = tr.0;
        v.trace.push(TraceStep {
            step: "verdict".into(),
            detail: match v.formal {
                Some(f) => format!("{} via {}", if f { "formal" } else { "not formal" }, branch),
                None => "undecided (unsupported)".into(),
            },
        });
        v
    };
    if pair.pi1_rank > 0 {
        tr.push("branch", "π₁(G/H_S) is infinite, so the action is formal");
        return finish(verdict, tr, Branch::Pi1Infinite);
    }
    if rs.is_heavy() {
        tr.push("unsupported", "cohomology of E-type groups is outside the supported range; structural data only");
        return finish(verdict, tr, Branch::Unsupported);
    }

    let (dim, stab, _) = match cohomology_dim_d(pair, config.weyl_cap, config.degree_cap) {
        Ok(x) => x,
        Err(e) => {
            tr.push("unsupported", e.to_string());
            return finish(verdict, tr, Branch::Unsupported);
        }
    };
    verdict.even_dims = dim.quotient.dims.iter().map(|(&k, &d)| (k, d)).collect();
    tr.push(
        "H_even",
        format!("W_H-invariant generators in degrees {:?}; quotient dims {:?}", dim.quotient.invariant_degrees, verdict.even_dims),
    );
    let d = match dim.quotient.total {
        Total::Finite(t) => 2 * t,
        Total::Infinite { cap_degree } => {
            verdict.d = Some(Dimension::Infinite(InfiniteMarker::Infinite));
            tr.push("unsupported", format!("even quotient still nonzero above degree {cap_degree}"));
            return finish(verdict, tr, Branch::Unsupported);
        }
    };
    verdict.d = Some(Dimension::Finite(d));
    verdict.mn = dim.mn;
    tr.push("d", format!("d = 2 · {} = {}", d / 2, d));

    match component_group_n(rs, &pair.v, &pair.s_basis, &stab) {
        Ok(cg) => {
            verdict.n_order = Some(cg.n.order());
            verdict.w0s_in_wvs = Some(cg.w0s_in_wvs);
            tr.push("N", format!("|W_v|_s| = {}, |N| = {}, w0|_s ∈ W_v|_s: {}", cg.wv_s.order(), cg.n.order(), cg.w0s_in_wvs));
        }
        Err(e) => {
            tr.push("unsupported", e.to_string());
            return finish(verdict, tr, Branch::Unsupported);
        }
    }

    let branch = match d {
        2 => Branch::DEquals2,
        4 => {
            if let Some((m, n)) = verdict.mn {
                tr.push("mn", format!("H*(G/H_S) ≅ H*(S^{n} × S^{m})"));
            }
            if w0_negates_v && verdict.w0s_in_wvs == Some(false) {
                Branch::DEquals4NStrict
            } else {
                Branch::DEquals4NEqual
            }
        }
        _ => Branch::DAtLeast6,
    };
    finish(verdict, tr, branch)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub formal: Option<bool>,
    pub d: Option<usize>,
    pub coinvariant_d: usize,
    /// dim H*(G/S) for the corank-one torus S.
    pub d_s: Option<usize>,
    #[serde(rename = "N_order")]
    pub n_order: usize,
    pub coinvariant_total: usize,
    pub expected_total: u128,
    pub hilbert_matches: bool,
    pub consistent: bool,
}

/// Runs the dimension criterion d_S = 2|N| and the coinvariant recount next to classify.
pub fn cross_validate_pair(pair: &CorankOnePair, config: &ClassifyConfig) -> Result<CrossValidation> {
    if pair.pi1_rank > 0 {
        return Err(Error::Unsupported("cross-validation needs finite π₁(G/H_S)".into()));
    }
    let verdict = classify_pair(pair, config);
    if verdict.branch == Branch::Unsupported {
        return Err(Error::Unsupported(verdict.trace.last().map(|t| t.detail.clone()).unwrap_or_default()));
    }
    let d = match verdict.d {
        Some(Dimension::Finite(d)) => Some(d),
        _ => None,
    };
    let n_order = verdict.n_order.ok_or_else(|| Error::Internal("N missing from a decided verdict".into()))?;
    let d_s = dimension_oracle(pair, config.degree_cap)?;
    let check = coinvariant_cross_check(pair, DEFAULT_COINVARIANT_CAP)?;
    let total: usize = check.invariant_dims.iter().sum();
    let consistent = verdict.formal == Some(d_s == Some(2 * n_order))
        && d == Some(check.d)
        && total as u128 == check.expected_total
        && check.hilbert_matches;
    Ok(CrossValidation {
        formal: verdict.formal,
        d,
        coinvariant_d: check.d,
        d_s,
        n_order,
        coinvariant_total: total,
        expected_total: check.expected_total,
        hilbert_matches: check.hilbert_matches,
        consistent,
    })
}

pub fn cross_validate(group: &str, subgroup: &str, config: &ClassifyConfig) -> Result<CrossValidation> {
    cross_validate_pair(&parse_pair(group, subgroup)?, config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(g: &str, s: &str) -> Verdict {
        classify(g, s, &ClassifyConfig::default()).unwrap()
    }

    #[test]
    fn spec_examples() {
        let v = run("SU(5)", "sub(roots=a1,a3,a4)");
        assert_eq!((v.formal, v.d, v.w0_negates_v), (Some(false), Some(Dimension::Finite(4)), false));
        assert_eq!(v.mn, Some((4, 9)));
        let v = run("SU(4)", "sub(roots=a1,a3)");
        assert_eq!((v.formal, v.branch), (Some(true), Branch::DEquals4NStrict));
        assert_eq!(v.n_order, Some(8));
        assert_eq!(v.mn, Some((4, 5)));
        let v = run("SU(3)", "circle(1,1)@A2std");
        assert_eq!((v.formal, v.branch, v.w0s_in_wvs), (Some(false), Branch::DEquals4NEqual, Some(true)));
        let v = run("Sp(2)", "circle(1,1)@C2std");
        assert_eq!((v.formal, v.branch), (Some(true), Branch::DEquals2));
        let v = run("G2", "circle(1,0)@G2std");
        assert_eq!((v.formal, v.branch), (Some(true), Branch::DEquals2));
    }

    #[test]
    fn branch_invariants() {
        for (g, s) in [("SU(4)", "sub(roots=a1,a3)"), ("SU(5)", "sub(roots=a1,a3,a4)"), ("Sp(3)", "sub(roots=a1; center=[1,1,1])"), ("SU(3)", "circle(2,1)@A2std")] {
            let v = run(g, s);
            assert_eq!(v.formal, v.branch.is_formal());
            if v.branch == Branch::DEquals4NStrict {
                assert!(v.w0_negates_v && v.w0s_in_wvs == Some(false));
            }
            assert_eq!(v.branch == Branch::DEquals2, v.d == Some(Dimension::Finite(2)));
        }
    }

    #[test]
    fn pi1_branch() {
        let v = run("A1+T1", "v=0,1");
        assert_eq!((v.pair.pi1_rank, v.branch, v.formal), (1, Branch::Pi1Infinite, Some(true)));
    }

    #[test]
    fn e8_is_unsupported_with_structure() {
        let v = run("E8", "v=1,0,0,0,0,0,0,0");
        assert_eq!((v.branch, v.formal, v.exit_code()), (Branch::Unsupported, None, 3));
        assert_eq!(v.pair.group, "E8");
        assert!(v.wv_order > 0);
    }

    #[test]
    fn caps_give_unsupported() {
        let cfg = ClassifyConfig { weyl_cap: 2, degree_cap: None };
        let v = classify("SU(5)", "sub(roots=a1,a3,a4)", &cfg).unwrap();
        assert_eq!(v.branch, Branch::Unsupported);
    }

    #[test]
    fn verdict_json_round_trip() {
        for (g, s) in [("SU(4)", "sub(roots=a1,a3)"), ("A1+T1", "v=0,1"), ("E8", "v=1,0,0,0,0,0,0,0")] {
            let v = run(g, s);
            let json = serde_json::to_string(&v).unwrap();
            assert_eq!(serde_json::from_str::<Verdict>(&json).unwrap(), v);
        }
        let inf = serde_json::to_string(&Dimension::Infinite(InfiniteMarker::Infinite)).unwrap();
        assert_eq!(inf, "\"infinite\"");
        assert_eq!(serde_json::to_string(&Branch::DEquals4NStrict).unwrap(), "\"d-equals-4-N-strict\"");
    }

    #[test]
    fn cross_validation_examples() {
        let cfg = ClassifyConfig::default();
        let c = cross_validate("SU(4)", "sub(roots=a1,a3)", &cfg).unwrap();
        assert_eq!((c.d_s, c.n_order, c.consistent), (Some(16), 8, true));
        let c = cross_validate("SU(5)", "sub(roots=a1,a3,a4)", &cfg).unwrap();
        assert!(c.d_s.unwrap() > 2 * c.n_order && c.consistent);
        let c = cross_validate("Sp(2)", "circle(1,1)@C2std", &cfg).unwrap();
        assert_eq!((c.d_s, c.n_order, c.consistent), (Some(4), 2, true));
    }
}
