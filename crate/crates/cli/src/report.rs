//! The analysis report: solver output plus every structural check, in a
//! form that serializes to JSON and renders as plain text.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use evoderive_core::theory::{self, TheoryError};
use evoderive_core::{
    derivation_space_with, DerivationSpace, EvolutionAlgebra, FieldSpec, Graph, Matrix, Prediction,
    Scalar, SolverConfig, SolverError,
};

/// Names of all checks, in report order.
pub const CHECK_NAMES: [&str; 13] = [
    "leibniz",
    "conditions",
    "prop_conditions",
    "block_structure",
    "twin_sum",
    "offdiag_skew",
    "theorem_characterization",
    "corollary_sums",
    "twin_size_lemma",
    "no_diagonal_derivation",
    "diagonal_parity",
    "f_map",
    "prediction",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not_applicable",
        })
    }
}

/// A matrix entry: an integer when it fits, otherwise the canonical
/// `n` or `n/d` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl From<&Scalar> for Entry {
    fn from(s: &Scalar) -> Self {
        let (num, den) = s.to_ratio();
        if den == BigInt::from(1) {
            if let Ok(k) = i64::try_from(&num) {
                return Entry::Int(k);
            }
        }
        Entry::Text(s.to_string())
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Int(k) => write!(f, "{k}"),
            Entry::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionSummary {
    pub kind: String,
    pub dim: Option<usize>,
    pub justification: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub graph: GraphSummary,
    #[serde(rename = "char")]
    pub characteristic: u64,
    /// One-based vertex labels.
    pub twin_classes: Vec<Vec<usize>>,
    pub prediction: PredictionSummary,
    pub dimension: usize,
    pub basis: Vec<Vec<Vec<Entry>>>,
    pub checks: BTreeMap<String, Verdict>,
}

fn matrix_entries(m: &Matrix) -> Vec<Vec<Entry>> {
    m.row_iter()
        .map(|r| r.iter().map(Entry::from).collect())
        .collect()
}

/// A failed precondition means the check does not apply.
fn verdict(result: Result<bool, TheoryError>) -> Verdict {
    match result {
        Ok(ok) => Verdict::from_bool(ok),
        Err(_) => Verdict::NotApplicable,
    }
}

/// Runs a per-matrix check on every basis element. The zero matrix goes
/// first so that preconditions are reported even for a trivial space.
fn over_basis(
    ds: &DerivationSpace,
    check: impl Fn(&Matrix) -> Result<bool, TheoryError>,
) -> Verdict {
    let n = ds.algebra().dim();
    let zero = Matrix::zeros(ds.algebra().field(), n, n);
    let mut all = Verdict::Pass;
    for d in std::iter::once(&zero).chain(ds.basis()) {
        match verdict(check(d)) {
            Verdict::Pass => {}
            v => all = v,
        }
        if all != Verdict::Pass {
            break;
        }
    }
    all
}

fn prediction_verdict(pred: &Result<Prediction, TheoryError>, ds: &DerivationSpace) -> Verdict {
    let Ok(pred) = pred else {
        return Verdict::NotApplicable;
    };
    let Some(dim) = pred.exact_dimension() else {
        return Verdict::NotApplicable;
    };
    let basis_ok = pred.basis().is_none_or(|b| {
        b.iter().all(|d| {
            ds.algebra().is_derivation_leibniz(d).unwrap_or(false)
                && ds.contains(d).unwrap_or(false)
        })
    });
    Verdict::from_bool(dim == ds.dimension() && basis_ok)
}

fn compute_checks(
    ds: &DerivationSpace,
    pred: &Result<Prediction, TheoryError>,
) -> BTreeMap<String, Verdict> {
    let alg = ds.algebra();
    let g = alg.graph();
    let tp = g.twin_partition();
    let algebra_check = |r: Result<bool, _>| r.map_err(TheoryError::from);
    let f_map = match theory::build_f_map(g, alg.field()) {
        Ok(f) => Verdict::from_bool(
            alg.is_derivation_leibniz(&f).unwrap_or(false) && ds.contains(&f).unwrap_or(false),
        ),
        Err(_) => Verdict::NotApplicable,
    };
    let verdicts = [
        over_basis(ds, |d| algebra_check(alg.is_derivation_leibniz(d))),
        over_basis(ds, |d| algebra_check(alg.is_derivation_conditions(d))),
        over_basis(ds, |d| theory::check_prop_conditions(alg, d)),
        over_basis(ds, |d| theory::check_block_structure(d, &tp)),
        over_basis(ds, |d| theory::check_twin_sum(alg, d, &tp)),
        over_basis(ds, |d| theory::check_offdiag_skew(d, &tp)),
        over_basis(ds, |d| theory::check_theorem_characterization(alg, d, &tp)),
        over_basis(ds, |d| theory::check_corollary_sums(alg, d, &tp)),
        verdict(theory::check_twin_size_lemma(ds, &tp)),
        verdict(theory::check_no_diagonal_derivation(ds)),
        over_basis(ds, |d| theory::check_diagonal_parity(alg, d)),
        f_map,
        prediction_verdict(pred, ds),
    ];
    CHECK_NAMES
        .iter()
        .map(|s| s.to_string())
        .zip(verdicts)
        .collect()
}

impl Report {
    pub fn build(g: &Graph, field: FieldSpec, config: SolverConfig) -> Result<Self, SolverError> {
        let alg = EvolutionAlgebra::new(g.clone(), field);
        let ds = derivation_space_with(&alg, config)?;
        Ok(Self::from_space(&ds))
    }

    pub fn from_space(ds: &DerivationSpace) -> Self {
        let g = ds.algebra().graph();
        let field = ds.algebra().field();
        let tp = g.twin_partition();
        let pred = theory::predict(g, field, &tp);
        let prediction = match &pred {
            Ok(p) => PredictionSummary {
                kind: p.kind().to_string(),
                dim: p.exact_dimension(),
                justification: p.justification().to_string(),
            },
            Err(e) => PredictionSummary {
                kind: Prediction::NoPrediction.kind().to_string(),
                dim: None,
                justification: e.to_string(),
            },
        };
        Report {
            graph: GraphSummary {
                n: g.vertex_count(),
                m: g.edge_count(),
                connected: g.is_connected(),
            },
            characteristic: field.characteristic(),
            twin_classes: tp
                .classes()
                .iter()
                .map(|c| c.iter().map(|v| v + 1).collect())
                .collect(),
            prediction,
            dimension: ds.dimension(),
            basis: ds.basis().iter().map(matrix_entries).collect(),
            checks: compute_checks(ds, &pred),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let field = match self.characteristic {
            0 => "Q".to_string(),
            p => format!("GF({p})"),
        };
        let _ = writeln!(
            out,
            "graph: n={} m={} {}",
            self.graph.n,
            self.graph.m,
            if self.graph.connected {
                "connected"
            } else {
                "disconnected"
            }
        );
        let _ = writeln!(out, "field: {field}");
        let classes: Vec<String> = self
            .twin_classes
            .iter()
            .map(|c| {
                let labels: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("{{{}}}", labels.join(","))
            })
            .collect();
        let _ = writeln!(out, "twin classes: {}", classes.join(" "));
        let dim = self
            .prediction
            .dim
            .map_or(String::new(), |d| format!(" dim={d}"));
        let _ = writeln!(
            out,
            "prediction: {}{} ({})",
            self.prediction.kind, dim, self.prediction.justification
        );
        let _ = writeln!(out, "dimension: {}", self.dimension);
        for (k, b) in self.basis.iter().enumerate() {
            let _ = writeln!(out, "basis[{}]:", k + 1);
            for row in b {
                let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                let _ = writeln!(out, "  {}", cells.join(" "));
            }
        }
        let _ = writeln!(out, "checks:");
        for name in CHECK_NAMES {
            if let Some(v) = self.checks.get(name) {
                let _ = writeln!(out, "  {name}: {v}");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    #[test]
    fn entries_use_fractions_only_when_needed() {
        let q = FieldSpec::rationals();
        let half = Scalar::from_ratio(&1.into(), &2.into(), q).unwrap();
        assert_eq!(Entry::from(&half), Entry::Text("1/2".into()));
        assert_eq!(Entry::from(&Scalar::from_int(-4, q)), Entry::Int(-4));
        assert_eq!(Entry::from(&Scalar::from_int(-1, gf(5))), Entry::Int(4));
    }

    #[test]
    fn every_check_reported_once() {
        let r = Report::build(&Graph::path(2).unwrap(), gf(3), SolverConfig::default()).unwrap();
        assert_eq!(r.checks.len(), CHECK_NAMES.len());
        assert!(CHECK_NAMES.iter().all(|n| r.checks.contains_key(*n)));
    }

    #[test]
    fn p2_char_three() {
        let r = Report::build(&Graph::path(2).unwrap(), gf(3), SolverConfig::default()).unwrap();
        assert_eq!(r.dimension, 1);
        assert_eq!(
            r.basis,
            vec![vec![
                vec![Entry::Int(1), Entry::Int(0)],
                vec![Entry::Int(0), Entry::Int(2)]
            ]]
        );
        assert_eq!(r.checks["prediction"], Verdict::Pass);
        assert_eq!(r.checks["f_map"], Verdict::Pass);
        assert_eq!(r.checks["no_diagonal_derivation"], Verdict::NotApplicable);
        assert_eq!(r.checks["corollary_sums"], Verdict::Pass);
    }

    #[test]
    fn disconnected_graph_marks_theorems_inapplicable() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let r = Report::build(&g, gf(5), SolverConfig::default()).unwrap();
        assert!(!r.graph.connected);
        assert_eq!(r.prediction.kind, "no_prediction");
        assert_eq!(r.checks["twin_sum"], Verdict::NotApplicable);
        assert_eq!(r.checks["prediction"], Verdict::NotApplicable);
        assert_eq!(r.checks["leibniz"], Verdict::Pass);
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::complete_bipartite(3, 2).unwrap();
        for p in [0, 2, 3] {
            let r = Report::build(&g, gf(p), SolverConfig::default()).unwrap();
            assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        }
    }
}
