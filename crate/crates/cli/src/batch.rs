//! Randomised cross-checks between the solver, the algebra oracles and the
//! structure theory, over seeded random connected graphs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use evoderive_core::theory;
use evoderive_core::{
    derivation_space, DerivationSpace, EvolutionAlgebra, FieldSpec, Graph, Matrix, Scalar,
};

use crate::gen::sample_until;
use crate::input::matrix_file_text;

#[derive(Debug, Clone, PartialEq)]
pub struct BatchConfig {
    pub trials: usize,
    pub max_n: usize,
    pub chars: Vec<FieldSpec>,
    pub seed: u64,
    pub matrices_per_graph: usize,
    pub permutations: usize,
}

impl Default for BatchConfig {
    fn default() -> Self {
        Self {
            trials: 200,
            max_n: 8,
            chars: [0, 2, 3, 5, 7]
                .into_iter()
                .map(|p| FieldSpec::new(p).expect("valid"))
                .collect(),
            seed: 0,
            matrices_per_graph: 100,
            permutations: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: u64,
    pub failed: u64,
}

/// A failing case, laid out as inputs for `analyze` or `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub property: String,
    pub trial: usize,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub graph: String,
    pub matrix: Option<String>,
}

impl Counterexample {
    pub fn render(&self) -> String {
        let mut out = format!(
            "counterexample: {} (trial {}, char {})\n--- graph.txt\n{}",
            self.property, self.trial, self.characteristic, self.graph
        );
        match &self.matrix {
            Some(m) => {
                let _ = write!(out, "--- matrix.txt\n{m}");
                let _ = writeln!(
                    out,
                    "rerun: evoderive verify graph.txt matrix.txt --char {}",
                    self.characteristic
                );
            }
            None => {
                let _ = writeln!(
                    out,
                    "rerun: evoderive analyze graph.txt --char {}",
                    self.characteristic
                );
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchSummary {
    pub trials: usize,
    pub seed: u64,
    pub chars: Vec<u64>,
    pub graphs: u64,
    pub twin_free_skipped: u64,
    pub checks: BTreeMap<String, Tally>,
    pub counterexample: Option<Counterexample>,
}

impl BatchSummary {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn render_text(&self) -> String {
        let chars: Vec<String> = self.chars.iter().map(|p| p.to_string()).collect();
        let mut out = format!(
            "trials: {} (seed {}, chars {}), graphs checked: {}\n",
            self.trials,
            self.seed,
            chars.join(","),
            self.graphs
        );
        if self.twin_free_skipped > 0 {
            let _ = writeln!(
                out,
                "twin-free samples not found: {}",
                self.twin_free_skipped
            );
        }
        for (name, t) in &self.checks {
            let _ = writeln!(out, "{name}: {} checked, {} failed", t.checked, t.failed);
        }
        match &self.counterexample {
            Some(c) => out.push_str(&c.render()),
            None => out.push_str("all checks passed\n"),
        }
        out
    }
}

#[derive(Default)]
struct Outcome {
    graphs: u64,
    twin_free_skipped: u64,
    checks: BTreeMap<&'static str, Tally>,
    counterexample: Option<Counterexample>,
}

struct Trial<'a> {
    index: usize,
    graph: &'a Graph,
    field: FieldSpec,
}

impl Outcome {
    fn record(&mut self, name: &'static str, ok: bool, trial: &Trial, matrix: Option<&Matrix>) {
        let t = self.checks.entry(name).or_default();
        t.checked += 1;
        if !ok {
            t.failed += 1;
            self.counterexample.get_or_insert_with(|| Counterexample {
                property: name.to_string(),
                trial: trial.index,
                characteristic: trial.field.characteristic(),
                graph: trial.graph.to_edge_list(),
                matrix: matrix.map(matrix_file_text),
            });
        }
    }

    fn merge(&mut self, other: Outcome) {
        self.graphs += other.graphs;
        self.twin_free_skipped += other.twin_free_skipped;
        for (k, t) in other.checks {
            let e = self.checks.entry(k).or_default();
            e.checked += t.checked;
            e.failed += t.failed;
        }
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }
}

fn random_scalar<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field.characteristic() {
        0 => Scalar::from_int(rng.gen_range(-3..=3), field),
        p => Scalar::from_bigint(&BigInt::from(rng.gen_range(0..p)), field),
    }
}

fn random_combination<R: Rng>(rng: &mut R, ds: &DerivationSpace) -> Matrix {
    let field = ds.algebra().field();
    let n = ds.algebra().dim();
    ds.basis()
        .iter()
        .fold(Matrix::zeros(field, n, n), |acc, b| {
            acc.sum(&b.scaled(&random_scalar(rng, field)))
                .expect("same shape")
        })
}

/// Test matrices: uniform, members of the space, members with one entry
/// bumped, and random matrices with the twin-block shape.
fn random_matrix<R: Rng>(rng: &mut R, ds: &DerivationSpace, kind: usize) -> Matrix {
    let field = ds.algebra().field();
    let n = ds.algebra().dim();
    match kind % 4 {
        0 => Matrix::from_fn(field, n, n, |_, _| random_scalar(rng, field)),
        1 => random_combination(rng, ds),
        2 => {
            let mut d = random_combination(rng, ds);
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let bump = match field.characteristic() {
                0 => Scalar::from_int(rng.gen_range(1..=3), field),
                p => Scalar::from_bigint(&BigInt::from(rng.gen_range(1..p)), field),
            };
            d.set(i, j, d.get(i, j) + &bump);
            d
        }
        _ => {
            let tp = ds.algebra().graph().twin_partition();
            Matrix::from_fn(field, n, n, |i, j| {
                if tp.are_twins(i, j) {
                    random_scalar(rng, field)
                } else {
                    field.zero()
                }
            })
        }
    }
}

/// `d` rewritten for the graph relabelled by `perm` (vertex `v` becomes
/// `perm[v]`).
pub fn conjugate(d: &Matrix, perm: &[usize]) -> Matrix {
    let n = d.rows();
    let mut inverse = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        inverse[p] = v;
    }
    Matrix::from_fn(d.field(), n, n, |i, j| {
        d.get(inverse[i], inverse[j]).clone()
    })
}

fn check_matrix(out: &mut Outcome, trial: &Trial, ds: &DerivationSpace, d: &Matrix) {
    let alg = ds.algebra();
    let tp = trial.graph.twin_partition();
    let leibniz = alg.is_derivation_leibniz(d).expect("shape");
    let conditions = alg.is_derivation_conditions(d).expect("shape");
    out.record(
        "leibniz_vs_conditions",
        leibniz == conditions,
        trial,
        Some(d),
    );
    let characterization = theory::check_theorem_characterization(alg, d, &tp);
    out.record(
        "characterization_iff",
        characterization == Ok(leibniz),
        trial,
        Some(d),
    );
    let prop = theory::check_prop_conditions(alg, d);
    out.record("prop_conditions_iff", prop == Ok(leibniz), trial, Some(d));
    out.record(
        "membership_agrees",
        ds.contains(d) == Ok(leibniz),
        trial,
        Some(d),
    );
}

fn check_basis(out: &mut Outcome, trial: &Trial, ds: &DerivationSpace) {
    let alg = ds.algebra();
    let tp = trial.graph.twin_partition();
    let p = trial.field.characteristic();
    let nonsingular =
        trial.graph.adjacency_matrix(trial.field).rank() == trial.graph.vertex_count();
    for d in ds.basis() {
        check_matrix(out, trial, ds, d);
        let ok = |r: Result<bool, theory::TheoryError>| r == Ok(true);
        out.record(
            "basis_is_derivation",
            alg.is_derivation_leibniz(d) == Ok(true),
            trial,
            Some(d),
        );
        out.record(
            "block_structure",
            ok(theory::check_block_structure(d, &tp)),
            trial,
            Some(d),
        );
        out.record(
            "twin_sum",
            ok(theory::check_twin_sum(alg, d, &tp)),
            trial,
            Some(d),
        );
        out.record(
            "offdiag_skew",
            ok(theory::check_offdiag_skew(d, &tp)),
            trial,
            Some(d),
        );
        if p != 0 && p != 2 {
            out.record(
                "twin_diagonal",
                ok(theory::check_corollary_sums(alg, d, &tp)),
                trial,
                Some(d),
            );
        }
        if nonsingular {
            out.record(
                "diagonal_parity",
                ok(theory::check_diagonal_parity(alg, d)),
                trial,
                Some(d),
            );
        }
    }
    if p != 2 {
        out.record(
            "twin_size_lemma",
            theory::check_twin_size_lemma(ds, &tp) == Ok(true),
            trial,
            None,
        );
    }
    if p != 3 && trial.graph.vertex_count() >= 2 {
        out.record(
            "no_diagonal_derivation",
            theory::check_no_diagonal_derivation(ds) == Ok(true),
            trial,
            None,
        );
    }
}

fn check_prediction(out: &mut Outcome, trial: &Trial, ds: &DerivationSpace) {
    let tp = trial.graph.twin_partition();
    let Ok(pred) = theory::predict(trial.graph, trial.field, &tp) else {
        out.record("prediction_soundness", false, trial, None);
        return;
    };
    if let Some(dim) = pred.exact_dimension() {
        out.record("prediction_soundness", dim == ds.dimension(), trial, None);
    }
    for b in pred.basis().unwrap_or_default() {
        let ok = ds.algebra().is_derivation_leibniz(b) == Ok(true) && ds.contains(b) == Ok(true);
        out.record("prediction_soundness", ok, trial, Some(b));
    }
    if trial.field.characteristic() == 2 && tp.is_twin_free() && trial.graph.vertex_count() >= 2 {
        out.record("twin_free_char2_zero", ds.dimension() == 0, trial, None);
    }
}

fn check_relabel<R: Rng>(
    out: &mut Outcome,
    trial: &Trial,
    ds: &DerivationSpace,
    rng: &mut R,
    count: usize,
) {
    let n = trial.graph.vertex_count();
    for _ in 0..count {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let h = trial.graph.relabel(&perm).expect("permutation");
        let other = derivation_space(&EvolutionAlgebra::new(h, trial.field)).expect("within cap");
        let ok = other.dimension() == ds.dimension()
            && ds
                .basis()
                .iter()
                .all(|d| other.contains(&conjugate(d, &perm)) == Ok(true));
        out.record("relabel_invariance", ok, trial, None);
    }
}

fn run_trial(config: &BatchConfig, index: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let mut out = Outcome::default();

    let n = rng.gen_range(1..=config.max_n);
    let edge_prob = rng.gen_range(0.2..0.9);
    let graph = sample_until(&mut rng, n, edge_prob, Graph::is_connected)
        .unwrap_or_else(|| Graph::path(n).expect("n >= 1"));
    out.graphs += 1;

    let rational = FieldSpec::rationals();
    let dim_q = derivation_space(&EvolutionAlgebra::new(graph.clone(), rational))
        .expect("within cap")
        .dimension();

    for &field in &config.chars {
        let trial = Trial {
            index,
            graph: &graph,
            field,
        };
        let ds =
            derivation_space(&EvolutionAlgebra::new(graph.clone(), field)).expect("within cap");
        check_basis(&mut out, &trial, &ds);
        for k in 0..config.matrices_per_graph {
            let d = random_matrix(&mut rng, &ds, k);
            check_matrix(&mut out, &trial, &ds, &d);
        }
        check_prediction(&mut out, &trial, &ds);
        if field.characteristic() != 0 {
            out.record("char0_le_charp", dim_q <= ds.dimension(), &trial, None);
        }
        check_relabel(&mut out, &trial, &ds, &mut rng, config.permutations);
    }

    // A separate twin-free sample for the characteristic 2 corollary.
    let gf2 = FieldSpec::new(2).expect("prime");
    if config.max_n >= 2 && config.chars.contains(&gf2) {
        let n = rng.gen_range(2..=config.max_n);
        let edge_prob = rng.gen_range(0.3..0.8);
        let sample = sample_until(&mut rng, n, edge_prob, |g| {
            g.is_connected() && g.twin_partition().is_twin_free()
        });
        match sample {
            Some(g) => {
                let ds =
                    derivation_space(&EvolutionAlgebra::new(g.clone(), gf2)).expect("within cap");
                let trial = Trial {
                    index,
                    graph: &g,
                    field: gf2,
                };
                out.graphs += 1;
                out.record("twin_free_char2_zero", ds.dimension() == 0, &trial, None);
            }
            None => out.twin_free_skipped += 1,
        }
    }
    out
}

pub fn run_batch(config: &BatchConfig) -> BatchSummary {
    let outcomes: Vec<Outcome> = (0..config.trials)
        .into_par_iter()
        .map(|i| run_trial(config, i))
        .collect();
    let total = outcomes.into_iter().fold(Outcome::default(), |mut acc, o| {
        acc.merge(o);
        acc
    });
    BatchSummary {
        trials: config.trials,
        seed: config.seed,
        chars: config.chars.iter().map(|f| f.characteristic()).collect(),
        graphs: total.graphs,
        twin_free_skipped: total.twin_free_skipped,
        checks: total
            .checks
            .into_iter()
            .map(|(k, t)| (k.to_string(), t))
            .collect(),
        counterexample: total.counterexample,
    }
}
