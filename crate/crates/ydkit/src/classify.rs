//! Finite-dimensionality of Nichols algebras of simple Yetter-Drinfeld modules: regime split,
//! the braiding diagram, the classification rows (kept as data in `data/`) and a
//! cross-check against symmetrizer ranks.

pub mod corpus;
pub mod expr;
pub mod sample;

use num_integer::Integer;
use serde_json::{json, Value};

use crate::hopf::HopfError;
use crate::nichols::{
    braiding_from_yd, companion_space, graded_dims, one_dim_finite, t2_certificate, Budget, HilbertPrefix,
    NicholsError,
};
use crate::scalars::Scalar;
use crate::yd::{canonical_grouplike, construct, module_dim, ModuleParams};

pub use corpus::{format_id, DiagramId, DiagramPattern, TableCorpus, TableRow};
pub use expr::{Env, IntVars, RootArith, UnitRoot};

/// A 6-tuple (n, w, γ, α, β, x^r g^i); the same data that parametrizes a simple module.
pub type SixTuple = ModuleParams;

/// Degree of the product attached to T2 verdicts.
pub const CERTIFICATE_DEGREE: usize = 6;

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },
    #[error("integrity check failed for {file}: expected sha256 {expected}, found {found}")]
    Integrity { file: String, expected: String, found: String },
    #[error("conductor {conductor} cannot host a root of unity of order {order}")]
    ConductorTooSmall { order: u32, conductor: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Nichols(#[from] NicholsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// α and β are roots of unity.
    T1,
    /// α and β are not roots of unity.
    T2,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::T1 => "T1",
            Regime::T2 => "T2",
        }
    }
}

pub fn regime(st: &SixTuple) -> Regime {
    if st.alpha.root_order().is_some() {
        Regime::T1
    } else {
        Regime::T2
    }
}

/// Diagram of the companion diagonal braiding (γ, β^{-1}; γ^{-i}, α^r β^i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinDiagram {
    pub v1: Scalar,
    pub v2: Scalar,
    /// β^{-1} γ^{-i}, absent when it equals 1.
    pub edge: Option<Scalar>,
}

impl DynkinDiagram {
    pub fn edge_label(&self) -> Scalar {
        self.edge.clone().unwrap_or_else(|| self.v1.one_like())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "v1": self.v1.to_string(),
            "v2": self.v2.to_string(),
            "edge": self.edge.as_ref().map(|e| e.to_string()),
        })
    }
}

fn canonical(st: &SixTuple) -> (i64, i64) {
    canonical_grouplike(st.r, st.i, st.liu.n(), st.liu.w())
}

fn pow(s: &Scalar, e: i64) -> Scalar {
    s.pow(e).expect("nonzero parameters")
}

pub fn dynkin(st: &SixTuple) -> DynkinDiagram {
    let (r, i) = canonical(st);
    let gamma = st.liu.gamma().clone();
    let edge = &pow(&st.beta, -1) * &pow(&gamma, -i);
    let v2 = &pow(&st.alpha, r) * &pow(&st.beta, i);
    DynkinDiagram { v1: gamma, v2, edge: (!edge.is_one()).then_some(edge) }
}

/// A table row that holds for a tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMatch {
    pub table: u8,
    /// Index of the row in the corpus.
    pub row: usize,
    pub ids: Vec<DiagramId>,
    /// The auxiliary root ζ that satisfies the row.
    pub witness: Option<String>,
}

impl TableMatch {
    pub fn to_json(&self) -> Value {
        json!({
            "table": self.table,
            "row": self.row,
            "ids": self.ids.iter().map(|&id| format_id(id)).collect::<Vec<_>>(),
            "witness": self.witness,
        })
    }
}

/// Binds the tuple's symbols in a root domain.
pub fn tuple_env<R: RootArith>(
    gamma: R,
    beta: R,
    alpha: R,
    n: u32,
    w: u32,
    r: i64,
    i: i64,
) -> Env<R> {
    let mut env = Env::empty(gamma.unit());
    env.alpha_r = Some(alpha.power(r));
    env.alpha_w = Some(alpha.power(w as i64));
    env.gamma = Some(gamma);
    env.beta = Some(beta);
    env.vars = IntVars { i, r, w: w as i64, n: n as i64 };
    env
}

/// Evaluates every row of a corpus in the given root domain.
pub fn evaluate_rows<R: RootArith>(corpus: &TableCorpus, env: &Env<R>) -> Result<Vec<TableMatch>, ClassifyError> {
    let mut out = Vec::new();
    for (k, row) in corpus.rows.iter().enumerate() {
        if let Some(witness) = row.evaluate(env)? {
            out.push(TableMatch { table: row.table, row: k, ids: row.ids.clone(), witness: witness.map(|z| z.to_string()) });
        }
    }
    Ok(out)
}

fn unit_roots(st: &SixTuple) -> Result<(UnitRoot, UnitRoot, UnitRoot), ClassifyError> {
    let conv = |s: &Scalar, name: &str| {
        UnitRoot::from_scalar(s).ok_or_else(|| ClassifyError::InvalidArgument(format!("{name} = {s} is not a root of unity")))
    };
    Ok((conv(st.liu.gamma(), "gamma")?, conv(&st.beta, "beta")?, conv(&st.alpha, "alpha")?))
}

/// All table rows satisfied by a T1 tuple. Roots are compared as exact elements of ℚ/ℤ, so
/// auxiliary roots ζ of any order are available regardless of the conductor.
pub fn evaluate_tables(st: &SixTuple) -> Result<Vec<TableMatch>, ClassifyError> {
    let (gamma, beta, alpha) = unit_roots(st)?;
    let (r, i) = canonical(st);
    let env = tuple_env(gamma, beta, alpha, st.liu.n(), st.liu.w(), r, i);
    evaluate_rows(TableCorpus::builtin(), &env)
}

/// The same evaluation carried out with field elements; auxiliary roots must exist in the
/// tuple's field, otherwise the needed order is reported.
pub fn evaluate_tables_in_field(st: &SixTuple) -> Result<Vec<TableMatch>, ClassifyError> {
    if regime(st) == Regime::T2 {
        return Err(ClassifyError::InvalidArgument("table evaluation needs a T1 tuple".into()));
    }
    let (r, i) = canonical(st);
    let env = tuple_env(st.liu.gamma().clone(), st.beta.clone(), st.alpha.clone(), st.liu.n(), st.liu.w(), r, i);
    evaluate_rows(TableCorpus::builtin(), &env)
}

/// Ids of the rank-two diagram families containing the diagram (v1, edge, v2).
pub fn diagram_ids<R: RootArith>(corpus: &TableCorpus, v1: &R, edge: &R, v2: &R) -> Result<Vec<DiagramId>, ClassifyError> {
    let mut out = Vec::new();
    for p in &corpus.patterns {
        if p.matches(v1, edge, v2)?.is_some() {
            out.push(p.id);
        }
    }
    Ok(out)
}

/// Diagram families of a T1 tuple's diagram.
pub fn tuple_diagram_ids(d: &DynkinDiagram) -> Result<Vec<DiagramId>, ClassifyError> {
    let conv = |s: &Scalar| {
        UnitRoot::from_scalar(s).ok_or_else(|| ClassifyError::InvalidArgument(format!("label {s} is not a root of unity")))
    };
    diagram_ids(TableCorpus::builtin(), &conv(&d.v1)?, &conv(&d.edge_label())?, &conv(&d.v2)?)
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub regime: Regime,
    pub finite: bool,
    pub matches: Vec<TableMatch>,
    pub diagram: DynkinDiagram,
    pub module_dim: usize,
    /// For T2: the nonvanishing product that keeps every symmetrizer S_k nonzero on v_i^{⊗k}.
    pub certificate: Option<Scalar>,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn to_json(&self) -> Value {
        json!({
            "regime": self.regime.name(),
            "finite": self.finite,
            "module_dim": self.module_dim,
            "matches": self.matches.iter().map(TableMatch::to_json).collect::<Vec<_>>(),
            "diagram": self.diagram.to_json(),
            "certificate": self.certificate.as_ref().map(|c| c.to_string()),
            "notes": self.notes,
        })
    }
}

pub fn classify(st: &SixTuple) -> Result<Verdict, ClassifyError> {
    let (r, _) = canonical(st);
    let diagram = dynkin(st);
    let dim = module_dim(st);
    let mut verdict = Verdict {
        regime: regime(st),
        finite: false,
        matches: Vec::new(),
        diagram,
        module_dim: dim,
        certificate: None,
        notes: Vec::new(),
    };
    if verdict.regime == Regime::T2 {
        let (c, nonzero) = t2_certificate(&pow(&st.alpha, r), CERTIFICATE_DEGREE);
        if !nonzero {
            verdict.notes.push("certificate product vanished".into());
        }
        verdict.certificate = Some(c);
        return Ok(verdict);
    }
    verdict.matches = evaluate_tables(st)?;
    let v2 = verdict.diagram.v2.clone();
    if dim == 1 {
        verdict.finite = one_dim_finite(&v2);
        verdict.notes.push(format!("one-dimensional braiding {v2}"));
        if verdict.finite == verdict.matches.is_empty() {
            verdict.notes.push("table rows disagree with the one-dimensional rule".into());
        }
        return Ok(verdict);
    }
    verdict.finite = !verdict.matches.is_empty();
    let ids = tuple_diagram_ids(&verdict.diagram)?;
    if verdict.finite != (!ids.is_empty() && !v2.is_one()) {
        verdict.notes.push(format!("diagram families {ids:?} disagree with the table verdict"));
    }
    for m in &verdict.matches {
        for id in &m.ids {
            if !ids.contains(id) {
                let row = &TableCorpus::builtin().rows[m.row];
                let flag = row.flag.as_deref().map(|f| format!(" (flagged: {f})")).unwrap_or_default();
                verdict.notes.push(format!("row {} declares {} but the diagram is not of that family{flag}", m.row, format_id(*id)));
            }
        }
    }
    Ok(verdict)
}

/// Smallest conductor hosting n, the given literal root orders and every auxiliary root
/// order a row admitting n may quantify over.
pub fn session_conductor(n: u32, literal_orders: &[u32]) -> u32 {
    let mut c = 2u32.lcm(&n.max(1));
    for &m in literal_orders.iter().chain(&TableCorpus::builtin().zeta_orders(n)) {
        c = c.lcm(&m.max(1));
    }
    c
}

/// Rejects a conductor missing any order that [`session_conductor`] would include.
pub fn check_conductor(conductor: u32, n: u32, literal_orders: &[u32]) -> Result<(), ClassifyError> {
    let l = 2u32.lcm(&conductor.max(1));
    for &m in std::iter::once(&n).chain(literal_orders).chain(&TableCorpus::builtin().zeta_orders(n)) {
        if !l.is_multiple_of(m.max(1)) {
            return Err(ClassifyError::ConductorTooSmall { order: m, conductor });
        }
    }
    Ok(())
}

/// Dimensions of the Nichols algebra of a line with braiding q: q of order m > 1 gives m ones.
fn line_dims(order: Option<u32>, max_degree: usize) -> Vec<usize> {
    (0..=max_degree).map(|d| match order {
        Some(m) if m > 1 => usize::from(d < m as usize),
        _ => 1,
    }).collect()
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    (0..a.len()).map(|d| (0..=d).map(|k| a[k] * b[d - k]).sum()).collect()
}

#[derive(Debug, Clone)]
pub struct CrossReport {
    pub verdict: Verdict,
    pub degree: usize,
    /// Prefix for the two-dimensional diagonal companion space.
    pub companion: HilbertPrefix,
    /// Prefix for the module itself.
    pub module: HilbertPrefix,
    pub consistent: bool,
    pub notes: Vec<String>,
}

impl CrossReport {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict.to_json(),
            "degree": self.degree,
            "companion": self.companion.to_json(),
            "module": self.module.to_json(),
            "consistent": self.consistent,
            "notes": self.notes,
        })
    }
}

/// Compares a verdict with symmetrizer ranks up to `degree`.
pub fn cross_validate(st: &SixTuple, degree: usize, budget: Budget) -> Result<CrossReport, ClassifyError> {
    if regime(st) != Regime::T1 || st.liu.n() < 2 {
        return Err(ClassifyError::InvalidArgument("cross-validation needs a T1 tuple with n >= 2".into()));
    }
    let verdict = classify(st)?;
    let companion = graded_dims(&companion_space(st)?, degree, budget);
    let v = construct(st)?;
    let module = graded_dims(&braiding_from_yd(&v, st)?, degree, budget);
    let mut notes = Vec::new();
    let mut consistent = true;
    for (name, prefix) in [("companion", &companion), ("module", &module)] {
        let vanishes = prefix.dims.iter().position(|&d| d == 0);
        match (verdict.finite, vanishes) {
            (false, Some(k)) => {
                consistent = false;
                notes.push(format!("{name}: degree {k} vanishes although the verdict is infinite"));
            }
            (true, Some(_)) => notes.push(format!("{name}: finite, total dimension {}", prefix.total())),
            (_, None) => notes.push(format!("{name}: consistent, untested beyond {}", prefix.dims.len() - 1)),
        }
        if let Some(t) = &prefix.truncated {
            notes.push(format!("{name}: truncated at degree {}: {}", t.degree, t.reason));
        }
    }
    if verdict.diagram.edge.is_none() {
        let top = companion.dims.len() - 1;
        let expect = convolve(
            &line_dims(verdict.diagram.v1.root_order(), top),
            &line_dims(verdict.diagram.v2.root_order(), top),
        );
        if expect != companion.dims {
            consistent = false;
            notes.push(format!("companion: disconnected diagram predicts {expect:?}, found {:?}", companion.dims));
        }
    }
    Ok(CrossReport { verdict, degree, companion, module, consistent, notes })
}
