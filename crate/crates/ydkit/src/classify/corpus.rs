//! The classification rows and rank-two diagram patterns, stored as data.

use std::fmt;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use super::expr::{parse_conditions, Atom, Base, Env, Expr, IntVars, RootArith};
use super::ClassifyError;

pub const ROWS_TSV: &str = include_str!("../../data/classification_rows.tsv");
pub const PATTERNS_TSV: &str = include_str!("../../data/rank_two_diagrams.tsv");
pub const ROWS_SHA256: &str = "508edbf939edc2b4d697baa2f2ada66d7ef38da94be2522bc57d75be2d12fdc5";
pub const PATTERNS_SHA256: &str = "90626d45426f5c9f4801d0145857a8bb0e94aa2f527caefdc645f05767c1502c";

/// Diagram id (k, l): row k, position l of the rank-two list.
pub type DiagramId = (u32, u32);

pub fn format_id(id: DiagramId) -> String {
    format!("({},{})", id.0, id.1)
}

fn parse_ids(s: &str) -> Result<Vec<DiagramId>, String> {
    let s = s.trim();
    if s == "-" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| format!("bad id list {s:?}"))?;
        let (inner, tail) = body.split_once(')').ok_or_else(|| format!("bad id list {s:?}"))?;
        let (k, l) = inner.split_once(',').ok_or_else(|| format!("bad id {inner:?}"))?;
        let k = k.trim().parse().map_err(|_| format!("bad id {inner:?}"))?;
        let l = l.trim().parse().map_err(|_| format!("bad id {inner:?}"))?;
        out.push((k, l));
        rest = tail.trim_start_matches(',').trim();
    }
    Ok(out)
}

fn parse_zeta(s: &str) -> Result<Option<u32>, String> {
    match s.trim() {
        "-" => Ok(None),
        m => m.parse().map(Some).map_err(|_| format!("bad zeta order {m:?}")),
    }
}

/// One row of the classification tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    /// Dimension of the module, which is also the table number.
    pub table: u8,
    pub ids: Vec<DiagramId>,
    /// Order of the auxiliary root ζ the row quantifies over.
    pub zeta: Option<u32>,
    pub n_gamma: Vec<Atom>,
    pub beta_i: Vec<Atom>,
    pub alpha_w_r: Vec<Atom>,
    pub flag: Option<String>,
    pub source: String,
}

impl TableRow {
    pub fn conditions(&self) -> impl Iterator<Item = &Atom> {
        self.n_gamma.iter().chain(&self.beta_i).chain(&self.alpha_w_r)
    }

    pub fn ids_text(&self) -> String {
        if self.ids.is_empty() {
            "-".into()
        } else {
            self.ids.iter().map(|&id| format_id(id)).collect::<Vec<_>>().join(",")
        }
    }

    /// Whether the conditions on n alone can hold; conditions like γ = -1 pin n as well.
    pub fn admits_n(&self, n: u32) -> bool {
        let unit = super::expr::UnitRoot::one();
        let mut env = Env::empty(unit);
        env.vars = IntVars { n: n as i64, ..IntVars::default() };
        if !self.n_gamma.iter().filter(|a| matches!(a, Atom::N(..))).all(|a| a.holds(&env)) {
            return false;
        }
        let gamma_only: Vec<&Atom> = self
            .n_gamma
            .iter()
            .filter(|a| !matches!(a, Atom::N(..)) && !a.uses(Base::Zeta) && a.uses(Base::Gamma))
            .collect();
        if gamma_only.is_empty() {
            return true;
        }
        unit.primitive_roots(n).unwrap().into_iter().any(|g| {
            env.gamma = Some(g);
            gamma_only.iter().all(|a| a.holds(&env))
        })
    }

    /// Checks the row with every symbol except ζ bound in `env`; returns the ζ witness
    /// (None for rows without ζ) when the row holds.
    pub fn evaluate<R: RootArith>(&self, env: &Env<R>) -> Result<Option<Option<R>>, ClassifyError> {
        if !self.n_gamma.iter().filter(|a| matches!(a, Atom::N(..))).all(|a| a.holds(env)) {
            return Ok(None);
        }
        match self.zeta {
            None => Ok(self.conditions().all(|a| a.holds(env)).then_some(None)),
            Some(m) => {
                if !self.conditions().filter(|a| !a.uses(Base::Zeta)).all(|a| a.holds(env)) {
                    return Ok(None);
                }
                let mut env = env.clone();
                for z in env.unit.primitive_roots(m)? {
                    env.zeta = Some(z.clone());
                    if self.conditions().all(|a| a.holds(&env)) {
                        return Ok(Some(Some(z)));
                    }
                }
                Ok(None)
            }
        }
    }
}

/// Vertex or edge label of a diagram pattern; `*` matches anything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Label {
    Any,
    Is(Expr),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Any => f.write_str("*"),
            Label::Is(e) => write!(f, "{e}"),
        }
    }
}

/// A rank-two diagram family: labels in a free parameter q and/or a root ζ of fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramPattern {
    pub id: DiagramId,
    pub zeta: Option<u32>,
    pub v1: Label,
    pub edge: Label,
    pub v2: Label,
    pub conditions: Vec<Atom>,
}

impl DiagramPattern {
    /// Whether the diagram (a, e, b) (edge label 1 when absent) belongs to the family,
    /// trying both vertex orders. Returns the (q, ζ) witness.
    pub fn matches<R: RootArith>(&self, a: &R, e: &R, b: &R) -> Result<Option<(Option<R>, Option<R>)>, ClassifyError> {
        let unit = a.unit();
        let zetas = match self.zeta {
            Some(m) => unit.primitive_roots(m)?.into_iter().map(Some).collect(),
            None => vec![None],
        };
        let labels = [&self.v1, &self.edge, &self.v2];
        for (x, y) in [(a, b), (b, a)] {
            let values = [x, e, y];
            for z in &zetas {
                let mut env = Env::empty(unit.clone());
                env.zeta = z.clone();
                let mut candidates: Vec<Option<R>> = Vec::new();
                for (label, value) in labels.iter().zip(values) {
                    if let Label::Is(expr) = label {
                        if let Some(s @ (1 | -1)) = expr.q_exponent() {
                            env.q = Some(unit.clone());
                            let rest = expr.eval(&env);
                            let q = value.times(&rest.power(-1)).power(s);
                            if !candidates.contains(&Some(q.clone())) {
                                candidates.push(Some(q));
                            }
                        }
                    }
                }
                if candidates.is_empty() {
                    candidates.push(None);
                }
                for q in candidates {
                    env.q = q.clone().or_else(|| Some(unit.clone()));
                    let fits = labels.iter().zip(values).all(|(label, value)| match label {
                        Label::Any => true,
                        Label::Is(expr) => expr.eval(&env) == *value,
                    });
                    if fits && self.conditions.iter().all(|c| c.holds(&env)) {
                        return Ok(Some((q, z.clone())));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// The parsed classification corpus.
#[derive(Debug, Clone)]
pub struct TableCorpus {
    pub rows: Vec<TableRow>,
    pub patterns: Vec<DiagramPattern>,
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Rejects texts whose digest differs from the pinned one.
pub fn check_integrity(name: &str, text: &str, pinned: &str) -> Result<(), ClassifyError> {
    let found = sha256_hex(text);
    if found != pinned {
        return Err(ClassifyError::Integrity { file: name.to_string(), expected: pinned.to_string(), found });
    }
    Ok(())
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(k, l)| (k + 1, l)).filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

pub fn parse_rows(text: &str) -> Result<Vec<TableRow>, ClassifyError> {
    let mut rows = Vec::new();
    for (line, l) in data_lines(text) {
        let err = |message: String| ClassifyError::Corpus { line, message };
        let cols: Vec<&str> = l.split('\t').collect();
        if cols.len() != 7 {
            return Err(err(format!("expected 7 columns, found {}", cols.len())));
        }
        let table: u8 = cols[0].trim().parse().map_err(|_| err("bad table number".into()))?;
        if !(1..=6).contains(&table) {
            return Err(err(format!("table {table} out of range")));
        }
        let row = TableRow {
            table,
            ids: parse_ids(cols[1]).map_err(err)?,
            zeta: parse_zeta(cols[2]).map_err(err)?,
            n_gamma: parse_conditions(cols[3]).map_err(err)?,
            beta_i: parse_conditions(cols[4]).map_err(err)?,
            alpha_w_r: parse_conditions(cols[5]).map_err(err)?,
            flag: (cols[6].trim() != "-").then(|| cols[6].trim().to_string()),
            source: cols[1..6].join("\t"),
        };
        if row.zeta.is_none() && row.conditions().any(|a| a.uses(Base::Zeta)) {
            return Err(err("zeta used without an order".into()));
        }
        if row.conditions().any(|a| a.uses(Base::Q)) {
            return Err(err("q is reserved for diagram patterns".into()));
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_patterns(text: &str) -> Result<Vec<DiagramPattern>, ClassifyError> {
    let mut out = Vec::new();
    for (line, l) in data_lines(text) {
        let err = |message: String| ClassifyError::Corpus { line, message };
        let cols: Vec<&str> = l.split('\t').collect();
        if cols.len() != 6 {
            return Err(err(format!("expected 6 columns, found {}", cols.len())));
        }
        let ids = parse_ids(cols[0]).map_err(err)?;
        let [id] = ids.as_slice() else {
            return Err(err("one id per pattern".into()));
        };
        let label = |s: &str| -> Result<Label, ClassifyError> {
            match s.trim() {
                "*" => Ok(Label::Any),
                t => Expr::parse(t).map(Label::Is).map_err(err),
            }
        };
        out.push(DiagramPattern {
            id: *id,
            zeta: parse_zeta(cols[1]).map_err(err)?,
            v1: label(cols[2])?,
            edge: label(cols[3])?,
            v2: label(cols[4])?,
            conditions: parse_conditions(cols[5]).map_err(err)?,
        });
    }
    Ok(out)
}

impl TableCorpus {
    /// Parses corpus texts after checking them against the pinned digests.
    pub fn load(rows: &str, patterns: &str) -> Result<TableCorpus, ClassifyError> {
        check_integrity("classification_rows.tsv", rows, ROWS_SHA256)?;
        check_integrity("rank_two_diagrams.tsv", patterns, PATTERNS_SHA256)?;
        Ok(TableCorpus { rows: parse_rows(rows)?, patterns: parse_patterns(patterns)? })
    }

    /// The corpus compiled into the library.
    pub fn builtin() -> &'static TableCorpus {
        static CORPUS: OnceLock<TableCorpus> = OnceLock::new();
        CORPUS.get_or_init(|| TableCorpus::load(ROWS_TSV, PATTERNS_TSV).expect("built-in corpus is intact"))
    }

    pub fn pattern(&self, id: DiagramId) -> Option<&DiagramPattern> {
        self.patterns.iter().find(|p| p.id == id)
    }

    /// Orders of the auxiliary roots needed by rows that can apply for this n.
    pub fn zeta_orders(&self, n: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self.rows.iter().filter(|r| r.admits_n(n)).filter_map(|r| r.zeta).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// TSV listing: table, ids, ζ order, the three condition columns, flag.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("table\tids\tzeta\tn,gamma\tbeta,i\talpha,w,r\tflag\n");
        for row in &self.rows {
            let join = |atoms: &[Atom]| {
                if atoms.is_empty() {
                    "-".to_string()
                } else {
                    atoms.iter().map(|a| a.to_string()).collect::<Vec<_>>().join("; ")
                }
            };
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                row.table,
                row.ids_text(),
                row.zeta.map_or("-".to_string(), |m| m.to_string()),
                join(&row.n_gamma),
                join(&row.beta_i),
                join(&row.alpha_w_r),
                row.flag.as_deref().unwrap_or("-")
            ));
        }
        s
    }
}
