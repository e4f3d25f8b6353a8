//! The acceptance suite: ten exact checks across the library, one report line each.

use std::fmt;
use std::time::Duration;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use web_time::Instant;

use crate::classify::sample::realize_row;
use crate::classify::{classify, format_id, session_conductor, Regime, TableCorpus};
use crate::coefficients::{build_comatrix, is_comatrix, CoeffParams};
use crate::hopf::{Liu, Monomial};
use crate::nichols::{braiding_from_yd, graded_dims, index_monotonicity_check, t2_certificate, BraidedSpace, Budget};
use crate::scalars::Scalar;
use crate::yd::{construct, is_isomorphic, verify_comodule, verify_compatibility, verify_module, ModuleParams};

pub const CRITERIA: [(u8, &str, u64); 10] = [
    (1, "hopf axioms on sampled monomials and products", 30),
    (2, "closed forms agree with recursions", 60),
    (3, "coefficient matrices are comatrices", 120),
    (4, "constructed modules verify, dimension formula", 120),
    (5, "isomorphism under group-like shift", 60),
    (6, "one-dimensional Nichols algebras", 5),
    (7, "disconnected two-dimensional prefixes", 30),
    (8, "table engine spot checks", 60),
    (9, "transcendental regime stays infinite", 300),
    (10, "symmetrizers never raise total index", 60),
];

/// Limits and inputs shared by all criteria.
#[derive(Debug, Clone)]
#[derive(Default)]
pub struct SuiteConfig {
    /// Caps the degrees used by the rank computations; checks beyond it are reported untested.
    pub degree: Option<usize>,
    pub budget: Budget,
    pub seed: u64,
    pub corpus: Option<TableCorpus>,
}


impl SuiteConfig {
    fn corpus(&self) -> &TableCorpus {
        self.corpus.as_ref().unwrap_or_else(|| TableCorpus::builtin())
    }

    /// Requested degree, capped; the note is set when the cap bites.
    fn degree(&self, wanted: usize, notes: &mut Vec<String>) -> usize {
        match self.degree {
            Some(d) if d < wanted => {
                notes.push(format!("untested beyond {d}"));
                d
            }
            _ => wanted,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub notes: Vec<String>,
    pub elapsed: Duration,
    pub target: Duration,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} {}: {} ({:.2}s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )?;
        for n in &self.notes {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

struct Fail(String);

impl<E: fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

type Check = Result<String, Fail>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(Fail(format!($($msg)+)));
        }
    };
}

pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> Option<CriterionOutcome> {
    let &(_, title, target) = CRITERIA.iter().find(|c| c.0 == id)?;
    let mut notes = Vec::new();
    let start = Instant::now();
    let result = match id {
        1 => hopf_axioms(cfg),
        2 => closed_forms(),
        3 => comatrices(),
        4 => modules(),
        5 => isomorphism(cfg),
        6 => one_dimensional(cfg, &mut notes),
        7 => disconnected(cfg, &mut notes),
        8 => table_engine(cfg, &mut notes),
        9 => transcendental(cfg, &mut notes),
        _ => index_monotonicity(cfg),
    };
    let elapsed = start.elapsed();
    let target = Duration::from_secs(target);
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(Fail(d)) => (false, d),
    };
    if passed && elapsed > target {
        passed = false;
        detail = format!("{detail}; runtime over the {}s target", target.as_secs());
    }
    Some(CriterionOutcome { id, title, passed, detail, notes, elapsed, target })
}

pub fn run_all(cfg: &SuiteConfig) -> Vec<CriterionOutcome> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0, cfg)).collect()
}

fn coprime_residues(n: u32) -> Vec<i64> {
    (1..=n as i64).filter(|k| k.gcd(&(n as i64)) == 1).collect()
}

fn algebra(conductor: u32, n: u32, w: u32, k: i64) -> Result<Liu, Fail> {
    Ok(Liu::new(n, w, Scalar::root_in(conductor, n, k)?)?)
}

fn hopf_axioms(cfg: &SuiteConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut checked = 0;
    for n in [2u32, 3, 4, 6] {
        for w in [1u32, 2, 3] {
            let sample: Vec<Monomial> = (0..50)
                .map(|_| Monomial::new(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(-(w as i64)..=w as i64)))
                .collect();
            for k in coprime_residues(n) {
                let h = algebra(2u32.lcm(&n), n, w, k)?;
                for (idx, m) in sample.iter().enumerate() {
                    let u = h.mono(*m);
                    let v = h.mono(sample[(idx + 1) % sample.len()]);
                    let uv = h.mul(&u, &v)?;
                    for e in [&u, &uv] {
                        let report = h.hopf_axiom_check(e)?;
                        ensure!(report.passed(), "n={n} w={w} γ^{k}: {e}: {:?}", report.failures);
                    }
                    ensure!(h.comul(&uv)? == h.tensor_mul(&h.comul(&u)?, &h.comul(&v)?)?, "n={n} w={w}: Δ not multiplicative on {u}·{v}");
                    ensure!(h.counit(&uv) == &h.counit(&u) * &h.counit(&v), "n={n} w={w}: ε not multiplicative on {u}·{v}");
                    ensure!(h.antipode(&uv)? == h.mul(&h.antipode(&v)?, &h.antipode(&u)?)?, "n={n} w={w}: S not antimultiplicative on {u}·{v}");
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} monomial/product pairs over 21 algebras"))
}

/// β over {γ^j} ∪ {a primitive 2n-th root} ∪ {t}, with r ∈ {0,1} and i ∈ [0,n).
fn coefficient_grid() -> Result<Vec<CoeffParams>, Fail> {
    let mut out = Vec::new();
    for n in 1..=6u32 {
        let conductor = 2 * n;
        for k in coprime_residues(n) {
            let h = algebra(conductor, n, 1, k)?;
            let mut betas: Vec<Scalar> = (0..n as i64).map(|j| h.gamma_pow(j)).collect();
            betas.push(Scalar::root(conductor, 1));
            betas.push(Scalar::t(conductor));
            for beta in &betas {
                for i in 0..n as i64 {
                    for r in 0..2 {
                        out.push(CoeffParams::new(h.clone(), beta.clone(), r, i)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn closed_forms() -> Check {
    let grid = coefficient_grid()?;
    for p in &grid {
        let n = p.liu.n();
        let tag = || format!("n={n} γ={} β={} i={} r={}", p.liu.gamma(), p.beta, p.i, p.r);
        let rows = p.c_rows_recursive(n + 2)?;
        for k in 0..=n + 2 {
            for l in 0..=k {
                ensure!(p.lambda_explicit(k, l)? == p.lambda_recursive(k, l)?, "{}: λ({k},{l})", tag());
                ensure!(p.c_coeff(k, l)? == rows[k as usize][l as usize], "{}: c({k},{l})", tag());
            }
        }
        let anchor = &p.beta.pow(n as i64)? - &p.beta.one_like();
        ensure!(p.lambda_explicit(n, 0)? == anchor, "{}: λ(n,0) ≠ β^n - 1", tag());
    }
    Ok(format!("{} grid points, 0 <= l <= k <= n+2", grid.len()))
}

fn comatrices() -> Check {
    let grid = coefficient_grid()?;
    let mut built = 0;
    for p in &grid {
        for size in 0..=p.liu.n() {
            let m = build_comatrix(p, size)?;
            if let Some(f) = is_comatrix(&m, &p.liu)? {
                return Err(Fail(format!("n={} β={} i={} r={} p={size}: {f}", p.liu.n(), p.beta, p.i, p.r)));
            }
            built += 1;
        }
    }
    let mut caught = 0;
    for p in grid.iter().filter(|p| p.liu.n() >= 2) {
        // a y-term with the group-like part of the diagonal instead of the next one
        let mut m = build_comatrix(p, 1)?;
        m.entries[1][0] = m.entries[1][0].add(&p.liu.normalize(1, p.i, p.r));
        ensure!(is_comatrix(&m, &p.liu)?.is_some(), "mutation accepted at n={} β={} i={}", p.liu.n(), p.beta, p.i);
        caught += 1;
    }
    Ok(format!("{built} comatrices pass, {caught} mutations rejected"))
}

fn phi_oracle(e: i64, n: u32) -> u32 {
    match e.rem_euclid(n as i64) as u32 {
        0 => n,
        v => v,
    }
}

fn modules() -> Check {
    let mut count = 0;
    for n in 1..=6u32 {
        let conductor = 2 * n;
        for k in coprime_residues(n) {
            let h = algebra(conductor, n, 1, k)?;
            let mut betas: Vec<(Scalar, Option<i64>)> = (0..n as i64).map(|j| (h.gamma_pow(j), Some(j))).collect();
            betas.push((Scalar::root(conductor, 1), None));
            betas.push((Scalar::t(conductor), None));
            for (beta, j) in &betas {
                let alpha = beta.pow(n as i64)?;
                for i in 0..n as i64 {
                    for r in 0..2 {
                        let p = ModuleParams::new(h.clone(), alpha.clone(), beta.clone(), r, i)?;
                        let tag = format!("n={n} γ={} β={beta} i={i} r={r}", h.gamma());
                        let v = construct(&p)?;
                        let mut report = verify_module(&v, &p);
                        report.merge(verify_comodule(&v, &p)?);
                        report.merge(verify_compatibility(&v, &p)?);
                        ensure!(report.passed(), "{tag}: {:?}", report.failures);
                        let expect = match j {
                            Some(j) => (n - phi_oracle(-i - j, n) + 1) as usize,
                            None => n as usize,
                        };
                        ensure!(v.dim == expect, "{tag}: dimension {} expected {expect}", v.dim);
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{count} modules verified"))
}

/// Same α, β and (r - r', i - i') an integer multiple of (w, -n).
fn iso_oracle(p: &ModuleParams, q: &ModuleParams) -> bool {
    let (n, w) = (p.liu.n() as i64, p.liu.w() as i64);
    let (dr, di) = (q.r - p.r, q.i - p.i);
    p.alpha == q.alpha && p.beta == q.beta && dr % w == 0 && di == -(dr / w) * n
}

fn isomorphism(cfg: &SuiteConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(5));
    let mut negatives = 0;
    for _ in 0..100 {
        let n = rng.gen_range(2..=6u32);
        let w = rng.gen_range(1..=4u32);
        let l = (2 * n * w).lcm(&2);
        let h = algebra(l, n, w, *coprime_residues(n).choose(&mut rng).unwrap())?;
        let (alpha, beta) = if rng.gen_bool(0.2) {
            let t = Scalar::t(l);
            (t.pow(n as i64)?, t.pow(w as i64)?)
        } else {
            let b: i64 = rng.gen_range(0..l as i64);
            let c: i64 = rng.gen_range(0..w as i64);
            (Scalar::root(l, b * n as i64 + c * (l / w) as i64), Scalar::root(l, b * w as i64))
        };
        let (r, i) = (rng.gen_range(-5..=5i64), rng.gen_range(-5..=5i64));
        let p = ModuleParams::new(h.clone(), alpha.clone(), beta.clone(), r, i)?;
        let shifted = ModuleParams::new(h.clone(), alpha.clone(), beta.clone(), r + w as i64, i - n as i64)?;
        ensure!(is_isomorphic(&p, &shifted) && iso_oracle(&p, &shifted), "shift not isomorphic: n={n} w={w} r={r} i={i}");
        let mut changed = vec![
            ModuleParams::new(h.clone(), alpha.clone(), &beta * h.gamma(), r, i)?,
            ModuleParams::new(h.clone(), alpha.clone(), beta.clone(), r, i + 1)?,
            ModuleParams::new(h.clone(), alpha.clone(), beta.clone(), r + 1, i)?,
        ];
        if w >= 2 {
            changed.push(ModuleParams::new(h.clone(), &alpha * &Scalar::root_in(l, w, 1)?, beta.clone(), r, i)?);
        }
        for q in &changed {
            ensure!(!is_isomorphic(&p, q) && !iso_oracle(&p, q), "single change still isomorphic: n={n} w={w} r={r} i={i}");
            negatives += 1;
        }
    }
    Ok(format!("100 shifted pairs isomorphic, {negatives} single changes not"))
}

fn line(q: Scalar) -> Result<BraidedSpace, Fail> {
    Ok(BraidedSpace::diagonal(&[vec![q]])?)
}

fn one_dimensional(cfg: &SuiteConfig, notes: &mut Vec<String>) -> Check {
    for m in [2u32, 3, 4, 6] {
        let top = cfg.degree(m as usize, notes);
        let dims = graded_dims(&line(Scalar::root(m.lcm(&2), (m.lcm(&2) / m) as i64))?, top, cfg.budget).dims;
        let expect: Vec<usize> = (0..=top).map(|d| usize::from(d < m as usize)).collect();
        ensure!(dims == expect, "q of order {m}: {dims:?}");
    }
    let top = cfg.degree(8, notes);
    let dims = graded_dims(&line(Scalar::one(2))?, top, cfg.budget).dims;
    ensure!(dims.iter().all(|&d| d == 1) && dims.len() == top + 1, "q = 1: {dims:?}");
    notes.dedup();
    Ok("roots of order 2, 3, 4, 6 truncate at their order; q = 1 never truncates".into())
}

fn convolve_lines(m1: usize, m2: usize, top: usize) -> Vec<usize> {
    (0..=top).map(|d| (0..=d).filter(|&a| a < m1 && d - a < m2).count()).collect()
}

fn disconnected(cfg: &SuiteConfig, notes: &mut Vec<String>) -> Check {
    let top = cfg.degree(3, notes);
    let mut out = Vec::new();
    for (m1, m2) in [(2u32, 2u32), (2, 3)] {
        let c = (m1 * m2).lcm(&2) * 2;
        let q12 = Scalar::root(c, 1);
        let q = vec![
            vec![Scalar::root(c, (c / m1) as i64), q12.clone()],
            vec![q12.inv()?, Scalar::root(c, (c / m2) as i64)],
        ];
        let dims = graded_dims(&BraidedSpace::diagonal(&q)?, top, cfg.budget).dims;
        let expect = convolve_lines(m1 as usize, m2 as usize, top);
        ensure!(dims == expect, "orders ({m1},{m2}): prefix {dims:?}, lines give {expect:?}");
        let total: usize = dims.iter().sum();
        if top >= 3 {
            ensure!(total == (m1 * m2) as usize, "orders ({m1},{m2}): total {total}");
        }
        out.push(format!("({m1},{m2}) total {total}"));
    }
    Ok(out.join(", "))
}

fn pattern_conductor(corpus: &TableCorpus, ids: &[(u32, u32)], base: u32) -> u32 {
    ids.iter().filter_map(|&id| corpus.pattern(id).and_then(|p| p.zeta)).fold(base, |c, m| c.lcm(&m))
}

/// Largest conductor used for sampled instances.
const SAMPLE_CONDUCTOR_LIMIT: u32 = 120;

fn table_engine(cfg: &SuiteConfig, notes: &mut Vec<String>) -> Check {
    let corpus = cfg.corpus();
    let m1 = Scalar::from_int(2, -1);
    let p = ModuleParams::new(Liu::new(2, 2, m1.clone())?, m1.clone(), m1.clone(), 1, 0)?;
    let v = classify(&p)?;
    ensure!(v.finite && v.matches.iter().any(|m| m.ids.contains(&(2, 1))), "the (2,1) instance: {:?}", v.to_json());

    // β = γ^{-i}, α^r γ^{-i²} = 1
    let h = algebra(6, 3, 3, 1)?;
    let p = ModuleParams::new(h.clone(), h.gamma().clone(), h.gamma_pow(-1), 1, 1)?;
    let v = classify(&p)?;
    ensure!(v.regime == Regime::T1 && !v.finite && v.matches.is_empty(), "the (1,1) negative instance: {:?}", v.to_json());

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(8));
    let mut queues: Vec<Vec<usize>> = (1..=6u8)
        .map(|t| {
            let mut rows: Vec<usize> = (0..corpus.rows.len()).filter(|&k| corpus.rows[k].table == t).collect();
            rows.shuffle(&mut rng);
            rows
        })
        .collect();
    let mut sampled = 0;
    let mut skipped = 0;
    while sampled < 20 && queues.iter().any(|q| !q.is_empty()) {
        for queue in queues.iter_mut() {
            if sampled == 20 {
                break;
            }
            let Some(k) = queue.pop() else { continue };
            let row = &corpus.rows[k];
            let inst = realize_row(corpus, k, 30).ok_or_else(|| Fail(format!("row {k} has no instance with n <= 30")))?;
            let conductor = pattern_conductor(corpus, &row.ids, session_conductor(inst.n, &[inst.conductor()]));
            if conductor > SAMPLE_CONDUCTOR_LIMIT {
                skipped += 1;
                continue;
            }
            let p = inst.to_tuple(conductor)?;
            let v = classify(&p)?;
            let tag = format!("table {} row {} {}", row.table, row.ids_text(), row.source);
            ensure!(v.finite && v.matches.iter().any(|m| m.row == k), "{tag}: instance does not classify through its row");
            let d = &v.diagram;
            for &id in &row.ids {
                let pattern = corpus.pattern(id).ok_or_else(|| Fail(format!("{tag}: no pattern {}", format_id(id))))?;
                let hit = pattern.matches(&d.v1, &d.edge_label(), &d.v2)?;
                ensure!(hit.is_some(), "{tag}: diagram {} is not of family {}", d.to_json(), format_id(id));
            }
            sampled += 1;
        }
    }
    ensure!(sampled == 20, "only {sampled} rows realizable within conductor {SAMPLE_CONDUCTOR_LIMIT}");
    if skipped > 0 {
        notes.push(format!("{skipped} rows need a conductor above {SAMPLE_CONDUCTOR_LIMIT}"));
    }
    Ok(format!("(2,1) finite, (1,1) negative infinite, {sampled} sampled rows match their diagram families"))
}

fn transcendental(cfg: &SuiteConfig, notes: &mut Vec<String>) -> Check {
    let top = cfg.degree(5, notes);
    for (n, w) in [(2u32, 1u32), (2, 2), (3, 1)] {
        let c = 2 * n;
        let t = Scalar::t(c);
        let p = ModuleParams::new(algebra(c, n, w, 1)?, t.pow(n as i64)?, t.pow(w as i64)?, 1, 0)?;
        let v = classify(&p)?;
        ensure!(v.regime == Regime::T2 && !v.finite && v.certificate.is_some(), "(n,w)=({n},{w}): {:?}", v.to_json());
        for m in 1..=10 {
            ensure!(t2_certificate(&p.alpha, m).1, "(n,w)=({n},{w}): product vanishes at m={m}");
        }
        if n == 2 {
            let space = braiding_from_yd(&construct(&p)?, &p)?;
            let prefix = graded_dims(&space, top, cfg.budget);
            ensure!(prefix.truncated.is_none(), "(n,w)=({n},{w}): {:?}", prefix.truncated);
            ensure!(prefix.dims.iter().all(|&d| d >= 1), "(n,w)=({n},{w}): prefix {:?}", prefix.dims);
        }
    }
    Ok(format!("three tuples infinite, certificates nonzero to m=10, module prefixes positive to degree {top}"))
}

fn index_monotonicity(cfg: &SuiteConfig) -> Check {
    let mut count = 0;
    for n in 1..=3u32 {
        let conductor = 2 * n;
        for k in coprime_residues(n) {
            let h = algebra(conductor, n, 1, k)?;
            let mut betas: Vec<Scalar> = (0..n as i64).map(|j| h.gamma_pow(j)).collect();
            betas.push(Scalar::root(conductor, 1));
            betas.push(Scalar::t(conductor));
            for beta in &betas {
                for i in 0..n as i64 {
                    let p = ModuleParams::new(h.clone(), beta.pow(n as i64)?, beta.clone(), 1, i)?;
                    let space = braiding_from_yd(&construct(&p)?, &p)?;
                    for deg in 1..=3 {
                        let bad = index_monotonicity_check(&space, deg, cfg.budget.max_rows)?;
                        ensure!(bad.is_empty(), "n={n} β={beta} i={i} k={deg}: {:?}", bad[0]);
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} modules, degrees 1..3"))
}
