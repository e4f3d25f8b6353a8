//! Simple Yetter-Drinfeld modules V(α, β, x^r g^i) over B(n,w,γ).
//!
//! Basis v_0, ..., v_m with x·v_k = α v_k, g·v_k = βγ^{-k} v_k,
//! y·v_k = v_{k+1} (k < m), y·v_m = (1 - β^n) v_0, and coaction
//! δ(v_k) = Σ_l c(k,l) ⊗ v_l.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::coefficients::{gamma_exponent, is_comatrix, phi, CoeffParams, ComatrixData};
use crate::hopf::{AxiomReport, HopfElement, HopfError, Liu, Monomial};
use crate::linalg::SparseMatrix;
use crate::scalars::Scalar;

#[derive(Debug, Clone)]
pub struct ModuleParams {
    pub liu: Liu,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub r: i64,
    pub i: i64,
}

impl ModuleParams {
    /// Requires α, β nonzero and α^w = β^n.
    pub fn new(liu: Liu, alpha: Scalar, beta: Scalar, r: i64, i: i64) -> Result<ModuleParams, HopfError> {
        let conductor = liu.conductor();
        for s in [&alpha, &beta] {
            if s.conductor() != conductor {
                return Err(HopfError::ConductorMismatch { expected: conductor, found: s.conductor() });
            }
            if s.is_zero() {
                return Err(HopfError::InvalidParams("alpha and beta must be nonzero".into()));
            }
        }
        if alpha.pow(liu.w() as i64)? != beta.pow(liu.n() as i64)? {
            return Err(HopfError::InvalidParams(format!(
                "alpha^w = beta^n fails for alpha = {alpha}, beta = {beta}, n = {}, w = {}",
                liu.n(),
                liu.w()
            )));
        }
        Ok(ModuleParams { liu, alpha, beta, r, i })
    }

    pub fn coeff_params(&self) -> CoeffParams {
        CoeffParams::new(self.liu.clone(), self.beta.clone(), self.r, self.i).expect("validated parameters")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.liu.n(),
            "w": self.liu.w(),
            "gamma": self.liu.gamma().to_json(),
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "r": self.r,
            "i": self.i,
        })
    }

    pub fn from_json(v: &Value) -> Result<ModuleParams, HopfError> {
        let bad = |m: &str| HopfError::InvalidParams(format!("module parameters: {m}"));
        let int = |k: &str| v.get(k).and_then(Value::as_i64).ok_or_else(|| bad(&format!("missing integer {k}")));
        let scalar = |k: &str| -> Result<Scalar, HopfError> {
            Ok(Scalar::from_json(v.get(k).ok_or_else(|| bad(&format!("missing {k}")))?)?)
        };
        let liu = Liu::new(int("n")? as u32, int("w")? as u32, scalar("gamma")?)?;
        ModuleParams::new(liu, scalar("alpha")?, scalar("beta")?, int("r")?, int("i")?)
    }
}

/// (r + w·floor(i/n), i mod n), so x^r g^i = x^{r'} g^{i'} with 0 <= i' < n.
pub fn canonical_grouplike(r: i64, i: i64, n: u32, w: u32) -> (i64, i64) {
    let n = n as i64;
    (r + w as i64 * i.div_euclid(n), i.rem_euclid(n))
}

/// m + 1, with m = n - φ(-i-j) when β = γ^j and m = n - 1 when β^n ≠ 1.
pub fn module_dim(params: &ModuleParams) -> usize {
    let n = params.liu.n();
    match gamma_exponent(&params.liu, &params.beta) {
        Some(j) => (n - phi(-params.i - j as i64, n)) as usize + 1,
        None => n as usize,
    }
}

/// Equal α, β and canonical group-like over the same algebra.
pub fn is_isomorphic(p1: &ModuleParams, p2: &ModuleParams) -> bool {
    let (a, b) = (&p1.liu, &p2.liu);
    if a.n() != b.n() || a.w() != b.w() || a.gamma() != b.gamma() {
        return false;
    }
    p1.alpha == p2.alpha
        && p1.beta == p2.beta
        && canonical_grouplike(p1.r, p1.i, a.n(), a.w()) == canonical_grouplike(p2.r, p2.i, b.n(), b.w())
}

/// A Yetter-Drinfeld module in a basis where x and g act diagonally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YDModule {
    pub dim: usize,
    pub x_action: Vec<Scalar>,
    pub g_action: Vec<Scalar>,
    /// Column k is y·v_k.
    pub y_action: SparseMatrix,
    /// δ(v_k) = Σ h ⊗ v_l over the listed (h, l).
    pub coaction: Vec<Vec<(HopfElement, usize)>>,
}

pub fn construct(params: &ModuleParams) -> Result<YDModule, HopfError> {
    let h = &params.liu;
    let conductor = h.conductor();
    let dim = module_dim(params);
    let m = dim - 1;
    let x_action = vec![params.alpha.clone(); dim];
    let g_action: Vec<Scalar> = (0..dim).map(|k| &params.beta * &h.gamma_pow(-(k as i64))).collect();
    let mut y_action = SparseMatrix::zero(conductor, dim, dim);
    for k in 0..m {
        y_action.set(k + 1, k, Scalar::from_int(conductor, 1));
    }
    let wrap = &params.beta.one_like() - &params.beta.pow(h.n() as i64)?;
    y_action.add_at(0, m, &wrap);
    let cp = params.coeff_params();
    let mut coaction = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut row = Vec::new();
        for l in 0..=k {
            let c = cp.c_coeff(k as u32, l as u32)?;
            if !c.is_zero() {
                row.push((c, l));
            }
        }
        coaction.push(row);
    }
    Ok(YDModule { dim, x_action, g_action, y_action, coaction })
}

impl YDModule {
    pub fn conductor(&self) -> u32 {
        self.y_action.conductor()
    }

    pub fn x_matrix(&self) -> SparseMatrix {
        SparseMatrix::diagonal(self.conductor(), &self.x_action)
    }

    pub fn g_matrix(&self) -> SparseMatrix {
        SparseMatrix::diagonal(self.conductor(), &self.g_action)
    }

    /// The matrix by which a Hopf element acts.
    pub fn action_matrix(&self, u: &HopfElement) -> Result<SparseMatrix, HopfError> {
        let conductor = self.conductor();
        let mut out = SparseMatrix::zero(conductor, self.dim, self.dim);
        let mut y_powers = vec![SparseMatrix::identity(conductor, self.dim)];
        for (m, coeff) in u.terms() {
            while y_powers.len() <= m.a as usize {
                let next = self.y_action.mul(y_powers.last().unwrap());
                y_powers.push(next);
            }
            let diag: Result<Vec<Scalar>, HopfError> = (0..self.dim)
                .map(|k| {
                    let xv = self.x_action[k].pow(m.c)?;
                    let gv = self.g_action[k].pow(m.b as i64)?;
                    Ok(&(&xv * &gv) * coeff)
                })
                .collect();
            let term = y_powers[m.a as usize].mul(&SparseMatrix::diagonal(conductor, &diag?));
            out = out.add(&term);
        }
        Ok(out)
    }

    /// The coaction as a lower-triangular comatrix.
    pub fn coaction_matrix(&self) -> ComatrixData {
        let mut entries = vec![vec![HopfElement::zero(); self.dim]; self.dim];
        for (k, row) in self.coaction.iter().enumerate() {
            for (h, l) in row {
                entries[k][*l] = entries[k][*l].add(h);
            }
        }
        ComatrixData { p: self.dim.saturating_sub(1) as u32, entries }
    }

    /// Block-diagonal direct sum; basis of `other` follows that of `self`.
    pub fn direct_sum(&self, other: &YDModule) -> YDModule {
        let dim = self.dim + other.dim;
        let mut y_action = SparseMatrix::zero(self.conductor(), dim, dim);
        for (src, off) in [(self, 0), (other, self.dim)] {
            for r in 0..src.dim {
                for (c, v) in src.y_action.row(r) {
                    y_action.set(r + off, c + off, v.clone());
                }
            }
        }
        let mut coaction = self.coaction.clone();
        for row in &other.coaction {
            coaction.push(row.iter().map(|(h, l)| (h.clone(), l + self.dim)).collect());
        }
        YDModule {
            dim,
            x_action: [self.x_action.clone(), other.x_action.clone()].concat(),
            g_action: [self.g_action.clone(), other.g_action.clone()].concat(),
            y_action,
            coaction,
        }
    }

    pub fn to_json(&self) -> Value {
        let scalars = |v: &[Scalar]| Value::Array(v.iter().map(Scalar::to_json).collect());
        let y: Vec<Value> = self.y_action.to_dense().iter().map(|row| scalars(row)).collect();
        let coaction: Vec<Value> = self
            .coaction
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|(h, l)| json!({"target": l, "element": h.to_json(), "rendered": h.to_string()}))
                        .collect(),
                )
            })
            .collect();
        json!({
            "dim": self.dim,
            "x_action": scalars(&self.x_action),
            "g_action": scalars(&self.g_action),
            "y_action": y,
            "coaction": coaction,
        })
    }

    pub fn from_json(v: &Value, conductor: u32) -> Result<YDModule, HopfError> {
        let bad = |m: &str| HopfError::InvalidParams(format!("module json: {m}"));
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("missing dim"))? as usize;
        let scalar_list = |k: &str| -> Result<Vec<Scalar>, HopfError> {
            let arr = v.get(k).and_then(Value::as_array).ok_or_else(|| bad(&format!("missing {k}")))?;
            let out: Result<Vec<Scalar>, HopfError> = arr.iter().map(|s| Ok(Scalar::from_json(s)?)).collect();
            let out = out?;
            if out.len() != dim {
                return Err(bad(&format!("{k} has wrong length")));
            }
            Ok(out)
        };
        let x_action = scalar_list("x_action")?;
        let g_action = scalar_list("g_action")?;
        let rows = v.get("y_action").and_then(Value::as_array).ok_or_else(|| bad("missing y_action"))?;
        if rows.len() != dim {
            return Err(bad("y_action has wrong size"));
        }
        let mut y_action = SparseMatrix::zero(conductor, dim, dim);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_array().filter(|a| a.len() == dim).ok_or_else(|| bad("y_action row"))?;
            for (c, s) in row.iter().enumerate() {
                y_action.set(r, c, Scalar::from_json(s)?);
            }
        }
        let co = v.get("coaction").and_then(Value::as_array).ok_or_else(|| bad("missing coaction"))?;
        if co.len() != dim {
            return Err(bad("coaction has wrong size"));
        }
        let mut coaction = Vec::with_capacity(dim);
        for row in co {
            let row = row.as_array().ok_or_else(|| bad("coaction row"))?;
            let mut out = Vec::new();
            for t in row {
                let l = t.get("target").and_then(Value::as_u64).ok_or_else(|| bad("coaction target"))? as usize;
                if l >= dim {
                    return Err(bad("coaction target out of range"));
                }
                let h = HopfElement::from_json(t.get("element").ok_or_else(|| bad("coaction element"))?)?;
                out.push((h, l));
            }
            coaction.push(out);
        }
        for s in x_action.iter().chain(&g_action) {
            if s.conductor() != conductor {
                return Err(HopfError::ConductorMismatch { expected: conductor, found: s.conductor() });
            }
        }
        Ok(YDModule { dim, x_action, g_action, y_action, coaction })
    }
}

/// Checks the defining relations of B(n,w,γ) on the action matrices.
pub fn verify_module(v: &YDModule, params: &ModuleParams) -> AxiomReport {
    let h = &params.liu;
    let mut report = AxiomReport::default();
    let (x, g, y) = (v.x_matrix(), v.g_matrix(), &v.y_action);
    if x.mul(&g) != g.mul(&x) {
        report.fail("xg = gx");
    }
    if x.mul(y) != y.mul(&x) {
        report.fail("xy = yx");
    }
    if y.mul(&g) != g.mul(y).scale(h.gamma()) {
        report.fail("yg = γgy");
    }
    if v.x_action.iter().any(Scalar::is_zero) {
        report.fail("x invertible");
        return report;
    }
    let pow = |m: &SparseMatrix, e: u32| {
        let mut acc = SparseMatrix::identity(v.conductor(), v.dim);
        for _ in 0..e {
            acc = m.mul(&acc);
        }
        acc
    };
    let xw = pow(&x, h.w());
    if pow(y, h.n()) != SparseMatrix::identity(v.conductor(), v.dim).sub(&xw) {
        report.fail("y^n = 1 - x^w");
    }
    if pow(&g, h.n()) != xw {
        report.fail("g^n = x^w");
    }
    report
}

/// Comatrix axioms on the coaction plus (ε ⊗ id)δ = id on each basis vector.
pub fn verify_comodule(v: &YDModule, params: &ModuleParams) -> Result<AxiomReport, HopfError> {
    let h = &params.liu;
    let mut report = AxiomReport::default();
    for (k, row) in v.coaction.iter().enumerate() {
        let mut image = vec![Scalar::zero(v.conductor()); v.dim];
        for (e, l) in row {
            image[*l] = &image[*l] + &h.counit(e);
        }
        let ok = image.iter().enumerate().all(|(l, s)| if l == k { s.is_one() } else { s.is_zero() });
        if !ok {
            report.fail(format!("counit on v_{k}"));
        }
    }
    if let Some(f) = is_comatrix(&v.coaction_matrix(), h)? {
        report.fail(format!("coassociativity: {f}"));
    }
    Ok(report)
}

/// An element of H ⊗ V, as the H-coefficient of each basis vector.
type HopfTensorVector = Vec<HopfElement>;

fn coact_vector(v: &YDModule, vec: &[Scalar]) -> HopfTensorVector {
    let mut out = vec![HopfElement::zero(); v.dim];
    for (k, s) in vec.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        for (h, l) in &v.coaction[k] {
            out[*l] = out[*l].add(&h.scale(s));
        }
    }
    out
}

/// Compares δ(h·v_k) with h_(1) v_(-1) S(h_(3)) ⊗ h_(2)·v_(0) for every basis vector.
pub fn verify_compatibility_for(v: &YDModule, params: &ModuleParams, u: &HopfElement) -> Result<AxiomReport, HopfError> {
    let h = &params.liu;
    let mut report = AxiomReport::default();
    let act = v.action_matrix(u)?;
    let delta2 = h.comul2(u)?;
    let mut middle_actions: BTreeMap<Monomial, SparseMatrix> = BTreeMap::new();
    for (key, _) in delta2.terms() {
        if let std::collections::btree_map::Entry::Vacant(e) = middle_actions.entry(key[1]) {
            e.insert(v.action_matrix(&h.mono(key[1]))?);
        }
    }
    let zero = Scalar::zero(v.conductor());
    for k in 0..v.dim {
        let column: Vec<Scalar> = (0..v.dim).map(|j| act.entry(j, k)).collect();
        let lhs = coact_vector(v, &column);
        let mut rhs = vec![HopfElement::zero(); v.dim];
        for (key, coeff) in delta2.terms() {
            let left = h.mono(key[0]);
            let right = h.antipode(&h.mono(key[2]))?;
            let mid = &middle_actions[&key[1]];
            for (c, l) in &v.coaction[k] {
                let outer = h.product(&[&left, c, &right])?.scale(coeff);
                if outer.is_zero() {
                    continue;
                }
                for j in 0..v.dim {
                    let a = mid.get(j, *l).unwrap_or(&zero);
                    if !a.is_zero() {
                        rhs[j] = rhs[j].add(&outer.scale(a));
                    }
                }
            }
        }
        if lhs != rhs {
            report.fail(format!("compatibility for h = {u} on v_{k}"));
        }
    }
    Ok(report)
}

/// Compatibility on the algebra generators x, g, y, which suffices.
pub fn verify_compatibility(v: &YDModule, params: &ModuleParams) -> Result<AxiomReport, HopfError> {
    let h = &params.liu;
    let mut report = AxiomReport::default();
    for u in [h.x(), h.g(), h.y()] {
        report.merge(verify_compatibility_for(v, params, &u)?);
    }
    Ok(report)
}

/// Module, comodule and compatibility checks together.
pub fn verify_all(v: &YDModule, params: &ModuleParams) -> Result<AxiomReport, HopfError> {
    let mut report = verify_module(v, params);
    report.merge(verify_comodule(v, params)?);
    if report.passed() {
        report.merge(verify_compatibility(v, params)?);
    }
    Ok(report)
}

/// A standard element: x·v = αv, g·v = βv, δ(v) = x^r g^i ⊗ v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardElementReport {
    pub vector: Vec<Scalar>,
    pub alpha: Scalar,
    pub beta: Scalar,
    /// Canonical (r, i) of the group-like.
    pub grouplike: (i64, i64),
}

/// One ray per independent standard element, grouped by joint (x, g) eigenvalue and group-like.
pub fn find_standard_elements(v: &YDModule, params: &ModuleParams) -> Vec<StandardElementReport> {
    let conductor = v.conductor();
    let mut eigenspaces: Vec<((Scalar, Scalar), Vec<usize>)> = Vec::new();
    for k in 0..v.dim {
        let key = (v.x_action[k].clone(), v.g_action[k].clone());
        match eigenspaces.iter_mut().find(|(e, _)| *e == key) {
            Some((_, idx)) => idx.push(k),
            None => eigenspaces.push((key, vec![k])),
        }
    }
    let mut out = Vec::new();
    for ((alpha, beta), support) in eigenspaces {
        let mut candidates: Vec<Monomial> = Vec::new();
        for &k in &support {
            for (h, _) in &v.coaction[k] {
                for (m, _) in h.terms() {
                    if m.is_grouplike() && !candidates.contains(m) {
                        candidates.push(*m);
                    }
                }
            }
        }
        for g in candidates {
            // unknowns: coordinates on `support`; equations: Σ_k v_k c(k,l) = v_l g, per (l, monomial)
            let mut eqs: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
            let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
            let one = Scalar::from_int(conductor, 1);
            let eq_index = |l: usize, m: Monomial, eqs: &mut BTreeMap<(usize, Monomial), usize>| {
                let next = eqs.len();
                *eqs.entry((l, m)).or_insert(next)
            };
            for (col, &k) in support.iter().enumerate() {
                for (h, l) in &v.coaction[k] {
                    for (m, c) in h.terms() {
                        let e = eq_index(*l, *m, &mut eqs);
                        entries.push((e, col, c.clone()));
                    }
                }
                let e = eq_index(k, g, &mut eqs);
                entries.push((e, col, -&one));
            }
            let mut system = SparseMatrix::zero(conductor, eqs.len(), support.len());
            for (r, c, s) in entries {
                system.add_at(r, c, &s);
            }
            for sol in system.nullspace() {
                let mut vector = vec![Scalar::zero(conductor); v.dim];
                for (col, &k) in support.iter().enumerate() {
                    vector[k] = sol[col].clone();
                }
                let grouplike = canonical_grouplike(g.c, g.b as i64, params.liu.n(), params.liu.w());
                out.push(StandardElementReport { vector, alpha: alpha.clone(), beta: beta.clone(), grouplike });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests;
