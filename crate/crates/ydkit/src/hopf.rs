//! The Hopf algebra B(n,w,γ): generators x^{±1}, g, y with
//! y^n = 1 - x^w = 1 - g^n, yg = γgy, x central.
//!
//! Elements are finite sums over the normalized basis y^a g^b x^c with
//! 0 <= a, b < n and c in Z.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::scalars::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HopfError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("conductor mismatch: algebra over conductor {expected}, operand over {found}")]
    ConductorMismatch { expected: u32, found: u32 },
    #[error("support limit exceeded: {size} terms (limit {limit})")]
    SupportLimit { size: usize, limit: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Basis element y^a g^b x^c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub c: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0, c: 0 };

    pub fn new(a: u32, b: u32, c: i64) -> Monomial {
        Monomial { a, b, c }
    }

    pub fn is_grouplike(&self) -> bool {
        self.a == 0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (sym, e) in [("y", self.a as i64), ("g", self.b as i64), ("x", self.c)] {
            match e {
                0 => {}
                1 => parts.push(sym.to_string()),
                _ => parts.push(format!("{sym}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// A finite linear combination of normalized monomials; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HopfElement {
    terms: BTreeMap<Monomial, Scalar>,
}

impl HopfElement {
    pub fn zero() -> HopfElement {
        HopfElement::default()
    }

    pub fn term(m: Monomial, coeff: Scalar) -> HopfElement {
        let mut e = HopfElement::zero();
        e.add_term(m, coeff);
        e
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &coeff;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &HopfElement) -> HopfElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HopfElement) -> HopfElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HopfElement {
        HopfElement { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> HopfElement {
        let mut out = HopfElement::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * s);
        }
        out
    }

    /// When the element is a single group-like monomial with coefficient 1.
    pub fn as_grouplike(&self) -> Option<Monomial> {
        let mut it = self.terms.iter();
        let (m, c) = it.next()?;
        if it.next().is_none() && m.is_grouplike() && c.is_one() {
            Some(*m)
        } else {
            None
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| json!({"y": m.a, "g": m.b, "x": m.c, "coeff": c.to_json()}))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<HopfElement, HopfError> {
        let bad = |m: &str| HopfError::InvalidParams(m.to_string());
        let arr = v.as_array().ok_or_else(|| bad("element must be a term list"))?;
        let mut out = HopfElement::zero();
        for t in arr {
            let a = t.get("y").and_then(Value::as_u64).ok_or_else(|| bad("term needs y"))?;
            let b = t.get("g").and_then(Value::as_u64).ok_or_else(|| bad("term needs g"))?;
            let c = t.get("x").and_then(Value::as_i64).ok_or_else(|| bad("term needs x"))?;
            let s = Scalar::from_json(t.get("coeff").ok_or_else(|| bad("term needs coeff"))?)?;
            out.add_term(Monomial::new(a as u32, b as u32, c), s);
        }
        Ok(out)
    }
}

impl fmt::Display for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let cs = c.to_string();
                let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
                if *m == Monomial::ONE {
                    cs
                } else if c.is_one() {
                    m.to_string()
                } else {
                    format!("{cs} · {m}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// An element of the d-fold tensor power of B(n,w,γ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    degree: usize,
    terms: BTreeMap<Vec<Monomial>, Scalar>,
}

impl TensorElement {
    pub fn zero(degree: usize) -> TensorElement {
        TensorElement { degree, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn add_term(&mut self, key: Vec<Monomial>, coeff: Scalar) {
        debug_assert_eq!(key.len(), self.degree);
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                let s = &*v + &coeff;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    /// Pure tensor of the given elements.
    pub fn pure(factors: &[&HopfElement]) -> TensorElement {
        let mut acc: Vec<(Vec<Monomial>, Option<Scalar>)> = vec![(Vec::new(), None)];
        for f in factors {
            let mut next = Vec::new();
            for (k, c) in &acc {
                for (m, s) in f.terms() {
                    let mut key = k.clone();
                    key.push(*m);
                    let coeff = match c {
                        None => s.clone(),
                        Some(c) => c * s,
                    };
                    next.push((key, Some(coeff)));
                }
            }
            acc = next;
        }
        let mut out = TensorElement::zero(factors.len());
        for (k, c) in acc {
            if let Some(c) = c {
                out.add_term(k, c);
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let key: Vec<String> = k.iter().map(|m| m.to_string()).collect();
                let cs = c.to_string();
                let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
                format!("{cs} · {}", key.join(" ⊗ "))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Outcome of an axiom check: empty `failures` means every identity held exactly.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.failures.extend(other.failures);
    }
}

/// The algebra B(n,w,γ) with cached structure data.
#[derive(Debug, Clone)]
pub struct Liu {
    n: u32,
    w: u32,
    gamma: Scalar,
    gamma_powers: Vec<Scalar>,
    support_limit: Option<usize>,
}

impl Liu {
    /// Requires n, w >= 1 and γ a primitive n-th root of unity.
    pub fn new(n: u32, w: u32, gamma: Scalar) -> Result<Liu, HopfError> {
        if n == 0 || w == 0 {
            return Err(HopfError::InvalidParams("n and w must be positive".into()));
        }
        if gamma.root_order() != Some(n) {
            return Err(HopfError::InvalidParams(format!("gamma = {gamma} is not a primitive {n}-th root of unity")));
        }
        let mut gamma_powers = vec![gamma.one_like()];
        for k in 1..n as usize {
            gamma_powers.push(&gamma_powers[k - 1] * &gamma);
        }
        Ok(Liu { n, w, gamma, gamma_powers, support_limit: None })
    }

    /// Operations producing more terms than `limit` fail with [`HopfError::SupportLimit`].
    pub fn with_support_limit(mut self, limit: usize) -> Liu {
        self.support_limit = Some(limit);
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn gamma(&self) -> &Scalar {
        &self.gamma
    }

    pub fn conductor(&self) -> u32 {
        self.gamma.conductor()
    }

    /// γ^e for any integer e.
    pub fn gamma_pow(&self, e: i64) -> Scalar {
        self.gamma_powers[e.rem_euclid(self.n as i64) as usize].clone()
    }

    pub fn scalar(&self, v: i64) -> Scalar {
        self.gamma.int_like(v)
    }

    fn guard(&self, size: usize) -> Result<(), HopfError> {
        match self.support_limit {
            Some(limit) if size > limit => Err(HopfError::SupportLimit { size, limit }),
            _ => Ok(()),
        }
    }

    fn check_element(&self, u: &HopfElement) -> Result<(), HopfError> {
        for c in u.terms.values() {
            if c.conductor() != self.conductor() {
                return Err(HopfError::ConductorMismatch { expected: self.conductor(), found: c.conductor() });
            }
        }
        Ok(())
    }

    pub fn one(&self) -> HopfElement {
        HopfElement::term(Monomial::ONE, self.scalar(1))
    }

    pub fn mono(&self, m: Monomial) -> HopfElement {
        HopfElement::term(m, self.scalar(1))
    }

    pub fn y(&self) -> HopfElement {
        self.normalize(1, 0, 0)
    }

    pub fn g(&self) -> HopfElement {
        self.normalize(0, 1, 0)
    }

    pub fn x(&self) -> HopfElement {
        self.normalize(0, 0, 1)
    }

    /// The group-like x^c g^b for any integers b, c.
    pub fn grouplike(&self, c: i64, b: i64) -> HopfElement {
        self.normalize(0, b, c)
    }

    /// Rewrites y^a g^b x^c into the normalized basis using g^n = x^w and y^n = 1 - x^w.
    pub fn normalize(&self, a: u32, b: i64, c: i64) -> HopfElement {
        let n = self.n as i64;
        let w = self.w as i64;
        let c = c + w * b.div_euclid(n);
        let b = b.rem_euclid(n) as u32;
        let q = a / self.n;
        let r = a % self.n;
        let mut out = HopfElement::zero();
        let mut binom: i64 = 1;
        for j in 0..=q as i64 {
            let sign = if j % 2 == 0 { binom } else { -binom };
            out.add_term(Monomial::new(r, b, c + w * j), self.scalar(sign));
            binom = binom * (q as i64 - j) / (j + 1);
        }
        out
    }

    fn mul_mono(&self, m1: &Monomial, m2: &Monomial) -> (Scalar, HopfElement) {
        let twist = self.gamma_pow(-(m1.b as i64) * (m2.a as i64));
        (twist, self.normalize(m1.a + m2.a, m1.b as i64 + m2.b as i64, m1.c + m2.c))
    }

    pub fn mul(&self, u: &HopfElement, v: &HopfElement) -> Result<HopfElement, HopfError> {
        self.check_element(u)?;
        self.check_element(v)?;
        let mut out = HopfElement::zero();
        for (m1, c1) in &u.terms {
            for (m2, c2) in &v.terms {
                let (twist, prod) = self.mul_mono(m1, m2);
                let coeff = &(c1 * c2) * &twist;
                for (m, c) in &prod.terms {
                    out.add_term(*m, &coeff * c);
                }
            }
        }
        self.guard(out.len())?;
        Ok(out)
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, factors: &[&HopfElement]) -> Result<HopfElement, HopfError> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Componentwise product in the tensor power.
    pub fn tensor_mul(&self, s: &TensorElement, t: &TensorElement) -> Result<TensorElement, HopfError> {
        if s.degree != t.degree {
            return Err(HopfError::InvalidParams("tensor degrees differ".into()));
        }
        let mut out = TensorElement::zero(s.degree);
        for (k1, c1) in &s.terms {
            for (k2, c2) in &t.terms {
                let mut partial: Vec<(Vec<Monomial>, Scalar)> = vec![(Vec::new(), c1 * c2)];
                for (m1, m2) in k1.iter().zip(k2) {
                    let (twist, prod) = self.mul_mono(m1, m2);
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (key, c) in &partial {
                        let ct = c * &twist;
                        for (m, s) in &prod.terms {
                            let mut kk = key.clone();
                            kk.push(*m);
                            next.push((kk, &ct * s));
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    out.add_term(k, c);
                }
            }
        }
        self.guard(out.len())?;
        Ok(out)
    }

    /// Δ(y^a g^b x^c) = (y⊗g + 1⊗y)^a (g^b x^c ⊗ g^b x^c), computed by repeated multiplication.
    fn comul_mono(&self, m: &Monomial) -> Result<TensorElement, HopfError> {
        let one = self.scalar(1);
        let mut dy = TensorElement::zero(2);
        dy.add_term(vec![Monomial::new(1, 0, 0), Monomial::new(0, 1, 0)], one.clone());
        dy.add_term(vec![Monomial::ONE, Monomial::new(1, 0, 0)], one.clone());
        let mut acc = TensorElement::zero(2);
        acc.add_term(vec![Monomial::ONE, Monomial::ONE], one.clone());
        for _ in 0..m.a {
            acc = self.tensor_mul(&acc, &dy)?;
        }
        let gx = Monomial::new(0, m.b, m.c);
        let mut tail = TensorElement::zero(2);
        tail.add_term(vec![gx, gx], one);
        self.tensor_mul(&acc, &tail)
    }

    pub fn comul(&self, u: &HopfElement) -> Result<TensorElement, HopfError> {
        self.check_element(u)?;
        let mut out = TensorElement::zero(2);
        for (m, c) in &u.terms {
            for (k, s) in &self.comul_mono(m)?.terms {
                out.add_term(k.clone(), c * s);
            }
        }
        Ok(out)
    }

    /// Applies Δ to the tensor factor at `pos`, raising the degree by one.
    pub fn comul_at(&self, t: &TensorElement, pos: usize) -> Result<TensorElement, HopfError> {
        assert!(pos < t.degree);
        let mut out = TensorElement::zero(t.degree + 1);
        for (k, c) in &t.terms {
            for (pair, s) in &self.comul_mono(&k[pos])?.terms {
                let mut key = k[..pos].to_vec();
                key.extend_from_slice(pair);
                key.extend_from_slice(&k[pos + 1..]);
                out.add_term(key, c * s);
            }
        }
        self.guard(out.len())?;
        Ok(out)
    }

    /// Δ^{(2)}(u) = (Δ ⊗ id)Δ(u) in H⊗H⊗H.
    pub fn comul2(&self, u: &HopfElement) -> Result<TensorElement, HopfError> {
        self.comul_at(&self.comul(u)?, 0)
    }

    pub fn counit(&self, u: &HopfElement) -> Scalar {
        let mut acc = self.scalar(0);
        for (m, c) in &u.terms {
            if m.a == 0 {
                acc = &acc + c;
            }
        }
        acc
    }

    fn antipode_mono(&self, m: &Monomial) -> Result<HopfElement, HopfError> {
        // S(y^a g^b x^c) = S(x)^c S(g)^b S(y)^a with S(y) = -y g^{-1}
        let mut acc = self.normalize(0, -(m.b as i64), -m.c);
        let sy = self.normalize(1, -1, 0).neg();
        for _ in 0..m.a {
            acc = self.mul(&acc, &sy)?;
        }
        Ok(acc)
    }

    pub fn antipode(&self, u: &HopfElement) -> Result<HopfElement, HopfError> {
        self.check_element(u)?;
        let mut out = HopfElement::zero();
        for (m, c) in &u.terms {
            for (mm, s) in &self.antipode_mono(m)?.terms {
                out.add_term(*mm, c * s);
            }
        }
        Ok(out)
    }

    /// Checks coassociativity, both counit laws and both antipode laws on `u`.
    pub fn hopf_axiom_check(&self, u: &HopfElement) -> Result<AxiomReport, HopfError> {
        let mut report = AxiomReport::default();
        let d = self.comul(u)?;
        if self.comul_at(&d, 0)? != self.comul_at(&d, 1)? {
            report.fail("coassociativity (Δ⊗id)Δ = (id⊗Δ)Δ");
        }
        let mut left = HopfElement::zero();
        let mut right = HopfElement::zero();
        let mut s_left = HopfElement::zero();
        let mut s_right = HopfElement::zero();
        for (k, c) in &d.terms {
            let (h1, h2) = (self.mono(k[0]), self.mono(k[1]));
            left = left.add(&h2.scale(&(c * &self.counit(&h1))));
            right = right.add(&h1.scale(&(c * &self.counit(&h2))));
            s_left = s_left.add(&self.mul(&self.antipode(&h1)?, &h2)?.scale(c));
            s_right = s_right.add(&self.mul(&h1, &self.antipode(&h2)?)?.scale(c));
        }
        if left != *u {
            report.fail("left counit (ε⊗id)Δ = id");
        }
        if right != *u {
            report.fail("right counit (id⊗ε)Δ = id");
        }
        let unit = self.one().scale(&self.counit(u));
        if s_left != unit {
            report.fail("antipode m(S⊗id)Δ = ε·1");
        }
        if s_right != unit {
            report.fail("antipode m(id⊗S)Δ = ε·1");
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests;
