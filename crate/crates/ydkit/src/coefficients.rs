//! The coefficient families R, λ and c attached to a pair (β, x^r g^i), and the
//! lower-triangular comatrix they form.

use std::cell::RefCell;
use std::fmt;

use serde_json::{json, Value};

use crate::hopf::{HopfElement, HopfError, Liu, TensorElement};
use crate::scalars::{q_binomial, Scalar};

/// The representative of i mod n in {1, ..., n}; note phi(0, n) = n.
pub fn phi(i: i64, n: u32) -> u32 {
    assert!(n >= 1, "phi needs n >= 1");
    let r = i.rem_euclid(n as i64) as u32;
    if r == 0 {
        n
    } else {
        r
    }
}

/// The exponent j in [0, n) with β = γ^j, if β is such a power.
pub fn gamma_exponent(liu: &Liu, beta: &Scalar) -> Option<u32> {
    if !beta.is_constant() || beta.conductor() != liu.conductor() {
        return None;
    }
    (0..liu.n()).find(|&j| liu.gamma_pow(j as i64) == *beta)
}

#[derive(Debug)]
pub struct CoeffParams {
    pub liu: Liu,
    pub beta: Scalar,
    pub r: i64,
    pub i: i64,
    lambda_memo: RefCell<Vec<Vec<Scalar>>>,
}

impl Clone for CoeffParams {
    fn clone(&self) -> Self {
        CoeffParams::new(self.liu.clone(), self.beta.clone(), self.r, self.i).expect("already validated")
    }
}

impl CoeffParams {
    pub fn new(liu: Liu, beta: Scalar, r: i64, i: i64) -> Result<CoeffParams, HopfError> {
        if beta.is_zero() {
            return Err(HopfError::InvalidParams("beta must be nonzero".into()));
        }
        if beta.conductor() != liu.conductor() {
            return Err(HopfError::ConductorMismatch { expected: liu.conductor(), found: beta.conductor() });
        }
        Ok(CoeffParams { liu, beta, r, i, lambda_memo: RefCell::new(Vec::new()) })
    }

    fn check_range(k: u32, l: u32) -> Result<(), HopfError> {
        if l > k {
            return Err(HopfError::InvalidParams(format!("index ({k},{l}) needs l <= k")));
        }
        Ok(())
    }

    /// R(k,l) = βγ^{-l} - γ^{k-1-i} for l < k, and 1 for l = k.
    pub fn r_coeff(&self, k: u32, l: u32) -> Result<Scalar, HopfError> {
        Self::check_range(k, l)?;
        if l == k {
            return Ok(self.beta.one_like());
        }
        let g = &self.liu;
        Ok(&(&self.beta * &g.gamma_pow(-(l as i64))) - &g.gamma_pow(k as i64 - 1 - self.i))
    }

    fn r_unchecked(&self, k: u32, l: u32) -> Scalar {
        self.r_coeff(k, l).expect("index in range")
    }

    /// λ(k,l) from the recursion λ(k,l) = R(k,l)λ(k-1,l) + λ(k-1,l-1), memoized by row.
    pub fn lambda_recursive(&self, k: u32, l: u32) -> Result<Scalar, HopfError> {
        Self::check_range(k, l)?;
        let mut memo = self.lambda_memo.borrow_mut();
        while memo.len() <= k as usize {
            let row_k = memo.len() as u32;
            let row = if row_k == 0 {
                vec![self.beta.one_like()]
            } else {
                let prev = &memo[row_k as usize - 1];
                (0..=row_k)
                    .map(|l| {
                        if l == row_k {
                            self.beta.one_like()
                        } else {
                            let mut v = &self.r_unchecked(row_k, l) * &prev[l as usize];
                            if l > 0 {
                                v = &v + &prev[l as usize - 1];
                            }
                            v
                        }
                    })
                    .collect()
            };
            memo.push(row);
        }
        Ok(memo[k as usize][l as usize].clone())
    }

    /// λ(k,p) = binom(k,p)_γ γ^{-(k-p)p} ∏_{l=p+1}^{k} R(l,0).
    pub fn lambda_explicit(&self, k: u32, p: u32) -> Result<Scalar, HopfError> {
        Self::check_range(k, p)?;
        let mut v = q_binomial(k as usize, p as usize, self.liu.gamma())?;
        v = &v * &self.liu.gamma_pow(-((k - p) as i64) * p as i64);
        for l in p + 1..=k {
            v = &v * &self.r_unchecked(l, 0);
        }
        Ok(v)
    }

    /// c(k,l) = λ(k,l) y^{k-l} x^r g^{i-k}, normalized.
    pub fn c_coeff(&self, k: u32, l: u32) -> Result<HopfElement, HopfError> {
        let lambda = self.lambda_explicit(k, l)?;
        Ok(self.liu.normalize(k - l, self.i - k as i64, self.r).scale(&lambda))
    }

    /// The rows c(k, 0..=k) for k <= kmax from the defining recursion in B(n,w,γ).
    pub fn c_rows_recursive(&self, kmax: u32) -> Result<Vec<Vec<HopfElement>>, HopfError> {
        let h = &self.liu;
        let sy = h.antipode(&h.y())?;
        let sg = h.antipode(&h.g())?;
        let y = h.y();
        let mut rows = vec![vec![h.grouplike(self.r, self.i)]];
        for k in 0..kmax {
            let prev = &rows[k as usize];
            let mut row = Vec::with_capacity(k as usize + 2);
            for l in 0..=k {
                let c = &prev[l as usize];
                let twist = &self.beta * &h.gamma_pow(-(l as i64));
                let mut v = h.mul(c, &sy)?.add(&h.product(&[&y, c, &sg])?.scale(&twist));
                if l > 0 {
                    v = v.add(&h.mul(&prev[l as usize - 1], &sg)?);
                }
                row.push(v);
            }
            row.push(h.mul(&prev[k as usize], &sg)?);
            rows.push(row);
        }
        Ok(rows)
    }

    pub fn c_coeff_recursive(&self, k: u32, l: u32) -> Result<HopfElement, HopfError> {
        Self::check_range(k, l)?;
        Ok(self.c_rows_recursive(k)?.swap_remove(k as usize).swap_remove(l as usize))
    }

    /// β^n = 1 exactly.
    pub fn beta_is_nth_root(&self) -> bool {
        match self.beta.pow(self.liu.n() as i64) {
            Ok(v) => v.is_one(),
            Err(_) => false,
        }
    }

    /// m = n - φ(-i-j) when β = γ^j; None when β^n ≠ 1.
    pub fn boundary_index(&self) -> Option<u32> {
        let j = gamma_exponent(&self.liu, &self.beta)?;
        let n = self.liu.n();
        Some(n - phi(-self.i - j as i64, n))
    }
}

/// A (p+1)×(p+1) lower-triangular matrix over B(n,w,γ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComatrixData {
    pub p: u32,
    pub entries: Vec<Vec<HopfElement>>,
}

impl ComatrixData {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn to_json(&self) -> Value {
        let rendered: Vec<Vec<String>> =
            self.entries.iter().map(|row| row.iter().map(|e| e.to_string()).collect()).collect();
        let exact: Vec<Vec<Value>> =
            self.entries.iter().map(|row| row.iter().map(HopfElement::to_json).collect()).collect();
        json!({"p": self.p, "rendered": rendered, "entries": exact})
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }
}

pub fn build_comatrix(params: &CoeffParams, p: u32) -> Result<ComatrixData, HopfError> {
    let mut entries = Vec::with_capacity(p as usize + 1);
    for k in 0..=p {
        let row: Result<Vec<_>, _> =
            (0..=p).map(|l| if l <= k { params.c_coeff(k, l) } else { Ok(HopfElement::zero()) }).collect();
        entries.push(row?);
    }
    Ok(ComatrixData { p, entries })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComatrixFailure {
    pub row: usize,
    pub col: usize,
    pub axiom: &'static str,
}

impl fmt::Display for ComatrixFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at entry ({},{})", self.axiom, self.row, self.col)
    }
}

/// Checks Δ(c_kl) = Σ_p c_kp ⊗ c_pl and ε(c_kl) = δ_kl; reports the first failing entry.
pub fn is_comatrix(m: &ComatrixData, liu: &Liu) -> Result<Option<ComatrixFailure>, HopfError> {
    let size = m.size();
    for k in 0..size {
        for l in 0..size {
            let e = &m.entries[k][l];
            let counit = liu.counit(e);
            let ok = if k == l { counit.is_one() } else { counit.is_zero() };
            if !ok {
                return Ok(Some(ComatrixFailure { row: k, col: l, axiom: "counit" }));
            }
            let mut rhs = TensorElement::zero(2);
            for p in 0..size {
                rhs = rhs.add(&TensorElement::pure(&[&m.entries[k][p], &m.entries[p][l]]));
            }
            if liu.comul(e)? != rhs {
                return Ok(Some(ComatrixFailure { row: k, col: l, axiom: "comultiplication" }));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeCase {
    /// β^n ≠ 1: the comatrix A(n) is used.
    Generic,
    /// β = γ^j: the comatrix A(m+1) with m = n - φ(-i-j).
    RootOfUnity { j: u32, m: u32 },
}

/// Zero pattern of the relevant comatrix and whether it matches the expected shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeReport {
    pub case: ShapeCase,
    pub size: u32,
    /// `nonzero[k][l]` for 0 <= l <= k <= size.
    pub nonzero: Vec<Vec<bool>>,
    pub first_column_nonzero: bool,
    pub last_row_as_expected: bool,
}

impl ShapeReport {
    pub fn passed(&self) -> bool {
        self.last_row_as_expected && (self.case != ShapeCase::Generic || self.first_column_nonzero)
    }
}

pub fn shape_report(params: &CoeffParams) -> Result<ShapeReport, HopfError> {
    let n = params.liu.n();
    let (case, size) = if params.beta_is_nth_root() {
        let j = gamma_exponent(&params.liu, &params.beta)
            .ok_or_else(|| HopfError::InvalidParams("beta^n = 1 but beta is not a power of gamma".into()))?;
        let m = n - phi(-params.i - j as i64, n);
        (ShapeCase::RootOfUnity { j, m }, m + 1)
    } else {
        (ShapeCase::Generic, n)
    };
    let mut nonzero = Vec::new();
    for k in 0..=size {
        let row: Result<Vec<bool>, HopfError> =
            (0..=k).map(|l| Ok(!params.c_coeff(k, l)?.is_zero())).collect();
        nonzero.push(row?);
    }
    let first_column_nonzero = nonzero.iter().all(|row| row[0]);
    let last = &nonzero[size as usize];
    let last_row_as_expected = match case {
        ShapeCase::Generic => (0..=size as usize).all(|l| last[l] == (l == 0 || l == size as usize)),
        ShapeCase::RootOfUnity { .. } => (0..=size as usize).all(|l| last[l] == (l == size as usize)),
    };
    Ok(ShapeReport { case, size, nonzero, first_column_nonzero, last_row_as_expected })
}

#[cfg(test)]
mod tests;
