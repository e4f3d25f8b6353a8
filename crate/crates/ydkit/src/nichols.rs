//! Braided vector spaces, braided symmetrizers and graded dimensions of
//! Nichols algebras.
//!
//! Tensors V^{⊗k} use the lexicographic basis: e_{j_1} ⊗ ... ⊗ e_{j_k} has
//! index Σ j_s d^{k-s}. Matrices act on column vectors.

use std::time::Duration;

use serde_json::{json, Value};
use web_time::Instant;

use crate::hopf::HopfError;
use crate::linalg::SparseMatrix;
use crate::scalars::Scalar;
use crate::yd::{ModuleParams, YDModule};

pub const DEFAULT_MAX_ROWS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NicholsError {
    #[error("braiding must be a {expected}x{expected} matrix, got {rows}x{cols}")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("braiding is not invertible")]
    NotInvertible,
    #[error("braiding violates the braid equation")]
    BraidEquation,
    #[error("tensor power too large: {rows} rows exceeds the limit {limit}")]
    SizeLimit { rows: usize, limit: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

/// A finite-dimensional space with an invertible solution of the braid equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidedSpace {
    d: usize,
    c: SparseMatrix,
    /// Column j of c as (row, value) pairs.
    columns: Vec<Vec<(usize, Scalar)>>,
}

impl BraidedSpace {
    /// Validates shape, invertibility and the braid equation.
    pub fn new(d: usize, c: SparseMatrix) -> Result<BraidedSpace, NicholsError> {
        let b = BraidedSpace::new_unchecked(d, c)?;
        if !b.c.is_invertible() {
            return Err(NicholsError::NotInvertible);
        }
        if !b.braid_equation_holds() {
            return Err(NicholsError::BraidEquation);
        }
        Ok(b)
    }

    /// Checks only the shape; used for deliberately malformed negative controls.
    pub fn new_unchecked(d: usize, c: SparseMatrix) -> Result<BraidedSpace, NicholsError> {
        if d == 0 {
            return Err(NicholsError::InvalidArgument("dimension must be positive".into()));
        }
        if c.rows() != d * d || c.cols() != d * d {
            return Err(NicholsError::Shape { expected: d * d, rows: c.rows(), cols: c.cols() });
        }
        let t = c.transpose();
        let columns = (0..d * d).map(|j| t.row(j).iter().map(|(r, v)| (*r, v.clone())).collect()).collect();
        Ok(BraidedSpace { d, c, columns })
    }

    /// Diagonal type: c(e_a ⊗ e_b) = q[a][b] e_b ⊗ e_a.
    pub fn diagonal(q: &[Vec<Scalar>]) -> Result<BraidedSpace, NicholsError> {
        let d = q.len();
        if d == 0 || q.iter().any(|row| row.len() != d) {
            return Err(NicholsError::InvalidArgument("braiding matrix must be square and nonempty".into()));
        }
        let conductor = q[0][0].conductor();
        let mut c = SparseMatrix::zero(conductor, d * d, d * d);
        for a in 0..d {
            for b in 0..d {
                c.set(b * d + a, a * d + b, q[a][b].clone());
            }
        }
        BraidedSpace::new(d, c)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn braiding(&self) -> &SparseMatrix {
        &self.c
    }

    pub fn conductor(&self) -> u32 {
        self.c.conductor()
    }

    /// (c⊗id)(id⊗c)(c⊗id) = (id⊗c)(c⊗id)(id⊗c) on V^{⊗3}.
    pub fn braid_equation_holds(&self) -> bool {
        let c1 = self.generator(3, 1);
        let c2 = self.generator(3, 2);
        c1.mul(&c2).mul(&c1) == c2.mul(&c1).mul(&c2)
    }

    /// c_i = id^{⊗(i-1)} ⊗ c ⊗ id^{⊗(k-i-1)} on V^{⊗k}, 1 <= i < k.
    pub fn generator(&self, k: usize, i: usize) -> SparseMatrix {
        assert!(i >= 1 && i < k, "generator index {i} out of range for degree {k}");
        let d = self.d;
        let size = d.pow(k as u32);
        let lower = d.pow((k - i - 1) as u32);
        let block = d * d;
        let mut out = SparseMatrix::zero(self.conductor(), size, size);
        for col in 0..size {
            let low = col % lower;
            let pair = (col / lower) % block;
            let high = col / (lower * block);
            for (r, v) in &self.columns[pair] {
                out.set((high * block + r) * lower + low, col, v.clone());
            }
        }
        out
    }

    /// ρ(w) = c_{w_1} c_{w_2} ... c_{w_l} on V^{⊗k}.
    pub fn word_operator(&self, k: usize, word: &[usize]) -> SparseMatrix {
        let mut acc = SparseMatrix::identity(self.conductor(), self.d.pow(k as u32));
        for &i in word {
            acc = acc.mul(&self.generator(k, i));
        }
        acc
    }

    fn check_size(&self, k: usize, limit: usize) -> Result<usize, NicholsError> {
        let rows = (self.d as u128).pow(k as u32);
        if rows > limit as u128 {
            return Err(NicholsError::SizeLimit { rows: rows.min(usize::MAX as u128) as usize, limit });
        }
        Ok(rows as usize)
    }
}

/// c(v_k ⊗ v_l) = Σ_p (c(k,p)·v_l) ⊗ v_p, the braiding of a Yetter-Drinfeld module.
pub fn braiding_from_yd(v: &YDModule, _params: &ModuleParams) -> Result<BraidedSpace, NicholsError> {
    let d = v.dim;
    let mut c = SparseMatrix::zero(v.conductor(), d * d, d * d);
    for k in 0..d {
        for (h, p) in &v.coaction[k] {
            let act = v.action_matrix(h)?;
            for l in 0..d {
                for j in 0..d {
                    if let Some(a) = act.get(j, l) {
                        c.add_at(j * d + p, k * d + l, a);
                    }
                }
            }
        }
    }
    let b = BraidedSpace::new_unchecked(d, c)?;
    if !b.braid_equation_holds() {
        return Err(NicholsError::BraidEquation);
    }
    if !b.c.is_invertible() {
        return Err(NicholsError::NotInvertible);
    }
    Ok(b)
}

/// The braiding matrix of the diagonal companion W = k{y} ⊕ k{v}:
/// rows (γ, β^{-1}) and (γ^{-i}, α^r β^i).
pub fn companion_matrix(params: &ModuleParams) -> Result<Vec<Vec<Scalar>>, NicholsError> {
    let h = &params.liu;
    let beta_inv = params.beta.inv().map_err(HopfError::from)?;
    let vertex = &params.alpha.pow(params.r).map_err(HopfError::from)? * &params.beta.pow(params.i).map_err(HopfError::from)?;
    Ok(vec![vec![h.gamma().clone(), beta_inv], vec![h.gamma_pow(-params.i), vertex]])
}

/// The diagonal companion space whose Nichols algebra has the same finiteness.
pub fn companion_space(params: &ModuleParams) -> Result<BraidedSpace, NicholsError> {
    BraidedSpace::diagonal(&companion_matrix(params)?)
}

/// S_k via S_k = (S_{k-1} ⊗ id)(id + c_{k-1} + c_{k-1}c_{k-2} + ... + c_{k-1}...c_1).
pub fn braided_symmetrizer(b: &BraidedSpace, k: usize, max_rows: usize) -> Result<SparseMatrix, NicholsError> {
    if k == 0 {
        return Err(NicholsError::InvalidArgument("degree must be at least 1".into()));
    }
    b.check_size(k, max_rows)?;
    let conductor = b.conductor();
    let mut s = SparseMatrix::identity(conductor, b.d);
    let id_d = SparseMatrix::identity(conductor, b.d);
    for j in 2..=k {
        let size = b.d.pow(j as u32);
        let id = SparseMatrix::identity(conductor, size);
        let mut tail = id.clone();
        for i in 1..j {
            tail = id.add(&b.generator(j, i).mul(&tail));
        }
        s = s.kron(&id_d).mul(&tail);
    }
    Ok(s)
}

/// Reduced word for a permutation by left-to-right bubble sort passes.
///
/// Sorting `perm` by adjacent swaps at positions w_1, ..., w_l gives the word
/// (w_l, ..., w_1); generators are numbered from 1.
pub fn bubble_sort_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut swaps = Vec::new();
    loop {
        let mut swapped = false;
        for s in 0..p.len().saturating_sub(1) {
            if p[s] > p[s + 1] {
                p.swap(s, s + 1);
                swaps.push(s + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    swaps.reverse();
    swaps
}

/// Another reduced word for the same permutation, from right-to-left passes.
pub fn reverse_bubble_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut swaps = Vec::new();
    loop {
        let mut swapped = false;
        for s in (0..p.len().saturating_sub(1)).rev() {
            if p[s] > p[s + 1] {
                p.swap(s, s + 1);
                swaps.push(s + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    swaps.reverse();
    swaps
}

fn inversions(perm: &[usize]) -> usize {
    let mut n = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                n += 1;
            }
        }
    }
    n
}

/// All permutations of 0..k in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        out.push(p.clone());
        let Some(a) = (0..k.saturating_sub(1)).rev().find(|&a| p[a] < p[a + 1]) else { break };
        let b = (a + 1..k).rev().find(|&b| p[b] > p[a]).unwrap();
        p.swap(a, b);
        p[a + 1..].reverse();
    }
    out
}

/// S_k as the sum of ρ(σ) over Sym(k), each lifted through its bubble-sort word.
pub fn symmetrizer_by_permutations(b: &BraidedSpace, k: usize, max_rows: usize) -> Result<SparseMatrix, NicholsError> {
    if k == 0 {
        return Err(NicholsError::InvalidArgument("degree must be at least 1".into()));
    }
    let size = b.check_size(k, max_rows)?;
    let mut s = SparseMatrix::zero(b.conductor(), size, size);
    for perm in permutations(k) {
        let word = bubble_sort_word(&perm);
        debug_assert_eq!(word.len(), inversions(&perm));
        s = s.add(&b.word_operator(k, &word));
    }
    Ok(s)
}

/// Compares ρ over two distinct reduced words for each permutation of Sym(k).
pub fn matsumoto_check(b: &BraidedSpace, k: usize) -> bool {
    permutations(k).iter().all(|perm| {
        let w1 = bubble_sort_word(perm);
        let w2 = reverse_bubble_word(perm);
        b.word_operator(k, &w1) == b.word_operator(k, &w2)
    })
}

/// Resource limits for graded dimension computations.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_rows: usize,
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_rows: DEFAULT_MAX_ROWS, max_time: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStat {
    pub degree: usize,
    pub rank: usize,
    pub size: usize,
    pub elapsed: Duration,
}

/// Where and why a prefix stopped early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub degree: usize,
    pub reason: String,
}

/// dims[k] = dim B^k(V) for k <= requested degree, unless truncated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertPrefix {
    pub dims: Vec<usize>,
    pub stats: Vec<DegreeStat>,
    pub truncated: Option<Truncation>,
}

impl HilbertPrefix {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("degree\trank\tsize\telapsed_ms\n");
        out.push_str("0\t1\t1\t0\n");
        for s in &self.stats {
            out.push_str(&format!("{}\t{}\t{}\t{}\n", s.degree, s.rank, s.size, s.elapsed.as_millis()));
        }
        if let Some(t) = &self.truncated {
            out.push_str(&format!("# truncated at degree {}: {}\n", t.degree, t.reason));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dims": self.dims,
            "stats": self.stats.iter().map(|s| json!({
                "degree": s.degree, "rank": s.rank, "size": s.size, "elapsed_ms": s.elapsed.as_millis() as u64
            })).collect::<Vec<_>>(),
            "truncated": self.truncated.as_ref().map(|t| json!({"degree": t.degree, "reason": t.reason})),
        })
    }
}

/// dim B^k(V) = rank S_k for k = 0..=max_degree, never extrapolated.
pub fn graded_dims(b: &BraidedSpace, max_degree: usize, budget: Budget) -> HilbertPrefix {
    let start = Instant::now();
    let mut dims = vec![1];
    let mut stats = Vec::new();
    let mut truncated = None;
    for k in 1..=max_degree {
        if let Some(limit) = budget.max_time {
            if start.elapsed() > limit {
                truncated = Some(Truncation { degree: k, reason: format!("time budget {limit:?} exhausted") });
                break;
            }
        }
        let t0 = Instant::now();
        let s = match braided_symmetrizer(b, k, budget.max_rows) {
            Ok(s) => s,
            Err(e) => {
                truncated = Some(Truncation { degree: k, reason: e.to_string() });
                break;
            }
        };
        let rank = s.rank();
        dims.push(rank);
        stats.push(DegreeStat { degree: k, rank, size: s.rows(), elapsed: t0.elapsed() });
    }
    HilbertPrefix { dims, stats, truncated }
}

/// Coefficientwise product of the truncated lines 1 + t + ... + t^{m-1}, up to max_degree.
pub fn truncated_line_product(orders: &[usize], max_degree: usize) -> Vec<usize> {
    let mut acc = vec![0; max_degree + 1];
    acc[0] = 1;
    for &m in orders {
        let mut next = vec![0; max_degree + 1];
        for (a, &x) in acc.iter().enumerate() {
            for b in 0..m.min(max_degree + 1 - a) {
                next[a + b] += x;
            }
        }
        acc = next;
    }
    acc
}

/// A one-dimensional braiding q has finite Nichols algebra iff q is a root of unity other than 1.
pub fn one_dim_finite(q: &Scalar) -> bool {
    matches!(q.root_order(), Some(m) if m > 1)
}

/// ∏_{l=1}^{m} Σ_{k=1}^{l} s^{k-1} and whether it is nonzero.
pub fn t2_certificate(s: &Scalar, m: usize) -> (Scalar, bool) {
    let mut product = s.one_like();
    let mut partial = s.zero_like();
    let mut power = s.one_like();
    for _ in 1..=m {
        partial = &partial + &power;
        power = &power * s;
        product = &product * &partial;
    }
    let nonzero = !product.is_zero();
    (product, nonzero)
}

fn digits(mut idx: usize, d: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for s in (0..k).rev() {
        out[s] = idx % d;
        idx /= d;
    }
    out
}

/// Index of e_j ⊗ ... ⊗ e_j in V^{⊗k}.
pub fn diagonal_tensor_index(d: usize, k: usize, j: usize) -> usize {
    (0..k).fold(0, |acc, _| acc * d + j)
}

/// An entry of S_k that raises the total basis index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexViolation {
    pub input: Vec<usize>,
    pub output: Vec<usize>,
}

/// Nonzero entries of S_k never map v_{i_1}...v_{i_k} to v_{j_1}...v_{j_k} with Σj > Σi.
pub fn index_monotonicity_check(
    b: &BraidedSpace,
    k: usize,
    max_rows: usize,
) -> Result<Vec<IndexViolation>, NicholsError> {
    let s = braided_symmetrizer(b, k, max_rows)?;
    Ok(index_violations(&s, b.dim(), k))
}

pub fn index_violations(s: &SparseMatrix, d: usize, k: usize) -> Vec<IndexViolation> {
    let mut out = Vec::new();
    for row in 0..s.rows() {
        let output = digits(row, d, k);
        let out_sum: usize = output.iter().sum();
        for col in s.row(row).keys() {
            let input = digits(*col, d, k);
            if out_sum > input.iter().sum() {
                out.push(IndexViolation { input, output: output.clone() });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests;
