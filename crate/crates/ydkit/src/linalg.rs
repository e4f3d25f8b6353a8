//! Sparse matrices over the scalar field with exact rank and nullspace.
//!
//! Rank splits the matrix into independent blocks (connected components of
//! the row/column incidence graph) and eliminates each block separately.

use std::collections::BTreeMap;

use crate::scalars::Scalar;

type Row = BTreeMap<usize, Scalar>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    conductor: u32,
    rows: usize,
    cols: usize,
    data: Vec<Row>,
}

impl SparseMatrix {
    pub fn zero(conductor: u32, rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix { conductor, rows, cols, data: vec![Row::new(); rows] }
    }

    pub fn identity(conductor: u32, n: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zero(conductor, n, n);
        for k in 0..n {
            m.data[k].insert(k, Scalar::from_int(conductor, 1));
        }
        m
    }

    pub fn diagonal(conductor: u32, entries: &[Scalar]) -> SparseMatrix {
        let mut m = SparseMatrix::zero(conductor, entries.len(), entries.len());
        for (k, v) in entries.iter().enumerate() {
            m.set(k, k, v.clone());
        }
        m
    }

    pub fn from_dense(conductor: u32, rows: &[Vec<Scalar>]) -> SparseMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::zero(conductor, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let zero = Scalar::zero(self.conductor);
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).cloned().unwrap_or_else(|| zero.clone())).collect())
            .collect()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Scalar> {
        self.data[r].get(&c)
    }

    /// The entry at (r, c), zero when absent.
    pub fn entry(&self, r: usize, c: usize) -> Scalar {
        self.get(r, c).cloned().unwrap_or_else(|| Scalar::zero(self.conductor))
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, Scalar> {
        &self.data[r]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        add_into(&mut self.data[r], c, v.clone());
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = SparseMatrix::zero(self.conductor, self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let acc = &mut out.data[r];
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    add_into(acc, *c, a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in sum");
        let mut out = self.clone();
        for (r, row) in other.data.iter().enumerate() {
            for (c, v) in row {
                add_into(&mut out.data[r], *c, v.clone());
            }
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add(&other.scale(&Scalar::from_int(self.conductor, -1)))
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.conductor, self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out.set(r, *c, v * s);
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.conductor, self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out.data[*c].insert(r, v.clone());
            }
        }
        out
    }

    /// Kronecker product; row index of the result is r1 * other.rows + r2.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.conductor, self.rows * other.rows, self.cols * other.cols);
        for (r1, row1) in self.data.iter().enumerate() {
            for (c1, a) in row1 {
                for (r2, row2) in other.data.iter().enumerate() {
                    for (c2, b) in row2 {
                        out.data[r1 * other.rows + r2].insert(c1 * other.cols + c2, a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = Scalar::zero(self.conductor);
                for (c, a) in row {
                    if !v[*c].is_zero() {
                        acc = &acc + &(a * &v[*c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row groups of the independent diagonal blocks (after permuting rows and columns).
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.rows).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut owner: Vec<Option<usize>> = vec![None; self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for c in row.keys() {
                match owner[*c] {
                    None => owner[*c] = Some(r),
                    Some(o) => {
                        let (a, b) = (find(&mut parent, o), find(&mut parent, r));
                        if a != b {
                            parent[a] = b;
                        }
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for r in 0..self.rows {
            if !self.data[r].is_empty() {
                let root = find(&mut parent, r);
                groups.entry(root).or_default().push(r);
            }
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|g| g[0]);
        out
    }

    pub fn rank(&self) -> usize {
        self.blocks()
            .into_iter()
            .map(|group| echelon(group.into_iter().map(|r| self.data[r].clone()).collect()).len())
            .sum()
    }

    /// Reduced row echelon form: pivot column to pivot row (leading 1, zero in other pivot columns).
    pub fn rref(&self) -> BTreeMap<usize, BTreeMap<usize, Scalar>> {
        let mut pivots = echelon(self.data.clone());
        let cols: Vec<usize> = pivots.keys().rev().copied().collect();
        for &pc in &cols {
            let prow = pivots[&pc].clone();
            for (&other, row) in pivots.iter_mut() {
                if other == pc {
                    continue;
                }
                if let Some(f) = row.get(&pc).cloned() {
                    axpy(row, &-&f, &prow);
                }
            }
        }
        pivots
    }

    /// A basis of {v : M v = 0}, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let rref = self.rref();
        let zero = Scalar::zero(self.conductor);
        let one = Scalar::from_int(self.conductor, 1);
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|c| !rref.contains_key(c)) {
            let mut v = vec![zero.clone(); self.cols];
            v[f] = one.clone();
            for (pc, row) in &rref {
                if let Some(x) = row.get(&f) {
                    v[*pc] = -x;
                }
            }
            basis.push(v);
        }
        basis
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

fn add_into(row: &mut Row, c: usize, v: Scalar) {
    if v.is_zero() {
        return;
    }
    match row.get_mut(&c) {
        Some(x) => {
            let s = &*x + &v;
            if s.is_zero() {
                row.remove(&c);
            } else {
                *x = s;
            }
        }
        None => {
            row.insert(c, v);
        }
    }
}

/// row += f * other
fn axpy(row: &mut Row, f: &Scalar, other: &Row) {
    for (c, v) in other {
        add_into(row, *c, f * v);
    }
}

/// Incremental elimination; returns the pivot rows keyed by leading column, each normalized.
fn echelon(mut rows: Vec<Row>) -> BTreeMap<usize, Row> {
    rows.sort_by_key(BTreeMap::len);
    let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
    for mut row in rows {
        while let Some((&c, lead)) = row.first_key_value() {
            match pivots.get(&c) {
                Some(p) => {
                    let f = -lead;
                    axpy(&mut row, &f, p);
                }
                None => {
                    let inv = lead.inv().expect("nonzero pivot");
                    let normalized: Row = row.iter().map(|(k, v)| (*k, v * &inv)).collect();
                    pivots.insert(c, normalized);
                    break;
                }
            }
        }
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(12, v)
    }

    /// Rank by dense elimination over the same field, for cross-checking.
    fn dense_rank(m: &[Vec<Scalar>]) -> usize {
        let mut a = m.to_vec();
        let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            let inv = a[rank][c].inv().unwrap();
            for r in 0..rows {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] * &inv;
                    for k in 0..cols {
                        let d = &f * &a[rank][k];
                        a[r][k] = &a[r][k] - &d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_and_nullspace_small() {
        let z = Scalar::root(12, 1);
        let m = SparseMatrix::from_dense(
            12,
            &[vec![s(1), z.clone(), s(0)], vec![z.clone(), &z * &z, s(0)], vec![s(0), s(0), s(3)]],
        );
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&ns[0]).iter().all(Scalar::is_zero));
        assert!(SparseMatrix::identity(12, 4).is_invertible());
        assert_eq!(SparseMatrix::zero(12, 3, 5).rank(), 0);
        assert_eq!(SparseMatrix::zero(12, 3, 5).nullspace().len(), 5);
    }

    #[test]
    fn blocks_split_independent_parts() {
        let mut m = SparseMatrix::zero(12, 4, 4);
        m.set(0, 0, s(1));
        m.set(1, 2, s(2));
        m.set(2, 0, s(3));
        m.set(3, 3, s(1));
        let blocks = m.blocks();
        assert_eq!(blocks, vec![vec![0, 2], vec![1], vec![3]]);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn products_and_kron() {
        let a = SparseMatrix::from_dense(12, &[vec![s(1), s(2)], vec![s(0), s(1)]]);
        let b = SparseMatrix::from_dense(12, &[vec![s(0), s(1)], vec![s(1), s(0)]]);
        assert_eq!(a.mul(&b).to_dense(), vec![vec![s(2), s(1)], vec![s(1), s(0)]]);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.entry(1, 2), s(2));
        assert_eq!(k.entry(2, 3), s(1));
        assert_eq!(a.transpose().entry(1, 0), s(2));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn rational_function_entries() {
        let t = Scalar::t(12);
        let one = s(1);
        let m = SparseMatrix::from_dense(12, &[vec![one.clone(), t.clone()], vec![t.clone(), &t * &t]]);
        assert_eq!(m.rank(), 1);
        let m = SparseMatrix::from_dense(12, &[vec![one.clone(), t.clone()], vec![t.clone(), one.clone()]]);
        assert_eq!(m.rank(), 2);
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn sparse_rank_matches_dense(entries in prop::collection::vec((0usize..5, 0usize..6, -2i64..3, 0i64..12), 0..14)) {
            let mut m = SparseMatrix::zero(12, 5, 6);
            for (r, c, k, e) in entries {
                m.set(r, c, &s(k) * &Scalar::root(12, e));
            }
            let rank = m.rank();
            prop_assert_eq!(rank, dense_rank(&m.to_dense()));
            prop_assert_eq!(rank, m.transpose().rank());
            let ns = m.nullspace();
            prop_assert_eq!(ns.len() + rank, 6);
            for v in &ns {
                prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
            }
        }
    }
}
