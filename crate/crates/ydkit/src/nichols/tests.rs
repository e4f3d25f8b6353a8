use proptest::prelude::*;

use super::*;
use crate::hopf::Liu;
use crate::yd::construct;

fn line(q: Scalar) -> BraidedSpace {
    BraidedSpace::diagonal(&[vec![q]]).unwrap()
}

fn minus_flip(conductor: u32) -> BraidedSpace {
    let mut c = SparseMatrix::zero(conductor, 4, 4);
    for a in 0..2 {
        for b in 0..2 {
            c.set(b * 2 + a, a * 2 + b, Scalar::from_int(conductor, -1));
        }
    }
    BraidedSpace::new(2, c).unwrap()
}

/// Number of inversions, counted directly.
fn inversion_count(p: &[usize]) -> usize {
    (0..p.len()).flat_map(|a| (a + 1..p.len()).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count()
}

/// Undoes the sorting swaps: applying the word left to right to the sorted arrangement.
fn word_to_perm(k: usize, word: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..k).collect();
    for &i in word {
        p.swap(i - 1, i);
    }
    p
}

#[test]
fn reduced_words_are_reduced_and_correct() {
    for k in 1..=5 {
        let perms = permutations(k);
        assert_eq!(perms.len(), (1..=k).product::<usize>());
        for p in perms {
            for word in [bubble_sort_word(&p), reverse_bubble_word(&p)] {
                assert_eq!(word.len(), inversion_count(&p));
                assert_eq!(word_to_perm(k, &word), p);
            }
        }
    }
}

#[test]
fn one_dimensional_symmetrizers() {
    let q = Scalar::root(12, 1);
    let one = q.one_like();
    let b = line(q.clone());
    let s2 = braided_symmetrizer(&b, 2, 64).unwrap();
    assert_eq!(s2.entry(0, 0), &one + &q);
    let s3 = braided_symmetrizer(&b, 3, 64).unwrap();
    let expect = &(&one + &q) * &(&(&one + &q) + &(&q * &q));
    assert_eq!(s3.entry(0, 0), expect);
    assert_eq!(symmetrizer_by_permutations(&b, 3, 64).unwrap(), s3);
    assert_eq!(braided_symmetrizer(&b, 1, 64).unwrap(), SparseMatrix::identity(12, 1));
}

#[test]
fn second_symmetrizer_is_id_plus_braiding() {
    let b = minus_flip(2);
    let s2 = braided_symmetrizer(&b, 2, 64).unwrap();
    assert_eq!(s2, SparseMatrix::identity(2, 4).add(b.braiding()));
    assert_eq!(s2.rank(), 1);
}

#[test]
fn rejects_bad_braidings() {
    let z = Scalar::zero(4);
    assert!(matches!(BraidedSpace::diagonal(&[vec![z]]), Err(NicholsError::NotInvertible)));
    assert!(BraidedSpace::new(2, SparseMatrix::identity(4, 3)).is_err());
    // c = flip + nilpotent perturbation breaks the braid equation
    let mut c = minus_flip(4).braiding().clone();
    c.set(0, 1, Scalar::from_int(4, 1));
    assert!(matches!(BraidedSpace::new(2, c), Err(NicholsError::BraidEquation)));
}

#[test]
fn line_truncates_at_root_order() {
    for m in [2u32, 3, 4, 6] {
        let b = line(Scalar::root(12, 12 / m as i64));
        let prefix = graded_dims(&b, m as usize + 2, Budget::default());
        let mut expect = vec![1; m as usize];
        expect.extend([0, 0, 0]);
        assert_eq!(prefix.dims, expect, "m={m}");
        assert!(prefix.truncated.is_none());
    }
    let prefix = graded_dims(&line(Scalar::from_int(12, 1)), 8, Budget::default());
    assert_eq!(prefix.dims, vec![1; 9]);
}

#[test]
fn sign_lines_give_exterior_algebra() {
    let m1 = Scalar::from_int(2, -1);
    let one = Scalar::from_int(2, 1);
    let b = BraidedSpace::diagonal(&[vec![m1.clone(), one.clone()], vec![one, m1]]).unwrap();
    assert_eq!(graded_dims(&b, 3, Budget::default()).dims, vec![1, 2, 1, 0]);
}

#[test]
fn disconnected_pairs_match_line_products() {
    for (a, b) in [(2usize, 2usize), (2, 3), (3, 3), (2, 4)] {
        let qa = Scalar::root(12, 12 / a as i64);
        let qb = Scalar::root(12, 12 / b as i64);
        let one = Scalar::from_int(12, 1);
        let space = BraidedSpace::diagonal(&[vec![qa, one.clone()], vec![one, qb]]).unwrap();
        let degree = a + b - 1;
        assert_eq!(graded_dims(&space, degree, Budget::default()).dims, truncated_line_product(&[a, b], degree));
    }
    assert_eq!(truncated_line_product(&[2, 3], 4), vec![1, 2, 2, 1, 0]);
}

#[test]
fn budget_truncates_with_marker() {
    let one = Scalar::from_int(4, 1);
    let b = BraidedSpace::diagonal(&[vec![one.clone(), one.clone()], vec![one.clone(), one]]).unwrap();
    let prefix = graded_dims(&b, 6, Budget { max_rows: 16, max_time: None });
    assert_eq!(prefix.dims, vec![1, 2, 3, 4, 5]);
    let t = prefix.truncated.as_ref().unwrap();
    assert_eq!(t.degree, 5);
    assert!(prefix.to_tsv().contains("# truncated at degree 5"));
    assert_eq!(prefix.to_json()["truncated"]["degree"], 5);
}

#[test]
fn one_dim_rule() {
    assert!(one_dim_finite(&Scalar::from_int(4, -1)));
    assert!(one_dim_finite(&Scalar::root(12, 5)));
    assert!(!one_dim_finite(&Scalar::from_int(4, 1)));
    assert!(!one_dim_finite(&Scalar::t(4)));
    assert!(!one_dim_finite(&Scalar::from_int(4, 2)));
}

#[test]
fn certificate_values() {
    let (v, nz) = t2_certificate(&Scalar::from_int(4, 1), 4);
    assert_eq!(v, Scalar::from_int(4, 24));
    assert!(nz);
    let t = Scalar::t(4);
    let one = t.one_like();
    let (v, nz) = t2_certificate(&t, 3);
    assert_eq!(v, &(&one + &t) * &(&(&one + &t) + &(&t * &t)));
    assert!(nz);
    let (v, nz) = t2_certificate(&Scalar::from_int(4, -1), 2);
    assert!(v.is_zero());
    assert!(!nz);
}

fn module(conductor: u32, n: u32, w: u32, alpha: Scalar, beta: Scalar, r: i64, i: i64) -> (ModuleParams, YDModule) {
    let liu = Liu::new(n, w, Scalar::root_in(conductor, n, 1).unwrap()).unwrap();
    let p = ModuleParams::new(liu, alpha, beta, r, i).unwrap();
    let v = construct(&p).unwrap();
    (p, v)
}

#[test]
fn yd_braiding_one_dimensional() {
    let n = 3;
    for i in 0..3i64 {
        let liu = Liu::new(n, 1, Scalar::root_in(6, 3, 1).unwrap()).unwrap();
        let beta = liu.gamma_pow(-i);
        let alpha = Scalar::from_int(6, 1);
        let p = ModuleParams::new(liu, alpha.clone(), beta.clone(), 2, i).unwrap();
        let v = construct(&p).unwrap();
        let b = braiding_from_yd(&v, &p).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(b.braiding().entry(0, 0), &alpha.pow(2).unwrap() * &beta.pow(i).unwrap());
    }
}

#[test]
fn companion_space_has_diagonal_braiding() {
    let (p, _) = module(6, 3, 1, Scalar::from_int(6, 1), Scalar::root_in(6, 3, 1).unwrap(), 0, 1);
    let w = companion_space(&p).unwrap();
    // c(y ⊗ y) = γ y ⊗ y
    assert_eq!(w.braiding().entry(0, 0), p.liu.gamma().clone());
    assert_eq!(w.braiding().entry(2, 1), p.beta.inv().unwrap());
    assert_eq!(w.braiding().entry(1, 2), p.liu.gamma_pow(-1));
}

#[test]
fn yd_braidings_satisfy_matsumoto_and_agree_with_permutation_sum() {
    let t = Scalar::t(4);
    let cases = vec![
        module(4, 2, 1, Scalar::from_int(4, 1), Scalar::from_int(4, -1), 0, 0),
        module(4, 2, 2, Scalar::from_int(4, -1), Scalar::from_int(4, -1), 1, 0),
        module(4, 2, 1, t.pow(2).unwrap(), t.clone(), 1, 1),
        module(6, 3, 1, Scalar::from_int(6, -1), Scalar::from_int(6, -1), 1, 2),
    ];
    for (p, v) in cases {
        let b = braiding_from_yd(&v, &p).unwrap();
        let kmax = if b.dim() > 2 { 3 } else { 4 };
        assert!(matsumoto_check(&b, kmax));
        for k in 1..=kmax {
            let fast = braided_symmetrizer(&b, k, 4096).unwrap();
            let slow = symmetrizer_by_permutations(&b, k, 4096).unwrap();
            assert_eq!(fast, slow, "k={k}");
            assert!(index_violations(&fast, b.dim(), k).is_empty());
        }
    }
}

#[test]
fn t2_diagonal_coefficient_matches_certificate() {
    // (α, β) = (t^2, t) over n = 2, w = 1; the entry at v_i^{⊗k} of S_k is the certificate product in α^r
    let t = Scalar::t(4);
    for (r, i) in [(1i64, 0i64), (1, 1), (0, 1), (2, 0)] {
        let (p, v) = module(4, 2, 1, t.pow(2).unwrap(), t.clone(), r, i);
        let b = braiding_from_yd(&v, &p).unwrap();
        let s = p.alpha.pow(r).unwrap();
        for k in 1..=4 {
            let sym = braided_symmetrizer(&b, k, 4096).unwrap();
            let idx = diagonal_tensor_index(2, k, i as usize);
            assert_eq!(sym.entry(idx, idx), t2_certificate(&s, k).0, "r={r} i={i} k={k}");
        }
    }
}

#[test]
fn index_monotonicity_negative_control() {
    // a braiding that sends v_0 ⊗ v_0 to v_1 ⊗ v_1 raises the index sum
    let conductor = 4;
    let mut c = SparseMatrix::identity(conductor, 4);
    c.set(3, 0, Scalar::from_int(conductor, 1));
    let b = BraidedSpace::new_unchecked(2, c).unwrap();
    let s = SparseMatrix::identity(conductor, 4).add(b.braiding());
    let v = index_violations(&s, 2, 2);
    assert_eq!(v, vec![IndexViolation { input: vec![0, 0], output: vec![1, 1] }]);
}

fn diagonal_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0i64..12, 2), 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn factorized_symmetrizer_matches_permutation_sum(exps in diagonal_strategy(), k in 1usize..5) {
        let q: Vec<Vec<Scalar>> = exps.iter().map(|row| row.iter().map(|&e| Scalar::root(12, e)).collect()).collect();
        let b = BraidedSpace::diagonal(&q).unwrap();
        prop_assert_eq!(braided_symmetrizer(&b, k, 4096).unwrap(), symmetrizer_by_permutations(&b, k, 4096).unwrap());
    }

    #[test]
    fn diagonal_braidings_satisfy_braid_equation(exps in diagonal_strategy()) {
        let q: Vec<Vec<Scalar>> = exps.iter().map(|row| row.iter().map(|&e| Scalar::root(12, e)).collect()).collect();
        let b = BraidedSpace::diagonal(&q).unwrap();
        prop_assert!(b.braid_equation_holds());
        prop_assert!(matsumoto_check(&b, 4));
    }
}
