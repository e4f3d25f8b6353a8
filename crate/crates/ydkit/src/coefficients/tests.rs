use proptest::prelude::*;

use super::*;
use crate::hopf::Monomial;

fn liu(n: u32, w: u32, k: i64) -> Liu {
    Liu::new(n, w, Scalar::root_in(2 * n, n, k).unwrap()).unwrap()
}

fn params(n: u32, beta: Scalar, r: i64, i: i64) -> CoeffParams {
    CoeffParams::new(liu(n, 1, 1), beta, r, i).unwrap()
}

/// β over {γ^j} ∪ {a primitive 2n-th root} ∪ {t}.
fn betas(h: &Liu) -> Vec<Scalar> {
    let n = h.n();
    let mut out: Vec<Scalar> = (0..n as i64).map(|j| h.gamma_pow(j)).collect();
    out.push(Scalar::root(2 * n, 1));
    out.push(Scalar::t(2 * n));
    out
}

fn small_grid() -> Vec<CoeffParams> {
    let mut out = Vec::new();
    for n in 2..=4u32 {
        for k in (1..n as i64).filter(|k| num_integer::gcd(*k, n as i64) == 1) {
            let h = liu(n, 1, k);
            for beta in betas(&h) {
                for i in 0..n as i64 {
                    for r in 0..2 {
                        out.push(CoeffParams::new(h.clone(), beta.clone(), r, i).unwrap());
                    }
                }
            }
        }
    }
    out
}

#[test]
fn phi_convention() {
    assert_eq!(phi(0, 3), 3);
    assert_eq!(phi(1, 3), 1);
    assert_eq!(phi(-1, 3), 2);
    assert_eq!(phi(6, 3), 3);
    assert_eq!(phi(-7, 1), 1);
}

#[test]
fn r_coeff_values() {
    let p = params(3, Scalar::root_in(6, 3, 1).unwrap(), 0, 0);
    for k in 0..5 {
        assert!(p.r_coeff(k, k).unwrap().is_one());
    }
    let z3 = Scalar::root_in(6, 3, 1).unwrap();
    assert_eq!(p.r_coeff(1, 0).unwrap(), &z3 - &Scalar::from_int(6, 1));
    assert!(p.r_coeff(1, 2).is_err());
}

#[test]
fn r_vanishes_exactly_at_boundary() {
    // R(m+1,0) = 0 iff β = γ^{m-i}
    let n = 5;
    let h = liu(n, 1, 2);
    for i in -3..4i64 {
        for j in 0..n as i64 {
            let p = CoeffParams::new(h.clone(), h.gamma_pow(j), 0, i).unwrap();
            for m in 0..2 * n {
                let vanishes = p.r_coeff(m + 1, 0).unwrap().is_zero();
                assert_eq!(vanishes, (j - (m as i64 - i)).rem_euclid(n as i64) == 0, "i={i} j={j} m={m}");
            }
        }
    }
}

#[test]
fn lambda_anchors() {
    for p in small_grid() {
        let n = p.liu.n();
        let g_inv_i = p.liu.gamma_pow(-p.i);
        assert_eq!(p.lambda_recursive(1, 0).unwrap(), &p.beta - &g_inv_i);
        let anchor = &p.beta.pow(n as i64).unwrap() - &p.beta.one_like();
        assert_eq!(p.lambda_recursive(n, 0).unwrap(), anchor);
        assert_eq!(p.lambda_explicit(n, 0).unwrap(), anchor);
        for k in 0..=n + 2 {
            assert!(p.lambda_recursive(k, k).unwrap().is_one());
            assert!(p.lambda_explicit(k, k).unwrap().is_one());
        }
    }
}

#[test]
fn dual_paths_agree() {
    for p in small_grid() {
        let kmax = p.liu.n() + 2;
        let rows = p.c_rows_recursive(kmax).unwrap();
        for k in 0..=kmax {
            for l in 0..=k {
                assert_eq!(p.lambda_explicit(k, l).unwrap(), p.lambda_recursive(k, l).unwrap());
                assert_eq!(rows[k as usize][l as usize], p.c_coeff(k, l).unwrap(), "c({k},{l})");
            }
        }
    }
}

#[test]
fn c_coeff_examples() {
    let h = liu(3, 2, 1);
    let p = CoeffParams::new(h.clone(), Scalar::t(6), 1, 2).unwrap();
    assert_eq!(p.c_coeff(0, 0).unwrap(), h.grouplike(1, 2));
    for k in 0..6 {
        assert_eq!(p.c_coeff(k, k).unwrap(), h.grouplike(1, 2 - k as i64));
    }
    assert_eq!(p.c_coeff_recursive(2, 2).unwrap(), h.grouplike(1, 0));
}

#[test]
fn comatrix_entries() {
    let h = liu(4, 1, 1);
    let beta = Scalar::root(8, 1);
    let p = CoeffParams::new(h.clone(), beta.clone(), 1, 3).unwrap();
    let a0 = build_comatrix(&p, 0).unwrap();
    assert_eq!(a0.entries, vec![vec![h.grouplike(1, 3)]]);
    let a1 = build_comatrix(&p, 1).unwrap();
    let expect = h.normalize(1, 2, 1).scale(&(&beta - &h.gamma_pow(-3)));
    assert_eq!(a1.entries[1][0], expect);
    assert!(a1.entries[0][1].is_zero());
    let a4 = build_comatrix(&p, 4).unwrap();
    for k in 0..=4 {
        assert_eq!(a4.entries[k][k], h.grouplike(1, 3 - k as i64));
    }
    let tsv = a1.to_tsv();
    assert_eq!(tsv.lines().count(), 2);
    assert_eq!(a1.to_json()["p"], 1);
}

#[test]
fn comatrix_axioms_and_mutation() {
    for p in small_grid().into_iter().step_by(3) {
        for size in 0..=p.liu.n() {
            let m = build_comatrix(&p, size).unwrap();
            assert_eq!(is_comatrix(&m, &p.liu).unwrap(), None);
        }
    }
    let h = liu(3, 1, 1);
    let p = CoeffParams::new(h.clone(), Scalar::t(6), 0, 1).unwrap();
    // adding y x^r g^{i-1} to entry (1,0) keeps the 2x2 block a comatrix; the defect shows in row 2
    let shift = h.normalize(1, 0, 0);
    let mut m = build_comatrix(&p, 1).unwrap();
    m.entries[1][0] = m.entries[1][0].add(&shift);
    assert_eq!(is_comatrix(&m, &h).unwrap(), None);
    let mut m = build_comatrix(&p, 2).unwrap();
    m.entries[1][0] = m.entries[1][0].add(&shift);
    let fail = is_comatrix(&m, &h).unwrap().unwrap();
    assert_eq!((fail.row, fail.col, fail.axiom), (2, 0, "comultiplication"));
    // a perturbation with the wrong group-like part fails at (1,0) itself
    let mut m = build_comatrix(&p, 2).unwrap();
    m.entries[1][0] = m.entries[1][0].add(&h.normalize(1, 1, 0));
    let fail = is_comatrix(&m, &h).unwrap().unwrap();
    assert_eq!((fail.row, fail.col), (1, 0));
    let mut m = build_comatrix(&p, 2).unwrap();
    m.entries[1][1] = h.grouplike(0, 1);
    assert!(is_comatrix(&m, &h).unwrap().is_some());
    let mut m = build_comatrix(&p, 1).unwrap();
    m.entries[0][0] = m.entries[0][0].scale(&Scalar::from_int(6, 2));
    assert_eq!(is_comatrix(&m, &h).unwrap().unwrap().axiom, "counit");
}

#[test]
fn shapes() {
    let h = liu(4, 1, 1);
    let generic = CoeffParams::new(h.clone(), Scalar::t(8), 0, 1).unwrap();
    let r = shape_report(&generic).unwrap();
    assert_eq!(r.case, ShapeCase::Generic);
    assert_eq!(r.size, 4);
    assert!(r.passed());
    assert!(r.first_column_nonzero);
    assert_eq!(r.nonzero[4], vec![true, false, false, false, true]);

    for i in 0..4i64 {
        for j in 0..4i64 {
            let p = CoeffParams::new(h.clone(), h.gamma_pow(j), 0, i).unwrap();
            let r = shape_report(&p).unwrap();
            let m = 4 - phi(-i - j, 4);
            assert_eq!(r.case, ShapeCase::RootOfUnity { j: j as u32, m });
            assert_eq!(p.boundary_index(), Some(m));
            assert!(r.passed(), "i={i} j={j}");
        }
    }
    let p = CoeffParams::new(h.clone(), h.gamma_pow(-2), 0, 2).unwrap();
    assert_eq!(p.boundary_index(), Some(0));
    assert!(generic.boundary_index().is_none());
}

#[test]
fn rejects_bad_params() {
    let h = liu(3, 1, 1);
    assert!(CoeffParams::new(h.clone(), Scalar::zero(6), 0, 0).is_err());
    assert!(CoeffParams::new(h, Scalar::from_int(5, 1), 0, 0).is_err());
}

#[test]
fn comatrix_entry_is_single_monomial() {
    let h = liu(3, 1, 1);
    let p = CoeffParams::new(h, Scalar::t(6), 0, 0).unwrap();
    let c = p.c_coeff(2, 1).unwrap();
    assert_eq!(c.len(), 1);
    let (m, _) = c.terms().next().unwrap();
    assert_eq!(*m, Monomial::new(1, 1, -1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lambda_vanishing_pattern(n in 2u32..7, j in 0i64..7, i in -6i64..7) {
        // with β = γ^j, λ(k,l) = 0 when k > m >= l; beyond k = n the factor R(l,0) also
        // vanishes at l = m+1+sn and the γ-binomial at k mod n < l mod n
        let h = liu(n, 1, 1);
        let p = CoeffParams::new(h.clone(), h.gamma_pow(j), 0, i).unwrap();
        let m = p.boundary_index().unwrap();
        for k in 0..=2 * n + 1 {
            for l in 0..=k {
                let zero = p.lambda_recursive(k, l).unwrap().is_zero();
                let binomial_zero = k % n < l % n;
                let r_zero = (0..3).any(|s| l < m + 1 + s * n && m + 1 + s * n <= k);
                prop_assert_eq!(zero, r_zero || binomial_zero, "k={} l={} m={}", k, l, m);
                if k < n {
                    prop_assert_eq!(zero, k > m && m >= l);
                }
            }
        }
    }

    #[test]
    fn lambda_paths_agree_for_rational_multiples(n in 2u32..6, num in -5i64..6, den in 1i64..5, e in 0i64..12, i in -4i64..5) {
        prop_assume!(num != 0);
        let h = liu(n, 1, 1);
        let beta = &Scalar::from_rational(2 * n, &num_rational::BigRational::new(num.into(), den.into())) * &Scalar::root(2 * n, e);
        let p = CoeffParams::new(h, beta, 0, i).unwrap();
        for k in 0..=n + 2 {
            for l in 0..=k {
                prop_assert_eq!(p.lambda_explicit(k, l).unwrap(), p.lambda_recursive(k, l).unwrap());
            }
        }
    }
}
