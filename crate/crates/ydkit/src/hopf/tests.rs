use proptest::prelude::*;

use super::*;
use crate::scalars::q_binomial;

fn algebra(n: u32, w: u32) -> Liu {
    Liu::new(n, w, Scalar::root(n.max(2), 1)).unwrap()
}

fn pow(h: &Liu, u: &HopfElement, e: u32) -> HopfElement {
    let mut acc = h.one();
    for _ in 0..e {
        acc = h.mul(&acc, u).unwrap();
    }
    acc
}

#[test]
fn rejects_non_primitive_gamma() {
    assert!(Liu::new(4, 1, Scalar::root(4, 2)).is_err());
    assert!(Liu::new(3, 0, Scalar::root(3, 1)).is_err());
    assert!(Liu::new(3, 1, Scalar::from_int(3, 2)).is_err());
    assert!(Liu::new(6, 2, Scalar::root(6, 5)).is_ok());
}

#[test]
fn defining_relations() {
    for (n, w) in [(2, 1), (3, 1), (3, 2), (4, 3), (5, 2)] {
        let h = algebra(n, w);
        let (x, g, y) = (h.x(), h.g(), h.y());
        let yg = h.mul(&y, &g).unwrap();
        let gy = h.mul(&g, &y).unwrap();
        assert_eq!(yg, gy.scale(h.gamma()), "yg = γgy for n={n}");
        assert_eq!(pow(&h, &g, n), pow(&h, &x, w), "g^n = x^w");
        assert_eq!(pow(&h, &y, n), h.one().sub(&pow(&h, &x, w)), "y^n = 1 - x^w");
        assert_eq!(h.mul(&x, &y).unwrap(), h.mul(&y, &x).unwrap());
        assert_eq!(h.mul(&x, &g).unwrap(), h.mul(&g, &x).unwrap());
        assert_eq!(h.mul(&x, &h.grouplike(-1, 0)).unwrap(), h.one());
    }
}

#[test]
fn normalize_wraps_exponents() {
    let h = algebra(3, 2);
    let one_minus_xw = h.one().sub(&h.grouplike(2, 0));
    for a in 0..7u32 {
        for b in -4..5i64 {
            let base = h.normalize(a, b, 1);
            let shifted_y = h.normalize(a + 3, b, 1);
            assert_eq!(shifted_y, h.mul(&one_minus_xw, &base).unwrap());
            assert_eq!(h.normalize(a, b + 3, 1), h.normalize(a, b, 3));
        }
    }
    // y^7 = (1 - x^2)^2 y
    let expect = h.mul(&h.mul(&one_minus_xw, &one_minus_xw).unwrap(), &h.y()).unwrap();
    assert_eq!(h.normalize(7, 0, 0), expect);
}

#[test]
fn comul_of_y_power_matches_q_binomial_expansion() {
    // Δ(y^a) = Σ_p [a choose p]_γ γ^{-(a-p)p} y^{a-p} ⊗ y^p g^{a-p}
    for n in [3u32, 4, 5] {
        let h = algebra(n, 1);
        for a in 0..n {
            let d = h.comul(&h.normalize(a, 0, 0)).unwrap();
            let mut expect = TensorElement::zero(2);
            for p in 0..=a {
                let coeff = &q_binomial(a as usize, p as usize, h.gamma()).unwrap()
                    * &h.gamma_pow(-((a - p) as i64) * p as i64);
                expect.add_term(vec![Monomial::new(a - p, 0, 0), Monomial::new(p, a - p, 0)], coeff);
            }
            assert_eq!(d, expect, "n={n} a={a}");
        }
    }
}

#[test]
fn comul_of_generators() {
    let h = algebra(4, 1);
    let mut dy = TensorElement::zero(2);
    dy.add_term(vec![Monomial::new(1, 0, 0), Monomial::new(0, 1, 0)], h.scalar(1));
    dy.add_term(vec![Monomial::ONE, Monomial::new(1, 0, 0)], h.scalar(1));
    assert_eq!(h.comul(&h.y()).unwrap(), dy);
    let gx = Monomial::new(0, 3, -2);
    let mut dg = TensorElement::zero(2);
    dg.add_term(vec![gx, gx], h.scalar(1));
    assert_eq!(h.comul(&h.mono(gx)).unwrap(), dg);
}

#[test]
fn antipode_on_generators() {
    let h = algebra(3, 2);
    let sy = h.antipode(&h.y()).unwrap();
    assert_eq!(sy, h.mul(&h.y(), &h.grouplike(0, -1)).unwrap().neg());
    assert_eq!(h.antipode(&h.g()).unwrap(), h.grouplike(0, -1));
    assert_eq!(h.antipode(&h.x()).unwrap(), h.grouplike(-1, 0));
    // antipode law on y: S(y)g + S(1)y = 0
    assert!(h.mul(&sy, &h.g()).unwrap().add(&h.y()).is_zero());
}

#[test]
fn axioms_hold_on_basis() {
    for (n, w) in [(2, 1), (3, 1), (3, 2), (4, 2), (5, 1)] {
        let h = algebra(n, w);
        for a in 0..n {
            for b in 0..n {
                for c in [-1i64, 0, 2] {
                    let r = h.hopf_axiom_check(&h.mono(Monomial::new(a, b, c))).unwrap();
                    assert!(r.passed(), "n={n} w={w} y^{a}g^{b}x^{c}: {:?}", r.failures);
                }
            }
        }
    }
}

#[test]
fn support_limit_and_conductor_guard() {
    let h = algebra(2, 1).with_support_limit(2);
    let y = h.y();
    // y^2 = 1 - x fits, (1 + y)^2 = 2y + 1 - x does not
    assert!(h.mul(&y, &y).is_ok());
    let one_plus_y = h.one().add(&y);
    let sq = h.mul(&one_plus_y, &one_plus_y);
    assert!(matches!(sq, Err(HopfError::SupportLimit { limit: 2, .. })));
    let foreign = HopfElement::term(Monomial::ONE, Scalar::from_int(5, 1));
    assert!(matches!(algebra(3, 1).mul(&foreign, &foreign), Err(HopfError::ConductorMismatch { .. })));
}

#[test]
fn json_and_display() {
    let h = algebra(3, 1);
    let u = h.y().add(&h.grouplike(-2, 1).scale(&Scalar::root(3, 1))).add(&h.one().scale(&h.scalar(-2)));
    let back = HopfElement::from_json(&u.to_json()).unwrap();
    assert_eq!(back, u);
    assert_eq!(h.one().to_string(), "1");
    assert_eq!(h.mono(Monomial::new(2, 1, -3)).to_string(), "y^2 g x^-3");
    assert_eq!(HopfElement::zero().to_string(), "0");
    assert!(u.to_string().contains("zeta(3,1) · g x^-2"));
}

fn params() -> impl Strategy<Value = (u32, u32)> {
    prop_oneof![Just((2u32, 1u32)), Just((3, 1)), Just((3, 2)), Just((4, 1)), Just((5, 3))]
}

fn element(n: u32) -> impl Strategy<Value = Vec<(u32, u32, i64, i64, i64)>> {
    prop::collection::vec((0..n, 0..n, -2i64..3, -3i64..4, 0i64..n as i64), 1..4)
}

fn build(h: &Liu, spec: &[(u32, u32, i64, i64, i64)]) -> HopfElement {
    let mut u = HopfElement::zero();
    for &(a, b, c, k, e) in spec {
        u.add_term(Monomial::new(a, b, c), &h.scalar(k) * &h.gamma_pow(e));
    }
    u
}

fn triple() -> impl Strategy<Value = (u32, u32, Vec<(u32, u32, i64, i64, i64)>, Vec<(u32, u32, i64, i64, i64)>, Vec<(u32, u32, i64, i64, i64)>)> {
    params().prop_flat_map(|(n, w)| (Just(n), Just(w), element(n), element(n), element(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_is_associative((n, w, u, v, z) in triple()) {
        let h = algebra(n, w);
        let (u, v, z) = (build(&h, &u), build(&h, &v), build(&h, &z));
        let left = h.mul(&h.mul(&u, &v).unwrap(), &z).unwrap();
        let right = h.mul(&u, &h.mul(&v, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn comultiplication_is_multiplicative((n, w, u, v, _z) in triple()) {
        let h = algebra(n, w);
        let (u, v) = (build(&h, &u), build(&h, &v));
        let lhs = h.comul(&h.mul(&u, &v).unwrap()).unwrap();
        let rhs = h.tensor_mul(&h.comul(&u).unwrap(), &h.comul(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_is_anti_multiplicative((n, w, u, v, _z) in triple()) {
        let h = algebra(n, w);
        let (u, v) = (build(&h, &u), build(&h, &v));
        let lhs = h.antipode(&h.mul(&u, &v).unwrap()).unwrap();
        let rhs = h.mul(&h.antipode(&v).unwrap(), &h.antipode(&u).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn counit_is_multiplicative((n, w, u, v, _z) in triple()) {
        let h = algebra(n, w);
        let (u, v) = (build(&h, &u), build(&h, &v));
        prop_assert_eq!(h.counit(&h.mul(&u, &v).unwrap()), &h.counit(&u) * &h.counit(&v));
    }

    #[test]
    fn axioms_hold_on_random_elements((n, w, u, _v, _z) in triple()) {
        let h = algebra(n, w);
        let r = h.hopf_axiom_check(&build(&h, &u)).unwrap();
        prop_assert!(r.passed(), "{:?}", r.failures);
    }
}
