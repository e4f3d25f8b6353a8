use super::*;
use proptest::prelude::*;

fn z(n: u32, k: i64) -> Scalar {
    Scalar::root(n, k)
}

fn int(n: u32, v: i64) -> Scalar {
    Scalar::from_int(n, v)
}

/// Least m with s^m = 1 by plain repeated multiplication over the divisors of lcm(2,N).
fn order_by_powering(s: &Scalar) -> Option<u32> {
    let l = s.unit_group_order();
    let mut best = None;
    for d in (1..=l).rev() {
        if !l.is_multiple_of(d) {
            continue;
        }
        let mut acc = s.one_like();
        for _ in 0..d {
            acc = &acc * s;
        }
        if acc.is_one() {
            best = Some(d);
        }
    }
    best
}

#[test]
fn root_examples() {
    assert!(z(1, 0).is_one());
    assert_eq!(z(2, 1), int(2, -1));
    assert_eq!(&z(4, 1) * &z(4, 1), int(4, -1));
    assert!(z(7, 0).is_one());
    assert_eq!(z(5, 7), z(5, 2));
}

#[test]
fn field_op_examples() {
    assert!(z(3, 1).pow(3).unwrap().is_one());
    let s = &z(3, 1) + &(&z(3, 2) + &int(3, 1));
    assert!(s.is_zero());
    let t = Scalar::t(3);
    assert!((&t.inv().unwrap() * &t).is_one());
    assert_eq!(int(5, 0).inv(), Err(ScalarError::DivisionByZero));
    assert_eq!(int(5, 0).pow(-1), Err(ScalarError::DivisionByZero));
}

#[test]
fn root_order_examples() {
    assert_eq!(int(6, -1).root_order(), Some(2));
    assert_eq!(z(12, 5).root_order(), Some(12));
    assert_eq!(Scalar::t(12).root_order(), None);
    assert_eq!(int(12, 2).root_order(), None);
    let half = &int(12, 1) + &z(12, 1);
    assert_eq!(half.root_order(), order_by_powering(&half));
}

#[test]
fn odd_conductor_hosts_sign() {
    let m = int(3, -1);
    assert_eq!(m.root_order(), Some(2));
    let r6 = Scalar::root_in(3, 6, 1).unwrap();
    assert_eq!(r6.root_order(), Some(6));
    assert_eq!(&r6 * &r6, z(3, 1));
    assert!(Scalar::root_in(3, 4, 1).is_err());
}

#[test]
fn q_binomial_examples() {
    let q = Scalar::t(1);
    assert_eq!(q_binomial(2, 1, &q).unwrap(), &int(1, 1) + &q);
    for p in 1..3 {
        assert!(q_binomial(3, p, &z(3, 1)).unwrap().is_zero());
    }
    assert_eq!(q_binomial(4, 2, &int(1, 1)).unwrap(), int(1, 6));
    assert!(q_binomial(2, 3, &q).is_err());
}

#[test]
fn q_binomial_matches_product_formula() {
    // binom(k,p)_q = prod_{j=1..p} (1 - q^(k-p+j)) / (1 - q^j) at q = t
    let t = Scalar::t(4);
    let one = int(4, 1);
    for k in 0..7usize {
        for p in 0..=k {
            let mut num = one.clone();
            let mut den = one.clone();
            for j in 1..=p {
                num = &num * &(&one - &t.pow((k - p + j) as i64).unwrap());
                den = &den * &(&one - &t.pow(j as i64).unwrap());
            }
            assert_eq!(q_binomial(k, p, &t).unwrap(), num.div(&den).unwrap(), "k={k} p={p}");
        }
    }
}

#[test]
fn rational_functions_cancel() {
    let n = 5;
    let t = Scalar::t(n);
    let one = int(n, 1);
    let a = &(&t * &t) - &one;
    let b = &t - &one;
    let q = a.div(&b).unwrap();
    assert_eq!(q, &t + &one);
    assert!(q.is_polynomial());
    let r = one.div(&(&t + &z(n, 2))).unwrap();
    assert_eq!(&r * &(&t + &z(n, 2)), one);
    assert!(!r.is_constant());
}

#[test]
fn embedding_preserves_arithmetic() {
    let a = &z(6, 1) + &int(6, 3);
    let b = &z(6, 5) * &Scalar::t(6);
    let big = 12;
    let lhs = (&a * &b).embed(big).unwrap();
    let rhs = &a.embed(big).unwrap() * &b.embed(big).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(z(3, 1).embed(12).unwrap(), z(12, 4));
    assert!(z(8, 1).embed(12).is_err());
}

#[test]
fn literal_parsing() {
    let l = Literal::parse("zeta(12,5)").unwrap();
    assert_eq!((l.root_order, l.root_exp), (12, 5));
    let l = Literal::parse("zeta(4,2)").unwrap();
    assert_eq!((l.root_order, l.root_exp), (2, 1));
    let l = Literal::parse("-t^3").unwrap();
    assert_eq!(l.to_scalar(2).unwrap(), -&Scalar::t_pow(2, 3));
    let l = Literal::parse("1/2*zeta(3,1)*zeta(4,1)").unwrap();
    assert_eq!(l.root_order, 12);
    assert_eq!(
        l.to_scalar(12).unwrap(),
        &Scalar::from_rational(12, &BigRational::new(1.into(), 2.into())) * &z(12, 7)
    );
    assert!(Literal::parse("zeta(0,1)").is_err());
    assert!(Literal::parse("q").is_err());
}

#[test]
fn json_round_trip() {
    let s = (&z(12, 1) + &Scalar::from_rational(12, &BigRational::new(3.into(), 7.into())))
        .div(&(&Scalar::t(12) - &z(12, 3)))
        .unwrap();
    let back = Scalar::from_json(&s.to_json()).unwrap();
    assert_eq!(s, back);
}

#[test]
fn display_forms() {
    assert_eq!(z(12, 4).to_string(), "zeta(3,1)");
    assert_eq!(int(12, -1).to_string(), "-1");
    assert_eq!((&int(4, 1) + &Scalar::t(4)).to_string(), "1 + t");
    assert_eq!((&int(12, 2) + &z(12, 1)).to_string(), "2 + zeta(12,1)");
}

#[test]
fn cyclotomic_degrees_are_totients() {
    for n in 1u32..=30 {
        let phi = (1..=n).filter(|k| k.gcd(&n) == 1).count();
        assert_eq!(cyclotomic_polynomial(n).len() - 1, phi, "N={n}");
    }
}

#[test]
fn all_roots_sum_to_zero() {
    for n in 2u32..=24 {
        let mut acc = Scalar::zero(n);
        for k in 0..n as i64 {
            acc = &acc + &z(n, k);
        }
        assert!(acc.is_zero(), "N={n}");
    }
}

#[test]
fn root_powers_and_orders_up_to_24() {
    for n in 1u32..=24 {
        for k in 0..n as i64 {
            let r = z(n, k);
            assert!(r.pow(n as i64).unwrap().is_one());
            let expect = n / (k as u32).gcd(&n);
            assert_eq!(r.root_order(), Some(expect), "N={n} k={k}");
            assert_eq!(order_by_powering(&r), Some(expect));
        }
    }
}

fn arb_scalar(n: u32) -> impl Strategy<Value = Scalar> {
    let deg = cyclotomic_polynomial(n).len() - 1;
    (
        proptest::collection::vec(-4i64..5, deg),
        1i64..4,
        0i64..3,
        proptest::bool::ANY,
    )
        .prop_map(move |(cs, d, tp, with_t)| {
            let mut acc = Scalar::zero(n);
            for (j, c) in cs.iter().enumerate() {
                acc = &acc + &(&int(n, *c) * &z(n, j as i64));
            }
            acc = acc.div(&int(n, d)).unwrap();
            if with_t {
                acc = &acc + &Scalar::t_pow(n, tp);
            }
            acc
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms((a, b, c) in (0usize..4).prop_flat_map(|s| {
        let n = [3u32, 5, 8, 12][s];
        (arb_scalar(n), arb_scalar(n), arb_scalar(n))
    })) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn q_binomial_symmetry(k in 0usize..=8, p in 0usize..=8, e in 0i64..12, with_t in proptest::bool::ANY) {
        prop_assume!(p <= k);
        let q = if with_t { Scalar::t(12) } else { z(12, e) };
        prop_assert_eq!(q_binomial(k, p, &q).unwrap(), q_binomial(k, k - p, &q).unwrap());
    }
}
