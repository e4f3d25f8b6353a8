use num_integer::lcm;

use super::*;

fn liu(conductor: u32, n: u32, w: u32, k: i64) -> Liu {
    Liu::new(n, w, Scalar::root_in(conductor, n, k).unwrap()).unwrap()
}

/// Parameter points covering β = γ^j, β a primitive 2n-th root, and β = t.
fn grid(n: u32) -> Vec<ModuleParams> {
    let mut out = Vec::new();
    for w in [1u32, 2] {
        let conductor = lcm(lcm(2 * n, 2 * w), 4);
        let h = liu(conductor, n, w, 1);
        for i in 0..n as i64 {
            for r in [0i64, 1] {
                for j in 0..n as i64 {
                    let alpha = Scalar::root_in(conductor, w, 1).unwrap();
                    out.push(ModuleParams::new(h.clone(), alpha, h.gamma_pow(j), r, i).unwrap());
                }
                let alpha = Scalar::root_in(conductor, 2 * w, 1).unwrap();
                let beta = Scalar::root_in(conductor, 2 * n, 1).unwrap();
                out.push(ModuleParams::new(h.clone(), alpha, beta, r, i).unwrap());
                if w == 1 {
                    let t = Scalar::t(conductor);
                    out.push(ModuleParams::new(h.clone(), t.pow(n as i64).unwrap(), t, r, i).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn canonical_grouplike_examples() {
    assert_eq!(canonical_grouplike(0, 3, 3, 2), (2, 0));
    assert_eq!(canonical_grouplike(2, -1, 3, 5), (-3, 2));
    assert_eq!(canonical_grouplike(4, 2, 3, 5), (4, 2));
}

#[test]
fn dimension_formula() {
    let h = liu(6, 3, 1, 1);
    let one = Scalar::from_int(6, 1);
    let p = ModuleParams::new(h.clone(), one.clone(), h.gamma().clone(), 0, 0).unwrap();
    assert_eq!(module_dim(&p), 2);
    let t = Scalar::t(6);
    let p = ModuleParams::new(h.clone(), t.pow(3).unwrap(), t, 0, 1).unwrap();
    assert_eq!(module_dim(&p), 3);
    for i in 0..3 {
        let p = ModuleParams::new(h.clone(), one.clone(), h.gamma_pow(-i), 0, i).unwrap();
        assert_eq!(module_dim(&p), 1);
    }
}

#[test]
fn construct_examples() {
    let h = liu(2, 2, 1, 1);
    let one = Scalar::from_int(2, 1);
    let triv = construct(&ModuleParams::new(h, one.clone(), one.clone(), 0, 0).unwrap()).unwrap();
    assert_eq!(triv.dim, 1);
    assert_eq!(triv.x_action, vec![one.clone()]);
    assert_eq!(triv.g_action, vec![one.clone()]);
    assert!(triv.y_action.is_zero());
    assert_eq!(triv.coaction, vec![vec![(HopfElement::term(Monomial::ONE, one.clone()), 0)]]);

    let h = liu(2, 2, 2, 1);
    let m1 = Scalar::from_int(2, -1);
    let p = ModuleParams::new(h, m1.clone(), m1.clone(), 1, 0).unwrap();
    let v = construct(&p).unwrap();
    assert_eq!(v.dim, 2);
    assert_eq!(v.g_action, vec![m1.clone(), one.clone()]);
    assert_eq!(v.y_action.entry(1, 0), one);
    assert!(v.y_action.entry(0, 1).is_zero());

    let n = 4;
    let h = liu(8, n, n, 1);
    let t = Scalar::t(8);
    let p = ModuleParams::new(h, t.clone(), t.clone(), 0, 1).unwrap();
    let v = construct(&p).unwrap();
    assert_eq!(v.dim, n as usize);
    let wrap = &Scalar::from_int(8, 1) - &t.pow(n as i64).unwrap();
    assert_eq!(v.y_action.entry(0, n as usize - 1), wrap);
    assert!(!wrap.is_zero());
}

#[test]
fn rejects_parameters_outside_index_set() {
    let h = liu(6, 3, 1, 1);
    let two = Scalar::from_int(6, 2);
    assert!(ModuleParams::new(h.clone(), two.clone(), Scalar::from_int(6, 1), 0, 0).is_err());
    assert!(ModuleParams::new(h.clone(), Scalar::zero(6), Scalar::zero(6), 0, 0).is_err());
    assert!(ModuleParams::new(h, Scalar::from_int(5, 1), Scalar::from_int(6, 1), 0, 0).is_err());
}

#[test]
fn constructed_modules_verify() {
    for n in 2..=3 {
        for p in grid(n) {
            let v = construct(&p).unwrap();
            let report = verify_all(&v, &p).unwrap();
            assert!(report.passed(), "n={n} α={} β={} r={} i={}: {:?}", p.alpha, p.beta, p.r, p.i, report.failures);
            let r = find_standard_elements(&v, &p);
            assert_eq!(r.len(), 1);
            assert!(r[0].vector[1..].iter().all(Scalar::is_zero));
            assert!(!r[0].vector[0].is_zero());
            assert_eq!(r[0].grouplike, canonical_grouplike(p.r, p.i, n, p.liu.w()));
            assert_eq!((&r[0].alpha, &r[0].beta), (&p.alpha, &p.beta));
        }
    }
}

#[test]
fn structural_invariants() {
    for p in grid(4) {
        let v = construct(&p).unwrap();
        for a in 0..v.dim {
            for b in a + 1..v.dim {
                assert_ne!(v.g_action[a], v.g_action[b]);
            }
        }
        let mut vec = vec![Scalar::zero(v.conductor()); v.dim];
        vec[0] = Scalar::from_int(v.conductor(), 1);
        for _ in 0..v.dim {
            vec = v.y_action.apply(&vec);
        }
        let beta_root = p.beta.pow(4).unwrap().is_one();
        assert_eq!(vec.iter().all(Scalar::is_zero), beta_root);
    }
}

#[test]
fn higher_compatibility_redundancy() {
    let p = &grid(3)[7];
    let v = construct(p).unwrap();
    let h = &p.liu;
    for u in [h.mul(&h.y(), &h.g()).unwrap(), h.normalize(2, 0, -1), h.y().add(&h.x())] {
        assert!(verify_compatibility_for(&v, p, &u).unwrap().passed());
    }
}

#[test]
fn module_mutation_is_detected() {
    let p = grid(3).into_iter().find(|p| p.beta.is_constant() && module_dim(p) >= 2).unwrap();
    let mut v = construct(&p).unwrap();
    v.g_action[1] = &v.g_action[1] * p.liu.gamma();
    let r = verify_module(&v, &p);
    assert!(r.failures.iter().any(|f| f.contains("yg")), "{:?}", r.failures);
}

#[test]
fn comodule_mutation_is_detected() {
    let p = grid(3).into_iter().find(|p| module_dim(p) >= 2).unwrap();
    let mut v = construct(&p).unwrap();
    v.coaction[1] = v.coaction[1]
        .iter()
        .map(|(h, l)| if *l == 1 { (p.liu.grouplike(p.r, p.i), 1) } else { (h.clone(), *l) })
        .collect();
    assert!(!verify_comodule(&v, &p).unwrap().passed());
}

#[test]
fn one_dimensional_comodule() {
    let h = liu(6, 3, 1, 1);
    let one = Scalar::from_int(6, 1);
    let p = ModuleParams::new(h.clone(), one, h.gamma_pow(-2), 1, 2).unwrap();
    let v = construct(&p).unwrap();
    assert_eq!(v.coaction, vec![vec![(h.grouplike(1, 2), 0)]]);
    assert!(verify_all(&v, &p).unwrap().passed());
    assert_eq!(find_standard_elements(&v, &p).len(), 1);
}

#[test]
fn direct_sum_has_two_rays() {
    let points = grid(3);
    let a = &points[0];
    let b = points.iter().find(|q| !is_isomorphic(a, q) && q.liu.w() == a.liu.w() && q.beta != a.beta).unwrap();
    let sum = construct(a).unwrap().direct_sum(&construct(b).unwrap());
    let rays = find_standard_elements(&sum, a);
    assert_eq!(rays.len(), 2);
}

#[test]
fn isomorphism_test() {
    let points = grid(3);
    for p in &points {
        let (n, w) = (p.liu.n() as i64, p.liu.w() as i64);
        let shifted = ModuleParams::new(p.liu.clone(), p.alpha.clone(), p.beta.clone(), p.r + w, p.i - n).unwrap();
        assert!(is_isomorphic(p, &shifted));
        assert!(is_isomorphic(p, p));
        let moved = ModuleParams::new(p.liu.clone(), p.alpha.clone(), p.beta.clone(), p.r + 1, p.i).unwrap();
        assert!(!is_isomorphic(p, &moved));
    }
    for a in &points {
        for b in &points {
            assert_eq!(is_isomorphic(a, b), is_isomorphic(b, a));
            if is_isomorphic(a, b) {
                assert_eq!(module_dim(a), module_dim(b));
                assert_eq!(construct(a).unwrap(), construct(b).unwrap());
            }
        }
    }
}

#[test]
fn json_round_trip() {
    let p = &grid(3)[5];
    let v = construct(p).unwrap();
    let back = YDModule::from_json(&v.to_json(), v.conductor()).unwrap();
    assert_eq!(back, v);
    let q = ModuleParams::from_json(&p.to_json()).unwrap();
    assert!(is_isomorphic(p, &q));
    assert!(YDModule::from_json(&json!({"dim": 2}), 6).is_err());
}
