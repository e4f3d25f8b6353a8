//! Elements of Q(zeta_N) in the power basis modulo the N-th cyclotomic polynomial.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Per-conductor tables: the cyclotomic polynomial and every root of unity of the field.
#[derive(Debug)]
pub(crate) struct Ctx {
    pub conductor: u32,
    pub degree: usize,
    /// Size of the root-of-unity group of Q(zeta_N), lcm(2, N).
    pub order: u32,
    phi: Vec<BigInt>,
    roots: Vec<Vec<BigInt>>,
    root_log: HashMap<Vec<BigInt>, u32>,
}

/// `num / den` with `num` of length `degree`, `den > 0` and no common content.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Cy {
    pub num: Vec<BigInt>,
    pub den: BigInt,
}

static CONTEXTS: OnceLock<Mutex<HashMap<u32, Arc<Ctx>>>> = OnceLock::new();

pub(crate) fn context(conductor: u32) -> Arc<Ctx> {
    assert!(conductor >= 1, "conductor must be positive");
    let map = CONTEXTS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = map.lock().unwrap().get(&conductor) {
        return c.clone();
    }
    let built = Arc::new(Ctx::build(conductor));
    map.lock().unwrap().entry(conductor).or_insert(built).clone()
}

pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    let mut memo = HashMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u32, memo: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let q = cyclotomic_memo(d, memo);
            p = exact_div_monic(&p, &q);
        }
    }
    memo.insert(n, p.clone());
    p
}

fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let dq = a.len() - 1 - db;
    let mut quot = vec![BigInt::zero(); dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

impl Ctx {
    fn build(conductor: u32) -> Ctx {
        let phi = cyclotomic_poly(conductor);
        let degree = phi.len() - 1;
        let order = if conductor.is_multiple_of(2) { conductor } else { 2 * conductor };
        let mut ctx = Ctx {
            conductor,
            degree,
            order,
            phi,
            roots: Vec::new(),
            root_log: HashMap::new(),
        };
        let gen = if conductor.is_multiple_of(2) {
            ctx.x_power(1)
        } else {
            ctx.x_power((conductor as usize).div_ceil(2)).into_iter().map(|c| -c).collect()
        };
        let mut cur = ctx.x_power(0);
        for k in 0..order {
            ctx.root_log.insert(cur.clone(), k);
            let next = ctx.mul_int(&cur, &gen);
            ctx.roots.push(cur);
            cur = next;
        }
        ctx
    }

    fn x_power(&self, k: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); k.max(self.degree) + 1];
        v[k] = BigInt::one();
        self.fold(v)
    }

    /// Reduces an integer polynomial of any length modulo the monic cyclotomic polynomial.
    fn fold(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree;
        for idx in (d..v.len()).rev() {
            if v[idx].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[idx]);
            for j in 0..d {
                if !self.phi[j].is_zero() {
                    v[idx - d + j] -= &c * &self.phi[j];
                }
            }
        }
        v.truncate(d);
        v.resize(d, BigInt::zero());
        v
    }

    fn mul_int(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree;
        let mut conv = vec![BigInt::zero(); 2 * d - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    conv[i + j] += ai * bj;
                }
            }
        }
        self.fold(conv)
    }

    pub fn zero(&self) -> Cy {
        Cy { num: vec![BigInt::zero(); self.degree], den: BigInt::one() }
    }

    pub fn from_rational(&self, q: &BigRational) -> Cy {
        let mut num = vec![BigInt::zero(); self.degree];
        num[0] = q.numer().clone();
        Cy::normalized(num, q.denom().clone())
    }

    pub fn from_int(&self, v: i64) -> Cy {
        let mut num = vec![BigInt::zero(); self.degree];
        num[0] = BigInt::from(v);
        Cy { num, den: BigInt::one() }
    }

    /// zeta_L^k where L = lcm(2, N).
    pub fn root(&self, k: i64) -> Cy {
        let k = k.rem_euclid(self.order as i64) as usize;
        Cy { num: self.roots[k].clone(), den: BigInt::one() }
    }

    /// Exponent k with a = zeta_L^k, when a is a root of unity.
    pub fn log(&self, a: &Cy) -> Option<u32> {
        if !a.den.is_one() {
            return None;
        }
        self.root_log.get(&a.num).copied()
    }

    pub fn add(&self, a: &Cy, b: &Cy) -> Cy {
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return Cy::normalized(num, a.den.clone());
        }
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        Cy::normalized(num, &a.den * &b.den)
    }

    pub fn neg(&self, a: &Cy) -> Cy {
        Cy { num: a.num.iter().map(|x| -x).collect(), den: a.den.clone() }
    }

    pub fn sub(&self, a: &Cy, b: &Cy) -> Cy {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Cy, b: &Cy) -> Cy {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if let Some(k) = self.log(b) {
            if let Some(j) = self.log(a) {
                return self.root(j as i64 + k as i64);
            }
        }
        let num = self.mul_int(&a.num, &b.num);
        let den = &a.den * &b.den;
        if den.is_one() {
            Cy { num, den }
        } else {
            Cy::normalized(num, den)
        }
    }

    pub fn inv(&self, a: &Cy) -> Option<Cy> {
        if a.is_zero() {
            return None;
        }
        let content = a.num.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let prim: Vec<BigInt> = a.num.iter().map(|c| c / &content).collect();
        for (sign, key) in [(1i32, prim.clone()), (-1, prim.iter().map(|c| -c).collect())] {
            if let Some(&k) = self.root_log.get(&key) {
                let scale = &a.den * BigInt::from(sign);
                let num = self.roots[((self.order - k) % self.order) as usize]
                    .iter()
                    .map(|c| c * &scale)
                    .collect();
                return Some(Cy::normalized(num, content));
            }
        }
        Some(self.inv_euclid(a))
    }

    fn inv_euclid(&self, a: &Cy) -> Cy {
        let to_q = |v: &[BigInt]| -> Vec<BigRational> {
            let mut p: Vec<BigRational> = v.iter().map(|c| BigRational::from_integer(c.clone())).collect();
            qtrim(&mut p);
            p
        };
        let mut r0 = to_q(&self.phi);
        let mut r1 = to_q(&a.num);
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = qdivrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let qs = qmul(&q, &s1);
            let next = qsub(&s0, &qs);
            s0 = std::mem::replace(&mut s1, next);
        }
        // r0 is a nonzero constant because the cyclotomic polynomial is irreducible.
        let c = r0[0].clone();
        let scale = BigRational::from_integer(a.den.clone()) / c;
        let coeffs: Vec<BigRational> = s0.into_iter().map(|x| x * &scale).collect();
        self.from_rational_vec(&coeffs)
    }

    fn from_rational_vec(&self, coeffs: &[BigRational]) -> Cy {
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); self.degree];
        for (j, c) in coeffs.iter().enumerate() {
            num[j] = c.numer() * (&den / c.denom());
        }
        Cy::normalized(num, den)
    }

    /// Coefficient list as exact rationals in the power basis.
    pub fn coefficients(&self, a: &Cy) -> Vec<BigRational> {
        a.num.iter().map(|c| BigRational::new(c.clone(), a.den.clone())).collect()
    }

    pub fn from_coefficients(&self, coeffs: &[BigRational]) -> Option<Cy> {
        if coeffs.len() > self.degree {
            return None;
        }
        Some(self.from_rational_vec(coeffs))
    }

    /// Image of zeta_N under the embedding into a larger field with tables `big`.
    pub fn embed(&self, a: &Cy, big: &Ctx) -> Cy {
        let step = (big.order / self.conductor) as i64;
        let mut acc = big.zero();
        for (j, c) in a.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = big.root(step * j as i64);
            let term = Cy { num: r.num.iter().map(|x| x * c).collect(), den: BigInt::one() };
            acc = big.add(&acc, &term);
        }
        Cy::normalized(acc.num, &acc.den * &a.den)
    }
}

impl Cy {
    pub fn normalized(mut num: Vec<BigInt>, mut den: BigInt) -> Cy {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        if num.iter().all(|c| c.is_zero()) {
            return Cy { num, den: BigInt::one() };
        }
        if !den.is_one() {
            let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den /= g;
            }
        }
        Cy { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }
}

fn qtrim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn qsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(k).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    qtrim(&mut out);
    out
}

fn qmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qtrim(&mut out);
    out
}

fn qdivrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    qtrim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let k = rem.len() - 1 - db;
        let c = rem.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
        rem.pop();
        qtrim(&mut rem);
    }
    qtrim(&mut quot);
    (quot, rem)
}
