//! The scalar field Q(zeta_N)(t): cyclotomic numbers with one transcendental.
//!
//! Values are kept in a canonical form (reduced fraction, monic denominator,
//! cyclotomic coefficients reduced modulo the N-th cyclotomic polynomial), so
//! structural equality is field equality.

mod cyclo;
mod poly;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use cyclo::{context, Ctx, Cy};
use poly::Poly;

pub use cyclo::cyclotomic_poly as cyclotomic_polynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("conductor {conductor} cannot host a root of unity of order {order}")]
    RootOutsideConductor { order: u32, conductor: u32 },
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

/// An element of Q(zeta_N)(t) for a fixed conductor N.
#[derive(Clone)]
pub struct Scalar {
    ctx: Arc<Ctx>,
    num: Poly,
    den: Poly,
}

impl Scalar {
    fn from_cy(ctx: Arc<Ctx>, c: Cy) -> Scalar {
        let one = ctx.from_int(1);
        Scalar { num: poly::constant(c), den: vec![one], ctx }
    }

    fn build(ctx: Arc<Ctx>, mut num: Poly, mut den: Poly) -> Scalar {
        poly::trim(&mut num);
        poly::trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        let one = vec![ctx.from_int(1)];
        if num.is_empty() {
            return Scalar { ctx, num, den: one };
        }
        if den.len() == 1 {
            if !den[0].is_one() {
                let inv = ctx.inv(&den[0]).unwrap();
                num = poly::scale(&ctx, &num, &inv);
            }
            return Scalar { ctx, num, den: one };
        }
        let g = poly::gcd(&ctx, &num, &den);
        if g.len() > 1 {
            num = poly::divrem(&ctx, &num, &g).0;
            den = poly::divrem(&ctx, &den, &g).0;
        }
        let lead = den.last().unwrap().clone();
        if !lead.is_one() {
            let inv = ctx.inv(&lead).unwrap();
            num = poly::scale(&ctx, &num, &inv);
            den = poly::scale(&ctx, &den, &inv);
        }
        Scalar { ctx, num, den }
    }

    pub fn zero(conductor: u32) -> Scalar {
        let ctx = context(conductor);
        let one = vec![ctx.from_int(1)];
        Scalar { ctx, num: Vec::new(), den: one }
    }

    pub fn one(conductor: u32) -> Scalar {
        Scalar::from_int(conductor, 1)
    }

    pub fn from_int(conductor: u32, v: i64) -> Scalar {
        let ctx = context(conductor);
        let c = ctx.from_int(v);
        Scalar::from_cy(ctx, c)
    }

    pub fn from_rational(conductor: u32, q: &BigRational) -> Scalar {
        let ctx = context(conductor);
        let c = ctx.from_rational(q);
        Scalar::from_cy(ctx, c)
    }

    /// zeta_N^k in the field of conductor N.
    pub fn root(conductor: u32, k: i64) -> Scalar {
        let ctx = context(conductor);
        let step = (ctx.order / conductor) as i64;
        let c = ctx.root(k.rem_euclid(conductor as i64) * step);
        Scalar::from_cy(ctx, c)
    }

    /// zeta_m^k inside the field of conductor N; needs m | lcm(2, N).
    pub fn root_in(conductor: u32, m: u32, k: i64) -> Result<Scalar, ScalarError> {
        let ctx = context(conductor);
        if m == 0 || !ctx.order.is_multiple_of(m) {
            return Err(ScalarError::RootOutsideConductor { order: m, conductor });
        }
        let step = (ctx.order / m) as i64;
        let c = ctx.root(k.rem_euclid(m as i64) * step);
        Ok(Scalar::from_cy(ctx, c))
    }

    /// The indeterminate t.
    pub fn t(conductor: u32) -> Scalar {
        Scalar::t_pow(conductor, 1)
    }

    pub fn t_pow(conductor: u32, a: i64) -> Scalar {
        let ctx = context(conductor);
        let mut mono = vec![ctx.zero(); a.unsigned_abs() as usize + 1];
        mono[a.unsigned_abs() as usize] = ctx.from_int(1);
        let one = vec![ctx.from_int(1)];
        if a >= 0 {
            Scalar { ctx, num: mono, den: one }
        } else {
            Scalar { ctx, num: one, den: mono }
        }
    }

    pub fn conductor(&self) -> u32 {
        self.ctx.conductor
    }

    /// Order of the root-of-unity group of the field, lcm(2, N).
    pub fn unit_group_order(&self) -> u32 {
        self.ctx.order
    }

    pub fn same_field(&self, other: &Scalar) -> bool {
        self.ctx.conductor == other.ctx.conductor
    }

    fn check(&self, other: &Scalar) {
        assert!(
            self.same_field(other),
            "scalar conductor mismatch: {} vs {}",
            self.ctx.conductor,
            other.ctx.conductor
        );
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        poly::is_one(&self.num) && poly::is_one(&self.den)
    }

    /// True when the value does not involve t.
    pub fn is_constant(&self) -> bool {
        self.num.len() <= 1 && self.den.len() == 1
    }

    fn constant_cy(&self) -> Option<Cy> {
        if !self.is_constant() {
            return None;
        }
        Some(self.num.first().cloned().unwrap_or_else(|| self.ctx.zero()))
    }

    pub fn zero_like(&self) -> Scalar {
        Scalar::zero(self.conductor())
    }

    pub fn one_like(&self) -> Scalar {
        Scalar::from_cy(self.ctx.clone(), self.ctx.from_int(1))
    }

    pub fn int_like(&self, v: i64) -> Scalar {
        Scalar::from_cy(self.ctx.clone(), self.ctx.from_int(v))
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::build(self.ctx.clone(), self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other);
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if let Some(k) = self.constant_cy().and_then(|c| self.ctx.log(&c)) {
            let exp = (k as u64 * (e as u64 % self.ctx.order as u64)) % self.ctx.order as u64;
            return Ok(Scalar::from_cy(self.ctx.clone(), self.ctx.root(exp as i64)));
        }
        let mut base = self.clone();
        let mut acc = self.one_like();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Exponent k with self = zeta_L^k (L = lcm(2, N)), if self is a root of unity.
    pub fn unit_log(&self) -> Option<u32> {
        self.constant_cy().and_then(|c| self.ctx.log(&c))
    }

    /// Least m >= 1 with self^m = 1, or None when no such m exists.
    pub fn root_order(&self) -> Option<u32> {
        let k = self.unit_log()?;
        let l = self.ctx.order;
        Some(l / k.gcd(&l))
    }

    /// Image in the field of a larger conductor whose root group contains zeta_N.
    pub fn embed(&self, conductor: u32) -> Result<Scalar, ScalarError> {
        let big = context(conductor);
        if !big.order.is_multiple_of(self.ctx.conductor) {
            return Err(ScalarError::RootOutsideConductor { order: self.ctx.conductor, conductor });
        }
        let map = |p: &Poly| -> Poly { p.iter().map(|c| self.ctx.embed(c, &big)).collect() };
        Ok(Scalar::build(big.clone(), map(&self.num), map(&self.den)))
    }

    /// Polynomial in t when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.len() == 1
    }

    /// Degree in t of the numerator.
    pub fn numerator_degree(&self) -> usize {
        self.num.len().saturating_sub(1)
    }

    /// JSON form {"conductor": N, "num": [[c0, c1, ...], ...], "den": [...]}: one
    /// coefficient list (power basis, rational strings) per power of t.
    pub fn to_json(&self) -> Value {
        let ser = |p: &Poly| -> Value {
            Value::Array(
                p.iter()
                    .map(|c| {
                        Value::Array(
                            self.ctx.coefficients(c).iter().map(|q| Value::String(q.to_string())).collect(),
                        )
                    })
                    .collect(),
            )
        };
        json!({"conductor": self.ctx.conductor, "num": ser(&self.num), "den": ser(&self.den)})
    }

    pub fn from_json(v: &Value) -> Result<Scalar, ScalarError> {
        let bad = |m: &str| ScalarError::Parse(m.to_string());
        let n = v.get("conductor").and_then(Value::as_u64).ok_or_else(|| bad("missing conductor"))?;
        if n == 0 || n > u32::MAX as u64 {
            return Err(bad("conductor out of range"));
        }
        let ctx = context(n as u32);
        let de = |key: &str| -> Result<Poly, ScalarError> {
            let arr = v.get(key).and_then(Value::as_array).ok_or_else(|| bad("missing num/den"))?;
            arr.iter()
                .map(|c| {
                    let cs = c.as_array().ok_or_else(|| bad("coefficient list expected"))?;
                    let qs = cs
                        .iter()
                        .map(|q| parse_rational(q.as_str().ok_or_else(|| bad("rational string expected"))?))
                        .collect::<Result<Vec<_>, _>>()?;
                    ctx.from_coefficients(&qs).ok_or_else(|| bad("too many coefficients"))
                })
                .collect()
        };
        let num = de("num")?;
        let mut den = de("den")?;
        poly::trim(&mut den);
        if den.is_empty() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::build(ctx, num, den))
    }

    fn fmt_cy(&self, c: &Cy) -> String {
        if let Some(k) = self.ctx.log(c) {
            return fmt_root(self.ctx.order, k);
        }
        let neg = self.ctx.neg(c);
        if let Some(k) = self.ctx.log(&neg) {
            return format!("-{}", fmt_root(self.ctx.order, k));
        }
        let n = self.ctx.conductor;
        let mut parts: Vec<String> = Vec::new();
        for (j, q) in self.ctx.coefficients(c).iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let body = if j == 0 {
                q.abs().to_string()
            } else if q.abs().is_one() {
                format!("zeta({n},{j})")
            } else {
                format!("{}*zeta({n},{j})", q.abs())
            };
            let sign = if q.is_negative() { "-" } else { "+" };
            if parts.is_empty() {
                parts.push(if q.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{sign} {body}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ")
        }
    }

    fn fmt_poly(&self, p: &Poly) -> String {
        if p.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = self.fmt_cy(c);
            let tpart = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let s = if k == 0 {
                coeff
            } else if c.is_one() {
                tpart
            } else if coeff.contains(' ') {
                format!("({coeff})*{tpart}")
            } else {
                format!("{coeff}*{tpart}")
            };
            parts.push(s);
        }
        parts.join(" + ")
    }
}

fn fmt_root(order: u32, k: u32) -> String {
    if k == 0 {
        return "1".to_string();
    }
    let g = k.gcd(&order);
    let (m, j) = (order / g, k / g);
    if m == 2 {
        "-1".to_string()
    } else {
        format!("zeta({m},{j})")
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let s = s.trim();
    let err = || ScalarError::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| err())?;
            let b: BigInt = b.trim().parse().map_err(|_| err())?;
            if b.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

/// A parsed scalar literal: coefficient * zeta(order, k) * t^a.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Literal {
    pub coefficient: BigRational,
    pub root_order: u32,
    pub root_exp: i64,
    pub t_exp: i64,
}

impl Literal {
    /// Parses products of `p`, `p/q`, `zeta(N,k)`, `t` and `t^a` with an optional leading sign.
    pub fn parse(s: &str) -> Result<Literal, ScalarError> {
        let bad = |m: String| ScalarError::Parse(m);
        let mut text = s.trim().replace(' ', "");
        let mut coefficient = BigRational::one();
        if let Some(rest) = text.strip_prefix('-') {
            coefficient = -coefficient;
            text = rest.to_string();
        }
        if text.is_empty() {
            return Err(bad(format!("empty literal {s:?}")));
        }
        let (mut order, mut exp, mut t_exp) = (1u32, 0i64, 0i64);
        for factor in text.split('*') {
            if let Some(args) = factor.strip_prefix("zeta(").and_then(|r| r.strip_suffix(')')) {
                let (a, b) = args.split_once(',').ok_or_else(|| bad(format!("bad root {factor:?}")))?;
                let m: u32 = a.parse().map_err(|_| bad(format!("bad root order in {factor:?}")))?;
                let k: i64 = b.parse().map_err(|_| bad(format!("bad root exponent in {factor:?}")))?;
                if m == 0 {
                    return Err(bad("root order must be positive".into()));
                }
                let l = order.lcm(&m);
                exp = (exp * (l / order) as i64 + k * (l / m) as i64).rem_euclid(l as i64);
                order = l;
            } else if factor == "t" {
                t_exp += 1;
            } else if let Some(a) = factor.strip_prefix("t^") {
                let a = a.trim_start_matches('(').trim_end_matches(')');
                t_exp += a.parse::<i64>().map_err(|_| bad(format!("bad t exponent in {factor:?}")))?;
            } else {
                coefficient *= parse_rational(factor)?;
            }
        }
        if coefficient.is_zero() && t_exp != 0 {
            t_exp = 0;
        }
        let g = (exp.unsigned_abs() as u32).gcd(&order).max(1);
        let (order, exp) = if exp == 0 { (1, 0) } else { (order / g, exp / g as i64) };
        Ok(Literal { coefficient, root_order: order, root_exp: exp, t_exp })
    }

    pub fn involves_t(&self) -> bool {
        self.t_exp != 0
    }

    pub fn to_scalar(&self, conductor: u32) -> Result<Scalar, ScalarError> {
        let root = Scalar::root_in(conductor, self.root_order, self.root_exp)?;
        let c = Scalar::from_rational(conductor, &self.coefficient);
        Ok(&(&c * &root) * &Scalar::t_pow(conductor, self.t_exp))
    }
}

/// Gaussian binomial by the q-Pascal rule binom(k,p) = binom(k-1,p) + q^(k-p) binom(k-1,p-1).
pub fn q_binomial(k: usize, p: usize, q: &Scalar) -> Result<Scalar, ScalarError> {
    if p > k {
        return Err(ScalarError::InvalidArgument(format!("q_binomial({k},{p}): p > k")));
    }
    let mut powers = vec![q.one_like()];
    for j in 1..=k {
        powers.push(&powers[j - 1] * q);
    }
    let mut row = vec![q.one_like()];
    for kk in 1..=k {
        let mut next = Vec::with_capacity(kk + 1);
        for pp in 0..=kk {
            let v = if pp == 0 || pp == kk {
                q.one_like()
            } else {
                &row[pp] + &(&powers[kk - pp] * &row[pp - 1])
            };
            next.push(v);
        }
        row = next;
    }
    Ok(row[p].clone())
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        self.ctx.conductor == other.ctx.conductor && self.num == other.num && self.den == other.den
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.conductor.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar[N={}]({})", self.ctx.conductor, self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.fmt_poly(&self.num);
        if poly::is_one(&self.den) {
            return f.write_str(&num);
        }
        let den = self.fmt_poly(&self.den);
        if self.num.len() > 1 || num.contains(' ') {
            write!(f, "({num})/({den})")
        } else {
            write!(f, "{num}/({den})")
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        let ctx = &self.ctx;
        if self.den == rhs.den {
            let num = poly::add(ctx, &self.num, &rhs.num);
            if poly::is_one(&self.den) {
                return Scalar { ctx: ctx.clone(), num, den: self.den.clone() };
            }
            return Scalar::build(ctx.clone(), num, self.den.clone());
        }
        let num = poly::add(ctx, &poly::mul(ctx, &self.num, &rhs.den), &poly::mul(ctx, &rhs.num, &self.den));
        Scalar::build(ctx.clone(), num, poly::mul(ctx, &self.den, &rhs.den))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        let ctx = &self.ctx;
        if self.is_zero() || rhs.is_zero() {
            return self.zero_like();
        }
        let num = poly::mul(ctx, &self.num, &rhs.num);
        if poly::is_one(&self.den) && poly::is_one(&rhs.den) {
            return Scalar { ctx: ctx.clone(), num, den: self.den.clone() };
        }
        Scalar::build(ctx.clone(), num, poly::mul(ctx, &self.den, &rhs.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { ctx: self.ctx.clone(), num: poly::neg(&self.ctx, &self.num), den: self.den.clone() }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests;
