//! Condition atoms of the table corpus and the root arithmetic they are evaluated in.

use std::fmt;

use num_integer::Integer;

use super::ClassifyError;
use crate::scalars::Scalar;

/// Multiplicative arithmetic on roots of unity.
pub trait RootArith: Clone + PartialEq + fmt::Display {
    fn unit(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn power(&self, e: i64) -> Self;
    /// Multiplicative order, None when not a root of unity.
    fn order(&self) -> Option<u32>;
    /// All primitive m-th roots of unity of the same domain, in increasing exponent.
    fn primitive_roots(&self, m: u32) -> Result<Vec<Self>, ClassifyError>;

    fn neg_unit(&self) -> Self {
        self.primitive_roots(2).expect("-1 exists in every domain").remove(0)
    }

    fn is_unit(&self) -> bool {
        *self == self.unit()
    }
}

/// A root of unity exp(2πi·num/den), stored as a reduced fraction in [0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitRoot {
    num: i64,
    den: i64,
}

impl UnitRoot {
    pub fn new(num: i64, den: i64) -> UnitRoot {
        assert!(den > 0, "denominator must be positive");
        let num = num.rem_euclid(den);
        let g = num.gcd(&den).max(1);
        UnitRoot { num: num / g, den: den / g }
    }

    pub fn one() -> UnitRoot {
        UnitRoot { num: 0, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// The root of unity a scalar represents, if it is one.
    pub fn from_scalar(s: &Scalar) -> Option<UnitRoot> {
        let k = s.unit_log()?;
        Some(UnitRoot::new(k as i64, s.unit_group_order() as i64))
    }

    pub fn to_scalar(&self, conductor: u32) -> Result<Scalar, ClassifyError> {
        Scalar::root_in(conductor, self.den as u32, self.num).map_err(|_| ClassifyError::ConductorTooSmall {
            order: self.den as u32,
            conductor,
        })
    }
}

impl fmt::Display for UnitRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => f.write_str("1"),
            (1, 2) => f.write_str("-1"),
            (k, m) => write!(f, "zeta({m},{k})"),
        }
    }
}

impl RootArith for UnitRoot {
    fn unit(&self) -> Self {
        UnitRoot::one()
    }

    fn times(&self, other: &Self) -> Self {
        let den = self.den.lcm(&other.den);
        UnitRoot::new(self.num * (den / self.den) + other.num * (den / other.den), den)
    }

    fn power(&self, e: i64) -> Self {
        let num = (self.num as i128 * e as i128).rem_euclid(self.den as i128);
        UnitRoot::new(num as i64, self.den)
    }

    fn order(&self) -> Option<u32> {
        Some(self.den as u32)
    }

    fn primitive_roots(&self, m: u32) -> Result<Vec<Self>, ClassifyError> {
        let m = m as i64;
        Ok((0..m).filter(|k| k.gcd(&m) == 1).map(|k| UnitRoot::new(k, m)).collect())
    }

    fn neg_unit(&self) -> Self {
        UnitRoot::new(1, 2)
    }
}

impl RootArith for Scalar {
    fn unit(&self) -> Self {
        self.one_like()
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn power(&self, e: i64) -> Self {
        self.pow(e).expect("roots of unity are invertible")
    }

    fn order(&self) -> Option<u32> {
        self.root_order()
    }

    fn primitive_roots(&self, m: u32) -> Result<Vec<Self>, ClassifyError> {
        let conductor = self.conductor();
        (0..m as i64)
            .filter(|k| k.gcd(&(m as i64)) == 1)
            .map(|k| {
                Scalar::root_in(conductor, m, k).map_err(|_| ClassifyError::ConductorTooSmall { order: m, conductor })
            })
            .collect()
    }

    fn neg_unit(&self) -> Self {
        self.int_like(-1)
    }
}

/// Integer symbols that may appear in exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntVar {
    I,
    R,
    W,
    N,
}

const INT_VARS: [(char, IntVar); 4] = [('i', IntVar::I), ('r', IntVar::R), ('w', IntVar::W), ('n', IntVar::N)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IntVars {
    pub i: i64,
    pub r: i64,
    pub w: i64,
    pub n: i64,
}

impl IntVars {
    fn get(&self, v: IntVar) -> i64 {
        match v {
            IntVar::I => self.i,
            IntVar::R => self.r,
            IntVar::W => self.w,
            IntVar::N => self.n,
        }
    }
}

/// Integer polynomial in i, r, w, n; each term is coeff · ∏ var^power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpPoly {
    terms: Vec<(i64, Vec<(IntVar, u32)>)>,
}

impl ExpPoly {
    pub fn constant(c: i64) -> ExpPoly {
        ExpPoly { terms: vec![(c, Vec::new())] }
    }

    pub fn eval(&self, v: &IntVars) -> i64 {
        self.terms
            .iter()
            .map(|(c, vars)| vars.iter().fold(*c, |acc, &(x, p)| acc * v.get(x).pow(p)))
            .sum()
    }

    /// Some(c) when the polynomial is c·var.
    fn multiple_of(&self, var: IntVar) -> Option<i64> {
        match self.terms.as_slice() {
            [(c, vars)] if vars.as_slice() == [(var, 1)] => Some(*c),
            _ => None,
        }
    }

    fn as_constant(&self) -> Option<i64> {
        self.terms.iter().try_fold(0, |acc, (c, vars)| vars.is_empty().then_some(acc + c))
    }

    fn parse(s: &str) -> Result<ExpPoly, String> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty exponent".into());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for k in 1..=bytes.len() {
            if k == bytes.len() || ((bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'^') {
                terms.push(Self::parse_term(&s[start..k])?);
                start = k;
            }
        }
        Ok(ExpPoly { terms })
    }

    fn parse_term(t: &str) -> Result<(i64, Vec<(IntVar, u32)>), String> {
        let (sign, body) = match t.as_bytes().first() {
            Some(b'-') => (-1, &t[1..]),
            Some(b'+') => (1, &t[1..]),
            _ => (1, t),
        };
        if body.is_empty() {
            return Err(format!("dangling sign in exponent {t:?}"));
        }
        let mut coeff = sign;
        let mut vars = Vec::new();
        for f in body.split('*') {
            if let Ok(c) = f.parse::<i64>() {
                coeff *= c;
                continue;
            }
            let (name, power) = match f.split_once('^') {
                Some((a, b)) => (a, b.parse::<u32>().map_err(|_| format!("bad power in {f:?}"))?),
                None => (f, 1),
            };
            let mut chars = name.chars();
            let var = match (chars.next(), chars.next()) {
                (Some(c), None) => INT_VARS.iter().find(|(ch, _)| *ch == c).map(|(_, v)| *v),
                _ => None,
            }
            .ok_or_else(|| format!("unknown exponent symbol {name:?}"))?;
            vars.push((var, power));
        }
        Ok((coeff, vars))
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (c, vars)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if k > 0 { "+" } else { "" };
            f.write_str(sign)?;
            let mag = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if mag != 1 || vars.is_empty() {
                parts.push(mag.to_string());
            }
            for (v, p) in vars {
                let name = INT_VARS.iter().find(|(_, x)| x == v).unwrap().0;
                parts.push(if *p == 1 { name.to_string() } else { format!("{name}^{p}") });
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

/// Bases of multiplicative expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    MinusOne,
    Gamma,
    Beta,
    Alpha,
    Zeta,
    Q,
}

impl Base {
    fn name(self) -> &'static str {
        match self {
            Base::MinusOne => "(-1)",
            Base::Gamma => "gamma",
            Base::Beta => "beta",
            Base::Alpha => "alpha",
            Base::Zeta => "zeta",
            Base::Q => "q",
        }
    }
}

/// ±∏ base^exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    negate: bool,
    factors: Vec<(Base, ExpPoly)>,
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr, String> {
        let s = s.trim();
        let (negate, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let mut factors = Vec::new();
        for f in split_top(body, '*') {
            let f = f.trim();
            if f == "1" {
                continue;
            }
            let (base_text, exp) = match f.find('^') {
                Some(k) if !f[..k].ends_with('-') => {
                    let e = f[k + 1..].trim();
                    let e = e.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(e);
                    (&f[..k], ExpPoly::parse(e)?)
                }
                _ => (f, ExpPoly::constant(1)),
            };
            let base = match base_text {
                "(-1)" => Base::MinusOne,
                "gamma" => Base::Gamma,
                "beta" => Base::Beta,
                "alpha" => Base::Alpha,
                "zeta" => Base::Zeta,
                "q" => Base::Q,
                other => return Err(format!("unknown base {other:?}")),
            };
            if base == Base::Alpha && exp.multiple_of(IntVar::R).is_none() && exp.multiple_of(IntVar::W).is_none() {
                return Err(format!("alpha exponent must be a multiple of r or w in {f:?}"));
            }
            factors.push((base, exp));
        }
        if factors.is_empty() && body.trim() != "1" {
            return Err(format!("empty expression {s:?}"));
        }
        Ok(Expr { negate, factors })
    }

    pub fn uses(&self, base: Base) -> bool {
        self.factors.iter().any(|(b, _)| *b == base)
    }

    /// Exponent of q when it is an integer constant; 0 when q is absent.
    pub fn q_exponent(&self) -> Option<i64> {
        self.factors.iter().filter(|(b, _)| *b == Base::Q).try_fold(0, |acc, (_, e)| Some(acc + e.as_constant()?))
    }

    pub fn eval<R: RootArith>(&self, env: &Env<R>) -> R {
        let mut acc = if self.negate { env.unit.neg_unit() } else { env.unit.clone() };
        for (base, exp) in &self.factors {
            let value = match base {
                Base::Alpha => match (exp.multiple_of(IntVar::R), exp.multiple_of(IntVar::W)) {
                    (Some(c), _) => env.alpha_r.as_ref().expect("alpha^r bound").power(c),
                    (_, Some(c)) => env.alpha_w.as_ref().expect("alpha^w bound").power(c),
                    _ => unreachable!("rejected by the parser"),
                },
                Base::MinusOne => env.unit.neg_unit().power(exp.eval(&env.vars)),
                other => env.get(*other).expect("symbol bound").power(exp.eval(&env.vars)),
            };
            acc = acc.times(&value);
        }
        acc
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negate {
            f.write_str("-")?;
        }
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(b, e)| match e.as_constant() {
                Some(1) => b.name().to_string(),
                Some(c) if c >= 0 => format!("{}^{c}", b.name()),
                _ => {
                    let text = e.to_string();
                    if text.len() == 1 {
                        format!("{}^{text}", b.name())
                    } else {
                        format!("{}^({text})", b.name())
                    }
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..k]);
                start = k + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Values of the symbols an expression may mention.
#[derive(Debug, Clone)]
pub struct Env<R> {
    pub unit: R,
    pub gamma: Option<R>,
    pub beta: Option<R>,
    pub alpha_r: Option<R>,
    pub alpha_w: Option<R>,
    pub zeta: Option<R>,
    pub q: Option<R>,
    pub vars: IntVars,
}

impl<R: RootArith> Env<R> {
    pub fn empty(unit: R) -> Env<R> {
        Env { unit, gamma: None, beta: None, alpha_r: None, alpha_w: None, zeta: None, q: None, vars: IntVars::default() }
    }

    fn get(&self, base: Base) -> Option<&R> {
        match base {
            Base::Gamma => self.gamma.as_ref(),
            Base::Beta => self.beta.as_ref(),
            Base::Zeta => self.zeta.as_ref(),
            Base::Q => self.q.as_ref(),
            Base::Alpha | Base::MinusOne => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NRel {
    Eq,
    Ne,
    Ge,
}

/// One condition of a table row or diagram pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    N(NRel, i64),
    Eq(Expr, Expr),
    Ne(Expr, Expr),
    InR(Expr, u32),
    NotInR(Expr, u32),
    InRInf(Expr),
    InRInfNotOne(Expr),
    NotIn(Expr, Vec<Expr>),
}

impl Atom {
    pub fn parse(s: &str) -> Result<Atom, String> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("n ") {
            let rest = rest.trim();
            let (rel, value) = if let Some(v) = rest.strip_prefix(">=") {
                (NRel::Ge, v)
            } else if let Some(v) = rest.strip_prefix("!=") {
                (NRel::Ne, v)
            } else if let Some(v) = rest.strip_prefix('=') {
                (NRel::Eq, v)
            } else {
                return Err(format!("bad condition on n: {s:?}"));
            };
            let value = value.trim().parse().map_err(|_| format!("bad integer in {s:?}"))?;
            return Ok(Atom::N(rel, value));
        }
        if let Some((lhs, rhs)) = s.split_once(" notin ") {
            let lhs = Expr::parse(lhs)?;
            let rhs = rhs.trim();
            if let Some(m) = rhs.strip_prefix("R_") {
                return Ok(Atom::NotInR(lhs, m.parse().map_err(|_| format!("bad order in {s:?}"))?));
            }
            let inner = rhs
                .strip_prefix('{')
                .and_then(|x| x.strip_suffix('}'))
                .ok_or_else(|| format!("set expected in {s:?}"))?;
            let set = inner.split(',').map(Expr::parse).collect::<Result<Vec<_>, _>>()?;
            return Ok(Atom::NotIn(lhs, set));
        }
        if let Some((lhs, rhs)) = s.split_once(" in ") {
            let lhs = Expr::parse(lhs)?;
            return match rhs.trim() {
                "R_inf" => Ok(Atom::InRInf(lhs)),
                "R_inf\\{1}" => Ok(Atom::InRInfNotOne(lhs)),
                other => {
                    let m = other.strip_prefix("R_").and_then(|m| m.parse().ok());
                    m.map(|m| Atom::InR(lhs, m)).ok_or_else(|| format!("bad membership in {s:?}"))
                }
            };
        }
        if let Some((lhs, rhs)) = s.split_once(" != ") {
            return Ok(Atom::Ne(Expr::parse(lhs)?, Expr::parse(rhs)?));
        }
        if let Some((lhs, rhs)) = s.split_once(" = ") {
            return Ok(Atom::Eq(Expr::parse(lhs)?, Expr::parse(rhs)?));
        }
        Err(format!("unrecognized condition {s:?}"))
    }

    pub fn exprs(&self) -> Vec<&Expr> {
        match self {
            Atom::N(..) => Vec::new(),
            Atom::Eq(a, b) | Atom::Ne(a, b) => vec![a, b],
            Atom::InR(a, _) | Atom::NotInR(a, _) | Atom::InRInf(a) | Atom::InRInfNotOne(a) => vec![a],
            Atom::NotIn(a, set) => std::iter::once(a).chain(set.iter()).collect(),
        }
    }

    pub fn uses(&self, base: Base) -> bool {
        self.exprs().iter().any(|e| e.uses(base))
    }

    pub fn holds<R: RootArith>(&self, env: &Env<R>) -> bool {
        match self {
            Atom::N(rel, v) => {
                let n = env.vars.n;
                match rel {
                    NRel::Eq => n == *v,
                    NRel::Ne => n != *v,
                    NRel::Ge => n >= *v,
                }
            }
            Atom::Eq(a, b) => a.eval(env) == b.eval(env),
            Atom::Ne(a, b) => a.eval(env) != b.eval(env),
            Atom::InR(a, m) => a.eval(env).order() == Some(*m),
            Atom::NotInR(a, m) => a.eval(env).order() != Some(*m),
            Atom::InRInf(a) => a.eval(env).order().is_some(),
            Atom::InRInfNotOne(a) => matches!(a.eval(env).order(), Some(m) if m > 1),
            Atom::NotIn(a, set) => {
                let x = a.eval(env);
                set.iter().all(|e| e.eval(env) != x)
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::N(rel, v) => {
                let op = match rel {
                    NRel::Eq => "=",
                    NRel::Ne => "!=",
                    NRel::Ge => ">=",
                };
                write!(f, "n {op} {v}")
            }
            Atom::Eq(a, b) => write!(f, "{a} = {b}"),
            Atom::Ne(a, b) => write!(f, "{a} != {b}"),
            Atom::InR(a, m) => write!(f, "{a} in R_{m}"),
            Atom::NotInR(a, m) => write!(f, "{a} notin R_{m}"),
            Atom::InRInf(a) => write!(f, "{a} in R_inf"),
            Atom::InRInfNotOne(a) => write!(f, "{a} in R_inf\\{{1}}"),
            Atom::NotIn(a, set) => {
                let items: Vec<String> = set.iter().map(|e| e.to_string()).collect();
                write!(f, "{a} notin {{{}}}", items.join(","))
            }
        }
    }
}

/// Parses a `;`-separated condition list; `-` is the empty list.
pub fn parse_conditions(s: &str) -> Result<Vec<Atom>, String> {
    let s = s.trim();
    if s == "-" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(Atom::parse).collect()
}
