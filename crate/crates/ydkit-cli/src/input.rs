//! Parameter and grid parsing. Scalars are given as literals such as "zeta(6,1)", "-1",
//! "t^2" or "zeta(4,1)*t", or in the exact JSON form emitted by `construct`.

use num_integer::Integer;
use serde_json::{json, Value};
use ydkit::hopf::Liu;
use ydkit::{Literal, ModuleParams, Scalar};

use crate::error::CliError;

#[derive(Debug, Clone)]
pub enum ScalarInput {
    Literal(Literal),
    Exact(Scalar),
}

impl ScalarInput {
    fn parse(key: &str, v: &Value) -> Result<ScalarInput, CliError> {
        match v {
            Value::String(s) => Ok(ScalarInput::Literal(Literal::parse(s)?)),
            Value::Number(n) => Ok(ScalarInput::Literal(Literal::parse(&n.to_string())?)),
            Value::Object(_) => Ok(ScalarInput::Exact(Scalar::from_json(v)?)),
            _ => Err(CliError::Input(format!("{key}: expected a literal string, an integer or an exact scalar"))),
        }
    }

    /// Root order the field must contain.
    fn order(&self) -> u32 {
        match self {
            ScalarInput::Literal(l) => l.root_order,
            ScalarInput::Exact(s) => s.conductor(),
        }
    }

    fn to_scalar(&self, conductor: u32) -> Result<Scalar, CliError> {
        Ok(match self {
            ScalarInput::Literal(l) => l.to_scalar(conductor)?,
            ScalarInput::Exact(s) => s.embed(conductor)?,
        })
    }
}

/// Module parameters before a field is chosen.
#[derive(Debug, Clone)]
pub struct ParamSpec {
    pub n: u32,
    pub w: u32,
    pub gamma: ScalarInput,
    pub alpha: ScalarInput,
    pub beta: ScalarInput,
    pub r: i64,
    pub i: i64,
    /// The parameters as given, echoed in reports.
    pub raw: Value,
}

fn int_field(v: &Value, key: &str) -> Result<i64, CliError> {
    v.get(key)
        .and_then(Value::as_i64)
        .ok_or_else(|| CliError::Input(format!("missing integer field {key:?}")))
}

fn positive_field(v: &Value, key: &str) -> Result<u32, CliError> {
    let x = int_field(v, key)?;
    u32::try_from(x).ok().filter(|&x| x > 0).ok_or_else(|| CliError::Input(format!("{key} must be a positive integer, got {x}")))
}

fn scalar_field(v: &Value, key: &str) -> Result<ScalarInput, CliError> {
    ScalarInput::parse(key, v.get(key).ok_or_else(|| CliError::Input(format!("missing field {key:?}")))?)
}

impl ParamSpec {
    pub fn from_json(v: &Value) -> Result<ParamSpec, CliError> {
        if !v.is_object() {
            return Err(CliError::Input("parameters must be a JSON object".into()));
        }
        Ok(ParamSpec {
            n: positive_field(v, "n")?,
            w: positive_field(v, "w")?,
            gamma: scalar_field(v, "gamma")?,
            alpha: scalar_field(v, "alpha")?,
            beta: scalar_field(v, "beta")?,
            r: int_field(v, "r")?,
            i: int_field(v, "i")?,
            raw: v.clone(),
        })
    }

    pub fn literal_orders(&self) -> Vec<u32> {
        vec![self.gamma.order(), self.alpha.order(), self.beta.order()]
    }

    /// lcm(2, n, literal orders), or the explicit conductor after checking it hosts them.
    pub fn conductor(&self, explicit: Option<u32>) -> Result<u32, CliError> {
        let needed = std::iter::once(self.n).chain(self.literal_orders());
        match explicit {
            None => Ok(needed.fold(2, |c, m| c.lcm(&m))),
            Some(0) => Err(CliError::Input("conductor must be positive".into())),
            Some(c) => {
                if let Some(m) = needed.into_iter().find(|&m| 2u32.lcm(&c) % m != 0) {
                    return Err(CliError::Input(format!("conductor {c} cannot host a root of unity of order {m}")));
                }
                Ok(c)
            }
        }
    }

    pub fn build(&self, explicit: Option<u32>) -> Result<ModuleParams, CliError> {
        let c = self.conductor(explicit)?;
        let liu = Liu::new(self.n, self.w, self.gamma.to_scalar(c)?)?;
        Ok(ModuleParams::new(liu, self.alpha.to_scalar(c)?, self.beta.to_scalar(c)?, self.r, self.i)?)
    }
}

pub fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))
}

/// Literal for ζ_m^e·t^a.
fn format_literal(m: u32, e: i64, a: i64) -> String {
    let mut parts = Vec::new();
    let e = e.rem_euclid(m as i64);
    if e != 0 {
        let g = e.gcd(&(m as i64));
        parts.push(format!("zeta({},{})", m as i64 / g, e / g));
    }
    match a {
        0 => {}
        1 => parts.push("t".into()),
        _ => parts.push(format!("t^{a}")),
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn is_unit_sign(l: &Literal) -> Option<bool> {
    use num_traits::{One, Signed};
    if l.coefficient.abs().is_one() {
        Some(l.coefficient.is_negative())
    } else {
        None
    }
}

/// The root-of-unity part of ±ζ_m^e as an exponent over the denominator 2m.
fn unit_exponent(l: &Literal) -> Option<(i64, i64)> {
    let negative = is_unit_sign(l)?;
    let d = 2 * l.root_order as i64;
    Some((2 * l.root_exp + if negative { l.root_order as i64 } else { 0 }, d))
}

fn literal_power(l: &Literal, j: i64) -> Result<String, CliError> {
    let (e, d) = unit_exponent(l).ok_or_else(|| CliError::Input("powers need a literal of the form ±zeta(N,k)*t^a".into()))?;
    Ok(format_literal(d as u32, e * j, l.t_exp * j))
}

/// All α with α^w = β^n for β = ±ζ·t^a, as literals.
fn solve_alpha(beta: &Literal, n: u32, w: u32) -> Result<Vec<String>, String> {
    let (e, d) = unit_exponent(beta).ok_or_else(|| format!("cannot solve alpha^w = beta^n for coefficient {}", beta.coefficient))?;
    let ta = beta.t_exp * n as i64;
    if ta % w as i64 != 0 {
        return Err(format!("alpha^{w} = beta^{n} needs a t-exponent {ta}/{w}"));
    }
    let v = (e * n as i64).rem_euclid(d);
    Ok((0..w as i64).map(|k| format_literal((d * w as i64) as u32, v + k * d, ta / w as i64)).collect())
}

/// α^w = β^n for literals of the form ±ζ·t^a.
fn satisfies_constraint(alpha: &Literal, beta: &Literal, n: u32, w: u32) -> Option<bool> {
    let (ea, da) = unit_exponent(alpha)?;
    let (eb, db) = unit_exponent(beta)?;
    let d = da.lcm(&db);
    let lhs = ea * (d / da) * w as i64;
    let rhs = eb * (d / db) * n as i64;
    Some((lhs - rhs).rem_euclid(d) == 0 && alpha.t_exp * w as i64 == beta.t_exp * n as i64)
}

#[derive(Debug, Clone)]
enum Selector {
    GammaPowers,
    Primitive(u32),
    Literal(String),
}

impl Selector {
    fn parse(s: &str) -> Result<Selector, CliError> {
        let s = s.trim();
        if s == "gamma^j" {
            return Ok(Selector::GammaPowers);
        }
        if let Some(m) = s.strip_prefix("primitive(").and_then(|r| r.strip_suffix(')')) {
            let m: u32 = m.trim().parse().map_err(|_| CliError::Input(format!("bad selector {s:?}")))?;
            if m == 0 {
                return Err(CliError::Input("primitive(m) needs m >= 1".into()));
            }
            return Ok(Selector::Primitive(m));
        }
        Literal::parse(s)?;
        Ok(Selector::Literal(s.to_string()))
    }

    fn expand(&self, n: u32, gamma: &Literal) -> Result<Vec<String>, CliError> {
        Ok(match self {
            Selector::GammaPowers => (0..n as i64).map(|j| literal_power(gamma, j)).collect::<Result<_, _>>()?,
            Selector::Primitive(m) => primitive_roots(*m),
            Selector::Literal(s) => vec![s.clone()],
        })
    }
}

fn primitive_roots(m: u32) -> Vec<String> {
    if m == 1 {
        return vec!["1".into()];
    }
    (1..m).filter(|k| k.gcd(&m) == 1).map(|k| format!("zeta({m},{k})")).collect()
}

#[derive(Debug, Clone)]
enum AlphaChoice {
    Solve,
    Listed(Vec<Selector>),
}

/// Ranges and root selectors spanning a family of tuples.
#[derive(Debug, Clone)]
pub struct GridSpec {
    n: Vec<u32>,
    w: Vec<u32>,
    gamma: Option<Vec<String>>,
    beta: Vec<Selector>,
    alpha: AlphaChoice,
    i: Option<Vec<i64>>,
    r: Vec<i64>,
}

/// One grid point, or the reason it was skipped.
#[derive(Debug, Clone)]
pub enum GridPoint {
    Tuple(Value),
    Skip { params: Value, reason: String },
}

fn int_range(v: &Value, key: &str) -> Result<Vec<i64>, CliError> {
    let bad = || CliError::Input(format!("grid field {key:?}: expected an integer list or {{\"from\": a, \"to\": b}}"));
    match v {
        Value::Array(items) => items.iter().map(|x| x.as_i64().ok_or_else(bad)).collect(),
        Value::Object(_) => {
            let from = v.get("from").and_then(Value::as_i64).ok_or_else(bad)?;
            let to = v.get("to").and_then(Value::as_i64).ok_or_else(bad)?;
            Ok((from..=to).collect())
        }
        Value::Number(_) => Ok(vec![v.as_i64().ok_or_else(bad)?]),
        _ => Err(bad()),
    }
}

fn positive_range(v: &Value, key: &str) -> Result<Vec<u32>, CliError> {
    int_range(v, key)?
        .into_iter()
        .map(|x| u32::try_from(x).ok().filter(|&x| x > 0).ok_or_else(|| CliError::Input(format!("grid field {key:?}: {x} is not positive"))))
        .collect()
}

fn selectors(v: &Value, key: &str) -> Result<Vec<Selector>, CliError> {
    match v {
        Value::String(s) => Ok(vec![Selector::parse(s)?]),
        Value::Array(items) => items
            .iter()
            .map(|x| match x {
                Value::String(s) => Selector::parse(s),
                Value::Number(n) => Selector::parse(&n.to_string()),
                _ => Err(CliError::Input(format!("grid field {key:?}: selectors are strings"))),
            })
            .collect(),
        _ => Err(CliError::Input(format!("grid field {key:?}: expected a selector or a list of selectors"))),
    }
}

impl GridSpec {
    pub fn from_json(v: &Value) -> Result<GridSpec, CliError> {
        let field = |k: &str| v.get(k).ok_or_else(|| CliError::Input(format!("grid: missing field {k:?}")));
        let gamma = match v.get("gamma") {
            None => None,
            Some(Value::String(s)) if s == "primitive" => None,
            Some(g) => Some(
                selectors(g, "gamma")?
                    .into_iter()
                    .map(|s| match s {
                        Selector::Literal(l) => Ok(l),
                        _ => Err(CliError::Input("grid field \"gamma\": use \"primitive\" or literals".into())),
                    })
                    .collect::<Result<_, _>>()?,
            ),
        };
        let alpha = match v.get("alpha") {
            None => AlphaChoice::Solve,
            Some(Value::String(s)) if s == "solve" => AlphaChoice::Solve,
            Some(a) => AlphaChoice::Listed(selectors(a, "alpha")?),
        };
        let i = match v.get("i") {
            None => None,
            Some(Value::String(s)) if s == "all" => None,
            Some(x) => Some(int_range(x, "i")?),
        };
        Ok(GridSpec {
            n: positive_range(field("n")?, "n")?,
            w: positive_range(field("w")?, "w")?,
            gamma,
            beta: selectors(field("beta")?, "beta")?,
            alpha,
            i,
            r: int_range(field("r")?, "r")?,
        })
    }

    /// Tuples in the order n, w, γ, β, α, i, r.
    pub fn expand(&self) -> Result<Vec<GridPoint>, CliError> {
        let mut out = Vec::new();
        for &n in &self.n {
            let gammas = self.gamma.clone().unwrap_or_else(|| primitive_roots(n));
            for &w in &self.w {
                for g in &gammas {
                    let gl = Literal::parse(g)?;
                    for bsel in &self.beta {
                        for b in bsel.expand(n, &gl)? {
                            let bl = Literal::parse(&b)?;
                            let params = |a: &str, i: i64, r: i64| json!({"n": n, "w": w, "gamma": g, "alpha": a, "beta": b, "r": r, "i": i});
                            let alphas: Vec<Result<String, String>> = match &self.alpha {
                                AlphaChoice::Solve => match solve_alpha(&bl, n, w) {
                                    Ok(list) => list.into_iter().map(Ok).collect(),
                                    Err(reason) => vec![Err(reason)],
                                },
                                AlphaChoice::Listed(sels) => {
                                    let mut list = Vec::new();
                                    for s in sels {
                                        for a in s.expand(n, &gl)? {
                                            let al = Literal::parse(&a)?;
                                            list.push(match satisfies_constraint(&al, &bl, n, w) {
                                                Some(true) => Ok(a),
                                                Some(false) => Err(format!("alpha^w = beta^n fails for alpha = {a}")),
                                                None => Err(format!("cannot check alpha^w = beta^n for alpha = {a}")),
                                            });
                                        }
                                    }
                                    list
                                }
                            };
                            let is: Vec<i64> = self.i.clone().unwrap_or_else(|| (0..n as i64).collect());
                            for a in &alphas {
                                for &i in &is {
                                    for &r in &self.r {
                                        out.push(match a {
                                            Ok(a) => GridPoint::Tuple(params(a, i, r)),
                                            Err(reason) => GridPoint::Skip { params: params("?", i, r), reason: reason.clone() },
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}
