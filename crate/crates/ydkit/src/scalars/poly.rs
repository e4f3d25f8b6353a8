//! Dense polynomials in t over Q(zeta_N), lowest degree first, no trailing zeros.

use super::cyclo::{Ctx, Cy};

pub(crate) type Poly = Vec<Cy>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn constant(c: Cy) -> Poly {
    let mut p = vec![c];
    trim(&mut p);
    p
}

pub(crate) fn is_one(p: &Poly) -> bool {
    p.len() == 1 && p[0].is_one()
}

pub(crate) fn add(ctx: &Ctx, a: &Poly, b: &Poly) -> Poly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.clone();
    for (k, c) in short.iter().enumerate() {
        out[k] = ctx.add(&out[k], c);
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(ctx: &Ctx, a: &Poly) -> Poly {
    a.iter().map(|c| ctx.neg(c)).collect()
}

pub(crate) fn mul(ctx: &Ctx, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len() == 1 {
        return scale(ctx, b, &a[0]);
    }
    if b.len() == 1 {
        return scale(ctx, a, &b[0]);
    }
    let mut out = vec![ctx.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = ctx.add(&out[i + j], &ctx.mul(x, y));
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(ctx: &Ctx, a: &Poly, c: &Cy) -> Poly {
    let mut out: Poly = a.iter().map(|x| ctx.mul(x, c)).collect();
    trim(&mut out);
    out
}

/// Division with remainder; `b` must be nonzero.
pub(crate) fn divrem(ctx: &Ctx, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = b.len() - 1;
    let lead_inv = ctx.inv(&b[db]).expect("nonzero leading coefficient");
    let mut rem = a.clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![ctx.zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let k = rem.len() - 1 - db;
        let c = ctx.mul(rem.last().unwrap(), &lead_inv);
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] = ctx.sub(&rem[k + j], &ctx.mul(&c, bj));
        }
        quot[k] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn monic(ctx: &Ctx, a: &Poly) -> Poly {
    let lead_inv = ctx.inv(a.last().expect("nonzero polynomial")).unwrap();
    scale(ctx, a, &lead_inv)
}

/// Monic greatest common divisor; both inputs nonzero.
pub(crate) fn gcd(ctx: &Ctx, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = divrem(ctx, &x, &y);
        x = y;
        y = r;
    }
    monic(ctx, &x)
}
