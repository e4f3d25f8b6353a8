//! Mechanical realization of table rows as concrete tuples.

use num_integer::Integer;

use super::corpus::{TableCorpus, TableRow};
use super::expr::{Atom, Base, Env, IntVars, RootArith, UnitRoot};
use super::{ClassifyError, SixTuple};
use crate::hopf::Liu;

/// Symbol values satisfying one row, found by exhaustive search over roots of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowInstance {
    pub row: usize,
    pub n: u32,
    pub gamma: UnitRoot,
    pub i: i64,
    pub beta: UnitRoot,
    pub alpha_r: UnitRoot,
    pub alpha_w: UnitRoot,
    pub zeta: Option<UnitRoot>,
}

fn membership_orders(row: &TableRow) -> Vec<u32> {
    row.conditions()
        .filter_map(|a| match a {
            Atom::InR(_, m) | Atom::NotInR(_, m) => Some(*m),
            _ => None,
        })
        .collect()
}

/// Smallest instance of a row with the given n: γ, i, β, α^r in increasing exponent order.
pub fn find_instance(corpus: &TableCorpus, row_index: usize, n: u32) -> Option<RowInstance> {
    let row = &corpus.rows[row_index];
    if !row.admits_n(n) {
        return None;
    }
    let mut l = (2 * n as i64).lcm(&(2 * row.zeta.unwrap_or(1) as i64));
    for m in membership_orders(row) {
        l = l.lcm(&(2 * m as i64));
    }
    // α^{2r}, α^{3r} conditions need square and cube roots
    let l = 6 * l;
    let one = UnitRoot::one();
    let gammas = if n == 1 { vec![one] } else { one.primitive_roots(n).ok()? };
    let zetas: Vec<Option<UnitRoot>> = match row.zeta {
        Some(m) => one.primitive_roots(m).ok()?.into_iter().map(Some).collect(),
        None => vec![None],
    };
    let front: Vec<&Atom> = row.n_gamma.iter().chain(&row.beta_i).collect();
    debug_assert!(front.iter().all(|a| !a.uses(Base::Alpha)));
    for gamma in &gammas {
        for i in 0..n as i64 {
            for zeta in &zetas {
                for b in 0..l {
                    let beta = UnitRoot::new(b, l);
                    let mut env = Env::empty(one);
                    env.gamma = Some(*gamma);
                    env.beta = Some(beta);
                    env.zeta = *zeta;
                    env.alpha_w = Some(beta.power(n as i64));
                    env.vars = IntVars { i, r: 0, w: 0, n: n as i64 };
                    if !front.iter().all(|a| a.holds(&env)) {
                        continue;
                    }
                    for a in 0..l {
                        env.alpha_r = Some(UnitRoot::new(a, l));
                        if row.alpha_w_r.iter().all(|c| c.holds(&env)) {
                            return Some(RowInstance {
                                row: row_index,
                                n,
                                gamma: *gamma,
                                i,
                                beta,
                                alpha_r: env.alpha_r.unwrap(),
                                alpha_w: env.alpha_w.unwrap(),
                                zeta: *zeta,
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

/// First instance over n = 1, …, n_max.
pub fn realize_row(corpus: &TableCorpus, row_index: usize, n_max: u32) -> Option<RowInstance> {
    (1..=n_max).find_map(|n| find_instance(corpus, row_index, n))
}

impl RowInstance {
    /// α generates the group of α^r and α^w; r and w are the discrete logarithms (w >= 1).
    fn alpha_data(&self) -> (UnitRoot, i64, u32) {
        let order = self.alpha_r.den().lcm(&self.alpha_w.den());
        let alpha = UnitRoot::new(1, order);
        let r = self.alpha_r.num() * (order / self.alpha_r.den());
        let w = self.alpha_w.num() * (order / self.alpha_w.den());
        (alpha, r, if w == 0 { order as u32 } else { w as u32 })
    }

    /// Smallest conductor holding γ, β and α.
    pub fn conductor(&self) -> u32 {
        let (alpha, _, _) = self.alpha_data();
        [self.n as i64, self.gamma.den(), self.beta.den(), alpha.den()].iter().fold(2i64, |c, m| c.lcm(m)) as u32
    }

    pub fn to_tuple(&self, conductor: u32) -> Result<SixTuple, ClassifyError> {
        let (alpha, r, w) = self.alpha_data();
        let liu = Liu::new(self.n, w, self.gamma.to_scalar(conductor)?)?;
        Ok(SixTuple::new(liu, alpha.to_scalar(conductor)?, self.beta.to_scalar(conductor)?, r, self.i)?)
    }
}
