//! Eta-products `prod eta(t tau)^r`, their q-expansions, and recognition of a
//! q-series as an eta-product.

use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{pentagonal_terms, Exponent, Series};
use crate::Rational;

/// A finite product `prod_j eta(t_j tau)^(r_j)`.
///
/// Canonical form: multipliers strictly decreasing, exponents nonzero. The
/// empty product is the constant function 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EtaProduct {
    factors: Vec<(u64, i64)>,
}

impl EtaProduct {
    pub fn one() -> Self {
        EtaProduct::default()
    }

    /// `eta(t tau)`.
    pub fn eta(t: u64) -> Result<Self> {
        Self::new([(t, 1)])
    }

    /// Builds the canonical product; repeated multipliers have their exponents summed.
    pub fn new<I: IntoIterator<Item = (u64, i64)>>(pairs: I) -> Result<Self> {
        let mut factors: Vec<(u64, i64)> = vec![];
        for (t, r) in pairs {
            if t == 0 {
                return Err(Error::InvalidProduct("eta multiplier must be positive".into()));
            }
            match factors.iter_mut().find(|(s, _)| *s == t) {
                Some(slot) => slot.1 += r,
                None => factors.push((t, r)),
            }
        }
        factors.retain(|(_, r)| *r != 0);
        factors.sort_by_key(|f| std::cmp::Reverse(f.0));
        Ok(EtaProduct { factors })
    }

    /// From the flat list `[t1, r1, t2, r2, ...]`.
    pub fn from_gp(list: &[i64]) -> Result<Self> {
        if list.len() % 2 != 0 {
            return Err(Error::InvalidProduct(format!("odd-length list {list:?}")));
        }
        let pairs = list
            .chunks(2)
            .map(|c| {
                u64::try_from(c[0])
                    .ok()
                    .filter(|t| *t > 0)
                    .map(|t| (t, c[1]))
                    .ok_or_else(|| Error::InvalidProduct(format!("multiplier {} is not positive", c[0])))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(pairs)
    }

    pub fn to_gp(&self) -> Vec<i64> {
        self.factors.iter().flat_map(|(t, r)| [*t as i64, *r]).collect()
    }

    pub fn factors(&self) -> &[(u64, i64)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent_of(&self, t: u64) -> i64 {
        self.factors.iter().find(|(s, _)| *s == t).map_or(0, |(_, r)| *r)
    }

    pub fn pow(&self, n: i64) -> Self {
        let factors = if n == 0 {
            vec![]
        } else {
            self.factors.iter().map(|(t, r)| (*t, r * n)).collect()
        };
        EtaProduct { factors }
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    /// `sum_j r_j`, twice the weight.
    pub fn exponent_sum(&self) -> i64 {
        self.factors.iter().map(|(_, r)| r).sum()
    }

    /// `sum_j t_j r_j`, i.e. 24 times the order at infinity.
    pub fn weighted_sum(&self) -> i64 {
        self.factors.iter().map(|(t, r)| *t as i64 * r).sum()
    }

    /// `sum_j t_j r_j / 24`, the exponent of the leading term.
    pub fn order_at_infinity(&self) -> Exponent {
        Exponent::from_24ths(self.weighted_sum())
    }

    /// Least common multiple of the multipliers (1 for the empty product).
    pub fn level(&self) -> u64 {
        self.factors.iter().fold(1, |l, (t, _)| l.lcm(t))
    }
}

impl Mul for &EtaProduct {
    type Output = EtaProduct;
    fn mul(self, rhs: &EtaProduct) -> EtaProduct {
        EtaProduct::new(self.factors.iter().chain(&rhs.factors).copied()).expect("factors already validated")
    }
}

impl Div for &EtaProduct {
    type Output = EtaProduct;
    fn div(self, rhs: &EtaProduct) -> EtaProduct {
        self * &rhs.inverse()
    }
}

impl fmt::Display for EtaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_gp().iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Multiplies the dense integer series `v` by `prod_{n>=1}(1 - q^(t n))^k` in place.
fn apply_euler_power(v: &mut [BigInt], t: usize, k: i64) {
    let len = v.len();
    if k == 0 || len <= 1 {
        return;
    }
    let pent: Vec<(usize, i64)> = pentagonal_terms(len.div_ceil(t) as i64)
        .into_iter()
        .map(|(n, s)| (n as usize * t, s))
        .collect();
    if k.unsigned_abs() <= 48 {
        for _ in 0..k.unsigned_abs() {
            if k > 0 {
                for n in (0..len).rev() {
                    let mut acc = BigInt::zero();
                    for (m, s) in &pent {
                        if *m > n {
                            break;
                        }
                        if *s > 0 {
                            acc += &v[n - m];
                        } else {
                            acc -= &v[n - m];
                        }
                    }
                    v[n] = acc;
                }
            } else {
                for n in 0..len {
                    let mut acc = v[n].clone();
                    for (m, s) in &pent[1..] {
                        if *m > n {
                            break;
                        }
                        if *s > 0 {
                            acc -= &v[n - m];
                        } else {
                            acc += &v[n - m];
                        }
                    }
                    v[n] = acc;
                }
            }
        }
        return;
    }
    // Large exponents: power of the Euler function via the J.C.P. Miller
    // recurrence in x = q^t, then one dense product.
    let lx = len.div_ceil(t);
    let e: Vec<(usize, i64)> = pentagonal_terms(lx as i64).into_iter().map(|(n, s)| (n as usize, s)).collect();
    let mut g: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..lx {
        let mut acc = BigInt::zero();
        for (m, s) in &e[1..] {
            if *m > n {
                break;
            }
            let w = (k + 1) * *m as i64 - n as i64;
            acc += &g[n - m] * (w * s);
        }
        let (quot, rem) = acc.div_rem(&BigInt::from(n));
        debug_assert!(rem.is_zero());
        g.push(quot);
    }
    let old = v.to_vec();
    for n in 0..len {
        let mut acc = BigInt::zero();
        for (j, gj) in g.iter().enumerate() {
            let m = j * t;
            if m > n {
                break;
            }
            if !gj.is_zero() {
                acc += gj * &old[n - m];
            }
        }
        v[n] = acc;
    }
}

/// Dense coefficients of `prod_j prod_n (1 - q^(t_j n))^(r_j)` for exponents `0..len`.
fn euler_part(ep: &EtaProduct, len: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    if len > 0 {
        v[0] = BigInt::one();
    }
    for (t, r) in ep.factors() {
        apply_euler_power(&mut v, *t as usize, *r);
    }
    v
}

/// q-expansion of `ep`, including the prefactor `q^(sum t_j r_j / 24)`.
///
/// Every coefficient of `q^e` with `e < depth` is exact; the truncation point
/// is the first exponent of the prefactor's coset at or above `depth`.
pub fn expand<C: Scalar>(ep: &EtaProduct, depth: Exponent) -> Series<C> {
    let prefactor = ep.order_at_infinity();
    let len = (depth - prefactor).ceil_integer().max(0);
    let coeffs = euler_part(ep, len as usize).into_iter().map(C::from_bigint).collect();
    Series::from_dense(prefactor, Exponent::int(1), coeffs, Some(prefactor + Exponent::int(len)))
}

/// q-expansion of `ep` with each `eta(t tau)` contributing no `q^(t/24)`.
pub fn expand_no_prefactor<C: Scalar>(ep: &EtaProduct, depth: Exponent) -> Series<C> {
    let len = depth.ceil_integer().max(0);
    let coeffs = euler_part(ep, len as usize).into_iter().map(C::from_bigint).collect();
    Series::from_dense(Exponent::ZERO, Exponent::int(1), coeffs, Some(Exponent::int(len)))
}

/// Recognizes `f` as an eta-product from its expansion below `depth`.
///
/// The leading coefficient must be 1. After stripping the leading power of q
/// the lowest non-constant coefficient `c` at `q^n` forces a factor
/// `eta(n tau)^(-c)`; it is divided out and the scan continues. Factors found
/// at `n >= depth/2` (relative to the leading exponent) are not trusted.
pub fn eta_factorize<C: Scalar>(f: &Series<C>, depth: Exponent) -> Result<EtaProduct> {
    let not_eta = |reason: String, confirmed: usize| Error::NotAnEtaProduct { reason, confirmed };
    let f = f.clone().truncated(depth);
    let (lead, c) = match f.terms().first() {
        Some((e, c)) => (*e, c.clone()),
        None => return Err(not_eta("series vanishes to the given depth".into(), 0)),
    };
    if !c.is_one() {
        return Err(not_eta(format!("leading coefficient {c} is not 1"), 0));
    }
    let rel_trunc = f.trunc().expect("truncated above") - lead;
    let len = rel_trunc.ceil_integer().max(0) as usize;
    let mut v = vec![BigInt::zero(); len];
    for (e, c) in f.terms() {
        let n = (*e - lead)
            .as_integer()
            .ok_or_else(|| not_eta(format!("exponent {e} is not in the coset of the leading term"), 0))?;
        let r = c.to_rational();
        if !r.is_integer() {
            return Err(not_eta(format!("coefficient {r} at q^{e} is not an integer"), 0));
        }
        v[n as usize] = r.to_integer();
    }
    let mut found: Vec<(u64, i64)> = vec![];
    for n in 1..len {
        if v[n].is_zero() {
            continue;
        }
        let r = (-&v[n])
            .to_i64()
            .ok_or_else(|| not_eta(format!("coefficient at q^{n} is too large"), found.len()))?;
        found.push((n as u64, r));
        apply_euler_power(&mut v, n, -r);
        debug_assert!(v[n].is_zero());
    }
    let confirmed = found.iter().filter(|(t, _)| 2 * (*t as usize) < len).count();
    if confirmed < found.len() {
        return Err(not_eta(
            format!("residual terms remain at exponents beyond the confidence bound {}", len.div_ceil(2)),
            confirmed,
        ));
    }
    let ep = EtaProduct::new(found)?;
    if ep.order_at_infinity() != lead {
        return Err(not_eta(
            format!("leading exponent {lead} differs from the product's order {}", ep.order_at_infinity()),
            confirmed,
        ));
    }
    Ok(ep)
}

/// A linear combination `constant + sum alpha_j f_j` of eta-products.
///
/// Invariants: coefficients are nonzero, products are pairwise distinct and
/// never the empty product (constants live in `constant`).
#[derive(Clone, Debug, PartialEq)]
pub struct EtaCombo<C = Rational> {
    constant: C,
    terms: Vec<(C, EtaProduct)>,
}

impl<C: Scalar> EtaCombo<C> {
    /// Merges repeated products (keeping first-occurrence order), folds empty
    /// products into the constant and drops zero coefficients.
    pub fn new<I: IntoIterator<Item = (C, EtaProduct)>>(constant: C, terms: I) -> Self {
        let mut constant = constant;
        let mut merged: Vec<(C, EtaProduct)> = vec![];
        for (c, ep) in terms {
            if ep.is_one() {
                constant = constant + c;
            } else if let Some(slot) = merged.iter_mut().find(|(_, e)| *e == ep) {
                slot.0 = slot.0.clone() + c;
            } else {
                merged.push((c, ep));
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        EtaCombo { constant, terms: merged }
    }

    pub fn constant_only(c: C) -> Self {
        EtaCombo { constant: c, terms: vec![] }
    }

    pub fn constant(&self) -> &C {
        &self.constant
    }

    pub fn terms(&self) -> &[(C, EtaProduct)] {
        &self.terms
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(
            self.constant.clone() * c.clone(),
            self.terms.iter().map(|(a, ep)| (a.clone() * c.clone(), ep.clone())),
        )
    }

    /// Terms as an ordered sum, the constant (when nonzero) first.
    pub fn to_sum(&self) -> Vec<(C, EtaProduct)> {
        let mut out = vec![];
        if !self.constant.is_zero() {
            out.push((self.constant.clone(), EtaProduct::one()));
        }
        out.extend(self.terms.iter().cloned());
        out
    }
}

/// `constant + sum alpha_j expand(f_j)` through `O(q^depth)`.
pub fn combo_expand<C: Scalar>(combo: &EtaCombo<C>, depth: Exponent) -> Series<C> {
    combo
        .terms()
        .iter()
        .fold(Series::constant(combo.constant().clone()), |acc, (a, ep)| {
            acc + expand::<C>(ep, depth).scale(a)
        })
}

fn write_signed<C: Scalar>(f: &mut fmt::Formatter<'_>, first: bool, c: &C, body: Option<&EtaProduct>) -> fmt::Result {
    let r = c.to_rational();
    let mag = r.abs();
    let sign = match (first, r.is_negative()) {
        (true, false) => "",
        (true, true) => "-",
        (false, false) => " + ",
        (false, true) => " - ",
    };
    match body {
        None => write!(f, "{sign}{mag}"),
        Some(ep) if mag.is_one() => write!(f, "{sign}{ep}"),
        Some(ep) => write!(f, "{sign}{mag}*{ep}"),
    }
}

impl<C: Scalar> fmt::Display for EtaCombo<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_zero() {
            write_signed(f, true, &self.constant, None)?;
            first = false;
        }
        for (c, ep) in &self.terms {
            write_signed(f, first, c, Some(ep))?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
