//! Truncated q-series with exponents in the lattice (1/24)Z.
//!
//! A [`Series`] stores its nonzero terms sorted by exponent together with a
//! truncation point: every coefficient below `trunc` is known exactly and
//! nothing is claimed at or above it. A series without a truncation point is
//! an exact Laurent polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// An exponent `n/24`, stored as the integer `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponent(i64);

impl Exponent {
    pub const ZERO: Exponent = Exponent(0);

    pub const fn from_24ths(n: i64) -> Self {
        Exponent(n)
    }

    /// The integer exponent `n`.
    pub const fn int(n: i64) -> Self {
        Exponent(24 * n)
    }

    pub const fn twenty_fourths(self) -> i64 {
        self.0
    }

    /// Fails with [`Error::OffLattice`] unless `24 r` is an integer.
    pub fn try_from_rational(r: &Rational) -> Result<Self> {
        let scaled = r * Rational::from_integer(BigInt::from(24));
        if !scaled.is_integer() {
            return Err(Error::OffLattice(r.to_string()));
        }
        i64::try_from(scaled.to_integer())
            .map(Exponent)
            .map_err(|_| Error::OffLattice(r.to_string()))
    }

    /// Smallest lattice point `>= r`.
    pub fn ceil_rational(r: &Rational) -> Self {
        let scaled = (r * Rational::from_integer(BigInt::from(24))).ceil();
        Exponent(i64::try_from(scaled.to_integer()).expect("exponent out of range"))
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(self.0), BigInt::from(24))
    }

    pub fn is_integer(self) -> bool {
        self.0 % 24 == 0
    }

    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 24)
    }

    pub fn floor_integer(self) -> i64 {
        Integer::div_floor(&self.0, &24)
    }

    pub fn ceil_integer(self) -> i64 {
        Integer::div_ceil(&self.0, &24)
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::int(n)
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 + rhs.0)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 - rhs.0)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

/// Lowest nonzero term of a series.
#[derive(Clone, Debug, PartialEq)]
pub enum LeadingTerm<C = Rational> {
    Term { exponent: Exponent, coefficient: C },
    /// No nonzero coefficient below the truncation point (`None` = exactly zero).
    Zero { trunc: Option<Exponent> },
}

/// A truncated formal series `sum c_e q^e + O(q^trunc)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C = Rational> {
    terms: Vec<(Exponent, C)>,
    trunc: Option<Exponent>,
}

fn min_trunc(a: Option<Exponent>, b: Option<Exponent>) -> Option<Exponent> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<C: Scalar> Series<C> {
    /// Builds a series from arbitrary terms: like exponents are merged, zeros
    /// and terms at or above `trunc` are dropped.
    pub fn from_terms<I>(terms: I, trunc: Option<Exponent>) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
    {
        let mut acc: BTreeMap<Exponent, C> = BTreeMap::new();
        for (e, c) in terms {
            if trunc.is_some_and(|t| e >= t) {
                continue;
            }
            let slot = acc.entry(e).or_insert_with(C::zero);
            *slot = slot.clone() + c;
        }
        Self::from_sorted_map(acc, trunc)
    }

    fn from_sorted_map(acc: BTreeMap<Exponent, C>, trunc: Option<Exponent>) -> Self {
        Series {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            trunc,
        }
    }

    /// Like [`Series::from_terms`] with rational exponents, validated against the lattice.
    pub fn try_from_rational_terms<I>(terms: I, trunc: Option<&Rational>) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, C)>,
    {
        let trunc = trunc.map(Exponent::try_from_rational).transpose()?;
        let terms = terms
            .into_iter()
            .map(|(e, c)| Ok((Exponent::try_from_rational(&e)?, c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(terms, trunc))
    }

    /// Dense integer-exponent constructor: `coeffs[i]` is the coefficient of `q^(offset + i)`.
    pub fn from_dense(offset: Exponent, step: Exponent, coeffs: Vec<C>, trunc: Option<Exponent>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (offset + Exponent(step.0 * i as i64), c))
            .filter(|(e, _)| trunc.is_none_or(|t| *e < t))
            .collect();
        Series { terms, trunc }
    }

    pub fn zero() -> Self {
        Series { terms: Vec::new(), trunc: None }
    }

    /// `O(q^trunc)`.
    pub fn zero_to(trunc: Exponent) -> Self {
        Series { terms: Vec::new(), trunc: Some(trunc) }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, Exponent::ZERO)
    }

    pub fn monomial(c: C, e: Exponent) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(e, c)] };
        Series { terms, trunc: None }
    }

    pub fn terms(&self) -> &[(Exponent, C)] {
        &self.terms
    }

    pub fn trunc(&self) -> Option<Exponent> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// True when no nonzero coefficient is stored.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `q^e`, or `None` when `e` is at or beyond the truncation.
    pub fn coefficient(&self, e: Exponent) -> Option<C> {
        if self.trunc.is_some_and(|t| e >= t) {
            return None;
        }
        Some(match self.terms.binary_search_by_key(&e, |(x, _)| *x) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        })
    }

    /// Lowers the truncation point to `min(trunc, t)`.
    pub fn truncated(mut self, t: Exponent) -> Self {
        let t = min_trunc(self.trunc, Some(t)).unwrap();
        self.terms.retain(|(e, _)| *e < t);
        self.trunc = Some(t);
        self
    }

    pub fn leading_term(&self) -> LeadingTerm<C> {
        match self.terms.first() {
            Some((e, c)) => LeadingTerm::Term { exponent: *e, coefficient: c.clone() },
            None => LeadingTerm::Zero { trunc: self.trunc },
        }
    }

    /// Exponent of the leading term, if any.
    pub fn order(&self) -> Option<Exponent> {
        self.terms.first().map(|(e, _)| *e)
    }

    /// Lower bound on the true order: the leading exponent, or the truncation
    /// point for a truncated zero. `None` for the exact zero series.
    fn order_bound(&self) -> Option<Exponent> {
        self.order().or(self.trunc)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Series { terms: Vec::new(), trunc: self.trunc };
        }
        Series {
            terms: self.terms.iter().map(|(e, x)| (*e, x.clone() * c.clone())).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiplies by `q^shift`.
    pub fn shift(&self, shift: Exponent) -> Self {
        Series {
            terms: self.terms.iter().map(|(e, c)| (*e + shift, c.clone())).collect(),
            trunc: self.trunc.map(|t| t + shift),
        }
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let trunc = min_trunc(self.trunc, rhs.trunc);
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some((ea, ca)), Some((eb, cb))) if ea == eb => {
                    i += 1;
                    j += 1;
                    (*ea, ca.clone() + cb.clone())
                }
                (Some((ea, ca)), Some((eb, _))) if ea < eb => {
                    i += 1;
                    (*ea, ca.clone())
                }
                (Some((ea, ca)), None) => {
                    i += 1;
                    (*ea, ca.clone())
                }
                (_, Some((eb, cb))) => {
                    j += 1;
                    (*eb, cb.clone())
                }
                (None, None) => unreachable!(),
            };
            if trunc.is_some_and(|t| next.0 >= t) {
                break;
            }
            if !next.1.is_zero() {
                out.push(next);
            }
        }
        Series { terms: out, trunc }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let (oa, ob) = match (self.order_bound(), rhs.order_bound()) {
            (Some(x), Some(y)) => (x, y),
            _ => return Self::zero(),
        };
        let trunc = min_trunc(self.trunc.map(|t| t + ob), rhs.trunc.map(|t| t + oa));
        let mut acc: BTreeMap<Exponent, C> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = *ea + *eb;
                if trunc.is_some_and(|t| e >= t) {
                    break;
                }
                let slot = acc.entry(e).or_insert_with(C::zero);
                *slot = slot.clone() + ca.clone() * cb.clone();
            }
        }
        Self::from_sorted_map(acc, trunc)
    }

    /// Multiplicative inverse with `self * inverse = 1 + O(q^depth)`, as far as
    /// the precision of `self` allows.
    pub fn invert(&self, depth: Exponent) -> Result<Self> {
        let (v, c) = match self.terms.first() {
            Some((v, c)) => (*v, c.clone()),
            None => return Err(Error::ZeroLeadingTerm),
        };
        let c_inv = C::one() / c.clone();
        if self.trunc.is_none() && self.terms.len() == 1 {
            return Ok(Self::monomial(c_inv, -v));
        }
        let mut inv_trunc = depth - v;
        if let Some(t) = self.trunc {
            inv_trunc = inv_trunc.min(t - v - v);
        }
        // Relative precision, in 1/24 steps, of the unit part.
        let rel = (inv_trunc + v).twenty_fourths();
        let unit: Vec<(i64, C)> = self.terms[1..]
            .iter()
            .map(|(e, x)| ((*e - v).twenty_fourths(), x.clone() * c_inv.clone()))
            .filter(|(k, _)| *k < rel)
            .collect();
        if rel <= 0 {
            return Ok(Self::zero_to(inv_trunc));
        }
        let step = unit.iter().fold(0i64, |g, (k, _)| g.gcd(k));
        if step == 0 {
            return Ok(Self::monomial(c_inv, -v).truncated(inv_trunc));
        }
        let len = (rel + step - 1) / step;
        let unit: Vec<(usize, C)> = unit.into_iter().map(|(k, x)| ((k / step) as usize, x)).collect();
        let mut w: Vec<C> = Vec::with_capacity(len as usize);
        w.push(C::one());
        for i in 1..len as usize {
            let mut s = C::zero();
            for (k, x) in &unit {
                if *k > i {
                    break;
                }
                s = s + x.clone() * w[i - k].clone();
            }
            w.push(-s);
        }
        let w = w.into_iter().map(|x| x * c_inv.clone()).collect();
        Ok(Self::from_dense(-v, Exponent(step), w, Some(inv_trunc)))
    }

    /// Integer power. Negative powers of a truncated series use all of its
    /// relative precision; negative powers of an exact non-monomial fail with
    /// [`Error::UnboundedInverse`].
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::one());
        }
        let base = if n > 0 {
            self.clone()
        } else {
            match (self.trunc, self.order()) {
                (_, None) => return Err(Error::ZeroLeadingTerm),
                (None, _) if self.terms.len() > 1 => return Err(Error::UnboundedInverse),
                (None, Some(v)) => self.invert(v)?,
                (Some(t), Some(v)) => self.invert(t - v)?,
            }
        };
        let mut e = n.unsigned_abs();
        let mut result = Self::one();
        let mut square = base;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &square;
            }
            e >>= 1;
            if e > 0 {
                square = &square * &square;
            }
        }
        Ok(result)
    }

    /// `sum_n a(p n + j) q^n` for a series with integer exponents.
    pub fn sift(&self, p: u64, j: u64) -> Result<Self> {
        if p == 0 || j >= p {
            return Err(Error::PrecondFailed(format!("sift needs 0 <= j < p, got p={p}, j={j}")));
        }
        if let Some((e, _)) = self.terms.iter().find(|(e, _)| !e.is_integer()) {
            return Err(Error::FractionalExponent(e.to_string()));
        }
        let (p, j) = (p as i64, j as i64);
        let trunc = self.trunc.map(|t| Exponent::int(Integer::div_ceil(&(t.ceil_integer() - j), &p)));
        let terms = self.terms.iter().filter_map(|(e, c)| {
            let n = e.as_integer().unwrap();
            ((n - j).rem_euclid(p) == 0).then(|| (Exponent::int((n - j) / p), c.clone()))
        });
        Ok(Self::from_terms(terms, trunc))
    }
}

impl<C: Scalar> Add for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: &Series<C>) -> Series<C> {
        self.add_ref(rhs)
    }
}

impl<C: Scalar> Add for Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: Series<C>) -> Series<C> {
        self.add_ref(&rhs)
    }
}

impl<C: Scalar> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        Series {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
            trunc: self.trunc,
        }
    }
}

impl<C: Scalar> Neg for Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        -&self
    }
}

impl<C: Scalar> Sub for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: &Series<C>) -> Series<C> {
        self.add_ref(&-rhs)
    }
}

impl<C: Scalar> Sub for Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: Series<C>) -> Series<C> {
        &self - &rhs
    }
}

impl<C: Scalar> Mul for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: &Series<C>) -> Series<C> {
        self.mul_ref(rhs)
    }
}

impl<C: Scalar> Mul for Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: Series<C>) -> Series<C> {
        self.mul_ref(&rhs)
    }
}

fn power_of_q(e: Exponent) -> String {
    match e.as_integer() {
        Some(1) => "q".to_string(),
        Some(n) if n > 1 => format!("q^{n}"),
        _ => format!("q^({e})"),
    }
}

impl<C: Scalar> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            let r = c.to_rational();
            let negative = r.is_negative();
            let mag = r.abs();
            let body = if *e == Exponent::ZERO {
                mag.to_string()
            } else if mag.is_one() {
                power_of_q(*e)
            } else {
                format!("{mag}*{}", power_of_q(*e))
            };
            match (first, negative) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        match (self.trunc, first) {
            (Some(t), true) => write!(f, "O({})", power_of_q(t)),
            (Some(t), false) => write!(f, " + O({})", power_of_q(t)),
            (None, true) => write!(f, "0"),
            (None, false) => Ok(()),
        }
    }
}

/// Generalized pentagonal exponents `k(3k-1)/2`, `k` in Z, below `limit`,
/// paired with the sign `(-1)^k`, in increasing order.
pub(crate) fn pentagonal_terms(limit: i64) -> Vec<(i64, i64)> {
    let mut out = vec![];
    if limit > 0 {
        out.push((0, 1));
    }
    let mut k = 1i64;
    loop {
        let a = k * (3 * k - 1) / 2;
        let b = k * (3 * k + 1) / 2;
        if a >= limit {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        out.push((a, sign));
        if b < limit {
            out.push((b, sign));
        }
        k += 1;
    }
    out
}

/// Expansion of `eta(t tau) = q^(t/24) prod_{n>=1} (1 - q^(t n))` through `O(q^depth)`,
/// via the pentagonal number theorem.
pub fn eta_series<C: Scalar>(t: u64, depth: Exponent) -> Series<C> {
    assert!(t >= 1, "eta multiplier must be positive");
    let t = t as i64;
    let prefactor = Exponent::from_24ths(t);
    let limit = (depth - prefactor).twenty_fourths();
    // Integer exponents n with 24 t n < limit.
    let count = if limit <= 0 { 0 } else { (limit + 24 * t - 1) / (24 * t) };
    let terms = pentagonal_terms(count)
        .into_iter()
        .map(|(n, s)| (prefactor + Exponent::int(n * t), C::from_int(s)));
    Series::from_terms(terms, Some(depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    type S = Series<Rational>;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn poly(coeffs: &[i64], trunc: Option<i64>) -> S {
        S::from_terms(
            coeffs.iter().enumerate().map(|(i, c)| (Exponent::int(i as i64), Rational::from_integer((*c).into()))),
            trunc.map(Exponent::int),
        )
    }

    #[test]
    fn add_cancels_and_takes_min_trunc() {
        let a = poly(&[1, 1], Some(10));
        let b = poly(&[-1, -1, 1], Some(7));
        let s = &a + &b;
        assert_eq!(s.terms(), &[(Exponent::int(2), r(1, 1))]);
        assert_eq!(s.trunc(), Some(Exponent::int(7)));
        assert_eq!(&a + &S::zero(), a);
    }

    #[test]
    fn add_merges_fractional_terms() {
        let e18 = Exponent::from_24ths(3);
        let e98 = Exponent::from_24ths(27);
        let a = S::from_terms([(e18, r(1, 1)), (e98, r(1, 1))], None);
        let b = S::monomial(r(1, 1), e18);
        assert_eq!((&a + &b).terms(), &[(e18, r(2, 1)), (e98, r(1, 1))]);
    }

    #[test]
    fn geometric_series_inverts_one_minus_q() {
        let geo = poly(&[1; 30], Some(30));
        let prod = &poly(&[1, -1], None) * &geo;
        assert_eq!(prod, poly(&[1], Some(30)));
        let inv = poly(&[1, -1], None).invert(Exponent::int(30)).unwrap();
        assert_eq!(inv, geo);
    }

    #[test]
    fn monomials_multiply_and_invert_exactly() {
        let q24 = S::monomial(r(1, 1), Exponent::from_24ths(1));
        assert_eq!(&q24 * &q24, S::monomial(r(1, 1), Exponent::from_24ths(2)));
        assert_eq!(q24.invert(Exponent::int(5)).unwrap(), S::monomial(r(1, 1), Exponent::from_24ths(-1)));
    }

    #[test]
    fn invert_zero_fails() {
        assert_eq!(S::zero_to(Exponent::int(3)).invert(Exponent::int(3)), Err(Error::ZeroLeadingTerm));
        assert_eq!(S::zero().pow(-1), Err(Error::ZeroLeadingTerm));
    }

    #[test]
    fn invert_respects_input_precision() {
        // (2q + q^2 + O(q^5))^{-1} is only known through O(q^3).
        let a = S::from_terms([(Exponent::int(1), r(2, 1)), (Exponent::int(2), r(1, 1))], Some(Exponent::int(5)));
        let inv = a.invert(Exponent::int(100)).unwrap();
        assert_eq!(inv.trunc(), Some(Exponent::int(3)));
        assert_eq!(inv.order(), Some(Exponent::int(-1)));
        let prod = &a * &inv;
        assert_eq!(prod, poly(&[1], Some(4)));
    }

    #[test]
    fn pow_edge_cases() {
        let a = poly(&[1, 3, 0, 2], Some(12));
        assert_eq!(a.pow(0).unwrap(), S::one());
        assert_eq!(a.pow(1).unwrap(), a);
        assert_eq!(&a.pow(-2).unwrap() * &a.pow(2).unwrap(), poly(&[1], Some(12)));
        assert_eq!(poly(&[1, 1], None).pow(-1), Err(Error::UnboundedInverse));
    }

    #[test]
    fn eta_pentagonal_expansion() {
        let eta: S = eta_series(1, Exponent::int(13));
        let expected: Vec<(Exponent, Rational)> = [(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1)]
            .iter()
            .map(|(n, c)| (Exponent::from_24ths(1 + 24 * n), r(*c, 1)))
            .collect();
        assert_eq!(eta.terms(), expected.as_slice());
        let eta7: S = eta_series(7, Exponent::int(3));
        assert_eq!(eta7.leading_term(), LeadingTerm::Term { exponent: Exponent::from_24ths(7), coefficient: r(1, 1) });
    }

    #[test]
    fn sift_extracts_progressions() {
        let a = poly(&[1, 1, 1, 1, 1], Some(5));
        let s = a.sift(2, 0).unwrap();
        assert_eq!(s, poly(&[1, 1, 1], Some(3)));
        let frac = S::monomial(r(1, 1), Exponent::from_24ths(3));
        assert!(matches!(frac.sift(2, 0), Err(Error::FractionalExponent(_))));
        assert_eq!(S::constant(r(7, 1)).sift(5, 0).unwrap(), S::constant(r(7, 1)));
    }

    #[test]
    fn sift_handles_negative_exponents() {
        let a = S::from_terms([(Exponent::int(-3), r(1, 1)), (Exponent::int(-1), r(2, 1))], Some(Exponent::int(4)));
        let s = a.sift(3, 0).unwrap();
        assert_eq!(s.terms(), &[(Exponent::int(-1), r(1, 1))]);
        assert_eq!(s.trunc(), Some(Exponent::int(2)));
        let s2 = a.sift(3, 2).unwrap();
        assert_eq!(s2.terms(), &[(Exponent::int(-1), r(2, 1))]);
    }

    #[test]
    fn leading_terms() {
        let a = S::from_terms([(Exponent::from_24ths(3), r(1, 1)), (Exponent::from_24ths(27), r(1, 1))], None);
        assert_eq!(a.leading_term(), LeadingTerm::Term { exponent: Exponent::from_24ths(3), coefficient: r(1, 1) });
        assert_eq!(S::zero_to(Exponent::int(201)).leading_term(), LeadingTerm::Zero { trunc: Some(Exponent::int(201)) });
        assert_eq!(
            S::constant(r(5, 1)).leading_term(),
            LeadingTerm::Term { exponent: Exponent::ZERO, coefficient: r(5, 1) }
        );
    }

    #[test]
    fn lattice_validation() {
        assert!(Exponent::try_from_rational(&r(1, 8)).is_ok());
        assert!(matches!(Exponent::try_from_rational(&r(1, 5)), Err(Error::OffLattice(_))));
        assert!(S::try_from_rational_terms([(r(1, 7), r(1, 1))], None).is_err());
        assert_eq!(Exponent::ceil_rational(&r(1, 5)), Exponent::from_24ths(5));
    }

    #[test]
    fn display_format() {
        let a = poly(&[1, 1, 0, 1, 0, 0, 1], Some(10));
        assert_eq!(a.to_string(), "1 + q + q^3 + q^6 + O(q^10)");
        let b = S::from_terms(
            [(Exponent::from_24ths(3), r(1, 1)), (Exponent::int(2), r(-3, 4)), (Exponent::int(-1), r(-1, 1))],
            None,
        );
        assert_eq!(b.to_string(), "-q^(-1) + q^(1/8) - 3/4*q^2");
        assert_eq!(S::zero_to(Exponent::int(43)).to_string(), "O(q^43)");
    }

    #[test]
    fn generic_over_fixed_width_rationals() {
        let a: Series<Rational64> = eta_series(1, Exponent::int(20));
        let b: S = eta_series(1, Exponent::int(20));
        let lifted: Vec<(Exponent, Rational)> = a.terms().iter().map(|(e, c)| (*e, c.to_rational())).collect();
        assert_eq!(lifted.as_slice(), b.terms());
    }
}
