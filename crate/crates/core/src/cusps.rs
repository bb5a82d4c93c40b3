//! Cusps of Gamma0(N), their fan widths, and orders of eta-products at cusps.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::{divisors, gcd};
use crate::eta::EtaProduct;
use crate::Rational;

/// A cusp: infinity or a reduced fraction `b/c` with `c >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cusp {
    Infinity,
    Finite { num: i64, den: u64 },
}

impl Cusp {
    /// `b/c` in lowest terms; `c = 0` gives infinity.
    pub fn new(b: i64, c: i64) -> Self {
        if c == 0 {
            return Cusp::Infinity;
        }
        let g = b.gcd(&c);
        let (mut b, mut c) = (b / g, c / g);
        if c < 0 {
            b = -b;
            c = -c;
        }
        Cusp::Finite { num: b, den: c as u64 }
    }

    pub fn denominator(&self) -> Option<u64> {
        match self {
            Cusp::Infinity => None,
            Cusp::Finite { den, .. } => Some(*den),
        }
    }

    pub fn numerator(&self) -> Option<i64> {
        match self {
            Cusp::Infinity => None,
            Cusp::Finite { num, .. } => Some(*num),
        }
    }

    /// True for infinity and for every `b/N`, the representatives of the
    /// class of infinity on Gamma0(N).
    pub fn is_infinity_class(&self, n: u64) -> bool {
        match self {
            Cusp::Infinity => true,
            Cusp::Finite { den, .. } => *den % n == 0,
        }
    }
}

impl Ord for Cusp {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cusp::Infinity, Cusp::Infinity) => Ordering::Equal,
            (Cusp::Infinity, _) => Ordering::Greater,
            (_, Cusp::Infinity) => Ordering::Less,
            (Cusp::Finite { num: a, den: c }, Cusp::Finite { num: b, den: d }) => c.cmp(d).then(a.cmp(b)),
        }
    }
}

impl PartialOrd for Cusp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cusp::Infinity => write!(f, "oo"),
            Cusp::Finite { num, den: 1 } => write!(f, "{num}"),
            Cusp::Finite { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

/// A complete set of inequivalent cusps of Gamma0(n).
///
/// For each divisor `d` of `n`, numerators coprime to `d` are taken once per
/// unit class modulo `e_d = gcd(d, n/d)`, using the smallest such numerator.
/// Ordered by denominator, then numerator; `1/n` stands for infinity.
pub fn cusp_set(n: u64) -> Vec<Cusp> {
    assert!(n >= 1, "level must be positive");
    let mut out = vec![];
    for d in divisors(n) {
        let e = gcd(d, n / d);
        let mut reps: Vec<u64> = (0..e)
            .filter(|u| gcd(*u, e) == 1)
            .filter_map(|u| (0..d).find(|x| x % e == u && gcd(*x, d) == 1))
            .collect();
        reps.sort_unstable();
        out.extend(reps.into_iter().map(|x| Cusp::new(x as i64, d as i64)));
    }
    out
}

/// [`cusp_set`] without the class of infinity.
pub fn cusps_excluding_infinity(n: u64) -> Vec<Cusp> {
    cusp_set(n).into_iter().filter(|c| !c.is_infinity_class(n)).collect()
}

/// Width of the cusp on Gamma0(n): `n / gcd(n, c^2)`.
pub fn fan_width(cusp: &Cusp, n: u64) -> u64 {
    match cusp {
        Cusp::Infinity => 1,
        Cusp::Finite { den, .. } => {
            let c2 = (*den as u128) * (*den as u128);
            n / (c2.gcd(&(n as u128)) as u64)
        }
    }
}

/// Invariant order of `ep` at the cusp, `sum_j gcd(t_j, c)^2 r_j / (24 t_j)`;
/// at infinity this is `sum_j t_j r_j / 24`.
pub fn cusp_ord(ep: &EtaProduct, cusp: &Cusp) -> Rational {
    ep.factors()
        .iter()
        .map(|(t, r)| {
            let g = match cusp {
                Cusp::Infinity => *t,
                Cusp::Finite { den, .. } => gcd(*t, *den),
            };
            Rational::new(BigInt::from(g) * g * r, BigInt::from(24u64 * t))
        })
        .sum()
}

/// Order of `ep` at the cusp relative to Gamma0(n): width times invariant order.
pub fn cusp_ord_gamma0(ep: &EtaProduct, n: u64, cusp: &Cusp) -> Rational {
    cusp_ord(ep, cusp) * Rational::from_integer(fan_width(cusp, n).into())
}

/// Orders of one function at an ordered list of cusps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdVector {
    pub entries: Vec<(Cusp, Rational)>,
}

impl OrdVector {
    pub fn cusps(&self) -> impl Iterator<Item = &Cusp> {
        self.entries.iter().map(|(c, _)| c)
    }

    pub fn values(&self) -> impl Iterator<Item = &Rational> {
        self.entries.iter().map(|(_, v)| v)
    }

    pub fn total(&self) -> Rational {
        self.values().sum()
    }

    pub fn zeros(cusps: &[Cusp]) -> Self {
        OrdVector { entries: cusps.iter().map(|c| (*c, Rational::from_integer(0.into()))).collect() }
    }
}

impl fmt::Display for OrdVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(c, v)| format!("[{c},{v}]")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// [`cusp_ord_gamma0`] at each cusp, in the given order.
pub fn cusp_ords_gamma0(ep: &EtaProduct, cusps: &[Cusp], n: u64) -> OrdVector {
    OrdVector { entries: cusps.iter().map(|c| (*c, cusp_ord_gamma0(ep, n, c))).collect() }
}
