#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use eta_core::{gamma_check, EtaCombo, EtaProduct, Exponent, QSeries, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn gp(list: &[i64]) -> EtaProduct {
    EtaProduct::from_gp(list).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn entry_3_1() -> EtaCombo {
    EtaCombo::new(
        int(1),
        [
            (int(9), gp(&[3, 4, 6, 4, 1, -4, 2, -4])),
            (int(-1), gp(&[3, 8, 2, 4, 1, -8, 6, -4])),
            (int(-1), gp(&[1, 4, 6, 8, 3, -4, 2, -8])),
        ],
    )
}

pub fn u5_g() -> EtaProduct {
    gp(&[100, -3, 50, 5, 25, -2, 10, -8, 5, 4, 4, 3, 2, 3, 1, -2])
}

pub fn u5_f1() -> EtaProduct {
    gp(&[10, 8, 5, -4, 2, -8, 1, 4])
}

pub fn u5_f2() -> EtaProduct {
    gp(&[20, -3, 10, 5, 5, -2, 4, -1, 2, -1, 1, 2])
}

pub fn u5_rhs(a1: Rational, a2: Rational) -> EtaCombo {
    EtaCombo::new(int(0), [(a1, u5_f1()), (a2, u5_f2())])
}

/// Every nontrivial modular function on Gamma0(n) of the form
/// `prod_{d | n} eta(d tau)^(r_d)` with `|r_d| <= bound`.
fn enumerate_generators(n: u64, bound: i64) -> Vec<EtaProduct> {
    let ds = divisors(n);
    let mut out = vec![];
    let mut rs = vec![-bound; ds.len()];
    loop {
        if rs.iter().sum::<i64>() == 0 && rs.iter().any(|r| *r != 0) {
            let ep = EtaProduct::new(ds.iter().copied().zip(rs.iter().copied())).unwrap();
            if gamma_check(&ep, n).invariant() {
                out.push(ep);
            }
        }
        let mut i = 0;
        while i < rs.len() && rs[i] == bound {
            rs[i] = -bound;
            i += 1;
        }
        if i == rs.len() {
            return out;
        }
        rs[i] += 1;
    }
}

/// Generators of modular eta-quotients on Gamma0(n), found by bounded search.
pub fn modular_generators(n: u64) -> Vec<EtaProduct> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<EtaProduct>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let bound = match divisors(n).len() {
        0..=3 => 24,
        4 => 10,
        5 | 6 => 3,
        _ => panic!("no generator search for level {n}"),
    };
    let gens = enumerate_generators(n, bound);
    assert!(!gens.is_empty(), "no generators at level {n}");
    cache.lock().unwrap().insert(n, gens.clone());
    gens
}

/// Random products of powers of the generators at level `n`.
pub fn modular_product(n: u64) -> impl Strategy<Value = EtaProduct> {
    let gens = modular_generators(n);
    let len = gens.len();
    prop::collection::vec((0..len, -2i64..=2), 1..4).prop_map(move |picks| {
        picks.iter().fold(EtaProduct::one(), |acc, (i, k)| &acc * &gens[*i].pow(*k))
    })
}

/// Arbitrary eta-products with multipliers up to `max_t`.
pub fn any_product(max_t: u64, max_r: i64, max_factors: usize) -> impl Strategy<Value = EtaProduct> {
    prop::collection::vec((1..=max_t, -max_r..=max_r), 0..=max_factors)
        .prop_map(|pairs| EtaProduct::new(pairs).unwrap())
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

/// Random series with integer exponents in `[-3, 12)` and a truncation in `[4, 16)`.
pub fn any_series() -> impl Strategy<Value = QSeries> {
    (prop::collection::vec((-3i64..12, small_rational()), 0..8), prop::option::weighted(0.8, 4i64..16)).prop_map(
        |(terms, trunc)| {
            QSeries::from_terms(terms.into_iter().map(|(e, c)| (Exponent::int(e), c)), trunc.map(Exponent::int))
        },
    )
}

/// Equality of two series up to the smaller of their truncations.
pub fn agree(a: &QSeries, b: &QSeries) -> bool {
    match (a.trunc(), b.trunc()) {
        (None, None) => a == b,
        (ta, tb) => {
            let t = [ta, tb].into_iter().flatten().min().unwrap();
            a.clone().truncated(t) == b.clone().truncated(t)
        }
    }
}

/// Coefficients of `prod_{n >= 1} (1 - q^(t n))^r` below `q^len`, by repeated
/// multiplication with `(1 - q^m)` or the geometric series `1/(1 - q^m)`.
pub fn brute_euler_product(factors: &[(u64, i64)], len: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); len];
    if len > 0 {
        v[0] = BigInt::from(1);
    }
    for (t, r) in factors {
        let t = *t as usize;
        for m in (t..len).step_by(t) {
            for _ in 0..r.unsigned_abs() {
                if *r > 0 {
                    for i in (m..len).rev() {
                        let x = v[i - m].clone();
                        v[i] -= x;
                    }
                } else {
                    for i in m..len {
                        let x = v[i - m].clone();
                        v[i] += x;
                    }
                }
            }
        }
    }
    v
}
