//! Checks against independent computations: naive products, counting, and
//! brute-force group actions.

mod common;

use std::collections::BTreeSet;

use common::*;
use eta_core::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn dense(s: &QSeries, from: i64, len: usize) -> Vec<BigInt> {
    (0..len as i64)
        .map(|i| s.coefficient(Exponent::int(from + i)).expect("within precision").to_integer())
        .collect()
}

#[test]
fn hm5_product_matches_naive_expansion() {
    let ep = gp(&[5, 6, 1, -6]);
    let s = expand::<Rational>(&ep, Exponent::int(41));
    let naive = brute_euler_product(ep.factors(), 40);
    assert_eq!(dense(&s, 1, 40), naive);
    assert_eq!(dense(&s, 1, 4), [1, 6, 27, 98].map(BigInt::from));
}

#[test]
fn partition_numbers() {
    let mut p = vec![0u64; 120];
    p[0] = 1;
    for part in 1..120 {
        for n in part..120 {
            p[n] += p[n - part];
        }
    }
    let s = expand_no_prefactor::<Rational>(&EtaProduct::eta(1).unwrap().inverse(), Exponent::int(120));
    assert_eq!(dense(&s, 0, 120), p.iter().map(|x| BigInt::from(*x)).collect::<Vec<_>>());
}

#[test]
fn theta_is_an_eta_quotient() {
    // sum over all integers n of q^(n^2)
    let theta = gp(&[2, 5, 1, -2, 4, -2]);
    let s = expand::<Rational>(&theta, Exponent::int(400));
    let mut counts = vec![0i64; 400];
    for n in -20i64..=20 {
        if n * n < 400 {
            counts[(n * n) as usize] += 1;
        }
    }
    assert_eq!(dense(&s, 0, 400), counts.iter().map(|c| BigInt::from(*c)).collect::<Vec<_>>());
}

#[test]
fn up_of_squares() {
    let squares = QSeries::from_terms((0..30).map(|k| (Exponent::int(k * k), int(1))), Some(Exponent::int(800)));
    let u = up_series(&squares, 2).unwrap();
    assert_eq!(u.trunc(), Some(Exponent::int(400)));
    for n in 0..400i64 {
        let is_square = (0..30).any(|k| k * k == 2 * n);
        assert_eq!(u.coefficient(Exponent::int(n)), Some(int(is_square as i64)), "n = {n}");
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `(b, d)` with `a d - b c = 1`.
fn complete(a: i64, c: i64) -> (i64, i64) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, c, 1, 0, 0, 1);
    while r1 != 0 {
        let k = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    assert_eq!(r0.abs(), 1);
    (-t0 * r0, s0 * r0)
}

/// Cusps of Gamma0(n) as orbits of `T = [[1,1],[0,1]]` on the projective line
/// over Z/n, each orbit labelled by its smallest point; a cusp `a/c` maps to
/// the orbit of the bottom row of a matrix sending infinity to it.
struct ProjectiveLine {
    n: i64,
    units: Vec<i64>,
}

impl ProjectiveLine {
    fn new(n: u64) -> Self {
        let n = n as i64;
        ProjectiveLine { n, units: (1..=n).filter(|u| gcd(*u, n) == 1).collect() }
    }

    fn canonical(&self, (c, d): (i64, i64)) -> (i64, i64) {
        self.units.iter().map(|u| ((u * c).rem_euclid(self.n), (u * d).rem_euclid(self.n))).min().unwrap()
    }

    fn orbit(&self, p: (i64, i64)) -> BTreeSet<(i64, i64)> {
        let mut out = BTreeSet::new();
        let (c, mut d) = p;
        while out.insert(self.canonical((c, d))) {
            d += c;
        }
        out
    }

    fn points(&self) -> BTreeSet<(i64, i64)> {
        let n = self.n;
        (0..n)
            .flat_map(|c| (0..n).map(move |d| (c, d)))
            .filter(|(c, d)| gcd(gcd(*c, *d), n) == 1)
            .map(|p| self.canonical(p))
            .collect()
    }

    fn orbit_of_cusp(&self, cusp: &Cusp) -> BTreeSet<(i64, i64)> {
        let (a, c) = (cusp.numerator().unwrap(), cusp.denominator().unwrap() as i64);
        let (_, d) = complete(a, c);
        self.orbit((c, d))
    }
}

#[test]
fn cusps_are_the_orbits_of_translation() {
    for n in 1..=60u64 {
        let line = ProjectiveLine::new(n);
        let mut seen: BTreeSet<BTreeSet<(i64, i64)>> = BTreeSet::new();
        let mut covered = 0;
        for cusp in cusp_set(n) {
            let orbit = line.orbit_of_cusp(&cusp);
            assert_eq!(orbit.len() as u64, fan_width(&cusp, n), "width of {cusp} at level {n}");
            covered += orbit.len();
            assert!(seen.insert(orbit), "{cusp} repeats a class at level {n}");
        }
        assert_eq!(covered, line.points().len(), "cusps of level {n} miss a class");
    }
}

#[test]
fn infinity_class_is_one_over_n() {
    for n in 1..=40u64 {
        let line = ProjectiveLine::new(n);
        let last = *cusp_set(n).last().unwrap();
        assert!(last.is_infinity_class(n));
        // infinity itself is the identity coset, bottom row (0, 1)
        assert_eq!(line.orbit_of_cusp(&last), line.orbit((0, 1)));
    }
}

fn pow_mod(mut b: i64, mut e: i64, m: i64) -> i64 {
    let mut r = 1 % m;
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Kronecker symbol from its definition: Euler's criterion at odd primes,
/// the mod-8 rule at 2, the sign rule at -1.
fn kronecker_by_definition(a: i64, n: i64) -> i32 {
    if n == 0 {
        return (a.abs() == 1) as i32;
    }
    let mut result = if n < 0 && a < 0 { -1 } else { 1 };
    let mut m = n.abs();
    let mut p = 2;
    while m > 1 {
        while m % p == 0 {
            m /= p;
            result *= if p == 2 {
                match a.rem_euclid(8) {
                    1 | 7 => 1,
                    3 | 5 => -1,
                    _ => 0,
                }
            } else {
                match pow_mod(a, (p - 1) / 2, p) {
                    0 => 0,
                    1 => 1,
                    _ => -1,
                }
            };
        }
        p += 1;
    }
    result
}

proptest! {
    #[test]
    fn euler_products_match_naive_multiplication(ep in any_product(9, 60, 3)) {
        let len = 60;
        let s = expand_no_prefactor::<Rational>(&ep, Exponent::int(len as i64));
        prop_assert_eq!(dense(&s, 0, len), brute_euler_product(ep.factors(), len));
    }

    #[test]
    fn kronecker_matches_definition(a in -500i64..500, n in -300i64..300) {
        prop_assume!(a != 0 || n != 0);
        prop_assert_eq!(kronecker(a, n).unwrap(), kronecker_by_definition(a, n));
    }

    #[test]
    fn kronecker_is_multiplicative(a in -200i64..200, m in 1i64..60, n in 1i64..60) {
        prop_assert_eq!(kronecker(a, m * n).unwrap(), kronecker(a, m).unwrap() * kronecker(a, n).unwrap());
        prop_assert_eq!(kronecker(a * m, n).unwrap(), kronecker(a, n).unwrap() * kronecker(m, n).unwrap());
    }

    #[test]
    fn kronecker_is_periodic_for_discriminants(n in 1i64..500, k in 0i64..5) {
        // -20 is a discriminant: (-20 / n) has period 20 in n
        prop_assert_eq!(kronecker(-20, n).unwrap(), kronecker(-20, n + 20 * k).unwrap());
    }
}

#[test]
fn level_forty_character() {
    let form = form_check(&gp(&[1, 4, 2, 4, 4, -3, 10, 2, 20, -1]), 40).unwrap();
    assert_eq!(form.cleared, BigInt::from(-2048000));
    for d in 1..=50i64 {
        if gcd(d, 10) == 1 {
            assert_eq!(kronecker(-2048000, d).unwrap(), kronecker(-20, d).unwrap(), "d = {d}");
            assert_eq!(form.character(d), kronecker(-20, d).unwrap());
        }
    }
}
