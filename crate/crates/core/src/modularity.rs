//! Modularity of eta-products on Gamma0(N): Newman's criterion for modular
//! functions and the weight/character of eta-quotient modular forms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::eta::EtaProduct;
use crate::Rational;

/// Outcome of the five Newman conditions. Every flag is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModularityVerdict {
    /// `conditions[i]` is condition `(i + 1)`:
    /// 1. `sum r_j = 0`
    /// 2. `sum t_j r_j = 0 (mod 24)`
    /// 3. `prod t_j^|r_j|` is a perfect square
    /// 4. every `t_j` divides `N`
    /// 5. `sum (N / t_j) r_j = 0 (mod 24)`
    pub conditions: [bool; 5],
}

impl ModularityVerdict {
    pub fn invariant(&self) -> bool {
        self.conditions.iter().all(|c| *c)
    }

    /// 1-based indices of the failing conditions.
    pub fn failed(&self) -> Vec<usize> {
        (1..=5).filter(|i| !self.conditions[i - 1]).collect()
    }
}

impl fmt::Display for ModularityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, ok) in self.conditions.iter().enumerate() {
            let status = if *ok { "holds" } else { "does not hold" };
            writeln!(f, "Condition ({}) {status}", i + 1)?;
        }
        if self.invariant() {
            write!(f, "function is invariant")
        } else {
            write!(f, "function is NOT invariant")
        }
    }
}

/// Exponent of each prime in `prod t_j^(r_j * sign)`, with `sign` applied per factor by `f`.
fn prime_exponents(ep: &EtaProduct, f: impl Fn(i64) -> i64) -> BTreeMap<u64, i64> {
    let mut out = BTreeMap::new();
    for (t, r) in ep.factors() {
        for (p, e) in factorize(*t) {
            *out.entry(p).or_insert(0) += e as i64 * f(*r);
        }
    }
    out
}

/// Dual sum `sum (N / t_j) r_j`, or `None` if some `t_j` does not divide `N`.
fn dual_sum(ep: &EtaProduct, n: u64) -> Option<i64> {
    ep.factors()
        .iter()
        .map(|(t, r)| (n % t == 0).then(|| (n / t) as i64 * r))
        .sum()
}

/// Newman's test: is `ep` a modular function on Gamma0(n)?
pub fn gamma_check(ep: &EtaProduct, n: u64) -> ModularityVerdict {
    assert!(n >= 1, "level must be positive");
    let square = prime_exponents(ep, i64::abs).values().all(|e| e % 2 == 0);
    let divides = ep.factors().iter().all(|(t, r)| *r != 0 && n % t == 0);
    // Condition (5) is evaluated with rational N/t_j when (4) fails.
    let dual: Rational = ep
        .factors()
        .iter()
        .map(|(t, r)| Rational::new(BigInt::from(n) * r, BigInt::from(*t)))
        .sum();
    let dual_ok = dual.is_integer() && (dual.to_integer() % 24u32) == BigInt::from(0);
    ModularityVerdict {
        conditions: [
            ep.exponent_sum() == 0,
            ep.weighted_sum().rem_euclid(24) == 0,
            square,
            divides,
            dual_ok,
        ],
    }
}

/// Weight and quadratic character of an eta-quotient modular form on Gamma0(N).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormVerdict {
    pub level: u64,
    /// `sum r_j`; the weight is half of this.
    pub twice_weight: i64,
    /// The cleared integer `(-1)^k prod t_j^|r_j|` (no sign for half-integral weight).
    pub cleared: BigInt,
    /// Squarefree kernel of `cleared`, sign preserved.
    pub squarefree_kernel: i64,
    /// Fundamental discriminant of the character's square class; `chi(d) = (disc / d)`.
    pub character_disc: i64,
    pub half_integral: bool,
}

impl FormVerdict {
    pub fn weight(&self) -> Rational {
        Rational::new(self.twice_weight.into(), 2.into())
    }

    /// `chi(d)` for `d` coprime to the level.
    pub fn character(&self, d: i64) -> i32 {
        kronecker(self.character_disc, d).expect("discriminant is nonzero")
    }

    pub fn is_trivial_character(&self) -> bool {
        self.character_disc == 1
    }
}

/// Decides whether `ep` is a modular form on Gamma0(n) with quadratic
/// character, returning its weight `k = sum r_j / 2` and character
/// `chi(d) = ((-1)^k s / d)`, `s = prod t_j^(r_j)`.
///
/// Fails with [`Error::NotAForm`] when a multiplier does not divide `n`, when
/// either congruence mod 24 fails, or when the weight is negative.
pub fn form_check(ep: &EtaProduct, n: u64) -> Result<FormVerdict> {
    assert!(n >= 1, "level must be positive");
    let mut defects = vec![];
    let bad: Vec<u64> = ep.factors().iter().map(|(t, _)| *t).filter(|t| n % t != 0).collect();
    if !bad.is_empty() {
        defects.push(format!("multipliers {bad:?} do not divide {n}"));
    }
    if ep.weighted_sum().rem_euclid(24) != 0 {
        defects.push(format!("sum t*r = {} is not 0 mod 24", ep.weighted_sum()));
    }
    if let Some(d) = dual_sum(ep, n) {
        if d.rem_euclid(24) != 0 {
            defects.push(format!("sum (N/t)*r = {d} is not 0 mod 24"));
        }
    }
    let twice_weight = ep.exponent_sum();
    if twice_weight < 0 {
        defects.push(format!("weight {}/2 is negative", twice_weight));
    }
    if !defects.is_empty() {
        return Err(Error::NotAForm(defects.join("; ")));
    }
    let half_integral = twice_weight % 2 != 0;
    let negative = !half_integral && (twice_weight / 2) % 2 != 0;

    let exps = prime_exponents(ep, i64::abs);
    let mut cleared = BigInt::one();
    let mut kernel: i64 = 1;
    for (p, e) in &exps {
        cleared *= BigInt::from(*p).pow(*e as u32);
        if e % 2 != 0 {
            kernel *= *p as i64;
        }
    }
    if negative {
        cleared = -cleared;
        kernel = -kernel;
    }
    let character_disc = if kernel.rem_euclid(4) == 1 { kernel } else { 4 * kernel };
    Ok(FormVerdict {
        level: n,
        twice_weight,
        cleared,
        squarefree_kernel: kernel,
        character_disc,
        half_integral,
    })
}

/// The Kronecker symbol `(a / n)`.
pub fn kronecker(a: i64, n: i64) -> Result<i32> {
    if a == 0 && n == 0 {
        return Err(Error::KroneckerUndefined);
    }
    let mut a = a as i128;
    let mut n = n as i128;
    if n == 0 {
        return Ok(if a == 1 || a == -1 { 1 } else { 0 });
    }
    let mut result = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return Ok(0);
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // Jacobi symbol (a / n), n odd and positive.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    Ok(if n == 1 { result } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(list: &[i64]) -> EtaProduct {
        EtaProduct::from_gp(list).unwrap()
    }

    #[test]
    fn newman_fixtures() {
        let g1 = gamma_check(&gp(&[1, 2, 2, -1, 10, 1, 5, -2]), 10);
        assert_eq!(g1.conditions, [true, true, false, true, false]);
        assert_eq!(g1.failed(), vec![3, 5]);
        assert!(!g1.invariant());
        assert!(g1.to_string().contains("Condition (3) does not hold"));
        assert!(gamma_check(&gp(&[1, 4, 2, -2, 10, 2, 5, -4]), 10).invariant());
        assert!(gamma_check(&EtaProduct::one(), 7).invariant());
        assert!(gamma_check(&gp(&[5, 6, 1, -6]), 5).invariant());
    }

    #[test]
    fn non_divisor_fails_condition_four() {
        let v = gamma_check(&gp(&[3, 1, 1, -1]), 4);
        assert!(!v.conditions[3]);
        assert!(!v.invariant());
    }

    #[test]
    fn form_check_level_40_fixture() {
        let v = form_check(&gp(&[1, 4, 2, 4, 4, -3, 10, 2, 20, -1]), 40).unwrap();
        assert_eq!(v.weight(), Rational::from_integer(3.into()));
        assert_eq!(v.cleared, BigInt::from(-2048000));
        assert_eq!(v.squarefree_kernel, -5);
        assert_eq!(v.character_disc, -20);
        assert!(!v.half_integral);
    }

    #[test]
    fn discriminant_is_level_one_weight_twelve() {
        let v = form_check(&gp(&[1, 24]), 1).unwrap();
        assert_eq!(v.twice_weight, 24);
        assert!(v.is_trivial_character());
    }

    #[test]
    fn form_check_rejections() {
        assert!(matches!(form_check(&gp(&[3, 24]), 2), Err(Error::NotAForm(_))));
        assert!(matches!(form_check(&gp(&[1, 1]), 1), Err(Error::NotAForm(_))));
        assert!(matches!(form_check(&gp(&[1, -24]), 1), Err(Error::NotAForm(_))));
    }

    #[test]
    fn half_integral_weight_is_flagged() {
        // eta(8 tau)^3 has sum t r = 24 and weight 3/2 on Gamma0(64).
        let v = form_check(&gp(&[8, 3]), 64).unwrap();
        assert!(v.half_integral);
        assert_eq!(v.weight(), Rational::new(3.into(), 2.into()));
    }

    #[test]
    fn kronecker_values() {
        assert_eq!(kronecker(-20, 3), Ok(1));
        assert_eq!(kronecker(5, 1), Ok(1));
        assert_eq!(kronecker(0, 0), Err(Error::KroneckerUndefined));
        assert_eq!(kronecker(3, 2), Ok(-1));
        assert_eq!(kronecker(7, 2), Ok(1));
        assert_eq!(kronecker(4, 2), Ok(0));
        assert_eq!(kronecker(2, 15), Ok(1));
        assert_eq!(kronecker(-1, -1), Ok(-1));
        assert_eq!(kronecker(5, 0), Ok(0));
        assert_eq!(kronecker(-1, 0), Ok(1));
    }
}
