//! The Atkin operator `U_p` and a prover for identities `U_p(g) = sum alpha_j f_j`.
//!
//! If `g` is a modular function on Gamma0(pN) with `p | N`, then `U_p g` is a
//! modular function on Gamma0(N). Its orders at cusps are not computed
//! directly; the Gordon-Hughes lower bounds stand in for them when forming `B`.

use crate::arith::{is_prime, valuation};
use crate::cusps::{cusp_ord_gamma0, cusp_ords_gamma0, cusps_excluding_infinity, Cusp, OrdVector};
use crate::error::{Error, Result};
use crate::eta::{combo_expand, expand, EtaCombo, EtaProduct};
use crate::modularity::gamma_check;
use crate::prover::{
    check_terms, column_minima, required_depth_for, term_columns, verify_vanishing, BoundAnalysis, OrdMatrix,
    OrdTable, ProofReport,
};
use crate::scalar::Scalar;
use crate::series::{Exponent, Series};
use crate::Rational;

/// `sum a(p n) q^n` for `a = sum a(n) q^n`.
pub fn up_series<C: Scalar>(a: &Series<C>, p: u64) -> Result<Series<C>> {
    a.sift(p, 0)
}

/// Lower bounds for the orders of `U_p g` at the cusps of Gamma0(N) other than infinity.
pub type UpBoundVector = OrdVector;

fn check_up_preconditions(n: u64, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::PrecondFailed(format!("{p} is not prime")));
    }
    if n % p != 0 {
        return Err(Error::PrecondFailed(format!("{p} does not divide the level {n}")));
    }
    Ok(())
}

fn check_modular(ep: &EtaProduct, level: u64) -> Result<()> {
    let v = gamma_check(ep, level);
    if v.invariant() {
        Ok(())
    } else {
        let failed: Vec<String> = v.failed().iter().map(usize::to_string).collect();
        Err(Error::PrecondFailed(format!(
            "{ep} is not a modular function on Gamma0({level}): condition(s) {} fail",
            failed.join(", ")
        )))
    }
}

fn bound_unchecked(ep: &EtaProduct, r: &Cusp, n: u64, p: u64) -> Result<Rational> {
    let (beta, delta) = match r {
        Cusp::Infinity => (1, n),
        Cusp::Finite { num, den } => (*num, *den),
    };
    if n % delta != 0 {
        return Err(Error::PrecondFailed(format!("denominator of {r} does not divide {n}")));
    }
    let level = p * n;
    let ord = |b: i64| cusp_ord_gamma0(ep, level, &Cusp::new(b, (p * delta) as i64));
    let nu = valuation(delta, p);
    let nu_n = valuation(n, p);
    Ok(if 2 * nu >= nu_n {
        ord(beta) / Rational::from_integer(p.into())
    } else if nu > 0 {
        ord(beta)
    } else {
        (0..p as i64).map(|k| ord(beta + k * delta as i64)).min().expect("p >= 2")
    })
}

/// Gordon-Hughes lower bound for `ORD(U_p ep, r, Gamma0(n))`, where `ep` is a
/// modular function on Gamma0(pn). With `r = beta/delta`:
///
/// - `ORD(ep, r/p) / p` if `nu_p(delta) >= nu_p(n)/2`,
/// - `ORD(ep, r/p)` if `0 < nu_p(delta) < nu_p(n)/2`,
/// - `min_k ORD(ep, (r+k)/p)` over `0 <= k < p` if `p` does not divide `delta`,
///
/// with orders taken on Gamma0(pn) after reducing each cusp to lowest terms.
pub fn up_lower_bound(ep: &EtaProduct, r: &Cusp, n: u64, p: u64) -> Result<Rational> {
    check_up_preconditions(n, p)?;
    check_modular(ep, p * n)?;
    bound_unchecked(ep, r, n, p)
}

/// [`up_lower_bound`] at every cusp of Gamma0(n) except infinity.
pub fn up_lower_bounds(ep: &EtaProduct, n: u64, p: u64) -> Result<UpBoundVector> {
    check_up_preconditions(n, p)?;
    check_modular(ep, p * n)?;
    let entries = cusps_excluding_infinity(n)
        .into_iter()
        .map(|c| bound_unchecked(ep, &c, n, p).map(|b| (c, b)))
        .collect::<Result<_>>()?;
    Ok(OrdVector { entries })
}

/// Checks the hypotheses and computes `B` and the ORD table for `U_p(g) = rhs`
/// on Gamma0(n), before any expansion. `Err` carries the reason the method does not apply.
///
/// `B` sums, over the cusps other than infinity, the minimum of the orders of
/// the `rhs` terms and the lower bound for `U_p g` (and 0 when `rhs` has a
/// nonzero constant).
pub fn analyze_up_identity<C: Scalar>(
    g: &EtaProduct,
    p: u64,
    rhs: &EtaCombo<C>,
    n: u64,
) -> std::result::Result<BoundAnalysis, String> {
    assert!(n >= 1, "level must be positive");
    let bounds = up_lower_bounds(g, n, p).map_err(|e| e.to_string())?;
    let products: Vec<EtaProduct> = rhs.terms().iter().map(|(_, e)| e.clone()).collect();
    if let Some(reason) = check_terms(&products, n, "right-hand term") {
        return Err(reason);
    }
    let cusps = cusps_excluding_infinity(n);
    let term_rows: Vec<OrdVector> = products.iter().map(|ep| cusp_ords_gamma0(ep, &cusps, n)).collect();
    let mut rows = term_rows.clone();
    rows.push(bounds.clone());
    if !rhs.constant().is_zero() {
        rows.push(OrdVector::zeros(&cusps));
    }
    let bound_col = column_minima(&OrdMatrix { rows }).expect("rows share the cusp sequence");
    let bound: Rational = bound_col.iter().sum();
    let mut columns = term_columns(&term_rows);
    columns.push((format!("L(U{p}(g),zeta)"), bounds.values().cloned().collect()));
    let table = OrdTable { cusps, columns, bound_header: "Lower bound for ORD(h,zeta)".into(), bound: bound_col };
    Ok(BoundAnalysis { level: n, required_depth: required_depth_for(&bound), bound, table })
}

/// Proves or refutes `U_p(g) = rhs` on Gamma0(n), where `g` is an eta-product
/// modular on Gamma0(pn) and `rhs` a combination of eta-products modular on Gamma0(n).
///
/// The difference `h = U_p(g) - rhs` is expanded through `q^(floor(-B) + margin)`,
/// which needs `g` through `q^(p (floor(-B) + margin + 1))`.
pub fn prove_up_identity<C: Scalar>(
    g: &EtaProduct,
    p: u64,
    rhs: &EtaCombo<C>,
    n: u64,
    margin: u32,
) -> ProofReport<C> {
    let analysis = match analyze_up_identity(g, p, rhs, n) {
        Ok(a) => a,
        Err(reason) => return ProofReport::not_applicable(n, reason),
    };
    let required = analysis.required_depth;
    let checked = required + margin as i64;
    let depth = Exponent::int(p as i64 * (checked + 1));
    let lhs = up_series(&expand::<C>(g, depth), p).expect("modular eta-products have integer exponents");
    let h = &lhs - &combo_expand(rhs, Exponent::int(checked + 1));
    ProofReport {
        level: n,
        verdict: verify_vanishing(&h, required, checked),
        bound: Some(analysis.bound),
        required_depth: Some(required),
        checked_depth: Some(checked),
        table: Some(analysis.table),
        constants_warning: false,
    }
}
