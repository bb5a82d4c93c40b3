//! Valence-formula prover for linear identities among eta-products.
//!
//! An identity is normalized to `g = 1 + sum alpha_j f_j` with each `f_j` an
//! eta-product. When every `f_j` is a modular function on Gamma0(N), the sum
//! `B` over the cusps other than infinity of the columnwise minimum of the
//! orders (including 0 for the constant) bounds how far the q-expansion of `g`
//! must vanish: `g` is identically zero iff its order at infinity exceeds `-B`.

use std::fmt;

use num_traits::Zero;

use crate::cusps::{cusp_ords_gamma0, cusp_set, cusps_excluding_infinity, Cusp, OrdVector};
use crate::error::{Error, Result};
use crate::eta::{combo_expand, EtaCombo, EtaProduct};
use crate::modularity::gamma_check;
use crate::scalar::Scalar;
use crate::series::{Exponent, Series};
use crate::Rational;

/// Default number of coefficients checked past the required depth.
pub const DEFAULT_MARGIN: u32 = 10;

/// Order vectors of the terms of an identity, one row per term, all over the
/// same cusp sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdMatrix {
    pub rows: Vec<OrdVector>,
}

/// Columnwise minima of the rows.
pub fn column_minima(m: &OrdMatrix) -> Result<Vec<Rational>> {
    let first = m.rows.first().ok_or_else(|| Error::MisalignedRows("matrix has no rows".into()))?;
    let cusps: Vec<Cusp> = first.cusps().copied().collect();
    for (i, row) in m.rows.iter().enumerate() {
        if !row.cusps().eq(cusps.iter()) {
            return Err(Error::MisalignedRows(format!("row {} has cusps {row} but row 1 has {first}", i + 1)));
        }
    }
    Ok((0..cusps.len())
        .map(|k| m.rows.iter().map(|r| r.entries[k].1.clone()).min().unwrap())
        .collect())
}

/// Sum over cusp columns of the columnwise minimum.
pub fn min_total_ords(m: &OrdMatrix) -> Result<Rational> {
    Ok(column_minima(m)?.into_iter().sum())
}

/// An identity rewritten as `constant + sum alpha_j f_j` by dividing through
/// by its first term.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalized<C = Rational> {
    pub combo: EtaCombo<C>,
    /// Terms other than the first that became constants after division.
    pub folded_constants: usize,
}

/// Divides every term of `sum` by the first term with a nonzero coefficient.
pub fn normalize_identity<C: Scalar>(sum: &[(C, EtaProduct)]) -> Result<Normalized<C>> {
    let mut live = sum.iter().filter(|(c, _)| !c.is_zero());
    let (a0, e0) = live.next().ok_or(Error::EmptyIdentity)?;
    let rest: Vec<(C, EtaProduct)> = live.map(|(a, e)| (a.clone() / a0.clone(), e / e0)).collect();
    let folded_constants = rest.iter().filter(|(_, e)| e.is_one()).count();
    Ok(Normalized { combo: EtaCombo::new(C::one(), rest), folded_constants })
}

/// Printable table of orders at the cusps other than infinity, with the
/// derived lower bound for the identity in the last column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdTable {
    pub cusps: Vec<Cusp>,
    /// `(header, orders)` per column, orders aligned with `cusps`.
    pub columns: Vec<(String, Vec<Rational>)>,
    pub bound_header: String,
    pub bound: Vec<Rational>,
}

impl OrdTable {
    pub fn bound_total(&self) -> Rational {
        self.bound.iter().sum()
    }
}

impl fmt::Display for OrdTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut header = vec!["zeta".to_string()];
        header.extend(self.columns.iter().map(|(h, _)| h.clone()));
        header.push(self.bound_header.clone());
        let rows: Vec<Vec<String>> = self
            .cusps
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut row = vec![c.to_string()];
                row.extend(self.columns.iter().map(|(_, v)| v[i].to_string()));
                row.push(self.bound[i].to_string());
                row
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|k| rows.iter().map(|r| r[k].len()).chain([header[k].len()]).max().unwrap())
            .collect();
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join(" | ")
                .trim_end()
                .to_string()
        };
        writeln!(f, "{}", line(&header))?;
        writeln!(f, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-"))?;
        for row in &rows {
            writeln!(f, "{}", line(row))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<C = Rational> {
    /// Every coefficient through the required depth vanishes: a complete proof.
    Proved,
    /// A coefficient at or below the required depth is nonzero.
    Refuted { exponent: i64, coefficient: C },
    /// The method does not apply (modularity failure, precondition).
    NotApplicable(String),
    /// The required coefficients vanish but one in the safety margin does not.
    Inconsistent { exponent: i64, coefficient: C },
}

/// Certificate of one run of a prover.
#[derive(Clone, Debug, PartialEq)]
pub struct ProofReport<C = Rational> {
    pub level: u64,
    pub verdict: Verdict<C>,
    /// The constant `B`.
    pub bound: Option<Rational>,
    /// Coefficients of `q^e` for `e <= required_depth` must vanish.
    pub required_depth: Option<i64>,
    /// Largest exponent whose coefficient was examined.
    pub checked_depth: Option<i64>,
    pub table: Option<OrdTable>,
    pub constants_warning: bool,
}

impl<C> ProofReport<C> {
    pub fn is_proved(&self) -> bool {
        matches!(self.verdict, Verdict::Proved)
    }

    pub(crate) fn not_applicable(level: u64, reason: String) -> Self {
        ProofReport {
            level,
            verdict: Verdict::NotApplicable(reason),
            bound: None,
            required_depth: None,
            checked_depth: None,
            table: None,
            constants_warning: false,
        }
    }
}

/// Steps up to the computation of `B`: what must be verified, before any expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundAnalysis {
    pub level: u64,
    pub bound: Rational,
    pub required_depth: i64,
    pub table: OrdTable,
}

/// `floor(-B)`.
pub fn required_depth_for(bound: &Rational) -> i64 {
    i64::try_from((-bound).floor().to_integer()).expect("bound out of range")
}

/// Checks each term is a modular function on Gamma0(n) whose total order over
/// all cusps is zero. Returns the failure description, if any.
pub(crate) fn check_terms(terms: &[EtaProduct], n: u64, what: &str) -> Option<String> {
    let mut problems = vec![];
    for (i, ep) in terms.iter().enumerate() {
        let v = gamma_check(ep, n);
        if !v.invariant() {
            let failed: Vec<String> = v.failed().iter().map(usize::to_string).collect();
            problems.push(format!(
                "{what} {} {ep} is not a modular function on Gamma0({n}): condition(s) {} fail",
                i + 1,
                failed.join(", ")
            ));
            continue;
        }
        let total = cusp_ords_gamma0(ep, &cusp_set(n), n).total();
        if !total.is_zero() {
            problems.push(format!("{what} {} {ep} has total order {total}, not 0", i + 1));
        }
    }
    (!problems.is_empty()).then(|| problems.join("; "))
}

/// Scans the expansion of a function that vanishes identically iff its order at
/// infinity exceeds `required`; coefficients in `(required, checked]` are a safety net.
pub(crate) fn verify_vanishing<C: Scalar>(series: &Series<C>, required: i64, checked: i64) -> Verdict<C> {
    debug_assert!(series.trunc().is_none_or(|t| t > Exponent::int(checked)));
    match series.terms().first() {
        Some((e, c)) if e.floor_integer() <= required => {
            Verdict::Refuted { exponent: e.floor_integer(), coefficient: c.clone() }
        }
        Some((e, c)) if e.floor_integer() <= checked => {
            Verdict::Inconsistent { exponent: e.floor_integer(), coefficient: c.clone() }
        }
        _ => Verdict::Proved,
    }
}

pub(crate) fn term_columns(rows: &[OrdVector]) -> Vec<(String, Vec<Rational>)> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| (format!("ORD(f{},zeta)", i + 1), r.values().cloned().collect()))
        .collect()
}

/// Checks modularity and computes `B` and the ORD table for a normalized
/// identity `constant + sum alpha_j f_j` on Gamma0(n). `Err` carries the reason
/// the method does not apply.
pub fn analyze_gamma0_identity<C: Scalar>(combo: &EtaCombo<C>, n: u64) -> std::result::Result<BoundAnalysis, String> {
    assert!(n >= 1, "level must be positive");
    let products: Vec<EtaProduct> = combo.terms().iter().map(|(_, e)| e.clone()).collect();
    if let Some(reason) = check_terms(&products, n, "term") {
        return Err(reason);
    }
    let cusps = cusps_excluding_infinity(n);
    let term_rows: Vec<OrdVector> = products.iter().map(|ep| cusp_ords_gamma0(ep, &cusps, n)).collect();
    let mut rows = vec![OrdVector::zeros(&cusps)];
    rows.extend(term_rows.iter().cloned());
    let matrix = OrdMatrix { rows };
    let bound_col = column_minima(&matrix).expect("rows share the cusp sequence");
    let bound: Rational = bound_col.iter().sum();
    let table = OrdTable {
        cusps,
        columns: term_columns(&term_rows),
        bound_header: "Lower bound for ORD(g,zeta)".into(),
        bound: bound_col,
    };
    Ok(BoundAnalysis { level: n, required_depth: required_depth_for(&bound), bound, table })
}

/// Puts a combo in the normalized form with constant 1 (or leaves the zero
/// combo alone); returns the number of folded constant terms.
fn normalized<C: Scalar>(combo: &EtaCombo<C>) -> (EtaCombo<C>, usize) {
    if combo.constant().is_one() || (combo.constant().is_zero() && combo.terms().is_empty()) {
        (combo.clone(), 0)
    } else if !combo.constant().is_zero() {
        (combo.scale(&(C::one() / combo.constant().clone())), 0)
    } else {
        let n = normalize_identity(&combo.to_sum()).expect("combo has a term");
        (n.combo, n.folded_constants)
    }
}

/// Proves or refutes `combo = 0` as an identity of modular functions on Gamma0(n).
///
/// The combo is normalized first when its constant is not 1. The expansion is
/// checked through `q^(floor(-B) + margin)`; a nonzero coefficient at or below
/// `floor(-B)` refutes the identity.
pub fn prove_gamma0_identity<C: Scalar>(combo: &EtaCombo<C>, n: u64, margin: u32) -> ProofReport<C> {
    let (combo, folded) = normalized(combo);
    let analysis = match analyze_gamma0_identity(&combo, n) {
        Ok(a) => a,
        Err(reason) => return ProofReport::not_applicable(n, reason),
    };
    let required = analysis.required_depth;
    let checked = required + margin as i64;
    let series = combo_expand(&combo, Exponent::int(checked + 1));
    ProofReport {
        level: n,
        verdict: verify_vanishing(&series, required, checked),
        bound: Some(analysis.bound),
        required_depth: Some(required),
        checked_depth: Some(checked),
        table: Some(analysis.table),
        constants_warning: folded > 0,
    }
}

/// [`prove_gamma0_identity`] on a raw sum of terms, normalized by its first term.
pub fn prove_gamma0_sum<C: Scalar>(sum: &[(C, EtaProduct)], n: u64, margin: u32) -> Result<ProofReport<C>> {
    let norm = normalize_identity(sum)?;
    let mut report = prove_gamma0_identity(&norm.combo, n, margin);
    report.constants_warning |= norm.folded_constants > 0;
    Ok(report)
}
