//! Subcommand implementations. Each returns its output and exit code instead of
//! printing, so the binary stays a thin wrapper.

use std::fmt::Write as _;

use eta_core::{
    analyze_gamma0_identity, analyze_up_identity, combo_expand, cusp_set, eta_factorize, expand_no_prefactor,
    form_check, gamma_check, normalize_identity, prove_gamma0_identity, prove_up_identity, up_series,
    BoundAnalysis, EtaProduct, Exponent, OrdTable, ProofReport, QSeries, Rational, RationalCombo, Verdict,
};

use crate::lower::{parse_combo, parse_identity, parse_product, Identity, InputError};

pub const EXIT_PROVED: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_NOT_APPLICABLE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    /// Text written to the `--json` path, when requested.
    pub certificate: String,
}

impl Outcome {
    fn input_error(e: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_INPUT, stderr: format!("error: {e}\n"), ..Default::default() }
    }

    fn output(stdout: String) -> Self {
        Outcome { code: 0, certificate: stdout.clone(), stdout, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ProveOptions {
    pub level: u64,
    pub margin: u32,
    pub yes: bool,
    pub quiet: bool,
}

enum Kind {
    Gamma0,
    Up(u64),
}

fn verdict_line(report: &ProofReport) -> String {
    match &report.verdict {
        Verdict::Proved => format!("PROVED (coefficients through q^{} vanish)", report.checked_depth.unwrap_or(0)),
        Verdict::Refuted { exponent, coefficient } => {
            format!("REFUTED (coefficient of q^{exponent} is {coefficient})")
        }
        Verdict::Inconsistent { exponent, coefficient } => format!(
            "INCONSISTENT (coefficients through q^{} vanish but the coefficient of q^{exponent} is {coefficient})",
            report.required_depth.unwrap_or(0)
        ),
        Verdict::NotApplicable(reason) => format!("NOT-APPLICABLE ({reason})"),
    }
}

fn verdict_key(report: &ProofReport) -> &'static str {
    match report.verdict {
        Verdict::Proved => "proved",
        Verdict::Refuted { .. } => "refuted",
        Verdict::Inconsistent { .. } => "inconsistent",
        Verdict::NotApplicable(_) => "not-applicable",
    }
}

fn exit_code(report: &ProofReport) -> i32 {
    match report.verdict {
        Verdict::Proved => EXIT_PROVED,
        Verdict::Refuted { .. } | Verdict::Inconsistent { .. } => EXIT_REFUTED,
        Verdict::NotApplicable(_) => EXIT_NOT_APPLICABLE,
    }
}

fn indent(table: &OrdTable) -> String {
    table.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

struct Summary<'a> {
    kind: Kind,
    input: String,
    level: u64,
    bound: Option<&'a Rational>,
    required: Option<i64>,
    checked: Option<i64>,
    table: Option<&'a OrdTable>,
    verdict_key: &'a str,
    verdict_line: String,
    extra: Vec<(String, String)>,
}

impl Summary<'_> {
    fn human(&self, quiet: bool) -> String {
        let mut out = String::new();
        if !quiet {
            writeln!(out, "identity: {}", self.input).unwrap();
            writeln!(out, "level: {}", self.level).unwrap();
            if let (Some(b), Some(r)) = (self.bound, self.required) {
                writeln!(out, "B = {b}").unwrap();
                writeln!(out, "verify through q^{r}").unwrap();
            }
            if let Some(t) = self.table {
                writeln!(out).unwrap();
                write!(out, "{t}").unwrap();
                writeln!(out).unwrap();
            }
        }
        writeln!(out, "verdict: {}", self.verdict_line).unwrap();
        out
    }

    fn certificate(&self) -> String {
        let mut out = String::new();
        writeln!(out, "tool: etaprove {}", env!("CARGO_PKG_VERSION")).unwrap();
        match self.kind {
            Kind::Gamma0 => writeln!(out, "kind: gamma0").unwrap(),
            Kind::Up(p) => writeln!(out, "kind: up\nprime: {p}").unwrap(),
        }
        writeln!(out, "input: {}", self.input).unwrap();
        writeln!(out, "level: {}", self.level).unwrap();
        writeln!(out, "verdict: {}", self.verdict_key).unwrap();
        let opt = |v: Option<String>| v.unwrap_or_else(|| "none".into());
        writeln!(out, "B: {}", opt(self.bound.map(|b| b.to_string()))).unwrap();
        writeln!(out, "required_depth: {}", opt(self.required.map(|r| r.to_string()))).unwrap();
        writeln!(out, "checked_depth: {}", opt(self.checked.map(|r| r.to_string()))).unwrap();
        for (k, v) in &self.extra {
            writeln!(out, "{k}: {v}").unwrap();
        }
        match self.table {
            Some(t) => write!(out, "ord_table:\n{}", indent(t)).unwrap(),
            None => writeln!(out, "ord_table: none").unwrap(),
        }
        out
    }
}

fn report_outcome(kind: Kind, input: String, report: &ProofReport, quiet: bool) -> Outcome {
    let mut extra = vec![("constants_warning".to_string(), report.constants_warning.to_string())];
    match &report.verdict {
        Verdict::Refuted { exponent, coefficient } | Verdict::Inconsistent { exponent, coefficient } => {
            extra.push(("first_nonzero_exponent".into(), exponent.to_string()));
            extra.push(("first_nonzero_coefficient".into(), coefficient.to_string()));
        }
        Verdict::NotApplicable(reason) => extra.push(("reason".into(), reason.clone())),
        Verdict::Proved => {}
    }
    let summary = Summary {
        kind,
        input,
        level: report.level,
        bound: report.bound.as_ref(),
        required: report.required_depth,
        checked: report.checked_depth,
        table: report.table.as_ref(),
        verdict_key: verdict_key(report),
        verdict_line: verdict_line(report),
        extra,
    };
    let mut stderr = String::new();
    if report.constants_warning {
        stderr.push_str("WARNING: some terms were constants\n");
    }
    match &report.verdict {
        Verdict::NotApplicable(reason) => writeln!(stderr, "not applicable: {reason}").unwrap(),
        Verdict::Inconsistent { .. } => {
            stderr.push_str("internal inconsistency: the proof is complete but a margin coefficient is nonzero\n")
        }
        _ => {}
    }
    Outcome { code: exit_code(report), stdout: summary.human(quiet), stderr, certificate: summary.certificate() }
}

fn dry_run_outcome(kind: Kind, input: String, analysis: &BoundAnalysis, quiet: bool) -> Outcome {
    let summary = Summary {
        kind,
        input,
        level: analysis.level,
        bound: Some(&analysis.bound),
        required: Some(analysis.required_depth),
        checked: None,
        table: Some(&analysis.table),
        verdict_key: "not-verified",
        verdict_line: "NOT-VERIFIED (bound only)".into(),
        extra: vec![],
    };
    Outcome { code: 0, stdout: summary.human(quiet), stderr: String::new(), certificate: summary.certificate() }
}

fn not_applicable(kind: Kind, input: String, level: u64, reason: String, quiet: bool) -> Outcome {
    let report = ProofReport {
        level,
        verdict: Verdict::NotApplicable(reason),
        bound: None,
        required_depth: None,
        checked_depth: None,
        table: None,
        constants_warning: false,
    };
    report_outcome(kind, input, &report, quiet)
}

pub fn prove(text: &str, opts: ProveOptions) -> Outcome {
    let sum = match parse_identity(text) {
        Ok(Identity::Linear(sum)) => sum,
        Ok(Identity::Up { .. }) => return Outcome::input_error("this is a U(p) identity; use prove-up"),
        Err(e) => return Outcome::input_error(e),
    };
    let normalized = match normalize_identity(&sum) {
        Ok(n) => n,
        Err(e) => return Outcome::input_error(e),
    };
    let input = normalized.combo.to_string();
    if !opts.yes {
        return match analyze_gamma0_identity(&normalized.combo, opts.level) {
            Ok(a) => dry_run_outcome(Kind::Gamma0, input, &a, opts.quiet),
            Err(reason) => not_applicable(Kind::Gamma0, input, opts.level, reason, opts.quiet),
        };
    }
    let mut report = prove_gamma0_identity(&normalized.combo, opts.level, opts.margin);
    report.constants_warning |= normalized.folded_constants > 0;
    report_outcome(Kind::Gamma0, input, &report, opts.quiet)
}

pub fn prove_up(text: &str, opts: ProveOptions) -> Outcome {
    let (p, g, rhs) = match parse_identity(text) {
        Ok(Identity::Up { p, g, rhs }) => (p, g, rhs),
        Ok(Identity::Linear(_)) => return Outcome::input_error("expected an identity of the form `U(p) g = rhs`"),
        Err(e) => return Outcome::input_error(e),
    };
    let input = Identity::Up { p, g: g.clone(), rhs: rhs.clone() }.to_string();
    if !opts.yes {
        return match analyze_up_identity(&g, p, &rhs, opts.level) {
            Ok(a) => dry_run_outcome(Kind::Up(p), input, &a, opts.quiet),
            Err(reason) => not_applicable(Kind::Up(p), input, opts.level, reason, opts.quiet),
        };
    }
    let report = prove_up_identity(&g, p, &rhs, opts.level, opts.margin);
    report_outcome(Kind::Up(p), input, &report, opts.quiet)
}

/// The ORD table and `B` for an identity, without any expansion.
pub fn orders(text: &str, level: u64) -> Outcome {
    let (analysis, kind, input) = match parse_identity(text) {
        Ok(Identity::Linear(sum)) => match normalize_identity(&sum) {
            Ok(n) => (analyze_gamma0_identity(&n.combo, level), Kind::Gamma0, n.combo.to_string()),
            Err(e) => return Outcome::input_error(e),
        },
        Ok(id @ Identity::Up { .. }) => {
            let Identity::Up { p, g, rhs } = &id else { unreachable!() };
            (analyze_up_identity(g, *p, rhs, level), Kind::Up(*p), id.to_string())
        }
        Err(e) => return Outcome::input_error(e),
    };
    match analysis {
        Ok(a) => {
            let mut out = a.table.to_string();
            writeln!(out, "B = {}", a.bound).unwrap();
            Outcome::output(out)
        }
        Err(reason) => not_applicable(kind, input, level, reason, true),
    }
}

fn expand_combo(combo: &RationalCombo, depth: Exponent, no_prefactor: bool) -> QSeries {
    if !no_prefactor {
        return combo_expand(combo, depth);
    }
    combo.terms().iter().fold(QSeries::constant(combo.constant().clone()), |acc, (a, ep)| {
        acc + expand_no_prefactor::<Rational>(ep, depth).scale(a)
    })
}

pub fn expand(text: &str, depth: i64, no_prefactor: bool) -> Outcome {
    match parse_combo(text) {
        Ok(combo) => Outcome::output(format!("{}\n", expand_combo(&combo, Exponent::int(depth), no_prefactor))),
        Err(e) => Outcome::input_error(e),
    }
}

/// Recognizes the expansion of `text` (optionally after `U_p`) as an eta-product.
pub fn factor(text: &str, depth: i64, up: Option<u64>) -> Outcome {
    let combo = match parse_combo(text) {
        Ok(c) => c,
        Err(e) => return Outcome::input_error(e),
    };
    let series = match up {
        None => combo_expand(&combo, Exponent::int(depth)),
        Some(p) if p >= 2 => {
            let s = combo_expand(&combo, Exponent::int(depth * p as i64));
            match up_series(&s, p) {
                Ok(s) => s,
                Err(e) => return Outcome::input_error(e),
            }
        }
        Some(p) => return Outcome::input_error(format!("U({p}) needs p >= 2")),
    };
    match eta_factorize(&series, Exponent::int(depth)) {
        Ok(ep) => Outcome::output(format!("{ep}\n")),
        Err(e) => Outcome { code: EXIT_NOT_APPLICABLE, stderr: format!("{e}\n"), ..Default::default() },
    }
}

pub fn cusps(n: u64) -> Outcome {
    if n == 0 {
        return Outcome::input_error("level must be positive");
    }
    let names: Vec<String> = cusp_set(n).iter().map(ToString::to_string).collect();
    Outcome::output(format!("{}\n", names.join(" ")))
}

fn product_or_error(text: &str) -> Result<EtaProduct, Outcome> {
    parse_product(text).map_err(|e: InputError| Outcome::input_error(e))
}

pub fn check(text: &str, n: u64, verbose: bool) -> Outcome {
    if n == 0 {
        return Outcome::input_error("level must be positive");
    }
    let ep = match product_or_error(text) {
        Ok(ep) => ep,
        Err(o) => return o,
    };
    let v = gamma_check(&ep, n);
    let text = if verbose {
        format!("{v}\n")
    } else if v.invariant() {
        "function is invariant\n".to_string()
    } else {
        "function is NOT invariant\n".to_string()
    };
    Outcome::output(text)
}

pub fn formcheck(text: &str, n: u64) -> Outcome {
    if n == 0 {
        return Outcome::input_error("level must be positive");
    }
    let ep = match product_or_error(text) {
        Ok(ep) => ep,
        Err(o) => return o,
    };
    match form_check(&ep, n) {
        Ok(v) => {
            let mut out = String::new();
            writeln!(out, "N = {}", v.level).unwrap();
            let half = if v.half_integral { " (half-integral)" } else { "" };
            writeln!(out, "weight = {}{half}", v.weight()).unwrap();
            writeln!(out, "character = ({}/d)", v.character_disc).unwrap();
            writeln!(out, "cleared = {} (squarefree part {})", v.cleared, v.squarefree_kernel).unwrap();
            Outcome::output(out)
        }
        Err(e) => Outcome { code: EXIT_NOT_APPLICABLE, stderr: format!("{e}\n"), ..Default::default() },
    }
}
