//! Bookkeeping for the explicit blow-up resolution of the degenerate local
//! model `z^n = f^n h + t g`: local equations as monomial data, the total
//! transform ledger of the branch divisor, and the numerical verdict that
//! the cover of each exceptional divisor has negative Kodaira dimension.
//!
//! This is a symbolic ledger, not a blow-up engine. Uniruledness of
//! exceptional divisors over normal-crossing covers is taken as given.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, frac, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    HUnit,
    HVanishing,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::HUnit => "h-unit",
            Case::HVanishing => "h-vanishing",
        })
    }
}

impl std::str::FromStr for Case {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h-unit" => Ok(Case::HUnit),
            "h-vanishing" => Ok(Case::HVanishing),
            other => Err(Error::InvalidConfig(format!("unknown case {other}"))),
        }
    }
}

/// `z^n = f^a g^b h^c · (residual)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalEquation {
    pub f: i64,
    pub g: i64,
    pub h: i64,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub divisor: String,
    pub coefficient: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    /// Canonical class of the cover of a generic `P²` fibre.
    Conic,
    /// `P¹`-bundle whose cover splits completely after normalization.
    Splits,
    /// `P¹` fibres covered with two opposite branch points.
    Rational,
    /// Totally ramified cover of a `P²`-bundle.
    TotallyRamified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub divisor: String,
    pub r: i64,
    /// Fibrewise multiple of the hyperplane class giving `K` of the cover.
    #[serde(with = "rational::as_str")]
    pub value: Rational,
    pub kind: VerdictKind,
    pub negative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub divisor: String,
    pub center: String,
    pub chart: String,
    pub equation: LocalEquation,
    pub ledger: Vec<LedgerEntry>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupTrace {
    pub n: u32,
    pub case: Case,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NEntry {
    pub n: u32,
    pub traces: Vec<BlowupTrace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub entries: Vec<NEntry>,
    pub trace_count: usize,
    pub divisor_count: usize,
    pub all_negative: bool,
}

/// The multiple for a `P²` fibre covered with a conic (inertia of order `r`)
/// and a line: `−3 + 2(r−1)/r + (r/2−1)/(r/2)` for even `r`, and
/// `−3 + 3(r−1)/r` for odd `r`.
pub fn conic_value(r: i64) -> Rational {
    let base = int(-3) + frac(2 * (r - 1), r);
    if r % 2 == 0 {
        base + frac(r / 2 - 1, r / 2)
    } else {
        base + frac(r - 1, r)
    }
}

/// `−2 + 2(r−1)/r`: a `P¹` with two branch points of order `r`.
fn line_value(r: i64) -> Rational {
    int(-2) + frac(2 * (r - 1), r)
}

fn verdict(divisor: &str, r: i64, value: Rational, kind: VerdictKind) -> Verdict {
    Verdict { divisor: divisor.into(), r, negative: value < int(0), value, kind }
}

fn standard_steps(n: i64, last: i64, case: Case) -> Vec<Step> {
    let mut ledger = vec![LedgerEntry { divisor: "D".into(), coefficient: 1 }];
    let hf = if case == Case::HVanishing { "*h" } else { "" };
    (1..=last)
        .map(|k| {
            let name = format!("E_{k}");
            ledger.push(LedgerEntry { divisor: name.clone(), coefficient: 2 * k });
            let residual = if n - 2 * k == 0 {
                format!("1{hf} + t*g")
            } else if n - 2 * k == 1 {
                format!("f{hf} + t*g")
            } else {
                format!("f^{}{hf} + t*g", n - 2 * k)
            };
            let r = n.gcd(&(2 * k));
            Step {
                divisor: name.clone(),
                center: "t = f = g = 0".into(),
                chart: "f".into(),
                equation: LocalEquation { f: 2 * k, g: 0, h: 0, residual },
                ledger: ledger.clone(),
                verdict: verdict(&name, r, conic_value(r), VerdictKind::Conic),
            }
        })
        .collect()
}

/// Trace for even `n`; both cases follow the same blow-ups.
pub fn trace_even(n: u32, case: Case) -> Result<BlowupTrace> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::Parity(format!("n = {n} is not an even integer ≥ 2")));
    }
    let m = n as i64;
    Ok(BlowupTrace { n, case, steps: standard_steps(m, m / 2, case) })
}

/// Trace for odd `n ≥ 3`.
pub fn trace_odd(n: u32, case: Case) -> Result<BlowupTrace> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Parity(format!("n = {n} is not an odd integer ≥ 3")));
    }
    let m = n as i64;
    let half = (m - 1) / 2;
    let mut steps = standard_steps(m, half, case);
    let mut ledger = steps.last().expect("at least one standard step").ledger.clone();
    let mut hexp = 0;

    if case == Case::HVanishing {
        ledger.push(LedgerEntry { divisor: "Ē".into(), coefficient: m + 1 });
        hexp = m + 1;
        let r = m.gcd(&(m + 1));
        steps.push(Step {
            divisor: "Ē".into(),
            center: "singular locus of the strict transform of D".into(),
            chart: "h".into(),
            equation: LocalEquation { f: m - 1, g: 0, h: hexp, residual: "f + t*g".into() },
            ledger: ledger.clone(),
            verdict: verdict("Ē", r, conic_value(r), VerdictKind::TotallyRamified),
        });
    }

    let e_top = format!("E_{}", half + 1);
    ledger.push(LedgerEntry { divisor: e_top.clone(), coefficient: m });
    steps.push(Step {
        divisor: e_top.clone(),
        center: format!("singular locus of the conic fibration on E_{half} ∩ D"),
        chart: "g".into(),
        equation: LocalEquation { f: m - 1, g: m, h: hexp, residual: "f + t*g".into() },
        ledger: ledger.clone(),
        verdict: verdict(&e_top, 1, line_value(1), VerdictKind::Splits),
    });

    ledger.push(LedgerEntry { divisor: "F".into(), coefficient: 2 * m });
    steps.push(Step {
        divisor: "F".into(),
        center: "f = g = 0".into(),
        chart: "f".into(),
        equation: LocalEquation { f: 2 * m, g: m, h: hexp, residual: "1 + t*g".into() },
        ledger,
        verdict: verdict("F", m, line_value(m), VerdictKind::Rational),
    });
    Ok(BlowupTrace { n, case, steps })
}

pub fn trace(n: u32, case: Case) -> Result<BlowupTrace> {
    if n % 2 == 0 {
        trace_even(n, case)
    } else {
        trace_odd(n, case)
    }
}

fn mismatch(n: u32, step: &str, reason: impl Into<String>) -> Error {
    Error::TraceMismatch { n, step: step.into(), reason: reason.into() }
}

/// Checks a trace against the closed-form ledgers and recomputes every
/// verdict; reports the first offending step.
pub fn verify_trace(t: &BlowupTrace) -> Result<()> {
    let n = t.n as i64;
    let odd = n % 2 == 1;
    let half = if odd { (n - 1) / 2 } else { n / 2 };
    let mut expected: Vec<(String, i64)> = vec![("D".into(), 1)];
    let mut names: Vec<String> = Vec::new();
    for k in 1..=half {
        names.push(format!("E_{k}"));
    }
    if odd {
        if t.case == Case::HVanishing {
            names.push("Ē".into());
        }
        names.push(format!("E_{}", half + 1));
        names.push("F".into());
    }
    if t.steps.len() != names.len() {
        return Err(mismatch(t.n, "trace", format!("{} steps, expected {}", t.steps.len(), names.len())));
    }
    for (idx, (step, name)) in t.steps.iter().zip(&names).enumerate() {
        if &step.divisor != name {
            return Err(mismatch(t.n, &step.divisor, format!("expected divisor {name}")));
        }
        let (coef, r, value) = if idx < half as usize {
            let k = idx as i64 + 1;
            if step.equation.f != 2 * k {
                return Err(mismatch(t.n, name, format!("f exponent {} ≠ {}", step.equation.f, 2 * k)));
            }
            let r = n.gcd(&(2 * k));
            (2 * k, r, conic_value(r))
        } else if name == "Ē" {
            (n + 1, 1, int(-3))
        } else if name == "F" {
            (2 * n, n, int(-2) + frac(2 * (n - 1), n))
        } else {
            (n, 1, int(-2))
        };
        expected.push((name.clone(), coef));
        let got: Vec<(String, i64)> = step.ledger.iter().map(|e| (e.divisor.clone(), e.coefficient)).collect();
        if got != expected {
            return Err(mismatch(t.n, name, format!("ledger {:?} does not match {:?}", got, expected)));
        }
        let v = &step.verdict;
        if v.r != r || v.value != value {
            return Err(mismatch(
                t.n,
                name,
                format!("verdict (r = {}, value = {}) should be (r = {r}, value = {})", v.r, rational::render(&v.value), rational::render(&value)),
            ));
        }
        if !(v.negative && v.value < int(0)) {
            return Err(mismatch(t.n, name, "negativity fails"));
        }
    }
    Ok(())
}

/// Runs every trace for `2 ≤ n ≤ n_max` (both cases for odd `n`).
pub fn verify_all(n_max: u32) -> Result<VerifySummary> {
    if n_max < 2 {
        return Err(Error::InvalidConfig("n_max must be at least 2".into()));
    }
    let entries: Vec<NEntry> = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let cases: &[Case] = if n % 2 == 0 { &[Case::HUnit] } else { &[Case::HUnit, Case::HVanishing] };
            let traces = cases
                .iter()
                .map(|&c| {
                    let t = trace(n, c)?;
                    verify_trace(&t)?;
                    Ok(t)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(NEntry { n, traces })
        })
        .collect::<Result<_>>()?;
    let trace_count = entries.iter().map(|e| e.traces.len()).sum();
    let divisor_count = entries.iter().flat_map(|e| &e.traces).map(|t| t.steps.len()).sum();
    let all_negative = entries.iter().flat_map(|e| &e.traces).flat_map(|t| &t.steps).all(|s| s.verdict.negative);
    Ok(VerifySummary { entries, trace_count, divisor_count, all_negative })
}

impl fmt::Display for LocalEquation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (sym, e) in [("f", self.f), ("g", self.g), ("h", self.h)] {
            match e {
                0 => {}
                1 => parts.push(sym.to_string()),
                e => parts.push(format!("{sym}^{e}")),
            }
        }
        parts.push(format!("({})", self.residual));
        write!(out, "{}", parts.join("*"))
    }
}

/// `D + 2E_1 + …` rendering of a ledger.
pub fn render_ledger(ledger: &[LedgerEntry]) -> String {
    ledger
        .iter()
        .map(|e| if e.coefficient == 1 { e.divisor.clone() } else { format!("{}{}", e.coefficient, e.divisor) })
        .collect::<Vec<_>>()
        .join(" + ")
}
