//! Inconsistency measures over subsignatures, plus the subset-based
//! measures they are modelled on. Values are exact rationals.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::forget::ForgetOp;
use crate::kb::KnowledgeBase;
use crate::subsig::{analyze, enumerate_mcs, enumerate_mis, SubsigReport};

pub type Value = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SigMeasure {
    /// Number of minimal inconsistent subsignatures.
    Misig,
    /// Sum of `1/|M|` over minimal inconsistent subsignatures.
    MisigC,
    /// `|MCSig| + |SCSig| - 1`.
    Mcsig,
    /// Atoms in some minimal inconsistent subsignature.
    P,
}

impl SigMeasure {
    pub const ALL: [SigMeasure; 4] = [SigMeasure::Misig, SigMeasure::MisigC, SigMeasure::Mcsig, SigMeasure::P];

    pub fn name(self) -> &'static str {
        match self {
            SigMeasure::Misig => "misig",
            SigMeasure::MisigC => "misig-c",
            SigMeasure::Mcsig => "mcsig",
            SigMeasure::P => "p",
        }
    }
}

impl FromStr for SigMeasure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        SigMeasure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown measure `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubsetMeasure {
    Mi,
    MiC,
    Mc,
    P,
}

impl SubsetMeasure {
    pub const ALL: [SubsetMeasure; 4] = [SubsetMeasure::Mi, SubsetMeasure::MiC, SubsetMeasure::Mc, SubsetMeasure::P];

    pub fn name(self) -> &'static str {
        match self {
            SubsetMeasure::Mi => "mi",
            SubsetMeasure::MiC => "mi-c",
            SubsetMeasure::Mc => "mc",
            SubsetMeasure::P => "p",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureResult {
    pub name: &'static str,
    /// `None` for subset-based measures.
    pub operator: Option<ForgetOp>,
    pub value: Value,
}

impl MeasureResult {
    pub fn decimal(&self) -> String {
        decimal(&self.value)
    }
}

impl fmt::Display for MeasureResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.name, self.decimal())
    }
}

/// Decimal rendering, rounded half-up to six places with trailing zeros
/// dropped.
pub fn decimal(v: &Value) -> String {
    const PLACES: u32 = 6;
    let (n, d) = (*v.numer(), *v.denom());
    let sign = if n < 0 { "-" } else { "" };
    let scale = 10i128.pow(PLACES);
    let scaled = (i128::from(n).abs() * scale * 2 + i128::from(d)) / (2 * i128::from(d));
    let (int, frac) = (scaled / scale, scaled % scale);
    if frac == 0 {
        return format!("{sign}{int}");
    }
    let digits = format!("{frac:0width$}", width = PLACES as usize);
    format!("{sign}{int}.{}", digits.trim_end_matches('0'))
}

fn count(n: usize) -> Value {
    Value::from_integer(n as i64)
}

fn unit_sum(sizes: impl Iterator<Item = usize>) -> Value {
    sizes.fold(Value::from_integer(0), |acc, s| acc + Value::new(1, s as i64))
}

fn undefined(which: SigMeasure, report: &SubsigReport, reason: &str) -> Error {
    Error::UndefinedMeasure(format!("{} under {}: {reason}", which.name(), report.operator))
}

/// A measure evaluated on a finished analysis.
pub fn measure_from_report(report: &SubsigReport, which: SigMeasure) -> Result<MeasureResult> {
    let value = match which {
        SigMeasure::Misig => count(report.misig.len()),
        SigMeasure::MisigC => {
            if report.misig.iter().any(|m| m.is_empty()) {
                return Err(undefined(which, report, "the empty signature is inconsistent"));
            }
            unit_sum(report.misig.iter().map(|m| m.len()))
        }
        SigMeasure::Mcsig => {
            if report.mcsig.is_empty() {
                return Err(undefined(which, report, "there is no maximal consistent subsignature"));
            }
            count(report.mcsig.len() + report.scsig.len()) - count(1)
        }
        SigMeasure::P => count(
            report
                .misig
                .iter()
                .fold(crate::kb::Signature::empty(), |acc, m| acc.union(m))
                .len(),
        ),
    };
    Ok(MeasureResult {
        name: which.name(),
        operator: Some(report.operator),
        value,
    })
}

pub fn measure(kb: &KnowledgeBase, which: SigMeasure, op: ForgetOp, cfg: &Config) -> Result<MeasureResult> {
    measure_from_report(&analyze(kb, op, cfg)?, which)
}

/// All four signature measures from one analysis. An undefined measure is
/// reported in place rather than aborting the others.
pub fn measure_all(kb: &KnowledgeBase, op: ForgetOp, cfg: &Config) -> Result<Vec<Result<MeasureResult>>> {
    let report = analyze(kb, op, cfg)?;
    Ok(SigMeasure::ALL.iter().map(|&m| measure_from_report(&report, m)).collect())
}

/// The subset-based counterparts: MI counts minimal inconsistent subsets,
/// MI-C sums their unit fractions, MC is `|MCS| + |self-contradictory| - 1`
/// and P counts formulas in some minimal inconsistent subset.
pub fn measure_subset_baselines(kb: &KnowledgeBase, which: SubsetMeasure, cfg: &Config) -> Result<MeasureResult> {
    let value = match which {
        SubsetMeasure::Mi => count(enumerate_mis(kb, cfg)?.len()),
        SubsetMeasure::MiC => unit_sum(enumerate_mis(kb, cfg)?.iter().map(|m| m.len())),
        SubsetMeasure::Mc => {
            let mis = enumerate_mis(kb, cfg)?;
            let self_contradictory = mis.iter().filter(|m| m.len() == 1).count();
            count(enumerate_mcs(kb, cfg)?.len() + self_contradictory) - count(1)
        }
        SubsetMeasure::P => {
            let mis = enumerate_mis(kb, cfg)?;
            count(kb.iter().filter(|f| mis.iter().any(|m| m.formulas().contains(f))).count())
        }
    };
    Ok(MeasureResult {
        name: which.name(),
        operator: None,
        value,
    })
}
