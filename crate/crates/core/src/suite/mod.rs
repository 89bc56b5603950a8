//! Registry of the congruences C01–C27 and the engine that checks them.
//!
//! Every entry has one evaluation plan, written once against a numeric
//! backend: [`check`] runs it modulo `p^W` and [`oracle_check`] runs it over
//! exact rationals. The working precision is `W = t + d + 2`, where `d` is the
//! number of digits the plan can lose to divisions by `p`.

mod backend;
mod plans;
mod report;
mod sweep;

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, rational_congruent, valuation, PadicNumber, Rational};
use crate::{Error, Result};

use backend::{ExactBackend, FastBackend};

pub use report::{write_csv, write_jsonl, CSV_HEADER};
pub(crate) use sweep::pool;
pub use sweep::{sweep, SweepConfig};

/// Largest prime [`oracle_check`] accepts by default.
pub const ORACLE_CAP: u64 = 23;

/// Registry identifier `C01`..`C27`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CheckId(u8);

impl CheckId {
    pub const COUNT: u8 = 27;

    pub fn new(n: u8) -> Result<Self> {
        if (1..=Self::COUNT).contains(&n) {
            Ok(CheckId(n))
        } else {
            Err(Error::UnknownCheck(format!("C{n:02}")))
        }
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = CheckId> {
        (1..=Self::COUNT).map(CheckId)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{:02}", self.0)
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix('C')
            .or_else(|| s.strip_prefix('c'))
            .unwrap_or(s);
        digits
            .parse::<u8>()
            .ok()
            .and_then(|n| CheckId::new(n).ok())
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

impl Serialize for CheckId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CheckId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamValue {
    Int(i64),
    Tag(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(n) => write!(f, "{n}"),
            ParamValue::Tag(s) => f.write_str(s),
        }
    }
}

/// Named parameters of one report row, in registry order. Displays as
/// `m=-5;r=2`; the empty set displays as the empty string.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Params(Vec<(String, ParamValue)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn with_int(mut self, name: &str, v: i64) -> Self {
        self.set(name, ParamValue::Int(v));
        self
    }

    pub fn with_tag(mut self, name: &str, v: &str) -> Self {
        self.set(name, ParamValue::Tag(v.to_string()));
        self
    }

    pub fn set(&mut self, name: &str, v: ParamValue) {
        match self.0.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = v,
            None => self.0.push((name.to_string(), v)),
        }
    }

    pub fn get(&self, name: &str) -> Option<&ParamValue> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn int(&self, name: &str) -> Result<i64> {
        match self.get(name) {
            Some(ParamValue::Int(n)) => Ok(*n),
            _ => Err(Error::OutOfRange(format!(
                "missing integer parameter {name}"
            ))),
        }
    }

    pub fn tag(&self, name: &str) -> Result<&str> {
        match self.get(name) {
            Some(ParamValue::Tag(s)) => Ok(s),
            _ => Err(Error::OutOfRange(format!("missing parameter {name}"))),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ParamValue)> {
        self.0.iter().map(|(n, v)| (n.as_str(), v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{n}={v}")?;
        }
        Ok(())
    }
}

impl FromStr for Params {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Params::new();
        for item in s.split(';').map(str::trim).filter(|x| !x.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::OutOfRange(format!("bad parameter `{item}`")))?;
            let value = value.trim();
            let v = match value.parse::<i64>() {
                Ok(n) => ParamValue::Int(n),
                Err(_) => ParamValue::Tag(value.to_string()),
            };
            out.set(name.trim(), v);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    InsufficientPrecision,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
            Status::InsufficientPrecision => "insufficient-precision",
        }
    }

    /// Pass or not-applicable.
    pub fn is_ok(self) -> bool {
        matches!(self, Status::Pass | Status::NotApplicable)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A value modulo `p^t` as `p^valuation * unit`, the unit taken modulo
/// `p^(t - valuation)`. Values divisible by `p^t` are `(t, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    pub valuation: i64,
    pub unit: u128,
}

impl Residue {
    pub fn of_padic(x: &PadicNumber, t: i64) -> Option<Residue> {
        x.residue_at(t)
            .ok()
            .map(|(valuation, unit)| Residue { valuation, unit })
    }

    pub fn of_rational(r: &Rational, p: u64, t: i64) -> Residue {
        match valuation(r, p) {
            Some(v) if v < t => {
                let x = PadicNumber::from_rational(p, r, (t - v) as u32);
                let (valuation, unit) = x.residue_at(t).expect("exact value");
                Residue { valuation, unit }
            }
            _ => Residue {
                valuation: t,
                unit: 0,
            },
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*p^{}", self.unit, self.valuation)
    }
}

/// One report row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    /// Registry id such as `C07`, or a statement label.
    pub id: String,
    pub p: u64,
    pub params: Params,
    pub t: u32,
    pub lhs: Option<Residue>,
    pub rhs: Option<Residue>,
    pub status: Status,
    /// Wall time in milliseconds; zero unless timings were requested.
    pub ms: u64,
}

impl CongruenceReport {
    pub(crate) fn not_applicable(id: &str, p: u64, params: &Params, t: u32) -> Self {
        CongruenceReport {
            id: id.to_string(),
            p,
            params: params.clone(),
            t,
            lhs: None,
            rhs: None,
            status: Status::NotApplicable,
            ms: 0,
        }
    }

    /// Sort key of a sweep.
    pub fn key(&self) -> (&str, u64, &Params) {
        (&self.id, self.p, &self.params)
    }

    /// Same verdict and residues, ignoring the timing column.
    pub fn same_outcome(&self, other: &Self) -> bool {
        CongruenceReport {
            ms: 0,
            ..self.clone()
        } == CongruenceReport {
            ms: 0,
            ..other.clone()
        }
    }
}

impl fmt::Display for CongruenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} p={}", self.id, self.p)?;
        if !self.params.is_empty() {
            write!(f, " [{}]", self.params)?;
        }
        write!(f, " mod p^{}: {}", self.t, self.status)?;
        if let (Some(l), Some(r)) = (self.lhs, self.rhs) {
            write!(f, " (lhs {l}, rhs {r})")?;
        }
        Ok(())
    }
}

/// Default parameter grids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamGrid {
    /// `m` for C15 and C16.
    pub lucas_m: RangeInclusive<i64>,
    /// `m` for C24.
    pub dual_m: RangeInclusive<i64>,
    /// `r` for C24.
    pub dual_r: RangeInclusive<i64>,
    /// Largest `a + b` for C11.
    pub weight_max: i64,
}

impl Default for ParamGrid {
    fn default() -> Self {
        ParamGrid {
            lucas_m: -5..=6,
            dual_m: 1..=10,
            dual_r: 0..=4,
            weight_max: 6,
        }
    }
}

/// Static description of one registry entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegistryEntry {
    pub id: CheckId,
    pub description: &'static str,
    pub prime_condition: &'static str,
    pub domain: &'static str,
    /// The congruence holds modulo `p^t`.
    pub t: u32,
    /// Digits the evaluation plan can lose to divisions by `p`.
    pub loss: u32,
}

macro_rules! entry {
    ($n:expr, $t:expr, $loss:expr, $cond:expr, $domain:expr, $desc:expr) => {
        RegistryEntry {
            id: CheckId($n),
            description: $desc,
            prime_condition: $cond,
            domain: $domain,
            t: $t,
            loss: $loss,
        }
    };
}

static REGISTRY: [RegistryEntry; 27] = [
    entry!(1, 3, 1, "p > 5", "", "Σ 1/(k^2 C(2k,k)) ≡ H(1)/(3p)"),
    entry!(
        2,
        3,
        2,
        "p > 5",
        "",
        "Σ (-1)^k/(k^3 C(2k,k)) ≡ -(2/5) H(1)/p^2"
    ),
    entry!(
        3,
        4,
        1,
        "p > 5",
        "",
        "Σ (-1)^k C(2k,k)/k^2 ≡ (4/5)(H(1)/p + 2p H(3))"
    ),
    entry!(4, 4, 0, "p > 3", "", "Σ C(2k,k)/k ≡ -(8/3) H(1)"),
    entry!(
        5,
        5,
        0,
        "p > 5",
        "",
        "H(1) ≡ -(1/2) p H(2) - (1/6) p^2 H(3)"
    ),
    entry!(
        6,
        5,
        0,
        "p > 5",
        "",
        "H(1) ≡ p^2 (B(3p-5)/(3p-5) - 3 B(2p-4)/(2p-4) + 3 B(p-3)/(p-3)) + p^4 B(p-5)/(p-5)"
    ),
    entry!(
        7,
        4,
        0,
        "p > 5",
        "form ∈ {ph2, bernoulli}",
        "H(1) ≡ -(1/2) p H(2) ≡ p^2 (2 B(p-3)/(p-3) - B(2p-4)/(2p-4))"
    ),
    entry!(
        8,
        3,
        0,
        "p > 5",
        "form ∈ {ph4, bernoulli}",
        "H(3) ≡ -(3/2) p H(4) ≡ 6 p^2 B(p-5)/(p-5)"
    ),
    entry!(9, 2, 0, "p > 7", "", "H(5) ≡ 0"),
    entry!(10, 3, 1, "p > 5", "", "H(2; (p-1)/2) ≡ -7 H(1)/p"),
    entry!(
        11,
        1,
        0,
        "p > a+b+1",
        "a, b ≥ 1",
        "H(a,b) ≡ (-1)^b/(a+b) C(a+b,a) B(p-a-b)"
    ),
    entry!(12, 1, 0, "p > 5", "", "H(1,1,2) ≡ 0"),
    entry!(
        13,
        2,
        2,
        "p > 3 (h12), p > 5 (h21)",
        "form ∈ {h12, h21}",
        "H(1,2) ≡ -3 H(1)/p^2 and H(2,1) ≡ 3 H(1)/p^2"
    ),
    entry!(
        14,
        6,
        0,
        "p > 5",
        "",
        "C(2p,p)/2 ≡ 1 + 2p H(1) + (2/3) p^3 H(3)"
    ),
    entry!(
        15,
        2,
        1,
        "p odd",
        "m ∈ ℤ",
        "p Σ m^k/(k C(2k,k)) ≡ (m u_p(2-m) - m^p)/2"
    ),
    entry!(
        16,
        2,
        1,
        "p odd",
        "m ∈ ℤ",
        "p Σ m^k/(k^2 C(2k,k)) ≡ (2 - v_p(2-m) - m^p)/(2p)"
    ),
    entry!(17, 2, 1, "p odd", "", "p Σ 1/(k^2 C(2k,k)) ≡ δ(p,3)/2"),
    entry!(18, 2, 1, "p odd", "", "p Σ 1/(k C(2k,k)) ≡ ((p/3) - 1)/2"),
    entry!(
        19,
        2,
        1,
        "p odd",
        "",
        "p Σ (-1)^k/(k^2 C(2k,k)) ≡ (1 - L_p^2)/(2p)"
    ),
    entry!(
        20,
        2,
        1,
        "p odd",
        "",
        "p Σ (-1)^k/(k C(2k,k)) ≡ (1 - L_p F_p)/2"
    ),
    entry!(21, 2, 1, "p odd", "", "p Σ 2^k/(k^2 C(2k,k)) ≡ -q_p(2)"),
    entry!(
        22,
        2,
        1,
        "p odd",
        "",
        "p Σ 2^k/(k C(2k,k)) ≡ (-1/p) - 1 - p q_p(2)"
    ),
    entry!(23, 2, 1, "p > 3", "", "p Σ (k+1)/C(2k,k) ≡ (2/3)(p/3)"),
    entry!(
        24,
        1,
        1,
        "p ∤ m",
        "m ∈ ℤ, r ≥ 0",
        "p Σ m^k/(k^r C(2k,k)) ≡ (m (-1)^(r-1)/2) Σ C(2k,k)/(m^k k^(r-1))"
    ),
    entry!(25, 3, 1, "p > 5", "", "Σ (-1)^k/k^2 ≡ -(3/2) H(1)/p"),
    entry!(
        26,
        3,
        1,
        "p > 5",
        "",
        "Σ (-1)^k/(k^2 C(p-1+k,k) C(p-1,k)) ≡ 2 H(1)/p"
    ),
    entry!(
        27,
        3,
        1,
        "p > 5",
        "",
        "Σ (-1)^k/(k^3 C(p-1+k,k) C(p-1,k)) ≡ H(2)/p + (7/3) H(3)"
    ),
];

pub fn registry() -> &'static [RegistryEntry] {
    &REGISTRY
}

pub fn lookup(id: CheckId) -> &'static RegistryEntry {
    &REGISTRY[id.0 as usize - 1]
}

impl RegistryEntry {
    /// Working precision for this entry.
    pub fn working_precision(&self, extra: u32) -> u32 {
        self.t + self.loss + 2 + extra
    }

    /// Rejects parameter sets outside the entry's domain.
    pub fn validate(&self, params: &Params) -> Result<()> {
        let names: Vec<&str> = params.iter().map(|(n, _)| n).collect();
        let expect_form = |forms: &[&str]| -> Result<()> {
            let f = params.tag("form")?;
            if names.len() == 1 && forms.contains(&f) {
                Ok(())
            } else {
                Err(Error::OutOfRange(format!(
                    "{}: form must be one of {forms:?}",
                    self.id
                )))
            }
        };
        let expect_ints = |wanted: &[&str]| -> Result<()> {
            for w in wanted {
                params.int(w)?;
            }
            if names.len() == wanted.len() {
                Ok(())
            } else {
                Err(Error::OutOfRange(format!(
                    "{}: expected parameters {wanted:?}",
                    self.id
                )))
            }
        };
        match self.id.0 {
            7 => expect_form(&["ph2", "bernoulli"]),
            8 => expect_form(&["ph4", "bernoulli"]),
            13 => expect_form(&["h12", "h21"]),
            11 => {
                expect_ints(&["a", "b"])?;
                if params.int("a")? < 1 || params.int("b")? < 1 {
                    return Err(Error::OutOfRange("C11 needs a, b ≥ 1".into()));
                }
                Ok(())
            }
            15 | 16 => expect_ints(&["m"]),
            24 => {
                expect_ints(&["m", "r"])?;
                if params.int("r")? < 0 {
                    return Err(Error::OutOfRange("C24 needs r ≥ 0".into()));
                }
                Ok(())
            }
            _ if params.is_empty() => Ok(()),
            _ => Err(Error::OutOfRange(format!(
                "{} takes no parameters",
                self.id
            ))),
        }
    }

    /// The prime condition, for an odd prime `p` and validated parameters.
    pub fn applies(&self, p: u64, params: &Params) -> bool {
        if p == 2 {
            return false;
        }
        match self.id.0 {
            1..=3 | 5..=8 | 10 | 12 | 14 | 25..=27 => p > 5,
            4 | 23 => p > 3,
            9 => p > 7,
            11 => {
                let s = params.int("a").unwrap_or(0) + params.int("b").unwrap_or(0);
                p as i64 > s + 1
            }
            13 => match params.tag("form") {
                Ok("h12") => p > 3,
                _ => p > 5,
            },
            24 => params.int("m").is_ok_and(|m| m.rem_euclid(p as i64) != 0),
            _ => true,
        }
    }

    /// Parameter sets swept by default.
    pub fn grid(&self, grid: &ParamGrid) -> Vec<Params> {
        let forms = |v: &[&str]| {
            v.iter()
                .map(|f| Params::new().with_tag("form", f))
                .collect()
        };
        match self.id.0 {
            7 => forms(&["ph2", "bernoulli"]),
            8 => forms(&["ph4", "bernoulli"]),
            13 => forms(&["h12", "h21"]),
            11 => {
                let mut out = Vec::new();
                for a in 1..grid.weight_max {
                    for b in 1..=grid.weight_max - a {
                        out.push(Params::new().with_int("a", a).with_int("b", b));
                    }
                }
                out
            }
            15 | 16 => grid
                .lucas_m
                .clone()
                .map(|m| Params::new().with_int("m", m))
                .collect(),
            24 => {
                let mut out = Vec::new();
                for m in grid.dual_m.clone() {
                    for r in grid.dual_r.clone() {
                        out.push(Params::new().with_int("m", m).with_int("r", r));
                    }
                }
                out
            }
            _ => vec![Params::new()],
        }
    }
}

/// Knobs for [`check_with`] and [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Digits added to every working precision.
    pub extra_precision: u32,
    /// Re-run failing rows with two more digits before reporting them.
    pub recheck_failures: bool,
    /// Fill the `ms` column.
    pub timings: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            extra_precision: 0,
            recheck_failures: true,
            timings: false,
        }
    }
}

/// Per-prime evaluation state, reused across the rows of one prime.
pub(crate) struct PrimeRunner {
    p: u64,
    options: CheckOptions,
    backends: HashMap<u32, FastBackend>,
}

impl PrimeRunner {
    pub(crate) fn new(p: u64, options: CheckOptions) -> Self {
        PrimeRunner {
            p,
            options,
            backends: HashMap::new(),
        }
    }

    fn at(
        &mut self,
        entry: &RegistryEntry,
        params: &Params,
        w: u32,
    ) -> (Status, Option<Residue>, Option<Residue>) {
        let t = entry.t as i64;
        let backend = match self.backends.entry(w) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(v) => match FastBackend::new(self.p, w) {
                Ok(b) => v.insert(b),
                Err(_) => return (Status::InsufficientPrecision, None, None),
            },
        };
        match plans::evaluate(entry.id, backend, params) {
            Ok((lhs, rhs)) => {
                let status = match lhs.congruent(&rhs, t) {
                    Ok(true) => Status::Pass,
                    Ok(false) => Status::Fail,
                    Err(_) => Status::InsufficientPrecision,
                };
                (
                    status,
                    Residue::of_padic(&lhs, t),
                    Residue::of_padic(&rhs, t),
                )
            }
            Err(e) if e.is_precision() => (Status::InsufficientPrecision, None, None),
            Err(_) => (Status::Fail, None, None),
        }
    }

    pub(crate) fn run(&mut self, entry: &RegistryEntry, params: &Params) -> CongruenceReport {
        let start = Instant::now();
        if !entry.applies(self.p, params) {
            return CongruenceReport::not_applicable(
                &entry.id.to_string(),
                self.p,
                params,
                entry.t,
            );
        }
        let w = entry.working_precision(self.options.extra_precision);
        let mut outcome = self.at(entry, params, w);
        if outcome.0 == Status::Fail && self.options.recheck_failures {
            outcome = self.at(entry, params, w + 2);
        }
        let (status, lhs, rhs) = outcome;
        CongruenceReport {
            id: entry.id.to_string(),
            p: self.p,
            params: params.clone(),
            t: entry.t,
            lhs,
            rhs,
            status,
            ms: if self.options.timings {
                start.elapsed().as_millis() as u64
            } else {
                0
            },
        }
    }
}

fn precheck(id: CheckId, p: u64, params: &Params) -> Result<&'static RegistryEntry> {
    let entry = lookup(id);
    entry.validate(params)?;
    if p != 2 && !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(entry)
}

/// Checks one registry entry at one prime with default options.
pub fn check(id: CheckId, p: u64, params: &Params) -> Result<CongruenceReport> {
    check_with(id, p, params, CheckOptions::default())
}

pub fn check_with(
    id: CheckId,
    p: u64,
    params: &Params,
    options: CheckOptions,
) -> Result<CongruenceReport> {
    let entry = precheck(id, p, params)?;
    Ok(PrimeRunner::new(p, options).run(entry, params))
}

/// The same check over exact rationals, for `p ≤ ORACLE_CAP`.
pub fn oracle_check(id: CheckId, p: u64, params: &Params) -> Result<CongruenceReport> {
    oracle_check_capped(id, p, params, ORACLE_CAP)
}

pub fn oracle_check_capped(
    id: CheckId,
    p: u64,
    params: &Params,
    cap: u64,
) -> Result<CongruenceReport> {
    if p > cap {
        return Err(Error::OracleCap { p, cap });
    }
    let entry = precheck(id, p, params)?;
    if !entry.applies(p, params) {
        return Ok(CongruenceReport::not_applicable(
            &id.to_string(),
            p,
            params,
            entry.t,
        ));
    }
    let t = entry.t as i64;
    let mut backend = ExactBackend::new(p);
    let (status, lhs, rhs) = match plans::evaluate(id, &mut backend, params) {
        Ok((l, r)) => {
            let status = if rational_congruent(&l, &r, p, t) {
                Status::Pass
            } else {
                Status::Fail
            };
            (
                status,
                Some(Residue::of_rational(&l, p, t)),
                Some(Residue::of_rational(&r, p, t)),
            )
        }
        Err(e @ Error::BernoulliCap { .. }) => return Err(e),
        Err(_) => (Status::Fail, None, None),
    };
    Ok(CongruenceReport {
        id: id.to_string(),
        p,
        params: params.clone(),
        t: entry.t,
        lhs,
        rhs,
        status,
        ms: 0,
    })
}
