//! One result per record: a text line and a json-lines object built from the
//! same data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Map, Value};

use nearcf_core::exactnum::{fmt_rational, rational_decimal};
use nearcf_core::{
    periodic_value, FactorOutcome, FactorReport, GaussianRational, HalfSqrtExpansion,
    MeanConstruction, MeanReport, MordellReport, PellSolution, PeriodicCF, QuadraticSurd, ScanItem,
    ScanSummary, SqrtExpansion, TwoSquares,
};

#[derive(Clone, Debug)]
pub struct Record {
    pub op: &'static str,
    pub input: Value,
    pub result: Value,
    pub checks: BTreeMap<String, bool>,
    pub text: String,
}

impl Record {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }

    pub fn json(&self) -> String {
        let checks: Map<String, Value> = self
            .checks
            .iter()
            .map(|(k, &v)| (k.clone(), Value::Bool(v)))
            .collect();
        json!({
            "op": self.op,
            "input": self.input,
            "result": self.result,
            "checks": checks,
        })
        .to_string()
    }
}

pub fn int(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn rat(r: &BigRational) -> Value {
    Value::String(fmt_rational(r))
}

fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

fn rats(xs: &[BigRational]) -> Value {
    Value::Array(xs.iter().map(rat).collect())
}

fn gauss(g: &GaussianRational) -> Value {
    json!({ "re": rat(&g.re), "im": rat(&g.im) })
}

fn surd(s: &QuadraticSurd, digits: usize) -> Value {
    json!({
        "a": int(s.a()),
        "b": int(s.b()),
        "c": int(s.c()),
        "d": int(s.d()),
        "text": s.to_string(),
        "decimal": s.to_decimal(digits),
    })
}

/// `p/q ≈ d` for a rational, `re+im i` for a complex value.
pub fn gaussian_text(g: &GaussianRational, digits: usize) -> String {
    match g.as_real() {
        Some(r) if r.is_integer() => fmt_rational(r),
        Some(r) => format!("{} ≈ {}", fmt_rational(r), rational_decimal(r, digits)),
        None => g.to_string(),
    }
}

pub fn continuant(entries: &[BigRational], value: &BigRational) -> Record {
    Record {
        op: "continuant",
        input: json!({ "entries": rats(entries) }),
        result: json!({ "value": rat(value) }),
        checks: BTreeMap::new(),
        text: fmt_rational(value),
    }
}

pub fn eval(entries: &[GaussianRational], value: &GaussianRational, digits: usize) -> Record {
    let mut result = json!({ "value": gauss(value) });
    if let Some(r) = value.as_real() {
        result["decimal"] = Value::String(rational_decimal(r, digits));
    }
    Record {
        op: "eval",
        input: json!({ "entries": entries.iter().map(gauss).collect::<Vec<_>>() }),
        result,
        checks: BTreeMap::new(),
        text: gaussian_text(value, digits),
    }
}

fn periodic_text(cf: &PeriodicCF, value: &QuadraticSurd, digits: usize) -> String {
    format!("{cf} value={value} ≈ {}", value.to_decimal(digits))
}

fn periodic_json(cf: &PeriodicCF, value: &QuadraticSurd, digits: usize) -> Value {
    json!({
        "preperiod": rats(cf.preperiod()),
        "period": rats(cf.period()),
        "value": surd(value, digits),
    })
}

pub fn mean(report: &MeanReport, digits: usize, verify: bool) -> Record {
    let (result, mut text) = match &report.construction {
        MeanConstruction::Word { word, value } => (
            json!({ "word": word.entries().iter().map(gauss).collect::<Vec<_>>(), "value": gauss(value) }),
            format!("word={word} value={}", gaussian_text(value, digits)),
        ),
        MeanConstruction::Periodic { cf, value } => (
            periodic_json(cf, value, digits),
            periodic_text(cf, value, digits),
        ),
    };
    let checks = if verify {
        report.checks.clone()
    } else {
        BTreeMap::new()
    };
    for (name, ok) in &checks {
        text.push_str(&format!(
            "\n  {name}: {}",
            if *ok { "pass" } else { "FAIL" }
        ));
    }
    let mut result = result;
    result["near"] = json!([gauss(&report.near.0), gauss(&report.near.1)]);
    Record {
        op: "mean",
        input: json!({
            "entries": rats(&report.entries),
            "kind": report.kind.name(),
            "variant": report.variant.name(),
        }),
        result,
        checks,
        text,
    }
}

fn radicand_input(p: &BigInt, q: &BigInt) -> Value {
    json!({ "p": int(p), "q": int(q) })
}

/// Exact comparison of the periodic value with `√(p/q)` (`half` adds the
/// `(1 + ·)/2`).
fn value_check(
    cf: &PeriodicCF,
    p: &BigInt,
    q: &BigInt,
    half: bool,
) -> (bool, Option<QuadraticSurd>) {
    let Ok(x) = periodic_value(cf) else {
        return (false, None);
    };
    let y = if half {
        x.mul_rational(&BigRational::from_integer(BigInt::from(2)))
            .add_rational(&-BigRational::one())
    } else {
        x.clone()
    };
    let target = BigRational::new(p.clone(), q.clone());
    let ok = y.is_positive() && y.square().eq_rational(&target);
    (ok, Some(x))
}

fn palindrome_checks(
    palindrome: &[BigInt],
    cf: &PeriodicCF,
    last: &BigInt,
    p: &BigInt,
    q: &BigInt,
    half: bool,
) -> (BTreeMap<String, bool>, Option<QuadraticSurd>) {
    let mut checks = BTreeMap::new();
    checks.insert(
        "palindrome".to_string(),
        palindrome.iter().eq(palindrome.iter().rev()),
    );
    let ends = cf
        .period()
        .last()
        .is_some_and(|a| *a == BigRational::from_integer(last.clone()));
    checks.insert("period_end".to_string(), ends);
    let (ok, value) = value_check(cf, p, q, half);
    checks.insert("value_exact".to_string(), ok);
    (checks, value)
}

pub fn sqrt_cf(e: &SqrtExpansion, digits: usize) -> Record {
    let (checks, value) = palindrome_checks(&e.palindrome, &e.cf, &e.a0, &e.p, &e.q, false);
    let mut text = format!("{} l={} parity={}", e.cf, e.period_length, e.parity.name());
    if let Some(c) = &e.central {
        text.push_str(&format!(" central={c}"));
    }
    if let Some(v) = &value {
        text.push_str(&format!(" value={v} ≈ {}", v.to_decimal(digits)));
    }
    Record {
        op: "sqrt-cf",
        input: radicand_input(&e.p, &e.q),
        result: json!({
            "b0": int(&e.b0),
            "preperiod": rats(e.cf.preperiod()),
            "period": ints(&e.period()),
            "palindrome": ints(&e.palindrome),
            "central": e.central.as_ref().map(int),
            "period_length": e.period_length,
            "parity": e.parity.name(),
        }),
        checks,
        text,
    }
}

pub fn half_sqrt_cf(e: &HalfSqrtExpansion, digits: usize) -> Record {
    let (checks, value) = palindrome_checks(&e.palindrome, &e.cf, &e.b0, &e.p, &e.q, true);
    let mut text = format!("{} m={} b0={}", e.cf, e.period_length, e.b0);
    if let Some(v) = &value {
        text.push_str(&format!(" value={v} ≈ {}", v.to_decimal(digits)));
    }
    Record {
        op: "half-sqrt-cf",
        input: radicand_input(&e.p, &e.q),
        result: json!({
            "first": int(&e.first),
            "b0": int(&e.b0),
            "preperiod": rats(e.cf.preperiod()),
            "period": ints(&e.period()),
            "palindrome": ints(&e.palindrome),
            "central": e.central.as_ref().map(int),
            "period_length": e.period_length,
            "parity": e.parity.name(),
        }),
        checks,
        text,
    }
}

pub fn pell(op: &'static str, s: &PellSolution) -> Record {
    let mut checks = BTreeMap::new();
    checks.insert("identity".to_string(), s.holds());
    Record {
        op,
        input: json!({ "n": int(&s.n) }),
        result: json!({
            "x": int(&s.x),
            "y": int(&s.y),
            "rhs": s.rhs.to_string(),
            "period_length": s.period_length,
        }),
        checks,
        text: format!(
            "x={} y={}: x² - {}·y² = {} (l={})",
            s.x, s.y, s.n, s.rhs, s.period_length
        ),
    }
}

pub fn factor(r: &FactorReport) -> Record {
    let mut checks = BTreeMap::new();
    let l = r.period_length.map_or(String::new(), |l| l.to_string());
    let (result, text) = match &r.outcome {
        FactorOutcome::Factors { u, v } => {
            checks.insert("product".to_string(), u * v == r.n);
            checks.insert("nontrivial".to_string(), *u > BigInt::one() && *v < r.n);
            let central = r.central.as_ref().map(int);
            (
                json!({ "u": int(u), "v": int(v), "period_length": r.period_length, "central": central }),
                format!(
                    "{} = {u} × {v} (l={l}, central={})",
                    r.n,
                    r.central.as_ref().map_or(String::new(), |c| c.to_string())
                ),
            )
        }
        FactorOutcome::Inapplicable(why) => (
            json!({
                "inapplicable": why.reason(),
                "period_length": r.period_length,
                "central": r.central.as_ref().map(int),
            }),
            match r.period_length {
                Some(l) => format!("{}: inapplicable, {} (l={l})", r.n, why.reason()),
                None => format!("{}: inapplicable, {}", r.n, why.reason()),
            },
        ),
    };
    Record {
        op: "factor",
        input: json!({ "n": int(&r.n) }),
        result,
        checks,
        text,
    }
}

pub fn sum2sq(n: &BigInt, t: &TwoSquares) -> Record {
    let mut checks = BTreeMap::new();
    let (result, text) = match t {
        TwoSquares::Found {
            a,
            b,
            period_length,
        } => {
            checks.insert("identity".to_string(), a * a + b * b == *n);
            checks.insert(
                "coprime".to_string(),
                num_integer::Integer::gcd(a, b).is_one(),
            );
            (
                json!({ "a": int(a), "b": int(b), "period_length": period_length }),
                format!("{n} = {a}² + {b}² (l={period_length})"),
            )
        }
        TwoSquares::EvenPeriod { period_length } => (
            json!({ "inapplicable": "even period", "period_length": period_length }),
            format!("{n}: inapplicable, even period (l={period_length})"),
        ),
    };
    Record {
        op: "sum2sq",
        input: json!({ "n": int(n) }),
        result,
        checks,
        text,
    }
}

pub fn mordell(r: &MordellReport) -> Record {
    let text = format!(
        "p={} l={} central={} s={} s0={} s_k1={} s_0k1={} y={} p|s={} p|y={} counterexample={}",
        r.p,
        r.l,
        r.a_central,
        r.s,
        r.s0,
        r.s_k1,
        r.s_0k1,
        r.y_fundamental,
        r.divides_half,
        r.divides_y,
        r.counterexample
    );
    Record {
        op: "mordell",
        input: json!({ "p": int(&r.p) }),
        result: json!({
            "period_length": r.l,
            "k": r.k,
            "central": int(&r.a_central),
            "s": int(&r.s),
            "s0": int(&r.s0),
            "s_k1": int(&r.s_k1),
            "s_0k1": int(&r.s_0k1),
            "y": int(&r.y_fundamental),
            "divides_half": r.divides_half,
            "divides_y": r.divides_y,
            "counterexample": r.counterexample,
        }),
        checks: r.structural_checks.clone(),
        text,
    }
}

pub fn scan_item(item: &ScanItem) -> Record {
    match item {
        ScanItem::Mordell(r) => mordell(r),
        ScanItem::Factor(r) => factor(r),
        ScanItem::Pell(s) => pell("pell", s),
        ScanItem::Sum2Sq { n, result } => sum2sq(n, result),
    }
}

pub fn scan_summary(mode: &str, lo: u64, hi: u64, s: &ScanSummary) -> Record {
    let mut checks = BTreeMap::new();
    checks.insert("no_failures".to_string(), s.fail == 0);
    Record {
        op: "scan",
        input: json!({ "mode": mode, "range_lo": lo.to_string(), "range_hi": hi.to_string() }),
        result: json!({
            "items": s.items,
            "applicable": s.applicable,
            "inapplicable": s.inapplicable,
            "pass": s.pass,
            "fail": s.fail,
            "max_period": s.max_period,
        }),
        checks,
        text: format!(
            "scan {mode} [{lo}, {hi}]: items={} applicable={} inapplicable={} pass={} fail={} max_period={}",
            s.items, s.applicable, s.inapplicable, s.pass, s.fail, s.max_period
        ),
    }
}
