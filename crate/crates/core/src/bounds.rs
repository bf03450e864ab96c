//! Lower-bound arithmetic for the equational complexity of representable
//! relation algebras.
//!
//! For each `n`, `E_{2·3^{2n+1}+2}` is not representable while all its
//! proper subalgebras are. Any `k`-generated subalgebra has at most
//! `2^{2^{k+1}}` elements, so a separating equation needs more than
//! `k_max(n)` variables and hence length at least `2·(k_max + 1) - 2`.
//!
//! Powers of 2 and 3 are compared as exact big integers; floats only appear
//! in the reported real-valued bounds.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

/// Absolute tolerance for real-valued cross-checks.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("log2(m) = {0} is below 8, where no bound is asserted")]
    LogBelowEight(f64),
    #[error("M = {0} atoms leaves M/2 - 1 nonpositive")]
    TooFewAtoms(f64),
    #[error("log2(m) = {0} is below 56, the start of the first interval")]
    BeforeFirstInterval(BigUint),
}

fn log2_3() -> f64 {
    3f64.log2()
}

/// `2·3^{2n+1}`, the plane order ruled out by Bruck–Ryser.
pub fn order(n: u32) -> BigUint {
    BigUint::from(3u32).pow(2 * n + 1) * 2u32
}

/// `log2 |E|` for `E = E_{order(n)+2}`: its atom count `order(n) + 2`.
pub fn log2_size(n: u32) -> BigUint {
    order(n) + 2u32
}

/// Largest `k` with `2^{k+1} ≤ 2·3^{2n+1}`.
pub fn k_max(n: u32) -> u64 {
    // 2^{k+1} ≤ N  iff  k + 1 ≤ bits(N) - 1
    order(n).bits() - 2
}

/// Fewest variables a separating equation can have.
pub fn min_vars(n: u32) -> u64 {
    k_max(n) + 1
}

/// Shortest length a separating equation can have.
pub fn min_len(n: u32) -> u64 {
    2 * min_vars(n) - 2
}

/// `f(n) = 2·log2(3)·(2n + 1) - 2`.
pub fn f(n: f64) -> f64 {
    2.0 * log2_3() * (2.0 * n + 1.0) - 2.0
}

/// `log3(x)`, exact when `x` is a power of 3.
fn log3_big(x: &BigUint) -> f64 {
    let three = BigUint::from(3u32);
    let mut rest = x.clone();
    let mut e = 0u64;
    while !rest.is_zero() && (&rest % &three).is_zero() {
        rest /= &three;
        e += 1;
    }
    if rest.is_one() {
        return e as f64;
    }
    match x.to_f64().filter(|v| v.is_finite()) {
        Some(v) => v.ln() / 3f64.ln(),
        None => {
            let shift = x.bits() - 60;
            let top = (x >> shift).to_f64().expect("fits");
            (top.ln() + shift as f64 * 2f64.ln()) / 3f64.ln()
        }
    }
}

/// `2·log2(3)·(log3(L/2 - 1) - 2) - 2`, where `L = log2(m)`.
pub fn beta_lower_from_log2m(l: f64) -> Result<f64, BoundsError> {
    if l.is_nan() || l < 8.0 {
        return Err(BoundsError::LogBelowEight(l));
    }
    let t = l / 2.0 - 1.0;
    Ok(2.0 * log2_3() * (t.ln() / 3f64.ln() - 2.0) - 2.0)
}

/// As [`beta_lower_from_log2m`] for an exact, possibly huge, `L`.
pub fn beta_lower_from_log2m_exact(l: &BigUint) -> Result<f64, BoundsError> {
    if *l < BigUint::from(8u32) {
        return Err(BoundsError::LogBelowEight(l.to_f64().unwrap_or(f64::NAN)));
    }
    // L/2 - 1 is a half-integer when L is odd
    if l.bit(0) {
        return beta_lower_from_log2m(l.to_f64().unwrap_or(f64::INFINITY));
    }
    let t = (l >> 1u32) - 1u32;
    Ok(2.0 * log2_3() * (log3_big(&t) - 2.0) - 2.0)
}

/// The bound in terms of the atom count `M`:
/// `2·log2(3)·[log3(M/2 - 1) - 2] - 2`.
pub fn beta_star_lower(atoms: f64) -> Result<f64, BoundsError> {
    let half_less_one = atoms / 2.0 - 1.0;
    if half_less_one.is_nan() || half_less_one <= 0.0 {
        return Err(BoundsError::TooFewAtoms(atoms));
    }
    Ok(2.0 * log2_3() * (half_less_one.ln() / 3f64.ln() - 2.0) - 2.0)
}

/// Largest `n ≥ 1` with `2·3^{2n+1} + 2 ≤ L`.
pub fn interval_n(l: &BigUint) -> Result<u32, BoundsError> {
    if *l < log2_size(1) {
        return Err(BoundsError::BeforeFirstInterval(l.clone()));
    }
    let mut n = 1;
    while log2_size(n + 1) <= *l {
        n += 1;
    }
    Ok(n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub n: u32,
    pub order: BigUint,
    pub log2_size: BigUint,
    pub k_max: u64,
    pub min_vars: u64,
    pub min_len: u64,
    pub f_n: f64,
    /// The bound at `log2(m) = log2_size`, where `n`'s interval starts.
    pub beta_lower_at_interval_start: f64,
}

pub fn report(n: u32) -> BoundsReport {
    let log2_size = log2_size(n);
    BoundsReport {
        n,
        order: order(n),
        k_max: k_max(n),
        min_vars: min_vars(n),
        min_len: min_len(n),
        f_n: f(n as f64),
        beta_lower_at_interval_start: beta_lower_from_log2m_exact(&log2_size)
            .expect("log2_size is at least 8"),
        log2_size,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Intermediate values, for the record.
    pub values: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub n: u32,
    pub checks: Vec<ChainCheck>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn value(name: &str, v: impl ToString) -> (String, String) {
    (name.to_owned(), v.to_string())
}

/// Recomputes each step of the interval argument for `n` at both interval
/// endpoints `L = log2_size(n)` and `L = log2_size(n + 1)`.
pub fn verify_chain(n: u32) -> ChainReport {
    assert!(n >= 1, "the interval argument starts at n = 1");
    let ends = [log2_size(n), log2_size(n + 1)];
    let nf = n as f64;
    let mut checks = Vec::new();

    // n >= ½·log3(½·L - 1) - 3/2, i.e. L ≤ the interval's upper end
    for (which, l) in ["start", "end"].iter().zip(&ends) {
        let lhs = 0.5 * log3_big(&((l >> 1u32) - 1u32)) - 1.5;
        checks.push(ChainCheck {
            name: if *which == "start" {
                "star_star_at_start"
            } else {
                "star_star_at_end"
            },
            passed: lhs <= nf + TOLERANCE,
            values: vec![value("log2_m", l), value("lhs", lhs), value("n", n)],
        });
    }

    // the derivation only weakens: bound(L) ≤ f(n) ≤ f(interval_n(L))
    for (which, l) in ["start", "end"].iter().zip(&ends) {
        let bound = beta_lower_from_log2m_exact(l).expect("L ≥ 56");
        let m = interval_n(l).expect("L ≥ 56");
        let (f_n, f_m) = (f(nf), f(m as f64));
        checks.push(ChainCheck {
            name: if *which == "start" {
                "weakening_at_start"
            } else {
                "weakening_at_end"
            },
            passed: bound <= f_n + TOLERANCE && f_n <= f_m + TOLERANCE,
            values: vec![
                value("log2_m", l),
                value("beta_lower", bound),
                value("f_n", f_n),
                value("interval_n", m),
                value("f_interval_n", f_m),
            ],
        });
    }

    // at the upper end the bound is exactly f(n)
    let at_end = beta_lower_from_log2m_exact(&ends[1]).expect("L ≥ 56");
    checks.push(ChainCheck {
        name: "tight_at_end",
        passed: (at_end - f(nf)).abs() <= TOLERANCE,
        values: vec![value("beta_lower", at_end), value("f_n", f(nf))],
    });

    // 2^{(2n+1)·log2(3) + 1} = 2·3^{2n+1}: the exponent of the subalgebra
    // size bound at k = (2n+1)·log2(3) is exactly the order, which is below
    // log2|E| = order + 2; and k_max is the integer part of that k.
    let exact = order(n);
    let by_steps = (0..n).fold(BigUint::from(6u32), |acc, _| acc * 9u32);
    let k = (2.0 * nf + 1.0) * log2_3();
    let k_max = k_max(n);
    let two = BigUint::from(2u32);
    let exponent_float_ok = {
        let lhs = k + 1.0;
        let rhs = 1.0 + log3_big(&BigUint::from(3u32).pow(2 * n + 1)) * log2_3();
        (lhs - rhs).abs() <= TOLERANCE * lhs.max(1.0)
    };
    checks.push(ChainCheck {
        name: "size_exponent_identity",
        passed: exact == by_steps
            && exponent_float_ok
            && exact < log2_size(n)
            && two.pow(k_max as u32 + 1) <= exact
            && exact < two.pow(k_max as u32 + 2)
            && k_max == k.floor() as u64,
        values: vec![
            value("order", &exact),
            value("log2_size", log2_size(n)),
            value("k", k),
            value("k_max", k_max),
        ],
    });

    ChainReport { n, checks }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

pub const CSV_HEADER: &str = "n,order,log2_size,k_max,min_vars,min_len,f_n,beta_lower";

/// One row per `n` in `0..=n_max`. Row 0 sits before the interval argument,
/// which starts at `n = 1`; the JSON form flags it.
pub fn emit_table(n_max: u32, format: TableFormat) -> String {
    let rows: Vec<BoundsReport> = (0..=n_max).map(report).collect();
    match format {
        TableFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{:.6},{:.6}\n",
                    r.n,
                    r.order,
                    r.log2_size,
                    r.k_max,
                    r.min_vars,
                    r.min_len,
                    r.f_n,
                    r.beta_lower_at_interval_start
                ));
            }
            out
        }
        TableFormat::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "n": r.n,
                        "order": r.order.to_string(),
                        "log2_size": r.log2_size.to_string(),
                        "k_max": r.k_max,
                        "min_vars": r.min_vars,
                        "min_len": r.min_len,
                        "f_n": round6(r.f_n),
                        "beta_lower": round6(r.beta_lower_at_interval_start),
                        "interval_argument": r.n >= 1,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("serializes") + "\n"
        }
    }
}

fn round6(x: f64) -> f64 {
    format!("{x:.6}").parse().expect("formatted float")
}
