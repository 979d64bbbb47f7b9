//! Independence, chromatic and clique bounds, all in exact rationals.
//!
//! Upper bounds on `alpha` and `omega` are rounded down and lower bounds on
//! `chi` are rounded up; the unrounded rational is always kept.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix_ring::c_coefficient;
use crate::serde_util::{self, ratio_string};
use crate::totalgraph::{closed_form_lambda_max, validate, TotalGraphSpec};

fn rat(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn pow(q: u64, e: usize) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

/// A ratio-type bound; `degenerate` marks the trivial fallback `v` used when
/// the spectral denominator vanishes (empty graphs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioBound {
    pub value: BigRational,
    pub degenerate: bool,
}

/// Hoffman's ratio bound `v / (1 - d / theta_min)` for a `d`-regular graph
/// with smallest adjacency eigenvalue `theta_min`.
pub fn hoffman_bound(v: &BigRational, d: &BigRational, theta_min: &BigRational) -> RatioBound {
    if !theta_min.is_negative() {
        return RatioBound {
            value: v.clone(),
            degenerate: true,
        };
    }
    RatioBound {
        value: v / (BigRational::one() - d / theta_min),
        degenerate: false,
    }
}

/// The Laplacian form `v (1 - delta / lambda_max)` for a graph of minimum
/// degree `delta` and largest Laplacian eigenvalue `lambda_max`.
pub fn hoffman_type_bound(v: &BigRational, delta: &BigRational, lambda_max: &BigRational) -> RatioBound {
    if !lambda_max.is_positive() {
        return RatioBound {
            value: v.clone(),
            degenerate: true,
        };
    }
    RatioBound {
        value: v * (BigRational::one() - delta / lambda_max),
        degenerate: false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Total { n: usize, q: u64 },
    Regular { n: usize, q: u64 },
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Total { n, q } => write!(f, "T_{n}({q})"),
            Target::Regular { n, q } => write!(f, "Gamma_{n}({q})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    AlphaUpper,
    ChiLower,
    OmegaUpper,
    ChiLowerLiterature,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::AlphaUpper => "alpha_upper",
            Quantity::ChiLower => "chi_lower",
            Quantity::OmegaUpper => "omega_upper",
            Quantity::ChiLowerLiterature => "chi_lower_literature",
        })
    }
}

/// Which formula produced a bound value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    /// `v (1 - delta / lambda_max)` with the exact `lambda_max` of `T_n(q)`.
    HoffmanTypeExact,
    /// `q^(n^2 - n + 1)`.
    UniformPower,
    /// `(1 - 1/q - 1/q^2) q^(n-1)`.
    ChiClosed,
    /// `c_n(q) q^(n-1) = |GL_n(F_q)| / q^(n^2 - n + 1)`.
    ChiExactRational,
    /// `(q/4)^floor(n/2)`, stated for odd `q`.
    Tomon,
    /// `sum_k k! C(n,k)^2`, stated for odd `q`.
    Akbari,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formula::HoffmanTypeExact => "hoffman-type-exact",
            Formula::UniformPower => "uniform-power",
            Formula::ChiClosed => "chi-closed",
            Formula::ChiExactRational => "chi-exact-rational",
            Formula::Tomon => "tomon",
            Formula::Akbari => "akbari",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaMode {
    /// Hoffman-type bound with the true `lambda_max`.
    Exact,
    /// The uniform `q^(n^2 - n + 1)`.
    Theorem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiMode {
    Closed,
    ExactRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(serialize_with = "serde_util::display")]
    pub target: Target,
    pub quantity: Quantity,
    pub formula: Formula,
    #[serde(rename = "value_rational", serialize_with = "serde_util::ratio")]
    pub value: BigRational,
    #[serde(serialize_with = "serde_util::display")]
    pub value_int: BigInt,
    #[serde(serialize_with = "serde_util::ratio_opt")]
    pub v: Option<BigRational>,
    #[serde(serialize_with = "serde_util::ratio_opt")]
    pub delta_or_d: Option<BigRational>,
    #[serde(serialize_with = "serde_util::ratio_opt")]
    pub lambda_max_or_theta_min: Option<BigRational>,
    pub notes: Vec<String>,
}

impl BoundReport {
    fn new(target: Target, quantity: Quantity, formula: Formula, value: BigRational) -> Self {
        let value_int = match quantity {
            Quantity::AlphaUpper | Quantity::OmegaUpper => value.floor().to_integer(),
            Quantity::ChiLower | Quantity::ChiLowerLiterature => value.ceil().to_integer(),
        };
        BoundReport {
            target,
            quantity,
            formula,
            value,
            value_int,
            v: None,
            delta_or_d: None,
            lambda_max_or_theta_min: None,
            notes: Vec::new(),
        }
    }

    /// The flat CSV row.
    pub fn csv_row(&self) -> BoundCsvRow {
        let opt = |r: &Option<BigRational>| r.as_ref().map(ratio_string).unwrap_or_default();
        BoundCsvRow {
            target: self.target.to_string(),
            quantity: self.quantity.to_string(),
            formula: self.formula.to_string(),
            value_rational: ratio_string(&self.value),
            value_int: self.value_int.to_string(),
            v: opt(&self.v),
            delta_or_d: opt(&self.delta_or_d),
            lambda_max_or_theta_min: opt(&self.lambda_max_or_theta_min),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCsvRow {
    pub target: String,
    pub quantity: String,
    pub formula: String,
    pub value_rational: String,
    pub value_int: String,
    pub v: String,
    pub delta_or_d: String,
    pub lambda_max_or_theta_min: String,
}

/// Writes bound rows as CSV with a header line.
pub fn write_csv<W: std::io::Write>(rows: &[BoundReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row.csv_row())
            .map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    }
    w.flush().map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    Ok(())
}

/// Upper bound on `alpha(T_n(q))`.
pub fn alpha_upper_total(n: usize, q: u64, mode: AlphaMode) -> Result<BoundReport> {
    let target = Target::Total { n, q };
    match mode {
        AlphaMode::Theorem => {
            validate(n, q)?;
            Ok(BoundReport::new(
                target,
                Quantity::AlphaUpper,
                Formula::UniformPower,
                rat(pow(q, n * n - n + 1)),
            ))
        }
        AlphaMode::Exact => {
            let spec = TotalGraphSpec::new(n, q)?;
            let v = rat(spec.vertex_count.clone());
            let delta = rat(spec.min_degree());
            let lambda = rat(closed_form_lambda_max(n, q)?);
            let bound = hoffman_type_bound(&v, &delta, &lambda);
            let mut report = BoundReport::new(target, Quantity::AlphaUpper, Formula::HoffmanTypeExact, bound.value);
            if bound.degenerate {
                report.notes.push("degenerate".into());
            }
            report.v = Some(v);
            report.delta_or_d = Some(delta);
            report.lambda_max_or_theta_min = Some(lambda);
            Ok(report)
        }
    }
}

/// Upper bound on `alpha(Gamma_n(q))`, inherited from `T_n(q)` because
/// `Gamma_n(q)` is an induced subgraph.
pub fn alpha_upper_regular(n: usize, q: u64, mode: AlphaMode) -> Result<BoundReport> {
    let mut report = alpha_upper_total(n, q, mode)?;
    report.target = Target::Regular { n, q };
    report
        .notes
        .push(format!("inherited from T_{n}({q}) (induced subgraph)"));
    Ok(report)
}

/// Lower bound on `chi(Gamma_n(q))` from `alpha * chi >= |GL_n(F_q)|`.
pub fn chi_lower(n: usize, q: u64, mode: ChiMode) -> Result<BoundReport> {
    validate(n, q)?;
    let qr = rat(q);
    let scale = rat(pow(q, n - 1));
    let (formula, value) = match mode {
        ChiMode::Closed => {
            let factor = BigRational::one() - qr.recip() - qr.pow(-2);
            (Formula::ChiClosed, factor * scale)
        }
        ChiMode::ExactRational => (Formula::ChiExactRational, c_coefficient(n, q) * scale),
    };
    Ok(BoundReport::new(
        Target::Regular { n, q },
        Quantity::ChiLower,
        formula,
        value,
    ))
}

/// `(q/4)^floor(n/2)`, the earlier lower bound on `chi(Gamma_n(q))`.
pub fn tomon_lower(n: usize, q: u64) -> BigRational {
    (rat(q) / rat(4)).pow((n / 2) as i32)
}

/// `sum_{k=0}^n k! C(n,k)^2`, an upper bound on `omega(Gamma_n(q))` for odd `q`.
pub fn akbari_clique_upper(n: usize) -> BigUint {
    let mut total = BigUint::zero();
    let mut fact = BigUint::one();
    let mut binom = BigUint::one();
    for k in 0..=n {
        if k > 0 {
            fact *= k;
            binom = binom * (n - k + 1) / k;
        }
        total += &fact * &binom * &binom;
    }
    total
}

/// Every bound row for `(n, q)`: both alpha modes for both graphs, both chi
/// modes, and the two literature comparison values.
pub fn bound_table(n: usize, q: u64) -> Result<Vec<BoundReport>> {
    validate(n, q)?;
    let mut rows = vec![
        alpha_upper_total(n, q, AlphaMode::Exact)?,
        alpha_upper_total(n, q, AlphaMode::Theorem)?,
        alpha_upper_regular(n, q, AlphaMode::Exact)?,
        alpha_upper_regular(n, q, AlphaMode::Theorem)?,
    ];
    let closed = chi_lower(n, q, ChiMode::Closed)?;
    let exact = chi_lower(n, q, ChiMode::ExactRational)?;
    let tomon_value = tomon_lower(n, q);
    let mut tomon = BoundReport::new(
        Target::Regular { n, q },
        Quantity::ChiLowerLiterature,
        Formula::Tomon,
        tomon_value.clone(),
    );
    tomon.notes.push("stated for odd q in the source".into());
    let improves = if closed.value > tomon_value {
        "improves"
    } else {
        "does not improve"
    };
    tomon.notes.push(format!("chi-closed {improves} on this value"));
    let mut akbari = BoundReport::new(
        Target::Regular { n, q },
        Quantity::OmegaUpper,
        Formula::Akbari,
        rat(akbari_clique_upper(n)),
    );
    akbari
        .notes
        .push("stated for odd q in the source; independent of q".into());
    rows.extend([closed, exact, tomon, akbari]);
    Ok(rows)
}

/// One link in the chain of estimates from the exact Hoffman-type value of
/// `T_n(q)` down to `q^(n^2 - n + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub name: &'static str,
    #[serde(serialize_with = "serde_util::ratio")]
    pub lhs: BigRational,
    pub relation: &'static str,
    #[serde(serialize_with = "serde_util::ratio")]
    pub rhs: BigRational,
    pub holds: bool,
}

fn step(name: &'static str, lhs: BigRational, strict: bool, rhs: BigRational) -> ChainStep {
    let holds = if strict { lhs < rhs } else { lhs <= rhs };
    ChainStep {
        name,
        lhs,
        relation: if strict { "<" } else { "<=" },
        rhs,
        holds,
    }
}

/// Evaluates every inequality of the estimate chain for `T_n(q)` exactly.
pub fn bound_chain(n: usize, q: u64) -> Result<Vec<ChainStep>> {
    let spec = TotalGraphSpec::new(n, q)?;
    let s = rat(spec.singular_count.clone());
    let v = rat(spec.vertex_count.clone());
    let delta = rat(spec.min_degree());
    let lambda = rat(closed_form_lambda_max(n, q)?);
    let top = rat(pow(q, n * n - n));
    let one = BigRational::one();

    let product: BigInt = (1..n).map(|i| pow(q, i) - BigInt::one()).product();
    let intermediate = &s + rat(pow(q, n * (n - 1) / 2) * product);
    let ratio = &one - &delta / &lambda;
    let slack = (&top + &one) / (&s + &top);
    let coarse = (&top + &one) / (rat(pow(q, n * n - 1)) + &top);
    let ht = hoffman_type_bound(&v, &delta, &lambda).value;
    let theorem = rat(pow(q, n * n - n + 1));

    Ok(vec![
        step(
            "lambda_max <= |S| + q^(n(n-1)/2) prod_{i<n} (q^i - 1)",
            lambda.clone(),
            false,
            intermediate.clone(),
        ),
        step(
            "|S| + q^(n(n-1)/2) prod_{i<n} (q^i - 1) < |S| + q^(n^2-n)",
            intermediate,
            true,
            &s + &top,
        ),
        step("lambda_max < |S| + q^(n^2-n)", lambda, true, &s + &top),
        step(
            "1 - delta/lambda_max < (q^(n^2-n)+1)/(|S|+q^(n^2-n))",
            ratio,
            true,
            slack.clone(),
        ),
        step("|S| > q^(n^2-1)", rat(pow(q, n * n - 1)), true, s),
        step(
            "(q^(n^2-n)+1)/(|S|+q^(n^2-n)) < (q^(n^2-n)+1)/(q^(n^2-1)+q^(n^2-n))",
            slack,
            true,
            coarse.clone(),
        ),
        step(
            "(q^(n^2-n)+1)/(q^(n^2-1)+q^(n^2-n)) <= q^-(n-1)",
            coarse,
            false,
            rat(q).pow(-(n as i32 - 1)),
        ),
        step("HT value < q^(n^2)/q^(n-1)", ht.clone(), true, &v / rat(pow(q, n - 1))),
        step(
            "floor(HT value) <= q^(n^2-n+1)",
            rat(ht.floor().to_integer()),
            false,
            theorem,
        ),
    ])
}

/// `floor` of a rational as an integer.
pub fn floor_int(r: &BigRational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// Nearest `f64`, for human-readable columns only.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn hoffman_examples() {
        // K_v
        for v in 2..8 {
            let b = hoffman_bound(&rat(v), &rat(v - 1), &rat(-1));
            assert_eq!(b.value, rat(1));
        }
        assert!(hoffman_bound(&rat(5), &rat(0), &rat(0)).degenerate);
        // Petersen graph
        assert_eq!(hoffman_bound(&rat(10), &rat(3), &rat(-2)).value, rat(4));
    }

    #[test]
    fn hoffman_type_examples() {
        assert_eq!(hoffman_type_bound(&rat(16), &rat(9), &rat(12)).value, rat(4));
        let t23 = hoffman_type_bound(&rat(81), &rat(32), &rat(39)).value;
        assert_eq!(t23, r(189, 13));
        assert_eq!(floor_int(&t23), BigInt::from(14));
        assert_eq!(hoffman_type_bound(&rat(4), &rat(3), &rat(4)).value, rat(1));
        let empty = hoffman_type_bound(&rat(7), &rat(0), &rat(0));
        assert!(empty.degenerate);
        assert_eq!(empty.value, rat(7));
    }

    #[test]
    fn laplacian_form_reduces_to_ratio_form_on_regular_inputs() {
        // (v, d, lambda_max) for K_4, Petersen, the 3-cube, K_{3,3}
        let cases = [(4, 3, rat(4)), (10, 3, rat(5)), (8, 3, rat(6)), (6, 3, rat(6))];
        for (v, d, lambda) in cases {
            let ht = hoffman_type_bound(&rat(v), &rat(d), &lambda);
            let h = hoffman_bound(&rat(v), &rat(d), &(rat(d) - &lambda));
            assert_eq!(ht, h);
        }
    }

    #[test]
    fn alpha_modes() {
        let get = |n, q, m| alpha_upper_total(n, q, m).unwrap().value_int;
        assert_eq!(get(2, 2, AlphaMode::Theorem), BigInt::from(8));
        assert_eq!(get(2, 2, AlphaMode::Exact), BigInt::from(4));
        assert_eq!(get(2, 3, AlphaMode::Theorem), BigInt::from(27));
        assert_eq!(get(2, 3, AlphaMode::Exact), BigInt::from(14));
        let reg = alpha_upper_regular(2, 3, AlphaMode::Theorem).unwrap();
        assert_eq!(reg.value_int, BigInt::from(27));
        assert_eq!(reg.target.to_string(), "Gamma_2(3)");
        assert_eq!(
            alpha_upper_regular(2, 2, AlphaMode::Exact).unwrap().value_int,
            BigInt::from(4)
        );
        assert_eq!(
            alpha_upper_total(1, 2, AlphaMode::Theorem).unwrap_err(),
            Error::DimensionTooSmall(1)
        );
    }

    #[test]
    fn exact_mode_never_exceeds_theorem_mode() {
        for n in [2, 3] {
            for q in [2, 3, 4, 5, 7, 8, 9] {
                let exact = alpha_upper_total(n, q, AlphaMode::Exact).unwrap();
                let theorem = alpha_upper_total(n, q, AlphaMode::Theorem).unwrap();
                assert!(exact.value <= theorem.value, "n={n} q={q}");
                assert!(exact.value_int >= BigInt::one());
            }
        }
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_lower(2, 3, ChiMode::Closed).unwrap().value, r(5, 3));
        assert_eq!(chi_lower(2, 3, ChiMode::Closed).unwrap().value_int, BigInt::from(2));
        assert_eq!(chi_lower(2, 3, ChiMode::ExactRational).unwrap().value, r(16, 9));
        assert_eq!(chi_lower(2, 2, ChiMode::Closed).unwrap().value, r(1, 2));
        assert_eq!(chi_lower(2, 2, ChiMode::Closed).unwrap().value_int, BigInt::one());
        for n in 2..=5 {
            for q in [2, 3, 4, 5, 7, 8, 9] {
                let closed = chi_lower(n, q, ChiMode::Closed).unwrap().value;
                let exact = chi_lower(n, q, ChiMode::ExactRational).unwrap().value;
                assert!(closed <= exact);
            }
        }
    }

    #[test]
    fn literature_values() {
        assert_eq!(tomon_lower(2, 3), r(3, 4));
        assert_eq!(tomon_lower(4, 9), r(81, 16));
        assert_eq!(chi_lower(4, 9, ChiMode::Closed).unwrap().value, rat(639));
        assert_eq!(akbari_clique_upper(1), BigUint::from(2u32));
        assert_eq!(akbari_clique_upper(2), BigUint::from(7u32));
        assert_eq!(akbari_clique_upper(3), BigUint::from(34u32));
    }

    #[test]
    fn bound_table_rows() {
        let rows = bound_table(4, 9).unwrap();
        let tomon = rows.iter().find(|r| r.formula == Formula::Tomon).unwrap();
        assert!(tomon.notes.iter().any(|n| n == "chi-closed improves on this value"));
        let csv = {
            let mut buf = Vec::new();
            write_csv(&bound_table(2, 3).unwrap(), &mut buf).unwrap();
            String::from_utf8(buf).unwrap()
        };
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "target,quantity,formula,value_rational,value_int,v,delta_or_d,lambda_max_or_theta_min"
        );
        assert_eq!(
            lines.next().unwrap(),
            "T_2(3),alpha_upper,hoffman-type-exact,189/13,14,81,32,39"
        );
        assert!(csv.contains("Gamma_2(3),chi_lower,chi-closed,5/3,2,,,"));
    }

    #[test]
    fn chain_holds_on_grid() {
        for n in [2, 3] {
            for q in [2, 3, 4, 5, 7, 8, 9] {
                for s in bound_chain(n, q).unwrap() {
                    assert!(s.holds, "n={n} q={q}: {}", s.name);
                }
            }
        }
    }
}
