//! The verification driver: closed forms against brute force and bounds
//! against oracle values over a grid of `(n, q)`.
//!
//! A failing or rejected check becomes a row; nothing aborts the run.

use num_bigint::{BigInt, BigUint};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{chromatic_number, clique_number, exhaustive_alpha, max_independent_set, OracleOptions};
use crate::abelian_char::{li_hu_sum, random_of_rank, MatrixCharacter};
use crate::bounds::{self, akbari_clique_upper, AlphaMode, ChiMode};
use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::finfield::Field;
use crate::graph::Diameter;
use crate::matrix_ring::CountReport;
use crate::spectrum::BRUTE_FORCE_TOLERANCE;
use crate::sumgraph::{random_instance, SumGraph};
use crate::totalgraph::{closed_form_spectrum, induce_regular, total_graph, validate, TotalGraphSpec};

pub const DEFAULT_GRID: [(usize, u64); 4] = [(2, 2), (2, 3), (2, 4), (3, 2)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub grid: Vec<(usize, u64)>,
    pub seed: u64,
    pub budgets: Budgets,
    /// Number of random sum-graphs checked after the grid.
    pub random_sum_graphs: usize,
    /// Random index matrices per rank in the character-sum check.
    pub li_hu_samples: usize,
}

impl VerifyConfig {
    pub fn default_grid(seed: u64) -> Self {
        VerifyConfig {
            grid: DEFAULT_GRID.to_vec(),
            seed,
            budgets: Budgets::default(),
            random_sum_graphs: 100,
            li_hu_samples: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The grid cell itself is invalid.
    Rejected,
    /// A budget prevented the check from running.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub n: Option<usize>,
    pub q: Option<u64>,
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub rejected: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub grid: Vec<(usize, u64)>,
    pub random_sum_graphs: usize,
    pub rows: Vec<VerifyRow>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn has_rejections(&self) -> bool {
        self.summary.rejected > 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerifyRow> {
        self.rows.iter().filter(|r| r.status == CheckStatus::Fail)
    }
}

struct Rows<'a> {
    cell: Option<(usize, u64)>,
    out: &'a mut Vec<VerifyRow>,
}

impl Rows<'_> {
    fn push(&mut self, check: impl Into<String>, expected: impl ToString, actual: impl ToString, status: CheckStatus) {
        self.out.push(VerifyRow {
            n: self.cell.map(|c| c.0),
            q: self.cell.map(|c| c.1),
            check: check.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            status,
        });
    }

    fn compare(&mut self, check: impl Into<String>, expected: impl ToString, actual: impl ToString, ok: bool) {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        self.push(check, expected, actual, status);
    }

    /// Records an error as a skipped (budget) or failed row.
    fn error(&mut self, check: impl Into<String>, expected: impl ToString, err: &Error) {
        let status = if err.is_budget() {
            CheckStatus::Skipped
        } else {
            CheckStatus::Fail
        };
        self.push(check, expected, err, status);
    }

    fn run(&mut self, check: &str, expected: impl ToString, f: impl FnOnce() -> Result<(String, bool)>) {
        match f() {
            Ok((actual, ok)) => self.compare(check, expected, actual, ok),
            Err(e) => self.error(check, expected, &e),
        }
    }
}

/// Runs every check for every grid cell, then the random sum-graph checks.
/// Grid cells are visited in increasing `(n, q)` order; rows carry no timing
/// data, so equal configurations give equal reports.
pub fn verify_all(config: &VerifyConfig) -> VerifyReport {
    let mut grid = config.grid.clone();
    grid.sort_unstable();
    grid.dedup();
    let mut rows = Vec::new();
    for &(n, q) in &grid {
        let mut out = Rows {
            cell: Some((n, q)),
            out: &mut rows,
        };
        if let Err(e) = validate(n, q) {
            out.push("input", "n >= 2 and q a prime power", e, CheckStatus::Rejected);
            continue;
        }
        verify_cell(n, q, config, &mut out);
    }
    let mut out = Rows {
        cell: None,
        out: &mut rows,
    };
    verify_random_sum_graphs(config, &mut out);

    let mut summary = Summary::default();
    for row in &rows {
        match row.status {
            CheckStatus::Pass => summary.pass += 1,
            CheckStatus::Fail => summary.fail += 1,
            CheckStatus::Rejected => summary.rejected += 1,
            CheckStatus::Skipped => summary.skipped += 1,
        }
    }
    VerifyReport {
        seed: config.seed,
        grid,
        random_sum_graphs: config.random_sum_graphs,
        rows,
        summary,
    }
}

fn cell_seed(seed: u64, n: usize, q: u64) -> u64 {
    seed ^ ((n as u64) << 32 | q).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn verify_cell(n: usize, q: u64, config: &VerifyConfig, out: &mut Rows<'_>) {
    let budgets = &config.budgets;
    let spec = match TotalGraphSpec::new(n, q) {
        Ok(s) => s,
        Err(e) => return out.error("input", "valid (n, q)", &e),
    };
    let field = match Field::of_order_with_budget(q, budgets.field_order) {
        Ok(f) => f,
        Err(e) => return out.error("field", format!("GF({q})"), &e),
    };

    // counting layer
    let formulas = CountReport::from_formulas(n, q);
    match CountReport::census(n, &field, budgets) {
        Ok(census) => {
            out.compare(
                "counts.gl_order",
                &formulas.gl_order,
                &census.gl_order,
                formulas.gl_order == census.gl_order,
            );
            let fmt = |r: &CountReport| {
                r.rank_counts
                    .iter()
                    .map(|(k, v)| format!("{k}:{v}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            out.compare(
                "counts.rank_counts",
                fmt(&formulas),
                fmt(&census),
                formulas.rank_counts == census.rank_counts,
            );
        }
        Err(e) => {
            out.error("counts.gl_order", &formulas.gl_order, &e);
            out.error("counts.rank_counts", "census", &e);
        }
    }

    // character sums over GL_n against the closed form
    let mut rng = ChaCha8Rng::seed_from_u64(cell_seed(config.seed, n, q));
    for r in 1..=n {
        let check = format!("li_hu.rank{r}");
        let expected = match li_hu_sum(n, q, r) {
            Ok(v) => v,
            Err(e) => {
                out.error(check, "closed form", &e);
                continue;
            }
        };
        out.run(&check, &expected, || {
            let mut values = Vec::new();
            for _ in 0..config.li_hu_samples {
                let u = random_of_rank(&field, n, r, &mut rng)?;
                let sum = MatrixCharacter::new(u).sum_over_gl(budgets)?;
                values.push(sum.as_integer().map(BigInt::from));
            }
            let ok = values.iter().all(|v| v.as_ref() == Some(&expected));
            let shown: Vec<String> = values
                .iter()
                .map(|v| v.as_ref().map_or("non-integer".to_string(), |v| v.to_string()))
                .collect();
            Ok((shown.join(","), ok))
        });
    }

    // spectra
    let closed = match closed_form_spectrum(n, q) {
        Ok(c) => c,
        Err(e) => return out.error("spectrum.closed_form", "closed form", &e),
    };
    let distinct = if q.is_multiple_of(2) { n + 1 } else { 2 * n + 1 };
    out.compare(
        "spectrum.distinct_count",
        distinct,
        closed.distinct_count(),
        closed.distinct_count() == distinct,
    );

    let chain = bounds::bound_chain(n, q);
    out.run("bounds.chain", "all inequalities hold", || {
        let chain = chain?;
        let held = chain.iter().filter(|s| s.holds).count();
        Ok((format!("{held}/{} hold", chain.len()), held == chain.len()))
    });

    let total = match total_graph(n, q, budgets) {
        Ok(t) => t,
        Err(e) => {
            for check in [
                "spectrum.closed_vs_character",
                "spectrum.closed_vs_brute",
                "sumgraph.degree_law",
                "graph.diameter",
            ] {
                out.error(check, "materialized T_n(q)", &e);
            }
            return oracle_checks_skipped(out, &e);
        }
    };
    out.run("spectrum.closed_vs_character", &closed, || {
        let chars = total.spectrum_via_characters(budgets)?;
        Ok((chars.to_string(), closed.same_exact_multiset(&chars)))
    });
    out.run("spectrum.closed_vs_brute", &closed, || {
        let brute = total.spectrum_bruteforce(budgets)?;
        Ok((rounded(&brute), closed.agrees_with(&brute, BRUTE_FORCE_TOLERANCE)))
    });
    let mismatches = (0..total.vertex_count())
        .filter(|&g| total.graph().degree(g) != total.predicted_degree(g))
        .count();
    out.compare(
        "sumgraph.degree_law",
        "0 mismatches",
        format!("{mismatches} mismatches"),
        mismatches == 0,
    );
    let diameter = total.diameter();
    out.compare("graph.diameter", 2, diameter, diameter == Diameter::Finite(2));

    // oracle values against the bounds
    let regular = induce_regular(&total, n, q);
    let opts = OracleOptions {
        budgets: *budgets,
        canonical_witness: false,
    };
    let t_id = format!("T_{n}({q})");
    let g_id = format!("Gamma_{n}({q})");
    let alpha_t = max_independent_set(total.graph(), &t_id, &opts).map(|r| r.value);
    let alpha_g = max_independent_set(&regular.graph, &g_id, &opts).map(|r| r.value);
    let chi_g = chromatic_number(&regular.graph, &g_id, &opts).map(|r| r.value);
    let theorem = pow(q, n * n - n + 1);

    let exact_ht = bounds::alpha_upper_total(n, q, AlphaMode::Exact).map(|b| b.value_int);
    oracle_le(out, "alpha.total<=hoffman_type", &alpha_t, exact_ht);
    oracle_le(out, "alpha.total<=theorem", &alpha_t, Ok(theorem.clone()));
    oracle_le(out, "alpha.regular<=theorem", &alpha_g, Ok(theorem));
    oracle_le(
        out,
        "alpha.regular<=alpha.total",
        &alpha_g,
        alpha_t.as_ref().map(|&a| BigInt::from(a)).map_err(Clone::clone),
    );

    let chi_lower = bounds::chi_lower(n, q, ChiMode::Closed).map(|b| b.value_int);
    oracle_ge(out, "chi.regular>=chi_lower_closed", &chi_g, chi_lower);
    let check = "chi.regular*alpha.regular>=gl_order";
    match (&chi_g, &alpha_g) {
        (Ok(c), Ok(a)) => {
            let product = BigUint::from(c * a);
            out.compare(
                check,
                format!(">= {}", spec.gl_order),
                product.clone(),
                product >= spec.gl_order,
            );
        }
        (Err(e), _) | (_, Err(e)) => out.error(check, format!(">= {}", spec.gl_order), e),
    }
    if q % 2 == 1 {
        let omega = clique_number(&regular.graph, &g_id, &opts).map(|r| r.value);
        oracle_le(
            out,
            "omega.regular<=akbari",
            &omega,
            Ok(BigInt::from(akbari_clique_upper(n))),
        );
    }
}

const ORACLE_CHECKS: [&str; 6] = [
    "alpha.total<=hoffman_type",
    "alpha.total<=theorem",
    "alpha.regular<=theorem",
    "alpha.regular<=alpha.total",
    "chi.regular>=chi_lower_closed",
    "chi.regular*alpha.regular>=gl_order",
];

fn oracle_checks_skipped(out: &mut Rows<'_>, err: &Error) {
    for check in ORACLE_CHECKS {
        out.error(check, "oracle value", err);
    }
}

fn pow(q: u64, e: usize) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

fn oracle_le(out: &mut Rows<'_>, check: &str, value: &Result<usize>, bound: Result<BigInt>) {
    compare_bound(out, check, value, bound, "<=", |v, b| v <= b);
}

fn oracle_ge(out: &mut Rows<'_>, check: &str, value: &Result<usize>, bound: Result<BigInt>) {
    compare_bound(out, check, value, bound, ">=", |v, b| v >= b);
}

fn compare_bound(
    out: &mut Rows<'_>,
    check: &str,
    value: &Result<usize>,
    bound: Result<BigInt>,
    relation: &str,
    holds: impl Fn(&BigInt, &BigInt) -> bool,
) {
    match (value, bound) {
        (Ok(v), Ok(b)) => {
            let v = BigInt::from(*v);
            out.compare(check, format!("{relation} {b}"), &v, holds(&v, &b));
        }
        (Err(e), Ok(b)) => out.error(check, format!("{relation} {b}"), e),
        (_, Err(e)) => out.error(check, "bound", &e),
    }
}

/// Spectrum text with values rounded to six decimals.
fn rounded(report: &crate::spectrum::SpectrumReport) -> String {
    let parts: Vec<String> = report
        .eigenvalues
        .iter()
        .map(|e| {
            let v = e.value.to_f64();
            // avoid printing -0.000000
            let v = if v.abs() < 5e-7 { 0.0 } else { v };
            format!("{v:.6} x{}", e.multiplicity)
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn verify_random_sum_graphs(config: &VerifyConfig, out: &mut Rows<'_>) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let budgets = &config.budgets;
    for i in 0..config.random_sum_graphs {
        let (group, set, _) = random_instance(&mut rng, 200);
        let label = format!("{:?} |S|={}", group.factors(), set.len());
        let sg = match SumGraph::build(group, &set, budgets) {
            Ok(g) => g,
            Err(e) => {
                out.error(format!("random[{i}].build"), label, &e);
                continue;
            }
        };
        out.run(
            &format!("random[{i}].spectrum"),
            format!("{label}: character == brute"),
            || {
                let chars = sg.spectrum_via_characters(budgets)?;
                let brute = sg.spectrum_bruteforce(budgets)?;
                let ok = chars.agrees_with(&brute, BRUTE_FORCE_TOLERANCE);
                Ok((format!("{} distinct", chars.distinct_count()), ok))
            },
        );
        let mismatches = (0..sg.vertex_count())
            .filter(|&g| sg.graph().degree(g) != sg.predicted_degree(g))
            .count();
        out.compare(
            format!("random[{i}].degree_law"),
            "0 mismatches",
            format!("{mismatches} mismatches"),
            mismatches == 0,
        );
        if sg.vertex_count() <= 20 {
            let opts = OracleOptions {
                budgets: *budgets,
                canonical_witness: false,
            };
            out.run(
                &format!("random[{i}].alpha_exhaustive"),
                "branch-and-bound == subsets",
                || {
                    let bb = max_independent_set(sg.graph(), "random", &opts)?.value;
                    let ex = exhaustive_alpha(sg.graph())?;
                    Ok((format!("{bb} vs {ex}"), bb == ex))
                },
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(grid: Vec<(usize, u64)>, random: usize) -> VerifyConfig {
        VerifyConfig {
            grid,
            random_sum_graphs: random,
            ..VerifyConfig::default_grid(7)
        }
    }

    #[test]
    fn empty_grid_gives_empty_report() {
        let r = verify_all(&config(vec![], 0));
        assert!(r.rows.is_empty());
        assert!(r.all_passed());
    }

    #[test]
    fn invalid_cells_are_rejected_and_the_run_continues() {
        let r = verify_all(&config(vec![(2, 2), (1, 2), (2, 6)], 0));
        let rejected: Vec<_> = r.rows.iter().filter(|r| r.status == CheckStatus::Rejected).collect();
        assert_eq!(rejected.len(), 2);
        assert_eq!(rejected[0].actual, "n >= 2 required (got n = 1)");
        assert!(r
            .rows
            .iter()
            .any(|row| row.n == Some(2) && row.q == Some(2) && row.status == CheckStatus::Pass));
        assert!(r.all_passed());
        assert!(r.has_rejections());
        // (1,2) sorts first
        assert_eq!(r.rows[0].n, Some(1));
    }

    #[test]
    fn small_cell_passes_every_check() {
        let r = verify_all(&config(vec![(2, 2)], 10));
        for row in &r.rows {
            assert_eq!(row.status, CheckStatus::Pass, "{row:?}");
        }
        assert!(r.rows.iter().any(|row| row.check == "alpha.total<=hoffman_type"));
    }

    #[test]
    fn tight_budgets_skip_instead_of_failing() {
        let mut c = config(vec![(2, 3)], 0);
        c.budgets.adjacency = 50;
        let r = verify_all(&c);
        assert!(r.all_passed());
        assert!(r.summary.skipped > 0);
        assert!(r
            .rows
            .iter()
            .any(|row| row.check == "counts.gl_order" && row.status == CheckStatus::Pass));
    }
}
