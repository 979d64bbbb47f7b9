//! The total graph `T_n(q)` of `M_n(F_q)` and the regular graph `Gamma_n(q)`.
//!
//! `T_n(q)` is the sum-graph of `(M_n(F_q), +)` with respect to the singular
//! matrices; `Gamma_n(q)` is its induced subgraph on `GL_n(F_q)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use crate::abelian_char::{li_hu_magnitude, li_hu_sum, AbelianGroup};
use crate::budget::{self, Budgets};
use crate::error::{Error, Result};
use crate::finfield::{prime_power, Field};
use crate::graph::Graph;
use crate::matrix_ring::{det_raw, enumerate_matrices, gl_order, matrix_count, rank_count, MatrixFq};
use crate::serde_util;
use crate::spectrum::{Method, SpectralValue, SpectrumReport};
use crate::sumgraph::SumGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Size data of `T_n(q)`, available without materializing the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TotalGraphSpec {
    pub n: usize,
    pub q: u64,
    #[serde(serialize_with = "serde_util::display")]
    pub vertex_count: BigUint,
    #[serde(serialize_with = "serde_util::display")]
    pub gl_order: BigUint,
    /// `|S| = q^(n^2) - |GL_n(F_q)|`.
    #[serde(serialize_with = "serde_util::display")]
    pub singular_count: BigUint,
    pub parity: Parity,
}

impl TotalGraphSpec {
    pub fn new(n: usize, q: u64) -> Result<Self> {
        validate(n, q)?;
        let vertex_count = BigUint::from(q).pow((n * n) as u32);
        let gl = gl_order(n, q);
        Ok(TotalGraphSpec {
            n,
            q,
            singular_count: &vertex_count - &gl,
            vertex_count,
            gl_order: gl,
            parity: if q.is_multiple_of(2) { Parity::Even } else { Parity::Odd },
        })
    }

    /// Minimum degree `|S| - 1`: the zero matrix is singular and `2 * 0 = 0`.
    pub fn min_degree(&self) -> BigUint {
        &self.singular_count - 1u32
    }
}

impl fmt::Display for TotalGraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{}({})", self.n, self.q)
    }
}

/// `n >= 2` and `q` a prime power.
pub fn validate(n: usize, q: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    Ok(())
}

fn field_for(q: u64, budgets: &Budgets) -> Result<Field> {
    Field::of_order_with_budget(q, budgets.field_order)
}

/// Canonical indices of the singular matrices of `M_n(F_q)`.
pub fn singular_indices(n: usize, field: &Field, budgets: &Budgets) -> Result<Vec<usize>> {
    Ok(enumerate_matrices(n, field, budgets)?
        .filter(|m| det_raw(field, n, m.raw_entries()) == 0)
        .map(|m| m.index() as usize)
        .collect())
}

/// `T_n(q)` as a materialized sum-graph; vertex `i` is the matrix of
/// canonical index `i`.
pub fn total_graph(n: usize, q: u64, budgets: &Budgets) -> Result<SumGraph> {
    validate(n, q)?;
    let field = field_for(q, budgets)?;
    let count = matrix_count(n, q).unwrap_or(u64::MAX);
    budget::check("sum-graph adjacency", count, budgets.adjacency)?;
    let group = AbelianGroup::matrix_ring(n, &field)?;
    let singular = singular_indices(n, &field, budgets)?;
    SumGraph::build(group, &singular, budgets)
}

/// `Gamma_n(q)`, the induced subgraph of `T_n(q)` on the invertible matrices.
#[derive(Debug, Clone)]
pub struct RegularGraph {
    pub n: usize,
    pub q: u64,
    pub graph: Graph,
    /// Canonical matrix index of each vertex, increasing.
    pub matrices: Vec<usize>,
}

impl RegularGraph {
    pub fn matrix(&self, vertex: usize, field: &Field) -> MatrixFq {
        MatrixFq::from_index(field, self.n, self.matrices[vertex] as u64)
    }
}

pub fn regular_graph(n: usize, q: u64, budgets: &Budgets) -> Result<RegularGraph> {
    let total = total_graph(n, q, budgets)?;
    Ok(induce_regular(&total, n, q))
}

/// `Gamma_n(q)` from an already materialized `T_n(q)`.
pub fn induce_regular(total: &SumGraph, n: usize, q: u64) -> RegularGraph {
    let matrices: Vec<usize> = (0..total.vertex_count()).filter(|&v| !total.contains(v)).collect();
    RegularGraph {
        n,
        q,
        graph: total.graph().induced(&matrices),
        matrices,
    }
}

/// Closed-form Laplacian spectrum of `T_n(q)` with multiplicities.
///
/// With `c_r = q^(n(n-1)/2) prod_{i=1}^{n-r} (q^i - 1)`:
/// for even `q` the eigenvalue `|S| + (-1)^r c_r` has multiplicity equal to
/// the number of rank-`r` matrices; for odd `q` each of `|S| +- c_r` has half
/// that multiplicity. The trivial eigenvalue 0 has multiplicity 1.
pub fn closed_form_spectrum(n: usize, q: u64) -> Result<SpectrumReport> {
    let spec = TotalGraphSpec::new(n, q)?;
    let size = BigInt::from(spec.singular_count.clone());
    let mut values = vec![(SpectralValue::Exact(BigInt::from(0)), BigUint::one())];
    for r in 1..=n {
        let count = rank_count(n, q, r)?;
        match spec.parity {
            Parity::Even => {
                // |S| - <phi_u, S> with <phi_u, S> = -li_hu_sum
                let value = &size + li_hu_sum(n, q, r)?;
                values.push((SpectralValue::Exact(value), count));
            }
            Parity::Odd => {
                let c = li_hu_magnitude(n, q, r)?;
                let half = count / 2u32;
                values.push((SpectralValue::Exact(&size - &c), half.clone()));
                values.push((SpectralValue::Exact(&size + &c), half));
            }
        }
    }
    Ok(SpectrumReport::from_values(Method::ClosedForm, values, 0.0))
}

/// Largest Laplacian eigenvalue of `T_n(q)` from the closed form.
pub fn closed_form_lambda_max(n: usize, q: u64) -> Result<BigInt> {
    let report = closed_form_spectrum(n, q)?;
    Ok(report.lambda_max.exact().cloned().expect("closed form is exact"))
}
