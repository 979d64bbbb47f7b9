//! Square matrices over F_q: determinant, rank, exhaustive enumeration, and
//! the counting formulas for `GL_n(F_q)` and rank strata.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::budget::{self, Budgets};
use crate::error::{Error, Result};
use crate::finfield::{Field, FieldElement};
use crate::serde_util;

/// An `n x n` matrix over a finite field, entries stored row-major as field
/// element indices.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    field: Field,
    n: usize,
    entries: Vec<u32>,
}

impl MatrixFq {
    pub fn zero(field: &Field, n: usize) -> Self {
        MatrixFq {
            field: field.clone(),
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// The matrix unit `E_ij` (a single one at row `i`, column `j`).
    pub fn unit(field: &Field, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(field, n);
        m.entries[i * n + j] = 1;
        m
    }

    /// Row-major entries.
    pub fn from_elements(field: &Field, n: usize, entries: &[FieldElement]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::ShapeMismatch {
                expected: n * n,
                actual: entries.len(),
            });
        }
        let mut raw = Vec::with_capacity(n * n);
        for &e in entries {
            // Round-trips through the field to reject foreign elements.
            raw.push(field.add(e, field.zero())?.index());
        }
        Ok(MatrixFq {
            field: field.clone(),
            n,
            entries: raw,
        })
    }

    /// Row-major entries given as field element indices.
    pub fn from_indices(field: &Field, n: usize, entries: &[u32]) -> Result<Self> {
        let els = entries
            .iter()
            .map(|&v| field.from_index(v))
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(field, n, &els)
    }

    /// Matrix at position `index` of the canonical order: entries read
    /// row-major form a base-`q` numeral, entry `(0, 0)` most significant.
    pub fn from_index(field: &Field, n: usize, mut index: u64) -> Self {
        let q = field.order() as u64;
        let mut entries = vec![0u32; n * n];
        for slot in entries.iter_mut().rev() {
            *slot = (index % q) as u32;
            index /= q;
        }
        debug_assert_eq!(index, 0, "index beyond q^(n^2)");
        MatrixFq {
            field: field.clone(),
            n,
            entries,
        }
    }

    /// Position in the canonical order; inverse of [`MatrixFq::from_index`].
    pub fn index(&self) -> u64 {
        let q = self.field.order() as u64;
        self.entries.iter().fold(0, |acc, &v| acc * q + v as u64)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        self.field.wrap(self.entries[i * self.n + j])
    }

    pub(crate) fn raw_entries(&self) -> &[u32] {
        &self.entries
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::ShapeMismatch {
                expected: self.n * self.n,
                actual: other.n * other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.add_raw(a, b))
            .collect();
        Ok(MatrixFq {
            entries,
            ..self.clone()
        })
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|&a| self.field.neg_raw(a)).collect();
        MatrixFq {
            entries,
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let n = self.n;
        let f = &self.field;
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = (0..n).fold(0, |acc, k| {
                    f.add_raw(acc, f.mul_raw(self.entries[i * n + k], other.entries[k * n + j]))
                });
            }
        }
        Ok(MatrixFq {
            entries,
            ..self.clone()
        })
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let entries = (0..n * n).map(|idx| self.entries[(idx % n) * n + idx / n]).collect();
        MatrixFq {
            entries,
            ..self.clone()
        }
    }

    pub fn det(&self) -> FieldElement {
        self.field.wrap(det_raw(&self.field, self.n, &self.entries))
    }

    pub fn rank(&self) -> usize {
        rank_raw(&self.field, self.n, &self.entries)
    }

    pub fn is_invertible(&self) -> bool {
        self.det().index() != 0
    }
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = self.entries.chunks(self.n.max(1)).collect();
        write!(f, "MatrixFq[{}]{:?}", self.field, rows)
    }
}

/// Determinant by Gaussian elimination with row swaps.
pub(crate) fn det_raw(f: &Field, n: usize, entries: &[u32]) -> u32 {
    let mut a = entries.to_vec();
    let mut det = 1u32;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return 0;
        };
        if pivot != col {
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
            }
            det = f.neg_raw(det);
        }
        let pv = a[col * n + col];
        det = f.mul_raw(det, pv);
        let pinv = f.inv_raw(pv).expect("pivot is nonzero");
        for r in col + 1..n {
            let factor = f.mul_raw(a[r * n + col], pinv);
            if factor == 0 {
                continue;
            }
            for j in col..n {
                let sub = f.mul_raw(factor, a[col * n + j]);
                a[r * n + j] = f.sub_raw(a[r * n + j], sub);
            }
        }
    }
    det
}

/// Row rank by reduction to echelon form.
pub(crate) fn rank_raw(f: &Field, n: usize, entries: &[u32]) -> usize {
    let mut a = entries.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| a[r * n + col] != 0) else {
            continue;
        };
        for j in 0..n {
            a.swap(pivot * n + j, rank * n + j);
        }
        let pinv = f.inv_raw(a[rank * n + col]).expect("pivot is nonzero");
        for r in rank + 1..n {
            let factor = f.mul_raw(a[r * n + col], pinv);
            if factor == 0 {
                continue;
            }
            for j in col..n {
                let sub = f.mul_raw(factor, a[rank * n + j]);
                a[r * n + j] = f.sub_raw(a[r * n + j], sub);
            }
        }
        rank += 1;
    }
    rank
}

/// Number of matrices in `M_n(F_q)`, or `None` on `u64` overflow.
pub fn matrix_count(n: usize, q: u64) -> Option<u64> {
    q.checked_pow(u32::try_from(n * n).ok()?)
}

fn check_enumeration(n: usize, field: &Field, max: u64) -> Result<u64> {
    let q = field.order() as u64;
    let count = matrix_count(n, q).ok_or_else(|| Error::budget("matrix enumeration", format!("{q}^{}", n * n), max))?;
    budget::check("matrix enumeration", count, max)?;
    Ok(count)
}

/// Every matrix of `M_n(F_q)` exactly once, in canonical order.
pub fn enumerate_matrices<'a>(
    n: usize,
    field: &'a Field,
    budgets: &Budgets,
) -> Result<impl Iterator<Item = MatrixFq> + 'a> {
    let count = check_enumeration(n, field, budgets.enumeration)?;
    Ok((0..count).map(move |i| MatrixFq::from_index(field, n, i)))
}

/// `|GL_n(F_q)| = (q^n - 1)(q^n - q)...(q^n - q^(n-1))`.
pub fn gl_order(n: usize, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qn = q.pow(n as u32);
    (0..n as u32).map(|i| &qn - q.pow(i)).product()
}

/// `c_n(q) = (1 - 1/q)(1 - 1/q^2)...(1 - 1/q^n)`, exactly.
pub fn c_coefficient(n: usize, q: u64) -> BigRational {
    let q = BigRational::from_integer(q.into());
    (1..=n as i32).map(|i| BigRational::one() - q.pow(-i)).product()
}

/// Number of `n x n` matrices over F_q of rank exactly `r`:
/// `(prod_{i<r} (q^n - q^i))^2 / prod_{i<r} (q^r - q^i)`.
pub fn rank_count(n: usize, q: u64, r: usize) -> Result<BigUint> {
    if r > n {
        return Err(Error::RankOutOfRange { r, n });
    }
    let q = BigUint::from(q);
    let qn = q.pow(n as u32);
    let qr = q.pow(r as u32);
    let num: BigUint = (0..r as u32).map(|i| &qn - q.pow(i)).product();
    let den: BigUint = (0..r as u32).map(|i| &qr - q.pow(i)).product();
    debug_assert!((&num * &num % &den).is_zero());
    Ok(&num * &num / den)
}

/// Group order, density coefficient, and rank census for `M_n(F_q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub q: u64,
    #[serde(serialize_with = "serde_util::display")]
    pub gl_order: BigUint,
    #[serde(rename = "c", serialize_with = "serde_util::ratio_fraction")]
    pub c_n_q: BigRational,
    #[serde(serialize_with = "serialize_rank_counts")]
    pub rank_counts: BTreeMap<usize, BigUint>,
}

fn serialize_rank_counts<S: serde::Serializer>(
    counts: &BTreeMap<usize, BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(counts.len()))?;
    for (r, c) in counts {
        map.serialize_entry(&r.to_string(), &c.to_string())?;
    }
    map.end()
}

impl CountReport {
    /// From the closed-form counting formulas.
    pub fn from_formulas(n: usize, q: u64) -> Self {
        let rank_counts = (0..=n).map(|r| (r, rank_count(n, q, r).expect("r in range"))).collect();
        CountReport {
            n,
            q,
            gl_order: gl_order(n, q),
            c_n_q: c_coefficient(n, q),
            rank_counts,
        }
    }

    /// By enumerating every matrix and computing its rank.
    pub fn census(n: usize, field: &Field, budgets: &Budgets) -> Result<Self> {
        let mut counts = vec![0u64; n + 1];
        for m in enumerate_matrices(n, field, budgets)? {
            counts[m.rank()] += 1;
        }
        let q = field.order() as u64;
        let gl = BigUint::from(counts[n]);
        let total = BigUint::from(q).pow((n * n) as u32);
        Ok(CountReport {
            n,
            q,
            c_n_q: BigRational::new(gl.clone().into(), total.into()),
            gl_order: gl,
            rank_counts: counts
                .into_iter()
                .enumerate()
                .map(|(r, c)| (r, BigUint::from(c)))
                .collect(),
        })
    }

    pub fn total(&self) -> BigUint {
        self.rank_counts.values().sum()
    }
}
