//! Laplacian eigenvalue multisets.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::serde_util::{self, big_to_f64};

/// Merge tolerance for eigenvalues coming out of the float eigensolver.
pub const BRUTE_FORCE_TOLERANCE: f64 = 1e-6;
/// Merge tolerance for character-method values that need a float modulus.
pub const CHARACTER_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Character,
    BruteForce,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::Character => "character",
            Method::BruteForce => "brute-force",
        })
    }
}

/// An eigenvalue known exactly as an integer, or only numerically.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralValue {
    Exact(BigInt),
    Approx(f64),
}

impl SpectralValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            SpectralValue::Exact(v) => big_to_f64(v),
            SpectralValue::Approx(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&BigInt> {
        match self {
            SpectralValue::Exact(v) => Some(v),
            SpectralValue::Approx(_) => None,
        }
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        match (self, other) {
            (SpectralValue::Exact(a), SpectralValue::Exact(b)) => a.cmp(b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    fn close(&self, other: &Self, tol: f64) -> bool {
        match (self, other) {
            (SpectralValue::Exact(a), SpectralValue::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= tol,
        }
    }
}

impl From<i64> for SpectralValue {
    fn from(v: i64) -> Self {
        SpectralValue::Exact(v.into())
    }
}

impl fmt::Display for SpectralValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralValue::Exact(v) => write!(f, "{v}"),
            SpectralValue::Approx(v) => write!(f, "{v:.9}"),
        }
    }
}

impl Serialize for SpectralValue {
    /// Exact values as decimal strings, approximate values as JSON numbers.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SpectralValue::Exact(v) => s.collect_str(v),
            SpectralValue::Approx(v) => s.serialize_f64(*v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub value: SpectralValue,
    #[serde(serialize_with = "serde_util::display")]
    pub multiplicity: BigUint,
}

/// Sorted eigenvalues with multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub method: Method,
    #[serde(serialize_with = "serde_util::display")]
    pub v: BigUint,
    pub eigenvalues: Vec<Eigenvalue>,
    pub lambda_max: SpectralValue,
}

impl SpectrumReport {
    /// Sorts and merges values: exact values merge on equality, anything
    /// involving a float merges within `tol`.
    pub fn from_values(method: Method, values: impl IntoIterator<Item = (SpectralValue, BigUint)>, tol: f64) -> Self {
        let mut values: Vec<_> = values.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        values.sort_by(|a, b| a.0.cmp_value(&b.0));
        let mut merged: Vec<Eigenvalue> = Vec::new();
        for (value, multiplicity) in values {
            match merged.last_mut() {
                Some(last) if last.value.close(&value, tol) => {
                    last.multiplicity += multiplicity;
                    if last.value.exact().is_none() && value.exact().is_some() {
                        last.value = value;
                    }
                }
                _ => merged.push(Eigenvalue { value, multiplicity }),
            }
        }
        let v = merged.iter().map(|e| &e.multiplicity).sum();
        let lambda_max = merged
            .last()
            .map(|e| e.value.clone())
            .unwrap_or(SpectralValue::Exact(BigInt::zero()));
        SpectrumReport {
            method,
            v,
            eigenvalues: merged,
            lambda_max,
        }
    }

    pub fn distinct_count(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn total_multiplicity(&self) -> BigUint {
        self.eigenvalues.iter().map(|e| &e.multiplicity).sum()
    }

    pub fn is_exact(&self) -> bool {
        self.eigenvalues.iter().all(|e| e.value.exact().is_some())
    }

    pub fn multiplicity_of(&self, value: i64) -> BigUint {
        let target = BigInt::from(value);
        self.eigenvalues
            .iter()
            .filter(|e| e.value.exact() == Some(&target))
            .map(|e| e.multiplicity.clone())
            .sum()
    }

    pub fn multiplicity_near(&self, value: f64, tol: f64) -> BigUint {
        self.eigenvalues
            .iter()
            .filter(|e| (e.value.to_f64() - value).abs() <= tol)
            .map(|e| e.multiplicity.clone())
            .sum()
    }

    /// Exact multiset equality; false if either side holds float values.
    pub fn same_exact_multiset(&self, other: &Self) -> bool {
        self.is_exact()
            && other.is_exact()
            && self.eigenvalues.len() == other.eigenvalues.len()
            && self
                .eigenvalues
                .iter()
                .zip(&other.eigenvalues)
                .all(|(a, b)| a.value == b.value && a.multiplicity == b.multiplicity)
    }

    /// Elementwise comparison of the sorted expanded multisets within `tol`,
    /// walked group by group so huge multiplicities are never expanded.
    pub fn agrees_with(&self, other: &Self, tol: f64) -> bool {
        if self.total_multiplicity() != other.total_multiplicity() {
            return false;
        }
        let (mut i, mut j) = (0, 0);
        let mut left = self.eigenvalues.first().map(|e| e.multiplicity.clone());
        let mut right = other.eigenvalues.first().map(|e| e.multiplicity.clone());
        while let (Some(l), Some(r)) = (left.clone(), right.clone()) {
            let (a, b) = (&self.eigenvalues[i].value, &other.eigenvalues[j].value);
            if !a.close(b, tol) {
                return false;
            }
            let step = l.clone().min(r.clone());
            let (l, r) = (l - &step, r - &step);
            left = Some(l.clone());
            right = Some(r.clone());
            if l.is_zero() {
                i += 1;
                left = self.eigenvalues.get(i).map(|e| e.multiplicity.clone());
            }
            if r.is_zero() {
                j += 1;
                right = other.eigenvalues.get(j).map(|e| e.multiplicity.clone());
            }
        }
        left.is_none() && right.is_none()
    }
}

impl fmt::Display for SpectrumReport {
    /// `{0 x1, 8 x9, 12 x6}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .eigenvalues
            .iter()
            .map(|e| format!("{} x{}", e.value, e.multiplicity))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
