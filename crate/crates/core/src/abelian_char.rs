//! Finite abelian groups `Z_m1 x ... x Z_mt`, their characters, character sums
//! over subsets, and the closed-form character sums over `GL_n(F_q)`.
//!
//! Group elements are addressed by their index in the canonical mixed-radix
//! order (first factor most significant). For the additive group of `M_n(F_q)`
//! this order coincides with the canonical matrix order of [`MatrixFq`].
//!
//! Characters are parametrized by group elements: `phi_u(x) = exp(2 pi i
//! sum_i u_i x_i / m_i)`. When every factor equals one prime `p`, values are
//! exact in `Z[zeta_p]`; otherwise they are complex floats.
//!
//! Characters of the matrix ring in the trace-form parametrization
//! `phi_u(x) = psi(sum_ij u_ij x_ij)` live in [`MatrixCharacter`].

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed};
use rand::Rng;

use crate::budget::{self, Budgets};
use crate::error::{Error, Result};
use crate::finfield::{is_prime, CyclotomicInteger, Field};
use crate::matrix_ring::{enumerate_matrices, MatrixFq};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    factors: Vec<u32>,
    order: usize,
    /// lcm of the factors; characters take values in the `exponent`-th roots of unity.
    exponent: u32,
}

impl AbelianGroup {
    /// `Z_m1 x ... x Z_mt`; every `m_i >= 2`. The empty product is the trivial group.
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        let mut order = 1usize;
        let mut exponent = 1u32;
        for &m in &factors {
            if m < 2 {
                return Err(Error::InvalidFactor(m));
            }
            order = order
                .checked_mul(m as usize)
                .ok_or_else(|| Error::budget("group order", "overflow", usize::MAX as u64))?;
            exponent = exponent.lcm(&m);
        }
        Ok(AbelianGroup {
            factors,
            order,
            exponent,
        })
    }

    /// The additive group of `M_n(F_q)`: `k n^2` copies of `Z_p`.
    pub fn matrix_ring(n: usize, field: &Field) -> Result<Self> {
        let copies = field.degree() as usize * n * n;
        Self::new(vec![field.characteristic(); copies])
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The prime `p` when the group is elementary abelian of exponent `p`;
    /// characters are then computed exactly.
    pub fn exact_conductor(&self) -> Option<u32> {
        if self.factors.is_empty() {
            Some(2)
        } else {
            is_prime(self.exponent as u64).then_some(self.exponent)
        }
    }

    /// Every element has order dividing 2.
    pub fn is_elementary_2_group(&self) -> bool {
        self.factors.iter().all(|&m| m <= 2)
    }

    pub fn check(&self, x: usize) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index: x,
                order: self.order,
            })
        }
    }

    /// Coordinates of element `x`, first factor first.
    pub fn digits(&self, mut x: usize) -> Vec<u32> {
        let mut d = vec![0u32; self.factors.len()];
        for (slot, &m) in d.iter_mut().zip(&self.factors).rev() {
            *slot = (x % m as usize) as u32;
            x /= m as usize;
        }
        d
    }

    pub fn index_of(&self, digits: &[u32]) -> Result<usize> {
        if digits.len() != self.factors.len() {
            return Err(Error::ShapeMismatch {
                expected: self.factors.len(),
                actual: digits.len(),
            });
        }
        let mut idx = 0usize;
        for (&d, &m) in digits.iter().zip(&self.factors) {
            if d >= m {
                return Err(Error::InvalidInput(format!("coordinate {d} not reduced mod {m}")));
            }
            idx = idx * m as usize + d as usize;
        }
        Ok(idx)
    }

    fn combine(&self, mut a: usize, mut b: usize, f: impl Fn(u32, u32, u32) -> u32) -> usize {
        let mut out = 0usize;
        let mut place = 1usize;
        for &m in self.factors.iter().rev() {
            let m_us = m as usize;
            let d = f((a % m_us) as u32, (b % m_us) as u32, m);
            out += d as usize * place;
            place *= m_us;
            a /= m_us;
            b /= m_us;
        }
        out
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y, m| (x + y) % m)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.combine(a, 0, |x, _, m| (m - x) % m)
    }

    pub fn double(&self, a: usize) -> usize {
        self.add(a, a)
    }

    pub fn character(&self, u: usize) -> Result<Character<'_>> {
        self.check(u)?;
        Ok(Character { group: self, u })
    }

    /// `sum_i u_i x_i (L / m_i) mod L` with `L` the exponent, so that
    /// `phi_u(x) = exp(2 pi i e / L)`.
    fn pairing_exponent(&self, u: &[u32], x: &[u32]) -> u32 {
        let l = self.exponent as u64;
        let e = u
            .iter()
            .zip(x)
            .zip(&self.factors)
            .map(|((&a, &b), &m)| a as u64 * b as u64 % m as u64 * (l / m as u64))
            .sum::<u64>();
        (e % l) as u32
    }

    /// Turns per-exponent multiplicities into the character value sum.
    fn value_from_counts(&self, counts: &[i64]) -> CharValue {
        match self.exact_conductor() {
            Some(p) => {
                let mut padded = counts.to_vec();
                padded.resize(p as usize, 0);
                CharValue::Exact(CyclotomicInteger::canonicalize(p, &padded))
            }
            None => {
                let step = std::f64::consts::TAU / self.exponent as f64;
                CharValue::Approx(
                    counts
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(e, &c)| Complex64::from_polar(c as f64, step * e as f64))
                        .sum(),
                )
            }
        }
    }
}

/// A character value or character sum.
#[derive(Debug, Clone, PartialEq)]
pub enum CharValue {
    Exact(CyclotomicInteger),
    Approx(Complex64),
}

impl CharValue {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            CharValue::Exact(z) => z.to_complex(),
            CharValue::Approx(z) => *z,
        }
    }

    /// The exact rational integer this equals, when known exactly.
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            CharValue::Exact(z) => z.as_integer(),
            CharValue::Approx(_) => None,
        }
    }

    pub fn exact(&self) -> Option<&CyclotomicInteger> {
        match self {
            CharValue::Exact(z) => Some(z),
            CharValue::Approx(_) => None,
        }
    }

    pub fn conj(&self) -> CharValue {
        match self {
            CharValue::Exact(z) => CharValue::Exact(z.conj()),
            CharValue::Approx(z) => CharValue::Approx(z.conj()),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Character<'g> {
    group: &'g AbelianGroup,
    u: usize,
}

impl<'g> Character<'g> {
    pub fn index(&self) -> usize {
        self.u
    }

    pub fn group(&self) -> &'g AbelianGroup {
        self.group
    }

    pub fn is_trivial(&self) -> bool {
        self.u == 0
    }

    /// Real-valued exactly when `2u = 0`.
    pub fn is_real(&self) -> bool {
        self.group.double(self.u) == 0
    }

    pub fn conjugate(&self) -> Character<'g> {
        Character {
            group: self.group,
            u: self.group.neg(self.u),
        }
    }

    pub fn eval(&self, x: usize) -> Result<CharValue> {
        self.sum(&[x])
    }

    /// `<phi, S> = sum_{s in S} phi(s)`.
    pub fn sum(&self, set: &[usize]) -> Result<CharValue> {
        let u = self.group.digits(self.u);
        let mut counts = vec![0i64; self.group.exponent as usize];
        for &s in set {
            self.group.check(s)?;
            counts[self.group.pairing_exponent(&u, &self.group.digits(s)) as usize] += 1;
        }
        Ok(self.group.value_from_counts(&counts))
    }
}

/// Character sums of every character against a fixed subset, sharing the
/// digit expansion of the subset across characters.
pub(crate) struct SubsetPairing<'g> {
    group: &'g AbelianGroup,
    digits: Vec<Vec<u32>>,
}

impl<'g> SubsetPairing<'g> {
    pub(crate) fn new(group: &'g AbelianGroup, set: &[usize]) -> Self {
        SubsetPairing {
            group,
            digits: set.iter().map(|&s| group.digits(s)).collect(),
        }
    }

    pub(crate) fn sum(&self, u: usize) -> CharValue {
        let u = self.group.digits(u);
        let mut counts = vec![0i64; self.group.exponent as usize];
        for x in &self.digits {
            counts[self.group.pairing_exponent(&u, x) as usize] += 1;
        }
        self.group.value_from_counts(&counts)
    }
}

/// The character `phi_u(x) = psi(sum_ij u_ij x_ij)` of `(M_n(F_q), +)`, with
/// `psi = zeta_p^Tr`.
#[derive(Debug, Clone)]
pub struct MatrixCharacter {
    u: MatrixFq,
}

impl MatrixCharacter {
    pub fn new(u: MatrixFq) -> Self {
        MatrixCharacter { u }
    }

    pub fn index_matrix(&self) -> &MatrixFq {
        &self.u
    }

    /// Real-valued exactly when `2u = 0`: always in characteristic 2, only for
    /// `u = 0` otherwise.
    pub fn is_real(&self) -> bool {
        self.u.field().characteristic() == 2 || self.u.rank() == 0
    }

    fn exponent(&self, x: &MatrixFq) -> Result<u32> {
        if x.field() != self.u.field() {
            return Err(Error::FieldMismatch);
        }
        if x.dim() != self.u.dim() {
            return Err(Error::ShapeMismatch {
                expected: self.u.dim().pow(2),
                actual: x.dim().pow(2),
            });
        }
        let f = self.u.field();
        let dot = self
            .u
            .raw_entries()
            .iter()
            .zip(x.raw_entries())
            .fold(0, |acc, (&a, &b)| f.add_raw(acc, f.mul_raw(a, b)));
        Ok(f.trace_raw(dot))
    }

    pub fn eval(&self, x: &MatrixFq) -> Result<CyclotomicInteger> {
        let p = self.u.field().characteristic();
        Ok(CyclotomicInteger::zeta_pow(p, self.exponent(x)? as u64))
    }

    /// `sum_{x} phi_u(x)` over the given matrices.
    pub fn sum<'a>(&self, xs: impl IntoIterator<Item = &'a MatrixFq>) -> Result<CyclotomicInteger> {
        let p = self.u.field().characteristic();
        let mut counts = vec![0i64; p as usize];
        for x in xs {
            counts[self.exponent(x)? as usize] += 1;
        }
        Ok(CyclotomicInteger::canonicalize(p, &counts))
    }

    /// Brute-force `sum_{a in GL_n(F_q)} phi_u(a)`.
    pub fn sum_over_gl(&self, budgets: &Budgets) -> Result<CyclotomicInteger> {
        self.sum_filtered(budgets, true)
    }

    /// Brute-force `sum_{s singular} phi_u(s)`.
    pub fn sum_over_singular(&self, budgets: &Budgets) -> Result<CyclotomicInteger> {
        self.sum_filtered(budgets, false)
    }

    fn sum_filtered(&self, budgets: &Budgets, invertible: bool) -> Result<CyclotomicInteger> {
        let p = self.u.field().characteristic();
        let mut counts = vec![0i64; p as usize];
        for x in enumerate_matrices(self.u.dim(), self.u.field(), budgets)? {
            if x.is_invertible() == invertible {
                counts[self.exponent(&x)? as usize] += 1;
            }
        }
        Ok(CyclotomicInteger::canonicalize(p, &counts))
    }
}

fn check_rank(n: usize, r: usize) -> Result<()> {
    if (1..=n).contains(&r) {
        Ok(())
    } else {
        Err(Error::RankOutOfRange { r, n })
    }
}

/// Closed form of `sum_{a in GL_n(F_q)} phi_u(a)` for any `u` of rank `r >= 1`:
/// `(-1)^r q^(n(n-1)/2) prod_{i=1}^{n-r} (q^i - 1)`.
///
/// `r = 0` is the trivial character, whose sum is `|GL_n(F_q)|`; it is rejected.
pub fn li_hu_sum(n: usize, q: u64, r: usize) -> Result<BigInt> {
    check_rank(n, r)?;
    let q = BigInt::from(q);
    let mut value = q.pow((n * (n - 1) / 2) as u32);
    for i in 1..=(n - r) as u32 {
        value *= q.pow(i) - BigInt::one();
    }
    if r % 2 == 1 {
        value = -value;
    }
    Ok(value)
}

/// `sum_{s singular} phi_u(s) = -li_hu_sum(n, q, r)`, since the sum over all
/// of `M_n(F_q)` vanishes for a nontrivial character.
pub fn singular_char_sum(n: usize, q: u64, r: usize) -> Result<BigInt> {
    li_hu_sum(n, q, r).map(|v| -v)
}

/// `|li_hu_sum(n, q, r)|`.
pub fn li_hu_magnitude(n: usize, q: u64, r: usize) -> Result<BigInt> {
    li_hu_sum(n, q, r).map(|v| v.abs())
}

/// A uniformly random invertible matrix, by rejection.
pub fn random_invertible<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> MatrixFq {
    let q = field.order();
    loop {
        let entries: Vec<u32> = (0..n * n).map(|_| rng.gen_range(0..q)).collect();
        let m = MatrixFq::from_indices(field, n, &entries).expect("entries in range");
        if m.is_invertible() {
            return m;
        }
    }
}

/// A uniformly random matrix of rank `r`, as `P diag(1,..,1,0,..,0) Q`.
pub fn random_of_rank<R: Rng + ?Sized>(field: &Field, n: usize, r: usize, rng: &mut R) -> Result<MatrixFq> {
    if r > n {
        return Err(Error::RankOutOfRange { r, n });
    }
    let mut d = MatrixFq::zero(field, n);
    for i in 0..r {
        d = d.add(&MatrixFq::unit(field, n, i, i))?;
    }
    let p = random_invertible(field, n, rng);
    let q = random_invertible(field, n, rng);
    p.mul(&d)?.mul(&q)
}

/// Character budget guard shared by spectrum routines.
pub(crate) fn check_characters(group: &AbelianGroup, budgets: &Budgets) -> Result<()> {
    budget::check("character enumeration", group.order() as u64, budgets.characters)
}
