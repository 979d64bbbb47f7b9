use std::fmt;
use std::sync::Arc;

use super::cyclotomic::CyclotomicInteger;
use super::{is_prime, poly, prime_power};
use crate::budget::{self, Budgets};
use crate::error::{Error, Result};

/// A finite field GF(p^k) with precomputed operation tables.
///
/// Elements are encoded as integers in `[0, q)`: the coefficients of the
/// polynomial representative are the base-`p` digits, constant term least
/// significant. This encoding also fixes the canonical element order.
///
/// Cloning is cheap; all clones share the same tables.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

struct FieldData {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    tag: u64,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    trace: Vec<u32>,
}

/// An element of some [`Field`]. Carries a tag identifying its field so that
/// mixing elements of different fields is detected.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldElement {
    value: u32,
    tag: u64,
}

impl FieldElement {
    /// Position of the element in the canonical order of its field.
    pub fn index(self) -> u32 {
        self.value
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl Field {
    /// GF(p^k) with the default field-order budget.
    pub fn new(p: u64, k: u32) -> Result<Field> {
        Field::with_budget(p, k, Budgets::default().field_order)
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Field> {
        Field::of_order_with_budget(q, Budgets::default().field_order)
    }

    pub fn of_order_with_budget(q: u64, max_order: u64) -> Result<Field> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::with_budget(p, k, max_order)
    }

    /// Builds GF(p^k) using the smallest monic irreducible modulus of degree
    /// `k`, where polynomials are compared by the integer whose base-`p`
    /// digits are their lower coefficients (constant term least significant).
    pub fn with_budget(p: u64, k: u32, max_order: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::InvalidDegree);
        }
        let q = p
            .checked_pow(k)
            .ok_or_else(|| Error::budget("field order", format!("{p}^{k}"), max_order))?;
        budget::check("field order", q, max_order)?;
        let (p, q) = (p as u32, q as u32);

        let (code, modulus) = (0..q as u64)
            .map(|code| (code, poly::monic_from_code(code, k, p)))
            .find(|(_, f)| poly::is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");

        Ok(Field(Arc::new(FieldData::build(p, k, q, modulus, code))))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, lowest-degree coefficient first (length `k + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The class of `x` in the polynomial basis (`x` itself for `k > 1`).
    pub fn generator(&self) -> FieldElement {
        if self.0.k == 1 {
            self.wrap(1)
        } else {
            self.wrap(self.0.p)
        }
    }

    /// Element from its polynomial coefficients, lowest degree first.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.0.k as usize {
            return Err(Error::ShapeMismatch {
                expected: self.0.k as usize,
                actual: coeffs.len(),
            });
        }
        let mut value = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= self.0.p {
                return Err(Error::NonCanonical { value: c, p: self.0.p });
            }
            value = value * self.0.p + c;
        }
        Ok(self.wrap(value))
    }

    /// Element at position `index` of the canonical order.
    pub fn from_index(&self, index: u32) -> Result<FieldElement> {
        if index >= self.0.q {
            return Err(Error::ElementOutOfRange {
                index: index as usize,
                order: self.0.q as usize,
            });
        }
        Ok(self.wrap(index))
    }

    /// The image of the integer `m` under `Z -> F_p -> F_q`.
    pub fn from_int(&self, m: i64) -> FieldElement {
        self.wrap(m.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn coeffs(&self, x: FieldElement) -> Result<Vec<u32>> {
        self.owns(x)?;
        let mut v = x.value;
        Ok((0..self.0.k)
            .map(|_| {
                let c = v % self.0.p;
                v /= self.0.p;
                c
            })
            .collect())
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(|v| self.wrap(v))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.owns(a)?;
        self.owns(b)?;
        Ok(self.wrap(self.add_raw(a.value, b.value)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.owns(a)?;
        self.owns(b)?;
        Ok(self.wrap(self.sub_raw(a.value, b.value)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.owns(a)?;
        self.owns(b)?;
        Ok(self.wrap(self.mul_raw(a.value, b.value)))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement> {
        self.owns(a)?;
        Ok(self.wrap(self.neg_raw(a.value)))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.owns(a)?;
        self.inv_raw(a.value).map(|v| self.wrap(v))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> Result<FieldElement> {
        self.owns(a)?;
        let mut base = a.value;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        Ok(self.wrap(acc))
    }

    /// Absolute trace `x + x^p + ... + x^(p^(k-1))`, as an integer in `[0, p)`.
    pub fn trace(&self, x: FieldElement) -> Result<u32> {
        self.owns(x)?;
        Ok(self.trace_raw(x.value))
    }

    /// The additive character `zeta_p^Tr(x)`.
    pub fn psi(&self, x: FieldElement) -> Result<CyclotomicInteger> {
        let t = self.trace(x)?;
        Ok(CyclotomicInteger::zeta_pow(self.0.p, t as u64))
    }

    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        self.0.add[(a * self.0.q + b) as usize]
    }

    pub(crate) fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        self.0.mul[(a * self.0.q + b) as usize]
    }

    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }

    pub(crate) fn inv_raw(&self, a: u32) -> Result<u32> {
        if a == 0 {
            Err(Error::ZeroInverse)
        } else {
            Ok(self.0.inv[a as usize])
        }
    }

    pub(crate) fn trace_raw(&self, a: u32) -> u32 {
        self.0.trace[a as usize]
    }

    pub(crate) fn wrap(&self, value: u32) -> FieldElement {
        debug_assert!(value < self.0.q);
        FieldElement { value, tag: self.0.tag }
    }

    fn owns(&self, x: FieldElement) -> Result<()> {
        if x.tag == self.0.tag {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

impl FieldData {
    fn build(p: u32, k: u32, q: u32, modulus: Vec<u32>, code: u64) -> FieldData {
        let qs = q as usize;
        let decode = |mut v: u32| -> Vec<u32> {
            let mut c = Vec::with_capacity(k as usize);
            for _ in 0..k {
                c.push(v % p);
                v /= p;
            }
            poly::trim(c)
        };
        let encode = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let polys: Vec<Vec<u32>> = (0..q).map(decode).collect();

        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        for a in 0..qs {
            for b in a..qs {
                let (pa, pb) = (&polys[a], &polys[b]);
                let mut sum = vec![0u32; pa.len().max(pb.len())];
                for (i, s) in sum.iter_mut().enumerate() {
                    *s = (pa.get(i).copied().unwrap_or(0) + pb.get(i).copied().unwrap_or(0)) % p;
                }
                let s = encode(&sum);
                let m = encode(&poly::rem_monic(&poly::mul(pa, pb, p), &modulus, p));
                add[a * qs + b] = s;
                add[b * qs + a] = s;
                mul[a * qs + b] = m;
                mul[b * qs + a] = m;
            }
        }

        let mut neg = vec![0u32; qs];
        let mut inv = vec![0u32; qs];
        for a in 0..qs {
            neg[a] = (0..q).find(|&b| add[a * qs + b as usize] == 0).unwrap();
            if a != 0 {
                inv[a] = (1..q).find(|&b| mul[a * qs + b as usize] == 1).unwrap();
            }
        }

        let trace = (0..qs)
            .map(|a| {
                let mut term = a as u32;
                let mut sum = term;
                for _ in 1..k {
                    let mut frob = 1u32;
                    for _ in 0..p {
                        frob = mul[frob as usize * qs + term as usize];
                    }
                    term = frob;
                    sum = add[sum as usize * qs + term as usize];
                }
                debug_assert!(sum < p, "trace must land in the prime field");
                sum
            })
            .collect();

        FieldData {
            p,
            k,
            q,
            modulus,
            tag: ((q as u64) << 32) | code,
            add,
            mul,
            neg,
            inv,
            trace,
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.tag == other.0.tag
    }
}

impl Eq for Field {}

impl fmt::Display for Field {
    /// `GF(p^k)/c0,c1,...,ck`, modulus coefficients lowest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.0.modulus.iter().map(u32::to_string).collect();
        write!(f, "GF({}^{})/{}", self.0.p, self.0.k, coeffs.join(","))
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL_ORDERS: [u64; 13] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64];

    #[test]
    fn prime_fields_use_modulus_x() {
        for p in [2, 3] {
            let f = Field::new(p, 1).unwrap();
            assert_eq!(f.modulus(), &[0, 1]);
            assert_eq!(f.order(), p as u32);
        }
    }

    #[test]
    fn gf4_modulus_and_generator_square() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let t = f.generator();
        let t2 = f.mul(t, t).unwrap();
        assert_eq!(f.coeffs(t2).unwrap(), vec![1, 1]);
        assert_eq!(f.to_string(), "GF(2^2)/1,1,1");
    }

    #[test]
    fn gf9_modulus_is_smallest() {
        // x^2 + 1 is irreducible over F_3 and has the smallest code.
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn small_arithmetic() {
        let f = Field::new(3, 1).unwrap();
        let two = f.from_int(2);
        assert_eq!(f.add(two, two).unwrap(), f.one());
        for field in [f, Field::new(2, 3).unwrap()] {
            assert_eq!(field.inv(field.one()).unwrap(), field.one());
        }
    }

    #[test]
    fn errors() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(2, 0).unwrap_err(), Error::InvalidDegree);
        assert!(Field::new(2, 11).unwrap_err().is_budget());
        assert_eq!(Field::of_order(6).unwrap_err(), Error::NotPrimePower(6));

        let f = Field::new(5, 1).unwrap();
        let g = Field::new(7, 1).unwrap();
        assert_eq!(f.inv(f.zero()).unwrap_err(), Error::ZeroInverse);
        assert_eq!(f.add(f.one(), g.one()).unwrap_err(), Error::FieldMismatch);
        assert!(f.element(&[5]).is_err());
        assert!(f.from_index(5).is_err());
    }

    #[test]
    fn exhaustive_field_axioms() {
        for q in SMALL_ORDERS {
            let f = Field::of_order(q).unwrap();
            let els: Vec<_> = f.elements().collect();
            let add = |a, b| f.add(a, b).unwrap();
            let mul = |a, b| f.mul(a, b).unwrap();
            for &a in &els {
                assert_eq!(add(a, f.zero()), a);
                assert_eq!(mul(a, f.one()), a);
                assert_eq!(add(a, f.neg(a).unwrap()), f.zero());
                if !a.is_zero() {
                    assert_eq!(mul(a, f.inv(a).unwrap()), f.one(), "GF({q})");
                }
                for &b in &els {
                    assert_eq!(add(a, b), add(b, a));
                    assert_eq!(mul(a, b), mul(b, a));
                }
            }
            // Associativity and distributivity on a stride-sampled cube keeps
            // GF(64) tractable while covering every small field in full.
            let step = if q <= 16 { 1 } else { 5 };
            for a in els.iter().step_by(step) {
                for b in els.iter().step_by(step) {
                    for c in &els {
                        let (a, b, c) = (*a, *b, *c);
                        assert_eq!(add(add(a, b), c), add(a, add(b, c)));
                        assert_eq!(mul(mul(a, b), c), mul(a, mul(b, c)));
                        assert_eq!(mul(a, add(b, c)), add(mul(a, b), mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_order_q_minus_1() {
        for q in SMALL_ORDERS {
            let f = Field::of_order(q).unwrap();
            for a in f.elements().filter(|a| !a.is_zero()) {
                assert_eq!(f.pow(a, q - 1).unwrap(), f.one());
            }
        }
    }

    #[test]
    fn trace_examples() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.trace(f2.one()).unwrap(), 1);
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.trace(f4.generator()).unwrap(), 1);
        assert_eq!(f4.trace(f4.zero()).unwrap(), 0);
    }

    #[test]
    fn trace_is_linear_and_nonzero() {
        for q in SMALL_ORDERS {
            let f = Field::of_order(q).unwrap();
            let p = f.characteristic();
            let tr = |x| f.trace(x).unwrap();
            assert!(f.elements().any(|x| tr(x) != 0), "Tr vanishes on GF({q})");
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(tr(f.add(a, b).unwrap()), (tr(a) + tr(b)) % p);
                }
                for c in 0..p {
                    assert_eq!(tr(f.mul(f.from_int(c as i64), a).unwrap()), c * tr(a) % p);
                }
            }
        }
    }

    #[test]
    fn psi_examples() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.psi(f2.one()).unwrap(), CyclotomicInteger::from_int(2, -1));
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.psi(f3.one()).unwrap().coords(), &[0, 1]);
        for q in SMALL_ORDERS {
            let f = Field::of_order(q).unwrap();
            assert!(f.psi(f.zero()).unwrap().is_one());
        }
    }

    #[test]
    fn psi_is_additive_nontrivial_and_orthogonal() {
        for q in SMALL_ORDERS {
            let f = Field::of_order(q).unwrap();
            let p = f.characteristic();
            let psi = |x| f.psi(x).unwrap();
            assert!(f.elements().any(|x| !psi(x).is_one()));
            for a in f.elements().step_by(3) {
                for b in f.elements() {
                    assert_eq!(psi(f.add(a, b).unwrap()), &psi(a) * &psi(b));
                }
            }
            for c in f.elements() {
                let total = f
                    .elements()
                    .map(|x| psi(f.mul(c, x).unwrap()))
                    .fold(CyclotomicInteger::zero(p), |acc, z| &acc + &z);
                let expected = if c.is_zero() { q as i64 } else { 0 };
                assert_eq!(total, CyclotomicInteger::from_int(p, expected));
            }
        }
    }
}
