//! Arithmetic in GF(p^k), the absolute trace, and the canonical additive
//! character `psi(x) = zeta_p^Tr(x)` valued in exact cyclotomic integers.

mod cyclotomic;
mod field;
mod poly;

pub use cyclotomic::CyclotomicInteger;
pub use field::{Field, FieldElement};

/// Returns `true` when `n` is prime (trial division; inputs are tiny).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^k` into `(p, k)`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}
