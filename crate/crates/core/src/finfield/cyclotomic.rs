use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeStruct, Serializer};

/// An exact element of `Z[zeta_p]` for a prime conductor `p`.
///
/// Stored in the power basis `1, zeta, ..., zeta^(p-2)`; the relation
/// `zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))` keeps the representation
/// canonical, so structural equality is numerical equality. For `p = 2`
/// this is an ordinary integer.
///
/// Binary operators panic when the conductors differ.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CyclotomicInteger {
    p: u32,
    coords: Vec<i64>,
}

impl CyclotomicInteger {
    pub fn zero(p: u32) -> Self {
        assert!(p >= 2, "conductor must be a prime");
        CyclotomicInteger {
            p,
            coords: vec![0; p as usize - 1],
        }
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    pub fn from_int(p: u32, m: i64) -> Self {
        let mut z = Self::zero(p);
        z.coords[0] = m;
        z
    }

    /// `zeta_p^e`.
    pub fn zeta_pow(p: u32, e: u64) -> Self {
        let mut counts = vec![0i64; p as usize];
        counts[(e % p as u64) as usize] = 1;
        Self::canonicalize(p, &counts)
    }

    /// Builds from power-basis coordinates; `None` if the length is not `p - 1`.
    pub fn from_coords(p: u32, coords: Vec<i64>) -> Option<Self> {
        (p >= 2 && coords.len() == p as usize - 1).then_some(CyclotomicInteger { p, coords })
    }

    /// Reduces `sum_e counts[e] * zeta^e` (any length-`p` vector) to canonical form.
    pub fn canonicalize(p: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), p as usize, "expected one count per exponent");
        let top = counts[p as usize - 1];
        CyclotomicInteger {
            p,
            coords: counts[..p as usize - 1].iter().map(|&c| c - top).collect(),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Coefficients on `1, zeta, ..., zeta^(p-1)` with the top one zero.
    fn extended(&self) -> Vec<i64> {
        let mut ext = self.coords.clone();
        ext.push(0);
        ext
    }

    /// The rational integer this equals, if any.
    pub fn as_integer(&self) -> Option<i64> {
        self.coords[1..].iter().all(|&c| c == 0).then_some(self.coords[0])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.as_integer() == Some(1)
    }

    /// Complex conjugation, `zeta^j -> zeta^(p-j)`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let ext = self.extended();
        let mut out = vec![0i64; p];
        for (j, &c) in ext.iter().enumerate() {
            out[(p - j) % p] += c;
        }
        Self::canonicalize(self.p, &out)
    }

    /// Numerical embedding with `zeta_p -> exp(2 pi i / p)`.
    pub fn to_complex(&self) -> Complex64 {
        let step = std::f64::consts::TAU / self.p as f64;
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| Complex64::from_polar(c as f64, step * j as f64))
            .sum()
    }

    fn check_conductor(&self, other: &Self) {
        assert_eq!(self.p, other.p, "cyclotomic conductors differ");
    }
}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn add(self, rhs: Self) -> CyclotomicInteger {
        self.check_conductor(rhs);
        CyclotomicInteger {
            p: self.p,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn sub(self, rhs: Self) -> CyclotomicInteger {
        self.check_conductor(rhs);
        CyclotomicInteger {
            p: self.p,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger {
            p: self.p,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn mul(self, rhs: Self) -> CyclotomicInteger {
        self.check_conductor(rhs);
        let p = self.p as usize;
        let mut out = vec![0i64; p];
        for (i, &a) in self.coords.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in rhs.coords.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        CyclotomicInteger::canonicalize(self.p, &out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr for CyclotomicInteger {
            type Output = CyclotomicInteger;

            fn $method(self, rhs: Self) -> CyclotomicInteger {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn neg(self) -> CyclotomicInteger {
        -&self
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = self.as_integer() {
            return write!(f, "{m}");
        }
        let terms = self.coords.iter().enumerate().filter(|(_, &c)| c != 0);
        for (i, (j, &c)) in terms.enumerate() {
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (j, c.unsigned_abs()) {
                (0, m) => write!(f, "{m}")?,
                (_, 1) => write!(f, "z{}^{j}", self.p)?,
                (_, m) => write!(f, "{m}*z{}^{j}", self.p)?,
            }
        }
        Ok(())
    }
}

impl Serialize for CyclotomicInteger {
    /// Rational integers serialize as decimal strings, everything else as
    /// `{"conductor": p, "coords": [...]}`.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.as_integer() {
            Some(m) => serializer.serialize_str(&m.to_string()),
            None => {
                let mut s = serializer.serialize_struct("CyclotomicInteger", 2)?;
                s.serialize_field("conductor", &self.p)?;
                s.serialize_field("coords", &self.coords)?;
                s.end()
            }
        }
    }
}
